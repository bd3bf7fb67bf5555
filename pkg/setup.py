"""Build the compiled rank kernels when Cython and numpy are available."""

from setuptools import setup


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        # l2euler.rank falls back to the numpy kernels at import
        return []
    ext = Extension(
        "l2euler.rank._kernels",
        ["src/l2euler/rank/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=extensions())
