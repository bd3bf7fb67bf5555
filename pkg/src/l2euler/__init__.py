"""Twisted L2-Euler characteristics of groups through finite quotients."""

from importlib.resources import files

from .chain import ChainComplex, fox_derivative, laplacians, planted_complex, presentation_complex
from .expansion import ExpansionJob, mu_sweep
from .fileformat import load, parse_text, serialize
from .group import Presentation, make_character
from .normball import SampleSet, ball_norm_eval, reconstruct_ball
from .pipeline import (
    alexander_norm_2g1r, alexander_polynomial_2g, betti_untwisted, chi_stabilized, chi_twisted,
    luck_error_bound, matrix_rank_over,
)
from .quotients import abelian_quotient, parse_quotient_spec, perm_quotient, trivial_quotient
from .rank import BACKEND

__version__ = "0.1.0"


def fixture(name):
    """Path of a bundled fixture, e.g. ``fixture("borromean")``."""
    return str(files(__name__) / "fixtures" / (name + ".grp"))


def load_fixture(name):
    return load(fixture(name))
