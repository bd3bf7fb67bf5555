from hypothesis import given

from l2euler.fileformat import parse_expr, parse_word
from l2euler.ring import (
    ONE, GroupRingElement, adjoint, is_self_adjoint, mat_adjoint, mat_equal, mat_mul,
)
from l2euler.words import (
    IDENTITY, cyclic_reduce, exponent_sums, reduce_word, word_concat, word_inverse, word_power,
)

from strategies import elements, words

NAMES = ("a", "b", "c")


def w(text):
    return parse_word(text, NAMES)


def e(text):
    return parse_expr(text, NAMES)


def test_free_reduction():
    assert word_concat(w("a"), w("A")) == IDENTITY
    assert word_concat(w("a b"), w("B a")) == w("a^2")
    assert word_concat(w("C B"), w("c a")) == w("C B c a")
    assert reduce_word([(0, 1), (0, 1), (1, -1), (1, 1)]) == ((0, 2),)


def test_cyclic_reduce_and_sums():
    assert cyclic_reduce(w("a b A")) == w("b")
    assert list(exponent_sums(w("a b^2 A c"), 3)) == [0, 2, 1]


@given(words(), words(), words())
def test_word_group_axioms(u, v, x):
    assert word_concat(word_concat(u, v), x) == word_concat(u, word_concat(v, x))
    assert word_concat(u, word_inverse(u)) == IDENTITY
    assert word_inverse(word_concat(u, v)) == word_concat(word_inverse(v), word_inverse(u))


@given(words(max_len=3))
def test_word_power(u):
    assert word_power(u, 3) == word_concat(u, word_concat(u, u))
    assert word_power(u, -2) == word_inverse(word_power(u, 2))
    assert word_power(u, 0) == IDENTITY


def test_ring_products():
    assert (ONE - e("a")) * (ONE + e("a")) == ONE - e("a^2")
    assert (ONE - e("a")) * adjoint(ONE - e("a")) == e("2 - a - A")
    total = GroupRingElement()
    for g in NAMES:
        total = total + adjoint(ONE - e(g)) * (ONE - e(g))
    assert total == e("6 - a - b - c - A - B - C")


def test_adjoint_examples():
    assert adjoint(e("2 - a")) == e("2 - A")
    assert adjoint(e("a b")) == e("B A")


@given(elements(), elements(), elements())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x * ONE == x == ONE * x
    assert x - x == GroupRingElement()


@given(elements(), elements())
def test_adjoint_is_anti_involution(x, y):
    assert adjoint(adjoint(x)) == x
    assert adjoint(x * y) == adjoint(y) * adjoint(x)
    assert adjoint(x + y) == adjoint(x) + adjoint(y)


@given(elements(), elements(), elements(), elements())
def test_matrix_adjoint(a, b, c, d):
    A = [[a, b], [c, d]]
    B = [[d, a], [b, c]]
    assert mat_equal(mat_adjoint(mat_mul(A, B)), mat_mul(mat_adjoint(B), mat_adjoint(A)))
    assert is_self_adjoint(mat_mul(A, mat_adjoint(A)))


def test_augmentation_and_norm():
    x = e("3 - 2a + b c")
    assert x.augmentation() == 2
    assert x.l1_norm() == 6
