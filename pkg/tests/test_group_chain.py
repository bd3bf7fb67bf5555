import pytest
from hypothesis import given
from hypothesis import strategies as st

from l2euler.chain import (
    ChainComplex, compose_elementary, elementary, fox_derivative, free_by_cyclic,
    laplacians, parse_automorphism_string, planted_complex, presentation_complex,
    validate_boundary,
)
from l2euler.fileformat import parse_expr, parse_word
from l2euler.group import (
    InvalidCharacter, Presentation, abelianize, find_lift, make_character, phi_range,
)
from l2euler.quotients import abelian_quotient, trivial_quotient
from l2euler.ring import ONE, GroupRingElement, is_self_adjoint
from l2euler.snf import hermite_rows, smith_normal_form
from l2euler.words import generator

FIXTURES = ["borromean", "v1539", "v1539_A", "l10n14", "fbc1"]
NAMES = ("a", "b", "c")


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_normal_form(R):
    S, U, V = smith_normal_form(R)
    assert _mul(_mul(U, R), V) == S
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else y % x == 0


def test_hermite_rows_counts_subgroup():
    moduli = [8, 9]
    rows = hermite_rows([[2, 3], [4, 0]], moduli)
    size = 1
    for k, row in enumerate(rows):
        size *= moduli[k] // row[k] if row[k] else 1
    brute = {((2 * i + 4 * j) % 8, (3 * i) % 9) for i in range(72) for j in range(72)}
    assert size == len(brute)


def test_abelianize(fixture):
    ab = abelianize(fixture("borromean").presentation)
    assert ab.free_rank == 3 and ab.torsion == ()
    assert abelianize(Presentation(4, ())).free_rank == 4
    fiberish = Presentation(4, tuple(parse_word("%s^4" % g, "abcd") for g in "abcd"))
    ab = abelianize(fiberish)
    assert ab.free_rank == 0 and ab.torsion == (4, 4, 4, 4)
    assert abelianize(fixture("fbc1").presentation).free_rank == 2


def test_characters(fixture):
    p = fixture("borromean").presentation
    phi = make_character(p, images=[0, 0, 1])
    assert phi.d == 1
    twice = make_character(p, images=[0, 0, 2])
    assert twice.images == (0, 0, 1) and twice.d == 2
    with pytest.raises(InvalidCharacter):
        make_character(Presentation(2, (parse_word("a", "ab"),)), images=[1, 0])
    x = find_lift(p, phi)
    assert phi.weight(x) == 1
    q = make_character(Presentation(3, ()), images=[1, 1, 0])
    assert q.weight(find_lift(Presentation(3, ()), q)) == 1


def test_phi_range(fixture):
    phi = make_character(fixture("borromean").presentation, images=[0, 0, 1])
    assert phi_range(parse_expr("6-a-b-c-A-B-C", NAMES), phi) == (-1, 1)
    assert phi_range(ONE, phi) == (0, 0)
    assert phi_range(parse_expr("a^2c^-5b^-3", NAMES), phi) == (-5, -5)


def test_fox_examples():
    ab = "ab"
    r = parse_word("a b A B", ab)
    assert fox_derivative(r, 0) == parse_expr("1 - a b A", ab)
    assert fox_derivative(parse_word("a^4", ab), 0) == parse_expr("1 + a + a^2 + a^3", ab)


@pytest.mark.parametrize("name", FIXTURES)
def test_fox_fundamental_formula(fixture, name):
    p = fixture(name).presentation
    for r in p.relators:
        total = GroupRingElement()
        for j in range(p.ngens):
            total = total + fox_derivative(r, j) * (GroupRingElement.word(generator(j)) - ONE)
        assert total == GroupRingElement.word(r) - ONE


def test_presentation_complex_shapes(fixture):
    C = presentation_complex(fixture("borromean").presentation)
    assert C.dims == (1, 3, 2)
    assert [row[0] for row in C.boundary(1)] == [ONE - parse_expr(g, NAMES) for g in NAMES]
    one = presentation_complex(Presentation(1, ()))
    assert one.dims == (1, 1)
    # the published L10n14 matrices agree with Fox calculus
    inp = fixture("l10n14")
    assert presentation_complex(inp.presentation) == inp.complex


@pytest.mark.parametrize("name", FIXTURES)
def test_boundaries_compose_to_zero(fixture, name):
    inp = fixture(name)
    p = inp.presentation
    assert validate_boundary(inp.complex, trivial_quotient(p))
    assert validate_boundary(presentation_complex(p), abelian_quotient(p, [3]))


def test_validate_boundary_detects_corruption(fixture):
    C = fixture("v1539").complex
    bad = [list(map(list, M)) for M in C.boundaries]
    bad[1][0][0] = bad[1][0][0] + ONE
    C2 = ChainComplex(C.dims, bad)
    assert not validate_boundary(C2, abelian_quotient(fixture("v1539").presentation, [3]))


def test_laplacians(fixture):
    L = laplacians(fixture("borromean").complex)
    assert L[0] == [[parse_expr("6-a-b-c-A-B-C", NAMES)]]
    single = ChainComplex((1, 1), [[[ONE - parse_expr("a", NAMES)]]])
    assert laplacians(single)[0] == [[parse_expr("2 - a - A", NAMES)]]
    for D in laplacians(fixture("v1539").complex):
        assert is_self_adjoint(D)


def test_automorphisms():
    word = "eta21 sigma13 eta21 eta32 eta31"
    p = free_by_cyclic(3, parse_automorphism_string(word))
    assert p.ngens == 4 and len(p.relators) == 3
    assert abelianize(p).free_rank == 2
    ident = free_by_cyclic(2, [])
    assert ident.relators[0] == parse_word("c a C A", "abc")
    for kind, i, j in [("eta", 2, 1), ("sigma", 1, 3), ("tau", 2, None)]:
        g = elementary(3, kind, i, j)
        twice = compose_elementary(3, [(kind, i, j), (kind, i, j)])
        assert twice.images == tuple(generator(k) for k in range(3)), g


def test_planted_complex():
    C = planted_complex((1, 6, 10, 4), (1, 5, 4), seed=3)
    p = Presentation(2, ())
    assert validate_boundary(C, trivial_quotient(p))
    assert validate_boundary(C, abelian_quotient(p, [5]))
    with pytest.raises(ValueError):
        planted_complex((1, 2), (3,))
