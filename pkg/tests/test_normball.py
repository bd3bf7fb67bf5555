import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from l2euler.normball import (
    SampleError, SampleSet, ball_norm_eval, read_samples_csv, reconstruct_ball, svg_sketch,
)

OCTAHEDRON = [((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1)] + [
    ((1, s, t), 3) for s in (1, -1) for t in (1, -1)
]
SQUARE = [((0, 1), 2), ((1, 0), 2), ((1, 1), 2), ((-1, 1), 2)]


def l1(v):
    return sum(abs(x) for x in v)


def test_borromean_octahedron():
    B = reconstruct_ball(SampleSet.from_pairs(OCTAHEDRON))
    assert B.certified, B.reasons
    assert len(B.facets) == 8
    assert sorted(B.vertices_ambient()) == sorted(
        tuple(Fraction(s) * (i == k) for i in range(3)) for k in range(3) for s in (1, -1))
    assert ball_norm_eval(B, (1, 1, 1)) == 3
    assert ball_norm_eval(B, (2, -1, 0)) == 3
    assert ball_norm_eval(B, (0, 0, 0)) == 0


def test_fbc_square():
    B = reconstruct_ball(SampleSet.from_pairs(SQUARE))
    assert B.certified, B.reasons
    half = Fraction(1, 2)
    assert sorted(B.vertices_ambient()) == sorted(itertools.product((half, -half), repeat=2))
    assert ball_norm_eval(B, (2, 3)) == 6
    assert "<polygon" in svg_sketch(B)


def test_single_sample_is_uncertified():
    B = reconstruct_ball(SampleSet.from_pairs([((1, 0), 2)]))
    assert not B.certified
    assert "span only 1 of 2" in B.reasons[0]
    assert ball_norm_eval(B, (3, 0)) == 6
    assert ball_norm_eval(B, (0, 1)) == math.inf


def test_missing_facet_witness():
    # vertices only: no sample sits inside a facet cone
    B = reconstruct_ball(SampleSet.from_pairs([((1, 0), 1), ((0, 1), 1)]))
    assert not B.certified
    assert any("witness" in r for r in B.reasons)


def test_lineality():
    S = SampleSet.from_pairs([((1, 1), 0), ((1, -1), 2), ((1, 0), 1)])
    B = reconstruct_ball(S)
    assert B.lineality and B.full_dimensional
    assert ball_norm_eval(B, (3, 3)) == 0
    assert ball_norm_eval(B, (2, -2)) == 4


def test_inconsistent_samples():
    with pytest.raises(SampleError):
        SampleSet.from_pairs([((1, 0), 1), ((1, 0), 2)])
    with pytest.raises(SampleError):
        SampleSet.from_pairs([((1, 0), 1), ((-1, 0), 2)]).symmetrized()
    with pytest.raises(SampleError):
        SampleSet.from_pairs([((1, 0), -1)])
    with pytest.raises(SampleError):
        reconstruct_ball(SampleSet.from_pairs([((1, 0), 1), ((2, 0), 1)]))


def test_csv_reader():
    S = read_samples_csv("v1,v2,value\n# comment\n0,1,2\n1,0,2\n\n1,1,2\n-1,1,2\n")
    assert reconstruct_ball(S).certified
    with pytest.raises(SampleError):
        read_samples_csv("0,1,2\n1,zero,2\n")


def test_json_is_deterministic():
    a = reconstruct_ball(SampleSet.from_pairs(OCTAHEDRON)).to_json()
    b = reconstruct_ball(SampleSet.from_pairs(list(reversed(OCTAHEDRON)))).to_json()
    assert a == b
    assert json.loads(a)["certified"] is True


vec3 = st.tuples(*[st.integers(-4, 4)] * 3).filter(any)


@given(st.lists(vec3, min_size=4, max_size=10), vec3)
def test_gauge_bounds_true_l1_norm(points, v):
    # the candidate ball sits inside the true ball, so its gauge dominates the norm
    S = SampleSet.from_pairs([(p, l1(p)) for p in points])
    try:
        B = reconstruct_ball(S)
    except SampleError:
        return
    g = ball_norm_eval(B, v)
    if g != math.inf:
        assert g >= l1(v)
    for p in points:
        assert ball_norm_eval(B, p) == l1(p)


@given(st.lists(vec3, min_size=1, max_size=8), vec3, st.integers(1, 5))
def test_gauge_homogeneous(points, v, k):
    S = SampleSet.from_pairs([(p, l1(p)) for p in points])
    B = reconstruct_ball(S)
    g = ball_norm_eval(B, v)
    gk = ball_norm_eval(B, tuple(k * x for x in v))
    assert gk == (math.inf if g == math.inf else k * g)
    assert ball_norm_eval(B, tuple(-x for x in v)) == g
