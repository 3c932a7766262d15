import pytest
from hypothesis import given, strategies as st

from wedge3dmod import weights as wt
from wedge3dmod.weights import IntVector, Weight


def dominant(n=6, lo=-12, hi=12):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(
        lambda xs: Weight(sorted(xs, reverse=True))
    )


@pytest.mark.parametrize(
    "lam, expected",
    [
        ((1, 1, 1, 0, 0, 0), (0, 0, 0, -1, -1, -1)),
        ((0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0)),
        ((3, 3, 2, 2, 1, 1), (-1, -1, -2, -2, -3, -3)),
    ],
)
def test_dual(lam, expected):
    assert wt.dual(Weight(lam)) == expected


@pytest.mark.parametrize(
    "lam, d", [((2, 1, 1, 1, 1, 0), 6), ((2,) * 6, 12), ((-10,) * 6, -60)]
)
def test_degree(lam, d):
    assert wt.degree(Weight(lam)) == d


def test_add_and_scale():
    s = wt.add(Weight((1, 1, 1, 0, 0, 0)), Weight((2, 2, 2, 1, 1, 1)))
    assert s == (3, 3, 3, 1, 1, 1) and isinstance(s, Weight)
    lam = Weight((4, 2, 1, 0, 0, -3))
    assert wt.add(lam, wt.zero()) == lam
    assert wt.scale(wt.const(2), -5) == (-10,) * 6
    raw = wt.add(IntVector((0, 1, 0, 0, 0, 0)), wt.zero())
    assert not isinstance(raw, Weight)


def test_rank_mismatch():
    with pytest.raises(wt.RankMismatch):
        wt.add(Weight((1, 0)), Weight((1, 0, 0)))


def test_not_dominant():
    with pytest.raises(ValueError):
        Weight((0, 1, 0))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3,3,2,2,1,1", (3, 3, 2, 2, 1, 1)),
        ("(2^6)", (2,) * 6),
        ("(-1^2,-2^2,-3^2)", (-1, -1, -2, -2, -3, -3)),
        ("(0^3,-1^3)", (0, 0, 0, -1, -1, -1)),
        ("(0,-1^4,-2)", (0, -1, -1, -1, -1, -2)),
    ],
)
def test_parse(text, expected):
    assert wt.parse_weight(text, n=6) == expected


def test_parse_rejects_wrong_rank():
    with pytest.raises(wt.RankMismatch):
        wt.parse_weight("1,0,0", n=6)


def test_inversions():
    assert wt.inversions((6, 4, 3, 3, 1, 0)) == 0
    assert wt.inversions((0, 1, 2)) == 3


@given(dominant())
def test_dual_involution(lam):
    assert wt.dual(wt.dual(lam)) == lam
    assert wt.degree(wt.dual(lam)) == -wt.degree(lam)


@given(dominant(), dominant())
def test_add_dominant_and_degree_additive(a, b):
    s = wt.add(a, b)
    assert isinstance(s, Weight)
    assert wt.degree(s) == wt.degree(a) + wt.degree(b)
