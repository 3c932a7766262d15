"""The thirteen acceptance criteria, each with its time limit.

Every test records one PASS/FAIL line; conftest.py prints them at the end of
the run (they are also printed directly, visible with ``-s``).
"""

import time
from collections import Counter
from math import comb

import pytest

import oracles
from wedge3dmod import bott, dmodcat, quiverrep, schur
from wedge3dmod import charseries as cs
from wedge3dmod import weights as wt
from wedge3dmod.charseries import TruncationWindow

W = TruncationWindow.make
RESULTS: list[str] = []


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def record(number, name, ok, seconds=None, limit=None):
    timing = ""
    if seconds is not None:
        timing = f" ({seconds * 1000:.3f} ms" if limit is not None and limit < 0.1 else f" ({seconds:.2f} s"
        timing += f", limit {limit * 1000:g} ms)" if limit is not None and limit < 0.1 else f", limit {limit:g} s)"
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {name}{timing}"
    RESULTS.append(line)
    print(line)
    assert ok, line


# 1 -----------------------------------------------------------------------------


def test_01_gaussian_binomial():
    bott.gaussian_binomial(6, 3, step=2)  # import-time warm up
    with Timer() as t:
        g = bott.gaussian_binomial(6, 3, step=2)
    ok = g[::2] == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1] and not any(g[1::2])
    record(1, "q-binomial [6 choose 3] at q^2", ok and t.seconds < 1e-3, t.seconds, 1e-3)


# 2 -----------------------------------------------------------------------------


def test_02_cone_local_cohomology():
    betti = bott.grassmannian_betti()
    with Timer() as t:
        h = bott.cone_local_cohomology_from_betti(betti)
    ok = h[13] == 1 and h[15] == 1 and all(h[j] == 0 for j in (11, 12, 14, 16, 17, 18, 19))
    record(2, "local cohomology of the cone over Gr(3,6)", ok and t.seconds < 1e-3, t.seconds, 1e-3)


# 3 -----------------------------------------------------------------------------

PLETHYSM = [
    (4, 4, 4, 3, 3, 3), (5, 4, 4, 4, 2, 2), (5, 5, 3, 3, 3, 2), (5, 5, 4, 4, 2, 1),
    (5, 5, 5, 3, 3, 0), (6, 4, 4, 3, 3, 1), (6, 4, 4, 4, 3, 0), (6, 5, 3, 3, 2, 2),
    (6, 5, 4, 3, 2, 1), (7, 4, 3, 3, 3, 1), (7, 4, 4, 2, 2, 2),
]


def test_03_plethysm():
    schur.plethysm.cache_clear()
    schur._branching.cache_clear()
    with Timer() as t:
        power = schur.exterior_power(schur.wedge3_character(6), 7)
        dec = schur.decompose_into_schur(power)
    ok = (
        sorted(dec.terms) == sorted(PLETHYSM)
        and all(c == 1 for c in dec.terms.values())
        and sum(schur.weyl_dim(k) for k in dec.terms) == comb(20, 7) == 77520
    )
    record(3, "wedge^7(wedge^3 C^6) has the 11 listed summands", ok and t.seconds < 10, t.seconds, 10)


# 4 -----------------------------------------------------------------------------


def test_04_b4_overlap():
    window = W(-45, -30, -12, 0)
    with Timer() as t:
        ok = schur.b4_overlap_check(window)
    record(4, "no twisted plethysm weight occurs in [B4]", ok and t.seconds < 5, t.seconds, 5)


# 5 -----------------------------------------------------------------------------


def test_05_b4_identity():
    window = W(-36, 0, -18, 18)
    with Timer() as t:
        direct = cs.expand(cs.CHAR_B4.times_monomial(wt.const(3)), window)
        via = cs.char_b4_via_filtration(window)
    weights = len(direct.terms)
    ok = via == direct and weights > 1000
    record(5, f"[B4] e^(3^6) equals the filtration sum ({weights} weights)", ok and t.seconds < 30, t.seconds, 30)


# 6 -----------------------------------------------------------------------------


def test_06_fourier_pair():
    with Timer() as t:
        s = cs.expand(cs.CHAR_S, W(0, 36))
        f = cs.fourier(s)
        e = cs.expand(cs.CHAR_E, W(-96, -60))
    ok = f.window.min_degree == -96 and f.window.max_degree == -60 and f.terms == e.terms
    record(6, f"F([S]) = [E] on mirrored windows ({len(e.terms)} weights)", ok and t.seconds < 30, t.seconds, 30)


# 7 -----------------------------------------------------------------------------


def test_07_composition_series():
    window = W(-72, 12, -14, 4)
    with Timer() as t:
        ch = {n: cs.named_character(n, window) for n in cs.NAMES}
    ok = (
        (ch["Sf"] - ch["S"] - ch["D3"] - ch["E"]).terms == {}
        and (ch["SfSqrt"] - ch["B4"] - ch["D2"] - ch["D1"]).terms == {}
        and all(ch[n].is_nonnegative() and len(ch[n]) > 0 for n in ("B4", "D1", "D2", "D3"))
    )
    record(7, "[S_f] and [S_f sqrt f] composition series", ok and t.seconds < 60, t.seconds, 60)


# 8 -----------------------------------------------------------------------------


def test_08_witness_weights():
    witnesses = {"D3": wt.const(-2), "D2": wt.const(-5), "D1": wt.const(-7), "E": wt.const(-10)}
    table = {(a, b): cs.character_coefficient(b, w) for a, w in witnesses.items() for b in witnesses}
    ok = all(v == int(a == b) for (a, b), v in table.items())
    record(8, "witness weights (-2^6), (-5^6), (-7^6), (-10^6)", ok)


# 9 -----------------------------------------------------------------------------

GR_EXPECTED = {
    -5: {0: 5, 1: 5, 3: 5, 4: 5, 5: 4},
    -8: {0: 8, 1: 8, 3: 8, 4: 8, 5: 7, 6: 7, 8: 6},
}


def test_09_bott_scans():
    with Timer() as t:
        scans = {(x, k): bott.gr_eta_profile(x, k) for x in (-5, -8, -6) for k in range(13)}
    ok = all(
        scans[(x, k)] == {i: 1 for i, kmin in GR_EXPECTED[x].items() if k >= kmin} for x in (-5, -8) for k in range(13)
    )
    ok = ok and all(scans[(-6, k)].get(5) == 1 and scans[(-6, k)].get(6) == 1 for k in range(5, 13))
    ok = ok and all(5 not in scans[(-6, k)] and 6 not in scans[(-6, k)] for k in range(5))
    record(9, "gr eta scans for x = -5, -8 and x = -6", ok and t.seconds < 5, t.seconds, 5)


# 10 ----------------------------------------------------------------------------


def test_10_quiver():
    expected = oracles.indecomposable_counts_from_orbits(oracles.f2_orbit_counts(2))
    with Timer() as t:
        paths = len(quiverrep.path_basis())
        sf = quiverrep.is_isomorphic(quiverrep.injective_envelope("s"), quiverrep.module_sf())
        sfs = quiverrep.is_isomorphic(quiverrep.injective_envelope("b4"), quiverrep.module_sf_sqrt())
        d3, d2 = quiverrep.simple("d3"), quiverrep.simple("d2")
        ext = (quiverrep.ext1_dim(d3, d2), quiverrep.ext1_dim(d2, d3))
        ind = quiverrep.enumerate_indecomposables()
        counts = [
            dict(Counter(d for d in quiverrep.restrict_dims(ind, comp) if max(d) <= 2))
            for comp in (("s", "d3", "e"), ("b4", "d2", "d1"))
        ]
    ok = paths == 18 and sf and sfs and ext == (0, 0) and counts == [expected, expected]
    record(10, "quiver paths, injective hulls, Ext, indecomposables", ok and t.seconds < 10, t.seconds, 10)


# 11 ----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "unknown, outer, inner, expected",
    [
        ("D1", "O0", "O1", {4: {"E": 1}, 6: {"E": 1}, 10: {"E": 1}}),
        ("D2", "O1", "O2", {1: {"D1": 1}, 3: {"D1": 1}, 5: {"D1": 1}, 6: {"E": 1}, 8: {"E": 1}, 10: {"E": 1}}),
    ],
)
def test_11_spectral_solver(unknown, outer, inner, expected):
    with Timer() as t:
        sols = dmodcat.solve_table(unknown, outer, inner, bound=2)
    ok = len(sols) == 1 and sols[0] == expected
    record(11, f"unique solution for H_{outer}({unknown})", ok and t.seconds < 10, t.seconds, 10)


# 12 ----------------------------------------------------------------------------


def test_12_lyubeznik():
    o1 = {(0, 5): 1, (0, 7): 1, (4, 10): 1, (6, 10): 1, (10, 10): 1}
    o2 = {(0, 10): 1, (4, 13): 1, (6, 13): 1, (10, 13): 1, (9, 15): 1, (13, 15): 1, (15, 15): 1}
    ok = dmodcat.lyubeznik_table("O1") == o1 and dmodcat.lyubeznik_table("O2") == o2
    ok = ok and dmodcat.derive_lyubeznik("O1") == o1 and dmodcat.derive_lyubeznik("O2") == o2
    record(12, "Lyubeznik numbers of the closures of O1 and O2", ok)


# 13 ----------------------------------------------------------------------------


def test_13_char_cycles():
    cat = dmodcat.simples_catalog()
    partners = {"S": "E", "E": "S", "B4": "D1", "D1": "B4", "D2": "D2", "D3": "D3"}
    ok = len(cat) == 6 and all(
        dmodcat.fourier_on_char_cycle(cat[a].char_cycle) == cat[b].char_cycle for a, b in partners.items()
    )
    record(13, "Fourier transform on characteristic cycles", ok)
