"""Borel-Weil-Bott on Grassmannians and the scans built on it.

Bundles S_alpha Q (x) S_beta R live on Gr(k, n) with Q the rank-k quotient
and R the rank-(n-k) subbundle.  Cohomology is computed by the exchange rule:
shift by rho = (n-1, ..., 0), sort, count inversions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from . import weights as wt
from .schur import weyl_dim
from .weights import IntVector, Weight


@dataclass(frozen=True)
class BundleWeight:
    alpha: Weight
    beta: Weight
    k: int = 3
    n: int = 6

    def __post_init__(self):
        object.__setattr__(self, "alpha", Weight(self.alpha))
        object.__setattr__(self, "beta", Weight(self.beta))
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if len(self.alpha) != self.k or len(self.beta) != self.n - self.k:
            raise wt.RankMismatch(
                f"alpha must have {self.k} entries and beta {self.n - self.k}"
            )

    @property
    def concatenated(self) -> IntVector:
        return IntVector(tuple(self.alpha) + tuple(self.beta))

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "beta": list(self.beta), "k": self.k, "n": self.n}


@dataclass(frozen=True)
class BottResult:
    vanishing: bool
    degree: int | None = None
    weight: Weight | None = None

    def to_json(self) -> dict:
        if self.vanishing:
            return {"vanishing": True}
        return {"degree": self.degree, "weight": list(self.weight)}


def rho(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def bott_cohomology(b: BundleWeight) -> BottResult:
    lam = b.concatenated
    r = rho(b.n)
    shifted = [x + y for x, y in zip(lam, r)]
    if len(set(shifted)) < len(shifted):
        return BottResult(vanishing=True)
    l = wt.inversions(shifted)
    srt = sorted(shifted, reverse=True)
    return BottResult(False, l, Weight(x - y for x, y in zip(srt, r)))


def cohomology(alpha: Sequence[int], beta: Sequence[int], k: int = 3, n: int = 6) -> BottResult:
    return bott_cohomology(BundleWeight(Weight(alpha), Weight(beta), k, n))


def partitions(total: int, parts: int = 3, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into at most ``parts`` parts, padded with zeros."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def cauchy_sym_decomposition(d: int) -> list[BundleWeight]:
    """Summands of Sym_d(wedge^2 Q (x) R) on Gr(3,6)."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out = []
    for l1, l2, l3 in partitions(d, 3):
        out.append(BundleWeight(Weight((l1 + l2, l1 + l3, l2 + l3)), Weight((l1, l2, l3))))
    return out


def gr_eta_summands(d: int, k: int) -> Iterator[tuple[tuple[int, int, int], BundleWeight]]:
    """Summands of L^{-k} (x) Sym_d(gr eta), keyed by the partition lam, |lam| <= d."""
    for size in range(d + 1):
        for lam in partitions(size, 3):
            l1, l2, l3 = lam
            q = Weight((d - 2 * k - l3, d - 2 * k - l2, d - 2 * k - l1))
            r = Weight((l1 - k, l2 - k, l3 - k))
            yield lam, BundleWeight(q, r)


@dataclass
class ScanRow:
    count: int = 0
    triplets: list = field(default_factory=list)


def gr_eta_scan(x: int, k: int) -> dict[int, ScanRow]:
    """Degrees i where the weight (x^6) occurs in H^i(Gr, L^{-k} (x) Sym_d(gr eta)), d = 3k + 2x.

    Each row records the number of summands contributing and their triplets
    (a, b, c) = lam - (k + x).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    d = 3 * k + 2 * x
    rows: dict[int, ScanRow] = defaultdict(ScanRow)
    if d < 0:
        return {}
    target = wt.const(x)
    for lam, bundle in gr_eta_summands(d, k):
        res = bott_cohomology(bundle)
        if not res.vanishing and res.weight == target:
            row = rows[res.degree]
            row.count += 1
            row.triplets.append(tuple(v - k - x for v in lam))
    return dict(sorted(rows.items()))


def gr_eta_profile(x: int, k: int) -> dict[int, int]:
    return {i: row.count for i, row in gr_eta_scan(x, k).items()}


def zero_weight_triplets(bound: int = 4) -> list[tuple[int, int, int]]:
    """Triplets a >= b >= c >= 0 for which (-c, -b, -a, a, b, c) exchanges to (0^6).

    The exchange uses a + b + c inversions in every case found.
    """
    out = []
    for a in range(bound + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                v = (-c, -b, -a, a, b, c)
                res = cohomology(v[:3], v[3:])
                if not res.vanishing and res.weight == wt.zero():
                    out.append((a, b, c))
    return out


def euler_characteristic(b: BundleWeight) -> int:
    """Signed dimension: (-1)^l dim S_lam~ W, or 0 (via the Weyl dimension formula)."""
    res = bott_cohomology(b)
    if res.vanishing:
        return 0
    return (-1) ** res.degree * weyl_dim(res.weight)


def canonical_twist(k: int = 3, n: int = 6) -> BundleWeight:
    """omega_Gr = S_{(-(n-k))^k} Q (x) S_{k^(n-k)} R."""
    return BundleWeight(Weight((k - n,) * k), Weight((k,) * (n - k)), k, n)


def serre_dual(b: BundleWeight) -> BundleWeight:
    """The bundle V* (x) omega, whose H^{dim - i} is dual to H^i(V)."""
    om = canonical_twist(b.k, b.n)
    return BundleWeight(
        Weight(wt.add(wt.dual(b.alpha), om.alpha)), Weight(wt.add(wt.dual(b.beta), om.beta)), b.k, b.n
    )


def gaussian_binomial(n: int = 6, k: int = 3, step: int = 1) -> list[int]:
    """Coefficients of the q-binomial [n choose k] evaluated at q^step."""
    if not 0 <= k <= n:
        return [0]
    # [n choose k] = prod_{i=1..k} (1 - q^{n-k+i}) / (1 - q^i); exact polynomial division
    num = [1]
    for i in range(1, k + 1):
        num = _poly_mul(num, _one_minus(n - k + i))
    for i in range(1, k + 1):
        num = _poly_div_exact(num, _one_minus(i))
    out = [0] * ((len(num) - 1) * step + 1)
    for e, c in enumerate(num):
        out[e * step] = c
    return out


def _one_minus(e: int) -> list[int]:
    p = [0] * (e + 1)
    p[0], p[e] = 1, -1
    return p


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q)):
        c = a[i] // b[0]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("polynomial division is not exact")
    return q


def grassmannian_betti(n: int = 6, k: int = 3) -> list[int]:
    """Betti numbers beta_0 .. beta_{2k(n-k)} of Gr(k, n)."""
    return gaussian_binomial(n, k, step=2)


def cone_local_cohomology_from_betti(betti: Sequence[int], dim: int = 20) -> dict[int, int]:
    """Multiplicity of E in H^j_{closure of O1}(S) for 11 <= j <= 20."""

    def beta(i: int) -> int:
        return betti[i] if 0 <= i < len(betti) else 0

    out = {}
    for j in range(11, 18):
        out[j] = beta(dim - j - 1) - beta(dim - j - 3)
    out[18] = beta(1)
    out[19] = beta(0) - 1
    out[20] = 0
    return out


def schubert_cell_count(n: int = 6, k: int = 3) -> int:
    return comb(n, k)
