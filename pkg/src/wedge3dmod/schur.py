"""Torus-level Schur calculus for GL_n.

Schur characters are expanded into monomials by Gelfand-Tsetlin branching,
exterior powers are taken by enumerating sub-multisets of weights, and a
symmetric Laurent polynomial is decomposed back into Schur characters by
peeling off lexicographically largest dominant exponents.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping, Sequence

from . import charseries as cs
from . import weights as wt
from .charseries import TruncationWindow, VirtualCharacter
from .weights import Weight


class NotSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class LaurentSymPoly:
    """A torus character: exponent vector in Z^n -> integer coefficient."""

    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {tuple(e): int(c) for e, c in self.terms.items() if c != 0}
        )

    @classmethod
    def from_weights(cls, weights: Sequence[Sequence[int]]) -> "LaurentSymPoly":
        return cls(Counter(tuple(w) for w in weights))

    def __add__(self, other: "LaurentSymPoly") -> "LaurentSymPoly":
        out = Counter(self.terms)
        out.update(other.terms)
        return LaurentSymPoly(out)

    def __sub__(self, other: "LaurentSymPoly") -> "LaurentSymPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentSymPoly(out)

    def __mul__(self, other: "LaurentSymPoly") -> "LaurentSymPoly":
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                key = tuple(x + y for x, y in zip(e, f))
                out[key] = out.get(key, 0) + c * d
        return LaurentSymPoly(out)

    def scaled(self, k: int) -> "LaurentSymPoly":
        return LaurentSymPoly({e: k * c for e, c in self.terms.items()})

    def total(self) -> int:
        """Value at x = (1, ..., 1), i.e. the dimension for an honest character."""
        return sum(self.terms.values())

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for i in range(len(e) - 1):
                swapped = e[:i] + (e[i + 1], e[i]) + e[i + 2 :]
                if self.terms.get(swapped, 0) != c:
                    return False
        return True

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(e), "coeff": c} for e, c in sorted(self.terms.items())]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentSymPoly":
        return cls({tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]})


def _interlacing(lam: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All mu with lam_1 >= mu_1 >= lam_2 >= ... >= mu_{n-1} >= lam_n."""
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    return itertools.product(*ranges)


@lru_cache(maxsize=None)
def _branching(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    # s_lam(x_1..x_n) = sum over interlacing mu of x_n^(|lam|-|mu|) s_mu(x_1..x_{n-1})
    if len(lam) == 1:
        return (((lam[0],), 1),)
    total = sum(lam)
    out: Counter = Counter()
    for mu in _interlacing(lam):
        last = total - sum(mu)
        for e, c in _branching(mu):
            out[e + (last,)] += c
    return tuple(sorted(out.items()))


def schur_monomials(lam: Sequence[int]) -> LaurentSymPoly:
    """Torus character of S_lam C^n, lam dominant (negative entries allowed).

    Computed on the shifted partition lam - (m^n), m = min entry, by the
    Gelfand-Tsetlin branching rule, then multiplied back by (x_1...x_n)^m.
    """
    lam = Weight(lam)
    m = lam[-1]
    shape = tuple(x - m for x in lam)
    return LaurentSymPoly({tuple(c + m for c in e): k for e, k in _branching(shape)})


def weyl_dim(lam: Sequence[int]) -> int:
    """prod_{i<j} (lam_i - lam_j + j - i) / (j - i); for dominant lam this is dim S_lam."""
    return int(weyl_polynomial(lam))


def weyl_polynomial(v: Sequence[int]) -> Fraction:
    """The Weyl dimension polynomial evaluated at an arbitrary integer vector.

    For non-dominant v this is the Euler characteristic of the corresponding
    line-bundle data: 0 or +/- the dimension after Bott's exchange.
    """
    n = len(v)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= v[i] - v[j] + j - i
            den *= j - i
    return Fraction(num, den)


def exterior_power(p: LaurentSymPoly, k: int) -> LaurentSymPoly:
    """Character of wedge^k of the representation with torus character ``p``."""
    if any(c < 0 for c in p.terms.values()):
        raise ValueError("exterior power needs an honest character (nonnegative coefficients)")
    if k < 0:
        raise ValueError("k must be nonnegative")
    basis = [e for e, c in sorted(p.terms.items()) for _ in range(c)]
    n = len(basis[0]) if basis else wt.DEFAULT_RANK
    if k == 0:
        return LaurentSymPoly({(0,) * n: 1})
    out: Counter = Counter()
    for subset in itertools.combinations(basis, k):
        out[tuple(map(sum, zip(*subset)))] += 1
    return LaurentSymPoly(out)


def decompose_into_schur(p: LaurentSymPoly, max_steps: int = 100_000) -> VirtualCharacter:
    """Write a symmetric Laurent polynomial as a Z-combination of Schur characters."""
    if not p.is_symmetric():
        raise NotSymmetric("input is not invariant under coordinate permutations")
    remaining = dict(p.terms)
    result: dict = {}
    for _ in range(max_steps):
        dominant = [e for e, c in remaining.items() if c and wt.is_dominant(e)]
        if not dominant:
            if any(remaining.values()):
                raise RuntimeError("symmetric remainder without dominant exponent")
            return VirtualCharacter(result)
        top = max(dominant)
        c = remaining[top]
        result[Weight(top)] = c
        for e, d in schur_monomials(top).terms.items():
            v = remaining.get(e, 0) - c * d
            if v:
                remaining[e] = v
            else:
                remaining.pop(e, None)
    raise RuntimeError("Schur decomposition did not terminate")


def character_to_monomials(m: VirtualCharacter) -> LaurentSymPoly:
    """sum_lam m(lam) * s_lam, as a torus character (m must be complete)."""
    if m.window is not None:
        raise ValueError("only complete characters can be expanded into monomials")
    out = LaurentSymPoly({})
    for lam, c in m.items():
        out = out + schur_monomials(lam).scaled(c)
    return out


def wedge3_character(n: int = 6) -> LaurentSymPoly:
    return schur_monomials((1, 1, 1) + (0,) * (n - 3))


WEDGE7_WEDGE3 = tuple(
    Weight(x)
    for x in [
        (4, 4, 4, 3, 3, 3),
        (5, 4, 4, 4, 2, 2),
        (5, 5, 3, 3, 3, 2),
        (5, 5, 4, 4, 2, 1),
        (5, 5, 5, 3, 3, 0),
        (6, 4, 4, 3, 3, 1),
        (6, 4, 4, 4, 3, 0),
        (6, 5, 3, 3, 2, 2),
        (6, 5, 4, 3, 2, 1),
        (7, 4, 3, 3, 3, 1),
        (7, 4, 4, 2, 2, 2),
    ]
)


@lru_cache(maxsize=None)
def plethysm(wedge: int = 7, of: int = 3, n: int = 6) -> VirtualCharacter:
    """Schur decomposition of wedge^wedge(wedge^of C^n)."""
    inner = schur_monomials((1,) * of + (0,) * (n - of))
    return decompose_into_schur(exterior_power(inner, wedge))


def b4_overlap_check(window: TruncationWindow, twist: Sequence[int] = cs.FOURIER_TWIST) -> bool:
    """True iff no irreducible of wedge^7(wedge^3 W) (x) (-10^6) occurs in [B4].

    ``window`` must contain all eleven twisted weights.
    """
    pieces = [Weight(wt.add(lam, twist)) for lam in plethysm().terms]
    missing = [mu for mu in pieces if not window.contains(mu)]
    if missing:
        raise cs.WindowError(f"window does not contain the twisted plethysm weights {missing}")
    b4 = cs.named_character("B4", window)
    return all(b4.multiplicity(mu) == 0 for mu in pieces)


def binomial_dimension(dim: int, k: int) -> int:
    return comb(dim, k)
