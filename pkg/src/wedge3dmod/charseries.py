"""Truncated calculus in the Grothendieck group of admissible GL_n-representations.

An element of that group is a formal sum ``sum a_lam e^lam`` over dominant
weights.  The series met in practice are infinite, so every ``VirtualCharacter``
carries the ``TruncationWindow`` inside which its coefficients are exact.

Rational expressions ``num / prod(1 - e^delta)`` (optionally times a two-sided
geometric factor ``sum_{i in Z} e^{i sigma}``) are expanded by bounded
enumeration of the denominator exponents: a linear grading ``phi`` that is
strictly positive on every ``delta`` turns the window into a finite knapsack
budget.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import weights as wt
from .weights import Weight


class WindowError(ValueError):
    """The truncation window does not bound the requested expansion."""


class OutsideWindow(KeyError):
    """The coefficient was asked for at a weight where it is not known."""


class NegativeMultiplicity(ArithmeticError):
    """A module character came out with a negative coefficient."""


# --------------------------------------------------------------------------- windows


@dataclass(frozen=True)
class TruncationWindow:
    """Weights mu with min_degree <= |mu| <= max_degree and lower <= mu <= upper entrywise.

    ``lower``/``upper`` are optional per-coordinate bounds (tuples of length n).
    """

    min_degree: int
    max_degree: int
    lower: tuple[int, ...] | None = None
    upper: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise ValueError("min_degree must not exceed max_degree")
        for name in ("lower", "upper"):
            b = getattr(self, name)
            if b is not None and not isinstance(b, tuple):
                object.__setattr__(self, name, tuple(b))
        if self.lower is not None and self.upper is not None:
            if len(self.lower) != len(self.upper):
                raise ValueError("entry bounds of different lengths")

    @classmethod
    def make(
        cls,
        min_degree: int,
        max_degree: int,
        min_entry: int | None = None,
        max_entry: int | None = None,
        n: int = wt.DEFAULT_RANK,
    ) -> "TruncationWindow":
        lower = None if min_entry is None else (min_entry,) * n
        upper = None if max_entry is None else (max_entry,) * n
        return cls(min_degree, max_degree, lower, upper)

    @classmethod
    def point(cls, mu: Sequence[int]) -> "TruncationWindow":
        mu = tuple(mu)
        return cls(sum(mu), sum(mu), mu, mu)

    def contains(self, mu: Sequence[int]) -> bool:
        d = sum(mu)
        if d < self.min_degree or d > self.max_degree:
            return False
        if self.lower is not None and any(x < lo for x, lo in zip(mu, self.lower)):
            return False
        if self.upper is not None and any(x > hi for x, hi in zip(mu, self.upper)):
            return False
        return True

    def spread_bound(self) -> int | None:
        """Upper bound for mu_1 - mu_n over dominant mu in the window."""
        if self.lower is None or self.upper is None:
            return None
        return self.upper[0] - self.lower[-1]

    def shift(self, lam: Sequence[int]) -> "TruncationWindow":
        d = sum(lam)
        lower = None if self.lower is None else tuple(a + b for a, b in zip(self.lower, lam))
        upper = None if self.upper is None else tuple(a + b for a, b in zip(self.upper, lam))
        return TruncationWindow(self.min_degree + d, self.max_degree + d, lower, upper)

    def reflect(self) -> "TruncationWindow":
        """Image of the window under mu -> mu*."""
        lower = None if self.upper is None else tuple(-x for x in reversed(self.upper))
        upper = None if self.lower is None else tuple(-x for x in reversed(self.lower))
        return TruncationWindow(-self.max_degree, -self.min_degree, lower, upper)

    def intersect(self, other: "TruncationWindow | None") -> "TruncationWindow":
        if other is None:
            return self
        lo_d = max(self.min_degree, other.min_degree)
        hi_d = min(self.max_degree, other.max_degree)
        if lo_d > hi_d:
            # empty degree range; keep a valid but vacuous window
            hi_d = lo_d
            lower = upper = None
            return TruncationWindow(lo_d, hi_d, (10**9,) * self._rank(other), upper)
        return TruncationWindow(
            lo_d,
            hi_d,
            _merge(self.lower, other.lower, max),
            _merge(self.upper, other.upper, min),
        )

    def _rank(self, other: "TruncationWindow") -> int:
        for b in (self.lower, self.upper, other.lower, other.upper):
            if b is not None:
                return len(b)
        return wt.DEFAULT_RANK

    def to_json(self) -> dict:
        out: dict = {"minDegree": self.min_degree, "maxDegree": self.max_degree}
        if self.lower is not None:
            out["lowerEntries"] = list(self.lower)
        if self.upper is not None:
            out["upperEntries"] = list(self.upper)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncationWindow":
        lower = data.get("lowerEntries")
        upper = data.get("upperEntries")
        return cls(
            int(data["minDegree"]),
            int(data["maxDegree"]),
            None if lower is None else tuple(lower),
            None if upper is None else tuple(upper),
        )


def _merge(a, b, pick):
    if a is None:
        return b
    if b is None:
        return a
    return tuple(pick(x, y) for x, y in zip(a, b))


def intersect_windows(a: TruncationWindow | None, b: TruncationWindow | None):
    if a is None:
        return b
    return a.intersect(b)


def _shift_window(w: TruncationWindow | None, lam) -> TruncationWindow | None:
    return None if w is None else w.shift(lam)


# --------------------------------------------------------------------------- characters


@dataclass(frozen=True)
class VirtualCharacter:
    """Finitely supported map Weight -> Z, exact on ``window``.

    ``window=None`` marks a complete character: every term is listed and the
    coefficient is zero everywhere else.
    """

    terms: Mapping[Weight, int]
    window: TruncationWindow | None = None

    def __post_init__(self):
        clean = {}
        for lam, c in self.terms.items():
            if c == 0:
                continue
            lam = lam if isinstance(lam, Weight) else Weight(lam)
            if self.window is not None and not self.window.contains(lam):
                continue
            clean[lam] = int(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, lam: Sequence[int], coeff: int = 1) -> "VirtualCharacter":
        return cls({Weight(lam): coeff})

    @classmethod
    def zero(cls, window: TruncationWindow | None = None) -> "VirtualCharacter":
        return cls({}, window)

    @property
    def rank(self) -> int:
        for lam in self.terms:
            return len(lam)
        w = self.window
        if w is not None:
            for b in (w.lower, w.upper):
                if b is not None:
                    return len(b)
        return wt.DEFAULT_RANK

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def multiplicity(self, mu: Sequence[int]) -> int:
        """<[M], e^mu>; raises OutsideWindow where the coefficient is unknown."""
        if self.window is not None and not self.window.contains(mu):
            raise OutsideWindow(f"weight {tuple(mu)} lies outside the truncation window")
        return self.terms.get(tuple(mu), 0)

    def restrict(self, window: TruncationWindow) -> "VirtualCharacter":
        return VirtualCharacter(self.terms, intersect_windows(self.window, window))

    def _combine(self, other: "VirtualCharacter", sign: int) -> "VirtualCharacter":
        w = intersect_windows(self.window, other.window)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + sign * c
        return VirtualCharacter(out, w)

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self._combine(other, 1)

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self._combine(other, -1)

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter({k: -v for k, v in self.terms.items()}, self.window)

    def scaled(self, k: int) -> "VirtualCharacter":
        return VirtualCharacter({lam: k * c for lam, c in self.terms.items()}, self.window)

    def shift(self, lam: Sequence[int]) -> "VirtualCharacter":
        """Product with the one-dimensional character e^lam."""
        terms = {Weight(wt.add(mu, lam)): c for mu, c in self.terms.items()}
        return VirtualCharacter(terms, _shift_window(self.window, lam))

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def is_multiplicity_free(self) -> bool:
        return all(c in (0, 1) for c in self.terms.values())

    def min_coefficient(self) -> int:
        return min(self.terms.values(), default=0)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "window": None if self.window is None else self.window.to_json(),
            "terms": [{"weight": list(lam), "mult": c} for lam, c in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> "VirtualCharacter":
        w = data.get("window")
        return cls(
            {Weight(t["weight"]): int(t["mult"]) for t in data["terms"]},
            None if w is None else TruncationWindow.from_json(w),
        )


def formal_product(a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    """Convolution under e^lam * e^mu = e^(lam+mu).

    At least one factor must be complete; the product of two truncated series
    is not determined by their truncations.
    """
    if a.window is not None and b.window is not None:
        raise WindowError("formal product of two truncated series is not supported")
    if a.window is not None:
        a, b = b, a
    if b.window is None:
        out: dict = {}
        for lam, c in a.terms.items():
            for mu, d in b.terms.items():
                key = Weight(wt.add(lam, mu))
                out[key] = out.get(key, 0) + c * d
        return VirtualCharacter(out)
    result = None
    for lam, c in sorted(a.terms.items()):
        piece = b.shift(lam).scaled(c)
        result = piece if result is None else result + piece
    if result is None:
        return VirtualCharacter.zero(b.window)
    return result


def dual_series(m: VirtualCharacter) -> VirtualCharacter:
    terms = {wt.dual(lam): c for lam, c in m.terms.items()}
    return VirtualCharacter(terms, None if m.window is None else m.window.reflect())


FOURIER_TWIST = wt.const(-10)


def fourier(m: VirtualCharacter, twist: Sequence[int] = FOURIER_TWIST) -> VirtualCharacter:
    """[F(M)] = [M]* . e^(-10^6) for the representation wedge^3 C^6."""
    return dual_series(m).shift(twist)


def fourier_window(w: TruncationWindow, twist: Sequence[int] = FOURIER_TWIST) -> TruncationWindow:
    return w.reflect().shift(twist)


def multiplicity(m: VirtualCharacter, mu: Sequence[int]) -> int:
    return m.multiplicity(mu)


def is_multiplicity_free(m: VirtualCharacter) -> bool:
    return m.is_multiplicity_free()


# --------------------------------------------------------------------------- rational expressions


@dataclass(frozen=True)
class RationalCharacter:
    """``sum(c * e^nu) / prod(1 - e^delta)``, optionally times ``sum_i e^(i*sigma)``."""

    numerator: tuple[tuple[Weight, int], ...]
    denominators: tuple[Weight, ...]
    bilateral: Weight | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "numerator", tuple((Weight(nu), int(c)) for nu, c in self.numerator)
        )
        object.__setattr__(self, "denominators", tuple(Weight(d) for d in self.denominators))
        if self.bilateral is not None:
            sigma = Weight(self.bilateral)
            if len(set(sigma)) != 1 or sigma[0] == 0:
                raise ValueError("the two-sided factor must be a nonzero central weight")
            object.__setattr__(self, "bilateral", sigma)
        for d in self.denominators:
            if not any(d):
                raise ValueError("denominator factor 1 - e^0 is not invertible")
        if not _gradings(self.denominators, self.bilateral):
            raise ValueError(
                "denominator weights admit no positive grading; the expansion is not well defined"
            )

    @classmethod
    def of(cls, numerator, denominators, bilateral=None) -> "RationalCharacter":
        if isinstance(numerator, (tuple, list)) and numerator and isinstance(numerator[0], int):
            numerator = [(numerator, 1)]
        return cls(tuple(numerator), tuple(denominators), bilateral)

    def times_monomial(self, lam: Sequence[int]) -> "RationalCharacter":
        num = tuple((Weight(wt.add(nu, lam)), c) for nu, c in self.numerator)
        return RationalCharacter(num, self.denominators, self.bilateral)

    def dual(self) -> "RationalCharacter":
        return RationalCharacter(
            tuple((wt.dual(nu), c) for nu, c in self.numerator),
            tuple(wt.dual(d) for d in self.denominators),
            None if self.bilateral is None else wt.dual(self.bilateral),
        )


@dataclass(frozen=True)
class _Grading:
    spread: int  # coefficient of mu_1 - mu_n
    deg: int  # coefficient of |mu|, in {-1, 0, 1}

    def __call__(self, mu: Sequence[int]) -> int:
        return self.spread * (mu[0] - mu[-1]) + self.deg * sum(mu)

    def window_max(self, w: TruncationWindow) -> int | None:
        total = 0
        if self.spread:
            sb = w.spread_bound()
            if sb is None:
                return None
            total += self.spread * sb
        if self.deg > 0:
            total += w.max_degree
        elif self.deg < 0:
            total -= w.min_degree
        return total


def _gradings(gens: Sequence[Sequence[int]], bilateral=None) -> list[_Grading]:
    out = []
    for s in range(0, 9):
        for d in (1, -1, 0):
            if s == 0 and d == 0:
                continue
            g = _Grading(s, d)
            if all(g(x) > 0 for x in gens) and (bilateral is None or g(bilateral) == 0):
                out.append(g)
    return out


def _estimate(costs: Sequence[int], budget: int) -> float:
    """Rough count of lattice points a >= 0 with sum(a_i c_i) <= budget."""
    if budget < 0:
        return 0.0
    r = len(costs)
    return (budget + sum(costs)) ** r / (math.factorial(r) * math.prod(costs))


def _choose_grading(gens, bilateral, window: TruncationWindow, numerators) -> tuple[_Grading, int]:
    best = None
    for g in _gradings(gens, bilateral):
        top = g.window_max(window)
        if top is None:
            continue
        costs = [g(x) for x in gens]
        est = sum(_estimate(costs, top - g(nu)) for nu in numerators)
        if best is None or est < best[0]:
            best = (est, g, top)
    if best is None:
        raise WindowError(
            "window is unbounded on the open side of the cone; add entry bounds or degree bounds"
        )
    return best[1], best[2]


def _walk(
    gens: Sequence[tuple[int, ...]],
    costs: Sequence[int],
    start: tuple[int, ...],
    budget: int,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (start + sum a_i gens_i, a) over all a >= 0 with sum a_i costs_i <= budget."""
    r = len(gens)
    exps = [0] * r

    def rec(idx, vec, remaining):
        if idx == r:
            yield vec, tuple(exps)
            return
        g, c = gens[idx], costs[idx]
        a = 0
        while True:
            exps[idx] = a
            yield from rec(idx + 1, vec, remaining - a * c)
            a += 1
            if a * c > remaining:
                break
            vec = tuple(x + y for x, y in zip(vec, g))
        exps[idx] = 0

    if budget >= 0:
        yield from rec(0, tuple(start), budget)


def expand_terms(
    numerator: Iterable[tuple[Sequence[int], int]],
    gens: Sequence[Sequence[int]],
    window: TruncationWindow,
    bilateral: Sequence[int] | None = None,
    accept: Callable[[tuple[int, ...]], bool] | None = None,
) -> VirtualCharacter:
    """Expand ``num * prod 1/(1 - e^g)`` (times the bilateral sum) inside ``window``.

    ``accept`` filters exponent vectors; it lets callers restrict the geometric
    sums, e.g. to m + n >= k.
    """
    numerator = [(tuple(nu), c) for nu, c in numerator]
    gens = [tuple(g) for g in gens]
    grading, top = _choose_grading(gens, bilateral, window, [nu for nu, _ in numerator])
    costs = [grading(g) for g in gens]
    out: dict[tuple[int, ...], int] = {}
    sigma = None if bilateral is None else tuple(bilateral)
    for nu, c in numerator:
        for vec, exps in _walk(gens, costs, nu, top - grading(nu)):
            if accept is not None and not accept(exps):
                continue
            if sigma is None:
                if window.contains(vec):
                    out[vec] = out.get(vec, 0) + c
                continue
            ds, d0 = sum(sigma), sum(vec)
            lo = (window.min_degree - d0) / ds
            hi = (window.max_degree - d0) / ds
            if ds < 0:
                lo, hi = hi, lo
            for i in range(math.ceil(lo), math.floor(hi) + 1):
                mu = tuple(x + i * s for x, s in zip(vec, sigma))
                if window.contains(mu):
                    out[mu] = out.get(mu, 0) + c
    return VirtualCharacter({Weight(k): v for k, v in out.items() if v and wt.is_dominant(k)}, window)


def expand(r: RationalCharacter, window: TruncationWindow) -> VirtualCharacter:
    return expand_terms(r.numerator, r.denominators, window, r.bilateral)


def coefficient(r: RationalCharacter, mu: Sequence[int]) -> int:
    """Single coefficient of a rational character, computed on the one-point window."""
    return expand(r, TruncationWindow.point(mu)).multiplicity(mu)


# --------------------------------------------------------------------------- the named characters

S_GENERATORS = tuple(
    Weight(x)
    for x in [
        (1, 1, 1, 0, 0, 0),
        (2, 1, 1, 1, 1, 0),
        (2, 2, 2, 1, 1, 1),
        (2, 2, 2, 2, 2, 2),
        (3, 3, 2, 2, 1, 1),
    ]
)
F_WEIGHT = wt.const(2)  # weight of the semi-invariant f
S_MOD_F_GENERATORS = tuple(g for g in S_GENERATORS if g != F_WEIGHT)

CHAR_S = RationalCharacter.of(wt.zero(), S_GENERATORS)
CHAR_E = RationalCharacter.of(wt.const(-10), [wt.dual(g) for g in S_GENERATORS])
CHAR_SF = RationalCharacter.of(wt.zero(), S_MOD_F_GENERATORS, bilateral=F_WEIGHT)
CHAR_SF_SQRT = RationalCharacter.of(wt.const(1), S_MOD_F_GENERATORS, bilateral=F_WEIGHT)
CHAR_B4 = RationalCharacter.of(
    wt.const(-3),
    [
        (0, 0, 0, -1, -1, -1),
        (1, 1, 0, 0, -1, -1),
        (1, 1, 1, 0, 0, 0),
        (2, 1, 1, 1, 1, 0),
        (2, 2, 2, 2, 2, 2),
    ],
)
CHAR_S_MOD_F = RationalCharacter(((wt.zero(), 1), (F_WEIGHT, -1)), S_GENERATORS)

RATIONAL = {"S": CHAR_S, "E": CHAR_E, "Sf": CHAR_SF, "SfSqrt": CHAR_SF_SQRT, "B4": CHAR_B4}
NAMES = ("S", "E", "Sf", "SfSqrt", "B4", "D1", "D2", "D3")


def _require_nonnegative(name: str, m: VirtualCharacter) -> VirtualCharacter:
    if not m.is_nonnegative():
        bad = [(lam, c) for lam, c in m.items() if c < 0][:3]
        raise NegativeMultiplicity(f"[{name}] has negative coefficients, e.g. {bad}")
    return m


def named_character(name: str, window: TruncationWindow) -> VirtualCharacter:
    """Character of one of the modules S, E, S_f, S_f*sqrt(f), B4, D1, D2, D3 on ``window``."""
    if name in RATIONAL:
        return expand(RATIONAL[name], window)
    if name == "D1":
        # F(B4) = D1, and F is an involution on windows
        return _require_nonnegative("D1", fourier(expand(CHAR_B4, fourier_window(window))))
    if name == "D2":
        m = (
            expand(CHAR_SF_SQRT, window)
            - expand(CHAR_B4, window)
            - named_character("D1", window)
        )
        return _require_nonnegative("D2", m)
    if name == "D3":
        m = expand(CHAR_SF, window) - expand(CHAR_S, window) - expand(CHAR_E, window)
        return _require_nonnegative("D3", m)
    raise KeyError(f"unknown character {name!r}; expected one of {', '.join(NAMES)}")


def character_coefficient(name: str, mu: Sequence[int]) -> int:
    return named_character(name, TruncationWindow.point(mu)).multiplicity(mu)


# --------------------------------------------------------------------------- B4 through the filtration of D f^(-3/2)


def char_ik_tilde(k: int, window: TruncationWindow) -> VirtualCharacter:
    """Character of the ideal I~_k of S/(f):

    (1-e^(1,1,1,0,0,0))^-1 (1-e^(2,1,1,1,1,0))^-1 * sum_{m+n>=k} e^(m(2,2,2,1,1,1) + n(3,3,2,2,1,1)).
    """
    if k < 1:
        raise ValueError("k must be positive")
    gens = S_MOD_F_GENERATORS  # order: (111000), (211110), (222111), (332211)
    return expand_terms([(wt.zero(), 1)], gens, window, accept=lambda e: e[2] + e[3] >= k)


def char_b4_via_filtration(window: TruncationWindow) -> VirtualCharacter:
    """[S] + sum_{k>=1} [I~_k] e^((-2k)^6), which equals [B4] e^(3^6)."""
    sb = window.spread_bound()
    if sb is None:
        raise WindowError("the filtration sum needs entry bounds to terminate")
    total = expand(CHAR_S, window)
    # every weight of I~_k has mu_1 - mu_6 >= m + n >= k
    for k in range(1, sb + 1):
        shift = wt.const(-2 * k)
        piece = char_ik_tilde(k, window.shift(wt.const(2 * k))).shift(shift)
        total = total + piece
    return total
