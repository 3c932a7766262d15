"""Equivariant D-modules on wedge^3 C^6: simples, local cohomology, Lyubeznik numbers.

The catalog records, for the six simple objects and a few named extensions,
their supports, characteristic cycles and all local cohomology modules with
support in orbit closures.  Tables for the two recurring indecomposable
extensions are obtained from the degenerate spectral sequences

    H^i_Z(H^1_{O3}(S)) = H^{i+1}_Z(S),   H^i_Z(H^5_{O2}(S)) = H^{i+1}_Z(B4),

and the spectral sequence machinery from :mod:`wedge3dmod.spectral` is used to
check every grid the tables give rise to.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Mapping, Sequence

from . import weights as wt
from .spectral import (
    CheckResult,
    SearchSpaceTooLarge,
    SimpleSum,
    SpectralGrid,
    Unknown,
    ss_check,
    ss_solve,
)
from .weights import Weight

__all__ = [
    "Orbit", "SimpleSum", "SpectralGrid", "CheckResult", "SearchSpaceTooLarge",
    "simples_catalog", "fourier_on_char_cycle", "b_function_roots", "filtration_jumps",
    "loc_coh_table", "build_e2", "ss_check", "ss_solve", "solve_table",
    "iterated_loc_coh", "lyubeznik_table", "derive_lyubeznik",
]


class UnknownPair(KeyError):
    pass


class Orbit(IntEnum):
    O0 = 0
    O1 = 1
    O2 = 2
    O3 = 3
    O4 = 4

    @property
    def dim(self) -> int:
        return (0, 10, 15, 19, 20)[self]

    @property
    def codim(self) -> int:
        return AMBIENT_DIM - self.dim

    @property
    def closure(self) -> frozenset["Orbit"]:
        return frozenset(o for o in Orbit if o <= self)

    @classmethod
    def parse(cls, s: "str | Orbit") -> "Orbit":
        if isinstance(s, Orbit):
            return s
        key = str(s).strip().upper()
        if key.isdigit():
            key = "O" + key
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown orbit {s!r}; expected one of O0..O4") from None

    def __str__(self) -> str:
        return self.name


AMBIENT_DIM = 20
FOURIER_ORBIT = {Orbit.O0: Orbit.O4, Orbit.O1: Orbit.O3, Orbit.O2: Orbit.O2, Orbit.O3: Orbit.O1, Orbit.O4: Orbit.O0}

# --------------------------------------------------------------------------- simples

SIMPLES = ("S", "B4", "D3", "D2", "D1", "E")
FOURIER_PARTNER = {"S": "E", "E": "S", "B4": "D1", "D1": "B4", "D2": "D2", "D3": "D3"}

# D f^q / D f^{q_prev} along the two filtrations; the first step is the submodule itself
FILTRATIONS: dict[str, tuple[tuple[str, Fraction], ...]] = {
    "Sf": (("S", Fraction(0)), ("D3", Fraction(-1)), ("E", Fraction(-5))),
    "SfSqrt": (("B4", Fraction(-3, 2)), ("D2", Fraction(-5, 2)), ("D1", Fraction(-7, 2))),
}

B_FUNCTION_ROOTS = (Fraction(-1), Fraction(-5, 2), Fraction(-7, 2), Fraction(-5))

_SUPPORT = {"S": Orbit.O4, "B4": Orbit.O4, "D3": Orbit.O3, "D2": Orbit.O2, "D1": Orbit.O1, "E": Orbit.O0}
_CHAR_CYCLE = {
    "S": {Orbit.O4},
    "B4": {Orbit.O4, Orbit.O3},
    "D3": {Orbit.O3, Orbit.O2, Orbit.O1},
    "D2": {Orbit.O2},
    "D1": {Orbit.O1, Orbit.O0},
    "E": {Orbit.O0},
}


@dataclass(frozen=True)
class SimpleInfo:
    label: str
    support: Orbit
    char_cycle: frozenset[Orbit]
    witness: Weight | None
    construction: str
    fourier_partner: str

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "support": str(self.support),
            "char_cycle": [str(o) for o in sorted(self.char_cycle, reverse=True)],
            "witness": None if self.witness is None else list(self.witness),
            "construction": self.construction,
            "fourier_partner": self.fourier_partner,
        }


def _power(q: Fraction) -> str:
    if q == 0:
        return "S"
    return f"Df^{q}"


def simples_catalog() -> dict[str, SimpleInfo]:
    """The six simple objects.

    Witness weights and constructions come from the filtrations: the step
    D f^q / D f^{q'} has the semi-invariant weight 2q(1^6), coming from f^q,
    as its only one annihilated by f.  The bottom step of each filtration has
    no such weight.
    """
    out = {}
    for chain in FILTRATIONS.values():
        prev = None
        for label, q in chain:
            if prev is None:
                construction, witness = _power(q), None
            else:
                construction, witness = f"{_power(q)}/{_power(prev)}", Weight(wt.const(int(2 * q)))
            out[label] = SimpleInfo(
                label, _SUPPORT[label], frozenset(_CHAR_CYCLE[label]), witness, construction, FOURIER_PARTNER[label]
            )
            prev = q
    return {k: out[k] for k in SIMPLES}


def fourier_on_char_cycle(cycle: frozenset[Orbit] | set[Orbit]) -> frozenset[Orbit]:
    """Projective duality on conormal components: O0<->O4, O1<->O3, O2 fixed."""
    return frozenset(FOURIER_ORBIT[Orbit.parse(o)] for o in cycle)


def b_function_roots() -> list[Fraction]:
    return sorted(B_FUNCTION_ROOTS)


def filtration_jumps() -> dict[str, list[Fraction]]:
    """Exponents where the filtrations of S_f and S_f*sqrt(f) jump (the generator excluded)."""
    return {name: [q for _, q in chain[1:]] for name, chain in FILTRATIONS.items()}


# --------------------------------------------------------------------------- modules


@dataclass(frozen=True)
class ModuleInfo:
    name: str
    factors: SimpleSum
    support: Orbit
    sub: str | None = None
    quotient: str | None = None
    description: str = ""

    @property
    def simple(self) -> bool:
        return self.name in SIMPLES

    @property
    def nonsplit(self) -> bool:
        return self.factors.length > 1


MODULES: dict[str, ModuleInfo] = {lab: ModuleInfo(lab, SimpleSum.of(lab), _SUPPORT[lab]) for lab in SIMPLES}
MODULES.update(
    {
        "N3": ModuleInfo("N3", SimpleSum.of("D3", "E"), Orbit.O3, "D3", "E", "H^1_{O3}(S) = S_f/S"),
        "N2": ModuleInfo("N2", SimpleSum.of("D2", "D1"), Orbit.O2, "D2", "D1", "H^5_{O2}(S) = S_f*sqrt(f)/D f^-3/2"),
        "Df1": ModuleInfo("Df1", SimpleSum.of("S", "D3"), Orbit.O4, "S", "D3", "D f^-1"),
        "Df52": ModuleInfo("Df52", SimpleSum.of("B4", "D2"), Orbit.O4, "B4", "D2", "D f^-5/2"),
        "Sf": ModuleInfo("Sf", SimpleSum.of("S", "D3", "E"), Orbit.O4, description="S_f"),
        "SfSqrt": ModuleInfo("SfSqrt", SimpleSum.of("B4", "D2", "D1"), Orbit.O4, description="S_f*sqrt(f)"),
    }
)
SOURCES = ("S", "B4", "D3", "D2", "D1", "E", "Sf", "SfSqrt", "Df1", "Df52")

# short exact sequences 0 -> A -> B -> C -> 0 among catalog modules
SHORT_EXACT = (
    ("S", "Df1", "D3"),
    ("Df1", "Sf", "E"),
    ("S", "Sf", "N3"),
    ("D3", "N3", "E"),
    ("B4", "Df52", "D2"),
    ("Df52", "SfSqrt", "D1"),
    ("B4", "SfSqrt", "N2"),
    ("D2", "N2", "D1"),
)

# quiver models: uniserial modules along arrow chains
QUIVER_CHAINS = {
    "N3": ("beta1",),
    "N2": ("delta1",),
    "Df1": ("beta0",),
    "Df52": ("delta0",),
    "Sf": ("beta1", "beta0"),
    "SfSqrt": ("delta1", "delta0"),
}


def quiver_model(name: str):
    from . import quiverrep as qr

    if name in SIMPLES:
        return qr.simple(name)
    return qr.uniserial(QUIVER_CHAINS[name])


# --------------------------------------------------------------------------- local cohomology tables

O0, O1, O2, O3, O4 = Orbit

# H^i_{closure O}(M) as {i: module}, for support not containing M
TABLES: dict[tuple[str, Orbit], dict[int, str]] = {
    ("S", O0): {20: "E"},
    ("S", O1): {10: "D1", 13: "E", 15: "E"},
    ("S", O2): {5: "N2", 7: "D1", 10: "E"},
    ("S", O3): {1: "N3"},
    ("D1", O0): {4: "E", 6: "E", 10: "E"},
    ("D2", O0): {5: "E", 7: "E", 9: "E", 11: "E", 13: "E", 15: "E"},
    ("D2", O1): {1: "D1", 3: "D1", 5: "D1", 6: "E", 8: "E", 10: "E"},
    ("D3", O0): {1: "E", 19: "E"},
    ("D3", O1): {1: "E", 9: "D1", 12: "E", 14: "E"},
    ("D3", O2): {1: "E", 4: "N2", 6: "D1", 9: "E"},
    ("B4", O0): {10: "E", 14: "E", 16: "E"},
    ("B4", O1): {4: "D1", 6: "D1", 7: "E", 9: "E", 11: "E"},
    ("B4", O2): {1: "N2"},
    ("B4", O3): {1: "N2"},
    ("Df1", O0): {1: "E"},
    ("Df1", O1): {1: "E"},
    ("Df1", O2): {1: "E"},
    ("Df1", O3): {1: "E"},
    ("Df52", O0): {5: "E", 7: "E", 11: "E"},
    ("Df52", O1): {1: "D1"},
    ("Df52", O2): {1: "D1"},
    ("Df52", O3): {1: "D1"},
}
for _o in (O0, O1, O2, O3):
    TABLES[("Sf", _o)] = {}
    TABLES[("SfSqrt", _o)] = {}

# the degenerate spectral sequences behind the two extension modules
SHIFTED = {"N3": ("S", O3, 1), "N2": ("B4", O2, 1)}


@dataclass(frozen=True)
class LocCohTable:
    source: str
    support: Orbit
    modules: tuple[tuple[int, str], ...]

    @property
    def rows(self) -> dict[int, SimpleSum]:
        return {i: MODULES[m].factors for i, m in self.modules}

    @property
    def nonsplit(self) -> list[int]:
        return [i for i, m in self.modules if MODULES[m].nonsplit]

    def module_at(self, i: int) -> str | None:
        return dict(self.modules).get(i)

    def row(self, i: int) -> SimpleSum:
        return self.rows.get(i, SimpleSum())

    def shifted(self, k: int) -> "LocCohTable":
        return LocCohTable(self.source, self.support, tuple((i + k, m) for i, m in self.modules))

    def euler(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for i, s in self.rows.items():
            for lab, c in s.items():
                out[lab] = out.get(lab, 0) + (-1) ** i * c
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "support": str(self.support),
            "rows": {str(i): s.to_json() for i, s in sorted(self.rows.items())},
            "nonsplit": self.nonsplit,
        }


def loc_coh_table(source: str, support: Orbit | str) -> LocCohTable:
    """All nonzero H^i_{closure of support}(source)."""
    support = Orbit.parse(support)
    if source not in MODULES:
        raise UnknownPair(f"unknown module {source!r}")
    info = MODULES[source]
    if info.support <= support:
        return LocCohTable(source, support, ((0, source),))
    if (source, support) in TABLES:
        rows = tuple(sorted(TABLES[(source, support)].items()))
        return LocCohTable(source, support, rows)
    if source in SHIFTED:
        base, _, k = SHIFTED[source]
        t = loc_coh_table(base, support)
        return LocCohTable(source, support, tuple((i - k, m) for i, m in t.modules))
    raise UnknownPair(f"no table for ({source}, {support})")


def all_tables() -> list[LocCohTable]:
    return [loc_coh_table(m, o) for m in MODULES for o in Orbit]


# --------------------------------------------------------------------------- spectral sequences


def build_e2(
    outer: Orbit | str,
    inner: LocCohTable,
    tables: Mapping[str, LocCohTable] | None = None,
    exact: bool = False,
) -> SpectralGrid:
    """E_2 page H^i_{outer}(H^j_{inner}(M)).

    By default each row of ``inner`` contributes through its composition
    factors; a nonsplit row of length two enters as its sub and quotient
    parts.  With ``exact=True`` the table of the extension module itself is
    used instead.  ``tables`` overrides the catalog for individual labels.
    """
    outer = Orbit.parse(outer)
    tables = dict(tables or {})

    def table(name: str) -> LocCohTable:
        if name in tables:
            return tables[name]
        return loc_coh_table(name, outer)

    g = SpectralGrid()
    for j, mod in inner.modules:
        info = MODULES[mod]
        if exact or info.simple:
            for i, s in table(mod).rows.items():
                g.add(i, j, s)
        elif info.sub is not None:
            for i, s in table(info.sub).rows.items():
                g.add(i, j, s, "sub")
            for i, s in table(info.quotient).rows.items():
                g.add(i, j, s, "quotient")
        else:
            raise ValueError(f"row {j} is {mod}, of length {info.factors.length}; use exact=True")
    return g


def spectral_grid(source: str, outer: Orbit | str, inner: Orbit | str, exact: bool = False) -> SpectralGrid:
    """H^i_{outer}(H^j_{inner}(source)) => H^{i+j}_{outer}(source), with the abutment filled in."""
    outer, inner = Orbit.parse(outer), Orbit.parse(inner)
    if not outer <= inner:
        raise ValueError(f"{outer} is not in the closure of {inner}")
    g = build_e2(outer, loc_coh_table(source, inner), exact=exact)
    g.abutment = dict(loc_coh_table(source, outer).rows)
    return g


def solve_table(
    unknown: str,
    outer: Orbit | str,
    inner: Orbit | str,
    source: str = "S",
    bound: int = 2,
    max_degree: int = AMBIENT_DIM,
    limit: int = 200_000,
) -> list[dict[int, SimpleSum]]:
    """Recover H^i_{outer}(unknown) from the spectral sequence for ``source``.

    The table of ``unknown`` over ``outer`` is replaced by free multiplicities
    0..bound of every simple supported in the closure of ``outer``, in degrees
    0..max_degree; all other tables come from the catalog.  Returns every
    consistent candidate table.
    """
    outer, inner = Orbit.parse(outer), Orbit.parse(inner)
    inner_table = loc_coh_table(source, inner)
    labels = [lab for lab in SIMPLES if _SUPPORT[lab] <= outer]
    blank = LocCohTable(unknown, outer, ())
    grid = build_e2(outer, inner_table, tables={unknown: blank})
    grid.abutment = dict(loc_coh_table(source, outer).rows)
    # where does the unknown module sit in the inner table, and with which role
    slots: list[tuple[int, str]] = []
    for j, mod in inner_table.modules:
        info = MODULES[mod]
        if mod == unknown:
            slots.append((j, "plain"))
        elif info.sub == unknown:
            slots.append((j, "sub"))
        elif info.quotient == unknown:
            slots.append((j, "quotient"))
    if not slots:
        raise ValueError(f"{unknown} does not occur in H_{inner}({source})")
    unknowns = [
        Unknown((i, lab), lab, tuple((i, j, role, 1) for j, role in slots))
        for i in range(max_degree + 1)
        for lab in labels
    ]
    out = []
    for sol in ss_solve(grid, unknowns, bound=bound, limit=limit):
        rows: dict[int, dict[str, int]] = {}
        for (i, lab), x in sol.items():
            rows.setdefault(i, {})[lab] = x
        out.append({i: SimpleSum(r) for i, r in sorted(rows.items())})
    return out


def iterated_loc_coh(source: str, z1: Orbit | str, z2: Orbit | str) -> dict[int, LocCohTable]:
    """H^i_{Z1}(H^j_{Z2}(source)) for every nonzero j, keyed by j."""
    z1, z2 = Orbit.parse(z1), Orbit.parse(z2)
    if not z1 <= z2:
        raise ValueError(f"{z1} is not in the closure of {z2}")
    out = {}
    for j, mod in loc_coh_table(source, z2).modules:
        t = loc_coh_table(mod, z1)
        out[j] = LocCohTable(f"H^{j}_{z2}({source})", z1, t.modules)
    return out


# --------------------------------------------------------------------------- Lyubeznik numbers

LYUBEZNIK: dict[Orbit, dict[tuple[int, int], int]] = {
    O1: {(0, 5): 1, (0, 7): 1, (4, 10): 1, (6, 10): 1, (10, 10): 1},
    O2: {(0, 10): 1, (4, 13): 1, (6, 13): 1, (10, 13): 1, (9, 15): 1, (13, 15): 1, (15, 15): 1},
    O3: {(19, 19): 1},
}


def lyubeznik_table(z: Orbit | str) -> dict[tuple[int, int], int]:
    """Nonzero lambda_{i,j} of the coordinate ring of the closure of z."""
    z = Orbit.parse(z)
    if z not in LYUBEZNIK:
        raise ValueError(f"Lyubeznik numbers are tabulated for O1, O2, O3, not {z}")
    return dict(sorted(LYUBEZNIK[z].items()))


def derive_lyubeznik(z: Orbit | str) -> dict[tuple[int, int], int]:
    """lambda_{i,j} = multiplicity of E in H^i_{O0}(H^{20-j}_Z(S)), from the tables."""
    out = {}
    for j, t in iterated_loc_coh("S", O0, z).items():
        for i, s in t.rows.items():
            if s["E"]:
                out[(i, AMBIENT_DIM - j)] = s["E"]
    return dict(sorted(out.items()))


# --------------------------------------------------------------------------- semi-invariant bookkeeping

CHI1 = wt.const(-5)
CHI2 = wt.const(-8)
# degrees of H^i(Gr, L^-k (x) Sym gr eta) killed by connecting maps, per tracked weight
GR_CANCELLED = {-5: (3, 4), -8: (3, 4, 5, 6)}


def de_coefficients_from_table(min_degree: int = 6) -> tuple[dict[int, int], dict[int, int]]:
    """(a_i, b_i) with H^i_{O2}(S) = D1^a_i + E^b_i for i >= 6, read off by witness weights."""
    from .charseries import character_coefficient

    cat = simples_catalog()
    w1, w2 = cat["D1"].witness, cat["E"].witness
    a, b = {}, {}
    for i, s in loc_coh_table("S", O2).rows.items():
        if i < min_degree:
            continue
        x = sum(c * character_coefficient(lab, w1) for lab, c in s.items())
        y = sum(c * character_coefficient(lab, w2) for lab, c in s.items())
        if x:
            a[i] = x
        if y:
            b[i] = y
    return a, b


def de_coefficients_from_scan(k: int = 12) -> tuple[dict[int, int], dict[int, int]]:
    """(a_i, b_i) from the Bott scans: degree g for (x^6) gives a or b at g + 2.

    Only degrees g >= 4 matter; the cancelling pairs are taken from GR_CANCELLED.
    """
    from .bott import gr_eta_profile

    out = []
    for x in (-5, -8):
        prof = gr_eta_profile(x, k)
        out.append({g + 2: c for g, c in prof.items() if g >= 4 and g not in GR_CANCELLED[x]})
    return out[0], out[1]


__all__ += ["Orbit", "LocCohTable", "ModuleInfo", "MODULES", "TABLES", "LYUBEZNIK", "UnknownPair"]
