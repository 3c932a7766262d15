"""Multiplicity bookkeeping for spectral sequences of the shape H^i(H^j) => H^{i+j}.

Entries are sums of simple labels.  A differential d_r goes from (i, j) to
(i + r, j - r + 1), r >= 2, and can only cancel copies of one label against
copies of the same label.  Entries coming from a nonsplit extension row are
split into their sub and quotient parts; the connecting map of the long exact
sequence may then cancel a quotient copy at (i, j) against a sub copy at
(i + 1, j).

Since every cancellation raises the total degree by one, the cancellation
graph for a fixed label is bipartite (even against odd total degree), and a
consistent set of cancellations is a perfect b-matching on the copies that do
not survive.  That matching is decided by a max-flow computation.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import networkx as nx

LABEL_ORDER = ("S", "B4", "D3", "D2", "D1", "E")
ROLES = ("plain", "sub", "quotient")

Cell = tuple[int, int]


class SearchSpaceTooLarge(RuntimeError):
    pass


def _label_key(label: str):
    return (LABEL_ORDER.index(label), label) if label in LABEL_ORDER else (len(LABEL_ORDER), label)


class SimpleSum(Mapping[str, int]):
    """A finite formal sum of simple labels with nonnegative multiplicities."""

    __slots__ = ("_m",)

    def __init__(self, data: Mapping[str, int] | Iterable[tuple[str, int]] | None = None, **kw: int):
        m: dict[str, int] = {}
        items = list(data.items() if isinstance(data, Mapping) else (data or ()))
        for label, c in items + list(kw.items()):
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"multiplicity of {label} must be a nonnegative integer, got {c!r}")
            if c:
                m[label] = m.get(label, 0) + c
        self._m = dict(sorted(m.items(), key=lambda kv: _label_key(kv[0])))

    @classmethod
    def of(cls, *labels: str) -> "SimpleSum":
        out: dict[str, int] = defaultdict(int)
        for lab in labels:
            out[lab] += 1
        return cls(out)

    def __getitem__(self, label: str) -> int:
        return self._m.get(label, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def __contains__(self, label) -> bool:
        return label in self._m

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return self._m == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._m.items()))

    def __add__(self, other: Mapping[str, int]) -> "SimpleSum":
        out = dict(self._m)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return SimpleSum(out)

    def scaled(self, c: int) -> "SimpleSum":
        return SimpleSum({k: c * v for k, v in self._m.items()})

    @property
    def length(self) -> int:
        return sum(self._m.values())

    def to_json(self) -> dict[str, int]:
        return dict(self._m)

    def __str__(self) -> str:
        if not self._m:
            return "0"
        return "+".join(k if v == 1 else f"{v}{k}" for k, v in self._m.items())

    def __repr__(self) -> str:
        return f"SimpleSum({self._m!r})"


ZERO = SimpleSum()


@dataclass
class SpectralGrid:
    """E_2 page plus abutment.

    ``cells`` maps (i, j, role) to a SimpleSum; role is "plain" for ordinary
    entries and "sub"/"quotient" for the two parts of an extension row.
    """

    cells: dict[tuple[int, int, str], SimpleSum] = field(default_factory=dict)
    abutment: dict[int, SimpleSum] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, entries: Mapping[Cell, Mapping[str, int]], abutment: Mapping[int, Mapping[str, int]] = ()):
        g = cls()
        for (i, j), s in entries.items():
            g.add(i, j, s)
        g.abutment = {n: SimpleSum(s) for n, s in dict(abutment).items() if SimpleSum(s)}
        return g

    def add(self, i: int, j: int, s: Mapping[str, int], role: str = "plain") -> None:
        if role not in ROLES:
            raise ValueError(f"unknown role {role!r}")
        s = SimpleSum(s)
        if not s:
            return
        key = (i, j, role)
        self.cells[key] = self.cells.get(key, ZERO) + s

    def copy(self) -> "SpectralGrid":
        return SpectralGrid(dict(self.cells), dict(self.abutment))

    @property
    def entries(self) -> dict[Cell, SimpleSum]:
        out: dict[Cell, SimpleSum] = {}
        for (i, j, _), s in self.cells.items():
            out[(i, j)] = out.get((i, j), ZERO) + s
        return dict(sorted(out.items()))

    @property
    def extension_rows(self) -> list[int]:
        return sorted({j for (_, j, role) in self.cells if role != "plain"})

    def labels(self) -> list[str]:
        found = {lab for s in self.cells.values() for lab in s} | {lab for s in self.abutment.values() for lab in s}
        return sorted(found, key=_label_key)

    def euler(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for (i, j), s in self.entries.items():
            for lab, c in s.items():
                out[lab] += (-1) ** (i + j) * c
        return {k: v for k, v in sorted(out.items(), key=lambda kv: _label_key(kv[0])) if v}

    def abutment_euler(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for n, s in self.abutment.items():
            for lab, c in s.items():
                out[lab] += (-1) ** n * c
        return {k: v for k, v in sorted(out.items(), key=lambda kv: _label_key(kv[0])) if v}

    def to_json(self) -> dict:
        return {
            "entries": [
                {"i": i, "j": j, "role": role, "value": s.to_json()}
                for (i, j, role), s in sorted(self.cells.items())
            ],
            "abutment": {str(n): s.to_json() for n, s in sorted(self.abutment.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SpectralGrid":
        g = cls()
        entries = data.get("entries", [])
        if isinstance(entries, Mapping):
            # compact form {"i,j": {label: mult}}
            for key, value in entries.items():
                i, j = (int(x) for x in key.split(","))
                g.add(i, j, value)
        else:
            for e in entries:
                g.add(int(e["i"]), int(e["j"]), e["value"], e.get("role", "plain"))
        g.abutment = {int(n): SimpleSum(s) for n, s in data.get("abutment", {}).items() if SimpleSum(s)}
        return g


@dataclass(frozen=True)
class Cancellation:
    source: Cell
    target: Cell
    label: str
    count: int
    kind: str  # "d2", "d3", ... or "les"

    def to_json(self) -> dict:
        return {
            "from": list(self.source),
            "to": list(self.target),
            "label": self.label,
            "count": self.count,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class CheckResult:
    consistent: bool
    cancellations: tuple[Cancellation, ...] = ()
    extension_rows: tuple[int, ...] = ()

    @property
    def uses_extension_rows(self) -> bool:
        return bool(self.extension_rows)

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "cancellations": [c.to_json() for c in self.cancellations],
            "extension_rows": list(self.extension_rows),
        }


def _relation(a: tuple[int, int, str], b: tuple[int, int, str]) -> str | None:
    """Kind of cancellation a -> b, if any."""
    (ia, ja, ra), (ib, jb, rb) = a, b
    if ib + jb != ia + ja + 1:
        return None
    r = ib - ia
    if r >= 2 and jb == ja - r + 1:
        return f"d{r}"
    if ra == "quotient" and rb == "sub" and ja == jb and r == 1:
        return "les"
    return None


def _distributions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for x in range(max(0, total - rest), min(total, caps[0]) + 1):
        for tail in _distributions(total - x, caps[1:]):
            yield (x,) + tail


def _match_label(
    tokens: dict[tuple[int, int, str], int], abut: dict[int, int]
) -> list[tuple[tuple[int, int, str], tuple[int, int, str], int, str]] | None:
    by_n: dict[int, list] = defaultdict(list)
    for key in sorted(tokens):
        by_n[key[0] + key[1]].append(key)
    for n, need in abut.items():
        if need and sum(tokens[k] for k in by_n.get(n, ())) < need:
            return None
    edges = []
    keys = sorted(tokens)
    for a in keys:
        for b in keys:
            kind = _relation(a, b)
            if kind:
                edges.append((a, b, kind))
    degrees = sorted(set(by_n) | set(abut))
    choices = [list(_distributions(abut.get(n, 0), [tokens[k] for k in by_n.get(n, ())])) for n in degrees]
    for combo in itertools.product(*choices):
        need = dict(tokens)
        for n, dist in zip(degrees, combo):
            for key, x in zip(by_n.get(n, ()), dist):
                need[key] -= x
        flow = _perfect_b_matching(need, edges)
        if flow is not None:
            return flow
    return None


def _perfect_b_matching(need, edges):
    even = {k: c for k, c in need.items() if c and (k[0] + k[1]) % 2 == 0}
    odd = {k: c for k, c in need.items() if c and (k[0] + k[1]) % 2 == 1}
    total = sum(even.values())
    if total != sum(odd.values()):
        return None
    if total == 0:
        return []
    g = nx.DiGraph()
    for k, c in even.items():
        g.add_edge("src", ("n", k), capacity=c)
    for k, c in odd.items():
        g.add_edge(("n", k), "snk", capacity=c)
    kinds = {}
    for a, b, kind in edges:
        if need.get(a) and need.get(b):
            u, v = (a, b) if a in even else (b, a)
            g.add_edge(("n", u), ("n", v))
            kinds[(u, v)] = (a, b, kind)
    value, flows = nx.maximum_flow(g, "src", "snk")
    if value != total:
        return None
    out = []
    for (u, v), (a, b, kind) in sorted(kinds.items()):
        f = flows[("n", u)].get(("n", v), 0)
        if f:
            out.append((a, b, f, kind))
    return out


def ss_check(grid: SpectralGrid) -> CheckResult:
    """Is there a set of equal-label cancellations whose leftover is the abutment?"""
    cancellations: list[Cancellation] = []
    for label in grid.labels():
        tokens = {key: s[label] for key, s in grid.cells.items() if s[label]}
        abut = {n: s[label] for n, s in grid.abutment.items() if s[label]}
        found = _match_label(tokens, abut)
        if found is None:
            return CheckResult(False, (), tuple(grid.extension_rows))
        for a, b, f, kind in found:
            cancellations.append(Cancellation(a[:2], b[:2], label, f, kind))
    cancellations.sort(key=lambda c: (c.source, c.target, _label_key(c.label), c.kind))
    return CheckResult(True, tuple(cancellations), tuple(grid.extension_rows))


@dataclass(frozen=True)
class Unknown:
    """An unknown multiplicity of ``label``, entering each listed (i, j, role) with a weight."""

    name: Hashable
    label: str
    cells: tuple[tuple[int, int, str, int], ...]


def _prune(grid: SpectralGrid, unknowns: Sequence[Unknown]) -> list[Unknown]:
    alive = list(unknowns)
    while True:
        kept = []
        for u in alive:
            others = {
                (i, j, role)
                for v in alive
                if v.label == u.label
                for (i, j, role, _) in v.cells
            }
            known = {key for key, s in grid.cells.items() if s[u.label]}
            pool = others | known
            ok = False
            for i, j, role, _ in u.cells:
                me = (i, j, role)
                if grid.abutment.get(i + j, ZERO)[u.label]:
                    ok = True
                elif any(p != me and (_relation(me, p) or _relation(p, me)) for p in pool):
                    ok = True
                if ok:
                    break
            if ok:
                kept.append(u)
        if len(kept) == len(alive):
            return kept
        alive = kept


def ss_solve(
    grid: SpectralGrid, unknowns: Sequence[Unknown], bound: int = 2, limit: int = 200_000
) -> list[dict[Hashable, int]]:
    """All assignments (0..bound) of the unknowns that make ``grid`` consistent.

    Unknowns that can neither survive to the abutment nor meet a possible
    cancellation partner are fixed to zero before the search.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    live = _prune(grid, unknowns)
    space = (bound + 1) ** len(live)
    if space > limit:
        raise SearchSpaceTooLarge(f"{len(live)} free cells give {space} assignments, above the limit {limit}")
    solutions = []
    for values in itertools.product(range(bound + 1), repeat=len(live)):
        g = grid.copy()
        for u, x in zip(live, values):
            if x:
                for i, j, role, w in u.cells:
                    g.add(i, j, {u.label: w * x}, role)
        if ss_check(g).consistent:
            solutions.append({u.name: x for u, x in zip(live, values) if x})
    return solutions
