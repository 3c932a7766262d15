"""Representations of the quiver with relations modelling equivariant D-modules on wedge^3 C^6.

Two components, each a line of three vertices with arrows both ways::

    s  <-alpha0/beta0->  d3  <-alpha1/beta1->  e
    b4 <-gamma0/delta0-> d2  <-gamma1/delta1-> d1

and every 2-cycle is zero.  Paths are written in traversal order: the path
``("alpha0", "alpha1")`` goes s -> d3 -> e (alpha1 alpha0 in composition
notation).  All matrices are exact rationals; a map for an arrow x -> y has
shape dim(y) x dim(x).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = tuple[tuple[Fraction, ...], ...]


class NotSpecialBiserial(ValueError):
    pass


class RelationViolated(ValueError):
    pass


# --- linear algebra over Q -------------------------------------------------


def _dm(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in r] for r in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} in Q^ncols."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace().to_Matrix()
    return [[Fraction(str(ns[i, j])) for j in range(ns.cols)] for i in range(ns.rows)]


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols))
        for i in range(len(a))
    )


def transpose(a: Matrix, rows: int, cols: int) -> Matrix:
    return tuple(tuple(a[i][j] for i in range(rows)) for j in range(cols))


def _is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def _as_matrix(data, r: int, c: int) -> Matrix:
    m = tuple(tuple(Fraction(x) for x in row) for row in data)
    if len(m) != r or any(len(row) != c for row in m):
        raise ValueError(f"expected a {r}x{c} matrix")
    return m


# --- the quiver ------------------------------------------------------------


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[tuple[str, ...], ...]  # zero paths, traversal order

    def source(self, a: str) -> str:
        return self._arrow(a)[1]

    def target(self, a: str) -> str:
        return self._arrow(a)[2]

    def _arrow(self, a: str):
        for arr in self.arrows:
            if arr[0] == a:
                return arr
        raise KeyError(f"unknown arrow {a!r}")

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a[0] for a in self.arrows)

    def is_zero_path(self, path: Sequence[str]) -> bool:
        path = tuple(path)
        for rel in self.relations:
            m = len(rel)
            for i in range(len(path) - m + 1):
                if path[i : i + m] == rel:
                    return True
        return False

    def check_special_biserial(self) -> None:
        for v in self.vertices:
            outs = [a for a, s, t in self.arrows if s == v]
            ins = [a for a, s, t in self.arrows if t == v]
            if len(outs) > 2 or len(ins) > 2:
                raise NotSpecialBiserial(f"vertex {v} has more than two arrows in or out")
        for a, s, t in self.arrows:
            after = [b for b, s2, _ in self.arrows if s2 == t and not self.is_zero_path((a, b))]
            before = [b for b, _, t2 in self.arrows if t2 == s and not self.is_zero_path((b, a))]
            if len(after) > 1 or len(before) > 1:
                raise NotSpecialBiserial(f"arrow {a} composes nontrivially with two arrows on one side")
        if any(len(r) != 2 for r in self.relations):
            raise NotSpecialBiserial("only monomial relations of length two are supported")

    def components(self) -> list[tuple[str, ...]]:
        adj = {v: set() for v in self.vertices}
        for _, s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in sorted(adj[x]):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(tuple(u for u in self.vertices if u in comp))
        return out


_ARROWS = (
    ("alpha0", "s", "d3"),
    ("beta0", "d3", "s"),
    ("alpha1", "d3", "e"),
    ("beta1", "e", "d3"),
    ("gamma0", "b4", "d2"),
    ("delta0", "d2", "b4"),
    ("gamma1", "d2", "d1"),
    ("delta1", "d1", "d2"),
)


def _two_cycles(arrows) -> tuple[tuple[str, str], ...]:
    out = []
    for a, s, t in arrows:
        for b, s2, t2 in arrows:
            if s2 == t and t2 == s:
                out.append((a, b))
    return tuple(out)


QUIVER = QuiverPresentation(
    vertices=("s", "d3", "e", "b4", "d2", "d1"),
    arrows=_ARROWS,
    relations=_two_cycles(_ARROWS),
)

SIMPLE_AT = {"S": "s", "D3": "d3", "E": "e", "B4": "b4", "D2": "d2", "D1": "d1"}
LABEL_AT = {v: k for k, v in SIMPLE_AT.items()}

FOURIER_VERTICES = {"s": "e", "e": "s", "d3": "d3", "b4": "d1", "d1": "b4", "d2": "d2"}
FOURIER_ARROWS = {
    "alpha0": "beta1",
    "beta1": "alpha0",
    "beta0": "alpha1",
    "alpha1": "beta0",
    "gamma0": "delta1",
    "delta1": "gamma0",
    "delta0": "gamma1",
    "gamma1": "delta0",
}
DUAL_ARROWS = {
    "alpha0": "beta0",
    "beta0": "alpha0",
    "alpha1": "beta1",
    "beta1": "alpha1",
    "gamma0": "delta0",
    "delta0": "gamma0",
    "gamma1": "delta1",
    "delta1": "gamma1",
}


# --- paths ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    def name(self) -> str:
        """Composition notation, rightmost arrow first traversed."""
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(reversed(self.arrows))


def path_basis(q: QuiverPresentation = QUIVER, max_length: int = 16) -> list[Path]:
    """All paths that avoid the relations, trivial paths included."""
    out = []
    frontier = [Path(v, v) for v in q.vertices]
    while frontier:
        out.extend(frontier)
        nxt = []
        for p in frontier:
            for a, s, t in q.arrows:
                if s != p.target:
                    continue
                arrows = p.arrows + (a,)
                if not q.is_zero_path(arrows):
                    nxt.append(Path(p.source, t, arrows))
        if nxt and len(nxt[0]) > max_length:
            raise ValueError("path algebra looks infinite-dimensional")
        frontier = nxt
    return sorted(out, key=lambda p: (len(p), q.vertices.index(p.source), p.arrows))


# --- representations -------------------------------------------------------


@dataclass(frozen=True)
class QuiverRep:
    dims: Mapping[str, int]
    maps: Mapping[str, Matrix]
    quiver: QuiverPresentation = field(default=QUIVER, compare=False, repr=False)

    def __post_init__(self):
        q = self.quiver
        dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in dims.values()):
            raise ValueError("dimensions must be nonnegative")
        maps = {}
        for a, s, t in q.arrows:
            data = self.maps.get(a)
            maps[a] = zeros(dims[t], dims[s]) if data is None else _as_matrix(data, dims[t], dims[s])
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        for rel in q.relations:
            if not _is_zero(self.path_matrix(rel)):
                raise RelationViolated(f"relation {rel} does not vanish")

    def path_matrix(self, path: Sequence[str]) -> Matrix:
        path = tuple(path)
        q = self.quiver
        m = identity(self.dims[q.source(path[0])])
        for a in path:
            m = matmul(self.maps[a], m, inner=self.dims[q.source(a)])
        return m

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self, vertices: Sequence[str] | None = None) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in (vertices or self.quiver.vertices))

    def support(self) -> tuple[str, ...]:
        return tuple(v for v in self.quiver.vertices if self.dims[v])

    def socle_dims(self) -> dict[str, int]:
        """dim of the joint kernel of all arrows leaving each vertex."""
        q = self.quiver
        out = {}
        for v in q.vertices:
            rows = [list(r) for a, s, _ in q.arrows if s == v for r in self.maps[a]]
            out[v] = self.dims[v] - rank(rows, self.dims[v])
        return out

    def top_dims(self) -> dict[str, int]:
        """dim of the cokernel of all arrows entering each vertex."""
        q = self.quiver
        out = {}
        for v in q.vertices:
            cols = []
            for a, s, t in q.arrows:
                if t == v:
                    m = self.maps[a]
                    cols.extend([m[i][j] for i in range(self.dims[v])] for j in range(self.dims[s]))
            out[v] = self.dims[v] - rank(cols, self.dims[v])
        return out

    def to_json(self) -> dict:
        return {
            "dims": {v: self.dims[v] for v in self.quiver.vertices},
            "maps": {
                a: [[_fmt(x) for x in row] for row in self.maps[a]] for a in self.quiver.arrow_names
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping, quiver: QuiverPresentation = QUIVER) -> "QuiverRep":
        maps = {a: [[Fraction(x) for x in row] for row in m] for a, m in data["maps"].items()}
        return cls(dict(data["dims"]), maps, quiver)


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def simple(v: str, q: QuiverPresentation = QUIVER) -> QuiverRep:
    if v in SIMPLE_AT:
        v = SIMPLE_AT[v]
    if v not in q.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    return QuiverRep({v: 1}, {}, q)


def _rep_from_basis(basis: list[Path], action, q: QuiverPresentation) -> QuiverRep:
    """Build a representation whose basis vectors are ``basis`` (grouped by a vertex key)."""
    by_vertex = {v: [] for v in q.vertices}
    for p, v in basis:
        by_vertex[v].append(p)
    index = {v: {p: i for i, p in enumerate(ps)} for v, ps in by_vertex.items()}
    dims = {v: len(ps) for v, ps in by_vertex.items()}
    maps = {}
    for a, s, t in q.arrows:
        m = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
        for p, j in index[s].items():
            img = action(p, a)
            if img is not None and img in index[t]:
                m[index[t][img]][j] = Fraction(1)
        maps[a] = m
    return QuiverRep(dims, maps, q)


def projective_cover(v: str, q: QuiverPresentation = QUIVER) -> QuiverRep:
    """P^v: basis = paths starting at v, arrows act by extending the path."""
    paths = [p for p in path_basis(q) if p.source == v]

    def act(p: Path, a: str):
        if q.source(a) != p.target:
            return None
        ext = p.arrows + (a,)
        return None if q.is_zero_path(ext) else Path(p.source, q.target(a), ext)

    return _rep_from_basis([(p, p.target) for p in paths], act, q)


def injective_envelope(v: str, q: QuiverPresentation = QUIVER) -> QuiverRep:
    """I^v: basis = paths ending at v, an arrow strips itself off the front of the path."""
    paths = [p for p in path_basis(q) if p.target == v]

    def act(p: Path, a: str):
        if not p.arrows or p.arrows[0] != a:
            return None
        return Path(q.target(a), p.target, p.arrows[1:])

    return _rep_from_basis([(p, p.source) for p in paths], act, q)


def uniserial(chain: Sequence[str], q: QuiverPresentation = QUIVER) -> QuiverRep:
    """Uniserial module along a path of arrows, one basis vector per visited vertex."""
    vertices = [q.source(chain[0])] + [q.target(a) for a in chain]
    if len(set(vertices)) != len(vertices):
        raise ValueError("chain must visit distinct vertices")
    return QuiverRep({v: 1 for v in vertices}, {a: [[1]] for a in chain}, q)


def module_sf() -> QuiverRep:
    """S_f: top E, then D3, socle S."""
    return uniserial(("beta1", "beta0"))


def module_sf_sqrt() -> QuiverRep:
    """S_f * sqrt(f): top D1, then D2, socle B4."""
    return uniserial(("delta1", "delta0"))


# --- functors ----------------------------------------------------------


def apply_fourier(r: QuiverRep) -> QuiverRep:
    dims = {FOURIER_VERTICES[v]: d for v, d in r.dims.items()}
    maps = {FOURIER_ARROWS[a]: m for a, m in r.maps.items()}
    return QuiverRep(dims, maps, r.quiver)


def apply_duality(r: QuiverRep) -> QuiverRep:
    q = r.quiver
    maps = {}
    for a, s, t in q.arrows:
        maps[DUAL_ARROWS[a]] = transpose(r.maps[a], r.dims[t], r.dims[s])
    return QuiverRep(dict(r.dims), maps, q)


def direct_sum(a: QuiverRep, b: QuiverRep) -> QuiverRep:
    q = a.quiver
    maps = {}
    for name, s, t in q.arrows:
        ma, mb = a.maps[name], b.maps[name]
        rows = [list(row) + [Fraction(0)] * b.dims[s] for row in ma]
        rows += [[Fraction(0)] * a.dims[s] + list(row) for row in mb]
        maps[name] = rows
    return QuiverRep({v: a.dims[v] + b.dims[v] for v in q.vertices}, maps, q)


# --- Hom and Ext ----------------------------------------------------------


def _hom_system(a: QuiverRep, b: QuiverRep):
    """Unknowns f_v (dim b_v x dim a_v, row-major) and the intertwiner equations."""
    q = a.quiver
    offset, pos = {}, 0
    for v in q.vertices:
        offset[v] = pos
        pos += b.dims[v] * a.dims[v]
    n = pos
    rows = []
    for name, s, t in q.arrows:
        A, B = a.maps[name], b.maps[name]
        # (B_arrow f_s - f_t A_arrow)[i][j] = 0
        for i in range(b.dims[t]):
            for j in range(a.dims[s]):
                row = [Fraction(0)] * n
                for m in range(b.dims[s]):
                    row[offset[s] + m * a.dims[s] + j] += B[i][m]
                for m in range(a.dims[t]):
                    row[offset[t] + i * a.dims[t] + m] -= A[m][j]
                if any(row):
                    rows.append(row)
    return rows, n, offset


def hom_basis(a: QuiverRep, b: QuiverRep) -> list[dict[str, Matrix]]:
    rows, n, offset = _hom_system(a, b)
    out = []
    for vec in nullspace(rows, n):
        f = {}
        for v in a.quiver.vertices:
            o, r, c = offset[v], b.dims[v], a.dims[v]
            f[v] = tuple(tuple(vec[o + i * c + j] for j in range(c)) for i in range(r))
        out.append(f)
    return out


def hom_dim(a: QuiverRep, b: QuiverRep) -> int:
    rows, n, _ = _hom_system(a, b)
    return n - rank(rows, n)


def ext1_dim(a: QuiverRep, b: QuiverRep) -> int:
    """dim Ext^1(a, b) in rep(Q, I), as cocycles modulo coboundaries.

    A cocycle assigns g_arrow: a_source -> b_target such that the extension
    with block maps [[b_arrow, g_arrow], [0, a_arrow]] satisfies every
    relation; for a length-two relation (x, y) that reads
    b_y g_x + g_y a_x = 0.
    """
    q = a.quiver
    offset, pos = {}, 0
    for name, s, t in q.arrows:
        offset[name] = pos
        pos += b.dims[t] * a.dims[s]
    n = pos
    rows = []
    for x, y in q.relations:
        sx, tx = q.source(x), q.target(x)
        ty = q.target(y)
        By, Ax = b.maps[y], a.maps[x]
        # entry (i, j) of b_y g_x + g_y a_x, a matrix b_ty x a_sx
        for i in range(b.dims[ty]):
            for j in range(a.dims[sx]):
                row = [Fraction(0)] * n
                for m in range(b.dims[tx]):
                    row[offset[x] + m * a.dims[sx] + j] += By[i][m]
                for m in range(a.dims[tx]):
                    row[offset[y] + i * a.dims[tx] + m] += Ax[m][j]
                if any(row):
                    rows.append(row)
    cocycles = n - rank(rows, n)
    gauge = sum(a.dims[v] * b.dims[v] for v in q.vertices)
    coboundaries = gauge - hom_dim(a, b)
    return cocycles - coboundaries


def is_isomorphic(a: QuiverRep, b: QuiverRep, tries: int = 8, seed: int = 0) -> bool:
    """Look for an invertible homomorphism among seeded random combinations of a Hom basis.

    Non-invertible maps form a proper Zariski-closed subset of Hom(a, b), so
    a miss on every try means non-isomorphic with overwhelming probability.
    """
    if a.dims != b.dims:
        return False
    basis = hom_basis(a, b)
    if not basis:
        return a.total_dim == 0
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [Fraction(rng.randint(-1000, 1000)) for _ in basis]
        ok = True
        for v in a.quiver.vertices:
            d = a.dims[v]
            if d == 0:
                continue
            m = [[sum((c * f[v][i][j] for c, f in zip(coeffs, basis)), Fraction(0)) for j in range(d)] for i in range(d)]
            if rank(m, d) < d:
                ok = False
                break
        if ok:
            return True
    return False


def endomorphism_radical_codim(r: QuiverRep) -> int:
    """dim End(r) - dim rad End(r), via the trace form (characteristic zero).

    The radical of a matrix algebra over Q is the kernel of (x, y) -> tr(xy),
    so the answer is the rank of the trace Gram matrix.
    """
    basis = hom_basis(r, r)
    vs = [v for v in r.quiver.vertices if r.dims[v]]

    def tr_prod(f, g):
        total = Fraction(0)
        for v in vs:
            d = r.dims[v]
            total += sum(f[v][i][k] * g[v][k][i] for i in range(d) for k in range(d))
        return total

    gram = [[tr_prod(f, g) for g in basis] for f in basis]
    return rank(gram, len(basis))


def has_local_endomorphisms(r: QuiverRep) -> bool:
    """End(r) / rad is one-dimensional, so r is indecomposable (and nonzero)."""
    return r.total_dim > 0 and endomorphism_radical_codim(r) == 1


# --- strings ----------------------------------------------------------------


Letter = tuple[str, int]  # (arrow, +1 direct / -1 inverse)


def _letter_start(q: QuiverPresentation, l: Letter) -> str:
    return q.source(l[0]) if l[1] > 0 else q.target(l[0])


def _letter_end(q: QuiverPresentation, l: Letter) -> str:
    return q.target(l[0]) if l[1] > 0 else q.source(l[0])


def _may_follow(q: QuiverPresentation, prev: Letter, nxt: Letter) -> bool:
    if prev[0] == nxt[0] and prev[1] == -nxt[1]:
        return False
    if prev[1] > 0 and nxt[1] > 0:
        return not q.is_zero_path((prev[0], nxt[0]))
    if prev[1] < 0 and nxt[1] < 0:
        return not q.is_zero_path((nxt[0], prev[0]))
    return True


@dataclass(frozen=True, order=True)
class StringWord:
    start: str
    letters: tuple[Letter, ...] = ()

    def inverse(self, q: QuiverPresentation = QUIVER) -> "StringWord":
        if not self.letters:
            return self
        end = _letter_end(q, self.letters[-1])
        return StringWord(end, tuple((a, -e) for a, e in reversed(self.letters)))

    def vertices(self, q: QuiverPresentation = QUIVER) -> list[str]:
        vs = [self.start]
        for l in self.letters:
            vs.append(_letter_end(q, l))
        return vs

    def name(self) -> str:
        if not self.letters:
            return f"e_{self.start}"
        return " ".join(a if e > 0 else a + "^-1" for a, e in self.letters)


def enumerate_strings(q: QuiverPresentation = QUIVER, max_length: int = 64) -> list[StringWord]:
    """All strings up to inversion (walks avoiding relations and backtracking)."""
    q.check_special_biserial()
    letters = [(a, 1) for a in q.arrow_names] + [(a, -1) for a in q.arrow_names]
    found: set[StringWord] = set()

    def extend(word: StringWord, end: str):
        if len(word.letters) > max_length:
            raise ValueError("string enumeration does not terminate (bands present?)")
        found.add(min(word, word.inverse(q)))
        for l in letters:
            if _letter_start(q, l) != end:
                continue
            if word.letters and not _may_follow(q, word.letters[-1], l):
                continue
            extend(StringWord(word.start, word.letters + (l,)), _letter_end(q, l))

    for v in q.vertices:
        extend(StringWord(v), v)
    return sorted(found, key=lambda w: (len(w.letters), w.start, w.letters))


def string_module(w: StringWord, q: QuiverPresentation = QUIVER) -> QuiverRep:
    verts = w.vertices(q)
    index, dims = [], {v: 0 for v in q.vertices}
    for v in verts:
        index.append(dims[v])
        dims[v] += 1
    maps = {a: [[Fraction(0)] * dims[s] for _ in range(dims[t])] for a, s, t in q.arrows}
    for i, (a, e) in enumerate(w.letters):
        if e > 0:
            maps[a][index[i + 1]][index[i]] = Fraction(1)
        else:
            maps[a][index[i]][index[i + 1]] = Fraction(1)
    return QuiverRep(dims, maps, q)


def enumerate_indecomposables(q: QuiverPresentation = QUIVER) -> list[QuiverRep]:
    """Every indecomposable, as string modules (this algebra has no bands)."""
    return [string_module(w, q) for w in enumerate_strings(q)]


def restrict_dims(reps: Iterable[QuiverRep], component: Sequence[str]) -> list[tuple[int, ...]]:
    """Dimension vectors (on ``component``) of the reps supported there."""
    out = []
    for r in reps:
        if set(r.support()) <= set(component):
            out.append(r.dim_vector(component))
    return out
