"""Brute-force oracles shared by the unit and acceptance tests."""

import itertools
from collections import Counter


# --- representations of A <-> B <-> C with all 2-cycles zero, over F_2 -------


def _matrices(m, n):
    return [
        tuple(tuple(bits[i * n : (i + 1) * n]) for i in range(m))
        for bits in itertools.product((0, 1), repeat=m * n)
    ]


def _mul(a, b, m, k, n):
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) % 2 for j in range(n)) for i in range(m))


def _gl(d):
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    out = []
    for g in _matrices(d, d):
        for h in _matrices(d, d):
            if _mul(g, h, d, d, d) == ident:
                out.append((g, h))
                break
    return out


def f2_orbit_counts(max_dim=2):
    """Number of isoclasses of representations for each dim vector (dA, dB, dC) <= max_dim.

    Arrows a0: A->B, b0: B->A, a1: B->C, b1: C->B; relations b0 a0 = a0 b0 =
    b1 a1 = a1 b1 = 0.  Orbits under GL(dA) x GL(dB) x GL(dC) are enumerated
    exhaustively.
    """
    groups = {d: _gl(d) for d in range(max_dim + 1)}
    counts = {}
    for dA, dB, dC in itertools.product(range(max_dim + 1), repeat=3):
        zero_A = tuple(tuple(0 for _ in range(dA)) for _ in range(dA))
        zero_B = tuple(tuple(0 for _ in range(dB)) for _ in range(dB))
        zero_C = tuple(tuple(0 for _ in range(dC)) for _ in range(dC))
        reps = []
        for a0 in _matrices(dB, dA):
            for b0 in _matrices(dA, dB):
                if _mul(b0, a0, dA, dB, dA) != zero_A or _mul(a0, b0, dB, dA, dB) != zero_B:
                    continue
                for a1 in _matrices(dC, dB):
                    for b1 in _matrices(dB, dC):
                        if _mul(b1, a1, dB, dC, dB) != zero_B or _mul(a1, b1, dC, dB, dC) != zero_C:
                            continue
                        reps.append((a0, b0, a1, b1))
        seen = set()
        orbits = 0
        for rep in reps:
            if rep in seen:
                continue
            orbits += 1
            a0, b0, a1, b1 = rep
            for (gA, iA), (gB, iB), (gC, iC) in itertools.product(groups[dA], groups[dB], groups[dC]):
                seen.add(
                    (
                        _mul(_mul(gB, a0, dB, dB, dA), iA, dB, dA, dA),
                        _mul(_mul(gA, b0, dA, dA, dB), iB, dA, dB, dB),
                        _mul(_mul(gC, a1, dC, dC, dB), iB, dC, dB, dB),
                        _mul(_mul(gB, b1, dB, dB, dC), iC, dB, dC, dC),
                    )
                )
        counts[(dA, dB, dC)] = orbits
    return counts


def multiset_counts(indec, box):
    """Number of multisets of indecomposables (indec: dim vector -> count) with each total <= box."""
    keys = [d for d in indec if any(d)]
    table = Counter({(0,) * len(box): 1})
    for d in keys:
        for _ in range(indec[d]):
            new = Counter()
            for base, c in table.items():
                k = 0
                while True:
                    tot = tuple(b + k * x for b, x in zip(base, d))
                    if any(t > m for t, m in zip(tot, box)):
                        break
                    new[tot] += c
                    k += 1
            table = new
    return table


def indecomposable_counts_from_orbits(orbits, max_dim=2):
    """Peel off decomposables by Krull-Schmidt, smallest dimension vectors first."""
    box = (max_dim,) * 3
    indec = {}
    for d in sorted(orbits, key=lambda v: (sum(v), v)):
        if not any(d):
            continue
        decomposable = multiset_counts(indec, box)[d]
        indec[d] = orbits[d] - decomposable
    return {d: c for d, c in indec.items() if c}


# --- knapsack counting for rational characters ---------------------------


def brute_count(mu, numerator, gens, cap):
    total = 0
    for nu, c in numerator:
        for exps in itertools.product(range(cap + 1), repeat=len(gens)):
            v = list(nu)
            for a, g in zip(exps, gens):
                for t in range(len(v)):
                    v[t] += a * g[t]
            if tuple(v) == tuple(mu):
                total += c
    return total
