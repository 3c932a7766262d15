import itertools
import json
from collections import Counter
from fractions import Fraction

import pytest

import oracles
from wedge3dmod import quiverrep as qr
from wedge3dmod.quiverrep import QUIVER, QuiverPresentation, QuiverRep

COMPONENTS = (("s", "d3", "e"), ("b4", "d2", "d1"))


def walk_paths(q, max_len):
    """Every arrow sequence up to max_len, with a path killed if any 2-cycle occurs in it."""
    out = [((v,), ()) for v in q.vertices]
    frontier = [(v, ()) for v in q.vertices]
    for _ in range(max_len):
        nxt = []
        for start, arrows in frontier:
            end = q.target(arrows[-1]) if arrows else start
            for a, s, t in q.arrows:
                if s == end:
                    nxt.append((start, arrows + (a,)))
        frontier = nxt
        for start, arrows in nxt:
            if all(q.target(arrows[i]) != q.source(arrows[i + 1]) or q.source(arrows[i]) != q.target(arrows[i + 1]) for i in range(len(arrows) - 1)):
                out.append((start, arrows))
    return out


def test_quiver_shape():
    assert len(QUIVER.arrows) == 8
    assert len(QUIVER.relations) == 8
    assert set(QUIVER.relations) == {
        ("alpha0", "beta0"), ("beta0", "alpha0"), ("alpha1", "beta1"), ("beta1", "alpha1"),
        ("gamma0", "delta0"), ("delta0", "gamma0"), ("gamma1", "delta1"), ("delta1", "gamma1"),
    }
    assert QUIVER.components() == list(COMPONENTS)
    QUIVER.check_special_biserial()


def test_path_basis_count():
    basis = qr.path_basis()
    assert len(basis) == 18
    assert sum(1 for p in basis if len(p) == 0) == 6
    assert len(walk_paths(QUIVER, 4)) == 18


def test_path_basis_members():
    names = {p.arrows for p in qr.path_basis()}
    assert ("alpha0", "alpha1") in names
    assert ("beta1", "beta0") in names
    assert ("alpha0", "beta0") not in names
    assert QUIVER.is_zero_path(("alpha0", "beta0"))
    assert qr.Path("s", "e", ("alpha0", "alpha1")).name() == "alpha1*alpha0"


@pytest.mark.parametrize("v", QUIVER.vertices)
def test_projective_and_injective_dims(v):
    basis = qr.path_basis()
    p, i = qr.projective_cover(v), qr.injective_envelope(v)
    for y in QUIVER.vertices:
        assert p.dims[y] == sum(1 for b in basis if b.source == v and b.target == y)
        assert i.dims[y] == sum(1 for b in basis if b.source == y and b.target == v)
    assert p.top_dims() == {y: int(y == v) for y in QUIVER.vertices}
    assert i.socle_dims() == {y: int(y == v) for y in QUIVER.vertices}


def test_specific_envelopes():
    assert qr.injective_envelope("s").dim_vector(COMPONENTS[0]) == (1, 1, 1)
    assert qr.projective_cover("e").dim_vector(COMPONENTS[0]) == (1, 1, 1)
    assert qr.projective_cover("d3").dim_vector(COMPONENTS[0]) == (1, 1, 1)


def test_sf_is_injective_hull_of_S():
    sf = qr.module_sf()
    assert qr.is_isomorphic(qr.injective_envelope("s"), sf)
    assert sf.total_dim == 3
    assert sf.socle_dims()["s"] == 1 and sum(sf.socle_dims().values()) == 1
    assert sf.top_dims()["e"] == 1 and sum(sf.top_dims().values()) == 1


def test_sf_sqrt_is_injective_hull_of_B4():
    m = qr.module_sf_sqrt()
    assert qr.is_isomorphic(qr.injective_envelope("b4"), m)
    assert m.total_dim == 3
    assert m.socle_dims() == {v: int(v == "b4") for v in QUIVER.vertices}
    assert m.top_dims() == {v: int(v == "d1") for v in QUIVER.vertices}


def test_relations_enforced():
    with pytest.raises(qr.RelationViolated):
        QuiverRep({"s": 1, "d3": 1}, {"alpha0": [[1]], "beta0": [[1]]})
    for r in qr.enumerate_indecomposables():
        for rel in QUIVER.relations:
            assert all(x == 0 for row in r.path_matrix(rel) for x in row)


def test_ext_between_simples_counts_arrows():
    for x, y in itertools.product(QUIVER.vertices, repeat=2):
        arrows = sum(1 for _, s, t in QUIVER.arrows if s == x and t == y)
        assert qr.ext1_dim(qr.simple(x), qr.simple(y)) == arrows
    assert qr.ext1_dim(qr.simple("d3"), qr.simple("d2")) == 0
    assert qr.ext1_dim(qr.simple("d2"), qr.simple("d3")) == 0


def test_ext_of_projective_and_injective_vanish():
    for v in QUIVER.vertices:
        for w in QUIVER.vertices:
            assert qr.ext1_dim(qr.projective_cover(v), qr.simple(w)) == 0
            assert qr.ext1_dim(qr.simple(w), qr.injective_envelope(v)) == 0


def test_hom_dims():
    for r in qr.enumerate_indecomposables():
        assert qr.hom_dim(r, r) >= 1
    # Hom(P^v, M) = M_v
    sf = qr.module_sf()
    for v in QUIVER.vertices:
        assert qr.hom_dim(qr.projective_cover(v), sf) == sf.dims[v]
        assert qr.hom_dim(sf, qr.injective_envelope(v)) == sf.dims[v]


def test_direct_sum_is_decomposable():
    m = qr.direct_sum(qr.simple("s"), qr.simple("s"))
    assert not qr.has_local_endomorphisms(m)
    assert qr.endomorphism_radical_codim(m) == 4
    assert qr.has_local_endomorphisms(qr.module_sf())


def test_simples_under_functors():
    for label, v in qr.SIMPLE_AT.items():
        s = qr.simple(v)
        assert qr.apply_duality(s) == s
    assert qr.apply_fourier(qr.simple("s")) == qr.simple("e")
    assert qr.apply_fourier(qr.simple("b4")) == qr.simple("d1")
    assert qr.apply_fourier(qr.simple("d3")) == qr.simple("d3")


def test_functors_are_involutions():
    for r in qr.enumerate_indecomposables():
        assert qr.is_isomorphic(qr.apply_fourier(qr.apply_fourier(r)), r)
        assert qr.apply_duality(qr.apply_duality(r)) == r


def test_fourier_preserves_components_and_relations():
    for a, s, t in QUIVER.arrows:
        b = qr.FOURIER_ARROWS[a]
        assert QUIVER.source(b) == qr.FOURIER_VERTICES[s]
        assert QUIVER.target(b) == qr.FOURIER_VERTICES[t]
    rels = set(QUIVER.relations)
    assert {tuple(qr.FOURIER_ARROWS[a] for a in r) for r in rels} == rels
    for comp in COMPONENTS:
        assert {qr.FOURIER_VERTICES[v] for v in comp} == set(comp)


def test_duality_swaps_projectives_and_injectives():
    for v in QUIVER.vertices:
        assert qr.is_isomorphic(qr.apply_duality(qr.projective_cover(v)), qr.injective_envelope(v))


def test_indecomposables_contain_standard_modules():
    ind = qr.enumerate_indecomposables()
    targets = [qr.simple(v) for v in QUIVER.vertices]
    targets += [qr.projective_cover(v) for v in QUIVER.vertices]
    targets += [qr.injective_envelope(v) for v in QUIVER.vertices]
    targets.append(qr.module_sf())
    for t in targets:
        assert sum(qr.is_isomorphic(t, r) for r in ind) == 1


def test_indecomposables_pairwise_distinct_and_local():
    ind = qr.enumerate_indecomposables()
    for r in ind:
        assert qr.has_local_endomorphisms(r)
    for a, b in itertools.combinations(ind, 2):
        assert not qr.is_isomorphic(a, b)


def test_indecomposables_match_orbit_oracle():
    expected = oracles.indecomposable_counts_from_orbits(oracles.f2_orbit_counts(2))
    ind = qr.enumerate_indecomposables()
    for comp in COMPONENTS:
        got = Counter(d for d in qr.restrict_dims(ind, comp) if max(d) <= 2)
        assert dict(got) == expected


def test_orbit_oracle_sanity():
    # the oracle alone must reproduce the count of isoclasses of a single vertex space
    counts = oracles.f2_orbit_counts(1)
    assert counts[(1, 0, 0)] == 1
    assert counts[(1, 1, 0)] == 3  # zero, alpha, beta


def test_not_special_biserial():
    arrows = (("a", "x", "y"), ("b", "x", "y"), ("c", "x", "y"))
    bad = QuiverPresentation(("x", "y"), arrows, ())
    with pytest.raises(qr.NotSpecialBiserial):
        qr.enumerate_strings(bad)


def test_json_roundtrip():
    r = QuiverRep({"s": 1, "d3": 2}, {"alpha0": [[Fraction(1, 2)], [Fraction(-3)]]})
    data = json.loads(r.dumps())
    assert data["maps"]["alpha0"] == [["1/2"], ["-3/1"]]
    assert QuiverRep.from_json(data) == r
