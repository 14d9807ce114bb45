from fractions import Fraction
from itertools import product

import pytest

import mmtensor as mm
from mmtensor import (Isotropy, IsotropyGroup, Matrix, MonomialOrbitPartition,
                      Tensor, act, compose, inverse, projectively_equal)
from mmtensor.isotropy import signed_permutations

from conftest import canonical_terms, rand_matrix


# Orbits of the four-group of row/column-12 swaps acting on the 27
# monomials of 3x3 multiplication: five of size 4, three of size 2, one
# fixed point.
KLEIN_ORBITS = [
    ({(1, 1, 1), (1, 2, 2), (2, 2, 1), (2, 1, 2)}, 1),
    ({(2, 2, 2), (2, 1, 1), (1, 1, 2), (1, 2, 1)}, 1),
    ({(2, 2, 3), (2, 1, 3), (1, 1, 3), (1, 2, 3)}, 1),
    ({(2, 3, 2), (2, 3, 1), (1, 3, 2), (1, 3, 1)}, 1),
    ({(3, 2, 2), (3, 1, 1), (3, 1, 2), (3, 2, 1)}, 1),
    ({(2, 3, 3), (1, 3, 3)}, 2),
    ({(3, 2, 3), (3, 1, 3)}, 2),
    ({(3, 3, 2), (3, 3, 1)}, 2),
    ({(3, 3, 3)}, 4),
]


def test_isotropy_construction():
    with pytest.raises(ValueError):
        Isotropy(Matrix([[1, 2], [2, 4]]), Matrix.identity(2),
                 Matrix.identity(2))
    with pytest.raises(ValueError):
        Isotropy(Matrix.identity(2), Matrix.identity(3), Matrix.identity(2))
    g = Isotropy.identity(2)
    assert g.dim == 2


def test_act_preserves_form_of_matmul_tensor(rng):
    # sandwiching is an isotropy of the multiplication form
    for _ in range(5):
        factors = []
        while len(factors) < 3:
            m = rand_matrix(rng, 2)
            if m.is_invertible():
                factors.append(m)
        g = Isotropy(*factors)
        assert mm.form_equal(act(g, mm.strassen()), mm.strassen())


def test_act_is_left_action(rng):
    t = mm.strassen()
    gs = []
    while len(gs) < 2:
        ms = [rand_matrix(rng, 2) for _ in range(3)]
        if all(m.is_invertible() for m in ms):
            gs.append(Isotropy(*ms))
    g, h = gs
    assert act(compose(g, h), t) == act(g, act(h, t))
    assert act(compose(g, inverse(g)), t) == act(Isotropy.identity(2), t)


def test_adjunction(rng):
    # pairing against the acted tensor equals pairing the original against
    # sandwiched arguments
    t = mm.strassen()
    ms = []
    while len(ms) < 3:
        m = rand_matrix(rng, 2)
        if m.is_invertible():
            ms.append(m)
    g = Isotropy(*ms)
    a, b, c = (rand_matrix(rng, 2) for _ in range(3))
    lhs = mm.full_contraction(act(g, t), a, b, c)
    rhs = mm.full_contraction(t,
                              g.g1.inverse() @ a @ g.g2,
                              g.g2.inverse() @ b @ g.g3,
                              g.g3.inverse() @ c @ g.g1)
    assert lhs == rhs


def test_type_invariance(rng):
    t = mm.laderman()
    ms = []
    while len(ms) < 3:
        m = rand_matrix(rng, 3)
        if m.is_invertible():
            ms.append(m)
    g = Isotropy(*ms)
    assert mm.tensor_type(act(g, t)) == mm.tensor_type(t)


def test_projective_equality():
    e = Matrix.identity(2)
    g = Isotropy(e, e, e)
    h = Isotropy(e.scale(3), e.scale(Fraction(-1, 2)), e)
    assert projectively_equal(g, h)
    assert not projectively_equal(g, Isotropy(Matrix([[0, 1], [1, 0]]), e, e))


def test_group_invariants():
    with pytest.raises(ValueError):
        IsotropyGroup([])
    p = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    e = Matrix.identity(3)
    with pytest.raises(ValueError, match="identity"):
        IsotropyGroup([Isotropy(p, p, e)])
    K = mm.klein_group()
    assert len(K) == 4 and K.is_closed()
    # dropping an element breaks closure
    assert not IsotropyGroup(list(K)[:2] + [list(K)[3]]).is_closed()


def test_orbit_sum_fixed_by_elements():
    K = mm.klein_group()
    s = mm.orbit_sum(K, mm.lifted_winograd(1))
    assert len(s.terms) == 4 * 7
    for g in K:
        assert mm.form_equal(act(g, s), s)


def test_form_vs_term_stabilizer():
    # the Winograd sandwiching triple fixes Strassen's form but shuffles
    # its decomposition into different rank-one terms
    g = mm.winograd_isotropy(2)
    assert mm.is_form_stabilized(g, mm.strassen())
    assert canonical_terms(act(g, mm.strassen())) != \
        canonical_terms(mm.strassen())
    # the Klein group permutes the classical terms outright
    assert mm.is_term_stabilizer(mm.klein_group(), mm.classical(3))


def test_monomial_orbit_examples():
    K = mm.klein_group()
    orbit, stab = mm.monomial_orbit(K, (3, 3, 3))
    assert orbit == {(3, 3, 3)} and stab == 4
    orbit, stab = mm.monomial_orbit(K, (2, 3, 3))
    assert orbit == {(2, 3, 3), (1, 3, 3)} and stab == 2
    orbit, stab = mm.monomial_orbit(K, (1, 1, 1))
    assert orbit == {(1, 1, 1), (1, 2, 2), (2, 2, 1), (2, 1, 2)} and stab == 1


def test_monomial_orbit_rejects_non_monomial_action():
    g = mm.winograd_isotropy(1)
    G = IsotropyGroup([Isotropy.identity(2), g])
    with pytest.raises(ValueError, match="monomially"):
        mm.monomial_orbit(G, (1, 1, 1))


def test_monomial_partition_matches_reference():
    part = mm.monomial_partition(mm.klein_group())
    got = {(orbit, stab) for orbit, stab in part.orbits}
    want = {(frozenset(o), s) for o, s in KLEIN_ORBITS}
    assert got == want
    assert part.dim == 3
    assert part.orbit_of((3, 3, 2)) == (frozenset({(3, 3, 2), (3, 3, 1)}), 2)
    with pytest.raises(KeyError):
        part.orbit_of((4, 4, 4))


def test_partition_validation():
    with pytest.raises(ValueError, match="disjoint"):
        MonomialOrbitPartition(2, ((frozenset({(1, 1, 1), (1, 2, 2)}), 1),
                                   (frozenset({(1, 1, 1)}), 2)))
    with pytest.raises(ValueError, match="group order"):
        MonomialOrbitPartition(4, ((frozenset({(1, 1, 1)}), 1),))


def test_orbit_partition_sum_matches_group_sum():
    K = mm.klein_group()
    part = mm.monomial_partition(K)
    # weight 1/stab puts every monomial back exactly once
    coeffs = [Fraction(1, stab) for _, stab in part.orbits]
    assert mm.form_equal(mm.orbit_partition_sum(part, coeffs),
                         mm.classical(3))
    # weight 1 rebuilds the per-orbit group sums; summing group sums of all
    # 27 monomials (|orbit| copies of each orbit's sum) gives |K| x classical
    sums = [mm.orbit_partition_sum(part, [Fraction(int(i == k))
                                          for i in range(len(part.orbits))])
            for k in range(len(part.orbits))]
    total = {}
    for (orbit, _), s in zip(part.orbits, sums):
        total = mm.add_forms(total, mm.scale_form(mm.to_coefficient_form(s),
                                                  len(orbit)))
    assert total == mm.to_coefficient_form(
        mm.orbit_sum(K, mm.classical(3)))
    with pytest.raises(ValueError):
        mm.orbit_partition_sum(part, [1])


def test_signed_permutations_count():
    assert len(signed_permutations(2)) == 8
    assert len(signed_permutations(3)) == 48


def test_stabilizer_search_matmul_tensors_pass_everything():
    # every sandwiching triple fixes the multiplication form
    found = mm.monomial_stabilizer_search(mm.classical(2))
    assert len(found) == 8 ** 3
    assert any(tri.is_identity() for tri in found)


def test_stabilizer_search_discriminates_non_matmul():
    t = Tensor(2, [mm.monomial_term(2, 1, 1, 1)])
    found = mm.monomial_stabilizer_search(t)
    # perms must fix index 1 in all three slots; signs cancel pairwise
    assert len(found) == 4 ** 3
    # agreement with the direct definition on a sample
    for tri in found[:10]:
        assert mm.is_form_stabilized(tri.to_isotropy(), t)
    with pytest.raises(ValueError):
        mm.monomial_stabilizer_search(t, family="orthogonal")


def test_stabilizer_search_agrees_with_direct_check():
    # a 2-term non-multiplication tensor, exhaustively cross-checked
    t = Tensor(2, [mm.monomial_term(2, 1, 2, 1), mm.monomial_term(2, 2, 1, 2)])
    found = {(tri.f1, tri.f2, tri.f3)
             for tri in mm.monomial_stabilizer_search(t)}
    sps = signed_permutations(2)
    direct = set()
    for f1 in sps:
        for f2 in sps:
            for f3 in sps:
                g = Isotropy(f1.to_matrix(), f2.to_matrix(), f3.to_matrix())
                if mm.is_form_stabilized(g, t):
                    direct.add((f1, f2, f3))
    assert found == direct
