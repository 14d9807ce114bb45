"""Sandwiching isotropies, finite groups of them, orbits and stabilizers.

An isotropy is a triple (G1, G2, G3) of invertible matrices acting on a
rank-one term as

    (G1^-T T_a G2^T) (x) (G2^-T T_b G3^T) (x) (G3^-T T_c G1^T),

extended over a decomposition term by term.  Element equality is projective:
each factor matters only up to a nonzero scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .matrix import Matrix
from .tensor import (CoefficientForm, RankOneTerm, Tensor, monomial_term,
                     to_coefficient_form)

Monomial = tuple[int, int, int]


class Isotropy:
    """A sandwiching triple of invertible n x n matrices."""

    __slots__ = ("g1", "g2", "g3", "_inv_t")

    def __init__(self, g1: Matrix, g2: Matrix, g3: Matrix):
        for g in (g1, g2, g3):
            if not g.is_square() or g.rows != g1.rows:
                raise ValueError("isotropy factors must be square, same size")
            if not g.is_invertible():
                raise ValueError("singular isotropy factor")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "g3", g3)
        object.__setattr__(self, "_inv_t", None)

    def __setattr__(self, name, value):
        raise AttributeError("Isotropy is immutable")

    @property
    def dim(self) -> int:
        return self.g1.rows

    def factors(self) -> tuple[Matrix, Matrix, Matrix]:
        return (self.g1, self.g2, self.g3)

    def _inverse_transposes(self):
        cached = self._inv_t
        if cached is None:
            cached = tuple(g.inverse().transpose() for g in self.factors())
            object.__setattr__(self, "_inv_t", cached)
        return cached

    @staticmethod
    def identity(n: int) -> "Isotropy":
        e = Matrix.identity(n)
        return Isotropy(e, e, e)

    def __eq__(self, other) -> bool:
        return isinstance(other, Isotropy) and self.factors() == other.factors()

    def __hash__(self) -> int:
        return hash(self.factors())

    def __repr__(self) -> str:
        return f"Isotropy(dim={self.dim})"


def _normalize_projective(m: Matrix) -> Matrix:
    lead = next((v for _, _, v in m.entries()), None)
    return m if lead in (None, 1) else m.scale(1 / lead)


def projectively_equal(g: Isotropy, h: Isotropy) -> bool:
    """Equality up to independent scaling of each of the three factors."""
    return all(_normalize_projective(a) == _normalize_projective(b)
               for a, b in zip(g.factors(), h.factors()))


def act(g: Isotropy, t: Tensor) -> Tensor:
    """Apply the sandwiching action term by term; term count is preserved."""
    if g.dim != t.dim:
        raise ValueError("isotropy/tensor dimension mismatch")
    i1, i2, i3 = g._inverse_transposes()
    t1, t2, t3 = g.g1.transpose(), g.g2.transpose(), g.g3.transpose()
    return Tensor(t.dim, (RankOneTerm(i1 @ tm.a @ t2,
                                      i2 @ tm.b @ t3,
                                      i3 @ tm.c @ t1)
                          for tm in t.terms))


def compose(g: Isotropy, h: Isotropy) -> Isotropy:
    """Composition with act(compose(g, h), t) == act(g, act(h, t))."""
    return Isotropy(g.g1 @ h.g1, g.g2 @ h.g2, g.g3 @ h.g3)


def inverse(g: Isotropy) -> Isotropy:
    return Isotropy(g.g1.inverse(), g.g2.inverse(), g.g3.inverse())


class IsotropyGroup:
    """A finite collection of isotropies, the first being the identity."""

    def __init__(self, elements):
        elements = tuple(elements)
        if not elements:
            raise ValueError("empty isotropy group")
        if not projectively_equal(elements[0], Isotropy.identity(elements[0].dim)):
            raise ValueError("first group element must be the identity triple")
        self.elements = elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def is_closed(self) -> bool:
        """Closure and inverse-closure up to projective equivalence."""
        def member(x):
            return any(projectively_equal(x, e) for e in self.elements)
        return (all(member(compose(g, h)) for g in self.elements
                    for h in self.elements)
                and all(member(inverse(g)) for g in self.elements))


def orbit_sum(group: IsotropyGroup, t: Tensor) -> Tensor:
    """Sum of act(g, t) over the group, by term concatenation."""
    terms = []
    for g in group:
        terms.extend(act(g, t).terms)
    return Tensor(t.dim, terms)


def is_form_stabilized(g: Isotropy, t: Tensor) -> bool:
    """True iff acting by g leaves the trilinear form unchanged."""
    return to_coefficient_form(act(g, t)) == to_coefficient_form(t)


def _canonical_term_multiset(t: Tensor):
    from collections import Counter
    return Counter(tm.canonical() for tm in t.nonzero_terms())


def is_term_stabilizer(group: IsotropyGroup, t: Tensor) -> bool:
    """True iff every group element permutes the term multiset of t.

    Terms are compared up to the scaling (a,b,c) ~ (alpha a, beta b,
    c/(alpha beta)) that leaves a rank-one tensor unchanged.
    """
    ref = _canonical_term_multiset(t)
    return all(_canonical_term_multiset(act(g, t)) == ref for g in group)


# -- monomial orbits -------------------------------------------------------------

def _as_signed_monomial(tm: RankOneTerm) -> tuple[Monomial, Fraction] | None:
    """Decode a term as s * (e^i_j (x) e^j_k (x) e^k_i), or None."""
    es = []
    for m in (tm.a, tm.b, tm.c):
        nz = list(m.entries())
        if len(nz) != 1:
            return None
        es.append(nz[0])
    (i, j, va), (j2, k, vb), (k2, i2, vc) = es
    if j2 != j or k2 != k or i2 != i:
        return None
    s = va * vb * vc
    if s not in (1, -1):
        return None
    return (i, j, k), s


def monomial_orbit(group: IsotropyGroup, m: Monomial) -> tuple[frozenset, int]:
    """Orbit set and stabilizer order of a monomial under a monomial action.

    Raises ValueError when some group element does not map the monomial's
    rank-one term to +/- another monomial term.
    """
    n = group.dim
    base = Tensor(n, [monomial_term(n, *m)])
    orbit = set()
    stab = 0
    for g in group:
        image = act(g, base).terms[0]
        decoded = _as_signed_monomial(image)
        if decoded is None:
            raise ValueError(f"group does not act monomially on {m}")
        mono, _sign = decoded
        orbit.add(mono)
        if mono == m:
            stab += 1
    return frozenset(orbit), stab


@dataclass(frozen=True)
class MonomialOrbitPartition:
    """Disjoint monomial orbits with per-orbit stabilizer orders."""

    group_order: int
    orbits: tuple[tuple[frozenset, int], ...]

    def __post_init__(self):
        seen: set[Monomial] = set()
        for orbit, stab in self.orbits:
            if seen & orbit:
                raise ValueError("orbits are not disjoint")
            seen |= orbit
            if len(orbit) * stab != self.group_order:
                raise ValueError("orbit size times stabilizer order must "
                                 "equal the group order")

    @property
    def dim(self) -> int:
        return max((x for orbit, _ in self.orbits for m in orbit for x in m),
                   default=1)

    def orbit_of(self, m: Monomial) -> tuple[frozenset, int]:
        for orbit, stab in self.orbits:
            if m in orbit:
                return orbit, stab
        raise KeyError(f"monomial {m} not covered by the partition")


def monomial_partition(group: IsotropyGroup) -> MonomialOrbitPartition:
    """Partition of all n^3 monomials into orbits under a monomial action."""
    n = group.dim
    orbits = []
    seen: set[Monomial] = set()
    for m in product(range(1, n + 1), repeat=3):
        if m in seen:
            continue
        orbit, stab = monomial_orbit(group, m)
        seen |= orbit
        orbits.append((orbit, stab))
    return MonomialOrbitPartition(len(group), tuple(orbits))


def orbit_partition_sum(partition: MonomialOrbitPartition, coeffs) -> Tensor:
    """Rebuild group sums from partition data alone.

    coeffs is one scalar per orbit (aligned with partition.orbits); the result
    is the sum over orbits of coeff * stabilizer_order * (sum of the orbit's
    monomial terms).
    """
    coeffs = list(coeffs)
    if len(coeffs) != len(partition.orbits):
        raise ValueError("need exactly one coefficient per orbit")
    dim = partition.dim
    terms = []
    for (orbit, stab), coeff in zip(partition.orbits, coeffs):
        weight = Fraction(coeff) * stab
        if weight == 0:
            continue
        for m in sorted(orbit):
            terms.append(monomial_term(dim, *m).scaled(weight))
    return Tensor(dim, terms)


# -- brute-force stabilizer search over signed permutation triples ---------------

@dataclass(frozen=True)
class SignedPerm:
    """perm maps column j to row perm[j] with entry signs[j] (1-based perm)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def to_matrix(self) -> Matrix:
        n = len(self.perm)
        rows = [[0] * n for _ in range(n)]
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            rows[p - 1][j] = s
        return Matrix(rows)


@dataclass(frozen=True)
class SignedPermTriple:
    f1: SignedPerm
    f2: SignedPerm
    f3: SignedPerm

    def to_isotropy(self) -> Isotropy:
        return Isotropy(self.f1.to_matrix(), self.f2.to_matrix(),
                        self.f3.to_matrix())

    def is_identity(self) -> bool:
        return all(f.perm == tuple(range(1, len(f.perm) + 1))
                   and all(s == 1 for s in f.signs)
                   for f in (self.f1, self.f2, self.f3))


def signed_permutations(n: int) -> list[SignedPerm]:
    """All n! * 2^n signed permutations, in a fixed deterministic order."""
    out = []
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            out.append(SignedPerm(perm, signs))
    return out


def monomial_stabilizer_search(t: Tensor, family: str = "signed-perm"
                               ) -> list[SignedPermTriple]:
    """All signed-permutation triples that stabilize t's trilinear form.

    Exhaustive over the (n! 2^n)^3 candidates, n <= 3.  Signed permutation
    matrices are orthogonal, so the acted coefficient form is a signed
    re-indexing of the original one; each candidate is checked by comparing
    the re-indexed table against the original, vectorized over candidates.
    """
    if family != "signed-perm":
        raise ValueError(f"unknown candidate family: {family}")
    n = t.dim
    if n > 3:
        raise ValueError("signed-perm search supports n <= 3")
    form = to_coefficient_form(t)
    sps = signed_permutations(n)
    g = len(sps)

    # Per signed perm: qi[x] = perm^-1(x) and sq[x] = sign at that slot, 0-based.
    qi = np.zeros((g, n), dtype=np.int64)
    sq = np.zeros((g, n), dtype=np.int64)
    for a, sp in enumerate(sps):
        for j, (p, s) in enumerate(zip(sp.perm, sp.signs)):
            qi[a, p - 1] = j
            sq[a, p - 1] = s

    # Code the form's values as small ints; 0 means "entry absent".
    values = sorted(set(form.values()) | {-v for v in form.values()})
    code = {v: c for c, v in enumerate(values, start=1)}
    vtab = np.zeros((n,) * 6, dtype=np.int64)
    for ((i, j), (k, l), (m, nn)), v in form.items():
        vtab[i - 1, j - 1, k - 1, l - 1, m - 1, nn - 1] = code[v]

    ok = np.ones((g, g, g), dtype=bool)
    ax1 = (slice(None), None, None)
    ax2 = (None, slice(None), None)
    ax3 = (None, None, slice(None))
    for ((i, j), (k, l), (m, nn)), v in form.items():
        i, j, k, l, m, nn = i - 1, j - 1, k - 1, l - 1, m - 1, nn - 1
        mapped = vtab[qi[:, i][ax1], qi[:, j][ax2], qi[:, k][ax2],
                      qi[:, l][ax3], qi[:, m][ax3], qi[:, nn][ax1]]
        sign = (sq[:, i][ax1] * sq[:, nn][ax1] * sq[:, j][ax2]
                * sq[:, k][ax2] * sq[:, l][ax3] * sq[:, m][ax3])
        want_pos = code[v]
        want_neg = code.get(-v, 0) or -1
        ok &= np.where(sign > 0, mapped == want_pos, mapped == want_neg)

    found = []
    for a, b, c in zip(*np.nonzero(ok)):
        found.append(SignedPermTriple(sps[int(a)], sps[int(b)], sps[int(c)]))
    return found
