"""Builtin tensors and groups, term merging, and the rank-23 assembly.

The assembly follows the chain: start from Strassen's seven terms, sandwich
into the Winograd variant, lift it into the lower-right 2x2 block of a 3x3
tensor, sum its orbit under a Klein four-group of permutation isotropies, and
repair the result with a correction term so the whole thing computes 3x3
multiplication with 23 rank-one terms after merging shared factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .isotropy import (Isotropy, IsotropyGroup, Monomial,
                       MonomialOrbitPartition, act, orbit_sum)
from .matrix import Matrix, as_fraction, proportionality
from .tensor import (RankOneTerm, Tensor, add_forms, combine, monomial_term,
                     scale_form, to_coefficient_form)
from .transforms import tensor_lift, tensor_zero
from .trilinear import parse_trilinear


def classical(n: int) -> Tensor:
    """The n^3-term tensor of schoolbook n x n multiplication."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return Tensor(n, (monomial_term(n, i, j, k)
                      for i in range(1, n + 1)
                      for j in range(1, n + 1)
                      for k in range(1, n + 1)))


def strassen() -> Tensor:
    """Strassen's seven-term 2x2 multiplication tensor."""
    T = lambda a, b, c: RankOneTerm(Matrix(a), Matrix(b), Matrix(c))
    return Tensor(2, [
        T([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        T([[0, 1], [0, -1]], [[0, 0], [1, 1]], [[1, 0], [0, 0]]),
        T([[-1, 0], [1, 0]], [[1, 1], [0, 0]], [[0, 0], [0, 1]]),
        T([[1, 1], [0, 0]], [[0, 0], [0, 1]], [[-1, 0], [1, 0]]),
        T([[1, 0], [0, 0]], [[0, 1], [0, -1]], [[0, 0], [1, 1]]),
        T([[0, 0], [0, 1]], [[-1, 0], [1, 0]], [[1, 1], [0, 0]]),
        T([[0, 0], [1, 1]], [[1, 0], [0, 0]], [[0, 1], [0, -1]]),
    ])


def winograd_isotropy(lam=1) -> Isotropy:
    """The sandwiching triple turning Strassen into the Winograd variant."""
    lam = as_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return Isotropy(
        Matrix([[0, 1 / lam], [-1, 0]]),
        Matrix([[1 / lam, -1 / lam], [0, 1]]),
        Matrix([[-1 / lam, 0], [1, -1]]),
    )


def winograd(lam=1) -> Tensor:
    """The Winograd variant of Strassen's algorithm, parameterized by lambda."""
    return act(winograd_isotropy(lam), strassen())


def lifted_winograd(lam=1) -> Tensor:
    """Winograd's 2x2 tensor embedded in the lower-right block of a 3x3 one."""
    return tensor_lift(winograd(lam), (1, 1, 1))


@lru_cache(maxsize=1)
def laderman() -> Tensor:
    """Laderman's 23-term 3x3 multiplication tensor, parsed from its form."""
    text = (resources.files("mmtensor") / "data" / "laderman.txt").read_text()
    return parse_trilinear(text)


def klein_group() -> IsotropyGroup:
    """Four permutation isotropies isomorphic to the Klein four-group."""
    e = Matrix.identity(3)
    p = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    return IsotropyGroup([
        Isotropy(e, e, e),
        Isotropy(e, p, p),
        Isotropy(p, p, e),
        Isotropy(p, e, p),
    ])


def merge_shared_factors(t: Tensor) -> Tensor:
    """Greedily merge terms sharing two factors up to scale.

    When u = (alpha v_a) (x) (beta v_b) (x) u_c shares its a and b factors
    with v (and likewise for the other two factor pairs), the pair collapses
    to a single rank-one term with the third factors combined linearly.  The
    coefficient form is unchanged; zero terms (including full cancellations)
    are dropped.  Runs to a fixed point in deterministic order.
    """
    terms = list(t.nonzero_terms())
    merged = True
    while merged:
        merged = False
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                new = _merge_pair(terms[i], terms[j])
                if new is not None:
                    terms[i] = new
                    del terms[j]
                    if terms[i].is_zero():
                        del terms[i]
                    merged = True
                    break
            if merged:
                break
    return Tensor(t.dim, terms)


def _merge_pair(u: RankOneTerm, v: RankOneTerm) -> RankOneTerm | None:
    # a,b shared: fold scales into c; similarly for the other pairs.
    alpha = proportionality(u.a, v.a)
    beta = proportionality(u.b, v.b) if alpha is not None else None
    if alpha is not None and beta is not None:
        return RankOneTerm(v.a, v.b, u.c.scale(alpha * beta) + v.c)
    gamma = proportionality(u.c, v.c)
    if alpha is not None and gamma is not None:
        return RankOneTerm(v.a, u.b.scale(alpha * gamma) + v.b, v.c)
    if gamma is None:
        return None
    beta = proportionality(u.b, v.b)
    if beta is not None:
        return RankOneTerm(u.a.scale(beta * gamma) + v.a, v.b, v.c)
    return None


def klein_orbit_sum_winograd(lam=1) -> Tensor:
    """Klein orbit sum of the lifted Winograd tensor, merged to 19 terms.

    Not a multiplication tensor; it is the bulk of the rank-23 assembly.
    """
    raw = orbit_sum(klein_group(), lifted_winograd(lam))
    return merge_shared_factors(raw)


# Correction-term shapes: base monomials with fixed weights, None marking the
# corner coefficient that is solved for.
KLEIN_CORRECTION_SHAPE = (
    ((2, 3, 3), Fraction(1, 2)),
    ((3, 3, 2), Fraction(1, 2)),
    ((3, 2, 3), Fraction(1, 2)),
    ((3, 3, 3), None),
)

CYCLIC_CORRECTION_SHAPE = (
    ((3, 3, 2), Fraction(1, 2)),
    ((3, 3, 3), None),
    ((3, 2, 3), Fraction(1)),
)

_CORNER = ((3, 3), (3, 3), (3, 3))


@dataclass(frozen=True)
class CorrectionResult:
    """Correction tensor plus the solved corner coefficient.

    corner_coefficient multiplies the plain sum over group elements (the
    corner term appears once per element); corner_total_weight is the
    resulting total multiplicity of the corner rank-one term, i.e. the value
    under the one-copy-per-orbit-member convention.
    """

    tensor: Tensor
    corner_coefficient: Fraction
    corner_total_weight: Fraction
    shape: tuple


def _group_sum(source, m: Monomial) -> Tensor:
    """Sum of g(term of m) over the group, from explicit elements or from
    orbit-partition data (stabilizer_order copies of each orbit member)."""
    if isinstance(source, IsotropyGroup):
        return orbit_sum(source, Tensor(source.dim, [monomial_term(source.dim, *m)]))
    orbit, stab = source.orbit_of(m)
    dim = source.dim
    return Tensor(dim, (monomial_term(dim, *mono).scaled(stab)
                        for mono in sorted(orbit)))


def _group_sum_zeroed_classical(source) -> Tensor:
    """Group sum of the classical tensor zeroed at (1,1,1)."""
    if isinstance(source, IsotropyGroup):
        return orbit_sum(source, tensor_zero(classical(source.dim), (1, 1, 1)))
    terms = []
    monomials = [(i, j, k) for i in (2, 3) for j in (2, 3) for k in (2, 3)]
    for m in monomials:
        terms.extend(_group_sum(source, m).terms)
    return Tensor(3, terms)


def correction_term(source, shape=KLEIN_CORRECTION_SHAPE) -> CorrectionResult:
    """Solve for the correction tensor R of the orbit decomposition identity

        classical = GroupSum(e11 term) + GroupSum(zeroed classical) - R

    where R is constrained to the given shape: fixed weights on all base
    monomials except the corner (3,3,3), whose coefficient is derived from
    the identity and verified against it in full.

    source is an IsotropyGroup acting monomially, or a
    MonomialOrbitPartition standing in for a group given by orbit data only.
    """
    unknowns = [m for m, c in shape if c is None]
    if unknowns != [(3, 3, 3)]:
        raise ValueError("shape must leave exactly the corner (3,3,3) open")

    required = add_forms(
        add_forms(to_coefficient_form(_group_sum(source, (1, 1, 1))),
                  to_coefficient_form(_group_sum_zeroed_classical(source))),
        scale_form(to_coefficient_form(classical(3)), -1))

    known_terms = []
    for m, c in shape:
        if c is not None:
            known_terms.extend(tm.scaled(c) for tm in _group_sum(source, m).terms)
    known = Tensor(3, known_terms)

    residual = add_forms(required, scale_form(to_coefficient_form(known), -1))
    corner_gsum = _group_sum(source, (3, 3, 3))
    corner_form = to_coefficient_form(corner_gsum)
    if _CORNER not in corner_form:
        raise ValueError("corner group sum vanishes; cannot solve")
    c_fix = residual.get(_CORNER, Fraction(0)) / corner_form[_CORNER]
    if residual != scale_form(corner_form, c_fix):
        raise ValueError("no coefficient assignment of this shape satisfies "
                         "the decomposition identity")

    tensor = Tensor(3, known.terms + tuple(tm.scaled(c_fix)
                                           for tm in corner_gsum.terms))
    return CorrectionResult(tensor=tensor, corner_coefficient=c_fix,
                            corner_total_weight=c_fix * corner_form[_CORNER],
                            shape=tuple(shape))


def cyclic_partition() -> MonomialOrbitPartition:
    """Orbit data of an order-4 cyclic stabilizer whose generator is not a
    sandwiching; only the partition is known, not the group elements."""
    data = [
        ({(1, 1, 1), (1, 2, 2), (2, 2, 1), (2, 1, 2)}, 1),
        ({(2, 2, 2), (2, 1, 1), (1, 1, 2), (1, 2, 1)}, 1),
        ({(2, 2, 3), (2, 1, 3), (1, 1, 3), (1, 2, 3)}, 1),
        ({(3, 2, 2), (3, 1, 2), (2, 3, 1), (1, 3, 1)}, 1),
        ({(2, 3, 2), (3, 1, 1), (1, 3, 2), (3, 2, 1)}, 1),
        ({(3, 2, 3), (3, 1, 3), (2, 3, 3), (1, 3, 3)}, 1),
        ({(3, 3, 2), (3, 3, 1)}, 2),
        ({(3, 3, 3)}, 4),
    ]
    return MonomialOrbitPartition(4, tuple((frozenset(o), s) for o, s in data))


def laderman_variant(lam=1) -> Tensor:
    """A 23-term 3x3 multiplication tensor of Laderman's type.

    Assembled as KleinSum(e11 term) + KleinSum(lifted Winograd(lambda))
    - correction term, then merged.
    """
    lam = as_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    group = klein_group()
    base = orbit_sum(group, Tensor(3, [monomial_term(3, 1, 1, 1)]))
    bulk = orbit_sum(group, lifted_winograd(lam))
    corr = correction_term(group).tensor
    total = combine(combine(base, 1, bulk, 1), 1, corr, -1)
    return merge_shared_factors(total)


def builtin(name: str, lam=1) -> Tensor:
    """Look up a builtin tensor by CLI-style name, e.g. 'classical-3'."""
    if name.startswith("classical-"):
        return classical(int(name.split("-", 1)[1]))
    table = {
        "strassen": strassen,
        "winograd": lambda: winograd(lam),
        "laderman": laderman,
        "lifted-winograd": lambda: lifted_winograd(lam),
        "klein-orbit-sum": lambda: klein_orbit_sum_winograd(lam),
        "laderman-variant": lambda: laderman_variant(lam),
    }
    if name not in table:
        raise KeyError(f"unknown builtin tensor: {name}")
    return table[name]()
