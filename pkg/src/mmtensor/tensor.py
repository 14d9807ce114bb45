"""Rank-one decompositions of trilinear forms and their canonical form.

A tensor is an ordered sum of rank-one terms T_a (x) T_b (x) T_c of square
matrices of a common dimension.  The canonical form is the sparse 6-index
coefficient table of the associated trilinear form, obtained by pairing each
factor against unit matrices; two tensors are equal as trilinear forms iff
their tables are identical.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .matrix import Matrix, Rational, as_fraction

# Canonical form: {((i,j),(k,l),(m,n)): Fraction}, zero entries absent.
CoefficientForm = dict[tuple[tuple[int, int], tuple[int, int], tuple[int, int]],
                       Fraction]

# Type of a decomposition: multiset of per-term factor-rank triples.
TensorType = Counter


@dataclass(frozen=True)
class RankOneTerm:
    """One summand T_a (x) T_b (x) T_c; all factors square of equal size."""

    a: Matrix
    b: Matrix
    c: Matrix

    def __post_init__(self):
        dims = {m.rows for m in (self.a, self.b, self.c)}
        dims |= {m.cols for m in (self.a, self.b, self.c)}
        if len(dims) != 1:
            raise ValueError("rank-one term factors must be square, same size")

    @property
    def dim(self) -> int:
        return self.a.rows

    def is_zero(self) -> bool:
        return self.a.is_zero() or self.b.is_zero() or self.c.is_zero()

    def scaled(self, s: Rational) -> "RankOneTerm":
        return RankOneTerm(self.a.scale(s), self.b, self.c)

    def canonical(self) -> tuple[Matrix, Matrix, Matrix]:
        """Representative under (a,b,c) ~ (alpha a, beta b, c/(alpha beta)).

        The a and b factors are scaled so their first nonzero entry is 1; the
        compensating factor goes into c.  Zero terms are returned unchanged.
        """
        if self.is_zero():
            return (self.a, self.b, self.c)
        la = next(v for _, _, v in self.a.entries())
        lb = next(v for _, _, v in self.b.entries())
        return (self.a.scale(1 / la), self.b.scale(1 / lb),
                self.c.scale(la * lb))


class Tensor:
    """Dimension n plus an ordered collection of rank-one terms."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=()):
        terms = tuple(terms)
        if dim < 1:
            raise ValueError("tensor dimension must be >= 1")
        if any(t.dim != dim for t in terms):
            raise ValueError("term dimension mismatch")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    def nonzero_terms(self) -> tuple[RankOneTerm, ...]:
        return tuple(t for t in self.terms if not t.is_zero())

    def with_terms(self, terms) -> "Tensor":
        return Tensor(self.dim, terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.dim == other.dim
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.dim, self.terms))

    def __repr__(self) -> str:
        return f"Tensor(dim={self.dim}, terms={len(self.terms)})"


def term(a, b, c) -> RankOneTerm:
    """Build a rank-one term from matrices or row-lists."""
    mk = lambda m: m if isinstance(m, Matrix) else Matrix(m)
    return RankOneTerm(mk(a), mk(b), mk(c))


def monomial_term(n: int, i: int, j: int, k: int) -> RankOneTerm:
    """The rank-one term e^i_j (x) e^j_k (x) e^k_i of the monomial a_ij b_jk c_ki."""
    return RankOneTerm(Matrix.unit(n, i, j), Matrix.unit(n, j, k),
                       Matrix.unit(n, k, i))


# -- operations ----------------------------------------------------------------

def mat_rank(m: Matrix) -> int:
    """Rank of a matrix over the rationals (exact)."""
    return m.rank()


def to_coefficient_form(t: Tensor) -> CoefficientForm:
    """Expand the decomposition into the sparse 6-index coefficient table."""
    form: CoefficientForm = {}
    for tm in t.terms:
        for i, j, va in tm.a.entries():
            for k, l, vb in tm.b.entries():
                vab = va * vb
                for m, n, vc in tm.c.entries():
                    key = ((i, j), (k, l), (m, n))
                    s = form.get(key, 0) + vab * vc
                    if s:
                        form[key] = s
                    else:
                        form.pop(key, None)
    return form


def matmul_form(n: int) -> CoefficientForm:
    """Coefficient table of n x n matrix multiplication: 1 on every monomial."""
    one = Fraction(1)
    return {((i, j), (j, k), (k, i)): one
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            for k in range(1, n + 1)}


def is_matmul_tensor(t: Tensor) -> bool:
    """True iff the tensor computes n x n matrix multiplication exactly."""
    return to_coefficient_form(t) == matmul_form(t.dim)


def decomposition_length(t: Tensor) -> int:
    """Number of terms whose three factors are all nonzero."""
    return len(t.nonzero_terms())


def tensor_type(t: Tensor) -> TensorType:
    """Multiset of (rank a, rank b, rank c) over the nonzero terms."""
    return Counter((tm.a.rank(), tm.b.rank(), tm.c.rank())
                   for tm in t.nonzero_terms())


def format_type(tt: TensorType) -> str:
    """Render a type multiset as e.g. '(2,2,2)x4 (1,1,1)x13', largest first."""
    items = sorted(tt.items(), key=lambda kv: (kv[0], kv[1]), reverse=True)
    return " ".join(f"({r[0]},{r[1]},{r[2]})x{c}" for r, c in items)


def combine(t1: Tensor, s1: Rational, t2: Tensor, s2: Rational) -> Tensor:
    """Linear combination s1*t1 + s2*t2 by term concatenation.

    Scalars are folded into the a factors; a zero scalar drops that operand's
    terms entirely.
    """
    if t1.dim != t2.dim:
        raise ValueError("tensor dimension mismatch")
    s1, s2 = as_fraction(s1), as_fraction(s2)
    terms = []
    if s1:
        terms.extend(tm if s1 == 1 else tm.scaled(s1) for tm in t1.terms)
    if s2:
        terms.extend(tm if s2 == 1 else tm.scaled(s2) for tm in t2.terms)
    return Tensor(t1.dim, terms)


def form_equal(t1: Tensor, t2: Tensor) -> bool:
    """Equality of the associated trilinear forms."""
    if t1.dim != t2.dim:
        raise ValueError("tensor dimension mismatch")
    return to_coefficient_form(t1) == to_coefficient_form(t2)


def scale_form(form: CoefficientForm, s: Rational) -> CoefficientForm:
    s = as_fraction(s)
    if s == 0:
        return {}
    return {k: s * v for k, v in form.items()}


def add_forms(f1: CoefficientForm, f2: CoefficientForm) -> CoefficientForm:
    out = dict(f1)
    for k, v in f2.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def full_contraction(t: Tensor, a: Matrix, b: Matrix, c: Matrix) -> Fraction:
    """Trace pairing <T | A (x) B (x) C>, the value of the trilinear form."""
    for m in (a, b, c):
        if not (m.rows == m.cols == t.dim):
            raise ValueError("contraction matrix dimension mismatch")
    total = Fraction(0)
    for tm in t.terms:
        total += tm.a.trace_pair(a) * tm.b.trace_pair(b) * tm.c.trace_pair(c)
    return total
