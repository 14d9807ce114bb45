"""Row/column zeroing, projection and lift operators on matrices and tensors.

The tensor operators apply per factor with the cyclic index pattern
(i,j), (j,k), (k,i), extended over a decomposition by additivity, and relate
n x n multiplication tensors to their (n-1) x (n-1) projections.
"""

from __future__ import annotations

import warnings
from itertools import product

from .matrix import Matrix
from .tensor import RankOneTerm, Tensor, is_matmul_tensor

IndexTriple = tuple[int, int, int]


def _check_index(n: int, *indices: int):
    for x in indices:
        if not (1 <= x <= n):
            raise IndexError(f"index {x} out of range 1..{n}")


def matrix_zero(m: Matrix, i: int, j: int) -> Matrix:
    """Zero out row i and column j, leaving the rest unchanged."""
    _check_index(m.rows, i)
    _check_index(m.cols, j)
    return Matrix([[0 if (r == i or c == j) else m[r, c]
                    for c in range(1, m.cols + 1)]
                   for r in range(1, m.rows + 1)])


def matrix_project(m: Matrix, i: int, j: int) -> Matrix:
    """Delete row i and column j (the zeroed line and column are removed)."""
    if m.rows < 2 or m.cols < 2:
        raise ValueError("cannot project a 1x1 matrix")
    _check_index(m.rows, i)
    _check_index(m.cols, j)
    return Matrix([[m[r, c] for c in range(1, m.cols + 1) if c != j]
                   for r in range(1, m.rows + 1) if r != i])


def matrix_lift(m: Matrix, i: int, j: int) -> Matrix:
    """Insert a zero row at i and zero column at j; projecting back recovers m."""
    n = m.rows + 1
    _check_index(n, i, j)
    rows = []
    for r in range(1, n + 1):
        if r == i:
            rows.append([0] * n)
            continue
        src_r = r if r < i else r - 1
        row = []
        for c in range(1, n + 1):
            if c == j:
                row.append(0)
            else:
                src_c = c if c < j else c - 1
                row.append(m[src_r, src_c])
        rows.append(row)
    return Matrix(rows)


def _termwise(t: Tensor, fa, fb, fc, dim: int) -> Tensor:
    return Tensor(dim, (RankOneTerm(fa(tm.a), fb(tm.b), fc(tm.c))
                        for tm in t.terms))


def tensor_zero(t: Tensor, idx: IndexTriple) -> Tensor:
    """Zero each term's factors with the pattern (i,j), (j,k), (k,i).

    Terms killed by the zeroing are kept in the collection as zero terms so
    the output stays aligned with the source decomposition.
    """
    i, j, k = idx
    _check_index(t.dim, i, j, k)
    return _termwise(t,
                     lambda m: matrix_zero(m, i, j),
                     lambda m: matrix_zero(m, j, k),
                     lambda m: matrix_zero(m, k, i),
                     t.dim)


def tensor_project(t: Tensor, idx: IndexTriple) -> Tensor:
    """Project every term to dimension n-1 with the pattern (i,j), (j,k), (k,i)."""
    if t.dim < 2:
        raise ValueError("cannot project a dimension-1 tensor")
    i, j, k = idx
    _check_index(t.dim, i, j, k)
    return _termwise(t,
                     lambda m: matrix_project(m, i, j),
                     lambda m: matrix_project(m, j, k),
                     lambda m: matrix_project(m, k, i),
                     t.dim - 1)


def tensor_lift(t: Tensor, idx: IndexTriple) -> Tensor:
    """Lift every term to dimension n+1; tensor_project(result, idx) == t."""
    i, j, k = idx
    _check_index(t.dim + 1, i, j, k)
    return _termwise(t,
                     lambda m: matrix_lift(m, i, j),
                     lambda m: matrix_lift(m, j, k),
                     lambda m: matrix_lift(m, k, i),
                     t.dim + 1)


def zeroing_family_sum(t: Tensor) -> Tensor:
    """Sum of all n^3 zeroed copies of t, by term concatenation.

    For a multiplication tensor the result equals (n-1)^3 times t as a
    trilinear form.  Unverified input is processed anyway (the identity's
    failure is itself informative) but triggers a warning.
    """
    if not is_matmul_tensor(t):
        warnings.warn("zeroing_family_sum input does not verify as a "
                      "multiplication tensor; the averaging identity need "
                      "not hold", stacklevel=2)
    n = t.dim
    terms = []
    for idx in product(range(1, n + 1), repeat=3):
        terms.extend(tensor_zero(t, idx).terms)
    return Tensor(n, terms)
