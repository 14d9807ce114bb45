"""Plain-text interchange format for tensors, isotropies and groups.

Layout::

    dim 2
    lambda 1          # optional metadata, a rational
    terms 7
    term
    1 0               # a factor, dim rows
    0 1
    1 0               # b factor
    0 1
    1 0               # c factor
    0 1
    term
    ...

Entries are integers or 'p/q' rationals, written canonically (q >= 1,
gcd(p, q) = 1).  Comments start with '#'.  Write then read is the identity on
tensors, including zero terms and term order.

Isotropy and group files use the same layout: each element is stored as one
term of three matrices (group files list the identity first).
"""

from __future__ import annotations

from fractions import Fraction

from .isotropy import Isotropy, IsotropyGroup
from .matrix import Matrix, format_fraction
from .tensor import RankOneTerm, Tensor


class TensorFileError(ValueError):
    pass


def _parse_rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise TensorFileError(f"line {lineno}: malformed rational {tok!r}")


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def write_tensor_file(t: Tensor, lam=None) -> str:
    """Serialize a tensor; lam is optional metadata recorded verbatim."""
    out = [f"dim {t.dim}"]
    if lam is not None:
        out.append(f"lambda {format_fraction(Fraction(lam))}")
    out.append(f"terms {len(t.terms)}")
    for tm in t.terms:
        out.append("term")
        for m in (tm.a, tm.b, tm.c):
            for row in m.row_list():
                out.append(" ".join(format_fraction(v) for v in row))
    return "\n".join(out) + "\n"


def read_tensor_file(text: str) -> Tensor:
    """Parse the tensor file format; exact inverse of write_tensor_file."""
    lines = list(_logical_lines(text))
    pos = 0

    def next_line():
        nonlocal pos
        if pos >= len(lines):
            raise TensorFileError("unexpected end of file")
        lineno, line = lines[pos]
        pos += 1
        return lineno, line

    lineno, line = next_line()
    if not line.startswith("dim "):
        raise TensorFileError(f"line {lineno}: expected 'dim N'")
    dim = int(line.split()[1])
    lineno, line = next_line()
    if line.startswith("lambda "):
        _parse_rational(line.split()[1], lineno)
        lineno, line = next_line()
    if not line.startswith("terms "):
        raise TensorFileError(f"line {lineno}: expected 'terms N'")
    nterms = int(line.split()[1])

    terms = []
    for _ in range(nterms):
        lineno, line = next_line()
        if line != "term":
            raise TensorFileError(f"line {lineno}: expected 'term'")
        mats = []
        for _ in range(3):
            rows = []
            for _ in range(dim):
                lineno, line = next_line()
                row = [_parse_rational(tok, lineno) for tok in line.split()]
                if len(row) != dim:
                    raise TensorFileError(
                        f"line {lineno}: ragged matrix, expected {dim} "
                        f"entries, got {len(row)}")
                rows.append(row)
            mats.append(Matrix(rows))
        terms.append(RankOneTerm(*mats))
    if pos != len(lines):
        lineno, _ = lines[pos]
        raise TensorFileError(f"line {lineno}: trailing content")
    return Tensor(dim, terms)


def write_group_file(group: IsotropyGroup) -> str:
    """Serialize an isotropy group, one element per term, identity first."""
    t = Tensor(group.dim, (RankOneTerm(*g.factors()) for g in group))
    return write_tensor_file(t)


def read_isotropy_file(text: str) -> list[Isotropy]:
    """Read isotropies from the shared format (one per term)."""
    t = read_tensor_file(text)
    return [Isotropy(tm.a, tm.b, tm.c) for tm in t.terms]


def read_group_file(text: str) -> IsotropyGroup:
    return IsotropyGroup(read_isotropy_file(text))
