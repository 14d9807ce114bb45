"""Turn a tensor into an executable bilinear schedule.

Convention note: with the trace pairing used throughout, the (1,2)
contraction of a multiplication tensor yields the transposed product, i.e.
contract12(t, A, B) == (A.B)^T.  Schedules and recursive_multiply fold the
final transpose in, so they compute A.B itself: the accumulation for output
entry (s,u) collects the c factor's (u,s) coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import Matrix, format_fraction
from .tensor import Tensor

# A linear form over matrix entries: {(i, j): coefficient}.
LinearForm = dict[tuple[int, int], Fraction]


def contract12(t: Tensor, a: Matrix, b: Matrix) -> Matrix:
    """Sum of trace(Ta^T A) trace(Tb^T B) Tc over the terms.

    For a verified multiplication tensor the result D satisfies D^T == A.B.
    """
    if not (a.rows == a.cols == b.rows == b.cols == t.dim):
        raise ValueError("contract12 expects square matrices of the tensor "
                         "dimension")
    n = t.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for tm in t.terms:
        w = tm.a.trace_pair(a) * tm.b.trace_pair(b)
        if w:
            for i, j, v in tm.c.entries():
                rows[i - 1][j - 1] += w * v
    return Matrix(rows)


@dataclass(frozen=True)
class Schedule:
    """Straight-line bilinear program extracted from a tensor.

    r products; product p multiplies the a_forms[p] combination of A entries
    with the b_forms[p] combination of B entries; output entry (s,u) is the
    linear combination c_entries[(s,u)] of products.
    """

    dim: int
    a_forms: tuple[LinearForm, ...]
    b_forms: tuple[LinearForm, ...]
    c_entries: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]

    @property
    def num_products(self) -> int:
        return len(self.a_forms)

    def evaluate(self, a: Matrix, b: Matrix) -> Matrix:
        """Run the schedule; returns A.B for multiplication tensors."""
        prods = []
        for af, bf in zip(self.a_forms, self.b_forms):
            va = sum((c * a[i, j] for (i, j), c in af.items()), Fraction(0))
            vb = sum((c * b[i, j] for (i, j), c in bf.items()), Fraction(0))
            prods.append(va * vb)
        n = self.dim
        return Matrix([[sum((c * prods[p] for p, c in
                             self.c_entries.get((s, u), ())), Fraction(0))
                        for u in range(1, n + 1)]
                       for s in range(1, n + 1)])


@dataclass(frozen=True)
class OpCount:
    multiplications: int
    additions: int
    scalar_multiplications: int


def extract_schedule(t: Tensor) -> Schedule:
    """One product per nonzero term; c coefficients are transpose-folded."""
    a_forms, b_forms = [], []
    c_entries: dict[tuple[int, int], list] = {}
    for p, tm in enumerate(t.nonzero_terms()):
        a_forms.append({(i, j): v for i, j, v in tm.a.entries()})
        b_forms.append({(i, j): v for i, j, v in tm.b.entries()})
        for u, s, v in tm.c.entries():
            c_entries.setdefault((s, u), []).append((p, v))
    return Schedule(dim=t.dim,
                    a_forms=tuple(a_forms),
                    b_forms=tuple(b_forms),
                    c_entries={k: tuple(v) for k, v in c_entries.items()})


def op_count(s: Schedule) -> OpCount:
    """Naive counts: no common-subexpression elimination."""
    adds = 0
    scalar = 0
    for form in list(s.a_forms) + list(s.b_forms):
        adds += max(len(form) - 1, 0)
        scalar += sum(1 for c in form.values() if c not in (1, -1))
    for accum in s.c_entries.values():
        adds += max(len(accum) - 1, 0)
        scalar += sum(1 for _, c in accum if c not in (1, -1))
    return OpCount(multiplications=s.num_products, additions=adds,
                   scalar_multiplications=scalar)


def _format_form(letter: str, form: LinearForm) -> str:
    chunks = []
    for (i, j), c in sorted(form.items()):
        atom = f"{letter}{i}{j}"
        if c == 1:
            text = atom
        elif c == -1:
            text = f"-{atom}"
        else:
            text = f"{format_fraction(c)}*{atom}"
        if chunks:
            chunks.append(f"+ {text}" if not text.startswith("-")
                          else f"- {text[1:]}")
        else:
            chunks.append(text)
    return " ".join(chunks)


def emit_code(s: Schedule, style: str = "flat") -> str:
    """Deterministic straight-line pseudo-code for the schedule.

    Products whose two input forms are single unit atoms and which feed a
    single output with coefficient 1 are inlined into that output line;
    everything else gets a named product line.  'annotated' appends the
    originating term indices.
    """
    if style not in ("flat", "annotated"):
        raise ValueError(f"unknown style: {style}")
    annotate = style == "annotated"

    def single_unit(form: LinearForm) -> bool:
        return len(form) == 1 and next(iter(form.values())) == 1

    uses: dict[int, int] = {}
    for accum in s.c_entries.values():
        for p, _ in accum:
            uses[p] = uses.get(p, 0) + 1
    inline = set()
    for p in range(s.num_products):
        if (single_unit(s.a_forms[p]) and single_unit(s.b_forms[p])
                and uses.get(p) == 1):
            (s_out, u_out), = (k for k, accum in s.c_entries.items()
                               if any(q == p for q, _ in accum))
            coeff = dict(s.c_entries[(s_out, u_out)])[p]
            if coeff == 1:
                inline.add(p)

    lines = []
    for p in range(s.num_products):
        if p in inline:
            continue
        line = (f"p{p + 1} = ({_format_form('a', s.a_forms[p])})"
                f" * ({_format_form('b', s.b_forms[p])})")
        if annotate:
            line += f"  # term {p + 1}"
        lines.append(line)
    n = s.dim
    for si in range(1, n + 1):
        for ui in range(1, n + 1):
            accum = s.c_entries.get((si, ui), ())
            chunks = []
            for p, c in accum:
                if p in inline:
                    text = (f"{_format_form('a', s.a_forms[p])}"
                            f" * {_format_form('b', s.b_forms[p])}")
                else:
                    text = f"p{p + 1}" if c == 1 else (
                        f"-p{p + 1}" if c == -1
                        else f"{format_fraction(c)}*p{p + 1}")
                if chunks:
                    chunks.append(f"+ {text}" if not text.startswith("-")
                                  else f"- {text[1:]}")
                else:
                    chunks.append(text)
            rhs = " ".join(chunks) if chunks else "0"
            line = f"c{si}{ui} = {rhs}"
            if annotate and accum:
                line += "  # terms " + ",".join(str(p + 1) for p, _ in accum)
            lines.append(line)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MultiplyResult:
    product: Matrix
    scalar_multiplications: int


def _submatrix(m: Matrix, r0: int, c0: int, size: int) -> Matrix:
    return Matrix([[m[r0 + i, c0 + j] for j in range(size)]
                   for i in range(size)])


def recursive_multiply(t: Tensor, a: Matrix, b: Matrix,
                       threshold: int = 1) -> MultiplyResult:
    """Exact A.B by recursive blocking with t as the base tensor.

    Inputs are zero-padded up to the next power of t.dim; blocks below the
    threshold fall back to schoolbook.  scalar_multiplications counts the
    entry-level multiplications actually performed.
    """
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise ValueError("recursive_multiply expects square matrices of "
                         "equal size")
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    size = a.rows
    sched = extract_schedule(t)
    count = 0

    def schoolbook(x: Matrix, y: Matrix) -> Matrix:
        nonlocal count
        m = x.rows
        count += m * m * m
        return x @ y

    def mul(x: Matrix, y: Matrix) -> Matrix:
        n = t.dim
        m = x.rows
        if m <= threshold or m == 1 or n == 1 or m % n:
            return schoolbook(x, y)
        bs = m // n
        xb = {(i, j): _submatrix(x, (i - 1) * bs + 1, (j - 1) * bs + 1, bs)
              for i in range(1, n + 1) for j in range(1, n + 1)}
        yb = {(i, j): _submatrix(y, (i - 1) * bs + 1, (j - 1) * bs + 1, bs)
              for i in range(1, n + 1) for j in range(1, n + 1)}

        def combo(blocks, form):
            acc = Matrix.zeros(bs)
            for ij, c in form.items():
                acc = acc + (blocks[ij] if c == 1 else blocks[ij].scale(c))
            return acc

        prods = [mul(combo(xb, af), combo(yb, bf))
                 for af, bf in zip(sched.a_forms, sched.b_forms)]
        out = [[Fraction(0)] * m for _ in range(m)]
        for (si, ui), accum in sched.c_entries.items():
            acc = Matrix.zeros(bs)
            for p, c in accum:
                acc = acc + (prods[p] if c == 1 else prods[p].scale(c))
            for i in range(bs):
                for j in range(bs):
                    out[(si - 1) * bs + i][(ui - 1) * bs + j] = acc[i + 1, j + 1]
        return Matrix(out)

    padded = size
    if t.dim > 1:
        padded = 1
        while padded < size:
            padded *= t.dim
    if padded != size:
        def pad(m: Matrix) -> Matrix:
            return Matrix([[m[i, j] if i <= size and j <= size else 0
                            for j in range(1, padded + 1)]
                           for i in range(1, padded + 1)])
        a, b = pad(a), pad(b)
    prod = mul(a, b)
    if padded != size:
        prod = _submatrix(prod, 1, 1, size)
    return MultiplyResult(product=prod, scalar_multiplications=count)
