"""Parse and print trilinear-form text like "(a11+a12)*b22*c21 + ...".

Grammar (whitespace insignificant, indices 1..9):

    expr    := ['-'] product (('+'|'-') product)*
    product := factor '*' factor '*' factor
    factor  := atom | '(' linform ')'
    linform := ['-'] lterm (('+'|'-') lterm)*
    lterm   := [coeff '*'] atom
    coeff   := num ['/' num]          num := integer | 'L'
    atom    := ('a'|'b'|'c') digit digit

Each product must contain exactly one a-form, one b-form and one c-form, in
any order.  The symbol L stands for the free parameter and is instantiated to
a nonzero rational at parse time.  Multiplication is always explicit: no
juxtaposition.
"""

from __future__ import annotations

from fractions import Fraction

from .matrix import Matrix, as_fraction, format_fraction
from .tensor import RankOneTerm, Tensor


class TrilinearSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise TrilinearSyntaxError(f"expected '{ch}'", self.pos)

    def at_end(self) -> bool:
        return self.peek() == ""


class _Parser:
    """Parses into symbolic products; matrices are built once dim is known."""

    def __init__(self, text: str, lam: Fraction):
        self.s = _Scanner(text)
        self.lam = lam
        self.lam_used = False

    def parse(self) -> list[dict]:
        s = self.s
        if s.peek() == "0":
            s.take("0")
            if not s.at_end():
                raise TrilinearSyntaxError("junk after '0'", s.pos)
            return []
        products = []
        sign = -1 if s.take("-") else 1
        if sign == 1:
            s.take("+")
        products.append(self.product(sign))
        while not s.at_end():
            if s.take("+"):
                sign = 1
            elif s.take("-"):
                sign = -1
            else:
                raise TrilinearSyntaxError("expected '+' or '-'", s.pos)
            products.append(self.product(sign))
        return products

    def product(self, sign: int) -> dict:
        forms = [self.factor()]
        self.s.expect("*")
        forms.append(self.factor())
        self.s.expect("*")
        forms.append(self.factor())
        by_letter = {}
        for letter, entries in forms:
            if letter in by_letter:
                raise TrilinearSyntaxError(
                    f"product has two '{letter}' linear forms", self.s.pos)
            by_letter[letter] = entries
        if set(by_letter) != {"a", "b", "c"}:
            missing = sorted({"a", "b", "c"} - set(by_letter))
            raise TrilinearSyntaxError(
                f"product lacks {'/'.join(missing)} linear form", self.s.pos)
        if sign == -1:
            first = forms[0][0]
            by_letter[first] = [(i, j, -v) for i, j, v in by_letter[first]]
        return by_letter

    def factor(self):
        s = self.s
        if s.take("("):
            letter, entries = self.linform()
            s.expect(")")
            return letter, entries
        return self.atom_entry(Fraction(1))

    def linform(self):
        s = self.s
        letter = None
        entries = []
        sign = -1 if s.take("-") else 1
        while True:
            lt, i, j, coeff = self.lterm()
            if letter is None:
                letter = lt
            elif lt != letter:
                raise TrilinearSyntaxError(
                    f"mixed letters '{letter}' and '{lt}' in one linear form",
                    s.pos)
            entries.append((i, j, sign * coeff))
            if s.take("+"):
                sign = 1
            elif s.take("-"):
                sign = -1
            else:
                return letter, entries

    def lterm(self):
        coeff = Fraction(1)
        if self.s.peek() not in "abc":
            coeff = self.coeff()
            self.s.expect("*")
        letter, i, j = self.atom()
        return letter, i, j, coeff

    def atom_entry(self, coeff: Fraction):
        letter, i, j = self.atom()
        return letter, [(i, j, coeff)]

    def atom(self):
        s = self.s
        ch = s.peek()
        if ch not in "abc":
            raise TrilinearSyntaxError("expected an atom like a11", s.pos)
        s.pos += 1
        digits = s.text[s.pos:s.pos + 2]
        if len(digits) != 2 or not digits.isdigit():
            raise TrilinearSyntaxError("atom needs two index digits", s.pos)
        s.pos += 2
        i, j = int(digits[0]), int(digits[1])
        if i == 0 or j == 0:
            raise TrilinearSyntaxError("indices are 1-based; 0 not allowed",
                                       s.pos)
        return ch, i, j

    def number(self) -> Fraction:
        s = self.s
        if s.take("L"):
            self.lam_used = True
            return self.lam
        s.skip_ws()
        start = s.pos
        while s.pos < len(s.text) and s.text[s.pos].isdigit():
            s.pos += 1
        if s.pos == start:
            raise TrilinearSyntaxError("expected a number or L", s.pos)
        return Fraction(int(s.text[start:s.pos]))

    def coeff(self) -> Fraction:
        num = self.number()
        if self.s.take("/"):
            den = self.number()
            if den == 0:
                raise TrilinearSyntaxError("zero denominator", self.s.pos)
            return num / den
        return num


def parse_trilinear(text: str, lam=1) -> Tensor:
    """Parse trilinear text into a tensor, one rank-one term per product.

    The dimension is inferred from the largest index seen.  lam instantiates
    the L symbol and must be nonzero when L occurs.
    """
    lam = as_fraction(lam)
    parser = _Parser(text, lam)
    products = parser.parse()
    if parser.lam_used and lam == 0:
        raise ValueError("text uses the L parameter; lam must be nonzero")
    dim = 1
    for prod in products:
        for entries in prod.values():
            for i, j, _ in entries:
                dim = max(dim, i, j)
    terms = []
    for prod in products:
        mats = {}
        for letter, entries in prod.items():
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            for i, j, v in entries:
                rows[i - 1][j - 1] += v
            mats[letter] = Matrix(rows)
        terms.append(RankOneTerm(mats["a"], mats["b"], mats["c"]))
    return Tensor(dim, terms)


def _format_linform(letter: str, m: Matrix) -> str:
    entries = list(m.entries())
    if len(entries) == 1 and entries[0][2] == 1:
        i, j, _ = entries[0]
        return f"{letter}{i}{j}"
    parts = []
    for i, j, v in entries:
        atom = f"{letter}{i}{j}"
        if v == 1:
            chunk = atom
        elif v == -1:
            chunk = f"-{atom}"
        else:
            chunk = f"{format_fraction(v)}*{atom}"
        if parts and not chunk.startswith("-"):
            parts.append("+" + chunk)
        else:
            parts.append(chunk)
    return f"({''.join(parts)})"


def print_trilinear(t: Tensor) -> str:
    """Inverse presentation; parse(print(t)) reproduces t's nonzero terms."""
    terms = t.nonzero_terms()
    if not terms:
        return "0"
    lines = []
    for tm in terms:
        lines.append("*".join((_format_linform("a", tm.a),
                               _format_linform("b", tm.b),
                               _format_linform("c", tm.c))))
    return "\n+ ".join(lines)
