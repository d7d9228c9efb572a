"""
Text grammar for elements of U.

    expr    := term (('+' | '-') term)*
    term    := ['-'] power (('*' | '/') power)*
    power   := atom ['^' ['-'] int]
    atom    := int | 'v' | 'q' | '(' expr ')' | gen | 'k' '[' weight ']'
    gen     := ('e' | 'f') [index] | ('E' | 'F') [index] ['(' int ')']
    index   := '[' ('b' int | 'a' int | int) ']'
    weight  := '0' | ['-'] wterm (('+' | '-') wterm)*
    wterm   := [int ['*']] ('w' | 'a') int

`e[b2]` is the root vector e_{β_2}, `e[a1]` (or `e[1]`) the Chevalley
generator e_1, `E[b1](3)` the divided power e_{β_1}^{(3)}. In rank one the
index may be omitted. Division is only by scalars.
"""

from typing import Any, List, Tuple

from ..errors import ParseError
from ..qscalars import ONE, V, format_scalar, qfact
from ..rootdata import WeightVec
from .element import Key, TensorUElem, UElem
from .torus import TorusLabel


class _Parser:
    def __init__(self, text: str, qg: Any):
        self.text = text
        self.qg = qg
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = self.peek() or "end of input"
            raise self.error(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def signed_integer(self) -> int:
        if self.peek() == "-":
            self.pos += 1
            return -self.integer()
        return self.integer()

    def parse(self) -> UElem:
        if not self.text.strip():
            raise self.error("empty expression")
        value = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> UElem:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> UElem:
        negate = False
        if self.peek() == "-":
            self.pos += 1
            negate = True
        value = self.power()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            start = self.pos
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                c = self._as_scalar(rhs, start)
                if not c:
                    raise self.error("division by zero", start)
                value = value * (ONE / c)
        return -value if negate else value

    def _as_scalar(self, x: UElem, pos: int) -> Any:
        empty = self.qg.empty
        zero = self.qg.datum.zero()
        if any(key != (empty, zero, empty) for key in x.terms):
            raise self.error("division by a non-scalar element", pos)
        return x.coeff((empty, zero, empty))

    def power(self) -> UElem:
        start = self.pos
        base = self.atom()
        if self.peek() != "^":
            return base
        self.pos += 1
        n = self.signed_integer()
        if n >= 0:
            return base**n
        if len(base.terms) == 1:
            ((fm, lam, em), c), = base.terms.items()
            if not any(fm) and not any(em):
                return self.qg.monomial((fm, lam * n, em), c**n)
        raise self.error("negative powers need a scalar or k[...] base", start)

    def atom(self) -> UElem:
        char = self.peek()
        start = self.pos
        if not char:
            raise self.error("unexpected end of input")
        if char == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if char.isdigit():
            return self.qg.scalar(self.integer())
        if char == "v":
            self.pos += 1
            return self.qg.scalar(V)
        if char == "q":
            self.pos += 1
            return self.qg.scalar(V ** self.qg.datum.index)
        if char == "k":
            self.pos += 1
            self.expect("[")
            lam = self.weight()
            self.expect("]")
            return self.qg.k(lam)
        if char in "efEF":
            self.pos += 1
            return self.generator(char, start)
        raise self.error(f"unexpected {char!r}")

    def _index(self, start: int) -> Tuple[str, int]:
        if self.peek() != "[":
            if self.qg.rank == 1:
                return "b", 0
            raise self.error("generator needs an index like [b1] or [a1] in rank > 1", start)
        self.pos += 1
        kind = "a"
        if self.peek() in ("a", "b"):
            kind = self.text[self.pos]
            self.pos += 1
        pos = self.pos
        n = self.integer()
        self.expect("]")
        limit = self.qg.n if kind == "b" else self.qg.rank
        if not 1 <= n <= limit:
            raise self.error(f"index {kind}{n} out of range 1..{limit}", pos)
        return kind, n - 1

    def generator(self, letter: str, start: int) -> UElem:
        kind, idx = self._index(start)
        order = 1
        if letter in "EF" and self.peek() == "(":
            self.pos += 1
            order = self.integer()
            self.expect(")")
        side = letter.lower()
        divided = letter in "EF"
        qg = self.qg
        if kind == "b":
            if side == "e":
                return qg.e_root(idx, order, divided)
            return qg.f_root(idx, order, divided)
        gen = qg.e(idx) if side == "e" else qg.f(idx)
        value = gen**order
        if divided:
            value = value * (ONE / qfact(order, qg.words.qi[idx]))
        return value

    def weight(self) -> WeightVec:
        datum = self.qg.datum
        total = datum.zero()
        first = True
        while True:
            char = self.peek()
            if not char:
                raise self.error("unterminated weight")
            if char == "]":
                if first:
                    raise self.error("empty weight")
                return total
            sign = 1
            if char in "+-":
                sign = -1 if char == "-" else 1
                self.pos += 1
            elif not first:
                raise self.error(f"unexpected {char!r} in weight")
            coeff = 1
            if self.peek().isdigit():
                coeff = self.integer()
                if self.peek() == "*":
                    self.pos += 1
            first = False
            letter = self.peek()
            if letter not in ("w", "a"):
                if coeff == 0 and letter == "]":
                    continue
                raise self.error("expected w<i> or a<i> in weight")
            self.pos += 1
            pos = self.pos
            i = self.integer()
            if not 1 <= i <= datum.rank:
                raise self.error(f"weight index {i} out of range", pos)
            basis = datum.fundamental(i - 1) if letter == "w" else datum.alpha(i - 1)
            total = total + basis * (sign * coeff)


def parse_element(text: str, qg: Any) -> UElem:
    """Parse element text into PBW normal form."""
    return _Parser(text, qg).parse()


# Printing

def format_weight(lam: WeightVec, datum: Any) -> str:
    if datum.in_root_lattice(lam):
        coords, letter = datum.alpha_coords(lam), "a"
    else:
        coords, letter = tuple(lam), "w"
    pieces: List[str] = []
    for i, c in enumerate(coords):
        if not c:
            continue
        mag = abs(c)
        body = f"{letter}{i + 1}" if mag == 1 else f"{mag}{letter}{i + 1}"
        if pieces:
            pieces.append(("-" if c < 0 else "+") + body)
        else:
            pieces.append(("-" if c < 0 else "") + body)
    return "".join(pieces) or "0"


def _side(letter: str, mono: Tuple[int, ...], qg: Any, divided: bool) -> List[str]:
    out = []
    for k in range(qg.n - 1, -1, -1):
        m = mono[k]
        if not m:
            continue
        index = "" if qg.rank == 1 else f"[b{k + 1}]"
        if divided and m > 1:
            out.append(f"{letter.upper()}{index}({m})")
        elif m > 1:
            out.append(f"{letter}{index}^{m}")
        else:
            out.append(f"{letter}{index}")
    return out


def _cartan(lam: Any, qg: Any, classical: bool) -> List[str]:
    if not isinstance(lam, TorusLabel):
        return [] if lam.is_zero() else [f"k[{format_weight(lam, qg.datum)}]"]
    out = [] if lam.mu.is_zero() else [f"k[{format_weight(lam.mu, qg.datum)}]"]
    for i, t in enumerate(lam.t):
        if not t:
            continue
        index = "" if qg.rank == 1 else str(i + 1)
        out.append(f"C(h{index},{t})" if classical else f"[K{index};0,{t}]")
    return out


def format_monomial(key: Key, qg: Any, divided: bool = False, classical: bool = False) -> str:
    """`classical` prints the torus part as binomials C(h_i, t) in U(g)."""
    fmono, lam, emono = key
    parts = _side("f", fmono, qg, divided)
    parts.extend(_cartan(lam, qg, classical))
    parts.extend(_side("e", emono, qg, divided))
    return "*".join(parts)


def sort_key(key: Key) -> Tuple:
    fmono, lam, emono = key
    if isinstance(lam, TorusLabel):
        cartan: Tuple = (tuple(-t for t in lam.t), tuple(-c for c in lam.mu))
    else:
        cartan = tuple(-c for c in lam)
    return (-(sum(fmono) + sum(emono)), tuple(-m for m in fmono), tuple(-m for m in emono), cartan)


def format_term(coeff: Any, mono: str) -> str:
    coeff_text = format_scalar(coeff)
    if coeff_text.startswith("-"):
        return "-" + format_term(-coeff, mono)
    simple = " " not in coeff_text
    if not mono:
        return coeff_text if simple else f"({coeff_text})"
    if coeff_text == "1":
        return mono
    if simple:
        return f"{coeff_text}*{mono}"
    return f"({coeff_text})*{mono}"


def join_terms(texts: List[str]) -> str:
    if not texts:
        return "0"
    out = texts[0]
    for text in texts[1:]:
        out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
    return out


def format_element(a: UElem, form: str = "DK") -> str:
    """Canonical text; `form="L"` prints divided powers with Lusztig coordinates."""
    qg = a.qg
    divided = form.upper() == "L"
    coords = qg.coords(a, form)
    texts = [
        format_term(coords[key], format_monomial(key, qg, divided))
        for key in sorted(coords, key=sort_key)
    ]
    return join_terms(texts)


def format_tensor(t: TensorUElem) -> str:
    qg = t.qg
    texts = []
    for keys in sorted(t.terms, key=lambda ks: tuple(sort_key(k) for k in ks)):
        factors = " ⊗ ".join(format_monomial(k, qg) or "1" for k in keys)
        coeff = format_scalar(t.terms[keys])
        if coeff == "1":
            texts.append(factors)
        elif coeff == "-1":
            texts.append(f"-{factors}")
        else:
            texts.append(f"({coeff})*{factors}")
    return join_terms(texts)
