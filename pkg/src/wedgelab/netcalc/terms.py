"""Net terms, wedge labels and group symbols, with a parser and printer.

Grammar (whitespace is ignored)::

    term    := tensor ("(+)" tensor)*
    tensor  := unary ("(x)" unary)*
    unary   := ("U(" word ")" | "Z") ("·" | "*") unary | postfix
    postfix := atom "'"*
    atom    := NAME "(" wedge ")" | "(" term ")"
    wedge   := (symbol ".")* wbase
    wbase   := BASE "'"* | "(" wedge ")" "'"*
    word    := symbol ("." symbol)*
    symbol  := "r(" angle ")" | "b(" rational ")" | "-1" | "e" | NAME

A wedge label is a base name plus a word g1 ... gk of group symbols, read as
g1 g2 ... gk . BASE. A prime on a wedge appends r(pi) to the word, since
W' = r(pi).W for the base wedge and hence (g.W)' = g.r(pi).W.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

PRIME_SYMBOL = "r(pi)"


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- group symbols ---------------------------------------------------------------

def format_angle(q: Fraction) -> str:
    """q pi as text: 0, pi, -pi/2, 3pi/2, ..."""
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    num = "" if q.numerator == 1 else str(q.numerator)
    den = "" if q.denominator == 1 else f"/{q.denominator}"
    return f"{sign}{num}pi{den}"


_ANGLE_RE = re.compile(r"^(-)?(\d+)?\s*pi\s*(?:/\s*(\d+))?$|^(-?\d+)$")


def parse_angle(text: str) -> Fraction:
    m = _ANGLE_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad angle {text!r}; expected a rational multiple of pi")
    if m.group(4) is not None:
        if int(m.group(4)) != 0:
            raise ValueError("angles must be written as multiples of pi")
        return Fraction(0)
    q = Fraction(int(m.group(2) or 1), int(m.group(3) or 1))
    return -q if m.group(1) else q


def rotation_symbol(q: Fraction) -> str:
    return f"r({format_angle(Fraction(q))})"


def boost_symbol(t: Fraction) -> str:
    return f"b({Fraction(t)})"


@functools.lru_cache(maxsize=4096)
def symbol_kind(sym: str) -> tuple[str, object]:
    """('rot', q) | ('boost', t) | ('central', +-1) | ('named', name)."""
    if sym.startswith("r(") and sym.endswith(")"):
        return "rot", parse_angle(sym[2:-1])
    if sym.startswith("b(") and sym.endswith(")"):
        return "boost", Fraction(sym[2:-1])
    if sym == "-1":
        return "central", -1
    if sym == "e":
        return "central", 1
    return "named", sym


def canonical_symbol(sym: str) -> str:
    kind, val = symbol_kind(sym)
    if kind == "rot":
        return rotation_symbol(val)
    if kind == "boost":
        return boost_symbol(val)
    return sym


# -- terms --------------------------------------------------------------------------

@dataclass(frozen=True)
class Wedge:
    base: str
    word: tuple[str, ...] = ()

    def prime(self) -> "Wedge":
        return Wedge(self.base, self.word + (PRIME_SYMBOL,))

    def moved(self, word: tuple[str, ...]) -> "Wedge":
        return Wedge(self.base, tuple(word) + self.word)


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Base(Term):
    net: str
    wedge: Wedge


@dataclass(frozen=True)
class Apply(Term):
    word: tuple[str, ...]
    body: Term


@dataclass(frozen=True)
class Complement(Term):
    body: Term


@dataclass(frozen=True)
class DirectSum(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Tensor(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Twist(Term):
    body: Term


def term_size(t: Term) -> int:
    if isinstance(t, Base):
        return 1
    if isinstance(t, (Apply, Complement, Twist)):
        return 1 + term_size(t.body)
    return 1 + term_size(t.left) + term_size(t.right)


def map_wedges(t: Term, fn) -> Term:
    if isinstance(t, Base):
        return Base(t.net, fn(t.wedge))
    if isinstance(t, Apply):
        return Apply(t.word, map_wedges(t.body, fn))
    if isinstance(t, Complement):
        return Complement(map_wedges(t.body, fn))
    if isinstance(t, Twist):
        return Twist(map_wedges(t.body, fn))
    return type(t)(map_wedges(t.left, fn), map_wedges(t.right, fn))


# -- printer --------------------------------------------------------------------------

def print_wedge(w: Wedge) -> str:
    word = list(w.word)
    primes = 0
    while word and word[-1] == PRIME_SYMBOL:
        word.pop()
        primes += 1
    return "".join(s + "." for s in word) + w.base + "'" * primes


def _print(t: Term, level: int) -> str:
    # levels: 0 sum, 1 tensor, 2 unary, 3 postfix/atom
    if isinstance(t, Base):
        return f"{t.net}({print_wedge(t.wedge)})"
    if isinstance(t, Complement):
        return _print(t.body, 3) + "'" if _is_postfix(t.body) else f"({_print(t.body, 0)})'"
    if isinstance(t, (Apply, Twist)):
        head = "Z" if isinstance(t, Twist) else f"U({'.'.join(t.word)})"
        s = f"{head}·{_print(t.body, 2)}"
        return s if level <= 2 else f"({s})"
    if isinstance(t, DirectSum):
        s = f"{_print(t.left, 0)} (+) {_print(t.right, 1)}"
        return s if level == 0 else f"({s})"
    if isinstance(t, Tensor):
        s = f"{_print(t.left, 1)} (x) {_print(t.right, 2)}"
        return s if level <= 1 else f"({s})"
    raise TypeError(f"not a term: {t!r}")


def _is_postfix(t: Term) -> bool:
    return isinstance(t, (Base, Complement))


def print_term(t: Term) -> str:
    return _print(t, 0)


# -- parser ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise TermSyntaxError(msg, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.eat(s):
            self.error(f"expected {s!r}")

    def name(self) -> str:
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(0)

    def term(self) -> Term:
        t = self.tensor()
        while self.eat("(+)"):
            t = DirectSum(t, self.tensor())
        return t

    def tensor(self) -> Term:
        t = self.unary()
        while self.eat("(x)"):
            t = Tensor(t, self.unary())
        return t

    def dot(self) -> None:
        if not (self.eat("·") or self.eat("*")):
            self.error("expected '·' or '*'")

    def unary(self) -> Term:
        if self.peek("U(") :
            self.pos += 2
            word = self.word()
            self.expect(")")
            self.dot()
            return Apply(word, self.unary())
        self.skip()
        if self.peek("Z") and not re.compile(r"Z[A-Za-z0-9_(]").match(self.text, self.pos):
            self.pos += 1
            self.dot()
            return Twist(self.unary())
        return self.postfix()

    def postfix(self) -> Term:
        t = self.atom()
        while self.eat("'"):
            t = Complement(t)
        return t

    def atom(self) -> Term:
        if self.peek("(") and not self.peek("(+)") and not self.peek("(x)"):
            self.pos += 1
            t = self.term()
            self.expect(")")
            return t
        net = self.name()
        self.expect("(")
        w = self.wedge()
        self.expect(")")
        return Base(net, w)

    def symbol(self) -> str:
        self.skip()
        start = self.pos
        if self.eat("-1"):
            return "-1"
        if self.peek("r(") or self.peek("b("):
            head = self.text[self.pos]
            self.pos += 2
            depth, arg_start = 1, self.pos
            while self.pos < len(self.text) and depth:
                c = self.text[self.pos]
                depth += (c == "(") - (c == ")")
                self.pos += 1
            if depth:
                self.pos = start
                self.error("unbalanced parenthesis in group symbol")
            arg = self.text[arg_start:self.pos - 1]
            try:
                return canonical_symbol(f"{head}({arg.strip()})")
            except (ValueError, ZeroDivisionError) as exc:
                self.pos = start
                self.error(str(exc))
        return self.name()

    def word(self) -> tuple[str, ...]:
        syms = [self.symbol()]
        while self.eat("."):
            syms.append(self.symbol())
        return tuple(syms)

    def wedge(self) -> Wedge:
        prefix: list[str] = []
        while True:
            self.skip()
            if self.peek("("):
                self.pos += 1
                inner = self.wedge()
                self.expect(")")
                w = inner
                break
            save = self.pos
            if self.peek("-1") or self.peek("r(") or self.peek("b("):
                prefix.append(self.symbol())
                self.expect(".")
                continue
            nm = self.name()
            if self.eat("."):
                prefix.append(nm)
                continue
            self.pos = save
            w = Wedge(self.name())
            break
        while self.eat("'"):
            w = w.prime()
        return w.moved(tuple(prefix))


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return t


def parse_identity(text: str) -> tuple[Term, Term]:
    """'lhs = rhs'."""
    depth = 0
    for i, c in enumerate(text):
        depth += (c == "(") - (c == ")")
        if c == "=" and depth == 0:
            return parse_term(text[:i]), _shifted(text[i + 1:], i + 1)
    raise TermSyntaxError("expected '=' in identity", len(text))


def _shifted(text: str, offset: int) -> Term:
    try:
        return parse_term(text)
    except TermSyntaxError as exc:
        raise TermSyntaxError(str(exc).rsplit(" at position", 1)[0], exc.position + offset) from None
