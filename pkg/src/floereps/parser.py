"""Recursive-descent parser for knot expressions.

Grammar::

    Expr := Term (('+' | '-') Term)*
    Term := INT '*' Atom | Atom
    Atom := 'T(' INT ',' INT ')' | 'C(' Atom ';' INT ',' INT ')'
          | 'S[' INT-list ']' | 'K(' INT ',' INT ')' | '-' Atom | '(' Expr ')'

``n*X`` becomes n copies of X inside a sum, ``K(i,j)`` is expanded to its
definition, and a leading ``-`` is a mirror.
"""

from __future__ import annotations

from dataclasses import dataclass

from .knots import Cable, KnotError, Mirror, RawClass, Repeat, Sum, Torus, k_ij, validate

MAX_REPEAT = 64


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.offset}^"


@dataclass
class _Parser:
    text: str
    k: int = 0

    def error(self, msg: str, at: int | None = None):
        raise ParseError(msg, self.k if at is None else at, self.text)

    def ws(self) -> None:
        while self.k < len(self.text) and self.text[self.k].isspace():
            self.k += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.k] if self.k < len(self.text) else ""

    def expect(self, tok: str) -> None:
        self.ws()
        if not self.text.startswith(tok, self.k):
            got = repr(self.text[self.k]) if self.k < len(self.text) else "end of input"
            self.error(f"expected {tok!r}, got {got}")
        self.k += len(tok)

    def integer(self, signed: bool = False) -> int:
        self.ws()
        start = self.k
        if signed and self.peek() == "-":
            self.k += 1
        while self.k < len(self.text) and self.text[self.k].isdigit():
            self.k += 1
        digits = self.text[start : self.k]
        if not digits or digits == "-":
            self.k = start
            self.error("expected an integer")
        return int(digits)

    # grammar

    def expr(self):
        terms = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.k]
            self.k += 1
            more = self.term()
            terms += more if op == "+" else [Mirror(t) for t in more]
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> list:
        if self.peek().isdigit():
            at = self.k
            n = self.integer()
            self.expect("*")
            if not 1 <= n <= MAX_REPEAT:
                self.error(f"repeat count must be between 1 and {MAX_REPEAT}", at)
            atom = self.atom()
            return [atom] * n
        return [self.atom()]

    def atom(self):
        c = self.peek()
        at = self.k
        if c == "-":
            self.k += 1
            return Mirror(self.atom())
        if c == "(":
            self.k += 1
            e = self.expr()
            self.expect(")")
            return e
        if self.text.startswith("T(", self.k):
            self.k += 2
            p = self.integer(signed=True)
            self.expect(",")
            q = self.integer(signed=True)
            self.expect(")")
            return self._checked(Torus(p, q), at)
        if self.text.startswith("C(", self.k):
            self.k += 2
            child = self.atom()
            self.expect(";")
            m = self.integer(signed=True)
            self.expect(",")
            l = self.integer(signed=True)
            self.expect(")")
            return self._checked(Cable(child, m, l), at)
        if self.text.startswith("S[", self.k):
            self.k += 2
            seq = []
            if self.peek() != "]":
                seq.append(self.integer(signed=True))
                while self.peek() == ",":
                    self.k += 1
                    seq.append(self.integer(signed=True))
            self.expect("]")
            return RawClass(tuple(seq))
        if self.text.startswith("K(", self.k):
            self.k += 2
            i = self.integer(signed=True)
            self.expect(",")
            j = self.integer(signed=True)
            self.expect(")")
            try:
                return k_ij(i, j)
            except ValueError as exc:
                raise ParseError(str(exc), at, self.text) from None
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected {c!r}")

    def _checked(self, node, at: int):
        try:
            validate(node)
        except KnotError as exc:
            raise ParseError(f"{exc} in {to_text(node)}", at, self.text) from None
        return node


def parse_expr(text: str):
    """Parse and validate a knot expression."""
    p = _Parser(text)
    e = p.expr()
    p.ws()
    if p.k != len(text):
        p.error(f"unexpected {text[p.k]!r}")
    return e


def _atom_text(e) -> str:
    if isinstance(e, Torus):
        return f"T({e.p},{e.q})"
    if isinstance(e, Cable):
        return f"C({_atom_text(e.child)};{e.m},{e.l})"
    if isinstance(e, RawClass):
        return "S[" + ",".join(map(str, e.seq)) + "]"
    if isinstance(e, Mirror):
        return "-" + _atom_text(e.child)
    return f"({to_text(e)})"


def to_text(e) -> str:
    """Print an expression so that :func:`parse_expr` gives it back."""
    if isinstance(e, Sum):
        if not e.children:
            return "S[]"
        parts = [_atom_text(e.children[0])]
        for ch in e.children[1:]:
            if isinstance(ch, Mirror):
                parts.append(" - " + _atom_text(ch.child))
            else:
                parts.append(" + " + _atom_text(ch))
        return "".join(parts)
    if isinstance(e, Repeat):
        return to_text(Sum((e.child,) * e.n))
    return _atom_text(e)


__all__ = ["MAX_REPEAT", "ParseError", "parse_expr", "to_text"]
