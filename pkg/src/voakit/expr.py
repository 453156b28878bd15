"""State-expression language: parsing, canonicalization and printing.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := [scalar '*'] factor+  |  scalar
    scalar := (int | int/int | '(' k-expression ')') (('*' | '/') scalar)*
    factor := name | 'D^' int '(' factor ')' | ':' factor factor+ ':'

Juxtaposed factors and ``:...:`` groups are right-nested normally ordered
products.  A scalar is an integer, a fraction ``p/q`` or a parenthesised
expression in ``k``; a term that is only a scalar is a multiple of the
vacuum.  ``D(x)`` is accepted as shorthand for ``D^1(x)``, and ``1`` or
``vac`` may be used as a factor for the vacuum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactmath import Scalar, format_scalar, parse_scalar

__all__ = [
    "ParseError",
    "Name",
    "Deriv",
    "NormalOrder",
    "Sum",
    "Scaled",
    "parse_expression",
    "parse_state",
    "canonicalize",
    "format_state",
    "format_monomial",
    "random_expression",
]


class ParseError(ValueError):
    pass


# -- expression tree ---------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Vac:
    pass


@dataclass(frozen=True)
class Deriv:
    order: int
    arg: "Node"


@dataclass(frozen=True)
class NormalOrder:
    factors: tuple  # right-nested


@dataclass(frozen=True)
class Scaled:
    coeff: object
    arg: "Node"


@dataclass(frozen=True)
class Sum:
    terms: tuple


Node = Union[Name, Vac, Deriv, NormalOrder, Scaled, Sum]

_TOK = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<D>D\^\d+\(|D\()|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*:()^/]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()
    return toks


class _Parser:
    """Recursive descent with backtracking over the ambiguous ':' delimiters."""

    def __init__(self, text: str, toks=None):
        self.text = text
        self.toks = _tokenize(text) if toks is None else toks

    def tok(self, i):
        return self.toks[i] if i < len(self.toks) else (None, None)

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self) -> Node:
        if not self.toks:
            self.fail("empty expression")
        node, i = self.expr(0)
        if i != len(self.toks):
            self.fail(f"trailing input {self.tok(i)[1]!r}")
        return node

    def expr(self, i):
        terms = []
        sign = 1
        if self.tok(i) == ("op", "+"):
            i += 1
        elif self.tok(i) == ("op", "-"):
            i += 1
            sign = -1
        t, i = self.term(i, sign)
        terms.append(t)
        while self.tok(i) in (("op", "+"), ("op", "-")):
            sign = -1 if self.tok(i)[1] == "-" else 1
            t, i = self.term(i + 1, sign)
            terms.append(t)
        return (terms[0] if len(terms) == 1 else Sum(tuple(terms))), i

    def _matching(self, i):
        depth = 0
        j = i
        while True:
            k, v = self.tok(j)
            if k is None:
                self.fail("unbalanced parenthesis")
            if v == "(" or k == "D":
                depth += 1
            elif v == ")":
                depth -= 1
                if depth == 0:
                    return j
            j += 1

    def _ends_term(self, i):
        return self.tok(i) in ((None, None), ("op", "+"), ("op", "-"), ("op", ")"))

    def term(self, i, sign):
        coeff = None
        k, v = self.tok(i)
        if k == "num" or (k, v) == ("op", "("):
            parts = []
            while True:
                if self.tok(i)[0] == "num":
                    parts.append(self.tok(i)[1])
                    i += 1
                else:
                    j = self._matching(i)
                    parts.append("".join(t[1] for t in self.toks[i:j + 1]))
                    i = j + 1
                # a scalar may continue with '*'/'/' and another numeric atom
                op, nxt = self.tok(i), self.tok(i + 1)
                if op in (("op", "*"), ("op", "/")) and (nxt[0] == "num" or nxt == ("op", "(")):
                    parts.append(op[1])
                    i += 1
                    continue
                break
            text = "".join(parts)
            try:
                coeff = parse_scalar(text)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            if self.tok(i) == ("op", "*"):
                i += 1
            elif self._ends_term(i):
                return Scaled(coeff * sign, Vac()), i
        for factors, j in self.factors(i):
            if self._ends_term(j):
                body = factors[0] if len(factors) == 1 else NormalOrder(tuple(factors))
                if coeff is None:
                    return (body if sign == 1 else Scaled(Fraction(-1), body)), j
                return Scaled(coeff * sign, body), j
        self.fail(f"cannot parse term starting at token {i}")

    def factors(self, i):
        for f, j in self.factor(i):
            yield [f], j
            for rest, k in self.factors(j):
                yield [f] + rest, k

    def factor(self, i):
        k, v = self.tok(i)
        if k == "name":
            yield (Vac() if v == "vac" else Name(v)), i + 1
        elif k == "num" and v == "1":
            yield Vac(), i + 1
        elif k == "D":
            j = self._matching(i)
            order = 1 if v == "D(" else int(v[2:-1])
            inner = _Parser(self.text, self.toks[i + 1:j]).parse()
            yield Deriv(order, inner), j + 1
        elif (k, v) == ("op", ":"):
            for fs, j in self.factors(i + 1):
                if self.tok(j) == ("op", ":"):
                    yield (fs[0] if len(fs) == 1 else NormalOrder(tuple(fs))), j + 1


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


def canonicalize(ctx, node: Node):
    """Evaluate an expression tree to a canonical :class:`~voakit.engine.State`."""
    from .engine import derivative, nth_product

    if isinstance(node, str):
        node = parse_expression(node)
    if isinstance(node, Name):
        if node.name in ctx.index:
            return ctx.gen(node.name)
        if node.name in ctx.named:
            return ctx.named[node.name]
        from .engine import UnknownGenerator
        raise UnknownGenerator(node.name)
    if isinstance(node, Vac):
        return ctx.vacuum()
    if isinstance(node, Deriv):
        return derivative(ctx, canonicalize(ctx, node.arg), node.order)
    if isinstance(node, NormalOrder):
        parts = [canonicalize(ctx, f) for f in node.factors]
        acc = parts[-1]
        for p in reversed(parts[:-1]):
            acc = nth_product(ctx, p, acc, -1)
        return acc
    if isinstance(node, Scaled):
        return canonicalize(ctx, node.arg) * node.coeff
    if isinstance(node, Sum):
        acc = ctx.zero()
        for t in node.terms:
            acc = acc + canonicalize(ctx, t)
        return acc
    if hasattr(node, "terms") and hasattr(node, "ctx"):
        return node
    raise TypeError(f"not an expression node: {node!r}")


def parse_state(ctx, text: str):
    return canonicalize(ctx, parse_expression(text))


# -- printing ---------------------------------------------------------------------

def _fmt_factor(ctx, g: int, d: int) -> str:
    name = ctx.generators[g].name
    return name if d == 0 else f"D^{d}({name})"


def format_monomial(ctx, m) -> str:
    if not m:
        return "1"
    parts = [_fmt_factor(ctx, g, d) for g, d in m]
    if len(parts) == 1:
        return parts[0]
    return ":" + " ".join(parts) + ":"


def _fmt_coeff(c) -> str:
    if isinstance(c, Scalar):
        return f"({c})"
    return format_scalar(c)


def format_state(state) -> str:
    ctx = state.ctx
    items = state.sorted_terms()
    if not items:
        return "0"
    out = []
    for idx, (m, c) in enumerate(items):
        neg = False
        if not isinstance(c, Scalar) and c < 0:
            neg = True
            c = -c
        mono = format_monomial(ctx, m)
        if not m:
            body = _fmt_coeff(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(c)}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def random_expression(ctx, rng, depth: int = 2) -> str:
    """Random expression text over ``ctx``'s generators (nested sums, D^n and ``:..:``)."""
    names = [g.name for g in ctx.generators]

    def factor(d):
        r = rng.random()
        if d <= 0 or r < 0.45:
            return rng.choice(names)
        if r < 0.7:
            n = rng.randint(1, 2)
            inner = factor(d - 1)
            return f"D({inner})" if n == 1 else f"D^{n}({inner})"
        return ":" + " ".join(factor(d - 1) for _ in range(rng.randint(2, 3))) + ":"

    terms = []
    for i in range(rng.randint(1, 3)):
        num, den = rng.randint(-5, 5) or 1, rng.randint(1, 4)
        sign = "-" if num < 0 else ("+" if i else "")
        coeff = f"{abs(num)}/{den}*" if (abs(num), den) != (1, 1) else ""
        body = factor(depth) if rng.random() < 0.9 else "1"
        if body == "1" and not coeff:
            coeff = "2*"
        terms.append(f"{sign} {coeff}{body}".strip())
    return " ".join(terms)
