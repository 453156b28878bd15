"""Exact scalars: rationals, rational functions in the level ``k``, and phases.

Polynomials are dense tuples of :class:`~fractions.Fraction` in ascending
degree.  A :class:`Scalar` is a reduced ratio ``num/den`` with ``den`` monic.
Nothing in this module ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "Scalar",
    "Phase",
    "PoleAtK",
    "ScalarParseError",
    "K",
    "as_scalar",
    "scalar_eval",
    "phase_mul",
    "parse_scalar",
    "parse_rational",
    "coerce",
    "is_zero",
]

Rational = Union[int, Fraction]
Poly = tuple  # tuple[Fraction, ...], ascending, no trailing zeros

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PoleAtK(ZeroDivisionError):
    """Raised when evaluating a scalar at a root of its denominator."""


class ScalarParseError(ValueError):
    pass


# -- dense polynomial helpers -------------------------------------------------

def _trim(c: Iterable) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return _trim(q), _trim(r)


def _monic(a: Poly) -> Poly:
    return _pscale(a, 1 / a[-1])


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _monic(a) if a else ()


def _peval(a: Poly, x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_poly(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = _fmt_rat(mag)
        else:
            var = "k" if e == 1 else f"k^{e}"
            body = var if mag == 1 else f"{_fmt_rat(mag)}*{var}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# -- Scalar -------------------------------------------------------------------

class Scalar:
    """Element of Q(k) in canonical reduced form.

    Instances are immutable and hashable; a constant scalar hashes and
    compares equal to the corresponding :class:`Fraction`.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = (1,)):
        n = _trim(num)
        d = _trim(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            d = (_ONE,)
        elif len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        if d[-1] != 1:
            lead = d[-1]
            n = _pscale(n, 1 / lead)
            d = _pscale(d, 1 / lead)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "Scalar":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, q: Rational) -> "Scalar":
        q = Fraction(q)
        return cls._raw((q,) if q else (), (_ONE,))

    @classmethod
    def poly(cls, coeffs: Iterable) -> "Scalar":
        return cls._raw(_trim(coeffs), (_ONE,))

    # predicates
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else _ZERO

    def __bool__(self) -> bool:
        return bool(self.num)

    # arithmetic
    def __add__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            if len(self.den) == 1:
                return Scalar._raw(_padd(self.num, o.num), self.den)
            return Scalar(_padd(self.num, o.num), self.den)
        return Scalar(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                      _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Scalar._raw((), (_ONE,))
            return Scalar._raw(_pscale(self.num, Fraction(other)), self.den)
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if len(self.den) == 1 and len(o.den) == 1:
            return Scalar._raw(_pmul(self.num, o.num), (_ONE,))
        return Scalar(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (_ONE / self) ** (-e)
        out = Scalar.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison / hashing
    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, k0: Rational) -> Fraction:
        return scalar_eval(self, k0)

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        if len(self.den) == 1:
            return _fmt_poly(self.num)
        n = _fmt_poly(self.num)
        d = _fmt_poly(self.den)
        if len(self.num) > 1 or (self.num and self.num[0] < 0):
            n = f"({n})"
        return f"{n}/({d})"

    def roots(self) -> list[Fraction]:
        """Rational roots of the numerator (rational root theorem)."""
        return _rational_roots(self.num)


def _lift(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return NotImplemented


K = Scalar._raw((_ZERO, _ONE), (_ONE,))


def as_scalar(x) -> Scalar:
    s = _lift(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return s


def coerce(x):
    """Collapse constant scalars to Fraction so Q-only code stays fast."""
    if isinstance(x, Scalar) and x.is_constant():
        return x.constant_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return not x


def scalar_eval(s, k0: Rational) -> Fraction:
    """Substitute ``k = k0`` exactly."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    k0 = Fraction(k0)
    d = _peval(s.den, k0)
    if d == 0:
        raise PoleAtK(f"{s} has a pole at k={_fmt_rat(k0)}")
    return _peval(s.num, k0) / d


def _rational_roots(p: Poly) -> list[Fraction]:
    if not p:
        raise ValueError("zero polynomial has every root")
    p = list(p)
    roots = []
    while p and p[0] == 0:
        roots.append(_ZERO)
        p.pop(0)
    if len(p) <= 1:
        return sorted(set(roots))
    from math import lcm
    L = 1
    for c in p:
        L = lcm(L, c.denominator)
    ints = [int(c * L) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    poly = tuple(Fraction(c) for c in ints)
    for pnum in divisors(a0):
        for qden in divisors(an):
            for sgn in (1, -1):
                r = Fraction(sgn * pnum, qden)
                if _peval(poly, r) == 0:
                    roots.append(r)
    return sorted(set(roots))


# -- phases -------------------------------------------------------------------

class Phase:
    """``exp(2*pi*i*exponent)`` with a rational exponent reduced into [0, 1)."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: Rational = 0):
        e = Fraction(exponent)
        self.exponent = e - (e.numerator // e.denominator)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent - other.exponent)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.exponent * n)

    def inverse(self) -> "Phase":
        return Phase(-self.exponent)

    def order(self) -> int:
        return self.exponent.denominator

    def is_one(self) -> bool:
        return self.exponent == 0

    def __eq__(self, other):
        if isinstance(other, Phase):
            return self.exponent == other.exponent
        if other == 1:
            return self.exponent == 0
        if other == -1:
            return self.exponent == Fraction(1, 2)
        return NotImplemented

    def __hash__(self):
        return hash(("phase", self.exponent))

    def __repr__(self):
        return f"Phase({_fmt_rat(self.exponent)})"


def phase_mul(a: Phase, b: Phase) -> Phase:
    return a * b


# -- literal parsing ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(k)|(\*\*|[-+*/^()]))")


def parse_scalar(text: str):
    """Parse a scalar literal such as ``"k+2/5"``, ``"-1/15"`` or ``"(k+2)/5"``.

    The accepted language is arithmetic over integers and the symbol ``k``
    with ``+ - * / ^`` and parentheses.  Constants come back as
    :class:`Fraction`, anything mentioning ``k`` as :class:`Scalar`.
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"bad scalar literal {text!r} at {pos}")
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    toks = ["^" if t == "**" else t for t in toks]
    p = _ScalarParser(toks, text)
    val = p.expr()
    if p.i != len(toks):
        raise ScalarParseError(f"trailing input in scalar literal {text!r}")
    return coerce(val)


class _ScalarParser:
    def __init__(self, toks, text):
        self.toks = toks
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise ScalarParseError(f"unexpected end/token in {self.text!r}")
        self.i += 1
        return t

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        val = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            val = val * rhs if op == "*" else as_scalar(val) / rhs
        return val

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not e.isdigit():
                raise ScalarParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return as_scalar(base) ** int(e)
        return base

    def atom(self):
        t = self.take()
        if t.isdigit():
            return Scalar.const(int(t))
        if t == "k":
            return K
        if t == "(":
            v = self.expr()
            self.take(")")
            return v
        if t == "-":
            return -self.atom()
        raise ScalarParseError(f"unexpected token {t!r} in {self.text!r}")


def parse_rational(text) -> Fraction:
    v = parse_scalar(text) if isinstance(text, str) else Fraction(text)
    if not isinstance(v, Fraction):
        raise ScalarParseError(f"{text!r} is not a rational literal")
    return v


def format_scalar(x) -> str:
    if isinstance(x, Scalar):
        return str(x)
    return _fmt_rat(Fraction(x))
