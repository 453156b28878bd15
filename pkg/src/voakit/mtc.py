"""Finite ribbon data and the open Hopf link criterion for simple-current fixed points.

All categorical quantities (fusion, twists, S-entries, dimensions) are
input data.  Given a simple current ``J`` of order ``s`` on ``X``
(``J^s x X = X``) and a simple ``P``, one of two things must happen:
the S-entry ``S_{X,P}`` vanishes, or the balancing scalar

    dim(J)^s * theta(J^s x P) / (theta(J^s) theta(P))

equals 1.  :func:`hopf_criterion` evaluates both.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Mapping

from .exactmath import Phase, parse_rational

__all__ = [
    "RibbonDataError",
    "NotInvertible",
    "NotFixedPoint",
    "ExactValue",
    "parse_value",
    "RibbonData",
    "HopfResult",
    "simple_current_order",
    "hopf_criterion",
    "pointed_data",
    "abelian_groups",
    "load_ribbon_data",
]


class RibbonDataError(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class NotFixedPoint(ValueError):
    pass


def _squarefree(n: int) -> tuple[int, int]:
    """``n = a^2 * b`` with ``b`` squarefree; returns ``(a, b)``."""
    a, b, p = 1, n, 2
    while p * p <= b:
        while b % (p * p) == 0:
            b //= p * p
            a *= p
        p += 1
    return a, b


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            n //= p
        else:
            p += 1
    if n > 1:
        out.append(n)
    return out


def _sqrt_conductor(p: int) -> int:
    if p == 2:
        return 8
    return p if p % 4 == 1 else 4 * p


def _cmul(u: dict, v: dict, M: int) -> dict:
    out: dict = {}
    for a, x in u.items():
        for b, y in v.items():
            out[(a + b) % M] = out.get((a + b) % M, 0) + x * y
    return out


def _sqrt_prime(p: int, M: int) -> dict:
    """``sqrt(p)`` as a combination of powers of ``zeta_M``."""
    if p == 2:  # zeta_8 + zeta_8^-1
        return {M // 8: Fraction(1), (-M // 8) % M: Fraction(1)}
    # Gauss sum g = sum (a/p) zeta_p^a, g^2 = (-1)^((p-1)/2) p
    g = {}
    for a in range(1, p):
        g[(a * M // p) % M] = Fraction(1 if pow(a, (p - 1) // 2, p) == 1 else -1)
    if p % 4 == 1:
        return g
    return _cmul(g, {(3 * M // 4) % M: Fraction(1)}, M)  # -i g


@lru_cache(maxsize=None)
def _cyclotomic_poly(M: int) -> tuple:
    """Integer coefficients (low degree first) of the M-th cyclotomic polynomial."""
    num = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            num = _poly_div(num, list(_cyclotomic_poly(d)))
    return tuple(num)


def _poly_div(a: list, b: list) -> list:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1] if isinstance(a[0], Fraction) else a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    return q


def _poly_mod(a: list, b: tuple) -> list:
    a = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return a[:len(b) - 1]


class ExactValue:
    """Finite sums ``sum c * sqrt(n) * e(a)`` with ``e(a) = exp(2 pi i a)``.

    Terms are normalized (squarefree ``n``, ``a`` in ``[0, 1/2)`` with the
    sign folded into ``c``).  Zero tests are exact: every value lies in a
    cyclotomic field Q(zeta_M) (square roots via Gauss sums) and is reduced
    modulo the M-th cyclotomic polynomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict = {}
        for (n, a), c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if n <= 0:
                raise ValueError("radicand must be positive")
            r, n = _squarefree(n)
            c *= r
            a = Fraction(a) % 1
            if a >= Fraction(1, 2):
                a -= Fraction(1, 2)
                c = -c
            out[(n, a)] = out.get((n, a), 0) + c
        self.terms = {k: v for k, v in sorted(out.items()) if v}

    @classmethod
    def of(cls, x) -> "ExactValue":
        if isinstance(x, ExactValue):
            return x
        if isinstance(x, Phase):
            return cls({(1, x.exponent): 1})
        if isinstance(x, str):
            return parse_value(x)
        return cls({(1, Fraction(0)): Fraction(x)})

    def __add__(self, other):
        other = ExactValue.of(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return ExactValue(t)

    __radd__ = __add__

    def __neg__(self):
        return ExactValue({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-ExactValue.of(other))

    def __mul__(self, other):
        other = ExactValue.of(other)
        t: dict = {}
        for (n1, a1), c1 in self.terms.items():
            for (n2, a2), c2 in other.terms.items():
                # sqrt(n1) sqrt(n2) = sqrt(n1 n2); __init__ extracts squares
                key = (n1 * n2, a1 + a2)
                t[key] = t.get(key, 0) + c1 * c2
        return ExactValue(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ExactValue.of(1)
        for _ in range(e):
            out = out * self
        return out

    def inverse(self) -> "ExactValue":
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"cannot invert {self}")
        (n, a), c = next(iter(self.terms.items()))
        # 1/(c sqrt(n) e(a)) = sqrt(n)/(c n) e(-a)
        return ExactValue({(n, -a): 1 / (c * n)})

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        M = 1
        for (n, a) in self.terms:
            M = lcm(M, a.denominator, *(_sqrt_conductor(p) for p in _primes(n)))
        total = [Fraction(0)] * M
        for (n, a), c in self.terms.items():
            v = {int(a * M) % M: c}
            for p in _primes(n):
                v = _cmul(v, _sqrt_prime(p, M), M)
            for e, x in v.items():
                total[e] += x
        return not any(_poly_mod(total, _cyclotomic_poly(M)))

    def __complex__(self):
        return sum(complex(float(c) * math.sqrt(n)) * cmath.exp(2j * math.pi * float(a))
                   for (n, a), c in self.terms.items())

    def __eq__(self, other):
        try:
            other = ExactValue.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms or (self - other).is_zero()

    def __hash__(self):
        z = complex(self)
        return hash((round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (n, a), c in self.terms.items():
            s = str(c)
            if n != 1:
                s += f"*sqrt({n})"
            if a:
                s += f"*e({a})"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def parse_value(text: str) -> ExactValue:
    """Parse sums of products of rationals, ``sqrt(n)`` and ``e(a)``."""
    text = str(text).replace(" ", "")
    if not text:
        raise ValueError("empty value")
    pieces = re.findall(r"[+-]?[^+-]+", text.replace("(-", "(~"))
    total = ExactValue()
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-").replace("~", "-")
        val = ExactValue.of(sign)
        for m in re.finditer(r"([*/]?)(sqrt\((\d+)\)|e\(([-\d/]+)\)|[\d]+(?:/\d+)?)", body):
            op, tok = m.group(1), m.group(2)
            if m.group(3):
                f = ExactValue({(int(m.group(3)), 0): 1})
            elif m.group(4):
                f = ExactValue({(1, parse_rational(m.group(4))): 1})
            else:
                f = ExactValue.of(parse_rational(tok))
            val = val * (f.inverse() if op == "/" else f)
        consumed = "".join(m.group(0) for m in re.finditer(r"([*/]?)(sqrt\(\d+\)|e\([-\d/]+\)|\d+(?:/\d+)?)", body))
        if consumed != body:
            raise ValueError(f"cannot parse value {text!r}")
        total = total + val
    return total


@dataclass
class RibbonData:
    labels: list
    unit: object
    fusion: dict  # (i, j) -> {k: multiplicity}
    twists: dict  # label -> Phase
    S: dict = field(default_factory=dict)  # (i, j) -> ExactValue
    dims: dict = field(default_factory=dict)  # label -> ExactValue
    modified_dims: dict = field(default_factory=dict)
    traces: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.twists = {k: v if isinstance(v, Phase) else Phase(parse_rational(v)) for k, v in self.twists.items()}
        self.S = {k: ExactValue.of(v) for k, v in self.S.items()}
        self.dims = {k: ExactValue.of(v) for k, v in self.dims.items()}
        self.modified_dims = {k: ExactValue.of(v) for k, v in self.modified_dims.items()}
        self.validate()

    # -- checks --------------------------------------------------------------
    def validate(self) -> None:
        labels = set(self.labels)
        if self.unit not in labels:
            raise RibbonDataError(f"unit {self.unit!r} is not a label")
        for (i, j), prod in self.fusion.items():
            if i not in labels or j not in labels or set(prod) - labels:
                raise RibbonDataError(f"fusion entry {i} x {j} uses unknown labels")
            if any(int(m) != m or m < 0 for m in prod.values()):
                raise RibbonDataError(f"fusion multiplicities must be nonnegative integers: {i} x {j}")
        for (i, j), prod in self.fusion.items():
            nz = {k: v for k, v in prod.items() if v}
            if self.unit in (i, j) and nz != {j if i == self.unit else i: 1}:
                raise RibbonDataError(f"unit does not act trivially: {i} x {j} = {nz}")
            rev = self.fusion.get((j, i))
            if rev is not None and {k: v for k, v in rev.items() if v} != nz:
                raise RibbonDataError(f"fusion not commutative on {i}, {j}")
        for i, j in itertools.product(self.labels, repeat=2):
            if self.product(i, j) != self.product(j, i):
                raise RibbonDataError(f"fusion not commutative on {i}, {j}")
        for i, j, k in itertools.product(self.labels, repeat=3):
            if self.product_many(self.product(i, j), k) != self.product_many(self.product(j, k), i):
                raise RibbonDataError(f"fusion not associative on {i}, {j}, {k}")
        if set(self.twists) != labels:
            raise RibbonDataError("a twist is required for every label")
        if not self.twists[self.unit].is_one():
            raise RibbonDataError("the unit must have twist 1")
        for t, d in self.modified_dims.items():
            if t in self.traces and ExactValue.of(self.traces[t]) != d:
                raise RibbonDataError(f"modified dimension of {t} differs from t_{t}(id)")

    # -- fusion --------------------------------------------------------------
    def product(self, i, j) -> dict:
        if i == self.unit:
            return {j: 1}
        if j == self.unit:
            return {i: 1}
        p = self.fusion.get((i, j))
        if p is None:
            p = self.fusion.get((j, i), {})
        return {k: v for k, v in sorted(p.items(), key=lambda kv: str(kv[0])) if v}

    def product_many(self, x: Mapping, j) -> dict:
        out: dict = {}
        for i, m in x.items():
            for k, n in self.product(i, j).items():
                out[k] = out.get(k, 0) + m * n
        return {k: v for k, v in sorted(out.items(), key=lambda kv: str(kv[0])) if v}

    def simple_product(self, i, j):
        p = self.product(i, j)
        if len(p) != 1 or next(iter(p.values())) != 1:
            raise NotInvertible(f"{i} x {j} = {p} is not simple")
        return next(iter(p))

    def power(self, J, s: int):
        x = self.unit
        for _ in range(s):
            x = self.simple_product(x, J)
        return x

    def s_entry(self, i, j):
        v = self.S.get((i, j))
        if v is None:
            v = self.S.get((j, i))
        return v

    # -- JSON ----------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "labels": [str(x) for x in self.labels],
            "unit": str(self.unit),
            "fusion": [{"i": str(i), "j": str(j), "k": str(k), "mult": m}
                       for (i, j), p in sorted(self.fusion.items(), key=str) for k, m in p.items()],
            "twists": {str(k): str(v.exponent) for k, v in self.twists.items()},
            "S": {f"{i},{j}": str(v) for (i, j), v in self.S.items()},
            "dims": {str(k): str(v) for k, v in self.dims.items()},
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "RibbonData":
        try:
            labels = list(doc["labels"])
            fusion: dict = {}
            for e in doc.get("fusion", []):
                fusion.setdefault((e["i"], e["j"]), {})[e["k"]] = int(e.get("mult", 1))
            S = {tuple(key.split(",")): v for key, v in doc.get("S", {}).items()}
            return cls(labels, doc["unit"], fusion, dict(doc["twists"]), S, dict(doc.get("dims", {})),
                       dict(doc.get("modified_dims", {})), dict(doc.get("traces", {})), doc.get("name", ""))
        except KeyError as exc:
            raise RibbonDataError(f"missing field {exc}") from None


def load_ribbon_data(path) -> RibbonData:
    return RibbonData.from_dict(json.loads(Path(path).read_text()))


def simple_current_order(R: RibbonData, J):
    """Least ``s >= 1`` with ``J^s = unit``; ``"infinite"`` if no power returns."""
    inverse = [j for j in R.labels if R.product(J, j) == {R.unit: 1}]
    if not inverse:
        raise NotInvertible(f"{J} has no fusion inverse in the data")
    x = R.unit
    for s in range(1, len(R.labels) + 1):
        x = R.simple_product(x, J)
        if x == R.unit:
            return s
    return "infinite"


@dataclass
class HopfResult:
    case: str  # "case1_Szero" | "case2_theta_balanced" | "violation"
    scalar: ExactValue
    s_entry: ExactValue | None
    detail: str = ""


def hopf_criterion(R: RibbonData, J, X, s: int, P) -> HopfResult:
    """Decide which alternative of the Hopf link criterion holds."""
    Js = R.power(J, s)
    fixed = R.product(Js, X)
    if fixed != {X: 1}:
        raise NotFixedPoint(f"J^{s} x {X} = {fixed}")
    JsP = R.simple_product(Js, P)
    phase = R.twists[JsP] / (R.twists[Js] * R.twists[P])
    dimJ = R.dims.get(J)
    if dimJ is None:
        raise RibbonDataError(f"no dimension supplied for {J}")
    scalar = (dimJ ** s) * ExactValue.of(phase)
    sxp = R.s_entry(X, P)
    if scalar == 1:
        return HopfResult("case2_theta_balanced", scalar, sxp, f"dim(J)^s theta ratio = {scalar}")
    if sxp is not None and sxp.is_zero():
        return HopfResult("case1_Szero", scalar, sxp, f"S[{X},{P}] = 0")
    return HopfResult("violation", scalar, sxp,
                      f"scalar {scalar} != 1 and S[{X},{P}] = {sxp}: inconsistent data")


def abelian_groups(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor types ``(d1 | d2 | ...)`` of abelian groups of order ``<= max_order``."""
    out = []

    def rec(n, prev, acc):
        # remaining factors must be multiples of the previous one
        if n == 1:
            out.append(tuple(acc))
            return
        for d in range(2, n + 1):
            if n % d == 0 and (prev is None or d % prev == 0):
                rec(n // d, d, acc + [d])

    for n in range(1, max_order + 1):
        rec(n, None, [])
    return out


def pointed_data(invariants: tuple[int, ...], twists: Mapping | None = None) -> RibbonData:
    """Group-like data for ``Z/d1 x ... x Z/dr``: fusion is addition, dims are 1."""
    elems = list(itertools.product(*[range(d) for d in invariants]))
    unit = tuple(0 for _ in invariants)

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, invariants))

    fusion = {(a, b): {add(a, b): 1} for a in elems for b in elems}
    tw = {g: Phase(0) for g in elems}
    if twists:
        tw.update({g: Phase(parse_rational(v)) if not isinstance(v, Phase) else v for g, v in twists.items()})
    n = len(elems)
    S = {(a, b): Fraction(1, n) for a in elems for b in elems}
    return RibbonData(elems, unit, fusion, tw, S, {g: 1 for g in elems}, name=f"pointed{list(invariants)}")
