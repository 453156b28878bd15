"""Two-variable characters ``sum c(mu, Delta) z^mu q^Delta``.

Exponents are exact rationals, so the ``-c/24`` offsets live inside the
series.  A series carries a truncation order ``N``: every term with
``Delta <= N`` is present and correct.  ``order=None`` marks a series that
is exact as written (a finite sum).

Charge vectors have a fixed rank; rank-0 series are ``z``-independent and
broadcast against series of any rank when multiplied.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .exactmath import parse_rational

__all__ = [
    "NotFockDivisible",
    "BadParams",
    "TwoVariableSeries",
    "CharacterDatum",
    "DecompositionResult",
    "CriterionResult",
    "half_norm",
    "pairing",
    "partitions",
    "eta",
    "eta_inverse",
    "fock_character",
    "spectral_flow",
    "branching_extract",
    "verify_decomposition",
    "multfree_char_criterion",
    "multfree_weight_criterion",
    "standard_character",
    "virasoro_minimal_character",
    "ising_fermion_character",
    "affine_sl2_character",
    "affine_sl2_vacuum_bruteforce",
    "bc_character",
    "orbit_points",
    "singlet_weight",
]


class NotFockDivisible(ValueError):
    pass


class BadParams(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else parse_rational(x)


def _floor(x: Fraction) -> int:
    return math.floor(x)


Key = tuple  # (charge tuple, exponent)


class TwoVariableSeries:
    __slots__ = ("rank", "order", "terms")

    def __init__(self, terms: Mapping | None = None, order=None, rank: int = 0):
        self.rank = rank
        self.order = None if order is None else _q(order)
        clean: dict = {}
        for (mu, e), c in (terms or {}).items():
            mu = tuple(_q(x) for x in mu)
            e = _q(e)
            if len(mu) != rank:
                raise ValueError(f"charge {mu} does not have rank {rank}")
            if self.order is not None and e > self.order:
                continue
            if c:
                clean[(mu, e)] = clean.get((mu, e), 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    # -- construction --------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, order, rank: int) -> "TwoVariableSeries":
        s = cls.__new__(cls)
        s.rank, s.order = rank, order
        s.terms = {k: v for k, v in terms.items() if v and (order is None or k[1] <= order)}
        return s

    @classmethod
    def one(cls, rank: int = 0) -> "TwoVariableSeries":
        return cls._raw({((Fraction(0),) * rank, Fraction(0)): 1}, None, rank)

    @classmethod
    def zero(cls, rank: int = 0, order=None) -> "TwoVariableSeries":
        return cls._raw({}, None if order is None else _q(order), rank)

    @classmethod
    def monomial(cls, charge=(), exponent=0, coeff=1) -> "TwoVariableSeries":
        mu = tuple(_q(x) for x in charge)
        return cls._raw({(mu, _q(exponent)): coeff}, None, len(mu))

    @classmethod
    def from_q_list(cls, coeffs: Sequence, start=0, step=1, order=None, charge=()) -> "TwoVariableSeries":
        """``sum_i coeffs[i] z^charge q^(start + i*step)``."""
        start, step = _q(start), _q(step)
        mu = tuple(_q(x) for x in charge)
        terms = {(mu, start + i * step): c for i, c in enumerate(coeffs) if c}
        return cls._raw(terms, None if order is None else _q(order), len(mu))

    # -- inspection ----------------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def coefficient(self, charge=(), exponent=0):
        return self.terms.get((tuple(_q(x) for x in charge), _q(exponent)), 0)

    def charges(self) -> list[tuple]:
        return sorted({mu for mu, _ in self.terms})

    def exponents(self) -> list[Fraction]:
        return sorted({e for _, e in self.terms})

    def lowest_exponent(self):
        return min((e for _, e in self.terms), default=None)

    def slice(self, charge) -> "TwoVariableSeries":
        """Rank-0 series of the ``z^charge`` coefficient."""
        mu = tuple(_q(x) for x in charge)
        return TwoVariableSeries._raw({((), e): c for (m, e), c in self.terms.items() if m == mu},
                                      self.order, 0)

    def q_list(self, charge=(), start=None, step=1, count=None) -> list:
        """Coefficients at ``start, start+step, ...`` (up to the truncation)."""
        mu = tuple(_q(x) for x in charge)
        step = _q(step)
        if start is None:
            start = min((e for m, e in self.terms if m == mu), default=Fraction(0))
        start = _q(start)
        if count is None:
            if self.order is None:
                top = max((e for m, e in self.terms if m == mu), default=start)
            else:
                top = self.order
            count = max(0, _floor((top - start) / step) + 1)
        return [self.terms.get((mu, start + i * step), 0) for i in range(count)]

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, order) -> "TwoVariableSeries":
        order = _q(order)
        if self.order is not None and order > self.order:
            raise ValueError(f"cannot raise truncation from {self.order} to {order}")
        return TwoVariableSeries._raw(self.terms, order, self.rank)

    def with_order(self, order) -> "TwoVariableSeries":
        """Same terms, truncated at ``order`` (no completeness check)."""
        return TwoVariableSeries._raw(self.terms, None if order is None else _q(order), self.rank)

    # -- arithmetic ----------------------------------------------------------
    def _min_order(self, other):
        if self.order is None:
            return other.order
        if other.order is None:
            return self.order
        return min(self.order, other.order)

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def __add__(self, other):
        if not isinstance(other, TwoVariableSeries):
            return NotImplemented
        self._check_rank(other)
        order = self._min_order(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TwoVariableSeries._raw(out, order, self.rank)

    def __neg__(self):
        return TwoVariableSeries._raw({k: -v for k, v in self.terms.items()}, self.order, self.rank)

    def __sub__(self, other):
        if not isinstance(other, TwoVariableSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TwoVariableSeries":
        return TwoVariableSeries._raw({k: v * c for k, v in self.terms.items()}, self.order, self.rank)

    def shift(self, charge=None, exponent=0) -> "TwoVariableSeries":
        """Multiply by ``z^charge q^exponent``."""
        e0 = _q(exponent)
        mu0 = tuple(_q(x) for x in charge) if charge is not None else (Fraction(0),) * self.rank
        if len(mu0) != self.rank:
            raise ValueError("charge rank mismatch")
        out = {(tuple(a + b for a, b in zip(mu, mu0)), e + e0): c for (mu, e), c in self.terms.items()}
        return TwoVariableSeries._raw(out, None if self.order is None else self.order + e0, self.rank)

    def _strands(self) -> dict:
        """Group terms into dense runs: (charge, exponent mod 1) -> (base, coeff list)."""
        groups: dict = {}
        for (mu, e), c in self.terms.items():
            frac = e - _floor(e)
            groups.setdefault((mu, frac), []).append((e, c))
        out = {}
        for key, items in groups.items():
            base = min(e for e, _ in items)
            dense = [0] * (int(max(e for e, _ in items) - base) + 1)
            for e, c in items:
                dense[int(e - base)] = c
            out[key] = (base, dense)
        return out

    def __mul__(self, other):
        if not isinstance(other, TwoVariableSeries):
            return self.scale(other)
        if self.rank and other.rank:
            self._check_rank(other)
        rank = max(self.rank, other.rank)
        la, lb = self.lowest_exponent(), other.lowest_exponent()
        if la is None or lb is None:
            # a truncated zero times b is zero up to its order + lowest(b)
            bounds = []
            if la is None and self.order is not None:
                bounds.append(self.order + (lb if lb is not None else 0))
            if lb is None and other.order is not None:
                bounds.append(other.order + (la if la is not None else 0))
            return TwoVariableSeries.zero(rank, max(bounds) if bounds else None)
        # a complete to Na times b with lowest lb is complete to Na + lb
        cands = []
        if self.order is not None:
            cands.append(self.order + lb)
        if other.order is not None:
            cands.append(other.order + la)
        order = min(cands) if cands else None
        sa, sb = self._strands(), other._strands()
        out: dict = {}
        for (mua, fa), (ba, da) in sa.items():
            for (mub, fb), (bb, db) in sb.items():
                base = ba + bb
                if order is None:
                    n = len(da) + len(db) - 1
                else:
                    if base > order:
                        continue
                    n = min(len(da) + len(db) - 1, _floor(order - base) + 1)
                if self.rank and other.rank:
                    mu = tuple(x + y for x, y in zip(mua, mub))
                else:
                    mu = mua if self.rank else mub
                prod = kernels.conv_trunc(da, db, n)
                for i, c in enumerate(prod):
                    if c:
                        key = (mu, base + i)
                        out[key] = out.get(key, 0) + c
        return TwoVariableSeries._raw(out, order, rank)

    __rmul__ = scale

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = TwoVariableSeries.one(self.rank)
        for _ in range(e):
            out = out * self
        return out

    def agrees(self, other: "TwoVariableSeries", order=None) -> bool:
        return self.difference(other, order).is_zero()

    def difference(self, other: "TwoVariableSeries", order=None) -> "TwoVariableSeries":
        """``self - other`` restricted to exponents ``<= order``."""
        d = self - other
        if order is None:
            return d
        order = _q(order)
        return TwoVariableSeries._raw({k: v for k, v in d.terms.items() if k[1] <= order}, order, d.rank)

    def __eq__(self, other):
        if not isinstance(other, TwoVariableSeries):
            return NotImplemented
        return self.rank == other.rank and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, self.order, frozenset(self.terms.items())))

    def __repr__(self):
        head = " + ".join(f"{c}*z^{list(map(str, mu))}*q^{e}" for (mu, e), c in list(self)[:6])
        more = "" if len(self.terms) <= 6 else " + ..."
        return f"TwoVariableSeries(rank={self.rank}, order={self.order}: {head or '0'}{more})"

    # -- JSON ----------------------------------------------------------------
    def to_dict(self, label: str = "") -> dict:
        return {
            "label": label,
            "rank": self.rank,
            "truncation": None if self.order is None else str(self.order),
            "terms": [{"charge": [str(x) for x in mu], "exponent": str(e), "coeff": _jsonable(c)}
                      for (mu, e), c in self],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "TwoVariableSeries":
        rank = int(doc["rank"])
        order = doc.get("truncation")
        order = None if order is None else _q(order)
        terms = {}
        for t in doc["terms"]:
            c = t["coeff"]
            c = c if isinstance(c, int) else _q(c)
            key = (tuple(_q(x) for x in t["charge"]), _q(t["exponent"]))
            terms[key] = terms.get(key, 0) + c
        return cls(terms, order, rank)


def _jsonable(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return str(c)


@dataclass
class CharacterDatum:
    label: str
    series: TwoVariableSeries
    weight_form: list | None = None
    provenance: str = ""

    def to_dict(self) -> dict:
        d = self.series.to_dict(self.label)
        if self.weight_form is not None:
            d["weight_form"] = [[str(x) for x in row] for row in self.weight_form]
        d["provenance"] = self.provenance
        return d


# -- weight forms --------------------------------------------------------------

def _form(weight_form) -> list[list[Fraction]]:
    if isinstance(weight_form, (int, Fraction, str)):
        return [[_q(weight_form)]]
    return [[_q(x) for x in row] for row in weight_form]


def _vec(v) -> tuple:
    if isinstance(v, (int, Fraction, str)):
        return (_q(v),)
    return tuple(_q(x) for x in v)


def pairing(weight_form, u, v) -> Fraction:
    W = _form(weight_form)
    u, v = _vec(u), _vec(v)
    return sum((u[i] * W[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), Fraction(0))


def half_norm(weight_form, v) -> Fraction:
    """``Q(v) = <v, v>/2``: the conformal weight of the Fock top state."""
    return pairing(weight_form, v, v) / 2


# -- eta and Fock characters ---------------------------------------------------

def partitions(n: int) -> list[int]:
    return kernels.partition_counts(n)


def eta_inverse(N=20, power: int = 1) -> TwoVariableSeries:
    """``eta(q)^(-power) = q^(-power/24) prod (1 - q^n)^(-power)`` to order ``N``."""
    N = _q(N)
    off = Fraction(-power, 24)
    count = _floor(N - off) + 1
    if count <= 0:
        return TwoVariableSeries.zero(0, N)
    base = partitions(count - 1)
    coeffs = base if power == 1 else kernels.poly_pow_trunc(base, power, count)
    return TwoVariableSeries.from_q_list(coeffs, off, 1, N)


def eta(N=20, power: int = 1) -> TwoVariableSeries:
    """``eta(q)^power`` via Euler's pentagonal series."""
    N = _q(N)
    off = Fraction(power, 24)
    count = _floor(N - off) + 1
    if count <= 0:
        return TwoVariableSeries.zero(0, N)
    base = [0] * count
    k = 0
    while True:
        done = True
        for kk in ((k,) if k == 0 else (k, -k)):
            g = kk * (3 * kk - 1) // 2
            if g < count:
                base[g] += -1 if kk % 2 else 1
                done = False
        if done and k > 0:
            break
        k += 1
    coeffs = base if power == 1 else kernels.poly_pow_trunc(base, power, count)
    return TwoVariableSeries.from_q_list(coeffs, off, 1, N)


def fock_character(weight_form, lam, N=20) -> TwoVariableSeries:
    """``z^lam q^Q(lam) / eta(q)^rank``."""
    lam = _vec(lam)
    Q = half_norm(weight_form, lam)
    rank = len(lam)
    N = _q(N)
    base = eta_inverse(N - Q, rank)
    return TwoVariableSeries._raw({(lam, e + Q): c for (_, e), c in base.terms.items()}, N, rank)


# -- spectral flow and branching -----------------------------------------------

def spectral_flow(ch: TwoVariableSeries, ell: int, k, N=None) -> TwoVariableSeries:
    """``sigma^ell``: ``z^(ell k) q^(ell^2 k/4) ch(z q^(ell/2); q)``.

    The map sends ``z^mu q^D`` to ``z^(mu + ell k) q^(D + ell^2 k/4 + ell mu/2)``
    termwise.  Without ``N`` every image term is kept and the truncation
    label of ``ch`` is carried over; with ``N`` the image is cut at ``N``.
    The caller must supply ``ch`` to a high enough order for the preimages
    of all exponents ``<= N`` (see :func:`flow_source_order`).
    """
    if ch.rank != 1:
        raise ValueError("spectral flow needs a single z-variable")
    k = _q(k)
    ell = int(ell)
    if ell == 0:
        return ch if N is None else ch.truncate(N) if ch.order is None or _q(N) <= ch.order else ch
    out = {}
    for (mu, e), c in ch.terms.items():
        m = mu[0]
        key = ((m + ell * k,), e + Fraction(ell * ell) * k / 4 + Fraction(ell) * m / 2)
        out[key] = c
    return TwoVariableSeries._raw(out, ch.order if N is None else _q(N), 1)


def flow_source_order(ch_charges_bound, ell: int, k, N) -> Fraction:
    """Source truncation that determines the ``sigma^ell`` image up to ``N``
    on charges ``|mu| <= ch_charges_bound``."""
    k, N = _q(k), _q(N)
    return N - Fraction(ell * ell) * k / 4 + abs(Fraction(ell)) * _q(ch_charges_bound) / 2


def branching_extract(ch: TwoVariableSeries, weight_form, mu, N=20) -> TwoVariableSeries:
    """``ch D_mu = [z^mu] ch M * eta^rank * q^(-Q(mu))``.

    Raises :class:`NotFockDivisible` when the result is not a character,
    i.e. has a negative or non-integral coefficient.
    """
    mu = _vec(mu)
    if len(mu) != ch.rank:
        raise ValueError("charge rank mismatch")
    Q = half_norm(weight_form, mu)
    sl = ch.slice(mu)
    N = _q(N)
    if ch.order is not None and ch.order - Q < N:
        raise ValueError(f"character truncated at {ch.order}; need {N + Q}")
    low = sl.lowest_exponent()
    if low is None:
        return TwoVariableSeries.zero(0, N)
    e = eta(N + Q - low + 1, ch.rank)
    res = (sl * e).shift((), -Q)
    res = res.truncate(min(N, res.order)) if res.order is not None else res
    for (m, x), c in res.terms.items():
        assert m == ()
        if not (isinstance(c, int) or getattr(c, "denominator", 1) == 1) or c < 0:
            raise NotFockDivisible(f"coefficient {c} at q^{x} in the charge-{list(map(str, mu))} branching")
    return res


# -- decompositions and criteria -----------------------------------------------

@dataclass
class DecompositionResult:
    ok: bool
    residual: TwoVariableSeries
    order: Fraction
    first_residual: Fraction | None = None

    def __bool__(self):
        return self.ok


def verify_decomposition(ch: TwoVariableSeries, pairs: Iterable, N=20) -> DecompositionResult:
    """Check ``ch M = sum ch F * ch C`` up to ``q^N``.

    ``pairs`` holds ``(fock, coset)`` where ``fock`` is a series or a
    ``(weight_form, lam)`` pair and ``coset`` a rank-0 series.
    """
    N = _q(N)
    if ch.order is not None and ch.order < N:
        raise ValueError(f"character truncated at {ch.order} < {N}")
    total = TwoVariableSeries.zero(ch.rank, None)
    for fock, coset in pairs:
        if not isinstance(fock, TwoVariableSeries):
            wf, lam = fock
            low = coset.lowest_exponent()
            if low is None:
                continue
            fock = fock_character(wf, lam, N - low)
        term = fock * coset
        if term.order is not None and term.order < N:
            raise ValueError(f"summand only determined to q^{term.order} < {N}")
        total = total + term.with_order(None)
    res = ch.difference(total.with_order(None), N)
    first = res.lowest_exponent()
    return DecompositionResult(res.is_zero(), res, N, first)


@dataclass
class CriterionResult:
    holds: bool
    order: Fraction
    failure: tuple | None = None  # (charge, exponent, lhs, rhs)
    unverified_charges: list = field(default_factory=list)
    truncation_relative: bool = True

    def __bool__(self):
        return self.holds

    @property
    def verdict(self) -> str:
        if self.holds:
            return f"holds (to q^{self.order})"
        return f"fails at q^{self.failure[1]}"


def multfree_char_criterion(ch: TwoVariableSeries, weight_form, lam, N=20) -> CriterionResult:
    """Test ``ch M(z;q) = z^lam q^Q(lam) ch M(z q^<lam,.>; q)`` up to ``q^N``.

    Only charges whose preimage exponents lie inside the truncation of
    ``ch`` are compared; the others are listed as unverified.
    """
    lam = _vec(lam)
    N = _q(N)
    Q = half_norm(weight_form, lam)
    image = {}
    for (mu, e), c in ch.terms.items():
        key = (tuple(a + b for a, b in zip(mu, lam)), e + pairing(weight_form, lam, mu) + Q)
        image[key] = c
    charges = {mu for mu, e in ch.terms if e <= N} | {mu for mu, e in image if e <= N}
    unverified, failure = [], None
    for nu in sorted(charges):
        pre = tuple(a - b for a, b in zip(nu, lam))
        need = N - pairing(weight_form, lam, pre) - Q
        if ch.order is not None and need > ch.order:
            unverified.append(nu)
            continue
        exps = sorted({e for m, e in ch.terms if m == nu and e <= N}
                      | {e for m, e in image if m == nu and e <= N})
        for e in exps:
            a, b = ch.terms.get((nu, e), 0), image.get((nu, e), 0)
            if a != b and (failure is None or e < failure[1]):
                failure = (nu, e, a, b)
                break
    return CriterionResult(failure is None, N, failure, unverified)


def multfree_weight_criterion(weight_form, mu, lam, bounded_below: bool = True) -> str:
    """``guaranteed`` when ``Q(mu + n lam)`` is unbounded below in ``n``.

    The Fock weights along an orbit then contradict a module whose
    conformal weights are bounded below, so no two weights in the orbit
    can share a coset module.
    """
    lam = _vec(lam)
    if all(x == 0 for x in lam):
        raise ValueError("lam must be nonzero")
    _vec(mu)
    return "guaranteed" if bounded_below and half_norm(weight_form, lam) < 0 else "inconclusive"


def singlet_weight(lam) -> Fraction:
    """Lowest weight ``|lam|(3|lam| + 8)/16`` of the singlet coset modules at k = -4/3."""
    a = abs(_q(lam))
    return a * (3 * a + 8) / 16


def orbit_points(weight_form, rep, period, N, offset=0) -> list[tuple]:
    """Points ``rep + n period`` (rank 1) whose Fock weight plus ``offset`` is ``<= N``.

    The weight form must be positive on ``period``.
    """
    rep, period = _vec(rep), _vec(period)
    if half_norm(weight_form, period) <= 0:
        raise ValueError("orbit enumeration needs a positive direction")
    N, offset = _q(N), _q(offset)
    pts = []
    for sgn in (1, -1):
        n = 0 if sgn == 1 else -1
        misses = 0
        while misses < 3:
            v = tuple(r + n * p for r, p in zip(rep, period))
            if half_norm(weight_form, v) + offset <= N:
                pts.append(v)
                misses = 0
            else:
                misses += 1
            n += sgn
    return sorted(pts)


# -- standard characters -------------------------------------------------------

def virasoro_minimal_character(p: int, pp: int, r: int, s: int, N=20) -> TwoVariableSeries:
    """Rocha-Caridi character of the (p, p') minimal model module ``(r, s)``.

    ``chi = eta^-1 sum_j (q^((2pp'j + p'r - ps)^2/4pp') - q^((2pp'j + p'r + ps)^2/4pp'))``.
    """
    if math.gcd(p, pp) != 1 or min(p, pp) < 2 or not (1 <= r < p and 1 <= s < pp):
        raise BadParams(f"no minimal-model module ({p},{pp}) r={r} s={s}")
    N = _q(N)
    den = 4 * p * pp
    top = N + Fraction(1, 24)
    num: dict = {}
    j = 0
    while True:
        hit = False
        for jj in ((j,) if j == 0 else (j, -j)):
            for sign, a in ((1, pp * r - p * s), (-1, pp * r + p * s)):
                e = Fraction((2 * p * pp * jj + a) ** 2, den)
                if e <= top:
                    num[((), e)] = num.get(((), e), 0) + sign
                    hit = True
        if not hit and j > 0:
            break
        j += 1
    theta = TwoVariableSeries._raw(num, top, 0)
    return (theta * eta_inverse(N - min(e for _, e in num) if num else N)).truncate(N)


_ISING = {"0": (1, 1), "1/2": (1, 3), "1/16": (1, 2)}


def ising_fermion_character(h, N=20) -> TwoVariableSeries:
    """Ising characters from the free-fermion products (an independent oracle).

    ``K0 +- K1/2 = q^(-1/48) prod (1 +- q^(n-1/2))`` and
    ``K1/16 = q^(1/24) prod_{n>=1} (1 + q^n)``.
    """
    h = _q(h)
    N = _q(N)
    if h == Fraction(1, 16):
        off = Fraction(1, 16) - Fraction(1, 48)
        cnt = max(0, _floor(N - off) + 1)
        poly = [1] + [0] * max(0, cnt - 1)
        for n in range(1, cnt):
            poly = [poly[i] + (poly[i - n] if i >= n else 0) for i in range(cnt)]
        return TwoVariableSeries.from_q_list(poly[:cnt], off, 1, N)
    if h not in (0, Fraction(1, 2)):
        raise BadParams(f"no Ising module of weight {h}")
    off = Fraction(-1, 48)
    cnt = max(0, _floor(2 * (N - off)) + 1)  # steps of q^(1/2)
    plus, minus = [1] + [0] * (cnt - 1), [1] + [0] * (cnt - 1)
    for t in range(1, cnt, 2):  # factor (1 +- q^(t/2)) for odd t
        plus = [plus[i] + (plus[i - t] if i >= t else 0) for i in range(cnt)]
        minus = [minus[i] - (minus[i - t] if i >= t else 0) for i in range(cnt)]
    sign = 1 if h == 0 else -1
    coeffs = [Fraction(a + sign * b, 2) for a, b in zip(plus, minus)]
    coeffs = [int(c) for c in coeffs]
    return TwoVariableSeries.from_q_list(coeffs, off, Fraction(1, 2), N)


def _divide_z_minus_zinv(poly: dict) -> dict:
    """Exact division of a Laurent polynomial by ``z - z^-1``."""
    if not poly:
        return {}
    p = dict(poly)
    top, bot = max(p), min(p)
    q: dict = {}
    for m in range(top, bot + 1, -1):
        c = p.get(m, 0)
        if c:
            q[m - 1] = q.get(m - 1, 0) + c
            p[m - 2] = p.get(m - 2, 0) + c
            p[m] = 0
    if any(v for v in p.values()):
        raise ArithmeticError("numerator not divisible by the Weyl denominator")
    return {k: v for k, v in q.items() if v}


def affine_sl2_character(k: int, omega: int, N=20) -> TwoVariableSeries:
    """Weyl-Kac character of the integrable sl2 module of level ``k``.

    ``z`` records the sl2 weight (``X`` has charge 2), and the exponent of
    ``q`` is ``L0 - c/24`` with ``c = 3k/(k+2)``.  Computed as
    ``(Theta_{omega+1,k+2} - Theta_{-omega-1,k+2})`` divided by the product
    form ``z q^(1/8) (1 - z^-2) prod (1-q^n)(1-z^2 q^n)(1-z^-2 q^n)`` of
    the denominator.
    """
    if int(k) != k or k < 1 or int(omega) != omega or not 0 <= omega <= k:
        raise BadParams(f"need integer level k >= 1 and 0 <= omega <= k, got k={k}, omega={omega}")
    k, omega = int(k), int(omega)
    K = k + 2
    N = _q(N)
    h = Fraction(omega * (omega + 2), 4 * K)
    lead = h - Fraction(k, 8 * K)  # h - c/24
    depth = _floor(N - lead)  # integer q-steps above the top state
    if depth < 0:
        return TwoVariableSeries.zero(1, N)
    m = omega + 1
    # numerator grouped by integer q-offset from (omega+1)^2/4K
    e0 = Fraction(m * m, 4 * K)
    num: dict = {}
    j = 0
    while True:
        hit = False
        for jj in ((j,) if j == 0 else (j, -j)):
            for sign, mm in ((1, m), (-1, -m)):
                e = K * (jj + Fraction(mm, 2 * K)) ** 2 - e0
                if e <= depth:
                    d = int(e)
                    zz = 2 * K * jj + mm
                    num.setdefault(d, {})
                    num[d][zz] = num[d].get(zz, 0) + sign
                    hit = True
        if not hit and j > 0:
            break
        j += 1
    # A[d][z]: numerator / (z - z^-1)
    span = 2 * depth + 2 + m + 2 * K * (depth + 2)
    A = [[0] * (2 * span + 1) for _ in range(depth + 1)]
    for d, poly in num.items():
        for zz, c in _divide_z_minus_zinv(poly).items():
            A[d][zz + span] += c
    # divide by prod (1-q^n)(1-z^2 q^n)(1-z^-2 q^n) with in-place sweeps
    for n in range(1, depth + 1):
        for d in range(n, depth + 1):
            rowp, row = A[d - n], A[d]
            for z in range(2 * span + 1):
                row[z] += rowp[z]
        for d in range(n, depth + 1):
            rowp, row = A[d - n], A[d]
            for z in range(2, 2 * span + 1):
                row[z] += rowp[z - 2]
        for d in range(n, depth + 1):
            rowp, row = A[d - n], A[d]
            for z in range(2 * span - 2, -1, -1):
                row[z] += rowp[z + 2]
    terms = {}
    for d in range(depth + 1):
        for zi, c in enumerate(A[d]):
            if c:
                terms[((Fraction(zi - span),), lead + d)] = c
    return TwoVariableSeries._raw(terms, N, 1)


def affine_sl2_vacuum_bruteforce(k: int, max_weight: int) -> dict:
    """Graded dimensions ``{(weight, charge): dim}`` of ``L_k(sl2)``.

    The universal vacuum module is spanned by canonical PBW monomials.  A
    vector lies in the maximal proper submodule iff no word in positive
    modes carries it back to the vacuum, so each graded dimension is the
    rank of the matrix (positive-mode word) x (monomial) -> vacuum
    coefficient.  The matrices are built weight by weight from single
    mode actions supplied by the engine.
    """
    from .presets import AffineSl2, build

    ctx = build(AffineSl2(k=Fraction(k)))
    gens = range(len(ctx.generators))
    charge = {ctx.index["H"]: 0, ctx.index["X"]: 2, ctx.index["Y"]: -2}

    def monomials(w):
        factors = sorted(((g, d) for g in gens for d in range(w)), key=lambda f: (f[0], -f[1]))
        out = []

        def rec(start, left, acc):
            if left == 0:
                out.append(tuple(acc))
                return
            for i in range(start, len(factors)):
                g, d = factors[i]
                if d + 1 <= left:
                    rec(i, left - d - 1, acc + [(g, d)])
        rec(0, w, [])
        return out

    # phi[w][mono] = {word: vacuum coefficient}
    phi = {0: {(): {(): Fraction(1)}}}
    dims = {(0, Fraction(0)): 1}
    for w in range(1, max_weight + 1):
        phi[w] = {}
        for mono in monomials(w):
            row: dict = {}
            for g in gens:
                for n in range(1, w + 1):
                    img = ctx._gen_mode(g, n, mono)
                    for m2, c in img.items():
                        for word, v in phi[w - n].get(m2, {}).items():
                            key = word + ((g, n),)
                            row[key] = row.get(key, 0) + c * v
            phi[w][mono] = {kk: vv for kk, vv in row.items() if vv}
        by_charge: dict = {}
        for mono, row in phi[w].items():
            ch = Fraction(sum(charge[g] for g, _ in mono))
            by_charge.setdefault(ch, []).append(row)
        for ch, rows in sorted(by_charge.items()):
            dims[(w, ch)] = _rank(rows)
    return {key: v for key, v in dims.items() if v}


def _rank(rows: list[dict]) -> int:
    """Rank of sparse rational rows (Gaussian elimination)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        while r:
            col = min(r)
            if col in pivots:
                prow = pivots[col]
                f = r[col] / prow[col]
                for kk, vv in prow.items():
                    nv = r.get(kk, 0) - f * vv
                    if nv:
                        r[kk] = nv
                    else:
                        r.pop(kk, None)
            else:
                pivots[col] = r
                rank += 1
                break
    return rank


def bc_character(N=20) -> TwoVariableSeries:
    """``q^(-1/24) prod_{n>=1} (1 + z q^(n-1/2))(1 + z^-1 q^(n-1/2))`` (ordinary trace)."""
    N = _q(N)
    off = Fraction(-1, 24)
    half = Fraction(1, 2)
    out = TwoVariableSeries.monomial((0,), off).with_order(N)
    n = 1
    while n - half + off <= N:
        for s in (1, -1):
            f = TwoVariableSeries._raw({((Fraction(0),), Fraction(0)): 1,
                                        ((Fraction(s),), n - half): 1}, None, 1)
            out = out * f
        n += 1
    return out.with_order(N)


def standard_character(kind: str, params: Mapping | None = None, N=20) -> CharacterDatum:
    """Reference characters: ``ising`` (``h``), ``virasoro`` (``p, pp, r, s``),
    ``affine_sl2`` (``k, omega``), ``partition`` and ``bc``."""
    params = dict(params or {})
    if kind == "ising":
        h = str(_q(params.get("h", 0)))
        if h not in _ISING:
            raise BadParams(f"Ising weight must be one of {sorted(_ISING)}, got {h}")
        r, s = _ISING[h]
        ser = virasoro_minimal_character(3, 4, r, s, N)
        return CharacterDatum(f"K_{h}", ser, None, "Rocha-Caridi, (p,p')=(3,4)")
    if kind == "virasoro":
        try:
            p, pp, r, s = (int(params[x]) for x in ("p", "pp", "r", "s"))
        except KeyError as exc:
            raise BadParams(f"missing parameter {exc}") from None
        ser = virasoro_minimal_character(p, pp, r, s, N)
        return CharacterDatum(f"M({p},{pp})_{r},{s}", ser, None, "Rocha-Caridi")
    if kind == "affine_sl2":
        try:
            k, om = params["k"], params.get("omega", 0)
        except KeyError:
            raise BadParams("affine_sl2 needs k") from None
        ser = affine_sl2_character(_q(k), _q(om), N)
        return CharacterDatum(f"L_{k}(sl2)[omega={om}]", ser, [[Fraction(1, 2) / _q(k)]],
                              "Weyl-Kac, product form of the denominator")
    if kind == "partition":
        return CharacterDatum("1/eta", eta_inverse(N), None, "Euler pentagonal recurrence")
    if kind == "bc":
        return CharacterDatum("E(1)", bc_character(N), [[Fraction(1)]], "fermionic product")
    raise BadParams(f"unknown character kind {kind!r}")
