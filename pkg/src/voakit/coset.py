"""Heisenberg commutants, identity checks and C1 zero-mode computations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (
    NotHomogeneous,
    State,
    VoaContext,
    charge_of,
    derivative,
    generator_charges,
    nth_product,
    weight_of,
)
from .exactmath import Scalar, coerce
from .expr import format_monomial

__all__ = [
    "NotVirasoro",
    "ResidualNotMonomial",
    "CheckResult",
    "ChargeGradedState",
    "C1Report",
    "charge_decompose",
    "commutant_test",
    "verify_identity",
    "virasoro_check",
    "primary_check",
    "c1_reduce",
    "c1_leading_coefficient",
]


class NotVirasoro(ValueError):
    pass


class ResidualNotMonomial(ValueError):
    pass


@dataclass
class CheckResult:
    ok: bool
    witness: object = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


@dataclass
class ChargeGradedState:
    state: State
    components: dict  # charge vector -> State

    def total(self) -> State:
        acc = self.state.ctx.zero()
        for s in self.components.values():
            acc = acc + s
        return acc


def charge_decompose(ctx: VoaContext, a: State, labels=None) -> ChargeGradedState:
    """Split ``a`` into eigencomponents of the designated Heisenberg zero modes."""
    labels = list(labels or ctx.heisenberg)
    tables = [generator_charges(ctx, lbl) for lbl in labels]
    parts: dict = {}
    for m, c in a.terms.items():
        key = tuple(sum((t[g] for g, _ in m), Fraction(0)) for t in tables)
        parts.setdefault(key, {})[m] = c
    comps = {k: State(ctx, v) for k, v in sorted(parts.items())}
    return ChargeGradedState(a, comps)


def commutant_test(ctx: VoaContext, a: State) -> CheckResult:
    """``h_(n) a = 0`` for every designated ``h`` and ``0 <= n <= wt(a) + 1``."""
    if not ctx.heisenberg:
        raise ValueError("context has no designated Heisenberg states")
    if not a:
        return CheckResult(True)
    try:
        top = int(max(ctx.mono_weight(m) for m in a.terms)) + 1
    except ValueError:
        top = 1
    seen = set()
    for label, h in ctx.heisenberg.items():
        if h in seen:
            continue
        seen.add(h)
        for n in range(0, top + 1):
            r = nth_product(ctx, h, a, n)
            if r:
                return CheckResult(False, r, {"label": label, "n": n})
    return CheckResult(True)


def verify_identity(ctx: VoaContext, lhs: State, rhs: State) -> CheckResult:
    diff = lhs - rhs
    return CheckResult(diff.is_zero(), None if diff.is_zero() else diff, {"difference": str(diff)})


@dataclass
class VirasoroResult:
    is_virasoro: bool
    central_charge: object = None
    normalization: Fraction | None = None
    failure: str = ""

    def __bool__(self):
        return self.is_virasoro


def virasoro_check(ctx: VoaContext, L: State, *, normalize: bool = True) -> VirasoroResult:
    """Check the Virasoro OPE of ``L`` and return its central charge.

    With ``normalize=True`` a field with ``L_(1)L = s L`` for a nonzero
    scalar ``s`` is first rescaled to ``T = (2/s) L``; the reported central
    charge is that of ``T`` and ``normalization`` records ``2/s``.
    Raises :class:`NotVirasoro` when ``L`` is not homogeneous of weight 2.
    """
    try:
        w = weight_of(ctx, L)
    except NotHomogeneous as exc:
        raise NotVirasoro(f"not homogeneous: {exc}") from None
    if w != 2:
        raise NotVirasoro(f"weight {w} != 2")
    scale = Fraction(1)
    if normalize:
        p1 = nth_product(ctx, L, L, 1)
        s = None
        for m, c in L.terms.items():
            s = p1.coefficient(m) / c
            break
        if not s or p1 != L * s:
            return VirasoroResult(False, failure=f"L_(1)L = {p1} is not a multiple of L")
        scale = coerce(2 / s)
    T = L * scale
    p3 = nth_product(ctx, T, T, 3)
    if any(m for m in p3.terms):
        return VirasoroResult(False, failure=f"L_(3)L = {p3} is not a multiple of the vacuum")
    c = coerce(2 * p3.coefficient(()))
    checks = [(2, ctx.zero()), (1, T * 2), (0, derivative(ctx, T))]
    for n, want in checks:
        got = nth_product(ctx, T, T, n)
        if got != want:
            return VirasoroResult(False, failure=f"L_({n})L = {got}, expected {want}")
    for n in range(4, 6):
        got = nth_product(ctx, T, T, n)
        if got:
            return VirasoroResult(False, failure=f"L_({n})L = {got} != 0")
    return VirasoroResult(True, c, scale)


@dataclass
class PrimaryResult:
    is_primary: bool
    weight: Fraction | None = None
    failure: str = ""

    def __bool__(self):
        return self.is_primary


def primary_check(ctx: VoaContext, L: State, a: State, *, normalization=1) -> PrimaryResult:
    """``L_(1)a = Delta a`` and ``L_(n)a = 0`` for ``2 <= n <= wt(L) + wt(a)``.

    ``normalization`` rescales ``L`` first (see :func:`virasoro_check`).
    """
    T = L * normalization
    p1 = nth_product(ctx, T, a, 1)
    delta = None
    for m, c in a.terms.items():
        delta = p1.coefficient(m) / c
        break
    if delta is None:
        return PrimaryResult(False, failure="zero state")
    if p1 != a * delta:
        return PrimaryResult(False, failure=f"L_(1)a = {p1} is not a multiple of a")
    if p1.is_zero():
        delta = Fraction(0)
    top = int(weight_of(ctx, T) + weight_of(ctx, a))
    for n in range(2, top + 1):
        r = nth_product(ctx, T, a, n)
        if r:
            return PrimaryResult(False, coerce(delta), failure=f"L_({n})a = {r}")
    return PrimaryResult(True, coerce(delta))


@dataclass
class C1Report:
    label: str
    residual_monomial: tuple | None
    coefficient: object
    residual: State
    discarded: State
    certificate: list = field(default_factory=list)

    def residual_text(self) -> str:
        if self.residual_monomial is None:
            return "0"
        return format_monomial(self.residual.ctx, self.residual_monomial)


def c1_reduce(ctx: VoaContext, a: State, charge_sector=None, *, label: str = "h",
              target: str | None = None) -> C1Report:
    """Split ``a`` into certified C1 terms and a single-generator residual.

    A canonical monomial with two or more factors is ``f_(-m-1) b`` for a
    positive-weight leading factor ``f``, so it lies in C1.  What remains is
    a combination of derivatives of single generators; within a homogeneous
    weight and charge sector this must be a multiple of one ``D^m g``.
    """
    if charge_sector is not None and a:
        ch = charge_of(ctx, a, label)
        if ch != Fraction(charge_sector):
            raise ValueError(f"state has {label}-charge {ch}, not {charge_sector}")
    for g in ctx.generators:
        if g.weight <= 0:
            raise ValueError("C1 certificate needs positive-weight generators")
    keep, drop = {}, {}
    for m, c in a.terms.items():
        (keep if len(m) == 1 else drop)[m] = c
    residual, discarded = State(ctx, keep), State(ctx, drop)
    if len(keep) > 1:
        raise ResidualNotMonomial(f"{len(keep)} single-generator towers: {residual}")
    mono = next(iter(keep), None)
    if target is not None and mono is not None and ctx.generators[mono[0][0]].name != target:
        raise ResidualNotMonomial(f"residual {format_monomial(ctx, mono)} is not a {target} tower")
    coeff = keep[mono] if mono is not None else Fraction(0)
    cert = [format_monomial(ctx, m) for m in sorted(drop, key=repr)]
    assert residual + discarded == a
    return C1Report(str(a) if len(str(a)) < 80 else "state", mono, coeff, residual, discarded, cert)


def c1_leading_coefficient(ctx: VoaContext, u: State, i: int, target: str, k0=None):
    """Coefficient of the single-generator term of ``u_(0) D^i(target)``.

    Returns an element of Q(k) (or Q), evaluated at ``k0`` when given.
    """
    x = ctx.gen(target, i)
    r = nth_product(ctx, u, x, 0)
    rep = c1_reduce(ctx, r, target=target)
    c = rep.coefficient
    if k0 is not None:
        from .exactmath import scalar_eval
        c = scalar_eval(c, k0)
    return coerce(c) if not isinstance(c, Scalar) else c
