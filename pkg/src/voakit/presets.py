"""Constructors for the vertex algebras used throughout the package.

Each builder returns a :class:`~voakit.engine.VoaContext` with its designated
Heisenberg states and a catalogue of named states installed.  The catalogue
is documented in ``docs/catalogue.md``.
"""

from __future__ import annotations

import json
import os
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Union

from .engine import (
    GeneratorSpec,
    State,
    VoaContext,
    derivative,
    generator_charges,
    nth_product,
    verify_axioms,
)
from .exactmath import K, Scalar, coerce, parse_scalar

__all__ = [
    "SchemaError",
    "AxiomFailure",
    "UnknownName",
    "BetaGamma",
    "BC",
    "BetaGammaBC",
    "Heisenberg",
    "AffineSl2",
    "FromFile",
    "build",
    "parse_preset",
    "named_state",
    "catalogue",
    "data_dir",
    "load_ope_file",
]

HALF = Fraction(1, 2)


class SchemaError(ValueError):
    pass


class AxiomFailure(ValueError):
    pass


class UnknownName(KeyError):
    pass


@dataclass(frozen=True)
class BetaGamma:
    n: int = 1


@dataclass(frozen=True)
class BC:
    m: int = 1


@dataclass(frozen=True)
class BetaGammaBC:
    n: int = 1
    m: int = 1


@dataclass(frozen=True)
class Heisenberg:
    rank: int = 1
    gram: tuple = ((1,),)


@dataclass(frozen=True)
class AffineSl2:
    """Universal affine sl2; ``k=None`` means the symbolic level."""
    k: object = None


@dataclass(frozen=True)
class FromFile:
    path: str = "bp_ope.json"


PresetId = Union[BetaGamma, BC, BetaGammaBC, Heisenberg, AffineSl2, FromFile]


def data_dir() -> Path:
    """Directory holding OPE tables and other data files.

    ``VOAKIT_DATA`` wins, then a directory set with :func:`use_data_dir`,
    then the copy shipped inside the package.
    """
    env = os.environ.get("VOAKIT_DATA")
    if env:
        return Path(env)
    if _DATA_OVERRIDE.get() is not None:
        return _DATA_OVERRIDE.get()
    return Path(__file__).parent / "data"


_DATA_OVERRIDE: ContextVar = ContextVar("voakit_data", default=None)


@contextmanager
def use_data_dir(path):
    """Temporarily read data files from ``path`` (``None`` is a no-op)."""
    token = _DATA_OVERRIDE.set(Path(path) if path else _DATA_OVERRIDE.get())
    try:
        yield
    finally:
        _DATA_OVERRIDE.reset(token)


# -- free-field systems --------------------------------------------------------

def _free_field(n: int, m: int, name: str) -> VoaContext:
    if n < 0 or m < 0 or n + m == 0:
        raise ValueError("need at least one generator pair")
    gens = [GeneratorSpec(f"beta{i}", False, HALF) for i in range(1, n + 1)]
    gens += [GeneratorSpec(f"gamma{i}", False, HALF) for i in range(1, n + 1)]
    gens += [GeneratorSpec(f"b{i}", True, HALF) for i in range(1, m + 1)]
    gens += [GeneratorSpec(f"c{i}", True, HALF) for i in range(1, m + 1)]
    ope = {}
    for i in range(1, n + 1):
        ope[(f"beta{i}", f"gamma{i}")] = {0: 1}
    for i in range(1, m + 1):
        ope[(f"b{i}", f"c{i}")] = {0: 1}
    ctx = VoaContext(gens, ope, name=name)
    h = ctx.zero()
    for i in range(1, n + 1):
        h = h + ctx.parse(f":beta{i} gamma{i}:")
    for i in range(1, m + 1):
        h = h - ctx.parse(f":b{i} c{i}:")
    ctx.heisenberg["h"] = h
    ctx.named["h"] = h
    _install_free_field_names(ctx, n, m)
    return ctx


def _wang_pair(ctx: VoaContext, i: int) -> tuple[State, State]:
    b, g = f"beta{i}", f"gamma{i}"
    L = ctx.parse(f":{b} {b} {g} {g}: + 2*:{b} D({g}): - 2*:D({b}) {g}:")
    W = ctx.parse(
        f":{b} {b} {b} {g} {g} {g}: + 3*:{b} {b} D({g}) {g}: - 6*:D({b}) {b} {g} {g}:"
        f" - 6*:D({b}) D({g}): + 3*:D^2({b}) {g}:"
    )
    return L, W


def _install_free_field_names(ctx: VoaContext, n: int, m: int) -> None:
    nm = ctx.named
    for i in range(1, n + 1):
        nm[f"L{i}"], nm[f"W{i}"] = _wang_pair(ctx, i)
    if n == 1:
        nm["L_Wang"], nm["W_Wang"] = nm["L1"], nm["W1"]
        if m == 0:
            nm["beta"], nm["gamma"] = ctx.gen("beta1"), ctx.gen("gamma1")
    if m == 1 and n == 0:
        nm["b"], nm["c"] = ctx.gen("b1"), ctx.gen("c1")
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if j != k:
                nm[f"X{j}{k}"] = ctx.parse(f"-:beta{j} gamma{k}:")
    for l in range(1, n):
        nm[f"H{l}"] = ctx.parse(f"-:beta1 gamma1: + :beta{l + 1} gamma{l + 1}:")
    for r in range(1, m + 1):
        for s in range(1, m + 1):
            if r != s:
                nm[f"Xbar{r}{s}"] = ctx.parse(f":b{r} c{s}:")
    for u in range(1, m):
        nm[f"Hbar{u}"] = ctx.parse(f":b1 c1: - :b{u + 1} c{u + 1}:")
    for i in range(1, n + 1):
        for r in range(1, m + 1):
            nm[f"J{i}{r}"] = ctx.parse(f":beta{i} gamma{i}: - :b{r} c{r}:")
            nm[f"phi{r}{i}"] = ctx.parse(f":b{r} gamma{i}:")
            nm[f"psi{i}{r}"] = ctx.parse(f":beta{i} c{r}:")
    if n == 2 and m == 0:
        _install_c2(ctx)


def _install_c2(ctx: VoaContext) -> None:
    nm = ctx.named
    X12, X21, H1 = nm["X12"], nm["X21"], nm["H1"]
    L1, L2 = nm["L1"], nm["L2"]
    third = Fraction(1, 3)
    nm["P"] = (nth_product(ctx, L2, X12, 0) * Fraction(-1, 2)
               + nth_product(ctx, H1, X12, -1) * third
               + derivative(ctx, X12) * (2 * third))
    nm["P_expanded"] = ctx.parse(
        ":beta1 D(gamma2): - :D(beta1) gamma2: + 1/3*:beta1 beta1 gamma1 gamma2:"
        " + 2/3*:beta1 beta2 gamma2 gamma2:")
    nm["Q"] = (nth_product(ctx, L1, X21, 0) * Fraction(-1, 2)
               - nth_product(ctx, H1, X21, -1) * (2 * third)
               + derivative(ctx, X21) * third)
    nm["Q_expanded"] = ctx.parse(
        ":beta2 D(gamma1): - :D(beta2) gamma1: + 1/3*:beta1 beta2 gamma1 gamma1:"
        " + 2/3*:beta2 beta2 gamma1 gamma2:")
    nm["R"] = L1 - L2
    nm["L_Sugawara"] = ctx.parse(":X12 X21: + 1/4*:H1 H1: - 1/2*D(H1)")
    nm["L"] = nm["L_Sugawara"]


# -- Heisenberg and affine sl2 ------------------------------------------------

def _heisenberg(rank: int, gram) -> VoaContext:
    g = [[Fraction(x) if not isinstance(x, str) else parse_scalar(x) for x in row] for row in gram]
    if len(g) != rank or any(len(row) != rank for row in g):
        raise ValueError("gram must be rank x rank")
    for i in range(rank):
        for j in range(rank):
            if g[i][j] != g[j][i]:
                raise ValueError("gram must be symmetric")
    names = [f"h{i}" for i in range(1, rank + 1)] if rank > 1 else ["h"]
    gens = [GeneratorSpec(nm, False, 1) for nm in names]
    ope = {}
    for i in range(rank):
        for j in range(rank):
            if g[i][j]:
                ope[(names[i], names[j])] = {1: g[i][j]}
    ctx = VoaContext(gens, ope, name=f"Heisenberg({rank})")
    from .lattice import _det
    if _det(g) == 0:
        raise ValueError("gram must be nondegenerate")
    for nm in names:
        ctx.heisenberg[nm] = ctx.gen(nm)
    if rank > 1:
        ctx.heisenberg["h"] = ctx.gen(names[0])
    return ctx


def _affine_sl2(k) -> VoaContext:
    level = K if k is None else coerce(parse_scalar(k) if isinstance(k, str) else k)
    gens = [GeneratorSpec("H", False, 1), GeneratorSpec("X", False, 1), GeneratorSpec("Y", False, 1)]
    ope = {
        ("X", "Y"): {1: level, 0: "H"},
        ("H", "X"): {0: "2*X"},
        ("H", "Y"): {0: "-2*Y"},
        ("H", "H"): {1: 2 * level},
    }
    label = "sl2(k)" if k is None else f"sl2(k={level})"
    ctx = VoaContext(gens, ope, scalars="Q(k)" if k is None else "Q", name=label)
    ctx.level = level
    ctx.heisenberg["h"] = ctx.gen("H")
    ctx.heisenberg["H"] = ctx.gen("H")
    if level != -2:
        sug = ctx.parse("1/2*:H H: + :X Y: + :Y X:") * (1 / (2 * (level + 2)))
        ctx.named["L_Sugawara"] = sug
        ctx.named["L"] = sug
        ctx.virasoro = sug
        ctx.central_charge = coerce(3 * level / (level + 2))
    return ctx


# -- OPE files ---------------------------------------------------------------

def load_ope_file(path) -> VoaContext:
    """Build a context from a JSON OPE table.

    Schema: ``scalars`` ("Q" or "Q(k)"), ``generators`` (list of
    ``{name, parity, weight, charges}``) and ``ope`` (list of
    ``{a, b, products: {n: expression}}``).  Optional keys: ``heisenberg``
    (label to expression), ``virasoro`` ({state, central_charge}),
    ``named`` (name to expression), ``source`` (free text).
    """
    p = Path(path)
    if not p.is_absolute() and not p.exists():
        p = data_dir() / p
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise
    except (OSError, ValueError) as exc:
        raise SchemaError(f"{p}: {exc}") from None
    return context_from_dict(doc, name=p.stem)


def _req(doc, key, typ, where):
    if key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    if not isinstance(doc[key], typ):
        raise SchemaError(f"{where}: key {key!r} must be {typ.__name__}")
    return doc[key]


def context_from_dict(doc: dict, name: str = "file") -> VoaContext:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    scalars = doc.get("scalars", "Q")
    if scalars not in ("Q", "Q(k)"):
        raise SchemaError("scalars must be 'Q' or 'Q(k)'")
    gens = []
    declared = {}
    for i, g in enumerate(_req(doc, "generators", list, "file")):
        where = f"generators[{i}]"
        nm = _req(g, "name", str, where)
        parity = g.get("parity", "even")
        if parity not in ("even", "odd"):
            raise SchemaError(f"{where}: parity must be even|odd")
        try:
            wt = Fraction(str(g.get("weight")))
        except (TypeError, ValueError):
            raise SchemaError(f"{where}: bad weight") from None
        charges = {lbl: Fraction(str(v)) for lbl, v in (g.get("charges") or {}).items()}
        declared[nm] = charges
        gens.append(GeneratorSpec(nm, parity == "odd", wt, charges))
    ope = {}
    for i, e in enumerate(_req(doc, "ope", list, "file")):
        where = f"ope[{i}]"
        a, b = _req(e, "a", str, where), _req(e, "b", str, where)
        prods = _req(e, "products", dict, where)
        ope[(a, b)] = {int(n): v for n, v in prods.items()}
    try:
        ctx = VoaContext(gens, ope, scalars=scalars, name=doc.get("name", name))
    except (KeyError, ValueError) as exc:
        raise SchemaError(str(exc)) from None
    ctx.source = doc.get("source", "")
    for lbl, expr in (doc.get("heisenberg") or {}).items():
        ctx.heisenberg[lbl] = ctx.parse(expr)
    if "h" not in ctx.heisenberg and ctx.heisenberg:
        ctx.heisenberg["h"] = next(iter(ctx.heisenberg.values()))
    vir = doc.get("virasoro")
    if vir:
        ctx.virasoro = ctx.parse(vir["state"])
        ctx.central_charge = coerce(parse_scalar(str(vir["central_charge"])))
    for nm, expr in (doc.get("named") or {}).items():
        ctx.named[nm] = ctx.parse(expr)
    # declared charges must agree with the computed zero-mode eigenvalues
    for lbl in ctx.heisenberg:
        computed = generator_charges(ctx, lbl)
        for g, val in zip(ctx.generators, computed):
            want = declared[g.name].get(lbl)
            if want is not None and want != val:
                raise SchemaError(f"generator {g.name}: declared {lbl}-charge {want}, computed {val}")
    return ctx


# -- dispatch -------------------------------------------------------------------

_CACHE: dict = {}


def build(preset: PresetId, *, check: bool = False, samples: int = 100) -> VoaContext:
    """Construct the context for ``preset`` (memoized).

    With ``check=True`` the randomized axiom suite is run and
    :class:`AxiomFailure` raised on any violation.
    """
    key = preset
    if isinstance(preset, FromFile):
        key = (preset, str(data_dir()))
    ctx = _CACHE.get(key)
    if ctx is None:
        if isinstance(preset, BetaGamma):
            ctx = _free_field(preset.n, 0, f"S({preset.n})")
        elif isinstance(preset, BC):
            ctx = _free_field(0, preset.m, f"E({preset.m})")
        elif isinstance(preset, BetaGammaBC):
            ctx = _free_field(preset.n, preset.m, f"S({preset.n})xE({preset.m})")
        elif isinstance(preset, Heisenberg):
            ctx = _heisenberg(preset.rank, preset.gram)
        elif isinstance(preset, AffineSl2):
            ctx = _affine_sl2(preset.k)
        elif isinstance(preset, FromFile):
            ctx = load_ope_file(preset.path)
        else:
            raise TypeError(f"unknown preset {preset!r}")
        _CACHE[key] = ctx
    if check:
        rep = verify_axioms(ctx, samples)
        if not rep:
            raise AxiomFailure(rep.summary())
    return ctx


_PRESET_RE = [
    (re.compile(r"^(?:S|BetaGamma|betagamma)\((\d+)\)$"), lambda m: BetaGamma(int(m[1]))),
    (re.compile(r"^(?:E|BC|bc)\((\d+)\)$"), lambda m: BC(int(m[1]))),
    (re.compile(r"^(?:S\((\d+)\)[x*]E\((\d+)\)|BetaGammaBC\((\d+),\s*(\d+)\))$"),
     lambda m: BetaGammaBC(int(m[1] or m[3]), int(m[2] or m[4]))),
    (re.compile(r"^(?:Heisenberg|heisenberg)\((\d+)\)$"),
     lambda m: Heisenberg(int(m[1]), tuple(tuple(int(i == j) for j in range(int(m[1])))
                                           for i in range(int(m[1]))))),
    (re.compile(r"^(?:sl2|AffineSl2)(?:\(k=([^)]*)\))?$"),
     lambda m: AffineSl2(None if m[1] in (None, "", "k") else str(parse_scalar(m[1])))),
    (re.compile(r"^(?:bp|BP)$"), lambda m: FromFile("bp_ope.json")),
    (re.compile(r"^file:(.+)$"), lambda m: FromFile(m[1])),
]


def parse_preset(text: str) -> PresetId:
    """Parse names like ``S(2)``, ``E(1)``, ``S(1)xE(1)``, ``sl2``, ``sl2(k=-2/5)``, ``bp``."""
    t = text.strip().replace(" ", "")
    for rx, make in _PRESET_RE:
        m = rx.match(t)
        if m:
            return make(m)
    if t.endswith(".json"):
        return FromFile(t)
    raise ValueError(f"unknown preset {text!r}")


_U0 = re.compile(r"^U_?\{?0,?(\d+)\}?$")


def named_state(ctx: VoaContext, name: str) -> State:
    """A state from the preset catalogue (or a generator name)."""
    if name in ctx.named:
        return ctx.named[name]
    m = _U0.match(name)
    if m:
        i = int(m[1])
        if {"X", "Y"} <= set(ctx.index):
            return ctx.parse(f":X D^{i}(Y):")
        if {"Gp", "Gm"} <= set(ctx.index):
            return ctx.parse(f":Gp D^{i}(Gm):")
    if name in ctx.index:
        return ctx.gen(name)
    raise UnknownName(name)


def catalogue(ctx: VoaContext) -> list[str]:
    return sorted(ctx.named)
