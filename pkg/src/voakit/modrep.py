"""Bookkeeping for Schur-Weyl type decompositions and simple-current functors.

Module-level statements become transforms on label data: a Loewy diagram
is relabelled factor by factor, a decomposition ``mu -> D_mu`` is regrouped
along the sublattice that fixes the vacuum label, and short exact
sequences are checked for composition-length additivity per weight.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .lattice import Lattice, _inverse, smith_normal_form
from .exactmath import parse_rational

__all__ = [
    "MissingLabel",
    "InconsistentLabels",
    "LengthMismatch",
    "LoewyDiagram",
    "SimpleCurrentLabel",
    "DecompositionData",
    "RegroupResult",
    "fuse_diagram",
    "coset_relabel",
    "transport_diagram",
    "sw_regroup",
    "orbit_split",
    "exactness_transport",
    "row_basis",
    "load_decomposition",
]


class MissingLabel(KeyError):
    pass


class InconsistentLabels(ValueError):
    pass


class LengthMismatch(ValueError):
    def __init__(self, msg, mu=None):
        super().__init__(msg)
        self.mu = mu


# -- Loewy diagrams --------------------------------------------------------------

@dataclass(frozen=True)
class LoewyDiagram:
    """Layers from head (first) to socle (last); arrows join adjacent layers.

    An arrow is ``((i, a), (i + 1, b))``: factor ``a`` of layer ``i`` maps
    onto factor ``b`` of layer ``i + 1``.
    """

    layers: tuple
    arrows: tuple = ()

    def __init__(self, layers: Sequence[Sequence], arrows: Sequence = ()):
        lay = tuple(tuple(layer) for layer in layers)
        if not lay or any(not layer for layer in lay):
            raise ValueError("a Loewy diagram needs nonempty layers")
        arr = tuple(sorted((tuple(a), tuple(b)) for a, b in arrows))
        for (i, a), (j, b) in arr:
            if j != i + 1 or not (0 <= a < len(lay[i])) or not (0 <= b < len(lay[j])):
                raise ValueError(f"arrow {(i, a)} -> {(j, b)} does not join adjacent layers")
        object.__setattr__(self, "layers", lay)
        object.__setattr__(self, "arrows", arr)

    @classmethod
    def diamond(cls, top, left, right, bottom) -> "LoewyDiagram":
        return cls([[top], [left, right], [bottom]],
                   [((0, 0), (1, 0)), ((0, 0), (1, 1)), ((1, 0), (2, 0)), ((1, 1), (2, 0))])

    @property
    def head(self) -> tuple:
        return self.layers[0]

    @property
    def socle(self) -> tuple:
        return self.layers[-1]

    @property
    def length(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def shape(self) -> tuple:
        return tuple(len(layer) for layer in self.layers), self.arrows

    def factors(self) -> Counter:
        return Counter(x for layer in self.layers for x in layer)

    def relabel(self, f: Callable) -> "LoewyDiagram":
        return LoewyDiagram([[f(x) for x in layer] for layer in self.layers], self.arrows)

    def to_dict(self) -> dict:
        return {"layers": [[_label_to_json(x) for x in layer] for layer in self.layers],
                "arrows": [[list(a), list(b)] for a, b in self.arrows]}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "LoewyDiagram":
        return cls([[_label_from_json(x) for x in layer] for layer in doc["layers"]],
                   [tuple(map(tuple, a)) for a in doc.get("arrows", [])])

    def __str__(self):
        return " / ".join(", ".join(_label_str(x) for x in layer) for layer in self.layers)


def _label_to_json(x):
    if isinstance(x, tuple):
        return [_label_to_json(v) for v in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _label_from_json(x):
    """JSON lists become tuples so that labels stay hashable."""
    return tuple(_label_from_json(v) for v in x) if isinstance(x, list) else x


def _label_str(x) -> str:
    if isinstance(x, tuple):
        return f"{x[0]}_{{{','.join(str(v) for v in x[1:])}}}"
    return str(x)


@dataclass(frozen=True)
class SimpleCurrentLabel:
    """A simple current named by ``label`` with Picard-group element ``element``.

    ``element`` is a tuple (lattice vector or finite-group element);
    ``modulus`` gives the invariant factors for finite groups (0 = free).
    """

    label: str
    element: tuple = ()
    modulus: tuple = ()

    def is_unit(self) -> bool:
        return all(x == 0 for x in self.element)

    def inverse(self) -> "SimpleCurrentLabel":
        return SimpleCurrentLabel(f"{self.label}^-1", self._reduce(tuple(-x for x in self.element)),
                                  self.modulus)

    def _reduce(self, v):
        if not self.modulus:
            return tuple(v)
        return tuple(x % m if m else x for x, m in zip(v, self.modulus))

    def act(self, x):
        """Translate a group-element label by this current."""
        if len(x) != len(self.element):
            raise MissingLabel(x)
        return self._reduce(tuple(a + b for a, b in zip(x, self.element)))


def fuse_diagram(J: SimpleCurrentLabel, D: LoewyDiagram, relabel=None) -> LoewyDiagram:
    """Diagram of ``J x M``: every composition factor ``S`` becomes ``J x S``.

    ``relabel`` (mapping or callable) supplies ``S -> J x S``.  Without it
    the unit acts trivially and group-element labels are translated.
    """
    if relabel is None:
        if J.is_unit():
            return D
        f = J.act
    elif callable(relabel):
        f = relabel
    else:
        def f(x):
            try:
                return relabel[x]
            except KeyError:
                raise MissingLabel(x) from None
    try:
        out = D.relabel(f)
    except (TypeError, KeyError) as exc:
        raise MissingLabel(str(exc)) from None
    assert out.shape() == D.shape() and out.length == D.length
    return out


# -- decomposition data ------------------------------------------------------------

def _vec(v) -> tuple:
    if isinstance(v, (int, Fraction, str)):
        return (parse_rational(v),)
    return tuple(parse_rational(x) for x in v)


def row_basis(gens: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis of the integer row space spanned by ``gens`` (length-``dim`` vectors)."""
    gens = [list(map(int, g)) for g in gens if any(g)]
    if not gens:
        return []
    U, D, V = smith_normal_form(gens)
    Vi = _inverse(V)
    out = []
    for i in range(min(len(D), dim)):
        d = D[i][i]
        if d:
            out.append([int(d * Vi[i][j]) for j in range(dim)])
    return out


@dataclass
class DecompositionData:
    """``M = sum_mu F_mu x D_mu`` recorded on finitely many weights.

    ``reps`` are weights of ``M`` (ambient coordinates of ``lattice``);
    ``labels[rep]`` names ``D_rep`` (a string, tuple or LoewyDiagram).
    With ``period`` (a basis of N' inside L) the association extends to
    every ``rep + N'``; otherwise only the listed weights are known.
    """

    lattice: Lattice
    reps: list
    labels: dict
    period: list | None = None
    multiplicity_free: bool = False
    name: str = ""

    def __post_init__(self):
        self.reps = [_vec(r) for r in self.reps]
        self.labels = {_vec(k): v for k, v in self.labels.items()}
        if set(self.labels) != set(self.reps):
            raise InconsistentLabels("labels must be given for exactly the listed weights")
        if len(set(self.reps)) != len(self.reps):
            raise InconsistentLabels("duplicate weights")
        if self.period is not None:
            self.period = [_vec(p) for p in self.period]
            for p in self.period:
                if not self.lattice.contains(p):
                    raise InconsistentLabels(f"period vector {p} is not in L")
            for a, b in itertools.combinations(self.reps, 2):
                if self._in_period(tuple(x - y for x, y in zip(a, b))):
                    raise InconsistentLabels(f"weights {a} and {b} are congruent modulo N'")

    @property
    def dim(self) -> int:
        return len(self.lattice.ambient_gram)

    def _period_lattice(self) -> Lattice:
        return Lattice(self.lattice.ambient_gram, [list(p) for p in self.period])

    def _in_period(self, v) -> bool:
        if not self.period:
            return all(x == 0 for x in v)
        return self._period_lattice().contains(list(v))

    def label_of(self, mu):
        """Label of ``D_mu``, or ``None`` when ``mu`` is outside the known data."""
        mu = _vec(mu)
        if mu in self.labels:
            return self.labels[mu]
        if self.period:
            for r in self.reps:
                if self._in_period(tuple(x - y for x, y in zip(mu, r))):
                    return self.labels[r]
        return None

    def in_L(self, v) -> bool:
        return self.lattice.contains(list(v))

    def to_dict(self) -> dict:
        def lab(x):
            return x.to_dict() if isinstance(x, LoewyDiagram) else _label_to_json(x)
        return {
            "lattice": self.lattice.to_dict(),
            "orbit_reps": [[str(x) for x in r] for r in self.reps],
            "labels": {",".join(str(x) for x in r): lab(self.labels[r]) for r in self.reps},
            "period": None if self.period is None else [[str(x) for x in p] for p in self.period],
            "multiplicity_free": self.multiplicity_free,
        }

    @classmethod
    def from_dict(cls, doc: Mapping, lattice: Lattice | None = None) -> "DecompositionData":
        from .lattice import lattice_from_dict
        L = lattice or lattice_from_dict(doc["lattice"])
        labels = {}
        for key, v in doc["labels"].items():
            labels[tuple(parse_rational(x) for x in str(key).split(","))] = (
                LoewyDiagram.from_dict(v) if isinstance(v, Mapping) else _label_from_json(v))
        reps = [tuple(parse_rational(x) for x in r) for r in doc["orbit_reps"]]
        return cls(L, reps, labels, doc.get("period"),
                   bool(doc.get("multiplicity_free", False)), doc.get("name", ""))


def load_decomposition(path, lattice: Lattice | None = None) -> DecompositionData:
    """Read a decomposition file; ``lattice_ref`` is resolved relative to it."""
    with open(path) as fh:
        doc = json.load(fh)
    if lattice is None and "lattice" not in doc and "lattice_ref" in doc:
        from .lattice import lattice_from_dict
        with open(Path(path).parent / doc["lattice_ref"]) as fh:
            lattice = lattice_from_dict(json.load(fh))
    return DecompositionData.from_dict(doc, lattice)


# -- regrouping -----------------------------------------------------------------

@dataclass
class RegroupResult:
    N: Lattice
    invariants: list  # finite invariant factors of L/N (> 1)
    free_rank: int
    classes: list  # (representative, label)
    grouped: DecompositionData

    @property
    def quotient(self) -> str:
        parts = [f"Z/{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"

    @property
    def order(self):
        if self.free_rank:
            return "infinite"
        out = 1
        for d in self.invariants:
            out *= d
        return out


def _L_coords(data: DecompositionData, v) -> list[int]:
    c = data.lattice.coordinates(list(v))
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"{v} is not in L")
    return [int(x) for x in c]


def _quotient_elements(basis_coords: list[list[int]], rank: int):
    """Representatives (L-coordinates) of ``Z^rank / span(basis)`` when finite."""
    if len(basis_coords) < rank:
        return None
    U, D, V = smith_normal_form(basis_coords)
    ds = [D[i][i] for i in range(rank)]
    Vi = _inverse(V)
    out = []
    for e in itertools.product(*[range(d) for d in ds]):
        x = [sum(Fraction(e[i]) * Vi[i][j] for i in range(rank)) for j in range(rank)]
        out.append([int(t) for t in x])
    return out


def sw_regroup(data: DecompositionData) -> RegroupResult:
    """Group ``V = sum F_lam x C_lam`` as ``sum_{[lam] in L/N} W_[lam] x C_[lam]``.

    ``N`` is the sublattice of ``lam`` in ``L`` with ``C_lam`` carrying the
    vacuum label.  When the period ``N'`` has full rank in ``L`` the search
    runs over the finite group ``L/N'``; otherwise over the listed weights.
    """
    zero = tuple(Fraction(0) for _ in range(data.dim))
    vac = data.label_of(zero)
    if vac is None:
        raise InconsistentLabels("the data does not contain the vacuum weight 0")
    L = data.lattice
    r = L.rank
    if data.period and len(data.period) == r:
        pcoords = [_L_coords(data, p) for p in data.period]
        candidates = [L.vector(x) for x in _quotient_elements(pcoords, r)]
        gens = pcoords + [_L_coords(data, c) for c in candidates if data.label_of(c) == vac]
    else:
        gens = [_L_coords(data, m) for m in data.reps if data.in_L(m) and data.labels[m] == vac]
    nb = row_basis(gens, r)
    N = Lattice(L.ambient_gram, [L.vector(b) for b in nb] if nb else [])
    # periodicity of the association along N
    for m in data.reps:
        for b in N.basis:
            for sgn in (1, -1):
                shifted = tuple(x + sgn * y for x, y in zip(m, b))
                got = data.label_of(shifted)
                if got is not None and got != data.labels[m]:
                    raise InconsistentLabels(f"label at {shifted} is {got}, at {m} it is {data.labels[m]}")
    U, D, V = smith_normal_form(nb) if nb else (None, [], None)
    diag = [D[i][i] for i in range(len(nb))] if nb else []
    invariants = [d for d in diag if d > 1]
    free_rank = r - len(nb)
    # classes of L/N met by the data, one representative each
    classes: list = []
    seen: list = []
    Nl = N
    pool = [m for m in data.reps if data.in_L(m)]
    if not free_rank and data.period and len(data.period) == r:
        pool = [tuple(L.vector(x)) for x in _quotient_elements([_L_coords(data, p) for p in data.period], r)]
    for m in pool:
        if any(_member(Nl, tuple(x - y for x, y in zip(m, s))) for s in seen):
            continue
        seen.append(m)
        classes.append((m, data.label_of(m)))
    labels = [lab for _, lab in classes]
    if len(set(map(_hashable, labels))) != len(labels):
        raise InconsistentLabels(f"distinct classes of L/N share a label: {labels}")
    grouped = DecompositionData(L, [m for m, _ in classes], {m: lab for m, lab in classes},
                                [list(b) for b in N.basis] or None, data.multiplicity_free, data.name)
    return RegroupResult(N, invariants, free_rank, classes, grouped)


def _member(N: Lattice, v) -> bool:
    if not N.basis:
        return all(x == 0 for x in v)
    return N.contains(list(v))


def _hashable(x):
    return x if not isinstance(x, list) else tuple(x)


def orbit_split(data: DecompositionData) -> list[DecompositionData]:
    """Split the weights into ``L``-orbits (one DecompositionData each)."""
    groups: list[list] = []
    for m in data.reps:
        for g in groups:
            if data.in_L(tuple(x - y for x, y in zip(m, g[0]))):
                g.append(m)
                break
        else:
            groups.append([m])
    return [DecompositionData(data.lattice, g, {m: data.labels[m] for m in g}, data.period,
                              data.multiplicity_free, f"{data.name}[{i}]")
            for i, g in enumerate(groups)]


# -- coset transport -------------------------------------------------------------

def coset_relabel(factors: Mapping, mu) -> dict:
    """``S -> T_mu`` for ``S = sum F_nu x T_nu`` given as DecompositionData or callables."""
    out = {}
    for s, dec in factors.items():
        t = dec(mu) if callable(dec) else dec.label_of(mu)
        if t is None:
            raise MissingLabel(f"{s} has no coset label at {mu}")
        out[s] = t
    return out


def transport_diagram(D: LoewyDiagram, factors: Mapping, mu) -> LoewyDiagram:
    """Loewy diagram of ``D_mu``: each factor ``S`` replaced by its ``F_mu``-multiplicity space."""
    unit = SimpleCurrentLabel("1")
    return fuse_diagram(unit, D, coset_relabel(factors, mu))


# -- exact sequences ----------------------------------------------------------------

def _wt(mu) -> str:
    return "(" + ", ".join(str(x) for x in mu) + ")"


def _length(x) -> int:
    return x.length if isinstance(x, LoewyDiagram) else 1


def _factors(x) -> Counter:
    return x.factors() if isinstance(x, LoewyDiagram) else Counter([x])


def exactness_transport(ses: Sequence[DecompositionData]) -> dict:
    """Check ``0 -> D'_mu -> D_mu -> D''_mu -> 0`` on lengths and factors for every weight."""
    sub, mid, quo = ses
    if not (set(sub.reps) == set(mid.reps) == set(quo.reps)):
        raise ValueError("the three decompositions must share their weights")
    report = {}
    for mu in mid.reps:
        a, b, c = sub.labels[mu], mid.labels[mu], quo.labels[mu]
        if _length(b) != _length(a) + _length(c):
            raise LengthMismatch(f"length {_length(b)} != {_length(a)} + {_length(c)} at {_wt(mu)}", mu)
        if _factors(b) != _factors(a) + _factors(c):
            raise LengthMismatch(f"composition factors of the middle term differ at {_wt(mu)}", mu)
        report[mu] = (_length(a), _length(b), _length(c))
    return {"consistent": True, "lengths": report}
