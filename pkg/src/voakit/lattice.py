"""Rational lattices: duals, complements, discriminant groups, lifting.

A :class:`Lattice` is a list of basis vectors (rows) inside an ambient
rational space carrying a symmetric bilinear form ``ambient_gram``.  All
coordinates are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactmath import Phase

__all__ = [
    "NotIntegral",
    "Lattice",
    "DiscriminantGroup",
    "LiftSolution",
    "smith_normal_form",
    "integer_kernel",
    "dual_lattice",
    "orthogonal_complement",
    "discriminant_group",
    "monodromy_character",
    "character_group_check",
    "solve_lift",
    "lift_membership",
    "lifting_set",
    "extension_check",
    "lattice_from_dict",
]


class NotIntegral(ValueError):
    pass


Matrix = list  # list of lists of Fraction


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _mat(rows) -> Matrix:
    return [[_fr(x) for x in row] for row in rows]


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


def _det(a) -> Fraction:
    m = _mat(a)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def _inverse(a) -> Matrix:
    m = _mat(a)
    n = len(m)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _lcm_den(values) -> int:
    d = 1
    for v in values:
        d = d * v.denominator // gcd(d, v.denominator)
    return d


# -- integer normal forms ------------------------------------------------------

def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U*A*V = D`` diagonal, ``U, V`` unimodular.

    Diagonal entries are non-negative and successively divide each other.
    """
    m = [[int(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, f):  # row_dst += f * row_src
        M[dst] = [x + f * y for x, y in zip(M[dst], M[src])]

    def add_col(M, src, dst, f):
        for row in M:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(m, t, i); swap_rows(U, t, i)
        swap_cols(m, t, j); swap_cols(V, t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(m, t, i, -q); add_row(U, t, i, -q)
                    if m[i][t]:
                        swap_rows(m, t, i); swap_rows(U, t, i)
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(m, t, j, -q); add_col(V, t, j, -q)
                    if m[t][j]:
                        swap_cols(m, t, j); swap_cols(V, t, j)
                        done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if m[i][j] % m[t][t]), None)
                if bad:
                    add_row(m, bad[0], t, 1); add_row(U, bad[0], t, 1)
                    done = False
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, m, V


def integer_kernel(a: Sequence[Sequence]) -> list[list[int]]:
    """Basis of ``{x in Z^n : A x = 0}`` for a rational matrix ``A``."""
    rows = [[_fr(x) for x in row] for row in a]
    ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    scaled = []
    for row in rows:
        d = _lcm_den(row)
        scaled.append([int(x * d) for x in row])
    U, D, V = smith_normal_form(scaled)
    rank = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [[V[r][c] for r in range(ncols)] for c in range(rank, ncols)]


# -- lattices ---------------------------------------------------------------------

@dataclass
class Lattice:
    """Sublattice spanned by ``basis`` rows of an ambient rational form."""

    ambient_gram: Matrix
    basis: Matrix
    labels: list = field(default_factory=list)
    weight_form: Matrix | None = None

    def __post_init__(self):
        self.ambient_gram = _mat(self.ambient_gram)
        self.basis = _mat(self.basis)
        if self.weight_form is not None:
            self.weight_form = _mat(self.weight_form)
        g = self.ambient_gram
        n = len(g)
        if any(len(r) != n for r in g) or any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("ambient gram must be square and symmetric")
        if any(len(b) != n for b in self.basis):
            raise ValueError("basis vectors must live in the ambient space")
        if not self.labels:
            self.labels = [f"e{i + 1}" for i in range(len(self.basis))]

    @classmethod
    def from_gram(cls, gram, labels=None, weight_form=None) -> "Lattice":
        g = _mat(gram)
        basis = [[Fraction(int(i == j)) for j in range(len(g))] for i in range(len(g))]
        return cls(g, basis, list(labels or []), weight_form)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> Matrix:
        return _mul(_mul(self.basis, self.ambient_gram), _transpose(self.basis))

    def det(self) -> Fraction:
        return _det(self.gram) if self.basis else Fraction(1)

    def pair(self, u, v) -> Fraction:
        """Form on ambient coordinate vectors."""
        g = self.ambient_gram
        return sum((_fr(u[i]) * g[i][j] * _fr(v[j]) for i in range(len(g)) for j in range(len(g))
                    if u[i] and v[j]), Fraction(0))

    def vector(self, coords) -> list[Fraction]:
        """Ambient vector with the given coordinates in this lattice's basis."""
        out = [Fraction(0)] * len(self.ambient_gram)
        for c, b in zip(coords, self.basis):
            c = _fr(c)
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return out

    def coordinates(self, v) -> list[Fraction]:
        """Coordinates of an ambient vector in the span of the basis (exact)."""
        v = [_fr(x) for x in v]
        gi = _inverse(self.gram)
        rhs = [self.pair(b, v) for b in self.basis]
        coords = [sum((gi[i][j] * rhs[j] for j in range(self.rank)), Fraction(0)) for i in range(self.rank)]
        if self.vector(coords) != v:
            raise ValueError("vector is not in the span of the lattice")
        return coords

    def contains(self, v) -> bool:
        try:
            return all(_is_int(c) for c in self.coordinates(v))
        except ValueError:
            return False

    def same_as(self, other: "Lattice") -> bool:
        return (all(other.contains(b) for b in self.basis)
                and all(self.contains(b) for b in other.basis))

    def is_integral(self) -> bool:
        return all(_is_int(x) for row in self.gram for x in row)

    def is_even(self) -> bool:
        g = self.gram
        return self.is_integral() and all(g[i][i].numerator % 2 == 0 for i in range(self.rank))

    def to_dict(self) -> dict:
        d = {"rank": self.rank, "gram": [[str(x) for x in r] for r in self.gram],
             "basis": [[str(x) for x in r] for r in self.basis], "basis_labels": self.labels}
        if self.weight_form is not None:
            d["weight_form"] = [[str(x) for x in r] for r in self.weight_form]
        return d


def lattice_from_dict(doc: dict) -> Lattice:
    """Lattice file: ``{rank, gram, weight_form?, basis_labels?, basis?}``."""
    gram = _mat(doc["gram"])
    if "rank" in doc and int(doc["rank"]) != len(gram):
        raise ValueError("rank does not match gram")
    if "basis" in doc:
        return Lattice(gram, _mat(doc["basis"]), list(doc.get("basis_labels") or []),
                       doc.get("weight_form"))
    return Lattice.from_gram(gram, doc.get("basis_labels"), doc.get("weight_form"))


def dual_lattice(L: Lattice) -> Lattice:
    """Dual lattice inside the span of ``L``, in the same ambient coordinates."""
    gi = _inverse(L.gram)
    basis = _mul(gi, L.basis)
    return Lattice(L.ambient_gram, basis, [f"{x}*" for x in L.labels], L.weight_form)


def orthogonal_complement(ambient: Lattice, sub) -> Lattice:
    """``{v in ambient : <v, s> = 0 for s in sub}``, returned as a lattice.

    ``sub`` is a list of ambient vectors (or a :class:`Lattice`).
    """
    sub_basis = sub.basis if isinstance(sub, Lattice) else _mat(sub)
    # v = x . B with x integral;  <v, s> = x . (B G s)
    eqs = [[ambient.pair(b, s) for b in ambient.basis] for s in sub_basis]
    ker = integer_kernel(eqs) if eqs else [[int(i == j) for j in range(ambient.rank)]
                                            for i in range(ambient.rank)]
    basis = [ambient.vector(x) for x in ker]
    return Lattice(ambient.ambient_gram, basis, [f"n{i + 1}" for i in range(len(basis))],
                   ambient.weight_form)


# -- discriminant groups --------------------------------------------------------------

@dataclass
class DiscriminantGroup:
    """``L'/L`` as a product of cyclic groups ``Z/d_i``."""

    lattice: Lattice
    invariants: list[int]
    generators: list[list[Fraction]]  # ambient vectors of L'
    _U: list = field(repr=False, default_factory=list)
    _keep: list = field(repr=False, default_factory=list)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def reduce(self, v) -> tuple[int, ...]:
        """Class of a dual-lattice vector as a tuple of residues mod ``d_i``."""
        L = self.lattice
        z = [L.pair(b, v) for b in L.basis]
        if not all(_is_int(x) for x in z):
            raise ValueError("vector is not in the dual lattice")
        w = [sum(self._U[i][j] * int(z[j]) for j in range(len(z))) for i in range(len(z))]
        return tuple(w[i] % d for i, d in zip(self._keep, self.invariants))

    def element(self, residues) -> list[Fraction]:
        v = [Fraction(0)] * len(self.lattice.ambient_gram)
        for r, g in zip(residues, self.generators):
            v = [a + r * b for a, b in zip(v, g)]
        return v

    def elements(self):
        for res in itertools.product(*[range(d) for d in self.invariants]):
            yield res, self.element(res)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    if not L.is_integral():
        raise NotIntegral("discriminant group needs an integral gram matrix")
    g = [[int(x) for x in row] for row in L.gram]
    U, D, V = smith_normal_form(g)
    Uinv = [[int(x) for x in row] for row in _inverse(U)]
    gi = _inverse(L.gram)
    keep, inv, gens = [], [], []
    for i in range(L.rank):
        d = D[i][i]
        if d == 0:
            raise ValueError("degenerate lattice")
        if d > 1:
            keep.append(i)
            inv.append(d)
            z = [Fraction(Uinv[r][i]) for r in range(L.rank)]  # U^-1 e_i
            coords = [sum((gi[r][s] * z[s] for s in range(L.rank)), Fraction(0)) for r in range(L.rank)]
            gens.append(L.vector(coords))
    return DiscriminantGroup(L, inv, gens, U, keep)


def monodromy_character(L: Lattice, mu, sign: int = 1) -> dict:
    """Character ``nu -> exp(2 pi i sign <mu, nu>)`` on ``L'/L``.

    ``mu`` is an ambient vector of the dual lattice.  Keys are the residue
    tuples of :meth:`DiscriminantGroup.reduce`.
    """
    dual = dual_lattice(L)
    if not dual.contains(mu):
        raise ValueError("mu must lie in the dual lattice")
    G = discriminant_group(L)
    return {res: Phase(sign * L.pair(mu, nu)) for res, nu in G.elements()}


def character_group_check(L: Lattice) -> dict:
    """Check that ``mu -> <mu, .>`` identifies ``L'/L`` with its character group.

    Verifies: characters of elements of ``L`` are trivial (well defined),
    distinct classes give distinct characters (injective), the map is a
    homomorphism, and source and target have the same order.
    """
    G = discriminant_group(L)
    elems = list(G.elements())
    table = {}
    for res, mu in elems:
        table[res] = tuple(Phase(L.pair(mu, nu)) for _, nu in elems)
    trivial = tuple(Phase(0) for _ in elems)
    well_defined = all(tuple(Phase(L.pair(b, nu)) for _, nu in elems) == trivial for b in L.basis)
    injective = len(set(table.values())) == len(table)
    hom = True
    for (r1, m1), (r2, m2) in itertools.product(elems[:6], elems[:6]):
        r3 = G.reduce([a + b for a, b in zip(m1, m2)])
        prod = tuple(x * y for x, y in zip(table[r1], table[r2]))
        if table[r3] != prod:
            hom = False
    # a character of a finite abelian group has order dividing the exponent
    return {"order": G.order, "characters": len(set(table.values())),
            "well_defined": well_defined, "injective": injective, "homomorphism": hom,
            "isomorphism": well_defined and injective and hom and len(set(table.values())) == G.order}


# -- lifting -----------------------------------------------------------------------

@dataclass
class LiftSolution:
    alpha: list[Fraction]  # ambient vector
    dual: Lattice  # the solution set is alpha + dual
    feasible: bool = True

    def to_dict(self) -> dict:
        return {"feasible": self.feasible, "alpha": [str(x) for x in self.alpha],
                "dual_basis": [[str(x) for x in b] for b in self.dual.basis]}


def solve_lift(L: Lattice, targets: Sequence, *, monodromy: bool = False) -> LiftSolution:
    """Find ``alpha`` with ``<alpha, lambda_i> = r_i (mod 1)`` for the basis ``lambda_i``.

    With ``monodromy=True`` the targets are monodromy exponents ``m_i``
    (``M = exp(2 pi i m_i)``) and the equation solved is the one for
    ``M = exp(-2 pi i <alpha, lambda>)``, i.e. ``<alpha, lambda_i> = -m_i``.
    Every solution lies in ``alpha + L'``.
    """
    r = [_fr(x) for x in targets]
    if len(r) != L.rank:
        raise ValueError("one target per basis vector")
    if monodromy:
        r = [-x for x in r]
    r = [x - (x.numerator // x.denominator) for x in r]  # representatives in [0, 1)
    gi = _inverse(L.gram)
    coords = [sum((gi[i][j] * r[j] for j in range(L.rank)), Fraction(0)) for i in range(L.rank)]
    alpha = L.vector(coords)
    for b, t in zip(L.basis, r):
        assert (L.pair(alpha, b) - t).denominator == 1
    return LiftSolution(alpha, dual_lattice(L))


def lift_membership(beta, sol: LiftSolution) -> bool:
    diff = [_fr(b) - a for b, a in zip(beta, sol.alpha)]
    return sol.dual.contains(diff)


def lifting_set(sol: LiftSolution, modulo: Lattice) -> list[list[Fraction]]:
    """Representatives of ``(alpha + L') / N`` for a finite-index sublattice ``N`` of ``L'``."""
    dual = sol.dual
    if not all(dual.contains(b) for b in modulo.basis):
        raise ValueError("modulus must be a sublattice of the dual lattice")
    # N in coordinates of L'; its index is |det| of the coordinate matrix
    coords = [[int(c) for c in dual.coordinates(b)] for b in modulo.basis]
    if len(coords) != dual.rank:
        raise ValueError("modulus must have full rank")
    U, D, V = smith_normal_form(coords)
    # row space of coords is (row space of D) V^-1, so y = x V identifies L'/N with sum Z/d_i
    Vi = [[int(x) for x in row] for row in _inverse(V)]
    sizes = [D[i][i] for i in range(dual.rank)]
    reps = []
    for res in itertools.product(*[range(d) for d in sizes]):
        x = [sum(res[i] * Vi[i][j] for i in range(dual.rank)) for j in range(dual.rank)]
        v = dual.vector(x)
        reps.append([a + b for a, b in zip(sol.alpha, v)])
    return reps


def extension_check(L: Lattice, weight_form, sub) -> str:
    """Classify ``sum over E of F_lambda`` as ``voa``, ``super_voa`` or ``not_extension``.

    ``weight_form`` is the Fock form in the coordinates of ``L``'s basis
    (conformal weight of ``F_lambda`` is ``Q(lambda)/2``); ``sub`` lists the
    basis of ``E`` in those coordinates.
    """
    W = _mat(weight_form)
    E = _mat(sub.basis if isinstance(sub, Lattice) else sub)
    P = _mul(_mul(E, W), _transpose(E))
    if not all(_is_int(x) for row in P for x in row):
        return "not_extension"
    if all(P[i][i].numerator % 2 == 0 for i in range(len(P))):
        return "voa"
    return "super_voa"
