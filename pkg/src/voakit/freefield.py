"""Brute-force mode-expansion oracle for free-field contexts.

Works for contexts whose generator OPEs are pure multiples of the vacuum
(βγ, bc, Heisenberg).  States are realised in the Fock space spanned by
words in creation modes ``g_(n)``, ``n < 0``; fields of normally ordered
monomials are mode-normal-ordered products, and ``a_(n) b`` is read off by
summing over all mode splittings.  Nothing here uses the engine's
commutator formula or its canonical form, so agreement is an independent
check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

from .engine import State, VoaContext

__all__ = ["FreeFieldOracle"]

Word = tuple  # sorted tuple of (generator, mode) creation operators


def _falling(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


class FreeFieldOracle:
    def __init__(self, ctx: VoaContext):
        self.ctx = ctx
        self.odd = [g.odd for g in ctx.generators]
        self.wt = [g.weight for g in ctx.generators]
        self.pole: dict = {}
        for (a, b), entry in ctx._table.items():
            for n, terms in entry.items():
                if set(terms) - {()}:
                    raise ValueError("oracle needs scalar OPEs (free fields only)")
                c = terms.get((), 0)
                if c:
                    self.pole[(a, b, n)] = Fraction(c)

    # -- Fock space ------------------------------------------------------------
    def _create(self, op, vec: dict) -> dict:
        """Left-multiply by a creation operator and restore sorted order."""
        out: dict = {}
        for word, c in vec.items():
            w = list(word)
            sign = 1
            pos = 0
            while pos < len(w) and w[pos] < op:
                if self.odd[op[0]] and self.odd[w[pos][0]]:
                    sign = -sign
                pos += 1
            if pos < len(w) and w[pos] == op and self.odd[op[0]]:
                continue  # fermionic creation operators square to zero
            w.insert(pos, op)
            key = tuple(w)
            out[key] = out.get(key, 0) + sign * c
        return {k: v for k, v in out.items() if v}

    def _bracket(self, g: int, m: int, h: int, n: int) -> Fraction:
        """Scalar (anti)commutator ``[g_(m), h_(n)]``."""
        i = m + n + 1
        if i < 0 or m < 0:
            return Fraction(0)
        c = self.pole.get((g, h, i))
        return Fraction(comb(m, i)) * c if c else Fraction(0)

    def _annihilate(self, op, vec: dict) -> dict:
        g, m = op
        out: dict = {}
        for word, c in vec.items():
            sign = 1
            for idx, (h, n) in enumerate(word):
                br = self._bracket(g, m, h, n)
                if br:
                    key = word[:idx] + word[idx + 1:]
                    out[key] = out.get(key, 0) + sign * br * c
                if self.odd[g] and self.odd[h]:
                    sign = -sign
        return {k: v for k, v in out.items() if v}

    def _apply(self, op, vec: dict) -> dict:
        return self._create(op, vec) if op[1] < 0 else self._annihilate(op, vec)

    # -- states ------------------------------------------------------------------
    def fock(self, a: State) -> dict:
        """Fock vector of an engine state: ``:f1 ... fk:`` -> prod m_i! g_(-m_i-1) |0>."""
        out: dict = {}
        for mono, c in a.terms.items():
            vec = {(): Fraction(1)}
            scale = Fraction(1)
            for g, d in reversed(mono):
                vec = self._create((g, -d - 1), vec)
                scale *= factorial(d)
            for w, v in vec.items():
                out[w] = out.get(w, 0) + v * scale * c
        return {k: v for k, v in out.items() if v}

    def _weight(self, word) -> Fraction:
        return sum((self.wt[g] - n - 1 for g, n in word), Fraction(0))

    def product(self, a: State, b: State, n: int) -> dict:
        """Fock vector of ``a_(n) b`` by direct mode expansion."""
        vb = self.fock(b)
        if not vb:
            return {}
        wb = max(self._weight(w) for w in vb)
        out: dict = {}
        for mono, c in a.terms.items():
            if not mono:
                if n == -1:
                    for w, v in vb.items():
                        out[w] = out.get(w, 0) + c * v
                continue
            k = len(mono)
            wa = sum((self.wt[g] + d for g, d in mono), Fraction(0))
            target = wa + wb - n - 1
            if target < 0:
                continue
            # field modes j_i with sum (j_i + 1) = n + 1; a factor of weight w in
            # mode j changes the weight by w - j - 1, which lies in [-wb, target]
            ranges = []
            for g, d in mono:
                w = self.wt[g] + d
                lo = -((-(w - 1 - target)).__floor__())  # ceil
                hi = (w - 1 + wb).__floor__()
                ranges.append(range(lo, hi + 1))
            for js in itertools.product(*ranges[:-1]):
                last = n + 1 - k - sum(js)
                if last not in ranges[-1]:
                    continue
                term = self._product_term(mono, list(js) + [last], vb)
                for w, v in term.items():
                    out[w] = out.get(w, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def _product_term(self, mono, js, vb) -> dict:
        """Apply the normal-ordered mode product ``:prod (D^d_i g_i)_(j_i):`` to ``vb``."""
        ops = []  # (generator, mode, coefficient)
        coeff = Fraction(1)
        for (g, d), j in zip(mono, js):
            # (D^d g)_(j) = (-1)^d (j)_d g_(j-d)
            f = _falling(j, d) * (-1 if d % 2 else 1)
            if f == 0:
                return {}
            coeff *= f
            ops.append((g, j - d))
        # normal order: creators left, annihilators right, Koszul sign for swaps
        sign = 1
        cre = [o for o in ops if o[1] < 0]
        ann = [o for o in ops if o[1] >= 0]
        seen_ann_odd = 0
        for o in ops:
            if o[1] >= 0:
                seen_ann_odd += self.odd[o[0]]
            elif self.odd[o[0]] and seen_ann_odd % 2:
                sign = -sign
        vec = dict(vb)
        # quick weight pruning: annihilators cannot lower below zero
        for o in reversed(ann):
            vec = self._annihilate(o, vec)
            if not vec:
                return {}
        for o in reversed(cre):
            vec = self._create(o, vec)
            if not vec:
                return {}
        return {w: v * coeff * sign for w, v in vec.items()}

    def agrees(self, a: State, b: State, n: int) -> bool:
        from .engine import nth_product
        return self.fock(nth_product(self.ctx, a, b, n)) == self.product(a, b, n)
