"""Ideal arithmetic over F_p via Buchberger's algorithm."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import kernels
from .ffield import inv_mod
from .poly import GREVLEX, MonomialOrder, Poly, PolyRing, RegistryMismatch, as_order


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its resource cap.

    ``diagnostics`` holds the counters at the moment of failure.
    """

    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class EmptyScheme(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 500_000
    max_basis: int = 20_000


DEFAULT_BUDGET = Budget()


def _lcm(a, b, guard, fmask, shift):
    sel = ((((a | guard) - b) & guard) >> shift) * fmask
    return (a & sel) | (b & ~sel)


def _coprime(a, b, guard, fmask, shift):
    sel = ((((a | guard) - b) & guard) >> shift) * fmask
    return ((b & sel) | (a & ~sel)) == 0


def _divides(a, b, guard):
    return ((b | guard) - a) & guard == guard


def _buchberger(ring: PolyRing, gens: list, order: MonomialOrder, budget: Budget):
    """Reduced, monic Groebner basis as a list of term dicts, sorted by leading term."""
    p = ring.p
    guard, fmask, shift = ring.guard, ring.fmask, ring.bits - 1
    blocks = order.blocks(ring)
    okey = kernels.order_key

    polys = []  # (lt, tail) of every basis element ever added; all monic
    active: list = []  # indices into polys, insertion order
    pairs: list = []  # heap of (key(lcm), i, j); normal selection strategy
    pair_lcms: dict = {}
    stats = {"pairs_reduced": 0, "pairs_skipped": 0, "basis_size": 0}

    def leading(terms):
        e = max(terms, key=lambda t: okey(t, blocks))
        return e, terms[e]

    def current_reducers():
        return [polys[i][0] for i in active], [polys[i][1] for i in active]

    def update(h):
        lh = polys[h][0]
        cands = [(g, _lcm(lh, polys[g][0], guard, fmask, shift)) for g in active]
        keep = []
        for idx, (g, lg) in enumerate(cands):
            if _coprime(lh, polys[g][0], guard, fmask, shift):
                keep.append((g, lg))
                continue
            dominated = False
            for g2, l2 in cands[idx + 1:]:
                if _divides(l2, lg, guard):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in keep:
                    if _divides(l2, lg, guard):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, lg))
        new_pairs = []
        seen_lcm = set()
        for g, lg in keep:
            if _coprime(lh, polys[g][0], guard, fmask, shift):
                stats["pairs_skipped"] += 1
                continue
            if lg in seen_lcm:
                stats["pairs_skipped"] += 1
                continue
            seen_lcm.add(lg)
            new_pairs.append((g, lg))
        # chain criterion on old pairs
        for key in list(pair_lcms):
            i, j = key
            lij = pair_lcms[key]
            if (
                _divides(lh, lij, guard)
                and _lcm(polys[i][0], lh, guard, fmask, shift) != lij
                and _lcm(polys[j][0], lh, guard, fmask, shift) != lij
            ):
                del pair_lcms[key]
                stats["pairs_skipped"] += 1
        for g, lg in new_pairs:
            i, j = (g, h)
            pair_lcms[(i, j)] = lg
            heapq.heappush(pairs, (okey(lg, blocks), i, j))
        active[:] = [g for g in active if not _divides(lh, polys[g][0], guard)] + [h]
        if len(active) > budget.max_basis:
            raise BudgetExceeded("Groebner basis size cap exceeded", dict(stats, basis_size=len(active)))

    def add(terms):
        if any(e & guard for e in terms):
            raise OverflowError("intermediate exponent exceeds packed exponent range")
        lt, lc = leading(terms)
        inv = inv_mod(lc, p)
        tail = {e: c * inv % p for e, c in terms.items() if e != lt}
        polys.append((lt, tail))
        if lt == 0:
            return True
        update(len(polys) - 1)
        return False

    for f in gens:
        lts, tails = current_reducers()
        r = kernels.reduce(f, lts, tails, blocks, guard, p, True)
        if r:
            if add(r):
                return [{0: 1}], stats
    while pairs:
        _, i, j = heapq.heappop(pairs)
        if pair_lcms.pop((i, j), None) is None:
            continue
        stats["pairs_reduced"] += 1
        if stats["pairs_reduced"] > budget.max_pairs:
            raise BudgetExceeded("Groebner pair cap exceeded", dict(stats, basis_size=len(active)))
        (li, ti), (lj, tj) = polys[i], polys[j]
        lg = _lcm(li, lj, guard, fmask, shift)
        s = kernels.axpy({t + lg - li: c for t, c in ti.items()}, tj, p - 1, lg - lj, p)
        if not s:
            continue
        lts, tails = current_reducers()
        r = kernels.reduce(s, lts, tails, blocks, guard, p, True)
        if r:
            if add(r):
                return [{0: 1}], stats
    # interreduce
    basis = [polys[i] for i in active]
    basis.sort(key=lambda lt_tail: okey(lt_tail[0], blocks))
    out = []
    for k, (lt, tail) in enumerate(basis):
        others = [b for m, b in enumerate(basis) if m != k]
        tail = kernels.reduce(tail, [b[0] for b in others], [b[1] for b in others], blocks, guard, p, True)
        terms = dict(tail)
        terms[lt] = 1
        out.append(terms)
    stats["basis_size"] = len(out)
    return out, stats


class Ideal:
    """Generators plus a lazily computed reduced Groebner basis."""

    def __init__(self, generators: Iterable[Poly], order=GREVLEX, ring: PolyRing | None = None,
                 budget: Budget | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RegistryMismatch(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.generators = [g for g in gens if g]
        self.order = as_order(order)
        self.budget = budget or DEFAULT_BUDGET
        self._basis = None
        self.stats: dict = {}

    def __repr__(self):
        return f"Ideal([{', '.join(map(str, self.generators))}], order={self.order})"

    @property
    def basis(self) -> list:
        if self._basis is None:
            terms, self.stats = _buchberger(
                self.ring, [g.terms for g in self.generators], self.order, self.budget
            )
            self._basis = [Poly(self.ring, t) for t in terms]
        return self._basis

    def groebner_basis(self) -> "Ideal":
        self.basis
        return self

    def _reducers(self):
        blocks = self.order.blocks(self.ring)
        okey = kernels.order_key
        lts, tails = [], []
        for g in self.basis:
            lt = max(g.terms, key=lambda t: okey(t, blocks))
            lts.append(lt)
            tails.append({e: c for e, c in g.terms.items() if e != lt})
        return lts, tails, blocks

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RegistryMismatch(f"{f.ring} vs {self.ring}")
        if not hasattr(self, "_red"):
            self._red = self._reducers()
        lts, tails, blocks = self._red
        r = self.ring
        return Poly(r, kernels.reduce(f.terms, lts, tails, blocks, r.guard, r.p, True))

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        b = self.basis
        return len(b) == 1 and b[0].is_constant() and bool(b[0])

    def leading_monomials(self) -> list:
        return [g.leading(self.order)[0] for g in self.basis]

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def with_order(self, order) -> "Ideal":
        return Ideal(self.generators, order, self.ring, self.budget)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.order, self.ring, self.budget)


# module-level API


def groebner_basis(I: Ideal) -> Ideal:
    return I.groebner_basis()


def normal_form(f: Poly, I: Ideal) -> Poly:
    return I.normal_form(f)


def s_polynomial(f: Poly, g: Poly, order=GREVLEX) -> Poly:
    r = f.ring
    lf, cf = f.leading(order)
    lg, cg = g.leading(order)
    L = _lcm(lf, lg, r.guard, r.fmask, r.bits - 1)
    a = f.mul_monomial(L - lf, inv_mod(cf, r.p))
    b = g.mul_monomial(L - lg, inv_mod(cg, r.p))
    return a - b


def bracket_power(I: Ideal, e: int = 1) -> Ideal:
    """``I^[p^e]``, generated by the ``p^e``-th powers of the generators."""
    return Ideal([g.frobenius_power(e) for g in I.generators], I.order, I.ring, I.budget)


def _fresh(ring: PolyRing, stem: str) -> str:
    k = 0
    while f"{stem}{k}" in ring.index:
        k += 1
    return f"{stem}{k}"


def _eliminate(gens: list, ext: PolyRing, base: PolyRing, k: int, budget: Budget) -> list:
    J = Ideal(gens, MonomialOrder("elim", k), ext, budget)
    limit = 1 << (base.nvars * base.bits)
    return [g.to_ring(base) for g in J.basis if all(e < limit for e in g.terms)]


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` as ``(t*I + (1-t)*J) ∩ k[x]``."""
    base = I.ring
    ext = base.extend([_fresh(base, "_t")])
    t = ext.var(ext.names[-1])
    gens = [t * g.to_ring(ext) for g in I.generators]
    gens += [(1 - t) * g.to_ring(ext) for g in J.generators]
    if not I.generators or not J.generators:
        return Ideal([], I.order, base, I.budget)
    return Ideal(_eliminate(gens, ext, base, 1, I.budget), I.order, base, I.budget)


def colon(I: Ideal, f: Poly) -> Ideal:
    """``(I : f) = {h : h*f in I}`` via ``I ∩ (f)`` divided by ``f``."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    cap = intersection(I, Ideal([f], I.order, I.ring, I.budget))
    return Ideal([h.divide_exact(f) for h in cap.generators], I.order, I.ring, I.budget)


def radical_member(f: Poly, I: Ideal) -> bool:
    """Rabinowitsch: ``f`` is in the radical iff ``1 ∈ I + (1 - y*f)``."""
    base = I.ring
    ext = base.extend([_fresh(base, "_y")])
    y = ext.var(ext.names[-1])
    gens = [g.to_ring(ext) for g in I.generators] + [1 - y * f.to_ring(ext)]
    return Ideal(gens, GREVLEX, ext, I.budget).is_unit()


def krull_dimension(I: Ideal) -> int:
    """Largest set of variables independent modulo the leading-term ideal."""
    if I.is_unit():
        raise EmptyScheme("ideal is the unit ideal")
    ring = I.ring
    n = ring.nvars
    lts = I.leading_monomials()
    b, fm = ring.bits, ring.fmask
    supports = []
    for e in lts:
        supports.append(frozenset(i for i in range(n) if (e >> (i * b)) & fm))
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def is_groebner(basis: list, order=GREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    if not basis:
        return True
    I = Ideal([], order, basis[0].ring)
    I._basis = list(basis)
    for f, g in combinations(basis, 2):
        if I.normal_form(s_polynomial(f, g, order)):
            return False
    return True
