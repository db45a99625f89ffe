"""Frobenius splittings of the chart SL_n = V(det - 1) as ambient polynomials.

A :class:`SplittingElement` ``(g, e, f, sigma)`` stands for the map
``r -> cartier(g * r, e) mod (f)`` on ``F^e_* O(D)`` with ``D = div(sigma)``.
It is a (stable) Frobenius splitting when ``cartier(g * sigma, e) = 1 mod (f)``
and descends to the hypersurface when ``g`` lies in ``(f^[p^e] : f)``.
Compatibility with ``V(J)`` for an ideal ``J`` containing ``f`` is Fedder's
test ``g * J ⊆ J^[p^e]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce as _fold
from operator import mul
from typing import Sequence

from .ffield import inv_mod
from .groebner import Budget, Ideal, bracket_power, colon, radical_member
from .poly import Poly
from .slgroup import SlnRing, antidiagonal_minor


class NotASplitting(ValueError):
    """The Cartier evaluation is not a nonzero constant modulo the chart."""

    def __init__(self, message, residue: Poly):
        super().__init__(f"{message}: {residue}")
        self.residue = residue


@dataclass(frozen=True)
class SplittingElement:
    g: Poly
    e: int
    f: Poly
    sigma: Poly | None = None
    c: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("splitting degree must be >= 1")
        if self.sigma is None:
            object.__setattr__(self, "sigma", self.g.ring.one())
        if self.g.ring != self.f.ring or self.sigma.ring != self.f.ring:
            raise ValueError("element, chart relation and section must share a ring")

    @property
    def ring(self):
        return self.g.ring

    @property
    def p(self) -> int:
        return self.g.ring.p

    @property
    def is_plain(self) -> bool:
        """Splitting along the zero divisor."""
        s = self.sigma
        return s.is_constant() and bool(s)


_CHART_CACHE: dict = {}


def chart_ideal(f: Poly) -> Ideal:
    I = _CHART_CACHE.get(f)
    if I is None:
        I = _CHART_CACHE[f] = Ideal([f])
    return I


def splitting_value(s: SplittingElement) -> Poly:
    """``cartier(g * sigma, e)`` reduced modulo the chart relation."""
    return chart_ideal(s.f).normal_form((s.g * s.sigma).cartier(s.e))


def verify_splitting(s: SplittingElement) -> SplittingElement:
    """Check the splitting identity and rescale ``g`` so it holds with value 1.

    Cartier passes F_p coefficients through unchanged, so multiplying ``g`` by
    ``c^-1`` divides the value by ``c``.
    """
    if s.g.is_zero():
        raise NotASplitting("zero element", s.g)
    val = splitting_value(s)
    if val.is_zero():
        raise NotASplitting("Cartier evaluation vanishes modulo the chart", val)
    if not val.is_constant():
        raise NotASplitting("Cartier evaluation is not constant modulo the chart", val)
    c = val.constant_value()
    g = s.g.scale(inv_mod(c, s.p))
    c_total = c if s.c is None else s.c * c % s.p
    return replace(s, g=g, c=c_total)


def is_splitting(s: SplittingElement) -> bool:
    try:
        verify_splitting(s)
    except NotASplitting:
        return False
    return True


def verify_wellposed(s: SplittingElement, budget: Budget | None = None) -> bool:
    """``g ∈ (f^[p^e] : f)``, so the map preserves ``(f)`` and descends to the chart."""
    base = Ideal([s.f], ring=s.ring, budget=budget)
    return colon(bracket_power(base, s.e), s.f).contains(s.g)


@dataclass
class CompatibilityReport:
    residues: list = field(default_factory=list)  # (generator text, residue text)
    support_ok: bool = True
    passed: bool = False

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "support_ok": self.support_ok,
            "residues": [{"generator": g, "residue": r} for g, r in self.residues],
        }

    def __bool__(self):
        return self.passed


def verify_compatible(s: SplittingElement, J: Ideal | Sequence[Poly],
                      budget: Budget | None = None) -> CompatibilityReport:
    """Fedder-form compatibility of ``s`` with ``V(J)``.

    Passes iff ``g * h ∈ J^[p^e]`` for every generator ``h`` (``f`` is added to J
    when missing) and, for a nontrivial section, ``sigma`` does not vanish on
    all of ``V(J)`` (checked as ``sigma ∉ sqrt(J)``).
    """
    if not isinstance(J, Ideal):
        J = Ideal(list(J), ring=s.ring, budget=budget)
    gens = list(J.generators)
    if not J.contains(s.f):
        gens.append(s.f)
        J = Ideal(gens, J.order, J.ring, budget or J.budget)
    target = bracket_power(J, s.e)
    rep = CompatibilityReport()
    ok = True
    for h in gens:
        r = target.normal_form(s.g * h)
        rep.residues.append((str(h), str(r)))
        ok = ok and r.is_zero()
    if not s.is_plain:
        rep.support_ok = not radical_member(s.sigma, J)
    rep.passed = ok and rep.support_ok
    return rep


def preserves_ideal(s: SplittingElement, I: Ideal, multipliers: Sequence[Poly]) -> bool:
    """Directly check ``cartier(g * a * m) ∈ I`` for each generator ``a`` and multiplier ``m``."""
    for a in I.generators:
        for m in multipliers:
            if not I.contains((s.g * a * m).cartier(s.e)):
                return False
    return True


# constructors


def tau_section(R: SlnRing, a: Sequence[int], minors: Sequence[Poly] | None = None) -> Poly:
    """``prod (chi_i - a_i)^(p-1) * prod m_i^(p-1)``, the section without the chart factor."""
    p = R.p
    a = [int(v) % p for v in a]
    if len(a) != R.n - 1:
        raise ValueError(f"expected {R.n - 1} fiber coordinates, got {len(a)}")
    minors = R.corner_minors if minors is None else minors
    factors = [chi - ai for chi, ai in zip(R.chars, a)] + list(minors)
    return _fold(mul, [h ** (p - 1) for h in factors], R.ring.one())


def tau_for_fiber(R: SlnRing, a: Sequence[int], minors: Sequence[Poly] | None = None) -> SplittingElement:
    """Splitting section for the fiber at ``a``, times ``(det-1)^(p-1)`` for the chart."""
    f = R.chart_relation
    g = tau_section(R, a, minors) * f ** (R.p - 1)
    a = tuple(int(v) % R.p for v in a)
    return SplittingElement(g=g, e=1, f=f, label=f"tau{a}")


def tau_antidiagonal(R: SlnRing, a: Sequence[int]) -> SplittingElement:
    """Negative control: same formula with the antidiagonal minors."""
    minors = [antidiagonal_minor(R, i) for i in range(1, R.n)]
    s = tau_for_fiber(R, a, minors)
    return replace(s, label=s.label + "-antidiagonal")


def stable_from_section(f: Poly, h: Poly, label: str = "") -> SplittingElement:
    """Degree-1 stable splitting along ``div(h)`` from a splitting section ``h``.

    The map is evaluation-at-1 of the chart's base map: element ``f^(p-1)``,
    section ``h``.
    """
    p = f.ring.p
    return SplittingElement(g=f ** (p - 1), e=1, f=f, sigma=h, label=label)


# calculus


def derive_along_subdivisor(s: SplittingElement, sigma_prime: Poly) -> SplittingElement:
    """Restrict a stable splitting along ``D`` to ``D' <= D`` (``sigma_prime | sigma``)."""
    quo, rem = s.sigma.divmod_single(sigma_prime)
    if rem:
        raise ValueError("sub-divisor section does not divide the section")
    return replace(s, g=s.g * quo, sigma=sigma_prime, label=s.label + "|sub")


def compose_stable(s1: SplittingElement, s2: SplittingElement) -> SplittingElement:
    """Splitting along ``D1 + D2`` of degree ``e1 + e2``.

    ``h -> Tr_e2(g2 * Tr_e1(g1 * h)) = Tr_(e1+e2)(g2^(p^e1) * g1 * h)`` splits
    along ``D1 + p^e1 D2``; restricting to ``D1 + D2`` multiplies by
    ``sigma2^(p^e1 - 1)``.
    """
    if s1.f != s2.f:
        raise ValueError("compose_stable needs a common chart relation")
    q1 = s1.p**s1.e
    g = s2.g.frobenius_power(s1.e) * s1.g * s2.sigma ** (q1 - 1)
    out = SplittingElement(
        g=g, e=s1.e + s2.e, f=s1.f, sigma=s1.sigma * s2.sigma,
        label=f"({s1.label})*({s2.label})",
    )
    return verify_splitting(out)


def frob5_derive(s: SplittingElement, sigma_D: Poly, sigma_Dprime: Poly | None = None) -> SplittingElement:
    """From a degree-1 splitting along ``(p-1)D + D'``, the splitting along ``D'``
    with element ``g * sigma_D^(p-1)``, which compatibly splits ``V(sigma_D)``.

    Raises ``ValueError`` if ``sigma != sigma_D^(p-1) * sigma_D'``, and
    :class:`NotASplitting` if the result fails its post-checks.
    """
    if s.e != 1:
        raise ValueError("frob5_derive needs a degree-1 splitting")
    ring = s.ring
    p = s.p
    if sigma_Dprime is None:
        sigma_Dprime = ring.one()
    if sigma_D.is_constant():
        return s
    if sigma_D ** (p - 1) * sigma_Dprime != s.sigma:
        raise ValueError("section does not factor as sigma_D^(p-1) * sigma_D'")
    out = verify_splitting(replace(
        s, g=s.g * sigma_D ** (p - 1), sigma=sigma_Dprime, label=s.label + "|frob5",
    ))
    I = Ideal([sigma_D, s.f], ring=ring)
    if not verify_compatible(out, I).passed:
        raise NotASplitting("derived splitting is not compatible with V(sigma_D)", sigma_D)
    probes = [ring.one()] + ring.gens()
    if not preserves_ideal(out, I, probes):
        raise NotASplitting("derived splitting does not preserve (sigma_D)", sigma_D)
    return out


def proposition_stable(R: SlnRing, a: Sequence[int]) -> SplittingElement:
    """Degree-1 stable splitting along ``(p-1) * div(prod m_i)`` compatible with the fiber.

    Built from the section of :func:`tau_section` via :func:`stable_from_section`
    and :func:`frob5_derive` with ``D = div(prod (chi_i - a_i))``.
    """
    p = R.p
    a = [int(v) % p for v in a]
    f = R.chart_relation
    s0 = verify_splitting(stable_from_section(f, tau_section(R, a), label=f"stable{tuple(a)}"))
    sigma_D = _fold(mul, [chi - ai for chi, ai in zip(R.chars, a)], R.ring.one())
    sigma_Dp = _fold(mul, [m ** (p - 1) for m in R.corner_minors], R.ring.one())
    return frob5_derive(s0, sigma_D, sigma_Dp)
