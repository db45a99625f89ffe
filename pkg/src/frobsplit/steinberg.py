"""Steinberg fibers as explicit ideals in the ambient n^2-variable ring."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Budget, Ideal, krull_dimension, radical_member
from .poly import Poly
from .slgroup import SlnRing, companion_point, unipotent_coordinates

DEFAULT_SEED = 42


@dataclass
class FiberSpec:
    """The fiber of the Steinberg map at ``a``: ``(det-1, chi_1-a_1, ..., chi_(n-1)-a_(n-1))``."""

    R: SlnRing
    a: tuple
    ideal: Ideal

    @property
    def generators(self) -> list:
        return self.ideal.generators

    @property
    def n(self) -> int:
        return self.R.n

    @property
    def p(self) -> int:
        return self.R.p


def fiber_ideal(R: SlnRing, a: Sequence[int], budget: Budget | None = None) -> FiberSpec:
    a = tuple(int(v) % R.p for v in a)
    if len(a) != R.n - 1:
        raise ValueError(f"expected {R.n - 1} fiber coordinates, got {len(a)}")
    gens = [R.chart_relation] + [chi - ai for chi, ai in zip(R.chars, a)]
    return FiberSpec(R, a, Ideal(gens, ring=R.ring, budget=budget))


def unipotent_fiber_coordinates(R: SlnRing) -> tuple:
    """``chi(identity)``: binomial coefficients mod p."""
    return tuple(unipotent_coordinates(R.n, R.p))


def fiber_dimension(F: FiberSpec) -> int:
    return krull_dimension(F.ideal)


def codimension(F: FiberSpec) -> int:
    return F.R.ring.nvars - fiber_dimension(F)


def is_complete_intersection(F: FiberSpec) -> bool:
    """Generator count equals ambient codimension."""
    return len(F.generators) == codimension(F)


def contains_point(F: FiberSpec, g) -> bool:
    return all(F.R.evaluate(h, g) == 0 for h in F.generators)


def companion_in_fiber(F: FiberSpec) -> bool:
    return contains_point(F, companion_point(F.R, F.a))


@dataclass
class ReducednessReport:
    trials: int
    seed: int
    hits: int = 0  # samples with h^p in J, where the check is non-vacuous
    violations: int = 0
    probes: int = 0
    probe_failures: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.probe_failures == 0

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "hits": self.hits,
            "violations": self.violations,
            "probes": self.probes,
            "probe_failures": self.probe_failures,
        }


def random_poly(ring, rng: random.Random, max_degree: int = 2, density: float = 0.5) -> Poly:
    """Random polynomial of total degree at most ``max_degree``."""
    from itertools import combinations_with_replacement

    n, p = ring.nvars, ring.p
    terms = {}
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            if rng.random() < density:
                exps = [0] * n
                for i in combo:
                    exps[i] += 1
                terms[tuple(exps)] = rng.randrange(p)
    return ring.from_dict(terms)


def reducedness_sample(ideal: Ideal, trials: int = 200, seed: int = DEFAULT_SEED,
                       max_degree: int = 2) -> ReducednessReport:
    """Look for nilpotents: random ``h`` with ``h^p`` in J must lie in J.

    Generator pair products are also run through the radical test as a
    cross-check of the Rabinowitsch path against plain membership.
    """
    if isinstance(ideal, FiberSpec):
        ideal = ideal.ideal
    ring = ideal.ring
    p = ring.p
    rng = random.Random(seed)
    rep = ReducednessReport(trials=trials, seed=seed)
    gens = ideal.generators
    for _ in range(trials):
        h = random_poly(ring, rng, max_degree)
        if ideal.contains(h**p):
            rep.hits += 1
            if not ideal.contains(h):
                rep.violations += 1
                rep.failures.append(str(h))
    for i, g1 in enumerate(gens):
        for g2 in gens[i:]:
            rep.probes += 1
            if not radical_member(g1 * g2, ideal):
                rep.probe_failures += 1
                rep.failures.append(f"radical probe {g1} * {g2}")
    return rep
