"""Acceptance criteria, one check per criterion.

Run ``pytest -s tests/test_acceptance.py`` (or execute this file directly) to
see a PASS/FAIL line for each criterion. Every check is exact.
"""
import random
import sys
import time
from functools import reduce
from operator import mul

import pytest

from frobsplit.frobenius import (
    compose_stable, derive_along_subdivisor, is_splitting, proposition_stable, splitting_value,
    stable_from_section, tau_for_fiber, tau_section, verify_compatible, verify_splitting,
)
from frobsplit.groebner import Ideal, bracket_power, colon
from frobsplit.poly import PolyRing
from frobsplit.slgroup import (
    MatrixPoint, SlnRing, centralizer_dimension, character_values, companion_point,
    exterior_power_matrix, trace,
)
from frobsplit.steinberg import (
    codimension, fiber_dimension, fiber_ideal, reducedness_sample, unipotent_fiber_coordinates,
)
from oracles import grevlex_key, lex_key, naive_reduce, s_pairs_reduce_to_zero, to_tuples

SWEEP_NP = [(2, 2), (2, 3), (2, 5)]
SWEEP = [(n, p, (a,)) for n, p in SWEEP_NP for a in range(p)]
PROPERTY_CASES = 200

CRITERIA = {}


def criterion(num, title):
    def deco(fn):
        CRITERIA[num] = (title, fn)
        return fn
    return deco


def _elapsed(t0):
    return time.perf_counter() - t0


@criterion(1, "splitting identity over the SL_2 sweep")
def splitting_identity():
    t0 = time.perf_counter()
    cs = []
    for n, p, a in SWEEP:
        s = verify_splitting(tau_for_fiber(SlnRing(n, p), a))
        if splitting_value(s) != s.ring.one():
            return False, f"value at {n, p, a} is {splitting_value(s)}"
        cs.append(s.c)
    dt = _elapsed(t0)
    return dt < 10, f"{len(SWEEP)} fibers, constants {sorted(set(cs))}, {dt:.2f}s (limit 10s)"


@criterion(2, "compatibility with the fiber, other fibers as negative control")
def fiber_compatibility():
    t0 = time.perf_counter()
    pos = neg = 0
    for n, p, a in SWEEP:
        R = SlnRing(n, p)
        s = verify_splitting(tau_for_fiber(R, a))
        if not verify_compatible(s, fiber_ideal(R, a).ideal).passed:
            return False, f"not compatible at {n, p, a}"
        pos += 1
        for b in range(p):
            if (b,) == a:
                continue
            rep = verify_compatible(s, fiber_ideal(R, (b,)).ideal)
            if rep.passed or all(res == "0" for _, res in rep.residues):
                return False, f"tau{a} unexpectedly compatible with fiber {(b,)} for p={p}"
            neg += 1
    dt = _elapsed(t0)
    return dt < 30, f"{pos} positive, {neg} negative pairs, {dt:.2f}s (limit 30s)"


@criterion(3, "compatibility with the minor divisors")
def minor_compatibility():
    count = 0
    for n, p, a in SWEEP:
        R = SlnRing(n, p)
        s = verify_splitting(tau_for_fiber(R, a))
        for i, m in enumerate(R.corner_minors, 1):
            if not verify_compatible(s, [m, R.chart_relation]).passed:
                return False, f"(m_{i}, det-1) fails at {n, p, a}"
            count += 1
    return True, f"{count} (fiber, minor) checks"


@criterion(4, "degree-1 stable splitting along (p-1) * prod m_i compatible with the fiber")
def stable_reproduction():
    count = 0
    for p in (2, 3):
        R = SlnRing(2, p)
        for a in range(p):
            s = proposition_stable(R, (a,))
            expected = reduce(mul, [m ** (p - 1) for m in R.corner_minors], R.ring.one())
            ok = (s.e == 1 and s.sigma == expected and splitting_value(s) == R.ring.one()
                  and verify_compatible(s, fiber_ideal(R, (a,)).ideal).passed)
            if not ok:
                return False, f"p={p}, a={a}"
            count += 1
    return True, f"{count} fibers"


def _stable_instances():
    out = []
    for n, p in [(2, 2), (2, 3), (2, 5), (3, 2)]:
        R = SlnRing(n, p)
        for a in range(min(p, 2)):
            av = [a] * (n - 1)
            out.append((R, verify_splitting(stable_from_section(R.chart_relation, tau_section(R, av))),
                        verify_splitting(tau_for_fiber(R, av))))
    return out


@criterion(5, "stable splitting calculus re-verifies its contracts")
def stable_calculus():
    derived = composed = 0
    for R, st, plain in _stable_instances():
        subs = [R.ring.one(), st.sigma] + [m for m in R.corner_minors]
        pieces = []
        for sub in subs:
            d = derive_along_subdivisor(st, sub)
            if d.sigma != sub or splitting_value(d) != R.ring.one():
                return False, f"derive along {sub} broke the contract"
            derived += 1
            pieces.append(d)
        for s1, s2 in [(plain, plain), (pieces[2], pieces[-1]), (plain, pieces[2])]:
            out = compose_stable(s1, s2)
            if (out.e != s1.e + s2.e or out.sigma != s1.sigma * s2.sigma
                    or splitting_value(out) != R.ring.one()):
                return False, f"compose {s1.label} / {s2.label}"
            composed += 1
    ok = derived >= 10 and composed >= 10
    return ok, f"{derived} derived, {composed} composed instances"


@criterion(6, "complete-intersection shadow: codim = n = #generators, dim = n^2 - n")
def complete_intersection():
    fibers = [(n, p, a) for n, p, a in SWEEP]
    R3 = SlnRing(3, 2)
    fibers += [(3, 2, unipotent_fiber_coordinates(R3)), (3, 2, (0, 0))]
    t0 = time.perf_counter()
    for n, p, a in fibers:
        F = fiber_ideal(SlnRing(n, p), a)
        dim = fiber_dimension(F)
        if not (codimension(F) == n == len(F.generators) and dim == n * n - n):
            return False, f"{n, p, a}: dim {dim}, codim {codimension(F)}, {len(F.generators)} generators"
    dt = _elapsed(t0)
    return dt < 600, f"{len(fibers)} fibers incl. SL_3 unipotent (1,1), {dt:.2f}s"


@criterion(7, "reducedness sampling, 200 trials, seed 42")
def reducedness():
    fibers = SWEEP + [(3, 2, (1, 1))]
    hits = 0
    for n, p, a in fibers:
        rep = reducedness_sample(fiber_ideal(SlnRing(n, p), a), trials=200, seed=42)
        if rep.violations or rep.probe_failures:
            return False, f"{n, p, a}: {rep.as_dict()}"
        hits += rep.hits
    return True, f"{len(fibers)} fibers, 0 violations, {hits} non-vacuous samples"


@criterion(8, "Steinberg map oracles")
def steinberg_oracles():
    configs = [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (3, 5)]
    for n, p in configs:
        R = SlnRing(n, p)
        rng = random.Random(100 * n + p)
        for _ in range(100):
            g = MatrixPoint.random(n, p, rng)
            for i in range(1, n):
                if R.evaluate(R.chars[i - 1], g) != trace(exterior_power_matrix(g, i), p):
                    return False, f"chi_{i} != trace at {g.rows()}"
        for _ in range(50):
            a = [rng.randrange(p) for _ in range(n - 1)]
            c = companion_point(R, a)
            if character_values(R, c) != a or centralizer_dimension(c) != n:
                return False, f"companion contract fails at a={a}"
        if centralizer_dimension(R.identity()) != n * n:
            return False, f"identity centralizer for n={n}"
    return True, f"{len(configs)} configurations, 100 points and 50 companions each"


# criterion 9 property suites


def _random_poly(rng, r, maxexp=2, terms=(1, 4)):
    d = {}
    for _ in range(rng.randint(*terms)):
        d[tuple(rng.randrange(maxexp + 1) for _ in range(r.nvars))] = rng.randrange(1, r.p)
    return r.from_dict(d)


def _cartier_linearity(rng):
    p = rng.choice([2, 3, 5, 7])
    e = rng.choice([1, 2]) if p <= 3 else 1
    r = PolyRing(["x", "y", "z"], p)
    a = _random_poly(rng, r, 2, (1, 2))
    b = _random_poly(rng, r, p**e * 2, (1, 6))
    c = _random_poly(rng, r, p**e * 2, (1, 6))
    lam = rng.randrange(1, p)
    return ((a ** (p**e) * b).cartier(e) == a * b.cartier(e)
            and (b + c).cartier(e) == b.cartier(e) + c.cartier(e)
            and b.scale(lam).cartier(e) == b.cartier(e).scale(lam))


def _spair_zero(rng):
    p = rng.choice([2, 3, 5, 7])
    nv = rng.choice([2, 3])
    r = PolyRing(["a", "b", "c"][:nv], p)
    gens = [_random_poly(rng, r, 2, (2, 4)) for _ in range(rng.choice([2, 3]))]
    order, key = rng.choice([("grevlex", grevlex_key), ("lex", lex_key)])
    basis = Ideal(gens, order).basis
    tb = [to_tuples(g) for g in basis]
    return (s_pairs_reduce_to_zero(tb, p, key)
            and all(not naive_reduce(to_tuples(g), tb, p, key) for g in gens))


def _nf_properties(rng):
    p = rng.choice([2, 3, 5, 7])
    r = PolyRing(["a", "b", "c"], p)
    I = Ideal([_random_poly(rng, r, 2, (2, 4)) for _ in range(2)])
    f, g = _random_poly(rng, r, 3, (1, 6)), _random_poly(rng, r, 3, (1, 6))
    lam = rng.randrange(p)
    nf = I.normal_form
    lts = I.leading_monomials()
    irreducible = not any(all(x <= y for x, y in zip(r.unpack(m), r.unpack(t)))
                          for m in lts for t in nf(f).terms)
    return (nf(nf(f)) == nf(f) and nf(f + g.scale(lam)) == nf(f) + nf(g).scale(lam)
            and I.contains(f - nf(f)) and irreducible)


def _generating_set_independence(rng):
    p = rng.choice([2, 3, 5])
    r = PolyRing(["a", "b"], p)
    g1, g2 = _random_poly(rng, r, 2, (1, 3)), _random_poly(rng, r, 2, (1, 3))
    h, k = _random_poly(rng, r, 1, (1, 2)), _random_poly(rng, r, 1, (1, 2))
    I = Ideal([g1, g2])
    I2 = Ideal([g1 + h * g2, g2, k * g1])
    f = _random_poly(rng, r, 1, (1, 2))
    return (I.equals(I2) and bracket_power(I, 1).equals(bracket_power(I2, 1))
            and colon(I, f).equals(colon(I2, f)))


PROPERTIES = [
    ("Cartier p^-e linearity", _cartier_linearity),
    ("Buchberger S-pair zero reduction", _spair_zero),
    ("normal form idempotence and linearity", _nf_properties),
    ("colon and bracket power independent of generators", _generating_set_independence),
]


@criterion(9, f"kernel property suites, {PROPERTY_CASES} seeded cases each")
def kernel_properties():
    parts = []
    ok = True
    for name, prop in PROPERTIES:
        fails = [seed for seed in range(PROPERTY_CASES) if not prop(random.Random(seed))]
        ok = ok and not fails
        parts.append(f"{name}: {PROPERTY_CASES - len(fails)}/{PROPERTY_CASES}")
        if fails:
            parts[-1] += f" (first failing seed {fails[0]})"
    return ok, "; ".join(parts)


def _line(num):
    title, fn = CRITERIA[num]
    ok, detail = fn()
    return ok, f"criterion {num} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, line = _line(num)
    print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(num) for num in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
