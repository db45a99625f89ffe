from dataclasses import replace
from functools import reduce
from operator import mul

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobsplit.frobenius import (
    NotASplitting, SplittingElement, compose_stable, derive_along_subdivisor, frob5_derive,
    is_splitting, preserves_ideal, proposition_stable, splitting_value, stable_from_section,
    tau_antidiagonal, tau_for_fiber, tau_section, verify_compatible, verify_splitting,
    verify_wellposed,
)
from frobsplit.poly import PolyRing
from frobsplit.slgroup import SlnRing
from frobsplit.steinberg import fiber_ideal

SWEEP = [(2, p, (a,)) for p in (2, 3, 5) for a in range(p)]


def trailing_minors(R):
    n = R.n
    return [R.minor(range(n - i, n), range(n - i, n)) for i in range(1, n)]


def prod(polys, one):
    return reduce(mul, polys, one)


def test_tau_shape_sl2_p2():
    R = SlnRing(2, 2)
    x = R.x
    s = tau_for_fiber(R, [0])
    assert s.g == (x(1, 1) + x(2, 2)) * x(1, 1) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1) - 1)
    assert s.e == 1 and s.is_plain


@pytest.mark.parametrize("a", [0, 1, 2])
def test_tau_degree_sl2_p3(a):
    assert tau_for_fiber(SlnRing(2, 3), [a]).g.degree == 8


def test_tau_shape_sl3_p2():
    R = SlnRing(3, 2)
    factors = R.chars + R.corner_minors + [R.chart_relation]
    assert tau_for_fiber(R, [0, 0]).g == prod(factors, R.ring.one())
    assert tau_for_fiber(R, [0, 0]).g.degree == 1 + 2 + 1 + 2 + 3


@pytest.mark.parametrize("n,p,a", SWEEP + [(3, 2, (0, 0)), (3, 2, (1, 1))])
def test_tau_is_a_splitting(n, p, a):
    s = verify_splitting(tau_for_fiber(SlnRing(n, p), a))
    assert s.c is not None and s.c != 0
    assert splitting_value(s) == s.ring.one()


def test_degenerate_element_is_not_a_splitting():
    R = SlnRing(2, 3)
    s = SplittingElement(g=R.x(1, 1), e=1, f=R.chart_relation)
    with pytest.raises(NotASplitting) as info:
        verify_splitting(s)
    assert info.value.residue.is_zero()
    with pytest.raises(NotASplitting):
        verify_splitting(SplittingElement(g=R.ring.zero(), e=1, f=R.chart_relation))
    with pytest.raises(ValueError):
        SplittingElement(g=R.x(1, 1), e=0, f=R.chart_relation)


def test_nonconstant_value_is_rejected():
    R = SlnRing(2, 2)
    s = verify_splitting(tau_for_fiber(R, [1]))
    # one extra x11^2 factor pushes x11 through the Cartier map
    with pytest.raises(NotASplitting) as info:
        verify_splitting(replace(s, g=s.g * R.x(1, 1) ** 2, c=None))
    assert not info.value.residue.is_constant()


@pytest.mark.parametrize("n,p,a", [(2, 3, (1,)), (2, 5, (2,)), (2, 5, (4,))])
def test_normalization_rescales_by_inverse(n, p, a):
    R = SlnRing(n, p)
    base = verify_splitting(tau_for_fiber(R, a))
    for lam in range(1, p):
        scaled = replace(base, g=base.g.scale(lam), c=None)
        out = verify_splitting(scaled)
        assert out.c == lam
        assert out.g == base.g
        assert splitting_value(out).constant_value() == 1


def test_antidiagonal_minors_do_not_split():
    for n, p, a in SWEEP + [(3, 2, (0, 0))]:
        R = SlnRing(n, p)
        s = tau_antidiagonal(R, a)
        assert not is_splitting(s)
        assert splitting_value(s).is_zero()


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 2), st.data())
def test_cartier_scaling_law(p, e, data):
    r = PolyRing(["x", "y", "z"], p)
    terms = data.draw(st.dictionaries(st.tuples(*[st.integers(0, p**e * 2)] * 3), st.integers(1, p - 1),
                                      max_size=6))
    g = r.from_dict(terms)
    lam = data.draw(st.integers(1, p - 1))
    assert g.scale(pow(lam, p**e, p)).cartier(e) == g.cartier(e).scale(lam)


@pytest.mark.parametrize("n,p,a", SWEEP + [(3, 2, (1, 1))])
def test_tau_is_wellposed(n, p, a):
    assert verify_wellposed(tau_for_fiber(SlnRing(n, p), a))


def test_wellposed_examples():
    R = SlnRing(2, 2)
    f = R.chart_relation
    assert not verify_wellposed(SplittingElement(g=R.ring.one(), e=1, f=f))
    assert verify_wellposed(SplittingElement(g=f * (R.x(1, 2) + 1), e=1, f=f))
    R3 = SlnRing(2, 3)
    f3 = R3.chart_relation
    assert verify_wellposed(SplittingElement(g=f3**2 * R3.x(2, 1), e=1, f=f3))
    assert not verify_wellposed(SplittingElement(g=f3 * R3.x(2, 1), e=1, f=f3))


@pytest.mark.parametrize("n,p,a", SWEEP)
def test_tau_compatible_with_its_fiber_and_minors(n, p, a):
    R = SlnRing(n, p)
    s = verify_splitting(tau_for_fiber(R, a))
    rep = verify_compatible(s, fiber_ideal(R, a).ideal)
    assert rep.passed and all(res == "0" for _, res in rep.residues)
    for m in R.corner_minors:
        assert verify_compatible(s, [m, R.chart_relation]).passed
    assert verify_compatible(s, [R.chart_relation]).passed


@pytest.mark.parametrize("n,p,a", SWEEP)
def test_tau_not_compatible_with_other_fibers(n, p, a):
    R = SlnRing(n, p)
    s = verify_splitting(tau_for_fiber(R, a))
    for b in range(p):
        if (b,) == a:
            continue
        rep = verify_compatible(s, fiber_ideal(R, (b,)).ideal)
        assert not rep.passed
        assert any(res != "0" for _, res in rep.residues)


def test_sl3_compatibility():
    R = SlnRing(3, 2)
    for a in [(0, 0), (1, 1)]:
        s = verify_splitting(tau_for_fiber(R, a))
        assert verify_compatible(s, fiber_ideal(R, a).ideal).passed
        for m in R.corner_minors:
            assert verify_compatible(s, [m, R.chart_relation]).passed
    assert not verify_compatible(verify_splitting(tau_for_fiber(R, (0, 0))), fiber_ideal(R, (1, 0)).ideal)


@pytest.mark.parametrize("n,p", [(2, 3), (2, 5), (3, 2)])
def test_trailing_minors_split_but_miss_corner_divisors(n, p):
    R = SlnRing(n, p)
    a = [0] * (n - 1)
    s = verify_splitting(tau_for_fiber(R, a, minors=trailing_minors(R)))
    assert verify_compatible(s, fiber_ideal(R, a).ideal).passed
    for t in trailing_minors(R):
        assert verify_compatible(s, [t, R.chart_relation]).passed
    for m in R.corner_minors:
        assert not verify_compatible(s, [m, R.chart_relation]).passed


def test_dropping_a_minor_loses_the_splitting():
    R = SlnRing(2, 3)
    assert not is_splitting(tau_for_fiber(R, [1], minors=[]))


def test_support_condition_rejects_section_vanishing_on_subscheme():
    R = SlnRing(2, 3)
    f = R.chart_relation
    s = verify_splitting(stable_from_section(f, tau_section(R, [1])))
    m = R.corner_minors[0]
    rep = verify_compatible(s, [m, f])
    assert not rep.support_ok and not rep.passed


# stable calculus


def _stable(R, a=None):
    a = [0] * (R.n - 1) if a is None else a
    return verify_splitting(stable_from_section(R.chart_relation, tau_section(R, a)))


def test_stable_from_section_contract():
    for n, p in [(2, 2), (2, 3), (2, 5), (3, 2)]:
        R = SlnRing(n, p)
        s = _stable(R)
        assert s.g == R.chart_relation ** (p - 1)
        assert splitting_value(s) == R.ring.one()
        assert not s.is_plain


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (2, 5), (3, 2)])
def test_derive_along_subdivisor(n, p):
    R = SlnRing(n, p)
    s = _stable(R)
    assert derive_along_subdivisor(s, s.sigma).g == s.g
    plain = derive_along_subdivisor(s, R.ring.one())
    assert plain.is_plain
    assert is_splitting(plain)
    for m in R.corner_minors:
        for k in range(p):
            d = derive_along_subdivisor(s, m**k)
            assert d.sigma == m**k
            assert (d.g * d.sigma) == (s.g * s.sigma)
            assert is_splitting(d)
    with pytest.raises(ValueError):
        derive_along_subdivisor(s, R.x(1, 2))


def _compose_instances():
    out = []
    for n, p in [(2, 2), (2, 3), (2, 5), (3, 2)]:
        R = SlnRing(n, p)
        st_ = _stable(R)
        plain = verify_splitting(tau_for_fiber(R, [1] * (n - 1)))
        m = R.corner_minors
        out.append((plain, plain))
        out.append((derive_along_subdivisor(st_, m[0]), derive_along_subdivisor(st_, m[-1])))
        out.append((plain, derive_along_subdivisor(st_, m[0])))
    return out


@pytest.mark.parametrize("k", range(12))
def test_compose_stable_contract(k):
    s1, s2 = _compose_instances()[k]
    out = compose_stable(s1, s2)
    assert out.e == s1.e + s2.e
    assert out.sigma == s1.sigma * s2.sigma
    assert splitting_value(out) == out.ring.one()
    # plain composites still descend to the chart
    if out.is_plain and out.ring.nvars == 4:
        assert verify_wellposed(out)


def test_compose_three_fold_degree():
    R = SlnRing(2, 3)
    plain = verify_splitting(tau_for_fiber(R, [2]))
    out = compose_stable(compose_stable(plain, plain), plain)
    assert out.e == 3
    assert splitting_value(out) == R.ring.one()
    assert verify_compatible(out, fiber_ideal(R, [2]).ideal).passed


def test_compose_rejects_mismatched_charts():
    s1 = verify_splitting(tau_for_fiber(SlnRing(2, 3), [0]))
    R = SlnRing(2, 3)
    other = SplittingElement(g=s1.g, e=1, f=R.chart_relation + R.x(1, 1))
    with pytest.raises(ValueError):
        compose_stable(s1, other)


def test_compose_rejects_broken_contract():
    R = SlnRing(2, 3)
    plain = verify_splitting(tau_for_fiber(R, [0]))
    bad = replace(plain, g=R.x(1, 1))
    with pytest.raises(NotASplitting):
        compose_stable(plain, bad)


@pytest.mark.parametrize("n,p,a", [(2, 2, (0,)), (2, 2, (1,)), (2, 3, (0,)), (2, 3, (1,)), (2, 3, (2,))])
def test_proposition_stable(n, p, a):
    R = SlnRing(n, p)
    s = proposition_stable(R, a)
    assert s.e == 1
    assert s.sigma == prod([m ** (p - 1) for m in R.corner_minors], R.ring.one())
    assert splitting_value(s) == R.ring.one()
    assert verify_compatible(s, fiber_ideal(R, a).ideal).passed
    J = fiber_ideal(R, a).ideal
    assert preserves_ideal(s, J, [R.ring.one()] + R.ring.gens())


def test_proposition_stable_sl3():
    R = SlnRing(3, 2)
    s = proposition_stable(R, (1, 1))
    assert verify_compatible(s, fiber_ideal(R, (1, 1)).ideal).passed


def test_frob5_degenerate_and_mismatch():
    R = SlnRing(2, 3)
    s = _stable(R, [1])
    assert frob5_derive(s, R.ring.one()) is s
    with pytest.raises(ValueError):
        frob5_derive(s, R.x(1, 1), R.ring.one())
    with pytest.raises(ValueError):
        frob5_derive(compose_stable(s, s), R.x(1, 1))


def test_frob5_along_a_minor():
    R = SlnRing(2, 3)
    s = _stable(R, [1])
    chi = R.chars[0] - 1
    m = R.corner_minors[0]
    out = frob5_derive(s, m, chi**2)
    assert out.sigma == chi**2
    assert verify_compatible(out, [m, R.chart_relation]).passed


def test_frob5_rejects_non_compatible_divisor():
    # trailing minor x22 in place of x11 still splits, but frob5 along x11 must fail
    R = SlnRing(2, 3)
    f = R.chart_relation
    sec = tau_section(R, [1], minors=trailing_minors(R))
    s = verify_splitting(stable_from_section(f, sec))
    with pytest.raises(ValueError):
        frob5_derive(s, R.corner_minors[0], (R.chars[0] - 1) ** 2)
    out = frob5_derive(s, R.chars[0] - 1, trailing_minors(R)[0] ** 2)
    assert not verify_compatible(out, [R.corner_minors[0], f]).passed
    assert verify_compatible(out, fiber_ideal(R, [1]).ideal).passed


def test_compatibility_implies_no_nilpotents_found():
    from frobsplit.steinberg import reducedness_sample

    R = SlnRing(2, 5)
    for a in range(5):
        s = verify_splitting(tau_for_fiber(R, [a]))
        J = fiber_ideal(R, [a])
        if verify_compatible(s, J.ideal).passed:
            assert reducedness_sample(J, trials=60, seed=a).violations == 0


def test_preserves_ideal_detects_failure():
    R = SlnRing(2, 3)
    s = verify_splitting(tau_for_fiber(R, [0]))
    good = fiber_ideal(R, [0]).ideal
    bad = fiber_ideal(R, [1]).ideal
    probes = [R.ring.one()] + R.ring.gens()
    assert preserves_ideal(s, good, probes)
    assert not preserves_ideal(s, bad, probes + [g * h for g in R.ring.gens() for h in R.ring.gens()])

