import itertools
import random
from fractions import Fraction

import pytest

from valforge.algebra import Element, PolynomialRing
from valforge.coefficients import QQ
from valforge.orderkeys import LexOrder, OrderKey
from valforge.tropical import (PreconditionError, Subplane, edge_on_roof,
                               is_prop, newton_polytope, primitive_pairs,
                               saturation_check, tropical_valuation)
from valforge.valuations import injectivity_check, ring_monomials


def ring3():
    return PolynomialRing(QQ, ["x", "y", "z"], LexOrder(3))


def ring2():
    return PolynomialRing(QQ, ["x", "y"], LexOrder(2))


# ---------------------------------------------------------------------------
# Newton polytopes


def test_newton_polytope_three_term():
    R = ring3()
    x, y, z = R.gens()
    np_ = newton_polytope(z - y**3 + x**2)
    assert np_.vertices == [(0, 0, 1), (0, 3, 0), (2, 0, 0)]


def test_newton_polytope_univariate():
    R = PolynomialRing(QQ, ["x"], LexOrder(1))
    assert newton_polytope(R.gen(0) + 1).vertices == [(0,), (1,)]


def test_newton_polytope_interior_point():
    R = ring2()
    x, y = R.gens()
    # (2,1) is the midpoint of (3,0) and (1,2): not a vertex
    f = x**3 + x * y**2 + x**2 * y
    assert newton_polytope(f).vertices == [(1, 2), (3, 0)]
    # but in x^3 + y^2 + x^2 y the point (2,1) is extreme
    g = x**3 + y**2 + x**2 * y
    assert (2, 1) in newton_polytope(g).vertices


# ---------------------------------------------------------------------------
# prop subplanes


def test_prop_edge_direction():
    assert is_prop(Subplane([(2, -3, 0)]))


def test_prop_coordinate_line():
    assert is_prop(Subplane([(1, 0)]))


def test_not_prop_diagonal():
    assert not is_prop(Subplane([(1, 1)]))


# ---------------------------------------------------------------------------
# saturation


def test_saturation_cusp_surface():
    R = ring3()
    x, y, z = R.gens()
    f = z - y**3 + x**2
    H = Subplane([(2, -3, 0)])
    assert primitive_pairs(H) == [((0, 3, 0), (2, 0, 0))]
    cert = saturation_check([f], H)
    assert cert.saturated
    assert len(cert.witnesses) == 1


def test_saturation_fails_for_common_divisor():
    R = ring2()
    x, y = R.gens()
    cert = saturation_check([x**2 - y**2], Subplane([(1, -1)]))
    assert not cert.saturated
    assert cert.failures == [((0, 1), (1, 0))]


def test_saturation_linear_witness():
    R = ring2()
    x, y = R.gens()
    cert = saturation_check([x - y], Subplane([(1, -1)]))
    assert cert.saturated
    assert cert.witnesses[0].polynomial == x - y


def test_edge_on_roof_requires_support():
    R = ring2()
    x, y = R.gens()
    assert edge_on_roof(x**2 + y**2, (2, 0), (0, 2)) is not None
    assert edge_on_roof(x**2 + y**2 + x * y * 9, (2, 0), (0, 2)) is not None
    # interior point above the segment blocks the support
    assert edge_on_roof(x + y + x * y, (1, 0), (0, 1)) is None


# ---------------------------------------------------------------------------
# the quotient valuation


@pytest.fixture(scope="module")
def skew_valuation():
    R = ring3()
    x, y, z = R.gens()
    f = z - y**3 + x**2
    H = Subplane([(2, -3, 0)])
    w = [OrderKey((3, 0)), OrderKey((2, 0)), OrderKey((1, 1))]
    return tropical_valuation([f], H, w), R


def test_skew_values(skew_valuation):
    nu, R = skew_valuation
    x, y, z = R.gens()
    for k in range(5):
        for l in range(4):
            assert nu.evaluate(y**k * z**l) == (2 * k, l)
            assert nu.evaluate(x * y**k * z**l) == (2 * k + 3, l)


def test_cusp_plane_curve_weights():
    R = ring2()
    X, Y = R.gens()
    g = X**3 + Y**2 + X * Y + Y + X + 1
    H = Subplane([(3, -2)])
    w = [OrderKey((2,)), OrderKey((3,))]
    nu = tropical_valuation([g], H, w)
    for i, j in itertools.product(range(4), range(2)):
        assert nu.evaluate(X**i * Y**j) == (2 * i + 3 * j,)


def test_partition_family():
    # f = x^2 + y^3 + lower terms under the weights: nu(x^i y^k f^l) = (3i+2k, l)
    R = ring3()
    x, y, z = R.gens()
    f3 = z - y**3 + x**2
    H = Subplane([(2, -3, 0)])
    w = [OrderKey((3, 0)), OrderKey((2, 0)), OrderKey((1, 1))]
    nu = tropical_valuation([f3], H, w)
    for i, k, l in itertools.product(range(3), repeat=3):
        assert nu.evaluate(x**i * y**k * z**l) == (3 * i + 2 * k, l)


def test_precondition_refusal():
    R = ring2()
    x, y = R.gens()
    w = [OrderKey((1, 0)), OrderKey((1, 0))]
    with pytest.raises(PreconditionError):
        tropical_valuation([x**2 - y**2], Subplane([(1, -1)]), w)
    # force skips the saturation certificate, not the structural conditions
    nu = tropical_valuation([x**2 - y**2], Subplane([(1, -1)]), w, force=True)
    assert nu.certificate is None


def test_weight_not_on_tropical_variety_rejected():
    R = ring3()
    x, y, z = R.gens()
    f = z - y**3 + x**2
    H = Subplane([(2, -3, 0)])
    bad_w = [OrderKey((9, 0)), OrderKey((2, 0)), OrderKey((1, 1))]
    with pytest.raises(PreconditionError):
        tropical_valuation([f], H, bad_w)


# ---------------------------------------------------------------------------
# invariants


def test_brute_force_coset_minimum(skew_valuation):
    # the normal form realizes the coset minimum: no small combination with
    # the generator beats it
    nu, R = skew_valuation
    x, y, z = R.gens()
    f = z - y**3 + x**2
    rng = random.Random(99)
    monos = [x, y, z, x * y, y * z, R.one()]
    for _ in range(60):
        a = R.zero()
        for _ in range(3):
            a = a + rng.choice(monos) * rng.randint(-2, 2)
        if not nu.expand(a):
            continue
        base = nu.value_key(nu.evaluate(a))
        for h in monos:
            for c in (-1, 1, 2):
                b = a + h * f * c
                if nu.expand(b):
                    assert nu.value_key(nu.evaluate(b)) >= base


def test_injectivity_after_saturation(skew_valuation):
    nu, R = skew_valuation
    rep = injectivity_check(nu, ring_monomials(R, 6))
    assert rep.verdict == "injective"


def test_projection_is_additive_on_products(skew_valuation):
    nu, R = skew_valuation
    rng = random.Random(5)
    x, y, z = R.gens()
    gens = [x, y, z]
    for _ in range(50):
        a = gens[rng.randrange(3)] ** rng.randint(0, 2) * gens[rng.randrange(3)]
        b = gens[rng.randrange(3)] ** rng.randint(0, 2)
        va = nu.evaluate(a)
        vb = nu.evaluate(b)
        assert nu.evaluate(a * b) == tuple(p + q for p, q in zip(va, vb))


def test_coideal_variant_with_extra_ideal():
    # quotient by the larger ideal (f, z^2): values keep only z-degree <= 1,
    # the image becomes a coideal of the full quotient cone
    R = ring3()
    x, y, z = R.gens()
    f = z - y**3 + x**2
    H = Subplane([(2, -3, 0)])
    w = [OrderKey((3, 0)), OrderKey((2, 0)), OrderKey((1, 1))]
    nu = tropical_valuation([f], H, w, extra_ideal=[z**2])
    for k in range(4):
        assert nu.evaluate(y**k) == (2 * k, 0)
        assert nu.evaluate(y**k * z) == (2 * k, 1)
    # z^2 is zero in the quotient: no value
    assert not nu.expand(z**2)
    with pytest.raises(ValueError):
        nu.evaluate(z**2)
