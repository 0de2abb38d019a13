import dataclasses
import itertools

import pytest

from valforge.algebra import PolynomialRing
from valforge.coefficients import QQ
from valforge.groebner import groebner, normal_form
from valforge.jordan_holder import (check_mutual_inverse,
                                    check_submultiplicative, jh_table,
                                    jh_value, pmr_build, symplecto_check)
from valforge.orderkeys import DegLexOrder, LexOrder
from valforge.semigroups import IntegerVectorMonoid
from valforge.valuations import (CoordinateValuation, restrict,
                                 ring_monomials)


# ---------------------------------------------------------------------------
# shared fixtures: the cusp plane and the quadratic-shift embedding pair


def plane_ring():
    return PolynomialRing(QQ, ["x", "y"], LexOrder(2, priority=[0, 1]))


def cusp_triple():
    """nu_y, nu_x, nu_z on Q[x,y] viewed as Q[x,y,z]/(z + x^2 + y^3)."""
    R = plane_ring()
    x, y = R.gens()
    Py = IntegerVectorMonoid(2, LexOrder(2))
    nu_y = CoordinateValuation(R, Py, lambda f: f, lambda m: m,
                               injective=True, well_ordered=True)
    Px = IntegerVectorMonoid(2, LexOrder(2))
    nu_x = CoordinateValuation(R, Px, lambda f: f, lambda m: (m[1], m[0]),
                               injective=True, well_ordered=True)
    C = PolynomialRing(QQ, ["x", "y", "w"], LexOrder(3, priority=[0, 2, 1]))
    cx, cy, cw = C.gens()
    gb = groebner([cx**2 + cy**3 - cw])

    def transform(f):
        return normal_form(R.substituted(f, [cx, cy], C), gb)

    Pz = IntegerVectorMonoid(2, LexOrder(2))
    nu_z = CoordinateValuation(R, Pz, transform,
                               lambda m: (2 * m[1] + 3 * m[0], m[2]),
                               injective=True, well_ordered=True)
    return R, nu_y, nu_x, nu_z


def mod2_pair():
    T = PolynomialRing(QQ, ["t1", "t2"], DegLexOrder(2, priority=[0, 1]))
    t1, t2 = T.gens()
    PT = IntegerVectorMonoid(2, T.order)
    nuT = CoordinateValuation(T, PT, lambda f: f, lambda m: m,
                              injective=True, well_ordered=True)
    Z = PolynomialRing(QQ, ["z1", "z2"], DegLexOrder(2, priority=[0, 1]))
    nu_phi = restrict(nuT, [t1, t2], Z)
    nu_psi = restrict(nuT, [t1, t1**2 + t2], Z)
    return Z, nu_phi, nu_psi


def _slice(R, px, qy):
    x, y = R.gens()
    return [x**p * y**q for p in range(px) for q in range(qy)]


# ---------------------------------------------------------------------------
# single values


def test_jh_value_cusp():
    R, nu_y, nu_x, nu_z = cusp_triple()
    # K_{nu_z, nu_y}(4, 1) = (2, 2): input is the nu_y-value (x-exp, y-exp)
    image, rep = jh_value(nu_y, nu_z, (4, 1), _slice(R, 6, 12))
    assert image == (2, 2)
    assert nu_y.evaluate(rep) == (4, 1)
    assert nu_z.evaluate(rep) == (2, 2)


def test_jh_value_identity():
    R, nu_y, _, _ = cusp_triple()
    image, rep = jh_value(nu_y, nu_y, (3, 2), _slice(R, 5, 5))
    assert image == (3, 2)


def test_jh_value_mod2():
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 10))
    image, rep = jh_value(nu_psi, nu_phi, (3, 1), monos)
    assert image == (3, 1)   # (2*1 + 1, 3//2) = (3, 1)


def test_jh_value_out_of_range():
    R, nu_y, _, nu_z = cusp_triple()
    with pytest.raises(KeyError):
        jh_value(nu_y, nu_z, (40, 40), _slice(R, 3, 3))


# ---------------------------------------------------------------------------
# tables and common bases


def test_cusp_table_closed_forms():
    R, nu_y, nu_x, nu_z = cusp_triple()
    tab = jh_table(nu_y, nu_z, _slice(R, 10, 16))
    m = {e.value: e.image for e in tab.entries}
    for i in range(4):
        for j in range(4):
            assert m[(2 * j, i)] == (2 * i, j)
            assert m[(2 * j + 1, i)] == (2 * i + 3, j)


def test_cusp_common_basis_representatives():
    R, nu_y, nu_x, nu_z = cusp_triple()
    tab = jh_table(nu_y, nu_z, _slice(R, 6, 10))
    for e in tab.entries:
        assert nu_y.evaluate(e.representative) == e.value
        assert nu_z.evaluate(e.representative) == e.image


def test_single_variable_identity_basis():
    R1 = PolynomialRing(QQ, ["x"], LexOrder(1))
    P = IntegerVectorMonoid(1, LexOrder(1))
    nu = CoordinateValuation(R1, P, lambda f: f, lambda m: m,
                             injective=True, well_ordered=True)
    monos = [R1.gen(0) ** n for n in range(8)]
    tab = jh_table(nu, nu, monos)
    for e in tab.entries:
        assert e.value == e.image
        assert list(e.representative.terms) == [e.value]


def test_mod2_closed_form_and_involution():
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 14))
    fw = jh_table(nu_psi, nu_phi, monos)
    bw = jh_table(nu_phi, nu_psi, monos)
    m = {e.value: e.image for e in fw.entries}
    for (a1, a2), img in m.items():
        assert img == (2 * a2 + (a1 % 2), a1 // 2)
    assert not check_mutual_inverse(fw, bw)
    assert not check_mutual_inverse(bw, fw)


# ---------------------------------------------------------------------------
# piecewise monoidal representations


def _bounded(tab, nu, cap):
    entries = [e for e in tab.entries if max(e.value) <= cap]
    return dataclasses.replace(tab, entries=entries)


def test_pmr_mod2_two_cosets():
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 18))
    tab = _bounded(jh_table(nu_psi, nu_phi, monos), nu_psi, 8)
    rep = pmr_build(tab, dim=2)
    assert rep.complete
    assert len(rep.pieces) == 1
    piece = rep.pieces[0]
    assert sorted(piece.generators) == [(0, 1), (2, 0)]
    assert sorted(piece.residues) == [(0, 0), (1, 0)]


def test_pmr_identity_single_cone():
    Z, nu_phi, _ = mod2_pair()
    monos = list(ring_monomials(Z, 8))
    tab = jh_table(nu_phi, nu_phi, monos)
    rep = pmr_build(tab, dim=2)
    assert rep.complete
    assert len(rep.pieces) == 1
    piece = rep.pieces[0]
    assert piece.images == [g and tuple(g) for g in piece.generators]


def test_pmr_reproduces_table():
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 16))
    tab = _bounded(jh_table(nu_psi, nu_phi, monos), nu_psi, 8)
    rep = pmr_build(tab, dim=2)
    assert rep.complete and not rep.mismatches


# ---------------------------------------------------------------------------
# sub-multiplicativity and the skew-form comparison


def test_submultiplicative_identity_always_equal():
    Z, nu_phi, _ = mod2_pair()
    monos = list(ring_monomials(Z, 8))
    tab = jh_table(nu_phi, nu_phi, monos)
    P = IntegerVectorMonoid(2, DegLexOrder(2, priority=[0, 1]))
    report = check_submultiplicative(tab, P, P)
    assert report.holds()
    assert not report.strict_pairs


def test_submultiplicative_cusp():
    # the slice must cover the minimizing representatives: a value (p, q)
    # with p = 2j + s needs monomials up to y^(q + 3j)
    R, nu_y, nu_x, nu_z = cusp_triple()
    tab = jh_table(nu_y, nu_z, _slice(R, 8, 26))
    entries = [e for e in tab.entries if max(e.value) <= 6]
    tab = dataclasses.replace(tab, entries=entries)
    Py = IntegerVectorMonoid(2, LexOrder(2))
    Pz = IntegerVectorMonoid(2, LexOrder(2), ideal_generators=None)
    report = check_submultiplicative(tab, Py, Pz)
    assert report.holds()


def test_submultiplicative_both_directions_mod2():
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 12))
    P = IntegerVectorMonoid(2, DegLexOrder(2, priority=[0, 1]))
    for fw in (jh_table(nu_psi, nu_phi, monos), jh_table(nu_phi, nu_psi, monos)):
        report = check_submultiplicative(fw, P, P)
        assert report.holds()
        # the map is not globally additive, so strict pairs must exist
        assert report.strict_pairs


def test_symplecto_trivial_pair():
    # a' = 0 is additive with equal forms for any table
    Z, nu_phi, nu_psi = mod2_pair()
    monos = list(ring_monomials(Z, 6))
    tab = jh_table(nu_psi, nu_phi, monos)
    lam = lambda a, b: a[0] * b[1] - a[1] * b[0]
    rep = symplecto_check(tab, lam, lam)
    zero_pairs = [p for p in rep.pairs if not any(p[1])]
    assert zero_pairs
    for a1, a2, additive, equal in zero_pairs:
        assert additive and equal
