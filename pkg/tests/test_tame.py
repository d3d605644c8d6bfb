"""Constant-Gram (diagonal a, off-diagonal -h) lattices, their well-rounded
sublattices, the classification window, densities and duality."""

import random
from fractions import Fraction

import pytest

from wrlab.errors import DomainError
from wrlab.matrices import (
    ExactMatrix,
    Lattice,
    dual,
    index_of,
    lattices_equal,
    recognize_scaled_An,
    recognize_scaled_identity,
)
from wrlab.scalar import QuadScalar
from wrlab.svp import svp_report
from wrlab import tame


def test_params_tie_a_and_h():
    p = tame.TameParams.from_a(3, Fraction(2))
    assert p.h == Fraction(1, 2)
    with pytest.raises(DomainError):
        tame.TameParams(3, Fraction(2), Fraction(1))  # a - h(n-1) != 1
    with pytest.raises(DomainError):
        tame.TameParams.from_a(3, Fraction(1, 3))  # a <= 1/n


def test_gram_shape_and_volume():
    p = tame.TameParams.from_a(4, Fraction(2))
    g = tame.tame_gram(p)
    assert g[0, 0] == QuadScalar(p.a)
    assert g[0, 1] == QuadScalar(-p.h)
    vol = tame.tame_volume(p)
    assert vol * vol == (p.a + p.h) ** 3


def test_dual_params_involutive_and_inverse_gram():
    for n, a in ((2, Fraction(2)), (3, Fraction(3)), (5, Fraction(7, 5))):
        p = tame.TameParams.from_a(n, a)
        d = tame.tame_dual(p)
        assert tame.tame_dual(d) == p
        product = tame.tame_gram(p) @ tame.tame_gram(d)
        assert product == ExactMatrix.identity(n)


def test_sublattice_gram_matches_direct_construction():
    # push Z^n coordinates through the coordinate-level map and compare
    p = tame.TameParams.from_a(3, Fraction(2))
    r, s = 2, 1
    claimed = tame.phi_sublattice_gram(p, r, s)
    assert claimed.is_symmetric()
    m = r + s * 3
    diag = Fraction(p.a) * r * r + Fraction(m * m - r * r, 3)
    assert claimed[0, 0] == QuadScalar(diag)
    assert tame.sublattice_min_sq_claim(p, r, s) == diag


def test_window_bounds_example():
    p = tame.TameParams.from_a(8, Fraction(1))
    l, x0, u = tame.window_bounds(p)
    assert (l, x0, u) == (Fraction(1, 9), Fraction(1), Fraction(9))


def test_classification_tags():
    p = tame.TameParams.from_a(8, Fraction(1))
    assert tame.classify_wr(p, 4, 1).tag == "AnBoundary"  # ratio 9 = u
    assert tame.classify_wr(p, 3, 0).tag == "ZnPoint"  # ratio 1 = x0
    assert tame.classify_wr(p, 7, 1).tag == "GwrInterior"  # ratio 225/49
    assert tame.classify_wr(p, 1, 2).tag == "OutsideWindow"  # ratio 289 > u
    p2 = tame.TameParams.from_a(2, Fraction(2))
    assert tame.classify_wr(p2, 1, 0).ratio_sq == tame.window_bounds(p2)[0]


def test_minimum_and_index_law_random():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 5)
        a = Fraction(rng.randint(1, 4 * n), rng.randint(1, 4))
        if a * n <= 1:
            continue
        p = tame.TameParams.from_a(n, a)
        r = rng.choice([v for v in range(-(n - 1), n) if v])
        s = rng.randint(-3, 3)
        cls = tame.classify_wr(p, r, s)
        if cls.tag == "OutsideWindow":
            continue
        gram = tame.phi_sublattice_gram(p, r, s)
        rep = svp_report(gram)
        assert rep.lambda1_sq == tame.sublattice_min_sq_claim(p, r, s)
        assert rep.is_wr


def test_index_against_ambient():
    rng = random.Random(11)
    ambient = ExactMatrix.identity(4)
    for _ in range(40):
        spec = tame.SublatticeSpec(
            functional=None,
            pivot=tuple(rng.randint(-2, 2) for _ in range(4)),
            r=rng.randint(1, 3),
            s=rng.randint(-2, 2),
            strict=False,
        )
        try:
            spec.validate()
        except (DomainError, Exception):
            continue
        gen = tame.phi_image_generator(ambient, spec)
        if gen.det() == 0:
            continue
        idx = index_of(Lattice(generator=gen), Lattice(generator=ambient))
        assert idx == abs(spec.m * spec.r ** 3)


def test_kissing_strictly_inside_window():
    p = tame.TameParams.from_a(4, Fraction(2))
    cls = tame.classify_wr(p, 2, 0)
    l, x0, u = tame.window_bounds(p)
    assert l < cls.ratio_sq < u and cls.ratio_sq != x0
    rep = svp_report(tame.phi_sublattice_gram(p, 2, 0))
    assert rep.is_gwr and rep.kissing == 8


def test_kissing_at_lower_window_edge():
    # the all-ones coefficient vector ties the minimum exactly at the lower
    # edge, so genericity fails there: one extra pair, kissing 2n + 2
    p = tame.TameParams.from_a(3, Fraction(3))
    cls = tame.classify_wr(p, 1, 0)
    assert cls.ratio_sq == tame.window_bounds(p)[0]
    rep = svp_report(tame.phi_sublattice_gram(p, 1, 0))
    assert rep.kissing == 8 and rep.is_wr and not rep.is_gwr
    assert (-1, -1, -1) in rep.minimal_coeffs  # canonical sign of +/-(1,1,1)


def test_boundary_and_corner_shapes():
    p = tame.TameParams.from_a(8, Fraction(1))
    boundary = tame.phi_sublattice_gram(p, 4, 1)
    c = Fraction((8 * 1 - 1) * 16, 7)
    assert recognize_scaled_An(boundary) == c
    assert svp_report(boundary).kissing == 8 * 9
    corner = tame.phi_sublattice_gram(p, 3, 0)
    assert recognize_scaled_identity(corner) == Fraction(7 * 9, 7)


def test_density_endpoints():
    n = 3
    p = tame.TameParams.from_a(n, Fraction(1))  # ambient Z^3
    # x0 = 1 is hit by s = 0; u = 4 by m = -2, i.e. (r, s) = (1, -1)
    at_corner = tame.sublattice_center_density(p, 2, 0)
    assert (at_corner * at_corner).rational_value() == Fraction(1, 4 ** n)
    cls = tame.classify_wr(p, 1, -1)
    assert cls.tag == "AnBoundary"
    at_boundary = tame.sublattice_center_density(p, 1, -1)
    assert (at_boundary * at_boundary).rational_value() == Fraction(
        1, (n + 1) * 2 ** n
    )
    with pytest.raises(DomainError):
        tame.sublattice_center_density(p, 1, 3)  # outside the window


def test_window_extremes_ordering():
    for n in (2, 5, 9):
        f_l, f_x0, f_u = tame.density_window_extremes(n, Fraction(2))
        assert f_x0 < f_l <= f_u


def test_dual_of_proportional_sublattice():
    p = tame.TameParams.from_a(3, Fraction(3))  # h = 1, so s = r*h is integral
    d = tame.dual_of_sublattice(p, 2)
    # defining identity: the dual is the ambient scaled by 1/(r(a+h))
    scale = Fraction(1, 2 * 4)
    assert d.gram == tame.tame_gram(p).scale(scale * scale)
    # and its Gram really inverts the sublattice Gram
    sub = tame.phi_sublattice_gram(p, 2, 2)
    assert sub @ d.gram == ExactMatrix.identity(3)
    with pytest.raises(DomainError):
        tame.dual_of_sublattice(tame.TameParams.from_a(3, Fraction(2)), 1)


def test_dualized_spec_identity_on_z3():
    spec = tame.SublatticeSpec(
        functional=(1, 1, 1), pivot=(1, 0, 1), r=1, s=1
    )
    ambient = ExactMatrix.identity(3)
    image = Lattice(generator=tame.phi_image_generator(ambient, spec))
    left = dual(image)
    mirrored = tame.phi_image_generator(ambient, tame.dual_spec(spec))
    right = Lattice(
        generator=mirrored.scale(QuadScalar(tame.dual_image_scale(spec)))
    )
    assert lattices_equal(left, right)


def test_named_an_constructions():
    lat = tame.construct_An_from_Zn(8)
    assert recognize_scaled_An(lat.gram) == 16
    for n, r in ((3, 1), (4, 2), (6, -1)):
        general = tame.construct_An_general(n, r)
        assert recognize_scaled_An(general.gram) == r * r * (n + 1)
    with pytest.raises(DomainError):
        tame.construct_An_from_Zn(5)  # 6 is not a square


def test_dim8_and_dim9_constructions():
    built = tame.construct_doubled_e8_integral()
    assert lattices_equal(built, tame.reference_doubled_e8())
    rep = svp_report(built.gram)
    assert rep.lambda1_sq == 8 and rep.kissing == 240
    nine = tame.construct_dim9_densest()
    rep9 = svp_report(nine.gram)
    assert rep9.lambda1_sq == 8
    assert abs(nine.generator.det()) == 2 ** 9
