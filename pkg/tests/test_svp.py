"""Exact enumeration, minimal-vector reports, theta truncation and flatness."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrlab.errors import DomainError, ResourceError
from wrlab.matrices import ExactMatrix, Lattice
from wrlab.scalar import QuadScalar
from wrlab import svp, tame
from wrlab.deform import dn_generator, e8_generator
from wrlab.matrices import gram_of


def test_unit_lattice_units():
    vectors = svp.enumerate_below(ExactMatrix.identity(3), 1)
    assert sorted(vectors) == sorted(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )


def test_hexagonal_form_six_minima():
    gram = ExactMatrix([[2, -1], [-1, 2]])
    rep = svp.svp_report(gram)
    assert rep.lambda1_sq == 2
    assert rep.kissing == 6
    assert rep.is_wr and not rep.is_gwr


def test_deformed_checkerboard_report():
    gram = gram_of(dn_generator(4, Fraction(7, 5)))
    rep = svp.svp_report(gram)
    assert rep.lambda1_sq == 2
    assert rep.kissing == 8
    assert rep.is_gwr


def test_deformed_e8_alpha_one_is_root_lattice():
    rep = svp.svp_report(gram_of(e8_generator(1)))
    assert rep.lambda1_sq == 2
    assert rep.kissing == 240


def test_dim8_named_lattice_is_wr_not_gwr():
    rep = svp.svp_report(tame.construct_doubled_e8_integral().gram)
    assert rep.lambda1_sq == 8
    assert rep.kissing == 240
    assert rep.is_wr and not rep.is_gwr


def test_boundary_sublattice_kissing():
    p = tame.TameParams.from_a(8, Fraction(1))
    rep = svp.svp_report(tame.phi_sublattice_gram(p, 4, 1))
    assert rep.kissing == 8 * 9


def test_minimal_set_is_sign_canonical():
    rep = svp.svp_report(ExactMatrix.identity(2))
    for u in rep.minimal_coeffs:
        assert u == min(u, tuple(-x for x in u))
    assert rep.kissing == 2 * len(rep.minimal_coeffs)


def test_minimum_never_exceeds_diagonal():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 4)
        basis = None
        while basis is None:
            cand = ExactMatrix(
                [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            )
            if cand.det() != 0:
                basis = cand
        gram = gram_of(basis)
        rep = svp.svp_report(gram)
        assert all(rep.lambda1_sq <= gram[i, i] for i in range(n))


def test_surd_gram_enumeration():
    root2 = QuadScalar(0, 1, 2)
    gram = ExactMatrix([[root2 * 2, QuadScalar(0)], [QuadScalar(0), root2]])
    rep = svp.svp_report(gram)
    assert rep.lambda1_sq == root2
    assert rep.kissing == 2


def test_rejects_bad_inputs():
    with pytest.raises(DomainError):
        svp.enumerate_below(ExactMatrix([[1, 2], [2, 1]]), 1)  # not PD
    with pytest.raises(DomainError):
        svp.enumerate_below(ExactMatrix.identity(2), 0)  # bound not positive


def test_node_cap_trips():
    with pytest.raises(ResourceError):
        svp.enumerate_below(ExactMatrix.identity(4), 30, node_cap=50)


def test_gwr_grid_over_family_parameter():
    # 20 exact grid points in (1, sqrt2]: every member certifies GWR except
    # the left endpoint (the undeformed root lattice), which is excluded
    for i in range(1, 21):
        alpha = Fraction(1) + Fraction(i, 50)
        rep = svp.svp_report(gram_of(dn_generator(3, alpha)))
        assert rep.lambda1_sq == 2
        assert rep.is_gwr and rep.kissing == 6


def test_alpha_one_endpoints_have_root_kissing():
    for n in (3, 4, 5):
        rep = svp.svp_report(gram_of(dn_generator(n, 1)))
        assert rep.lambda1_sq == 2
        assert rep.kissing == 2 * n * (n - 1)


@given(st.integers(2, 3), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_enumeration_complete_against_brute_force(n, seed):
    rng = random.Random(seed)
    basis = None
    while basis is None:
        cand = ExactMatrix(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        )
        if cand.det() != 0:
            basis = cand
    gram = gram_of(basis)
    bound = min(gram[i, i] for i in range(n)).rational_value()
    fast = set(svp.enumerate_below(gram, bound))
    # box bound: |u_i|^2 <= bound * (G^-1)_ii for any vector in the ball
    inv = gram.inverse()
    limits = [
        math.isqrt(int(bound * inv[i, i].rational_value())) + 1 for i in range(n)
    ]
    slow = set()

    def rec(i, u):
        if i == n:
            if any(u):
                vec = tuple(u)
                norm = sum(
                    gram[a, b].rational_value() * u[a] * u[b]
                    for a in range(n)
                    for b in range(n)
                )
                if 0 < norm <= bound:
                    slow.add(vec)
            return
        for v in range(-limits[i], limits[i] + 1):
            rec(i + 1, u + [v])

    rec(0, [])
    assert fast == slow


def test_theta_one_dimensional_value():
    result = svp.theta_truncated(ExactMatrix.identity(1), 0.5, 4)
    assert result.value == 2.125  # 1 + 2*(1/2) + 2*(1/16)
    assert result.terms == 4


def test_theta_rejects_bad_q():
    with pytest.raises(DomainError):
        svp.theta_truncated(ExactMatrix.identity(1), 1.0, 4)
    with pytest.raises(DomainError):
        svp.theta_truncated(ExactMatrix.identity(1), 0.0, 4)


def test_theta_tail_metadata_decreases_with_radius():
    gram = ExactMatrix.identity(2)
    t4 = svp.theta_truncated(gram, 0.3, 4)
    t9 = svp.theta_truncated(gram, 0.3, 9)
    assert t9.value >= t4.value
    assert t9.terms > t4.terms


def test_flatness_matches_product_oracle():
    lattice = Lattice(generator=ExactMatrix.identity(2))
    for sigma in (0.5, 1.0):
        eps = svp.flatness_factor(lattice, sigma, 25)
        q = math.exp(-2.0 * math.pi * sigma * sigma)
        tail = math.fsum(2.0 * q ** (m * m) for m in range(1, 9))
        oracle = math.expm1(2 * math.log1p(tail))
        assert abs(eps - oracle) <= 1e-12 * abs(oracle)


def test_flatness_decreases_in_sigma():
    lattice = Lattice(generator=ExactMatrix.identity(2))
    values = [svp.flatness_factor(lattice, s, 9) for s in (0.5, 1.0, 2.0)]
    assert values[0] > values[1] > values[2] > 0
