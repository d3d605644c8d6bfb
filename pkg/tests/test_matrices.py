"""Exact matrices and lattice presentations: Gram forms, duals, HNF, recognizers."""

import random
from fractions import Fraction

import pytest

from wrlab.errors import DegeneracyError, DomainError
from wrlab.matrices import (
    ExactMatrix,
    Lattice,
    dual,
    gram_of,
    hnf,
    index_of,
    lattices_equal,
    recognize_scaled_An,
    recognize_scaled_identity,
    volume,
    volume_float,
)
from wrlab.scalar import QuadScalar
from wrlab.tame import TameParams, construct_doubled_e8_integral, tame_gram


def test_gram_of_planted_hexagonal_basis():
    # two unit-sum columns in R^3 spanning a plane
    gen = ExactMatrix.from_columns(
        [[1, -1, 0], [0, 1, -1]]
    )
    assert gram_of(gen) == ExactMatrix([[2, -1], [-1, 2]])


def test_gram_rejects_dependent_columns():
    gen = ExactMatrix.from_columns([[1, 0], [2, 0]])
    with pytest.raises(DegeneracyError):
        gram_of(gen)


def test_det_of_constant_gram_family():
    for n in (2, 3, 5):
        for a in (Fraction(2), Fraction(5, 2)):
            params = TameParams.from_a(n, a)
            g = tame_gram(params)
            expected = (params.a + params.h) ** (n - 1)
            assert g.det().rational_value() == expected


def test_inverse_and_rank():
    m = ExactMatrix([[2, 1], [1, 1]])
    inv = m.inverse()
    assert (m @ inv) == ExactMatrix.identity(2)
    assert m.rank() == 2
    assert ExactMatrix([[1, 2], [2, 4]]).rank() == 1


def test_volume_from_gram_needs_exact_root():
    lat = Lattice(gram=ExactMatrix([[2, 0], [0, 1]]))
    assert volume(lat) == QuadScalar(0, 1, 2)
    assert abs(volume_float(lat) - 2 ** 0.5) < 1e-12


def test_dual_is_involutive():
    lat = Lattice(gram=tame_gram(TameParams.from_a(3, Fraction(2))))
    dd = dual(dual(lat))
    assert dd.gram == lat.gram
    assert (lat.gram @ dual(lat).gram) == ExactMatrix.identity(3)
    # with a generator presentation the duals are honest lattices in R^n
    z3 = Lattice(generator=ExactMatrix([[2, 1, 0], [0, 1, 1], [0, 0, 3]]))
    assert lattices_equal(dual(dual(z3)), z3)


def test_det_times_dual_det_is_one():
    lat = Lattice(gram=tame_gram(TameParams.from_a(4, Fraction(3))))
    product = lat.gram.det() * dual(lat).gram.det()
    assert product.rational_value() == 1


def test_hnf_is_unimodular_invariant():
    rng = random.Random(7)
    base = ExactMatrix([[2, 1, 0], [0, 3, 1], [1, 0, 4]])
    reference = hnf(base)
    for _ in range(100):
        u = _random_unimodular(rng, 3)
        assert hnf(base @ u) == reference


def _random_unimodular(rng, n):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        for k in range(n):
            m[k][j] += c * m[k][i]  # column operation keeps det = +/-1
    return ExactMatrix(m)


def test_lattices_equal_scaling_cases():
    z2 = Lattice(generator=ExactMatrix.identity(2))
    rot = Lattice(generator=ExactMatrix([[0, -1], [1, 0]]))
    assert lattices_equal(z2, rot)
    assert not lattices_equal(z2, z2.scale(2))
    half = Lattice(generator=ExactMatrix.identity(2).scale(Fraction(1, 2)))
    assert not lattices_equal(z2, half)


def test_lattices_equal_with_common_surd():
    root2 = QuadScalar(0, 1, 2)
    a = Lattice(generator=ExactMatrix.identity(2).scale(root2))
    b = Lattice(generator=ExactMatrix([[0, -1], [1, 0]]).scale(root2))
    assert lattices_equal(a, b)


def test_index_examples():
    z3 = Lattice(generator=ExactMatrix.identity(3))
    assert index_of(z3.scale(2), z3) == 8
    with pytest.raises(DomainError):
        index_of(z3, z3.scale(2))  # not a sublattice


def test_index_of_named_dim8_construction():
    z8 = Lattice(generator=ExactMatrix.identity(8))
    assert index_of(construct_doubled_e8_integral(), z8) == 256


def test_recognizers():
    assert recognize_scaled_identity(ExactMatrix.identity(4).scale(3)) == 3
    an = ExactMatrix([[4, 2, 2], [2, 4, 2], [2, 2, 4]])
    assert recognize_scaled_An(an) == 2
    # mutually exclusive on the same input
    assert recognize_scaled_An(ExactMatrix.identity(3)) is None
    assert recognize_scaled_identity(an) is None
    mixed = ExactMatrix([[2, 1], [1, 3]])
    assert recognize_scaled_identity(mixed) is None
    assert recognize_scaled_An(mixed) is None


def test_json_roundtrip():
    g = tame_gram(TameParams.from_a(3, Fraction(5, 2)))
    assert ExactMatrix.from_json(g.to_json()) == g
    surd = ExactMatrix.identity(2).scale(QuadScalar(1, 1, 5))
    assert ExactMatrix.from_json(surd.to_json()) == surd


def test_positive_definiteness_guard():
    with pytest.raises(DomainError):
        Lattice(gram=ExactMatrix([[1, 2], [2, 1]]))
    with pytest.raises(DomainError):
        Lattice(gram=ExactMatrix([[0, 0], [0, 1]]))
