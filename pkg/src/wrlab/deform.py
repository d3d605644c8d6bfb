"""Deformed lattice families: the planar family, the deformed checkerboard
family, and the deformed E8 family.

Each family is a one-parameter distortion, parameterized by alpha, that
interpolates between a densest root lattice and a scaling of the integer
lattice.  Rational alpha whose companion sqrt(2 - alpha^2) (or sqrt(1 -
alpha^2) in the plane) is also rational yields, after scaling by the
denominator, an integral sublattice of Z^n; those alphas come from coprime
solutions of 2*q^2 - p^2 = d^2.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Union

from .errors import DomainError, UndecidableError
from .matrices import ExactMatrix, Lattice
from .scalar import QS_ONE, QuadScalar

AlphaLike = Union[int, float, Fraction, QuadScalar]

SQRT2 = QuadScalar(0, 1, 2)


def _as_scalar(alpha: AlphaLike) -> QuadScalar:
    if isinstance(alpha, QuadScalar):
        return alpha
    if isinstance(alpha, float):
        # floats are dyadic rationals; embedding them exactly keeps the
        # identity alpha^2 + alphabar^2 == 2 true to the last bit
        return QuadScalar(Fraction(alpha))
    return QuadScalar(Fraction(alpha))


def _companion(alpha: QuadScalar, total: int) -> QuadScalar:
    """sqrt(total - alpha^2), exact; total is 1 (planar) or 2 (Dn/E8)."""
    rest = QuadScalar(total) - alpha * alpha
    if rest.sign() < 0:
        raise DomainError("alpha out of range")
    if rest.is_rational:
        return QuadScalar.sqrt_rational(rest.rational_value())
    from .scalar import sqrt_exact

    root = sqrt_exact(rest)
    if root is None:
        raise UndecidableError(
            f"sqrt({rest}) does not lie in a single quadratic extension"
        )
    return root


# -- planar family -------------------------------------------------------------


def hex_alphabar(alpha: AlphaLike) -> QuadScalar:
    a = _as_scalar(alpha)
    if a.sign() < 0 or a > Fraction(1, 2):
        raise DomainError("planar deformation needs 0 <= alpha <= 1/2")
    return _companion(a, 1)


def hex_generator(alpha: AlphaLike) -> ExactMatrix:
    a = _as_scalar(alpha)
    ab = hex_alphabar(a)
    return ExactMatrix([[QS_ONE, a], [QuadScalar(0), ab]])


def hex_volume(alpha: AlphaLike) -> QuadScalar:
    return hex_alphabar(alpha)


def hex_center_density(alpha: AlphaLike) -> QuadScalar:
    return QS_ONE / (QuadScalar(4) * hex_alphabar(alpha))


def hex_sweep(points: int) -> list[tuple[Fraction, QuadScalar]]:
    """(alpha, center density) on an evenly spaced exact grid over [0, 1/2]."""
    if points < 2:
        raise DomainError("sweep needs at least two points")
    return [
        (alpha, hex_center_density(alpha))
        for alpha in (Fraction(i, 2 * (points - 1)) for i in range(points))
    ]


# -- deformed checkerboard family ----------------------------------------------


def _check_dn_range(alpha: QuadScalar) -> None:
    if alpha < 1 or alpha > SQRT2:
        raise DomainError("deformation needs 1 <= alpha <= sqrt(2)")


def dn_alphabar(alpha: AlphaLike) -> QuadScalar:
    a = _as_scalar(alpha)
    _check_dn_range(a)
    return _companion(a, 2)


def dn_generator(n: int, alpha: AlphaLike) -> ExactMatrix:
    if n < 3:
        raise DomainError("checkerboard deformation needs n >= 3")
    a = _as_scalar(alpha)
    ab = dn_alphabar(a)
    zero = QuadScalar(0)
    cols = []
    cols.append([a, ab] + [zero] * (n - 2))
    cols.append([zero, a, ab] + [zero] * (n - 3))
    cols.append([ab, zero, a] + [zero] * (n - 3))
    for j in range(3, n):
        col = [zero] * n
        col[j - 1] = ab
        col[j] = -a
        cols.append(col)
    return ExactMatrix.from_columns(cols)


def dn_volume(n: int, alpha: AlphaLike) -> QuadScalar:
    if n < 3:
        raise DomainError("checkerboard deformation needs n >= 3")
    a = _as_scalar(alpha)
    ab = dn_alphabar(a)
    return a ** (n - 3) * (a ** 3 + ab ** 3)


def dn_center_density(n: int, alpha: AlphaLike) -> QuadScalar:
    vol = dn_volume(n, alpha)
    if n % 2 == 0:
        return QS_ONE / (QuadScalar(2 ** (n // 2)) * vol)
    half_power = QuadScalar(0, 2 ** ((n - 1) // 2), 2)  # 2^(n/2) for odd n
    try:
        return QS_ONE / (half_power * vol)
    except DomainError:
        # odd n with an irrational companion: sqrt(2) and the companion's
        # radicand cannot share a field, so the density has no exact form here
        raise UndecidableError(
            "center density mixes sqrt(2) with another radicand; compare "
            "volumes instead, or evaluate in floating point"
        )


# -- deformed E8 family --------------------------------------------------------


def e8_alphabar(alpha: AlphaLike) -> QuadScalar:
    a = _as_scalar(alpha)
    _check_dn_range(a)
    return _companion(a, 2)


def e8_generator(alpha: AlphaLike) -> ExactMatrix:
    a = _as_scalar(alpha)
    ab = e8_alphabar(a)
    half = Fraction(1, 2)
    zero = QuadScalar(0)
    first = [QuadScalar(half)] * 8
    first[6] = QuadScalar(-half)
    cols = [first]
    for j in range(1, 8):
        col = [zero] * 8
        col[j - 1] = a
        col[j] = ab
        cols.append(col)
    return ExactMatrix.from_columns(cols)


def e8_volume(alpha: AlphaLike) -> QuadScalar:
    a = _as_scalar(alpha)
    ab = e8_alphabar(a)
    a2, ab2 = a * a, ab * ab
    body = ab2 * (a - ab) * (a2 * a2 + a2 * ab2 + ab2 * ab2) + a ** 6 * (a + ab)
    return body / 2


def e8_center_density(alpha: AlphaLike) -> QuadScalar:
    # lambda1^2 = 2 throughout the family, so delta = 2^4 / (2^8 vol)
    return QS_ONE / (QuadScalar(16) * e8_volume(alpha))


# -- integral members via the Pell-type equation -------------------------------


class PellTriple(NamedTuple):
    p: int
    q: int
    d: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def alphabar(self) -> Fraction:
        return Fraction(self.d, self.q)


def _verify_triple(t: PellTriple) -> None:
    assert 2 * t.q * t.q - t.p * t.p == t.d * t.d
    assert gcd(t.p, t.q) == 1
    assert t.q <= t.p and t.p != t.q
    assert t.p * t.p < 2 * t.q * t.q


def pell_search(q_max: int) -> list[PellTriple]:
    """All coprime (p, q, d) with 2*q^2 - p^2 = d^2, q <= q_max, 1 < p/q < sqrt(2).

    Since p and d must both be odd, each solution is equivalent to the
    primitive Pythagorean triple ((p+d)/2, (p-d)/2, q); sweeping the standard
    (u, v) parameterization of primitive triples with hypotenuse <= q_max is
    therefore exhaustive.  Every emitted triple is re-verified directly.
    """
    if q_max < 1:
        raise DomainError("q_max must be positive")
    found = set()
    u = 2
    while u * u + 1 <= q_max:
        for v in range(1 + (u % 2), u, 2):
            q = u * u + v * v
            if q > q_max:
                break
            if gcd(u, v) != 1:
                continue
            legs = (u * u - v * v, 2 * u * v)
            p = legs[0] + legs[1]
            d = abs(legs[0] - legs[1])
            found.add(PellTriple(p, q, d))
        u += 1
    triples = sorted(found, key=lambda t: (t.q, t.p))
    for t in triples:
        _verify_triple(t)
    return triples


def integral_scaled(family: str, triple: PellTriple, n: int = 8) -> Lattice:
    """q * Dn^(p/q) or 2q * E8^(p/q): an all-integer sublattice of Z^n."""
    _verify_triple(triple)
    alpha = triple.alpha
    if family == "dn":
        gen = dn_generator(n, alpha).scale(triple.q)
    elif family == "e8":
        if n != 8:
            raise DomainError("the deformed E8 family is 8-dimensional")
        gen = e8_generator(alpha).scale(2 * triple.q)
    else:
        raise DomainError(f"unknown family {family!r}")
    if not gen.is_integer():
        raise DomainError("scaled generator is not integral")
    return Lattice(generator=gen)


def family_center_density(family: str, triple_or_alpha, n: int = 8) -> QuadScalar:
    alpha = (
        triple_or_alpha.alpha
        if isinstance(triple_or_alpha, PellTriple)
        else triple_or_alpha
    )
    if family == "dn":
        return dn_center_density(n, alpha)
    if family == "e8":
        return e8_center_density(alpha)
    if family == "hex":
        return hex_center_density(alpha)
    raise DomainError(f"unknown family {family!r}")


def normalized_min_sq(family: str, triple_or_alpha, n: int = 8) -> float:
    """lambda1^2 of the volume-1 rescaling, i.e. 4 * delta^(2/n)."""
    dim = 2 if family == "hex" else (8 if family == "e8" else n)
    delta = family_center_density(family, triple_or_alpha, n)
    return 4.0 * delta.to_float() ** (2.0 / dim)


def table_rows(family: str, triples: list[PellTriple], n: int = 8) -> list[dict]:
    """One report record per triple: exact density plus printed-style decimals."""
    rows = []
    for t in triples:
        delta = family_center_density(family, t, n)
        rows.append(
            {
                "p": t.p,
                "q": t.q,
                "d": t.d,
                "alpha": float(t.alpha),
                "alpha_exact": f"{t.p}/{t.q}",
                "delta": delta.to_float(),
                "delta_exact": delta.to_string(),
                "lambda1sq_normalized": normalized_min_sq(family, t, n),
            }
        )
    return rows


def is_perfect_square(value: int) -> bool:
    return value >= 0 and isqrt(value) ** 2 == value
