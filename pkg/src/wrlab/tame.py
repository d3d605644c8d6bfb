"""Lattices with a constant-diagonal Gram form (diagonal a, off-diagonal -h,
a - h(n-1) = 1), their index-|m*r^(n-1)| sublattices under the map
x -> r*x + s*T(x)*v1, the well-rounded classification window for (m/r)^2,
center densities, duality, and the explicit coordinate constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .deform import e8_generator
from .errors import DegeneracyError, DomainError
from .matrices import ExactMatrix, Lattice
from .scalar import QuadScalar

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class TameParams:
    n: int
    a: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "h", Fraction(self.h))
        if self.n < 2:
            raise DomainError("dimension must be at least 2")
        if self.a - self.h * (self.n - 1) != 1:
            raise DomainError("parameters must satisfy a - h(n-1) = 1")
        if self.a * self.n <= 1 or self.h * self.n <= -1:
            raise DomainError("parameters must satisfy a > 1/n and h > -1/n")

    @staticmethod
    def from_a(n: int, a: Rational) -> "TameParams":
        a = Fraction(a)
        return TameParams(n, a, (a - 1) / (n - 1))


def tame_gram(p: TameParams) -> ExactMatrix:
    a, h = QuadScalar(p.a), QuadScalar(-p.h)
    return ExactMatrix(
        [[a if i == j else h for j in range(p.n)] for i in range(p.n)]
    )


def tame_lattice(p: TameParams) -> Lattice:
    return Lattice(gram=tame_gram(p))


def tame_volume(p: TameParams) -> QuadScalar:
    return QuadScalar.sqrt_rational((p.a + p.h) ** (p.n - 1))


def tame_dual(p: TameParams) -> TameParams:
    denom = p.a + p.h
    return TameParams(p.n, (1 + p.h) / denom, -p.h / denom)


# -- the (r, s) sublattice at the Gram level -----------------------------------


def _check_rs(p: TameParams, r: int, s: int) -> int:
    """Validates r, returns m = r + s*n (the functional takes value n at v1)."""
    if r == 0 or abs(r) >= p.n:
        raise DomainError("need 0 < |r| < n")
    return r + s * p.n


def phi_sublattice_gram(p: TameParams, r: int, s: int) -> ExactMatrix:
    m = _check_rs(p, r, s)
    shift = Fraction(m * m - r * r, p.n)
    diag = QuadScalar(p.a * r * r + shift)
    off = QuadScalar(-p.h * r * r + shift)
    return ExactMatrix(
        [[diag if i == j else off for j in range(p.n)] for i in range(p.n)]
    )


def sublattice_min_sq_claim(p: TameParams, r: int, s: int) -> Fraction:
    """The closed-form lambda1^2 (valid when (m/r)^2 lies in the window)."""
    m = _check_rs(p, r, s)
    return p.a * r * r + Fraction(m * m - r * r, p.n)


@dataclass(frozen=True)
class WrClassification:
    tag: str  # OutsideWindow | GwrInterior | AnBoundary | ZnPoint
    window: tuple[Fraction, Fraction]
    x0: Fraction
    ratio_sq: Fraction
    m: int


def window_bounds(p: TameParams) -> tuple[Fraction, Fraction, Fraction]:
    """(l, x0, u): the admissible interval for (m/r)^2 and its two special points."""
    na1 = p.n * p.a - 1
    l = na1 / (p.n * p.n - 1)
    x0 = na1 / (p.n - 1)
    u = na1 * (p.n + 1) / (p.n - 1)
    return l, x0, u


def classify_wr(p: TameParams, r: int, s: int) -> WrClassification:
    m = _check_rs(p, r, s)
    l, x0, u = window_bounds(p)
    ratio_sq = Fraction(m * m, r * r)
    if ratio_sq < l or ratio_sq > u:
        tag = "OutsideWindow"
    elif ratio_sq == x0:
        tag = "ZnPoint"
    elif ratio_sq == u:
        tag = "AnBoundary"
    else:
        tag = "GwrInterior"
    return WrClassification(tag, (l, u), x0, ratio_sq, m)


def sublattice_center_density(p: TameParams, r: int, s: int) -> QuadScalar:
    """Exact center density of the (r, s) sublattice; its square is rational."""
    cls = classify_wr(p, r, s)
    if cls.tag == "OutsideWindow":
        raise DomainError("(m/r)^2 outside the well-rounded window")
    n, m = p.n, cls.m
    na1 = p.n * p.a - 1
    numerator = (na1 * r * r + m * m) ** n
    denominator = (
        Fraction(4) ** n
        * Fraction(n) ** n
        * (p.a + p.h) ** (n - 1)
        * Fraction(m * m * r ** (2 * n - 2))
    )
    return QuadScalar.sqrt_rational(numerator / denominator)


def density_window_extremes(
    n: int, a: Rational
) -> tuple[Fraction, Fraction, Fraction]:
    """(f(l), f(x0), f(u)) for f(x) = (na-1+x)^n / x; checks f(x0) < f(l) <= f(u)."""
    a = Fraction(a)
    if a * n <= 1:
        raise DomainError("need a > 1/n")
    na1 = n * a - 1
    f_l = (
        Fraction(n) ** (2 * n) * na1 ** (n - 1) / Fraction(n * n - 1) ** (n - 1)
    )
    f_x0 = Fraction(n) ** n * na1 ** (n - 1) / Fraction(n - 1) ** (n - 1)
    f_u = 2 ** n * f_x0 / (n + 1)
    if not (f_x0 < f_l <= f_u):
        raise DomainError("window extremes violate the expected ordering")
    return f_l, f_x0, f_u


def dual_of_sublattice(p: TameParams, r: int) -> Lattice:
    """Dual of the (r, r*h) sublattice: the ambient lattice scaled by 1/(r(a+h))."""
    if (r * p.h).denominator != 1:
        raise DomainError("s = r*h must be an integer")
    _check_rs(p, r, int(r * p.h))
    factor = QuadScalar(Fraction(1) / (r * (p.a + p.h)))
    return Lattice(gram=tame_gram(p).scale(factor * factor))


# -- coordinate-level construction ---------------------------------------------


@dataclass(frozen=True)
class SublatticeSpec:
    """Data for x -> r*x + s*T(x)*v1 on an ambient lattice given in coordinates.

    functional: integer vector c with T(x) = c.x in ambient coordinates, or
    None for the distinguished functional taking value 1 at every basis vector.
    pivot: v1 in ambient coordinates.  strict=False admits the parameter pairs
    arising from dualization, where only r != 0 and m != 0 are required.
    """

    functional: Optional[tuple[int, ...]]
    pivot: tuple[int, ...]
    r: int
    s: int
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "pivot", tuple(int(v) for v in self.pivot))
        if self.functional is not None:
            functional = tuple(int(v) for v in self.functional)
            if len(functional) != len(self.pivot):
                raise DomainError("functional and pivot dimensions differ")
            object.__setattr__(self, "functional", functional)
        if self.r == 0:
            raise DomainError("r must be nonzero")

    def t_of(self, vector: Sequence[int]) -> int:
        if self.functional is None:
            return sum(vector)
        return sum(c * v for c, v in zip(self.functional, vector))

    @property
    def t_pivot(self) -> int:
        return self.t_of(self.pivot)

    @property
    def m(self) -> int:
        return self.r + self.s * self.t_pivot

    def validate(self) -> None:
        t1 = self.t_pivot
        if t1 == 0:
            raise DomainError("pivot lies in the kernel of the functional")
        if self.m == 0:
            raise DegeneracyError("m = r + s*T(v1) must be nonzero")
        if self.strict and abs(self.r) >= abs(t1):
            raise DomainError("need 0 < |r| < |T(v1)|")


def phi_image_generator(ambient: ExactMatrix, spec: SublatticeSpec) -> ExactMatrix:
    """Generator whose columns are r*b_i + s*T(b_i)*v1 over the ambient basis."""
    spec.validate()
    n = ambient.rows
    if len(spec.pivot) != n:
        raise DomainError("pivot dimension does not match the ambient lattice")
    cols = []
    for j in range(ambient.cols):
        b = ambient.column(j)
        if spec.functional is None:
            if any(not v.is_integer() for v in b):
                raise DomainError(
                    "default functional needs integer ambient coordinates"
                )
            t_b = sum(int(v.x) for v in b)
        else:
            t_b = sum(
                QuadScalar(c) * v for c, v in zip(spec.functional, b)
            )
            if not t_b.is_integer():
                raise DomainError("functional is not integer-valued on the basis")
            t_b = int(t_b.x)
        cols.append(
            [
                QuadScalar(spec.r) * b[i] + QuadScalar(spec.s * t_b * spec.pivot[i])
                for i in range(n)
            ]
        )
    return ExactMatrix.from_columns(cols)


def dual_spec(spec: SublatticeSpec) -> SublatticeSpec:
    """The construction data acting on the dual ambient lattice.

    Functional and pivot swap roles (T~(y) = v1.y, v1~ = c), preserving
    T~(v1~) = T(v1); the parameters become (m, -s).  Together with the scale
    from dual_image_scale, the dual of the (r, s) image is exactly the
    (m, -s) image of the dual ambient lattice.
    """
    spec.validate()
    if spec.functional is None:
        raise DomainError("dualization needs an explicit functional vector")
    return SublatticeSpec(
        functional=spec.pivot,
        pivot=spec.functional,
        r=spec.m,
        s=-spec.s,
        strict=False,
    )


def dual_image_scale(spec: SublatticeSpec) -> Fraction:
    """dual(image of spec) = scale * (image of dual_spec on the dual ambient)."""
    spec.validate()
    return Fraction(1, spec.r * spec.m)


# -- named constructions -------------------------------------------------------


def construct_An_from_Zn(n: int) -> Lattice:
    """(d+1, 1) image of Z^n when n + 1 = d^2: a (d+1)-scaled A_n."""
    from math import isqrt

    d = isqrt(n + 1)
    if d * d != n + 1 or d <= 2:
        raise DomainError("need n + 1 = d^2 with d > 2")
    spec = SublatticeSpec(
        functional=(1,) * n, pivot=(1,) * n, r=d + 1, s=1
    )
    return Lattice(generator=phi_image_generator(ExactMatrix.identity(n), spec))


def construct_An_general(n: int, r: int) -> Lattice:
    """(r, r) image of the tame (a, h) = (n, 1) lattice in explicit coordinates.

    The ambient basis is e_i' = ((1 - sqrt(n+1))/n) * v1 + sqrt(n+1) * e_i,
    whose Gram matrix is the tame (n, 1) form; the image is |r|sqrt(n+1) A_n.
    """
    if r == 0 or abs(r) >= n:
        raise DomainError("need 0 < |r| < n")
    root = QuadScalar(0, 1, n + 1)
    shared = (QuadScalar(1) - root) / n
    cols = []
    for i in range(n):
        col = [shared] * n
        col[i] = shared + root
        cols.append(col)
    ambient = ExactMatrix.from_columns(cols)
    # the image columns are r*e_i' + r*v1, where v1 = sum of the e_i' is the
    # all-ones vector in these coordinates
    pivot_col = [
        sum((ambient[i, j] for j in range(n)), QuadScalar(0)) for i in range(n)
    ]
    image_cols = [
        [
            QuadScalar(r) * ambient[i, j] + QuadScalar(r) * pivot_col[i]
            for i in range(n)
        ]
        for j in range(n)
    ]
    return Lattice(generator=ExactMatrix.from_columns(image_cols))


def construct_doubled_e8_integral() -> Lattice:
    """(2, 1) image of Z^8 under an alternating-sign functional: an
    all-integer copy of twice the E8 root lattice (index 256 in Z^8)."""
    spec = SublatticeSpec(
        functional=(1, -1, 1, -1, 1, -1, 1, -1),
        pivot=(-1, 1, -1, 1, 1, 1, 1, 1),
        r=2,
        s=1,
    )
    return Lattice(generator=phi_image_generator(ExactMatrix.identity(8), spec))


def reference_doubled_e8() -> Lattice:
    """Twice the odd-coordinate-system E8 generator (the alpha = 1 member)."""
    return Lattice(generator=e8_generator(1).scale(2))


def construct_dim9_densest() -> Lattice:
    spec = SublatticeSpec(
        functional=(1, -1, 1, -1, 1, -1, 1, -1, 1),
        pivot=(-1, -1, -1, -1, -1, -1, -2, 1, -1),
        r=2,
        s=1,
    )
    return Lattice(generator=phi_image_generator(ExactMatrix.identity(9), spec))
