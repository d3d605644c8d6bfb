"""Exact shortest-vector enumeration on a Gram matrix, minimal-vector reports
with well-rounded certification, and truncated theta / flatness evaluation.

Enumeration uses the quadratic form's LDL^T decomposition: u^T G u =
sum_i d_i (u_i + sum_{j>i} L_ji u_j)^2, walking coordinates from the last to
the first with exact interval bounds.  No floating point is involved in any
comparison, so the returned sets are complete.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, ResourceError
from .matrices import ExactMatrix, Lattice, dual
from .scalar import QuadScalar

DEFAULT_NODE_CAP = 10 ** 9

BoundLike = Union[int, Fraction, QuadScalar]


def _node_cap(override: Optional[int]) -> int:
    if override is not None:
        return override
    env = os.environ.get("WRLAB_NODE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


def _floor(value) -> int:
    if isinstance(value, QuadScalar):
        return value.floor()
    return math.floor(value)


def _rows_of(gram: ExactMatrix):
    """Gram entries as Fractions when possible (faster), else QuadScalars."""
    if not gram.is_symmetric():
        raise DomainError("Gram matrix must be symmetric")
    if gram.is_rational():
        return [[v.x for v in row] for row in gram.entries], Fraction(0)
    return [list(row) for row in gram.entries], QuadScalar(0)


def _ldl(rows, zero):
    """G = L D L^T with unit lower-triangular L; requires exact positivity."""
    n = len(rows)
    d = [zero] * n
    lower = [[zero] * n for _ in range(n)]
    for i in range(n):
        di = rows[i][i]
        for k in range(i):
            di = di - lower[i][k] * lower[i][k] * d[k]
        if not di > 0:
            raise DomainError("Gram matrix is not positive definite")
        d[i] = di
        for j in range(i + 1, n):
            v = rows[j][i]
            for k in range(i):
                v = v - lower[j][k] * lower[i][k] * d[k]
            lower[j][i] = v / di
    return d, lower


class _Counter:
    __slots__ = ("nodes", "cap")

    def __init__(self, cap: int):
        self.nodes = 0
        self.cap = cap

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cap:
            raise ResourceError(
                f"enumeration exceeded the node cap of {self.cap}"
            )


def _enumerate_pairs(gram: ExactMatrix, bound, node_cap: Optional[int]):
    """All (coefficients, squared norm) with 0 < norm <= bound, both signs."""
    rows, zero = _rows_of(gram)
    n = len(rows)
    if isinstance(zero, Fraction) and isinstance(bound, QuadScalar):
        if bound.is_rational:
            bound = bound.x
        else:
            rows = [[QuadScalar(v) for v in row] for row in rows]
            zero = QuadScalar(0)
    if isinstance(zero, QuadScalar) and not isinstance(bound, QuadScalar):
        bound = QuadScalar(bound)
    if not bound > 0:
        raise DomainError("bound must be positive")
    d, lower = _ldl(rows, zero)
    # only the nonzero multipliers contribute to the projection centers
    supports = [
        [(j, lower[j][i]) for j in range(i + 1, n) if lower[j][i] != zero]
        for i in range(n)
    ]
    counter = _Counter(_node_cap(node_cap))
    u = [0] * n
    results = []

    def descend(i, remaining):
        if i < 0:
            if any(u):
                results.append((tuple(u), bound - remaining))
            return
        center = zero
        for j, mult in supports[i]:
            if u[j]:
                center = center + mult * u[j]
        base = _floor(-center)
        # walk down from the floor and up from the next integer; the cost
        # d_i (u_i + center)^2 is monotone on each side
        ui = base
        while True:
            counter.tick()
            cost = d[i] * (ui + center) * (ui + center)
            if cost > remaining:
                break
            u[i] = ui
            descend(i - 1, remaining - cost)
            ui -= 1
        ui = base + 1
        while True:
            counter.tick()
            cost = d[i] * (ui + center) * (ui + center)
            if cost > remaining:
                break
            u[i] = ui
            descend(i - 1, remaining - cost)
            ui += 1
        u[i] = 0

    descend(n - 1, bound)
    return results


def enumerate_below(
    gram: ExactMatrix, bound_sq: BoundLike, node_cap: Optional[int] = None
) -> list[tuple[int, ...]]:
    """All nonzero integer coefficient vectors u with u^T G u <= bound_sq."""
    bound = bound_sq if isinstance(bound_sq, QuadScalar) else Fraction(bound_sq)
    return [u for u, _ in _enumerate_pairs(gram, bound, node_cap)]


@dataclass(frozen=True)
class SvpReport:
    lambda1_sq: QuadScalar
    minimal_coeffs: tuple[tuple[int, ...], ...]
    kissing: int
    is_wr: bool
    is_gwr: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda1_sq": self.lambda1_sq.to_string(),
                "lambda1_sq_float": self.lambda1_sq.to_float(),
                "minimal_coeffs": [list(u) for u in self.minimal_coeffs],
                "kissing": self.kissing,
                "is_wr": self.is_wr,
                "is_gwr": self.is_gwr,
            }
        )


def svp_report(gram: ExactMatrix, node_cap: Optional[int] = None) -> SvpReport:
    """Exact minimum, canonical minimal vectors, kissing number, WR/GWR flags."""
    diag = [gram[i, i] for i in range(gram.rows)]
    bound = min(diag)  # the minimum never exceeds a diagonal entry
    pairs = _enumerate_pairs(gram, _as_working(bound), node_cap)
    lam = min(norm for _, norm in pairs)
    canonical = set()
    for u, norm in pairs:
        if norm == lam:
            canonical.add(min(u, tuple(-x for x in u)))
    minimal = tuple(sorted(canonical))
    rank = ExactMatrix([list(u) for u in minimal]).rank() if minimal else 0
    n = gram.rows
    kissing = 2 * len(minimal)
    is_wr = rank == n
    lam_scalar = lam if isinstance(lam, QuadScalar) else QuadScalar(lam)
    return SvpReport(lam_scalar, minimal, kissing, is_wr, is_wr and kissing == 2 * n)


def _as_working(value: QuadScalar):
    return value.x if value.is_rational else value


@dataclass(frozen=True)
class ThetaResult:
    value: float
    tail_bound: float
    terms: int  # lattice vectors counted, excluding the origin

    def as_row(self, parameter: float) -> tuple[float, float, float]:
        return (parameter, self.value, self.tail_bound)


def theta_truncated(
    gram: ExactMatrix,
    q: float,
    radius_sq: BoundLike,
    node_cap: Optional[int] = None,
) -> ThetaResult:
    """1 + sum of q^(|x|^2) over nonzero x with |x|^2 <= radius_sq.

    The tail bound terms * q^radius / (1 - q) is heuristic metadata for small
    q, not a certified remainder.
    """
    sum_part, tail, terms = theta_sum(gram, q, radius_sq, node_cap)
    return ThetaResult(1.0 + sum_part, tail, terms)


def theta_sum(
    gram: ExactMatrix,
    q: float,
    radius_sq: BoundLike,
    node_cap: Optional[int] = None,
) -> tuple[float, float, int]:
    """The nonzero-vector part of the truncated theta series.

    Kept separate from the leading 1 so that quantities like the flatness
    factor avoid catastrophic cancellation when the sum is tiny.
    """
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    bound = radius_sq if isinstance(radius_sq, QuadScalar) else Fraction(radius_sq)
    pairs = _enumerate_pairs(gram, bound, node_cap)
    value = math.fsum(q ** float(norm) for _, norm in pairs)
    tail = len(pairs) * q ** float(bound) / (1.0 - q)
    return value, tail, len(pairs)


def flatness_factor(
    lattice: Lattice,
    sigma: float,
    radius_sq: BoundLike,
    node_cap: Optional[int] = None,
) -> float:
    """Theta of the dual lattice at q = exp(-2 pi sigma^2), minus one."""
    if sigma <= 0:
        raise DomainError("sigma must be positive")
    q = math.exp(-2.0 * math.pi * sigma * sigma)
    dual_gram = dual(lattice).gram
    return theta_sum(dual_gram, q, radius_sq, node_cap)[0]
