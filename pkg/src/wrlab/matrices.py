"""Exact dense matrices over Q(sqrt(k)) and lattice-level operations.

Lattices are presented by a generator matrix (columns form a basis) or by a
Gram matrix.  Equality of integral lattices is span equality over Z, decided
through a canonical Hermite normal form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import DegeneracyError, DomainError, UndecidableError
from .scalar import QuadScalar, sqrt_exact


def _entry(value) -> QuadScalar:
    if isinstance(value, QuadScalar):
        return value
    return QuadScalar(value)


class ExactMatrix:
    """Immutable dense matrix with QuadScalar entries sharing one radicand."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows_of_entries: Iterable[Iterable]):
        entries = tuple(tuple(_entry(v) for v in row) for row in rows_of_entries)
        if not entries or not entries[0]:
            raise DomainError("matrix dimensions must be positive")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise DomainError("ragged matrix rows")
        radicand = 0
        for row in entries:
            for v in row:
                if v.k != 0:
                    if radicand == 0:
                        radicand = v.k
                    elif radicand != v.k:
                        raise DomainError("matrix entries mix distinct radicands")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *args):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_columns(columns: Sequence[Sequence]) -> "ExactMatrix":
        return ExactMatrix(columns).transpose()

    # -- access ----------------------------------------------------------

    def __getitem__(self, index) -> QuadScalar:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> tuple[QuadScalar, ...]:
        return tuple(row[j] for row in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def is_rational(self) -> bool:
        return all(v.is_rational for row in self.entries for v in row)

    def is_integer(self) -> bool:
        return all(v.is_integer() for row in self.entries for v in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(v) for v in row) for row in self.entries
        )
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"

    # -- algebra -----------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DomainError("matrix shapes do not compose")
        cols = [other.column(j) for j in range(other.cols)]
        return ExactMatrix(
            [
                [
                    sum((a * b for a, b in zip(row, col)), QuadScalar(0))
                    for col in cols
                ]
                for row in self.entries
            ]
        )

    def scale(self, factor) -> "ExactMatrix":
        factor = _entry(factor)
        return ExactMatrix(
            [[v * factor for v in row] for row in self.entries]
        )

    def det(self) -> QuadScalar:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DomainError("determinant of a non-square matrix")
        n = self.rows
        work = [list(row) for row in self.entries]
        sign = 1
        prev = QuadScalar(1)
        for p in range(n - 1):
            if not work[p][p]:
                pivot_row = next(
                    (i for i in range(p + 1, n) if work[i][p]), None
                )
                if pivot_row is None:
                    return QuadScalar(0)
                work[p], work[pivot_row] = work[pivot_row], work[p]
                sign = -sign
            for i in range(p + 1, n):
                for j in range(p + 1, n):
                    work[i][j] = (
                        work[p][p] * work[i][j] - work[i][p] * work[p][j]
                    ) / prev
                work[i][p] = QuadScalar(0)
            prev = work[p][p]
        result = work[n - 1][n - 1]
        return -result if sign < 0 else result

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise DomainError("inverse of a non-square matrix")
        n = self.rows
        work = [list(row) + list(ExactMatrix.identity(n).entries[i]) for i, row in enumerate(self.entries)]
        for p in range(n):
            pivot_row = next((i for i in range(p, n) if work[i][p]), None)
            if pivot_row is None:
                raise DegeneracyError("matrix is singular")
            work[p], work[pivot_row] = work[pivot_row], work[p]
            pivot = work[p][p]
            work[p] = [v / pivot for v in work[p]]
            for i in range(n):
                if i != p and work[i][p]:
                    factor = work[i][p]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[p])]
        return ExactMatrix([row[n:] for row in work])

    def rank(self) -> int:
        work = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.cols):
            pivot_row = next(
                (i for i in range(rank, self.rows) if work[i][col]), None
            )
            if pivot_row is None:
                continue
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            pivot = work[rank][col]
            for i in range(rank + 1, self.rows):
                if work[i][col]:
                    factor = work[i][col] / pivot
                    work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
            rank += 1
        return rank

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        radicand = 0
        for row in self.entries:
            for v in row:
                if v.k:
                    radicand = v.k
        payload = {
            "rows": self.rows,
            "cols": self.cols,
            "radicand": radicand,
            "entries": [
                [[str(v.x), str(v.y)] for v in row] for row in self.entries
            ],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "ExactMatrix":
        payload = json.loads(text)
        k = int(payload["radicand"])
        entries = [
            [QuadScalar(Fraction(x), Fraction(y), k) for x, y in row]
            for row in payload["entries"]
        ]
        matrix = ExactMatrix(entries)
        if matrix.rows != payload["rows"] or matrix.cols != payload["cols"]:
            raise DomainError("matrix JSON dimensions do not match entries")
        return matrix


def gram_of(generator: ExactMatrix) -> ExactMatrix:
    """Gram matrix of a generator matrix; rejects rank-deficient input."""
    gram = generator.transpose() @ generator
    if not gram_det(gram):
        raise DegeneracyError("generator matrix is rank deficient")
    return gram


def gram_det(gram: ExactMatrix) -> QuadScalar:
    return gram.det()


class Lattice:
    """Full-rank lattice given by a generator and/or a Gram matrix."""

    __slots__ = ("_generator", "_gram", "dim")

    def __init__(self, generator: Optional[ExactMatrix] = None,
                 gram: Optional[ExactMatrix] = None):
        if generator is None and gram is None:
            raise DomainError("lattice needs a generator or a Gram matrix")
        if gram is not None:
            if not gram.is_symmetric():
                raise DomainError("Gram matrix must be symmetric")
            _check_positive_definite(gram)
        if generator is not None and gram is not None:
            if gram_of(generator) != gram:
                raise DomainError("generator and Gram matrix disagree")
        object.__setattr__(self, "_generator", generator)
        object.__setattr__(self, "_gram", gram)
        dim = generator.cols if generator is not None else gram.rows
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, *args):
        raise AttributeError("Lattice is immutable")

    @staticmethod
    def from_generator(generator: ExactMatrix) -> "Lattice":
        return Lattice(generator=generator)

    @staticmethod
    def from_gram(gram: ExactMatrix) -> "Lattice":
        return Lattice(gram=gram)

    @property
    def generator(self) -> ExactMatrix:
        if self._generator is None:
            raise DomainError("lattice has no generator presentation")
        return self._generator

    @property
    def has_generator(self) -> bool:
        return self._generator is not None

    @property
    def gram(self) -> ExactMatrix:
        if self._gram is not None:
            return self._gram
        return gram_of(self._generator)

    def scale(self, factor) -> "Lattice":
        factor = _entry(factor)
        if self._generator is not None:
            return Lattice(generator=self._generator.scale(factor))
        return Lattice(gram=self._gram.scale(factor * factor))


def _check_positive_definite(gram: ExactMatrix) -> None:
    """Leading principal minors must all be exactly positive."""
    for size in range(1, gram.rows + 1):
        minor = ExactMatrix(
            [row[:size] for row in gram.entries[:size]]
        ).det()
        if minor.sign() <= 0:
            raise DomainError("Gram matrix is not positive definite")


def det_exact(matrix: ExactMatrix) -> QuadScalar:
    return matrix.det()


def volume(lattice: Lattice) -> QuadScalar:
    """Exact covolume.

    Uses |det(generator)| when a generator is present; otherwise the square
    root of det(Gram), which always succeeds for rational determinants (the
    radicand is extended as needed) and raises UndecidableError when the
    root does not live in a single quadratic extension.
    """
    if lattice.has_generator:
        return abs(lattice.generator.det())
    root = sqrt_exact(lattice.gram.det())
    if root is None:
        raise UndecidableError(
            "volume is not expressible in a single quadratic extension; "
            "use volume_float"
        )
    return root


def volume_float(lattice: Lattice, precision: int = 128) -> float:
    if lattice.has_generator:
        return abs(lattice.generator.det().to_float(precision))
    import math

    det = lattice.gram.det()
    return math.sqrt(det.to_float(precision))


def dual(lattice: Lattice) -> Lattice:
    """Dual lattice: generator (M^T)^-1, or Gram G^-1."""
    if lattice.has_generator:
        return Lattice(generator=lattice.generator.transpose().inverse())
    return Lattice(gram=lattice.gram.inverse())


# -- Hermite normal form and span equality ------------------------------------


def _row_hnf(rows: list[list[int]]) -> list[list[int]]:
    mat = [row[:] for row in rows]
    if not mat:
        return mat
    m, n = len(mat), len(mat[0])
    pivot_row = 0
    for col in range(n):
        pivot = next((i for i in range(pivot_row, m) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        for i in range(pivot_row + 1, m):
            while mat[i][col]:
                q = mat[pivot_row][col] // mat[i][col]
                mat[pivot_row] = [
                    a - q * b for a, b in zip(mat[pivot_row], mat[i])
                ]
                mat[pivot_row], mat[i] = mat[i], mat[pivot_row]
        if mat[pivot_row][col] < 0:
            mat[pivot_row] = [-a for a in mat[pivot_row]]
        for i in range(pivot_row):
            q = mat[i][col] // mat[pivot_row][col]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
    return [row for row in mat[:pivot_row]]


def hnf(matrix: ExactMatrix) -> ExactMatrix:
    """Column-style Hermite normal form: canonical for the column span over Z."""
    if not matrix.is_integer():
        raise DomainError("Hermite normal form requires integer entries")
    columns = [
        [int(matrix[i, j].x) for i in range(matrix.rows)]
        for j in range(matrix.cols)
    ]
    reduced = _row_hnf(columns)
    if len(reduced) < matrix.cols:
        raise DegeneracyError("matrix is not of full column rank")
    return ExactMatrix(reduced).transpose()


def _integral_scaling(matrices: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """Scale all matrices by one common factor so entries become integers."""
    rational = all(m.is_rational() for m in matrices)
    radicands = {
        v.k for m in matrices for row in m.entries for v in row if v.k
    }
    if rational:
        denominator = 1
        for m in matrices:
            for row in m.entries:
                for v in row:
                    denominator = lcm(denominator, v.x.denominator)
        return [m.scale(denominator) for m in matrices]
    if len(radicands) == 1 and all(
        v.x == 0 for m in matrices for row in m.entries for v in row if v
    ):
        # Pure multiples of one surd: divide the surd out, then clear denominators.
        k = radicands.pop()
        stripped = [
            ExactMatrix([[QuadScalar(v.y) for v in row] for row in m.entries])
            for m in matrices
        ]
        return _integral_scaling(stripped)
    raise UndecidableError(
        "no common rational scaling makes both lattices integral"
    )


def lattices_equal(first: Lattice, second: Lattice) -> bool:
    """Span equality over Z after one common integral scaling."""
    a, b = _integral_scaling([first.generator, second.generator])
    if a.rows != b.rows:
        return False
    return hnf(a) == hnf(b)


def index_of(sub: Lattice, sup: Lattice) -> QuadScalar:
    """Index [sup : sub] = vol(sub)/vol(sup); verifies containment first."""
    coords = sup.generator.inverse() @ sub.generator
    if not coords.is_integer():
        raise DomainError("first lattice is not contained in the second")
    return abs(coords.det())


# -- shape recognizers ---------------------------------------------------------


def recognize_scaled_identity(gram: ExactMatrix) -> Optional[QuadScalar]:
    """Scale c with gram == c*I, if any."""
    if not gram.is_symmetric():
        raise DomainError("recognizer expects a symmetric matrix")
    c = gram[0, 0]
    if not c:
        return None
    n = gram.rows
    for i in range(n):
        for j in range(n):
            expected = c if i == j else QuadScalar(0)
            if gram[i, j] != expected:
                return None
    return c


def _an_standard_gram(n: int, c: QuadScalar) -> ExactMatrix:
    two_c = c + c
    return ExactMatrix(
        [
            [
                two_c if i == j else (-c if abs(i - j) == 1 else QuadScalar(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
    )


def recognize_scaled_An(gram: ExactMatrix) -> Optional[QuadScalar]:
    """Scale c identifying gram as c times an A_n Gram matrix.

    Accepts either the all-ones form (diagonal 2c, off-diagonal c), the
    standard tridiagonal form, or a matrix that the explicit bidiagonal
    unimodular change of basis carries onto the tridiagonal form.
    """
    if not gram.is_symmetric():
        raise DomainError("recognizer expects a symmetric matrix")
    n = gram.rows
    if n < 2:
        return None
    # all-ones form
    c = gram[0, 1]
    if c:
        match = all(
            gram[i, j] == (c + c if i == j else c)
            for i in range(n)
            for j in range(n)
        )
        if match:
            return c
    # already tridiagonal
    c = -gram[0, 1]
    if c and gram == _an_standard_gram(n, c):
        return c
    # bidiagonal transform of the all-ones form
    u = ExactMatrix(
        [
            [1 if i == j else (-1 if i == j + 1 else 0) for j in range(n)]
            for i in range(n)
        ]
    )
    transformed = u @ gram @ u.transpose()
    c = transformed[0, 0] / 2
    if c and transformed == _an_standard_gram(n, c):
        return c
    return None
