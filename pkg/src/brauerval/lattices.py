"""Exact rational lattices between Z^n and (1/m)Z^n.

Value groups of the algebras we certify are finitely generated subgroups
of Q^n that contain Z^n.  This module gives them a canonical form (a
lower triangular Hermite basis over a minimal common denominator) plus
the handful of operations the verification layer needs: intersection,
index, duals, mod-p image ranks and exhaustive enumeration of the
overlattices of Z^n of bounded exponent.

Coordinates are ordered innermost first.  The valuation on an iterated
Laurent series field compares the *outermost* variable first, so the
lexicographic order used throughout reads tuples from the last
coordinate down to the first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    DimensionMismatch,
    EnumerationBound,
    MembershipError,
    NonContainment,
    UnsupportedConfiguration,
)

FractionLike = Fraction | int


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _frac(x: FractionLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, slots=True)
class ValueVector:
    """A point of Q^n, compared last coordinate first."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def of(*coords: FractionLike) -> ValueVector:
        return ValueVector(tuple(_frac(c) for c in coords))

    @staticmethod
    def zero(dim: int) -> ValueVector:
        return ValueVector((Fraction(0),) * dim)

    @staticmethod
    def unit(dim: int, index: int) -> ValueVector:
        if not 0 <= index < dim:
            raise DimensionMismatch(f"unit index {index} outside dimension {dim}")
        coords = [Fraction(0)] * dim
        coords[index] = Fraction(1)
        return ValueVector(tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _require_same_dim(self, other: ValueVector) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: ValueVector) -> ValueVector:
        self._require_same_dim(other)
        return ValueVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: ValueVector) -> ValueVector:
        self._require_same_dim(other)
        return ValueVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> ValueVector:
        return ValueVector(tuple(-a for a in self.coords))

    def scale(self, factor: FractionLike) -> ValueVector:
        f = _frac(factor)
        return ValueVector(tuple(f * a for a in self.coords))

    def mod1(self) -> ValueVector:
        """Reduce every coordinate into [0, 1)."""
        return ValueVector(tuple(a - (a.numerator // a.denominator) for a in self.coords))

    def _key(self) -> tuple[Fraction, ...]:
        # outermost coordinate is most significant
        return self.coords[::-1]

    def __lt__(self, other: ValueVector) -> bool:
        self._require_same_dim(other)
        return self._key() < other._key()

    def __le__(self, other: ValueVector) -> bool:
        self._require_same_dim(other)
        return self._key() <= other._key()

    def __gt__(self, other: ValueVector) -> bool:
        self._require_same_dim(other)
        return self._key() > other._key()

    def __ge__(self, other: ValueVector) -> bool:
        self._require_same_dim(other)
        return self._key() >= other._key()

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def lex_compare(a: ValueVector, b: ValueVector) -> Ordering:
    """Compare two value vectors, most significant coordinate last."""
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _hermite_leading(rows: list[list[int]], n: int) -> list[list[int]] | None:
    """Row Hermite form with leading pivots, or None if rank < n.

    The result has the pivot of row i at column i, a positive diagonal
    and entries above each pivot reduced into [0, pivot).
    """
    work = [list(r) for r in rows if any(r)]
    result: list[list[int]] = []
    for col in range(n):
        pivot: list[int] | None = None
        rest: list[list[int]] = []
        for r in work:
            if r[col] == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            a, b = pivot[col], r[col]
            g, x, y = _xgcd(a, b)
            # the 2x2 transform [[x, y], [-b//g, a//g]] has determinant 1
            new_p = [x * u + y * v for u, v in zip(pivot, r)]
            new_r = [(a // g) * v - (b // g) * u for u, v in zip(pivot, r)]
            pivot = new_p
            if any(new_r):
                rest.append(new_r)
        if pivot is None:
            return None
        if pivot[col] < 0:
            pivot = [-u for u in pivot]
        result.append(pivot)
        work = rest
    for col in range(n):
        for i in range(col):
            q = result[i][col] // result[col][col]
            if q:
                result[i] = [u - q * v for u, v in zip(result[i], result[col])]
    return result


def _hermite_trailing(rows: list[list[int]], n: int) -> list[list[int]] | None:
    """Lower triangular Hermite form: row i supported on columns 0..i."""
    reversed_rows = [r[::-1] for r in rows]
    her = _hermite_leading(reversed_rows, n)
    if her is None:
        return None
    return [her[n - 1 - i][::-1] for i in range(n)]


@dataclass(frozen=True, slots=True)
class Lattice:
    """(1/denominator) times the row span of an integer Hermite basis.

    rows is lower triangular with positive diagonal and off-diagonal
    entries reduced mod the diagonal below them, and gcd(denominator,
    all entries) == 1, so equal lattices compare equal as dataclasses.
    Construct through the classmethods; the raw constructor performs no
    normalisation.
    """

    dim: int
    denominator: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def integers(cls, dim: int) -> Lattice:
        rows = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        return cls(dim, 1, rows)

    @classmethod
    def _from_integer_rows(cls, dim: int, denominator: int, rows: list[list[int]]) -> Lattice:
        her = _hermite_trailing(rows, dim)
        if her is None:
            raise UnsupportedConfiguration("generators do not span the full dimension")
        g = denominator
        for r in her:
            for x in r:
                g = gcd(g, x)
        g = max(g, 1)
        return cls(dim, denominator // g, tuple(tuple(x // g for x in r) for r in her))

    @classmethod
    def from_generators(
        cls,
        dim: int,
        generators: list[ValueVector] | tuple[ValueVector, ...],
        include_integers: bool = True,
    ) -> Lattice:
        """Smallest lattice containing the generators (and Z^dim by default)."""
        for v in generators:
            if v.dim != dim:
                raise DimensionMismatch(f"generator dimension {v.dim}, expected {dim}")
        den = 1
        for v in generators:
            for c in v.coords:
                den = lcm(den, c.denominator)
        rows = [[int(c * den) for c in v.coords] for v in generators]
        if include_integers:
            for i in range(dim):
                rows.append([den if i == j else 0 for j in range(dim)])
        return cls._from_integer_rows(dim, den, rows)

    @classmethod
    def diagonal(cls, entries: list[FractionLike] | tuple[FractionLike, ...]) -> Lattice:
        """Lattice with orthogonal basis entries[i] * e_i."""
        dim = len(entries)
        gens = [ValueVector.unit(dim, i).scale(entries[i]) for i in range(dim)]
        return cls.from_generators(dim, gens, include_integers=False)

    @property
    def basis(self) -> tuple[ValueVector, ...]:
        d = self.denominator
        return tuple(
            ValueVector(tuple(Fraction(x, d) for x in row)) for row in self.rows
        )

    def determinant(self) -> Fraction:
        det = Fraction(1)
        for i in range(self.dim):
            det *= Fraction(self.rows[i][i], self.denominator)
        return det

    def rational_coords(self, vec: ValueVector) -> tuple[Fraction, ...]:
        """Coefficients of vec in the basis, solved from the last coordinate."""
        if vec.dim != self.dim:
            raise DimensionMismatch(f"vector dimension {vec.dim}, lattice {self.dim}")
        residual = [c for c in vec.coords]
        coeffs = [Fraction(0)] * self.dim
        for i in range(self.dim - 1, -1, -1):
            c = residual[i] / Fraction(self.rows[i][i], self.denominator)
            coeffs[i] = c
            for j in range(i + 1):
                residual[j] -= c * Fraction(self.rows[i][j], self.denominator)
        return tuple(coeffs)

    def coords_of(self, vec: ValueVector) -> tuple[int, ...]:
        coords = self.rational_coords(vec)
        if any(c.denominator != 1 for c in coords):
            raise MembershipError(f"{vec} is not in the lattice")
        return tuple(int(c) for c in coords)

    def contains(self, vec: ValueVector) -> bool:
        return all(c.denominator == 1 for c in self.rational_coords(vec))

    def contains_lattice(self, other: Lattice) -> bool:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return all(self.contains(v) for v in other.basis)

    def order_of_class(self, vec: ValueVector) -> int:
        """Order of vec in Q^dim modulo this lattice (1 if vec lies in it)."""
        coords = self.rational_coords(vec)
        order = 1
        for c in coords:
            order = lcm(order, c.denominator)
        return order

    def index_over(self, sub: Lattice) -> int:
        """[self : sub] for a full-rank sublattice, by determinant ratio."""
        if not self.contains_lattice(sub):
            raise NonContainment("index requested over a non-sublattice")
        ratio = sub.determinant() / self.determinant()
        if ratio.denominator != 1:
            raise NonContainment("determinant ratio is not an integer")
        return int(ratio)

    def scale(self, factor: FractionLike) -> Lattice:
        """The lattice of all factor * x for x in self."""
        f = _frac(factor)
        if f == 0:
            raise UnsupportedConfiguration("cannot scale a lattice by zero")
        return Lattice.from_generators(
            self.dim, [v.scale(f) for v in self.basis], include_integers=False
        )

    def sum_with(self, other: Lattice) -> Lattice:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return Lattice.from_generators(
            self.dim, list(self.basis) + list(other.basis), include_integers=False
        )

    def dual(self) -> Lattice:
        """{y : <x, y> in Z for all x in self}, via the inverse transpose."""
        inv = _invert_lower(self.rows, self.denominator)
        gens = [
            ValueVector(tuple(inv[i][j] for i in range(self.dim)))
            for j in range(self.dim)
        ]
        return Lattice.from_generators(self.dim, gens, include_integers=False)

    def intersect(self, other: Lattice) -> Lattice:
        return self.dual().sum_with(other.dual()).dual()

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"(1/{self.denominator})[{body}]"


def _invert_lower(rows: tuple[tuple[int, ...], ...], denominator: int) -> list[list[Fraction]]:
    """Exact inverse of the basis matrix rows/denominator (lower triangular)."""
    n = len(rows)
    b = [[Fraction(rows[i][j], denominator) for j in range(n)] for i in range(n)]
    inv = [[Fraction(0)] * n for _ in range(n)]
    for col in range(n):
        # forward substitution: row i of the inverse solves b @ x = e_col
        for i in range(n):
            s = Fraction(1 if i == col else 0)
            for j in range(i):
                s -= b[i][j] * inv[j][col]
            inv[i][col] = s / b[i][i]
    return inv


def lattice_canonicalize(dim: int, generators: list[ValueVector]) -> Lattice:
    """Canonical form of the lattice generated by Z^dim and the generators."""
    return Lattice.from_generators(dim, generators, include_integers=True)


def lattice_intersect(a: Lattice, b: Lattice) -> Lattice:
    return a.intersect(b)


def lattice_index(sup: Lattice, sub: Lattice) -> int:
    return sup.index_over(sub)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    mat = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] % p != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] % p != 0:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def modp_image_rank(vectors: list[ValueVector], lattice: Lattice, p: int) -> int:
    """Rank over F_p of the images of the vectors in lattice / p * lattice."""
    if not vectors:
        return 0
    coord_rows = [list(lattice.coords_of(v)) for v in vectors]
    return _rank_mod_p(coord_rows, p)


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


def _is_prime_power(q: int, p: int) -> bool:
    if q == 1:
        return True
    while q % p == 0:
        q //= p
    return q == 1


def enumerate_overlattices(
    dim: int, p: int, max_index: int, bound: int = 1 << 24
) -> list[Lattice]:
    """All lattices L with Z^dim <= L <= (1/q) Z^dim and [L : Z^dim] | q.

    q = max_index must be a power of p.  Every candidate is produced
    exactly once through its Hermite basis, so the output has no
    duplicates; it is sorted by index, then by canonical form.  Raises
    EnumerationBound if the raw candidate count would exceed bound.
    """
    q = max_index
    if q < 1 or not _is_prime_power(q, p):
        raise UnsupportedConfiguration(f"max_index {q} is not a power of {p}")
    divs = _divisors(q)
    # scaled picture: M = q * L is an integer lattice with q Z^dim <= M,
    # det(M) = q^dim / [L : Z^dim], so q^(dim-1) must divide det(M)
    diag_tuples = [
        diag
        for diag in itertools.product(divs, repeat=dim)
        if _product(diag) % q ** (dim - 1) == 0
    ]
    total = 0
    for diag in diag_tuples:
        count = 1
        for i in range(dim):
            for j in range(i):
                count *= diag[j]
        total += count
        if total > bound:
            raise EnumerationBound(f"candidate count exceeds bound {bound}")
    found: list[Lattice] = []
    for diag in diag_tuples:
        off_ranges = [range(diag[j]) for i in range(dim) for j in range(i)]
        for off in itertools.product(*off_ranges):
            rows = [[0] * dim for _ in range(dim)]
            k = 0
            for i in range(dim):
                for j in range(i):
                    rows[i][j] = off[k]
                    k += 1
                rows[i][i] = diag[i]
            if _contains_scaled_integers(rows, q):
                found.append(Lattice._from_integer_rows(dim, q, rows))
    zn = Lattice.integers(dim)
    found.sort(key=lambda lat: (lat.index_over(zn), lat.denominator, lat.rows))
    return found


def _product(xs: tuple[int, ...]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _contains_scaled_integers(rows: list[list[int]], q: int) -> bool:
    """Whether q * e_i lies in the row span for every i (rows lower triangular)."""
    n = len(rows)
    for i in range(n):
        target = [q if j == i else 0 for j in range(n)]
        for col in range(n - 1, -1, -1):
            if target[col] % rows[col][col] != 0:
                return False
            c = target[col] // rows[col][col]
            if c:
                for j in range(col + 1):
                    target[j] -= c * rows[col][j]
    return True
