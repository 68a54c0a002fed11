"""Arithmetic substrate: prime fields Z_p, coordinate vectors, linear maps,
and subspaces in reduced row echelon form.

Residues are stored fully reduced in [0, p).  Moduli are tiny, so primality
is checked by trial division and inverses by Fermat exponentiation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    DomainMismatch,
    NotPrime,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z_p for a prime modulus p."""

    modulus: int

    def __post_init__(self):
        if not _is_prime(self.modulus):
            raise NotPrime(self.modulus)

    @property
    def p(self) -> int:
        return self.modulus

    def elements(self) -> range:
        return range(self.modulus)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.modulus}")
        return pow(a, self.modulus - 2, self.modulus)

    def __repr__(self):
        return f"Z{self.modulus}"


def make_field(p: int) -> PrimeField:
    """Build Z_p, raising NotPrime for composite p."""
    return PrimeField(p)


def field_inv(f: PrimeField, a: int) -> int:
    """Multiplicative inverse of a nonzero residue."""
    return f.inv(a)


@dataclass(frozen=True)
class FVector:
    """A coordinate vector over a prime field, stored reduced mod p."""

    field: PrimeField
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(c % self.field.modulus for c in self.coords)
        )

    def _check_compatible(self, other: "FVector"):
        if self.field != other.field:
            raise DomainMismatch("vectors over different fields")
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(
                f"lengths {len(self.coords)} and {len(other.coords)} differ"
            )

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "FVector") -> "FVector":
        self._check_compatible(other)
        return FVector(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "FVector") -> "FVector":
        self._check_compatible(other)
        return FVector(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "FVector":
        return FVector(self.field, tuple(-a for a in self.coords))

    def scaled(self, k: int) -> "FVector":
        return FVector(self.field, tuple(k * a for a in self.coords))

    def __rmul__(self, k: int) -> "FVector":
        return self.scaled(k)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class FLinearMap:
    """A matrix acting on column coordinate vectors: Z_p^cols -> Z_p^rows."""

    field: PrimeField
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.field.modulus
        object.__setattr__(
            self, "matrix", tuple(tuple(c % p for c in row) for row in self.matrix)
        )
        widths = {len(row) for row in self.matrix}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, v) -> tuple[int, ...]:
        coords = v.coords if isinstance(v, FVector) else tuple(v)
        if len(coords) != self.cols:
            raise DimensionMismatch(f"expected length {self.cols}, got {len(coords)}")
        p = self.field.modulus
        return tuple(
            sum(a * x for a, x in zip(row, coords)) % p for row in self.matrix
        )

    def compose(self, other: "FLinearMap") -> "FLinearMap":
        """self after other."""
        if self.field != other.field:
            raise DomainMismatch("maps over different fields")
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        p = self.field.modulus
        rows = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.cols))
                % p
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return FLinearMap(self.field, rows)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FLinearMap":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def rref(rows, p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over Z_p; zero rows dropped."""
    mat = [list(c % p for c in row) for row in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] % p != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = pow(mat[pivot_row][col], p - 2, p)
        mat[pivot_row] = [(x * inv) % p for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] % p != 0:
                factor = mat[r][col]
                mat[r] = [
                    (x - factor * y) % p for x, y in zip(mat[r], mat[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(row) for row in mat[:pivot_row] if any(c % p for c in row))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Z_p^ambient_dim, held as a canonical rref basis.

    Equality of subspaces is structural equality of the basis.
    """

    field: PrimeField
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, field: PrimeField, ambient_dim: int, vectors) -> "Subspace":
        rows = []
        for v in vectors:
            coords = v.coords if isinstance(v, FVector) else tuple(v)
            if len(coords) != ambient_dim:
                raise DimensionMismatch(
                    f"vector length {len(coords)} != ambient {ambient_dim}"
                )
            rows.append(coords)
        return cls(field, ambient_dim, rref(rows, field.modulus))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        coords = v.coords if isinstance(v, FVector) else tuple(v)
        if len(coords) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector length {len(coords)} != ambient {self.ambient_dim}"
            )
        p = self.field.modulus
        residual = [c % p for c in coords]
        for row in self.basis:
            lead = next(i for i, c in enumerate(row) if c)
            factor = residual[lead]
            if factor:
                residual = [(a - factor * b) % p for a, b in zip(residual, row)]
        return not any(residual)

    def elements(self) -> tuple[tuple[int, ...], ...]:
        """All members, in lexicographic coordinate order."""
        p = self.field.modulus
        out = set()
        for coeffs in itertools.product(range(p), repeat=self.rank):
            acc = [0] * self.ambient_dim
            for k, row in zip(coeffs, self.basis):
                acc = [(a + k * b) % p for a, b in zip(acc, row)]
            out.add(tuple(acc))
        return tuple(sorted(out))


def subspace_membership(s: Subspace, v) -> bool:
    """True iff v lies in the row space of the basis of s."""
    return s.contains(v)
