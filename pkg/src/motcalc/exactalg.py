"""Exact integer linear algebra: gcd vectors, Hermite normal form, scaled lattices.

Everything here runs on arbitrary-precision Python integers; there is no
floating point anywhere in this package.  The central object is
:class:`ScaledLattice`, a subgroup of ``Q^n`` of the form ``(1/D) * rowspan_Z(G)``
kept in a canonical form (row Hermite normal form, zero rows removed) so that
subgroup equality after rescaling is a structural comparison.

The lattice operations implement the computation behind restricting a cyclic
cover's normalization lattice to a coordinate hyperplane: the lattice spanned
by ``Z^d`` and ``(a_1/N, ..., a_d/N)``, cut by ``u_1 = 0``, is again of the
same shape with denominator ``gcd(N, a_1)`` in the remaining coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


def gcd_vec(values: Iterable[int]) -> int:
    """Gcd of the absolute values; 0 for an empty or all-zero collection."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        tup = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not tup:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(tup[0])
        return cls(len(tup), cols, tup)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def drop_zero_rows(self) -> IntMatrix:
        kept = tuple(r for r in self.entries if any(r))
        return IntMatrix(len(kept), self.cols, kept)


def hnf(m: IntMatrix) -> IntMatrix:
    """Row Hermite normal form of ``m``.

    Returns the unique matrix ``H`` with the same integer row span as ``m``
    that is in row-echelon form with positive pivots, every entry above a
    pivot reduced into ``[0, pivot)``, and zero rows collected at the bottom.
    """
    work = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        # Gcd the entries of this column below pivot_row into a single row.
        while True:
            nz = [i for i in range(pivot_row, nrows) if work[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(work[i][col]))
            work[pivot_row], work[best] = work[best], work[pivot_row]
            done = True
            p = work[pivot_row][col]
            for i in range(pivot_row + 1, nrows):
                if work[i][col] != 0:
                    q = work[i][col] // p
                    work[i] = [x - q * y for x, y in zip(work[i], work[pivot_row])]
                    if work[i][col] != 0:
                        done = False
            if done:
                break
        if work[pivot_row][col] == 0:
            continue
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-x for x in work[pivot_row]]
        p = work[pivot_row][col]
        for i in range(pivot_row):
            q = work[i][col] // p  # floor division puts the entry into [0, p)
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[pivot_row])]
        pivot_row += 1
    return IntMatrix(nrows, ncols, tuple(tuple(r) for r in work))


def int_kernel(m: IntMatrix) -> IntMatrix:
    """Basis (as rows) of the integer kernel ``{c : c @ m = 0}``.

    Computed by row-reducing ``[m | I]``: the rows whose ``m``-part vanished
    carry the kernel combinations in their identity-part.
    """
    aug_rows = [tuple(m.entries[i]) + tuple(1 if j == i else 0 for j in range(m.rows)) for i in range(m.rows)]
    aug = hnf(IntMatrix(m.rows, m.cols + m.rows, tuple(aug_rows)))
    kernel_rows = [r[m.cols:] for r in aug.entries if not any(r[: m.cols])]
    return IntMatrix(len(kernel_rows), m.rows, tuple(kernel_rows))


@dataclass(frozen=True)
class ScaledLattice:
    """The subgroup ``(1/denominator) * rowspan_Z(generators)`` of ``Q^n``.

    Canonical form: generators in row Hermite normal form with zero rows
    removed.  The ambient dimension is ``generators.cols`` and is retained
    even for the trivial lattice.
    """

    denominator: int
    generators: IntMatrix

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")

    @classmethod
    def make(cls, denominator: int, rows: Sequence[Sequence[int]], ambient_dim: int) -> ScaledLattice:
        m = IntMatrix.from_rows(rows, cols=ambient_dim) if rows else IntMatrix(0, ambient_dim, ())
        return cls(denominator, hnf(m).drop_zero_rows())

    @property
    def ambient_dim(self) -> int:
        return self.generators.cols

    def rescaled_generators(self, new_denominator: int) -> IntMatrix:
        """Generators of the same subgroup expressed over ``new_denominator``."""
        if new_denominator % self.denominator != 0:
            raise ValueError("new denominator must be a multiple of the current one")
        return hnf(self.generators.scale(new_denominator // self.denominator)).drop_zero_rows()


def lattice_equal(a: ScaledLattice, b: ScaledLattice) -> bool:
    """True iff ``a`` and ``b`` are the same subgroup of ``Q^n``."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch: %d vs %d" % (a.ambient_dim, b.ambient_dim))
    common = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    return a.rescaled_generators(common).entries == b.rescaled_generators(common).entries


def cover_lattice(N: int, a: Sequence[int]) -> ScaledLattice:
    """The lattice ``Z^d + Z * (a_1/N, ..., a_d/N)`` with denominator ``N``."""
    if N <= 0:
        raise ValueError("N must be a positive integer")
    d = len(a)
    if d < 1:
        raise ValueError("need at least one coordinate")
    rows = [[N if i == j else 0 for j in range(d)] for i in range(d)]
    rows.append([int(x) for x in a])
    return ScaledLattice.make(N, rows, d)


def restrict_first_zero(lat: ScaledLattice) -> ScaledLattice:
    """The sublattice of vectors with first coordinate 0, in coordinates 2..d.

    Dropping the (identically zero) first coordinate is a bijection onto the
    result, so no information is lost.
    """
    d = lat.ambient_dim
    if d < 1:
        raise ValueError("ambient dimension must be at least 1")
    g = lat.generators
    first_col = IntMatrix(g.rows, 1, tuple((r[0],) for r in g.entries))
    combos = int_kernel(first_col)
    rows = []
    for c in combos.entries:
        vec = [sum(c[i] * g.entries[i][j] for i in range(g.rows)) for j in range(1, d)]
        rows.append(vec)
    return ScaledLattice.make(lat.denominator, rows, d - 1)
