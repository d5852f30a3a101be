"""Exact sparse linear algebra over Z2, Z4, and the integers.

Matrices are immutable sparse triplet collections tagged with a ring.
GF(2) work (rank, nullspace, affine solves) runs on bit-packed integer
rows; integer work (Smith normal form) uses arbitrary-precision ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Z2 = "Z2"
Z4 = "Z4"
ZZ = "Z"

_RINGS = (Z2, Z4, ZZ)


def _reduce_value(ring: str, value: int) -> int:
    if ring == Z2:
        return value % 2
    if ring == Z4:
        return value % 4
    return value


# ---------------------------------------------------------------------------
# bit-mask helpers (vectors over GF(2) are ints; bit i = coordinate i)

def mask_of(support: Iterable[int]) -> int:
    """Bitmask with the given coordinates set."""
    m = 0
    for i in support:
        m |= 1 << i
    return m


def support_of(mask: int) -> tuple[int, ...]:
    """Sorted coordinates of the set bits of mask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse matrix with entries in Z2, Z4, or Z.

    Entries are (row, col, value) triplets, sorted lexicographically,
    with no duplicates and no zero values, so equality is structural.
    """

    ring: str
    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.ring not in _RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        prev = None
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of range")
            if prev is not None and (r, c) <= prev:
                raise ValueError("entries not sorted / duplicate (row, col)")
            prev = (r, c)
            if self.ring == Z2 and v != 1:
                raise ValueError(f"Z2 value {v} at ({r},{c})")
            if self.ring == Z4 and v not in (1, 2, 3):
                raise ValueError(f"Z4 value {v} at ({r},{c})")
            if v == 0:
                raise ValueError(f"explicit zero at ({r},{c})")

    # -- constructors -------------------------------------------------------

    @classmethod
    def build(cls, ring: str, rows: int, cols: int,
              triplets: Iterable[tuple[int, int, int]]) -> "ExactMatrix":
        """Accumulate triplets (duplicates summed), reduce, drop zeros."""
        acc: dict[tuple[int, int], int] = {}
        for r, c, v in triplets:
            acc[(r, c)] = acc.get((r, c), 0) + v
        ents = []
        for (r, c), v in acc.items():
            v = _reduce_value(ring, v)
            if v:
                ents.append((r, c, v))
        ents.sort()
        return cls(ring, rows, cols, tuple(ents))

    @classmethod
    def zeros(cls, ring: str, rows: int, cols: int) -> "ExactMatrix":
        return cls(ring, rows, cols, ())

    @classmethod
    def identity(cls, ring: str, n: int) -> "ExactMatrix":
        return cls(ring, n, n, tuple((i, i, 1) for i in range(n)))

    @classmethod
    def from_dense(cls, ring: str, dense: Sequence[Sequence[int]]) -> "ExactMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        trips = [(r, c, v) for r, row in enumerate(dense)
                 for c, v in enumerate(row) if v]
        return cls.build(ring, rows, cols, trips)

    @classmethod
    def from_bit_rows(cls, bit_rows: Sequence[int], cols: int,
                      ring: str = Z2) -> "ExactMatrix":
        trips = []
        for r, m in enumerate(bit_rows):
            for c in support_of(m):
                trips.append((r, c, 1))
        return cls.build(ring, len(bit_rows), cols, trips)

    # -- views --------------------------------------------------------------

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def bit_rows(self) -> list[int]:
        """Rows as GF(2) bitmasks (odd entries only)."""
        out = [0] * self.rows
        for r, c, v in self.entries:
            if v & 1:
                out[r] |= 1 << c
        return out

    def bit_cols(self) -> list[int]:
        out = [0] * self.cols
        for r, c, v in self.entries:
            if v & 1:
                out[c] |= 1 << r
        return out

    def transpose(self) -> "ExactMatrix":
        ents = sorted((c, r, v) for r, c, v in self.entries)
        return ExactMatrix(self.ring, self.cols, self.rows, tuple(ents))

    def row_weights(self) -> list[int]:
        w = [0] * self.rows
        for r, _, _ in self.entries:
            w[r] += 1
        return w

    def col_weights(self) -> list[int]:
        w = [0] * self.cols
        for _, c, _ in self.entries:
            w[c] += 1
        return w

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> dict[int, int]:
        return {r: v for r, c, v in self.entries if c == j}

    def column_mask(self, j: int) -> int:
        m = 0
        for r, c, v in self.entries:
            if c == j and (v & 1):
                m |= 1 << r
        return m

    def row_mask(self, i: int) -> int:
        m = 0
        for r, c, v in self.entries:
            if r == i and (v & 1):
                m |= 1 << c
        return m

    # -- arithmetic sugar ---------------------------------------------------

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_add(self, other)


def _check_same_ring(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {b.ring}")


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product in the declared (shared) ring."""
    _check_same_ring(a, b)
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    by_row: dict[int, list[tuple[int, int]]] = {}
    for r, c, v in b.entries:
        by_row.setdefault(r, []).append((c, v))
    acc: dict[tuple[int, int], int] = {}
    for r, k, va in a.entries:
        for c, vb in by_row.get(k, ()):
            acc[(r, c)] = acc.get((r, c), 0) + va * vb
    trips = ((r, c, v) for (r, c), v in acc.items())
    return ExactMatrix.build(a.ring, a.rows, b.cols, trips)


def mat_add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_same_ring(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("shape mismatch in add")
    return ExactMatrix.build(a.ring, a.rows, a.cols,
                             list(a.entries) + list(b.entries))


def scalar_mul(k: int, a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix.build(a.ring, a.rows, a.cols,
                             ((r, c, k * v) for r, c, v in a.entries))


def mod_reduce(a: ExactMatrix, q: int) -> ExactMatrix:
    """Entrywise reduction of an integer matrix mod q in {2, 4}."""
    if a.ring != ZZ:
        raise ValueError(f"mod_reduce needs ring Z, got {a.ring}")
    if q == 2:
        ring = Z2
    elif q == 4:
        ring = Z4
    else:
        raise ValueError(f"unsupported modulus {q}")
    return ExactMatrix.build(ring, a.rows, a.cols, a.entries)


def halve_even(a: ExactMatrix) -> ExactMatrix:
    """Map a Z4 matrix with even entries to Z2 via 2 -> 1."""
    if a.ring != Z4:
        raise ValueError(f"halve_even needs ring Z4, got {a.ring}")
    trips = []
    for r, c, v in a.entries:
        if v != 2:
            raise ValueError(f"odd entry {v} at ({r},{c}) in halve_even")
        trips.append((r, c, 1))
    return ExactMatrix(Z2, a.rows, a.cols, tuple(trips))


# ---------------------------------------------------------------------------
# GF(2) elimination core

def gf2_row_reduce(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form over GF(2).

    Returns (nonzero reduced rows, pivot column of each row).
    """
    work = list(rows)
    pivots: list[int] = []
    red: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        pivot_row = None
        for i, r in enumerate(work):
            if r & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        p = work.pop(pivot_row)
        for j, r in enumerate(work):
            if r & bit:
                work[j] = r ^ p
        for j, r in enumerate(red):
            if r & bit:
                red[j] = r ^ p
        red.append(p)
        pivots.append(col)
        if not work:
            break
    return red, pivots


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    return len(gf2_row_reduce(rows, ncols)[0])


def rank_z2(a: ExactMatrix) -> int:
    """Exact GF(2) rank (odd part for Z/Z4 inputs)."""
    return gf2_rank(a.bit_rows(), a.cols)


def gf2_nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of the right kernel, as bitmasks of length ncols."""
    red, pivots = gf2_row_reduce(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for row, pc in zip(red, pivots):
            if row & (1 << free):
                vec |= 1 << pc
        basis.append(vec)
    return basis


def nullspace_z2(a: ExactMatrix) -> list[int]:
    """Kernel basis of a over GF(2), as column bitmasks."""
    return gf2_nullspace(a.bit_rows(), a.cols)


def gf2_solve(rows: Sequence[int], rhs_bits: Sequence[int], ncols: int):
    """Solve the GF(2) system row_i . x = rhs_i.

    Returns (particular bitmask, nullspace basis) or None if inconsistent.
    """
    aug = [r | (b & 1) << ncols for r, b in zip(rows, rhs_bits)]
    red, pivots = gf2_row_reduce(aug, ncols)
    rhs_col = 1 << ncols
    particular = 0
    for row, pc in zip(red, pivots):
        if row & rhs_col:
            particular |= 1 << pc
    # consistency: every original equation must hold at the particular point
    for r, b in zip(rows, rhs_bits):
        if ((r & particular).bit_count() & 1) != (b & 1):
            return None
    basis = gf2_nullspace(rows, ncols)
    return particular, basis


def solve_affine_z2(a: ExactMatrix, b: int | Sequence[int]):
    """Solve A x = b over Z2.

    b may be a bitmask over rows or a 0/1 sequence. Returns
    (particular bitmask, nullspace basis bitmasks) or None if inconsistent.
    """
    if a.ring != Z2:
        raise ValueError(f"solve_affine_z2 needs ring Z2, got {a.ring}")
    if isinstance(b, int):
        bmask = b
    else:
        if len(b) != a.rows:
            raise ValueError("rhs length mismatch")
        bmask = mask_of(i for i, v in enumerate(b) if v & 1)
    if bmask >> a.rows:
        raise ValueError("rhs mask exceeds row count")
    rows = a.bit_rows()
    rhs = [(bmask >> i) & 1 for i in range(a.rows)]
    return gf2_solve(rows, rhs, a.cols)


def gf2_invert(rows: Sequence[int], n: int) -> list[int]:
    """Inverse of an invertible n x n GF(2) matrix given as row bitmasks."""
    work = list(rows)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        bit = 1 << col
        pivot = None
        for i in range(col, n):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            raise ValueError("matrix is singular over GF(2)")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        for i in range(n):
            if i != col and (work[i] & bit):
                work[i] ^= work[col]
                inv[i] ^= inv[col]
    return inv


def gf2_in_span(vec: int, basis_rows: Sequence[int], ncols: int) -> bool:
    red, pivots = gf2_row_reduce(basis_rows, ncols)
    v = vec
    for row, pc in zip(red, pivots):
        if v & (1 << pc):
            v ^= row
    return v == 0


def gf2_span_intersection(basis_a: Sequence[int], basis_b: Sequence[int],
                          ncols: int) -> list[int]:
    """Zassenhaus: basis of span(a) & span(b)."""
    block = []
    for u in basis_a:
        block.append(u | (u << ncols))
    for v in basis_b:
        block.append(v)
    red, _ = gf2_row_reduce(block, 2 * ncols)
    low_mask = (1 << ncols) - 1
    return [row >> ncols for row in red
            if (row & low_mask) == 0 and (row >> ncols)]


# ---------------------------------------------------------------------------
# Smith normal form over Z

@dataclass(frozen=True)
class SmithForm:
    """Invariant factors (positive, divisibility chain) plus transforms."""

    invariant_factors: tuple[int, ...]
    rank: int
    left_transform: ExactMatrix | None = None
    right_transform: ExactMatrix | None = None

    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f > 1)


def smith_normal_form(a: ExactMatrix, transforms: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pivoting picks the minimum-absolute-value nonzero entry of the working
    submatrix; entries stay arbitrary-precision. When transforms are
    requested, U @ a @ V equals the diagonal form exactly.
    """
    if a.ring != ZZ:
        raise ValueError(f"smith_normal_form needs ring Z, got {a.ring}")
    m, n = a.rows, a.cols
    d = a.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        drow, srow = d[dst], d[src]
        for c in range(n):
            drow[c] += k * srow[c]
        if U is not None:
            du, su = U[dst], U[src]
            for c in range(m):
                du[c] += k * su[c]

    def add_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        if V is not None:
            for row in V:
                row[dst] += k * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    t = 0
    size = min(m, n)
    while t < size:
        # locate minimum-abs nonzero pivot in the trailing submatrix
        best = None
        for i in range(t, m):
            row = d[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if abs(v) == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            pivot = d[t][t]
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // pivot
                    add_row(i, t, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
                        pivot = d[t][t]
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // pivot
                    add_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
                        pivot = d[t][t]
            if not done:
                continue
            # pivot must divide the rest of the submatrix
            offender = None
            for i in range(t + 1, m):
                row = d[i]
                for j in range(t + 1, n):
                    if row[j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    factors = tuple(d[i][i] for i in range(t))
    left = right = None
    if transforms:
        left = ExactMatrix.from_dense(ZZ, U) if m else ExactMatrix.zeros(ZZ, 0, 0)
        right = ExactMatrix.from_dense(ZZ, V) if n else ExactMatrix.zeros(ZZ, 0, 0)
    return SmithForm(factors, t, left, right)


def rank_z(a: ExactMatrix) -> int:
    """Rank over Z (via fraction-free elimination through SNF)."""
    return smith_normal_form(a).rank
