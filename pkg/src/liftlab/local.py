"""Disentangling circuits and locality-preserving integer lifts for
codes whose stabilizers live on pairs of neighboring sites.

A sited code assigns each qubit an integer site and requires every
stabilizer support to fit in some window {j, j+1}.  Such a code can be
disentangled by a two-round circuit of local GF(2) basis changes, after
which no qubit is shared between a Z-stabilizer and an X-stabilizer.
The naive integer lift of the disjoint code is then pulled back through
unimodular lifts of the circuit, preserving the window locality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import (
    ExactMatrix, Z2, ZZ, gf2_in_span, gf2_invert, gf2_rank,
    gf2_span_intersection, mat_mul, mod_reduce, rank_z2,
    smith_normal_form, support_of,
)
from .css import CssCode


@dataclass(frozen=True)
class SitedCssCode:
    code: CssCode
    site_of_qubit: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.site_of_qubit) != self.code.n_q:
            raise ValueError("site assignment length != qubit count")

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.site_of_qubit)))

    def qubits_at(self, j: int) -> list[int]:
        return [q for q, s in enumerate(self.site_of_qubit) if s == j]

    def z_window(self, col: int) -> tuple[int, int] | None:
        """(j, j+1) window of a Z-stabilizer, None if empty support."""
        return self._window(support_of(self.code.dz.column_mask(col)))

    def x_window(self, row: int) -> tuple[int, int] | None:
        return self._window(support_of(self.code.dq.row_mask(row)))

    def _window(self, qubits) -> tuple[int, int] | None:
        sites = [self.site_of_qubit[q] for q in qubits]
        if not sites:
            return None
        j = min(sites)
        return (j, j + 1)


@dataclass(frozen=True)
class Move:
    """Invertible GF(2) basis change on a named qubit subset.

    Z-stabilizer columns transform by the matrix on these qubits;
    X-stabilizer rows transform by its inverse on the right.
    """

    site: int
    qubits: tuple[int, ...]
    matrix: ExactMatrix

    def __post_init__(self) -> None:
        k = len(self.qubits)
        if self.matrix.rows != k or self.matrix.cols != k:
            raise ValueError("move matrix shape does not match qubit count")
        if self.matrix.ring != Z2:
            raise ValueError("move matrices live over Z2")
        try:
            gf2_invert(self.matrix.bit_rows(), k)
        except ValueError:
            raise ValueError(f"move at site {self.site} is not invertible")


@dataclass(frozen=True)
class LocalCircuit:
    rounds: tuple[tuple[Move, ...], tuple[Move, ...]]

    def moves(self) -> list[Move]:
        return [m for rnd in self.rounds for m in rnd]

    def __len__(self) -> int:
        return len(self.moves())


def validate_sited(s: SitedCssCode) -> list[str]:
    """Window violations, empty when the code is properly sited."""
    issues = []
    for c in range(s.code.n_z):
        sites = {s.site_of_qubit[q]
                 for q in support_of(s.code.dz.column_mask(c))}
        if sites and max(sites) - min(sites) > 1:
            issues.append(f"Z-stabilizer {c} spans sites {sorted(sites)}")
    for r in range(s.code.n_x):
        sites = {s.site_of_qubit[q] for q in support_of(s.code.dq.row_mask(r))}
        if sites and max(sites) - min(sites) > 1:
            issues.append(f"X-stabilizer {r} spans sites {sorted(sites)}")
    return issues


def _apply_move_bits(dz_rows: list[int], dq_rows: list[int], move: Move,
                     invert: bool = False) -> None:
    """In place: dz rows (indexed by qubit) get the move's matrix, dq
    rows (indexed by X-stabilizer) get its inverse acting on columns."""
    k = len(move.qubits)
    a = move.matrix.bit_rows()
    ainv = gf2_invert(a, k)
    if invert:
        a, ainv = ainv, a
    old = [dz_rows[q] for q in move.qubits]
    for i, q in enumerate(move.qubits):
        acc = 0
        for jj in support_of(a[i]):
            acc ^= old[jj]
        dz_rows[q] = acc
    # x . A^-1 : new bit at qubit q_j = parity of x[q_i] * ainv[i][j]
    for idx, x in enumerate(dq_rows):
        bits = [(x >> q) & 1 for q in move.qubits]
        if not any(bits):
            continue
        for jj, q in enumerate(move.qubits):
            b = 0
            for i in range(k):
                if bits[i] and (ainv[i] >> jj) & 1:
                    b ^= 1
            x = (x & ~(1 << q)) | (b << q)
        dq_rows[idx] = x


def apply_circuit(s: SitedCssCode, circ: LocalCircuit,
                  invert: bool = False) -> SitedCssCode:
    dz_rows = s.code.dz.bit_rows()
    dq_rows = s.code.dq.bit_rows()
    moves = circ.moves()
    if invert:
        moves = list(reversed(moves))
    for move in moves:
        _apply_move_bits(dz_rows, dq_rows, move, invert=invert)
    code = CssCode(
        dz=ExactMatrix.from_bit_rows(dz_rows, s.code.n_z),
        dq=ExactMatrix.from_bit_rows(dq_rows, s.code.n_q),
        provenance=s.code.provenance)
    return SitedCssCode(code=code, site_of_qubit=s.site_of_qubit)


def shared_support_qubits(code: CssCode) -> list[int]:
    """Qubits lying in both a Z-stabilizer and an X-stabilizer support."""
    z_mask = 0
    for r, row in enumerate(code.dz.bit_rows()):
        if row:
            z_mask |= 1 << r
    x_mask = 0
    for _, c, _ in code.dq.entries:
        x_mask |= 1 << c
    return list(support_of(z_mask & x_mask))


def _restrict_mask(mask: int, pos: dict[int, int]) -> int:
    out = 0
    for q in support_of(mask):
        if q in pos:
            out |= 1 << pos[q]
    return out


def _extend_basis(basis: list[int], vectors: list[int], k: int) -> None:
    for v in vectors:
        if v and not gf2_in_span(v, basis, k):
            basis.append(v)


def _extend_units(basis: list[int], k: int) -> None:
    for i in range(k):
        if len(basis) == k:
            break
        if not gf2_in_span(1 << i, basis, k):
            basis.append(1 << i)


def _column_basis_move(qubits: list[int], basis: list[int], k: int,
                       site: int) -> Move | None:
    """Move whose action sends the given basis vectors to unit columns.

    The matrix with the basis as columns maps unit coordinates onto it,
    so the move is its inverse.  Returns None for the identity.
    """
    m_rows = [0] * k
    for col, v in enumerate(basis):
        for r in support_of(v):
            m_rows[r] |= 1 << col
    a = gf2_invert(m_rows, k)
    if all(a[i] == 1 << i for i in range(k)):
        return None
    return Move(site=site, qubits=tuple(qubits),
                matrix=ExactMatrix.from_bit_rows(a, k))


def _row_basis_move(qubits: list[int], basis: list[int], k: int,
                    site: int) -> Move | None:
    """Move whose action sends the given basis vectors to unit rows.

    Row vectors transform by the inverse of the move matrix, so a move
    whose matrix has the basis as rows rewrites each row vector in the
    basis coordinates.  Returns None for the identity.
    """
    if all(basis[i] == 1 << i for i in range(k)):
        return None
    return Move(site=site, qubits=tuple(qubits),
                matrix=ExactMatrix.from_bit_rows(basis, k))


def _site_z_move(s: SitedCssCode, j: int) -> tuple[Move | None, dict]:
    """Round-1 Z-side move at site j plus the induced coordinate classes.

    Restrictions of stabilizers touching site j split by window: those
    on {j-1, j} versus those on {j, j+1}.  Commutation across the two
    windows happens entirely at site j, so a basis sending the two
    Z-restriction spans onto leading coordinates forces the X
    restrictions into the complementary coordinates.
    """
    qubits = s.qubits_at(j)
    k = len(qubits)
    pos = {q: i for i, q in enumerate(qubits)}
    zr, zl = [], []
    for c in range(s.code.n_z):
        w = s.z_window(c)
        if w is None:
            continue
        v = _restrict_mask(s.code.dz.column_mask(c), pos)
        if not v:
            continue
        if w == (j - 1, j):
            zr.append(v)
        elif w == (j, j + 1):
            zl.append(v)
    basis: list[int] = []
    _extend_basis(basis, gf2_span_intersection(zr, zl, k), k)
    n_i = len(basis)
    _extend_basis(basis, zr, k)
    n_r = len(basis)
    _extend_basis(basis, zl, k)
    n_rl = len(basis)
    _extend_units(basis, k)
    classes = {
        "c1": [qubits[i] for i in range(n_i)],
        "c2": [qubits[i] for i in range(n_i, n_r)],
        "c3": [qubits[i] for i in range(n_r, n_rl)],
        "c4": [qubits[i] for i in range(n_rl, k)],
    }
    return _column_basis_move(qubits, basis, k, j), classes


def _site_x_move(s: SitedCssCode, j: int, classes: dict) -> Move | None:
    """Round-1 X-side move at site j on the Z-free coordinates.

    After the Z-side move every Z-stabilizer restriction vanishes on the
    c4 coordinates, so a basis change there leaves the Z side alone.
    Choosing a basis adapted to the two X-restriction spans, preferring
    actual restriction vectors, puts X-stabilizers on unit coordinates
    within c4 and splits it into classes d1 (both windows), d2 (right
    window only), d3 (left window only) and d4 (untouched).
    """
    q4 = classes["c4"]
    k = len(q4)
    classes["d1"] = []
    classes["d2"] = []
    classes["d3"] = []
    if k == 0:
        return None
    pos = {q: i for i, q in enumerate(q4)}
    xr, xl = [], []
    for r in range(s.code.n_x):
        w = s.x_window(r)
        if w is None:
            continue
        v = _restrict_mask(s.code.dq.row_mask(r), pos)
        if not v:
            continue
        if w == (j - 1, j):
            xr.append(v)
        elif w == (j, j + 1):
            xl.append(v)
    basis: list[int] = []
    _extend_basis(basis, gf2_span_intersection(xr, xl, k), k)
    n_i = len(basis)
    _extend_basis(basis, xr, k)
    n_r = len(basis)
    _extend_basis(basis, xl, k)
    n_rl = len(basis)
    _extend_units(basis, k)
    classes["d1"] = [q4[i] for i in range(n_i)]
    classes["d2"] = [q4[i] for i in range(n_i, n_r)]
    classes["d3"] = [q4[i] for i in range(n_r, n_rl)]
    return _row_basis_move(q4, basis, k, j)


def _block_z_move(s: SitedCssCode, j: int,
                  block: list[int]) -> tuple[Move | None, int]:
    """Round-2 Z-side move on the residual pair block of sites (j, j+1).

    Sends a maximal independent family of restricted Z-stabilizer
    columns onto leading unit coordinates; every X-stabilizer meeting
    the block is orthogonal to those columns within the block, so its
    support lands in the complementary coordinates.  Also returns the
    number of pivot coordinates used.
    """
    k = len(block)
    pos = {q: i for i, q in enumerate(block)}
    pivots: list[int] = []
    for c in range(s.code.n_z):
        if s.z_window(c) != (j, j + 1):
            continue
        v = _restrict_mask(s.code.dz.column_mask(c), pos)
        if v and not gf2_in_span(v, pivots, k):
            pivots.append(v)
    if not pivots:
        return None, 0
    basis = list(pivots)
    _extend_units(basis, k)
    return _column_basis_move(block, basis, k, j), len(pivots)


def _block_x_move(s: SitedCssCode, j: int, coords: list[int]) -> Move | None:
    """Round-2 X-side move on coordinates only window (j, j+1) X-rows touch.

    Those coordinates are the non-pivot remainder of the Z block plus
    the d3 class of site j and the d2 class of site j+1.  Z-stabilizers
    vanish there, so putting a maximal independent family of restricted
    X-rows onto unit coordinates costs nothing on the Z side.
    """
    k = len(coords)
    pos = {q: i for i, q in enumerate(coords)}
    pivots: list[int] = []
    for r in range(s.code.n_x):
        if s.x_window(r) != (j, j + 1):
            continue
        v = _restrict_mask(s.code.dq.row_mask(r), pos)
        if v and not gf2_in_span(v, pivots, k):
            pivots.append(v)
    if not pivots:
        return None
    basis = list(pivots)
    _extend_units(basis, k)
    return _row_basis_move(coords, basis, k, j)


def _apply_one(s: SitedCssCode, move: Move) -> SitedCssCode:
    return apply_circuit(s, LocalCircuit(rounds=((move,), ())))


def disentangle(s: SitedCssCode) -> LocalCircuit:
    """Two-round circuit after which Z- and X-supports are disjoint."""
    issues = validate_sited(s)
    if issues:
        raise ValueError("not a sited code: " + "; ".join(issues))
    if not shared_support_qubits(s.code):
        return LocalCircuit(rounds=((), ()))
    work = s
    round1: list[Move] = []
    classes_at: dict[int, dict] = {}
    for j in s.sites:
        move, classes = _site_z_move(work, j)
        classes_at[j] = classes
        if move is not None:
            round1.append(move)
            work = _apply_one(work, move)
        move = _site_x_move(work, j, classes)
        if move is not None:
            round1.append(move)
            work = _apply_one(work, move)
    round2: list[Move] = []
    for j in work.sites:
        left = classes_at.get(j, {})
        right = classes_at.get(j + 1, {})
        block = left.get("c3", []) + right.get("c2", [])
        p = 0
        if block:
            move, p = _block_z_move(work, j, block)
            if move is not None:
                round2.append(move)
                work = _apply_one(work, move)
        coords = block[p:] + left.get("d3", []) + right.get("d2", [])
        if coords:
            move = _block_x_move(work, j, coords)
            if move is not None:
                round2.append(move)
                work = _apply_one(work, move)
    circ = LocalCircuit(rounds=(tuple(round1), tuple(round2)))
    out = apply_circuit(s, circ)
    shared = shared_support_qubits(out.code)
    if shared:
        q = shared[0]
        raise ValueError(
            f"disentangling failed at site {s.site_of_qubit[q]} (qubit {q})")
    return circ


def transvections(a: ExactMatrix) -> list[tuple[int, int]]:
    """Factor an invertible GF(2) matrix into row additions.

    Returns pairs (i, j) meaning "add row j to row i"; left-multiplying
    an accumulator by the corresponding elementary matrices, taken in
    list order, reconstructs a.
    """
    k = a.rows
    rows = a.bit_rows()
    ops: list[tuple[int, int]] = []
    for c in range(k):
        if not (rows[c] >> c) & 1:
            src = next(r for r in range(c + 1, k) if (rows[r] >> c) & 1)
            rows[c] ^= rows[src]
            ops.append((c, src))
        for r in range(k):
            if r != c and (rows[r] >> c) & 1:
                rows[r] ^= rows[c]
                ops.append((r, c))
    # ops reduce a to the identity; transvections are involutions, so
    # reversing the list reconstructs a
    return list(reversed(ops))


def _int_det(mat: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _make_unimodular(rows: list[list[int]],
                     allowed: dict[int, set[int]]) -> None:
    """Even entry adjustments driving some maximal minor to +-1.

    An integer matrix with a +-1 minor of full rank has trivial
    cokernel torsion, because the gcd of its maximal minors divides
    that one.  Builds the minor greedily one row at a time, keeping its
    determinant at +-1 by adding even values at positions listed in
    allowed; even adjustments preserve the matrix mod 2 and the allowed
    sets are chosen by the caller so orthogonality and window locality
    survive.  Mutates rows in place; dependent rows never enter the
    minor, so full GF(2) rank also pins the integer rank.
    """
    remaining = list(range(len(rows)))
    chosen_rows: list[int] = []
    chosen_cols: list[int] = []
    reduced: list[tuple[int, int]] = []

    def residual(i: int) -> int:
        v = 0
        for c, val in enumerate(rows[i]):
            if val & 1:
                v |= 1 << c
        for bits, pc in reduced:
            if (v >> pc) & 1:
                v ^= bits
        return v

    while remaining:
        pick = None
        fallback = None
        for i in remaining:
            v = residual(i)
            if not v:
                continue
            good = [q for q in support_of(v) if q in allowed.get(i, ())]
            if good:
                pick = (i, v, good[0])
                break
            if fallback is None:
                fallback = (i, v, next(iter(support_of(v))))
        if pick is None:
            if fallback is None:
                break
            pick = fallback
        i, v, q = pick
        remaining.remove(i)
        reduced = [(bits ^ v if (bits >> q) & 1 else bits, pc)
                   for bits, pc in reduced]
        reduced.append((v, q))
        chosen_rows.append(i)
        chosen_cols.append(q)
        sub = [[rows[r][c] for c in chosen_cols] for r in chosen_rows]
        det = _int_det(sub)
        if det in (1, -1):
            continue
        t = len(chosen_rows) - 1
        for cidx, col in enumerate(chosen_cols):
            if col not in allowed.get(i, ()):
                continue
            minor = [[sub[r][c] for c in range(len(chosen_cols)) if c != cidx]
                     for r in range(len(chosen_rows)) if r != t]
            cof = _int_det(minor) * (1 if (t + cidx) % 2 == 0 else -1)
            if cof == 0:
                continue
            done = False
            for target in (1, -1):
                if (target - det) % (2 * cof) == 0:
                    rows[i][col] += (target - det) // cof
                    done = True
                    break
            if done:
                break


def _transpose(mat: list[list[int]], cols: int) -> list[list[int]]:
    return [[row[c] for row in mat] for c in range(cols)]


def _int_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _int_row_add(mat: list[list[int]], i: int, j: int, coef: int) -> None:
    row_j = mat[j]
    row_i = mat[i]
    for c, v in enumerate(row_j):
        if v:
            row_i[c] += coef * v


@dataclass(frozen=True)
class LocalLiftReport:
    product_zero: bool
    mod2_match: bool
    local: bool
    betti_z2: tuple[int, int, int]
    betti_z: tuple[int, int, int]
    torsion_factors: tuple[int, ...]

    @property
    def betti_match(self) -> bool:
        return self.betti_z2 == self.betti_z

    @property
    def torsion_free(self) -> bool:
        return all(f == 1 for f in self.torsion_factors)

    @property
    def ok(self) -> bool:
        return (self.product_zero and self.mod2_match and self.local
                and self.betti_match and self.torsion_free)


def integer_lift_local(s: SitedCssCode
                       ) -> tuple[ExactMatrix, ExactMatrix, LocalCircuit]:
    """Integer boundary pair agreeing with the code mod 2, with exact
    orthogonality and the same window locality.

    Disentangles, lifts the disjoint code naively (the product is zero
    entrywise), nudges entries by even amounts until the lifted
    boundaries have unimodular maximal minors, then undoes the circuit
    with unimodular integer lifts of its transvections.  The undo is a
    change of basis, so the minor repair done on the disjoint code
    carries over to the result.
    """
    circ = disentangle(s)
    flat = apply_circuit(s, circ)
    n_q = s.code.n_q
    dz_dense = [[0] * flat.code.n_z for _ in range(n_q)]
    for r, c, v in flat.code.dz.entries:
        dz_dense[r][c] = v
    dq_dense = [[0] * n_q for _ in range(flat.code.n_x)]
    for r, c, v in flat.code.dq.entries:
        dq_dense[r][c] = v
    # undoing the circuit mixes a qubit with the others in its pair-block
    # moves, so a repair entry stays inside a window only when those
    # moves do too
    reach: dict[int, set[int]] = {q: {s.site_of_qubit[q]} for q in range(n_q)}
    for move in circ.rounds[1]:
        msites = {s.site_of_qubit[q] for q in move.qubits}
        for q in move.qubits:
            reach[q] |= msites
    # adjusting dz at qubit q keeps the product zero when no X-stabilizer
    # touches q; transposed so columns play the row role
    x_free = [q for q in range(n_q)
              if all(row[q] == 0 for row in dq_dense)]
    allowed_z: dict[int, set[int]] = {}
    for c in range(flat.code.n_z):
        w = flat.z_window(c)
        if w is not None:
            allowed_z[c] = {q for q in x_free if reach[q] <= set(w)}
    dzt = _transpose(dz_dense, flat.code.n_z)
    _make_unimodular(dzt, allowed_z)
    dz_dense = _transpose(dzt, n_q)
    # same for dq rows, against the already adjusted dz
    z_free = [q for q in range(n_q) if not any(dz_dense[q])]
    allowed_x: dict[int, set[int]] = {}
    for r in range(flat.code.n_x):
        w = flat.x_window(r)
        if w is not None:
            allowed_x[r] = {q for q in z_free if reach[q] <= set(w)}
    _make_unimodular(dq_dense, allowed_x)
    # accumulated integer circuit g and its inverse
    g = _int_identity(n_q)
    ginv = _int_identity(n_q)
    for move in circ.moves():
        for (i, j) in transvections(move.matrix):
            qi, qj = move.qubits[i], move.qubits[j]
            _int_row_add(g, qi, qj, 1)        # g <- t . g
            _int_col_add(ginv, qi, qj, -1)    # ginv <- ginv . t^-1
    dz_flat = ExactMatrix.from_dense(ZZ, dz_dense) if n_q else \
        ExactMatrix(ZZ, 0, s.code.n_z, ())
    dq_flat = ExactMatrix.from_dense(ZZ, dq_dense) if flat.code.n_x else \
        ExactMatrix(ZZ, 0, n_q, ())
    ginv_m = ExactMatrix.from_dense(ZZ, ginv)
    g_m = ExactMatrix.from_dense(ZZ, g)
    dz_lift = mat_mul(ginv_m, dz_flat)
    dq_lift = mat_mul(dq_flat, g_m)
    return dz_lift, dq_lift, circ


def _int_col_add(mat: list[list[int]], i: int, j: int, coef: int) -> None:
    """Column j of mat gets coef times column i added."""
    for row in mat:
        if row[i]:
            row[j] += coef * row[i]


def verify_local_lift(s: SitedCssCode, dz_lift: ExactMatrix,
                      dq_lift: ExactMatrix) -> LocalLiftReport:
    code = s.code
    product_zero = mat_mul(dq_lift, dz_lift).is_zero()
    mod2 = (mod_reduce(dz_lift, 2) == code.dz
            and mod_reduce(dq_lift, 2) == code.dq)
    # locality must hold for the integer entries themselves, so an even
    # entry outside the window counts as a violation even though it is
    # invisible mod 2
    local = True
    col_sites: dict[int, set[int]] = {}
    for r, c, v in dz_lift.entries:
        col_sites.setdefault(c, set()).add(s.site_of_qubit[r])
    row_sites: dict[int, set[int]] = {}
    for r, c, v in dq_lift.entries:
        row_sites.setdefault(r, set()).add(s.site_of_qubit[c])
    for touched in list(col_sites.values()) + list(row_sites.values()):
        if max(touched) - min(touched) > 1:
            local = False
    r2z = rank_z2(code.dz)
    r2q = rank_z2(code.dq)
    betti2 = (code.n_z - r2z, code.n_q - r2z - r2q, code.n_x - r2q)
    sz = smith_normal_form(dz_lift)
    sq = smith_normal_form(dq_lift)
    betti_int = (code.n_z - sz.rank, code.n_q - sz.rank - sq.rank,
                 code.n_x - sq.rank)
    factors = tuple(abs(f) for f in sz.invariant_factors + sq.invariant_factors)
    return LocalLiftReport(product_zero=product_zero, mod2_match=mod2,
                           local=local, betti_z2=betti2, betti_z=betti_int,
                           torsion_factors=factors)


def _random_invertible(rng: random.Random, k: int) -> ExactMatrix:
    while True:
        rows = [rng.getrandbits(k) for _ in range(k)]
        if gf2_rank(rows, k) == k:
            return ExactMatrix.from_bit_rows(rows, k)


def random_sited_instance(sites: int, qubits_per_site: int,
                          stabilizer_density: float,
                          seed: int) -> SitedCssCode:
    """Seeded sited code with a guaranteed disentangling.

    Starts from a support-disjoint code (each site's qubits split into a
    Z pool and an X pool, stabilizers drawn inside windows from one pool
    only, kept linearly independent) and scrambles it with random
    per-site basis changes, which preserve every stabilizer's window.
    """
    if sites < 1 or qubits_per_site < 1:
        raise ValueError("need at least one site and one qubit per site")
    if not 0 <= stabilizer_density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    n_q = sites * qubits_per_site
    site_of_qubit = tuple(q // qubits_per_site for q in range(n_q))
    z_pool = [q for q in range(n_q) if rng.random() < 0.5]
    x_pool = [q for q in range(n_q) if q not in z_pool]

    def draw(pool: list[int], existing: list[int]) -> list[int]:
        out = list(existing)
        for j in range(sites):
            window = [q for q in pool if site_of_qubit[q] in (j, j + 1)]
            if not window:
                continue
            want = max(0, round(stabilizer_density * len(window)) )
            for _ in range(want):
                mask = 0
                for q in window:
                    if rng.random() < 0.6:
                        mask |= 1 << q
                if mask and not gf2_in_span(mask, out, n_q):
                    out.append(mask)
        return out[len(existing):]

    z_cols = draw(z_pool, [])
    x_rows = draw(x_pool, [])
    dz = ExactMatrix.build(
        Z2, n_q, len(z_cols),
        [(q, c, 1) for c, m in enumerate(z_cols) for q in support_of(m)])
    dq = ExactMatrix.build(
        Z2, len(x_rows), n_q,
        [(r, q, 1) for r, m in enumerate(x_rows) for q in support_of(m)])
    base = SitedCssCode(code=CssCode(dz=dz, dq=dq),
                        site_of_qubit=site_of_qubit)
    moves = []
    for j in range(sites):
        qs = base.qubits_at(j)
        moves.append(Move(site=j, qubits=tuple(qs),
                          matrix=_random_invertible(rng, len(qs))))
    scramble = LocalCircuit(rounds=(tuple(moves), ()))
    return apply_circuit(base, scramble)
