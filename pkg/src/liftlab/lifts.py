"""Lifts of CSS boundary data to Z4, the correction equation, and
sparse-correction search.

Central identity: for a lift (lz, lq) with error matrix E and a
correction (dz', dq') over Z2, the corrected lift is zero over Z4 iff
E + dq . dz' + dq' . dz = 0 over Z2.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

from .exact import (
    ExactMatrix, Z2, Z4, ZZ, gf2_rank, gf2_row_reduce, gf2_solve,
    halve_even, mask_of, mat_add, mat_mul, mod_reduce, nullspace_z2,
    rank_z2, scalar_mul, solve_affine_z2, support_of,
)
from .chain import ChainComplex, is_boundary, is_cycle
from .css import CssCode


@dataclass(frozen=True)
class LiftPair:
    """Z4 matrices agreeing mod 2 with the code's (dz, dq)."""

    lz: ExactMatrix
    lq: ExactMatrix
    mode: str
    code: CssCode

    def __post_init__(self) -> None:
        if self.lz.ring != Z4 or self.lq.ring != Z4:
            raise ValueError("lift matrices must be over Z4")
        if _mod2_of_z4(self.lz) != self.code.dz or _mod2_of_z4(self.lq) != self.code.dq:
            raise ValueError("lift does not agree with the code mod 2")


def _mod2_of_z4(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix.build(Z2, a.rows, a.cols, a.entries)


def _z4_of_z2(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(Z4, a.rows, a.cols, a.entries)


@dataclass(frozen=True)
class CorrectionPair:
    """Z2 corrections: delta_z shaped like dz, delta_q shaped like dq."""

    delta_z: ExactMatrix
    delta_q: ExactMatrix

    @classmethod
    def zero(cls, code: CssCode) -> "CorrectionPair":
        return cls(ExactMatrix.zeros(Z2, code.n_q, code.n_z),
                   ExactMatrix.zeros(Z2, code.n_x, code.n_q))


def naive_lift(code: CssCode) -> LiftPair:
    """Entrywise 0 -> 0, 1 -> 1 into Z4."""
    return LiftPair(lz=_z4_of_z2(code.dz), lq=_z4_of_z2(code.dq),
                    mode="naive", code=code)


def cellular_lift(code: CssCode) -> LiftPair:
    """Integer cellular boundaries mod 4; added columns lifted naively."""
    if code.origin is None:
        raise ValueError("cellular lift needs a code with an integer origin")
    cx, d = code.origin
    if cx.ring != ZZ:
        raise ValueError("origin complex must be over Z")
    lz_cell = mod_reduce(cx.boundary(d + 1), 4)
    lq = mod_reduce(cx.boundary(d), 4)
    trips = list(lz_cell.entries)
    for col in code.added_columns:
        for r in support_of(code.dz.column_mask(col)):
            trips.append((r, col, 1))
    lz = ExactMatrix.build(Z4, code.n_q, code.n_z, trips)
    return LiftPair(lz=lz, lq=lq, mode="cellular", code=code)


def error_matrix(lift: LiftPair) -> ExactMatrix:
    """E = (lq . lz) / 2 over Z2; odd entries signal a non-lift input."""
    e4 = mat_mul(lift.lq, lift.lz)
    return halve_even(e4)


def residual(e: ExactMatrix, code: CssCode, corr: CorrectionPair) -> ExactMatrix:
    """E + dq . delta_z + delta_q . dz over Z2."""
    if (e.rows, e.cols) != (code.n_x, code.n_z):
        raise ValueError("error matrix shape mismatch")
    out = mat_add(e, mat_mul(code.dq, corr.delta_z))
    return mat_add(out, mat_mul(corr.delta_q, code.dz))


def apply_correction(lift: LiftPair, corr: CorrectionPair) -> LiftPair:
    """lz + 2 delta_z and lq + 2 delta_q over Z4."""
    two_dz = scalar_mul(2, _z4_of_z2(corr.delta_z))
    two_dq = scalar_mul(2, _z4_of_z2(corr.delta_q))
    return replace(lift, lz=mat_add(lift.lz, two_dz),
                   lq=mat_add(lift.lq, two_dq))


def verify_lift(lift: LiftPair) -> bool:
    """True iff lq . lz = 0 over Z4 (mod-2 agreement holds by construction)."""
    return mat_mul(lift.lq, lift.lz).is_zero()


def find_dual_cocycle(code_b: CssCode, added_chain: int) -> int:
    """A qubit cochain v with v . dz_B = 0 and <v, added_chain> = 1."""
    rows = code_b.dz.bit_cols() + [added_chain]
    rhs = [0] * code_b.n_z + [1]
    sol = gf2_solve(rows, rhs, code_b.n_q)
    if sol is None:
        raise ValueError("added chain pairs to zero with every cocycle "
                         "(homologically trivial)")
    return sol[0]


def _b_view(code: CssCode) -> CssCode:
    """The code with its added columns removed."""
    if not code.added_columns:
        return code
    added = set(code.added_columns)
    keep = [c for c in range(code.n_z) if c not in added]
    remap = {c: i for i, c in enumerate(keep)}
    trips = [(r, remap[c], v) for r, c, v in code.dz.entries if c in remap]
    dz = ExactMatrix.build(Z2, code.n_q, len(keep), trips)
    return CssCode(dz=dz, dq=code.dq, origin=code.origin,
                   slice_of_qubit=code.slice_of_qubit,
                   provenance=code.provenance)


def explicit_solution(code: CssCode, e: ExactMatrix) -> CorrectionPair:
    """delta_q = u (x) v^T with u the added-column error and v a dual
    cocycle of the underlying code B; delta_z = 0."""
    if not code.added_columns:
        raise ValueError("explicit solution needs a code with an added stabilizer")
    added = set(code.added_columns)
    if len(added) != 1:
        raise ValueError("explicit solution handles a single added stabilizer")
    (col,) = added
    for _, c, _ in e.entries:
        if c != col:
            raise ValueError(f"error matrix has support off the added column ({c})")
    u = e.column_mask(col)
    if u == 0:
        return CorrectionPair.zero(code)
    added_chain = code.dz.column_mask(col)
    v = find_dual_cocycle(_b_view(code), added_chain)
    trips = [(r, c, 1) for r in support_of(u) for c in support_of(v)]
    delta_q = ExactMatrix.build(Z2, code.n_x, code.n_q, trips)
    return CorrectionPair(
        delta_z=ExactMatrix.zeros(Z2, code.n_q, code.n_z), delta_q=delta_q)


# ---------------------------------------------------------------------------
# ansatz completeness check

@dataclass(frozen=True)
class AnsatzReport:
    dim_solutions: int
    dim_ansatz: int
    equal: bool


def ansatz_span_check(code: CssCode, cap: int = 4096) -> AnsatzReport:
    """Compare {k : every column of k . dz is a boundary} with
    span{dq . M + M' . dq}, as subspaces of n_x-by-n_q matrices.

    Dimension equality is the finite-instance form of the all-solutions
    ansatz; it is expected to hold when the code has no logical qubits.
    """
    n_x, n_q, n_z = code.n_x, code.n_q, code.n_z
    unknowns = n_x * n_q
    if unknowns > cap:
        raise ValueError(f"instance has {unknowns} unknowns, cap is {cap}")
    # vec index of kappa entry (a, b): a * n_q + b
    dq_rows = code.dq.bit_rows()
    dq_cols = code.dq.bit_cols()
    dz_cols = code.dz.bit_cols()
    # solution space: for every y with y^T dq = 0 and every Z-stabilizer j:
    #   sum_{a in y, b in dz_j} kappa[a, b] = 0
    left_null = nullspace_z2(code.dq.transpose())
    constraints = []
    for y in left_null:
        ybits = support_of(y)
        for j in range(n_z):
            col = dz_cols[j]
            if not col:
                continue
            row = 0
            for a in ybits:
                row |= col << (a * n_q)
            constraints.append(row)
    dim_solutions = unknowns - gf2_rank(constraints, unknowns)
    # ansatz span generators
    gens = []
    for i in range(n_q):
        col = dq_cols[i]
        if not col:
            continue
        for j in range(n_q):
            vec = 0
            for a in support_of(col):
                vec |= 1 << (a * n_q + j)
            gens.append(vec)
    for b in range(n_x):
        row = dq_rows[b]
        if not row:
            continue
        for a in range(n_x):
            gens.append(row << (a * n_q))
    dim_ansatz = gf2_rank(gens, unknowns)
    return AnsatzReport(dim_solutions, dim_ansatz,
                        dim_solutions == dim_ansatz)


# ---------------------------------------------------------------------------
# sparse search over the correction solution set

@dataclass
class LiftReport:
    strategy: str
    seed: int
    budget: int
    evaluations: int
    objective_best: int
    objective_history: list[int]
    certificate: CorrectionPair
    verified: bool
    complete: bool
    instance: dict | None = None
    secondary_total_weight: int = 0


def _unpack_correction(mask: int, code: CssCode) -> CorrectionPair:
    """Unknown-bit layout: vec(delta_z) row-major, then vec(delta_q)."""
    n_q, n_z, n_x = code.n_q, code.n_z, code.n_x
    z_bits = n_q * n_z
    dz_trips = []
    dq_trips = []
    for b in support_of(mask):
        if b < z_bits:
            dz_trips.append((b // n_z, b % n_z, 1))
        else:
            b -= z_bits
            dq_trips.append((b // n_q, b % n_q, 1))
    return CorrectionPair(
        delta_z=ExactMatrix.build(Z2, n_q, n_z, dz_trips),
        delta_q=ExactMatrix.build(Z2, n_x, n_q, dq_trips))


def _pack_correction(corr: CorrectionPair, code: CssCode) -> int:
    n_q, n_z = code.n_q, code.n_z
    z_bits = n_q * n_z
    mask = 0
    for r, c, _ in corr.delta_z.entries:
        mask |= 1 << (r * n_z + c)
    for r, c, _ in corr.delta_q.entries:
        mask |= 1 << (z_bits + r * n_q + c)
    return mask


def _objective(mask: int, code: CssCode) -> tuple[int, int]:
    """(max row/col weight over both correction matrices, total weight)."""
    n_q, n_z, n_x = code.n_q, code.n_z, code.n_x
    z_bits = n_q * n_z
    rz = [0] * n_q
    cz = [0] * n_z
    rq = [0] * n_x
    cq = [0] * n_q
    total = 0
    for b in support_of(mask):
        total += 1
        if b < z_bits:
            rz[b // n_z] += 1
            cz[b % n_z] += 1
        else:
            b -= z_bits
            rq[b // n_q] += 1
            cq[b % n_q] += 1
    best = 0
    for arr in (rz, cz, rq, cq):
        if arr:
            best = max(best, max(arr))
    return best, total


def _correction_system(code: CssCode, e: ExactMatrix):
    """Rows of the linear system over unknown correction bits.

    Equation (x, z): sum over unknowns hitting that residual entry = E[x,z].
    Equation index: x * n_z + z.
    """
    n_q, n_z, n_x = code.n_q, code.n_z, code.n_x
    z_bits = n_q * n_z
    n_eq = n_x * n_z
    rows = [0] * n_eq
    dq_cols = code.dq.bit_cols()
    dz_rows = code.dz.bit_rows()
    # delta_z bit (q, z) feeds equations (x, z) for x in dq column q
    for q in range(n_q):
        col = dq_cols[q]
        if not col:
            continue
        for z in range(n_z):
            bit = q * n_z + z
            for x in support_of(col):
                rows[x * n_z + z] |= 1 << bit
    # delta_q bit (x, q) feeds equations (x, z) for z in dz row q
    for q in range(n_q):
        row = dz_rows[q]
        if not row:
            continue
        for x in range(n_x):
            base = z_bits + x * n_q + q
            for z in support_of(row):
                rows[x * n_z + z] |= 1 << base
    rhs = [0] * n_eq
    for r, c, _ in e.entries:
        rhs[r * n_z + c] = 1
    return rows, rhs


def sparse_search(code: CssCode, e: ExactMatrix, strategy: str = "greedy",
                  budget: int = 20000, seed: int = 0,
                  instance: dict | None = None) -> LiftReport:
    """Search the affine solution set of the correction equation for a
    correction minimizing the max row/column weight.

    Strategies: "exhaustive" (Gray-code walk of the whole solution set,
    truncated at the budget), "greedy" (iterated best single-generator
    improvement, smallest index on ties), "anneal" (seeded local search).
    Deterministic given (strategy, budget, seed).
    """
    if strategy not in ("exhaustive", "greedy", "anneal"):
        raise ValueError(f"unknown strategy {strategy!r}")
    n_unknowns = code.n_q * code.n_z + code.n_x * code.n_q
    rows, rhs = _correction_system(code, e)
    sol = gf2_solve(rows, rhs, n_unknowns)
    if sol is None:
        raise ValueError("correction equation is inconsistent")
    particular, basis = sol
    # prefer the structured explicit solution as a start point when it applies
    start = particular
    if code.added_columns:
        try:
            start = _pack_correction(explicit_solution(code, e), code)
        except ValueError:
            start = particular

    evaluations = 0
    history: list[int] = []

    def evaluate(mask: int) -> tuple[int, int]:
        nonlocal evaluations
        evaluations += 1
        return _objective(mask, code)

    best = start
    best_obj, best_total = evaluate(start)
    history.append(best_obj)
    complete = True

    if strategy == "exhaustive":
        k = len(basis)
        if k and (k >= budget.bit_length() + 30 or (1 << k) > budget):
            complete = False
        current = start
        steps = (1 << k) - 1 if complete else budget
        gray_prev = 0
        for i in range(1, steps + 1):
            gray = i ^ (i >> 1)
            flip = (gray ^ gray_prev).bit_length() - 1
            gray_prev = gray
            current ^= basis[flip]
            obj, total = evaluate(current)
            if (obj, total) < (best_obj, best_total):
                best, best_obj, best_total = current, obj, total
                history.append(obj)
    elif strategy == "greedy":
        improved = True
        while improved and evaluations < budget:
            improved = False
            chosen = None
            chosen_key = (best_obj, best_total)
            for idx, g in enumerate(basis):
                if evaluations >= budget:
                    complete = False
                    break
                obj, total = evaluate(best ^ g)
                if (obj, total) < chosen_key:
                    chosen, chosen_key = idx, (obj, total)
            if chosen is not None:
                best ^= basis[chosen]
                best_obj, best_total = chosen_key
                history.append(best_obj)
                improved = True
    else:  # anneal
        rng = random.Random(seed)
        current, cur_obj, cur_total = best, best_obj, best_total
        temperature = max(1.0, float(best_obj))
        while evaluations < budget and basis:
            g = basis[rng.randrange(len(basis))]
            cand = current ^ g
            obj, total = evaluate(cand)
            delta = (obj + total / max(1, n_unknowns)) - \
                    (cur_obj + cur_total / max(1, n_unknowns))
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                current, cur_obj, cur_total = cand, obj, total
                if (obj, total) < (best_obj, best_total):
                    best, best_obj, best_total = cand, obj, total
                    history.append(obj)
            temperature = max(0.05, temperature * 0.999)
        complete = False

    certificate = _unpack_correction(best, code)
    res = residual(e, code, certificate)
    return LiftReport(strategy=strategy, seed=seed, budget=budget,
                      evaluations=evaluations, objective_best=best_obj,
                      objective_history=history, certificate=certificate,
                      verified=res.is_zero(), complete=complete,
                      instance=instance, secondary_total_weight=best_total)


def brute_force_search(code: CssCode, e: ExactMatrix) -> tuple[int, int]:
    """Independent oracle: scan all 2^n correction assignments.

    Returns (optimal objective, number of solutions).  Only viable for
    tiny instances (n_q*n_z + n_x*n_q <= ~20 unknown bits).
    """
    n_unknowns = code.n_q * code.n_z + code.n_x * code.n_q
    rows, rhs = _correction_system(code, e)
    rhs_mask = mask_of(i for i, b in enumerate(rhs) if b)
    patterns = []
    for bit in range(n_unknowns):
        m = 1 << bit
        pat = 0
        for i, row in enumerate(rows):
            if row & m:
                pat |= 1 << i
        patterns.append(pat)
    best = None
    count = 0
    res = rhs_mask  # residual of the all-zero assignment
    current = 0
    gray_prev = 0
    for i in range(1 << n_unknowns):
        if i:
            gray = i ^ (i >> 1)
            flip = (gray ^ gray_prev).bit_length() - 1
            gray_prev = gray
            current ^= 1 << flip
            res ^= patterns[flip]
        if res == 0:
            count += 1
            obj, total = _objective(current, code)
            if best is None or (obj, total) < best:
                best = (obj, total)
    if best is None:
        raise ValueError("no solution exists")
    return best[0], count


def restrict_to_slice(delta_q: ExactMatrix, code: CssCode, m: int) -> ExactMatrix:
    """Submatrix of delta_q on the qubits whose slice equals m."""
    if code.slice_of_qubit is None:
        raise ValueError("code carries no slice metadata")
    keep = [q for q, s in enumerate(code.slice_of_qubit) if s == m]
    if not keep:
        raise ValueError(f"no qubits at slice {m}")
    remap = {q: i for i, q in enumerate(keep)}
    trips = [(r, remap[c], v) for r, c, v in delta_q.entries if c in remap]
    return ExactMatrix.build(Z2, delta_q.rows, len(keep), trips)


def min_weight_cycle(c: ChainComplex, degree: int,
                     class_chain: int | tuple[int, ...],
                     cap: int = 22, budget: int = 200000) -> tuple[int, int, bool]:
    """Minimum Hamming-weight Z2 representative of the homology class of
    class_chain at the given degree.

    Enumerates the boundary-space coset by Gray code when its dimension
    is at most cap; otherwise walks at most budget steps and flags the
    result incomplete.  Returns (chain mask, weight, complete).
    """
    mask = class_chain if isinstance(class_chain, int) else mask_of(class_chain)
    if not is_cycle(c, degree, mask):
        raise ValueError("class representative is not a cycle")
    ok, _ = is_boundary(c, degree, mask)
    if ok:
        raise ValueError("trivial class requested")
    bnd = c.boundary(degree + 1)
    cols = bnd.bit_cols() if bnd.ring == Z2 else mod_reduce(bnd, 2).bit_cols()
    basis, _ = gf2_row_reduce(cols, c.dim(degree))
    k = len(basis)
    complete = k <= cap
    steps = (1 << k) if complete else min(budget, 1 << k)
    best, best_w = mask, mask.bit_count()
    current = mask
    gray_prev = 0
    for i in range(1, steps):
        gray = i ^ (i >> 1)
        flip = (gray ^ gray_prev).bit_length() - 1
        gray_prev = gray
        current ^= basis[flip]
        w = current.bit_count()
        if w < best_w:
            best, best_w = current, w
    return best, best_w, complete
