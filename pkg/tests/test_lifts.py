import random

import pytest

from liftlab.builders import build_rp3
from liftlab.chain import is_boundary, is_cycle, reduce_complex_mod2
from liftlab.css import CssCode, build_code_b, build_code_c
from liftlab.exact import (
    ExactMatrix, Z2, Z4, gf2_nullspace, mask_of, mat_add, mat_mul,
)
from liftlab.lifts import (
    CorrectionPair, LiftPair, ansatz_span_check, apply_correction,
    brute_force_search, cellular_lift, error_matrix, explicit_solution,
    find_dual_cocycle, min_weight_cycle, naive_lift, residual,
    restrict_to_slice, sparse_search, verify_lift,
)


def micro() -> CssCode:
    return CssCode(dz=ExactMatrix.from_dense(Z2, [[1], [1]]),
                   dq=ExactMatrix.from_dense(Z2, [[1, 1]]))


def random_small_code(rng: random.Random) -> CssCode:
    """Tiny CSS code: random dz, dq rows drawn from ker(dz^T)."""
    while True:
        n_q = rng.randint(2, 4)
        n_z = rng.randint(1, 2)
        dz = ExactMatrix.from_bit_rows(
            [rng.getrandbits(n_z) for _ in range(n_q)], n_z)
        left = gf2_nullspace(dz.transpose().bit_rows(), n_q)
        if not left:
            continue
        n_x = rng.randint(1, 2)
        rows = []
        for _ in range(n_x):
            v = 0
            for b in left:
                if rng.random() < 0.6:
                    v ^= b
            rows.append(v)
        return CssCode(dz=dz, dq=ExactMatrix.from_bit_rows(rows, n_q))


def achievable_error(code: CssCode, rng: random.Random) -> ExactMatrix:
    dzc = ExactMatrix.from_bit_rows(
        [rng.getrandbits(code.n_z) for _ in range(code.n_q)], code.n_z)
    dqc = ExactMatrix.from_bit_rows(
        [rng.getrandbits(code.n_q) for _ in range(code.n_x)], code.n_q)
    return mat_add(mat_mul(code.dq, dzc), mat_mul(dqc, code.dz))


def test_naive_lift_micro():
    lift = naive_lift(micro())
    assert lift.lz.ring == Z4
    e = error_matrix(lift)
    assert e.to_dense() == [[1]]
    assert not verify_lift(lift)


def test_lift_pair_rejects_wrong_mod2():
    code = micro()
    with pytest.raises(ValueError):
        LiftPair(lz=ExactMatrix.from_dense(Z4, [[1], [3]]),
                 lq=ExactMatrix.from_dense(Z4, [[1, 0]]),
                 mode="naive", code=code)


def test_apply_correction_micro():
    code = micro()
    lift = naive_lift(code)
    corr = CorrectionPair(delta_z=ExactMatrix.from_dense(Z2, [[1], [0]]),
                          delta_q=ExactMatrix.zeros(Z2, 1, 2))
    e = error_matrix(lift)
    assert residual(e, code, corr).is_zero()
    assert verify_lift(apply_correction(lift, corr))


def test_cellular_lift_code_b_is_exact():
    code = build_code_b(k=2, n=1)
    lift = cellular_lift(code)
    assert error_matrix(lift).is_zero()
    assert verify_lift(lift)


def test_cellular_lift_needs_origin():
    with pytest.raises(ValueError):
        cellular_lift(micro())


@pytest.mark.parametrize("k,n", [(2, 1), (3, 1)])
def test_error_matrix_structure_code_c(k, n):
    code = build_code_c(k=k, n=n)
    e = error_matrix(cellular_lift(code))
    added = code.added_columns[0]
    assert {c for _, c, _ in e.entries} == {added}
    cx, _ = code.origin
    z2 = reduce_complex_mod2(cx)
    u = e.column_mask(added)
    assert is_cycle(z2, 1, u)
    assert not is_boundary(z2, 1, u)[0]


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (3, 1)])
def test_explicit_solution_corrects_code_c(k, n):
    code = build_code_c(k=k, n=n)
    lift = cellular_lift(code)
    e = error_matrix(lift)
    corr = explicit_solution(code, e)
    assert corr.delta_z.is_zero()
    assert residual(e, code, corr).is_zero()
    assert verify_lift(apply_correction(lift, corr))


def test_find_dual_cocycle_duality():
    code = build_code_b(k=2, n=1)
    cx, _ = code.origin
    _, supp = cx.distinguished["rp1_cycle_m0"]
    v = find_dual_cocycle(code, mask_of(supp))
    for col in range(code.n_z):
        assert (v & code.dz.column_mask(col)).bit_count() % 2 == 0
    assert (v & mask_of(supp)).bit_count() % 2 == 1


def test_reduction_equivalence_randomized():
    """verify_lift(corrected) iff the Z2 residual vanishes."""
    rng = random.Random(42)
    checked = 0
    for _ in range(40):
        code = random_small_code(rng)
        lift = naive_lift(code)
        e = error_matrix(lift)
        for _ in range(5):
            corr = CorrectionPair(
                delta_z=ExactMatrix.from_bit_rows(
                    [rng.getrandbits(code.n_z) for _ in range(code.n_q)],
                    code.n_z),
                delta_q=ExactMatrix.from_bit_rows(
                    [rng.getrandbits(code.n_q) for _ in range(code.n_x)],
                    code.n_q))
            ok = verify_lift(apply_correction(lift, corr))
            assert ok == residual(e, code, corr).is_zero()
            checked += 1
    assert checked == 200


def test_ansatz_equal_on_logical_zero_instances():
    rep = ansatz_span_check(build_code_c(k=2, n=1))
    assert rep.equal


def test_ansatz_gap_on_code_b():
    # one logical qubit leaves a nontrivial cocycle outside the ansatz
    rep = ansatz_span_check(build_code_b(k=2, n=1))
    assert rep.dim_solutions > rep.dim_ansatz


def test_ansatz_cap():
    with pytest.raises(ValueError):
        ansatz_span_check(build_code_c(k=2, n=1), cap=10)


def test_exhaustive_matches_brute_force():
    rng = random.Random(7)
    for _ in range(20):
        while True:
            code = random_small_code(rng)
            if code.n_q * code.n_z + code.n_x * code.n_q <= 20:
                break
        e = achievable_error(code, rng)
        opt, _ = brute_force_search(code, e)
        rep = sparse_search(code, e, strategy="exhaustive", budget=1 << 22)
        assert rep.complete and rep.verified
        assert rep.objective_best == opt


def test_toy_optimum_is_one():
    code = micro()
    e = error_matrix(naive_lift(code))
    opt, count = brute_force_search(code, e)
    assert opt == 1
    assert count == 8  # odd-weight assignments of four bits
    rep = sparse_search(code, e, strategy="exhaustive", budget=1 << 10)
    assert rep.objective_best == 1 and rep.verified and rep.complete


def test_greedy_and_anneal_verify():
    code = build_code_c(k=2, n=1)
    e = error_matrix(cellular_lift(code))
    greedy = sparse_search(code, e, strategy="greedy", budget=2000, seed=3)
    assert greedy.verified
    anneal = sparse_search(code, e, strategy="anneal", budget=500, seed=3)
    assert anneal.verified
    again = sparse_search(code, e, strategy="anneal", budget=500, seed=3)
    assert anneal.objective_best == again.objective_best


def test_unknown_strategy():
    code = micro()
    with pytest.raises(ValueError):
        sparse_search(code, error_matrix(naive_lift(code)), strategy="magic")


def test_restrict_to_slice():
    code = build_code_b(k=2, n=1)
    dq0 = restrict_to_slice(code.dq, code, 0)
    keep = [q for q, s in enumerate(code.slice_of_qubit) if s == 0]
    assert dq0.cols == len(keep)
    with pytest.raises(ValueError):
        restrict_to_slice(code.dq, micro(), 0)


@pytest.mark.parametrize("k,want", [(2, 2), (3, 2)])
def test_min_weight_cycle_oracle(k, want):
    # frozen from exhaustive coset enumeration over the boundary space
    rp3 = build_rp3(k)
    _, supp = rp3.distinguished["rp1_cycle"]
    _, weight, complete = min_weight_cycle(rp3, 1, mask_of(supp), cap=24)
    assert complete
    assert weight == want


def test_min_weight_cycle_rejects_trivial_class():
    rp3 = build_rp3(2)
    with pytest.raises(ValueError):
        min_weight_cycle(rp3, 1, 0)
