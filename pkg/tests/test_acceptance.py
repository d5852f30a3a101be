"""Acceptance gate: ten end-to-end checks, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import random
import time

from liftlab.builders import ResolutionProfile, build_rp3
from liftlab.chain import (
    ChainComplex, homology, is_boundary, is_cycle, reduce_complex_mod2,
)
from liftlab.css import CssCode, build_code_b, build_code_c, logical_count
from liftlab.exact import ExactMatrix, Z2, ZZ, gf2_nullspace, mat_add, mat_mul
from liftlab.lifts import (
    CorrectionPair, ansatz_span_check, apply_correction, brute_force_search,
    cellular_lift, error_matrix, explicit_solution, naive_lift, residual,
    sparse_search, verify_lift,
)
from liftlab.local import (
    SitedCssCode, integer_lift_local, random_sited_instance,
    verify_local_lift,
)
from liftlab.report import sweep_sparsity, write_trend_csv


def _line(num: int, label: str, ok: bool) -> None:
    print(f"criterion {num:2d} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({label}) failed"


def _minimal_model() -> ChainComplex:
    """One cell per degree; boundary maps 0, x2, 0."""
    return ChainComplex(
        ring=ZZ, dims={0: 1, 1: 1, 2: 1, 3: 1},
        boundaries={1: ExactMatrix.zeros(ZZ, 1, 1),
                    2: ExactMatrix.from_dense(ZZ, [[2]]),
                    3: ExactMatrix.zeros(ZZ, 1, 1)},
        name="minimal-model")


def _random_small_code(rng: random.Random) -> CssCode:
    while True:
        n_q = rng.randint(2, 4)
        n_z = rng.randint(1, 2)
        dz = ExactMatrix.from_bit_rows(
            [rng.getrandbits(n_z) for _ in range(n_q)], n_z)
        left = gf2_nullspace(dz.transpose().bit_rows(), n_q)
        if not left:
            continue
        rows = []
        for _ in range(rng.randint(1, 2)):
            v = 0
            for b in left:
                if rng.random() < 0.6:
                    v ^= b
            rows.append(v)
        return CssCode(dz=dz, dq=ExactMatrix.from_bit_rows(rows, n_q))


def _achievable_error(code: CssCode, rng: random.Random) -> ExactMatrix:
    dzc = ExactMatrix.from_bit_rows(
        [rng.getrandbits(code.n_z) for _ in range(code.n_q)], code.n_z)
    dqc = ExactMatrix.from_bit_rows(
        [rng.getrandbits(code.n_q) for _ in range(code.n_x)], code.n_q)
    return mat_add(mat_mul(code.dq, dzc), mat_mul(dqc, code.dz))


def test_criterion_1_quotient_space_homology():
    expected = homology(_minimal_model())
    ok = True
    for k in (2, 3, 4):
        t0 = time.monotonic()
        rep = homology(build_rp3(k))
        ok &= rep.betti_z2 == {0: 1, 1: 1, 2: 1, 3: 1}
        ok &= rep.betti_z == expected.betti_z
        ok &= rep.torsion == expected.torsion
        ok &= expected.betti_z == {0: 1, 1: 0, 2: 0, 3: 1}
        ok &= expected.torsion == {0: (), 1: (2,), 2: (), 3: ()}
        ok &= time.monotonic() - t0 < 5.0
    _line(1, "quotient-space builder homology", ok)


def test_criterion_2_logical_counts():
    ok = True
    for k in (2, 3):
        for n in (1, 2):
            t0 = time.monotonic()
            ok &= logical_count(build_code_b(k=k, n=n)) == 1
            ok &= logical_count(build_code_c(k=k, n=n)) == 0
            ok &= time.monotonic() - t0 < 10.0
    for ks in ((2, 3), (2, 3, 4)):
        t0 = time.monotonic()
        profile = ResolutionProfile(ks)
        ok &= logical_count(build_code_b(profile=profile)) == 1
        ok &= logical_count(build_code_c(profile=profile)) == 0
        ok &= time.monotonic() - t0 < 10.0
    _line(2, "logical counts of codes B and C", ok)


def test_criterion_3_error_matrix_structure():
    t0 = time.monotonic()
    ok = error_matrix(cellular_lift(build_code_b(k=2, n=1))).is_zero()
    code = build_code_c(k=2, n=1)
    e = error_matrix(cellular_lift(code))
    added = code.added_columns[0]
    ok &= {c for _, c, _ in e.entries} == {added}
    cx, _ = code.origin
    z2 = reduce_complex_mod2(cx)
    u = e.column_mask(added)
    ok &= is_cycle(z2, 1, u)
    ok &= not is_boundary(z2, 1, u)[0]
    ok &= time.monotonic() - t0 < 10.0
    _line(3, "error matrix vanishes off the added stabilizer", ok)


def test_criterion_4_explicit_solution():
    instances = [build_code_c(k=k, n=n)
                 for k in (2, 3) for n in (1, 2)]
    instances += [build_code_c(profile=ResolutionProfile(ks))
                  for ks in ((2, 3), (2, 3, 4))]
    ok = True
    for code in instances:
        t0 = time.monotonic()
        lift = cellular_lift(code)
        e = error_matrix(lift)
        corr = explicit_solution(code, e)
        ok &= corr.delta_z.is_zero()
        ok &= residual(e, code, corr).is_zero()
        ok &= verify_lift(apply_correction(lift, corr))
        ok &= time.monotonic() - t0 < 10.0
    _line(4, "rank-one correction fixes every code C instance", ok)


def test_criterion_5_reduction_equivalence():
    rng = random.Random(2026)
    checked = 0
    ok = True
    for _ in range(125):
        code = _random_small_code(rng)
        lift = naive_lift(code)
        e = error_matrix(lift)
        for _ in range(8):
            corr = CorrectionPair(
                delta_z=ExactMatrix.from_bit_rows(
                    [rng.getrandbits(code.n_z) for _ in range(code.n_q)],
                    code.n_z),
                delta_q=ExactMatrix.from_bit_rows(
                    [rng.getrandbits(code.n_q) for _ in range(code.n_x)],
                    code.n_q))
            ok &= (verify_lift(apply_correction(lift, corr))
                   == residual(e, code, corr).is_zero())
            checked += 1
    ok &= checked >= 1000
    _line(5, "mod-4 verification equals mod-2 residual", ok)


def test_criterion_6_ansatz_completeness():
    t0 = time.monotonic()
    ok = True
    for maker in (lambda: build_code_c(k=2, n=1),
                  lambda: build_code_c(profile=ResolutionProfile((2, 3)))):
        code = maker()
        try:
            rep = ansatz_span_check(code, cap=4096)
        except ValueError:
            continue  # over the size cap
        ok &= rep.equal
    # one logical qubit leaves a strict gap
    gap = ansatz_span_check(build_code_b(k=2, n=1), cap=4096)
    ok &= gap.dim_solutions > gap.dim_ansatz
    ok &= time.monotonic() - t0 < 60.0
    _line(6, "two-sided ansatz spans all corrections", ok)


def test_criterion_7_search_oracle_agreement():
    t0 = time.monotonic()
    toy = CssCode(dz=ExactMatrix.from_dense(Z2, [[1], [1]]),
                  dq=ExactMatrix.from_dense(Z2, [[1, 1]]))
    e = error_matrix(naive_lift(toy))
    opt, _ = brute_force_search(toy, e)
    rep = sparse_search(toy, e, strategy="exhaustive", budget=1 << 10)
    ok = opt == 1 and rep.objective_best == 1
    ok &= rep.verified and rep.complete
    rng = random.Random(7)
    for _ in range(20):
        while True:
            code = _random_small_code(rng)
            if code.n_q * code.n_z + code.n_x * code.n_q <= 20:
                break
        e = _achievable_error(code, rng)
        opt, _ = brute_force_search(code, e)
        rep = sparse_search(code, e, strategy="exhaustive", budget=1 << 22)
        ok &= rep.complete and rep.verified and rep.objective_best == opt
    ok &= time.monotonic() - t0 < 60.0
    _line(7, "exhaustive search agrees with brute-force oracle", ok)


def test_criterion_8_sparsity_trend(tmp_path):
    rows = sweep_sparsity([2, 3], n=1, strategy="greedy",
                          budget=20000, seed=0)
    ok = all(r["verified"] for r in rows)
    weights = [r["objective_best"] for r in rows]
    ok &= weights == sorted(weights)
    out = tmp_path / "trend.csv"
    write_trend_csv(rows, out)
    lines = out.read_text().strip().splitlines()
    ok &= len(lines) == 3
    _line(8, "best-found correction weight grows with k", ok)


def test_criterion_9_local_integer_lift():
    t0 = time.monotonic()
    ok = True
    for seed in range(100):
        sites = 1 + seed % 4
        qps = 1 + (seed // 4) % 3
        s = random_sited_instance(sites, qps, 0.6, seed)
        dz_lift, dq_lift, _ = integer_lift_local(s)
        rep = verify_local_lift(s, dz_lift, dq_lift)
        ok &= rep.ok
    ok &= time.monotonic() - t0 < 60.0
    _line(9, "100 random sited codes lift without torsion", ok)


def test_criterion_10_micro_example():
    t0 = time.monotonic()
    code = CssCode(dz=ExactMatrix.from_dense(Z2, [[1], [1]]),
                   dq=ExactMatrix.from_dense(Z2, [[1, 1]]))
    s = SitedCssCode(code=code, site_of_qubit=(0, 0))
    dz_lift, dq_lift, _ = integer_lift_local(s)
    rep = verify_local_lift(s, dz_lift, dq_lift)
    ok = rep.ok
    ok &= sorted(v for _, _, v in dz_lift.entries) == [-1, 1]
    ok &= dq_lift.to_dense() == [[1, 1]]
    ok &= time.monotonic() - t0 < 1.0
    _line(10, "two-qubit worked example", ok)
