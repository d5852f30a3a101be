from liftlab.builders import build_rp3
from liftlab.css import build_code_c
from liftlab.exact import ExactMatrix, Z2, ZZ
from liftlab.lifts import cellular_lift, error_matrix, sparse_search
from liftlab.local import disentangle, random_sited_instance
from liftlab.serialize import (
    circuit_from_json, circuit_to_json, code_from_json, code_to_json,
    complex_from_json, complex_to_json, dumps, lift_report_from_json,
    lift_report_to_json, matrix_from_json, matrix_to_json, read_json,
    sited_from_json, sited_to_json, write_json,
)


def test_matrix_round_trip():
    a = ExactMatrix.from_dense(ZZ, [[2, -1], [0, 3]])
    obj = matrix_to_json(a)
    assert obj["ring"] == "Z"
    assert matrix_from_json(obj) == a


def test_complex_round_trip_with_metadata():
    cx = build_rp3(2)
    back = complex_from_json(complex_to_json(cx))
    assert back.dims == cx.dims
    assert back.boundaries == cx.boundaries
    assert back.distinguished == cx.distinguished


def test_code_round_trip_preserves_origin():
    code = build_code_c(k=2, n=1)
    back = code_from_json(code_to_json(code))
    assert back.dz == code.dz and back.dq == code.dq
    assert back.added_columns == code.added_columns
    assert back.origin is not None
    assert back.origin[1] == code.origin[1]
    assert back.origin[0].boundaries == code.origin[0].boundaries
    # the reloaded code still lifts cellularly
    assert not error_matrix(cellular_lift(back)).is_zero()


def test_sited_and_circuit_round_trip():
    s = random_sited_instance(sites=3, qubits_per_site=2,
                              stabilizer_density=0.6, seed=4)
    back = sited_from_json(sited_to_json(s))
    assert back.code.dz == s.code.dz
    assert back.site_of_qubit == s.site_of_qubit
    circ = disentangle(s)
    circ2 = circuit_from_json(circuit_to_json(circ))
    assert circ2 == circ


def test_lift_report_round_trip(tmp_path):
    code = build_code_c(k=2, n=1)
    e = error_matrix(cellular_lift(code))
    rep = sparse_search(code, e, strategy="greedy", budget=300, seed=9,
                        instance={"family": "code_c", "k": 2})
    obj = lift_report_to_json(rep)
    path = tmp_path / "report.json"
    write_json(path, obj)
    back = lift_report_from_json(read_json(path))
    assert back.objective_best == rep.objective_best
    assert back.certificate.delta_q == rep.certificate.delta_q
    assert back.instance == rep.instance


def test_canonical_bytes():
    cx = build_rp3(2)
    assert dumps(complex_to_json(cx)) == dumps(complex_to_json(build_rp3(2)))
