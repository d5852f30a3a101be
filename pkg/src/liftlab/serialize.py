"""Canonical JSON input/output for matrices, complexes, codes, sited
codes, circuits, and search reports.

All emitters use sorted keys and 0-based indices, so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .exact import ExactMatrix
from .chain import ChainComplex
from .css import CssCode
from .lifts import CorrectionPair, LiftReport
from .local import LocalCircuit, Move, SitedCssCode


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def write_json(path: str | Path, obj: dict) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


# -- matrices ---------------------------------------------------------------

def matrix_to_json(a: ExactMatrix) -> dict:
    return {"rows": a.rows, "cols": a.cols, "ring": a.ring,
            "entries": [[r, c, v] for r, c, v in a.entries]}


def matrix_from_json(obj: dict) -> ExactMatrix:
    return ExactMatrix.build(obj["ring"], obj["rows"], obj["cols"],
                             [tuple(t) for t in obj["entries"]])


# -- chain complexes --------------------------------------------------------

def complex_to_json(c: ChainComplex) -> dict:
    out: dict = {
        "name": c.name,
        "ring": c.ring,
        "degrees": [c.d_min, c.d_max],
        "dims": {str(d): c.dim(d) for d in c.degrees()},
        "boundaries": {str(d): matrix_to_json(c.boundary(d))
                       for d in c.degrees() if d > c.d_min},
    }
    if c.labels:
        out["labels"] = {str(d): list(ls) for d, ls in c.labels.items()}
    if c.distinguished:
        out["distinguished"] = {
            name: {"degree": deg, "support": sorted(support)}
            for name, (deg, support) in c.distinguished.items()}
    if c.slices is not None:
        out["sites"] = {str(d): list(vals) for d, vals in c.slices.items()}
    if c.provenance:
        out["provenance"] = c.provenance
    return out


def complex_from_json(obj: dict) -> ChainComplex:
    dims = {int(d): n for d, n in obj["dims"].items()}
    boundaries = {int(d): matrix_from_json(m)
                  for d, m in obj["boundaries"].items()}
    labels = None
    if "labels" in obj:
        labels = {int(d): tuple(ls) for d, ls in obj["labels"].items()}
    distinguished = {}
    for name, spec in obj.get("distinguished", {}).items():
        distinguished[name] = (spec["degree"], tuple(spec["support"]))
    slices = None
    if "sites" in obj:
        slices = {int(d): tuple(vals) for d, vals in obj["sites"].items()}
    return ChainComplex(ring=obj["ring"], dims=dims, boundaries=boundaries,
                        name=obj.get("name", ""), labels=labels,
                        distinguished=distinguished, slices=slices,
                        provenance=obj.get("provenance", {}))


# -- CSS codes --------------------------------------------------------------

def code_to_json(code: CssCode) -> dict:
    out: dict = {
        "n_z": code.n_z, "n_q": code.n_q, "n_x": code.n_x,
        "dz": matrix_to_json(code.dz), "dq": matrix_to_json(code.dq),
        "added_columns": list(code.added_columns),
    }
    if code.slice_of_qubit is not None:
        out["slice_of_qubit"] = list(code.slice_of_qubit)
    if code.origin is not None:
        cx, degree = code.origin
        out["origin"] = {"complex": complex_to_json(cx), "degree": degree}
    if code.provenance:
        out["provenance"] = code.provenance
    return out


def code_from_json(obj: dict) -> CssCode:
    origin = None
    if "origin" in obj:
        origin = (complex_from_json(obj["origin"]["complex"]),
                  obj["origin"]["degree"])
    slice_of_qubit = None
    if "slice_of_qubit" in obj:
        slice_of_qubit = tuple(obj["slice_of_qubit"])
    return CssCode(dz=matrix_from_json(obj["dz"]),
                   dq=matrix_from_json(obj["dq"]),
                   origin=origin,
                   added_columns=tuple(obj.get("added_columns", ())),
                   slice_of_qubit=slice_of_qubit,
                   provenance=obj.get("provenance", {}))


# -- sited codes and circuits -----------------------------------------------

def sited_to_json(s: SitedCssCode) -> dict:
    out = code_to_json(s.code)
    out["site_of_qubit"] = list(s.site_of_qubit)
    return out


def sited_from_json(obj: dict) -> SitedCssCode:
    payload = dict(obj)
    sites = payload.pop("site_of_qubit")
    return SitedCssCode(code=code_from_json(payload),
                        site_of_qubit=tuple(sites))


def circuit_to_json(circ: LocalCircuit) -> dict:
    return {"rounds": [
        [{"sites": [m.site], "qubits": list(m.qubits),
          "matrix": matrix_to_json(m.matrix)} for m in rnd]
        for rnd in circ.rounds]}


def circuit_from_json(obj: dict) -> LocalCircuit:
    rounds = []
    for rnd in obj["rounds"]:
        rounds.append(tuple(
            Move(site=m["sites"][0], qubits=tuple(m["qubits"]),
                 matrix=matrix_from_json(m["matrix"])) for m in rnd))
    if len(rounds) != 2:
        raise ValueError("circuit JSON must carry exactly two rounds")
    return LocalCircuit(rounds=(rounds[0], rounds[1]))


# -- reports ----------------------------------------------------------------

def lift_report_to_json(rep: LiftReport) -> dict:
    return {
        "instance": rep.instance or {},
        "strategy": rep.strategy,
        "seed": rep.seed,
        "budget": rep.budget,
        "evaluations": rep.evaluations,
        "objective_best": rep.objective_best,
        "objective_history": list(rep.objective_history),
        "certificate": {"delta_z": matrix_to_json(rep.certificate.delta_z),
                        "delta_q": matrix_to_json(rep.certificate.delta_q)},
        "verified": rep.verified,
        "complete": rep.complete,
    }


def lift_report_from_json(obj: dict) -> LiftReport:
    cert = CorrectionPair(
        delta_z=matrix_from_json(obj["certificate"]["delta_z"]),
        delta_q=matrix_from_json(obj["certificate"]["delta_q"]))
    return LiftReport(strategy=obj["strategy"], seed=obj["seed"],
                      budget=obj["budget"], evaluations=obj["evaluations"],
                      objective_best=obj["objective_best"],
                      objective_history=list(obj["objective_history"]),
                      certificate=cert, verified=obj["verified"],
                      complete=obj["complete"],
                      instance=obj.get("instance") or None)
