"""Command-line interface.

Exit codes: 0 success/verified, 1 verification failed, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import builders, css, serialize
from .builders import ResolutionProfile
from .chain import homology, reduce_complex_mod2, validate_complex
from .lifts import (ansatz_span_check, cellular_lift, error_matrix,
                    explicit_solution, naive_lift, residual, sparse_search,
                    verify_lift)
from .local import (integer_lift_local, random_sited_instance, validate_sited,
                    verify_local_lift)
from .report import render_trend_png, sweep_sparsity, write_trend_csv
from .serialize import dumps, matrix_to_json, read_json, write_json


class UsageError(Exception):
    pass


def _parse_profile(text: str) -> ResolutionProfile:
    try:
        ks = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad profile {text!r}: expected comma list of ints")
    return ResolutionProfile(k_per_slice=ks)


def _emit(obj: dict, out: str | None) -> None:
    if out:
        write_json(out, obj)
    else:
        print(dumps(obj))


def cmd_build(args) -> int:
    fam = args.family
    if fam == "interval":
        cx = builders.build_interval(args.n or 1)
    elif fam == "polygon":
        cx = builders.build_polygon(2 * (args.k or 2)).complex
    elif fam == "s3_join":
        k = args.k or 2
        cx = builders.join_spheres(builders.build_polygon(2 * k),
                                   builders.build_polygon(2 * k)).complex
    elif fam == "rp3":
        cx = builders.build_rp3(args.k or 2)
    elif fam == "product":
        cx = builders.build_product(args.k or 2, args.n or 1)
    elif fam == "telescope":
        if not args.profile:
            raise UsageError("telescope needs --profile")
        cx = builders.build_telescope(_parse_profile(args.profile))
    elif fam in ("code_b", "code_c"):
        make = css.build_code_b if fam == "code_b" else css.build_code_c
        if args.profile:
            code = make(profile=_parse_profile(args.profile))
        else:
            code = make(k=args.k or 2, n=args.n or 1)
        _emit(serialize.code_to_json(code), args.out)
        return 0
    elif fam == "random_sited":
        s = random_sited_instance(sites=args.n or 3,
                                  qubits_per_site=args.k or 2,
                                  stabilizer_density=args.density,
                                  seed=args.seed)
        _emit(serialize.sited_to_json(s), args.out)
        return 0
    else:
        raise UsageError(f"unknown family {fam!r}")
    _emit(serialize.complex_to_json(cx), args.out)
    return 0


def _load(path: str) -> dict:
    try:
        return read_json(path)
    except Exception as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _classify(obj: dict) -> str:
    if "site_of_qubit" in obj:
        return "sited"
    if "dz" in obj:
        return "code"
    if "boundaries" in obj:
        return "complex"
    raise UsageError("input is neither a complex, a code, nor a sited code")


def cmd_verify(args) -> int:
    obj = _load(args.path)
    kind = _classify(obj)
    issues: list[str] = []
    try:
        if kind == "complex":
            issues = validate_complex(serialize.complex_from_json(obj))
        elif kind == "code":
            serialize.code_from_json(obj)  # invariants checked on build
        else:
            issues = validate_sited(serialize.sited_from_json(obj))
    except (ValueError, KeyError, TypeError) as exc:
        issues = [str(exc)]
    _emit({"kind": kind, "ok": not issues, "issues": issues}, args.out)
    return 0 if not issues else 1


def cmd_homology(args) -> int:
    obj = _load(args.path)
    cx = serialize.complex_from_json(obj)
    rep = homology(cx)
    out = {"betti_z2": {str(d): b for d, b in rep.betti_z2.items()}}
    if rep.betti_z is not None:
        out["betti_z"] = {str(d): b for d, b in rep.betti_z.items()}
        out["torsion"] = {str(d): list(t) for d, t in rep.torsion.items()}
    _emit(out, args.out)
    return 0


def _load_code(path: str) -> css.CssCode:
    obj = _load(path)
    if _classify(obj) != "code":
        raise UsageError(f"{path} is not a code file")
    return serialize.code_from_json(obj)


def cmd_lift(args) -> int:
    code = _load_code(args.path)
    lift = cellular_lift(code) if args.mode == "cellular" else naive_lift(code)
    e = error_matrix(lift)
    ok = verify_lift(lift)
    _emit({"mode": lift.mode, "error_matrix": matrix_to_json(e),
           "error_zero": e.is_zero(), "verified": ok,
           "provenance": code.provenance or {}}, args.out)
    return 0 if ok else 1


def cmd_solve(args) -> int:
    code = _load_code(args.path)
    lift = cellular_lift(code) if args.mode == "cellular" else naive_lift(code)
    e = error_matrix(lift)
    if args.strategy == "explicit":
        corr = explicit_solution(code, e)
        ok = residual(e, code, corr).is_zero()
        _emit({"strategy": "explicit",
               "certificate": {
                   "delta_z": matrix_to_json(corr.delta_z),
                   "delta_q": matrix_to_json(corr.delta_q)},
               "verified": ok, "provenance": code.provenance or {}}, args.out)
        return 0 if ok else 1
    rep = sparse_search(code, e, strategy=args.strategy, budget=args.budget,
                        seed=args.seed,
                        instance={"path": args.path, "mode": args.mode,
                                  **(code.provenance or {})})
    _emit(serialize.lift_report_to_json(rep), args.out)
    return 0 if rep.verified else 1


def cmd_ansatz(args) -> int:
    code = _load_code(args.path)
    rep = ansatz_span_check(code, cap=args.cap)
    _emit({"dim_solutions": rep.dim_solutions, "dim_ansatz": rep.dim_ansatz,
           "equal": rep.equal, "provenance": code.provenance or {}}, args.out)
    return 0 if rep.equal else 1


def cmd_local_lift(args) -> int:
    obj = _load(args.path)
    if _classify(obj) != "sited":
        raise UsageError(f"{args.path} is not a sited-code file")
    s = serialize.sited_from_json(obj)
    dz_lift, dq_lift, circ = integer_lift_local(s)
    rep = verify_local_lift(s, dz_lift, dq_lift)
    _emit({"dz_lift": matrix_to_json(dz_lift),
           "dq_lift": matrix_to_json(dq_lift),
           "circuit": serialize.circuit_to_json(circ),
           "checks": {"product_zero": rep.product_zero,
                      "mod2_match": rep.mod2_match,
                      "local": rep.local,
                      "betti_z2": list(rep.betti_z2),
                      "betti_z": list(rep.betti_z),
                      "torsion_free": rep.torsion_free},
           "ok": rep.ok}, args.out)
    return 0 if rep.ok else 1


def cmd_sweep(args) -> int:
    if not args.profile:
        raise UsageError("sweep needs --profile with the k values to scan")
    try:
        ks = [int(x) for x in args.profile.split(",")]
    except ValueError:
        raise UsageError("bad --profile: expected comma list of ints")
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = sweep_sparsity(ks, n=args.n or 1, strategy=args.strategy,
                          budget=args.budget, seed=args.seed)
    write_trend_csv(rows, out_dir / "trend.csv")
    render_trend_png(rows, out_dir / "trend.png")
    print(f"wrote {out_dir / 'trend.csv'} and {out_dir / 'trend.png'}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftlab",
        description="exact chain-complex, CSS-code, and lift toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, path=False):
        p.add_argument("--out", default=None, help="output path")
        if path:
            p.add_argument("path", help="input JSON file")

    p = sub.add_parser("build", help="construct a complex or code")
    p.add_argument("family", choices=["interval", "polygon", "s3_join",
                                      "rp3", "product", "telescope",
                                      "code_b", "code_c", "random_sited"])
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k0", type=int, default=None, dest="k")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--profile", default=None)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="validate a complex/code/sited file")
    common(p, path=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    common(p, path=True)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("lift", help="lift a code to Z4 and report the error")
    common(p, path=True)
    p.add_argument("--mode", choices=["naive", "cellular"], default="naive")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("solve", help="solve or search the correction equation")
    common(p, path=True)
    p.add_argument("--mode", choices=["naive", "cellular"], default="cellular")
    p.add_argument("--strategy", default="greedy",
                   choices=["explicit", "exhaustive", "greedy", "anneal"])
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("ansatz", help="compare solution and ansatz dimensions")
    common(p, path=True)
    p.add_argument("--cap", type=int, default=4096)
    p.set_defaults(func=cmd_ansatz)

    p = sub.add_parser("local-lift", help="locality-preserving integer lift")
    common(p, path=True)
    p.set_defaults(func=cmd_local_lift)

    p = sub.add_parser("sweep", help="sparsity-vs-k trend table and figure")
    p.add_argument("--profile", default=None,
                   help="comma list of fine-end k values")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--strategy", default="greedy",
                   choices=["exhaustive", "greedy", "anneal"])
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
