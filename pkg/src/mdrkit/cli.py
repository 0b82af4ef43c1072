"""Command-line front end.

Subcommands: decide, construct, verify, equiv, cone.  Polynomials are
accepted inline (-f "1 - x1^2") or as JSON files; pencils are always JSON
files.  Exit codes: 0 success/exists, 1 negative verdict, 2 input error,
3 verification failure.  MDRKIT_TOL overrides the default tolerance.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import construct as cons
from . import equivalence as equiv
from . import quadform, verify
from .errors import (
    ANotNSD,
    DimensionMismatch,
    InvalidPairing,
    MdrError,
    NoDiagonalRepresentation,
    NonPositiveConstant,
    NoSize2Representation,
    NotMonic,
    ParseError,
)

DEFAULT_TOL = 1e-9


@dataclass
class CliConfig:
    tolerance: float = DEFAULT_TOL
    samples: int = 64
    seed: int = 42
    as_json: bool = False
    nvars: int | None = None


class _InputError(Exception):
    """Wraps any malformed-input condition; maps to exit code 2."""


def _config_from(args) -> CliConfig:
    tol = args.tol
    if tol is None:
        env = os.environ.get("MDRKIT_TOL", "").strip()
        if env:
            try:
                tol = float(env)
            except ValueError:
                raise _InputError(f"MDRKIT_TOL is not a number: {env!r}")
        else:
            tol = DEFAULT_TOL
    if tol <= 0:
        raise _InputError("tolerance must be positive")
    samples = getattr(args, "samples", 64)
    if samples < 1:
        raise _InputError("samples must be >= 1")
    return CliConfig(tolerance=tol, samples=samples,
                     seed=getattr(args, "seed", 42),
                     as_json=args.json, nvars=getattr(args, "nvars", None))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}")


def _load_polys(args, config: CliConfig, allow_batch: bool = False):
    """Polynomial(s) from -f or --poly-file; batch only where allowed."""
    if args.poly is not None and args.poly_file is not None:
        raise _InputError("give either -f/--poly or --poly-file, not both")
    if args.poly is not None:
        try:
            return [quadform.parse_polynomial(args.poly, nvars=config.nvars)]
        except ParseError as exc:
            raise _InputError(f"bad polynomial: {exc}")
    if args.poly_file is None:
        raise _InputError("a polynomial is required (-f or --poly-file)")
    data = _load_json(args.poly_file)
    entries = data if isinstance(data, list) else [data]
    if len(entries) != 1 and not allow_batch:
        raise _InputError("this command takes a single polynomial")
    try:
        return [quadform.poly_from_dict(entry) for entry in entries]
    except ParseError as exc:
        raise _InputError(f"bad polynomial JSON: {exc}")


def _load_pencil(path: str) -> cons.HermitianPencil:
    try:
        return cons.pencil_from_dict(_load_json(path))
    except ParseError as exc:
        raise _InputError(f"bad pencil file {path}: {exc}")


def _emit(obj: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _decision_dict(report: cons.DecisionReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "rzPolynomial": report.rz_polynomial,
        "aIsNSD": report.a_is_nsd,
        "aRank": report.a_rank,
        "schurNSD": report.schur_nsd,
        "schurRank": report.schur_rank,
        "diagonalPossible": report.diagonal_possible,
        "availableSizes": list(report.available_sizes),
    }


def _decision_text(report: cons.DecisionReport) -> str:
    lines = [f"verdict: {report.verdict.value}"]
    lines.append(f"  real-zero polynomial: {'yes' if report.rz_polynomial else 'no'}")
    lines.append(f"  Schur complement NSD: {'yes' if report.schur_nsd else 'no'}"
                 f" (rank {report.schur_rank})")
    lines.append(f"  quadratic part NSD:   {'yes' if report.a_is_nsd else 'no'}"
                 f" (rank {report.a_rank})")
    lines.append(f"  diagonal pencil:      "
                 f"{'yes' if report.diagonal_possible else 'no'}")
    sizes = ", ".join(str(s) for s in report.available_sizes) or "none"
    lines.append(f"  available sizes:      {sizes}")
    return "\n".join(lines)


def cmd_decide(args) -> int:
    config = _config_from(args)
    polys = _load_polys(args, config, allow_batch=True)
    any_no_mdr = False
    outputs = []
    for f in polys:
        f = quadform.normalize(f)
        report = cons.decide(f, config.tolerance)
        outputs.append(report)
        if report.verdict is cons.Verdict.NO_MDR:
            any_no_mdr = True
    if config.as_json:
        body = [_decision_dict(r) for r in outputs]
        print(json.dumps(body[0] if len(body) == 1 else body, indent=2))
    else:
        for k, report in enumerate(outputs):
            if len(outputs) > 1:
                print(f"[{k}]")
            print(_decision_text(report))
    return 1 if any_no_mdr else 0


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    stripped = text.replace("(", " ").replace(")", " ").replace(",", " ").split()
    if len(stripped) % 2 != 0:
        raise _InputError(f"--pairs needs an even number of indices: {text!r}")
    try:
        flat = [int(tok) for tok in stripped]
    except ValueError:
        raise _InputError(f"--pairs must contain integers: {text!r}")
    return [(flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]


def cmd_construct(args) -> int:
    config = _config_from(args)
    f = quadform.normalize(_load_polys(args, config)[0])
    mode = args.mode
    try:
        if mode == "auto":
            report = cons.decide(f, config.tolerance)
            if report.verdict in (cons.Verdict.SIZE2_SYMMETRIC,
                                  cons.Verdict.SIZE2_HERMITIAN_ONLY):
                mode = "size2"
            elif report.verdict is cons.Verdict.NSD_ONLY:
                mode = "nsd"
            else:
                print(_decision_text(report), file=sys.stderr)
                return 1
        if mode == "size2":
            pencil = cons.pencil_of(cons.construct_size2(f, config.tolerance))
        elif mode == "diagonal":
            pencil = cons.pencil_of(cons.construct_diagonal(f, config.tolerance))
        elif mode == "nsd":
            pencil = cons.construct_nsd(f, config.tolerance).pencil
        elif mode == "compress":
            pairs = _parse_pairs(args.pairs or "")
            nc = cons.construct_nsd(f, config.tolerance)
            pencil = cons.compress(nc, pairs)
        else:
            raise _InputError(f"unknown mode {mode!r}")
    except (NoSize2Representation, NoDiagonalRepresentation) as exc:
        print(_decision_text(exc.report), file=sys.stderr)
        return 1
    except ANotNSD as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except InvalidPairing as exc:
        raise _InputError(str(exc))

    report = verify.verify_determinant(f, pencil, config.tolerance,
                                       config.samples, config.seed)
    if not report.ok:
        print("self-verification failed: "
              f"failing monomial {report.failing_monomial}, "
              f"max sample residual {report.max_sample_residual:.3g}",
              file=sys.stderr)
        return 3
    print(json.dumps(cons.pencil_to_dict(pencil)))
    return 0


def _verify_dict(report: verify.VerifyReport) -> dict:
    return {
        "ok": report.ok,
        "failingMonomial": report.failing_monomial,
        "maxCoeffResidual": max(report.coeff_residuals.values()),
        "maxSampleResidual": report.max_sample_residual,
        "coeffResiduals": report.coeff_residuals,
    }


def cmd_verify(args) -> int:
    config = _config_from(args)
    f = _load_polys(args, config)[0]
    pencil = _load_pencil(args.pencil)
    try:
        report = verify.verify_determinant(f, pencil, config.tolerance,
                                           config.samples, config.seed)
    except DimensionMismatch as exc:
        raise _InputError(str(exc))
    if config.as_json:
        print(json.dumps(_verify_dict(report), indent=2))
    else:
        if report.ok:
            print(f"ok: pencil represents the polynomial "
                  f"(max coefficient residual "
                  f"{max(report.coeff_residuals.values()):.3g}, "
                  f"max sample residual {report.max_sample_residual:.3g})")
        else:
            why = (f"failing monomial: {report.failing_monomial}"
                   if report.failing_monomial is not None
                   else f"sample residual {report.max_sample_residual:.3g} too large")
            print(f"MISMATCH: {why}")
    return 0 if report.ok else 3


def cmd_equiv(args) -> int:
    config = _config_from(args)
    pa = _load_pencil(args.pencil_a)
    pb = _load_pencil(args.pencil_b)
    try:
        da = cons.size2_data_from_pencil(pa)
        db = cons.size2_data_from_pencil(pb)
    except ParseError as exc:
        raise _InputError(str(exc))
    verdict = equiv.are_equivalent(da, db, config.tolerance)
    body: dict = {"kind": verdict.kind.value}
    if verdict.connecting_det is not None:
        body["connectingDet"] = verdict.connecting_det
    if verdict.witness_params is not None:
        a, b, c, d = verdict.witness_params
        body["witness"] = {"a": a, "b": b, "c": c, "d": d,
                           "U": [[_c2l(z) for z in row] for row in verdict.witness_u]}
    if config.as_json:
        print(json.dumps(body, indent=2))
    else:
        print(f"verdict: {verdict.kind.value}")
        if verdict.witness_params is not None:
            a, b, c, d = verdict.witness_params
            print(f"  witness U = [[a+bi, -c+di], [c+di, a-bi]] with "
                  f"a={a!r} b={b!r} c={c!r} d={d!r}")
        if verdict.connecting_det is not None:
            print(f"  connecting orthogonal determinant: {verdict.connecting_det:+.1f}")
    if verdict.kind is equiv.EquivalenceKind.EQUIVALENT:
        return 0
    if verdict.kind is equiv.EquivalenceKind.NOT_EQUIVALENT:
        return 1
    return 2


def _c2l(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def cmd_cone(args) -> int:
    config = _config_from(args)
    f = quadform.normalize(_load_polys(args, config)[0])
    pencil = _load_pencil(args.pencil)
    try:
        witness = verify.cone_check(f, pencil, config.tolerance)
    except DimensionMismatch as exc:
        raise _InputError(str(exc))
    if witness is None:
        _emit({"witness": None}, config.as_json,
              "none: spectrahedron contains no full-dimensional cone")
    else:
        body = {"witness": {"direction": witness.direction.tolist(),
                            "rank": witness.rank, "degree": witness.degree}}
        direction = ", ".join(f"{v:.6g}" for v in witness.direction)
        _emit(body, config.as_json,
              f"witness direction: ({direction}); pencil linear part is PSD "
              f"with rank {witness.rank}")
    return 0


def _add_common(sub, poly: bool = True):
    sub.add_argument("--tol", type=float, default=None,
                     help="decision tolerance (default 1e-9, or MDRKIT_TOL)")
    sub.add_argument("--json", action="store_true", help="JSON output")
    if poly:
        sub.add_argument("-f", "--poly", help="polynomial text, e.g. '1 - x1^2'")
        sub.add_argument("--poly-file", help="polynomial JSON file")
        sub.add_argument("--nvars", type=int, default=None,
                         help="number of variables (default: largest index used)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdrkit",
        description="Monic determinantal representations of real quadratics: "
                    "decide existence, construct pencils, verify, compare.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("decide", help="report which representations exist")
    _add_common(p)
    p.set_defaults(func=cmd_decide)

    p = subs.add_parser("construct", help="build a pencil and print its JSON")
    _add_common(p)
    p.add_argument("--mode", choices=["auto", "size2", "diagonal", "nsd", "compress"],
                   default="auto")
    p.add_argument("--pairs", default=None,
                   help="row pairs for compress mode, e.g. '(1,2),(3,4)'")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("verify", help="check a pencil against a polynomial")
    _add_common(p)
    p.add_argument("--pencil", required=True, help="pencil JSON file")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("equiv", help="compare two size-2 pencils")
    _add_common(p, poly=False)
    p.add_argument("pencil_a", help="first pencil JSON file")
    p.add_argument("pencil_b", help="second pencil JSON file")
    p.set_defaults(func=cmd_equiv)

    p = subs.add_parser("cone", help="full-dimensional cone witness")
    _add_common(p)
    p.add_argument("--pencil", required=True, help="pencil JSON file")
    p.set_defaults(func=cmd_cone)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, NonPositiveConstant, NotMonic, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MdrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
