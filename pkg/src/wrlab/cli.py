"""Command-line front end.

Exit codes: 0 success, 1 domain error (message names the violated
precondition), 2 resource-cap error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional

from . import deform, report, svp, tame, verify
from .errors import DomainError, ResourceError, UndecidableError, WrlabError
from .matrices import ExactMatrix, Lattice, dual, gram_of, index_of
from .scalar import QuadScalar


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _parse_alpha(text: str):
    """Exact 'p/q' (or integer) when it matches that grammar, float otherwise."""
    if re.fullmatch(r"[+-]?\d+(/\d+)?", text.strip()):
        return Fraction(text), "exact"
    try:
        return float(text), "float"
    except ValueError:
        raise DomainError(f"cannot parse alpha from {text!r}")


def _emit(payload: dict, mode: str) -> None:
    if mode == "json":
        print(json.dumps(payload, indent=2))
    elif mode == "csv":
        keys = list(payload)
        print(",".join(keys))
        print(",".join(str(payload[k]) for k in keys))
    else:
        width = max(len(k) for k in payload)
        for key, value in payload.items():
            print(f"{key.ljust(width)}  {value}")


def _scalar_fields(name: str, value: QuadScalar) -> dict:
    return {name: value.to_float(), f"{name}_exact": value.to_string()}


def _add_output(parser) -> None:
    parser.add_argument(
        "--output", choices=("json", "csv", "pretty"), default="pretty"
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="wrlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_tame = sub.add_parser("tame", help="constant-Gram lattice report")
    p_tame.add_argument("--n", type=int, required=True)
    p_tame.add_argument("--a", type=Fraction, required=True)
    p_tame.add_argument("--dual", action="store_true")
    _add_output(p_tame)

    p_sub = sub.add_parser("sublattice", help="(r, s) sublattice report")
    p_sub.add_argument("--n", type=int, required=True)
    p_sub.add_argument("--a", type=Fraction, required=True)
    p_sub.add_argument("--r", type=int, required=True)
    p_sub.add_argument("--s", type=int, required=True)
    p_sub.add_argument("--classify", action="store_true")
    p_sub.add_argument("--density", action="store_true")
    p_sub.add_argument("--dual", action="store_true")
    _add_output(p_sub)

    p_def = sub.add_parser("deform", help="deformed-family report")
    p_def.add_argument("--family", choices=("hex", "dn", "e8"), required=True)
    p_def.add_argument("--n", type=int, default=8)
    p_def.add_argument("--alpha", type=str)
    p_def.add_argument("--integral", action="store_true")
    p_def.add_argument("--sweep", type=int, help="emit a density sweep instead")
    p_def.add_argument("--out", type=str, help="CSV path (figure written beside)")
    _add_output(p_def)

    p_pell = sub.add_parser("pell", help="integral-parameter search")
    p_pell.add_argument("--qmax", type=int, required=True)
    p_pell.add_argument("--family", choices=("dn", "e8"), default="e8")
    p_pell.add_argument("--n", type=int, default=8)
    p_pell.add_argument("--table", action="store_true")
    p_pell.add_argument("--out", type=str, help="CSV path (figure written beside)")
    _add_output(p_pell)

    p_svp = sub.add_parser("svp", help="shortest-vector report for a Gram file")
    p_svp.add_argument("--gram", type=str, required=True)
    p_svp.add_argument("--bound", type=Fraction)
    _add_output(p_svp)

    p_theta = sub.add_parser("theta", help="truncated theta / flatness factor")
    p_theta.add_argument("--gram", type=str, required=True)
    group = p_theta.add_mutually_exclusive_group(required=True)
    group.add_argument("--q", type=float)
    group.add_argument("--sigma", type=float)
    p_theta.add_argument("--radius", type=Fraction, required=True)
    p_theta.add_argument("--out", type=str, help="CSV path (figure written beside)")
    _add_output(p_theta)

    p_verify = sub.add_parser("verify-all", help="run the verification matrix")
    p_verify.add_argument("--level", choices=("fast", "full"), default="fast")

    return parser


def _load_gram(path: str) -> ExactMatrix:
    with open(path, "r", encoding="utf-8") as handle:
        return ExactMatrix.from_json(handle.read())


def _cmd_tame(args) -> int:
    params = tame.TameParams.from_a(args.n, args.a)
    payload = {"n": params.n, "a": str(params.a), "h": str(params.h)}
    payload.update(_scalar_fields("volume", tame.tame_volume(params)))
    if args.dual:
        dual_params = tame.tame_dual(params)
        payload["dual_a"] = str(dual_params.a)
        payload["dual_h"] = str(dual_params.h)
    _emit(payload, args.output)
    return 0


def _cmd_sublattice(args) -> int:
    params = tame.TameParams.from_a(args.n, args.a)
    cls = tame.classify_wr(params, args.r, args.s)
    l, x0, u = tame.window_bounds(params)
    payload = {
        "n": params.n,
        "a": str(params.a),
        "h": str(params.h),
        "r": args.r,
        "s": args.s,
        "m": cls.m,
        "window": f"[{l}, {x0}, {u}]",
        "ratio_sq": str(cls.ratio_sq),
        "tag": cls.tag,
    }
    if args.classify or args.density or cls.tag != "OutsideWindow":
        if cls.tag != "OutsideWindow":
            gram = tame.phi_sublattice_gram(params, args.r, args.s)
            rep = svp.svp_report(gram)
            payload.update(_scalar_fields("lambda1_sq", rep.lambda1_sq))
            payload["kissing"] = rep.kissing
            payload["is_gwr"] = rep.is_gwr
            payload["index"] = abs(cls.m * args.r ** (params.n - 1))
    if args.density:
        delta = tame.sublattice_center_density(params, args.r, args.s)
        payload.update(_scalar_fields("delta", delta))
        payload["delta_sq"] = str((delta * delta).rational_value())
    if args.dual:
        dual_gram = tame.dual_of_sublattice(params, args.r).gram
        payload["dual_gram"] = dual_gram.to_json()
    _emit(payload, args.output)
    return 0


def _cmd_deform(args) -> int:
    if args.sweep:
        if args.family != "hex":
            raise DomainError("--sweep is supported for the planar family")
        sweep = deform.hex_sweep(args.sweep)
        if args.out:
            report.write_hex_sweep(args.out, sweep)
            print(f"wrote {args.out} and companion figure")
        else:
            for alpha, delta in sweep:
                print(f"{float(alpha)},{delta.to_float()}")
        return 0
    if args.alpha is None:
        raise DomainError("--alpha is required without --sweep")
    alpha, mode = _parse_alpha(args.alpha)
    if args.family == "hex":
        gen = deform.hex_generator(alpha)
        volume_value = deform.hex_volume(alpha)
        n = 2
    elif args.family == "dn":
        gen = deform.dn_generator(args.n, alpha)
        volume_value = deform.dn_volume(args.n, alpha)
        n = args.n
    else:
        gen = deform.e8_generator(alpha)
        volume_value = deform.e8_volume(alpha)
        n = 8
    delta = deform.family_center_density(args.family, Fraction(alpha) if mode == "exact" else alpha, args.n)
    payload = {"family": args.family, "n": n, "alpha": str(alpha), "alpha_mode": mode}
    payload.update(_scalar_fields("volume", volume_value))
    payload.update(_scalar_fields("delta", delta))
    rep = svp.svp_report(gram_of(gen))
    payload.update(_scalar_fields("lambda1_sq", rep.lambda1_sq))
    payload["kissing"] = rep.kissing
    payload["is_gwr"] = rep.is_gwr
    if args.integral:
        if mode != "exact":
            raise DomainError("--integral needs an exact p/q alpha")
        frac = Fraction(alpha)
        square = 2 * frac.denominator ** 2 - frac.numerator ** 2
        if not deform.is_perfect_square(square):
            raise DomainError("alpha does not solve the integrality equation")
        import math as _math

        triple = deform.PellTriple(
            frac.numerator, frac.denominator, _math.isqrt(square)
        )
        lattice = deform.integral_scaled(
            args.family if args.family != "hex" else "dn", triple, args.n
        )
        payload["integral_generator"] = lattice.generator.to_json()
    payload["generator"] = gen.to_json()
    _emit(payload, args.output)
    return 0


def _cmd_pell(args) -> int:
    triples = deform.pell_search(args.qmax)
    if args.table:
        rows = deform.table_rows(args.family, triples, args.n)
        if args.out:
            report.write_pell_table(args.out, rows)
            print(f"wrote {args.out} and companion figure")
        elif args.output == "json":
            print(json.dumps(rows, indent=2))
        else:
            print(",".join(report.PELL_HEADER))
            for row in rows:
                print(",".join(str(row[k]) for k in report.PELL_HEADER))
    else:
        if args.output == "json":
            print(json.dumps([t._asdict() for t in triples], indent=2))
        else:
            print("p,q,d")
            for t in triples:
                print(f"{t.p},{t.q},{t.d}")
    return 0


def _cmd_svp(args) -> int:
    gram = _load_gram(args.gram)
    if args.bound is not None:
        vectors = svp.enumerate_below(gram, args.bound)
        print(json.dumps([list(v) for v in vectors]))
        return 0
    rep = svp.svp_report(gram)
    print(rep.to_json())
    return 0


def _cmd_theta(args) -> int:
    gram = _load_gram(args.gram)
    if args.q is not None:
        result = svp.theta_truncated(gram, args.q, args.radius)
        rows = [result.as_row(args.q)]
    else:
        lattice = Lattice(gram=gram)
        value = svp.flatness_factor(lattice, args.sigma, args.radius)
        dual_gram = dual(lattice).gram
        import math as _math

        q = _math.exp(-2.0 * _math.pi * args.sigma ** 2)
        tail = svp.theta_truncated(dual_gram, q, args.radius).tail_bound
        rows = [(args.sigma, value, tail)]
    if args.out:
        report.write_theta_rows(args.out, rows)
        print(f"wrote {args.out} and companion figure")
    else:
        print(",".join(report.THETA_HEADER))
        for row in rows:
            print(",".join(str(v) for v in row))
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_checks(level=args.level)
    failed = False
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{status} {result.check_id:>4} {result.name}"
            f" ({result.seconds:.2f}s): {result.detail}"
        )
        failed = failed or not result.passed
    return 1 if failed else 0


_DISPATCH = {
    "tame": _cmd_tame,
    "sublattice": _cmd_sublattice,
    "deform": _cmd_deform,
    "pell": _cmd_pell,
    "svp": _cmd_svp,
    "theta": _cmd_theta,
    "verify-all": _cmd_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, UndecidableError, WrlabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
