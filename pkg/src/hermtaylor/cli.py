"""Command-line interface.

Exit codes: 0 success, 1 property checked and false, 2 bad input,
3 mathematical hypothesis violated (non-exact division, singular symbol,
infeasible construction, insufficient spectral order).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import fileformats as ff
from .algebra import format_rational, parse_rational
from .combinatorics import gregory_g, p_cauchy, stirling1, stirling1_signed, stirling2
from .errors import FormatError, HypothesisViolation, QuadratureError
from .factorization import factor_chain, factor_direct, verify_factorization
from .operators import augmented_taylor, format_delta, format_symbol, taylor
from .remainder import AnalyticFn, interpret_check
from .spectral import SpectralSystem, eigenspace_constants, mask_construct, spectral_check, spectral_solve
from .subdivision import hermite_iterate

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3

STIRLING_KINDS = {"first": stirling1, "first-signed": stirling1_signed, "second": stirling2}


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _pos(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text}")
    return value


def _point(text: str):
    """Rational string if possible (exact path), float otherwise."""
    try:
        return parse_rational(text)
    except FormatError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _support(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"support must be LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("support needs LO <= HI")
    return lo, hi


def _function(text: str) -> AnalyticFn:
    if text in ("exp", "sin"):
        return AnalyticFn(text)
    if text.startswith("poly:"):
        try:
            return AnalyticFn.polynomial([parse_rational(c) for c in text[5:].split(",")])
        except FormatError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError("function must be exp, sin or poly:c0,c1,...")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermtaylor",
        description="Augmented Taylor operators and factorizations of Hermite subdivision masks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="coefficient values or tables")
    csub = coeffs.add_subparsers(dest="family", required=True)
    g = csub.add_parser("gregory", help="G_n^k (table if --n or --k is omitted)")
    g.add_argument("--n", type=_nonneg)
    g.add_argument("--k", type=_pos)
    g.add_argument("--max-n", type=_nonneg, default=6)
    g.add_argument("--max-k", type=_pos, default=4)
    s = csub.add_parser("stirling", help="Stirling numbers")
    s.add_argument("--kind", choices=sorted(STIRLING_KINDS), default="second")
    s.add_argument("--n", type=_nonneg)
    s.add_argument("--m", type=_nonneg)
    s.add_argument("--max-n", type=_nonneg, default=8)
    p = csub.add_parser("pcauchy", help="p-Cauchy numbers C_{n,p}")
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--p", type=_nonneg)
    p.add_argument("--max-n", type=_nonneg, default=6)
    p.add_argument("--max-p", type=_nonneg, default=3)

    op = sub.add_parser("op", help="print difference operators")
    osub = op.add_subparsers(dest="opname", required=True)
    t = osub.add_parser("taylor", help="Taylor operators")
    t.add_argument("--d", type=_pos, required=True)
    t.add_argument("--n", type=_pos, help="order (augmented variant)")
    t.add_argument("--variant", choices=["incomplete", "complete", "prime", "augmented"], default="complete")
    t.add_argument("--format", choices=["delta", "symbol"], default="delta")

    spectral = sub.add_parser("spectral", help="spectral condition tools")
    ssub = spectral.add_subparsers(dest="action", required=True)
    chk = ssub.add_parser("check", help="per-order report")
    chk.add_argument("--mask", required=True)
    chk.add_argument("--order", type=_nonneg, required=True)
    chk.add_argument("--system", help="spectral system file; solved from the mask if omitted")
    slv = ssub.add_parser("solve", help="solve for spectral polynomials")
    slv.add_argument("--mask", required=True)
    slv.add_argument("--order", type=_nonneg, required=True)
    slv.add_argument("--out")
    eig = ssub.add_parser("eigen", help="eigenspace of constant sequences")
    eig.add_argument("--mask", required=True)
    eig.add_argument("--lam", type=_point, default=Fraction(1))

    fac = sub.add_parser("factor", help="factor mask of the augmented Taylor factorization")
    fac.add_argument("--mask", required=True)
    fac.add_argument("--order", type=_pos, required=True)
    fac.add_argument("--method", choices=["direct", "chain"], default="direct")
    fac.add_argument("--out")
    fac.add_argument("--verify", action="store_true")

    sd = sub.add_parser("subdivide", help="iterate the Hermite scheme")
    sd.add_argument("--mask", required=True)
    sd.add_argument("--data", required=True)
    sd.add_argument("--levels", type=_pos, required=True)
    sd.add_argument("--normalized", action="store_true", help="multiply by Dil^levels")
    sd.add_argument("--out")

    rem = sub.add_parser("remainder", help="remainder interpretation")
    rsub = rem.add_subparsers(dest="action", required=True)
    rc = rsub.add_parser("check", help="per-row discrepancy table")
    rc.add_argument("--d", type=_pos, required=True)
    rc.add_argument("--n", type=_pos, required=True)
    rc.add_argument("--function", type=_function, required=True)
    rc.add_argument("--x0", type=_point, default=Fraction(0))
    rc.add_argument("--tol", type=_positive_float, default=1e-12)
    rc.add_argument("--atol", type=_positive_float, default=1e-9, help="allowed discrepancy")

    mk = sub.add_parser("mask", help="mask utilities")
    msub = mk.add_subparsers(dest="action", required=True)
    mc = msub.add_parser("construct", help="solve for a mask of given spectral order")
    mc.add_argument("--d", type=_pos, required=True)
    mc.add_argument("--order", type=_nonneg, required=True)
    mc.add_argument("--support", type=_support, required=True, help="LO:HI (use --support=-1:1)")
    mc.add_argument("--out")
    return parser


def _emit(out, text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _value(x) -> str:
    return format_rational(x) if isinstance(x, (int, Fraction)) else repr(float(x))


def _cmd_coeffs(args, out) -> int:
    if args.family == "gregory":
        if args.n is not None and args.k is not None:
            print(format_rational(gregory_g(args.n, args.k)), file=out)
            return EXIT_OK
        ks = range(1, args.max_k + 1)
        print("n\t" + "\t".join(f"k={k}" for k in ks), file=out)
        for n in range(args.max_n + 1):
            print(f"{n}\t" + "\t".join(format_rational(gregory_g(n, k)) for k in ks), file=out)
        return EXIT_OK
    if args.family == "stirling":
        fn = STIRLING_KINDS[args.kind]
        if args.n is not None and args.m is not None:
            print(fn(args.n, args.m), file=out)
            return EXIT_OK
        print("n\t" + "\t".join(f"m={m}" for m in range(args.max_n + 1)), file=out)
        for n in range(args.max_n + 1):
            print(f"{n}\t" + "\t".join(str(fn(n, m)) for m in range(args.max_n + 1)), file=out)
        return EXIT_OK
    if args.n is not None and args.p is not None:
        print(format_rational(p_cauchy(args.n, args.p)), file=out)
        return EXIT_OK
    ps = range(args.max_p + 1)
    print("n\t" + "\t".join(f"p={p}" for p in ps), file=out)
    for n in range(args.max_n + 1):
        print(f"{n}\t" + "\t".join(format_rational(p_cauchy(n, p)) for p in ps), file=out)
    return EXIT_OK


def _cmd_op(args, out) -> int:
    if args.variant == "augmented":
        n = args.n if args.n is not None else args.d
        if n < args.d:
            raise FormatError("--n must be >= --d")
        op = augmented_taylor(args.d, n)
    else:
        op = taylor(args.d, args.variant)
    lines = format_delta(op) if args.format == "delta" else format_symbol(op)
    for line in lines:
        print(line, file=out)
    return EXIT_OK


def _cmd_spectral(args, out) -> int:
    mask = ff.load_mask(args.mask)
    if args.action == "eigen":
        basis = eigenspace_constants(mask, args.lam)
        print(f"dim\t{len(basis)}", file=out)
        for v in basis:
            print("\t".join(format_rational(x) for x in v), file=out)
        return EXIT_OK
    if args.action == "solve":
        system = spectral_solve(mask, args.order)
        if system.order >= 0:
            _emit(out, ff.dumps(ff.system_to_dict(system)), args.out)
        if system.failed_at is not None:
            print(f"no spectral polynomial at order {system.failed_at}", file=sys.stderr)
            return EXIT_FALSE
        return EXIT_OK
    if args.system:
        system = ff.load_system(args.system)
        if system.d != mask.d:
            raise FormatError("system and mask have different d")
        if system.order < args.order:
            raise FormatError(f"system has order {system.order} < {args.order}")
        flags = spectral_check(mask, SpectralSystem(system.d, system.polys[: args.order + 1]))
    else:
        reached = spectral_solve(mask, args.order).order
        flags = [k <= reached for k in range(args.order + 1)]
    print("k\tholds", file=out)
    for k, ok in enumerate(flags):
        print(f"{k}\t{'true' if ok else 'false'}", file=out)
    return EXIT_OK if all(flags) else EXIT_FALSE


def _cmd_factor(args, out) -> int:
    mask = ff.load_mask(args.mask)
    if args.order < mask.d:
        raise FormatError(f"--order must be >= d = {mask.d}")
    if args.method == "chain":
        result = factor_chain(mask, args.order)[-1]
    else:
        result = factor_direct(mask, augmented_taylor(mask.d, args.order), args.order)
    text = ff.dumps(ff.mask_to_dict(result.factor))
    _emit(out, text, args.out)
    # with the mask on stdout, keep the report off it
    report = out if args.out else sys.stderr
    dims = result.eigenspace_dims()
    print(f"order\t{result.order}", file=report)
    print(f"verified\t{'true' if result.verified else 'false'}", file=report)
    print(f"dim_E(B)\t{dims[1]}", file=report)
    print(f"dim_E(2B)\t{dims[2]}", file=report)
    for flag in result.flags:
        print(f"flag\t{flag}", file=report)
    if args.verify:
        reread = ff.load_mask(args.out) if args.out else ff.mask_from_dict(json.loads(text))
        if not verify_factorization(mask, result.operator, reread, result.order):
            print("verification failed for emitted factor", file=sys.stderr)
            return EXIT_HYPOTHESIS
    return EXIT_OK if result.verified else EXIT_HYPOTHESIS


def _cmd_subdivide(args, out) -> int:
    mask = ff.load_mask(args.mask)
    data = ff.load_seq(args.data)
    if mask.d != data.d:
        raise FormatError("mask and data have different d")
    result = hermite_iterate(mask, data, args.levels, normalized=args.normalized)
    _emit(out, ff.dumps(ff.seq_to_dict(result)), args.out)
    return EXIT_OK


def _cmd_remainder(args, out) -> int:
    if args.n < args.d:
        raise FormatError("--n must be >= --d")
    rows = interpret_check(args.function, args.d, args.n, args.x0, args.tol)
    print("row\toperator\tremainder\tdiscrepancy", file=out)
    worst = 0.0
    for r in rows:
        print(f"{r.row}\t{_value(r.operator_value)}\t{_value(r.remainder_value)}\t{_value(r.discrepancy)}", file=out)
        worst = max(worst, float(r.discrepancy))
    return EXIT_OK if worst <= args.atol else EXIT_FALSE


def _cmd_mask(args, out) -> int:
    mask = mask_construct(args.d, args.order, args.support)
    _emit(out, ff.dumps(ff.mask_to_dict(mask)), args.out)
    return EXIT_OK


COMMANDS = {
    "coeffs": _cmd_coeffs,
    "op": _cmd_op,
    "spectral": _cmd_spectral,
    "factor": _cmd_factor,
    "subdivide": _cmd_subdivide,
    "remainder": _cmd_remainder,
    "mask": _cmd_mask,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (HypothesisViolation, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
