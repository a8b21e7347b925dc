"""Command-line interface: ``xxchain <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .chainfile import ChainFile, load, save
from .chains import ChainFamily, coupling_ratio, krawtchouk_ratio, surgered_chain
from .errors import NumericalError
from .jacobi import eigendecompose, is_persymmetric
from .transfer import check_pst, evolve, fidelity_deficit, optimize_time

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _t(v: float) -> str:
    return format(float(v), ".17g")


def _d(v: float) -> str:
    return format(float(v), ".6g")


def _family_from_args(args) -> ChainFamily:
    if args.family is None:
        raise ValueError("give --family or --chain")
    if args.family == "uniform":
        M = args.m if args.m is not None else args.n
        if M is None:
            raise ValueError("uniform chain needs --m")
        return ChainFamily("uniform", M, M, args.k)
    if args.n is None:
        raise ValueError(f"{args.family} chain needs --n")
    if args.family == "surgered" and args.m is None:
        raise ValueError("surgered chain needs --m")
    return ChainFamily(args.family, args.n, args.m, args.k)


def _resolve(args):
    """Chain, its family (None for custom chains) and whether to normalize."""
    if getattr(args, "chain", None):
        if args.family is not None:
            raise ValueError("--chain and --family are mutually exclusive")
        cf = load(args.chain)
        family, J = cf.family, cf.chain
    else:
        family = _family_from_args(args)
        J = family.build()
    normalized = getattr(args, "normalized", False)
    if normalized:
        if family is None:
            raise ValueError("--normalized needs a uniform or surgered family")
        J = J.scaled(family.normalization_scale)
    return J, family, normalized


def _emit(args, text: str) -> None:
    if getattr(args, "verbose", False):
        text = f"# xxchain {__version__}\n" + text
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_design(args) -> None:
    if not args.out:
        raise ValueError("design needs --out")
    family = _family_from_args(args)
    J = family.build()
    save(ChainFile(J, family), args.out)
    summary = {
        "n_sites": J.n_sites,
        "coupling_ratio": coupling_ratio(J),
        "persymmetric": is_persymmetric(J),
    }
    sys.stdout.write(_json(summary))


def cmd_spectrum(args) -> None:
    J, _, _ = _resolve(args)
    S = eigendecompose(J)
    if args.format == "json":
        _emit(args, _json({"x": S.eigenvalues.tolist(), "w": S.weights.tolist()}))
        return
    rows = [(s, _t(x), _t(w)) for s, (x, w) in enumerate(zip(S.eigenvalues, S.weights))]
    _emit(args, _csv(("s", "x_s", "w_s"), rows))


def cmd_evolve(args) -> None:
    J, _, _ = _resolve(args)
    rep = evolve(J, args.time)
    A = rep.amplitude
    if args.format == "json":
        _emit(args, _json({
            "T": rep.time, "re_A": A.real, "im_A": A.imag, "abs_A": abs(A),
            "delta": rep.deficit, "site_probabilities": rep.site_probabilities.tolist(),
        }))
        return
    text = _csv(("T", "re_A", "im_A", "abs_A", "delta"),
                [(_t(rep.time), _t(A.real), _t(A.imag), _t(abs(A)), _d(rep.deficit))])
    text += _csv(("site", "probability"),
                 [(n, _t(p)) for n, p in enumerate(rep.site_probabilities)])
    _emit(args, text)


def _t0(args, normalized: bool) -> float:
    if args.t0 is not None:
        return args.t0
    if normalized:
        return 0.5
    raise ValueError("--t0 is required without --normalized")


def cmd_optimize(args) -> None:
    J, family, normalized = _resolve(args)
    if family is not None and family.family in ("uniform", "surgered"):
        target = family.spectral_data(normalized)
    else:
        target = J
    T, delta = optimize_time(target, _t0(args, normalized), args.window, args.grid, args.tol)
    if args.format == "json":
        _emit(args, _json({"T_star": T, "delta_star": delta}))
        return
    _emit(args, _csv(("T_star", "delta_star"), [(_t(T), _d(delta))]))


def cmd_check_pst(args) -> None:
    J, _, _ = _resolve(args)
    rep = check_pst(J, args.rel_tol, args.qmax)
    record = {
        "persymmetric": rep.persymmetric,
        "is_pst": rep.is_pst,
        "kappa": rep.kappa,
        "gcd_d": rep.gcd_d,
        "minimal_time": rep.minimal_time,
        "multipliers": list(rep.multipliers),
    }
    if args.format == "json":
        _emit(args, _json(record))
        return
    row = (
        str(rep.persymmetric).lower(),
        str(rep.is_pst).lower(),
        "" if rep.kappa is None else _t(rep.kappa),
        "" if rep.gcd_d is None else rep.gcd_d,
        "" if rep.minimal_time is None else _t(rep.minimal_time),
        ";".join(str(m) for m in rep.multipliers),
    )
    _emit(args, _csv(tuple(record), [row]))


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_sweep(args) -> None:
    N = args.n
    if N is None:
        raise ValueError("sweep needs --n")
    if args.profile:
        rows = []
        for M in args.m_list:
            J = surgered_chain(N, M, args.k)
            for l, c in enumerate(J.couplings, start=1):
                rows.append((N, M, l, _t(c), _t(c / J.couplings[0])))
        _emit(args, _csv(("N", "M", "l", "J_l", "J_l_over_J1"), rows))
        return
    rows = []
    for M in args.m_list:
        family = ChainFamily("surgered", N, M, args.k)
        S = family.spectral_data(normalized=True)
        if args.time is not None:
            T, delta = args.time, fidelity_deficit(S, args.time)
        else:
            T, delta = optimize_time(S, _t0(args, True), args.window, args.grid, args.tol)
        rows.append((N, M, _t(T), _d(delta), _t(coupling_ratio(family.build())),
                     _t(krawtchouk_ratio(N))))
    _emit(args, _csv(("N", "M", "T", "delta", "ratio_RS", "ratio_RK"), rows))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=("uniform", "krawtchouk", "surgered"))
    common.add_argument("--n", type=int, help="index of the last site (N + 1 sites)")
    common.add_argument("--m", type=int, help="parent uniform chain has M + 1 sites")
    common.add_argument("--k", type=float, default=1.0, help="coupling scale")
    common.add_argument("--chain", help="chain file instead of family flags")
    common.add_argument("--normalized", action="store_true",
                        help="scale couplings by M + 2 (mid-spectrum gaps near 2 pi)")
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--verbose", action="store_true", help="stamp the package version")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--t0", type=float)
    search.add_argument("--window", type=float, default=0.05)
    search.add_argument("--grid", type=int, default=4001)
    search.add_argument("--tol", type=float, default=1e-10)

    parser = argparse.ArgumentParser(
        prog="xxchain", description="Design XX spin chains and evaluate state transfer."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("design", parents=[common], help="write a chain file").set_defaults(
        func=cmd_design)
    sub.add_parser("spectrum", parents=[common], help="eigenvalues and weights").set_defaults(
        func=cmd_spectrum)
    p = sub.add_parser("evolve", parents=[common], help="amplitude and site profile at a time")
    p.add_argument("--time", type=float, required=True)
    p.set_defaults(func=cmd_evolve)
    sub.add_parser("optimize", parents=[common, search],
                   help="minimize the fidelity deficit over time").set_defaults(func=cmd_optimize)
    p = sub.add_parser("check-pst", parents=[common], help="perfect-transfer criterion")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--qmax", type=int, default=99)
    p.set_defaults(func=cmd_check_pst)
    p = sub.add_parser("sweep", parents=[common, search],
                       help="coupling profiles or fidelity table over M")
    p.add_argument("--m-list", type=_int_list, required=True)
    p.add_argument("--profile", action="store_true")
    p.add_argument("--time", type=float, help="evaluate at this time instead of optimizing")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except NumericalError as exc:
        print(f"xxchain {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"xxchain {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
