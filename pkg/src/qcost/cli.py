"""Command-line front end.

Subcommands: ``zoo``, ``validate``, ``qpmm``, ``spectrum``, ``cq``,
``asympt``, ``verify``.  Machines come either from a JSON file
(``--machine``) or from a zoo constructor (``--zoo`` plus family flags);
exactly one source must be given where one is required.  Exit status is 0
on success, 1 on validation or invariant failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import costs, oracle, qpmm as qpmm_mod, spectral, zoo
from .errors import QcostError, SaturatedError
from .machines import validate
from .serialize import (curve_to_csv, curve_to_json, fmt17, load_machine,
                        machine_from_dict, machine_to_dict)

ZOO_BUILDERS = {
    "golden_mean": (zoo.golden_mean, ("R", "k", "p")),
    "lollipop": (zoo.lollipop, ("N", "M", "p", "q")),
    "biased_coins": (zoo.biased_coins, ("p", "q")),
}


def _add_source_args(sub, require=True):
    sub.add_argument("--machine", help="machine JSON file")
    sub.add_argument("--zoo", choices=sorted(ZOO_BUILDERS),
                     help="build a zoo family instance instead of loading")
    sub.add_argument("--R", type=int)
    sub.add_argument("--k", type=int)
    sub.add_argument("--N", type=int)
    sub.add_argument("--M", type=int)
    sub.add_argument("--p", type=float)
    sub.add_argument("--q", type=float)


def _machine_from_args(parser, args):
    if bool(args.machine) == bool(args.zoo):
        parser.error("exactly one of --machine or --zoo is required")
    if args.machine:
        return load_machine(args.machine)
    builder, names = ZOO_BUILDERS[args.zoo]
    params = []
    for name in names:
        value = getattr(args, name)
        if value is None:
            parser.error(f"--zoo {args.zoo} requires --{name}")
        params.append(value)
    return builder(*params)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_zoo(parser, args):
    machine = _machine_from_args(parser, args)
    _emit(json.dumps(machine_to_dict(machine), indent=2) + "\n", args.out)
    return 0


def _cmd_validate(parser, args):
    with open(args.machine_file) as fh:
        candidate = machine_from_dict(json.load(fh))
    report = validate(candidate)
    if report.ok:
        print("OK: all checks passed "
              "(row_stochasticity, unifilarity, irreducibility, stationarity)")
        return 0
    for line in report.failures():
        print(f"FAIL {line}")
    return 1


def _cmd_qpmm(parser, args):
    machine = _machine_from_args(parser, args)
    built = qpmm_mod.build_qpmm(machine)
    text = qpmm_mod.to_dot(built)
    _emit(text, args.dot)
    if args.dot:
        d = built.depth
        k = qpmm_mod.cryptic_order(built)
        print(f"pair_states={len(built.pairs)} depth={d} cryptic_order={k}")
    return 0


def _cmd_spectrum(parser, args):
    machine = _machine_from_args(parser, args)
    built = qpmm_mod.build_qpmm(machine)
    data = spectral.decompose(built.zeta)
    rows = [(ev.real, ev.imag, abs(ev)) for ev in np.sort_complex(data.eigenvalues)]
    print(f"{'re':>24} {'im':>24} {'abs':>24}")
    for re, im, mag in rows:
        print(f"{fmt17(re):>24} {fmt17(im):>24} {fmt17(mag):>24}")
    payload = {
        "eigenvalues": [{"re": re, "im": im, "abs": mag} for re, im, mag in rows],
        "nu0": data.nu0,
    }
    print(f"nu0 = {data.nu0}")
    try:
        dom = spectral.dominant_structure(data)
        print(f"r1 = {fmt17(dom.r1)}")
        print(f"r2 = {fmt17(dom.r2)}")
        print(f"Psi = {dom.psi}")
        payload.update(r1=dom.r1, r2=dom.r2, psi=dom.psi)
    except SaturatedError as exc:
        print(f"finite horizon: {exc}")
        payload.update(r1=None, r2=None, psi=None)
    print(json.dumps(payload))
    return 0


def _cmd_cq(parser, args):
    machine = _machine_from_args(parser, args)
    curve = costs.cq_curve(machine, args.lmax)
    if args.format == "csv":
        text = curve_to_csv(curve, include_infinity=args.infinity)
    else:
        text = curve_to_json(curve)
    _emit(text, args.out)
    return 0


def _cmd_asympt(parser, args):
    from . import asymptotics
    machine = _machine_from_args(parser, args)
    model = asymptotics.asymptotic_model(machine)
    if model.dominant is None:
        print("finite horizon: all eigenvalues vanish; the cost saturates at "
              "the cryptic order and has no asymptotic decay")
        return 1
    dom = model.dominant
    print(f"r1 = {fmt17(dom.r1)}")
    print(f"r2 = {fmt17(dom.r2)}")
    print(f"Psi = {dom.psi}")
    print(f"nu0 = {model.nu0}")
    curve = costs.cq_curve(machine, args.lmax)
    ratios = {L: r for L, r, _ in
              asymptotics.decay_ratio_check(curve, dom)}
    print(f"{'L':>4} {'exact_deviation':>24} {'first_order':>24} {'ratio':>24}")
    table = []
    for L, value in curve.samples:
        dev = value - curve.cq_infinity
        pred = (asymptotics.delta_entropy_first_order(model, L)
                if L >= model.nu0 else None)
        ratio = ratios.get(L)
        print(f"{L:>4} {fmt17(dev):>24} "
              f"{fmt17(pred) if pred is not None else '-':>24} "
              f"{fmt17(ratio) if ratio is not None else '-':>24}")
        table.append({"L": L, "deviation": dev, "first_order": pred,
                      "ratio": ratio})
    print(json.dumps({"r1": dom.r1, "r2": dom.r2, "psi": dom.psi,
                      "nu0": model.nu0, "rows": table}))
    return 0


VERIFY_FIXTURES = (
    ("golden_mean(4,3,0.7)", lambda: zoo.golden_mean(4, 3, 0.7)),
    ("golden_mean(2,2,0.5)", lambda: zoo.golden_mean(2, 2, 0.5)),
    ("lollipop(3,2,0.5,0.5)", lambda: zoo.lollipop(3, 2, 0.5, 0.5)),
    ("lollipop(7,4,0.5,0.5)", lambda: zoo.lollipop(7, 4, 0.5, 0.5)),
    ("biased_coins(0.5,0.25)", lambda: zoo.biased_coins(0.5, 0.25)),
)


def _cmd_verify(parser, args):
    worst_cq = 0.0
    worst_ov = 0.0
    failed = False
    for name, build in VERIFY_FIXTURES:
        machine = build()
        built = qpmm_mod.build_qpmm(machine)
        dev_cq = 0.0
        dev_ov = 0.0
        for L in range(args.lmax + 1):
            ov = costs.overlaps_iterative(built, L).entries
            ov_ref = oracle.overlap_matrix(oracle.signal_states(machine, L))
            dev_ov = max(dev_ov, float(np.abs(ov - ov_ref).max()))
            dev_cq = max(dev_cq, abs(costs.cq(machine, L)
                                     - oracle.cq_naive(machine, L)))
        ok = dev_cq < 1e-9 and dev_ov < 1e-10
        failed |= not ok
        print(f"{'OK ' if ok else 'FAIL'} {name}: "
              f"max|cq - cq_naive| = {dev_cq:.3e}, "
              f"max overlap deviation = {dev_ov:.3e}")
        worst_cq = max(worst_cq, dev_cq)
        worst_ov = max(worst_ov, dev_ov)
    print(f"worst: cq {worst_cq:.3e}, overlaps {worst_ov:.3e}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcost",
        description="Quantum communication cost of classical stationary "
                    "processes, computed in closed form")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zoo", help="emit a zoo machine as JSON")
    _add_source_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_zoo)

    p = sub.add_parser("validate", help="run all machine checks on a file")
    p.add_argument("--machine", dest="machine_file", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("qpmm", help="build the pairwise-merger machine")
    _add_source_args(p)
    p.add_argument("--dot", help="write DOT here instead of stdout")
    p.set_defaults(func=_cmd_qpmm)

    p = sub.add_parser("spectrum", help="eigenvalues and decay structure")
    _add_source_args(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("cq", help="cost curve as CSV or JSON")
    _add_source_args(p)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--infinity", action="store_true",
                   help="append the asymptotic row to CSV output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_cq)

    p = sub.add_parser("asympt", help="first-order decay analysis")
    _add_source_args(p)
    p.add_argument("--lmax", type=int, required=True)
    p.set_defaults(func=_cmd_asympt)

    p = sub.add_parser("verify", help="oracle-equivalence suite")
    p.add_argument("--lmax", type=int, default=5)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 1
    except (QcostError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
