"""Simulate and measure preferential attachment graphs with edge-steps."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from pae import theory
from pae.growth import ModelParams, generate
from pae.snapshot import read_snapshot, write_snapshot


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def cmd_generate(args) -> int:
    _, log = generate(ModelParams(args.p, args.t, args.seed))
    write_snapshot(log, args.out)
    return 0


def cmd_observe(args) -> int:
    from pae.observables import CSV_HEADER, measure

    graph, log = read_snapshot(args.input)
    rec = measure(graph, p=log.params.p, seed=log.params.seed,
                  clique_pool_k=args.clique_pool, exact_clique=args.exact_clique)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER.split(","))
        w.writerow(rec.to_row())
    finally:
        if args.out:
            out.close()
    return 0


def cmd_sweep(args) -> int:
    from pae.experiments import FitError, fit_exponent, load_config, read_records, report, run_ensemble

    config = load_config(args.config)
    for _ in run_ensemble(config):
        pass
    records = read_records(config.records_path)
    names = ["cherries", "cherries_multi", "max_degree", "gamma_t_1"]
    names += [o for o in ("triangles", "tau", "clique_exact") if o in config.observables]
    if "clique_lb" in config.observables:
        names.append("clique")
    fits = []
    for p in config.p_values:
        for name in names:
            try:
                fits.append(fit_exponent(records, name, p))
            except FitError as exc:
                logging.warning("skipping fit: %s", exc)
    summary = report(records, fits, {}, config.output_dir)
    print(json.dumps(summary["fits"], indent=2))
    return 0


def cmd_fit(args) -> int:
    from pae.experiments import fit_exponent, read_records

    fit = fit_exponent(read_records(args.input), args.observable, args.p,
                       bootstrap=args.bootstrap)
    print(json.dumps(fit.as_dict(), indent=2))
    return 0


def cmd_oracle(args) -> int:
    from pae.oracle import STATISTICS, as_fraction, exact_expectations, format_fraction

    stats = list(STATISTICS) if args.statistic == ["all"] else args.statistic
    values = exact_expectations(args.t, args.p, stats)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["t", "p", "statistic", "exact_value"])
    for name in stats:
        w.writerow([args.t, format_fraction(as_fraction(args.p)), name,
                    format_fraction(values[name])])
    return 0


def cmd_martingale(args) -> int:
    from pae.experiments import martingale_diagnostic

    rep = martingale_diagnostic(args.p, args.t0, args.t1, args.replicas, args.seed,
                                normalizer=args.normalizer)
    print(json.dumps(rep.as_dict(), indent=2))
    return 0 if rep.passed else 1


def cmd_degtail(args) -> int:
    from pae.experiments import degree_tail_diagnostic

    rep = degree_tail_diagnostic(args.p, args.i, args.t, args.lambdas, args.replicas, args.seed)
    print(json.dumps(rep.as_dict(), indent=2))
    return 0


def cmd_theory(args) -> int:
    print(json.dumps(theory.TheoryExponents.at(args.p).as_dict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pae", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="simulate one trajectory and write its step log")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path; a .gz suffix compresses")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("observe", help="measure a saved trajectory (one CSV row)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--clique-pool", type=int, default=200)
    p.add_argument("--exact-clique", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_observe)

    p = sub.add_parser("sweep", help="run an ensemble sweep from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="fit a scaling exponent from a records CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--observable", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--bootstrap", type=int, default=200)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("oracle", help="exact expectations by full enumeration (t <= 9)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", required=True, help="rational, e.g. 1/2")
    p.add_argument("--statistic", nargs="+", default=["all"])
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("martingale", help="martingale increment diagnostic")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--t0", type=int, default=1)
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--replicas", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--normalizer", choices=("phi", "power"), default="phi")
    p.set_defaults(func=cmd_martingale)

    p = sub.add_parser("degtail", help="tail of the normalised degree supremum")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--lambdas", type=_floats, default=[3, 4, 5, 6, 7])
    p.add_argument("--replicas", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_degtail)

    p = sub.add_parser("theory", help="closed-form exponents at p")
    p.add_argument("--p", type=float, required=True)
    p.set_defaults(func=cmd_theory)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"pae {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
