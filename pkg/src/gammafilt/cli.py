"""``gammafilt`` command line.

Every command writes UTF-8 text with LF line endings, to stdout or to the
file given by ``--out``.  Identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import acceptance, asymptotics, diagram, genfun, oracle, shadows
from .algebra import MIN_ASYMPTOTIC_PRECISION, MPoly, T, Z, default_precision, working_precision
from .errors import GammafiltError

PROB_DIGITS = 30
FLOAT_DECIMALS = 12


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _prob(x) -> str:
    """Probability at 30 significant digits."""
    with working_precision(PROB_DIGITS + 10):
        if isinstance(x, Fraction):
            x = mpmath.mpf(x.numerator) / x.denominator
        return mpmath.nstr(x, PROB_DIGITS, strip_zeros=False)


def _fixed(x) -> str:
    return format(float(x), f".{FLOAT_DECIMALS}f")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _read_diagram(source: str) -> diagram.Diagram:
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    return diagram.parse_diagram(source)


def cmd_genus(args) -> int:
    d = _read_diagram(args.input)
    comps = diagram.irreducible_shadows(d)
    report = {
        "diagram": diagram.format_diagram(d),
        "genus": diagram.genus(d),
        "boundary_components": diagram.boundary_components(d),
        "irreducible": diagram.is_irreducible(d),
        "shadow": diagram.format_diagram(diagram.shadow(d)),
        "components": [{"shadow": diagram.format_diagram(c), "genus": diagram.genus(c)} for c in comps],
        "gamma_membership": {str(g): diagram.is_gamma_diagram(d, g) for g in (1, 2)},
    }
    if args.format == "json":
        _emit(_json(report), args.out)
        return 0
    lines = [
        f"diagram: {report['diagram']}",
        f"genus: {report['genus']}",
        f"boundary_components: {report['boundary_components']}",
        f"irreducible: {str(report['irreducible']).lower()}",
        f"shadow: {report['shadow']}",
        f"irreducible_shadows: {len(comps)}",
    ]
    lines += [f"  {c['shadow']} genus={c['genus']}" for c in report["components"]]
    lines += [f"gamma_{g}: {str(v).lower()}" for g, v in report["gamma_membership"].items()]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_enumerate_shadows(args) -> int:
    catalog = shadows.enumerate_irreducible_shadows(args.genus, args.threads)
    _emit(_json(catalog.to_json()), args.out)
    return 0


def _series_rows(args):
    if args.tau is None:
        series = genfun.h_series(args.gamma, args.terms)
    else:
        series = genfun.g_series(args.tau, args.gamma, args.terms)
    for n in range(args.terms + 1):
        coeff = series[n]
        for g in range(n // 2 + 1):
            yield n, g, coeff.coeff(t=g)


def cmd_series(args) -> int:
    rows = list(_series_rows(args))
    if args.format == "csv":
        _emit(_csv(["n", "g", "count"], rows), args.out)
    else:
        obj = {
            "gamma": args.gamma,
            "tau": args.tau,
            "terms": args.terms,
            "counts": [{"n": n, "g": g, "count": c} for n, g, c in rows],
        }
        _emit(_json(obj), args.out)
    return 0


def cmd_oracle_check(args) -> int:
    if args.tau is None:
        series = genfun.h_series(args.gamma, args.max_n)
        oracle.OracleConfig(max_arcs=args.max_n)
        truth = lambda n: oracle.count_matchings(n, args.gamma)  # noqa: E731
    else:
        series = genfun.g_series(args.tau, args.gamma, args.max_n)
        oracle.OracleConfig(max_vertices=args.max_n)
        truth = lambda n: oracle.count_structures(n, args.tau, args.gamma)  # noqa: E731
    width = args.max_n // 2 + 1
    rows, failed = [], False
    for n in range(args.max_n + 1):
        expected = truth(n)
        got = {g: c for (_, g, _), c in series[n].terms()}
        cells = []
        for g in range(width):
            if g > n // 2:
                cells.append("-")
                continue
            ok = expected.get(g, 0) == got.get(g, 0)
            failed |= not ok
            cells.append("PASS" if ok else "FAIL")
        row_ok = expected == dict(sorted(got.items()))
        failed |= not row_ok
        rows.append([n, *cells, "PASS" if row_ok else "FAIL"])
    text = _csv(["n", *[f"g{g}" for g in range(width)], "status"], rows)
    text += f"overall: {'FAIL' if failed else 'PASS'}\n"
    _emit(text, args.out)
    return 1 if failed else 0


def cmd_clt_table(args) -> int:
    gammas = (args.gamma,) if args.gamma else (1, 2)
    rows = []
    for gamma in gammas:
        for tau in range(1, args.tau_max + 1):
            rep = asymptotics.clt_params(tau, gamma)
            rows.append([tau, gamma, _fixed(rep.mu), _fixed(rep.sigma2), _fixed(rep.theta0), _fixed(rep.rho0)])
    _emit(_csv(["tau", "gamma", "mu", "sigma2", "theta0", "rho0"], rows), args.out)
    return 0


def cmd_distribution(args) -> int:
    rep = asymptotics.gaussian_compare(args.tau, args.gamma, args.n)
    rows = [[g, _prob(p), _prob(q)] for g, (p, q) in enumerate(zip(rep.exact, rep.gaussian))]
    if args.format == "csv":
        _emit(_csv(["g", "exact_prob", "gaussian_prob"], rows), args.out)
    else:
        obj = {
            "n": args.n,
            "tau": args.tau,
            "gamma": args.gamma,
            "mean": _prob(rep.mean),
            "variance": _prob(rep.variance),
            "tv_distance": _prob(mpmath.mpf(rep.tv_distance)),
            "rows": [{"g": g, "exact_prob": p, "gaussian_prob": q} for g, p, q in rows],
        }
        _emit(_json(obj), args.out)
    return 0


def corrupted_is2() -> MPoly:
    """Is_2 with its lowest genus-2 coefficient off by one (negative control)."""
    return shadows.is_polynomial(2) + Z ** 4 * T ** 2


def cmd_verify(args) -> int:
    is2 = corrupted_is2() if args.inject_fault == "is2" else None
    failed = False
    for result in acceptance.run_all(quick=args.quick, threads=args.threads, is2=is2):
        print(result.line(), flush=True)
        failed |= result.status == "FAIL"
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _int_in(lo: int, hi: int | None = None):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
        if value < lo or (hi is not None and value > hi):
            bound = f"{lo}..{hi}" if hi is not None else f">= {lo}"
            raise argparse.ArgumentTypeError(f"{value} is outside {bound}")
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammafilt", description=__doc__.splitlines()[0])
    parser.add_argument("--precision", type=_int_in(MIN_ASYMPTOTIC_PRECISION), help="mpmath decimal digits")
    parser.add_argument("--threads", type=_int_in(1), help="worker processes (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="genus, shadow and components of one diagram")
    p.add_argument("input", help="diagram text, JSON, or a file holding either")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("enumerate-shadows", help="catalog of irreducible shadows of one genus")
    p.add_argument("--genus", type=_int_in(1, 2), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate_shadows)

    p = sub.add_parser("series", help="coefficients [z^n t^g] of H_gamma or G_{tau,gamma}")
    p.add_argument("--gamma", type=_int_in(1, 2), required=True)
    p.add_argument("--tau", type=_int_in(1), help="omit for gamma-matchings")
    p.add_argument("--terms", type=_int_in(0), required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oracle-check", help="series against brute-force counts")
    p.add_argument("--gamma", type=_int_in(1, 2), required=True)
    p.add_argument("--tau", type=_int_in(1), help="omit to check matchings")
    p.add_argument("--max-n", type=_int_in(0), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("clt-table", help="mu, sigma^2, theta and rho per (tau, gamma)")
    p.add_argument("--gamma", type=_int_in(1, 2))
    p.add_argument("--tau-max", type=_int_in(1, 6), default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_clt_table)

    p = sub.add_parser("distribution", help="exact genus law against its Gaussian approximation")
    p.add_argument("--n", type=_int_in(0), required=True)
    p.add_argument("--tau", type=_int_in(1, 6), required=True)
    p.add_argument("--gamma", type=_int_in(1, 2), required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--quick", action="store_true", help="skip the genus-2 catalog criterion")
    p.add_argument("--inject-fault", choices=("is2",), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision is not None:
        os.environ["GAMMAFILT_PRECISION"] = str(args.precision)
    try:
        default_precision()
        return args.func(args)
    except (GammafiltError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
