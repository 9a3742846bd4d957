"""Command line entry point: ``betacf <command> ...``.

Exit codes: 0 success, 2 unparsable input, 3 a published fixture failed,
4 an expansion hit the cap without a conclusion.
"""
from __future__ import annotations

import argparse
import json
import sys

from .beta import BetaSpec, beta_integers_in, make_beta, ratio_case
from .cf import Kind, eval_finite, eval_periodic, expand, format_word, parse_word
from .experiments import SweepConfig, cff_sample, search_periodic, verify_paper
from .fixtures import TABLE1, TABLE2_OPEN_ROWS, TABLE2_PERIODIC_ROWS
from .heights import weil_height_squared
from .quadratic import QuadRat, parse_surd
from .theorems import appendix_bound_check, check_superteorem, mercat_threshold

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FIXTURE = 3
EXIT_CAPPED = 4


class InputError(ValueError):
    pass


def _beta(args) -> BetaSpec:
    if not args.beta:
        raise InputError("--beta is required")
    try:
        return make_beta(args.beta, root=args.root)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad base {args.beta!r}: {exc}") from exc


def _surd(text: str, names=None) -> QuadRat:
    try:
        return parse_surd(text, names)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number {text!r}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


def _config(args) -> SweepConfig:
    cfg = SweepConfig.from_file(args.config) if getattr(args, "config", None) else SweepConfig()
    if args.cap is not None:
        cfg.cap = args.cap
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    return cfg


def cmd_expand(args) -> int:
    beta = _beta(args)
    if not args.x:
        raise InputError("--x is required")
    x = _surd(args.x, {"b": beta.beta})
    out = expand(x, beta, cap=args.cap or 10_000)
    payload = {
        "beta": str(beta.beta),
        "x": str(x),
        "kind": out.kind.value,
        "preperiod": [str(a) for a in out.preperiod],
        "period": [str(a) for a in out.period],
    }
    lines = [f"beta = {beta.beta} ({beta.klass.value})", f"x = {x}", f"{out.kind.value}: {format_word(out.preperiod, out.period if out.is_periodic else None, beta, args.style)}"]
    if not out.is_capped:
        app = appendix_bound_check(out)
        payload["appendix"] = app.to_json()
        lines.append(f"irrational quotients r = {app.r} <= bound {app.bound:.6g}: {app.count_ok}")
    if out.is_periodic:
        report = check_superteorem(out)
        payload["period_report"] = report.to_json()
        lines.append(f"period: {report.homogeneity.value}; p_n + q_(n-1) = {report.pq_sum} in Z or sqrt(D)Z: {report.pq_sum_in_Z_or_sqrtD}")
    if out.is_capped:
        lines.append(f"no conclusion after {len(out.word)} steps")
    _emit(args, payload, "\n".join(lines))
    return EXIT_CAPPED if out.kind is Kind.CAPPED else EXIT_OK


def cmd_eval(args) -> int:
    names = {"b": make_beta(args.beta, root=args.root).beta} if args.beta else None
    try:
        pre, per = parse_word(args.word, names)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad word {args.word!r}: {exc}") from exc
    D = make_beta(args.beta, root=args.root).D if args.beta else None
    if per:
        value = eval_periodic(pre, per, D)
    else:
        value = eval_finite(pre)
    _emit(args, {"value": str(value), "approx": float(value)}, f"{value} ~ {float(value):.15g}")
    return EXIT_OK


def _table1_row(beta: BetaSpec):
    for i, row in enumerate(TABLE1, 1):
        if make_beta(row.poly).beta == beta.beta:
            return i, row
    return None


def cmd_classify(args) -> int:
    if args.poly and not args.beta:
        args.beta = args.poly
    beta = _beta(args)
    case = ratio_case(beta)
    payload = {
        "beta": str(beta.beta),
        "poly": str(beta.poly),
        "class": beta.klass.value,
        "floor": beta.floor_beta,
        "conjugate": str(beta.conj),
        "pisot_unit": beta.is_pisot_unit,
        "ratio_case": case,
    }
    lines = [
        f"beta = {beta.beta} ~ {float(beta.beta):.9f}, root of {beta.poly}",
        f"class: {beta.klass.value}{' (Pisot unit)' if beta.is_pisot_unit else ''}",
        f"floor(beta) = {beta.floor_beta}, conjugate = {beta.conj} ~ {float(beta.conj):.6g}",
        f"conjugate ratio case: {case or 'none'}",
    ]
    hit = _table1_row(beta)
    if hit:
        i, row = hit
        payload["table1_row"] = i
        payload["cff"] = row.cff
        lines.append(f"Perron table row {i}: CFF {'yes' if row.cff else 'no'}")
    elif beta.poly.degree == 2 and (beta.poly.e, -beta.poly.f) in TABLE2_OPEN_ROWS:
        # the published table leaves these open; report nothing beyond raw sampling
        payload["table2"] = "open"
        lines.append("negative-conjugate table: open (use cff-sample for raw statistics)")
    elif not beta.is_integer:
        if beta.poly.degree == 2 and (beta.poly.e, -beta.poly.f) in TABLE2_PERIODIC_ROWS:
            payload["table2"] = "periodic expansion found"
            lines.append("negative-conjugate table: a periodic expansion exists (not CFF)")
        m = mercat_threshold(beta)
        payload["m_K"] = {"unconditional": m.unconditional, "from_period": m.from_period, "conditional": m.conditional}
        lines.append(f"m_K = {m.from_period} (unconditional bound {m.unconditional}; {m.conditional} under the {{1,2}}-period conjecture)")
        if beta.beta > m.from_period:
            lines.append("CFF: no (beta exceeds m_K)")
        elif args.conjecture and beta.beta > m.conditional:
            lines.append("CFF: no, conditional on the {1,2}-period conjecture")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_beta_integers(args) -> int:
    beta = _beta(args)
    names = {"b": beta.beta}
    lo, hi = _surd(args.lo, names), _surd(args.hi, names)
    if hi < lo:
        raise InputError("need lo <= hi")
    ts = beta_integers_in(lo, hi, beta)
    payload = {"beta": str(beta.beta), "values": [{"digits": str(t), "value": str(t.value)} for t in ts]}
    text = "\n".join(f"{str(t):>12}  {t.value}  ~ {float(t.value):.9g}" for t in ts)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_height(args) -> int:
    text = args.value or args.x
    if not text:
        raise InputError("a number is required")
    x = _surd(text)
    h = weil_height_squared(x)
    _emit(
        args,
        {"x": str(x), "H2": str(h.value), "H2_upper": h.float_upper},
        f"H(x)^2 = {h.value} ~ {float(h.value):.12g}",
    )
    return EXIT_OK


def cmd_search_periodic(args) -> int:
    beta = _beta(args)
    budget = args.budget if args.budget is not None else 200
    hit = search_periodic(beta, budget, cap=args.cap or 10_000)
    if hit is None:
        _emit(args, {"found": False, "budget": budget}, f"no periodic expansion with coefficients <= {budget}")
        return EXIT_OK
    payload = {
        "found": True,
        "x": str(hit.x),
        "preperiod": [str(a) for a in hit.outcome.preperiod],
        "period": [str(a) for a in hit.outcome.period],
        "tried": hit.tried,
    }
    _emit(args, payload, f"{hit.x}: {hit.outcome} (candidate {hit.tried})")
    return EXIT_OK


def cmd_cff_sample(args) -> int:
    beta = _beta(args)
    cfg = _config(args)
    n = args.samples if args.samples is not None else cfg.sample_count
    bound = args.budget if args.budget is not None else cfg.search_numerator_bound
    den = args.budget if args.budget is not None else cfg.search_denominator_bound
    stats = cff_sample(beta, n, bound, den, cfg.seed, cfg.cap)
    _emit(args, stats.to_json(), f"finite {stats.finite}, periodic {stats.periodic}, capped {stats.capped} (n = {n}, seed {cfg.seed})")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    cfg = _config(args)
    if args.conjecture:
        cfg.conjecture_mode = True
    report = verify_paper(cfg, search_budget=args.budget)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FIXTURE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", help="base: monic polynomial such as x^2-x-4, or a surd such as sqrt(2)")
    common.add_argument("--root", choices=("larger", "smaller"), default="larger", help="root of the polynomial to use")
    common.add_argument("--x", help="number to work on, e.g. (164+65*sqrt(17))/251")
    common.add_argument("--cap", type=int, help="iteration cap per expansion")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget", type=int, help="coefficient bound for searches and samples")
    common.add_argument("--config", help="key=value file with sweep settings")
    common.add_argument("--conjecture", action="store_true", help="annotate conclusions that rely on the {1,2}-period conjecture")

    p = argparse.ArgumentParser(prog="betacf", description="Exact beta-continued fractions over real quadratic fields.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("expand", parents=[common], help="expand --x in base --beta")
    s.add_argument("--style", choices=("surd", "beta"), default="surd", help="print quotients as surds or polynomials in b")
    s.set_defaults(func=cmd_expand)
    s = sub.add_parser("eval", parents=[common], help="evaluate a word such as '[1; 1, b, (2, 3)]'")
    s.add_argument("word")
    s.set_defaults(func=cmd_eval)
    s = sub.add_parser("classify", parents=[common], help="classify a base")
    s.add_argument("poly", nargs="?")
    s.set_defaults(func=cmd_classify)
    s = sub.add_parser("beta-integers", parents=[common], help="list beta-integers in [lo, hi]")
    s.add_argument("lo")
    s.add_argument("hi")
    s.set_defaults(func=cmd_beta_integers)
    s = sub.add_parser("height", parents=[common], help="squared Weil height")
    s.add_argument("value", nargs="?")
    s.set_defaults(func=cmd_height)
    s = sub.add_parser("search-periodic", parents=[common], help="find an element with a periodic expansion")
    s.set_defaults(func=cmd_search_periodic)
    s = sub.add_parser("cff-sample", parents=[common], help="count finite/periodic/capped outcomes on random elements")
    s.add_argument("--samples", type=int)
    s.set_defaults(func=cmd_cff_sample)
    s = sub.add_parser("verify-paper", parents=[common], help="check every published example")
    s.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"betacf: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
