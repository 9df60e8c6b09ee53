"""Command-line interface: ``meanlog <subcommand> ...``.

Exit status: 0 on success (for ``verify``: every check passed), 1 when a
verification check fails, 2 for usage and domain errors, 3 for I/O errors.

Settings for ``verify`` resolve as flags > environment variables
(MEANLOG_LIMIT, MEANLOG_PRECISION) > config file > defaults.  The config file
holds ``key = value`` lines with keys ``limit``, ``precision``, ``format`` and
``out``; ``#`` starts a comment.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any

from . import logseries, means, primes, pythseries, special
from .golden import load_table
from .report import dumps, to_csv
from .suite import DEFAULT_LIMIT, DEFAULT_PRECISION, SuiteConfig, run_verify_all

CLI_MAX_LIMIT = 10 ** 8
CONFIG_KEYS = ("limit", "precision", "format", "out")
ENV_VARS = {"limit": "MEANLOG_LIMIT", "precision": "MEANLOG_PRECISION"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def parse_config(text: str, path: str = "<config>") -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r} (known: {', '.join(CONFIG_KEYS)})")
        out[key] = value
    return out


def _convert(key: str, value: Any, origin: str) -> Any:
    try:
        if key == "limit":
            v = int(float(value)) if isinstance(value, str) and "e" in value.lower() else int(value)
            if not 2 <= v <= CLI_MAX_LIMIT:
                raise ValueError(f"must be in [2, {CLI_MAX_LIMIT}]")
            return v
        if key == "precision":
            v = float(value)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError("must be a positive number")
            return v
        if key == "format":
            if value not in ("json", "csv"):
                raise ValueError("must be json or csv")
            return value
        return value
    except ValueError as exc:
        raise UsageError(f"{origin}: invalid {key} {value!r}: {exc}") from None


def resolve_settings(args: argparse.Namespace, environ=os.environ) -> dict[str, Any]:
    settings: dict[str, Any] = {"limit": DEFAULT_LIMIT, "precision": DEFAULT_PRECISION,
                                "format": "json", "out": None}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config}: {exc.strerror}") from None
        for k, v in parse_config(text, args.config).items():
            settings[k] = _convert(k, v, args.config)
    for k, var in ENV_VARS.items():
        if environ.get(var):
            settings[k] = _convert(k, environ[var], var)
    for k in CONFIG_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            settings[k] = _convert(k, v, f"--{k}")
    return settings


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(args, value: Any, formula: str, tail_bound: float | None = None,
          terms_used: int | None = None, **extra) -> None:
    if args.json:
        payload = {"value": value, "formula": formula, **extra}
        if tail_bound is not None:
            payload.update(tail_bound=tail_bound, terms_used=terms_used)
        print(json.dumps(payload, sort_keys=True))
        return
    print(f"value: {value!r}" if isinstance(value, float) else f"value: {value}")
    if tail_bound is not None:
        print(f"tail_bound: {tail_bound!r}")
        print(f"terms_used: {terms_used}")
    for k, v in extra.items():
        print(f"{k}: {v}")
    print(f"formula: {formula}")


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    s = resolve_settings(args)
    reports = run_verify_all(SuiteConfig(limit=s["limit"], precision=s["precision"]))
    _write(dumps(reports) if s["format"] == "json" else to_csv(reports), s["out"])
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check_name}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_means(args) -> int:
    m = args.m
    if args.zero:
        if float(m).is_integer() and m != 0:
            v = means.mean_at_zero(int(m))
            formula = "M_m(0): Bernoulli root for m >= 2, zeta root for m <= -2"
        else:
            v = means.mean_at_zero_unified(m)
            formula = "M_m(0) = (-m zeta(1-m))**(1/m), principal branch"
        _emit(args, [v.real_part, v.imag_part] if args.json else complex(v),
              formula, is_real=v.is_real)
    elif args.fit:
        f = means.asymptotic_fit(m)
        _emit(args, f.leading_coeff, "least-squares fit of M_m(x) on x = 2**10..2**20",
              leading_exponent=f.leading_exponent, next_coeff=f.next_coeff,
              next_exponent=f.next_exponent, residual=f.residual,
              expected_leading_coeff=means.expected_leading_coeff(m))
    elif args.interval:
        _emit(args, means.interval_mean(m), "power mean of the identity on [0, 1]: (m+1)**(-1/m)")
    else:
        if args.x is None:
            raise UsageError("means: give --x, or one of --zero, --fit, --interval")
        _emit(args, means.power_mean(args.x, m), "power mean ((1/x) sum_{k<=x} k**m)**(1/m) of 1..x")
    return 0


def cmd_zeta(args) -> int:
    _emit(args, special.zeta(args.s), "Riemann zeta: Euler-Maclaurin, reflection for s <= -1/2")
    return 0


def _table_for(limit: int) -> primes.PrimeTable:
    if not 2 <= limit <= CLI_MAX_LIMIT:
        raise UsageError(f"limit must be in [2, {CLI_MAX_LIMIT}], got {limit}")
    return primes.sieve(limit)


def cmd_primes(args) -> int:
    if args.primes_cmd == "verify":
        report = primes.verify_chebyshev_harmonic(_table_for(args.limit), args.limit)
        print(dumps([report]), end="")
        return 0 if report.passed else 1
    if args.x < 2:
        raise UsageError(f"--x must be >= 2, got {args.x}")
    table = _table_for(args.x)
    _emit(args, primes.hm_ratio(table, args.x), "pi(x) H_x / x", pi=primes.pi(table, args.x))
    return 0


def cmd_logseries(args) -> int:
    if args.log_cmd == "golden":
        reports = logseries.golden_verify(slack=args.precision)
        print(dumps(reports), end="")
        return 0 if all(r.passed for r in reports) else 1
    if args.variant == 1:
        s = logseries.power_log_v1(args.m, args.p)
        formula = "sum_n sum_k ((mn-k)**-p - (mn)**-p)"
    else:
        s = logseries.power_log_v2(args.m, args.p)
        formula = "sum_n sum_k (1/(mn-k) - 1/(mn))**p"
    if args.p == 1:
        formula = "log m as sum_n sum_k (1/(mn-k) - 1/(mn))"
    _emit(args, s.value, formula, s.tail_bound, s.terms_used)
    return 0


def cmd_golden(args) -> int:
    table = load_table()
    rows = [{"key": e.key_text, "expression": e.expression, "value": e.evaluate(),
             "source": e.source} for e in table.entries]
    if args.json:
        print(json.dumps({"provenance": table.provenance, "entries": rows}, indent=2, sort_keys=True))
    else:
        for r in rows:
            print(f"{r['key']:<24} {r['value']!r:>24}  {r['expression']}")
    return 0


def cmd_pythseries(args) -> int:
    if args.pyth_cmd == "h":
        s = pythseries.dobinski_h(args.x)
        formula = "h(x) = sum_{k>=1} k**x / k!"
    else:
        s = pythseries.arith_factorial(args.x)
        formula = "sum_{k>=0} (x+k)/k! = e (x+1)"
    _emit(args, s.value, formula, s.tail_bound, s.terms_used)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="meanlog", description="Power means, log series and their checks.")
    sub = p.add_subparsers(dest="command", required=True)

    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="print a JSON object instead of text")

    v = sub.add_parser("verify", help="run the full verification suite")
    v.add_argument("--limit", help=f"sieve limit for prime checks (default {DEFAULT_LIMIT})")
    v.add_argument("--precision", help=f"slack added to series tail bounds (default {DEFAULT_PRECISION})")
    v.add_argument("--format", choices=("json", "csv"))
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--config", help="key=value config file")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("means", parents=[json_flag], help="power means of 1..x")
    m.add_argument("--m", type=float, required=True)
    m.add_argument("--x", type=int)
    mode = m.add_mutually_exclusive_group()
    mode.add_argument("--zero", action="store_true", help="value extended to x = 0")
    mode.add_argument("--fit", action="store_true", help="large-x asymptotic fit")
    mode.add_argument("--interval", action="store_true", help="mean of the identity on [0, 1]")
    m.set_defaults(func=cmd_means)

    z = sub.add_parser("zeta", parents=[json_flag], help="Riemann zeta at real s")
    z.add_argument("--s", type=float, required=True)
    z.set_defaults(func=cmd_zeta)

    pr = sub.add_parser("primes", help="prime counting and the harmonic-mean bound")
    psub = pr.add_subparsers(dest="primes_cmd", required=True)
    pv = psub.add_parser("verify", help="check 1/6 < pi(x) H_x / x < 20/3 on [2, limit]")
    pv.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    prr = psub.add_parser("ratio", parents=[json_flag], help="pi(x) H_x / x")
    prr.add_argument("--x", type=int, required=True)
    pr.set_defaults(func=cmd_primes)

    ls = sub.add_parser("logseries", help="double series for log m and its power forms")
    lsub = ls.add_subparsers(dest="log_cmd", required=True)
    le = lsub.add_parser("eval", parents=[json_flag])
    le.add_argument("--m", type=int, required=True)
    le.add_argument("--p", type=float, default=1.0)
    le.add_argument("--variant", type=int, choices=(1, 2), default=2)
    lg = lsub.add_parser("golden", help="verify every golden closed form")
    lg.add_argument("--precision", type=float, default=DEFAULT_PRECISION)
    ls.set_defaults(func=cmd_logseries)

    g = sub.add_parser("golden", parents=[json_flag], help="list the golden table")
    g.set_defaults(func=cmd_golden)

    py = sub.add_parser("pythseries", help="factorial-damped series")
    pysub = py.add_subparsers(dest="pyth_cmd", required=True)
    for name in ("h", "arith"):
        sp = pysub.add_parser(name, parents=[json_flag])
        sp.add_argument("--x", type=float, required=True)
    py.set_defaults(func=cmd_pythseries)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"meanlog: error: {exc}\n")
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"meanlog: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"meanlog: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
