"""Command-line front end: run one experiment, emit JSON or CSV, exit 0/1/2.

Exit contract: 0 on success, 1 when a checked claim fails (sign mismatch,
no stable all-pass threshold, cross-check failure, root classification
trouble), 2 on usage errors.  That makes each subcommand usable directly as
a CI assertion.

Output is deterministic: no timestamps, keys sorted, integers as decimal
strings (they outgrow doubles fast), floats in shortest round-trip form,
CSV with comma delimiter and LF endings.  Every payload carries
"schema": "hyperzero/1" and an echo of the invoking configuration.

The environment variable HYPERZERO_SEED is reserved and currently unused;
nothing here is randomized.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import curve, exactpoly, family, qspec, verify

SCHEMA = "hyperzero/1"


@dataclass
class RunConfig:
    """Everything one invocation needs; unset fields stay None."""

    command: str
    n: Optional[int] = None
    r: Optional[int] = None
    m: Optional[int] = None
    m_max: Optional[int] = None
    bins: Optional[int] = None
    samples: Optional[int] = None
    theta: Optional[float] = None
    h: Optional[int] = None
    width: Optional[str] = None
    tol: Optional[float] = None
    out_path: Optional[str] = None
    format: str = "json"
    jobs: int = 1

    def echo(self) -> dict:
        keys = (
            "command n r m m_max bins samples theta h width tol format jobs".split()
        )
        return {k: getattr(self, k) for k in keys if getattr(self, k) is not None}


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {out_path}: {exc}") from exc


def _json_payload(config: RunConfig, body: dict) -> str:
    payload = {"schema": SCHEMA, "config": config.echo()}
    payload.update(body)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(config: RunConfig, header: Sequence[str], rows) -> str:
    meta = " ".join(f"{k}={v}" for k, v in sorted(config.echo().items()))
    lines = [f"# {SCHEMA} {meta}", ",".join(header)]
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def _params(config: RunConfig) -> family.FamilyParams:
    if config.n is None or config.r is None:
        raise ValueError("--n and --r are required")
    return family.FamilyParams(config.n, config.r)


def _curve_rows(params: family.FamilyParams, samples: int):
    if samples < 2:
        raise ValueError("--samples must be >= 2")
    top = math.pi / params.r
    rows = []
    for j in range(1, samples + 1):
        s = curve.z_of_theta(params, j * top / (samples + 1))
        rows.append(
            (
                repr(s.theta),
                repr(s.phi),
                repr(s.z),
                repr(s.a_val),
                repr(s.b_val),
                repr(s.t0_ratio),
            )
        )
    return rows


def emit_figure_data(
    params: family.FamilyParams, samples: int, out_path: Optional[str]
) -> None:
    """CSV sweep of the curve, the data behind the z(theta) figures."""
    config = RunConfig(
        command="curve", n=params.n, r=params.r, samples=samples, format="csv"
    )
    header = ("theta", "phi", "z", "A", "B", "t0_ratio")
    _emit(_csv_text(config, header, _curve_rows(params, samples)), out_path)


def _cmd_gen(config: RunConfig) -> int:
    params = _params(config)
    if config.m_max is None:
        raise ValueError("--m-max is required")
    polys = family.generate(params, config.m_max)
    if config.format == "csv":
        rows = [
            (m, k, str(c))
            for m, p in enumerate(polys)
            for k, c in enumerate(p.coeffs)
        ]
        _emit(_csv_text(config, ("m", "k", "coeff"), rows), config.out_path)
    else:
        body = {"polys": [[str(c) for c in p.coeffs] for p in polys]}
        _emit(_json_payload(config, body), config.out_path)
    return 0


def _cmd_roots(config: RunConfig) -> int:
    params = _params(config)
    if config.m is None:
        raise ValueError("--m is required")
    width = Fraction(config.width) if config.width else Fraction(1, 10**9)
    p = family.generate(params, config.m)[config.m]
    body: dict = {"m": config.m, "degree": max(0, int(p.degree))}
    if p.degree <= 0:
        body["roots"] = []
    else:
        iv = curve.interval_I(params)
        chain = exactpoly.SturmChain(p)
        bound = exactpoly.cauchy_root_bound(p) + 1
        hi = iv.hi if iv.hi is not None and iv.hi < bound else bound
        brackets = chain.isolate(iv.lo, hi, width)
        body["roots"] = [
            {
                "lo": str(b.lo),
                "hi": str(b.hi),
                "exact": None if b.exact is None else str(b.exact),
                "mid": float(b.midpoint),
            }
            for b in brackets
        ]
    _emit(_json_payload(config, body), config.out_path)
    return 0


def _cmd_curve(config: RunConfig) -> int:
    params = _params(config)
    if config.samples is None:
        raise ValueError("--samples is required")
    rows = _curve_rows(params, config.samples)
    if config.format == "json":
        cols = ("theta", "phi", "z", "A", "B", "t0_ratio")
        body = {
            "rows": [
                {k: float(v) for k, v in zip(cols, row)} for row in rows
            ]
        }
        _emit(_json_payload(config, body), config.out_path)
    else:
        header = ("theta", "phi", "z", "A", "B", "t0_ratio")
        _emit(_csv_text(config, header, rows), config.out_path)
    return 0


def _cmd_qroots(config: RunConfig) -> int:
    params = _params(config)
    if config.theta is None:
        raise ValueError("--theta is required")
    spectrum = qspec.solve_q(params, config.theta, tol=config.tol or 1e-8)
    body = {
        "theta": spectrum.theta,
        "roots": [[z.real, z.imag] for z in spectrum.roots],
        "on_circle_indices": list(spectrum.on_circle_indices),
        "double_root_pair": (
            None
            if spectrum.double_root_pair is None
            else list(spectrum.double_root_pair)
        ),
        "margin": spectrum.margin,
    }
    _emit(_json_payload(config, body), config.out_path)
    return 0


def _cmd_signs(config: RunConfig) -> int:
    params = _params(config)
    if config.m is None:
        raise ValueError("--m is required")
    pattern = verify.check_sign_pattern(params, config.m)
    body = {
        "m": pattern.m,
        "signs": list(pattern.signs),
        "terminal_sign": pattern.terminal_sign,
        "matches_prediction": pattern.matches_prediction,
    }
    _emit(_json_payload(config, body), config.out_path)
    return 0 if pattern.matches_prediction else 1


def _cmd_verify(config: RunConfig) -> int:
    params = _params(config)
    if config.m_max is None:
        raise ValueError("--m-max is required")
    report = verify.check_hyperbolicity(params, config.m_max, jobs=config.jobs)
    body = {
        "params": {"n": params.n, "r": params.r},
        "m_range": list(report.m_range),
        "per_m": [
            {
                "m": row.m,
                "degree": row.degree,
                "real_roots_in_I": row.real_roots_in_I,
                "total_real_roots": row.total_real_roots,
                "hyperbolic": row.hyperbolic,
                "containment": row.containment,
            }
            for row in report.per_m
        ],
        "first_all_pass_m": report.first_all_pass_m,
        "notes": list(report.notes),
    }
    _emit(_json_payload(config, body), config.out_path)
    return 0 if report.first_all_pass_m is not None else 1


def _cmd_density(config: RunConfig) -> int:
    params = _params(config)
    if config.m_max is None or config.bins is None:
        raise ValueError("--m-max and --bins are required")
    report = verify.density_scan(params, config.m_max, config.bins)
    body = {
        "bins": report.bins,
        "m_max": report.m_max,
        "covered": report.covered,
        "coverage_fraction": report.coverage_fraction,
    }
    _emit(_json_payload(config, body), config.out_path)
    return 0


def _cmd_crosscheck(config: RunConfig) -> int:
    params = _params(config)
    if config.m is None:
        raise ValueError("--m is required")
    result = verify.cross_check_roots(params, config.m, tol=config.tol or 1e-6)
    body = {
        "m": config.m,
        "passed": result.passed,
        "max_residual": result.max_residual,
        "n_roots": result.n_roots,
    }
    _emit(_json_payload(config, body), config.out_path)
    return 0 if result.passed else 1


def _cmd_expsum(config: RunConfig) -> int:
    if config.n is None or config.h is None:
        raise ValueError("--n and --h are required")
    sign = verify.expsum_sign(config.n, config.h)
    _emit(
        _json_payload(config, {"n": config.n, "h": config.h, "sign": sign})
        if config.out_path
        else ("+1" if sign > 0 else "-1"),
        config.out_path,
    )
    return 0 if sign == (-1) ** config.h else 1


_COMMANDS = {
    "gen": _cmd_gen,
    "roots": _cmd_roots,
    "curve": _cmd_curve,
    "qroots": _cmd_qroots,
    "signs": _cmd_signs,
    "verify": _cmd_verify,
    "density": _cmd_density,
    "crosscheck": _cmd_crosscheck,
    "expsum": _cmd_expsum,
}


def run(config: RunConfig) -> int:
    """Execute one configuration; returns the process exit code."""
    if config.command not in _COMMANDS:
        raise ValueError(f"unknown command {config.command!r}")
    return _COMMANDS[config.command](config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperzero",
        description=(
            "Generate, locate, and verify the real zeros of polynomial "
            "families with rational generating functions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        if "nr" in flags:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--r", type=int, required=True)
        if "m" in flags:
            p.add_argument("--m", type=int, required=True)
        if "m_max" in flags:
            p.add_argument("--m-max", dest="m_max", type=int, required=True)
        p.add_argument("--out", dest="out_path", default=None)
        return p

    p = add("gen", "exact coefficients of P_0..P_m_max", "nr", "m_max")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("roots", "isolate the real zeros of P_m inside the interval", "nr", "m")
    p.add_argument("--width", default=None, help="bracket width as a rational, e.g. 1/1000000")

    p = add("curve", "sample theta, z(theta) and companions", "nr")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    p = add("qroots", "roots of the characteristic polynomial at one theta", "nr")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--tol", type=float, default=None)

    add("signs", "alternating sign pattern of R_m on its probe grid", "nr", "m")

    p = add("verify", "Sturm-certified zero location for all m <= m_max", "nr", "m_max")
    p.add_argument("--jobs", type=int, default=1)

    p = add("density", "bin coverage of oscillation zeros", "nr", "m_max")
    p.add_argument("--bins", type=int, required=True)

    p = add("crosscheck", "match oscillation zeros to certified zeros", "nr", "m")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("expsum", help="sign of the root-of-unity exponential sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--out", dest="out_path", default=None)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fields = (
        "n r m m_max bins samples theta h width tol out_path format jobs".split()
    )
    kwargs = {k: getattr(args, k) for k in fields if hasattr(args, k)}
    config = RunConfig(command=args.command, **kwargs)
    try:
        return run(config)
    except ArithmeticError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
