"""Command-line front end: verification suites, figure data, kernels, expectations.

Subcommands
-----------
verify   run every module invariant suite; machine-readable report, exit 1 on failure
figure   wavefunction grids and grayscale rasters for a sweep of circle states
kernel   tabulate kernel values over all pairs of the given angles
expect   classical evaluation vs quantum expectation along an orbit
evolve   Koopman evolution vs the embedded Heisenberg evolution, coefficient by coefficient

Configuration precedence: flags > CIRCLEQ_* environment variables > --config
key-value file > built-in defaults (alpha=1, tau=0.5, family=heat, trunc=64,
maxdeg=40, extent=6, grid-n=257, seed=0).  Every output file embeds the fully
resolved configuration in a header comment; identical config and seed produce
byte-identical outputs.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import kernels as kn
from . import minkowski as mk
from . import quantum as qm
from . import spectral as sp
from .verify import RunConfig, run_all

ENV_PREFIX = "CIRCLEQ_"

_DEFAULTS = {
    "alpha": 1.0,
    "tau": 0.5,
    "family": "heat",
    "trunc": 64,
    "maxdeg": 40,
    "extent": 6.0,
    "grid_n": 257,
    "seed": 0,
    "out": ".",
}

_CASTS = {
    "alpha": float,
    "tau": float,
    "family": str,
    "trunc": int,
    "maxdeg": int,
    "extent": float,
    "grid_n": int,
    "seed": int,
    "out": str,
}

DEFAULT_THETAS = tuple(np.pi * k / 4.0 for k in range(5))  # 0 .. pi


class ConfigError(Exception):
    pass


def _read_config_file(path):
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = val
    return values


def resolve_config(args):
    """Layer defaults < config file < environment < explicit flags."""
    values = dict(_DEFAULTS)
    config_path = getattr(args, "config", None) or os.environ.get(ENV_PREFIX + "CONFIG")
    if config_path:
        values.update(_read_config_file(config_path))
    for key in _DEFAULTS:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            values[key] = env
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    try:
        cast = {k: _CASTS[k](v) for k, v in values.items()}
        return RunConfig(**cast)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def config_header(cfg, command):
    fields = (
        f"alpha={cfg.alpha!r} tau={cfg.tau!r} family={cfg.family} trunc={cfg.trunc} "
        f"maxdeg={cfg.maxdeg} extent={cfg.extent!r} grid_n={cfg.grid_n} seed={cfg.seed}"
    )
    return [f"# circleq {command}", f"# config: {fields}"]


def _fmt(x):
    return f"{x:.17e}"


def write_csv(path, header_lines, columns, rows):
    lines = list(header_lines)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_pgm(path, values, header_comment):
    """8-bit binary portable graymap, linearly scaled from 0 to the array max."""
    mag = np.abs(values)
    top = float(mag.max())
    scaled = np.zeros_like(mag, dtype=np.uint8) if top == 0.0 else np.round(
        255.0 * mag / top
    ).astype(np.uint8)
    h, w = scaled.shape
    comment = header_comment.replace("\n", " ")
    preamble = f"P5\n# {comment}\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(preamble + scaled.tobytes())


def _theta_list(args):
    if args.theta:
        return [float(t) for t in args.theta]
    return list(DEFAULT_THETAS)


def _time_list(args):
    if getattr(args, "time", None):
        return [float(t) for t in args.time]
    return [0.0]


def _parse_fcoeffs(spec_text, J):
    """Nonnegative-mode coefficients 'c0,c1,...'; negative modes conjugate-filled.

    Entries are Python complex literals, e.g. '0,0.5' for cos(theta) or
    '1,0.5+0.25j'.  The result is a real-valued observable on the band.
    """
    try:
        values = [complex(tok.strip().replace(" ", "")) for tok in spec_text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"malformed coefficient list {spec_text!r}: {exc}") from exc
    if not values or len(values) - 1 > J:
        raise ConfigError(f"coefficient list needs 1..{J + 1} entries, got {len(values)}")
    if values[0].imag != 0.0:
        raise ConfigError("zero-mode coefficient must be real (the observable is real-valued)")
    c = np.zeros(2 * J + 1, dtype=complex)
    c[J] = values[0]  # negatives conjugate-filled below, making f real-valued
    for m, z in enumerate(values[1:], start=1):
        c[J + m] = z
        c[J - m] = np.conj(z)
    return sp.FourierSeries(c)


def _outdir(cfg):
    out = Path(cfg.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".circleq-write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {out} is not writable: {exc}") from exc
    return out


def cmd_verify(cfg, args):
    results = run_all(cfg, inject_failure=args.inject_failure)
    out = _outdir(cfg)
    rows = []
    for r in results:
        print(f"{r.status:4s} {r.name:40s} max_err={r.max_error:.3e} thr={r.threshold:.3e}"
              + (f"  [{r.reason}]" if r.reason else "")
              + (f"  ({r.info})" if r.info else ""))
        rows.append(r.as_record())
    report = {
        "config": config_header(cfg, "verify")[1][len("# config: "):],
        "checks": rows,
        "failed": sum(1 for r in results if r.status == "FAIL"),
        "skipped": sum(1 for r in results if r.status == "SKIP"),
        "passed": sum(1 for r in results if r.status == "PASS"),
    }
    (out / "verify_report.json").write_text(json.dumps(report, indent=2) + "\n")
    lines = config_header(cfg, "verify") + ["name,status,max_error,threshold,reason,info"]
    for r in results:
        lines.append(
            f"{r.name},{r.status},{_fmt(r.max_error)},{_fmt(r.threshold)},"
            f"\"{r.reason}\",\"{r.info}\""
        )
    (out / "verify_report.csv").write_text("\n".join(lines) + "\n")
    print(f"passed={report['passed']} failed={report['failed']} skipped={report['skipped']}")
    return 1 if report["failed"] else 0


def cmd_figure(cfg, args):
    out = _outdir(cfg)
    family = kn.FRACTIONAL if args.which == "psi-frac" else kn.HEAT
    params = kn.KernelParams(family, cfg.tau)
    alpha = abs(cfg.alpha)
    maxdeg = max(cfg.maxdeg, mk.required_maxdeg(params))
    basis = mk.HermiteBasis(alpha, maxdeg)
    extent = cfg.extent / np.sqrt(alpha)
    header = config_header(cfg, f"figure {args.which}")
    for theta in _theta_list(args):
        grid = mk.synth_wavefunction(params, theta, basis, extent, cfg.grid_n)
        z = grid.axis()
        stem = f"{args.which}_tau{cfg.tau:.6g}_theta{theta:.10f}"
        rows = []
        for i0 in range(cfg.grid_n):
            for i1 in range(cfg.grid_n):
                v = grid.values[i0, i1]
                rows.append((float(z[i0]), float(z[i1]), float(v.real), float(v.imag), float(abs(v))))
        write_csv(out / f"{stem}.csv", header + [f"# theta={theta!r} maxdeg={maxdeg}"],
                  ["x0", "x1", "re", "im", "abs"], rows)
        write_pgm(out / f"{stem}.pgm", grid.values,
                  f"circleq figure {args.which} theta={theta!r} tau={cfg.tau!r}")
        print(f"wrote {stem}.csv and {stem}.pgm")
    return 0


def cmd_kernel(cfg, args):
    out = _outdir(cfg)
    params = cfg.params()
    thetas = _theta_list(args)
    rows = []
    for t1 in thetas:
        for t2 in thetas:
            rows.append((float(t1), float(t2), kn.kernel_value(params, t1, t2)))
    write_csv(out / "kernel.csv", config_header(cfg, "kernel"),
              ["theta", "theta_prime", "kappa"], rows)
    print(f"wrote kernel.csv ({len(rows)} rows)")
    return 0


def cmd_expect(cfg, args):
    out = _outdir(cfg)
    sys_ = cfg.system()
    J = cfg.trunc
    f = _parse_fcoeffs(args.fcoeffs, J)
    params = cfg.params()
    Tf = qm.mult_operator(f)
    rkhs = params.family == kn.FRACTIONAL
    rows = []
    for theta in _theta_list(args):
        for t in _time_list(args):
            moved = sys_.flow(theta, t)
            classical = float(np.real(sp.evaluate(f, moved)))
            rho = qm.psi_map(params, theta, J, "rkhs" if rkhs else "l2")
            rho_t = qm.conj_evolve(sys_, rho, t)
            quantum = (
                qm.expectation_rkhs(params, rho_t, Tf) if rkhs else qm.expectation(rho_t, Tf)
            )
            rows.append((float(theta), float(t), classical, quantum, abs(classical - quantum)))
    note = "rkhs pairing (left inverse)" if rkhs else "l2 pairing (defect reported, not inverted)"
    write_csv(out / "expect.csv", config_header(cfg, "expect") + [f"# pairing: {note}"],
              ["theta", "t", "classical", "expectation", "abs_diff"], rows)
    print(f"wrote expect.csv ({len(rows)} rows, {note})")
    return 0


def cmd_evolve(cfg, args):
    out = _outdir(cfg)
    sys_ = cfg.system()
    J = cfg.trunc
    f = _parse_fcoeffs(args.fcoeffs, J)
    maxdeg = max(cfg.maxdeg, J)
    rows = []
    for t in _time_list(args):
        direct = sp.koopman(sys_, f, t)
        round_trip = mk.adjoint(mk.evolve(mk.embed(f, maxdeg), t, cfg.alpha), J)
        for j in range(-J, J + 1):
            a = direct.coeff(j)
            b = round_trip.coeff(j)
            rows.append((float(t), j, a.real, a.imag, b.real, b.imag, abs(a - b)))
    write_csv(out / "evolve.csv", config_header(cfg, "evolve"),
              ["t", "j", "koopman_re", "koopman_im", "heisenberg_re", "heisenberg_im", "abs_diff"],
              rows)
    print(f"wrote evolve.csv ({len(rows)} rows)")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circleq",
        description="Koopman / quantum correspondence toolkit for the circle rotation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--alpha", type=float, help="rotation frequency (rad per unit time)")
        p.add_argument("--tau", type=float, help="kernel diffusion time")
        p.add_argument("--family", choices=[kn.HEAT, kn.FRACTIONAL], help="kernel family")
        p.add_argument("--trunc", type=int, help="Fourier truncation order J")
        p.add_argument("--maxdeg", type=int, help="highest Hermite degree")
        p.add_argument("--extent", type=float, help="grid half-width in oscillator units")
        p.add_argument("--grid-n", dest="grid_n", type=int, help="grid points per axis")
        p.add_argument("--theta", action="append", help="angle in radians (repeatable)")
        p.add_argument("--time", action="append", help="evolution time (repeatable)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="seed for randomized suites")
        p.add_argument("--config", help="key = value configuration file")

    p_verify = sub.add_parser("verify", help="run all invariant and property suites")
    add_common(p_verify)
    p_verify.add_argument("--inject-failure", action="store_true",
                          help=argparse.SUPPRESS)  # test hook for the failure exit path

    p_fig = sub.add_parser("figure", help="wavefunction grids and rasters over a theta sweep")
    add_common(p_fig)
    p_fig.add_argument("--which", choices=["psi", "psi-frac"], default="psi")

    p_kernel = sub.add_parser("kernel", help="tabulate kernel values")
    add_common(p_kernel)

    p_expect = sub.add_parser("expect", help="classical evaluation vs quantum expectation")
    add_common(p_expect)
    p_expect.add_argument("--fcoeffs", required=True,
                          help="comma-separated coefficients for modes j = 0..d")

    p_evolve = sub.add_parser("evolve", help="Koopman vs embedded Heisenberg evolution")
    add_common(p_evolve)
    p_evolve.add_argument("--fcoeffs", required=True,
                          help="comma-separated coefficients for modes j = 0..d")
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "figure": cmd_figure,
    "kernel": cmd_kernel,
    "expect": cmd_expect,
    "evolve": cmd_evolve,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
