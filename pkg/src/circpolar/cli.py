"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage/parse/I-O error,
3 degenerate input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .circlepoly import CirclePolynomial, check_on_grid, modulus
from .closedform import riesz_polarization_closed, riesz_polarization_direct
from .config import TWO_PI, Configuration, random_configuration
from .errors import CircPolarError, DegenerateConfiguration
from .kernels import KernelSpec, validate_kernel_contract
from .optimize import PROBLEMS, optimize
from .potential import eval_potential
from .transport import run_transport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _sidecar(out: Path, suffix: str) -> Path:
    return out.with_name(out.name + suffix)


def _kernel(text: str) -> KernelSpec:
    try:
        return KernelSpec.parse(text)
    except CircPolarError as exc:
        raise UsageError(str(exc)) from exc


def _load_config(path: str) -> Configuration:
    try:
        return Configuration.from_json(Path(path).read_text())
    except (OSError, json.JSONDecodeError, CircPolarError) as exc:
        raise UsageError(f"cannot read configuration {path}: {exc}") from exc


def cmd_verify_bernstein(args) -> tuple[int, str]:
    if args.n < 1 or args.samples < 1:
        raise UsageError("n and samples must be positive")
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.samples):
        omega = random_configuration(args.n, rng)
        res = check_on_grid(CirclePolynomial(omega), grid=args.grid)
        rows.append(res)
    worst_margin = min(r["worst_margin"] for r in rows)
    worst_res = max(r["worst_identity_residual"] for r in rows)
    ok = worst_margin >= -1e-9 and worst_res <= 1e-8
    payload = {
        "n": args.n,
        "samples": args.samples,
        "grid": args.grid,
        "seed": args.seed,
        "worst_margin": worst_margin,
        "worst_identity_residual": worst_res,
        "min_m": min(r["m"] for r in rows),
        "max_m": max(r["m"] for r in rows),
        "passed": ok,
    }
    return (EXIT_OK if ok else EXIT_FAIL), json.dumps(payload, indent=2) + "\n"


def cmd_table_mn(args) -> tuple[int, str]:
    if args.n_max < 1 or args.m_max < 1:
        raise UsageError("n-max and m-max must be positive")
    rows, worst = [], 0.0
    for n in range(1, args.n_max + 1):
        for m in range(1, args.m_max + 1):
            closed = riesz_polarization_closed(n, m)
            direct = riesz_polarization_direct(n, 2 * m)
            rel = abs(closed - direct) / abs(closed)
            worst = max(worst, rel)
            rows.append((n, m, closed, direct, rel))
    text = _csv_text(["n", "m", "closed_form", "direct_sum", "rel_error"], rows)
    return (EXIT_OK if worst <= 1e-10 else EXIT_FAIL), text


def cmd_optimize(args) -> tuple[int, str]:
    kernel = None if args.problem == "khrushchev" else _kernel(args.kernel)
    if args.n < 2:
        raise UsageError("n must be >= 2")
    rep = optimize(args.problem, args.n, kernel, restarts=args.restarts, seed=args.seed)
    tol = 1e-5 * max(1.0, abs(rep.predicted_value))
    ok = rep.error <= tol
    d = rep.to_dict()
    d["passed"] = ok
    if args.out is not None:
        t = np.arange(4096) * (TWO_PI / 4096)
        if kernel is None:
            v = modulus(CirclePolynomial(rep.best_config), t)
            col = "modulus"
        else:
            v = eval_potential(rep.best_config, kernel, t)
            col = "potential"
        _write(_sidecar(args.out, ".plot.csv"), _csv_text(["t", col], zip(t, v)))
    return (EXIT_OK if ok else EXIT_FAIL), json.dumps(d, indent=2) + "\n"


def cmd_transport(args) -> tuple[int, str]:
    source = _load_config(args.source)
    target = _load_config(args.target)
    if source.n != target.n:
        raise UsageError("source and target differ in size")
    rep = run_transport(source, target, _kernel(args.kernel), grid=args.grid)
    return (EXIT_OK if rep.passed else EXIT_FAIL), json.dumps(rep.to_dict(), indent=2) + "\n"


def cmd_kernel_validate(args) -> tuple[int, str]:
    k = _kernel(args.kernel)
    rep = validate_kernel_contract(k, args.grid)
    d = {"kernel": k.to_dict(), "grid": args.grid, **vars(rep)}
    return (EXIT_OK if rep.passed else EXIT_FAIL), json.dumps(d, indent=2) + "\n"


COMMANDS = {
    "verify-bernstein": cmd_verify_bernstein,
    "table-mn": cmd_table_mn,
    "optimize": cmd_optimize,
    "transport": cmd_transport,
    "kernel-validate": cmd_kernel_validate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circpolar", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, grid=None):
        sp.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if grid is not None:
            sp.add_argument("--grid", type=int, default=grid)

    sp = sub.add_parser("verify-bernstein", help="check the inverse Bernstein inequality on random zeros")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=100)
    common(sp, grid=1024)

    sp = sub.add_parser("table-mn", help="closed-form vs direct Riesz polarization constants (CSV)")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--m-max", type=int, required=True)
    common(sp, seed=False)

    sp = sub.add_parser("optimize", help="numerically solve an extremal problem")
    sp.add_argument("--problem", choices=PROBLEMS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kernel", default="riesz:2", help="log | riesz:S | logderiv:M | JSON")
    sp.add_argument("--restarts", type=int, default=32)
    common(sp)

    sp = sub.add_parser("transport", help="run the gap transport between two configuration files")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--kernel", default="riesz:2")
    common(sp, seed=False, grid=1000)

    sp = sub.add_parser("kernel-validate", help="check evenness, periodicity, monotonicity, convexity")
    sp.add_argument("--kernel", required=True)
    common(sp, seed=False, grid=10000)

    sp = sub.add_parser("replay", help="re-run a command from its manifest")
    sp.add_argument("manifest", type=Path)
    sp.add_argument("--out", type=Path, default=None)
    return p


def _params(args) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v)
            for k, v in vars(args).items() if k not in ("command", "out")}


def _argv_from_manifest(man: dict, out: Path | None) -> list[str]:
    argv = [man["subcommand"]]
    params = dict(man["parameters"])
    for pos in ("source", "target"):
        if pos in params:
            argv.append(str(params.pop(pos)))
    for k, v in params.items():
        argv += [f"--{k.replace('_', '-')}", str(v)]
    if out is not None:
        argv += ["--out", str(out)]
    return argv


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "replay":
        try:
            man = json.loads(args.manifest.read_text())
            new_argv = _argv_from_manifest(man, args.out or Path(man["output"]))
        except (OSError, KeyError, json.JSONDecodeError) as exc:
            print(f"error: bad manifest: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return run(new_argv)
    try:
        code, text = COMMANDS[args.command](args)
        _write(args.out, text)
        if args.out is not None:
            manifest = {
                "subcommand": args.command,
                "parameters": _params(args),
                "seed": getattr(args, "seed", None),
                "output": str(args.out),
                "version": __version__,
                "timestamp": datetime.now(timezone.utc).isoformat(),
            }
            _write(_sidecar(args.out, ".manifest.json"), json.dumps(manifest, indent=2) + "\n")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateConfiguration as exc:
        print(f"error: DegenerateConfiguration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except CircPolarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
