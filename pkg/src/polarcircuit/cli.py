"""Command-line front door.

Subcommands:

    evolve   integrate the Lindblad system; CSV trajectory + half-disk SVG
    gate     apply one polariser interaction; JSON summary
    circuit  geodesic-following gate placement; CSV + JSON events + SVG
    sweep    gate count vs accuracy; CSV rows + JSON fit + log-log SVG
    verify   run the cross-module oracle suites; text report

Parameters come from an INI-style config file (section named after the
subcommand) overridden by command-line flags.  Exit codes: 0 success,
1 usage error, 2 numeric or validation failure.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import CircuitConfig, DEFAULT_EPS_GRID, run_circuit, sweep_accuracy
from .dynamics import GklsParams, constant_phi_drive, integrate
from .geometry import geodesic_between
from .polariser import PolariserGate, diattenuation, interact
from .states import make_state, to_stokes
from .verify import format_report, run_all

__all__ = ["main"]

USAGE_EXIT = 1
FAILURE_EXIT = 2


class UsageError(Exception):
    """Malformed command-line input (exit code 1, like an argparse error)."""

# Table of preset reference/target configurations (phi_R, r_R, phi_T, r_T)
EXAMPLES = {
    "a": (0.0, 1.0, math.pi / 6, 0.5),
    "b": (math.pi / 3, 1.0, math.pi / 2, 0.5),
    "c": (math.pi / 4, 1.0, math.pi / 12, 0.5),
    "d": (11 * math.pi / 12, 1.0, 3 * math.pi / 4, 0.5),
}

SWEEP_DT = 5e-5  # fine enough to resolve one gate per accuracy interval


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _provenance(command: str, params: dict) -> str:
    items = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    return f"polarcircuit {command} {items}"


def _write_csv(path: Path, header: list[str], rows, provenance: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {provenance}\n")
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
                fh.write("\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def _write_json(path: Path, payload: dict):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def _state_dict(s) -> dict:
    v = to_stokes(s)
    return {"r": s.r, "phi": s.phi, "xi1": v.xi1, "xi3": v.xi3}


def _merge_config(args: argparse.Namespace, command: str):
    """Fill unset flags from the [command] section of the config file."""
    if not getattr(args, "config", None):
        return
    path = Path(args.config)
    if not path.exists():
        raise RuntimeError(f"cannot read {path}: no such file")
    cfg = configparser.ConfigParser()
    cfg.read(path, encoding="utf-8")
    if command not in cfg:
        return
    for key, raw in cfg[command].items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, raw)


def _getf(args, name: str, default: float) -> float:
    val = getattr(args, name, None)
    if val is None:
        return default
    try:
        return float(val)
    except ValueError as exc:
        raise RuntimeError(f"invalid value for --{name.replace('_','-')}: {val}") from exc


def _endpoints(args):
    if getattr(args, "example", None) is not None:
        key = str(args.example)
        if key not in EXAMPLES:
            raise RuntimeError(f"unknown example {key!r}; choose from a, b, c, d")
        phi_r, r_r, phi_t, r_t = EXAMPLES[key]
    else:
        phi_r = _getf(args, "ref_phi", 0.0)
        r_r = _getf(args, "ref_r", 1.0)
        phi_t = _getf(args, "target_phi", math.pi / 6)
        r_t = _getf(args, "target_r", 0.5)
    return make_state(r_r, phi_r), make_state(r_t, phi_t)


def _out_dir(args) -> Path:
    out = Path(getattr(args, "out", None) or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _traj_csv_rows(traj):
    for t, r, phi in zip(traj.t, traj.r, traj.phi):
        yield (
            float(t),
            float(r),
            float(phi),
            float(r * math.sin(2 * phi)),
            float(r * math.cos(2 * phi)),
        )


def cmd_evolve(args) -> int:
    from .plotting import save_trajectory_figure

    r0 = _getf(args, "r0", 1.0)
    phi0 = _getf(args, "phi0", math.pi / 2)
    alpha = _getf(args, "alpha", 0.0)
    beta = _getf(args, "beta", 2.0)
    t1 = _getf(args, "t1", 1.0)
    dt = _getf(args, "dt", 1e-3)
    if getattr(args, "constant_phi", False):
        params = GklsParams(alpha, beta, alpha * math.sin(4 * phi0))
        energy_label = "alpha*sin(4*phi0)"
    else:
        energy = _getf(args, "energy", -2.0)
        params = GklsParams(alpha, beta, energy)
        energy_label = _fmt(energy)
    state0 = make_state(r0, phi0)
    traj = integrate(state0, params, 0.0, t1, dt)
    meta = {
        "r0": _fmt(r0),
        "phi0": _fmt(phi0),
        "alpha": _fmt(alpha),
        "beta": _fmt(beta),
        "energy": energy_label,
        "t1": _fmt(t1),
        "dt": _fmt(dt),
    }
    prov = _provenance("evolve", meta)
    out = _out_dir(args)
    _write_csv(out / "evolve.csv", ["t", "r", "phi", "xi1", "xi3"], _traj_csv_rows(traj), prov)
    save_trajectory_figure(str(out / "evolve.svg"), traj, description=prov)
    print(f"wrote {out/'evolve.csv'} and {out/'evolve.svg'} ({len(traj)} samples)")
    return 0


def cmd_gate(args) -> int:
    gamma = _getf(args, "gamma", 0.0)
    lam_par = _getf(args, "lambda_par", math.pi / 2)
    lam_perp = _getf(args, "lambda_perp", 0.0)
    anc_s = _getf(args, "ancilla_s", 0.0)
    anc_theta = _getf(args, "ancilla_theta", 0.0)
    r0 = _getf(args, "r0", 1.0)
    phi0 = _getf(args, "phi0", 0.0)
    gate = PolariserGate(gamma, lam_par, lam_perp, make_state(anc_s, anc_theta))
    light = make_state(r0, phi0)
    outcome = interact(gate, light)
    d, extinction = diattenuation(outcome.light_after.r)
    payload = {
        "params": {
            "gamma": gate.gamma,
            "lambda_par": lam_par,
            "lambda_perp": lam_perp,
            "ancilla": _state_dict(gate.ancilla),
            "light": _state_dict(light),
        },
        "light_after": _state_dict(outcome.light_after),
        "polariser_after": _state_dict(outcome.polariser_after),
        "p_parallel": outcome.p_parallel,
        "p_perp": outcome.p_perp,
        "diattenuation": d,
        "extinction_ratio": extinction if math.isfinite(extinction) else "inf",
    }
    out = _out_dir(args)
    _write_json(out / "gate.json", payload)
    print(f"wrote {out/'gate.json'}")
    return 0


def _circuit_config(args) -> tuple[CircuitConfig, dict]:
    ref, target = _endpoints(args)
    alpha = _getf(args, "alpha", 0.0)
    beta = _getf(args, "beta", 2.0)
    energy = _getf(args, "energy", -2.0)
    epsilon = _getf(args, "epsilon", 0.05)
    dt = _getf(args, "dt", SWEEP_DT)
    cfg = CircuitConfig(ref, target, GklsParams(alpha, beta, energy), epsilon, dt)
    meta = {
        "ref_r": _fmt(ref.r),
        "ref_phi": _fmt(ref.phi),
        "target_r": _fmt(target.r),
        "target_phi": _fmt(target.phi),
        "alpha": _fmt(alpha),
        "beta": _fmt(beta),
        "energy": _fmt(energy),
        "epsilon": _fmt(epsilon),
        "dt": _fmt(dt),
    }
    return cfg, meta


def cmd_circuit(args) -> int:
    from .plotting import save_trajectory_figure

    cfg, meta = _circuit_config(args)
    result = run_circuit(cfg)
    prov = _provenance("circuit", meta)
    out = _out_dir(args)
    _write_csv(
        out / "circuit.csv", ["t", "r", "phi", "xi1", "xi3"], _traj_csv_rows(result.trajectory), prov
    )
    _write_json(
        out / "circuit.json",
        {
            "params": meta,
            "gate_count": result.gate_count,
            "final_state": _state_dict(result.final_state),
            "final_target_distance": result.final_target_distance,
            "events": [dataclasses.asdict(e) for e in result.gate_events],
        },
    )
    seg = geodesic_between(cfg.ref_state, cfg.target_state)
    save_trajectory_figure(
        str(out / "circuit.svg"),
        result.trajectory,
        geodesic=seg,
        events=result.gate_events,
        title=f"$\\epsilon$={cfg.epsilon:g}, $N_g$={result.gate_count}",
        description=prov,
    )
    print(
        f"wrote {out/'circuit.csv'}, {out/'circuit.json'}, {out/'circuit.svg'} "
        f"(N_g={result.gate_count})"
    )
    return 0


def _parse_eps_grid(spec: str):
    try:
        lo, hi, count = spec.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise UsageError(f"invalid --eps-grid {spec!r}; expected lo:hi:count") from exc
    if count < 1 or lo <= 0.0 or hi <= lo:
        raise UsageError(f"invalid --eps-grid {spec!r}")
    return np.logspace(math.log10(lo), math.log10(hi), count)


def cmd_sweep(args) -> int:
    from .plotting import save_sweep_figure

    cfg, meta = _circuit_config(args)
    grid_spec = getattr(args, "eps_grid", None)
    grid = _parse_eps_grid(grid_spec) if grid_spec else DEFAULT_EPS_GRID
    meta = dict(meta)
    meta.pop("epsilon", None)
    meta["eps_grid"] = grid_spec or "5e-4:5e-2:24"
    result = sweep_accuracy(cfg, grid)
    prov = _provenance("sweep", meta)
    if result.fit is not None:
        m, n = result.fit
        prov += f" fit_m={_fmt(m)} fit_n={_fmt(n)}"
    out = _out_dir(args)
    _write_csv(
        out / "sweep.csv",
        ["epsilon", "gate_count"],
        [(float(e), n) for e, n in result.rows],
        prov,
    )
    _write_json(
        out / "sweep.json",
        {
            "params": meta,
            "rows": [{"epsilon": e, "gate_count": n} for e, n in result.rows],
            "fit": None if result.fit is None else {"m": result.fit[0], "n": result.fit[1]},
        },
    )
    save_sweep_figure(str(out / "sweep.svg"), result.rows, result.fit, description=prov)
    fit_msg = "fit undefined" if result.fit is None else f"m={result.fit[0]:.4f} n={result.fit[1]:.4f}"
    print(f"wrote {out/'sweep.csv'}, {out/'sweep.json'}, {out/'sweep.svg'} ({fit_msg})")
    return 0


def cmd_verify(args) -> int:
    seed = int(_getf(args, "seed", 0))
    results = run_all(seed)
    report = format_report(results, seed)
    out = _out_dir(args)
    try:
        (out / "verify.txt").write_text(report, encoding="utf-8")
    except OSError as exc:
        raise RuntimeError(f"cannot write {out/'verify.txt'}: {exc}") from exc
    sys.stdout.write(report)
    return 0 if all(r.passed for r in results) else FAILURE_EXIT


def build_parser() -> _Parser:
    parser = _Parser(prog="polarcircuit", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="INI config file; flags override it")
        p.add_argument("--out", help="output directory (default ./out)")
        p.add_argument("--seed", help="seed for randomized suites")

    p = sub.add_parser("evolve", help="integrate the Lindblad system")
    common(p)
    for flag in ("--r0", "--phi0", "--alpha", "--beta", "--energy", "--t1", "--dt"):
        p.add_argument(flag)
    p.add_argument("--constant-phi", action="store_true", help="drive E = alpha sin 4phi0")

    p = sub.add_parser("gate", help="apply one polariser interaction")
    common(p)
    for flag in (
        "--gamma",
        "--lambda-par",
        "--lambda-perp",
        "--ancilla-s",
        "--ancilla-theta",
        "--r0",
        "--phi0",
    ):
        p.add_argument(flag)

    for name in ("circuit", "sweep"):
        p = sub.add_parser(name, help=f"{name} run")
        common(p)
        p.add_argument("--example", choices=sorted(EXAMPLES), help="preset endpoints")
        for flag in (
            "--ref-r",
            "--ref-phi",
            "--target-r",
            "--target-phi",
            "--alpha",
            "--beta",
            "--energy",
            "--dt",
        ):
            p.add_argument(flag)
        if name == "circuit":
            p.add_argument("--epsilon")
        else:
            p.add_argument("--eps-grid", help="lo:hi:count, log spaced")

    p = sub.add_parser("verify", help="run the oracle suites")
    common(p)
    return parser


COMMANDS = {
    "evolve": cmd_evolve,
    "gate": cmd_gate,
    "circuit": cmd_circuit,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, args.command)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"polarcircuit {args.command}: error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (ValueError, RuntimeError, FloatingPointError) as exc:
        print(f"polarcircuit {args.command}: {exc}", file=sys.stderr)
        return FAILURE_EXIT


if __name__ == "__main__":
    sys.exit(main())
