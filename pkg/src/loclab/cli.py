"""Command-line front end.

Subcommands: classify, portrait, profile, dirichlet, barriers, verify-hopf,
sweep.  Single-run commands print their JSON report to stdout and, when
--out is given, also write files there.  Exit codes: 0 success, 1 a
certificate or invariant failed, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import dirichlet as dirichlet_mod
from . import dynamics, geometry, hopf
from .errors import InvalidDegree, InvalidFamily, LoclabError
from .params import Stability, spectra, validate_params
from .serialize import dumps, to_jsonable

SWEEP_DEFAULT = [
    (3, 2, 2),
    (3, 2, 4),
    (3, 2, 6),
    (5, 4, 2),
    (5, 4, 4),
    (5, 4, 6),
    (7, 4, 2),
    (15, 8, 2),
]


@dataclass
class RunConfig:
    command: str
    n: int = 3
    p: int = 2
    k: int = 2
    t_max: float = 200.0
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    event_tol: float = 1e-12
    seed_epsilon: float = 1e-8
    phi_boundary: str | None = None
    output_dir: str | None = None
    format: str = "json"
    jobs: int = 1
    relaxed: bool = False
    no_timestamp: bool = False
    sweep_list: str | None = None
    extra: dict = field(default_factory=dict)


def _tolerances(cfg: RunConfig) -> dynamics.Tolerances:
    return dynamics.Tolerances(
        abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol, event_tol=cfg.event_tol
    )


def _stamp(report: dict, cfg: RunConfig) -> dict:
    if not cfg.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return report


def _emit_json(report: dict, cfg: RunConfig, name: str) -> None:
    text = dumps(_stamp(report, cfg))
    print(text)
    if cfg.output_dir:
        Path(cfg.output_dir).mkdir(parents=True, exist_ok=True)
        (Path(cfg.output_dir) / f"{name}.json").write_text(text + "\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _integrated(cfg: RunConfig):
    params = validate_params(cfg.n, cfg.p, cfg.k, relaxed=cfg.relaxed)
    seed = dynamics.seed_unstable(params, cfg.seed_epsilon)
    orbit = dynamics.integrate_orbit(params, seed, cfg.t_max, _tolerances(cfg))
    return params, orbit


def _cmd_classify(cfg: RunConfig) -> int:
    params = validate_params(cfg.n, cfg.p, cfg.k, relaxed=cfg.relaxed)
    report = {
        "params": to_jsonable(params),
        "family": str(params.family) if params.family else None,
        "spectra": to_jsonable(spectra(params)),
        "geometry": to_jsonable(geometry.geometry_report(params)),
        "cone_density": geometry.cone_density(params),
    }
    _emit_json(report, cfg, f"classify_n{cfg.n}p{cfg.p}k{cfg.k}")
    return 0


def _cmd_portrait(cfg: RunConfig) -> int:
    params, orbit = _integrated(cfg)
    out = Path(cfg.output_dir or ".")
    _write_csv(
        out / "orbit.csv",
        ["t", "phi", "psi"],
        zip(orbit.t, orbit.phi, orbit.psi),
    )
    sidecar = {
        "terminal": orbit.terminal.value,
        "events": [
            {"kind": e.kind.value, "t": e.t, "phi": e.point.phi, "psi": e.point.psi}
            for e in orbit.events
        ],
        "params": to_jsonable(params),
    }
    _emit_json(sidecar, cfg, "orbit_events")
    return 0


def _cmd_profile(cfg: RunConfig) -> int:
    params, orbit = _integrated(cfg)
    prof = dynamics.extract_profile(orbit, params)
    out = Path(cfg.output_dir or ".")
    _write_csv(
        out / "profile.csv",
        ["r", "rho", "rho_r", "residual"],
        zip(prof.r_samples, prof.rho, prof.rho_r, prof.residuals),
    )
    report = {
        "r_min": prof.r_min,
        "r_max": prof.r_max,
        "small_r_slope": prof.small_r_slope,
        "max_abs_residual": float(max(abs(v) for v in prof.residuals)),
        "params": to_jsonable(params),
    }
    _emit_json(report, cfg, "profile_summary")
    return 0


def _cmd_dirichlet(cfg: RunConfig) -> int:
    params, orbit = _integrated(cfg)
    if cfg.phi_boundary is None:
        print("dirichlet requires --phi-boundary (a number or 'at-phi0')",
              file=sys.stderr)
        return 2
    if cfg.phi_boundary == "at-phi0":
        pb = params.phi0
    else:
        pb = float(cfg.phi_boundary)
    report = dirichlet_mod.dirichlet_multiplicity(orbit, params, pb)
    _emit_json({"dirichlet": to_jsonable(report)}, cfg, "dirichlet")
    return 0


def _cmd_barriers(cfg: RunConfig) -> int:
    params = validate_params(cfg.n, cfg.p, cfg.k, relaxed=cfg.relaxed)
    if params.stability is Stability.TYPE_I:
        cert = dynamics.barrier_certificate_A3(params)
    else:
        cert = dynamics.barrier_certificate_A4(params)
    _emit_json({"certificate": to_jsonable(cert)}, cfg, "barriers")
    return 0 if cert.passed else 1


def _cmd_verify_hopf(cfg: RunConfig) -> int:
    params = validate_params(3, 2, 2)
    seed = dynamics.seed_unstable(params, cfg.seed_epsilon)
    orbit = dynamics.integrate_orbit(params, seed, cfg.t_max, _tolerances(cfg))
    prof = dynamics.extract_profile(orbit, params)
    report = hopf.hopf_verify_report(profile=prof, params=params)
    _emit_json(report, cfg, "hopf_verify")
    return 0 if report["pass"] else 1


def _sweep_row(args) -> dict:
    n, p, k, relaxed = args
    params = validate_params(n, p, k, relaxed=relaxed)
    if params.stability is Stability.TYPE_I:
        cert = dynamics.barrier_certificate_A3(params)
    else:
        cert = dynamics.barrier_certificate_A4(params)
    return {
        "n": n,
        "p": p,
        "k": k,
        "type": params.stability.value,
        "phi0": params.phi0,
        "cos_alpha": geometry.normal_angle_cos(params),
        "volume_ratio": geometry.los_volume_ratio(params),
        "slope_W": geometry.slope_function(params),
        "verdict": "certified" if cert.passed else "failed",
    }


def _cmd_sweep(cfg: RunConfig) -> int:
    if cfg.sweep_list:
        triples = []
        for line in Path(cfg.sweep_list).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                parts = line.replace(",", " ").split()
                triples.append(tuple(int(v) for v in parts[:3]))
    else:
        triples = SWEEP_DEFAULT
    work = [(n, p, k, cfg.relaxed) for (n, p, k) in triples]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sweep_row, work))
    else:
        rows = [_sweep_row(w) for w in work]
    header = ["n", "p", "k", "type", "phi0", "cos_alpha", "volume_ratio",
              "slope_W", "verdict"]
    if cfg.format == "csv":
        out = Path(cfg.output_dir or ".")
        _write_csv(out / "sweep.csv", header, ([r[h] for h in header] for r in rows))
        print((out / "sweep.csv").as_posix())
    else:
        _emit_json({"rows": rows}, cfg, "sweep")
    return 0 if all(r["verdict"] == "certified" for r in rows) else 1


_COMMANDS = {
    "classify": _cmd_classify,
    "portrait": _cmd_portrait,
    "profile": _cmd_profile,
    "dirichlet": _cmd_dirichlet,
    "barriers": _cmd_barriers,
    "verify-hopf": _cmd_verify_hopf,
    "sweep": _cmd_sweep,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    if config.command not in _COMMANDS:
        print(f"unknown command: {config.command}", file=sys.stderr)
        return 2
    if not (config.t_max > 0 and config.abs_tol > 0 and config.rel_tol > 0
            and config.event_tol > 0 and config.seed_epsilon > 0):
        print("tolerances, t_max and seed epsilon must be positive",
              file=sys.stderr)
        return 2
    try:
        return _COMMANDS[config.command](config)
    except (InvalidDegree, InvalidFamily) as exc:
        print(f"invalid parameters: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LoclabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="loclab",
        description="Lawson-Osserman cone and minimal-graph laboratory",
    )
    ap.add_argument("command", choices=sorted(_COMMANDS))
    ap.add_argument("--config", help="JSON file with defaults; flags override")
    ap.add_argument("--n", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--t-max", type=float, dest="t_max")
    ap.add_argument("--abs-tol", type=float, dest="abs_tol")
    ap.add_argument("--rel-tol", type=float, dest="rel_tol")
    ap.add_argument("--event-tol", type=float, dest="event_tol")
    ap.add_argument("--seed-epsilon", type=float, dest="seed_epsilon")
    ap.add_argument("--phi-boundary", dest="phi_boundary")
    ap.add_argument("--out", dest="output_dir")
    ap.add_argument("--format", choices=["json", "csv"])
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--relaxed", action="store_true", default=None)
    ap.add_argument("--no-timestamp", action="store_true", default=None,
                    dest="no_timestamp")
    ap.add_argument("--list", dest="sweep_list",
                    help="file of 'n p k' triples for sweep")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"invalid configuration file: {exc}", file=sys.stderr)
            return 2
        for key, value in loaded.items():
            if hasattr(cfg, key):
                setattr(cfg, key, value)
            else:
                print(f"unknown config key: {key}", file=sys.stderr)
                return 2
    for key in ("n", "p", "k", "t_max", "abs_tol", "rel_tol", "event_tol",
                "seed_epsilon", "phi_boundary", "output_dir", "format",
                "jobs", "relaxed", "no_timestamp", "sweep_list"):
        value = getattr(args, key)
        if value is not None:
            setattr(cfg, key, value)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
