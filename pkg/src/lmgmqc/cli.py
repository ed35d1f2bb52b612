"""
Command-line front end.

Every subcommand writes plain CSV files plus a ``manifest.json`` into the
output directory. Parameters come from built-in defaults, then an optional
JSON config file (``--config``), then command-line flags; flags win.

    lmgmqc dos --n 5000 --kappa-ratio 2.0 --bins 100
    lmgmqc width --n 1000 --kappa 0.5333 --chi-grid 0.2:2:0.05
    lmgmqc validate --max-n 8
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .classical import (
    KAPPA_C,
    critical_quench_strength,
    energy_surface_grid,
    fixed_points,
)
from .dos import compare_to_classical, quantum_dos
from .eigensolver import eigvals
from .ensemble import build_diagonal_ensemble, d_matrix_map, mqc_of_ensemble
from .errors import DomainError, FitError, NumericalFailure
from .quench import (
    DT,
    N_SAMPLES,
    T0,
    T_AVG,
    TAU,
    i0_trajectory,
    long_time_avg_width,
    mqc_trajectory,
    peak_location_scaling,
    populations,
    prepare,
    time_grid,
    width_from_populations,
)
from .spin import ModelParams, pre_quench_hamiltonian
from .validation import run_checks

OUTPUT_ENV = "LMGMQC_OUTPUT_DIR"

DEFAULTS = {
    "n": None,
    "n_list": None,
    "kappa": None,
    "kappa_ratio": None,
    "kappa_grid": "0:1:0.01",
    "chi": None,
    "chi_ratio": None,
    "chi_grid": "0.2:2:0.05",
    "chi_ratios": "0.2,1,2",
    "times": None,
    "tau": TAU,
    "dt": DT,
    "t0": T0,
    "t_avg": T_AVG,
    "n_samples": N_SAMPLES,
    "bins": 100,
    "resolution": 201,
    "max_n": 8,
    "workers": 1,
    "output_dir": None,
}

SUBCOMMAND_DEFAULTS = {
    "spectrum": {"n": 50},
    "dos": {"n": 5000},
    "quench-mqc": {"n": 400, "kappa": 0.5, "times": "0:400:20"},
    "i0": {"n_list": "200,400,800", "kappa": 0.5, "times": "0:2000:0.5"},
    "width": {"n_list": "1000", "kappa": 1.6 / 3, "times": "0:200:0.1"},
    "scaling": {"n_list": "200,400,800,1600", "kappa": 1.6 / 3},
    "ensemble": {"n": 800, "kappa": 0.5},
}


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------


def parse_grid(text) -> np.ndarray:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if isinstance(text, (list, tuple)):
        return np.asarray(text, dtype=float)
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ConfigError(f"grid step must be positive in {text!r}")
            n = int(round((stop - start) / step))
            return np.round(start + step * np.arange(n + 1), 12)
        return np.array([float(x) for x in text.split(",") if x.strip()])
    except ValueError as exc:
        raise ConfigError(f"cannot parse grid {text!r}") from exc


def parse_int_list(text) -> list[int]:
    vals = parse_grid(text)
    if not np.all(vals == np.round(vals)):
        raise ConfigError(f"expected integers in {text!r}")
    return [int(v) for v in vals]


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([fmt(v) for v in row] for row in rows)


def parallel_map(func, items, workers: int):
    """Ordered map; results come back in input order regardless of worker count."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


# --------------------------------------------------------------------------
# config resolution
# --------------------------------------------------------------------------


def resolve_kappa(cfg: dict, required: bool = True) -> float | None:
    if cfg.get("kappa") is not None and cfg.get("kappa_ratio") is not None:
        raise ConfigError("give either kappa or kappa_ratio, not both")
    if cfg.get("kappa_ratio") is not None:
        cfg["kappa"] = float(cfg["kappa_ratio"]) * KAPPA_C
    if cfg.get("kappa") is None:
        if required:
            raise ConfigError("kappa (or kappa_ratio) is required")
        return None
    kappa = float(cfg["kappa"])
    if not 0.0 <= kappa <= 1.0:
        raise DomainError(f"kappa must lie in [0, 1], got {kappa}")
    cfg["kappa"] = kappa
    cfg["kappa_ratio"] = kappa / KAPPA_C
    return kappa


def resolve_chi(cfg: dict, kappa: float) -> float:
    if cfg.get("chi") is not None and cfg.get("chi_ratio") is not None:
        raise ConfigError("give either chi or chi_ratio, not both")
    if cfg.get("chi") is not None:
        chi = float(cfg["chi"])
        cfg["chi_ratio"] = chi / critical_quench_strength(kappa)
    else:
        ratio = 1.0 if cfg.get("chi_ratio") is None else float(cfg["chi_ratio"])
        chi = ratio * critical_quench_strength(kappa)
        cfg["chi_ratio"] = ratio
    cfg["chi"] = chi
    return chi


def check_sizes(sizes) -> None:
    for n in sizes:
        if n < 2 or n % 2:
            raise DomainError(f"n_spins must be an even integer >= 2, got {n}")


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


# --------------------------------------------------------------------------
# work units (module level so worker processes can import them)
# --------------------------------------------------------------------------


def _spectrum_point(args):
    n, kappa = args
    return eigvals(pre_quench_hamiltonian(ModelParams(kappa, 0.0, n))) / n


def _i0_max_point(args):
    kappa, n, chi, tau, dt = args
    setup = prepare(ModelParams(kappa, chi, n))
    return float(i0_trajectory(setup, time_grid(tau, dt)).max())


def _w_bar_point(args):
    kappa, n, chi, t0, t_avg, n_samples = args
    return long_time_avg_width(prepare(ModelParams(kappa, chi, n)), t0, t_avg, n_samples)


def _ensemble_point(args):
    kappa, n, chi = args
    spec = mqc_of_ensemble(build_diagonal_ensemble(prepare(ModelParams(kappa, chi, n))))
    return spec.zero_mode, spec.width / n


def _trajectory_point(args):
    kappa, n, chi, times = args
    setup = prepare(ModelParams(kappa, chi, n))
    pops = populations(setup, times)
    return np.sum(pops**2, axis=1), width_from_populations(pops, setup.labels)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_spectrum(cfg, out: Path) -> list[str]:
    n = int(cfg["n"])
    check_sizes([n])
    kappas = parse_grid(cfg["kappa_grid"])
    if np.any((kappas < 0) | (kappas > 1)):
        raise DomainError("kappa grid must lie in [0, 1]")
    levels = parallel_map(_spectrum_point, [(n, float(k)) for k in kappas], cfg["workers"])
    rows = ((k, i, e) for k, lv in zip(kappas, levels) for i, e in enumerate(lv))
    write_csv(out / "spectrum.csv", ["kappa", "index", "energy_per_spin"], rows)
    return ["spectrum.csv"]


def cmd_dos(cfg, out: Path) -> list[str]:
    n = int(cfg["n"])
    check_sizes([n])
    kappa = resolve_kappa(cfg)
    values = eigvals(pre_quench_hamiltonian(ModelParams(kappa, 0.0, n)))
    hist = quantum_dos(values, n, int(cfg["bins"]))
    cmp = compare_to_classical(hist, kappa)
    write_csv(out / "dos.csv", ["bin_center", "quantum_density", "classical_density"],
              zip(cmp.bin_centers, cmp.quantum_density, cmp.classical_density))
    cfg["result"] = {"l1_distance": cmp.l1_distance, "excluded_bins": cmp.excluded_bins,
                     "peak_bin_centers": [float(hist.bin_centers[i]) for i in hist.peak_bins()],
                     "bin_width": float(hist.bin_widths[0])}
    return ["dos.csv"]


def cmd_surface(cfg, out: Path) -> list[str]:
    kappa = resolve_kappa(cfg)
    surf = energy_surface_grid(kappa, int(cfg["resolution"]))
    rows = zip(surf.p.ravel(), surf.q.ravel(),
               (fmt(e) if v else "" for e, v in zip(surf.energy.ravel(), surf.valid.ravel())),
               surf.valid.ravel().astype(int))
    write_csv(out / "surface.csv", ["p", "q", "energy", "valid"], rows)
    fp = fixed_points(kappa)
    kinds = ["minimum"] if len(fp.fixed_points) == 1 else ["minimum", "saddle", "minimum"]
    write_csv(out / "fixed_points.csv", ["p", "q", "energy", "kind"],
              ((pt.p, pt.q, 0.0 if k == "saddle" else fp.fixed_point_energy, k)
               for pt, k in zip(fp.fixed_points, kinds)))
    return ["surface.csv", "fixed_points.csv"]


def cmd_quench_mqc(cfg, out: Path) -> list[str]:
    n = int(cfg["n"])
    check_sizes([n])
    kappa = resolve_kappa(cfg)
    chi = resolve_chi(cfg, kappa)
    times = parse_grid(cfg["times"])
    setup = prepare(ModelParams(kappa, chi, n))
    spectra, pops = mqc_trajectory(setup, times, return_populations=True)
    write_csv(out / "mqc_spectrum.csv", ["t", "l", "I_l"],
              ((t, int(l), v) for t, s in spectra for l, v in zip(s.ells, s.intensities)))
    write_csv(out / "trajectory.csv", ["t", "I_0", "w"],
              ((t, s.zero_mode, s.width) for t, s in spectra))
    m = setup.labels
    write_csv(out / "populations.csv", ["t", "m", "population"],
              ((t, int(mm), p) for t, row in zip(times, pops) for mm, p in zip(m, row)))
    return ["mqc_spectrum.csv", "trajectory.csv", "populations.csv"]


def _trajectories(cfg, out: Path, kappa: float, n: int, prefix: str) -> list[str]:
    ratios = parse_grid(cfg["chi_ratios"])
    times = parse_grid(cfg["times"])
    chi_c = critical_quench_strength(kappa)
    results = parallel_map(_trajectory_point, [(kappa, n, r * chi_c, times) for r in ratios],
                           cfg["workers"])
    names = []
    for r, (i0, w) in zip(ratios, results):
        name = f"{prefix}_trajectory_N{n}_chi{fmt(r)}.csv"
        write_csv(out / name, ["t", "I_0", "w"], zip(times, i0, w))
        names.append(name)
    return names


def cmd_i0(cfg, out: Path) -> list[str]:
    sizes = parse_int_list(cfg["n_list"] if cfg.get("n") is None else str(cfg["n"]))
    check_sizes(sizes)
    kappa = resolve_kappa(cfg)
    chi_c = critical_quench_strength(kappa)
    ratios = parse_grid(cfg["chi_grid"])
    tau, dt = float(cfg["tau"]), float(cfg["dt"])
    time_grid(tau, dt)
    files = []
    for n in sizes:
        vals = parallel_map(_i0_max_point, [(kappa, n, r * chi_c, tau, dt) for r in ratios],
                            cfg["workers"])
        name = f"i0_scan_N{n}.csv"
        write_csv(out / name, ["chi_ratio", "i0_max"], zip(ratios, vals))
        files.append(name)
    files += _trajectories(cfg, out, kappa, sizes[0], "i0")
    return files


def _w_bar_scan(cfg, kappa, n, ratios):
    chi_c = critical_quench_strength(kappa)
    args = [(kappa, n, r * chi_c, float(cfg["t0"]), float(cfg["t_avg"]), int(cfg["n_samples"]))
            for r in ratios]
    return np.array(parallel_map(_w_bar_point, args, cfg["workers"]))


def _check_avg_window(cfg):
    if float(cfg["t0"]) <= 0 or float(cfg["t_avg"]) <= 0 or int(cfg["n_samples"]) < 1:
        raise DomainError("t0, t_avg must be positive and n_samples >= 1")


def cmd_width(cfg, out: Path) -> list[str]:
    sizes = parse_int_list(cfg["n_list"] if cfg.get("n") is None else str(cfg["n"]))
    check_sizes(sizes)
    kappa = resolve_kappa(cfg)
    critical_quench_strength(kappa)
    _check_avg_window(cfg)
    ratios = parse_grid(cfg["chi_grid"])
    files = []
    peaks = {}
    for n in sizes:
        w_bar = _w_bar_scan(cfg, kappa, n, ratios)
        name = f"width_scan_N{n}.csv"
        write_csv(out / name, ["chi_ratio", "w_bar"], zip(ratios, w_bar))
        files.append(name)
        peaks[str(n)] = float(ratios[int(np.argmax(w_bar))])
    cfg["result"] = {"w_bar_peak_chi_ratio": peaks}
    files += _trajectories(cfg, out, kappa, sizes[0], "width")
    return files


def cmd_scaling(cfg, out: Path) -> list[str]:
    sizes = parse_int_list(cfg["n_list"])
    check_sizes(sizes)
    kappa = resolve_kappa(cfg)
    critical_quench_strength(kappa)
    _check_avg_window(cfg)
    ratios = parse_grid(cfg["chi_grid"])
    w_bar = np.array([_w_bar_scan(cfg, kappa, n, ratios) for n in sizes])
    res = peak_location_scaling(kappa, sizes, ratios, w_bar=w_bar)
    write_csv(out / "fit.csv", ["N", "chi_max_ratio", "fit_C", "fit_beta"],
              ((n, r, res.fit.prefactor, res.fit.exponent) for n, r in zip(sizes, res.chi_max_ratios)))
    write_csv(out / "scaling_w_bar.csv", ["N", "chi_ratio", "w_bar"],
              ((n, r, w) for n, row in zip(sizes, w_bar) for r, w in zip(ratios, row)))
    return ["fit.csv", "scaling_w_bar.csv"]


def cmd_ensemble(cfg, out: Path) -> list[str]:
    n = int(cfg["n"])
    check_sizes([n])
    kappa = resolve_kappa(cfg)
    chi_c = critical_quench_strength(kappa)
    ratios = parse_grid(cfg["chi_grid"])
    vals = parallel_map(_ensemble_point, [(kappa, n, r * chi_c) for r in ratios], cfg["workers"])
    write_csv(out / "ensemble_scan.csv", ["chi_ratio", "I0_bar", "w_tilde"],
              ((r, i0, wt) for r, (i0, wt) in zip(ratios, vals)))
    files = ["ensemble_scan.csv"]
    for r in parse_grid(cfg["chi_ratios"]):
        dmap = d_matrix_map(build_diagonal_ensemble(prepare(ModelParams(kappa, r * chi_c, n))))
        name = f"dmap_N{n}_chi{fmt(r)}.csv"
        write_csv(out / name, ["m_over_N", "l_over_N", "D_value"],
                  zip(dmap.m_over_n, dmap.l_over_n, dmap.value))
        files.append(name)
    return files


def cmd_validate(cfg, out: Path) -> list[str]:
    max_n = int(cfg["max_n"])
    if max_n < 2 or max_n > 12:
        raise DomainError(f"max_n must lie in [2, 12], got {max_n}")
    checks = run_checks(max_n)
    write_csv(out / "validation.csv", ["check", "value", "tolerance", "passed"],
              ((c.name, c.value, c.tolerance, int(c.passed)) for c in checks))
    failed = [c.name for c in checks if not c.passed]
    cfg["result"] = {"n_checks": len(checks), "failed": failed}
    return ["validation.csv"]


COMMANDS = {
    "spectrum": (cmd_spectrum, "normalised spectrum E/N against kappa"),
    "dos": (cmd_dos, "quantum vs classical density of states"),
    "surface": (cmd_surface, "classical energy surface and fixed points"),
    "quench-mqc": (cmd_quench_mqc, "evolved MQC spectrum and populations"),
    "i0": (cmd_i0, "zero-mode maximum scan and I_0(t) trajectories"),
    "width": (cmd_width, "long-time averaged width scan and w(t) trajectories"),
    "scaling": (cmd_scaling, "finite-size scaling of the width peak"),
    "ensemble": (cmd_ensemble, "diagonal-ensemble MQC scan and D maps"),
    "validate": (cmd_validate, "oracle and invariant self-test"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with parameter defaults")
    common.add_argument("--output-dir", dest="output_dir")
    common.add_argument("--workers", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--n-list", dest="n_list")
    common.add_argument("--kappa", type=float)
    common.add_argument("--kappa-ratio", dest="kappa_ratio", type=float)
    common.add_argument("--kappa-grid", dest="kappa_grid")
    common.add_argument("--chi", type=float)
    common.add_argument("--chi-ratio", dest="chi_ratio", type=float)
    common.add_argument("--chi-grid", dest="chi_grid", help="chi/chi_c grid, start:stop:step or list")
    common.add_argument("--chi-ratios", dest="chi_ratios", help="chi/chi_c values for trajectories and maps")
    common.add_argument("--times", help="time grid start:stop:step or list")
    common.add_argument("--tau", type=float)
    common.add_argument("--dt", type=float)
    common.add_argument("--t0", type=float)
    common.add_argument("--t-avg", dest="t_avg", type=float)
    common.add_argument("--n-samples", dest="n_samples", type=int)
    common.add_argument("--bins", type=int)
    common.add_argument("--resolution", type=int)
    common.add_argument("--max-n", dest="max_n", type=int)

    parser = argparse.ArgumentParser(prog="lmgmqc", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"lmgmqc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, argument_default=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    flags = vars(args).copy()
    command = flags.pop("command")
    cfg = dict(DEFAULTS)
    cfg.update(SUBCOMMAND_DEFAULTS.get(command, {}))
    config_path = flags.pop("config", None)
    if config_path is not None:
        cfg.update(load_config(config_path))
    cfg.update(flags)
    if cfg.get("output_dir") is None:
        cfg["output_dir"] = os.environ.get(OUTPUT_ENV, "lmgmqc_output")
    if int(cfg["workers"]) < 1:
        raise ConfigError("workers must be >= 1")
    cfg["workers"] = int(cfg["workers"])
    return cfg


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.command
    start = time.perf_counter()
    try:
        cfg = resolve_config(args)
        out = Path(cfg["output_dir"])
        out.mkdir(parents=True, exist_ok=True)
        func = COMMANDS[command][0]
        files = func(cfg, out)
    except ConfigError as exc:
        return _error("config", str(exc), 2)
    except (DomainError, FitError) as exc:
        return _error("precondition", str(exc), 2)
    except NumericalFailure as exc:
        return _error("numerical", str(exc), 3)
    except (TypeError, ValueError) as exc:
        # malformed values from a config file, e.g. a string where a number belongs
        return _error("config", str(exc), 2)
    result = cfg.pop("result", None)
    manifest = {
        "command": command,
        "version": __version__,
        "config": cfg,
        "outputs": files,
        "result": result,
        "wall_time_s": time.perf_counter() - start,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")
    if command == "validate" and result["failed"]:
        return _error("validation", f"{len(result['failed'])} checks failed: {result['failed'][:5]}", 1)
    return 0


def main() -> None:
    sys.exit(run())
