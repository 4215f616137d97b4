"""Configuration-driven experiment runner.

Reads a JSON experiment description (or one of the built-in presets),
samples the requested intensity records over disorder seeds and
interaction values, and writes deterministic CSV/JSON artifacts:

* ``series_<channel>_U<u>.csv``   one (t, I) record per channel instance
* ``pdf.csv``                     log-binned densities, all instances
* ``contrast.csv``                per-window ensemble contrasts
* ``summary.json``                statistics, fitted models, KS distances
* ``meta.json``                   normalized config echo, seeds, version

Identical config and seeds produce byte-identical artifacts regardless
of ``--threads``: workers only compute, and results are merged in a
fixed order before anything is written.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .distributions import (
    CompoundRicianModel,
    FitError,
    KDistModel,
    build_g_of_r,
    fit_by_moments,
    ks_distance,
)
from .model import (
    BOSONIC,
    FERMIONIC,
    SINGLE,
    SUBSPACES,
    ChainSpec,
    build_hamiltonian,
    sample_disorder,
)
from .speckle import (
    MIN_DECORRELATION_STEP,
    TimeGrid,
    default_windows,
    log_histogram,
    summarize,
)
from .spectral import classify_bound_states, diagonalize, phasor_decomposition

SCHEMA_VERSION = 1

FIT_KINDS = ("exponential", "k1", "k2", "k_solve", "weibull_bound", "rician", "compound_rician")


class ConfigError(ValueError):
    """Invalid experiment configuration; carries all diagnostics."""

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


@dataclass(frozen=True)
class ChannelConfig:
    name: str
    subspace: str
    site_in: tuple
    site_out: tuple
    fits: tuple


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    n_sites: int
    hopping: float
    disorder_width: float
    u_values: tuple
    channels: tuple
    mode: str  # "grid" | "windows"
    grids: tuple  # one entry in grid mode, one per window otherwise
    seed_base: int
    seed_count: int
    hist_bins_per_decade: int
    hist_lo: float
    hist_hi: float
    n_dominant: int
    mc_samples: int
    write_series: bool

    @property
    def seeds(self):
        return [self.seed_base + i for i in range(self.seed_count)]

    def normalized(self) -> dict:
        """Canonical dict form (the one echoed into meta.json)."""
        time: dict = {"mode": self.mode}
        if self.mode == "grid":
            g = self.grids[0]
            time.update({"t_start": g.t_start, "step": g.step, "count": g.count})
        else:
            time["windows"] = [
                {"label": g.label, "t_start": g.t_start, "step": g.step, "count": g.count}
                for g in self.grids
            ]
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "chain": {
                "N": self.n_sites,
                "J": self.hopping,
                "W": self.disorder_width,
                "U": list(self.u_values),
            },
            "channels": [
                {
                    "name": ch.name,
                    "subspace": ch.subspace,
                    "input": list(ch.site_in),
                    "output": list(ch.site_out),
                    "fits": list(ch.fits),
                }
                for ch in self.channels
            ],
            "time": time,
            "seeds": {"base": self.seed_base, "count": self.seed_count},
            "histogram": {
                "bins_per_decade": self.hist_bins_per_decade,
                "lo": self.hist_lo,
                "hi": self.hist_hi,
            },
            "fit_options": {"n_dominant": self.n_dominant, "mc_samples": self.mc_samples},
            "output": {"write_series": self.write_series},
        }


def _fmt_u(u: float) -> str:
    return f"{u:g}"


def _instance_id(channel: ChannelConfig, u: float) -> str:
    return f"{channel.name}_U{_fmt_u(u)}"


def _analyze(raw: dict):
    """Parse a raw config dict; returns (config_or_None, errors, warnings)."""
    errors: list[str] = []
    warnings_: list[str] = []

    def err(msg):
        errors.append(msg)

    if not isinstance(raw, dict):
        return None, ["config must be a JSON object"], []
    if raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        err(f"unsupported schema_version {raw.get('schema_version')!r} (expected {SCHEMA_VERSION})")

    name = str(raw.get("name", "experiment"))
    chain = raw.get("chain", {})
    n_sites = chain.get("N", 0)
    hopping = float(chain.get("J", 1.0))
    disorder_width = float(chain.get("W", 0.0))
    u_raw = chain.get("U", 0.0)
    u_values = tuple(float(u) for u in (u_raw if isinstance(u_raw, (list, tuple)) else [u_raw]))
    if not (isinstance(n_sites, int) and n_sites >= 2):
        err(f"chain.N must be an integer >= 2, got {n_sites!r}")
        n_sites = max(2, int(n_sites) if isinstance(n_sites, (int, float)) else 2)
    if not hopping > 0:
        err("chain.J must be positive")
    if disorder_width < 0:
        err("chain.W must be non-negative")
    if any(u < 0 for u in u_values):
        err("chain.U values must be non-negative")
    if not u_values:
        err("chain.U must list at least one value")
        u_values = (0.0,)

    channels = []
    seen = set()
    for k, raw_ch in enumerate(raw.get("channels", [])):
        ch_name = str(raw_ch.get("name", f"channel{k}"))
        if ch_name in seen:
            err(f"duplicate channel name {ch_name!r}")
        seen.add(ch_name)
        subspace = raw_ch.get("subspace", "")
        if subspace not in SUBSPACES:
            err(f"channel {ch_name!r}: unknown subspace {subspace!r}")
            continue
        site_in = tuple(int(s) for s in raw_ch.get("input", ()))
        site_out = tuple(int(s) for s in raw_ch.get("output", ()))
        want = 1 if subspace == SINGLE else 2
        for label, sites in (("input", site_in), ("output", site_out)):
            if len(sites) != want:
                err(f"channel {ch_name!r}: {label} must list {want} site(s)")
            for s in sites:
                if not 1 <= s <= n_sites:
                    err(f"channel {ch_name!r}: site {s} outside [1, {n_sites}]")
        if subspace == FERMIONIC:
            if len(site_in) == 2 and site_in[0] == site_in[1]:
                err(f"channel {ch_name!r}: fermionic input sites must differ (no double occupancy)")
            if len(site_out) == 2 and site_out[0] == site_out[1]:
                err(f"channel {ch_name!r}: fermionic output sites must differ (no double occupancy)")
            site_in = tuple(sorted(site_in))
            site_out = tuple(sorted(site_out))
        if subspace == BOSONIC:
            site_in = tuple(sorted(site_in))
            site_out = tuple(sorted(site_out))
        fits = tuple(str(f) for f in raw_ch.get("fits", ()))
        for f in fits:
            if f not in FIT_KINDS:
                err(f"channel {ch_name!r}: unknown fit kind {f!r}")
        channels.append(ChannelConfig(ch_name, subspace, site_in, site_out, fits))
    if not channels:
        err("config lists no channels")

    time_raw = raw.get("time", {})
    mode = time_raw.get("mode", "grid")
    grids: list[TimeGrid] = []
    # TimeGrid would re-issue the short-step warning; diagnostics cover it here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        if mode == "grid":
            t_start = float(time_raw.get("t_start", 100.0))
            step = float(time_raw.get("step", 100.0))
            count = int(time_raw.get("count", 10000))
            if count < 2:
                err("time.count must be at least 2")
            if step <= 0:
                err("time.step must be positive")
            elif step < MIN_DECORRELATION_STEP:
                warnings_.append(
                    f"time.step * J = {step:g} < {MIN_DECORRELATION_STEP:g}: samples will be correlated"
                )
            if not errors:
                grids = [TimeGrid(t_start, step, count, label="grid")]
        elif mode == "windows":
            win_raw = time_raw.get("windows", "default")
            if win_raw == "default":
                grids = default_windows()
            else:
                labels = set()
                for w in win_raw:
                    label = str(w.get("label", f"window{len(grids)}"))
                    if label in labels:
                        err(f"duplicate window label {label!r}")
                    labels.add(label)
                    step = float(w.get("step", 100.0))
                    count = int(w.get("count", 1000))
                    if count < 2:
                        err(f"window {label!r}: count must be at least 2")
                    if step <= 0:
                        err(f"window {label!r}: step must be positive")
                    elif step < MIN_DECORRELATION_STEP:
                        warnings_.append(
                            f"window {label!r}: step * J = {step:g} < {MIN_DECORRELATION_STEP:g}"
                        )
                    if not errors:
                        grids.append(
                            TimeGrid(float(w.get("t_start", step)), step, count, label=label)
                        )
        else:
            err(f"time.mode must be 'grid' or 'windows', got {mode!r}")

    seeds_raw = raw.get("seeds", {})
    seed_base = int(seeds_raw.get("base", 1))
    seed_count = int(seeds_raw.get("count", 1))
    if seed_count < 1:
        err("seeds.count must be at least 1")
    if mode == "grid" and seed_count > 1:
        err("grid mode samples one disorder realization; use windows mode for ensembles")
    if mode == "windows":
        for ch in channels:
            if ch.fits:
                warnings_.append(f"channel {ch.name!r}: fits are ignored in windows mode")

    hist_raw = raw.get("histogram", {})
    bins_per_decade = int(hist_raw.get("bins_per_decade", 16))
    hist_lo = float(hist_raw.get("lo", 1e-4))
    hist_hi = float(hist_raw.get("hi", 1e2))
    if bins_per_decade < 1:
        err("histogram.bins_per_decade must be positive")
    if not (hist_lo > 0 and hist_hi > hist_lo):
        err("histogram range must satisfy 0 < lo < hi")

    fit_raw = raw.get("fit_options", {})
    n_dominant = int(fit_raw.get("n_dominant", 4))
    mc_samples = int(fit_raw.get("mc_samples", 100_000))
    if n_dominant < 1:
        err("fit_options.n_dominant must be positive")
    if mc_samples < 1:
        err("fit_options.mc_samples must be positive")

    write_series = bool(raw.get("output", {}).get("write_series", True))

    if errors:
        return None, errors, warnings_
    cfg = ExperimentConfig(
        name=name,
        n_sites=n_sites,
        hopping=hopping,
        disorder_width=disorder_width,
        u_values=u_values,
        channels=tuple(channels),
        mode=mode,
        grids=tuple(grids),
        seed_base=seed_base,
        seed_count=seed_count,
        hist_bins_per_decade=bins_per_decade,
        hist_lo=hist_lo,
        hist_hi=hist_hi,
        n_dominant=n_dominant,
        mc_samples=mc_samples,
        write_series=write_series,
    )
    return cfg, [], warnings_


def parse_config(raw: dict) -> ExperimentConfig:
    cfg, errors, _ = _analyze(raw)
    if errors:
        raise ConfigError(errors)
    return cfg


def validate_config(raw: dict):
    """Diagnostics without running: (errors, warnings)."""
    _, errors, warnings_ = _analyze(raw)
    return errors, warnings_


def scale_config(cfg: ExperimentConfig, scale: float) -> ExperimentConfig:
    """Shrink every time grid extent (not the step) by `scale`."""
    if scale <= 1:
        return cfg
    grids = tuple(
        TimeGrid(g.t_start, g.step, max(2, int(round(g.count / scale))), g.label) for g in cfg.grids
    )
    return dataclasses.replace(cfg, grids=grids)


# ---------------------------------------------------------------------------
# execution


def _run_task(cfg: ExperimentConfig, seed: int, u: float):
    """Everything computed for one (disorder seed, interaction) pair."""
    spec = ChainSpec(
        n_sites=cfg.n_sites,
        hopping=cfg.hopping,
        disorder_width=cfg.disorder_width,
        interaction=u,
    )
    disorder = sample_disorder(spec, seed)
    decs = {}
    for sub in sorted({ch.subspace for ch in cfg.channels}):
        decs[sub] = diagonalize(build_hamiltonian(sub, spec, disorder))
    bound = {
        sub: classify_bound_states(dec) for sub, dec in decs.items() if sub == BOSONIC
    }
    out = {}
    for ch in cfg.channels:
        dec = decs[ch.subspace]
        if ch.subspace == SINGLE:
            i_in, i_out = dec.flat(ch.site_in[0]), dec.flat(ch.site_out[0])
        else:
            i_in = dec.flat(*ch.site_in)
            i_out = dec.flat(*ch.site_out)
        mask = bound[ch.subspace].bound_mask if ch.subspace in bound else None
        phasors = phasor_decomposition(dec, i_in, i_out, bound_mask=mask)
        if cfg.mode == "grid":
            values = phasors.intensities(cfg.grids[0].times)
            out[ch.name] = {
                "values": values,
                "phasors": phasors,
                "n_bound": bound[ch.subspace].n_bound if ch.subspace in bound else None,
            }
        else:
            out[ch.name] = {
                "window_values": {g.label: phasors.intensities(g.times) for g in cfg.grids},
            }
    return out


def _run_all(cfg: ExperimentConfig, threads: int):
    tasks = [(si, ui) for si in range(cfg.seed_count) for ui in range(len(cfg.u_values))]
    results = {}
    if threads <= 1:
        for si, ui in tasks:
            results[(si, ui)] = _run_task(cfg, cfg.seeds[si], cfg.u_values[ui])
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {
                (si, ui): pool.submit(_run_task, cfg, cfg.seeds[si], cfg.u_values[ui])
                for si, ui in tasks
            }
        results = {key: fut.result() for key, fut in futures.items()}
    return results


def _f(x) -> str:
    return format(float(x), ".17g")


def _fit_channel(cfg: ExperimentConfig, ch: ChannelConfig, values, phasors, instance_index: int):
    entries = []
    for kind in ch.fits:
        if kind == "compound_rician":
            try:
                r_samples, s_n = build_g_of_r(
                    phasors,
                    n_dominant=cfg.n_dominant,
                    mc_samples=cfg.mc_samples,
                    seed=cfg.seed_base + 7919 * (1 + instance_index),
                )
            except ValueError as exc:
                entries.append({"kind": kind, "status": "degenerate", "reason": str(exc)})
                continue
            model = CompoundRicianModel(r_samples=r_samples, background=s_n)
            sorted_r = np.sort(r_samples)
            picks = ((np.arange(400) + 0.5) * sorted_r.size / 400).astype(int)
            entry = {
                "kind": kind,
                "status": "ok",
                "params": {
                    "background": s_n,
                    "n_dominant": cfg.n_dominant,
                    "mc_samples": cfg.mc_samples,
                    "r_samples": [float(v) for v in sorted_r[picks]],
                },
                "model_contrast": model.contrast,
                "ks_distance": ks_distance(values, model),
            }
            entries.append(entry)
            continue
        try:
            model = fit_by_moments(values, kind)
        except FitError as exc:
            entries.append({"kind": kind, "status": "degenerate", "reason": str(exc)})
            continue
        ks = None
        if not (isinstance(model, KDistModel) and not model.pdf_supported):
            ks = ks_distance(values, model)
        entries.append(
            {
                "kind": kind,
                "status": "ok",
                "params": model.params(),
                "model_contrast": model.contrast,
                "ks_distance": ks,
            }
        )
    return entries


def run_experiment(cfg: ExperimentConfig, out_dir, threads: int = 1) -> Path:
    """Run every (seed, U) task and write the artifact set into out_dir."""
    out = Path(out_dir)
    results = _run_all(cfg, max(1, threads))
    out.mkdir(parents=True, exist_ok=True)

    summary: dict = {
        "schema_version": SCHEMA_VERSION,
        "experiment": cfg.name,
        "mode": cfg.mode,
        "channels": {},
    }

    if cfg.mode == "grid":
        grid = cfg.grids[0]
        times = grid.times
        pdf_rows = []
        instance_index = 0
        for ui, u in enumerate(cfg.u_values):
            task = results[(0, ui)]
            for ch in cfg.channels:
                inst = _instance_id(ch, u)
                data = task[ch.name]
                values = data["values"]
                stats = summarize(values)
                hist = log_histogram(
                    values,
                    bins_per_decade=cfg.hist_bins_per_decade,
                    lo=cfg.hist_lo,
                    hi=cfg.hist_hi,
                )
                if cfg.write_series:
                    _write_series(out / f"series_{inst}.csv", times, values)
                for c, d, cnt in zip(hist.centers, hist.density, hist.counts):
                    pdf_rows.append((_f(c), _f(d), str(int(cnt)), inst))
                entry = {
                    "channel": ch.name,
                    "subspace": ch.subspace,
                    "U": u,
                    "input": list(ch.site_in),
                    "output": list(ch.site_out),
                    "seed": cfg.seed_base,
                    "n_samples": stats.count,
                    "mean": stats.mean,
                    "std": stats.std,
                    "contrast": stats.contrast,
                    "moments": {"m2": stats.moment2, "m3": stats.moment3, "m4": stats.moment4},
                    "underflow": hist.underflow,
                    "overflow": hist.overflow,
                    "n_bound": data["n_bound"],
                    "fits": _fit_channel(cfg, ch, values, data["phasors"], instance_index),
                }
                summary["channels"][inst] = entry
                instance_index += 1
        _write_csv(out / "pdf.csv", "bin_center,density,count,channel", pdf_rows)
    else:
        contrast_rows = []
        for ch in cfg.channels:
            for ui, u in enumerate(cfg.u_values):
                inst = _instance_id(ch, u)
                per_window = {}
                for g in cfg.grids:
                    contrasts = []
                    for si in range(cfg.seed_count):
                        values = results[(si, ui)][ch.name]["window_values"][g.label]
                        contrasts.append(summarize(values).contrast)
                    arr = np.asarray(contrasts)
                    std = float(arr.std())
                    per_window[g.label] = {
                        "contrast_mean": float(arr.mean()),
                        "contrast_std": std,
                        "contrast_stderr": std / math.sqrt(arr.size),
                        "n_seeds": int(arr.size),
                        "contrasts": [float(c) for c in contrasts],
                    }
                    contrast_rows.append(
                        (
                            ch.name,
                            _f(u),
                            g.label,
                            _f(per_window[g.label]["contrast_mean"]),
                            _f(per_window[g.label]["contrast_stderr"]),
                            str(arr.size),
                        )
                    )
                summary["channels"][inst] = {
                    "channel": ch.name,
                    "subspace": ch.subspace,
                    "U": u,
                    "input": list(ch.site_in),
                    "output": list(ch.site_out),
                    "per_window": per_window,
                }
        summary["windows"] = [g.label for g in cfg.grids]
        _write_csv(
            out / "contrast.csv",
            "channel,U,window,contrast_mean,contrast_stderr,n_seeds",
            contrast_rows,
        )

    meta = {
        "schema_version": SCHEMA_VERSION,
        "tool": "tpspeckle",
        "version": __version__,
        "experiment": cfg.name,
        "mode": cfg.mode,
        "seeds": cfg.seeds,
        "u_values": list(cfg.u_values),
        "config": cfg.normalized(),
    }
    _write_json(out / "summary.json", summary)
    _write_json(out / "meta.json", meta)
    return out


def _write_series(path: Path, times, values):
    rows = ((_f(t), _f(v)) for t, v in zip(times, values))
    _write_csv(path, "t,I", rows)


def _write_csv(path: Path, header: str, rows):
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_json(path: Path, payload: dict):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# presets


def preset_fig2() -> dict:
    """Distribution zoo at U = 0 and U = 1: scattered and bound geometries, N = 40."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": "fig2",
        "chain": {"N": 40, "J": 1.0, "W": 0.01, "U": [0.0, 1.0]},
        "channels": [
            {
                "name": "dist_scatter",
                "subspace": "distinguishable",
                "input": [20, 22],
                "output": [23, 26],
                "fits": ["exponential", "k1", "k2"],
            },
            {
                "name": "boson_scatter",
                "subspace": "bosonic",
                "input": [20, 22],
                "output": [23, 26],
                "fits": ["exponential", "k2"],
            },
            {
                "name": "fermion_scatter",
                "subspace": "fermionic",
                "input": [20, 22],
                "output": [23, 26],
                "fits": ["k2"],
            },
            {
                "name": "dist_bound",
                "subspace": "distinguishable",
                "input": [20, 20],
                "output": [22, 22],
                "fits": ["exponential", "weibull_bound"],
            },
        ],
        "time": {"mode": "grid", "t_start": 100.0, "step": 100.0, "count": 100000},
        "seeds": {"base": 12345, "count": 1},
    }


def preset_fig3() -> dict:
    """Contrast versus interaction in three time windows, ensemble-averaged, N = 26."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": "fig3",
        "chain": {
            "N": 26,
            "J": 1.0,
            "W": 0.01,
            "U": [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0],
        },
        "channels": [
            {"name": "boson_scatter", "subspace": "bosonic", "input": [10, 11], "output": [13, 16]},
            {"name": "boson_bound", "subspace": "bosonic", "input": [10, 10], "output": [11, 11]},
        ],
        "time": {"mode": "windows", "windows": "default"},
        "seeds": {"base": 12345, "count": 100},
        "output": {"write_series": False},
    }


def preset_fig4() -> dict:
    """Bound-transition statistics at strong interaction with compound-Rician fits, N = 40."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": "fig4",
        "chain": {"N": 40, "J": 1.0, "W": 0.01, "U": [200.0, 500.0]},
        "channels": [
            {
                "name": "boson_bound",
                "subspace": "bosonic",
                "input": [20, 20],
                "output": [22, 22],
                "fits": ["exponential", "rician", "compound_rician"],
            },
        ],
        "time": {"mode": "grid", "t_start": 100.0, "step": 100.0, "count": 100000},
        "seeds": {"base": 12345, "count": 1},
        "fit_options": {"n_dominant": 4, "mc_samples": 100000},
    }


PRESETS = {"fig2": preset_fig2, "fig3": preset_fig3, "fig4": preset_fig4}


# ---------------------------------------------------------------------------
# entry point


def _add_common(parser):
    parser.add_argument("--out-dir", default=None, help="artifact directory (default artifacts/<name>)")
    parser.add_argument("--seed", type=int, default=None, help="override the base seed")
    parser.add_argument("--threads", type=int, default=1, help="worker threads over (seed, U) tasks")
    parser.add_argument(
        "--scale",
        type=float,
        default=1.0,
        help="divide every time-grid extent by this factor (step is kept)",
    )


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError([f"config file not found: {path}"]) from None
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file {path} is not valid JSON: {exc}"]) from None


def _execute(raw: dict, args) -> int:
    if args.seed is not None:
        raw = dict(raw)
        raw["seeds"] = dict(raw.get("seeds", {}))
        raw["seeds"]["base"] = args.seed
    cfg = parse_config(raw)
    _, warnings_ = validate_config(raw)
    for w in warnings_:
        print(f"warning: {w}", file=sys.stderr)
    cfg = scale_config(cfg, args.scale)
    out_dir = args.out_dir or Path("artifacts") / cfg.name
    run_experiment(cfg, out_dir, threads=args.threads)
    print(f"wrote artifacts to {out_dir}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tpspeckle",
        description="Two-particle speckle experiments on a disordered chain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config file")
    p_run.add_argument("config", help="path to the experiment config (JSON)")
    _add_common(p_run)

    p_val = sub.add_parser("validate", help="print config diagnostics without running")
    p_val.add_argument("config", help="path to the experiment config (JSON)")

    for preset_name, factory in PRESETS.items():
        p = sub.add_parser(preset_name, help=factory.__doc__)
        _add_common(p)

    args = parser.parse_args(argv)

    try:
        if args.command == "validate":
            raw = _load_config_file(args.config)
            errors, warnings_ = validate_config(raw)
            for e in errors:
                print(f"error: {e}")
            for w in warnings_:
                print(f"warning: {w}")
            if not errors and not warnings_:
                print("config is clean")
            return 0
        if args.command == "run":
            raw = _load_config_file(args.config)
        else:
            raw = PRESETS[args.command]()
        return _execute(raw, args)
    except ConfigError as exc:
        for msg in exc.messages:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
