"""Experiment harness: config files, paired-trial studies, result files.

A study evaluates several estimator arms (plain MC, surrogate alone,
fold-based variants) on the same synthetic datasets over a grid of
sample sizes, averaging squared error against the known reference mean
over many trials.  Every trial draws its generator from (seed,
sample-size index, trial index), so results are reproducible and
independent of how work is split across threads, and all arms within a
trial share the same data (paired comparisons).
"""

from __future__ import annotations

import copy
import dataclasses
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np
import yaml
from joblib import Parallel, delayed

from .benchmarks import FourPeaks, Quadratic1D, Rosenbrock, reference_mean
from .core import DataSet, kfold_partition, split_rng
from .distributions import GaussianIID, ProductQuadratic, UniformBits, UniformBox
from .engine import (
    estimate_from_folds,
    estimate_from_folds_multi,
    fit_alone_estimate,
    run_folds,
    stackmc_importance,
    stackmc_quasimc,
)
from .fitters import CubicPolynomialFitter, FourierFitter, LinearFitter, WalshFitter
from .samplers import (
    HaltonSampler,
    ImportanceSampler,
    LatinHypercubeSampler,
    SimpleSampler,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ResultRow",
    "ExperimentResult",
    "load_config",
    "config_to_dict",
    "loads_config",
    "dumps_config",
    "read_config_file",
    "validate_config",
    "plan_arms",
    "run_experiment",
    "write_results",
    "rows_to_csv",
    "read_rows",
    "render_svg",
    "preset_config",
    "preset_names",
    "PRESET_DESCRIPTIONS",
]

#: Trials per parallel work unit.
_BLOCK = 64

_VARIANTS = ("plain", "bootstrap", "importance")
_ALPHA_METHODS = ("original", "improved")
_COMBO_MODES = ("each", "all", "each+all")
_EMIT_FORMATS = ("csv", "json", "svg")

# distribution kinds each fitter kind has closed-form means under
_ANALYTIC_OK = {
    "linear": ("uniform_box", "gaussian_iid"),
    "poly3": ("uniform_box", "gaussian_iid"),
    "fourier": ("uniform_box", "gaussian_iid"),
    "walsh": ("uniform_bits",),
}


class ConfigError(Exception):
    """Invalid experiment configuration; ``messages`` lists every problem."""

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


@dataclass(frozen=True)
class ExperimentConfig:
    """Plain-data description of a study, 1:1 with the YAML file format.

    Component sections (``function``, ``distribution``, ``sampler``,
    ``fitters`` entries) are mappings with a ``kind`` key plus
    kind-specific fields; see the builders in this module for the
    accepted kinds and keys.
    """

    function: dict | None = None
    distribution: dict | None = None
    sampler: dict = field(default_factory=lambda: {"kind": "simple"})
    fitters: tuple = ()
    folds: object = 5
    alpha_methods: tuple = ("improved",)
    fit_combos: str = "each+all"
    variant: str = "plain"
    bootstrap_repeats: int = 10
    assume_unbiased_g: bool = False
    mean_method: str = "analytic"
    n_mean: int = 300
    n_grid: tuple = ()
    trials: int = 100
    seed: int = 0
    threads: int = 1
    out: str = "results"
    emit: tuple = ("csv", "json", "svg")


@dataclass(frozen=True)
class ResultRow:
    """One aggregated line of output: MSE of one arm at one sample size."""

    n: int
    estimator: str
    mse: float
    stderr: float
    trials: int


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    """Aggregated rows plus the raw per-trial estimates behind them.

    ``estimates[n]`` is a (trials, n_arms) array whose columns follow
    ``arms``; keeping it allows paired comparisons between arms that
    aggregate rows cannot express.
    """

    config: ExperimentConfig
    reference: float
    arms: tuple
    estimates: dict
    rows: tuple


def _as_tuple(value):
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


def load_config(raw):
    """Build a validated ExperimentConfig from a parsed YAML mapping."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    errors = [f"unknown config key {k!r}" for k in raw if k not in known]
    if errors:
        raise ConfigError(errors)
    kwargs = dict(raw)
    for key in ("fitters", "alpha_methods", "n_grid", "emit"):
        if key in kwargs:
            kwargs[key] = _as_tuple(kwargs[key])
    cfg = ExperimentConfig(**kwargs)
    validate_config(cfg)
    return cfg


def config_to_dict(cfg):
    """Plain mapping form of a config, suitable for YAML serialization."""
    out = dataclasses.asdict(cfg)
    for key in ("fitters", "alpha_methods", "n_grid", "emit"):
        out[key] = list(out[key])
    out["fitters"] = [dict(f) for f in out["fitters"]]
    return out


def loads_config(text):
    return load_config(yaml.safe_load(text))


def dumps_config(cfg):
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)


def read_config_file(path):
    with open(path, "r", encoding="utf-8") as handle:
        raw = yaml.safe_load(handle)
    return load_config(raw)


def _section_kind(spec):
    return spec.get("kind") if isinstance(spec, dict) else None


def _require_section(spec, section, allowed_keys, errors):
    if not isinstance(spec, dict):
        errors.append(f"{section} must be a mapping with a 'kind' key")
        return None
    if "kind" not in spec:
        errors.append(f"{section} is missing its 'kind' key")
        return None
    extra = set(spec) - set(allowed_keys.get(spec["kind"], ())) - {"kind"}
    if extra:
        errors.append(f"{section} has unknown keys {sorted(extra)}")
    return spec["kind"]


def _build_function(spec):
    kind = spec["kind"]
    if kind == "quadratic1d":
        return Quadratic1D()
    if kind == "rosenbrock":
        return Rosenbrock(dim=int(spec.get("dim", 2)))
    if kind == "four_peaks":
        threshold = spec.get("threshold")
        return FourPeaks(
            dim=int(spec["dim"]),
            threshold=None if threshold is None else int(threshold),
        )
    raise ValueError(f"unknown function kind {kind!r}")


_FUNCTION_KEYS = {
    "quadratic1d": (),
    "rosenbrock": ("dim",),
    "four_peaks": ("dim", "threshold"),
}


def _build_distribution(spec):
    kind = spec["kind"]
    if kind == "uniform_box":
        return UniformBox(spec["lo"], spec["hi"], dim=spec.get("dim"))
    if kind == "gaussian_iid":
        return GaussianIID(spec["mu"], spec["sigma"], dim=int(spec["dim"]))
    if kind == "uniform_bits":
        return UniformBits(dim=int(spec["dim"]))
    if kind == "product_quadratic":
        return ProductQuadratic(spec["lo"], spec["hi"], dim=spec.get("dim"))
    raise ValueError(f"unknown distribution kind {kind!r}")


_DISTRIBUTION_KEYS = {
    "uniform_box": ("lo", "hi", "dim"),
    "gaussian_iid": ("mu", "sigma", "dim"),
    "uniform_bits": ("dim",),
    "product_quadratic": ("lo", "hi", "dim"),
}


def _build_sampler(spec):
    kind = spec["kind"]
    if kind == "simple":
        return SimpleSampler()
    if kind == "latin_hypercube":
        return LatinHypercubeSampler()
    if kind == "halton":
        burn_in = spec.get("burn_in", "random")
        if burn_in != "random":
            burn_in = int(burn_in)
        return HaltonSampler(scramble=bool(spec.get("scramble", True)), burn_in=burn_in)
    if kind == "importance":
        if "proposal" not in spec:
            raise ValueError("importance sampler needs a 'proposal' distribution")
        return ImportanceSampler(proposal=_build_distribution(spec["proposal"]))
    raise ValueError(f"unknown sampler kind {kind!r}")


_SAMPLER_KEYS = {
    "simple": (),
    "latin_hypercube": (),
    "halton": ("scramble", "burn_in"),
    "importance": ("proposal",),
}


def _build_fitter(spec):
    kind = spec["kind"]
    ridge = float(spec.get("ridge", 0.0))
    if kind == "linear":
        return LinearFitter(ridge=ridge)
    if kind == "poly3":
        return CubicPolynomialFitter(ridge=ridge)
    if kind == "fourier":
        return FourierFitter(
            harmonics=int(spec.get("harmonics", 6)),
            convention=spec.get("convention", "periodic"),
            ridge=ridge,
        )
    if kind == "walsh":
        return WalshFitter(max_order=int(spec.get("max_order", 2)), ridge=ridge)
    raise ValueError(f"unknown fitter kind {kind!r}")


_FITTER_KEYS = {
    "linear": ("ridge", "name"),
    "poly3": ("ridge", "name"),
    "fourier": ("ridge", "name", "harmonics", "convention"),
    "walsh": ("ridge", "name", "max_order"),
}


def validate_config(cfg):
    """Check a config end to end, collecting every problem found."""
    errors = []
    fn = dist = None
    if cfg.function is None:
        errors.append("missing 'function' section")
    else:
        kind = _require_section(cfg.function, "function", _FUNCTION_KEYS, errors)
        if kind is not None:
            try:
                fn = _build_function(cfg.function)
            except Exception as exc:
                errors.append(f"function: {exc}")
    if cfg.distribution is None:
        errors.append("missing 'distribution' section")
    else:
        kind = _require_section(
            cfg.distribution, "distribution", _DISTRIBUTION_KEYS, errors
        )
        if kind is not None:
            try:
                dist = _build_distribution(cfg.distribution)
            except Exception as exc:
                errors.append(f"distribution: {exc}")
    sampler_kind = _require_section(cfg.sampler, "sampler", _SAMPLER_KEYS, errors)
    if sampler_kind is not None:
        try:
            _build_sampler(cfg.sampler)
        except Exception as exc:
            errors.append(f"sampler: {exc}")
    if not cfg.fitters:
        errors.append("at least one fitter is required")
    names = []
    for i, fspec in enumerate(cfg.fitters):
        kind = _require_section(fspec, f"fitters[{i}]", _FITTER_KEYS, errors)
        if kind is None:
            continue
        try:
            _build_fitter(fspec)
        except Exception as exc:
            errors.append(f"fitters[{i}]: {exc}")
            continue
        names.append(fspec.get("name", fspec["kind"]))
    if len(names) != len(set(names)):
        errors.append("fitter names must be unique (set 'name' to disambiguate)")
    if fn is not None and dist is not None and fn.dim != dist.dim:
        errors.append(
            f"function dimension {fn.dim} does not match distribution dimension {dist.dim}"
        )
    if cfg.variant not in _VARIANTS:
        errors.append(f"variant must be one of {_VARIANTS}, got {cfg.variant!r}")
    if (sampler_kind == "importance") != (cfg.variant == "importance"):
        errors.append("the importance sampler and the importance variant go together")
    if cfg.variant in ("bootstrap", "importance"):
        if len(cfg.fitters) > 1:
            errors.append(f"the {cfg.variant} variant supports a single fitter")
        if len(cfg.alpha_methods) > 1:
            errors.append(f"the {cfg.variant} variant supports a single alpha method")
    if cfg.variant == "bootstrap":
        if not (isinstance(cfg.bootstrap_repeats, int) and cfg.bootstrap_repeats >= 1):
            errors.append("bootstrap_repeats must be a positive integer")
    if not cfg.alpha_methods:
        errors.append("alpha_methods must not be empty")
    for am in cfg.alpha_methods:
        if am not in _ALPHA_METHODS:
            errors.append(f"unknown alpha method {am!r}")
    if cfg.fit_combos not in _COMBO_MODES:
        errors.append(f"fit_combos must be one of {_COMBO_MODES}, got {cfg.fit_combos!r}")
    if cfg.mean_method not in ("analytic", "mc"):
        errors.append(f"mean_method must be 'analytic' or 'mc', got {cfg.mean_method!r}")
    if cfg.mean_method == "analytic" and cfg.variant != "importance" and dist is not None:
        dist_kind = _section_kind(cfg.distribution)
        for i, fspec in enumerate(cfg.fitters):
            fkind = fspec.get("kind") if isinstance(fspec, dict) else None
            if fkind in _ANALYTIC_OK and dist_kind not in _ANALYTIC_OK[fkind]:
                errors.append(
                    f"fitters[{i}]: no closed-form mean for {fkind!r} under "
                    f"{dist_kind!r}; set mean_method: mc"
                )
    folds_ok = cfg.folds == "loo" or (isinstance(cfg.folds, int) and cfg.folds >= 2)
    if not folds_ok:
        errors.append(f"folds must be an integer >= 2 or 'loo', got {cfg.folds!r}")
    if not cfg.n_grid:
        errors.append("n_grid must list at least one sample size")
    for n in cfg.n_grid:
        if not (isinstance(n, int) and n >= 2):
            errors.append(f"sample sizes must be integers >= 2, got {n!r}")
        elif isinstance(cfg.folds, int) and folds_ok and n < cfg.folds:
            errors.append(f"sample size {n} is smaller than the fold count {cfg.folds}")
    if not (isinstance(cfg.trials, int) and cfg.trials >= 1):
        errors.append("trials must be a positive integer")
    if not (isinstance(cfg.n_mean, int) and cfg.n_mean >= 1):
        errors.append("n_mean must be a positive integer")
    if not (isinstance(cfg.seed, int) and not isinstance(cfg.seed, bool) and cfg.seed >= 0):
        errors.append("seed must be a nonnegative integer")
    if not (isinstance(cfg.threads, int) and cfg.threads >= 1):
        errors.append("threads must be a positive integer")
    if not isinstance(cfg.out, str) or not cfg.out:
        errors.append("out must be a nonempty path string")
    if not cfg.emit:
        errors.append("emit must list at least one format")
    for fmt in cfg.emit:
        if fmt not in _EMIT_FORMATS:
            errors.append(f"unknown emit format {fmt!r}")
    if errors:
        raise ConfigError(errors)


def _combos(mode, names):
    singles = [(n,) for n in names]
    joint = [tuple(names)] if len(names) > 1 else []
    if mode == "each":
        return singles
    if mode == "all":
        return joint or singles
    return singles + joint


def _stack_arm_jobs(cfg, names):
    """(arm name, fitter combo, alpha method) for every fold-based arm."""
    combos = _combos(cfg.fit_combos, names)
    plain_base = len(names) == 1 and len(combos) == 1
    jobs = []
    for combo in combos:
        base = "stackmc" if plain_base else "stackmc:" + "+".join(combo)
        if len(combo) == 1 and len(cfg.alpha_methods) > 1:
            for method in cfg.alpha_methods:
                jobs.append((f"{base}:{method}", combo, method))
        else:
            method = cfg.alpha_methods[0] if len(combo) == 1 else None
            jobs.append((base, combo, method))
    return jobs


class _Runtime:
    """Config sections built into live objects, shared across trials."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.fn = _build_function(cfg.function)
        self.dist = _build_distribution(cfg.distribution)
        self.sampler = _build_sampler(cfg.sampler)
        self.names = [f.get("name", f["kind"]) for f in cfg.fitters]
        self.fitters = {
            name: _build_fitter(spec) for name, spec in zip(self.names, cfg.fitters)
        }
        self.proposal = getattr(self.sampler, "proposal", None)
        self.stack_jobs = _stack_arm_jobs(cfg, self.names)
        arms = ["mc"]
        if len(self.names) == 1:
            arms.append("fit_alone")
        else:
            arms.extend(f"fit_alone:{name}" for name in self.names)
        arms.extend(job[0] for job in self.stack_jobs)
        if cfg.variant == "bootstrap":
            arms.append("stackmc_boot")
        self.arms = tuple(arms)


def plan_arms(cfg):
    """Arm names a study will report, in output order."""
    return _Runtime(cfg).arms


def _trial_estimates(rt, n, rng):
    """All arm estimates for one trial (shared data, paired)."""
    cfg = rt.cfg
    X, w = rt.sampler.sample(rt.dist, n, rng)
    y = rt.fn(X)
    vals = {}
    if cfg.variant == "importance":
        data = DataSet(points=X, values=y, weights=w)
        partition = kfold_partition(n, cfg.folds, rng)
        report = stackmc_importance(
            data, partition, rt.fitters[rt.names[0]], rt.proposal,
            alpha=cfg.alpha_methods[0], assume_unbiased_g=cfg.assume_unbiased_g,
            n_mean=cfg.n_mean, rng=rng, with_fit_alone=True,
        )
        vals["mc"] = report.mc_baseline
        vals["fit_alone"] = report.fit_alone
        vals[rt.stack_jobs[0][0]] = report.estimate
        return [vals[a] for a in rt.arms]
    data = DataSet(points=X, values=y)
    partition = kfold_partition(n, cfg.folds, rng)
    vals["mc"] = float(y.mean())
    folds_cache = {}
    for name in rt.names:
        folds_cache[name] = run_folds(
            data, partition, rt.fitters[name], rt.dist,
            mean_method=cfg.mean_method, n_mean=cfg.n_mean, rng=rng,
        )
    for name in rt.names:
        label = "fit_alone" if len(rt.names) == 1 else f"fit_alone:{name}"
        vals[label] = fit_alone_estimate(
            data, rt.fitters[name], rt.dist,
            mean_method=cfg.mean_method, n_mean=cfg.n_mean, rng=rng,
        )
    for arm, combo, method in rt.stack_jobs:
        if len(combo) == 1:
            est, _ = estimate_from_folds(
                folds_cache[combo[0]], alpha=method,
                assume_unbiased_g=cfg.assume_unbiased_g,
            )
        else:
            est, _ = estimate_from_folds_multi(
                [folds_cache[name] for name in combo]
            )
        vals[arm] = est
    if cfg.variant == "bootstrap":
        report = stackmc_quasimc(
            data, cfg.folds, rt.fitters[rt.names[0]], rt.dist,
            n_repeats=cfg.bootstrap_repeats, alpha=cfg.alpha_methods[0],
            assume_unbiased_g=cfg.assume_unbiased_g,
            mean_method=cfg.mean_method, n_mean=cfg.n_mean, rng=rng,
        )
        vals["stackmc_boot"] = report.estimate
    return [vals[a] for a in rt.arms]


def _run_block(cfg, n_index, start, stop):
    rt = _Runtime(cfg)
    n = cfg.n_grid[n_index]
    out = np.empty((stop - start, len(rt.arms)))
    for t in range(start, stop):
        rng = split_rng(cfg.seed, n_index, t)
        out[t - start] = _trial_estimates(rt, n, rng)
    return out


def run_experiment(cfg):
    """Run all trials over the sample-size grid and aggregate MSE rows.

    The per-trial generator depends only on (seed, size index, trial
    index), so the result is bit-identical however many threads run it.
    """
    validate_config(cfg)
    rt = _Runtime(cfg)
    reference = reference_mean(rt.fn, rt.dist)
    estimates = {}
    for n_index, n in enumerate(cfg.n_grid):
        if cfg.threads == 1:
            block = np.empty((cfg.trials, len(rt.arms)))
            for t in range(cfg.trials):
                rng = split_rng(cfg.seed, n_index, t)
                block[t] = _trial_estimates(rt, n, rng)
            estimates[n] = block
        else:
            spans = [
                (s, min(s + _BLOCK, cfg.trials)) for s in range(0, cfg.trials, _BLOCK)
            ]
            parts = Parallel(n_jobs=cfg.threads)(
                delayed(_run_block)(cfg, n_index, s, e) for s, e in spans
            )
            estimates[n] = np.vstack(parts)
    rows = []
    for n in cfg.n_grid:
        err2 = (estimates[n] - reference) ** 2
        for j, arm in enumerate(rt.arms):
            col = err2[:, j]
            stderr = (
                float(col.std(ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else 0.0
            )
            rows.append(
                ResultRow(
                    n=n, estimator=arm, mse=float(col.mean()),
                    stderr=stderr, trials=cfg.trials,
                )
            )
    return ExperimentResult(
        config=cfg, reference=float(reference), arms=rt.arms,
        estimates=estimates, rows=tuple(rows),
    )


def rows_to_csv(rows):
    lines = ["n,estimator,mse,stderr,trials"]
    for r in rows:
        lines.append(
            f"{r.n},{r.estimator},{repr(float(r.mse))},{repr(float(r.stderr))},{r.trials}"
        )
    return "\n".join(lines) + "\n"


def read_rows(path):
    """Parse a results CSV back into ResultRow objects."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if not lines or lines[0] != "n,estimator,mse,stderr,trials":
        raise ValueError(f"{path} is not a results CSV")
    rows = []
    for line in lines[1:]:
        n, estimator, mse, stderr, trials = line.split(",")
        rows.append(
            ResultRow(
                n=int(n), estimator=estimator, mse=float(mse),
                stderr=float(stderr), trials=int(trials),
            )
        )
    return rows


def rows_to_json(rows, reference):
    payload = {
        "reference_mean": float(reference),
        "rows": [dataclasses.asdict(r) for r in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def render_svg(rows, *, width=720, height=480):
    """Log-log MSE vs sample size, one polyline per estimator arm.

    Self-contained hand-rolled SVG so runs produce a glanceable plot
    without a plotting dependency.  Non-positive MSE values (exact
    collapses) are dropped from their series.
    """
    series = {}
    for r in rows:
        series.setdefault(r.estimator, []).append((r.n, r.mse))
    points = [(n, m) for pts in series.values() for n, m in pts if m > 0]
    left, right, top, bottom = 70, width - 190, 30, height - 55
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if points:
        xs = [math.log10(n) for n, _ in points]
        ys = [math.log10(m) for _, m in points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = math.floor(min(ys)), math.ceil(max(ys))
        if x_hi - x_lo < 1e-9:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_hi - y_lo < 1:
            y_hi = y_lo + 1

        def fx(v):
            return left + (math.log10(v) - x_lo) / (x_hi - x_lo) * (right - left)

        def fy(v):
            return bottom - (math.log10(v) - y_lo) / (y_hi - y_lo) * (bottom - top)

        parts.append(
            f'<rect x="{left}" y="{top}" width="{right - left}" '
            f'height="{bottom - top}" fill="none" stroke="#333"/>'
        )
        for n in sorted({n for n, _ in points}):
            x = fx(n)
            parts.append(
                f'<line x1="{x:.1f}" y1="{bottom}" x2="{x:.1f}" y2="{bottom + 5}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{x:.1f}" y="{bottom + 18}" text-anchor="middle">{n}</text>'
            )
        for exp in range(y_lo, y_hi + 1):
            yv = fy(10.0**exp)
            parts.append(
                f'<line x1="{left - 5}" y1="{yv:.1f}" x2="{left}" y2="{yv:.1f}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{left - 8}" y="{yv + 4:.1f}" text-anchor="end">1e{exp}</text>'
            )
            if exp != y_lo:
                parts.append(
                    f'<line x1="{left}" y1="{yv:.1f}" x2="{right}" y2="{yv:.1f}" '
                    f'stroke="#ddd" stroke-width="0.5"/>'
                )
        parts.append(
            f'<text x="{(left + right) / 2:.1f}" y="{height - 12}" '
            f'text-anchor="middle">samples n</text>'
        )
        parts.append(
            f'<text x="18" y="{(top + bottom) / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 18 {(top + bottom) / 2:.1f})">MSE</text>'
        )
        for idx, (name, pts) in enumerate(series.items()):
            color = _PALETTE[idx % len(_PALETTE)]
            shown = [(n, m) for n, m in sorted(pts) if m > 0]
            if shown:
                coords = " ".join(f"{fx(n):.1f},{fy(m):.1f}" for n, m in shown)
                parts.append(
                    f'<polyline points="{coords}" fill="none" stroke="{color}" '
                    f'stroke-width="1.6"/>'
                )
                for n, m in shown:
                    parts.append(
                        f'<circle cx="{fx(n):.1f}" cy="{fy(m):.1f}" r="2.6" fill="{color}"/>'
                    )
            ly = top + 16 + 18 * idx
            parts.append(
                f'<line x1="{right + 12}" y1="{ly - 4}" x2="{right + 36}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            parts.append(f'<text x="{right + 42}" y="{ly}">{name}</text>')
    else:
        parts.append(
            f'<text x="{width / 2}" y="{height / 2}" text-anchor="middle">no data</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_results(result, out_dir=None, formats=None):
    """Write results.csv / results.json / results.svg; returns the paths."""
    out_dir = result.config.out if out_dir is None else out_dir
    formats = result.config.emit if formats is None else formats
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    if "csv" in formats:
        paths["csv"] = os.path.join(out_dir, "results.csv")
        with open(paths["csv"], "w", encoding="utf-8", newline="\n") as handle:
            handle.write(rows_to_csv(result.rows))
    if "json" in formats:
        paths["json"] = os.path.join(out_dir, "results.json")
        with open(paths["json"], "w", encoding="utf-8", newline="\n") as handle:
            handle.write(rows_to_json(result.rows, result.reference))
    if "svg" in formats:
        paths["svg"] = os.path.join(out_dir, "results.svg")
        with open(paths["svg"], "w", encoding="utf-8", newline="\n") as handle:
            handle.write(render_svg(result.rows))
    return paths


def _box10(lo, hi):
    return {"kind": "uniform_box", "lo": lo, "hi": hi, "dim": 10}


_PRESET_SPECS = {
    "fig1": {
        "function": {"kind": "quadratic1d"},
        "distribution": {"kind": "uniform_box", "lo": 0.0, "hi": 1.0, "dim": 1},
        "sampler": {"kind": "simple"},
        "fitters": [{"kind": "linear"}],
        "folds": "loo",
        "alpha_methods": ["original", "improved"],
        "fit_combos": "each",
        "n_grid": [4, 5, 6, 8, 12, 16, 24, 32],
        "trials": 20000,
        "seed": 101,
        "out": "results_fig1",
    },
    "fig2": {
        "function": {"kind": "rosenbrock", "dim": 10},
        "distribution": _box10(-3.0, 3.0),
        "sampler": {"kind": "simple"},
        "fitters": [{"kind": "poly3"}, {"kind": "fourier"}],
        "folds": 5,
        "alpha_methods": ["original"],
        "fit_combos": "each+all",
        "n_grid": [40, 80, 160, 320, 640],
        "trials": 300,
        "seed": 102,
        "out": "results_fig2",
    },
    "fig3": {
        "function": {"kind": "rosenbrock", "dim": 10},
        "distribution": _box10(-3.0, 3.0),
        "sampler": {"kind": "latin_hypercube"},
        "fitters": [{"kind": "poly3"}],
        "folds": 5,
        "alpha_methods": ["original"],
        "variant": "bootstrap",
        "bootstrap_repeats": 10,
        "n_grid": [40, 160, 640],
        "trials": 300,
        "seed": 103,
        "out": "results_fig3",
    },
    "fig4": {
        "function": {"kind": "rosenbrock", "dim": 10},
        "distribution": {"kind": "gaussian_iid", "mu": 0.0, "sigma": 2.0, "dim": 10},
        "sampler": {"kind": "halton", "scramble": True, "burn_in": "random"},
        "fitters": [{"kind": "poly3"}],
        "folds": 5,
        "alpha_methods": ["original"],
        "variant": "bootstrap",
        "bootstrap_repeats": 10,
        "n_grid": [40, 160, 640],
        "trials": 300,
        "seed": 104,
        "out": "results_fig4",
    },
    "fig5": {
        "function": {"kind": "rosenbrock", "dim": 10},
        "distribution": _box10(-3.0, 3.0),
        "sampler": {
            "kind": "importance",
            "proposal": {"kind": "product_quadratic", "lo": -3.0, "hi": 3.0, "dim": 10},
        },
        "fitters": [{"kind": "poly3"}],
        "folds": 5,
        "alpha_methods": ["original"],
        "variant": "importance",
        "n_mean": 300,
        "n_grid": [80, 160, 320],
        "trials": 300,
        "seed": 105,
        "out": "results_fig5",
    },
    "fig6": {
        "function": {"kind": "four_peaks", "dim": 16, "threshold": 2},
        "distribution": {"kind": "uniform_bits", "dim": 16},
        "sampler": {"kind": "simple"},
        "fitters": [{"kind": "walsh", "max_order": 2}],
        "folds": 5,
        "alpha_methods": ["original"],
        "n_grid": [50, 100, 200, 400],
        "trials": 500,
        "seed": 106,
        "out": "results_fig6",
    },
}

PRESET_DESCRIPTIONS = {
    "fig1": "1-d quadratic, uniform, linear surrogate, leave-one-out, "
            "both alpha rules",
    "fig2": "10-d Rosenbrock, uniform box, cubic + Fourier surrogates and "
            "their joint blend",
    "fig3": "10-d Rosenbrock, Latin hypercube sampling, with and without "
            "the bootstrap repair",
    "fig4": "10-d Rosenbrock, Gaussian via scrambled Halton, with and "
            "without the bootstrap repair",
    "fig5": "10-d Rosenbrock, importance-sampled from an edge-heavy "
            "proposal",
    "fig6": "16-bit Four Peaks, uniform bits, pairwise Walsh surrogate",
}


def preset_names():
    return list(_PRESET_SPECS)


def preset_config(name):
    """Named study configuration, desk-scale.  Unknown names list the
    valid ones."""
    if name not in _PRESET_SPECS:
        valid = ", ".join(preset_names())
        raise ConfigError(f"unknown preset {name!r}; valid presets: {valid}")
    return load_config(copy.deepcopy(_PRESET_SPECS[name]))
