"""Scenario runner: configs, presets, result tables and the run_* entry points.

Configuration is flat INI text with one section per scenario kind
(``[oscillator]``, ``[bloch]``, ``[spectrum]``, ``[sweep]``). Every key has a
default; unknown keys or sections raise ConfigError so typos never pass
silently. Named presets resolve to the parameter sets quoted in the source
figures.

Results are returned as ResultTable objects: a float matrix with named
columns plus a metadata block carrying the fully resolved configuration,
package version and the numerical tolerances in force. Tables serialize to
tab-separated text with a '#'-commented header (and optionally to a JSON
tree); floats are written with repr() so identical runs produce
bitwise-identical files and the metadata parses back to the exact config.
"""

from __future__ import annotations

import configparser
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .errors import ConfigError
from . import lattice as lat
from . import spectrum as spec
from . import cat as catmod
from . import bpm as bpmmod

SCENARIO_KINDS = ("oscillator", "bloch", "spectrum", "sweep")

# index gradient reproducing a given Bloch frequency (inverse centimeters)
# at the default wavelength and period: F = omega_B / (k a)
def gradient_for_frequency(omega_b: float, wavelength: float = 1.44e-4,
                           period: float = 13.0e-4) -> float:
    k = 2.0 * math.pi / wavelength
    return omega_b / (k * period)


_SQRT2 = math.sqrt(2.0)

# (type tag, default, documentation); a None default is resolved in
# _resolve_<kind> below before the config is considered complete.
SCHEMAS: Dict[str, Dict[str, Tuple[str, object, str]]] = {
    "oscillator": {
        "kappa": ("float", 1.0, "bulk hopping rate (inverse z unit)"),
        "kappa0": ("float", 0.2, "boundary-defect coupling"),
        "sigma0": ("float", 0.0, "boundary-defect detuning"),
        "alpha0": ("complex", None, "cat amplitude (default 3)"),
        "beta0": ("complex", None, "second amplitude (default -alpha0)"),
        "z_max": ("float", 20.0, "propagation range in kappa z"),
        "num_z": ("int", 2001, "number of z samples"),
        "num_sites": ("int", 0, "chain truncation; 0 = automatic"),
    },
    "bloch": {
        "wavelength": ("float", 1.44e-4, "vacuum wavelength, cm"),
        "substrate_index": ("float", 2.1381, "substrate refractive index"),
        "period": ("float", 13.0e-4, "array period, cm"),
        "waveguide_width": ("float", 11.5e-4, "channel width, cm"),
        "peak_contrast": ("float", 1.0e-3, "peak index contrast"),
        "gradient": ("float", None, "index gradient F, 1/cm "
                                    "(default: Bloch frequency 3.61/cm)"),
        "num_guides": ("int", 79, "number of array channels"),
        "device_length": ("float", 5.0, "propagation length, cm"),
        "x_half_width": ("float", 0.06144, "half transverse window, cm"),
        "num_points": ("int", 2048, "transverse grid size (power of two)"),
        "dz": ("float", 1.0e-4, "longitudinal step, cm"),
        "absorber_width": ("float", 0.0092, "edge absorber width, cm"),
        "absorber_strength": ("float", 3000.0, "peak absorption, 1/cm"),
        "alpha0": ("complex", None, "cat amplitude (balanced cat)"),
        "mean_photons": ("float", None, "sets alpha0 = sqrt(mean_photons); "
                                        "mutually exclusive with alpha0"),
        "sample_stride": ("int", 20, "table keeps every n-th z sample"),
        "store_map": ("bool", False, "also record field snapshots"),
        "map_stride": ("int", 200, "steps between field snapshots"),
    },
    "spectrum": {
        "kappa": ("float", 1.0, "bulk hopping rate"),
        "kappa0_values": ("str", "0.2,1.4142135623730951,3.0",
                          "comma-separated defect couplings"),
        "sigma0_values": ("str", "0.0,4.0", "comma-separated detunings"),
        "threshold_tol": ("float", 1e-4, "bisection tolerance for the "
                                         "detachment threshold"),
    },
    "sweep": {
        "scenario": ("str", "oscillator", "scenario kind to sweep"),
        "parameter": ("str", "kappa0", "key of the swept parameter"),
        "values": ("str", "0.2,1.4142135623730951,3.0",
                   "comma-separated parameter values"),
    },
}

# numerical tolerances recorded in every metadata block
TOLERANCES = {
    "oscillator": {"unitarity": 1e-10, "survival_bound": 1e-8},
    "bloch": {"norm_conservation": 1e-8, "survival_bound": 1e-8},
    "spectrum": {"pole_residual": 1e-10, "threshold": 1e-4},
    "sweep": {},
}

# Fig. 2 presets quote the caption's field values verbatim as the gradient.
# With this lattice depth those tilts are far beyond the oscillation regime
# (the ladder spacing k F a exceeds the band width), so the trace collapses
# with no revivals; the bo-* presets reinterpret the same numbers as Bloch
# frequencies k F a in 1/cm, which lands in the few-revival regime the
# figure actually displays.
PRESETS: Dict[str, Tuple[str, Dict[str, object]]] = {
    "fig1-curve1": ("oscillator", {"kappa0": 0.2, "sigma0": 0.0}),
    "fig1-curve2": ("oscillator", {"kappa0": _SQRT2, "sigma0": 0.0}),
    "fig1-curve3": ("oscillator", {"kappa0": 3.0, "sigma0": 0.0}),
    "fig1-curve4": ("oscillator", {"kappa0": _SQRT2, "sigma0": 4.0}),
    "fig2c-curve1": ("bloch", {"gradient": 3.61, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 9.0}),
    "fig2c-curve2": ("bloch", {"gradient": 7.22, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 9.0}),
    "fig2c-curve3": ("bloch", {"gradient": 10.83, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 9.0}),
    "fig2d-curve1": ("bloch", {"gradient": 3.61, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 9.0}),
    "fig2d-curve2": ("bloch", {"gradient": 3.61, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 36.0}),
    "fig2d-curve3": ("bloch", {"gradient": 3.61, "device_length": 0.35,
                               "num_points": 4096, "dz": 1.2e-5,
                               "mean_photons": 144.0}),
    "bo-curve1": ("bloch", {"gradient": gradient_for_frequency(3.61),
                            "device_length": 6.6, "mean_photons": 9.0}),
    "bo-curve2": ("bloch", {"gradient": gradient_for_frequency(7.22),
                            "device_length": 3.3, "mean_photons": 9.0}),
    "bo-curve3": ("bloch", {"gradient": gradient_for_frequency(10.83),
                            "device_length": 2.4, "mean_photons": 9.0}),
    "fig1-panel": ("spectrum", {"kappa0_values": f"0.2,{_SQRT2!r},3.0",
                                "sigma0_values": "0.0,4.0"}),
}


@dataclass
class ScenarioConfig:
    """A scenario kind plus its fully resolved parameter dictionary."""

    kind: str
    params: Dict[str, object]

    def get(self, key):
        return self.params[key]


@dataclass
class ResultTable:
    """Named float columns plus a self-describing metadata block."""

    columns: List[str]
    data: np.ndarray
    metadata: Dict[str, str]
    extras: Optional[dict] = field(default=None, compare=False)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def to_tsv_text(self) -> str:
        lines = [f"# {k} = {v}" for k, v in self.metadata.items()]
        lines.append("# columns: " + "\t".join(self.columns))
        for row in self.data:
            lines.append("\t".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    def to_tree_text(self) -> str:
        payload = {
            "metadata": dict(self.metadata),
            "columns": {
                name: [float(v) for v in self.data[:, i]]
                for i, name in enumerate(self.columns)
            },
        }
        return json.dumps(payload, indent=2)

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_tsv_text())


def read_table(path: str) -> ResultTable:
    """Parse a table written by ResultTable.write (exact round-trip)."""
    metadata: Dict[str, str] = {}
    columns: List[str] = []
    rows: List[List[float]] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# columns: "):
                columns = line[len("# columns: "):].split("\t")
            elif line.startswith("# "):
                key, _, value = line[2:].partition(" = ")
                metadata[key] = value
            else:
                rows.append([float(tok) for tok in line.split("\t")])
    data = np.array(rows) if rows else np.empty((0, len(columns)))
    return ResultTable(columns=columns, data=data, metadata=metadata)


def _parse_value(tag: str, raw):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if tag == "float":
            return float(raw)
        if tag == "int":
            return int(raw)
        if tag == "complex":
            return complex(raw)
        if tag == "bool":
            low = raw.lower()
            if low in ("true", "yes", "on", "1"):
                return True
            if low in ("false", "no", "off", "0"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        return raw
    except ValueError as exc:
        raise ConfigError(f"cannot parse {raw!r} as {tag}: {exc}") from exc


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    return repr(value)


def _resolve_oscillator(params: dict) -> dict:
    if params["alpha0"] is None:
        params["alpha0"] = complex(3.0)
    if params["beta0"] is None:
        params["beta0"] = -params["alpha0"]
    if params["kappa"] <= 0:
        raise ConfigError("kappa must be positive")
    if params["kappa0"] < 0:
        raise ConfigError("kappa0 must be >= 0")
    if params["z_max"] <= 0 or params["num_z"] < 2:
        raise ConfigError("z_max must be positive and num_z >= 2")
    if params["num_sites"] < 0:
        raise ConfigError("num_sites must be >= 0 (0 selects automatic)")
    return params


def _resolve_bloch(params: dict) -> dict:
    if params["alpha0"] is not None and params["mean_photons"] is not None:
        raise ConfigError("give either alpha0 or mean_photons, not both")
    if params["alpha0"] is None:
        nbar = 9.0 if params["mean_photons"] is None else params["mean_photons"]
        if nbar < 0:
            raise ConfigError("mean_photons must be >= 0")
        params["alpha0"] = complex(math.sqrt(nbar))
    params.pop("mean_photons")
    if params["gradient"] is None:
        params["gradient"] = gradient_for_frequency(
            3.61, params["wavelength"], params["period"]
        )
    if params["sample_stride"] < 1 or params["map_stride"] < 1:
        raise ConfigError("strides must be >= 1")
    return params


def _resolve_spectrum(params: dict) -> dict:
    for key in ("kappa0_values", "sigma0_values"):
        values = _parse_float_list(params[key], key)
        params[key] = ",".join(repr(v) for v in values)
    return params


def _resolve_sweep(params: dict) -> dict:
    if params["scenario"] not in ("oscillator", "bloch"):
        raise ConfigError(
            f"sweep scenario must be oscillator or bloch, got "
            f"{params['scenario']!r}"
        )
    schema = SCHEMAS[params["scenario"]]
    if params["parameter"] not in schema:
        raise ConfigError(
            f"unknown sweep parameter {params['parameter']!r} for "
            f"scenario {params['scenario']!r}"
        )
    values = params["values"]
    if (isinstance(values, str) and not values.strip()) or \
            (not isinstance(values, str) and len(values) == 0):
        raise ConfigError("sweep values must be non-empty")
    return params


_RESOLVERS = {
    "oscillator": _resolve_oscillator,
    "bloch": _resolve_bloch,
    "spectrum": _resolve_spectrum,
    "sweep": _resolve_sweep,
}


def _parse_float_list(raw, key: str) -> List[float]:
    try:
        if isinstance(raw, str):
            values = [float(tok) for tok in raw.split(",") if tok.strip()]
        else:
            values = [float(v) for v in raw]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"cannot parse {key}: {exc}") from exc
    if not values:
        raise ConfigError(f"{key} must contain at least one value")
    return values


def build_config(kind: str, overrides: Optional[dict] = None,
                 base: Optional["ScenarioConfig"] = None) -> ScenarioConfig:
    """Resolve overrides against the schema defaults for a scenario kind."""
    if kind not in SCENARIO_KINDS:
        raise ConfigError(
            f"unknown scenario {kind!r}; expected one of {SCENARIO_KINDS}"
        )
    schema = SCHEMAS[kind]
    overrides = dict(overrides or {})
    params: Dict[str, object] = {}
    for key, (tag, default, _doc) in schema.items():
        if key in overrides:
            params[key] = _parse_value(tag, overrides.pop(key))
        else:
            params[key] = default
    if overrides:
        bad = ", ".join(sorted(overrides))
        raise ConfigError(f"unknown key(s) for [{kind}]: {bad}")
    params = _RESOLVERS[kind](params)
    if kind == "sweep":
        if base is None:
            base = build_config(params["scenario"])
        if base.kind != params["scenario"]:
            raise ConfigError(
                f"sweep base section is [{base.kind}] but scenario = "
                f"{params['scenario']!r}"
            )
        params["base"] = base
    return ScenarioConfig(kind=kind, params=params)


def load_config_file(path: str, kind: str) -> ScenarioConfig:
    """Read one scenario from an INI file, validating every section."""
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";")
    )
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    for section in parser.sections():
        if section not in SCENARIO_KINDS:
            raise ConfigError(
                f"unknown section [{section}]; expected one of {SCENARIO_KINDS}"
            )
        schema = SCHEMAS[section]
        for key in parser[section]:
            if key not in schema:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
    if kind not in parser:
        raise ConfigError(f"config file {path} has no [{kind}] section")
    overrides = dict(parser[kind])
    base = None
    if kind == "sweep":
        base_kind = overrides.get("scenario", SCHEMAS["sweep"]["scenario"][1])
        base_overrides = dict(parser[base_kind]) if base_kind in parser else {}
        base = build_config(base_kind, base_overrides)
    return build_config(kind, overrides, base=base)


def load_preset(name: str, expected_kind: Optional[str] = None) -> ScenarioConfig:
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r}; available: {known}")
    kind, overrides = PRESETS[name]
    if expected_kind is not None and kind != expected_kind:
        raise ConfigError(
            f"preset {name!r} is a {kind} scenario, not {expected_kind}"
        )
    return build_config(kind, dict(overrides))


def _metadata(config: ScenarioConfig, results: Optional[dict] = None,
              notes: Optional[dict] = None) -> Dict[str, str]:
    meta: Dict[str, str] = {
        "scenario": config.kind,
        "version": __version__,
    }
    for key, value in config.params.items():
        if key == "base":
            for bkey, bvalue in value.params.items():
                meta[f"base.{bkey}"] = _format_value(bvalue)
        else:
            meta[f"config.{key}"] = _format_value(value)
    for key, value in TOLERANCES[config.kind].items():
        meta[f"tolerance.{key}"] = _format_value(value)
    for key, value in (notes or {}).items():
        meta[str(key)] = str(value)
    for key, value in (results or {}).items():
        meta[f"result.{key}"] = _format_value(value)
    return meta


def config_from_metadata(meta: Dict[str, str]) -> ScenarioConfig:
    """Rebuild the exact resolved config a table was produced from."""
    kind = meta.get("scenario")
    if kind not in SCENARIO_KINDS:
        raise ConfigError(f"metadata names unknown scenario {kind!r}")
    overrides = {}
    base_overrides = {}
    for key, raw in meta.items():
        if key.startswith("config."):
            overrides[key[len("config."):]] = raw
        elif key.startswith("base."):
            base_overrides[key[len("base."):]] = raw
    base = None
    if kind == "sweep":
        base_kind = overrides.get("scenario", "oscillator")
        base = build_config(base_kind, base_overrides)
    return build_config(kind, overrides, base=base)


def _as_real_trace(G: np.ndarray) -> np.ndarray:
    # complex-amplitude cats produce a complex G; tables carry |G|
    if np.iscomplexobj(G):
        return np.abs(G)
    return G


def run_oscillator(config: ScenarioConfig) -> ResultTable:
    """Boundary-defect decay and cat coherence on the tight-binding chain."""
    p = config.params
    kappa = p["kappa"]
    num_sites = p["num_sites"]
    if num_sites == 0:
        num_sites = lat.required_truncation(kappa, p["z_max"])
    model = lat.build_defect_lattice(
        p["kappa0"], p["sigma0"], kappa=kappa, num_sites=num_sites
    )
    z = np.linspace(0.0, p["z_max"], p["num_z"])
    run = lat.propagate(model, z)
    bath = spec.BlochBath(kappa=kappa, kappa0=p["kappa0"], sigma0=p["sigma0"])
    if abs(p["sigma0"]) < 2.0 * kappa * (1.0 - 1e-9):
        rate = spec.golden_rule_rate(bath)
    else:
        rate = None
    cat = catmod.CatState(p["alpha0"], p["beta0"])
    trace = catmod.coherence_factor(cat, run.survival, z_grid=z, markov_rate=rate)
    bound = spec.find_bound_states(bath)
    pred = spec.asymptotics(bound)

    G = _as_real_trace(trace.G)
    with np.errstate(divide="ignore"):
        lnG = np.log(G)
    if trace.markovian_reference is not None:
        markov = _as_real_trace(trace.markovian_reference)
    else:
        markov = np.full_like(G, np.nan)
    results = {
        "bound_count": bound.count,
        "energies": ",".join(repr(float(e)) for e in bound.energies),
        "residues": ",".join(repr(float(r)) for r in bound.residues),
        "plateau": pred.plateau,
        "revival_period": (
            pred.revival_period if pred.revival_period is not None else float("nan")
        ),
        "markov_rate": rate if rate is not None else float("nan"),
        "num_sites": num_sites,
    }
    meta = _metadata(config, results, notes={"z_unit": "1/kappa"})
    data = np.column_stack([z, trace.survival_prob, G, lnG, markov])
    return ResultTable(
        columns=["z", "survival_prob", "G", "ln_G", "markov_reference"],
        data=data,
        metadata=meta,
    )


def _bloch_objects(p: dict):
    model = bpmmod.BpmModel(
        wavelength=p["wavelength"],
        substrate_index=p["substrate_index"],
        period=p["period"],
        waveguide_width=p["waveguide_width"],
        peak_contrast=p["peak_contrast"],
        gradient=p["gradient"],
        num_guides=p["num_guides"],
        device_length=p["device_length"],
    )
    grid = bpmmod.BpmGrid(
        x_min=-p["x_half_width"],
        x_max=p["x_half_width"],
        num_points=p["num_points"],
        dz=p["dz"],
        absorber_width=p["absorber_width"],
        absorber_strength=p["absorber_strength"],
    )
    return model, grid


def run_bloch(config: ScenarioConfig) -> ResultTable:
    """BPM propagation in the tilted array and the resulting G(z)."""
    p = config.params
    try:
        model, grid = _bloch_objects(p)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    mode = bpmmod.solve_fundamental_mode(model, grid)
    store_every = p["map_stride"] if p["store_map"] else None
    run = bpmmod.bpm_propagate(model, grid, mode, store_every=store_every)
    cat = catmod.CatState(p["alpha0"], -p["alpha0"])
    trace = catmod.coherence_factor(cat, run.survival, z_grid=run.z_grid)
    G_full = _as_real_trace(trace.G)

    results: Dict[str, object] = {
        "mode_constant": mode.propagation_constant,
        "mean_photons": cat.mean_photons,
    }
    notes = {"z_unit": "cm"}
    if model.gradient > 0.0:
        results["bloch_period"] = bpmmod.bloch_period(model)
        try:
            damping = bpmmod.zener_damping(run.z_grid, run.survival)
            results["revival_count"] = len(damping.revival_heights)
            results["revival_spacing"] = damping.mean_spacing
            results["damping_ratio"] = damping.damping_ratio
            first = damping.revival_positions[0]
            idx = int(np.argmin(np.abs(run.z_grid - first)))
            results["G_first_revival"] = float(G_full[idx])
        except ValueError as exc:
            results["revival_count"] = 0
            notes["revival_note"] = str(exc).replace("\n", " ")

    stride = p["sample_stride"]
    keep = np.arange(0, len(run.z_grid), stride)
    if keep[-1] != len(run.z_grid) - 1:
        keep = np.append(keep, len(run.z_grid) - 1)
    G = G_full[keep]
    with np.errstate(divide="ignore"):
        lnG = np.log(G)
    data = np.column_stack(
        [run.z_grid[keep], run.survival_prob[keep], G, lnG, run.norm[keep]]
    )
    meta = _metadata(config, results, notes=notes)
    extras = None
    if run.fields is not None:
        # intensity map analogous to the array-excitation figure; amplitudes
        # are max-normalized because the figure's color scale is arbitrary
        amp = np.abs(run.fields)
        peak = amp.max()
        extras = {
            "map_z": run.field_z,
            "map_x": run.x,
            "map_amplitude": amp / (peak if peak > 0 else 1.0),
            "map_normalization": "max-normalized amplitude",
        }
    return ResultTable(
        columns=["z", "survival_prob", "G", "ln_G", "norm"],
        data=data,
        metadata=meta,
        extras=extras,
    )


def run_spectrum(config: ScenarioConfig) -> ResultTable:
    """Bound-state census over a (kappa0, sigma0) grid."""
    p = config.params
    kappa = p["kappa"]
    kappa0s = _parse_float_list(p["kappa0_values"], "kappa0_values")
    sigma0s = _parse_float_list(p["sigma0_values"], "sigma0_values")
    thresholds = {}
    for s0 in sigma0s:
        try:
            thresholds[s0] = spec.bound_state_threshold(
                s0, kappa, side="upper", tol=p["threshold_tol"]
            )
        except ValueError:
            thresholds[s0] = float("nan")
    rows = []
    for s0 in sigma0s:
        for k0 in kappa0s:
            bs = spec.find_bound_states(spec.BlochBath(kappa, k0, s0))
            pred = spec.asymptotics(bs)
            e_lo = bs.energies[0] if bs.count > 0 else float("nan")
            e_hi = bs.energies[-1] if bs.count > 1 else float("nan")
            r_lo = bs.residues[0] if bs.count > 0 else float("nan")
            r_hi = bs.residues[-1] if bs.count > 1 else float("nan")
            thr = thresholds[s0]
            near = float(abs(k0 - thr) <= max(p["threshold_tol"] * 10.0, 1e-3))
            rows.append([
                k0, s0, float(bs.count), e_lo, e_hi, r_lo, r_hi,
                pred.plateau,
                pred.revival_period if pred.revival_period is not None
                else float("nan"),
                thr, near,
            ])
    meta = _metadata(config, notes={"energy_unit": "kappa"})
    return ResultTable(
        columns=[
            "kappa0", "sigma0", "bound_count", "energy_low", "energy_high",
            "residue_low", "residue_high", "plateau", "revival_period",
            "threshold_kappa0", "at_threshold",
        ],
        data=np.array(rows),
        metadata=meta,
    )


_RUNNERS = {}


def run_sweep(config: ScenarioConfig, threads: int = 1):
    """Run the base scenario once per parameter value, concurrently.

    Returns (point_tables, summary) where point_tables follow the input
    order of `values` regardless of thread scheduling, keeping the output
    deterministic.
    """
    p = config.params
    base: ScenarioConfig = p["base"]
    kind = p["scenario"]
    tag = SCHEMAS[kind][p["parameter"]][0]
    raw = p["values"]
    if isinstance(raw, str):
        raw = [tok.strip() for tok in raw.split(",") if tok.strip()]
    values = [_parse_value(tag, tok) for tok in raw]

    def run_point(value):
        overrides = dict(base.params)
        # resolved companions must follow the swept key, not pin it
        if kind == "bloch" and p["parameter"] == "mean_photons":
            overrides.pop("alpha0", None)
        if kind == "oscillator" and p["parameter"] == "alpha0":
            overrides.pop("beta0", None)
        overrides[p["parameter"]] = value
        point_cfg = build_config(kind, overrides)
        return _RUNNERS[kind](point_cfg)

    if threads < 1:
        raise ConfigError("threads must be >= 1")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        tables = list(pool.map(run_point, values))

    rows = []
    for value, table in zip(values, tables):
        s2 = table.column("survival_prob")
        G = table.column("G")
        row = [
            float(np.real(value)), float(s2[-1]), float(G[-1]),
        ]
        if kind == "oscillator":
            row.append(float(table.metadata["result.bound_count"]))
            row.append(float(table.metadata["result.plateau"]))
        else:
            row.append(float(table.metadata.get("result.revival_spacing",
                                                "nan")))
            row.append(float(table.metadata.get("result.damping_ratio",
                                                "nan")))
            row.append(float(table.metadata.get("result.G_first_revival",
                                                "nan")))
        rows.append(row)
    if kind == "oscillator":
        columns = [p["parameter"], "final_survival_prob", "final_G",
                   "bound_count", "plateau"]
    else:
        columns = [p["parameter"], "final_survival_prob", "final_G",
                   "revival_spacing", "damping_ratio", "G_first_revival"]
    summary = ResultTable(
        columns=columns,
        data=np.array(rows),
        metadata=_metadata(config),
    )
    return tables, summary


_RUNNERS.update({
    "oscillator": run_oscillator,
    "bloch": run_bloch,
    "spectrum": run_spectrum,
})
