"""Flat ``key = value`` run configuration.

Units live in key names and are converted to SI once, here. Values may be
plain numbers or products/quotients with ``pi``, e.g. ``2*pi*1e7``.
"""

from dataclasses import dataclass
from importlib import resources
import json
import math
import re

from .errors import ConfigError, ParameterError
from .params import PhysicalParams
from .sweep import SweepSpec

# config key -> (PhysicalParams field, factor to SI); None factor = scaled by omega_m
PARAM_KEYS = {
    "power_mw": ("P", 1e-3),
    "wavelength_nm": ("lambda_", 1e-9),
    "mass_ng": ("m", 1e-12),
    "omega_m_rad_s": ("omega_m", 1.0),
    "kappa_rad_s": ("kappa", 1.0),
    "gamma_m_rad_s": ("gamma_m", 1.0),
    "gamma_a_rad_s": ("gamma_a", 1.0),
    "g_a_rad_s": ("G_a", 1.0),
    "theta_rad": ("theta", 1.0),
    "length_mm": ("L", 1e-3),
    "temperature_k": ("T", 1.0),
    "squeeze_r": ("r", 1.0),
    "squeeze_phi": ("phi", 1.0),
    "delta_over_omega_m": ("Delta", None),
    "delta_a_over_omega_m": ("Delta_a", None),
}
FIELD_TO_KEY = {fld: key for key, (fld, _) in PARAM_KEYS.items()}

SWEEP_KEYS = (
    "sweep_axis",
    "sweep_min",
    "sweep_max",
    "sweep_count",
    "sweep_scale",
    "sweep_quantities",
    "sweep_normalize_axis",
    "sweep_workers",
)
OUTPUT_KEYS = ("output_path", "output_format")
ALL_KEYS = tuple(PARAM_KEYS) + SWEEP_KEYS + OUTPUT_KEYS

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def parse_number(key, text):
    """Evaluate ``a*b/c`` with real literals and ``pi``; nothing else is accepted."""
    tokens = re.split(r"([*/])", text.replace(" ", ""))
    value, op = None, "*"
    for i, tok in enumerate(tokens):
        if i % 2:
            op = tok
            continue
        if tok == "pi":
            x = math.pi
        elif _NUMBER.match(tok):
            x = float(tok)
        else:
            raise ConfigError(key, f"cannot parse number {text!r}")
        value = x if value is None else (value * x if op == "*" else value / x)
    if value is None or not math.isfinite(value):
        raise ConfigError(key, f"cannot parse number {text!r}")
    return value


def _parse_bool(key, text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(key, f"expected a boolean, got {text!r}")


def read_pairs(text, source="<config>"):
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ALL_KEYS:
            raise ConfigError(key, "unknown configuration key")
        if key in pairs:
            raise ConfigError(key, "duplicate key")
        pairs[key] = value
    return pairs


def default_pairs():
    text = resources.files("ringcav").joinpath("data/default.cfg").read_text()
    return read_pairs(text, "default.cfg")


@dataclass
class RunConfig:
    params: PhysicalParams
    resolved: dict
    sweep: SweepSpec = None
    sweep_workers: int = 1
    output_path: str = None
    output_format: str = "csv"


def load_pairs(path):
    """Key/value pairs from a flat config file or from a run manifest (JSON)."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            cfg = json.loads(text)["config"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(str(path), f"not a run manifest: {exc}") from None
        return {k: (v if isinstance(v, str) else repr(v)) if not isinstance(v, bool) else str(v).lower()
                for k, v in cfg.items()}
    return read_pairs(text, str(path))


def build_config(pairs, overrides=None):
    """Merge defaults, file pairs and ``key=value`` overrides, then convert to SI."""
    merged = dict(default_pairs())
    for src in (pairs or {}), (overrides or {}):
        for key, value in src.items():
            if key not in ALL_KEYS:
                raise ConfigError(key, "unknown configuration key")
            merged[key] = value

    resolved = {key: parse_number(key, merged[key]) for key in PARAM_KEYS}
    omega_m = resolved["omega_m_rad_s"]
    si = {}
    for key, (fld, factor) in PARAM_KEYS.items():
        si[fld] = resolved[key] * (omega_m if factor is None else factor)
    try:
        params = PhysicalParams(**si)
    except ParameterError as exc:
        key = FIELD_TO_KEY.get(exc.name, exc.name)
        raise ConfigError(key, str(exc).split(": ", 1)[-1]) from None

    cfg = RunConfig(params=params, resolved=resolved)
    if "output_path" in merged:
        cfg.output_path = resolved["output_path"] = merged["output_path"]
    if "output_format" in merged:
        fmt = merged["output_format"].strip().lower()
        if fmt not in ("csv", "json"):
            raise ConfigError("output_format", f"expected csv or json, got {fmt!r}")
        cfg.output_format = resolved["output_format"] = fmt

    present = [k for k in SWEEP_KEYS if k in merged]
    if present:
        for k in ("sweep_axis", "sweep_min", "sweep_max", "sweep_count"):
            if k not in merged:
                raise ConfigError(k, "required when a sweep section is present")
        sweep = {
            "sweep_axis": merged["sweep_axis"],
            "sweep_min": parse_number("sweep_min", merged["sweep_min"]),
            "sweep_max": parse_number("sweep_max", merged["sweep_max"]),
            "sweep_count": parse_number("sweep_count", merged["sweep_count"]),
            "sweep_scale": merged.get("sweep_scale", "linear").strip(),
            "sweep_normalize_axis": _parse_bool("sweep_normalize_axis", merged.get("sweep_normalize_axis", "false")),
            "sweep_workers": parse_number("sweep_workers", merged.get("sweep_workers", "1")),
        }
        qtext = merged.get("sweep_quantities", "")
        quantities = tuple(q.strip() for q in qtext.split(",") if q.strip())
        if quantities:
            sweep["sweep_quantities"] = ",".join(quantities)
        if sweep["sweep_count"] != int(sweep["sweep_count"]):
            raise ConfigError("sweep_count", "must be an integer")
        if sweep["sweep_workers"] != int(sweep["sweep_workers"]) or sweep["sweep_workers"] < 1:
            raise ConfigError("sweep_workers", "must be a positive integer")
        kwargs = dict(
            base=params,
            axis=sweep["sweep_axis"],
            min=sweep["sweep_min"],
            max=sweep["sweep_max"],
            count=int(sweep["sweep_count"]),
            scale=sweep["sweep_scale"],
            normalize_axis=sweep["sweep_normalize_axis"],
        )
        if quantities:
            kwargs["quantities"] = quantities
        try:
            cfg.sweep = SweepSpec(**kwargs)
        except ValueError as exc:
            raise ConfigError(_guess_sweep_key(str(exc)), str(exc)) from None
        sweep["sweep_count"] = int(sweep["sweep_count"])
        sweep["sweep_workers"] = int(sweep["sweep_workers"])
        cfg.sweep_workers = sweep["sweep_workers"]
        resolved.update(sweep)
    return cfg


def _guess_sweep_key(message):
    for word, key in (("axis", "sweep_axis"), ("count", "sweep_count"), ("scale", "sweep_scale"),
                      ("quantity", "sweep_quantities"), ("normalize", "sweep_normalize_axis")):
        if word in message:
            return key
    return "sweep_min/sweep_max"


def load_config(path=None, overrides=None):
    return build_config(load_pairs(path) if path else {}, overrides)
