"""Run configuration: a flat JSON document describing one scenario run.

Example document:

    {
      "profile": "802.11b@11",
      "downloads": [24, 20, 20, 16, 16, 16],
      "uploads": [24, 24, 24, 24, 20, 20, 16, 16, 16],
      "mode": "both",
      "replications": 30,
      "horizon_s": 20.0,
      "seed": 1,
      "collision_policy": "mixture",
      "fidelity": "paper",
      "n_max": 40,
      "format": "markdown"
    }

Windows are in packets.  Every run uses exactly one PHY profile; all
keys except profile and the window lists are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import CollisionPolicy, Scenario
from .phy import Fidelity, PhyProfile, builtin_profile

_MODES = ("analyze", "simulate", "both")
_FORMATS = ("csv", "json", "markdown")
_ALLOWED_KEYS = ("profile", "downloads", "uploads", "mode", "replications",
                 "horizon_s", "seed", "collision_policy", "fidelity",
                 "n_max", "format")


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


def _line_context(text: str, key: str) -> str:
    for lineno, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return f" (line {lineno}: {line.strip()})"
    return ""


def _check_windows(name: str, values) -> tuple[int, ...]:
    if not isinstance(values, list):
        raise ConfigError(f"{name} must be a list of window sizes")
    out = []
    for w in values:
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise ConfigError(f"{name} windows must be integers >= 1, "
                              f"got {w!r}")
        out.append(w)
    return tuple(out)


@dataclass(frozen=True)
class RunConfig:
    """Validated controls for one analysis and/or simulation run."""

    profile: str
    downloads: tuple[int, ...] = ()
    uploads: tuple[int, ...] = ()
    mode: str = "both"
    replications: int = 30
    horizon_s: float = 20.0
    seed: int = 1
    collision_policy: CollisionPolicy = CollisionPolicy.MIXTURE
    fidelity: Fidelity = Fidelity.PAPER
    n_max: int = 40
    output_format: str = "markdown"

    def __post_init__(self):
        builtin_profile(self.profile)
        if not self.downloads and not self.uploads:
            raise ConfigError("scenario needs at least one connection")
        _check_windows("downloads", list(self.downloads))
        _check_windows("uploads", list(self.uploads))
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {_MODES}")
        if isinstance(self.replications, bool) or self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if not self.horizon_s > 0:
            raise ConfigError("horizon_s must be positive")
        if isinstance(self.seed, bool) or self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if self.n_max < 10:
            raise ConfigError("n_max must be >= 10")
        if self.output_format not in _FORMATS:
            raise ConfigError(f"format must be one of {_FORMATS}")

    @property
    def scenario(self) -> Scenario:
        return Scenario.from_windows(self.downloads, self.uploads)

    @property
    def phy(self) -> PhyProfile:
        return builtin_profile(self.profile)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed config: {exc.msg} "
                          f"(line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    for key in doc:
        if key not in _ALLOWED_KEYS:
            raise ConfigError(f"unknown key {key!r}"
                              + _line_context(text, key))
    if "profile" not in doc:
        raise ConfigError("missing required key 'profile'")

    kwargs: dict = {"profile": doc["profile"]}
    try:
        if not isinstance(kwargs["profile"], str):
            raise ConfigError("profile must be a selector string")
        builtin_profile(kwargs["profile"])
    except ValueError as exc:
        raise ConfigError(str(exc) + _line_context(text, "profile")) from exc

    for key in ("downloads", "uploads"):
        if key in doc:
            try:
                kwargs[key] = _check_windows(key, doc[key])
            except ConfigError as exc:
                raise ConfigError(str(exc) + _line_context(text, key)) from exc
    if not kwargs.get("downloads") and not kwargs.get("uploads"):
        raise ConfigError("scenario needs at least one connection"
                          + _line_context(text, "downloads"))

    def _take(key, kind, convert=None):
        if key not in doc:
            return
        value = doc[key]
        if kind is not None and (isinstance(value, bool)
                                 or not isinstance(value, kind)):
            raise ConfigError(f"{key} has the wrong type"
                              + _line_context(text, key))
        try:
            converted = convert(value) if convert else value
        except ValueError as exc:
            raise ConfigError(str(exc) + _line_context(text, key)) from exc
        kwargs["output_format" if key == "format" else key] = converted

    try:
        _take("mode", str)
        _take("replications", int)
        _take("horizon_s", (int, float), float)
        _take("seed", int)
        _take("collision_policy", str, CollisionPolicy)
        _take("fidelity", str, Fidelity)
        _take("n_max", int)
        _take("format", str)
        return RunConfig(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def render_config(config: RunConfig) -> str:
    """Canonical document form; parse_config(render_config(c)) == c."""
    doc = {
        "profile": config.profile,
        "downloads": list(config.downloads),
        "uploads": list(config.uploads),
        "mode": config.mode,
        "replications": config.replications,
        "horizon_s": config.horizon_s,
        "seed": config.seed,
        "collision_policy": config.collision_policy.value,
        "fidelity": config.fidelity.value,
        "n_max": config.n_max,
        "format": config.output_format,
    }
    return json.dumps(doc, indent=2) + "\n"
