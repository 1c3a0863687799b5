"""Run configuration. Values come from defaults, then an optional TOML file, then flags."""
from __future__ import annotations

import os
try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class VerifyConfig:
    nmax: int = 12               # |n| range for the line-bundle identities
    binomial_nmax: int = 50
    spectra_nmax: int = 100      # range of the invariant-part equivalence
    s3_kmax: int = 200
    d0_nmax: int = 400
    box: int = 8
    theta: float = 0.25
    margin: int = 2
    star_pairs: int = 20
    gauge_pairs: int = 10
    factor_degree: int = 3
    factor_weight: int = 3
    seed: int = 42
    table_id: int = 0            # 0 is the built-in derivation table

    def __post_init__(self):
        if self.nmax < 0 or self.binomial_nmax < 2 or self.spectra_nmax < 0:
            raise ValueError("nmax >= 0, binomial_nmax >= 2, spectra_nmax >= 0 required")
        if self.box < 1 or not 0 <= self.margin <= self.box:
            raise ValueError("box >= 1 and 0 <= margin <= box required")


@dataclass(frozen=True)
class SpectrumConfig:
    kmax: int = 4
    nmax: int = 4
    box: int = 4
    theta: float = 0.0
    fmt: str = "csv"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")


@dataclass(frozen=True)
class RunConfig:
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    spectrum: SpectrumConfig = field(default_factory=SpectrumConfig)


def default_seed() -> int:
    raw = os.environ.get("NCGKK_SEED", "42")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"NCGKK_SEED must be an integer, got {raw!r}") from None


def _apply(obj, values: dict):
    known = {f.name: f.type for f in fields(obj)}
    unknown = set(values) - set(known)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return replace(obj, **values)


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Read [verify] and [spectrum] sections; overrides (from flags) are applied to both where they fit."""
    cfg = RunConfig(VerifyConfig(seed=default_seed()), SpectrumConfig())
    if path:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        extra = set(data) - {"verify", "spectrum"}
        if extra:
            raise ValueError(f"unknown config sections: {sorted(extra)}")
        cfg = RunConfig(_apply(cfg.verify, data.get("verify", {})), _apply(cfg.spectrum, data.get("spectrum", {})))
    if overrides:
        ov = {k: v for k, v in overrides.items() if v is not None}
        vnames = {f.name for f in fields(VerifyConfig)}
        snames = {f.name for f in fields(SpectrumConfig)}
        vo = {k: v for k, v in ov.items() if k in vnames}
        if "box" in vo and "margin" not in vo:
            vo["margin"] = min(cfg.verify.margin, vo["box"])
        cfg = RunConfig(
            replace(cfg.verify, **vo),
            replace(cfg.spectrum, **{k: v for k, v in ov.items() if k in snames}),
        )
    return cfg
