#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Settings shared by the command line, the web API and the campaigns
"""

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Optional

from errors import ConfigError

# Settings
REPORTS_DIR = Path(os.environ.get("WALG_REPORTS_DIR", "reports"))
DEFAULT_BUDGET = int(os.environ.get("WALG_BUDGET", 10 ** 6))
DEFAULT_TRUNCATION = 6
DEFAULT_SEED = 0
PORT = int(os.environ.get("PORT", 5000))
PRESENTATION_CACHE_SIZE = int(os.environ.get("WALG_PRESENTATION_CACHE", 64))
API_MAX_RANK = int(os.environ.get("WALG_API_MAX_RANK", 6))

VARIANTS = ("standard", "bar")
FORMATS = ("text", "json")

# Campaign name -> short description
CAMPAIGNS: Dict[str, str] = {
    "appendix-sl4": "sl4 inverse reduction embedding reproduces the affine brackets",
    "tilde": "tilded Pi/ghost/Heisenberg fields and their inversion",
    "s-equals-stilde": "Wakimoto screenings unchanged by the tilde rewrite",
    "kernels": "screening kernels contain the free-field images",
    "brst": "BRST differential squares to zero and L is conformal",
    "central-charges": "central charge formulas agree",
    "engine-axioms": "randomized skew-symmetry, Jacobi, oracle, confluence and zero-mode derivative checks",
    "chain": "Pi and ghost counts along the hook chain",
}

EMITTABLE = ("screenings", "tilde-family", "grading", "exponent-A")


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    n: int = 3
    m: int = 4
    variant: str = "standard"
    truncation: int = DEFAULT_TRUNCATION
    budget: int = DEFAULT_BUDGET
    format: str = "text"
    seed: int = DEFAULT_SEED
    algebra: Optional[str] = None
    timing: bool = False
    samples: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"n must be at least 1, got {self.n}")
        if not 1 <= self.m <= self.n + 1:
            raise ConfigError(f"m must lie between 1 and n+1 = {self.n + 1}, got {self.m}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; choose from {', '.join(FORMATS)}")
        if self.truncation < 1:
            raise ConfigError("truncation must be positive")
        if self.budget < 1:
            raise ConfigError("budget must be positive")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {name: data[name] for name in cls.__dataclass_fields__ if name in data}
        try:
            for name in ("n", "m", "truncation", "budget", "seed", "samples"):
                if known.get(name) is not None:
                    known[name] = int(known[name])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid integer setting: {e}")
        if "timing" in known:
            known["timing"] = bool(known["timing"])
        return cls(**known)
