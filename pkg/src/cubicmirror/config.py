"""Run settings shared by the CLI and scripts."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SeriesConfig:
    order: int = 64            # truncation order for series and Frobenius bases
    classify_order: int = 12   # enough to see every log chain
    yukawa_order: int = 20
    annihilation_order: int = 50


@dataclass(frozen=True)
class FiberConfig:
    limit: int | None = 8      # smooth-fiber witnesses per parameter value


@dataclass(frozen=True)
class LPConfig:
    pin: int = 0
    max_iter: int | None = None


@dataclass(frozen=True)
class RunConfig:
    series: SeriesConfig = field(default_factory=SeriesConfig)
    fiber: FiberConfig = field(default_factory=FiberConfig)
    lp: LPConfig = field(default_factory=LPConfig)
    indent: int | None = 2


DEFAULT = RunConfig()
