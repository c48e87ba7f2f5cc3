"""Run records and sweep results: the rows behind every table and figure."""

from __future__ import annotations

from dataclasses import dataclass

from ..bound import GapReport

SOURCE_SYNTHETIC = "synthetic"
SOURCE_REAL = "real"


@dataclass(frozen=True)
class RunParams:
    """Parameters that fully determine one run (given the code version)."""

    T: int
    m: int
    d: int
    delta: float
    seed: int
    source: str

    def __post_init__(self) -> None:
        if self.source not in (SOURCE_SYNTHETIC, SOURCE_REAL):
            raise ValueError(f"unknown source {self.source!r}")


@dataclass(frozen=True)
class RunRecord:
    """One grid cell's parameters plus its measured gap report.

    ``applicable`` is False when the bound's regime did not cover the cell
    (d > e*m) or when the experiment evaluates no bound at all; such rows
    are excluded from confidence denominators. ``wall_time_ms`` is not part
    of the deterministic output surface.
    """

    experiment_id: str
    params: RunParams
    gap_report: GapReport
    wall_time_ms: int
    applicable: bool = True

    def __post_init__(self) -> None:
        if self.wall_time_ms < 0:
            raise ValueError("wall_time_ms must be nonnegative")


@dataclass(frozen=True)
class SweepResult:
    """All records of one sweep plus its aggregate confidence.

    ``confidence`` is None for sweeps that evaluate no bound (the
    iteration sweep). ``inapplicable_count`` counts cells rejected by the
    bound's regime (d > e*m), not rows that simply skip the bound.
    """

    records: tuple[RunRecord, ...]
    confidence: float | None
    inapplicable_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        if self.inapplicable_count < 0:
            raise ValueError("inapplicable_count must be nonnegative")
