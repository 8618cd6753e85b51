"""SNR sweeps pairing exact, asymptotic and simulated outage probabilities.

A sweep walks ``gamma_d`` over a dB grid along one high-SNR trajectory
(``gamma_r = alpha * gamma_d`` with either a fixed or a proportionally scaled
eavesdropper) and emits one :class:`SweepRow` per (case, grid point).
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .analytic import sop_asymptotic, sop_closed_form
from .core import (
    THEOREM_CASES,
    CaseId,
    RateThreshold,
    ScenarioScaling,
    ValidationError,
    db_to_linear,
    linear_to_db,
    snrs_from_scenario,
)
from .montecarlo import estimate_sop_paired

FIXED_EVE = "fixed-eve"
SCALED_EVE = "scaled-eve"

COLUMNS = (
    "case", "gamma_d_db", "gamma_r_db", "gamma_e_db", "rate",
    "sop_analytic", "sop_asymptotic", "sop_limit",
    "sop_mc", "mc_ci_low", "mc_ci_high", "excess",
)


@dataclass(frozen=True)
class SweepSpec:
    scenario: str = FIXED_EVE
    cases: tuple = THEOREM_CASES
    gamma_d_db_start: float = 0.0
    gamma_d_db_stop: float = 50.0
    gamma_d_db_step: float = 2.0
    alpha: float = 0.5
    beta: Optional[float] = None
    gamma_e_fixed: Optional[float] = None
    rate: float = 1.0
    mc_samples: int = 0
    seed: int = 0
    # Grid points whose exact SOP is below this are not simulated.
    mc_min_sop: float = 1e-6
    workers: int = 1

    def __post_init__(self) -> None:
        if self.scenario not in (FIXED_EVE, SCALED_EVE):
            raise ValidationError(f"unknown scenario {self.scenario!r}")
        cases = tuple(CaseId.parse(c) for c in self.cases)
        if not cases:
            raise ValidationError("at least one case is required")
        if any(c not in THEOREM_CASES for c in cases):
            raise ValidationError("sweeps cover cases 1, 2 and 3 only")
        object.__setattr__(self, "cases", cases)
        for name in ("gamma_d_db_start", "gamma_d_db_stop", "gamma_d_db_step"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.gamma_d_db_start > self.gamma_d_db_stop:
            raise ValidationError("gamma_d_db_start must not exceed gamma_d_db_stop")
        if self.gamma_d_db_step <= 0:
            raise ValidationError("gamma_d_db_step must be > 0")
        if self.scenario == SCALED_EVE:
            if self.beta is None or self.gamma_e_fixed is not None:
                raise ValidationError("scaled-eve needs beta and no fixed gamma_e")
        elif self.gamma_e_fixed is None or self.beta is not None:
            raise ValidationError("fixed-eve needs gamma_e_fixed and no beta")
        self.scaling  # validates alpha/beta
        RateThreshold(self.rate)
        if self.mc_samples < 0:
            raise ValidationError("mc_samples must be >= 0")

    @property
    def scaling(self) -> ScenarioScaling:
        return ScenarioScaling(self.alpha, self.beta)

    def grid_db(self) -> list[float]:
        span = self.gamma_d_db_stop - self.gamma_d_db_start
        count = int(math.floor(span / self.gamma_d_db_step + 1e-9)) + 1
        return [self.gamma_d_db_start + k * self.gamma_d_db_step for k in range(count)]

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["cases"] = [str(c) for c in self.cases]
        return d


@dataclass(frozen=True)
class SweepRow:
    case: CaseId
    gamma_d_db: float
    gamma_r_db: float
    gamma_e_db: float
    rate: float
    sop_analytic: float
    sop_asymptotic: float
    sop_limit: float
    sop_mc: Optional[float]
    mc_ci_low: Optional[float]
    mc_ci_high: Optional[float]
    excess: float


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every (case, grid point); rows are ordered by case, then ``gamma_d_db``."""
    rows: dict[CaseId, list[SweepRow]] = {c: [] for c in spec.cases}
    for gd_db in spec.grid_db():
        gamma_d = db_to_linear(gd_db)
        snrs = snrs_from_scenario(gamma_d, spec.scaling, spec.gamma_e_fixed)
        gr_db, _, ge_db = snrs.to_db()
        exact = {c: sop_closed_form(c, snrs, spec.rate) for c in spec.cases}
        mc = {}
        if spec.mc_samples > 0:
            eligible = [c for c in spec.cases if exact[c] >= spec.mc_min_sop]
            if eligible:
                mc = estimate_sop_paired(eligible, snrs, spec.rate, spec.mc_samples,
                                         spec.seed, spec.workers)
        for c in spec.cases:
            asym = sop_asymptotic(c, gamma_d, spec.scaling, spec.gamma_e_fixed, spec.rate)
            est = mc.get(c)
            rows[c].append(SweepRow(
                case=c,
                gamma_d_db=gd_db,
                gamma_r_db=gr_db,
                gamma_e_db=ge_db,
                rate=spec.rate,
                sop_analytic=exact[c],
                sop_asymptotic=asym.approx,
                sop_limit=asym.limit,
                sop_mc=None if est is None else est.value,
                mc_ci_low=None if est is None else est.ci_low,
                mc_ci_high=None if est is None else est.ci_high,
                excess=exact[c] - asym.limit,
            ))
    return [row for c in spec.cases for row in rows[c]]


def fit_diversity_order(
    rows: Sequence[SweepRow],
    fit_window_db: tuple[float, float] = (30.0, 50.0),
    column: str = "sop_analytic",
) -> float:
    """Secrecy diversity order: minus the log-log slope of SOP versus ``gamma_d``.

    Rows must belong to a single case; the fit uses the rows whose
    ``gamma_d_db`` lies inside the closed window.
    """
    lo, hi = fit_window_db
    picked = [r for r in rows if lo <= r.gamma_d_db <= hi]
    if len({r.case for r in picked}) > 1:
        raise ValidationError("rows from more than one case passed to the fit")
    if len(picked) < 3:
        raise ValidationError(f"need >= 3 rows in [{lo}, {hi}] dB, got {len(picked)}")
    y = np.array([getattr(r, column) for r in picked], dtype=float)
    if not np.all(y > 0):
        raise ValidationError("SOP values in the fit window must be positive")
    x = np.array([r.gamma_d_db for r in picked]) / 10.0  # log10(gamma_d)
    slope = np.polyfit(x, np.log10(y), 1)[0]
    return float(-slope)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, CaseId):
        return value.value
    return format(float(value), ".17g")


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, CaseId):
        return json.dumps(value.value)
    v = float(value)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def write_table(rows: Iterable[SweepRow], destination: Union[str, os.PathLike, IO[str]],
                format: str = "csv") -> None:
    """Serialize rows as CSV (with header) or JSON lines, 17 significant digits."""
    if format not in ("csv", "jsonl"):
        raise ValidationError(f"unknown format {format!r}")
    buf = io.StringIO()
    if format == "csv":
        buf.write(",".join(COLUMNS) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(getattr(row, c)) for c in COLUMNS) + "\n")
    else:
        for row in rows:
            fields = ", ".join(f'"{c}": {_json_value(getattr(row, c))}' for c in COLUMNS)
            buf.write("{" + fields + "}\n")
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write table to {os.fspath(destination)!r}: {exc}") from exc


def _parse_row(record: dict) -> SweepRow:
    kwargs = {}
    for c in COLUMNS:
        v = record.get(c)
        if c == "case":
            kwargs[c] = CaseId.parse(v)
        elif v is None or v == "":
            kwargs[c] = None
        else:
            kwargs[c] = float(v)
    return SweepRow(**kwargs)


def read_table(source: Union[str, os.PathLike, IO[str]], format: str = "csv") -> list[SweepRow]:
    """Inverse of :func:`write_table`."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, newline="") as fh:
            text = fh.read()
    if format == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise ValidationError(f"unexpected CSV header {reader.fieldnames}")
        return [_parse_row(rec) for rec in reader]
    if format == "jsonl":
        return [_parse_row(json.loads(line)) for line in text.splitlines() if line.strip()]
    raise ValidationError(f"unknown format {format!r}")
