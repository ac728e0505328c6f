"""
run_report.py - case results, run reports and their JSON/CSV forms.

The JSON layout is fixed: version, generated_at, config, cases, pass.
Key order inside each case is fixed too, so two runs under one config give
files that differ only in `generated_at` and the `ms` timings.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import json
import pathlib
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

# Import external packages
import pandas as pd

# Import functions from local modules
from rings.errors import BudgetExhausted
from rings.properties import PROPERTIES, PropertyReport, Verdict, check_property
from rings.poly import AnnPairBudget
from rings.ring_core import FiniteRing
from rings.witnesses import Witness
from utils.utils_cache import ResultCache
from utils.utils_config import TOOL_VERSION, RunConfig
from utils.utils_logger import logger


#####################################
# Case results
#####################################


@dataclass
class CaseResult:
    id: str
    ring: str
    property: str
    degree: Optional[int]
    expected: str
    observed: str
    anchor: str
    witness: Optional[Dict[str, Any]] = None
    work: int = 0
    ms: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.observed == self.expected

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.id,
            "ring": self.ring,
            "property": self.property,
            "degree": self.degree,
            "expected": self.expected,
            "observed": self.observed,
        }
        if self.witness is not None:
            data["witness"] = self.witness
        data["work"] = int(self.work)
        data["ms"] = round(float(self.ms), 3)
        data["anchor"] = self.anchor
        data["pass"] = self.passed
        if self.details:
            data["details"] = self.details
        return data


@dataclass
class RunReport:
    config: RunConfig
    cases: List[CaseResult] = field(default_factory=list)
    version: str = TOOL_VERSION
    generated_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    def failures(self) -> List[CaseResult]:
        return [case for case in self.cases if not case.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "generated_at": self.generated_at,
            "config": self.config.to_dict(),
            "cases": [case.to_dict() for case in self.cases],
            "pass": self.passed,
        }


def report_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def emit_report(report: RunReport, path: pathlib.Path) -> pathlib.Path:
    """Write the report as UTF-8 JSON with a trailing newline."""
    path = pathlib.Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report_json(report), encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write report to {path}: {e}")
        raise OSError(f"cannot write report to {path}: {e}") from e
    logger.info(f"Wrote {len(report.cases)} cases to {path}")
    return path


#####################################
# Tabular views
#####################################

SUMMARY_COLUMNS = ["id", "ring", "property", "degree", "expected", "observed", "pass", "work", "ms"]


def summary_frame(report: RunReport) -> pd.DataFrame:
    """One row per case, in report order."""
    rows = [{column: case.to_dict().get(column) for column in SUMMARY_COLUMNS} for case in report.cases]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def write_csv(frame: pd.DataFrame, path: pathlib.Path) -> pathlib.Path:
    path = pathlib.Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write CSV to {path}: {e}")
        raise OSError(f"cannot write CSV to {path}: {e}") from e
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


#####################################
# Cached property checks
#####################################


def report_from_dict(ring: FiniteRing, data: Dict[str, Any]) -> PropertyReport:
    """Rebuild a PropertyReport from its JSON form (as stored in the cache)."""
    label = data["verdict"]
    if label.startswith(Verdict.CERTIFIED.value):
        verdict = Verdict.CERTIFIED
    else:
        verdict = Verdict(label)
    witness = Witness.from_dict(ring, data["witness"]) if data.get("witness") else None
    return PropertyReport(
        data["property"], verdict, data.get("ring", ring.text), data.get("degree"), witness,
        int(data.get("work", 0)), float(data.get("ms", 0.0)), data.get("note"),
    )


def config_budget(config: RunConfig) -> AnnPairBudget:
    return AnnPairBudget(config.pair_budget, config.time_cap_ms)


def cached_check(
    ring: FiniteRing,
    prop: str,
    config: RunConfig,
    cache: Optional[ResultCache] = None,
    degree: Optional[int] = None,
    threads: Optional[int] = None,
) -> PropertyReport:
    """
    check_property through the result cache. Budget exhaustion comes back
    as a budget-exhausted report, which the cache never stores.
    """
    check = PROPERTIES.get(prop)
    degree = (degree or config.degree) if check is not None and check.degree_bounded else None
    if cache is not None:
        hit = cache.get(ring.text, prop, degree)
        if hit is not None:
            logger.debug(f"Cache hit: {prop} on {ring.text}")
            return report_from_dict(ring, hit)
    try:
        report = check_property(ring, prop, degree or config.degree, config_budget(config),
                                threads or config.threads)
    except BudgetExhausted as exc:
        return PropertyReport(prop, Verdict.BUDGET_EXHAUSTED, ring.text, degree, None, exc.examined, 0.0, str(exc))
    if cache is not None:
        cache.put(ring.text, prop, degree, report.to_dict())
    return report
