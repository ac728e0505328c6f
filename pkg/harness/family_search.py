"""
family_search.py - sweep a ring family over parameter ranges and report
which instances have (or lack) a target property.

Ranges are small expressions evaluated left to right, so later parameters
may refer to earlier ones:

    "3,4"       explicit values
    "2..5"      inclusive integer range
    "1..n-2"    bounds may be an integer, a parameter name, or name+int,
                name-int, name/int (floor division)

Families and their parameters:

    tnk      Tnk(B, n, k)    n, k
    polymod  PolyMod(B, n)   n
    mat      Mat(B, n)       n
    ut       UT(B, n)        n
    triv     Triv(B)         (none)
    prod     Prod(B1, B2)    pairs of bases, B1 <= B2 in the given order
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

# Import external packages
import pandas as pd

# Import functions from local modules
from dsl.dsl_elaborate import ring_from_text
from dsl.dsl_parser import parse, pretty
from harness.run_report import cached_check
from rings.errors import InvalidParameter, OrderOverflow, RingError
from rings.poly import ordered_map
from rings.properties import PROPERTIES, PropertyReport
from utils.utils_cache import ResultCache
from utils.utils_config import RunConfig
from utils.utils_logger import logger

FAMILY_PARAMETERS: Dict[str, Tuple[str, ...]] = {
    "tnk": ("n", "k"),
    "polymod": ("n",),
    "mat": ("n",),
    "ut": ("n",),
    "triv": (),
    "prod": (),
}

_BOUND = re.compile(r"^\s*(?:(\d+)|([a-z])\s*(?:([+\-/])\s*(\d+))?)\s*$")


def _bound(text: str, env: Dict[str, int]) -> int:
    match = _BOUND.match(text)
    if not match:
        raise InvalidParameter(f"cannot read range bound {text!r}")
    number, name, op, amount = match.groups()
    if number is not None:
        return int(number)
    if name not in env:
        raise InvalidParameter(f"range bound {text!r} names unknown parameter {name!r}")
    value = env[name]
    if op == "+":
        return value + int(amount)
    if op == "-":
        return value - int(amount)
    if op == "/":
        return value // int(amount)
    return value


def parameter_values(spec: str, env: Dict[str, int]) -> List[int]:
    """Values of one range expression given earlier parameters."""
    values: List[int] = []
    for part in spec.split(","):
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.extend(range(_bound(lo, env), _bound(hi, env) + 1))
        else:
            values.append(_bound(part, env))
    return values


@dataclass(frozen=True)
class SearchSpec:
    family: str
    bases: Tuple[str, ...]
    property: str
    ranges: Dict[str, str] = field(default_factory=dict, compare=False, hash=False)
    polarity: str = "holds"
    degree: Optional[int] = None
    stop_after: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILY_PARAMETERS:
            raise InvalidParameter(f"unknown family {self.family!r}; known: {', '.join(FAMILY_PARAMETERS)}")
        if self.property not in PROPERTIES:
            raise InvalidParameter(f"unknown property {self.property!r}")
        if self.polarity not in ("holds", "fails"):
            raise InvalidParameter("polarity is 'holds' or 'fails'")
        if not self.bases:
            raise InvalidParameter("a search needs at least one base ring")
        missing = [p for p in FAMILY_PARAMETERS[self.family] if p not in self.ranges]
        if missing:
            raise InvalidParameter(f"family {self.family} needs ranges for {', '.join(missing)}")
        if self.stop_after is not None and self.stop_after < 1:
            raise InvalidParameter("stop_after must be >= 1")

    def instances(self) -> Iterator[str]:
        """Ring texts in deterministic order: bases, then parameters lexicographically."""
        bases = [pretty(parse(b)) for b in self.bases]
        if self.family == "prod":
            for left, right in itertools.combinations_with_replacement(bases, 2):
                yield f"Prod({left}, {right})"
            return
        names = FAMILY_PARAMETERS[self.family]
        for base in bases:
            for values in self._assignments(names, {}):
                yield self._render(base, values)

    def _assignments(self, names: Sequence[str], env: Dict[str, int]) -> Iterator[Dict[str, int]]:
        if not names:
            yield dict(env)
            return
        first, rest = names[0], names[1:]
        for value in parameter_values(self.ranges[first], env):
            yield from self._assignments(rest, {**env, first: value})

    def _render(self, base: str, values: Dict[str, int]) -> str:
        if self.family == "tnk":
            return f"Tnk({base}, {values['n']}, {values['k']})"
        if self.family == "polymod":
            return f"PolyMod({base}, {values['n']})"
        if self.family == "mat":
            return f"Mat({base}, {values['n']})"
        if self.family == "ut":
            return f"UT({base}, {values['n']})"
        return f"Triv({base})"


@dataclass
class SearchResult:
    ring: str
    report: Optional[PropertyReport]
    hit: bool = False
    note: Optional[str] = None

    def to_dict(self) -> dict:
        data = {"ring": self.ring, "hit": self.hit}
        if self.report is not None:
            data["report"] = self.report.to_dict()
        if self.note:
            data["note"] = self.note
        return data


def _evaluate(spec: SearchSpec, text: str, config: RunConfig, cache: Optional[ResultCache]) -> SearchResult:
    try:
        ring = ring_from_text(text, config)
    except OrderOverflow as e:
        logger.warning(f"Skipping {text}: {e}")
        return SearchResult(text, None, note=f"skipped: {e}")
    except RingError as e:
        logger.warning(f"Skipping {text}: {e}")
        return SearchResult(text, None, note=f"skipped: {type(e).__name__}: {e}")
    report = cached_check(ring, spec.property, config, cache, spec.degree, threads=1)
    if report.positive is None:
        logger.warning(f"{spec.property} on {text}: {report.note}")
        return SearchResult(text, report, note=report.note)
    hit = report.positive == (spec.polarity == "holds")
    logger.info(f"Search {text}: {spec.property} {report.label}{' (hit)' if hit else ''}")
    return SearchResult(text, report, hit)


def search(spec: SearchSpec, config: Optional[RunConfig] = None, cache: Optional[ResultCache] = None) -> Iterator[SearchResult]:
    """
    Check every instance of the family; instances run concurrently but are
    yielded in enumeration order. Stops after `stop_after` hits.
    """
    config = config or RunConfig.from_env()
    instances = list(spec.instances())
    logger.info(f"START search: {spec.family} over {len(instances)} instances, target {spec.polarity} {spec.property}")
    hits = 0
    results = ordered_map(lambda text: _evaluate(spec, text, config, cache), instances, config.threads)
    try:
        for result in results:
            yield result
            if result.hit:
                hits += 1
                if spec.stop_after is not None and hits >= spec.stop_after:
                    logger.info(f"Stopping after {hits} hits")
                    break
    finally:
        results.close()
    logger.info(f"END search: {hits} hits")


def search_frame(results: Sequence[SearchResult]) -> pd.DataFrame:
    """Tabular view of search results, one row per instance."""
    rows = []
    for r in results:
        rows.append({
            "ring": r.ring,
            "property": r.report.property if r.report else None,
            "verdict": r.report.label if r.report else None,
            "hit": r.hit,
            "work": r.report.work if r.report else None,
            "ms": round(r.report.ms, 3) if r.report else None,
            "note": r.note,
        })
    return pd.DataFrame(rows, columns=["ring", "property", "verdict", "hit", "work", "ms", "note"])
