"""
paper_suite.py - run the curated verification cases in data/paper_suite.json.

Each case names a claim about specific finite rings and the verdict the
claim predicts. Case kinds:

    property               one checker on one ring
    implies                premises on a ring force a conclusion
    equivalent             several (ring, property) verdicts must agree
    product-decomposition  a property of R1 x R2 versus its factors
    ideal-lift             hypothesis on (R, I) and R/I forces a property of R
    table-match            two constructions agree under a stated bijection
    oracle                 pruned pair enumeration equals the naive loop
    audit                  full profile plus the implication audit
    constructive-witness   an explicit construction re-checks
    subring-inheritance    a property passes to sampled generated subrings

Entries carrying `for_each` expand to one case per listed ring, with the
ring text appended to the id and substituted for "$R" in the entry.
Cases run concurrently; results come back sorted by case id.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import copy
import fnmatch
import json
import pathlib
import re
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from dsl.dsl_elaborate import ring_from_text
from dsl.dsl_parser import parse, pretty
from harness.run_report import CaseResult, RunReport, cached_check
from rings.constructions import (
    PolyModRing,
    ProductRing,
    TnkRing,
    TrivialExtensionRing,
    ZnRing,
    crt_to_zn,
    tnk_to_poly_mod,
    tnk_to_trivial_extension,
)
from rings.errors import ContradictionFound, InvalidParameter, RingError
from rings.poly import degree_pair_blocks, linear_pair_blocks, naive_annihilating_pairs, ordered_map, pair_rows
from rings.properties import (
    PROFILE_ORDER,
    PROPERTIES,
    PropertyReport,
    idempotent_annihilating_pair,
    implication_audit,
    tnk_square_zero_pair,
    trivial_extension_nilpotent_pair,
)
from rings.ring_core import (
    FiniteRing,
    ideal_closure,
    is_central,
    is_idempotent,
    nilpotent_mask,
    noncommuting_partner,
    quotient_ring,
    subring_generated,
    tables_match,
)
from rings.witnesses import Witness, annihilating_pair_violation, jsonable, square_zero_pair
from utils.utils_cache import ResultCache
from utils.utils_config import RunConfig, get_suite_file
from utils.utils_logger import logger

CLA = "central-linear-armendariz"

CASE_KINDS = (
    "property",
    "implies",
    "equivalent",
    "product-decomposition",
    "ideal-lift",
    "table-match",
    "oracle",
    "audit",
    "constructive-witness",
    "subring-inheritance",
)

_VERDICT_PATTERN = re.compile(r"^(holds|fails|certified-up-to-degree\(\d+\))$")


#####################################
# Suite cases
#####################################


@dataclass(frozen=True)
class SuiteCase:
    id: str
    kind: str
    anchor: str
    expected: str = "holds"
    ring: Optional[str] = None
    property: Optional[str] = None
    degree: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise InvalidParameter(f"case {self.id}: unknown kind {self.kind!r}")
        if not self.anchor:
            raise InvalidParameter(f"case {self.id}: every case needs an anchor")
        if not _VERDICT_PATTERN.match(self.expected):
            raise InvalidParameter(f"case {self.id}: bad expected verdict {self.expected!r}")


@dataclass
class Suite:
    corpus: List[str]
    cases: List[SuiteCase]


def ring_slug(text: str) -> str:
    """Id-friendly ring name: Tnk(Z(4), 3, 1) -> Tnk-Z4-3-1."""
    compact = re.sub(r"Z\((\d+)\)", r"Z\1", text)
    return re.sub(r"[^A-Za-z0-9]+", "-", compact).strip("-")


def _substitute(value: Any, ring_text: str) -> Any:
    if isinstance(value, str):
        return value.replace("$R", ring_text)
    if isinstance(value, list):
        return [_substitute(v, ring_text) for v in value]
    if isinstance(value, dict):
        return {k: _substitute(v, ring_text) for k, v in value.items()}
    return value


def _case_from_entry(entry: Dict[str, Any]) -> SuiteCase:
    known = {"id", "kind", "anchor", "expected", "ring", "property", "degree"}
    params = {k: v for k, v in entry.items() if k not in known}
    return SuiteCase(
        id=entry["id"],
        kind=entry["kind"],
        anchor=entry["anchor"],
        expected=entry.get("expected", "holds"),
        ring=entry.get("ring"),
        property=entry.get("property"),
        degree=entry.get("degree"),
        params=params,
    )


def expand_entries(entries: Sequence[Dict[str, Any]], corpus: Sequence[str]) -> List[SuiteCase]:
    """Turn raw JSON entries into cases; `for_each` fans out over rings."""
    cases: List[SuiteCase] = []
    for entry in entries:
        rings = entry.get("for_each")
        if rings is None:
            cases.append(_case_from_entry(entry))
            continue
        if rings == "corpus":
            rings = list(corpus)
        template = {k: v for k, v in entry.items() if k != "for_each"}
        for text in rings:
            expanded = _substitute(copy.deepcopy(template), text)
            expanded["id"] = f"{entry['id']}-{ring_slug(text)}"
            expanded.setdefault("ring", text)
            cases.append(_case_from_entry(expanded))
    ids = [case.id for case in cases]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise InvalidParameter(f"duplicate case ids: {', '.join(duplicates)}")
    return cases


def load_suite(path: Optional[pathlib.Path] = None) -> Suite:
    """Read the suite file: {"corpus": [ring texts], "cases": [entries]}."""
    path = pathlib.Path(path or get_suite_file())
    logger.info(f"Reading suite cases from {path}")
    try:
        with open(path, "r", encoding="utf-8") as json_file:
            data = json.load(json_file)
    except FileNotFoundError as e:
        logger.error(f"Suite file not found: {path}")
        raise InvalidParameter(f"suite file not found: {path}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON format in suite file {path}: {e}")
        raise InvalidParameter(f"invalid JSON in {path}: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("cases"), list):
        raise InvalidParameter(f"{path}: expected an object with a 'cases' list")
    corpus = [pretty(parse(text)) for text in data.get("corpus", [])]
    cases = expand_entries(data["cases"], corpus)
    logger.info(f"Loaded {len(cases)} cases over a corpus of {len(corpus)} rings")
    return Suite(corpus, cases)


#####################################
# Runner
#####################################


def _rule_text(premises: Sequence[Sequence[Any]], conclusion: Sequence[Any]) -> str:
    def term(name: str, want: bool) -> str:
        return name if want else f"not {name}"

    return " and ".join(term(p, w) for p, w in premises) + " => " + term(*conclusion)


def _same_rows(left: np.ndarray, right: np.ndarray) -> bool:
    if left.shape != right.shape:
        return False
    return bool(np.array_equal(np.unique(left, axis=0), np.unique(right, axis=0)))


def _witness_mismatches(witness: Witness, expect: Dict[str, Any]) -> List[str]:
    """Compare a witness against the payloads a case pins down."""
    problems = []
    if "product" in expect and witness.notes.get("product") != expect["product"]:
        problems.append(f"product {witness.notes.get('product')} != {expect['product']}")
    if "route" in expect and witness.notes.get("route") != expect["route"]:
        problems.append(f"route {witness.notes.get('route')} != {expect['route']}")
    for name, value in expect.get("elements", {}).items():
        if name not in witness.elements:
            problems.append(f"missing element {name}")
        elif jsonable(witness[name].value) != value:
            problems.append(f"{name} = {jsonable(witness[name].value)} != {value}")
    return problems


class SuiteRunner:
    """
    Evaluates cases against shared ring and report memos.

    Rings are built once per canonical text. Property reports are computed
    once per (ring, property, degree); a per-key lock lets independent cases
    proceed in parallel while two cases needing the same report wait for one
    computation. Checks inside a case run single-threaded.
    """

    def __init__(self, config: RunConfig, cache: Optional[ResultCache] = None):
        self.config = config
        self.cache = cache
        self._lock = threading.Lock()
        self._rings: Dict[str, FiniteRing] = {}
        self._reports: Dict[Tuple[str, str, Optional[int]], PropertyReport] = {}
        self._key_locks: Dict[Tuple[str, str, Optional[int]], threading.Lock] = {}
        self._evaluators: Dict[str, Callable[[SuiteCase], CaseResult]] = {
            "property": self._property,
            "implies": self._implies,
            "equivalent": self._equivalent,
            "product-decomposition": self._product_decomposition,
            "ideal-lift": self._ideal_lift,
            "table-match": self._table_match,
            "oracle": self._oracle,
            "audit": self._audit,
            "constructive-witness": self._constructive,
            "subring-inheritance": self._subring_inheritance,
        }

    # ----- memos -----

    def ring(self, text: str) -> FiniteRing:
        key = pretty(parse(text))
        with self._lock:
            if key not in self._rings:
                self._rings[key] = ring_from_text(key, self.config)
            return self._rings[key]

    def degree_for(self, prop: str, degree: Optional[int]) -> Optional[int]:
        check = PROPERTIES.get(prop)
        if check is None:
            raise InvalidParameter(f"unknown property {prop!r}")
        return (degree or self.config.degree) if check.degree_bounded else None

    def report(self, ring: FiniteRing, prop: str, degree: Optional[int] = None) -> PropertyReport:
        key = (ring.text, prop, self.degree_for(prop, degree))
        with self._lock:
            lock = self._key_locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._reports:
                self._reports[key] = cached_check(ring, prop, self.config, self.cache, key[2], threads=1)
            return self._reports[key]

    # ----- dispatch -----

    def run_case(self, case: SuiteCase) -> CaseResult:
        started = time.perf_counter()
        try:
            result = self._evaluators[case.kind](case)
        except RingError as e:
            logger.error(f"Case {case.id} raised {type(e).__name__}: {e}")
            result = CaseResult(case.id, case.ring or "", case.property or case.kind, case.degree,
                                case.expected, f"error: {type(e).__name__}: {e}", case.anchor)
        result.ms = (time.perf_counter() - started) * 1000.0
        status = "pass" if result.passed else "FAIL"
        logger.info(f"[{status}] {case.id}: expected {case.expected}, observed {result.observed}")
        return result

    # ----- evaluators -----

    def _property(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        report = self.report(ring, case.property, case.degree)
        observed = report.label
        details: Dict[str, Any] = {}
        witness = report.witness
        if witness is not None:
            details["recheck"] = witness.holds()
            problems = _witness_mismatches(witness, case.params.get("witness", {}))
            if not details["recheck"]:
                observed = "witness-recheck-failed"
            elif problems:
                observed = f"{observed} (witness mismatch)"
                details["mismatch"] = problems
        return CaseResult(case.id, ring.text, case.property, self.degree_for(case.property, case.degree),
                          case.expected, observed, case.anchor,
                          witness.to_dict() if witness else None, report.work, details=details)

    def _implies(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        premises = case.params["premises"]
        conclusion = case.params["conclusion"]
        rule = _rule_text(premises, conclusion)
        reports = {name: self.report(ring, name, case.degree) for name, _ in premises}
        reports[conclusion[0]] = self.report(ring, conclusion[0], case.degree)
        details = {"verdicts": {name: r.label for name, r in reports.items()}}
        work = sum(r.work for r in reports.values())
        if any(r.positive is None for r in reports.values()):
            return CaseResult(case.id, ring.text, rule, case.degree, case.expected, "budget-exhausted",
                              case.anchor, work=work, details=details)
        premise_holds = all(reports[name].positive == want for name, want in premises)
        details["premises_hold"] = premise_holds
        witness = None
        if not premise_holds:
            observed = "holds"
        else:
            target = reports[conclusion[0]]
            observed = "holds" if target.positive == conclusion[1] else "fails"
            if observed == "fails" and target.witness is not None:
                witness = target.witness.to_dict()
        return CaseResult(case.id, ring.text, rule, case.degree, case.expected, observed, case.anchor,
                          witness, work, details=details)

    def _equivalent(self, case: SuiteCase) -> CaseResult:
        details: Dict[str, Any] = {"verdicts": []}
        work = 0
        observed = None
        for name in case.params.get("requires", []):
            required = self.report(self.ring(case.ring), name, case.degree)
            details.setdefault("requires", {})[name] = required.label
            if required.positive is not True:
                observed = "fails"
        positives = []
        for check in case.params["checks"]:
            ring = self.ring(check["ring"])
            report = self.report(ring, check["property"], check.get("degree", case.degree))
            work += report.work
            positives.append(report.positive)
            details["verdicts"].append({"ring": ring.text, "property": check["property"], "verdict": report.label})
        if observed is None:
            if any(p is None for p in positives):
                observed = "budget-exhausted"
            else:
                observed = "holds" if len(set(positives)) == 1 else "fails"
        label = " <=> ".join(f"{c['property']}({c['ring']})" for c in case.params["checks"])
        return CaseResult(case.id, case.ring or "", label, case.degree, case.expected, observed, case.anchor,
                          work=work, details=details)

    def _product_decomposition(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        if not isinstance(ring, ProductRing):
            raise InvalidParameter(f"{ring.text} is not a product")
        prop = case.property or CLA
        e = ring.unit_idempotent(0)
        splits = is_idempotent(e) and is_central(e)
        whole = self.report(ring, prop, case.degree)
        parts = [self.report(factor, prop, case.degree) for factor in ring.factors]
        details = {
            "central_idempotent": splits,
            "product": whole.label,
            "factors": {factor.text: part.label for factor, part in zip(ring.factors, parts)},
        }
        if whole.positive is None or any(p.positive is None for p in parts):
            observed = "budget-exhausted"
        else:
            agree = whole.positive == all(p.positive for p in parts)
            observed = "holds" if splits and agree else "fails"
        return CaseResult(case.id, ring.text, f"{prop}(R1 x R2) <=> {prop}(R1) and {prop}(R2)", case.degree,
                          case.expected, observed, case.anchor,
                          work=whole.work + sum(p.work for p in parts), details=details)

    def _ideal_lift(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        prop = case.property or CLA
        ideal = ideal_closure(ring, [ring.element(g) for g in case.params["ideal"]])
        members = ideal.array
        nilpotent = nilpotent_mask(ring)
        ideal_reduced = not bool(np.any(nilpotent[members[members != 0]]))
        quotient = quotient_ring(ring, ideal, seed=self.config.seed)
        upstairs = self.report(quotient, prop, case.degree)
        details: Dict[str, Any] = {
            "ideal": [int(i) for i in members],
            "ideal_reduced": ideal_reduced,
            "quotient": quotient.text,
            "quotient_order": quotient.order,
            "quotient_verdict": upstairs.label,
        }
        work = upstairs.work
        if upstairs.positive is None:
            observed = "budget-exhausted"
        else:
            hypothesis = ideal_reduced and upstairs.positive
            details["hypothesis"] = hypothesis
            if not hypothesis:
                observed = "holds"
            else:
                report = self.report(ring, prop, case.degree)
                work += report.work
                details["ring_verdict"] = report.label
                observed = {True: "holds", False: "fails", None: "budget-exhausted"}[report.positive]
        return CaseResult(case.id, ring.text, f"I reduced and {prop}(R/I) => {prop}(R)", case.degree,
                          case.expected, observed, case.anchor, work=work, details=details)

    def _table_match(self, case: SuiteCase) -> CaseResult:
        left = self.ring(case.params["left"])
        right = self.ring(case.params["right"])
        kind = case.params["map"]
        if kind == "tnk-triv" and isinstance(left, TnkRing) and isinstance(right, TrivialExtensionRing):
            bijection = tnk_to_trivial_extension(left, right)
        elif kind == "tnk-polymod" and isinstance(left, TnkRing) and isinstance(right, PolyModRing):
            bijection = tnk_to_poly_mod(left, right)
        elif kind == "crt" and isinstance(left, ProductRing) and isinstance(right, ZnRing):
            bijection = crt_to_zn(left, right)
        else:
            raise InvalidParameter(f"no {kind!r} bijection from {left.text} to {right.text}")
        observed = "holds" if tables_match(left, right, bijection) else "fails"
        return CaseResult(case.id, left.text, f"tables match {right.text} ({kind})", None, case.expected,
                          observed, case.anchor, work=left.order ** 2)

    def _oracle(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        d = case.degree or 1
        naive = naive_annihilating_pairs(ring, d)
        same = _same_rows(naive, pair_rows(degree_pair_blocks(ring, d)))
        if d == 1:
            same = same and _same_rows(naive, pair_rows(linear_pair_blocks(ring)))
        observed = "holds" if same else "fails"
        return CaseResult(case.id, ring.text, "pruned pairs == naive pairs", d, case.expected, observed,
                          case.anchor, work=int(naive.shape[0]), details={"pairs": int(naive.shape[0])})

    def _audit(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        profile = [self.report(ring, name, case.degree) for name in PROFILE_ORDER]
        work = sum(r.work for r in profile)
        try:
            result = implication_audit(profile)
            observed, details = "holds", result.to_dict()
        except ContradictionFound as e:
            observed = "fails"
            details = {"rule": e.rule, "premise": e.premise, "conclusion": e.conclusion}
        details["profile"] = {r.property: r.label for r in profile}
        return CaseResult(case.id, ring.text, "implication audit", self.degree_for("armendariz", case.degree),
                          case.expected, observed, case.anchor, work=work, details=details)

    def _constructive(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        construction = case.params["construction"]
        details: Dict[str, Any] = {"construction": construction}
        if construction == "tnk-square-zero":
            if not isinstance(ring, TnkRing):
                raise InvalidParameter(f"{ring.text} is not a Tnk ring")
            a, b, other = tnk_square_zero_pair(ring, ring.base.element(case.params["scalar"]))
            witness = square_zero_pair(a, b, other)
            ok = witness.holds()
        elif construction == "trivial-extension-nilpotent":
            if not isinstance(ring, TrivialExtensionRing):
                raise InvalidParameter(f"{ring.text} is not a trivial extension")
            base_element = ring.base.element(case.params["element"])
            a0, a1, b0, b1 = trivial_extension_nilpotent_pair(ring, base_element)
            witness = annihilating_pair_violation([a0, a1], [b0, b1], (1, 0), "zero")
            product_central = is_central(a1 * b0)
            t = ring.base.element(ring.parts((a1 * b0).index)[1])
            details.update({"product_central": product_central, "t_central": is_central(t)})
            ok = witness.holds() and product_central == is_central(t)
        elif construction == "idempotent-annihilating":
            e = ring.element(case.params["e"])
            a0, a1, b0, b1 = idempotent_annihilating_pair(e, ring.element(case.params["r"]))
            partner = noncommuting_partner(a0 * b1)
            if partner is None:
                witness, ok = None, False
            else:
                witness = annihilating_pair_violation([a0, a1], [b0, b1], (0, 1), "central", partner)
                ok = witness.holds()
        else:
            raise InvalidParameter(f"unknown construction {construction!r}")
        return CaseResult(case.id, ring.text, construction, None, case.expected, "holds" if ok else "fails",
                          case.anchor, witness.to_dict() if witness else None, details=details)

    def _subring_inheritance(self, case: SuiteCase) -> CaseResult:
        ring = self.ring(case.ring)
        prop = case.property or CLA
        parent = self.report(ring, prop, case.degree)
        details: Dict[str, Any] = {"ring_verdict": parent.label, "subrings": {}}
        work = parent.work
        if parent.positive is None:
            observed = "budget-exhausted"
        elif not parent.positive:
            observed = "holds"
        else:
            rng = np.random.default_rng(self.config.seed)
            size = min(ring.order, self.config.subring_samples)
            generators = sorted(int(g) for g in rng.choice(ring.order, size=size, replace=False))
            observed = "holds"
            for g in generators:
                sub = subring_generated(ring, [ring.element(g)])
                report = self.report(sub, prop, case.degree)
                work += report.work
                details["subrings"][sub.text] = report.label
                if report.positive is None and observed == "holds":
                    observed = "budget-exhausted"
                elif report.positive is False:
                    observed = "fails"
        return CaseResult(case.id, ring.text, f"{prop}(R) => {prop}(S) for generated S", case.degree,
                          case.expected, observed, case.anchor, work=work, details=details)


#####################################
# Entry point
#####################################


def verify_paper(
    case_filter: Optional[str] = None,
    config: Optional[RunConfig] = None,
    cache: Optional[ResultCache] = None,
    suite_file: Optional[pathlib.Path] = None,
) -> RunReport:
    """Run every case (or those whose id matches the glob) and collect a report."""
    config = config or RunConfig.from_env()
    suite = load_suite(suite_file)
    cases = [c for c in suite.cases if case_filter is None or fnmatch.fnmatchcase(c.id, case_filter)]
    logger.info(f"START verify-paper: {len(cases)} cases (filter {case_filter!r}, {config.threads} threads)")
    runner = SuiteRunner(config, cache)
    results = sorted(ordered_map(runner.run_case, cases, config.threads), key=lambda r: r.id)
    report = RunReport(config, results)
    passed = sum(1 for r in results if r.passed)
    logger.info(f"END verify-paper: {passed}/{len(results)} cases pass")
    return report
