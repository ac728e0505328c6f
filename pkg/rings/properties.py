"""
properties.py - decision procedures for ring classes, with witnesses.

Every checker returns a PropertyReport. A `fails` verdict always carries a
Witness whose recipe re-executes the violation; degree-bounded checks report
`certified-up-to-degree(d)` rather than `holds`. Structural checks scan the
ring with vectorised table lookups; the Armendariz family sweeps annihilating
polynomial pairs from rings.poly and reports the least offending pair in
canonical order.

property_profile runs the checkers in a fixed order and implication_audit
cross-checks one profile against implications that are theorems.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from rings.constructions import TnkRing, TrivialExtensionRing
from rings.errors import BudgetExhausted, ContradictionFound, InvalidParameter
from rings.poly import (
    AnnPairBudget,
    PairBlock,
    RingView,
    SweepMeter,
    degree_pair_blocks,
    linear_pair_blocks,
)
from rings.ring_core import (
    Element,
    FiniteRing,
    central_mask,
    idempotent_mask,
    is_central,
    nilpotent_mask,
    noncommuting_partner,
    square_vector,
)
from rings.witnesses import (
    Witness,
    annihilating_pair_violation,
    noncentral_idempotent,
    noncommuting_pair,
    nilpotent_noncentral,
    not_strongly_regular,
    pp_failure,
    semicomm_violation,
    semiprime_failure,
    square_zero_element,
    square_zero_pair,
    vnr_failure,
)
from utils.utils_config import DEFAULT_DEGREE
from utils.utils_logger import logger


#####################################
# Reports
#####################################


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    CERTIFIED = "certified-up-to-degree"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class PropertyReport:
    property: str
    verdict: Verdict
    ring: str = ""
    degree: Optional[int] = None
    witness: Optional[Witness] = None
    work: int = 0
    ms: float = 0.0
    note: Optional[str] = None

    @property
    def label(self) -> str:
        """holds | fails | certified-up-to-degree(d) | budget-exhausted"""
        if self.verdict is Verdict.CERTIFIED:
            return f"{self.verdict.value}({self.degree})"
        return self.verdict.value

    @property
    def positive(self) -> Optional[bool]:
        """True for holds/certified, False for fails, None when no verdict was reached."""
        if self.verdict in (Verdict.HOLDS, Verdict.CERTIFIED):
            return True
        if self.verdict is Verdict.FAILS:
            return False
        return None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "property": self.property,
            "ring": self.ring,
            "verdict": self.label,
            "degree": self.degree,
            "work": int(self.work),
            "ms": round(self.ms, 3),
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        if self.note:
            data["note"] = self.note
        return data


def _report(
    name: str,
    ring: FiniteRing,
    started: float,
    witness: Optional[Witness] = None,
    work: int = 0,
    degree: Optional[int] = None,
    note: Optional[str] = None,
) -> PropertyReport:
    if witness is not None:
        verdict = Verdict.FAILS
    elif degree is not None:
        verdict = Verdict.CERTIFIED
    else:
        verdict = Verdict.HOLDS
    report = PropertyReport(name, verdict, ring.text, degree, witness, work,
                            (time.perf_counter() - started) * 1000.0, note)
    logger.info(f"{name} on {ring.text}: {report.label} ({work} examined, {report.ms:.1f} ms)")
    return report


def _first(mask: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


#####################################
# Structural checks
#####################################


def is_commutative(ring: FiniteRing) -> PropertyReport:
    """Exhaustive pair sweep; witness is the least non-commuting pair."""
    started = time.perf_counter()
    gens = [g.index for g in ring.additive_generators()]
    gens_commute = all(
        ring.mul_idx(g, h) == ring.mul_idx(h, g) for i, g in enumerate(gens) for h in gens[i + 1:]
    )
    if gens_commute:
        # multiplication is biadditive, so commuting generators settle it
        return _report("commutative", ring, started, work=len(gens) ** 2)
    everything = ring.all_indices()
    for a in range(ring.order):
        differs = ring.mul_many(a, everything) != ring.mul_many(everything, a)
        b = _first(differs)
        if b is not None:
            witness = noncommuting_pair(ring.element(a), ring.element(b))
            return _report("commutative", ring, started, witness, work=(a + 1) * ring.order)
    raise AssertionError("generators fail to commute but no element pair does")


def is_reduced(ring: FiniteRing) -> PropertyReport:
    """Fails iff some a != 0 has a² = 0 (equivalent to having a nonzero nilpotent)."""
    started = time.perf_counter()
    squares = square_vector(ring)
    candidates = (squares == 0)
    candidates[0] = False
    a = _first(candidates)
    witness = square_zero_element(ring.element(a)) if a is not None else None
    return _report("reduced", ring, started, witness, work=ring.order)


def is_central_reduced(ring: FiniteRing) -> PropertyReport:
    """Every nilpotent element is central."""
    started = time.perf_counter()
    a = _first(nilpotent_mask(ring) & ~central_mask(ring))
    witness = None
    if a is not None:
        element = ring.element(a)
        witness = nilpotent_noncentral(element, noncommuting_partner(element))
    return _report("central-reduced", ring, started, witness, work=ring.order)


def is_abelian(ring: FiniteRing) -> PropertyReport:
    """Every idempotent is central."""
    started = time.perf_counter()
    e = _first(idempotent_mask(ring) & ~central_mask(ring))
    witness = None
    if e is not None:
        element = ring.element(e)
        witness = noncentral_idempotent(element, noncommuting_partner(element))
    return _report("abelian", ring, started, witness, work=ring.order)


def is_semicommutative(ring: FiniteRing) -> PropertyReport:
    """ab = 0 implies aRb = 0; witness (a, r, b) least by a, then r, then b."""
    started = time.perf_counter()
    everything = ring.all_indices()
    work = 0
    for a in range(1, ring.order):
        row = ring.mul_many(a, everything)
        b_side = np.flatnonzero(row == 0)
        b_side = b_side[b_side != 0]
        if b_side.size == 0:
            continue
        work += ring.order * b_side.size
        products = ring.mul_many(row[:, None], b_side[None, :])
        bad = np.argwhere(products != 0)
        if bad.size:
            r, b = int(bad[0][0]), int(b_side[bad[0][1]])
            witness = semicomm_violation(ring.element(a), ring.element(r), ring.element(b))
            return _report("semicommutative", ring, started, witness, work=work)
    return _report("semicommutative", ring, started, work=work)


def is_von_neumann_regular(ring: FiniteRing) -> PropertyReport:
    """For every a some x has a·x·a = a."""
    started = time.perf_counter()
    everything = ring.all_indices()
    for a in range(ring.order):
        if not np.any(ring.mul_many(ring.mul_many(a, everything), a) == a):
            return _report("von-neumann-regular", ring, started, vnr_failure(ring.element(a)),
                           work=(a + 1) * ring.order)
    return _report("von-neumann-regular", ring, started, work=ring.order ** 2)


def is_strongly_regular(ring: FiniteRing) -> PropertyReport:
    """For every a some x has a = a²·x."""
    started = time.perf_counter()
    everything = ring.all_indices()
    squares = square_vector(ring)
    for a in range(ring.order):
        if not np.any(ring.mul_many(squares[a], everything) == a):
            return _report("strongly-regular", ring, started, not_strongly_regular(ring.element(a)),
                           work=(a + 1) * ring.order)
    return _report("strongly-regular", ring, started, work=ring.order ** 2)


def is_right_pp(ring: FiniteRing) -> PropertyReport:
    """Each right annihilator r(a) equals eR for some idempotent e."""
    started = time.perf_counter()
    everything = ring.all_indices()
    principal = []
    for e in np.flatnonzero(idempotent_mask(ring)):
        mask = np.zeros(ring.order, dtype=bool)
        mask[ring.mul_many(e, everything)] = True
        principal.append(mask)
    principal = np.array(principal)
    for a in range(ring.order):
        annihilator = ring.mul_many(a, everything) == 0
        if not np.any(np.all(principal == annihilator[None, :], axis=1)):
            return _report("right-pp", ring, started, pp_failure(ring.element(a)), work=a + 1)
    return _report("right-pp", ring, started, work=ring.order)


def is_semiprime(ring: FiniteRing) -> PropertyReport:
    """aRa = 0 implies a = 0."""
    started = time.perf_counter()
    everything = ring.all_indices()
    for a in range(1, ring.order):
        if np.all(ring.mul_many(ring.mul_many(a, everything), a) == 0):
            return _report("semiprime", ring, started, semiprime_failure(ring.element(a)),
                           work=a * ring.order)
    return _report("semiprime", ring, started, work=max(0, ring.order - 1) * ring.order)


#####################################
# Constructive witnesses
#####################################


def idempotent_annihilating_pair(e: Element, r: Element) -> Tuple[Element, Element, Element, Element]:
    """
    For an idempotent e and c = e·r·(1-e) != 0: f = e - c·x, g = (1-e) + c·x
    satisfy f·g = 0, and the coefficient product e·c = c is not central.
    """
    ring = e.ring
    one = ring.one
    c = e * r * (one - e)
    if c.index == 0:
        raise InvalidParameter("e·r·(1-e) vanishes; no annihilating pair from this r")
    return e, -c, one - e, c


def tnk_square_zero_pair(ring: TnkRing, scalar: Element) -> Tuple[Element, Element, Element]:
    """A = a·I, B = Σ e_{1,k+j} and a partner C with (AB)C != C(AB) when a != 0, a² = 0."""
    if scalar.ring is not ring.base:
        raise InvalidParameter(f"scalar must come from {ring.base.text}")
    if scalar.index == 0 or (scalar * scalar).index != 0:
        raise InvalidParameter("the scalar must be nonzero with square zero")
    return ring.square_zero_candidates(scalar)


def trivial_extension_nilpotent_pair(ring: TrivialExtensionRing, a: Element) -> Tuple[Element, Element, Element, Element]:
    """
    For nilpotent a ∈ base with a^m = 0, t = a^(m-1):
    f = (t,0) + (t,1)x and g = (t,0) + (t,-1)x satisfy f·g = 0, and the
    coefficient product (t,1)(t,0) = (0,t) is central iff t is central in base.
    """
    base = ring.base
    if a.ring is not base:
        raise InvalidParameter(f"element must come from {base.text}")
    if a.index == 0:
        raise InvalidParameter("the element must be nonzero")
    t = a
    for _ in range(base.order + 1):
        nxt = t * a
        if nxt.index == 0:
            break
        t = nxt
    else:
        raise InvalidParameter(f"{a!r} is not nilpotent")
    zero, one = base.zero, base.one
    return ring.pair(t, zero), ring.pair(t, one), ring.pair(t, zero), ring.pair(t, -one)


def _square_zero_candidates(ring: FiniteRing) -> Iterable[Tuple[Element, Element, Optional[Element]]]:
    """Pairs the construction itself offers, least scalar first."""
    if isinstance(ring, (TnkRing, TrivialExtensionRing)):
        base = ring.base
        squares = square_vector(base)
        for c in np.flatnonzero(squares == 0):
            if c == 0:
                continue
            scalar = base.element(c)
            if isinstance(ring, TnkRing):
                a, b, other = tnk_square_zero_pair(ring, scalar)
                yield a, b, other
            else:
                a, b = ring.square_zero_candidates(scalar)
                yield a, b, None


def _valid_square_zero_pair(a: Element, b: Element, other: Optional[Element]) -> Optional[Element]:
    """The given partner (or the least one) showing ab non-central, if (a, b) qualifies."""
    if (a * a).index or (b * b).index:
        return None
    ab = a * b
    if ab != b * a or is_central(ab):
        return None
    if other is not None and ab * other != other * ab:
        return other
    return noncommuting_partner(ab)


def square_zero_noncentral_witness(ring: FiniteRing) -> PropertyReport:
    """
    Look for a, b with a² = b² = 0, ab = ba and ab not central; then
    (a + bx)(a - bx) = 0 refutes central linear Armendariz.

    Construction-provided pairs are tried first, then every pair of nonzero
    square-zero elements in canonical order. Reported as property
    `square-zero-central`, which fails exactly when such a pair exists.
    """
    started = time.perf_counter()
    name = "square-zero-central"
    tried = 0
    for a, b, other in _square_zero_candidates(ring):
        tried += 1
        partner = _valid_square_zero_pair(a, b, other)
        if partner is not None:
            return _report(name, ring, started, square_zero_pair(a, b, partner), work=tried,
                           note="constructive pair")
    squares = square_vector(ring)
    zeros = np.flatnonzero(squares == 0)
    zeros = zeros[zeros != 0]
    if zeros.size:
        central = central_mask(ring)
        for a in zeros:
            left = ring.mul_many(a, zeros)
            right = ring.mul_many(zeros, a)
            tried += int(zeros.size)
            hit = _first((left == right) & ~central[left])
            if hit is not None:
                x, y = ring.element(a), ring.element(zeros[hit])
                partner = noncommuting_partner(x * y)
                return _report(name, ring, started, square_zero_pair(x, y, partner), work=tried)
    return _report(name, ring, started, work=tried)


#####################################
# Annihilating-pair sweeps
#####################################


def _allowed_products(ring: FiniteRing, condition: str) -> np.ndarray:
    """Mask of coefficient products a checker accepts."""
    if condition == "central":
        return central_mask(ring)
    if condition == "nilpotent":
        return nilpotent_mask(ring)
    only_zero = np.zeros(ring.order, dtype=bool)
    only_zero[0] = True
    return only_zero


def _block_violation(view: RingView, block: PairBlock, allowed: np.ndarray) -> Optional[Tuple[int, Tuple[int, int]]]:
    """First row of the block with a disallowed coefficient product, and the least (i, j)."""
    if block.lazy or len(block) == 0:
        return None
    width_a = len(block.a)
    width_b = block.b.shape[1]
    bad = {}
    any_bad = np.zeros(len(block), dtype=bool)
    for i in range(width_a):
        if block.a[i] == 0:
            continue
        for j in range(width_b):
            bad[(i, j)] = ~allowed[view.mul(block.a[i], block.b[:, j])]
            any_bad |= bad[(i, j)]
    row = _first(any_bad)
    if row is None:
        return None
    position = min(pos for pos, mask in bad.items() if mask[row])
    return row, position


def _sweep(
    name: str,
    ring: FiniteRing,
    blocks_for: Callable[[SweepMeter], Iterable[PairBlock]],
    condition: str,
    budget: Optional[AnnPairBudget],
    degree: Optional[int],
    started: float,
) -> PropertyReport:
    """Run a block sweep; the first violating row is the canonical witness."""
    meter = SweepMeter(budget or AnnPairBudget(), started=started)
    allowed = _allowed_products(ring, condition)
    view = RingView(ring)
    try:
        for block in blocks_for(meter):
            found = _block_violation(view, block, allowed)
            if found is None:
                continue
            row, (i, j) = found
            a = [ring.element(x) for x in block.a]
            b = [ring.element(y) for y in block.b[row]]
            partner = None
            if condition == "central":
                partner = noncommuting_partner(a[i] * b[j])
            witness = annihilating_pair_violation(a, b, (i, j), condition, partner)
            witness.notes["route"] = "sweep"
            return _report(name, ring, started, witness, work=meter.examined)
    except BudgetExhausted:
        logger.warning(f"{name} on {ring.text}: budget exhausted after {meter.examined} tuples in {meter.elapsed_ms:.1f} ms")
        raise
    return _report(name, ring, started, work=meter.examined, degree=degree)


def is_linear_armendariz(ring: FiniteRing, budget: Optional[AnnPairBudget] = None, threads: int = 1) -> PropertyReport:
    """(a0 + a1x)(b0 + b1x) = 0 forces every a_i b_j = 0."""
    started = time.perf_counter()
    return _sweep("linear-armendariz", ring, lambda meter: linear_pair_blocks(ring, meter, threads),
                  "zero", budget, None, started)


def is_weak_linear_armendariz(ring: FiniteRing, budget: Optional[AnnPairBudget] = None, threads: int = 1) -> PropertyReport:
    """Linear annihilating pairs force every a_i b_j to be nilpotent."""
    started = time.perf_counter()
    return _sweep("weak-linear-armendariz", ring, lambda meter: linear_pair_blocks(ring, meter, threads),
                  "nilpotent", budget, None, started)


def _structural_refutation(ring: FiniteRing, condition: str) -> Optional[Tuple[Witness, int]]:
    """
    A failing linear pair read off the ring's structure, or None.

    First a square-zero pair a, b with ab = ba not central, giving
    (a + bx)(a - bx) = 0; then a non-central idempotent e turned into
    f = e - cx, g = (1-e) + cx with c = e·r·(1-e). In both, a_0·b_1 is
    nonzero and not central.
    """
    pre = square_zero_noncentral_witness(ring)
    if pre.witness is not None:
        a, b, r = pre.witness["a"], pre.witness["b"], pre.witness["r"]
        witness = annihilating_pair_violation([a, b], [a, -b], (0, 1), condition,
                                              r if condition == "central" else None)
        witness.notes["route"] = "square-zero-pair"
        return witness, pre.work
    abelian = is_abelian(ring)
    if abelian.witness is not None:
        a0, a1, b0, b1 = _idempotent_quadruple(abelian.witness["e"])
        partner = noncommuting_partner(a0 * b1) if condition == "central" else None
        witness = annihilating_pair_violation([a0, a1], [b0, b1], (0, 1), condition, partner)
        witness.notes["route"] = "noncentral-idempotent"
        return witness, abelian.work
    return None


def is_central_linear_armendariz(ring: FiniteRing, budget: Optional[AnnPairBudget] = None, threads: int = 1) -> PropertyReport:
    """
    Linear annihilating pairs force every a_i b_j to be central.

    The structural refuters run before the sweep; holding is only ever
    concluded by the full sweep.
    """
    started = time.perf_counter()
    name = "central-linear-armendariz"
    refuted = _structural_refutation(ring, "central")
    if refuted is not None:
        witness, work = refuted
        return _report(name, ring, started, witness, work=work)
    return _sweep(name, ring, lambda meter: linear_pair_blocks(ring, meter, threads),
                  "central", budget, None, started)


def _idempotent_quadruple(e: Element) -> Tuple[Element, Element, Element, Element]:
    """Least r with e·r·(1-e) != 0, else the same for 1-e."""
    ring = e.ring
    everything = ring.all_indices()
    for idem in (e, ring.one - e):
        complement = (ring.one - idem).index
        c = ring.mul_many(ring.mul_many(idem.index, everything), complement)
        r = _first(c != 0)
        if r is not None:
            return idempotent_annihilating_pair(idem, ring.element(r))
    raise AssertionError(f"{e!r} is central after all")


def is_armendariz_up_to(ring: FiniteRing, d: int = DEFAULT_DEGREE, budget: Optional[AnnPairBudget] = None,
                        threads: int = 1) -> PropertyReport:
    """
    f·g = 0 with deg f, deg g <= d forces every a_i b_j = 0.

    A structural refutation ends the check at once; otherwise the degree
    sweep decides.
    """
    started = time.perf_counter()
    refuted = _structural_refutation(ring, "zero")
    if refuted is not None:
        witness, work = refuted
        return _report("armendariz", ring, started, witness, work=work)
    return _sweep("armendariz", ring, lambda meter: degree_pair_blocks(ring, d, meter, threads),
                  "zero", budget, d, started)


def is_weak_armendariz_up_to(ring: FiniteRing, d: int = DEFAULT_DEGREE, budget: Optional[AnnPairBudget] = None,
                             threads: int = 1) -> PropertyReport:
    """f·g = 0 with deg f, deg g <= d forces every a_i b_j to be nilpotent."""
    started = time.perf_counter()
    return _sweep("weak-armendariz", ring, lambda meter: degree_pair_blocks(ring, d, meter, threads),
                  "nilpotent", budget, d, started)


#####################################
# Registry and profiles
#####################################


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    func: Callable[..., PropertyReport]
    sweeps: bool = False
    degree_bounded: bool = False


PROPERTIES: Dict[str, PropertyCheck] = {
    check.name: check
    for check in [
        PropertyCheck("commutative", is_commutative),
        PropertyCheck("reduced", is_reduced),
        PropertyCheck("central-reduced", is_central_reduced),
        PropertyCheck("abelian", is_abelian),
        PropertyCheck("semicommutative", is_semicommutative),
        PropertyCheck("von-neumann-regular", is_von_neumann_regular),
        PropertyCheck("strongly-regular", is_strongly_regular),
        PropertyCheck("right-pp", is_right_pp),
        PropertyCheck("semiprime", is_semiprime),
        PropertyCheck("square-zero-central", square_zero_noncentral_witness),
        PropertyCheck("central-linear-armendariz", is_central_linear_armendariz, sweeps=True),
        PropertyCheck("linear-armendariz", is_linear_armendariz, sweeps=True),
        PropertyCheck("weak-linear-armendariz", is_weak_linear_armendariz, sweeps=True),
        PropertyCheck("armendariz", is_armendariz_up_to, sweeps=True, degree_bounded=True),
        PropertyCheck("weak-armendariz", is_weak_armendariz_up_to, sweeps=True, degree_bounded=True),
    ]
}

PROFILE_ORDER: Tuple[str, ...] = tuple(name for name in PROPERTIES if name != "weak-armendariz")


def check_property(
    ring: FiniteRing,
    name: str,
    degree: int = DEFAULT_DEGREE,
    budget: Optional[AnnPairBudget] = None,
    threads: int = 1,
) -> PropertyReport:
    """Dispatch one checker by name; raises BudgetExhausted from sweeps."""
    check = PROPERTIES.get(name)
    if check is None:
        raise InvalidParameter(f"unknown property {name!r}; known: {', '.join(PROPERTIES)}")
    if check.degree_bounded:
        return check.func(ring, degree, budget, threads)
    if check.sweeps:
        return check.func(ring, budget, threads)
    return check.func(ring)


def property_profile(
    ring: FiniteRing,
    d: int = DEFAULT_DEGREE,
    budget: Optional[AnnPairBudget] = None,
    threads: int = 1,
    properties: Optional[Sequence[str]] = None,
) -> List[PropertyReport]:
    """
    Every checker in fixed order. A sweep that runs out of budget is kept
    in the profile as a budget-exhausted report instead of aborting it.
    """
    reports = []
    for name in properties or PROFILE_ORDER:
        started = time.perf_counter()
        try:
            reports.append(check_property(ring, name, d, budget, threads))
        except BudgetExhausted as exc:
            degree = d if PROPERTIES[name].degree_bounded else None
            reports.append(PropertyReport(name, Verdict.BUDGET_EXHAUSTED, ring.text, degree, None, exc.examined,
                                          (time.perf_counter() - started) * 1000.0, str(exc)))
    return reports


#####################################
# Implication audit
#####################################


@dataclass(frozen=True)
class Rule:
    name: str
    premises: Tuple[Tuple[str, bool], ...]
    conclusion: Tuple[str, bool]


IMPLICATIONS: Tuple[Rule, ...] = (
    Rule("armendariz => linear-armendariz", (("armendariz", True),), ("linear-armendariz", True)),
    Rule("linear-armendariz => central-linear-armendariz", (("linear-armendariz", True),),
         ("central-linear-armendariz", True)),
    Rule("central-linear-armendariz => abelian", (("central-linear-armendariz", True),), ("abelian", True)),
    Rule("commutative => central-linear-armendariz", (("commutative", True),), ("central-linear-armendariz", True)),
    Rule("reduced => central-reduced", (("reduced", True),), ("central-reduced", True)),
    Rule("central-reduced => central-linear-armendariz", (("central-reduced", True),),
         ("central-linear-armendariz", True)),
    Rule("linear-armendariz => weak-linear-armendariz", (("linear-armendariz", True),),
         ("weak-linear-armendariz", True)),
    Rule("right-pp and central-linear-armendariz => linear-armendariz",
         (("right-pp", True), ("central-linear-armendariz", True)), ("linear-armendariz", True)),
    Rule("reduced and weak-linear-armendariz => central-linear-armendariz",
         (("reduced", True), ("weak-linear-armendariz", True)), ("central-linear-armendariz", True)),
    Rule("central-linear-armendariz => square-zero-central", (("central-linear-armendariz", True),),
         ("square-zero-central", True)),
    Rule("strongly-regular => central-reduced", (("strongly-regular", True),), ("central-reduced", True)),
    Rule("reduced => armendariz", (("reduced", True),), ("armendariz", True)),
    Rule("reduced => semicommutative", (("reduced", True),), ("semicommutative", True)),
    Rule("armendariz => weak-armendariz", (("armendariz", True),), ("weak-armendariz", True)),
    Rule("weak-armendariz => weak-linear-armendariz", (("weak-armendariz", True),),
         ("weak-linear-armendariz", True)),
)

# equal verdicts required on von Neumann regular rings
REGULAR_EQUIVALENTS: Tuple[str, ...] = (
    "armendariz", "reduced", "central-linear-armendariz", "linear-armendariz", "semicommutative",
)


@dataclass
class AuditResult:
    ring: str
    checked: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        # a contradiction raises, so a returned result is always consistent
        return {"ring": self.ring, "consistent": True, "checked": self.checked, "skipped": self.skipped}


def implication_audit(profile: Sequence[PropertyReport]) -> AuditResult:
    """
    Check one ring's profile against the implication rules.

    A rule is applied when every premise verdict matches and the conclusion
    has a verdict; anything budget-exhausted or missing skips the rule.
    Violations raise ContradictionFound with the conflicting reports.
    """
    by_name = {report.property: report for report in profile}
    result = AuditResult(profile[0].ring if profile else "")
    for rule in IMPLICATIONS:
        names = [p for p, _ in rule.premises] + [rule.conclusion[0]]
        if any(n not in by_name or by_name[n].positive is None for n in names):
            result.skipped.append(rule.name)
            continue
        if all(by_name[p].positive == want for p, want in rule.premises):
            conclusion = by_name[rule.conclusion[0]]
            if conclusion.positive != rule.conclusion[1]:
                premise = [by_name[p].to_dict() for p, _ in rule.premises]
                raise ContradictionFound(rule.name, premise, conclusion.to_dict())
        result.checked.append(rule.name)
    regular = by_name.get("von-neumann-regular")
    rule_name = "von-neumann-regular => equal verdicts"
    known = [by_name[n] for n in REGULAR_EQUIVALENTS if n in by_name and by_name[n].positive is not None]
    if regular is None or regular.positive is None or len(known) < 2:
        result.skipped.append(rule_name)
    else:
        if regular.positive:
            first = known[0]
            for other in known[1:]:
                if other.positive != first.positive:
                    raise ContradictionFound(rule_name, first.to_dict(), other.to_dict())
        result.checked.append(rule_name)
    logger.info(f"Audit of {result.ring}: {len(result.checked)} rules checked, {len(result.skipped)} skipped")
    return result
