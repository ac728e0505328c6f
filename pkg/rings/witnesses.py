"""
witnesses.py - counterexamples that can be re-executed.

A Witness names a few ring elements and carries a recipe: a list of steps,
each asserting a small boolean term over those names (optionally for every
element bound to extra variables). Running the recipe uses ring-core
arithmetic only, so a reader holding the ring and the JSON can confirm a
negative verdict without trusting the checker that produced it.

Term language (JSON lists, operator first):

    element terms   name | "0" | "1" | ["add", t, t] | ["sub", t, t]
                    | ["mul", t, t, ...] | ["neg", t]
    boolean terms   ["eq", t, t] | ["ne", t, t] | ["not", b]
                    | ["and", b, ...] | ["or", b, ...]
                    | ["central", t] | ["idempotent", t] | ["nilpotent", t]
                    | ["rann_is", a, e]          r(a) == eR
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from rings.errors import InvalidParameter, MixedRings
from rings.ring_core import (
    Element,
    FiniteRing,
    add,
    is_central,
    is_idempotent,
    is_nilpotent,
    mul,
    neg,
)

WITNESS_KINDS = (
    "noncentral-idempotent",
    "nilpotent-noncentral",
    "semicomm-violation",
    "annihilating-pair-violation",
    "square-zero-pair",
    "pp-failure",
    "vnr-failure",
    "semiprime-failure",
    "noncommuting-pair",
    "square-zero-element",
    "not-strongly-regular",
)

Term = Any


#####################################
# Witness record
#####################################


@dataclass
class Witness:
    kind: str
    ring: FiniteRing
    elements: Dict[str, Element]
    recheck: List[Dict[str, Any]] = field(default_factory=list)
    # extra facts for readers, e.g. the offending coefficient position
    notes: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in WITNESS_KINDS:
            raise InvalidParameter(f"unknown witness kind {self.kind!r}")
        for name, element in self.elements.items():
            if element.ring is not self.ring:
                raise MixedRings(self.ring.text, element.ring.text)

    def __getitem__(self, name: str) -> Element:
        return self.elements[name]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "ring": self.ring.text,
            "elements": {
                name: {"index": e.index, "value": jsonable(e.value)}
                for name, e in self.elements.items()
            },
            "recheck": self.recheck,
            "notes": jsonable(self.notes),
        }

    @classmethod
    def from_dict(cls, ring: FiniteRing, data: Dict[str, Any]) -> "Witness":
        """Rebuild a witness against `ring`; element indices are authoritative."""
        elements = {name: ring.element(entry["index"]) for name, entry in data["elements"].items()}
        return cls(data["kind"], ring, elements, list(data.get("recheck", [])), dict(data.get("notes", {})))

    def holds(self) -> bool:
        return recheck(self)


def jsonable(value: Any) -> Any:
    """Tuples become lists and numpy scalars become ints, recursively."""
    if isinstance(value, (tuple, list)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    return value


#####################################
# Recipe evaluation
#####################################


def _element_term(term: Term, env: Dict[str, Element], ring: FiniteRing) -> Element:
    if isinstance(term, str):
        if term == "0":
            return ring.zero
        if term == "1":
            return ring.one
        if term not in env:
            raise InvalidParameter(f"recipe names unknown element {term!r}")
        return env[term]
    op, *args = term
    values = [_element_term(a, env, ring) for a in args]
    if op == "add":
        return add(values[0], values[1])
    if op == "sub":
        return add(values[0], neg(values[1]))
    if op == "neg":
        return neg(values[0])
    if op == "mul":
        result = values[0]
        for v in values[1:]:
            result = mul(result, v)
        return result
    raise InvalidParameter(f"unknown element operator {op!r}")


def _rann_is(a: Element, e: Element) -> bool:
    ring = a.ring
    everything = ring.all_indices()
    annihilator = np.flatnonzero(ring.mul_many(a.index, everything) == 0)
    principal = np.unique(ring.mul_many(e.index, everything))
    return bool(np.array_equal(annihilator, principal))


def evaluate(term: Term, env: Dict[str, Element], ring: FiniteRing) -> bool:
    """Evaluate a boolean term."""
    op, *args = term
    if op == "eq":
        return _element_term(args[0], env, ring) == _element_term(args[1], env, ring)
    if op == "ne":
        return _element_term(args[0], env, ring) != _element_term(args[1], env, ring)
    if op == "not":
        return not evaluate(args[0], env, ring)
    if op == "and":
        return all(evaluate(a, env, ring) for a in args)
    if op == "or":
        return any(evaluate(a, env, ring) for a in args)
    if op == "central":
        return is_central(_element_term(args[0], env, ring))
    if op == "idempotent":
        return is_idempotent(_element_term(args[0], env, ring))
    if op == "nilpotent":
        return is_nilpotent(_element_term(args[0], env, ring))
    if op == "rann_is":
        return _rann_is(_element_term(args[0], env, ring), _element_term(args[1], env, ring))
    raise InvalidParameter(f"unknown boolean operator {op!r}")


def recheck(witness: Witness) -> bool:
    """True iff every recipe step holds, i.e. the violation is reproduced."""
    ring = witness.ring
    for step in witness.recheck:
        bound = step.get("forall", [])
        if not bound:
            if not evaluate(step["assert"], dict(witness.elements), ring):
                return False
            continue
        for choice in itertools.product(range(ring.order), repeat=len(bound)):
            env = dict(witness.elements)
            env.update({name: ring.element(i) for name, i in zip(bound, choice)})
            if not evaluate(step["assert"], env, ring):
                return False
    return True


#####################################
# Witness builders
#####################################


def _commute_fails(x: Term, r: Term) -> Term:
    return ["ne", ["mul", x, r], ["mul", r, x]]


def noncommuting_pair(a: Element, b: Element) -> Witness:
    return Witness("noncommuting-pair", a.ring, {"a": a, "b": b},
                   [{"assert": _commute_fails("a", "b")}])


def square_zero_element(a: Element) -> Witness:
    return Witness("square-zero-element", a.ring, {"a": a}, [
        {"assert": ["ne", "a", "0"]},
        {"assert": ["eq", ["mul", "a", "a"], "0"]},
    ])


def noncentral_idempotent(e: Element, r: Element) -> Witness:
    return Witness("noncentral-idempotent", e.ring, {"e": e, "r": r}, [
        {"assert": ["idempotent", "e"]},
        {"assert": _commute_fails("e", "r")},
    ])


def nilpotent_noncentral(a: Element, r: Element) -> Witness:
    return Witness("nilpotent-noncentral", a.ring, {"a": a, "r": r}, [
        {"assert": ["nilpotent", "a"]},
        {"assert": _commute_fails("a", "r")},
    ])


def semicomm_violation(a: Element, r: Element, b: Element) -> Witness:
    return Witness("semicomm-violation", a.ring, {"a": a, "r": r, "b": b}, [
        {"assert": ["eq", ["mul", "a", "b"], "0"]},
        {"assert": ["ne", ["mul", "a", "r", "b"], "0"]},
    ])


def vnr_failure(a: Element) -> Witness:
    return Witness("vnr-failure", a.ring, {"a": a}, [
        {"forall": ["x"], "assert": ["ne", ["mul", "a", "x", "a"], "a"]},
    ])


def not_strongly_regular(a: Element) -> Witness:
    return Witness("not-strongly-regular", a.ring, {"a": a}, [
        {"forall": ["x"], "assert": ["ne", ["mul", "a", "a", "x"], "a"]},
    ])


def semiprime_failure(a: Element) -> Witness:
    return Witness("semiprime-failure", a.ring, {"a": a}, [
        {"assert": ["ne", "a", "0"]},
        {"forall": ["r"], "assert": ["eq", ["mul", "a", "r", "a"], "0"]},
    ])


def pp_failure(a: Element) -> Witness:
    return Witness("pp-failure", a.ring, {"a": a}, [
        {"forall": ["e"], "assert": ["or", ["not", ["idempotent", "e"]], ["not", ["rann_is", "a", "e"]]]},
    ])


def square_zero_pair(a: Element, b: Element, r: Element) -> Witness:
    """a² = b² = 0, ab = ba, and r does not commute with ab; then (a+bx)(a-bx) = 0."""
    return Witness("square-zero-pair", a.ring, {"a": a, "b": b, "r": r}, [
        {"assert": ["eq", ["mul", "a", "a"], "0"]},
        {"assert": ["eq", ["mul", "b", "b"], "0"]},
        {"assert": ["eq", ["mul", "a", "b"], ["mul", "b", "a"]]},
        {"assert": _commute_fails(["mul", "a", "b"], "r")},
        {"assert": ["eq", ["add", ["mul", "a", ["neg", "b"]], ["mul", "b", "a"]], "0"]},
    ], {"annihilating_pair": {"f": ["a", "b"], "g": ["a", "-b"]}})


def convolution_terms(d_f: int, d_g: int) -> List[Term]:
    """Element terms for every coefficient of (Σ a_i x^i)(Σ b_j x^j)."""
    terms = []
    for m in range(d_f + d_g + 1):
        products = [["mul", f"a{i}", f"b{m - i}"] for i in range(max(0, m - d_g), min(d_f, m) + 1)]
        term = products[0]
        for p in products[1:]:
            term = ["add", term, p]
        terms.append(term)
    return terms


def annihilating_pair_violation(
    a: Sequence[Element],
    b: Sequence[Element],
    position: Tuple[int, int],
    condition: str,
    partner: Optional[Element] = None,
) -> Witness:
    """
    f = Σ a_i x^i, g = Σ b_j x^j with f·g = 0 while a_i·b_j (i, j = position)
    is nonzero, non-central (partner r does not commute with it) or
    non-nilpotent, per `condition` in {"zero", "central", "nilpotent"}.
    """
    ring = a[0].ring
    elements = {f"a{i}": x for i, x in enumerate(a)}
    elements.update({f"b{j}": y for j, y in enumerate(b)})
    steps = [{"assert": ["eq", term, "0"]} for term in convolution_terms(len(a) - 1, len(b) - 1)]
    i, j = position
    product = ["mul", f"a{i}", f"b{j}"]
    if condition == "zero":
        steps.append({"assert": ["ne", product, "0"]})
    elif condition == "central":
        if partner is None:
            raise InvalidParameter("a non-central product needs a non-commuting partner")
        elements["r"] = partner
        steps.append({"assert": _commute_fails(product, "r")})
    elif condition == "nilpotent":
        steps.append({"assert": ["not", ["nilpotent", product]]})
    else:
        raise InvalidParameter(f"unknown coefficient condition {condition!r}")
    notes = {"position": [i, j], "condition": condition, "product": jsonable((a[i] * b[j]).value)}
    return Witness("annihilating-pair-violation", ring, elements, steps, notes)
