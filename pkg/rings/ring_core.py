"""
ring_core.py - arithmetic, enumeration and structural queries for finite rings.

Every ring is a finite unital associative ring whose elements are numbered
0..order-1 (zero is always 0). Arithmetic is defined on those indices and is
vectorised over numpy arrays; rings small enough (order <= table cap) cache
full addition and multiplication tables, built lazily under a lock.

Structural queries (center, annihilators, idempotents, nilpotents, ideals,
quotients, generated subrings, axiom checks) are exhaustive.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from rings.descriptors import Opp, Quot, RingDescriptor, Sub, Table
from rings.errors import AxiomViolation, InvalidParameter, MixedRings, NotAnIdeal
from utils.utils_config import (
    DEFAULT_AXIOM_CAP,
    DEFAULT_AXIOM_SAMPLES,
    DEFAULT_TABLE_CAP,
)
from utils.utils_logger import logger

IndexArray = np.ndarray

# rows of a lazily built table computed per numpy call
_TABLE_CHUNK_CELLS = 1 << 20


#####################################
# Finite ring base class
#####################################


class FiniteRing:
    """
    A concrete finite ring with a dense canonical numbering of its elements.

    Subclasses supply the codec (`decode`/`encode`) and the structural
    operations `_add_many`, `_mul_many`, `_neg_many`, which take and return
    int64 index arrays of any broadcastable shape.
    """

    def __init__(self, order: int, descriptor: RingDescriptor, table_cap: Optional[int] = None):
        if order < 1:
            raise InvalidParameter(f"ring order must be positive, got {order}")
        self.order = int(order)
        self.descriptor = descriptor
        self.table_cap = DEFAULT_TABLE_CAP if table_cap is None else int(table_cap)
        self._lock = threading.Lock()
        self._add_table: Optional[np.ndarray] = None
        self._mul_table: Optional[np.ndarray] = None
        self._neg_vector: Optional[np.ndarray] = None
        self._generators: Optional[List[int]] = None

    # ----- identity -----

    @property
    def text(self) -> str:
        return self.descriptor.render()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.text} order={self.order}>"

    # ----- codec -----

    def decode(self, index: int) -> Any:
        raise NotImplementedError

    def encode(self, value: Any) -> int:
        raise NotImplementedError

    @property
    def one_index(self) -> int:
        raise NotImplementedError

    # ----- structural operations on index arrays -----

    def _add_many(self, x: IndexArray, y: IndexArray) -> IndexArray:
        raise NotImplementedError

    def _mul_many(self, x: IndexArray, y: IndexArray) -> IndexArray:
        raise NotImplementedError

    def _neg_many(self, x: IndexArray) -> IndexArray:
        raise NotImplementedError

    # ----- tables -----

    @property
    def tabled(self) -> bool:
        return self.order <= self.table_cap

    def _build_table(self, op: Callable[[IndexArray, IndexArray], IndexArray]) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        table = np.empty((self.order, self.order), dtype=np.int64)
        step = max(1, _TABLE_CHUNK_CELLS // self.order)
        for start in range(0, self.order, step):
            rows = idx[start:start + step]
            table[start:start + step] = op(rows[:, None], idx[None, :])
        return table

    def _ensure_tables(self) -> None:
        if self._mul_table is not None:
            return
        with self._lock:
            if self._mul_table is not None:
                return
            add_table = self._build_table(self._add_many)
            neg_vector = self._neg_many(np.arange(self.order, dtype=np.int64))
            mul_table = self._build_table(self._mul_many)
            self._add_table = add_table
            self._neg_vector = np.asarray(neg_vector, dtype=np.int64)
            # published last: readers test _mul_table first
            self._mul_table = mul_table
            logger.debug(f"Built tables for {self.text} (order {self.order})")

    @property
    def add_table(self) -> Optional[np.ndarray]:
        if not self.tabled:
            return None
        self._ensure_tables()
        return self._add_table

    @property
    def mul_table(self) -> Optional[np.ndarray]:
        if not self.tabled:
            return None
        self._ensure_tables()
        return self._mul_table

    @property
    def neg_vector(self) -> Optional[np.ndarray]:
        if not self.tabled:
            return None
        self._ensure_tables()
        return self._neg_vector

    # ----- public vectorised arithmetic -----

    def add_many(self, x, y) -> IndexArray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.tabled:
            return self.add_table[x, y]
        return self._add_many(x, y)

    def mul_many(self, x, y) -> IndexArray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.tabled:
            return self.mul_table[x, y]
        return self._mul_many(x, y)

    def neg_many(self, x) -> IndexArray:
        x = np.asarray(x, dtype=np.int64)
        if self.tabled:
            return self.neg_vector[x]
        return self._neg_many(x)

    def add_idx(self, i: int, j: int) -> int:
        return int(self.add_many(i, j))

    def mul_idx(self, i: int, j: int) -> int:
        return int(self.mul_many(i, j))

    def neg_idx(self, i: int) -> int:
        return int(self.neg_many(i))

    def all_indices(self) -> IndexArray:
        return np.arange(self.order, dtype=np.int64)

    # ----- elements -----

    def element(self, index: int) -> "Element":
        index = int(index)
        if not 0 <= index < self.order:
            raise InvalidParameter(f"index {index} out of range for {self.text}")
        return Element(self, index)

    def from_value(self, value: Any) -> "Element":
        return Element(self, self.encode(value))

    @property
    def zero(self) -> "Element":
        return Element(self, 0)

    @property
    def one(self) -> "Element":
        return Element(self, self.one_index)

    def elements(self) -> Iterator["Element"]:
        for i in range(self.order):
            yield Element(self, i)

    # ----- additive generators -----

    def _structural_generators(self) -> Optional[List[int]]:
        """Subclasses return a known generating set of (R,+), or None."""
        return None

    def additive_generators(self) -> List["Element"]:
        """A list of elements generating the additive group."""
        if self._generators is None:
            gens = self._structural_generators()
            if gens is None:
                gens = _greedy_additive_generators(self)
            self._generators = list(gens)
        return [Element(self, g) for g in self._generators]


def _greedy_additive_generators(ring: FiniteRing) -> List[int]:
    """Scan indices in order and keep those outside the span of the kept ones."""
    span = np.zeros(ring.order, dtype=bool)
    span[0] = True
    gens: List[int] = []
    for i in range(1, ring.order):
        if span[i]:
            continue
        gens.append(i)
        members = np.flatnonzero(span)
        frontier = members
        while frontier.size:
            step = ring.add_many(frontier, i)
            fresh = np.unique(step[~span[step]])
            span[fresh] = True
            frontier = fresh
        if span.all():
            break
    return gens


#####################################
# Elements and subsets
#####################################


@dataclass(frozen=True, eq=False)
class Element:
    """An element of `ring`, stored by its canonical index."""

    ring: FiniteRing
    index: int

    @property
    def value(self) -> Any:
        return self.ring.decode(self.index)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and other.ring is self.ring and other.index == self.index

    def __hash__(self) -> int:
        return hash((id(self.ring), self.index))

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return add(self, neg(other))

    def __neg__(self) -> "Element":
        return neg(self)

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def __pow__(self, exponent: int) -> "Element":
        result = self.ring.one
        for _ in range(exponent):
            result = mul(result, self)
        return result

    def __repr__(self) -> str:
        return f"{self.ring.text}[{self.value!r}]"


@dataclass(frozen=True)
class Subset:
    """A sorted, duplicate-free set of element indices of one ring."""

    ring: FiniteRing
    members: Tuple[int, ...]

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: np.ndarray) -> "Subset":
        return cls(ring, tuple(int(i) for i in np.flatnonzero(mask)))

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices: Iterable[int]) -> "Subset":
        return cls(ring, tuple(sorted({int(i) for i in indices})))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Element):
            if item.ring is not self.ring:
                return False
            item = item.index
        return int(item) in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    def __iter__(self) -> Iterator[Element]:
        for i in self.members:
            yield Element(self.ring, i)

    @property
    def array(self) -> IndexArray:
        return np.asarray(self.members, dtype=np.int64)

    @property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.ring.order, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def elements(self) -> List[Element]:
        return list(self)


#####################################
# Element arithmetic
#####################################


def _same_ring(a: Element, b: Element) -> FiniteRing:
    if a.ring is not b.ring:
        raise MixedRings(a.ring.text, b.ring.text)
    return a.ring


def add(a: Element, b: Element) -> Element:
    """a + b."""
    ring = _same_ring(a, b)
    return Element(ring, ring.add_idx(a.index, b.index))


def neg(a: Element) -> Element:
    """The additive inverse of a."""
    return Element(a.ring, a.ring.neg_idx(a.index))


def mul(a: Element, b: Element) -> Element:
    """a · b."""
    ring = _same_ring(a, b)
    return Element(ring, ring.mul_idx(a.index, b.index))


#####################################
# Element predicates
#####################################


def is_nilpotent(a: Element) -> bool:
    """
    Iterate powers of a until 0 or a repeated power shows up.

    A repeat means the powers cycle without reaching 0; the loop ends
    within `order` steps.
    """
    ring = a.ring
    seen = set()
    power = a.index
    while power != 0:
        if power in seen:
            return False
        seen.add(power)
        power = ring.mul_idx(power, a.index)
    return True


def is_idempotent(a: Element) -> bool:
    return a.ring.mul_idx(a.index, a.index) == a.index


def noncommuting_partner(a: Element) -> Optional[Element]:
    """The least r (canonical order) with a·r != r·a, or None if a is central."""
    ring = a.ring
    everything = ring.all_indices()
    differs = ring.mul_many(a.index, everything) != ring.mul_many(everything, a.index)
    hits = np.flatnonzero(differs)
    return Element(ring, int(hits[0])) if hits.size else None


def is_central(a: Element) -> bool:
    """
    True iff a commutes with every element.

    Table-backed rings sweep a row against a column. Larger rings compare
    against additive generators only, which suffices because multiplication
    is biadditive.
    """
    ring = a.ring
    if ring.tabled:
        table = ring.mul_table
        return bool(np.array_equal(table[a.index, :], table[:, a.index]))
    gens = np.asarray([g.index for g in ring.additive_generators()], dtype=np.int64)
    if gens.size == 0:
        return True
    return bool(np.array_equal(ring.mul_many(a.index, gens), ring.mul_many(gens, a.index)))


#####################################
# Whole-ring masks
#####################################


def central_mask(ring: FiniteRing) -> np.ndarray:
    """Boolean mask of central elements."""
    if ring.tabled:
        table = ring.mul_table
        return np.all(table == table.T, axis=1)
    everything = ring.all_indices()
    mask = np.ones(ring.order, dtype=bool)
    for g in ring.additive_generators():
        mask &= ring.mul_many(everything, g.index) == ring.mul_many(g.index, everything)
    return mask


def square_vector(ring: FiniteRing) -> IndexArray:
    everything = ring.all_indices()
    return ring.mul_many(everything, everything)


def nilpotent_mask(ring: FiniteRing) -> np.ndarray:
    """
    Boolean mask of nilpotent elements.

    A nilpotent element's powers are distinct until they hit 0, so its index
    is at most `order`; squaring ceil(log2(order)) times reaches a^(2^t) with
    2^t >= order.
    """
    powers = ring.all_indices()
    reach = 1
    while reach < ring.order:
        powers = ring.mul_many(powers, powers)
        reach *= 2
    return powers == 0


def idempotent_mask(ring: FiniteRing) -> np.ndarray:
    return square_vector(ring) == ring.all_indices()


#####################################
# Structural queries
#####################################


def _assert_closed_under_add(ring: FiniteRing, members: IndexArray, mask: np.ndarray) -> None:
    if ring.tabled and members.size:
        assert mask[ring.add_many(members[:, None], members[None, :])].all()


def center(ring: FiniteRing) -> Subset:
    """C(R): every element commuting with all of R."""
    mask = central_mask(ring)
    subset = Subset.from_mask(ring, mask)
    assert mask[0] and mask[ring.one_index]
    if ring.tabled:
        members = subset.array
        _assert_closed_under_add(ring, members, mask)
        assert mask[ring.mul_many(members[:, None], members[None, :])].all()
    return subset


def right_annihilator(a: Element) -> Subset:
    """r(a) = { b : a·b = 0 }, a right ideal."""
    ring = a.ring
    everything = ring.all_indices()
    mask = ring.mul_many(a.index, everything) == 0
    subset = Subset.from_mask(ring, mask)
    if ring.tabled:
        members = subset.array
        _assert_closed_under_add(ring, members, mask)
        assert mask[ring.mul_many(members[:, None], everything[None, :])].all()
    return subset


def left_annihilator(a: Element) -> Subset:
    """l(a) = { b : b·a = 0 }, a left ideal."""
    ring = a.ring
    everything = ring.all_indices()
    mask = ring.mul_many(everything, a.index) == 0
    subset = Subset.from_mask(ring, mask)
    if ring.tabled:
        members = subset.array
        _assert_closed_under_add(ring, members, mask)
        assert mask[ring.mul_many(everything[:, None], members[None, :])].all()
    return subset


def idempotents(ring: FiniteRing) -> Subset:
    return Subset.from_mask(ring, idempotent_mask(ring))


def nilpotents(ring: FiniteRing) -> Subset:
    return Subset.from_mask(ring, nilpotent_mask(ring))


def _close_two_sided(ring: FiniteRing, seeds: Sequence[int]) -> np.ndarray:
    """Worklist closure under +, negation and multiplication by R on both sides."""
    everything = ring.all_indices()
    mask = np.zeros(ring.order, dtype=bool)
    mask[0] = True
    worklist = [int(s) for s in seeds]
    for s in worklist:
        mask[s] = True
    while worklist:
        x = worklist.pop()
        members = np.flatnonzero(mask)
        produced = np.concatenate([
            ring.add_many(x, members),
            np.atleast_1d(ring.neg_many(x)),
            ring.mul_many(everything, x),
            ring.mul_many(x, everything),
        ])
        fresh = np.unique(produced[~mask[produced]])
        mask[fresh] = True
        worklist.extend(int(f) for f in fresh)
    return mask


def ideal_closure(ring: FiniteRing, gens: Sequence[Element]) -> Subset:
    """The two-sided ideal generated by `gens`."""
    if not gens:
        raise InvalidParameter("ideal_closure needs at least one generator")
    for g in gens:
        if g.ring is not ring:
            raise MixedRings(ring.text, g.ring.text)
    mask = _close_two_sided(ring, [g.index for g in gens])
    subset = Subset.from_mask(ring, mask)
    assert _ideal_defect(ring, subset) is None
    return subset


def _ideal_defect(ring: FiniteRing, subset: Subset) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Return the first closure failure of a would-be ideal, or None."""
    mask = subset.mask
    members = subset.array
    everything = ring.all_indices()
    if not mask[0]:
        return ("contains zero", (0,))
    for x in members:
        sums = ring.add_many(x, members)
        bad = np.flatnonzero(~mask[sums])
        if bad.size:
            return ("closed under addition", (int(x), int(members[bad[0]])))
        if not mask[ring.neg_idx(int(x))]:
            return ("closed under negation", (int(x),))
        left = ring.mul_many(everything, x)
        bad = np.flatnonzero(~mask[left])
        if bad.size:
            return ("absorbs left multiplication", (int(bad[0]), int(x)))
        right = ring.mul_many(x, everything)
        bad = np.flatnonzero(~mask[right])
        if bad.size:
            return ("absorbs right multiplication", (int(x), int(bad[0])))
    return None


def is_ideal(ring: FiniteRing, subset: Subset) -> bool:
    return _ideal_defect(ring, subset) is None


#####################################
# Quotient rings
#####################################


class QuotientRing(FiniteRing):
    """R/I; each coset is named by its least member index."""

    def __init__(self, base: FiniteRing, ideal: Subset):
        self.base = base
        self.ideal = ideal
        ideal_arr = ideal.array
        everything = base.all_indices()
        reps = np.empty(base.order, dtype=np.int64)
        step = max(1, _TABLE_CHUNK_CELLS // max(1, ideal_arr.size))
        for start in range(0, base.order, step):
            rows = everything[start:start + step]
            reps[start:start + step] = base.add_many(rows[:, None], ideal_arr[None, :]).min(axis=1)
        self.representatives = np.unique(reps)
        # base index -> quotient index
        rank = np.full(base.order, -1, dtype=np.int64)
        rank[self.representatives] = np.arange(self.representatives.size, dtype=np.int64)
        self._projection = rank[reps]
        gens = tuple(int(g) for g in ideal.members if g != 0) or (0,)
        descriptor = Quot(base.descriptor, gens)
        super().__init__(int(self.representatives.size), descriptor, base.table_cap)
        self._one = int(self._projection[base.one_index])

    def project_many(self, x) -> IndexArray:
        return self._projection[np.asarray(x, dtype=np.int64)]

    def project(self, a: Element) -> Element:
        """The quotient map R -> R/I."""
        if a.ring is not self.base:
            raise MixedRings(self.base.text, a.ring.text)
        return Element(self, int(self._projection[a.index]))

    def decode(self, index: int) -> Any:
        return self.base.decode(int(self.representatives[index]))

    def encode(self, value: Any) -> int:
        return int(self._projection[self.base.encode(value)])

    @property
    def one_index(self) -> int:
        return self._one

    def _lift(self, x: IndexArray) -> IndexArray:
        return self.representatives[np.asarray(x, dtype=np.int64)]

    def _add_many(self, x, y):
        return self._projection[self.base.add_many(self._lift(x), self._lift(y))]

    def _mul_many(self, x, y):
        return self._projection[self.base.mul_many(self._lift(x), self._lift(y))]

    def _neg_many(self, x):
        return self._projection[self.base.neg_many(self._lift(x))]

    def _structural_generators(self):
        images = {int(self._projection[g.index]) for g in self.base.additive_generators()}
        images.discard(0)
        return sorted(images)


def quotient_ring(ring: FiniteRing, ideal: Subset, samples: int = 256, seed: int = 0) -> QuotientRing:
    """Ring of cosets R/I; raises NotAnIdeal when I fails a closure law."""
    if ideal.ring is not ring:
        raise MixedRings(ring.text, ideal.ring.text)
    defect = _ideal_defect(ring, ideal)
    if defect is not None:
        law, witness = defect
        raise NotAnIdeal(f"subset is not an ideal of {ring.text}: fails '{law}' at {witness}", witness)
    quotient = QuotientRing(ring, ideal)
    assert ring.order % quotient.order == 0
    # the projection must be a ring homomorphism
    rng = np.random.default_rng(seed)
    x = rng.integers(0, ring.order, size=samples)
    y = rng.integers(0, ring.order, size=samples)
    assert np.array_equal(quotient.project_many(ring.add_many(x, y)),
                          quotient.add_many(quotient.project_many(x), quotient.project_many(y)))
    assert np.array_equal(quotient.project_many(ring.mul_many(x, y)),
                          quotient.mul_many(quotient.project_many(x), quotient.project_many(y)))
    logger.debug(f"Quotient {ring.text} / {len(ideal)} elements -> order {quotient.order}")
    return quotient


#####################################
# Generated subrings
#####################################


class GeneratedSubring(FiniteRing):
    """A subring of `base`, renumbered by rank of the base index."""

    def __init__(self, base: FiniteRing, members: Subset, gens: Tuple[int, ...]):
        self.base = base
        self.members = members.array
        rank = np.full(base.order, -1, dtype=np.int64)
        rank[self.members] = np.arange(self.members.size, dtype=np.int64)
        self._rank = rank
        super().__init__(int(self.members.size), Sub(base.descriptor, gens), base.table_cap)

    def inclusion(self, a: Element) -> Element:
        """The embedding into the ambient ring."""
        return Element(self.base, int(self.members[a.index]))

    def restrict(self, a: Element) -> Element:
        if a.ring is not self.base or self._rank[a.index] < 0:
            raise MixedRings(self.base.text, a.ring.text)
        return Element(self, int(self._rank[a.index]))

    def decode(self, index: int) -> Any:
        return self.base.decode(int(self.members[index]))

    def encode(self, value: Any) -> int:
        position = int(self._rank[self.base.encode(value)])
        if position < 0:
            raise InvalidParameter(f"{value!r} is not in {self.text}")
        return position

    @property
    def one_index(self) -> int:
        return int(self._rank[self.base.one_index])

    def _up(self, x):
        return self.members[np.asarray(x, dtype=np.int64)]

    def _add_many(self, x, y):
        return self._rank[self.base.add_many(self._up(x), self._up(y))]

    def _mul_many(self, x, y):
        return self._rank[self.base.mul_many(self._up(x), self._up(y))]

    def _neg_many(self, x):
        return self._rank[self.base.neg_many(self._up(x))]


def subring_generated(ring: FiniteRing, gens: Sequence[Element]) -> GeneratedSubring:
    """Smallest subring containing `gens` and 1."""
    for g in gens:
        if g.ring is not ring:
            raise MixedRings(ring.text, g.ring.text)
    mask = np.zeros(ring.order, dtype=bool)
    seeds = [0, ring.one_index] + [g.index for g in gens]
    worklist = []
    for s in seeds:
        if not mask[s]:
            mask[s] = True
            worklist.append(s)
    while worklist:
        x = worklist.pop()
        members = np.flatnonzero(mask)
        produced = np.concatenate([
            ring.add_many(x, members),
            np.atleast_1d(ring.neg_many(x)),
            ring.mul_many(x, members),
            ring.mul_many(members, x),
        ])
        fresh = np.unique(produced[~mask[produced]])
        mask[fresh] = True
        worklist.extend(int(f) for f in fresh)
    members = Subset.from_mask(ring, mask)
    arr = members.array
    assert mask[ring.add_many(arr[:, None], arr[None, :])].all()
    assert mask[ring.mul_many(arr[:, None], arr[None, :])].all()
    return GeneratedSubring(ring, members, tuple(sorted({g.index for g in gens})))


#####################################
# Opposite and table-defined rings
#####################################


class OppositeRing(FiniteRing):
    """Same elements and addition, multiplication reversed."""

    def __init__(self, base: FiniteRing):
        self.base = base
        super().__init__(base.order, Opp(base.descriptor), base.table_cap)

    def decode(self, index):
        return self.base.decode(index)

    def encode(self, value):
        return self.base.encode(value)

    @property
    def one_index(self) -> int:
        return self.base.one_index

    def _add_many(self, x, y):
        return self.base.add_many(x, y)

    def _mul_many(self, x, y):
        return self.base.mul_many(y, x)

    def _neg_many(self, x):
        return self.base.neg_many(x)

    def _structural_generators(self):
        return [g.index for g in self.base.additive_generators()]


def opposite_ring(ring: FiniteRing) -> OppositeRing:
    return OppositeRing(ring)


class TableRing(FiniteRing):
    """
    A ring given by explicit tables over indices 0..order-1.

    Nothing is validated here; run check_axioms on it. Index 0 must be the
    additive identity.
    """

    def __init__(self, add_table, mul_table, name: str = "explicit", one: Optional[int] = None):
        add_table = np.asarray(add_table, dtype=np.int64)
        mul_table = np.asarray(mul_table, dtype=np.int64)
        order = add_table.shape[0]
        super().__init__(order, Table(name), table_cap=max(order, DEFAULT_TABLE_CAP))
        self._given_add = add_table
        self._given_mul = mul_table
        zero_hits = np.argmax(add_table == 0, axis=1)
        self._given_neg = zero_hits.astype(np.int64)
        if one is None:
            one = _find_identity(mul_table)
        self._one = 0 if one is None else int(one)

    def decode(self, index):
        return int(index)

    def encode(self, value):
        return int(value)

    @property
    def one_index(self) -> int:
        return self._one

    def _add_many(self, x, y):
        return self._given_add[x, y]

    def _mul_many(self, x, y):
        return self._given_mul[x, y]

    def _neg_many(self, x):
        return self._given_neg[x]


def _find_identity(mul_table: np.ndarray) -> Optional[int]:
    idx = np.arange(mul_table.shape[0])
    for e in idx:
        if np.array_equal(mul_table[e], idx) and np.array_equal(mul_table[:, e], idx):
            return int(e)
    return None


def table_ring(add_table, mul_table, name: str = "explicit") -> TableRing:
    return TableRing(add_table, mul_table, name)


def tables_match(left: FiniteRing, right: FiniteRing, bijection: Callable[[Element], Element]) -> bool:
    """
    True iff `bijection` (left -> right) carries both tables of `left` onto `right`.

    This is an explicit check under a stated map, not an isomorphism search.
    """
    if left.order != right.order:
        return False
    image = np.empty(left.order, dtype=np.int64)
    for a in left.elements():
        b = bijection(a)
        if b.ring is not right:
            raise MixedRings(right.text, b.ring.text)
        image[a.index] = b.index
    if np.unique(image).size != left.order:
        return False
    idx = left.all_indices()
    lhs_add = image[left.add_many(idx[:, None], idx[None, :])]
    rhs_add = right.add_many(image[:, None], image[None, :])
    lhs_mul = image[left.mul_many(idx[:, None], idx[None, :])]
    rhs_mul = right.mul_many(image[:, None], image[None, :])
    return bool(np.array_equal(lhs_add, rhs_add) and np.array_equal(lhs_mul, rhs_mul))


#####################################
# Axiom checks
#####################################


def _first_violation(bad: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(bad)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _check_triples(ring: FiniteRing, a: IndexArray, b: IndexArray, c: IndexArray) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Evaluate every law on broadcast arrays a, b, c; report the first failure."""
    a, b, c = np.broadcast_arrays(a, b, c)
    ab = ring.mul_many(a, b)
    bc = ring.mul_many(b, c)
    laws = [
        ("additive associativity",
         ring.add_many(ring.add_many(a, b), c) != ring.add_many(a, ring.add_many(b, c))),
        ("additive commutativity", ring.add_many(a, b) != ring.add_many(b, a)),
        ("associativity", ring.mul_many(ab, c) != ring.mul_many(a, bc)),
        ("left distributivity",
         ring.mul_many(a, ring.add_many(b, c)) != ring.add_many(ab, ring.mul_many(a, c))),
        ("right distributivity",
         ring.mul_many(ring.add_many(b, c), a) != ring.add_many(ring.mul_many(b, a), ring.mul_many(c, a))),
    ]
    for law, bad in laws:
        spot = _first_violation(bad)
        if spot is not None:
            return law, (int(a[spot]), int(b[spot]), int(c[spot]))
    return None


def _check_unary(ring: FiniteRing) -> None:
    everything = ring.all_indices()
    one = ring.one_index
    unary = [
        ("zero is additive identity", ring.add_many(everything, 0) != everything),
        ("negation", ring.add_many(everything, ring.neg_many(everything)) != 0),
        ("left identity", ring.mul_many(one, everything) != everything),
        ("right identity", ring.mul_many(everything, one) != everything),
    ]
    for law, bad in unary:
        hits = np.flatnonzero(bad)
        if hits.size:
            raise AxiomViolation(law, (int(hits[0]),))


def check_axioms(
    ring: FiniteRing,
    mode: str = "auto",
    sample_size: int = DEFAULT_AXIOM_SAMPLES,
    seed: int = 0,
    axiom_cap: int = DEFAULT_AXIOM_CAP,
) -> bool:
    """
    Verify the ring laws; raise AxiomViolation with the offending triple.

    mode is "exhaustive", "sampled" or "auto" (exhaustive iff order <= axiom_cap).
    Sampled mode draws `sample_size` seeded triples and is deterministic.
    """
    if mode == "auto":
        mode = "exhaustive" if ring.order <= axiom_cap else "sampled"
    _check_unary(ring)
    if mode == "exhaustive":
        if ring.order > axiom_cap:
            raise InvalidParameter(f"exhaustive axiom check needs order <= {axiom_cap}, got {ring.order}")
        everything = ring.all_indices()
        for a in everything:
            failure = _check_triples(ring, a, everything[:, None], everything[None, :])
            if failure is not None:
                raise AxiomViolation(*failure)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        a = rng.integers(0, ring.order, size=sample_size)
        b = rng.integers(0, ring.order, size=sample_size)
        c = rng.integers(0, ring.order, size=sample_size)
        failure = _check_triples(ring, a, b, c)
        if failure is not None:
            raise AxiomViolation(*failure)
    else:
        raise InvalidParameter(f"unknown axiom check mode {mode!r}")
    logger.debug(f"Axioms hold for {ring.text} ({mode})")
    return True
