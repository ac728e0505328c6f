"""
poly.py - bounded-degree polynomials over a finite ring and the pruned
enumeration of annihilating polynomial pairs.

Every Armendariz-style checker is a sweep over pairs (f, g) with f·g = 0.
The enumerators here produce those pairs in canonical lexicographic order of
coefficient indices, one block per fixed f. The g-side is pruned through
right annihilators (linear case) or built one coefficient at a time from the
fibres of left multiplication (degree d), so work tracks the output.
Blocks may be computed on worker threads; they are always consumed in
canonical order, so the stream, the work count and the point where a budget
runs out do not depend on the thread count.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import itertools
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from rings.errors import BudgetExhausted, InvalidParameter, MixedRings
from rings.ring_core import Element, FiniteRing, IndexArray
from utils.utils_config import DEFAULT_PAIR_BUDGET
from utils.utils_logger import logger

# whole-ring fibre orderings are kept per coefficient only up to this order
_FIBRE_CACHE_ORDER = 1024

# blocks computed per worker task
_TASK_BLOCKS = 64

# candidate rows a worker builds for one degree block before handing it back
# to be expanded chunk by chunk on the consuming thread
_EAGER_BLOCK_ROWS = 4096

# candidate rows built per expansion step of a chunked degree block
_CHUNK_ROWS = 1 << 15


#####################################
# Bounded polynomials
#####################################


@dataclass(frozen=True)
class BoundedPoly:
    """Coefficients a_0..a_d over one ring, constant term first."""

    ring: FiniteRing
    coeffs: Tuple[Element, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise InvalidParameter("a polynomial needs at least one coefficient")
        for c in self.coeffs:
            if c.ring is not self.ring:
                raise MixedRings(self.ring.text, c.ring.text)

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices: Sequence[int]) -> "BoundedPoly":
        return cls(ring, tuple(ring.element(i) for i in indices))

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(c.index for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.index == 0 for c in self.coeffs)

    def __mul__(self, other: "BoundedPoly") -> "BoundedPoly":
        return conv_mul(self, other)


def conv_mul(f: BoundedPoly, g: BoundedPoly) -> BoundedPoly:
    """Full convolution; the result has degree bound deg(f) + deg(g)."""
    if f.ring is not g.ring:
        raise MixedRings(f.ring.text, g.ring.text)
    ring = f.ring
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = ring.add_idx(out[i + j], ring.mul_idx(a.index, b.index))
    return BoundedPoly.from_indices(ring, out)


#####################################
# Budgets
#####################################


@dataclass(frozen=True)
class AnnPairBudget:
    """
    Upper bounds for one sweep: candidate tuples examined and wall time.

    Work is the number of candidate (partial) g-vectors generated; a block
    that is a plain product of annihilators counts the annihilator size.
    """

    max_pairs_examined: int = DEFAULT_PAIR_BUDGET
    elapsed_cap_ms: int = 0

    def __post_init__(self):
        if self.max_pairs_examined <= 0:
            raise InvalidParameter("max_pairs_examined must be positive")
        if self.elapsed_cap_ms < 0:
            raise InvalidParameter("elapsed_cap_ms must be >= 0 (0 = unlimited)")


@dataclass
class SweepMeter:
    """Running work count for one sweep; raises when the budget is spent."""

    budget: AnnPairBudget = field(default_factory=AnnPairBudget)
    examined: int = 0
    started: float = field(default_factory=time.perf_counter)

    def charge(self, tuples: int) -> None:
        if self.examined + tuples > self.budget.max_pairs_examined:
            raise BudgetExhausted(self.examined, self.budget.max_pairs_examined, "pairs")
        cap = self.budget.elapsed_cap_ms
        if cap and (time.perf_counter() - self.started) * 1000.0 > cap:
            raise BudgetExhausted(self.examined, cap, "time_ms")
        self.examined += tuples

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.started) * 1000.0


#####################################
# Arithmetic view used by the sweeps
#####################################


class RingView:
    """
    Table lookups when the ring has tables, structural numpy ops otherwise,
    plus a cache of right-annihilator index arrays.
    """

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        self.mul_table = ring.mul_table
        self.add_table = ring.add_table
        self._rann: Dict[int, IndexArray] = {}
        self._fibres: Dict[Tuple[int, Optional[int]], Tuple[IndexArray, IndexArray]] = {}
        if self.mul_table is not None:
            zero_rows = self.mul_table == 0
            self._rann_rows = [np.flatnonzero(row) for row in zero_rows]
        else:
            self._rann_rows = None

    def mul(self, x, y) -> IndexArray:
        if self.mul_table is not None:
            return self.mul_table[x, y]
        return self.ring.mul_many(x, y)

    def add(self, x, y) -> IndexArray:
        if self.add_table is not None:
            return self.add_table[x, y]
        return self.ring.add_many(x, y)

    def right_annihilator(self, a: int) -> IndexArray:
        if self._rann_rows is not None:
            return self._rann_rows[a]
        cached = self._rann.get(a)
        if cached is None:
            cached = np.flatnonzero(self.ring.mul_many(a, self.ring.all_indices()) == 0)
            self._rann[a] = cached
        return cached

    def neg(self, x) -> IndexArray:
        return self.ring.neg_many(x)

    def fibres(self, a: int, restrict: Optional[int] = None) -> Tuple[IndexArray, IndexArray]:
        """
        Candidates c (all of R, or r(restrict)) stably sorted by the key a·c,
        with the sorted keys; the c with a·c = v form one contiguous run.
        """
        cache_key = (a, restrict)
        cached = self._fibres.get(cache_key)
        if cached is None:
            cacheable = restrict is None and self.ring.order <= _FIBRE_CACHE_ORDER
            if restrict is None:
                candidates = np.arange(self.ring.order, dtype=np.int64)
            else:
                candidates = self.right_annihilator(restrict)
            keys = np.asarray(self.mul(a, candidates), dtype=np.int64)
            permutation = np.argsort(keys, kind="stable")
            cached = (candidates[permutation], keys[permutation])
            if cacheable:
                self._fibres[cache_key] = cached
        return cached


#####################################
# Pair blocks
#####################################


@dataclass
class PairBlock:
    """
    All annihilating g for one fixed f.

    Either `b` holds explicit rows of g's coefficient indices, or `factors`
    says g ranges over the product of those index sets (f has at most one
    nonzero coefficient a_s and every factor is r(a_s), so every coefficient
    product is zero); such blocks are never materialised by the checkers.
    A `deferred` block carries only `a`: it was too large to build on a
    worker and is expanded in chunks by the stream that yields it.
    """

    a: Tuple[int, ...]
    b: Optional[np.ndarray]
    examined: int
    factors: Optional[Tuple[np.ndarray, ...]] = None
    deferred: bool = False

    @property
    def lazy(self) -> bool:
        return self.factors is not None

    def __len__(self) -> int:
        if self.factors is not None:
            return int(np.prod([f.size for f in self.factors], dtype=object))
        return int(self.b.shape[0])

    def rows(self) -> np.ndarray:
        if self.factors is None:
            return self.b
        grids = np.meshgrid(*self.factors, indexing="ij")
        return np.stack([g.reshape(-1) for g in grids], axis=1).astype(np.int64)

    def iter_rows(self) -> Iterator[Tuple[int, ...]]:
        if self.factors is None:
            return (tuple(int(x) for x in row) for row in self.b)
        return itertools.product(*(f.tolist() for f in self.factors))


def _linear_block(view: RingView, a0: int, a1: int) -> PairBlock:
    """b0 ∈ r(a0), b1 ∈ r(a1), then filter a0·b1 + a1·b0 = 0."""
    b0 = view.right_annihilator(a0)
    b1 = view.right_annihilator(a1)
    examined = int(b0.size * b1.size)
    if examined == 0:
        return PairBlock((a0, a1), np.empty((0, 2), dtype=np.int64), 0)
    middle = view.add(view.mul(a1, b0)[:, None], view.mul(a0, b1)[None, :])
    rows, cols = np.nonzero(middle == 0)
    b = np.stack([b0[rows], b1[cols]], axis=1)
    return PairBlock((a0, a1), b, examined)


def _expand(prefix: np.ndarray, starts: IndexArray, counts: IndexArray, candidates: IndexArray) -> np.ndarray:
    """Append the counts[r] candidates from starts[r] on to prefix row r, keeping lex order."""
    total = int(counts.sum())
    row_of = np.repeat(np.arange(prefix.shape[0]), counts)
    first_slot = np.repeat(np.cumsum(counts) - counts, counts)
    picks = np.repeat(starts, counts) + (np.arange(total) - first_slot)
    return np.concatenate([prefix[row_of], candidates[picks][:, None]], axis=1)


def _row_ranges(counts: IndexArray, limit: int) -> Iterator[Tuple[int, int]]:
    """Consecutive row ranges whose counts sum to at most `limit`, one row at least."""
    cumulative = np.cumsum(counts)
    lo = 0
    while lo < counts.size:
        before = int(cumulative[lo - 1]) if lo else 0
        hi = max(int(np.searchsorted(cumulative, before + limit, side="right")), lo + 1)
        yield lo, hi
        lo = hi


def _degree_rows(
    view: RingView,
    a: Tuple[int, ...],
    charge: Callable[[int], None],
    chunk_rows: int,
) -> Iterator[np.ndarray]:
    """
    Every b with conv(a, b) = 0, for a with two or more nonzero coefficients,
    as row arrays in lexicographic order.

    With s the lowest and t the highest nonzero position of a, coefficient
    s+j of the product is the first to involve b_j, through a_s·b_j. So at
    level j, b_j must satisfy a_s·b_j = -(the rest of that coefficient) and
    is read straight off the fibres of c -> a_s·c; b_d is drawn from r(a_t).
    The coefficients past s+d are checked once every b_j is fixed.

    Levels are expanded depth first, at most `chunk_rows` candidates at a
    time, and `charge(n)` runs before n candidates are built.
    """
    d = len(a) - 1
    nonzero = [i for i, x in enumerate(a) if x != 0]
    s, t = nonzero[0], nonzero[-1]
    first = view.right_annihilator(a[s])
    charge(int(first.size))

    def extend(prefix: np.ndarray, j: int) -> Iterator[np.ndarray]:
        if j > d:
            keep = np.ones(prefix.shape[0], dtype=bool)
            for m in range(s + d + 1, 2 * d + 1):
                coefficient = np.zeros(prefix.shape[0], dtype=np.int64)
                for i in range(m - d, min(d, m) + 1):
                    coefficient = view.add(coefficient, view.mul(a[i], prefix[:, m - i]))
                keep &= coefficient == 0
            if keep.any():
                yield prefix[keep]
            return
        m = s + j
        rest = np.zeros(prefix.shape[0], dtype=np.int64)
        for i in range(s + 1, min(d, m) + 1):
            rest = view.add(rest, view.mul(a[i], prefix[:, m - i]))
        targets = view.neg(rest)
        candidates, keys = view.fibres(a[s], a[t] if j == d else None)
        starts = np.searchsorted(keys, targets, side="left")
        counts = np.searchsorted(keys, targets, side="right") - starts
        for lo, hi in _row_ranges(counts, chunk_rows):
            total = int(counts[lo:hi].sum())
            if total == 0:
                continue
            charge(total)
            yield from extend(_expand(prefix[lo:hi], starts[lo:hi], counts[lo:hi], candidates), j + 1)

    yield from extend(first[:, None], 1)


class _TooLarge(Exception):
    """A degree block outgrew the eager row limit."""


def _degree_block(view: RingView, a: Tuple[int, ...]) -> PairBlock:
    """
    All b with conv(a, b) = 0 for one a. Blocks with at most one nonzero
    coefficient in a come back as lazy products; blocks needing more than
    _EAGER_BLOCK_ROWS candidates come back deferred.
    """
    width = len(a)
    order = view.ring.order
    nonzero = [i for i, x in enumerate(a) if x != 0]
    if not nonzero:
        everything = np.arange(order, dtype=np.int64)
        return PairBlock(a, None, order, factors=(everything,) * width)
    if len(nonzero) == 1:
        annihilator = view.right_annihilator(a[nonzero[0]])
        return PairBlock(a, None, int(annihilator.size), factors=(annihilator,) * width)
    examined = 0

    def count(n: int) -> None:
        nonlocal examined
        examined += n
        if examined > _EAGER_BLOCK_ROWS:
            raise _TooLarge

    try:
        parts = list(_degree_rows(view, a, count, _EAGER_BLOCK_ROWS))
    except _TooLarge:
        return PairBlock(a, None, 0, deferred=True)
    b = np.concatenate(parts, axis=0) if parts else np.empty((0, width), dtype=np.int64)
    return PairBlock(a, b, examined)


def _chunked_blocks(view: RingView, a: Tuple[int, ...], meter: SweepMeter) -> Iterator[PairBlock]:
    """A deferred block as consecutive sub-blocks, charging the meter before each chunk is built."""
    pending = 0

    def charge(n: int) -> None:
        nonlocal pending
        meter.charge(n)
        pending += n

    for rows in _degree_rows(view, a, charge, _CHUNK_ROWS):
        yield PairBlock(a, rows, pending)
        pending = 0


#####################################
# Ordered (optionally threaded) block streams
#####################################


def ordered_map(fn: Callable, items: Iterable, threads: int) -> Iterator:
    """map() that may run ahead on a thread pool but always yields in order."""
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    window = 2 * threads
    executor = ThreadPoolExecutor(max_workers=threads)
    pending: deque = deque()
    iterator = iter(items)
    try:
        for item in itertools.islice(iterator, window):
            pending.append(executor.submit(fn, item))
        while pending:
            result = pending.popleft().result()
            for item in itertools.islice(iterator, 1):
                pending.append(executor.submit(fn, item))
            yield result
    finally:
        executor.shutdown(wait=False, cancel_futures=True)


def _chunks(order: int, size: int) -> List[Tuple[int, int]]:
    return [(lo, min(order, lo + size)) for lo in range(0, order, size)]


def linear_pair_blocks(
    ring: FiniteRing,
    meter: Optional[SweepMeter] = None,
    threads: int = 1,
) -> Iterator[PairBlock]:
    """Blocks of annihilating linear pairs, canonical order, budget charged per block."""
    meter = meter or SweepMeter()
    view = RingView(ring)
    order = ring.order

    def task(item: Tuple[int, Tuple[int, int]]) -> List[PairBlock]:
        a0, (lo, hi) = item
        return [_linear_block(view, a0, a1) for a1 in range(lo, hi)]

    items = ((a0, chunk) for a0 in range(order) for chunk in _chunks(order, _TASK_BLOCKS))
    for blocks in ordered_map(task, items, threads):
        for block in blocks:
            meter.charge(block.examined)
            yield block


def degree_pair_blocks(
    ring: FiniteRing,
    d: int,
    meter: Optional[SweepMeter] = None,
    threads: int = 1,
) -> Iterator[PairBlock]:
    """
    Blocks of annihilating pairs of degree <= d, canonical order. One a may
    arrive as several consecutive blocks when its b-side is large.
    """
    if d < 1:
        raise InvalidParameter(f"degree bound must be >= 1, got {d}")
    meter = meter or SweepMeter()
    view = RingView(ring)
    order = ring.order

    def task(item: Tuple[Tuple[int, ...], Tuple[int, int]]) -> List[PairBlock]:
        prefix, (lo, hi) = item
        return [_degree_block(view, prefix + (last,)) for last in range(lo, hi)]

    items = (
        (prefix, chunk)
        for prefix in itertools.product(range(order), repeat=d)
        for chunk in _chunks(order, _TASK_BLOCKS)
    )
    for blocks in ordered_map(task, items, threads):
        for block in blocks:
            if block.deferred:
                yield from _chunked_blocks(view, block.a, meter)
                continue
            meter.charge(block.examined)
            yield block


#####################################
# Public element streams
#####################################


def annihilating_linear_pairs(
    ring: FiniteRing,
    budget: Optional[AnnPairBudget] = None,
    threads: int = 1,
) -> Iterator[Tuple[Element, Element, Element, Element]]:
    """Every (a0, a1, b0, b1) with (a0 + a1 x)(b0 + b1 x) = 0, lexicographically."""
    meter = SweepMeter(budget or AnnPairBudget())
    for block in linear_pair_blocks(ring, meter, threads):
        a0, a1 = (ring.element(i) for i in block.a)
        for b0, b1 in block.b:
            yield a0, a1, ring.element(b0), ring.element(b1)
    logger.debug(f"Linear pair sweep of {ring.text} examined {meter.examined} tuples in {meter.elapsed_ms:.1f} ms")


def annihilating_pairs_degree(
    ring: FiniteRing,
    d: int,
    budget: Optional[AnnPairBudget] = None,
    threads: int = 1,
) -> Iterator[Tuple[Tuple[Element, ...], Tuple[Element, ...]]]:
    """Every pair of coefficient vectors of length d+1 with zero full convolution."""
    meter = SweepMeter(budget or AnnPairBudget())
    for block in degree_pair_blocks(ring, d, meter, threads):
        a = tuple(ring.element(i) for i in block.a)
        for row in block.iter_rows():
            yield a, tuple(ring.element(i) for i in row)
    logger.debug(f"Degree-{d} pair sweep of {ring.text} examined {meter.examined} tuples in {meter.elapsed_ms:.1f} ms")


def pair_rows(blocks: Iterable[PairBlock]) -> np.ndarray:
    """Flatten blocks into rows (a..., b...) for set comparisons."""
    chunks = []
    width = None
    for block in blocks:
        width = len(block.a) * 2
        if len(block):
            b = block.rows()
            a = np.broadcast_to(np.asarray(block.a, dtype=np.int64), (b.shape[0], len(block.a)))
            chunks.append(np.concatenate([a, b], axis=1))
    if not chunks:
        return np.empty((0, width or 0), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


#####################################
# Naive oracle
#####################################


def naive_annihilating_pairs(ring: FiniteRing, d: int) -> np.ndarray:
    """
    Every (a, b) of length d+1 with conv(a, b) = 0 by a full nested loop,
    as rows (a..., b...) in lexicographic order. Only for small rings.
    """
    view = RingView(ring)
    width = d + 1
    every_b = np.array(list(itertools.product(range(ring.order), repeat=width)), dtype=np.int64).reshape(-1, width)
    chunks = []
    for a in itertools.product(range(ring.order), repeat=width):
        ok = np.ones(every_b.shape[0], dtype=bool)
        for m in range(2 * d + 1):
            coefficient = np.zeros(every_b.shape[0], dtype=np.int64)
            for i in range(max(0, m - d), min(d, m) + 1):
                coefficient = view.add(coefficient, view.mul(a[i], every_b[:, m - i]))
            ok &= coefficient == 0
        hits = every_b[ok]
        if hits.shape[0]:
            chunks.append(np.concatenate([np.broadcast_to(np.asarray(a, dtype=np.int64), (hits.shape[0], width)), hits], axis=1))
    if not chunks:
        return np.empty((0, 2 * width), dtype=np.int64)
    return np.concatenate(chunks, axis=0)
