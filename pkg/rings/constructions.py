"""
constructions.py - builders for every concrete ring family.

Families: Z(n), finite products, full and upper triangular matrices,
the Toeplitz-banded subrings T_n^k of upper triangular matrices, the trivial
extension T(R,R) and truncated polynomial rings R[x]/(x^n).

All composite rings share one codec: an element is a tuple of component
indices read as a mixed-radix number, first component most significant.
That gives the canonical enumeration order (lexicographic by component)
and keeps index 0 for zero.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# Import external packages
import numpy as np

# Import functions from local modules
from rings.descriptors import (
    Mat,
    Opp,
    PolyMod,
    Prod,
    Quot,
    RingDescriptor,
    Sub,
    Tnk,
    Triv,
    UT,
    Zn,
)
from rings.errors import ConstructionError, InvalidParameter, OrderOverflow
from rings.ring_core import (
    Element,
    FiniteRing,
    IndexArray,
    ideal_closure,
    is_central,
    opposite_ring,
    quotient_ring,
    subring_generated,
)
from utils.utils_config import DEFAULT_ENUMERATION_CAP, DEFAULT_TABLE_CAP
from utils.utils_logger import logger


#####################################
# Z(n)
#####################################


class ZnRing(FiniteRing):
    """Integers modulo n, element index = residue."""

    def __init__(self, n: int, table_cap: Optional[int] = None):
        self.n = n
        super().__init__(n, Zn(n), table_cap)

    def decode(self, index: int) -> int:
        return int(index)

    def encode(self, value: Any) -> int:
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise InvalidParameter(f"Z({self.n}) elements are integers, got {value!r}")
        return int(value) % self.n

    @property
    def one_index(self) -> int:
        return 1 % self.n

    def _add_many(self, x, y):
        return (x + y) % self.n

    def _mul_many(self, x, y):
        return (x * y) % self.n

    def _neg_many(self, x):
        return (-x) % self.n

    def _structural_generators(self):
        return [1] if self.n > 1 else []


#####################################
# Mixed-radix composite rings
#####################################


class ComponentRing(FiniteRing):
    """
    A ring whose elements are tuples over component rings.

    Subclasses implement `_assemble`/`_disassemble` (component values <->
    structured value), `_one_parts` and `_mul_parts`.
    """

    def __init__(self, descriptor: RingDescriptor, components: Sequence[FiniteRing], table_cap: Optional[int] = None):
        self.components: List[FiniteRing] = list(components)
        radices = [c.order for c in self.components]
        weights = [1] * len(radices)
        for k in range(len(radices) - 2, -1, -1):
            weights[k] = weights[k + 1] * radices[k + 1]
        self._radices = radices
        self._weights = weights
        super().__init__(math.prod(radices), descriptor, table_cap)

    # ----- codec -----

    def split(self, x) -> List[IndexArray]:
        x = np.asarray(x, dtype=np.int64)
        return [(x // w) % r for w, r in zip(self._weights, self._radices)]

    def join(self, parts: Sequence[IndexArray]) -> IndexArray:
        total = np.asarray(0, dtype=np.int64)
        for part, w in zip(parts, self._weights):
            total = total + np.asarray(part, dtype=np.int64) * w
        return total

    def parts(self, index: int) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.split(index))

    def decode(self, index: int) -> Any:
        values = [c.decode(p) for c, p in zip(self.components, self.parts(index))]
        return self._assemble(values)

    def encode(self, value: Any) -> int:
        values = self._disassemble(value)
        if len(values) != len(self.components):
            raise InvalidParameter(f"{self.text} expects {len(self.components)} components, got {len(values)}")
        parts = [c.encode(v) for c, v in zip(self.components, values)]
        return int(self.join(parts))

    def _assemble(self, values: List[Any]) -> Any:
        return tuple(values)

    def _disassemble(self, value: Any) -> List[Any]:
        return list(value)

    # ----- arithmetic -----

    @property
    def one_index(self) -> int:
        return int(self.join(self._one_parts()))

    def _one_parts(self) -> List[int]:
        raise NotImplementedError

    def _add_many(self, x, y):
        xs, ys = self.split(x), self.split(y)
        return self.join([c.add_many(a, b) for c, a, b in zip(self.components, xs, ys)])

    def _neg_many(self, x):
        return self.join([c.neg_many(a) for c, a in zip(self.components, self.split(x))])

    def _mul_many(self, x, y):
        return self.join(self._mul_parts(self.split(x), self.split(y)))

    def _mul_parts(self, xs: List[IndexArray], ys: List[IndexArray]) -> List[IndexArray]:
        raise NotImplementedError

    def _structural_generators(self):
        gens = []
        for component, weight in zip(self.components, self._weights):
            for g in component.additive_generators():
                gens.append(g.index * weight)
        return gens

    def from_parts(self, parts: Sequence[int]) -> Element:
        return Element(self, int(self.join(parts)))


def _zeros_like(*arrays: IndexArray) -> IndexArray:
    shape = np.broadcast_shapes(*(np.shape(a) for a in arrays))
    return np.zeros(shape, dtype=np.int64)


#####################################
# Products
#####################################


class ProductRing(ComponentRing):
    """R_1 x ... x R_m with componentwise operations."""

    def __init__(self, factors: Sequence[FiniteRing], table_cap: Optional[int] = None):
        self.factors = list(factors)
        super().__init__(Prod(tuple(f.descriptor for f in factors)), factors, table_cap)

    def _one_parts(self):
        return [f.one_index for f in self.factors]

    def _mul_parts(self, xs, ys):
        return [f.mul_many(a, b) for f, a, b in zip(self.factors, xs, ys)]

    def unit_idempotent(self, position: int = 0) -> Element:
        """(0,..,1,..,0) with the 1 in `position`; always central."""
        parts = [0] * len(self.factors)
        parts[position] = self.factors[position].one_index
        return self.from_parts(parts)


#####################################
# Matrices over a base ring
#####################################


class _MatrixShapedRing(ComponentRing):
    """
    Shared matrix product for rings whose components sit at matrix positions.

    `_entry_component(i, j)` names the component stored at (i, j), or None
    for a structural zero.
    """

    base: FiniteRing
    n: int

    def _entry_component(self, i: int, j: int) -> Optional[int]:
        raise NotImplementedError

    def _product_entries(self, xs, ys) -> Dict[Tuple[int, int], IndexArray]:
        base = self.base
        entries: Dict[Tuple[int, int], IndexArray] = {}
        for i in range(self.n):
            for j in range(self.n):
                if self._entry_component(i, j) is None:
                    continue
                acc = None
                for m in range(self.n):
                    left = self._entry_component(i, m)
                    right = self._entry_component(m, j)
                    if left is None or right is None:
                        continue
                    term = base.mul_many(xs[left], ys[right])
                    acc = term if acc is None else base.add_many(acc, term)
                entries[(i, j)] = acc if acc is not None else _zeros_like(xs[0], ys[0])
        return entries

    def as_matrix(self, index: int) -> Tuple[Tuple[Any, ...], ...]:
        """The element as a full n x n matrix of base values."""
        parts = self.parts(index)
        zero = self.base.decode(0)
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                c = self._entry_component(i, j)
                row.append(zero if c is None else self.base.decode(parts[c]))
            rows.append(tuple(row))
        return tuple(rows)

    def from_matrix(self, matrix: Sequence[Sequence[Any]]) -> Element:
        """Encode a full matrix; raises ConstructionError if it is outside the family."""
        parts: List[Optional[int]] = [None] * len(self.components)
        for i in range(self.n):
            for j in range(self.n):
                entry = self.base.encode(matrix[i][j])
                c = self._entry_component(i, j)
                if c is None:
                    if entry != 0:
                        raise ConstructionError(f"entry ({i + 1},{j + 1}) must be zero in {self.text}")
                    continue
                if parts[c] is None:
                    parts[c] = entry
                elif parts[c] != entry:
                    raise ConstructionError(f"entry ({i + 1},{j + 1}) breaks the band structure of {self.text}")
        return self.from_parts([p or 0 for p in parts])

    def matrix_unit_sum(self, positions: Sequence[Tuple[int, int]], scalar: Optional[Element] = None) -> Element:
        """Σ scalar·e_ij over 1-based positions; scalar defaults to 1."""
        value = self.base.decode(self.base.one_index if scalar is None else scalar.index)
        zero = self.base.decode(0)
        matrix = [[zero] * self.n for _ in range(self.n)]
        for i, j in positions:
            matrix[i - 1][j - 1] = value
        return self.from_matrix(matrix)

    def scalar_matrix(self, scalar: Element) -> Element:
        return self.matrix_unit_sum([(i, i) for i in range(1, self.n + 1)], scalar)


class MatrixRing(_MatrixShapedRing):
    """Full (or upper triangular) n x n matrices, entries row-major."""

    def __init__(self, base: FiniteRing, n: int, upper: bool = False, table_cap: Optional[int] = None):
        self.base = base
        self.n = n
        self.upper = upper
        self.positions = [(i, j) for i in range(n) for j in range(n) if not upper or j >= i]
        self._slot = {pos: k for k, pos in enumerate(self.positions)}
        descriptor = UT(base.descriptor, n) if upper else Mat(base.descriptor, n)
        super().__init__(descriptor, [base] * len(self.positions), table_cap)

    def _entry_component(self, i, j):
        return self._slot.get((i, j))

    def _assemble(self, values):
        return self.as_matrix_from_values(values)

    def as_matrix_from_values(self, values):
        zero = self.base.decode(0)
        rows = [[zero] * self.n for _ in range(self.n)]
        for (i, j), v in zip(self.positions, values):
            rows[i][j] = v
        return tuple(tuple(r) for r in rows)

    def _disassemble(self, value):
        return [value[i][j] for i, j in self.positions]

    def encode(self, value):
        if self.upper:
            zero = self.base.decode(0)
            for i in range(self.n):
                for j in range(i):
                    if value[i][j] != zero:
                        raise InvalidParameter(f"{self.text} needs zeros below the diagonal")
        return super().encode(value)

    def _one_parts(self):
        return [self.base.one_index if i == j else 0 for i, j in self.positions]

    def _mul_parts(self, xs, ys):
        entries = self._product_entries(xs, ys)
        return [entries[pos] for pos in self.positions]

    def matrix_unit(self, i: int, j: int) -> Element:
        """e_ij (1-based)."""
        return self.matrix_unit_sum([(i, j)])


#####################################
# T_n^k(R)
#####################################


class TnkRing(_MatrixShapedRing):
    """
    Upper triangular n x n matrices with Toeplitz bands x_1..x_k on the first
    k diagonals and free entries a_{j,s} (row j, columns s = k+j..n) beyond.

    Elements are parameter vectors (x_1..x_k, then free entries row-major).
    """

    def __init__(self, base: FiniteRing, n: int, k: int, table_cap: Optional[int] = None):
        self.base = base
        self.n = n
        self.k = k
        # 0-based free positions: row r, columns k+r .. n-1
        self.free_positions = [(r, c) for r in range(n - k) for c in range(k + r, n)]
        self._free_slot = {pos: k + idx for idx, pos in enumerate(self.free_positions)}
        super().__init__(Tnk(base.descriptor, n, k), [base] * (k + len(self.free_positions)), table_cap)

    @staticmethod
    def parameter_count(n: int, k: int) -> int:
        return k + (n - k) * (n - k + 1) // 2

    def _entry_component(self, i, j):
        offset = j - i
        if offset < 0:
            return None
        if offset < self.k:
            return offset
        return self._free_slot[(i, j)]

    def _one_parts(self):
        parts = [0] * len(self.components)
        parts[0] = self.base.one_index
        return parts

    def _mul_parts(self, xs, ys):
        entries = self._product_entries(xs, ys)
        for offset in range(self.k):
            lead = entries[(0, offset)]
            for i in range(1, self.n - offset):
                if not np.array_equal(entries[(i, i + offset)], lead):
                    raise ConstructionError(f"product left the band structure of {self.text}")
        bands = [entries[(0, offset)] for offset in range(self.k)]
        return bands + [entries[pos] for pos in self.free_positions]

    def square_zero_candidates(self, scalar: Element) -> Tuple[Element, Element, Element]:
        """
        For a ∈ base: A = a·I, B = e_{1,k+1} + ... + e_{1,n} and the
        commutation partner C = e_{1,n-k} + e_{2,n-k+1} + ... + e_{k+1,n}.

        When a ≠ 0 and a² = 0: A² = B² = 0, AB = BA and (AB)C ≠ C(AB).
        """
        n, k = self.n, self.k
        a_matrix = self.scalar_matrix(scalar)
        b_matrix = self.matrix_unit_sum([(1, k + j) for j in range(1, n - k + 1)])
        c_matrix = self.matrix_unit_sum([(i, n - k - 1 + i) for i in range(1, k + 2)])
        return a_matrix, b_matrix, c_matrix


#####################################
# Trivial extension T(R,R)
#####################################


class TrivialExtensionRing(ComponentRing):
    """Pairs (r, m) with (r1,m1)(r2,m2) = (r1 r2, r1 m2 + m1 r2)."""

    def __init__(self, base: FiniteRing, table_cap: Optional[int] = None):
        self.base = base
        super().__init__(Triv(base.descriptor), [base, base], table_cap)

    def _one_parts(self):
        return [self.base.one_index, 0]

    def _mul_parts(self, xs, ys):
        base = self.base
        r1, m1 = xs
        r2, m2 = ys
        return [
            base.mul_many(r1, r2),
            base.add_many(base.mul_many(r1, m2), base.mul_many(m1, r2)),
        ]

    def pair(self, r: Element, m: Element) -> Element:
        return self.from_parts([r.index, m.index])

    def square_zero_candidates(self, scalar: Element) -> Tuple[Element, Element]:
        """((c,0), (0,1)): both square to zero, commute, product (0,c)."""
        return self.pair(scalar, self.base.zero), self.pair(self.base.zero, self.base.one)


#####################################
# R[x]/(x^n)
#####################################


class PolyModRing(ComponentRing):
    """Truncated polynomials a_0 + a_1 x + ... + a_{n-1} x^{n-1}, constant first."""

    def __init__(self, base: FiniteRing, n: int, table_cap: Optional[int] = None):
        self.base = base
        self.n = n
        super().__init__(PolyMod(base.descriptor, n), [base] * n, table_cap)

    def _one_parts(self):
        return [self.base.one_index] + [0] * (self.n - 1)

    def _mul_parts(self, xs, ys):
        base = self.base
        out = []
        for m in range(self.n):
            acc = None
            for i in range(m + 1):
                term = base.mul_many(xs[i], ys[m - i])
                acc = term if acc is None else base.add_many(acc, term)
            out.append(acc)
        return out

    def monomial(self, degree: int, coefficient: Optional[Element] = None) -> Element:
        parts = [0] * self.n
        parts[degree] = self.base.one_index if coefficient is None else coefficient.index
        return self.from_parts(parts)


#####################################
# Builders with parameter and cap checks
#####################################


def _guard_order(label: str, order: int, enumeration_cap: int) -> None:
    if order > enumeration_cap:
        raise OrderOverflow(
            f"{label} would have {order} elements, above the enumeration cap {enumeration_cap}",
            order=order,
            cap=enumeration_cap,
        )


def _guard_power(label: str, base_order: int, exponent: int, enumeration_cap: int) -> None:
    """_guard_order for base_order ** exponent; the power is only formed when it is near the cap."""
    if base_order > 1 and exponent * math.log2(base_order) > enumeration_cap.bit_length() + 64:
        raise OrderOverflow(
            f"{label} would have {base_order}^{exponent} elements, above the enumeration cap {enumeration_cap}",
            cap=enumeration_cap,
        )
    _guard_order(label, base_order ** exponent, enumeration_cap)


def make_zn(n: int, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> ZnRing:
    if n < 1:
        raise InvalidParameter(f"Z(n) needs n >= 1, got {n}")
    _guard_order(f"Z({n})", n, enumeration_cap)
    return ZnRing(n, table_cap)


def make_product(
    factors: Sequence[FiniteRing],
    table_cap: int = DEFAULT_TABLE_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> ProductRing:
    if not factors:
        raise InvalidParameter("a product needs at least one factor")
    _guard_order("product", math.prod(f.order for f in factors), enumeration_cap)
    ring = ProductRing(factors, table_cap)
    assert is_central(ring.unit_idempotent(0))
    return ring


def make_matrix(
    base: FiniteRing, n: int, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> MatrixRing:
    if n < 1:
        raise InvalidParameter(f"Mat needs n >= 1, got {n}")
    _guard_power(f"Mat({base.text}, {n})", base.order, n * n, enumeration_cap)
    return MatrixRing(base, n, upper=False, table_cap=table_cap)


def make_upper_triangular(
    base: FiniteRing, n: int, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> MatrixRing:
    if n < 1:
        raise InvalidParameter(f"UT needs n >= 1, got {n}")
    _guard_power(f"UT({base.text}, {n})", base.order, n * (n + 1) // 2, enumeration_cap)
    return MatrixRing(base, n, upper=True, table_cap=table_cap)


def make_tnk(
    base: FiniteRing, n: int, k: int, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> TnkRing:
    if n < 2 or not 1 <= k <= n - 1:
        raise InvalidParameter(f"Tnk needs n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    _guard_power(f"Tnk({base.text}, {n}, {k})", base.order, TnkRing.parameter_count(n, k), enumeration_cap)
    return TnkRing(base, n, k, table_cap)


def make_trivial_extension(
    base: FiniteRing, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> TrivialExtensionRing:
    _guard_power(f"Triv({base.text})", base.order, 2, enumeration_cap)
    return TrivialExtensionRing(base, table_cap)


def make_poly_mod(
    base: FiniteRing, n: int, table_cap: int = DEFAULT_TABLE_CAP, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> PolyModRing:
    if n < 1:
        raise InvalidParameter(f"PolyMod needs n >= 1, got {n}")
    _guard_power(f"PolyMod({base.text}, {n})", base.order, n, enumeration_cap)
    return PolyModRing(base, n, table_cap)


def build(
    descriptor: RingDescriptor,
    table_cap: int = DEFAULT_TABLE_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> FiniteRing:
    """Construct the ring a descriptor names (children first)."""
    caps = {"table_cap": table_cap, "enumeration_cap": enumeration_cap}

    def sub(child: RingDescriptor) -> FiniteRing:
        return build(child, **caps)

    if isinstance(descriptor, Zn):
        ring = make_zn(descriptor.n, **caps)
    elif isinstance(descriptor, Prod):
        ring = make_product([sub(f) for f in descriptor.factors], **caps)
    elif isinstance(descriptor, Mat):
        ring = make_matrix(sub(descriptor.base), descriptor.n, **caps)
    elif isinstance(descriptor, UT):
        ring = make_upper_triangular(sub(descriptor.base), descriptor.n, **caps)
    elif isinstance(descriptor, Tnk):
        ring = make_tnk(sub(descriptor.base), descriptor.n, descriptor.k, **caps)
    elif isinstance(descriptor, Triv):
        ring = make_trivial_extension(sub(descriptor.base), **caps)
    elif isinstance(descriptor, PolyMod):
        ring = make_poly_mod(sub(descriptor.base), descriptor.n, **caps)
    elif isinstance(descriptor, Quot):
        base = sub(descriptor.base)
        ring = quotient_ring(base, ideal_closure(base, [base.element(g) for g in descriptor.gens]))
    elif isinstance(descriptor, Sub):
        base = sub(descriptor.base)
        ring = subring_generated(base, [base.element(g) for g in descriptor.gens])
    elif isinstance(descriptor, Opp):
        ring = opposite_ring(sub(descriptor.base))
    else:
        raise InvalidParameter(f"cannot build {descriptor!r}")
    logger.debug(f"Built {ring.text} with {ring.order} elements")
    return ring


#####################################
# Stated bijections for table-match checks
#####################################


def tnk_to_trivial_extension(tnk: TnkRing, triv: TrivialExtensionRing) -> Callable[[Element], Element]:
    """Tnk(R,2,1) -> Triv(R): [[x,a],[0,x]] -> (x, a)."""
    if tnk.n != 2 or tnk.k != 1:
        raise InvalidParameter("the band/pair bijection needs Tnk(R, 2, 1)")

    def bijection(element: Element) -> Element:
        x, a = tnk.parts(element.index)
        return triv.from_parts([x, a])

    return bijection


def tnk_to_poly_mod(tnk: TnkRing, poly: PolyModRing) -> Callable[[Element], Element]:
    """Tnk(R,n,n-1) -> PolyMod(R,n): bands x_1..x_{n-1} and a_{1n} -> coefficients."""
    if tnk.k != tnk.n - 1 or poly.n != tnk.n:
        raise InvalidParameter("the band/coefficient bijection needs Tnk(R, n, n-1) and PolyMod(R, n)")

    def bijection(element: Element) -> Element:
        return poly.from_parts(list(tnk.parts(element.index)))

    return bijection


def crt_to_zn(product: ProductRing, zn: ZnRing) -> Callable[[Element], Element]:
    """Prod(Z(m1), ..., Z(mr)) -> Z(m1···mr) by the Chinese remainder map."""
    moduli = [f.order for f in product.factors]

    def bijection(element: Element) -> Element:
        residues = product.parts(element.index)
        for x in range(zn.n):
            if all(x % m == r for m, r in zip(moduli, residues)):
                return zn.element(x)
        raise ConstructionError(f"no CRT preimage for {residues}")

    return bijection
