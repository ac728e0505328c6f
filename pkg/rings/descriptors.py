"""
descriptors.py - construction trees for every ring family.

A descriptor names how a ring was built: Z(n), products, full and upper
triangular matrices, T_n^k, trivial extensions, truncated polynomials,
quotients and generated subrings. Descriptors double as the DSL's syntax
tree: the parser fills in `span`, which never takes part in equality.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

Span = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class RingDescriptor:
    """Base class; subclasses are the construction variants."""

    def render(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Zn(RingDescriptor):
    n: int
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Z({self.n})"


@dataclass(frozen=True)
class Prod(RingDescriptor):
    factors: Tuple[RingDescriptor, ...]
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return "Prod(" + ", ".join(f.render() for f in self.factors) + ")"


@dataclass(frozen=True)
class Mat(RingDescriptor):
    base: RingDescriptor
    n: int
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Mat({self.base.render()}, {self.n})"


@dataclass(frozen=True)
class UT(RingDescriptor):
    base: RingDescriptor
    n: int
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"UT({self.base.render()}, {self.n})"


@dataclass(frozen=True)
class Tnk(RingDescriptor):
    base: RingDescriptor
    n: int
    k: int
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Tnk({self.base.render()}, {self.n}, {self.k})"


@dataclass(frozen=True)
class Triv(RingDescriptor):
    base: RingDescriptor
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Triv({self.base.render()})"


@dataclass(frozen=True)
class PolyMod(RingDescriptor):
    base: RingDescriptor
    n: int
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"PolyMod({self.base.render()}, {self.n})"


@dataclass(frozen=True)
class Quot(RingDescriptor):
    """Quotient by the two-sided ideal generated by element indices of `base`."""

    base: RingDescriptor
    gens: Tuple[int, ...]
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Quot({self.base.render()}, {list(self.gens)})"


@dataclass(frozen=True)
class Sub(RingDescriptor):
    """Subring generated by element indices of `base` (1 always included)."""

    base: RingDescriptor
    gens: Tuple[int, ...]
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Sub({self.base.render()}, {list(self.gens)})"


@dataclass(frozen=True)
class Opp(RingDescriptor):
    base: RingDescriptor
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Opp({self.base.render()})"


@dataclass(frozen=True)
class Table(RingDescriptor):
    """A ring given only by explicit tables."""

    name: str
    span: Span = field(default=None, compare=False, repr=False)

    def render(self) -> str:
        return f"Table({self.name})"
