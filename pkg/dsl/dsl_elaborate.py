"""
dsl_elaborate.py - turn a parsed expression into a concrete ring.

Parameter and cap errors raised by the builders are re-raised carrying the
span of the node that caused them, so the CLI can point into the input.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
from typing import Optional

# Import functions from local modules
from dsl.dsl_parser import RingExpr, parse
from rings.constructions import (
    make_matrix,
    make_poly_mod,
    make_product,
    make_tnk,
    make_trivial_extension,
    make_upper_triangular,
    make_zn,
)
from rings.descriptors import Mat, PolyMod, Prod, Tnk, Triv, UT, Zn
from rings.errors import InvalidParameter
from rings.ring_core import FiniteRing
from utils.utils_config import DEFAULT_ENUMERATION_CAP, DEFAULT_TABLE_CAP, RunConfig
from utils.utils_logger import logger


def elaborate(
    expr: RingExpr,
    table_cap: int = DEFAULT_TABLE_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> FiniteRing:
    """Build the ring an expression names, children first."""
    caps = {"table_cap": table_cap, "enumeration_cap": enumeration_cap}

    def child(node: RingExpr) -> FiniteRing:
        return elaborate(node, **caps)

    try:
        if isinstance(expr, Zn):
            return make_zn(expr.n, **caps)
        if isinstance(expr, Prod):
            return make_product([child(f) for f in expr.factors], **caps)
        if isinstance(expr, Mat):
            return make_matrix(child(expr.base), expr.n, **caps)
        if isinstance(expr, UT):
            return make_upper_triangular(child(expr.base), expr.n, **caps)
        if isinstance(expr, Tnk):
            return make_tnk(child(expr.base), expr.n, expr.k, **caps)
        if isinstance(expr, Triv):
            return make_trivial_extension(child(expr.base), **caps)
        if isinstance(expr, PolyMod):
            return make_poly_mod(child(expr.base), expr.n, **caps)
    except InvalidParameter as exc:
        # innermost span wins: a child's error already carries its own
        if exc.span is None and getattr(expr, "span", None) is not None:
            raise exc.with_span(expr.span) from exc
        raise
    raise InvalidParameter(f"{expr!r} is not a DSL expression", getattr(expr, "span", None))


def ring_from_text(text: str, config: Optional[RunConfig] = None) -> FiniteRing:
    """parse + elaborate with the caps of a run configuration."""
    config = config or RunConfig()
    ring = elaborate(parse(text), config.table_cap, config.enumeration_cap)
    logger.debug(f"Elaborated {text!r} -> {ring.text} ({ring.order} elements)")
    return ring
