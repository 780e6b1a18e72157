"""Latin squares with disjoint subsquares of prescribed orders."""
from .conditions import (
    ConditionReport,
    check_b_array_condition,
    check_b_array_condition_for,
    check_bounded_ratio,
    check_condition1,
    check_condition2,
    check_condition2_all,
    exists_k5,
    exists_small_k,
    exists_two_orders,
)
from .core import (
    InvariantError,
    LatinSquare,
    OutlineRectangle,
    ParseError,
    Partition,
    RationalOutline,
    Realization,
    SixthCount,
    SubsqError,
    reduce,
)
from .increment import build_increment_arrays, increment, increment_once
from .lifting import lift, split_column, split_row, split_symbols
from .oracle import SearchConfig, SearchResult, Verdict, search_realization
from .rational import ConditionViolated, build_symmetric_rational
from .rounding import build_k5, build_outline_k5, classify_graph, deficiency_graph, floor_array, template_B

__all__ = [name for name in dir() if not name.startswith("_")]
