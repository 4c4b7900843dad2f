"""Python access to the rvvport analysis core.

    >>> import rvvport
    >>> rvvport.analyze(open("kernel.c").read())["pressure"]
"""
from ._core import (
    REGISTER_BUDGET,
    AnalysisError,
    ContractError,
    CorpusError,
    NoCodeError,
    ParseError,
    RvvportError,
    analyze,
    efficiency_score,
    extract_code,
    list_functions,
    liveness,
    load_corpus,
    parse_vector_type,
    pass_rate,
    register_footprint,
    speedup,
    vector_type_names,
)

__all__ = [
    "REGISTER_BUDGET",
    "AnalysisError",
    "ContractError",
    "CorpusError",
    "NoCodeError",
    "ParseError",
    "RvvportError",
    "analyze",
    "efficiency_score",
    "extract_code",
    "list_functions",
    "liveness",
    "load_corpus",
    "parse_vector_type",
    "pass_rate",
    "register_footprint",
    "speedup",
    "vector_type_names",
]
