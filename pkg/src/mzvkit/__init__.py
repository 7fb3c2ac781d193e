"""Multiple zeta values: index and word algebra, regularization, high-precision
evaluation and an identity-verification harness."""

from .linear import DomainError, LinComb
from .index import (
    Index,
    IndexSum,
    Profile,
    add_pointwise,
    dual,
    enumerate_indices,
    ones,
    parse_index,
    profile,
    star_expansion,
    stuffle,
)
from .words import Word, WordSum, index_to_word, parse_word, shuffle, word_dual, word_to_index
from .bigreal import BigReal
from .regularization import (
    NumPoly,
    RegPoly,
    rebase,
    reg_constant_term,
    shuffle_regularize,
    stuffle_regularize,
    substitute_shuffle,
    substitute_stuffle,
)
from .numerics import (
    MZVCache,
    const,
    default_cache,
    eval_index_sum,
    eval_mzv,
    eval_mzv_direct,
    eval_star,
    li_at_half,
    log_int,
    nested_partial_sum,
    set_default_cache,
)
from .kernel import BACKEND
from . import series, verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BigReal",
    "DomainError",
    "Index",
    "IndexSum",
    "LinComb",
    "MZVCache",
    "NumPoly",
    "Profile",
    "RegPoly",
    "Word",
    "WordSum",
    "add_pointwise",
    "const",
    "default_cache",
    "dual",
    "enumerate_indices",
    "eval_index_sum",
    "eval_mzv",
    "eval_mzv_direct",
    "eval_star",
    "index_to_word",
    "li_at_half",
    "log_int",
    "nested_partial_sum",
    "ones",
    "parse_index",
    "parse_word",
    "profile",
    "rebase",
    "reg_constant_term",
    "series",
    "set_default_cache",
    "shuffle",
    "shuffle_regularize",
    "star_expansion",
    "stuffle",
    "stuffle_regularize",
    "substitute_shuffle",
    "substitute_stuffle",
    "verify",
    "word_dual",
    "word_to_index",
]
