"""Python bindings for the qrg finite-group toolkit.

The heavy lifting happens in the compiled ``_core`` module; ``verify`` and
``search`` return parsed JSON documents with the same schema the CLI writes.
"""

import json

from ._core import (
    Analysis,
    ConstraintError,
    FiniteGroup,
    GroupError,
    __version__,
    analyze,
    cond_exp_conj,
    corollary,
    group,
    lemma_gap,
    load_cayley_table,
    theorem_lhs,
    witness_abelian_character,
)
from ._core import search as _search
from ._core import verify as _verify


def verify(analysis, checks=(), trials=200, seed=0, threads=1):
    return json.loads(_verify(analysis, list(checks), trials, seed, threads))


def search(analysis, objective="theorem", budget=10000, restarts=4, seed=0, threads=1):
    return json.loads(_search(analysis, objective, budget, restarts, seed, threads))


__all__ = [
    "Analysis",
    "ConstraintError",
    "FiniteGroup",
    "GroupError",
    "__version__",
    "analyze",
    "cond_exp_conj",
    "corollary",
    "group",
    "lemma_gap",
    "load_cayley_table",
    "search",
    "theorem_lhs",
    "verify",
    "witness_abelian_character",
]
