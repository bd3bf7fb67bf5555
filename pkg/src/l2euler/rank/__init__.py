"""Exact and modular rank of integer and group-ring matrices."""

from .kernels import BACKEND, rank_mod_p_batch, rank_mod_p_dense
from .modular import (
    RankPolicy, RankResult, dump_triplets, random_primes, rank_exact,
    rank_mod_p, rank_rational, sparse_rank_mod_p,
)
from .shrink import unit_shrink

__all__ = [
    "BACKEND", "RankPolicy", "RankResult", "dump_triplets", "random_primes",
    "rank_exact", "rank_mod_p", "rank_mod_p_batch", "rank_mod_p_dense",
    "rank_rational", "sparse_rank_mod_p", "unit_shrink",
]
