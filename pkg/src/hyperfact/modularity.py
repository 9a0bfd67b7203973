"""Modular flats, supersolvability and the partition of a modular chain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lattice import Lattice
from .partition import LatticeLike, Partition, _flat_id, _lat

__all__ = ["ModularChain", "is_modular", "modular_flags", "supersolvable", "chain_partition"]


@dataclass(frozen=True)
class ModularChain:
    """V = X_0 < X_1 < ... < X_r = T, stored as closed hyperplane sets."""

    flats: tuple

    def __len__(self) -> int:
        return len(self.flats)


def _lattice_is_modular(L: Lattice, f: int) -> bool:
    # X + Y is a flat iff dim(X + Y) equals the dimension of the flat X meet Y,
    # i.e. r(X) + r(Y) = r(X v Y) + r(X ^ Y) in codimension terms
    rf = L.ranks[f]
    ranks = L.ranks
    for g in range(len(L)):
        if rf + ranks[g] != ranks[L.join(f, g)] + ranks[L.meet(f, g)]:
            return False
    return True


def is_modular(A: LatticeLike, X) -> bool:
    L = _lat(A)
    return _lattice_is_modular(L, _flat_id(L, X))


def modular_flags(L: Lattice) -> list[bool]:
    cached = L.memo.get("modular")
    if cached is None:
        cached = [_lattice_is_modular(L, f) for f in range(len(L))]
        L.memo["modular"] = cached
    return cached


def lattice_supersolvable(L: Lattice) -> Optional[list[int]]:
    """Lexicographically first maximal chain of modular flats (as flat ids)."""
    if "ss_chain" in L.memo:
        return L.memo["ss_chain"]
    mod = modular_flags(L)
    by_rank: dict[int, list[int]] = {}
    for f, r in enumerate(L.ranks):
        if mod[f]:
            by_rank.setdefault(r, []).append(f)
    dead = set()

    def dfs(chain: list[int]) -> bool:
        cur = chain[-1]
        if cur == L.top:
            return True
        for g in by_rank.get(L.ranks[cur] + 1, ()):
            if g in dead or not L.leq(cur, g):
                continue
            chain.append(g)
            if dfs(chain):
                return True
            chain.pop()
            dead.add(g)
        return False

    chain = [0]
    result = chain if dfs(chain) else None
    L.memo["ss_chain"] = result
    return result


def supersolvable(A: LatticeLike) -> Optional[ModularChain]:
    L = _lat(A)
    chain = lattice_supersolvable(L)
    if chain is None:
        return None
    return ModularChain(tuple(frozenset(i for i in range(L.n) if L.masks[f] >> i & 1) for f in chain))


def chain_masks(L: Lattice, chain: list[int]) -> list[int]:
    return [L.masks[chain[i]] & ~L.masks[chain[i - 1]] for i in range(1, len(chain))]


def chain_partition(A: LatticeLike, chain: ModularChain) -> Partition:
    """Parts A_{X_i} minus A_{X_(i-1)} along a maximal modular chain."""
    L = _lat(A)
    ids = [_flat_id(L, X) for X in chain.flats]
    if ids[0] != 0 or ids[-1] != L.top or len(ids) != L.rank + 1:
        raise ValueError("not a maximal chain from V to T")
    for i, f in enumerate(ids):
        if L.ranks[f] != i or (i and not L.leq(ids[i - 1], f)):
            raise ValueError("chain is not strictly increasing by rank one")
        if not _lattice_is_modular(L, f):
            raise ValueError(f"flat {sorted(chain.flats[i])} of the chain is not modular")
    return Partition.from_masks(chain_masks(L, ids))
