"""Nice (factored) partitions of an arrangement.

All routines work on the intersection lattice; partitions are kept as lists
of atom bitmasks internally and exposed as :class:`Partition` objects holding
hyperplane indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Optional, Sequence, Union

from .arrangement import Arrangement, Flat
from .isomorphism import SizeLimitExceeded
from .lattice import Lattice, NoSplit, Polynomial, bits, mask_of, popcount

__all__ = [
    "Partition",
    "NiceReport",
    "FactorizationReport",
    "InconsistencyError",
    "HereditaryResult",
    "is_independent",
    "induced_partition",
    "is_nice",
    "cor_2_7_report",
    "nice_search",
    "nice_partitions",
    "hereditarily_nice",
    "DEFAULT_MAX_HYPERPLANES",
    "DEFAULT_MAX_RANK",
]

DEFAULT_MAX_HYPERPLANES = 24
DEFAULT_MAX_RANK = 5


class InconsistencyError(AssertionError):
    """A consequence of a theorem failed: this signals a bug, not bad input."""


@dataclass(frozen=True)
class Partition:
    """Ordered parts of hyperplane indices. The first part is the distinguished one."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(sorted(p)) for p in self.parts))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Partition":
        return cls(tuple(tuple(bits(m)) for m in masks))

    def masks(self) -> list[int]:
        return [mask_of(p) for p in self.parts]

    def sizes(self) -> list[int]:
        return sorted(len(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def validate(self, n: int) -> None:
        seen = set()
        for p in self.parts:
            if not p:
                raise ValueError("partition has an empty part")
            for i in p:
                if not 0 <= i < n:
                    raise ValueError(f"index {i} out of range for {n} hyperplanes")
                if i in seen:
                    raise ValueError(f"index {i} occurs in two parts")
                seen.add(i)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise ValueError(f"partition does not cover hyperplanes {missing}")

    def format(self) -> str:
        return "; ".join(" ".join(str(i) for i in p) for p in self.parts)

    __str__ = format

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``0; 3 5 7 8; 1 2 4 6 9``."""
        text = text.strip()
        if not text:
            return cls(())
        parts = []
        for chunk in text.split(";"):
            toks = chunk.split()
            if not toks:
                raise ValueError(f"empty part in partition {text!r}")
            parts.append(tuple(int(t) for t in toks))
        return cls(tuple(parts))

    def with_first(self, i: int) -> "Partition":
        """Same partition with the part containing hyperplane ``i`` moved to the front."""
        k = next(j for j, p in enumerate(self.parts) if i in p)
        return Partition((self.parts[k],) + self.parts[:k] + self.parts[k + 1 :])


@dataclass
class NiceReport:
    independent: bool
    singleton_failures: list = field(default_factory=list)
    poincare_factored: bool = False
    part_sizes: list = field(default_factory=list)

    @property
    def nice(self) -> bool:
        return self.independent and not self.singleton_failures

    def __bool__(self) -> bool:
        return self.nice


@dataclass
class FactorizationReport:
    rank: int
    parts: int
    poincare: Polynomial
    product: Polynomial
    rank_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.parts == self.rank and self.poincare == self.product and not self.rank_failures


LatticeLike = Union[Arrangement, Lattice]


def _lat(A: LatticeLike) -> Lattice:
    return A if isinstance(A, Lattice) else A.lattice


def _masks(A: LatticeLike, pi) -> list[int]:
    L = _lat(A)
    if isinstance(pi, Partition):
        pi.validate(L.n)
        return pi.masks()
    masks = list(pi)
    Partition.from_masks(masks).validate(L.n)
    return masks


def _flat_id(L: Lattice, X) -> int:
    if isinstance(X, Flat):
        f = L.index.get(X.mask)
    elif isinstance(X, int):
        f = X if 0 <= X < len(L) else None
    else:
        f = L.index.get(mask_of(X))
    if f is None:
        raise ValueError("not a flat of this arrangement")
    return f


# ---------------------------------------------------------------------------
# verification


def transversals_independent(L: Lattice, masks: Sequence[int]) -> bool:
    """Every choice of one atom per part spans a flat of rank = number of parts."""
    ja, ranks = L.join_atom, L.ranks
    parts = sorted(masks, key=popcount)

    def dfs(k: int, f: int) -> bool:
        if k == len(parts):
            return True
        for a in bits(parts[k]):
            g = ja[f][a]
            if ranks[g] != k + 1 or not dfs(k + 1, g):
                return False
        return True

    return dfs(0, 0)


def singleton_failures(L: Lattice, masks: Sequence[int]) -> list[int]:
    out = []
    for f in range(1, len(L)):
        X = L.masks[f]
        if not any(popcount(p & X) == 1 for p in masks):
            out.append(f)
    return out


def lattice_is_nice(L: Lattice, masks: Sequence[int]) -> bool:
    masks = [m for m in masks if m]
    if len(masks) > L.rank:
        return False
    if not transversals_independent(L, masks):
        return False
    for f in range(1, len(L)):
        X = L.masks[f]
        for p in masks:
            q = p & X
            if q and q & (q - 1) == 0:
                break
        else:
            return False
    return True


def is_independent(A: LatticeLike, pi) -> bool:
    return transversals_independent(_lat(A), _masks(A, pi))


def induced_partition(A: LatticeLike, pi, X) -> Partition:
    """Nonempty blocks pi_i cap A_X, in the order of pi (hyperplane indices of A)."""
    L = _lat(A)
    masks = _masks(A, pi)
    Xm = L.masks[_flat_id(L, X)]
    return Partition.from_masks([p & Xm for p in masks if p & Xm])


def is_nice(A: LatticeLike, pi) -> NiceReport:
    L = _lat(A)
    masks = _masks(A, pi)
    sizes = sorted(popcount(m) for m in masks)
    return NiceReport(
        independent=transversals_independent(L, masks),
        singleton_failures=[frozenset(bits(L.masks[f])) for f in singleton_failures(L, masks)],
        poincare_factored=L.poincare() == Polynomial.from_roots(sizes),
        part_sizes=sizes,
    )


def cor_2_7_report(A: LatticeLike, pi, strict: bool = True) -> FactorizationReport:
    """Check s = r(A), Poin = prod(1 + |pi_i| t) and r(X) = #parts meeting A_X for all X.

    These hold for every factorisation, so with ``strict`` a failure raises
    :class:`InconsistencyError`.
    """
    L = _lat(A)
    masks = _masks(A, pi)
    rep = FactorizationReport(
        rank=L.rank,
        parts=len(masks),
        poincare=L.poincare(),
        product=Polynomial.from_roots([popcount(m) for m in masks]),
    )
    for f, X in enumerate(L.masks):
        meet = sum(1 for p in masks if p & X)
        if meet != L.ranks[f]:
            rep.rank_failures.append(frozenset(bits(X)))
    if strict and not rep.ok:
        raise InconsistencyError(f"factorisation consequences violated: {rep}")
    return rep


# ---------------------------------------------------------------------------
# search


def _check_limits(L: Lattice, max_hyperplanes: Optional[int], max_rank: Optional[int]) -> None:
    if max_hyperplanes is not None and L.n > max_hyperplanes:
        raise SizeLimitExceeded(f"{L.n} hyperplanes exceeds the limit of {max_hyperplanes}")
    if max_rank is not None and L.rank > max_rank:
        raise SizeLimitExceeded(f"rank {L.rank} exceeds the limit of {max_rank}")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _fits(cur: list[int], target_desc: list[int]) -> bool:
    cur = sorted(cur, reverse=True)
    if len(cur) > len(target_desc):
        return False
    return all(c <= t for c, t in zip(cur, target_desc))


def _search_with_singleton(L: Lattice, H: int, rest_desc: list[int], rank2: list[int]) -> Iterator[list[int]]:
    n = L.n
    uf = _UnionFind(n)
    hb = 1 << H
    # rank-2 flats through H: everything else in them shares one part
    for f in rank2:
        X = L.masks[f]
        if X & hb:
            others = list(bits(X & ~hb))
            for a in others[1:]:
                uf.union(others[0], a)
    groups: dict[int, int] = {}
    for a in range(n):
        if a != H:
            r = uf.find(a)
            groups[r] = groups.get(r, 0) | (1 << a)
    blocks = sorted(groups.values(), key=lambda m: (m & -m))
    if not blocks:
        if not rest_desc:
            yield [hb]
        return
    biggest = rest_desc[0] if rest_desc else 0
    if any(popcount(b) > biggest for b in blocks):
        return
    nparts = len(rest_desc)
    flat_masks = L.masks
    flat_ranks = L.ranks
    touching = []
    for b in blocks:
        touching.append([f for f in range(1, len(L)) if flat_masks[f] & b])
    block_hits = {}
    for i, fl in enumerate(touching):
        for f in fl:
            block_hits.setdefault(f, []).append(i)
    parts: list[int] = []
    remaining_after = [0] * (len(blocks) + 1)
    for i in range(len(blocks) - 1, -1, -1):
        remaining_after[i] = remaining_after[i + 1] | blocks[i]

    def ok_flats(i: int) -> bool:
        # exactly r(X) parts meet X in the end: never more, and the blocks
        # still unassigned must be able to make up the difference
        for f in touching[i]:
            X = flat_masks[f]
            meet = 1 if X & hb else 0
            for p in parts:
                if p & X:
                    meet += 1
            if meet > flat_ranks[f]:
                return False
            later = sum(1 for j in block_hits[f] if j > i)
            if meet + later < flat_ranks[f]:
                return False
        return True

    def dfs(i: int) -> Iterator[list[int]]:
        if i == len(blocks):
            if len(parts) == nparts and sorted(map(popcount, parts), reverse=True) == rest_desc:
                cand = [hb] + parts
                if lattice_is_nice(L, cand):
                    yield list(cand)
            return
        b = blocks[i]
        for k in range(len(parts) + 1):
            opened = k == len(parts)
            if opened:
                if len(parts) == nparts:
                    break
                parts.append(b)
            else:
                parts[k] |= b
            sizes = [popcount(p) for p in parts]
            left = popcount(remaining_after[i + 1])
            if _fits(sizes, rest_desc) and left >= sum(rest_desc) - sum(sizes) and ok_flats(i):
                yield from dfs(i + 1)
            if opened:
                parts.pop()
            else:
                parts[k] &= ~b

    yield from dfs(0)


def lattice_nice_partitions(L: Lattice) -> Iterator[list[int]]:
    """Every nice partition of L once, in canonical order.

    Canonical form: the smallest singleton part first, then the remaining parts
    in order of their smallest atom. Partitions are produced in lexicographic
    order of (that singleton, restricted-growth labelling of the other atoms).
    """
    if L.n == 0:
        yield []
        return
    exps = L.exponents()
    if exps is NoSplit:
        return
    sizes = sorted(e for e in exps if e > 0)
    if 1 not in sizes:
        return
    rest = list(sizes)
    rest.remove(1)
    rest_desc = sorted(rest, reverse=True)
    rank2 = L.flats_of_rank(2)
    for H in range(L.n):
        for cand in _search_with_singleton(L, H, rest_desc, rank2):
            # report each partition only under its smallest singleton part
            if any(popcount(p) == 1 and (p & -p).bit_length() - 1 < H for p in cand[1:]):
                continue
            yield cand


def nice_partitions(A: LatticeLike, max_hyperplanes=DEFAULT_MAX_HYPERPLANES, max_rank=DEFAULT_MAX_RANK) -> Iterator[Partition]:
    L = _lat(A)
    _check_limits(L, max_hyperplanes, max_rank)
    for cand in lattice_nice_partitions(L):
        yield Partition.from_masks(cand)


def nice_search(A: LatticeLike, max_hyperplanes=DEFAULT_MAX_HYPERPLANES, max_rank=DEFAULT_MAX_RANK) -> Optional[Partition]:
    """The canonical (lexicographically first) nice partition, or None if A is not nice.

    A Poincare polynomial that does not split is a proof of non-niceness.
    """
    for p in nice_partitions(A, max_hyperplanes, max_rank):
        return p
    return None


@dataclass
class HereditaryResult:
    ok: bool
    partitions: dict = field(default_factory=dict)
    witness: Optional[frozenset] = None

    def __bool__(self) -> bool:
        return self.ok


def hereditarily_nice(A: LatticeLike, max_hyperplanes=DEFAULT_MAX_HYPERPLANES, max_rank=DEFAULT_MAX_RANK) -> HereditaryResult:
    """nice_search on every restriction A^X; keys are closed sets of X.

    Partitions of A^X index the hyperplanes of the restriction lattice, whose
    atoms are the distinct traces H cap X ordered by their flat in L(A).
    """
    L = _lat(A)
    _check_limits(L, max_hyperplanes, max_rank)
    res = HereditaryResult(True)
    for f in range(len(L)):
        R = L.minor(f)
        p = nice_search(R, None, None)
        key = frozenset(bits(L.masks[f]))
        res.partitions[key] = p
        if p is None:
            res.ok = False
            res.witness = key
            break
    return res
