"""Lattice isomorphism of small arrangements by backtracking over hyperplane bijections."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional, Union

from .lattice import Lattice, bits, popcount

if TYPE_CHECKING:
    from .arrangement import Arrangement

__all__ = ["SizeLimitExceeded", "lattice_isomorphic", "lattice_invariants", "rank2_signatures", "isomorphism_obstruction"]

DEFAULT_MAX_ATOMS = 24


class SizeLimitExceeded(RuntimeError):
    """An exponential search was refused because the input is above the configured limit."""


def _as_lattice(obj) -> Lattice:
    return obj if isinstance(obj, Lattice) else obj.lattice


def rank2_signatures(L: Lattice) -> list[tuple]:
    """Per atom: sorted sizes of the rank-2 flats through it."""
    sizes = [[] for _ in range(L.n)]
    for f in L.flats_of_rank(2):
        m = L.masks[f]
        s = popcount(m)
        for a in bits(m):
            sizes[a].append(s)
    return [tuple(sorted(x)) for x in sizes]


def lattice_invariants(L: Lattice) -> tuple:
    counts = [0] * (L.rank + 1)
    for r in L.ranks:
        counts[r] += 1
    return (L.n, tuple(counts), L.poincare().coeffs, tuple(sorted(rank2_signatures(L))))


_INVARIANT_NAMES = ("hyperplane count", "flats per rank", "Poincare polynomial", "rank-2 profile")


def isomorphism_obstruction(A1, A2) -> Optional[str]:
    """Name of the first cheap invariant telling L(A1) and L(A2) apart, if any."""
    for name, x, y in zip(_INVARIANT_NAMES, lattice_invariants(_as_lattice(A1)), lattice_invariants(_as_lattice(A2))):
        if x != y:
            return name
    return None


def _full_check(L1: Lattice, L2: Lattice, phi: list[int]) -> bool:
    for f, m in enumerate(L1.masks):
        img = 0
        for a in bits(m):
            img |= 1 << phi[a]
        g = L2.index.get(img)
        if g is None or L2.ranks[g] != L1.ranks[f]:
            return False
    return True


def lattice_isomorphic(
    A1: Union["Arrangement", Lattice],
    A2: Union["Arrangement", Lattice],
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Optional[list[int]]:
    """Return phi with phi[i] = image of hyperplane i, or None if L(A1) and L(A2) differ.

    Invariants are compared first; the search maps atoms one at a time and
    keeps every rank-2 flat among mapped atoms onto a rank-2 flat of the same
    size. Leaves are confirmed against every flat of L(A1).
    """
    L1, L2 = _as_lattice(A1), _as_lattice(A2)
    if L1.n > max_atoms or L2.n > max_atoms:
        raise SizeLimitExceeded(f"lattice isomorphism limited to {max_atoms} hyperplanes")
    if lattice_invariants(L1) != lattice_invariants(L2):
        return None
    n = L1.n
    sig1, sig2 = rank2_signatures(L1), rank2_signatures(L2)
    cands = [[b for b in range(n) if sig2[b] == sig1[a]] for a in range(n)]
    pair1 = [[popcount(L1.masks[L1.closure((1 << a) | (1 << c))]) if a != c else 0 for c in range(n)] for a in range(n)]
    phi = [-1] * n
    used = [False] * n

    def consistent(a: int, b: int) -> bool:
        for c in range(a):
            d = phi[c]
            f1 = L1.masks[L1.closure((1 << a) | (1 << c))]
            f2 = L2.masks[L2.closure((1 << b) | (1 << d))]
            if popcount(f2) != pair1[a][c]:
                return False
            for e in range(a):
                if (f1 >> e & 1) != (f2 >> phi[e] & 1):
                    return False
        return True

    def search(a: int) -> bool:
        if a == n:
            return _full_check(L1, L2, phi)
        for b in cands[a]:
            if used[b] or not consistent(a, b):
                continue
            phi[a] = b
            used[b] = True
            if search(a + 1):
                return True
            used[b] = False
            phi[a] = -1
        return False

    return list(phi) if search(0) else None
