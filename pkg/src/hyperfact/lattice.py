"""Intersection lattices as combinatorial objects.

Flats are bitmasks over the atoms (hyperplanes). Every lattice carries a join
table ``join_atom[f][a]`` giving the flat spanned by flat ``f`` and atom ``a``,
so ranks of arbitrary hyperplane sets are computed by folding the table.

Minors (deletions of restrictions) are built combinatorially from the root
lattice of the original arrangement: the restriction A^X of a subarrangement
is determined by the flats above X. A minor is keyed by its center flat and
the set of root flats serving as its atoms, so identical minors reached along
different routes share one lattice object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Optional, Sequence

from . import linalg

if TYPE_CHECKING:
    from .arrangement import Arrangement

__all__ = [
    "Lattice",
    "Polynomial",
    "NoSplit",
    "intersection_lattice",
    "poincare_polynomial",
    "exponent_candidates",
    "bits",
    "popcount",
]


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial in t, coefficients lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0,))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "Polynomial":
        """prod (1 + b t) over ``roots``."""
        out = cls((1,))
        for b in roots:
            out = out * cls((1, b))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def shift(self, k: int = 1) -> "Polynomial":
        """Multiply by t^k."""
        return Polynomial((0,) * k + self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0 and len(self.coeffs) > 1:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out


class _NoSplit:
    """Marker: the Poincare polynomial has no factorisation into (1 + b t), b >= 0."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NoSplit"

    def __bool__(self) -> bool:
        return False


NoSplit = _NoSplit()


def split_roots(poly: Polynomial) -> Optional[list[int]]:
    """Nonnegative integers b_i with poly = prod (1 + b_i t), or None.

    Works on the reversed polynomial prod (t + b_i): every b_i divides its
    constant term, so candidate roots are the divisors.
    """
    coeffs = list(poly.coeffs)
    if coeffs[0] != 1:
        return None
    # t^r Poin(1/t) = prod (t + b_i); read highest degree first it is ``coeffs``
    rev = coeffs
    roots = []
    while len(rev) > 1:
        const = rev[-1]
        if const <= 0:
            return None
        found = None
        for b in _divisors(const):
            # synthetic division of rev by (t + b)
            q = [rev[0]]
            for c in rev[1:]:
                q.append(c - b * q[-1])
            if q[-1] == 0:
                found = b
                rev = q[:-1]
                break
        if found is None:
            return None
        roots.append(found)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class Lattice:
    """Geometric lattice of flats with atoms 0..n-1.

    ``masks[f]`` is the closed atom set of flat ``f``; flats are sorted by
    (rank, sorted closed set), so flat 0 is the bottom V and the last flat is
    the center T.
    """

    def __init__(self, n: int, dim: int, masks, ranks, join_atom, root=None, root_flat=None, center=0):
        self.n = n
        self.dim = dim
        self.masks = list(masks)
        self.ranks = list(ranks)
        self.join_atom = join_atom
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.root = root if root is not None else self
        self.root_flat = root_flat if root_flat is not None else list(range(len(self.masks)))
        self.center = center
        self._mobius = None
        self._minors: dict = {}
        self._below = None
        self.memo: dict = {}

    # basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.masks)

    def __repr__(self) -> str:
        return f"<Lattice atoms={self.n} flats={len(self)} rank={self.rank}>"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def rank(self) -> int:
        return self.ranks[-1]

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    def flats_of_rank(self, k: int) -> list[int]:
        return [f for f, r in enumerate(self.ranks) if r == k]

    def atom_flat(self, a: int) -> int:
        return self.join_atom[0][a]

    def closure(self, mask: int) -> int:
        """Flat id spanned by the atoms in ``mask``."""
        f = 0
        ja = self.join_atom
        m = mask
        while m:
            low = m & -m
            f = ja[f][low.bit_length() - 1]
            m ^= low
        return f

    def rank_of(self, mask: int) -> int:
        return self.ranks[self.closure(mask)]

    def join(self, f: int, g: int) -> int:
        ja = self.join_atom
        m = self.masks[g] & ~self.masks[f]
        while m:
            low = m & -m
            f = ja[f][low.bit_length() - 1]
            m ^= low
        return f

    def meet(self, f: int, g: int) -> int:
        return self.index[self.masks[f] & self.masks[g]]

    def leq(self, f: int, g: int) -> bool:
        return self.masks[f] & ~self.masks[g] == 0

    def below(self, f: int) -> list[int]:
        """Flats Y <= X (as ids), including X."""
        m = self.masks[f]
        return [g for g, mg in enumerate(self.masks) if mg & ~m == 0]

    # Mobius / Poincare ----------------------------------------------------

    @property
    def mobius(self) -> list[int]:
        """mu(V, X) for every flat, by the recursion sum_{Y <= X} mu(V, Y) = 0."""
        if self._mobius is None:
            mu = [0] * len(self.masks)
            mu[0] = 1
            for f in range(1, len(self.masks)):
                m = self.masks[f]
                s = 0
                for g in range(f):
                    if self.masks[g] & ~m == 0:
                        s += mu[g]
                mu[f] = -s
            self._mobius = mu
        return self._mobius

    def poincare(self) -> Polynomial:
        coeffs = [0] * (self.rank + 1)
        for r, mu in zip(self.ranks, self.mobius):
            coeffs[r] += abs(mu)
        return Polynomial(tuple(coeffs))

    def exponents(self):
        """{0^(dim - rank)} plus the roots of Poin read as (1 + b t) factors, or NoSplit."""
        roots = split_roots(self.poincare())
        if roots is None:
            return NoSplit
        return sorted([0] * (self.dim - self.rank) + roots)

    def rank2_profile(self) -> list[int]:
        return sorted(popcount(self.masks[f]) for f in self.flats_of_rank(2))

    # minors ---------------------------------------------------------------

    def atom_reps(self) -> list[int]:
        """For each atom, a root hyperplane whose root flat over the center is that atom."""
        root = self.root
        c = root.masks[self.root_flat[0]]
        reps = []
        for a in range(self.n):
            rm = root.masks[self.root_flat[self.atom_flat(a)]] & ~c
            reps.append((rm & -rm).bit_length() - 1)
        return reps

    def minor(self, contract: int = 0, keep: Optional[int] = None) -> "Lattice":
        """Lattice of (deletion to ``keep``) restricted to flat ``contract``.

        ``keep`` is an atom mask (default: all atoms). Atoms of the minor are
        the distinct flats ``contract v a`` for kept atoms ``a`` outside the
        contracted flat, ordered by their root flat id.
        """
        if keep is None:
            keep = self.full
        root = self.root
        reps = self.atom_reps()
        rc = self.root_flat[contract]
        cmask = self.masks[contract]
        atom_flats = set()
        for a in bits(keep & ~cmask):
            atom_flats.add(root.join_atom[rc][reps[a]])
        key = (rc, frozenset(atom_flats))
        return root._minor_from_key(key)

    def minor_atom_map(self, minor: "Lattice", contract: int = 0, keep: Optional[int] = None) -> dict[int, int]:
        """Map atoms of self (outside the contracted flat, inside ``keep``) to atoms of ``minor``."""
        if keep is None:
            keep = self.full
        root = self.root
        reps = self.atom_reps()
        rc = self.root_flat[contract]
        pos = {rf: i for i, rf in enumerate(minor.root_flat[minor.atom_flat(i)] for i in range(minor.n))}
        out = {}
        for a in bits(keep & ~self.masks[contract]):
            out[a] = pos[root.join_atom[rc][reps[a]]]
        return out

    def _minor_from_key(self, key) -> "Lattice":
        assert self.root is self
        hit = self._minors.get(key)
        if hit is not None:
            return hit
        rc, atom_flats = key
        atoms = sorted(atom_flats)
        cmask = self.masks[rc]
        reps = []
        for af in atoms:
            rm = self.masks[af] & ~cmask
            reps.append((rm & -rm).bit_length() - 1)
        base_rank = self.ranks[rc]
        ja = self.join_atom
        # BFS over root flats reachable from rc by joining atom reps
        order = [rc]
        seen = {rc: 0}
        local_join = []
        i = 0
        while i < len(order):
            g = order[i]
            row = []
            for h in reps:
                t = ja[g][h]
                if t not in seen:
                    seen[t] = len(order)
                    order.append(t)
                row.append(t)
            local_join.append(row)
            i += 1
        masks_root = self.masks
        local_masks = []
        for g in order:
            gm = masks_root[g]
            m = 0
            for k, h in enumerate(reps):
                if gm >> h & 1:
                    m |= 1 << k
            local_masks.append(m)
        ranks = [self.ranks[g] - base_rank for g in order]
        perm = sorted(range(len(order)), key=lambda j: (ranks[j], sorted(bits(local_masks[j]))))
        inv = {old: new for new, old in enumerate(perm)}
        join_atom = [[inv[seen[t]] for t in local_join[old]] for old in perm]
        lat = Lattice(
            len(atoms),
            self.dim - base_rank,
            [local_masks[j] for j in perm],
            [ranks[j] for j in perm],
            join_atom,
            root=self,
            root_flat=[order[j] for j in perm],
            center=rc,
        )
        self._minors[key] = lat
        return lat

    def key(self) -> tuple:
        """Canonical identity of this lattice as a minor of its root."""
        return (self.root_flat[0], tuple(self.root_flat[self.atom_flat(a)] for a in range(self.n)))

    def deletion(self, atom: int) -> "Lattice":
        return self.minor(0, self.full & ~(1 << atom))

    def restriction(self, atom: int) -> "Lattice":
        return self.minor(self.atom_flat(atom))

    def localization(self, f: int) -> "Lattice":
        return self.minor(0, self.masks[f])

    # construction -----------------------------------------------------------

    @classmethod
    def from_arrangement(cls, A: "Arrangement") -> "Lattice":
        """Breadth-first closure: intersect each flat with each hyperplane."""
        n = len(A)
        normals = [H.normal for H in A.hyperplanes]
        flats_masks = [0]
        flats_ranks = [0]
        bases = [[]]
        join = {}
        by_mask = {0: 0}
        level = [0]
        rk = 0
        while level:
            nxt = []
            containing: dict[int, list[int]] = {}
            for f in level:
                fm = flats_masks[f]
                for h in range(n):
                    if fm >> h & 1:
                        join[f, h] = f
                        continue
                    want = fm | (1 << h)
                    hit = None
                    for g in containing.get(h, ()):
                        if want & ~flats_masks[g] == 0:
                            hit = g
                            break
                    if hit is None:
                        basis = linalg.extend_basis(bases[f], normals[h])
                        gm = 0
                        for j in range(n):
                            if want >> j & 1 or linalg.in_span(normals[j], basis):
                                gm |= 1 << j
                        hit = len(flats_masks)
                        flats_masks.append(gm)
                        flats_ranks.append(rk + 1)
                        bases.append(basis)
                        by_mask[gm] = hit
                        nxt.append(hit)
                        for j in bits(gm):
                            containing.setdefault(j, []).append(hit)
                    join[f, h] = hit
            level = nxt
            rk += 1
        perm = sorted(range(len(flats_masks)), key=lambda j: (flats_ranks[j], sorted(bits(flats_masks[j]))))
        inv = {old: new for new, old in enumerate(perm)}
        join_atom = [[inv[join[old, h]] for h in range(n)] for old in perm]
        lat = cls(n, A.dim, [flats_masks[j] for j in perm], [flats_ranks[j] for j in perm], join_atom)
        lat.equations = [tuple(row for _, row in bases[j]) for j in perm]
        return lat


def intersection_lattice(A: "Arrangement") -> Lattice:
    return Lattice.from_arrangement(A)


def poincare_polynomial(A: "Arrangement") -> Polynomial:
    return A.lattice.poincare()


def exponent_candidates(A: "Arrangement"):
    return A.lattice.exponents()
