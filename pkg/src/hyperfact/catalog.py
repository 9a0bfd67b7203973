"""Concrete arrangements: intermediate arrangements A^k_l(r), real root systems
and the explicit rank 3 restrictions of E6 and E7.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import Arrangement, Flat, build_arrangement, flat_of, restriction
from .exactfield import FieldSpec, Scalar
from .induction import FactorizationCertificate
from .partition import Partition

__all__ = [
    "boolean",
    "braid",
    "intermediate",
    "intermediate_hyperplane",
    "monomial",
    "positive_roots",
    "root_system_arrangement",
    "simple_roots",
    "root_indices",
    "subsystem_restriction",
    "paper_arrangement",
    "PAPER_KEYS",
    "tail_flat",
    "intermediate_certificate",
    "chain_extension_certificate",
    "supersolvable_order_certificate",
    "catalog_arrangement",
    "CATALOG_HELP",
]

Q = FieldSpec(1)


def _unit(dim: int, i: int, fs: FieldSpec = Q) -> list:
    v = [fs.zero()] * dim
    v[i] = fs.one()
    return v


def boolean(ell: int) -> Arrangement:
    return build_arrangement(ell, Q, [_unit(ell, i) for i in range(ell)], f"boolean-{ell}")


def braid(ell: int) -> Arrangement:
    """x_i - x_j for 1 <= i < j <= ell (rank ell - 1)."""
    rows = []
    for i, j in itertools.combinations(range(ell), 2):
        v = [0] * ell
        v[i], v[j] = 1, -1
        rows.append(v)
    return build_arrangement(ell, Q, rows, f"braid-{ell}")


def _field_for(r: int) -> FieldSpec:
    # zeta_1 = 1 and zeta_2 = -1 are rational; keep one representation for Q
    return Q if r <= 2 else FieldSpec(r)


def _zeta_power(fs: FieldSpec, r: int, n: int) -> Scalar:
    if r == 1:
        return fs.one()
    if r == 2:
        return fs(1 if n % 2 == 0 else -1)
    return fs.zeta_power(n)


def intermediate_hyperplane(r: int, ell: int, a: int, b: int, n: int) -> list:
    """Normal of H^n_{a,b} = ker(x_a - zeta^n x_b), coordinates numbered from 1."""
    fs = _field_for(r)
    v = [fs.zero()] * ell
    v[a - 1] = fs.one()
    v[b - 1] = -_zeta_power(fs, r, n)
    return v


def intermediate(r: int, ell: int, k: int) -> Arrangement:
    """A^k_l(r): x_1 ... x_k times prod (x_a - zeta^n x_b), 1 <= a < b <= l, 0 <= n < r.

    Coordinate hyperplanes come first, then H^n_{a,b} in lexicographic (a, b, n).
    """
    if r < 1 or ell < 2 or not 0 <= k <= ell:
        raise ValueError(f"intermediate arrangement needs r >= 1, l >= 2, 0 <= k <= l; got {(r, ell, k)}")
    fs = _field_for(r)
    rows = [_unit(ell, c, fs) for c in range(k)]
    for a, b in itertools.combinations(range(1, ell + 1), 2):
        for n in range(r):
            rows.append(intermediate_hyperplane(r, ell, a, b, n))
    return build_arrangement(ell, fs, rows, f"A^{k}_{ell}({r})")


def monomial(r: int, p: int, ell: int) -> Arrangement:
    """Reflection arrangement of G(r, p, l): A^l_l(r) for p < r, A^0_l(r) for p = r."""
    if p < 1 or r % p:
        raise ValueError("G(r, p, l) needs p dividing r")
    A = intermediate(r, ell, ell if p < r else 0)
    return Arrangement(A.dim, A.field, A.hyperplanes, f"G({r},{p},{ell})")


# ---------------------------------------------------------------------------
# root systems (Bourbaki coordinates)

_HALF = Fraction(1, 2)


def _pm_pairs(dim: int, idx: Sequence[int]):
    for i, j in itertools.combinations(idx, 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [0] * dim
            v[i], v[j] = si, sj
            yield v


def _half_roots(dim: int, free: Sequence[int], fixed: dict, parity: int):
    for signs in itertools.product((1, -1), repeat=len(free)):
        if signs.count(-1) % 2 != parity:
            continue
        v = [Fraction(0)] * dim
        for i, s in zip(free, signs):
            v[i] = s * _HALF
        for i, s in fixed.items():
            v[i] = s * _HALF
        yield v
        yield [-x for x in v]


def _real_roots(kind: str, n: int) -> tuple[int, list]:
    """All roots (both signs) as rational vectors; H types use pairs (a, b) = a + b*tau."""
    if kind == "A":
        dim = n + 1
        roots = []
        for i, j in itertools.permutations(range(dim), 2):
            v = [0] * dim
            v[i], v[j] = 1, -1
            roots.append(v)
        return dim, roots
    if kind in ("B", "C"):
        roots = list(_pm_pairs(n, range(n)))
        for i in range(n):
            for s in (1, -1):
                v = [0] * n
                v[i] = s * (2 if kind == "C" else 1)
                roots.append(v)
        return n, roots
    if kind == "D":
        return n, list(_pm_pairs(n, range(n)))
    if kind == "F" and n == 4:
        roots = list(_pm_pairs(4, range(4)))
        for i in range(4):
            for s in (1, -1):
                v = [0] * 4
                v[i] = s
                roots.append(v)
        for signs in itertools.product((1, -1), repeat=4):
            roots.append([s * _HALF for s in signs])
        return 4, roots
    if kind == "G" and n == 2:
        roots = []
        for i, j in itertools.permutations(range(3), 2):
            v = [0] * 3
            v[i], v[j] = 1, -1
            roots.append(v)
            w = [-1] * 3
            w[i] = 2
            roots.append(w)
            roots.append([-x for x in w])
        return 3, roots
    if kind == "E" and n == 6:
        roots = list(_pm_pairs(8, range(5)))
        roots += list(_half_roots(8, range(5), {5: -1, 6: -1, 7: 1}, 0))
        return 8, roots
    if kind == "E" and n == 7:
        roots = list(_pm_pairs(8, range(6)))
        for s in (1, -1):
            v = [0] * 8
            v[6], v[7] = s, -s
            roots.append(v)
        roots += list(_half_roots(8, range(6), {6: 1, 7: -1}, 1))
        return 8, roots
    if kind == "E" and n == 8:
        roots = list(_pm_pairs(8, range(8)))
        roots += list(_half_roots(8, range(7), {7: 1}, 0))
        return 8, roots
    if kind == "H" and n in (3, 4):
        return n, _h_roots(n)
    raise ValueError(f"unsupported root system {kind}{n}")


def _even_permutations(k: int):
    for p in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
        if inv % 2 == 0:
            yield p


def _h_roots(n: int) -> list:
    # entries are (a, b) meaning a + b*tau with tau the golden ratio, 1/tau = tau - 1
    zero, one, half = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (_HALF, Fraction(0))
    tau_half = (Fraction(0), _HALF)
    inv_tau_half = (-_HALF, _HALF)

    def neg(x):
        return (-x[0], -x[1])

    roots = set()
    for i in range(n):
        for s in (1, -1):
            v = [zero] * n
            v[i] = one if s == 1 else neg(one)
            roots.add(tuple(v))
    if n == 4:
        for signs in itertools.product((1, -1), repeat=4):
            roots.add(tuple(half if s == 1 else neg(half) for s in signs))
        base = [tau_half, half, inv_tau_half, zero]
    else:
        base = [tau_half, half, inv_tau_half]
    for perm in _even_permutations(n):
        for signs in itertools.product((1, -1), repeat=n):
            v = [zero] * n
            for pos, src in enumerate(perm):
                x = base[src]
                v[pos] = x if signs[src] == 1 else neg(x)
            roots.add(tuple(v))
    return [list(v) for v in sorted(roots)]


def _parse_type(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-HA-h])_?(\d+)\s*", label)
    if not m:
        raise ValueError(f"unsupported root system label {label!r}")
    return m.group(1).upper(), int(m.group(2))


_TAU_FLOAT = (1 + 5 ** 0.5) / 2


def _h_value(x) -> float:
    return float(x[0]) + float(x[1]) * _TAU_FLOAT


def _is_positive(kind: str, v) -> bool:
    # positive: last nonzero coordinate is positive (Bourbaki lexicographic order)
    for x in reversed(v):
        val = _h_value(x) if kind == "H" else x
        if val != 0:
            return val > 0
    return False


def positive_roots(label: str) -> tuple[FieldSpec, list]:
    """Positive roots of a real root system, one per pair +-alpha, as covectors."""
    kind, n = _parse_type(label)
    dim, roots = _real_roots(kind, n)
    pos = [v for v in roots if _is_positive(kind, v)]
    if kind == "H":
        fs = FieldSpec(5)
        z = fs.zeta()
        tau = -(z ** 2) - z ** 3
        conv = [[fs(x[0]) + fs(x[1]) * tau for x in v] for v in pos]
        return fs, conv
    pos.sort(key=lambda v: [Fraction(x) for x in reversed(v)])
    return Q, [[Q(Fraction(x)) for x in v] for v in pos]


def root_system_arrangement(label: str) -> Arrangement:
    fs, roots = positive_roots(label)
    kind, n = _parse_type(label)
    return build_arrangement(len(roots[0]), fs, roots, f"{kind}{n}")


def simple_roots(label: str) -> list:
    """Bourbaki simple roots for the A, B, D and E types (rational vectors)."""
    kind, n = _parse_type(label)
    h = _HALF
    if kind == "A":
        return [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)] for i in range(n)]
    if kind == "B":
        out = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
        return out + [[1 if k == n - 1 else 0 for k in range(n)]]
    if kind == "D":
        out = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
        return out + [[1 if k in (n - 2, n - 1) else 0 for k in range(n)]]
    if kind == "E" and n in (6, 7, 8):
        a1 = [h, -h, -h, -h, -h, -h, -h, h]
        a2 = [1, 1, 0, 0, 0, 0, 0, 0]
        rest = []
        for i in range(n - 2):
            v = [0] * 8
            v[i], v[i + 1] = -1, 1
            rest.append(v)
        return [a1, a2] + rest
    raise ValueError(f"no simple roots recorded for {label}")


def root_indices(label: str, vectors: Sequence[Sequence]) -> list[int]:
    """Indices in :func:`positive_roots` of the given roots (either sign)."""
    fs, roots = positive_roots(label)
    keyed = {tuple(v): i for i, v in enumerate(roots)}
    out = []
    for v in vectors:
        w = tuple(fs(Fraction(x)) if not isinstance(x, Scalar) else x for x in v)
        neg = tuple(-x for x in w)
        if w in keyed:
            out.append(keyed[w])
        elif neg in keyed:
            out.append(keyed[neg])
        else:
            raise ValueError(f"{list(v)} is not a root of {label}")
    return out


def subsystem_restriction(label: str, subsystem_roots: Sequence[int]) -> Arrangement:
    """Restriction of A(W) to the intersection of the chosen root hyperplanes.

    ``subsystem_roots`` index :func:`positive_roots`; see :func:`root_indices`.
    """
    A = root_system_arrangement(label)
    fs, roots = positive_roots(label)
    hyps = []
    for i in subsystem_roots:
        if not 0 <= i < len(roots):
            raise ValueError(f"root index {i} out of range for {label}")
        hyps.append(A.index(roots[i]))
    R = restriction(A, flat_of(A, hyps))
    return Arrangement(R.dim, R.field, R.hyperplanes, f"({label}, roots {list(subsystem_roots)})")


# ---------------------------------------------------------------------------
# explicit rank 3 restrictions of E6 and E7

PAPER_KEYS = ("E6_A1cubed", "E6_A1A2", "E7_A1A3dd")

_EXPLICIT = {
    # H_0 .. H_9
    "E6_A1cubed": [(2, -1, -1), (2, -1, 1), (1, 1, 0), (2, 1, 1), (2, 1, -1), (1, -1, 0), (0, 1, 1), (0, 1, -1), (0, 1, 0), (1, 0, 0)],
    # x (x + z)(x - z)(x + y)(x - y)(y + z)(y - z)(2x + y - z)(2x - y + z)(3y - z)
    "E6_A1A2": [(1, 0, 0), (1, 0, 1), (1, 0, -1), (1, 1, 0), (1, -1, 0), (0, 1, 1), (0, 1, -1), (2, 1, -1), (2, -1, 1), (0, 3, -1)],
    # x y z (x + y)(x - y)(x - z)(x - 2z)(y + 2z)(y - 2z)(x + y - 2z)(x - y - 2z)
    "E7_A1A3dd": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, -1, 0), (1, 0, -1), (1, 0, -2), (0, 1, 2), (0, 1, -2), (1, 1, -2), (1, -1, -2)],
}

_EXPLICIT_LABEL = {"E6_A1cubed": "(E6,A1^3)", "E6_A1A2": "(E6,A1A2)", "E7_A1A3dd": "(E7,(A1A3)'')"}

_EXPLICIT_PARTITION = {
    "E6_A1A2": [[(1, 0, 0)], [(2, 1, -1), (2, -1, 1), (0, 1, -1), (0, 3, -1)], [(1, 0, 1), (1, 0, -1), (0, 1, 1), (1, 1, 0), (1, -1, 0)]],
    "E7_A1A3dd": [[(1, 0, -1)], [(1, 0, 0), (0, 0, 1), (1, 0, -2), (0, 1, 2), (0, 1, -2)], [(0, 1, 0), (1, 1, -2), (1, -1, -2), (1, 1, 0), (1, -1, 0)]],
}


def paper_arrangement(key: str) -> tuple[Arrangement, Optional[Partition]]:
    if key not in _EXPLICIT:
        raise ValueError(f"unknown key {key!r}; expected one of {PAPER_KEYS}")
    A = build_arrangement(3, Q, _EXPLICIT[key], _EXPLICIT_LABEL[key], on_duplicate="error")
    pi = None
    if key in _EXPLICIT_PARTITION:
        pi = Partition(tuple(tuple(A.index(v) for v in part) for part in _EXPLICIT_PARTITION[key]))
    return A, pi


# ---------------------------------------------------------------------------
# flats and certificates from explicit constructions


def tail_flat(r: int, ell: int) -> Flat:
    """X = intersection of H^n_{a,b} over l-3 <= a < b <= l inside A^{l-3}_l(r)."""
    A = intermediate(r, ell, ell - 3)
    idx = [
        A.index(intermediate_hyperplane(r, ell, a, b, n))
        for a, b in itertools.combinations(range(ell - 3, ell + 1), 2)
        for n in range(r)
    ]
    return flat_of(A, idx)


def supersolvable_order_certificate(A: Arrangement, partition: Partition, prefix=()) -> list:
    """Addition list adding the parts of a modular-chain partition one after another."""
    done = set(prefix)
    out = []
    for k, part in enumerate(partition.parts):
        for h in part:
            if h not in done:
                out.append((h, k))
    return out


def intermediate_certificate(r: int, ell: int) -> tuple[Arrangement, FactorizationCertificate]:
    """The induction of factorisations building A^{l-2}_l(r) from A^{l-2}_{l-1}(r) x Phi_1.

    The base is built up from G(r,1,l-2) by adding x_i and then H^n_{j,i} to part i;
    the H^n_{j,l-1} fill part l-1. After that every
    H^n_{a,l} with a <= l-2 joins part l, H^0_{l-1,l} joins part l-1, and the other
    H^n_{l-1,l} join part l.
    """
    if r < 2 or ell < 3:
        raise ValueError("needs r >= 2 and l >= 3")
    A = intermediate(r, ell, ell - 2)
    fs = A.field
    steps = []

    def H(a, b, n):
        return A.index(intermediate_hyperplane(r, ell, a, b, n))

    def coord(c):
        return A.index(_unit(ell, c - 1, fs))

    for i in range(1, ell - 1):
        steps.append((coord(i), i - 1))
        for j in range(1, i):
            for n in range(r):
                steps.append((H(j, i, n), i - 1))
    for j in range(1, ell - 1):
        for n in range(r):
            steps.append((H(j, ell - 1, n), ell - 2))
    for a in range(1, ell - 1):
        for n in range(r):
            steps.append((H(a, ell, n), ell - 1))
    steps.append((H(ell - 1, ell, 0), ell - 2))
    for n in range(1, r):
        steps.append((H(ell - 1, ell, n), ell - 1))
    parts = [[] for _ in range(ell)]
    for h, k in steps:
        parts[k].append(h)
    return A, FactorizationCertificate(steps, Partition(tuple(tuple(p) for p in parts)))


def chain_extension_certificate(key: str) -> tuple[Arrangement, FactorizationCertificate]:
    """Certificates for the two nice restrictions: a supersolvable base, then the extra hyperplanes.

    E6_A1A2: C' = C minus {3y - z} carries the chain partition of pi_C; then 3y - z joins pi_2.
    E7_A1A3dd: D minus {y + 2z, y - 2z} carries the chain partition; then y + 2z and y - 2z join pi_2.
    """
    A, pi = paper_arrangement(key)
    late = {"E6_A1A2": [(0, 3, -1)], "E7_A1A3dd": [(0, 1, 2), (0, 1, -2)]}[key]
    late_idx = [A.index(v) for v in late]
    steps = supersolvable_order_certificate(A, pi, prefix=late_idx)
    part_of = {h: k for k, p in enumerate(pi.parts) for h in p}
    steps += [(h, part_of[h]) for h in late_idx]
    return A, FactorizationCertificate(steps, pi)


# ---------------------------------------------------------------------------
# textual catalog keys

CATALOG_HELP = (
    "boolean:<l> | braid:<l> | intermediate:<r>,<l>,<k> | monomial:<r>,<p>,<l> | "
    "root:<type> (A3, B3, D4, F4, E6, E7, E8, H3, H4, G2) | "
    "subsystem:<type>:<simple root numbers> (e.g. subsystem:E6:3,4,5) | "
    + " | ".join(PAPER_KEYS)
)


def catalog_arrangement(key: str) -> tuple[Arrangement, Optional[Partition]]:
    key = key.strip()
    if key in _EXPLICIT:
        return paper_arrangement(key)
    fam, _, arg = key.partition(":")
    try:
        if fam == "boolean":
            return boolean(int(arg)), None
        if fam == "braid":
            return braid(int(arg)), None
        if fam == "intermediate":
            r, ell, k = (int(x) for x in arg.split(","))
            return intermediate(r, ell, k), None
        if fam == "monomial":
            r, p, ell = (int(x) for x in arg.split(","))
            return monomial(r, p, ell), None
        if fam == "root":
            return root_system_arrangement(arg), None
        if fam == "subsystem":
            label, _, nums = arg.partition(":")
            simple = simple_roots(label)
            chosen = [simple[int(x) - 1] for x in nums.split(",")]
            return subsystem_restriction(label, root_indices(label, chosen)), None
    except (TypeError, IndexError) as exc:
        raise ValueError(f"bad catalog key {key!r}: {exc}") from None
    raise ValueError(f"unknown catalog key {key!r}; expected {CATALOG_HELP}")
