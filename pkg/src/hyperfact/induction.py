"""Inductive factorisations: restriction maps, certificates, search and tables.

A pair (A, pi) is inductively factored when A is empty, or some H0 admits a
bijective restriction map rho: A minus pi_1 -> A'' (pi_1 being the part of
H0) such that (A', pi') and (A'', pi'') are inductively factored again.
Everything here is decided on intersection lattices; a triple's A' and A''
are minors of the root lattice.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arrangement import Arrangement, format_form, restriction_with_map, flat_of
from .lattice import Lattice, NoSplit, bits, mask_of, popcount
from .modularity import chain_masks, lattice_supersolvable
from .partition import (
    DEFAULT_MAX_HYPERPLANES,
    DEFAULT_MAX_RANK,
    HereditaryResult,
    InconsistencyError,
    LatticeLike,
    Partition,
    _check_limits,
    _lat,
    _masks,
    lattice_is_nice,
    lattice_nice_partitions,
)

__all__ = [
    "RestrictionMap",
    "FactorizationCertificate",
    "VerificationResult",
    "InductionRow",
    "restriction_map",
    "addition_deletion_nice",
    "is_inductive_factorization",
    "indfac_search",
    "verify_certificate",
    "emit_induction_table",
    "format_induction_table",
    "hereditarily_indfac",
    "format_certificate",
    "parse_certificate",
]


@dataclass(frozen=True)
class RestrictionMap:
    source: tuple
    images: dict
    bijective: bool
    induced_parts: tuple
    disjoint: bool


def restriction_map(A: Arrangement, pi: Partition, h0: int) -> RestrictionMap:
    """rho: H -> H cap H0 on A minus pi_1, with images as hyperplane indices of A''."""
    pi.validate(len(A))
    if h0 not in pi.parts[0]:
        raise ValueError(f"hyperplane {h0} is not in the first part of the partition")
    A2, images = restriction_with_map(A, flat_of(A, [h0]))
    source = tuple(i for p in pi.parts[1:] for i in p)
    rho = {i: images[i] for i in source}
    induced = tuple(tuple(sorted({rho[i] for i in p})) for p in pi.parts[1:])
    disjoint = all(not set(a) & set(b) for k, a in enumerate(induced) for b in induced[k + 1 :])
    bijective = len(set(rho.values())) == len(source) and set(rho.values()) == set(range(len(A2)))
    return RestrictionMap(source, rho, bijective, induced, disjoint)


# ---------------------------------------------------------------------------
# lattice-level triple


def _triple_parts(L: Lattice, masks: Sequence[int], h0: int):
    """Return (L', pi', L'', pi'', bijective) with pi_1 = the part holding h0."""
    hb = 1 << h0
    first = next(p for p in masks if p & hb)
    others = [p for p in masks if not p & hb]
    L1 = L.deletion(h0)
    m1 = L.minor_atom_map(L1, 0, L.full & ~hb)
    parts1 = []
    for p in [first & ~hb] + others:
        if p:
            parts1.append(mask_of(m1[a] for a in bits(p)))
    cf = L.atom_flat(h0)
    L2 = L.restriction(h0)
    m2 = L.minor_atom_map(L2, cf)
    parts2 = []
    union = 0
    injective = True
    for p in others:
        img = 0
        for a in bits(p):
            b = 1 << m2[a]
            if img & b or union & b:
                injective = False
            img |= b
        union |= img
        parts2.append(img)
    bijective = injective and union == L2.full
    return L1, parts1, L2, parts2, bijective


@dataclass
class _Node:
    h0: int
    parts: tuple
    deletion: "_Node | None" = None
    restriction: "_Node | None" = None
    restriction_lattice: Optional[Lattice] = None


_EMPTY = _Node(-1, ())


def _ifac(L: Lattice, masks: Sequence[int]) -> Optional[_Node]:
    masks = tuple(m for m in masks if m)
    if L.n == 0:
        return _EMPTY
    key = ("ifac", frozenset(masks))
    if key in L.memo:
        return L.memo[key]
    result = None
    # inductively factored pairs are nice (addition theorem), so this is a sound filter
    if len(masks) == L.rank and lattice_is_nice(L, masks):
        size = {}
        for p in masks:
            for a in bits(p):
                size[a] = popcount(p)
        for h0 in sorted(range(L.n), key=lambda a: (-size[a], a)):
            L1, p1, L2, p2, bij = _triple_parts(L, masks, h0)
            if not bij:
                continue
            sub2 = _ifac(L2, p2)
            if sub2 is None:
                continue
            sub1 = _ifac(L1, p1)
            if sub1 is None:
                continue
            result = _Node(h0, masks, sub1, sub2, L2)
            break
    L.memo[key] = result
    return result


# ---------------------------------------------------------------------------
# certificates


@dataclass
class FactorizationCertificate:
    """Hyperplanes added in order, each joining a part of ``final_partition``.

    ``restrictions`` optionally holds, per step, a certificate for the
    restriction to the added hyperplane; its indices refer to the atoms of
    that restriction lattice (traces ordered by their flat in the root lattice).
    """

    additions: list
    final_partition: Partition
    restrictions: dict = field(default_factory=dict)

    def order(self) -> list[int]:
        return [h for h, _ in self.additions]


def _certificate_from_node(L: Lattice, node: _Node) -> FactorizationCertificate:
    masks = list(node.parts)
    part_of = {a: k for k, p in enumerate(masks) for a in bits(p)}
    deletions = []
    subs = []
    alive = list(range(L.n))
    cur = node
    while cur is not _EMPTY:
        h = alive[cur.h0]
        deletions.append(h)
        subs.append((cur.restriction_lattice, cur.restriction))
        del alive[cur.h0]
        cur = cur.deletion
    additions = [(h, part_of[h]) for h in reversed(deletions)]
    restrictions = {}
    for step, (L2, sub) in enumerate(reversed(subs)):
        if sub is not _EMPTY:
            restrictions[step] = _certificate_from_node(L2, sub)
    return FactorizationCertificate(additions, Partition.from_masks(masks), restrictions)


def lattice_indfac(L: Lattice) -> Optional[FactorizationCertificate]:
    if L.n == 0:
        return FactorizationCertificate([], Partition(()))
    tried = set()
    chain = lattice_supersolvable(L)
    candidates = []
    if chain is not None:
        candidates.append(chain_masks(L, chain))
    for masks in candidates:
        tried.add(frozenset(masks))
        node = _ifac(L, masks)
        if node is not None:
            return _certificate_from_node(L, node)
    for masks in lattice_nice_partitions(L):
        if frozenset(masks) in tried:
            continue
        node = _ifac(L, masks)
        if node is not None:
            return _certificate_from_node(L, node)
    return None


def indfac_search(
    A: LatticeLike, max_hyperplanes=DEFAULT_MAX_HYPERPLANES, max_rank=DEFAULT_MAX_RANK
) -> Optional[FactorizationCertificate]:
    """An inductive factorisation of A with its addition order, or None.

    A supersolvable A is tried first with its modular-chain partition.
    """
    L = _lat(A)
    _check_limits(L, max_hyperplanes, max_rank)
    return lattice_indfac(L)


def is_inductive_factorization(A: LatticeLike, pi) -> bool:
    L = _lat(A)
    return _ifac(L, _masks(A, pi)) is not None


@dataclass
class VerificationResult:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _verify(L: Lattice, cert: FactorizationCertificate) -> VerificationResult:
    order = cert.order()
    if sorted(order) != list(range(L.n)):
        return VerificationResult(False, None, "additions do not list every hyperplane exactly once")
    final = cert.final_partition
    try:
        final.validate(L.n)
    except ValueError as exc:
        return VerificationResult(False, None, f"final partition invalid: {exc}")
    for h, k in cert.additions:
        if not 0 <= k < len(final.parts) or h not in final.parts[k]:
            return VerificationResult(False, None, f"hyperplane {h} is not in final part {k}")
    final_masks = final.masks()
    S = 0
    for step, (h, k) in enumerate(cert.additions):
        S |= 1 << h
        Li = L.minor(0, S)
        local = {a: i for i, a in enumerate(bits(S))}
        masks = [mask_of(local[a] for a in bits(p & S)) for p in final_masks if p & S]
        _, _, L2, p2, bij = _triple_parts(Li, masks, local[h])
        if not bij:
            return VerificationResult(False, step, "restriction map is not bijective")
        sub = cert.restrictions.get(step)
        if sub is not None:
            if sorted(sub.final_partition.masks()) != sorted(p2):
                return VerificationResult(False, step, "restriction certificate has the wrong partition")
            res = _verify(L2, sub)
            if not res.ok:
                return VerificationResult(False, step, f"restriction certificate fails: {res.reason}")
        elif _ifac(L2, p2) is None:
            return VerificationResult(False, step, "restriction with induced partition is not inductively factored")
    return VerificationResult(True)


def verify_certificate(A: LatticeLike, cert: FactorizationCertificate) -> VerificationResult:
    """Replay the additions from the empty arrangement, checking each step's conditions.

    At each step the hyperplane's part plays the role of pi_1; rho must be
    bijective and the restriction with its induced partition must be
    inductively factored, via the attached sub-certificate when present.
    """
    return _verify(_lat(A), cert)


def addition_deletion_nice(A: LatticeLike, pi, h0: int) -> tuple[bool, bool, bool]:
    """Truth values of: pi nice for A; pi' nice for A'; rho bijective and pi'' nice for A''.

    Any two imply the third; a violation raises :class:`InconsistencyError`.
    """
    L = _lat(A)
    if L.n == 0:
        raise ValueError("the empty arrangement has no triple")
    masks = _masks(A, pi)
    L1, p1, L2, p2, bij = _triple_parts(L, masks, h0)
    i = lattice_is_nice(L, masks)
    ii = lattice_is_nice(L1, p1)
    iii = bij and lattice_is_nice(L2, p2)
    if i + ii + iii == 2:
        raise InconsistencyError(f"addition-deletion violated at hyperplane {h0}: {(i, ii, iii)}")
    return i, ii, iii


# ---------------------------------------------------------------------------
# induction tables


@dataclass(frozen=True)
class InductionRow:
    exp_before: tuple
    added_form: str
    exp_restriction: tuple
    part_assigned: int


def _exps(L: Lattice) -> tuple:
    e = L.exponents()
    if e is NoSplit:
        raise InconsistencyError("Poincare polynomial of a step does not split")
    return tuple(e)


def emit_induction_table(A: LatticeLike, cert: FactorizationCertificate) -> list[InductionRow]:
    L = _lat(A)
    res = _verify(L, cert)
    if not res.ok:
        raise ValueError(f"certificate does not verify (step {res.step}: {res.reason})")
    rows = []
    S = 0
    for h, k in cert.additions:
        before = L.minor(0, S)
        S |= 1 << h
        Li = L.minor(0, S)
        local = list(bits(S)).index(h)
        rows.append(InductionRow(_exps(before), _form(A, h), _exps(Li.restriction(local)), k))
    return rows


def _form(A: LatticeLike, h: int) -> str:
    if isinstance(A, Arrangement):
        return format_form(A.hyperplanes[h].normal)
    return f"H{h}"


def _fmt_exp(e: tuple) -> str:
    return ",".join(str(x) for x in e)


def format_induction_table(rows: list[InductionRow], fmt: str = "text") -> str:
    header = ("exp_before", "form", "exp_restriction", "part")
    data = [(_fmt_exp(r.exp_before), r.added_form, _fmt_exp(r.exp_restriction), str(r.part_assigned)) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(data)
        return buf.getvalue()
    widths = [max(len(x) for x in col) for col in zip(header, *data)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header, *data]]
    return "\n".join(lines) + "\n"


def hereditarily_indfac(
    A: LatticeLike, max_hyperplanes=DEFAULT_MAX_HYPERPLANES, max_rank=DEFAULT_MAX_RANK
) -> HereditaryResult:
    """indfac_search on every restriction A^X; per-flat certificates keyed by closed set."""
    L = _lat(A)
    _check_limits(L, max_hyperplanes, max_rank)
    res = HereditaryResult(True)
    for f in range(len(L)):
        cert = lattice_indfac(L.minor(f))
        key = frozenset(bits(L.masks[f]))
        res.partitions[key] = cert
        if cert is None:
            res.ok = False
            res.witness = key
            break
    return res


# ---------------------------------------------------------------------------
# certificate files


def format_certificate(A: Arrangement, cert: FactorizationCertificate) -> str:
    lines = []
    for h, k in cert.additions:
        row = " ".join(c.format() for c in A.hyperplanes[h].normal)
        lines.append(f"{row} -> part {k}")
    return "\n".join(lines) + "\n"


def parse_certificate(A: Arrangement, text: str) -> FactorizationCertificate:
    from .exactfield import parse_scalar

    additions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        toks = rhs.split()
        if not sep or len(toks) != 2 or toks[0] != "part":
            raise ValueError(f"line {lineno}: expected '<coefficients> -> part <k>'")
        normal = [parse_scalar(t, A.field) for t in lhs.split()]
        if len(normal) != A.dim:
            raise ValueError(f"line {lineno}: expected {A.dim} coefficients")
        additions.append((A.index(normal), int(toks[1])))
    nparts = max((k for _, k in additions), default=-1) + 1
    parts = [[] for _ in range(nparts)]
    for h, k in additions:
        parts[k].append(h)
    if any(not p for p in parts):
        raise ValueError("certificate leaves a part empty")
    return FactorizationCertificate(additions, Partition(tuple(tuple(p) for p in parts)))
