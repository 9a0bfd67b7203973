"""Row reduction over a cyclotomic field.

Vectors are tuples of :class:`~hyperfact.exactfield.Scalar`. A reduced basis is
a list of ``(pivot, row)`` pairs in reduced row echelon form: ``row[pivot]``
is one and every other basis row is zero at that column.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .exactfield import FieldSpec, Scalar

Vector = tuple  # tuple[Scalar, ...]
Basis = list  # list[tuple[int, Vector]]


def leading_index(v: Sequence[Scalar]) -> int:
    for i, c in enumerate(v):
        if c:
            return i
    return -1


def scale_to_monic(v: Sequence[Scalar]) -> Vector:
    """Scale so that the first nonzero entry equals one."""
    i = leading_index(v)
    if i < 0:
        raise ValueError("zero vector has no canonical scaling")
    lead = v[i]
    if lead.is_one():
        return tuple(v)
    inv = lead.inverse()
    return tuple(c * inv if c else c for c in v)


def reduce_against(v: Sequence[Scalar], basis: Basis) -> Vector:
    """Remainder of ``v`` after eliminating the pivot columns of ``basis``."""
    v = list(v)
    for piv, row in basis:
        c = v[piv]
        if c:
            for j, x in enumerate(row):
                if x:
                    v[j] = v[j] - c * x
    return tuple(v)


def in_span(v: Sequence[Scalar], basis: Basis) -> bool:
    return leading_index(reduce_against(v, basis)) < 0


def extend_basis(basis: Basis, v: Sequence[Scalar]) -> Optional[Basis]:
    """Return ``basis`` enlarged by ``v`` (kept fully reduced), or None if dependent."""
    w = reduce_against(v, basis)
    piv = leading_index(w)
    if piv < 0:
        return None
    w = scale_to_monic(w)
    out = []
    for p, row in basis:
        c = row[piv]
        if c:
            row = tuple(x - c * y for x, y in zip(row, w))
        out.append((p, row))
    out.append((piv, w))
    out.sort(key=lambda pr: pr[0])
    return out


def row_basis(vectors: Sequence[Sequence[Scalar]]) -> Basis:
    basis: Basis = []
    for v in vectors:
        nb = extend_basis(basis, v)
        if nb is not None:
            basis = nb
    return basis


def rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    return len(row_basis(vectors))


def nullspace(basis: Basis, dim: int, fs: FieldSpec) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row} from a reduced row basis.

    One vector per free column, with a one in that column.
    """
    pivots = {p for p, _ in basis}
    zero, one = fs.zero(), fs.one()
    out = []
    for free in range(dim):
        if free in pivots:
            continue
        x = [zero] * dim
        x[free] = one
        for p, row in basis:
            c = row[free]
            if c:
                x[p] = -c
        out.append(tuple(x))
    return out


def dot(u: Sequence[Scalar], v: Sequence[Scalar], fs: FieldSpec) -> Scalar:
    acc = fs.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc
