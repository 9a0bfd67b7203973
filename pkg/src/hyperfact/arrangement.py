"""Central hyperplane arrangements over Q(zeta_r).

A hyperplane is stored by its defining linear form, scaled so that the first
nonzero coefficient is one; two hyperplanes are equal iff their canonical
normals are. Flats are identified by the set of hyperplanes containing them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from . import linalg
from .exactfield import FieldMismatch, FieldSpec, Scalar, parse_scalar

if TYPE_CHECKING:
    from .lattice import Lattice

__all__ = [
    "ArrangementError",
    "Hyperplane",
    "Arrangement",
    "Flat",
    "build_arrangement",
    "empty_arrangement",
    "subset_rank",
    "flat_of",
    "localization",
    "restriction",
    "restriction_with_map",
    "deletion",
    "triple",
    "product",
    "format_arrangement",
    "parse_arrangement",
    "format_form",
]


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple

    def __post_init__(self):
        if linalg.leading_index(self.normal) < 0:
            raise ArrangementError("the zero covector does not define a hyperplane")

    @classmethod
    def from_covector(cls, covector: Sequence[Scalar]) -> "Hyperplane":
        if linalg.leading_index(covector) < 0:
            raise ArrangementError("the zero covector does not define a hyperplane")
        return cls(linalg.scale_to_monic(covector))

    def __str__(self) -> str:
        return format_form(self.normal)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    field: FieldSpec
    hyperplanes: tuple
    label: Optional[str] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    @cached_property
    def _index(self) -> dict:
        return {H.normal: i for i, H in enumerate(self.hyperplanes)}

    def index(self, normal: Sequence) -> int:
        """Index of the hyperplane with the given (not necessarily scaled) normal."""
        key = linalg.scale_to_monic(tuple(self.field(c) for c in normal))
        try:
            return self._index[key]
        except KeyError:
            raise ArrangementError(f"{format_form(key)} is not a hyperplane of this arrangement")

    def normals(self) -> list:
        return [H.normal for H in self.hyperplanes]

    @cached_property
    def lattice(self) -> "Lattice":
        from .lattice import intersection_lattice

        return intersection_lattice(self)

    @property
    def rank(self) -> int:
        return subset_rank(self, range(len(self)))

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Arrangement{name} dim={self.dim} {self.field} |A|={len(self)}>"


@dataclass(frozen=True)
class Flat:
    """A flat X of an arrangement: closed hyperplane set, codimension, equations."""

    closed_set: frozenset
    rank: int
    equations: tuple

    @property
    def mask(self) -> int:
        m = 0
        for i in self.closed_set:
            m |= 1 << i
        return m


def _coerce_covector(dim: int, fs: FieldSpec, covector) -> tuple:
    if len(covector) != dim:
        raise ArrangementError(f"covector {covector!r} has length {len(covector)}, expected {dim}")
    out = []
    for c in covector:
        if isinstance(c, Scalar) and c.field != fs:
            raise FieldMismatch(f"coefficient over {c.field} in an arrangement over {fs}")
        out.append(fs(c))
    return tuple(out)


def build_arrangement(
    dim: int,
    fs: FieldSpec,
    normals: Iterable[Sequence],
    label: Optional[str] = None,
    on_duplicate: str = "ignore",
) -> Arrangement:
    """Canonicalise and deduplicate normals, keeping first-occurrence order.

    ``on_duplicate`` is one of ``ignore``, ``warn`` or ``error``.
    """
    if dim < 0:
        raise ArrangementError("dimension must be nonnegative")
    seen = {}
    hyps = []
    for v in normals:
        H = Hyperplane.from_covector(_coerce_covector(dim, fs, v))
        if H.normal in seen:
            if on_duplicate == "error":
                raise ArrangementError(f"duplicate hyperplane {H}")
            if on_duplicate == "warn":
                warnings.warn(f"duplicate hyperplane {H} dropped", stacklevel=2)
            continue
        seen[H.normal] = len(hyps)
        hyps.append(H)
    return Arrangement(dim, fs, tuple(hyps), label)


def empty_arrangement(dim: int, fs: Optional[FieldSpec] = None) -> Arrangement:
    return Arrangement(dim, fs or FieldSpec(1), (), f"Phi_{dim}")


def _check_indices(A: Arrangement, S: Iterable[int]) -> list[int]:
    S = list(S)
    for i in S:
        if not 0 <= i < len(A):
            raise ArrangementError(f"hyperplane index {i} out of range for {len(A)} hyperplanes")
    return S


def subset_rank(A: Arrangement, S: Iterable[int]) -> int:
    S = _check_indices(A, S)
    return linalg.rank([A.hyperplanes[i].normal for i in S])


def flat_of(A: Arrangement, S: Iterable[int]) -> Flat:
    """The flat cut out by the hyperplanes indexed by ``S`` (V for empty ``S``)."""
    S = _check_indices(A, S)
    basis = linalg.row_basis([A.hyperplanes[i].normal for i in S])
    closed = frozenset(
        i for i, H in enumerate(A.hyperplanes) if linalg.in_span(H.normal, basis)
    )
    return Flat(closed, len(basis), tuple(row for _, row in basis))


def _validate_flat(A: Arrangement, X: Flat) -> None:
    _check_indices(A, X.closed_set)
    ref = flat_of(A, X.closed_set)
    if ref.closed_set != X.closed_set or ref.rank != X.rank:
        raise ArrangementError("flat does not belong to the intersection lattice of this arrangement")


def localization(A: Arrangement, X: Flat) -> Arrangement:
    """The subarrangement of hyperplanes containing X, in A's order."""
    _validate_flat(A, X)
    hyps = tuple(H for i, H in enumerate(A.hyperplanes) if i in X.closed_set)
    return Arrangement(A.dim, A.field, hyps, _sub_label(A, "loc"))


def restriction_with_map(A: Arrangement, X: Flat) -> tuple[Arrangement, dict]:
    """Restriction A^X together with the map (index in A) -> (index in A^X)."""
    _validate_flat(A, X)
    basis = linalg.row_basis(X.equations)
    coords = linalg.nullspace(basis, A.dim, A.field)
    normals = []
    owner = []
    for i, H in enumerate(A.hyperplanes):
        if i in X.closed_set:
            continue
        normals.append(tuple(linalg.dot(H.normal, b, A.field) for b in coords))
        owner.append(i)
    R = build_arrangement(len(coords), A.field, normals, _sub_label(A, "res"))
    images = {i: R.index(v) for i, v in zip(owner, normals)}
    return R, images


def restriction(A: Arrangement, X: Flat) -> Arrangement:
    return restriction_with_map(A, X)[0]


def deletion(A: Arrangement, drop: Iterable[int]) -> Arrangement:
    drop = set(_check_indices(A, drop))
    hyps = tuple(H for i, H in enumerate(A.hyperplanes) if i not in drop)
    return Arrangement(A.dim, A.field, hyps, _sub_label(A, "del"))


def triple(A: Arrangement, h0: int) -> tuple[Arrangement, Arrangement, Arrangement, dict]:
    """(A, A', A'') for H0 = A[h0] and the map H -> H cap H0 on indices of A."""
    if not len(A):
        raise ArrangementError("the empty arrangement has no triple")
    _check_indices(A, [h0])
    A1 = deletion(A, [h0])
    A2, images = restriction_with_map(A, flat_of(A, [h0]))
    return A, A1, A2, images


def product(A1: Arrangement, A2: Arrangement) -> Arrangement:
    """Block-diagonal product: H1 + V2 for H1 in A1, then V1 + H2 for H2 in A2."""
    if A1.field != A2.field:
        raise FieldMismatch(f"product of arrangements over {A1.field} and {A2.field}")
    fs = A1.field
    z1 = (fs.zero(),) * A1.dim
    z2 = (fs.zero(),) * A2.dim
    hyps = tuple(Hyperplane(H.normal + z2) for H in A1.hyperplanes) + tuple(
        Hyperplane(z1 + H.normal) for H in A2.hyperplanes
    )
    label = f"{A1.label} x {A2.label}" if A1.label and A2.label else None
    return Arrangement(A1.dim + A2.dim, fs, hyps, label)


def _sub_label(A: Arrangement, what: str) -> Optional[str]:
    return f"{what}({A.label})" if A.label else None


# ---------------------------------------------------------------------------
# text format

_VARS = "xyzw"


def format_form(normal: Sequence[Scalar]) -> str:
    """Human-readable linear form, e.g. ``2x - y - z`` or ``x1 - (z)x3``.

    Over a cyclotomic field the letter z is taken by zeta, so variables become x1, x2, ...
    """
    cyclotomic = any(not c.is_rational() for c in normal) or (normal and normal[0].field.degree > 1)
    if len(normal) <= len(_VARS) and not cyclotomic:
        names = list(_VARS)
    else:
        names = [f"x{i + 1}" for i in range(len(normal))]
    if not cyclotomic:
        # clear denominators for display
        den = 1
        for c in normal:
            den = math.lcm(den, c.coeffs[0].denominator if c else 1)
        normal = [c * den for c in normal]
    parts = []
    for c, name in zip(normal, names):
        if not c:
            continue
        if c.is_rational():
            q = c.coeffs[0]
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            body = name if mag == 1 else f"{mag}{name}"
        else:
            sign, body = "+", f"({c.format()}){name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_arrangement(A: Arrangement) -> str:
    lines = []
    if A.label:
        lines.append(f"# {A.label}")
    lines.append(f"field r={A.field.conductor}")
    lines.append(f"dim {A.dim}")
    for H in A.hyperplanes:
        lines.append(" ".join(c.format() for c in H.normal))
    return "\n".join(lines) + "\n"


def parse_arrangement(text: str, on_duplicate: str = "warn", label: Optional[str] = None) -> Arrangement:
    """Parse the line format written by :func:`format_arrangement`.

    Errors name the offending line number.
    """
    fs = None
    dim = None
    rows = []
    first_comment = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if first_comment is None and raw.strip().startswith("#"):
                first_comment = raw.strip()[1:].strip() or None
            continue
        try:
            if fs is None:
                key, _, val = line.partition(" ")
                if key != "field" or not val.strip().startswith("r="):
                    raise ArrangementError("expected 'field r=<conductor>'")
                fs = FieldSpec(int(val.strip()[2:]))
            elif dim is None:
                key, _, val = line.partition(" ")
                if key != "dim":
                    raise ArrangementError("expected 'dim <l>'")
                dim = int(val)
            else:
                toks = line.split()
                if len(toks) != dim:
                    raise ArrangementError(f"expected {dim} coefficients, found {len(toks)}")
                rows.append(tuple(parse_scalar(t, fs) for t in toks))
        except ArrangementError as exc:
            raise ArrangementError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise ArrangementError(f"line {lineno}: {exc}") from None
    if fs is None or dim is None:
        raise ArrangementError("missing 'field' or 'dim' header")
    return build_arrangement(dim, fs, rows, label or first_comment, on_duplicate=on_duplicate)
