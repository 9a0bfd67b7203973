import warnings

import pytest

from hyperfact.arrangement import (
    ArrangementError,
    build_arrangement,
    deletion,
    flat_of,
    format_arrangement,
    localization,
    parse_arrangement,
    product,
    restriction,
    triple,
)
from hyperfact.catalog import boolean, braid, intermediate, paper_arrangement
from hyperfact.exactfield import FieldSpec

Q = FieldSpec(1)


def test_canonical_normals_deduplicate():
    A = build_arrangement(2, Q, [(2, 4), (1, 2), (-3, 0)])
    assert len(A) == 2
    assert A.index((5, 10)) == 0
    with pytest.raises(ArrangementError):
        build_arrangement(2, Q, [(1, 1), (2, 2)], on_duplicate="error")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        build_arrangement(2, Q, [(1, 1), (2, 2)], on_duplicate="warn")
    assert caught


def test_zero_covector_rejected():
    with pytest.raises(ArrangementError):
        build_arrangement(2, Q, [(0, 0)])


def test_restriction_of_braid():
    A = braid(4)
    R = restriction(A, flat_of(A, [0]))
    assert len(R) == 3 and R.dim == 3


def test_localization_keeps_order():
    A, _ = paper_arrangement("E6_A1A2")
    X = flat_of(A, [0, 1])
    L = localization(A, X)
    assert [A.index(H.normal) for H in L.hyperplanes] == sorted(X.closed_set)


def test_triple_images():
    A = boolean(3)
    _, A1, A2, images = triple(A, 0)
    assert len(A1) == 2 and len(A2) == 2
    assert sorted(images.values()) == [0, 1]


def test_deletion_and_product():
    A = product(boolean(2), braid(3))
    assert A.dim == 5 and len(A) == 5
    assert len(deletion(A, [0, 1])) == 3


def test_roundtrip_rational():
    A, _ = paper_arrangement("E7_A1A3dd")
    text = format_arrangement(A)
    assert format_arrangement(parse_arrangement(text)) == text


def test_roundtrip_cyclotomic():
    A = intermediate(3, 3, 2)
    text = format_arrangement(A)
    assert "z" in text
    B = parse_arrangement(text)
    assert B.hyperplanes == A.hyperplanes
    assert format_arrangement(B) == text


def test_parse_errors_name_lines():
    with pytest.raises(ArrangementError, match="line 3"):
        parse_arrangement("field r=1\ndim 2\n1 2 3\n")
    with pytest.raises(ArrangementError, match="line 3"):
        parse_arrangement("field r=1\ndim 2\n1 z\n")
    with pytest.raises(ArrangementError, match="line 1"):
        parse_arrangement("dim 2\n")


def test_parse_zeta_tokens():
    A = parse_arrangement("field r=3\ndim 2\n1 -z^1\n1 0\n")
    assert not A.hyperplanes[0].normal[1].is_rational()


def test_flat_must_belong():
    A = boolean(3)
    B = braid(3)
    with pytest.raises(ArrangementError):
        localization(A, flat_of(B, [0, 1, 2]))
