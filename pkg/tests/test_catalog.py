import itertools
from fractions import Fraction

import pytest

from hyperfact.arrangement import flat_of, localization, restriction
from hyperfact.catalog import (
    braid,
    catalog_arrangement,
    intermediate,
    intermediate_hyperplane,
    tail_flat,
    monomial,
    paper_arrangement,
    positive_roots,
    root_indices,
    root_system_arrangement,
    simple_roots,
    subsystem_restriction,
)
from hyperfact.isomorphism import lattice_isomorphic
from hyperfact.lattice import exponent_candidates
from oracles import root_closure, to_rational

H = Fraction(1, 2)


@pytest.mark.parametrize("r,ell,k", [(r, ell, k) for r in (1, 2, 3) for ell in (2, 3, 4) for k in range(ell + 1)])
def test_intermediate_counts_and_exponent_sum(r, ell, k):
    A = intermediate(r, ell, k)
    assert len(A) == k + r * ell * (ell - 1) // 2
    assert sum(exponent_candidates(A)) == len(A)


def test_intermediate_examples():
    assert exponent_candidates(intermediate(2, 3, 2)) == [1, 3, 4]
    assert len(intermediate(2, 4, 1)) == 13
    assert sorted(exponent_candidates(intermediate(2, 4, 1))) == [1, 3, 4, 5]
    assert set(intermediate(1, 4, 0).normals()) == set(braid(4).normals())
    with pytest.raises(ValueError):
        intermediate(2, 3, 4)


def test_monomial_groups():
    assert len(monomial(3, 1, 3)) == 3 + 9
    assert len(monomial(3, 3, 3)) == 9
    assert monomial(4, 2, 3).hyperplanes == intermediate(4, 3, 3).hyperplanes


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_rank2_closure_rule(r):
    # H^m_{1,2}, H^n_{1,3}, H^p_{2,3} share a rank-2 flat iff p = n - m mod r
    A = intermediate(r, 3, 0)
    idx = lambda a, b, n: A.index(intermediate_hyperplane(r, 3, a, b, n))
    for m, n, p in itertools.product(range(r), repeat=3):
        X = flat_of(A, [idx(1, 2, m), idx(1, 3, n)])
        assert (idx(2, 3, p) in X.closed_set) == ((n - m - p) % r == 0)


COUNTS = {"A3": 6, "A4": 10, "B3": 9, "B4": 16, "C3": 9, "D4": 12, "D5": 20, "F4": 24, "G2": 6,
          "E6": 36, "E7": 63, "E8": 120, "H3": 15, "H4": 60}


@pytest.mark.parametrize("label", COUNTS)
def test_root_counts(label):
    assert len(root_system_arrangement(label)) == COUNTS[label]


F4_SIMPLE = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [H, -H, -H, -H]]


@pytest.mark.parametrize("label", ["A3", "A4", "B3", "B4", "D4", "D5", "E6", "E7", "E8", "F4"])
def test_roots_are_the_weyl_orbit_of_the_simple_roots(label):
    simple = F4_SIMPLE if label == "F4" else simple_roots(label)
    orbit = root_closure(simple)
    fs, pos = positive_roots(label)
    mine = {tuple(Fraction(c.coeffs[0]) for c in v) for v in pos}
    mine |= {tuple(-x for x in v) for v in mine}
    assert mine == orbit


@pytest.mark.parametrize("label", ["H3", "H4"])
def test_h_roots_closed_under_reflections(label):
    A = root_system_arrangement(label)
    fs = A.field
    normals = A.normals()

    def dot(a, b):
        s = fs.zero()
        for x, y in zip(a, b):
            s = s + x * y
        return s

    for v in normals:
        vv = dot(v, v)
        for w in normals:
            c = dot(w, v) * fs(2) / vv
            img = [x - c * y for x, y in zip(w, v)]
            A.index(img)  # raises if the reflected hyperplane is missing


def test_h3_exponents():
    assert exponent_candidates(root_system_arrangement("H3")) == [1, 5, 9]


def test_e6_exponents():
    assert [e for e in exponent_candidates(root_system_arrangement("E6")) if e] == [1, 4, 5, 7, 8, 11]


def test_subsystem_restrictions():
    s6 = simple_roots("E6")
    R = subsystem_restriction("E6", root_indices("E6", [s6[2], s6[3], s6[4]]))
    assert lattice_isomorphic(R, intermediate(2, 3, 2)) is not None
    s7 = simple_roots("E7")
    R = subsystem_restriction("E7", root_indices("E7", [s7[1], s7[2], s7[3], s7[4]]))
    assert lattice_isomorphic(R, intermediate(2, 3, 3)) is not None


def test_a3_one_root_restriction():
    R = subsystem_restriction("A3", [0])
    assert len(R) == 3
    assert [e for e in exponent_candidates(R) if e] == [1, 2]


def test_root_index_errors():
    with pytest.raises(ValueError):
        root_indices("A3", [[1, 1, 0, 0]])
    with pytest.raises(ValueError):
        subsystem_restriction("A3", [99])
    with pytest.raises(ValueError):
        root_system_arrangement("Z9")


def test_paper_arrangements():
    B, pb = paper_arrangement("E6_A1cubed")
    assert len(B) == 10 and pb is None and exponent_candidates(B) == [1, 4, 5]
    C, pc = paper_arrangement("E6_A1A2")
    assert len(C) == 10 and pc.sizes() == [1, 4, 5]
    D, pd = paper_arrangement("E7_A1A3dd")
    assert len(D) == 11 and exponent_candidates(D) == [1, 5, 5]


def test_tail_flat_localization():
    for r in (2, 3):
        A = intermediate(r, 4, 1)
        X = tail_flat(r, 4)
        # at l = 4 the flat is the centre
        assert X.closed_set == frozenset(range(len(A)))
    for r in (2, 3):
        A = intermediate(r, 5, 2)
        AX = localization(A, tail_flat(r, 5))
        assert lattice_isomorphic(AX, intermediate(r, 4, 1)) is not None


def test_catalog_keys():
    assert len(catalog_arrangement("boolean:3")[0]) == 3
    assert len(catalog_arrangement("intermediate:2,3,1")[0]) == 7
    assert len(catalog_arrangement("root:E6")[0]) == 36
    assert len(catalog_arrangement("subsystem:E6:3,4,5")[0]) == 8
    with pytest.raises(ValueError):
        catalog_arrangement("nonsense:1")
