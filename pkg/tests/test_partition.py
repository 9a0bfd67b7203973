import itertools

import pytest

from hyperfact.arrangement import build_arrangement, flat_of, localization, product
from hyperfact.catalog import boolean, braid, intermediate, paper_arrangement
from hyperfact.exactfield import FieldSpec
from hyperfact.lattice import Polynomial
from hyperfact.partition import (
    Partition,
    cor_2_7_report,
    hereditarily_nice,
    induced_partition,
    is_independent,
    is_nice,
    nice_partitions,
    nice_search,
)
from hyperfact.isomorphism import SizeLimitExceeded
from oracles import nice_partitions_oracle, to_rational

Q = FieldSpec(1)


def test_partition_text_roundtrip():
    p = Partition.parse("0; 3 5 7 8; 1 2 4 6 9")
    assert p.format() == "0; 3 5 7 8; 1 2 4 6 9"
    assert Partition.parse(p.format()) == p
    with pytest.raises(ValueError):
        Partition.parse("0;; 1")


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition(((0, 1), (1, 2))).validate(3)
    with pytest.raises(ValueError):
        Partition(((0,), (1,))).validate(3)


def test_independence_examples():
    assert is_independent(boolean(3), Partition(((0,), (1,), (2,))))
    plane = build_arrangement(2, Q, [(1, 0), (0, 1), (1, 1), (1, -1)])
    assert not is_independent(plane, Partition(((0,), (1,), (2, 3))))
    # braid rank 2: x-y | y-z, x-z
    A = braid(3)
    assert is_independent(A, Partition(((0,), (1, 2))))


def test_induced_partition():
    C, pi = paper_arrangement("E6_A1A2")
    assert induced_partition(C, pi, flat_of(C, [])) == Partition(())
    assert induced_partition(C, pi, frozenset(range(10))) == pi
    X = flat_of(C, [7])
    assert induced_partition(C, pi, X) == Partition(((7,),))


def test_stored_partitions_are_nice():
    for key in ("E6_A1A2", "E7_A1A3dd"):
        A, pi = paper_arrangement(key)
        rep = is_nice(A, pi)
        assert rep.nice and rep.poincare_factored
    assert is_nice(boolean(3), Partition(((0,), (1,), (2,)))).nice


def test_cor27_report():
    C, pi = paper_arrangement("E6_A1A2")
    rep = cor_2_7_report(C, pi)
    assert rep.ok and rep.poincare == Polynomial.from_roots([1, 4, 5])
    D, pd = paper_arrangement("E7_A1A3dd")
    assert sorted(pd.sizes()) == [1, 5, 5] and cor_2_7_report(D, pd).ok
    rep = cor_2_7_report(boolean(3), Partition(((0,), (1,), (2,))))
    assert rep.poincare == Polynomial.from_roots([1, 1, 1])


def test_nice_search_examples():
    assert nice_search(paper_arrangement("E6_A1cubed")[0]) is None
    pc = nice_search(paper_arrangement("E6_A1A2")[0])
    assert sorted(pc.sizes()) == [1, 4, 5]
    assert nice_search(intermediate(2, 4, 1)) is None


def test_degenerate_inputs():
    empty = build_arrangement(3, Q, [])
    assert nice_search(empty) == Partition(())
    one = build_arrangement(2, Q, [(1, 0)])
    assert nice_search(one) == Partition(((0,),))


def test_size_guard():
    with pytest.raises(SizeLimitExceeded):
        nice_search(intermediate(2, 4, 2), max_hyperplanes=5)


SMALL = [braid(4), intermediate(2, 3, 0), intermediate(2, 3, 1), intermediate(2, 3, 2), boolean(3),
         build_arrangement(3, Q, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
         build_arrangement(3, Q, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1)])]


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.label or str(len(A)))
def test_all_nice_partitions_match_exhaustive_enumeration(A):
    oracle = nice_partitions_oracle(to_rational(A))
    found = {frozenset(frozenset(p) for p in pi.parts) for pi in nice_partitions(A)}
    assert found == oracle
    # every partition found passes the consequence checks and has the exponents as sizes
    for pi in nice_partitions(A):
        assert is_nice(A, pi).nice
        assert cor_2_7_report(A, pi).ok
        assert sorted(pi.sizes()) == [e for e in A.lattice.exponents() if e]


def test_nice_search_is_canonical():
    # smallest singleton first
    pi = nice_search(paper_arrangement("E6_A1A2")[0])
    assert pi.parts[0] == (0,)
    assert pi == Partition.parse("0; 1 2 3 4 5; 6 7 8 9")


def test_localization_closure():
    for key in ("E6_A1A2", "E7_A1A3dd"):
        A, pi = paper_arrangement(key)
        L = A.lattice
        for f in range(1, len(L)):
            X = frozenset(i for i in range(L.n) if L.masks[f] >> i & 1)
            AX = localization(A, flat_of(A, sorted(X)))
            order = sorted(X)
            local = Partition(tuple(tuple(order.index(i) for i in p) for p in induced_partition(A, pi, X).parts))
            assert is_nice(AX, local).nice


def test_product_compatibility():
    B, _ = paper_arrangement("E6_A1cubed")
    C, _ = paper_arrangement("E6_A1A2")
    assert nice_search(product(C, boolean(1))) is not None
    assert nice_search(product(B, boolean(1))) is None


def test_hereditarily_nice():
    assert hereditarily_nice(boolean(4)).ok
    assert hereditarily_nice(paper_arrangement("E6_A1A2")[0]).ok
    assert hereditarily_nice(intermediate(2, 4, 2)).ok
    res = hereditarily_nice(intermediate(2, 4, 1))
    assert not res.ok and res.witness == frozenset()
