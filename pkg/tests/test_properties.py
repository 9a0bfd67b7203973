"""Randomised checks on small rational arrangements against the brute-force oracles."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hyperfact.arrangement import ArrangementError, build_arrangement, product
from hyperfact.exactfield import FieldSpec
from hyperfact.induction import indfac_search, verify_certificate
from hyperfact.lattice import NoSplit
from hyperfact.modularity import chain_partition, supersolvable
from hyperfact.partition import cor_2_7_report, is_nice, nice_partitions, nice_search
from oracles import ifac_oracle, mobius_poincare, nice_partitions_oracle, poincare_by_deletion_restriction, to_rational

Q = FieldSpec(1)

entry = st.integers(min_value=-2, max_value=2)
covector = st.tuples(entry, entry, entry).filter(any)
small_arrangement = st.lists(covector, min_size=1, max_size=7).map(lambda rows: build_arrangement(3, Q, rows))

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(small_arrangement)
def test_poincare_three_ways(A):
    got = list(A.lattice.poincare().coeffs)
    rows = to_rational(A)
    assert got == mobius_poincare(rows) == poincare_by_deletion_restriction(rows)


@SETTINGS
@given(small_arrangement)
def test_nice_partitions_match_oracle(A):
    oracle = nice_partitions_oracle(to_rational(A))
    found = {frozenset(frozenset(p) for p in pi.parts) for pi in nice_partitions(A)}
    assert found == oracle
    for pi in nice_partitions(A):
        assert is_nice(A, pi).nice and cor_2_7_report(A, pi).ok


@SETTINGS
@given(small_arrangement)
def test_nice_search_rejects_non_split(A):
    if A.lattice.exponents() is NoSplit:
        assert nice_search(A) is None


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(covector, min_size=1, max_size=6).map(lambda rows: build_arrangement(3, Q, rows)))
def test_indfac_matches_oracle(A):
    cert = indfac_search(A)
    assert (cert is not None) == ifac_oracle(to_rational(A))
    if cert is not None:
        assert verify_certificate(A, cert).ok


@SETTINGS
@given(small_arrangement)
def test_supersolvable_gives_certificate(A):
    chain = supersolvable(A)
    if chain is not None:
        assert is_nice(A, chain_partition(A, chain)).nice
        assert indfac_search(A) is not None


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    st.lists(st.tuples(entry, entry).filter(any), min_size=1, max_size=4),
    st.lists(st.tuples(entry, entry).filter(any), min_size=1, max_size=4),
)
def test_product_compatibility(r1, r2):
    a = build_arrangement(2, Q, r1)
    b = build_arrangement(2, Q, r2)
    P = product(a, b)
    assert P.lattice.poincare() == a.lattice.poincare() * b.lattice.poincare()
    assert (nice_search(P) is not None) == (nice_search(a) is not None and nice_search(b) is not None)
    assert (indfac_search(P) is not None) == (indfac_search(a) is not None and indfac_search(b) is not None)
