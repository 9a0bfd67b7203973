import pytest

from hyperfact.arrangement import build_arrangement
from hyperfact.catalog import (
    boolean,
    braid,
    intermediate,
    intermediate_certificate,
    chain_extension_certificate,
    paper_arrangement,
)
from hyperfact.exactfield import FieldSpec
from hyperfact.induction import (
    FactorizationCertificate,
    addition_deletion_nice,
    emit_induction_table,
    format_certificate,
    format_induction_table,
    hereditarily_indfac,
    indfac_search,
    parse_certificate,
    restriction_map,
    verify_certificate,
)
from hyperfact.partition import InconsistencyError, Partition, is_nice
from oracles import ifac_oracle, to_rational

Q = FieldSpec(1)


def test_restriction_map_two_lines():
    A = boolean(2)
    rho = restriction_map(A, Partition(((0,), (1,))), 0)
    assert rho.bijective and rho.induced_parts == ((0,),)


def test_restriction_map_requires_first_part():
    with pytest.raises(ValueError):
        restriction_map(boolean(2), Partition(((0,), (1,))), 1)


def test_restriction_map_for_d_at_y_minus_2z():
    D, pi = paper_arrangement("E7_A1A3dd")
    h0 = D.index((0, 1, -2))
    rho = restriction_map(D, pi.with_first(h0), h0)
    assert rho.bijective and rho.disjoint


def test_last_intermediate_step_is_bijective():
    A, cert = intermediate_certificate(2, 4)
    h0, k = cert.additions[-1]
    final = cert.final_partition
    rho = restriction_map(A, final.with_first(h0), h0)
    assert rho.bijective


def test_addition_deletion_examples():
    assert addition_deletion_nice(boolean(2), Partition(((0,), (1,))), 0) == (True, True, True)
    C, pi = paper_arrangement("E6_A1A2")
    assert addition_deletion_nice(C, pi, C.index((0, 3, -1))) == (True, True, True)
    D, pd = paper_arrangement("E7_A1A3dd")
    i, ii, iii = addition_deletion_nice(D, pd, D.index((0, 1, -2)))
    assert i and iii and ii


def test_addition_deletion_never_two_of_three():
    for A in (braid(4), intermediate(2, 3, 2), paper_arrangement("E6_A1A2")[0]):
        from hyperfact.partition import nice_partitions

        for pi in nice_partitions(A):
            for h in range(len(A)):
                addition_deletion_nice(A, pi, h)  # raises on a violation


def test_empty_certificate():
    A = build_arrangement(3, Q, [])
    assert verify_certificate(A, FactorizationCertificate([], Partition(()))).ok
    assert indfac_search(A) is not None


@pytest.mark.parametrize("r", [2, 3])
def test_intermediate_certificates(r):
    A, cert = intermediate_certificate(r, 4)
    assert verify_certificate(A, cert).ok
    rows = emit_induction_table(A, cert)
    assert len(rows) == len(A)
    # rows beyond the base A^2_3(r) x Phi_1
    base = 2 + 3 * r
    assert len(rows) - base == 3 * r
    assert [r_.part_assigned for r_ in rows[base:]] == [3] * (2 * r) + [2] + [3] * (r - 1)


def test_chain_extension_certificates():
    for key in ("E6_A1A2", "E7_A1A3dd"):
        A, cert = chain_extension_certificate(key)
        assert verify_certificate(A, cert).ok
        assert is_nice(A, cert.final_partition).nice


def test_bad_certificate_reports_step():
    A, cert = chain_extension_certificate("E6_A1A2")
    bad = FactorizationCertificate(list(reversed(cert.additions)), cert.final_partition)
    res = verify_certificate(A, bad)
    assert not res.ok and res.step is not None


def test_indfac_examples():
    assert indfac_search(intermediate(3, 3, 0)) is None
    assert indfac_search(intermediate(2, 4, 2)) is not None
    cert = indfac_search(paper_arrangement("E7_A1A3dd")[0])
    assert cert is not None
    assert sorted(cert.final_partition.sizes()) == [1, 5, 5]


def test_induction_table_for_c():
    C, _ = paper_arrangement("E6_A1A2")
    cert = indfac_search(C)
    rows = emit_induction_table(C, cert)
    assert len(rows) == 10
    assert rows[0].exp_before == (0, 0, 0)
    # the last step adds to a part of final size 4 or 5, so one exponent grows by one
    before = list(rows[-1].exp_before)
    assert sorted(before) in ([1, 3, 5], [1, 4, 4])
    text = format_induction_table(rows)
    assert text.splitlines()[0].split() == ["exp_before", "form", "exp_restriction", "part"]
    assert format_induction_table(rows, "csv").startswith("exp_before,form,exp_restriction,part\n")


def test_unverified_table_raises():
    A, cert = chain_extension_certificate("E6_A1A2")
    bad = FactorizationCertificate(list(reversed(cert.additions)), cert.final_partition)
    with pytest.raises(ValueError):
        emit_induction_table(A, bad)


def test_certificate_file_roundtrip():
    A, cert = intermediate_certificate(3, 4)
    text = format_certificate(A, cert)
    back = parse_certificate(A, text)
    assert back.additions == cert.additions
    assert verify_certificate(A, back).ok


def test_hereditary_indfac():
    assert hereditarily_indfac(intermediate(2, 4, 2)).ok
    assert hereditarily_indfac(boolean(3)).ok
    assert not hereditarily_indfac(intermediate(2, 4, 1)).ok


def test_certificate_implies_nice_and_exponents():
    for A in (intermediate(2, 4, 3), intermediate(3, 3, 1), paper_arrangement("E6_A1A2")[0], braid(5)):
        cert = indfac_search(A)
        assert is_nice(A, cert.final_partition).nice
        assert sorted(cert.final_partition.sizes()) == [e for e in A.lattice.exponents() if e]


@pytest.mark.parametrize(
    "A",
    [braid(4), intermediate(2, 3, 0), intermediate(2, 3, 2), build_arrangement(3, Q, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])],
    ids=["braid4", "A0_3(2)", "A2_3(2)", "generic"],
)
def test_indfac_matches_bruteforce(A):
    assert (indfac_search(A) is not None) == ifac_oracle(to_rational(A))
