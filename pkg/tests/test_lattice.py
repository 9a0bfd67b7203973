import itertools
import random

import pytest
import sympy

from hyperfact.arrangement import build_arrangement, flat_of, localization, product, restriction
from hyperfact.catalog import boolean, braid, intermediate, paper_arrangement, root_system_arrangement
from hyperfact.exactfield import FieldSpec
from hyperfact.lattice import NoSplit, Polynomial, exponent_candidates, split_roots
from oracles import all_flats, mobius_poincare, poincare_by_deletion_restriction, to_rational

Q = FieldSpec(1)

RATIONAL = {
    "boolean3": lambda: boolean(3),
    "braid4": lambda: braid(4),
    "A2_3(2)": lambda: intermediate(2, 3, 2),
    "A1_3(2)": lambda: intermediate(2, 3, 1),
    "B": lambda: paper_arrangement("E6_A1cubed")[0],
    "C": lambda: paper_arrangement("E6_A1A2")[0],
    "generic4": lambda: build_arrangement(3, Q, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
}


@pytest.mark.parametrize("name", RATIONAL)
def test_flats_match_bruteforce_closure(name):
    A = RATIONAL[name]()
    L = A.lattice
    flats = all_flats(to_rational(A))
    mine = {frozenset(i for i in range(L.n) if m >> i & 1): r for m, r in zip(L.masks, L.ranks)}
    assert mine == flats


@pytest.mark.parametrize("name", RATIONAL)
def test_poincare_matches_oracles(name):
    A = RATIONAL[name]()
    got = list(A.lattice.poincare().coeffs)
    assert got == mobius_poincare(to_rational(A))
    assert got == poincare_by_deletion_restriction(to_rational(A))


def _divide_out(coeffs, roots):
    # polynomial division oracle: Poin / prod(1 + b t) must leave 1
    t = sympy.Symbol("t")
    p = sum(c * t**i for i, c in enumerate(coeffs))
    q = sympy.Integer(1)
    for b in roots:
        q *= 1 + b * t
    quo, rem = sympy.div(p, q, t)
    return quo, rem


@pytest.mark.parametrize(
    "coeffs",
    [(1, 3, 3, 1), (1, 6, 11, 6), (1, 10, 29, 20), (1, 11, 35, 25), (1, 4, 6, 3), (1, 2), (1,), (1, 5, 4)],
)
def test_split_roots_against_division(coeffs):
    roots = split_roots(Polynomial(coeffs))
    if roots is None:
        t = sympy.Symbol("t")
        p = sympy.Poly(sum(c * t**i for i, c in enumerate(coeffs)), t)
        facs = sympy.factor_list(p)[1]
        assert any(f.degree() > 1 or f.LC() <= 0 for f, _ in facs)
    else:
        quo, rem = _divide_out(coeffs, roots)
        assert rem == 0 and quo == 1


def test_exponent_examples():
    assert exponent_candidates(intermediate(2, 3, 2)) == [1, 3, 4]
    assert exponent_candidates(intermediate(2, 4, 1)) == [1, 3, 4, 5]
    assert exponent_candidates(paper_arrangement("E6_A1A2")[0]) == [1, 4, 5]
    assert exponent_candidates(paper_arrangement("E7_A1A3dd")[0]) == [1, 5, 5]
    assert exponent_candidates(RATIONAL["generic4"]()) is NoSplit
    assert exponent_candidates(root_system_arrangement("H3")) == [1, 5, 9]
    assert exponent_candidates(root_system_arrangement("F4")) == [1, 5, 7, 11]
    assert exponent_candidates(root_system_arrangement("A3")) == [0, 1, 2, 3]


def test_non_essential_exponents_pad_zeros():
    assert exponent_candidates(braid(3)) == [0, 1, 2]


@pytest.mark.parametrize("name", ["braid4", "A2_3(2)", "C", "B"])
def test_deletion_restriction_identity_everywhere(name):
    A = RATIONAL[name]()
    L = A.lattice
    P = L.poincare()
    for h in range(L.n):
        d = L.deletion(h).poincare()
        r = L.restriction(h).poincare()
        assert P == d + r.shift(1)


def test_minor_matches_geometric_restriction():
    A = intermediate(2, 4, 2)
    L = A.lattice
    for f in range(1, len(L), 7):
        X = flat_of(A, [i for i in range(L.n) if L.masks[f] >> i & 1])
        R = restriction(A, X)
        assert L.minor(f).poincare() == R.lattice.poincare()
        assert len(L.minor(f).masks) == len(R.lattice.masks)


def test_localization_is_closed_under_flats():
    A = intermediate(2, 4, 2)
    L = A.lattice
    for f in range(0, len(L), 5):
        X = flat_of(A, [i for i in range(L.n) if L.masks[f] >> i & 1])
        AX = localization(A, X)
        assert AX.lattice.poincare() == L.localization(f).poincare()


def test_product_poincare_multiplies():
    rng = random.Random(7)
    pool = [boolean(2), braid(3), braid(4), intermediate(2, 3, 1), paper_arrangement("E6_A1A2")[0]]
    for _ in range(10):
        a, b = rng.sample(pool, 2)
        P = product(a, b).lattice.poincare()
        assert P == a.lattice.poincare() * b.lattice.poincare()
