import functools
import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisemikit.hopf import (
    BisemialgebraElement,
    InvalidGroupTable,
    Orientation,
    apply_map,
    bilinear_antipode,
    bilinear_antipode_inverse,
    build_group_bisemialgebra,
    convolution,
    counit,
    comultiply,
    cyclic_table,
    hopf_axiom_check,
    identity_map,
    klein_table,
    mirror_antipode,
    multiply,
    named_group,
    project_to_cosemialgebra,
    star,
    star_involution_check,
    symmetric_table,
    unit_counit_map,
    validate_group_table,
)
from bisemikit.scalars import close

GROUPS = ["z1", "z2", "z3", "z4", "z2xz2", "s3", "z5", "z8"]


@functools.lru_cache(maxsize=None)
def H_of(name):
    return build_group_bisemialgebra(named_group(name))


def basis(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def inverse_oracle(table):
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    return [next(h for h in range(n) if table[g][h] == e) for g in range(n)]


def test_z2_antipode_is_identity():
    H = H_of("z2")
    assert H.dim == 2
    assert H.antipode == identity_map(H)


def test_trivial_group():
    H = H_of("z1")
    assert H.dim == 1 and H.antipode == ((1,),) and H.algebra.unit == (1,)
    assert hopf_axiom_check(H).passed


def test_s3_antipode_is_inversion_permutation():
    H = H_of("s3")
    assert H.dim == 6
    inv = inverse_oracle(H.group_table)
    for g in range(6):
        assert apply_map(H.antipode, basis(6, g)) == basis(6, inv[g])
    S2 = tuple(tuple(sum(H.antipode[i][k] * H.antipode[k][j] for k in range(6)) for j in range(6)) for i in range(6))
    assert S2 == identity_map(H)


def test_s3_table_is_permutation_composition():
    perms = list(itertools.permutations(range(3)))
    table = symmetric_table(3)
    # the table must be isomorphic to composition of permutations: same
    # element orders multiset and non-abelian
    def order(t, g):
        e = next(i for i in range(len(t)) if all(t[i][j] == j for j in range(len(t))))
        k, x = 1, g
        while x != e:
            x, k = t[x][g], k + 1
        return k

    comp = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    assert sorted(order(table, g) for g in range(6)) == sorted(order(comp, g) for g in range(6))
    assert any(table[a][b] != table[b][a] for a in range(6) for b in range(6))


@pytest.mark.parametrize("name", GROUPS)
def test_axioms_pass(name):
    report = hopf_axiom_check(H_of(name))
    assert report.passed, report.failures()


@pytest.mark.parametrize("name", GROUPS)
def test_convolution_antipode(name):
    H = H_of(name)
    assert convolution(H.antipode, identity_map(H), H) == unit_counit_map(H)
    assert convolution(identity_map(H), H.antipode, H) == unit_counit_map(H)


@pytest.mark.parametrize("name", ["z3", "z4", "s3"])
def test_id_star_id_is_squaring(name):
    H = H_of(name)
    sq = convolution(identity_map(H), identity_map(H), H)
    t = H.group_table
    for g in range(H.dim):
        assert apply_map(sq, basis(H.dim, g)) == basis(H.dim, t[g][g])


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_convolution_unit_and_associativity(name):
    H = H_of(name)
    rng = random.Random(3)
    n = H.dim
    maps = [tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(n)) for _ in range(3)]
    u = unit_counit_map(H)
    for h in maps:
        assert convolution(u, h, H) == h and convolution(h, u, H) == h
    a, b, c = maps
    assert convolution(convolution(a, b, H), c, H) == convolution(a, convolution(b, c, H), H)


def test_broken_antipode_witness():
    H = H_of("z3")
    report = hopf_axiom_check(H.with_antipode(identity_map(H)))
    assert set(report.failures()) == {"antipode_left", "antipode_right"}
    w = report["antipode_left"].witness
    assert w["basis"] == 1  # the generator: g * g != e


def test_comultiply_and_counit():
    H = H_of("z3")
    x = (Fraction(1), Fraction(2), Fraction(-1))
    assert comultiply(H, x) == {(0, 0): 1, (1, 1): 2, (2, 2): -1}
    assert counit(H, x) == 2


@pytest.mark.parametrize(
    "table",
    [
        ((0, 1), (1, 1)),
        ((0, 1, 2), (1, 2, 0)),
        ((1, 0), (0, 1), (0, 0)),
        # a loop of order 5 with identity 0; not associative
        ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0)),
    ],
)
def test_invalid_tables(table):
    with pytest.raises(InvalidGroupTable):
        validate_group_table(table)


def test_klein_and_products():
    assert hopf_axiom_check(build_group_bisemialgebra(klein_table())).passed
    assert len(cyclic_table(4)) == 4


def test_bilinear_antipode_example():
    H = H_of("z3")
    g, g2 = basis(3, 1), basis(3, 2)
    x = BisemialgebraElement.from_pair(g, g2, Orientation.LEFT_BI)
    y = bilinear_antipode(x, H)
    assert y.orientation == Orientation.RIGHT_BI
    assert y.pair == (g, g2)


def test_bilinear_antipode_identity_pair():
    H = H_of("s3")
    e = basis(6, 0)
    y = bilinear_antipode(BisemialgebraElement.from_pair(e, e), H)
    assert y.pair == (e, e) and y.orientation == Orientation.RIGHT_BI


def test_bilinear_antipode_orientation_errors():
    H = H_of("z2")
    e = basis(2, 0)
    with pytest.raises(ValueError):
        bilinear_antipode(BisemialgebraElement.from_pair(e, e, Orientation.RIGHT_BI), H)
    with pytest.raises(ValueError):
        bilinear_antipode_inverse(BisemialgebraElement.from_pair(e, e), H)


coeff_vectors = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=6, max_size=6)


@given(coeff_vectors, coeff_vectors)
def test_bilinear_antipode_round_trip_s3(a, b):
    H = H_of("s3")
    x = BisemialgebraElement.from_pair(a, b)
    y = bilinear_antipode(x, H)
    assert bilinear_antipode_inverse(y, H) == x
    assert mirror_antipode(y, H) == x  # S^2 = id on group algebras


@given(coeff_vectors)
def test_diagonal_pairs_fixed_by_double_swap(a):
    H = H_of("s3")
    x = BisemialgebraElement.from_pair(a, a)
    assert mirror_antipode(bilinear_antipode(x, H), H) == x


def test_projection_to_cosemialgebra():
    assert project_to_cosemialgebra((Fraction(-1), Fraction(-2))) == (1, 2)
    assert project_to_cosemialgebra((1 - 1j,)) == (1 + 1j,)


def test_star_example_z2():
    H = H_of("z2")
    assert star(H, (1j, 1 - 1j)) == (-1j, 1 + 1j)
    assert star(H, star(H, (1j, 1 - 1j))) == (1j, 1 - 1j)


def test_star_fixes_real_elements_twice():
    H = H_of("s3")
    a = (1.0, 2.0, 0.0, -1.0, 3.0, 0.5)
    assert star(H, star(H, a)) == a


@pytest.mark.parametrize("name", ["z2", "z3", "s3"])
def test_star_involution_check(name):
    report = star_involution_check(H_of(name), samples=100, seed=1)
    assert report.passed, report.failures()


def test_star_product_reversal_s3():
    H = H_of("s3")
    rng = random.Random(5)
    for _ in range(50):
        a = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(6))
        b = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(6))
        lhs = star(H, multiply(H, a, b))
        rhs = multiply(H, star(H, b), star(H, a))
        assert all(close(x, y) for x, y in zip(lhs, rhs))


def test_report_json():
    d = hopf_axiom_check(H_of("z3").with_antipode(identity_map(H_of("z3")))).to_dict()
    assert json.loads(json.dumps(d)) == d
    assert d["passed"] is False
