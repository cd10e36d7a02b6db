import pytest

from espece import (
    AdjL,
    AdjR,
    Cauchy,
    Cyc,
    Derive,
    DeriveL,
    Exp,
    ExpPlus,
    Hadamard,
    Lin,
    LinPlus,
    One,
    Perm,
    Pointing,
    Representable,
    Subsets,
    Substitute,
    Sum,
    TruncLeft,
    TruncRight,
    X,
    Zero,
    act,
    as_table,
    cardinality,
    degree_budget,
    enumerate_degree,
    iso_check,
    validate,
)
from espece.errors import (
    BudgetExceeded,
    EnumerationTooLarge,
    InvalidExpr,
    StructureNotOfExpr,
)
from espece.groups import Permutation, generators
from espece.species import Table, fresh_star

GOLDEN = (
    Zero(),
    One(),
    X(),
    Exp(),
    ExpPlus(),
    Lin(),
    LinPlus(),
    Cyc(),
    Perm(),
    Subsets(),
    Representable(2),
    Sum(Lin(), Cyc()),
    Cauchy(Lin(), Lin()),
    Hadamard(Exp(), Lin()),
    Substitute(Exp(), Cyc()),
    Substitute(Lin(), Cyc()),
    Derive(Lin()),
    Derive(Cyc()),
    Derive(Subsets()),
    Pointing(Lin()),
    AdjL(Exp()),
    AdjR(Exp()),
    AdjR(X()),
    DeriveL(Exp()),
    TruncLeft(Lin(), 3),
    TruncRight(Exp(), 2),
)


# --- enumeration -----------------------------------------------------------


def test_cycle_enumeration_count():
    assert len(enumerate_degree(Cyc(), 4).structures) == 6


def test_zero_has_no_structures():
    for n in range(5):
        assert enumerate_degree(Zero(), n).structures == ()


def test_product_of_singletons_swapped():
    data = enumerate_degree(Cauchy(X(), X()), 2)
    assert len(data.structures) == 2
    swap = Permutation((2, 1))
    s, t = data.structures
    assert data.action.act(swap, s) == t
    assert data.action.act(swap, t) == s


def test_enumeration_matches_counting_on_golden():
    for e in GOLDEN:
        for n in range(6):
            assert len(enumerate_degree(e, n).structures) == cardinality(e, n), (e, n)


def test_enumeration_cap():
    with pytest.raises(EnumerationTooLarge):
        enumerate_degree(Lin(), 8, cap=100)


def test_degree_zero_conventions():
    assert cardinality(Lin(), 0) == 1
    assert cardinality(Perm(), 0) == 1
    assert cardinality(Subsets(), 0) == 1
    assert cardinality(Cyc(), 0) == 0
    assert cardinality(ExpPlus(), 0) == 0
    assert cardinality(LinPlus(), 0) == 0


def test_truncations():
    lt = TruncLeft(Lin(), 2)
    rt = TruncRight(Lin(), 2)
    assert [cardinality(lt, n) for n in range(5)] == [1, 1, 2, 0, 0]
    assert [cardinality(rt, n) for n in range(5)] == [1, 1, 2, 1, 1]
    assert enumerate_degree(rt, 4).structures == (("top",),)


# --- the action ------------------------------------------------------------


def test_act_identity():
    data = enumerate_degree(Cyc(), 3)
    e = Permutation.identity(3)
    for s in data.structures:
        assert act(Cyc(), e, s) == s


def test_act_on_cycle():
    swap = Permutation((2, 1, 3))  # (1 2)
    assert act(Cyc(), swap, ("cyc", (1, 2, 3))) == ("cyc", (1, 3, 2))


def test_act_on_subset():
    sigma = Permutation((3, 2, 1))  # (1 3)
    assert act(Subsets(), sigma, ("subset", (1, 2))) == ("subset", (2, 3))


def test_act_rejects_foreign_structure():
    with pytest.raises(StructureNotOfExpr):
        act(Cyc(), Permutation.identity(3), ("lin", (1, 2, 3)))


def test_action_laws_on_golden():
    for e in GOLDEN:
        for n in range(4):
            data = enumerate_degree(e, n)
            ident = Permutation.identity(n)
            gens = generators(n)
            for s in data.structures:
                assert data.action.act(ident, s) == s
                for g1 in gens:
                    for g2 in gens:
                        lhs = data.action.act(g1, data.action.act(g2, s))
                        assert lhs == data.action.act(g1 * g2, s)
                        assert data.action.act(g1, s) in data.index


def test_canonicalization_idempotent():
    for e in (Cyc(), Perm(), Substitute(Exp(), Cyc()), Derive(Subsets())):
        for n in range(4):
            data = enumerate_degree(e, n)
            for g in generators(n):
                for s in data.structures:
                    moved = data.action.act(g, s)
                    ident = {x: x for x in range(1, n + 1)}
                    from espece.species import transport

                    assert transport(moved, ident, tuple(range(1, n + 1))) == moved


def test_derivative_star_is_fixed():
    data = enumerate_degree(Derive(Subsets()), 2)
    assert ("deriv", ("subset", (0,))) in data.index
    for g in generators(2):
        moved = data.action.act(g, ("deriv", ("subset", (0, 1))))
        assert 0 in moved[1][1]


def test_nested_derivative_star_naming():
    data = enumerate_degree(Derive(Derive(Subsets())), 1)
    # the double-derivative subsets live inside {1} plus two reserved labels
    assert ("deriv", ("deriv", ("subset", (-1, 0, 1)))) in data.index


# --- combinator semantics --------------------------------------------------


def test_napier_fixed_point():
    for n in range(7):
        assert len(enumerate_degree(Derive(Exp()), n).structures) == 1


def test_pointing_counts():
    assert [cardinality(Pointing(Lin()), n) for n in range(4)] == [0, 1, 4, 18]


def test_adjoint_counts():
    assert [cardinality(AdjL(Exp()), n) for n in range(5)] == [0, 1, 2, 3, 4]
    assert [cardinality(AdjR(Exp()), n) for n in range(5)] == [1, 1, 1, 1, 1]
    assert [cardinality(AdjR(Lin()), n) for n in range(4)] == [1, 1, 1, 8]


def test_derive_after_adjl_decomposes():
    for f in (Exp(), Lin(), Cyc(), Subsets()):
        res = iso_check(DeriveL(f), Sum(f, Pointing(f)), 4)
        assert res.isomorphic, (f, res.witness_degree)


def test_derive_after_adjr_count_decomposition():
    for f in (Exp(), Lin(), Cyc(), Subsets()):
        for n in range(5):
            lhs = cardinality(Derive(AdjR(f)), n)
            rhs = cardinality(AdjR(Derive(f)), n) * cardinality(f, n)
            assert lhs == rhs


def test_substitution_structures():
    data = enumerate_degree(Substitute(Exp(), Cyc()), 3)
    assert len(data.structures) == 6
    blocks_seen = {s[1][0] for s in data.structures}
    assert ((1,), (2,), (3,)) in blocks_seen
    assert ((1, 2, 3),) in blocks_seen


def test_representable_free_orbit():
    data = enumerate_degree(Representable(3), 3)
    assert len(data.structures) == 6
    from espece.groups import orbits

    out = orbits(data.action)
    assert len(out) == 1 and len(out[0].points) == 6


# --- validation ------------------------------------------------------------


def test_validate_substitution():
    assert validate(Substitute(Exp(), Cyc())) == ()
    diags = validate(Substitute(Exp(), Exp()))
    assert any(d.code == "InnerNotPositive" for d in diags)
    assert validate(Derive(Lin())) == ()


def test_invalid_substitution_raises_on_use():
    with pytest.raises(InvalidExpr):
        cardinality(Substitute(Exp(), Exp()), 2)


def test_validate_malformed_table():
    bad = Table(
        "bad",
        [("a", "b")],
        [{(): {"a": "a", "b": "a"}}],
    )
    diags = validate(bad)
    assert any(d.code == "NonBijectiveAction" for d in diags)


def test_table_roundtrip_isomorphic():
    tbl = as_table(Cyc(), 4)
    assert iso_check(tbl, Cyc(), 4).isomorphic
    assert [cardinality(tbl, n) for n in range(5)] == [0, 1, 1, 2, 6]


def test_table_budget():
    tbl = as_table(Lin(), 3)
    assert cardinality(DeriveL(tbl), 3) == 4 * 6
    with pytest.raises(BudgetExceeded):
        cardinality(DeriveL(tbl), 4)
    with pytest.raises(BudgetExceeded):
        cardinality(Derive(tbl), 3)


# --- degree budget ---------------------------------------------------------


def test_degree_budget_examples():
    assert degree_budget(Derive(Derive(Exp())), 3) == 5
    assert degree_budget(Lin(), 4) == 4
    tbl = as_table(Lin(), 3)
    assert degree_budget(DeriveL(tbl), 3) == 3
    assert degree_budget(AdjL(Lin()), 4) == 3
    assert degree_budget(Pointing(Lin()), 4) == 4
    assert degree_budget(TruncLeft(Lin(), 2), 5) == 2


def test_fresh_star_progression():
    assert fresh_star((1, 2, 3)) == 0
    assert fresh_star((0, 1, 2)) == -1
    assert fresh_star((-1, 0, 1)) == -2


def test_hadamard_diagonal_action():
    data = enumerate_degree(Hadamard(Lin(), Lin()), 2)
    assert len(data.structures) == 4
    swap = Permutation((2, 1))
    s = ("both", (("lin", (1, 2)), ("lin", (2, 1))))
    assert data.action.act(swap, s) == ("both", (("lin", (2, 1)), ("lin", (1, 2))))


def test_perm_conjugation_action():
    data = enumerate_degree(Perm(), 2)
    swap = Permutation((2, 1))
    # both elements of the degree-2 symmetric group are central
    for s in data.structures:
        assert data.action.act(swap, s) == s


def test_act_structure_matches_table_action():
    tbl = as_table(Subsets(), 3)
    data = enumerate_degree(tbl, 3)
    ref = enumerate_degree(Subsets(), 3)
    swap = Permutation((2, 1, 3))
    moved_tbl = sorted(data.action.act(swap, s) for s in data.structures)
    assert moved_tbl == sorted(data.structures)
    # table transport respects the original species' orbit sizes
    from espece.groups import orbits

    assert sorted(len(o.points) for o in orbits(data.action)) == sorted(
        len(o.points) for o in orbits(ref.action)
    )
