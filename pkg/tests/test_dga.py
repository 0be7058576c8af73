import itertools

import pytest
from hypothesis import given, strategies as st

from cyclichom.cyclic import to_mixed, validate_relations
from cyclichom.dga import (DgaSpec, NotAugmented, hochschild, koszul_sign, normalization_map,
                           normalized_cyc_hom_check, normalized_mixed, reduced_cyc_identities,
                           reduced_mixed, reduced_precyclic, rotation_sign, splitting_check,
                           validate_dga)
from cyclichom.mixed import Flavour, Window, flavour_homology, validate_mixed
from cyclichom.models import point_dga, point_mixed, sphere_cohomology


def permutation_koszul_sign(degs, perm):
    """Sign picked up by reordering graded letters: one factor per crossing pair."""
    sign = 1
    pos = {old: new for new, old in enumerate(perm)}
    for i, j in itertools.combinations(range(len(degs)), 2):
        if pos[i] > pos[j] and degs[i] * degs[j] % 2:
            sign = -sign
    return sign


GOLDEN = {
    (0,): 1, (1, 1): -1, (2, 2): 1, (1, 2): 1, (2, 1): 1, (1, 2, 1): -1, (1, 1, 1): 1,
    (3, 3, 3): 1, (3, 3): -1, (1, 0, 0, 1): -1, (2, 3, 3): -1, (3, 2, 2, 2): 1,
}


@pytest.mark.parametrize("degs,want", sorted(GOLDEN.items()))
def test_rotation_sign_golden(degs, want):
    assert rotation_sign(list(degs)) == want


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_rotation_sign_matches_permutation_count(degs):
    n = len(degs)
    rot = [n - 1] + list(range(n - 1))
    assert rotation_sign(degs) == permutation_koszul_sign(degs, rot)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_full_rotation_is_trivial(degs):
    sign, cur = 1, list(degs)
    for _ in range(len(degs)):
        sign *= rotation_sign(cur)
        cur = [cur[-1]] + cur[:-1]
    assert sign == 1 and cur == list(degs)


def test_koszul_sign_table():
    assert [koszul_sign(a, b) for a, b in [(0, 0), (1, 1), (1, 2), (3, 5), (2, 7)]] == \
        [1, -1, 1, -1, 1]


# ---------------------------------------------------------------------------
# dga validation

def acyclic_dga(scale=1):
    """Lambda[x] (x) R[y]/y^2 with dx = y; ``scale`` corrupts the product x * y."""
    return DgaSpec({"1": 0, "x": 1, "y": 2, "xy": 3}, "1",
                   {("x", "y"): {"xy": scale}, ("y", "x"): {"xy": 1}},
                   {"x": {"y": 1}}, name="E")


@pytest.mark.parametrize("A", [point_dga(), sphere_cohomology(2), sphere_cohomology(5),
                               acyclic_dga()], ids=lambda A: A.name)
def test_valid_dgas(A):
    assert validate_dga(A).passed


def test_corrupted_product_breaks_leibniz():
    rep = validate_dga(acyclic_dga(scale=2))
    failed = {c.name: c.detail for c in rep.failures()}
    assert "Leibniz rule" in failed
    assert failed["Leibniz rule"] == "fails on ('x', 'x')"


def test_degree_violation_reported():
    A = DgaSpec({"1": 0, "v": 2}, "1", {}, {"v": {"v": 1}}, name="bad")
    assert not validate_dga(A).checks[0].passed


# ---------------------------------------------------------------------------
# Hochschild words

def test_point_levels():
    cc = hochschild(point_dga())
    for n in range(5):
        assert cc.level_basis(n) == [("1",) * (n + 1)]
        assert cc.total_degree(("1",) * (n + 1)) == -n


def test_sphere_level_one_words():
    cc = hochschild(sphere_cohomology(2))
    assert sorted(cc.level_basis(1)) == [("1", "1"), ("1", "v"), ("v", "1"), ("v", "v")]


def test_relations_with_a_differential():
    assert validate_relations(hochschild(acyclic_dga()), cap=2).passed
    assert validate_relations(hochschild(acyclic_dga()), "paper", cap=2).passed


# ---------------------------------------------------------------------------
# normalized and reduced complexes

def test_normalized_point_is_the_point():
    m = normalized_mixed(point_dga())
    for fl in Flavour:
        a = flavour_homology(m, fl, Window(-4, 4))
        b = flavour_homology(point_mixed(), fl, Window(-4, 4))
        assert a.dims() == b.dims()
        assert a.all_trusted()


def test_normalization_is_not_invariant_for_poly_u():
    full = flavour_homology(to_mixed(hochschild(point_dga())), Flavour.POLY_U, Window(-5, 4))
    norm = flavour_homology(normalized_mixed(point_dga()), Flavour.POLY_U, Window(-5, 4))
    assert full.nonzero() == {-5: 1, -3: 1, -1: 1}
    assert norm.nonzero() == {0: 1, 2: 1, 4: 1}


def test_normalization_check_point():
    rep = normalized_cyc_hom_check(point_dga())
    assert rep.passed, str(rep)
    assert sum(1 for c in rep.checks if c.name.startswith("p induces")) >= 20


@pytest.mark.parametrize("n", [2, 3])
def test_normalization_map_is_a_morphism_for_spheres(n):
    p = normalization_map(sphere_cohomology(n))
    assert p.check(list(range(0, 4))).passed


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_complexes_are_valid(n):
    m = reduced_mixed(sphere_cohomology(n)).ensure(0, 10)
    assert validate_mixed(m, range(0, 10)).passed


def test_reduced_point_is_zero():
    m = reduced_mixed(point_dga())
    for fl in Flavour:
        assert not flavour_homology(m, fl, Window(-3, 3)).nonzero()


@pytest.mark.parametrize("A", [point_dga(), sphere_cohomology(2), sphere_cohomology(3)],
                         ids=lambda A: A.name)
def test_splitting(A):
    rep = splitting_check(A, Window(0, 6))
    assert rep.passed, str(rep)
    assert len(rep.checks) == 8 * 7


@pytest.mark.parametrize("n", [2, 3])
def test_reduced_identities(n):
    rep = reduced_cyc_identities(sphere_cohomology(n), Window(0, 6))
    assert rep.passed, str(rep)


def test_reduced_requires_augmentation():
    A = DgaSpec({"1": 0, "e": 0}, "1", {("e", "e"): {"1": 1}}, augmented=False, name="R[e]/e^2-1")
    with pytest.raises(NotAugmented):
        reduced_mixed(A)
    with pytest.raises(NotAugmented):
        reduced_precyclic(A)
    with pytest.raises(NotAugmented):
        splitting_check(A)
