import itertools

import pytest

from cyclichom.cyclic import (CyclicComplex, NotClosed, NotInImage, connes_equivalences,
                              connes_homology, convention_intertwiner,
                              corollary_cyccochain_check, k_map, polynomial_resolution,
                              theta_properties, to_mixed, validate_relations)
from cyclichom.dga import hochschild, reduced_mixed, reduced_precyclic
from cyclichom.mixed import Flavour, InvalidComplex, Window, flavour_homology
from cyclichom.models import es1_mixed, point_dga, sphere_cohomology


def one(n):
    return ("1",) * n


@pytest.fixture(scope="module")
def c_r():
    return hochschild(point_dga())


# ---------------------------------------------------------------------------
# the operators of C(R), letter-count indexing

def test_point_operator_table(c_r):
    ops = c_r.operators(7)
    for n in range(1, 7):
        odd = n % 2 == 1
        assert ops.b.image(one(n)) == ({one(n - 1): 1} if odd and n >= 3 else {})
        assert ops.t.image(one(n)) == {one(n): (-1) ** (n - 1)}
        assert ops.N.image(one(n)) == ({one(n): n} if odd else {})
        assert ops.s.apply(ops.N.image(one(n))) == ({one(n + 1): n} if odd else {})
        assert ops.B.image(one(n)) == ({one(n + 1): 2 * n} if odd else {})
        assert c_r.total_degree(one(n)) == 1 - n


def test_sign_conventions_differ_only_in_signs(c_r):
    lo, pa = c_r.operators(5, "loday"), c_r.operators(5, "paper")
    for n in range(1, 6):
        assert pa.B.image(one(n)) == lo.B.image(one(n))
        assert {k: abs(v) for k, v in pa.b.image(one(n)).items()} == \
            {k: abs(v) for k, v in lo.b.image(one(n)).items()}


def test_unknown_convention(c_r):
    with pytest.raises(ValueError):
        c_r.operators(3, "other")


def test_koszul_signs_of_the_cyclic_operator():
    s2 = hochschild(sphere_cohomology(2)).operators(2)
    assert s2.t.image(("v", "v")) == {("v", "v"): -1}
    s3 = reduced_precyclic(sphere_cohomology(3)).operators(3)
    assert s3.t.image(("v", "v", "v")) == {("v", "v", "v"): 1}


# ---------------------------------------------------------------------------
# relations

@pytest.mark.parametrize("convention", ["loday", "paper"])
@pytest.mark.parametrize("name,cap", [("point", 5), ("S2", 3), ("S3", 3)])
def test_relations_hold(name, cap, convention):
    A = point_dga() if name == "point" else sphere_cohomology(int(name[1]))
    rep = validate_relations(hochschild(A), convention, cap)
    assert rep.passed, str(rep)


@pytest.mark.parametrize("n", [2, 3])
def test_relations_hold_on_reduced_precyclic(n):
    assert validate_relations(reduced_precyclic(sphere_cohomology(n)), cap=4).passed


def _corrupt(cc, level, face_index):
    def face(i, w):
        img = cc.face(i, w)
        if i == face_index and len(w) - 1 == level:
            return {k: -v for k, v in img.items()}
        return img
    return CyclicComplex(cc.level_basis, cc.degree, face, cc.cyclic, cc.differential,
                         cc.degeneracy, name="corrupted")


def test_corrupted_face_sign_is_flagged():
    cc = _corrupt(hochschild(sphere_cohomology(2)), 2, 1)
    rep = validate_relations(cc, cap=3)
    failed = {c.name: c.detail for c in rep.failures()}
    assert "b^2 = 0" in failed
    assert failed["b^2 = 0"].startswith("fails on (")


def test_intertwiner_signs_and_chain_identity():
    cc = hochschild(sphere_cohomology(3))
    phi, rep = convention_intertwiner(cc, cap=3)
    assert rep.passed, str(rep)
    want = {0: 1, 1: -1, 2: -1, 3: 1, -1: 1, -2: -1}
    ops = cc.operators(3)
    for l in ops.level:
        k = cc.total_degree(l)
        if k in want:
            assert phi.image(l) == {l: want[k]}
    assert phi.check(list(range(-2, 4))).passed


def test_to_mixed_type_discipline():
    with pytest.raises(TypeError):
        to_mixed(es1_mixed())
    with pytest.raises(InvalidComplex):
        to_mixed(reduced_precyclic(sphere_cohomology(2)))


@pytest.mark.parametrize("n", [2, 3])
def test_reduced_dims_match_word_enumeration(n):
    # words over {1, v} of length L with the unit allowed only in slot 0, minus the bare unit
    m = reduced_mixed(sphere_cohomology(n)).ensure(0, 12)
    counts = {}
    for length in range(1, 14):
        for w in itertools.product((0, n), repeat=length):
            if 0 in w[1:] or w == (0,):
                continue
            deg = sum(w) - (length - 1)
            counts[deg] = counts.get(deg, 0) + 1
    for k in range(0, 13):
        assert m.space.dim(k) == counts.get(k, 0), k


# ---------------------------------------------------------------------------
# theta double complex and the k map

@pytest.mark.parametrize("name", ["point", "S2"])
def test_theta_rows_and_odd_columns(name):
    A = point_dga() if name == "point" else sphere_cohomology(2)
    assert theta_properties(hochschild(A), cap=4).passed


@pytest.mark.parametrize("flavour", [Flavour.POLY_U, Flavour.SERIES_U, Flavour.POLY_UINV,
                                     Flavour.LAURENT_SERIES], ids=str)
def test_k_map_is_a_chain_isomorphism_for_the_point(c_r, flavour):
    rows, rep = k_map(c_r, flavour, Window(-5, 4))
    assert rep.passed, str(rep)
    assert all(r.trust != "truncated" for r in rows.values())
    if flavour is Flavour.POLY_U:
        assert rows[-1].theta_dim == rows[-3].theta_dim == 1
        assert rows[-1].u_dim == rows[-3].u_dim == 1


# ---------------------------------------------------------------------------
# Connes' version

@pytest.mark.parametrize("n", [3, 5])
def test_connes_odd_spheres(n):
    lam = connes_homology(reduced_precyclic(sphere_cohomology(n)), 0, 8)
    # v R[v] with |v| = n - 1
    assert {k: d for k, (d, _) in lam.items()} == \
        {k: int(k > 0 and k % (n - 1) == 0) for k in range(9)}
    assert all(t == "exact" for _, t in lam.values())


@pytest.mark.parametrize("n", [2, 4])
def test_connes_even_spheres(n):
    lam = connes_homology(reduced_precyclic(sphere_cohomology(n)), 0, 8)
    # v R[v^2]: only the words v^k with k odd survive, at index k(n - 1)
    want = {k: 0 for k in range(9)}
    for j in itertools.count():
        k = (2 * j + 1) * (n - 1)
        if k > 8:
            break
        want[k] = 1
    assert {k: d for k, (d, _) in lam.items()} == want


def test_connes_of_the_zero_complex():
    z = CyclicComplex(lambda n: [], lambda w: 0, lambda i, w: {}, lambda w: {}, lambda w: {},
                      complete_for_cap=lambda c: (None, None), name="0")
    assert all(d == 0 for d, _ in connes_homology(z, -3, 3).values())


def test_connes_point(c_r):
    lam = connes_homology(c_r, -6, 1)
    assert {k: d for k, (d, _) in lam.items()} == {k: int(k < 0 and k % 2) for k in range(-6, 2)}


def test_connes_presentations_point(c_r):
    rep = connes_equivalences(c_r, -5, 1)
    assert rep.passed, str(rep)
    assert any(c.name == "(C, d+b') acyclic" for c in rep.checks)


def test_connes_presentations_reduced_sphere():
    rep = connes_equivalences(reduced_precyclic(sphere_cohomology(2)), 1, 5)
    assert rep.passed, str(rep)


def test_corollary_point(c_r):
    rep = corollary_cyccochain_check(c_r, Window(-3, 1))
    assert rep.passed, str(rep)
    t = flavour_homology(to_mixed(c_r), Flavour.LAURENT_POLY, Window(-3, 3))
    assert not t.nonzero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_corollary_reduced_spheres(n):
    A = sphere_cohomology(n)
    rep = corollary_cyccochain_check(reduced_precyclic(A), Window(0, 8),
                                     mixed=reduced_mixed(A))
    assert rep.passed, str(rep)
    assert len(rep.checks) >= 9


# ---------------------------------------------------------------------------
# polynomial resolutions

def test_zero_resolution(c_r):
    res = polynomial_resolution(c_r, {})
    assert res.columns == {} and res.verified


def test_point_resolution(c_r):
    res = polynomial_resolution(c_r, {one(2): 2})
    assert res.verified
    assert res.length <= 2 * (1 + 1)


def test_resolution_preconditions(c_r):
    with pytest.raises(NotClosed):
        polynomial_resolution(c_r, {one(3): 1})
    with pytest.raises(NotInImage):
        polynomial_resolution(c_r, {one(1): 1})
