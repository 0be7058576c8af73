import pytest

import _oracles as O
from cyclichom.cyclic import CyclicComplex, connes_homology, to_mixed
from cyclichom.dga import hochschild, reduced_mixed, reduced_precyclic
from cyclichom.dual import (Covector, cyclic_dual_check, double_dual_check, dualize,
                            duality_check, lambda_cohomology, pairing_check)
from cyclichom.mixed import Flavour, Window, WindowTooSmall, flavour_homology, validate_mixed
from cyclichom.models import es1_mixed, point_dga, point_mixed, sphere_cohomology

W8 = Window(-8, 8)


def fixtures():
    return {
        "point": point_mixed(),
        "ES1": es1_mixed(),
        "C(R)": to_mixed(hochschild(point_dga())),
        "reduced S2": reduced_mixed(sphere_cohomology(2)),
        "reduced S3": reduced_mixed(sphere_cohomology(3)),
    }


def test_point_is_self_dual():
    d = dualize(point_mixed())
    assert d.space.degrees == [0]
    assert list(d.space.labels(0)) == [Covector("1")]
    assert repr(Covector("1")) == "'1'^v"


def test_es1_dual_basis_and_maps():
    d = dualize(es1_mixed(), Window(-6, 6)).ensure(-6, 0)
    assert list(d.space.labels(-3)) == [Covector(("alpha.beta", 1))]
    # transposes: delta*(beta^2)^v = (alpha beta)^v and D*(beta)^v = (alpha beta)^v
    assert d.delta.image(Covector(("beta", 2))) == {Covector(("alpha.beta", 1)): 1}
    assert d.dd.image(Covector(("beta", 1))) == {Covector(("alpha.beta", 1)): 1}
    assert validate_mixed(d, range(-6, 0)).passed


def test_es1_dual_series_table_reflects_the_uinv_table():
    d = dualize(es1_mixed(), Window(-6, 6))
    t = flavour_homology(d, Flavour.SERIES_U, Window(0, 6))
    assert t.nonzero() == {0: 1, 2: 1, 4: 1, 6: 1}
    assert t.all_trusted()


def test_infinite_complexes_cannot_be_dualized():
    with pytest.raises(WindowTooSmall):
        dualize(to_mixed(hochschild(sphere_cohomology(2))))


@pytest.mark.parametrize("name", list(fixtures()))
def test_double_dual_and_pairing(name):
    m = fixtures()[name]
    assert double_dual_check(m, Window(-4, 4)).passed
    rep = pairing_check(m, Window(-4, 4, 2, -4, 4))
    assert rep.passed, str(rep)


@pytest.mark.parametrize("name", list(fixtures()))
def test_duality(name):
    rep = duality_check(fixtures()[name], W8)
    assert rep.passed, str(rep)


@pytest.mark.parametrize("seed", range(16))
def test_duality_on_random_complexes_against_the_oracle(seed):
    m = O.random_complex(O.seeded(seed))
    d = dualize(m, Window(-4, 4))
    assert validate_mixed(d).passed
    for dfl, pfl in ((Flavour.SERIES_U, Flavour.POLY_UINV), (Flavour.SERIES_UINV, Flavour.POLY_U),
                     (Flavour.LAURENT_SERIES, Flavour.LAURENT_POLY)):
        dual_dims = O.flavour_dims(d, dfl, range(-4, 5))
        primal = O.flavour_dims(m, pfl, range(-4, 5))
        assert {k: dual_dims[-k] for k in primal} == primal
    assert duality_check(m, Window(-4, 4)).passed


# ---------------------------------------------------------------------------
# cyclic cohomology

@pytest.mark.parametrize("n", [2, 3, 4])
def test_lambda_cohomology_matches_connes_homology(n):
    cc = reduced_precyclic(sphere_cohomology(n))
    lam_up = lambda_cohomology(cc, 0, 8)
    lam_down = connes_homology(cc, 0, 8)
    assert {j: d for j, (d, _) in lam_up.items()} == {k: d for k, (d, _) in lam_down.items()}


def test_reduced_s3_cyclic_cohomology():
    lam = lambda_cohomology(reduced_precyclic(sphere_cohomology(3)), 0, 8)
    assert {j: d for j, (d, _) in lam.items() if d} == {2: 1, 4: 1, 6: 1, 8: 1}


def test_cyclic_dual_point():
    cc = hochschild(point_dga())
    rep = cyclic_dual_check(cc, W8)
    assert rep.passed, str(rep)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cyclic_dual_reduced_spheres(n):
    A = sphere_cohomology(n)
    rep = cyclic_dual_check(reduced_precyclic(A), W8, mixed=reduced_mixed(A))
    assert rep.passed, str(rep)


def test_cyclic_dual_zero_complex():
    z = CyclicComplex(lambda n: [], lambda w: 0, lambda i, w: {}, lambda w: {}, lambda w: {},
                      lambda j, w: {}, complete_for_cap=lambda c: (None, None), name="0")
    rep = cyclic_dual_check(z, Window(-2, 2))
    assert rep.passed, str(rep)
    assert all(d == 0 for d, _ in lambda_cohomology(z, -2, 2).values())


def test_pre_cyclic_needs_its_mixed_partner():
    with pytest.raises(ValueError):
        cyclic_dual_check(reduced_precyclic(sphere_cohomology(2)), W8)
