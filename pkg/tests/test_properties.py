"""Property suite over a derived corpus of mixed complexes and resolution inputs.

Every complex is built from the builtins and the oracle blocks by direct
sums, shifts, cones, duals and changes of basis.  Seeds are fixed so the
corpus sizes are explicit; hypothesis variants draw further seeds.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import _oracles as O
from cyclichom.cyclic import polynomial_resolution
from cyclichom.dga import hochschild, reduced_precyclic
from cyclichom.dual import dualize
from cyclichom.mixed import (Flavour, MixedMorphism, Window, change_basis, cone, direct_sum,
                             flavour_homology, shift, validate_mixed)
from cyclichom.models import point_dga, point_mixed, sphere_cohomology
from cyclichom.sequences import GYSIN_VARIANTS, gysin_check

W = Window(-3, 3)
N_COMPLEXES = 200
N_RESOLUTIONS = 120


def _seed_complex(rng):
    if rng.randrange(4) == 0:
        return point_mixed()
    return O.random_complex(rng, depth=1, spread=2)


def derived_complex(seed):
    """A finite mixed complex obtained by a random chain of constructions."""
    rng = random.Random(seed)
    m = _seed_complex(rng)
    for _ in range(rng.randint(1, 3)):
        op = rng.choice(("sum", "shift", "cone", "dual", "basis"))
        if op == "sum":
            m = direct_sum(m, _seed_complex(rng))
        elif op == "shift":
            m = shift(m, rng.choice((-2, -1, 1, 2)))
        elif op == "cone":
            other = _seed_complex(rng)
            # the zero map, or a scaled identity, are always chain maps
            if rng.random() < 0.5:
                f = MixedMorphism(m, other, {l: {} for l in m.space.all_labels()}, name="0")
            else:
                s = rng.choice((1, -1, 3))
                f = MixedMorphism(m, m, {l: {l: s} for l in m.space.all_labels()}, name="s")
            m = cone(f)
        elif op == "dual":
            m = dualize(m, Window(-6, 6))
        else:
            mats = {k: O.random_invertible(rng, m.space.dim(k)) for k in m.space.degrees
                    if m.space.dim(k) <= 4}
            m = change_basis(m, {k: mats.get(k) or _identity(m.space.dim(k))
                                 for k in m.space.degrees})
    return m


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


CORPUS = range(N_COMPLEXES)


@pytest.mark.parametrize("seed", CORPUS)
def test_derived_complex_axioms(seed):
    assert validate_mixed(derived_complex(seed)).passed


@pytest.mark.parametrize("seed", CORPUS)
def test_derived_laurent_periodicity(seed):
    m = derived_complex(seed)
    for fl in (Flavour.LAURENT_POLY, Flavour.LAURENT_SERIES,
               Flavour.POLY_U_SERIES_UINV, Flavour.SERIES_U_POLY_UINV):
        t = flavour_homology(m, fl, W)
        for k in range(W.degree_lo, W.degree_hi - 1):
            if t.trust(k) != "truncated" and t.trust(k + 2) != "truncated":
                assert t.dim(k) == t.dim(k + 2)
                assert t.u_rank(k + 2) == t.dim(k + 2)


@pytest.mark.parametrize("seed", CORPUS)
def test_derived_gysin_exactness(seed):
    m = derived_complex(seed)
    for variant in GYSIN_VARIANTS:
        rep = gysin_check(m, variant, Window(-2, 2))
        assert rep.passed, str(rep)


@pytest.mark.parametrize("seed", range(0, N_COMPLEXES, 5))
def test_derived_tables_match_the_oracle(seed):
    m = derived_complex(seed)
    degrees = range(-2, 3)
    for fl in Flavour:
        t = flavour_homology(m, fl, Window(-2, 2))
        assert {k: t.dim(k) for k in degrees} == O.flavour_dims(m, fl, degrees)


@given(st.integers(0, 10 ** 9))
def test_derived_axioms_hypothesis(seed):
    m = derived_complex(seed)
    assert validate_mixed(m).passed
    t = flavour_homology(m, Flavour.LAURENT_POLY, Window(-2, 2))
    assert t.dim(-2) == t.dim(0) == t.dim(2)


# ---------------------------------------------------------------------------
# polynomial resolutions

def _cyclic_sources():
    out = [hochschild(point_dga()), hochschild(sphere_cohomology(2)),
           hochschild(sphere_cohomology(3))]
    out += [reduced_precyclic(sphere_cohomology(n)) for n in (2, 3, 4, 5)]
    return out


SOURCES = _cyclic_sources()


def resolution_input(seed):
    """``(cc, x)`` with ``x = (1 - t) y`` closed under ``d + b``.

    ``y`` runs over the kernel of ``(d + b)(1 - t)``, which parametrizes every
    admissible input at a given degree and level cap.
    """
    rng = random.Random(seed)
    while True:
        cc = rng.choice(SOURCES)
        cap = rng.randint(1, 5)
        ops = cc.operators(cap)
        degrees = list(ops.space.degrees)
        k = rng.choice(degrees)
        null = ops.dH.compose(ops.one_minus_t).block(k).nullspace()
        if not null:
            continue
        col = {}
        for v in null:
            c = rng.choice((-2, -1, 1, 1, 2, 3))
            for i, a in v.items():
                col[i] = col.get(i, 0) + c * a
        y = ops.space.combo(k, {i: a for i, a in col.items() if a})
        x = ops.one_minus_t.apply(y)
        if x:
            return cc, x


def _weights(res):
    return {k: res.weights[k - 1] for k in range(1, res.length + 1)}


def _check_resolution(cc, x):
    res = polynomial_resolution(cc, x)
    assert res.verified
    w = _weights(res)
    K = res.length

    def wt(k):
        return w.get(k, -1)

    top = max(res.ops.level[l] for l in x)
    for k in range(1, K + 1):
        assert wt(k + 1) <= wt(k)
        if k % 2 == 1:
            assert wt(k + 2) < wt(k)
    assert K <= 2 * (top + 1)
    return res


@pytest.mark.parametrize("seed", range(N_RESOLUTIONS))
def test_resolution_corpus(seed):
    cc, x = resolution_input(seed)
    _check_resolution(cc, x)


@given(st.integers(0, 10 ** 9))
def test_resolution_hypothesis(seed):
    cc, x = resolution_input(seed)
    _check_resolution(cc, x)
