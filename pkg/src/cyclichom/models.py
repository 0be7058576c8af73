"""
Ground-truth fixtures and the free loop construction on Sullivan models.

Free graded-commutative algebras are handled through exponent vectors: a
monomial is a tuple with one exponent per generator, odd generators having
exponent at most one.  Products reorder factors into generator order and pick
up the Koszul sign of every odd-past-odd transposition.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclic import to_mixed
from .dga import DgaSpec, hochschild, normalized_mixed, reduced_mixed, validate_dga
from .exactlin import cycles_and_boundaries, induced_rank, rank_of_vectors
from .mixed import (Flavour, MixedComplex, MixedMorphism, Window, _combo_add,
                    flavour_homology, validate_mixed)
from .report import Report


class UnknownName(KeyError):
    pass


class InvalidModel(ValueError):
    pass


class NotSimplyConnected(ValueError):
    pass


# ---------------------------------------------------------------------------
# fixtures

def point_dga():
    """The ground field as a dga concentrated in degree zero."""
    return DgaSpec({"1": 0}, "1", name="R")


def sphere_cohomology(n):
    """``H(S^n) = R1 + Rv`` with ``deg v = n`` and ``v^2 = 0``."""
    if n < 2:
        raise ValueError("sphere_cohomology needs n >= 2")
    return DgaSpec({"1": 0, "v": n}, "1", name="H(S%d)" % n)


def point_mixed():
    return MixedComplex.from_images({0: ["1"]}, {}, {}, name="point")


def es1_mixed(top=None):
    """Cartan--Weil model of ``ES^1``: ``Lambda[alpha, beta]`` with ``delta alpha = beta`` and ``D alpha = 1``.

    ``beta`` has degree 2 and is even, so the basis is ``beta^n`` and
    ``alpha beta^n``.  Leibniz forces ``delta(alpha beta^n) = beta^(n+1)`` and
    ``D(alpha beta^n) = beta^n``.  The materialization grows on demand.
    """
    n_top = 4 if top is None else top

    def build(n_top):
        basis, dl, dd = {}, {}, {}
        for n in range(n_top + 1):
            basis[2 * n] = [("beta", n)]
            basis[2 * n + 1] = [("alpha.beta", n)]
            if n < n_top:
                dl[("alpha.beta", n)] = {("beta", n + 1): 1}
            dd[("alpha.beta", n)] = {("beta", n): 1}
        return MixedComplex.from_images(
            basis, dl, dd, support=(0, None), complete=(None, 2 * n_top),
            extend=lambda lo, hi, w: build(max(hi // 2 + 1, n_top)), name="ES1")

    return build(n_top)


def free_sphere_model(n):
    """Minimal model of ``S^n``: ``Lambda[a]`` for odd ``n``, ``Lambda[a, b]`` with ``db = a^2`` for even ``n``."""
    if n % 2:
        return FreeGCASpec({"a": n}, {}, name="S%d" % n)
    return FreeGCASpec({"a": n, "b": 2 * n - 1}, {"b": {("a", "a"): 1}}, name="S%d" % n)


_SIMPLE = {
    "point_dga": point_dga,
    "point_mixed": point_mixed,
    "point": point_mixed,
    "es1_mixed": es1_mixed,
    "es1": es1_mixed,
}
_INDEXED = {
    "sphere_cohomology": sphere_cohomology,
    "sphere": sphere_cohomology,
    "sphere_model": free_sphere_model,
}
BUILTIN_NAMES = ("point_dga", "point_mixed", "es1_mixed", "sphere_cohomology(n)",
                 "sphere_model(n)")


def builtin(name):
    """Look a fixture up by name; ``sphere(3)`` and ``sphere_cohomology(3)`` are synonyms."""
    key = name.strip().lower()
    if key in _SIMPLE:
        return _SIMPLE[key]()
    m = re.fullmatch(r"([a-z_]+)\s*\(\s*(\d+)\s*\)", key)
    if m and m.group(1) in _INDEXED:
        n = int(m.group(2))
        if n < 2:
            raise UnknownName("%s needs n >= 2" % m.group(1))
        return _INDEXED[m.group(1)](n)
    raise UnknownName("no builtin named %r (known: %s)" % (name, ", ".join(BUILTIN_NAMES)))


def as_mixed(obj, complex="full", convention="loday"):
    """A mixed complex for any fixture: dgas go through ``C(A)`` or one of its quotients."""
    if isinstance(obj, MixedComplex):
        return obj
    if isinstance(obj, DgaSpec):
        if complex == "normalized":
            return normalized_mixed(obj, convention)
        if complex == "reduced":
            return reduced_mixed(obj, convention)
        return to_mixed(hochschild(obj), convention)
    if isinstance(obj, FreeGCASpec):
        raise TypeError("a free model gives a mixed complex through loop_model")
    return to_mixed(obj, convention)


def validate_builtin(obj):
    if isinstance(obj, DgaSpec):
        return validate_dga(obj)
    if isinstance(obj, FreeGCASpec):
        return validate_model(obj)
    m = as_mixed(obj)
    return validate_mixed(m.ensure(0, 8))


# ---------------------------------------------------------------------------
# the quasi-isomorphism chain C(R) -> point -> ES^1

def delta_homology_ranks(f, degrees):
    """``{k: (dim H^k(source), dim H^k(target), rank f_*)}`` on ``H(., delta)``."""
    lo, hi = min(degrees), max(degrees)
    src = f.source.ensure(lo - 1, hi + 1)
    tgt = f.target.ensure(lo - 1, hi + 1)
    fm = f.graded_map(src, tgt)
    out = {}
    for k in degrees:
        zs, bs = cycles_and_boundaries(src.delta, src.delta, k)
        zt, bt = cycles_and_boundaries(tgt.delta, tgt.delta, k)
        hs = len(zs) - rank_of_vectors(bs)
        ht = len(zt) - rank_of_vectors(bt)
        out[k] = (hs, ht, induced_rank(fm.block(k), zs, bt))
    return out


def quiso_chain():
    """``C(R) -> point`` sending the one-letter word to ``1``, then ``point -> ES^1`` sending ``1`` to ``1``."""
    cr = to_mixed(hochschild(point_dga()))
    pt = point_mixed()
    es = es1_mixed()

    def first(word):
        return {"1": 1} if len(word) == 1 else {}

    f = MixedMorphism(cr, pt, first, name="C(R) -> point")
    g = MixedMorphism(pt, es, {"1": {("beta", 0): 1}}, name="point -> ES1")
    return f, g


def compose(g, f):
    def image(lbl):
        out = {}
        for t, v in f.image(lbl).items():
            _combo_add(out, g.image(t), v)
        return out
    return MixedMorphism(f.source, g.target, image, name="%s; %s" % (f.name, g.name))


def check_quiso(f, degrees=range(-4, 5)):
    rep = f.check(list(degrees))
    for k, (s, t, r) in delta_homology_ranks(f, list(degrees)).items():
        rep.add("H^%d(delta) iso" % k, s == t == r, "dims %d -> %d, rank %d" % (s, t, r))
    return rep


# ---------------------------------------------------------------------------
# free graded-commutative algebras

class _Gca:
    """Arithmetic in ``Lambda[generators]`` over the rationals."""

    def __init__(self, names, degrees):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.odd = tuple(d % 2 for d in degrees)
        self.pos = {n: i for i, n in enumerate(self.names)}

    def one(self):
        return (0,) * len(self.names)

    def gen(self, name):
        e = [0] * len(self.names)
        e[self.pos[name]] = 1
        return tuple(e)

    def degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def mul_mono(self, a, b):
        """``(sign, monomial)`` of ``a * b``; sign 0 when an odd square appears."""
        exps = []
        for i, (x, y) in enumerate(zip(a, b)):
            if self.odd[i] and x + y > 1:
                return 0, None
            exps.append(x + y)
        # every odd factor of b moves left past the odd factors of a with larger index
        swaps = 0
        odd_a_after = 0
        for i in reversed(range(len(a))):
            if self.odd[i]:
                swaps += b[i] * odd_a_after
                odd_a_after += a[i]
        return (-1 if swaps % 2 else 1), tuple(exps)

    def mul(self, p, q):
        out = {}
        for a, u in p.items():
            for b, v in q.items():
                s, m = self.mul_mono(a, b)
                if s:
                    _combo_add(out, {m: s * u * v})
        return out

    def derivation(self, images, degree):
        """The derivation of the given degree that sends generator ``i`` to ``images[i]``."""

        def apply_mono(mono):
            out = {}
            passed = 0
            for i, e in enumerate(mono):
                if e and images[i]:
                    before = tuple(x if j < i else 0 for j, x in enumerate(mono))
                    after = tuple(x if j > i else 0 for j, x in enumerate(mono))
                    rest = tuple(e - 1 if j == i else 0 for j in range(len(mono)))
                    mid = self.mul({rest: e if not self.odd[i] else 1}, images[i])
                    term = self.mul(self.mul({before: 1}, mid), {after: 1})
                    sign = -1 if (degree * passed) % 2 else 1
                    _combo_add(out, term, sign)
                passed += e * self.degrees[i]
            return out

        def apply(p):
            out = {}
            for m, v in p.items():
                _combo_add(out, apply_mono(m), v)
            return out

        return apply_mono, apply

    def monomials(self, max_degree):
        """All monomials of degree ``0..max_degree``, keyed by degree."""
        out = {}

        def rec(i, exps, deg):
            if i == len(self.names):
                out.setdefault(deg, []).append(tuple(exps))
                return
            d = self.degrees[i]
            top = 1 if self.odd[i] else (max_degree - deg) // d
            for e in range(top + 1):
                if deg + e * d > max_degree:
                    break
                exps.append(e)
                rec(i + 1, exps, deg + e * d)
                exps.pop()

        rec(0, [], 0)
        return {k: sorted(v) for k, v in out.items()}

    def render(self, mono):
        parts = []
        for n, e in zip(self.names, mono):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append("%s^%d" % (n, e))
        return "*".join(parts) or "1"


@dataclass
class FreeGCASpec:
    """A Sullivan algebra ``(Lambda[generators], d)``.

    ``generators`` maps names to degrees, in the order used for monomials.
    ``d`` maps a generator to a polynomial written as ``{factors: coeff}``,
    where ``factors`` is a tuple of generator names multiplied left to right.
    """

    generators: dict
    d: dict = field(default_factory=dict)
    name: str = ""

    def algebra(self):
        return _Gca(list(self.generators), list(self.generators.values()))

    def polynomial(self, gca, terms):
        out = {}
        for factors, c in terms.items():
            if isinstance(factors, str):
                factors = (factors,) if factors else ()
            p = {gca.one(): Fraction(c)}
            for f in factors:
                if f not in gca.pos:
                    raise InvalidModel("unknown generator %r" % f)
                p = gca.mul(p, {gca.gen(f): 1})
            _combo_add(out, p)
        return out


def validate_model(M):
    """Degrees, homogeneity of ``d`` and ``d^2 = 0`` on generators."""
    rep = Report("free model %s" % M.name)
    rep.add("generator degrees are at least 1", all(d >= 1 for d in M.generators.values()))
    unknown = [g for g in M.d if g not in M.generators]
    rep.add("differential only on declared generators", not unknown, ", ".join(map(str, unknown)))
    if unknown:
        return rep
    gca = M.algebra()
    try:
        imgs = [M.polynomial(gca, M.d.get(n, {})) for n in gca.names]
    except InvalidModel as e:
        rep.add("differential polynomials parse", False, str(e))
        return rep
    bad = [n for n, p, deg in zip(gca.names, imgs, gca.degrees)
           if any(gca.degree(m) != deg + 1 for m in p)]
    rep.add("d raises degree by one", not bad, ", ".join(bad))
    _, dpoly = gca.derivation(imgs, 1)
    bad = [n for n, p in zip(gca.names, imgs) if dpoly(p)]
    rep.add("d^2 = 0 on generators", not bad, ", ".join(bad))
    return rep


# ---------------------------------------------------------------------------
# free loop model

class LoopModel:
    """``(Lambda[x_i, xbar_i], d, B)`` with ``B x_i = xbar_i`` and ``d xbar_i = -B(d x_i)``.

    ``mixed`` is the whole algebra and ``reduced`` its augmentation ideal;
    both materialize lazily up to whatever degree a computation asks for.
    """

    def __init__(self, M, top):
        rep = validate_model(M)
        if not rep.passed:
            raise InvalidModel(str(rep))
        low = [n for n, d in M.generators.items() if d < 2]
        if low:
            raise NotSimplyConnected("generators of degree below 2: %s" % ", ".join(low))
        self.spec = M
        base = M.algebra()
        names, degs = [], []
        for n, d in M.generators.items():
            names += [n, n + "bar"]
            degs += [d, d - 1]
        self.algebra = gca = _Gca(names, degs)
        n_gen = len(base.names)
        dx = [M.polynomial(gca, M.d.get(n, {})) for n in base.names]
        b_images = []
        for i in range(n_gen):
            b_images += [{gca.gen(names[2 * i + 1]): 1}, {}]
        self.B_mono, self.B = gca.derivation(b_images, -1)
        d_images = []
        for i in range(n_gen):
            d_images += [dx[i], {m: -v for m, v in self.B(dx[i]).items()}]
        self.d_mono, self.d = gca.derivation(d_images, 1)
        self.mixed = self._build(top, reduced=False)
        self.reduced = self._build(top, reduced=True)

    def _build(self, top, reduced):
        gca = self.algebra
        one = gca.one()

        def build(top):
            basis = gca.monomials(top + 1)
            if reduced:
                basis[0] = [m for m in basis.get(0, []) if m != one]
            labels = {m for ms in basis.values() for m in ms}
            delta = {m: self.d_mono(m) for m in labels}
            dd = {m: self.B_mono(m) for m in labels}
            return MixedComplex.from_images(
                basis, delta, dd, support=(0, None), complete=(None, top),
                extend=lambda lo, hi, w: build(max(hi, top + 4)),
                name="L%s%s" % (self.spec.name, " rel" if reduced else ""))

        return build(top)

    def render(self, label):
        return self.algebra.render(label)

    def check(self, top=8):
        """``d^2 = B^2 = dB + Bd = 0``, plus ``B`` being a derivation on pairs of basis monomials."""
        m = self.mixed.ensure(0, top)
        rep = validate_mixed(m, range(0, top))
        gca = self.algebra
        basis = gca.monomials(top)
        bad = None
        for da in range(top + 1):
            for a in basis.get(da, []):
                for db_ in range(top + 1 - da):
                    for b in basis.get(db_, []):
                        lhs = self.B(gca.mul({a: 1}, {b: 1}))
                        rhs = gca.mul(self.B_mono(a), {b: 1})
                        _combo_add(rhs, gca.mul({a: 1}, self.B_mono(b)), -1 if da % 2 else 1)
                        if _combo_add(lhs, rhs, -1):
                            bad = (a, b)
        rep.add("B is a derivation", bad is None,
                "" if bad is None else "fails on %s, %s" % tuple(map(self.render, bad)))
        return rep


def loop_model(M, w=None):
    w = Window() if w is None else w
    return LoopModel(M, max(w.degree_hi + w.margin, 2))


def equivariant_loop_table(M, w=None, relative=False):
    """The ``[[u]]`` table of the loop model, or of its augmentation ideal when ``relative``."""
    w = Window() if w is None else w
    lm = M if isinstance(M, LoopModel) else loop_model(M, w)
    return flavour_homology(lm.reduced if relative else lm.mixed, Flavour.SERIES_U, w)
