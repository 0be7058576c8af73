"""
Differential graded algebras given by finite structure tables, and the
cyclic complexes built from them.

Words ``(a_0, ..., a_n)`` of basis labels sit at level ``n``.  Inner faces
multiply neighbours; the last face and the cyclic operator move ``a_n`` to
the front and pay the Koszul sign computed by :func:`koszul_sign`.
"""

from dataclasses import dataclass, field
from itertools import product

from .cyclic import CyclicComplex, connes_homology, to_mixed
from .mixed import (DEFAULT_CAP, Flavour, MixedComplex, MixedMorphism, Window, _combo_add,
                    flavour_homology, morphism_flavour_map)
from .report import Report


class InvalidDga(ValueError):
    pass


class NotAugmented(ValueError):
    pass


def koszul_sign(moved, past):
    """Sign for moving an element of degree ``moved`` past elements of total degree ``past``."""
    return -1 if (moved * past) % 2 else 1


def rotation_sign(degs):
    """Koszul sign of ``(a_0, ..., a_n) -> (a_n, a_0, ..., a_{n-1})``."""
    return koszul_sign(degs[-1], sum(degs[:-1]))


@dataclass
class DgaSpec:
    """A finite-dimensional dga over the rationals.

    ``degrees`` maps basis labels to degrees; ``mult`` maps pairs of labels to
    their product (missing pairs multiply to zero, except that the unit acts
    as the identity); ``d`` maps labels to their differential.  When
    ``augmented`` is set, the non-unit labels span an ideal closed under ``d``.
    """

    degrees: dict
    unit: object
    mult: dict = field(default_factory=dict)
    d: dict = field(default_factory=dict)
    augmented: bool = True
    name: str = ""

    @property
    def labels(self):
        return sorted(self.degrees, key=lambda l: (self.degrees[l], repr(l)))

    @property
    def ideal(self):
        return [l for l in self.labels if l != self.unit]

    def deg(self, a):
        return self.degrees[a]

    def times(self, a, b):
        if a == self.unit:
            return {b: 1}
        if b == self.unit:
            return {a: 1}
        return dict(self.mult.get((a, b), {}))

    def diff(self, a):
        return dict(self.d.get(a, {}))

    def times_combo(self, x, y):
        out = {}
        for a, u in x.items():
            for b, v in y.items():
                _combo_add(out, self.times(a, b), u * v)
        return out

    def diff_combo(self, x):
        out = {}
        for a, u in x.items():
            _combo_add(out, self.diff(a), u)
        return out


def validate_dga(A):
    """Degrees, associativity, unit, Leibniz rule and ``d^2 = 0``, each with a witness."""
    rep = Report("dga %s" % (A.name or ""))
    L = A.labels
    bad = None
    for (a, b), img in A.mult.items():
        for c in img:
            if c not in A.degrees or A.deg(c) != A.deg(a) + A.deg(b):
                bad = (a, b)
    for a, img in A.d.items():
        for c in img:
            if c not in A.degrees or A.deg(c) != A.deg(a) + 1:
                bad = (a,)
    rep.add("products and differential respect degrees", bad is None,
            "" if bad is None else "fails on %r" % (bad,))
    rep.add("unit has degree 0", A.degrees.get(A.unit) == 0)
    rep.add("unit is not a product target outside unit rules",
            all(A.unit not in img for (a, b), img in A.mult.items()
                if a != A.unit and b != A.unit) or not A.augmented)

    def first(cands, test):
        for c in cands:
            if not test(*c):
                return c
        return None

    w = first(product(L, L, L), lambda a, b, c: not _combo_add(
        A.times_combo(A.times(a, b), {c: 1}), A.times_combo({a: 1}, A.times(b, c)), -1))
    rep.add("associativity", w is None, "" if w is None else "fails on %r" % (w,))

    def leibniz(a, b):
        lhs = A.diff_combo(A.times(a, b))
        rhs = A.times_combo(A.diff(a), {b: 1})
        _combo_add(rhs, A.times_combo({a: 1}, A.diff(b)), (-1) ** A.deg(a))
        return not _combo_add(lhs, rhs, -1)

    w = first(product(L, L), leibniz)
    rep.add("Leibniz rule", w is None, "" if w is None else "fails on %r" % (w,))
    w = first([(a,) for a in L], lambda a: not A.diff_combo(A.diff(a)))
    rep.add("d^2 = 0", w is None, "" if w is None else "fails on %r" % (w,))
    w = first([(A.unit,)], lambda a: not A.diff(a))
    rep.add("d(1) = 0", w is None)
    if A.augmented:
        ideal = set(A.ideal)
        w = first([(a, b) for a in ideal for b in ideal],
                  lambda a, b: A.unit not in A.times(a, b))
        w2 = first([(a,) for a in ideal], lambda a: A.unit not in A.diff(a))
        rep.add("augmentation ideal closed", w is None and w2 is None,
                "" if (w or w2) is None else "fails on %r" % ((w or w2),))
    return rep


# ---------------------------------------------------------------------------
# word operators

def _word_face(A, i, word):
    n = len(word) - 1
    if i < n:
        prod = A.times(word[i], word[i + 1])
        return {word[:i] + (c,) + word[i + 2:]: v for c, v in prod.items()}
    sgn = rotation_sign([A.deg(a) for a in word])
    prod = A.times(word[n], word[0])
    return {(c,) + word[1:n]: sgn * v for c, v in prod.items()}


def _word_cyclic(A, word):
    sgn = rotation_sign([A.deg(a) for a in word])
    return {(word[-1],) + word[:-1]: sgn}


def _word_degeneracy(A, j, word):
    return {word[:j + 1] + (A.unit,) + word[j + 1:]: 1}


def _word_differential(A, word):
    out = {}
    past = 0
    for i, a in enumerate(word):
        for c, v in A.diff(a).items():
            key = word[:i] + (c,) + word[i + 1:]
            _combo_add(out, {key: v}, koszul_sign(1, past))
        past += A.deg(a)
    return out


def _words(alphabets):
    return [tuple(w) for w in product(*alphabets)]


def _min_ideal_degree(A):
    return min((A.deg(a) for a in A.ideal), default=None)


def hochschild(A):
    """The cyclic complex ``C(A)`` on all words."""
    labels = A.labels
    all_zero = all(A.deg(a) == 0 for a in labels)
    if all_zero:
        def complete(cap):
            return (-cap, None)
        support = (None, 0)
    else:
        complete, support = None, (None, None)
    return CyclicComplex(
        lambda n: _words([labels] * (n + 1)),
        lambda w: sum(A.deg(a) for a in w),
        lambda i, w: _word_face(A, i, w),
        lambda w: _word_cyclic(A, w),
        lambda w: _word_differential(A, w),
        lambda j, w: _word_degeneracy(A, j, w),
        complete_for_cap=complete, support=support, name="C(%s)" % A.name)


def _require_augmented(A):
    if not A.augmented:
        raise NotAugmented("%s has no augmentation" % (A.name or "the algebra"))
    rep = validate_dga(A)
    if not rep.passed:
        raise NotAugmented(str(rep))


def _sign(e):
    return -1 if e % 2 else 1


def _normalized_mixed(A, reduced, convention, cap):
    """``(A (x) Abar^n, d + b, s N)`` projected onto non-degenerate words.

    Faces preserve degenerate words but the cyclic operator does not, so the
    normalized complex is a mixed complex only.  ``B`` is computed as ``s N``
    on full words and then projected.
    """
    if convention not in ("loday", "paper"):
        raise ValueError("unknown sign convention %r" % convention)
    if reduced:
        _require_augmented(A)
    labels, ideal, unit = A.labels, A.ideal, A.unit
    dbar = _min_ideal_degree(A)
    paper = convention == "paper"

    def keep(w):
        if any(a == unit for a in w[1:]):
            return False
        return not (reduced and len(w) == 1 and w[0] == unit)

    def basis(n):
        first = ideal if (reduced and n == 0) else labels
        return _words([first] + [ideal] * n)

    def tdeg(w):
        return sum(A.deg(a) for a in w) - (len(w) - 1)

    def delta(w):
        n = len(w) - 1
        out = {}
        _combo_add(out, _word_differential(A, w), 1 if paper else _sign(tdeg(w) + 1))
        fs = {}
        for i in range(n + 1 if n > 0 else 0):
            _combo_add(fs, _word_face(A, i, w), _sign(i))
        _combo_add(out, fs, _sign(tdeg(w) + 1) if paper else 1)
        return {x: v for x, v in out.items() if keep(x)}

    def dd(w):
        n = len(w) - 1
        out, cur = {}, {w: 1}
        for _ in range(n + 1):
            for x, v in cur.items():
                y = (unit,) + x
                if keep(y):
                    _combo_add(out, {y: v}, _sign(tdeg(w)) if paper else 1)
            nxt = {}
            for x, v in cur.items():
                _combo_add(nxt, _word_cyclic(A, x), v * _sign(n))
            cur = nxt
        return out

    if dbar is not None and dbar >= 2 and min(A.deg(a) for a in labels) >= 0:
        def complete(c):
            return (None, (c + 1) * (dbar - 1) - 1)
        finite = True
    elif dbar is None:
        def complete(c):
            return (None, None)
        finite = True
    else:
        complete, finite = None, False
    name = ("reduced " if reduced else "normalized ") + "C(%s)" % A.name

    def build(c):
        words = [w for n in range(c + 1) for w in basis(n)]
        degs = {}
        for w in words:
            degs.setdefault(tdeg(w), []).append(w)
        kw = dict(weight={w: len(w) - 1 for w in words}, extend=extend, name=name)
        if finite:
            kw.update(complete=complete(c), support=(0, None) if dbar is not None else None)
        else:
            kw.update(complete=(None, None), weight_cap=c, degree_finite=False,
                      support=(None, None))
        return MixedComplex.from_images(degs, {w: delta(w) for w in words},
                                        {w: dd(w) for w in words}, **kw)

    def extend(jlo, jhi, wmax):
        if finite:
            c = 0
            while True:
                lo, hi = complete(c)
                if hi is None or max(jhi, 0) <= hi:
                    break
                c += 1
            if wmax is not None:
                c = max(c, wmax)
        else:
            c = wmax if wmax is not None else DEFAULT_CAP
        return build(c)

    return build(DEFAULT_CAP if cap is None else cap)


def normalized_mixed(A, convention="loday", cap=None):
    """The normalized mixed complex on ``A (x) Abar^n``."""
    return _normalized_mixed(A, False, convention, cap)


def reduced_mixed(A, convention="loday", cap=None):
    """The normalized mixed complex modulo the unit in level 0."""
    return _normalized_mixed(A, True, convention, cap)


def reduced_precyclic(A):
    """``C(Abar)``: words in the augmentation ideal, with no degeneracies."""
    _require_augmented(A)
    ideal = A.ideal
    dbar = _min_ideal_degree(A)
    if dbar is None:
        def complete(cap):
            return (None, None)
        support = (0, 0)
    elif dbar >= 2:
        def complete(cap):
            return (None, (cap + 1) * (dbar - 1) + dbar - 1)
        support = (dbar, None)
    else:
        complete, support = None, (None, None)
    return CyclicComplex(
        lambda n: _words([ideal] * (n + 1)),
        lambda w: sum(A.deg(a) for a in w),
        lambda i, w: _word_face(A, i, w),
        lambda w: _word_cyclic(A, w),
        lambda w: _word_differential(A, w),
        None, complete_for_cap=complete, support=support, name="C(%s bar)" % A.name)


def reduced_cyc_identities(A, window=None, convention="loday"):
    """``HC^(k+1)_[[u^-1]] = HC^k_lambda = HC^k_[u]`` for reduced complexes, and ``[u,u^-1]] = 0``."""
    window = Window(0, 6) if window is None else window
    m = reduced_mixed(A, convention)
    pre = reduced_precyclic(A)
    lo, hi = window.degree_lo, window.degree_hi
    lam = connes_homology(pre, lo - 1, hi, convention)
    t = {fl: flavour_homology(m, fl, window)
         for fl in (Flavour.SERIES_UINV, Flavour.POLY_U, Flavour.POLY_U_SERIES_UINV)}
    rep = Report("reduced flavour relations (%s)" % A.name)

    def ok(fl, k):
        return k in t[fl].rows and t[fl].trust(k) != "truncated"

    for k in range(lo - 1, hi):
        if ok(Flavour.SERIES_UINV, k + 1) and ok(Flavour.POLY_U, k) and \
                lam.get(k, (0, "truncated"))[1] != "truncated":
            vals = (t[Flavour.SERIES_UINV].dim(k + 1), lam[k][0], t[Flavour.POLY_U].dim(k))
            rep.add("[[u^-1]][+1] = lambda = [u] in degree %d" % k, len(set(vals)) == 1,
                    "dims %s" % (vals,))
    for k in range(lo, hi + 1):
        if ok(Flavour.POLY_U_SERIES_UINV, k):
            d = t[Flavour.POLY_U_SERIES_UINV].dim(k)
            rep.add("[u,u^-1]] vanishes in degree %d" % k, d == 0, "dim %d" % d)
    if not rep.checks:
        rep.add("at least one trusted degree", False)
    return rep


def normalization_map(A, convention="loday"):
    """The projection ``p: C(A) -> Cbar(A)`` killing words with the unit past slot zero."""
    src = to_mixed(hochschild(A), convention)
    tgt = normalized_mixed(A, convention)

    def image(w):
        return {} if any(a == A.unit for a in w[1:]) else {w: 1}

    return MixedMorphism(src, tgt, image, name="p for %s" % A.name)


_NORMALIZED_ISO = (Flavour.SERIES_U, Flavour.SERIES_U_POLY_UINV, Flavour.POLY_UINV)
_AUGMENTED_ISO = (Flavour.SERIES_UINV, Flavour.LAURENT_SERIES)


def normalized_cyc_hom_check(A, window=None, convention="loday", schedule=None):
    """``p`` is a morphism and induces isomorphisms on the flavours where normalization is harmless.

    Those are ``[[u]]``, ``[[u,u^-1]`` and ``[u^-1]`` always, and ``[[u^-1]]``
    and ``[[u,u^-1]]`` when ``A`` is augmented.  Degrees the engine cannot
    trust are skipped.  ``C(A)`` is infinite in each degree unless ``A`` sits
    in degree zero, so the default widening is then a single small step.
    """
    p = normalization_map(A, convention)
    finite = hochschild(A).degree_finite
    if window is None:
        window = Window(0, 4) if finite else Window(0, 3, 2, -3, 3, cap=2)
    if schedule is None and not finite:
        schedule = [window.widened(2)]
    rep = Report("normalization of %s" % A.name)
    rep.extend(p.check(list(range(window.degree_lo, window.degree_hi + 1))))
    flavours = _NORMALIZED_ISO + (_AUGMENTED_ISO if A.augmented else ())
    for fl in flavours:
        for k, row in morphism_flavour_map(p, fl, window, schedule).items():
            if row.trust == "truncated":
                continue
            rep.add("p induces an iso on %s in degree %d" % (fl, k), row.bijective,
                    "dims %d -> %d, rank %d" % (row.source_dim, row.target_dim, row.rank))
    return rep


def splitting_check(A, window=None, convention="loday"):
    """Normalized flavour tables split as the point's plus the reduced complex's."""
    _require_augmented(A)
    window = Window(0, 6) if window is None else window
    norm = normalized_mixed(A, convention)
    red = reduced_mixed(A, convention)
    point = normalized_mixed(DgaSpec({A.unit: 0}, A.unit, name="R"), convention)
    rep = Report("normalized = point + reduced for %s" % A.name)
    for fl in Flavour:
        tn, tr, tp = (flavour_homology(m, fl, window) for m in (norm, red, point))
        for k in range(window.degree_lo, window.degree_hi + 1):
            if "truncated" in (tn.trust(k), tr.trust(k), tp.trust(k)):
                continue
            rep.add("%s in degree %d" % (fl, k), tn.dim(k) == tp.dim(k) + tr.dim(k),
                    "%d = %d + %d" % (tn.dim(k), tp.dim(k), tr.dim(k)))
    return rep
