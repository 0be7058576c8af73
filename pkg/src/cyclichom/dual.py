"""
Dual mixed complexes and the dimension-level duality statements.

The dual of ``(C, delta, D)`` has the functionals on ``C^(-k)`` in degree
``k`` and the transposed differentials.  A dual basis vector is a
:class:`Covector` wrapping the label it evaluates to one on.
"""

from collections import namedtuple
from dataclasses import replace

from .cyclic import CyclicComplex, _connes_exact, _ops_for_degrees, to_mixed
from .exactlin import GradedSpace, SparseMatrix, SubquotientPresentation
from .mixed import (Flavour, MixedComplex, Window, WindowTooSmall, _combo_add,
                    flavour_homology, validate_mixed)
from .report import Report
from .sequences import d_subquotient_homology


class Covector(namedtuple("Covector", "label")):
    __slots__ = ()

    def __repr__(self):
        return "%r^v" % (self.label,)


def _reflect(rng):
    lo, hi = rng
    return (None if hi is None else -hi, None if lo is None else -lo)


def _dual_of(m, extend):
    basis = {-k: [Covector(l) for l in m.space.labels(k)] for k in m.space.degrees}
    delta, dd = {}, {}
    for l in m.space.all_labels():
        for t, v in m.delta.image(l).items():
            _combo_add(delta.setdefault(Covector(t), {}), {Covector(l): v})
        for t, v in m.dd.image(l).items():
            _combo_add(dd.setdefault(Covector(t), {}), {Covector(l): v})
    if m.complete is None:
        complete = None
    else:
        # a covector in degree -j sees the images of degrees j - 1 and j + 1
        lo, hi = m.complete
        complete = _reflect((None if lo is None else lo + 1, None if hi is None else hi - 1))
    return MixedComplex.from_images(basis, delta, dd, support=_reflect(m.support),
                                    complete=complete, extend=extend,
                                    name="%s dual" % (m.name or "C"))


def dualize(m, w=None):
    """``(C^v, delta*, D*)`` materialized on the reflection of ``w`` and grown on demand.

    Raises :class:`WindowTooSmall` when ``C`` is not finite in each degree,
    since a truncation of such a complex has the wrong dual.
    """
    if not m.degree_finite:
        raise WindowTooSmall("%s is not finite in each degree; its dual is not computable "
                             "from a truncation" % (m.name or "complex"))
    w = Window() if w is None else w

    def extend(lo, hi, wmax):
        return _dual_of(m.ensure(-hi - 1, -lo + 1), extend)

    lo, hi = w.slice_lo, w.slice_hi
    return _dual_of(m.ensure(lo - 1, hi + 1), extend)


def double_dual_check(m, w=None):
    """``l -> (l^v)^v`` identifies ``C`` with its double dual on the interior window."""
    w = Window() if w is None else w
    dd = dualize(dualize(m, w), w)
    lo, hi = w.degree_lo, w.degree_hi
    base = m.ensure(lo - 1, hi + 1)
    dd = dd.ensure(lo - 1, hi + 1)
    rep = Report("double dual of %s" % (m.name or "C"))
    for k in range(lo, hi + 1):
        same = [Covector(Covector(l)) for l in base.space.labels(k)]
        rep.add("degree %d basis matches" % k, sorted(map(repr, same)) ==
                sorted(map(repr, dd.space.labels(k))))
    bad = None
    for k in range(lo, hi):
        for l in base.space.labels(k):
            for name, a, b in (("delta", base.delta, dd.delta), ("D", base.dd, dd.dd)):
                want = {Covector(Covector(t)): v for t, v in a.image(l).items()
                        if lo <= base.space.degree_of(t) <= hi}
                got = {t: v for t, v in b.image(Covector(Covector(l))).items()
                       if lo <= dd.space.degree_of(t) <= hi}
                if want != got:
                    bad = (name, l)
    rep.add("canonical map commutes with delta and D", bad is None,
            "" if bad is None else "%s differs on %r" % bad)
    return rep


def pairing_check(m, w=None):
    """The pairing of ``C^v[[u]]`` with ``C[u^-1]`` makes ``delta* + u D*`` adjoint to ``delta + u D``.

    Both sides are written as explicit matrices on the part of each degree
    with ``u``-power at most the window's box, and compared entrywise.
    """
    w = Window() if w is None else w
    top = w.upower_hi
    dual = dualize(m, w)
    rep = Report("pairing for %s" % (m.name or "C"))
    span_lo = w.degree_lo - 1
    span_hi = w.degree_hi + 2 * top + 2
    base = m.ensure(span_lo - 1, span_hi + 1)
    dual = dual.ensure(-span_hi - 1, -span_lo + 1)
    for k in range(w.degree_lo, w.degree_hi + 1):
        # columns: C^v[[u]] in degree -k, basis (c^v, i) with |c| = k + 2i, i <= top - 1
        cols = [(l, i) for i in range(top) for l in base.space.labels(k + 2 * i)]
        # rows: C^v[[u]] in degree -k + 1, basis (c^v, j) with |c| = k - 1 + 2j
        rows = [(l, j) for j in range(top + 1) for l in base.space.labels(k - 1 + 2 * j)]
        ri = {r: n for n, r in enumerate(rows)}
        left = {}
        for n, (l, i) in enumerate(cols):
            col = {}
            for t, v in dual.delta.image(Covector(l)).items():
                _combo_add(col, {ri[(t.label, i)]: v})
            for t, v in dual.dd.image(Covector(l)).items():
                _combo_add(col, {ri[(t.label, i + 1)]: v})
            left[n] = col
        # the transpose of delta + u D on C[u^-1]: entry (row (l', j), col (l, i))
        # is the coefficient of l u^-i in (delta + u D)(l' u^-j)
        right = {n: {} for n in range(len(cols))}
        ci = {c: n for n, c in enumerate(cols)}
        for (lp, j), r in ri.items():
            for t, v in base.delta.image(lp).items():
                if (t, j) in ci:
                    _combo_add(right[ci[(t, j)]], {r: v})
            for t, v in base.dd.image(lp).items():
                if (t, j - 1) in ci:
                    _combo_add(right[ci[(t, j - 1)]], {r: v})
        a = SparseMatrix(len(rows), len(cols), [left[n] for n in range(len(cols))])
        b = SparseMatrix(len(rows), len(cols), [right[n] for n in range(len(cols))])
        rep.add("iota is a chain map in degree %d" % -k, a == b)
    return rep


_PAIRS = (
    (Flavour.SERIES_U, Flavour.POLY_UINV),
    (Flavour.SERIES_UINV, Flavour.POLY_U),
    (Flavour.LAURENT_SERIES, Flavour.LAURENT_POLY),
)


def reflected(w):
    return replace(w, degree_lo=-w.degree_hi, degree_hi=-w.degree_lo)


def duality_check(m, w=None):
    """Dimension identities between flavours of ``C^v`` and of ``C``, and the ``im D``/``ker D`` square.

    ``w`` is a window in the degrees of ``C``; a degree is compared only when
    both tables trust it.
    """
    w = Window() if w is None else w
    dual = dualize(m, w)
    rw = reflected(w)
    rep = Report("duality for %s" % (m.name or "C"))
    rep.extend(validate_mixed(dual.ensure(rw.degree_lo - 1, rw.degree_hi + 1),
                              range(rw.degree_lo, rw.degree_hi + 1)), "dual: ")
    for dfl, pfl in _PAIRS:
        td = flavour_homology(dual, dfl, rw)
        tp = flavour_homology(m, pfl, w)
        for k in range(w.degree_lo, w.degree_hi + 1):
            if td.trust(-k) == "truncated" or tp.trust(k) == "truncated":
                continue
            rep.add("dual %s at %d = %s at %d" % (dfl, -k, pfl, k),
                    td.dim(-k) == tp.dim(k), "dims %d, %d" % (td.dim(-k), tp.dim(k)))
    degs = range(w.degree_lo, w.degree_hi + 1)
    rdegs = range(rw.degree_lo, rw.degree_hi + 1)
    for dual_side, primal_side in (("imD", "C/kerD"), ("kerD", "C/imD")):
        hd = d_subquotient_homology(dual, dual_side, rdegs)
        hp = d_subquotient_homology(m, primal_side, degs)
        for k in degs:
            rep.add("H^%d(%s of dual) = H^%d(%s)" % (-k, dual_side, k, primal_side),
                    hd[-k] == hp[k], "dims %d, %d" % (hd[-k], hp[k]))
    if not any(c.name.startswith("dual [") for c in rep.checks):
        rep.add("at least one trusted degree", False)
    return rep


def lambda_cohomology(cc, degree_lo, degree_hi, convention="loday", cap=None):
    """``HC^lambda_j = H^(-j-1)(ker (1-t)*, d* + b*)`` from transposed operators.

    Returns ``{j: (dimension, trust)}``.
    """
    ops = _ops_for_degrees(cc, degree_lo, degree_hi, convention, cap)
    sp = ops.space
    dual = GradedSpace({-k: [Covector(l) for l in sp.labels(k)] for k in sp.degrees})
    out = {}
    for j in range(degree_lo, degree_hi + 1):
        sub = {}
        blocks = {}
        for d in (-j - 2, -j - 1, -j):
            # (1 - t)* in dual degree d is the transpose of 1 - t on C^(-d)
            sub[d] = ops.one_minus_t.block(-d).T.nullspace() if sp.dim(-d) else []
        for d in (-j - 2, -j - 1):
            # d* + b* from dual degree d to d + 1 transposes d + b from C^(-d-1) to C^(-d)
            blocks[d] = ops.dH.block(-d - 1).T
        diff = _Transposed(blocks)
        sq = SubquotientPresentation(dual, sub, {})
        dim = sq.homology_dim(diff, -j - 1)
        trust = "exact" if _connes_exact(cc, ops, j) else "truncated"
        out[j] = (dim, trust)
    return out


class _Transposed:
    degree = 1

    def __init__(self, blocks):
        self._blocks = blocks

    def block(self, k):
        return self._blocks[k]


def cyclic_dual_check(cc, w=None, convention="loday", mixed=None):
    """``[[u^-1]]_(j) = lambda_(j) = [u]_(j+1) = [[u]]_(j+1)`` on cyclic cohomology, by dimension.

    Cyclic cohomology in lower degree ``j`` is the flavour homology of the
    dual mixed complex in degree ``-j``.  ``mixed`` replaces ``to_mixed(cc)``
    when ``cc`` is the pre-cyclic partner of a reduced complex.
    """
    w = Window() if w is None else w
    if mixed is None:
        if not isinstance(cc, CyclicComplex) or not cc.has_degeneracies:
            raise ValueError("a pre-cyclic complex needs its mixed partner")
        mixed = to_mixed(cc, convention)
    lo, hi = w.degree_lo, w.degree_hi
    dual = dualize(mixed, w)
    rw = replace(reflected(w), degree_lo=-hi - 1, degree_hi=-lo + 1)
    t = {fl: flavour_homology(dual, fl, rw)
         for fl in (Flavour.SERIES_UINV, Flavour.POLY_U, Flavour.SERIES_U)}
    lam = lambda_cohomology(cc, lo - 1, hi, convention)
    rep = Report("cyclic cohomology relations (%s)" % (cc.name or mixed.name))
    for j in range(lo - 1, hi):
        need = ((Flavour.SERIES_UINV, -j), (Flavour.POLY_U, -j - 1), (Flavour.SERIES_U, -j - 1))
        if any(t[fl].trust(d) == "truncated" for fl, d in need) or lam[j][1] != "exact":
            continue
        vals = (t[Flavour.SERIES_UINV].dim(-j), lam[j][0], t[Flavour.POLY_U].dim(-j - 1),
                t[Flavour.SERIES_U].dim(-j - 1))
        rep.add("[[u^-1]]_%d = lambda_%d = [u]_%d = [[u]]_%d" % (j, j, j + 1, j + 1),
                len(set(vals)) == 1, "dims %s" % (vals,))
    if not rep.checks:
        rep.add("at least one trusted degree", False)
    return rep
