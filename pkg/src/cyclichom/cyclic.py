"""
Cyclic cochain complexes: derived operators, the theta double complex,
Connes' quotient presentation and the polynomial resolution algorithm.

A :class:`CyclicComplex` is given by label-level callables for the faces
``d_i``, degeneracies ``s_j`` (optional), the cyclic operators ``t_n`` and
the internal differential ``d``.  Levels are materialized up to a word cap
on demand.  The total degree of a label at level ``n`` is its internal
degree minus ``n``.

Two sign conventions are supported.  ``"loday"`` uses plain alternating
sums of faces with the internal differential twisted by ``(-1)^(|c|+1)``;
``"paper"`` puts the sign ``(-1)^(|c|+1)`` on the face sums and
``(-1)^|c|`` on the extra degeneracy instead.  Both yield the same
homology, and :func:`convention_intertwiner` exhibits the isomorphism.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import (GradedMap, GradedSpace, SparseMatrix, SubquotientPresentation,
                       rank_of_vectors, solve)
from .mixed import (DEFAULT_CAP, Flavour, InvalidComplex, MixedComplex, MixedMorphism,
                    STAGE_GAP, StagedSlice, Window, WindowTooSmall, _build_power_slice,
                    _combo_add, _Ineq, _u_images, assemble_flavour, default_schedule,
                    flavour_homology, resolve_cap, stabilize_values, stage_flavour,
                    stage_windows, staged_rank)
from .report import Report

CONVENTIONS = ("loday", "paper")


class NotClosed(ValueError):
    pass


class NotInImage(ValueError):
    pass


def _scaled(combo, a):
    return {l: a * v for l, v in combo.items()} if a != 1 else dict(combo)


def _apply_fn(fn, combo):
    out = {}
    for l, v in combo.items():
        _combo_add(out, fn(l), v)
    return out


class CyclicComplex:
    """Label-level description of a (pre-)cyclic cochain complex.

    ``level_basis(n)`` lists the labels at level ``n``; ``degree`` gives the
    internal degree.  ``face(i, l)``, ``degeneracy(j, l)``, ``cyclic(l)`` and
    ``differential(l)`` return ``{label: coeff}`` combinations.  Without
    ``degeneracy`` or ``extra`` the object is pre-cyclic: Connes' presentation still makes
    sense but the operator ``B`` does not.

    ``complete_for_cap(cap)`` returns the total-degree range on which levels
    ``0..cap`` already contain every basis element, or ``None`` when the
    complex is not finite in each total degree.
    """

    def __init__(self, level_basis, degree, face, cyclic, differential, degeneracy=None, *,
                 extra=None, level=None, complete_for_cap=None, support=(None, None), name=""):
        self.level_basis = level_basis
        self.degree = degree
        self.face = face
        self.cyclic = cyclic
        self.differential = differential
        self.degeneracy = degeneracy
        self._extra = extra
        self.level = level or (lambda l: len(l) - 1)
        self.complete_for_cap = complete_for_cap
        self.support = tuple(support)
        self.name = name
        self._ops = {}

    @property
    def has_degeneracies(self):
        return self.degeneracy is not None or self._extra is not None

    @property
    def degree_finite(self):
        return self.complete_for_cap is not None and self.complete_for_cap(0) is not None

    def total_degree(self, label):
        return self.degree(label) - self.level(label)

    def extra_degeneracy(self, label):
        """``s_{n+1} = t_{n+1} s_n`` unless an explicit ``extra`` was supplied.

        Quotients such as the normalized complex kill ``s_n`` but keep the
        extra degeneracy, so they pass it in directly.
        """
        if self._extra is not None:
            return self._extra(label)
        n = self.level(label)
        return _apply_fn(self.cyclic, self.degeneracy(n, label))

    def cap_for(self, jlo, jhi, limit=400):
        if not self.degree_finite:
            return None
        for cap in range(limit):
            lo, hi = self.complete_for_cap(cap)
            slo, shi = self.support
            a = jlo if slo is None else max(jlo, slo)
            b = jhi if shi is None else min(jhi, shi)
            if a > b or ((lo is None or lo <= a) and (hi is None or b <= hi)):
                return cap
        raise WindowTooSmall("no word cap below %d covers degrees %d..%d" % (limit, jlo, jhi))

    def operators(self, cap, convention="loday"):
        key = (cap, convention)
        if key not in self._ops:
            self._ops[key] = DerivedOperators(self, cap, convention)
        return self._ops[key]


class DerivedOperators:
    """``d, b, b', t, N, s, B`` as graded maps on levels ``0..cap``.

    Operators that raise the level (``s`` and ``B``) lose their images from
    the top level; identities involving them are only meaningful below it.
    """

    def __init__(self, cc, cap, convention="loday"):
        if convention not in CONVENTIONS:
            raise ValueError("unknown sign convention %r" % convention)
        self.cc = cc
        self.cap = cap
        self.convention = convention
        basis, level = {}, {}
        for n in range(cap + 1):
            for l in cc.level_basis(n):
                basis.setdefault(cc.total_degree(l), []).append(l)
                level[l] = n
        self.space = sp = GradedSpace(basis)
        self.level = level
        paper = convention == "paper"

        def deg(l):
            return cc.total_degree(l)

        def sign(e):
            return -1 if e % 2 else 1

        def d_img(l):
            img = cc.differential(l)
            return img if paper else _scaled(img, sign(deg(l) + 1))

        def face_sum(l, upto):
            out = {}
            for i in range(upto + 1):
                _combo_add(out, cc.face(i, l), sign(i))
            return _scaled(out, sign(deg(l) + 1)) if paper else out

        def b_img(l):
            n = level[l]
            return face_sum(l, n) if n > 0 else {}

        def bp_img(l):
            n = level[l]
            return face_sum(l, n - 1) if n > 0 else {}

        def t_img(l):
            return _scaled(cc.cyclic(l), sign(level[l]))

        def mk(images_fn, degree):
            imgs = {l: images_fn(l) for l in level}
            return GradedMap.from_images(sp, sp, degree, imgs, strict=False)

        self.d = mk(d_img, 1)
        self.b = mk(b_img, 1)
        self.bp = mk(bp_img, 1)
        self.t = mk(t_img, 0)
        ident = GradedMap.identity(sp)
        self.one_minus_t = ident - self.t
        n_imgs = {}
        for l in level:
            acc, cur = {l: 1}, {l: 1}
            for _ in range(level[l]):
                cur = self.t.apply(cur)
                _combo_add(acc, cur)
            n_imgs[l] = acc
        self.N = GradedMap.from_images(sp, sp, 0, n_imgs, strict=False)
        if cc.has_degeneracies:
            def s_img(l):
                img = cc.extra_degeneracy(l)
                return _scaled(img, sign(deg(l))) if paper else img
            self.s = mk(s_img, -1)
            self.B = self.one_minus_t.compose(self.s.compose(self.N))
        else:
            self.s = None
            self.B = None
        self.dH = self.d + self.b
        self.dHp = self.d + self.bp

    def labels_below(self, top):
        return [l for l in self.level if self.level[l] <= top]


# ---------------------------------------------------------------------------
# validation

def _first_failure(labels, lhs, rhs):
    for l in labels:
        if _combo_add(dict(lhs(l)), rhs(l), -1):
            return l
    return None


def validate_relations(cc, convention="loday", cap=4):
    """Cyclic-object identities and the derived-operator identities on levels ``<= cap``."""
    rep = Report("cyclic relations (%s, %s convention, cap %d)" % (cc.name, convention, cap))
    ops = cc.operators(cap, convention)
    lv = ops.level
    face, degen, cyc, dd = cc.face, cc.degeneracy, cc.cyclic, cc.differential

    def at(n):
        return [l for l in lv if lv[l] == n]

    def compose(*fns):
        def h(l):
            cur = {l: 1}
            for f in reversed(fns):
                cur = _apply_fn(f, cur)
            return cur
        return h

    def F(i):
        return lambda l: face(i, l)

    def S(j):
        return lambda l: degen(j, l)

    checks = []  # (name, labels, lhs, rhs)
    for n in range(2, cap + 1):
        for j in range(1, n + 1):
            for i in range(j):
                checks.append(("d_%d d_%d = d_%d d_%d" % (i, j, j - 1, i), at(n),
                               compose(F(i), F(j)), compose(F(j - 1), F(i))))
    for n in range(1, cap + 1):
        for i in range(1, n + 1):
            checks.append(("d_%d t = t d_%d" % (i, i - 1), at(n),
                           compose(F(i), cyc), compose(cyc, F(i - 1))))
        checks.append(("d_0 t = d_n", at(n), compose(F(0), cyc), F(n)))
    for n in range(cap + 1):
        def tpow(l, n=n):
            cur = {l: 1}
            for _ in range(n + 1):
                cur = _apply_fn(cyc, cur)
            return cur
        checks.append(("t_%d^%d = id" % (n, n + 1), at(n), tpow, lambda l: {l: 1}))
        checks.append(("d t = t d", at(n), compose(dd, cyc), compose(cyc, dd)))
        checks.append(("d^2 = 0", at(n), compose(dd, dd), lambda l: {}))
        if n >= 1:
            for i in range(n + 1):
                checks.append(("d d_%d = d_%d d" % (i, i), at(n), compose(dd, F(i)),
                               compose(F(i), dd)))
    if cc.degeneracy is not None:
        for n in range(cap - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    checks.append(("s_%d s_%d = s_%d s_%d" % (i, j, j + 1, i), at(n),
                                   compose(S(i), S(j)), compose(S(j + 1), S(i))))
        for n in range(cap):
            for j in range(n + 1):
                checks.append(("d s_%d = s_%d d" % (j, j), at(n), compose(dd, S(j)),
                               compose(S(j), dd)))
                for i in range(n + 2):
                    if i < j:
                        rhs = compose(S(j - 1), F(i))
                    elif i in (j, j + 1):
                        rhs = (lambda l: {l: 1})
                    else:
                        rhs = compose(S(j), F(i - 1))
                    checks.append(("d_%d s_%d" % (i, j), at(n), compose(F(i), S(j)), rhs))
            for i in range(1, n + 1):
                checks.append(("s_%d t = t s_%d" % (i, i - 1), at(n),
                               compose(S(i), cyc), compose(cyc, S(i - 1))))
            checks.append(("s_0 t = t^2 s_n", at(n), compose(S(0), cyc),
                           compose(cyc, cyc, S(n))))
    # merge checks with the same name
    merged = {}
    for name, labels, lhs, rhs in checks:
        if name in merged and merged[name] is not None:
            continue
        w = _first_failure(labels, lhs, rhs)
        if name not in merged or w is not None:
            merged[name] = w
    for name, w in merged.items():
        rep.add(name, w is None, "" if w is None else "fails on %r" % (w,))
    rep.extend(operator_identities(cc, convention, cap))
    return rep


def operator_identities(cc, convention="loday", cap=4):
    """The identities between ``d, b, b', t, N, s, B`` (levels low enough to avoid the cap)."""
    ops = cc.operators(cap, convention)
    rep = Report("derived operator identities")
    G = ops
    ident = lambda l: {l: 1}  # noqa: E731

    def chain(*maps):
        def h(l):
            cur = {l: 1}
            for m in reversed(maps):
                cur = m.apply(cur)
            return cur
        return h

    def plus(*fns):
        def h(l):
            out = {}
            for f in fns:
                _combo_add(out, f(l))
            return out
        return h

    zero = lambda l: {}  # noqa: E731
    items = [
        ("(1-t) b' = b (1-t)", 0, chain(G.one_minus_t, G.bp), chain(G.b, G.one_minus_t)),
        ("b' N = N b", 0, chain(G.bp, G.N), chain(G.N, G.b)),
        ("b'^2 = 0", 0, chain(G.bp, G.bp), zero),
        ("b^2 = 0", 0, chain(G.b, G.b), zero),
        ("d b + b d = 0", 0, plus(chain(G.d, G.b), chain(G.b, G.d)), zero),
        ("d b' + b' d = 0", 0, plus(chain(G.d, G.bp), chain(G.bp, G.d)), zero),
        ("d^2 = 0", 0, chain(G.d, G.d), zero),
        ("(1-t) N = 0", 0, chain(G.one_minus_t, G.N), zero),
        ("N (1-t) = 0", 0, chain(G.N, G.one_minus_t), zero),
    ]
    if G.s is not None:
        items += [
            ("d s + s d = 0", 1, plus(chain(G.d, G.s), chain(G.s, G.d)), zero),
            ("b' s + s b' = 1", 1, plus(chain(G.bp, G.s), chain(G.s, G.bp)), ident),
            ("b s + s b' = 1 - t", 1, plus(chain(G.b, G.s), chain(G.s, G.bp)),
             chain(G.one_minus_t)),
            ("B^2 = 0", 2, chain(G.B, G.B), zero),
            ("(d+b) B + B (d+b) = 0", 1, plus(chain(G.dH, G.B), chain(G.B, G.dH)), zero),
        ]
    for name, raise_by, lhs, rhs in items:
        labels = ops.labels_below(cap - raise_by)
        w = _first_failure(labels, lhs, rhs)
        rep.add(name, w is None, "" if w is None else "fails on %r" % (w,))
    # ker/im equalities degreewise: (1-t)N = 0 gives containment, ranks give equality
    bad = []
    for k in ops.space.degrees:
        n = ops.space.dim(k)
        r1 = ops.one_minus_t.block(k).rank()
        rN = ops.N.block(k).rank()
        if r1 + rN != n:
            bad.append(k)
    rep.add("ker(1-t) = im N and ker N = im(1-t)", not bad,
            "" if not bad else "rank mismatch in degrees %s" % bad)
    return rep


def convention_intertwiner(cc, cap=4):
    """``Phi(c) = (-1)^(|c|(|c|+1)/2) c`` from the ``"loday"`` to the ``"paper"`` convention.

    Returns ``(morphism, report)``; the report checks that ``Phi`` carries
    ``d~ + b~`` to ``d + b`` and ``B~`` to ``B`` exactly.
    """
    lo = cc.operators(cap, "loday")
    pa = cc.operators(cap, "paper")

    def phi_sign(l):
        c = cc.total_degree(l)
        return -1 if (c * (c + 1) // 2) % 2 else 1

    def phi(l):
        return {l: phi_sign(l)}

    rep = Report("sign convention intertwiner")
    pairs = [("d + b", lo.dH, pa.dH, 0)]
    if lo.B is not None:
        pairs.append(("B", lo.B, pa.B, 1))
    for name, m_lo, m_pa, raise_by in pairs:
        labels = lo.labels_below(cap - raise_by)
        w = _first_failure(labels, lambda l: _apply_fn(phi, m_lo.image(l)),
                           lambda l: m_pa.apply(phi(l)))
        rep.add("Phi intertwines " + name, w is None, "" if w is None else "fails on %r" % (w,))
    src = to_mixed(cc, "loday", cap)
    tgt = to_mixed(cc, "paper", cap)
    return MixedMorphism(src, tgt, phi, name="Phi"), rep


# ---------------------------------------------------------------------------
# the mixed complex of a cyclic complex

def to_mixed(cc, convention="loday", cap=None):
    """``(C, d + b, B)`` materialized lazily by word cap."""
    if not isinstance(cc, CyclicComplex):
        raise TypeError("to_mixed requires a CyclicComplex")
    if not cc.has_degeneracies:
        raise InvalidComplex("a pre-cyclic complex has no operator B")

    def build(c):
        ops = cc.operators(c, convention)
        if cc.degree_finite:
            complete, wcap, finite = tuple(cc.complete_for_cap(c)), None, True
        else:
            complete, wcap, finite = (None, None), c, False
        m = MixedComplex(ops.space, ops.dH, ops.B, support=cc.support, complete=complete,
                         weight=ops.level, weight_cap=wcap, degree_finite=finite,
                         extend=extend, name=cc.name)
        m.operators = ops
        return m

    def extend(jlo, jhi, wmax):
        if cc.degree_finite:
            c = cc.cap_for(jlo, jhi)
            if wmax is not None:
                c = max(c, wmax)
        else:
            c = wmax if wmax is not None else DEFAULT_CAP
        return build(max(c, 0))

    return build(DEFAULT_CAP if cap is None else cap)


# ---------------------------------------------------------------------------
# theta double complex

def _theta_images(m, c, j):
    ops = m.operators
    out = {}
    if j % 2 == 0:
        for t, v in ops.dH.image(c).items():
            out[(t, j)] = v
        for t, v in ops.N.image(c).items():
            out[(t, j + 1)] = out.get((t, j + 1), 0) + v
    else:
        for t, v in ops.dHp.image(c).items():
            out[(t, j)] = -v
        for t, v in ops.one_minus_t.image(c).items():
            out[(t, j + 1)] = out.get((t, j + 1), 0) + v
    return out


def theta_inequalities(flavour, window, klo, khi, cap):
    """Filters on ``c theta^j`` matched to the ``u``-filters of the same window."""
    ineqs, hard = [], []
    lo, hi = flavour.lower, flavour.upper
    if lo == "hard":
        q = _Ineq(-1, 0, 0, 0, "hard")
        ineqs.append(q)
        hard.append(q)
    elif lo == "poly":
        ineqs.append(_Ineq(-1, 0, 0, -2 * window.upower_lo, "sub"))
    else:
        # j - k >= 2*upower_lo - khi: slope one in k, matching the step of delta_theta
        ineqs.append(_Ineq(-1, 1, 0, khi - 2 * window.upower_lo, "quot"))
    if hi == "hard":
        q = _Ineq(1, 0, 0, 0, "hard")
        ineqs.append(q)
        hard.append(q)
    elif hi == "series":
        ineqs.append(_Ineq(1, 0, 0, 2 * window.upower_hi + 1, "quot"))
    else:
        # j - k <= 2*upower_hi + 1 - klo
        ineqs.append(_Ineq(1, -1, 0, 2 * window.upower_hi + 1 - klo, "sub"))
    if cap is not None:
        ineqs.append(_Ineq(-1, 0, 2, 2 * cap + 1, "sub"))
    return ineqs, hard


@dataclass
class ThetaSlice:
    flavour: Flavour
    window: Window
    slice: object

    def trust(self, k):
        return "exact" if self.slice.trusted(k) else "truncated"


def _mixed_of(cc_or_m, convention):
    return cc_or_m if isinstance(cc_or_m, MixedComplex) else to_mixed(cc_or_m, convention)


def theta_total(cc, flavour, window, convention="loday"):
    """Finite slice of ``C{theta, theta^-1}`` with ``delta_theta`` for ``flavour``."""
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    m = _mixed_of(cc, convention)
    klo, khi = window.slice_lo, window.slice_hi
    cap = window.cap if window.cap is not None else (None if m.degree_finite else DEFAULT_CAP)
    ineqs, hard = theta_inequalities(flavour, window, klo, khi, cap)
    wmax = (lambda pmax: cap + (pmax + 1) // 2) if cap is not None else (lambda pmax: None)
    sl = _build_power_slice(m, 1, klo, khi, ineqs, hard, wmax, images_fn=_theta_images,
                            shift_step=2)
    return ThetaSlice(flavour, window, sl)


def stage_theta(cc, flavour, window, convention="loday", gap=STAGE_GAP):
    """Two-stage version of :func:`theta_total`; see :class:`StagedSlice`."""
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    m = _mixed_of(cc, convention)
    w_in, w_out = stage_windows(flavour, resolve_cap(m, window), gap)
    inner = theta_total(m, flavour, w_in).slice
    return StagedSlice(inner, theta_total(inner.mixed, flavour, w_out).slice)


def _k_images(ops, c, i):
    out = {(c, 2 * i): 1}
    for t, v in ops.s.apply(ops.N.image(c)).items():
        out[(t, 2 * i + 1)] = v
    return out


@dataclass
class KMapRow:
    degree: int
    u_dim: int
    theta_dim: int
    rank: int
    trust: str

    @property
    def bijective(self):
        return self.u_dim == self.theta_dim == self.rank


def k_map(cc, flavour, window=None, convention="loday", schedule=None):
    """Check that ``k(c u^i) = c theta^2i + sNc theta^(2i+1)`` is a chain map inducing isomorphisms.

    Returns ``(rows, report)``.  The chain-map property is checked both as the
    three operator identities it amounts to and directly on slice elements
    whose images stay clear of the truncation.
    """
    window = Window(-4, 4) if window is None else window
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    schedule = default_schedule(window) if schedule is None else list(schedule)
    rep = Report("k map (%s)" % flavour)

    def slices(w):
        m = _mixed_of(cc, convention)
        for _ in range(4):
            us = assemble_flavour(m, flavour, w).slice
            ts = theta_total(us.mixed, flavour, w).slice
            if ts.mixed is us.mixed:
                return us, ts
            m = ts.mixed
        raise WindowTooSmall("could not materialize both sides of the k map on one word cap")

    us, ts = slices(window)
    ops = ts.mixed.operators
    top = ops.cap - 2
    labels = ops.labels_below(top)
    sN = ops.s.compose(ops.N)
    ident_checks = [
        ("(d+b') sN + sN (d+b) = N",
         lambda l: _combo_add(ops.dHp.apply(sN.image(l)), sN.apply(ops.dH.image(l))),
         lambda l: ops.N.image(l)),
        ("(1-t) sN = B", lambda l: ops.one_minus_t.apply(sN.image(l)), lambda l: ops.B.image(l)),
        ("sN B = 0", lambda l: sN.apply(ops.B.image(l)), lambda l: {}),
    ]
    for name, lhs, rhs in ident_checks:
        w = _first_failure(labels, lhs, rhs)
        rep.add(name, w is None, "" if w is None else "fails on %r" % (w,))
    # direct check on slice elements, with untruncated images
    bad, checked = None, 0
    for k in range(us.klo, us.khi + 1):
        for (c, i) in us.space.labels(k):
            if ops.level[c] > top:
                continue
            lhs = {}
            for lbl, v in _k_images(ops, c, i).items():
                _combo_add(lhs, _theta_images(ts.mixed, *lbl), v)
            rhs = {}
            for (c2, i2), v in _u_images(ts.mixed, c, i).items():
                _combo_add(rhs, _k_images(ops, c2, i2), v)
            checked += 1
            if _combo_add(lhs, rhs, -1):
                bad = (c, i)
                break
        if bad:
            break
    rep.add("delta_theta k = k delta_u on %d slice elements" % checked, bad is None and checked > 0,
            "" if bad is None else "fails on %r" % (bad,))

    def compute(w):
        m = _mixed_of(cc, convention)
        u_st = stage_flavour(m, flavour, w)
        t_st = stage_theta(u_st.outer.mixed, flavour, w)
        big = max((sl.mixed for sl in (u_st.inner, u_st.outer, t_st.inner, t_st.outer)),
                  key=lambda mm: mm.operators.cap)
        bops = big.operators

        def kfn(lbl):
            return _k_images(bops, *lbl)

        out = {}
        for k in range(w.degree_lo, w.degree_hi + 1):
            r = staged_rank(kfn, u_st, t_st, k, 0)
            out[k] = ((u_st.homology_dim(k), t_st.homology_dim(k), r),
                      u_st.trusted(k) and t_st.trusted(k))
        return out

    vals = stabilize_values(compute, [window] + schedule, cc.degree_finite)
    rows = {k: KMapRow(k, v[0], v[1], v[2], trust) for k, (v, trust) in sorted(vals.items())}
    for k, r in rows.items():
        if r.trust != "truncated":
            rep.add("k_* bijective in degree %d" % k, r.bijective,
                    "dims %d -> %d, rank %d" % (r.u_dim, r.theta_dim, r.rank))
    return rows, rep


def theta_properties(cc, convention="loday", cap=4):
    """Odd columns contract via ``-s``; rows are exact (rank(1-t) + rank N = dim per level)."""
    ops = cc.operators(cap, convention)
    rep = Report("theta double complex")
    if ops.s is not None:
        labels = ops.labels_below(cap - 1)
        w = _first_failure(
            labels,
            lambda l: _combo_add({k: -v for k, v in ops.dHp.apply(ops.s.image(l)).items()},
                                 ops.s.apply(ops.dHp.image(l)), -1),
            lambda l: {l: -1})
        rep.add("(d+b')(-s) + (-s)(d+b') = -id", w is None, "" if w is None else "fails on %r" % (w,))
    bad = []
    for n in range(cap + 1):
        labels = [l for l in ops.level if ops.level[l] == n]
        by_deg = {}
        for l in labels:
            by_deg.setdefault(cc.total_degree(l), []).append(l)
        for k, ls in by_deg.items():
            cols_t = [ops.space.vector(k, ops.one_minus_t.image(l)) for l in ls]
            cols_n = [ops.space.vector(k, ops.N.image(l)) for l in ls]
            if rank_of_vectors(cols_t) + rank_of_vectors(cols_n) != len(ls):
                bad.append((n, k))
    rep.add("rows exact: rank(1-t) + rank N = dim", not bad,
            "" if not bad else "fails at (level, degree) %s" % bad)
    return rep


# ---------------------------------------------------------------------------
# Connes' version

def _presentations(ops):
    sp = ops.space
    degs = sp.degrees
    full = {k: [{i: 1} for i in range(sp.dim(k))] for k in degs}
    im_t = {k: [c for c in ops.one_minus_t.block(k).cols if c] for k in degs}
    im_n = {k: [c for c in ops.N.block(k).cols if c] for k in degs}
    return {
        "C/im(1-t)": (SubquotientPresentation(sp, full, im_t), ops.dH, 1),
        "im N": (SubquotientPresentation(sp, im_n, {}), ops.dHp, 1),
        "C/im N": (SubquotientPresentation(sp, full, im_n), ops.dHp, 0),
        "im(1-t)": (SubquotientPresentation(sp, im_t, {}), ops.dH, 0),
    }


def _ops_for_degrees(cc, lo, hi, convention, cap):
    if cap is None:
        cap = cc.cap_for(lo - 1, hi + 3)
        if cap is None:
            cap = DEFAULT_CAP
    return cc.operators(cap, convention)


def _connes_exact(cc, ops, k):
    if not cc.degree_finite:
        return False
    lo, hi = cc.complete_for_cap(ops.cap)
    return all((lo is None or lo <= j) and (hi is None or j <= hi) for j in range(k, k + 3))


def connes_homology(cc, degree_lo, degree_hi, convention="loday", cap=None):
    """``HC_lambda^k = H^(k+1)(C/im(1-t), d+b)`` for ``k`` in the range.

    Returns ``{k: (dimension, trust)}``.  A degree is exact when the word cap
    leaves degrees ``k .. k+2`` complete; otherwise it is flagged truncated.
    """
    ops = _ops_for_degrees(cc, degree_lo, degree_hi, convention, cap)
    sq, diff, shift = _presentations(ops)["C/im(1-t)"]
    return {k: (sq.homology_dim(diff, k + shift),
                "exact" if _connes_exact(cc, ops, k) else "truncated")
            for k in range(degree_lo, degree_hi + 1)}


def _bp_homology(ops, k):
    sp = ops.space
    return sp.dim(k) - ops.dHp.block(k).rank() - ops.dHp.block(k - 1).rank()


def connes_equivalences(cc, degree_lo, degree_hi, convention="loday", cap=None):
    """Compare the four presentations of ``HC_lambda`` and the maps between them."""
    ops = _ops_for_degrees(cc, degree_lo, degree_hi, convention, cap)
    rep = Report("Connes presentations (%s)" % cc.name)
    pres = _presentations(ops)
    sp = ops.space
    for k in range(degree_lo, degree_hi + 1):
        if not _connes_exact(cc, ops, k):
            continue
        dims = {name: sq.homology_dim(diff, k + sh) for name, (sq, diff, sh) in pres.items()}
        detail = ", ".join("%s: %d" % kv for kv in dims.items())
        if ops.s is not None or (_bp_homology(ops, k) == 0 and _bp_homology(ops, k + 1) == 0):
            rep.add("four presentations agree in degree %d" % k, len(set(dims.values())) == 1,
                    detail)
        else:
            # (C, d+b') is not acyclic here, so only the pairs related by N and 1 - t agree
            rep.add("presentation pairs agree in degree %d" % k,
                    dims["C/im(1-t)"] == dims["im N"] and dims["C/im N"] == dims["im(1-t)"],
                    detail)
        # N_*: H^(k+1)(C/im(1-t)) -> H^(k+1)(im N); (1-t)_*: H^k(C/im N) -> H^k(im(1-t))
        for src_name, tgt_name, op, deg in (("C/im(1-t)", "im N", ops.N, k + 1),
                                           ("C/im N", "im(1-t)", ops.one_minus_t, k)):
            sq_s, d_s, _ = pres[src_name]
            sq_t, d_t, _ = pres[tgt_name]
            z = sq_s.cycles(d_s, deg)
            imgs = [op.block(deg).apply(c) for c in z]
            bnd = sq_t.boundaries(d_t, deg)
            r = rank_of_vectors(bnd + imgs) - rank_of_vectors(bnd)
            rep.add("%s_* bijective in degree %d" % ("N" if op is ops.N else "(1-t)", deg),
                    r == dims[src_name] == dims[tgt_name], "rank %d" % r)
    # acyclicity of (C, d+b')
    if ops.s is not None:
        bad = []
        for k in sp.degrees:
            if not _connes_exact(cc, ops, k - 1):
                continue
            if _bp_homology(ops, k):
                bad.append(k)
        rep.add("(C, d+b') acyclic", not bad, "" if not bad else "homology in degrees %s" % bad)
        rep.extend(_theta_side_maps(cc, degree_lo, degree_hi, convention))
    return rep


def _theta_side_maps(cc, degree_lo, degree_hi, convention):
    """``((1-t)s)_*`` into ``HC_[theta]`` and ``e_*`` out of ``HC_[[theta^-1]]``."""
    rep = Report("theta-side maps")
    w = Window(degree_lo - 1, degree_hi + 2).widened(8)
    pos = stage_theta(cc, Flavour.POLY_U, w, convention)
    neg = stage_theta(cc, Flavour.SERIES_UINV, w, convention)
    pops, nops = pos.outer.mixed.operators, neg.inner.mixed.operators
    sq_n, d_n, _ = _presentations(pops)["im N"]
    sq_q, d_q, _ = _presentations(nops)["C/im(1-t)"]
    for k in range(degree_lo, degree_hi + 1):
        # H^(k+1)(im N, d+b') -> HC^k_[theta] via x -> (1-t)s x theta^0
        if pos.trusted(k) and _connes_exact(cc, pops, k):
            tgt = pos.outer
            imgs = []
            for c in sq_n.cycles(d_n, k + 1):
                img = pops.one_minus_t.apply(pops.s.apply(pops.space.combo(k + 1, c)))
                imgs.append({tgt.space.index(k, (l, 0)): v for l, v in img.items()
                             if (l, 0) in tgt.space})
            bnd = tgt.boundaries(k)
            r = rank_of_vectors(bnd + imgs) - rank_of_vectors(bnd)
            rep.add("((1-t)s)_* bijective into degree %d" % k,
                    r == sq_n.homology_dim(d_n, k + 1) == pos.homology_dim(k), "rank %d" % r)
        # HC^(k+1)_[[theta^-1]] -> H^(k+1)(C/im(1-t)) projecting to column 0
        if neg.trusted(k + 1) and _connes_exact(cc, nops, k):
            src = neg.inner
            imgs = []
            for c in src.cycles(k + 1):
                combo = src.space.combo(k + 1, c)
                proj = {l: v for (l, j), v in combo.items() if j == 0}
                imgs.append(nops.space.vector(k + 1, proj))
            bnd = sq_q.boundaries(d_q, k + 1)
            r = rank_of_vectors(bnd + imgs) - rank_of_vectors(bnd)
            rep.add("e_* bijective in degree %d" % (k + 1),
                    r == sq_q.homology_dim(d_q, k + 1) == neg.homology_dim(k + 1), "rank %d" % r)
    return rep


def corollary_cyccochain_check(cc, window=None, convention="loday", lam=None, mixed=None):
    """Relations between the eight flavours forced by a cyclic structure.

    At every degree where the tables involved are trusted:
    ``[u^-1]^k = [[u^-1]]^k = lambda^(k-1) = [u]^(k-1)``,
    ``[[u,u^-1]^k = [[u,u^-1]]^k`` and ``[u,u^-1]^k = [u,u^-1]]^k = 0``.
    ``mixed`` and ``lam`` may be supplied to run the same comparison on a
    reduced mixed complex paired with its own Connes table.
    """
    window = Window(-4, 4) if window is None else window
    m = mixed if mixed is not None else to_mixed(cc, convention)
    lo, hi = window.degree_lo, window.degree_hi
    t = {fl: flavour_homology(m, fl, window) for fl in Flavour}
    if lam is None:
        lam = connes_homology(cc, lo - 1, hi, convention)
    rep = Report("flavour relations for a cyclic complex (%s)" % (cc.name if cc else m.name))

    def ok(fl, k):
        return t[fl].rows.get(k) is not None and t[fl].trust(k) != "truncated"

    for k in range(lo, hi + 1):
        if all(ok(fl, k) for fl in (Flavour.POLY_UINV, Flavour.SERIES_UINV)) and \
                ok(Flavour.POLY_U, k - 1) and lam.get(k - 1, (0, "truncated"))[1] != "truncated":
            vals = (t[Flavour.POLY_UINV].dim(k), t[Flavour.SERIES_UINV].dim(k),
                    lam[k - 1][0], t[Flavour.POLY_U].dim(k - 1))
            rep.add("[u^-1] = [[u^-1]] = lambda[-1] = [u][-1] in degree %d" % k,
                    len(set(vals)) == 1, "dims %s" % (vals,))
        if ok(Flavour.SERIES_U_POLY_UINV, k) and ok(Flavour.LAURENT_SERIES, k):
            a, b = t[Flavour.SERIES_U_POLY_UINV].dim(k), t[Flavour.LAURENT_SERIES].dim(k)
            rep.add("[[u,u^-1] = [[u,u^-1]] in degree %d" % k, a == b, "dims %d, %d" % (a, b))
        for fl in (Flavour.LAURENT_POLY, Flavour.POLY_U_SERIES_UINV):
            if ok(fl, k):
                rep.add("%s vanishes in degree %d" % (fl, k), t[fl].dim(k) == 0,
                        "dim %d" % t[fl].dim(k))
    if not rep.checks:
        rep.add("at least one trusted degree", False)
    return rep


# ---------------------------------------------------------------------------
# polynomial resolution

@dataclass
class Resolution:
    """``c = sum_k columns[k] theta^-k`` with ``delta_theta c = x``."""

    columns: dict
    weights: list
    verified: bool = False
    ops: object = field(default=None, repr=False)

    @property
    def length(self):
        return max(self.columns) if self.columns else 0


def _weight(ops, combo):
    return max((ops.level[l] for l in combo), default=-1)


def _level_parts(ops, combo):
    parts = {}
    for l, v in combo.items():
        parts.setdefault(ops.level[l], {})[l] = v
    return parts


def _solve_one_minus_t(ops, z):
    """A preimage of ``z`` under ``1 - t``, level by level, or ``None``."""
    out = {}
    for n, part in sorted(_level_parts(ops, z).items()):
        k = ops.cc.total_degree(next(iter(part)))
        labels = [l for l in ops.space.labels(k) if ops.level[l] == n]
        rows = {l: i for i, l in enumerate(labels)}
        cols = [{rows[t]: v for t, v in ops.one_minus_t.image(l).items()} for l in labels]
        x = solve(SparseMatrix(len(labels), len(labels), cols),
                  {rows[l]: v for l, v in part.items()})
        if x is None:
            return None
        for i, v in x.items():
            out[labels[i]] = v
    return out


def _solve_n(ops, z):
    """``N^-1`` on ``im N`` as multiplication by ``1/(1+n)`` at level ``n``."""
    return {l: Fraction(v) / (ops.level[l] + 1) for l, v in z.items()}


def _delta_ver(ops, combo, col):
    # column index -col; even columns carry d+b, odd ones -(d+b')
    if col % 2 == 0:
        return ops.dH.apply(combo)
    return {l: -v for l, v in ops.dHp.apply(combo).items()}


def _delta_hor(ops, combo, col):
    if col % 2 == 0:
        return ops.N.apply(combo)
    return ops.one_minus_t.apply(combo)


def polynomial_resolution(cc, x, convention="loday", max_steps=None):
    """A finite ``theta^-1``-polynomial ``c`` with ``delta_theta c = x``.

    ``x`` is a ``{label: coeff}`` combination; it must be ``(d+b)``-closed and
    lie in the image of ``1 - t``.  Preimages under ``N`` use the scaling
    ``1/(1+n)``; preimages under ``1 - t`` are solved level by level.
    """
    x = {l: Fraction(v) for l, v in x.items() if v}
    if not x:
        return Resolution({}, [], True)
    top = max(cc.level(l) for l in x)
    ops = cc.operators(top, convention)
    if ops.dH.apply(x):
        raise NotClosed("x is not closed under d + b")
    k = cc.total_degree(next(iter(x)))
    cols_t = [c for c in ops.one_minus_t.block(k).cols if c]
    xv = ops.space.vector(k, x)
    if rank_of_vectors(cols_t + [xv]) != rank_of_vectors(cols_t):
        raise NotInImage("x is not in the image of 1 - t")
    limit = max_steps if max_steps is not None else 2 * (top + 1) + 2
    columns, weights = {}, []
    c = _solve_one_minus_t(ops, x)
    step = 1
    while c:
        columns[step] = c
        weights.append(_weight(ops, c))
        if step >= limit:
            raise RuntimeError("resolution did not terminate within %d steps" % limit)
        z = _delta_ver(ops, c, step)
        z = {l: -v for l, v in z.items()}
        nxt_col = step + 1
        if not z:
            break
        c = _solve_n(ops, z) if nxt_col % 2 == 0 else _solve_one_minus_t(ops, z)
        if c is None:
            raise RuntimeError("no preimage under the horizontal differential at column %d" % -nxt_col)
        step = nxt_col
    res = Resolution(columns, weights, ops=ops)
    res.verified = apply_delta_theta(ops, columns) == {0: x}
    return res


def apply_delta_theta(ops, columns):
    """``delta_theta`` of ``sum_k columns[k] theta^-k`` as ``{-power: combo}`` (nonzero only)."""
    out = {}
    for k, c in columns.items():
        _combo_add(out.setdefault(k, {}), _delta_ver(ops, c, k))
        _combo_add(out.setdefault(k - 1, {}), _delta_hor(ops, c, k))
    return {k: v for k, v in out.items() if v}
