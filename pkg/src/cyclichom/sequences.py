"""
Exact sequences relating the flavours, checked numerically.

Four families of long exact sequences are examined, one for each choice of
(sub, middle, quotient) flavour triple.  Each family consists of two rows
(the Gysin sequence through ``H(C, delta)`` and the tautological sequence
through the middle flavour) and two columns tying them together.  All maps
are realized at the chain level between finite slices, and ranks on
homology are computed exactly.
"""

from dataclasses import dataclass

from .exactlin import SubquotientPresentation
from .mixed import (Flavour, StagedSlice, Window, _combo_add, default_schedule,
                    homology_dims, stabilize, stage_flavour, staged_rank)
from .report import Report

GYSIN_VARIANTS = {
    "polynomial": (Flavour.POLY_U, Flavour.LAURENT_POLY, Flavour.POLY_UINV),
    "goodwillie": (Flavour.POLY_U, Flavour.POLY_U_SERIES_UINV, Flavour.SERIES_UINV),
    "series": (Flavour.SERIES_U, Flavour.LAURENT_SERIES, Flavour.SERIES_UINV),
    "mixed": (Flavour.SERIES_U, Flavour.SERIES_U_POLY_UINV, Flavour.POLY_UINV),
}


class _PlainNode:
    """``(C, delta)`` viewed as a node of the diagram."""

    def __init__(self, m):
        self.m = m
        self.space = m.space
        self._z = {}

    def cycles(self, k):
        if k not in self._z:
            self._z[k] = self.m.delta.block(k).nullspace()
        return self._z[k]

    def boundaries(self, k):
        return [c for c in self.m.delta.block(k - 1).cols if c]

    def homology_dim(self, k):
        return homology_dims(self.space, self.m.delta, [k])[k]

    def trusted(self, k):
        return all(self.m.is_complete_at(j) for j in (k - 1, k, k + 1))


@dataclass
class _Arrow:
    name: str
    src: str
    tgt: str
    degree: int
    fn: object


def _arrows(m):
    delta_d = m.dd

    def mul_u(lbl):
        c, p = lbl
        return {(c, p + 1): 1}

    def proj0(lbl):
        c, p = lbl
        return {c: 1} if p == 0 else {}

    def ident(lbl):
        return {lbl: 1}

    def d_into_s(c):
        return {(t, 0): v for t, v in delta_d.image(c).items()}

    def d0(lbl):
        # Q -> C/imD (constant term), then D, then the inclusion at u^0
        c, p = lbl
        if p != 0:
            return {}
        return d_into_s(c)

    def d0_plain(lbl):
        c, p = lbl
        return dict(delta_d.image(c)) if p == 0 else {}

    def incl0(c):
        return {(c, 0): 1}

    def p_after_u(lbl):
        c, p = lbl
        return {(c, p + 1): 1}

    return {
        "u_S": _Arrow("u", "S", "S", 2, mul_u),
        "u_SM": _Arrow("i u", "S", "M", 2, mul_u),
        "u_Q": _Arrow("u", "Q", "Q", 2, mul_u),
        "u0": _Arrow("u=0", "S", "C", 0, proj0),
        "D": _Arrow("D", "C", "S", -1, d_into_s),
        "i": _Arrow("i", "S", "M", 0, ident),
        "p": _Arrow("p", "M", "Q", 0, ident),
        "D0": _Arrow("D_0", "Q", "S", -1, d0),
        "D0C": _Arrow("D_0", "Q", "C", -1, d0_plain),
        "iC": _Arrow("i", "C", "Q", 0, incl0),
        "pu": _Arrow("p u", "M", "Q", 2, p_after_u),
    }


# (node name, node degree as offset from k, incoming arrow, outgoing arrow)
_EXACTNESS = [
    ("gysin", "S", 0, "u_S", "u0"),
    ("gysin", "C", 0, "u0", "D"),
    ("gysin", "S", -1, "D", "u_S"),
    ("tautological", "M", 0, "u_SM", "p"),
    ("tautological", "Q", 0, "p", "D0"),
    ("tautological", "S", -1, "D0", "u_SM"),
    ("column Q-C-Q", "C", 0, "D0C", "iC"),
    ("column Q-C-Q", "Q", 0, "iC", "u_Q"),
    ("column Q-C-Q", "Q", 2, "u_Q", "D0C"),
    ("column Q-S-M", "S", 0, "D0", "i"),
    ("column Q-S-M", "M", 0, "i", "pu"),
    ("column Q-S-M", "Q", 2, "pu", "D0"),
]

# squares: two paths from node A (degree offset) that must agree on homology
_SQUARES = [
    ("S -> M -> Q equals S -> C -> Q", "S", 0, ("i", "p"), ("u0", "iC")),
    ("C -> Q -> S equals C -> S", "C", 0, ("iC", "D0"), ("D",)),
    ("Q -> S -> C equals Q -> C", "Q", 1, ("D0", "u0"), ("D0C",)),
    ("M -> Q -> Q equals p u", "M", 0, ("p", "u_Q"), ("pu",)),
]


def _compose_fn(arrows, names):
    def fn(lbl):
        cur = {lbl: 1}
        for n in names:
            nxt = {}
            for l, v in cur.items():
                _combo_add(nxt, arrows[n].fn(l), v)
            cur = nxt
        return cur
    return fn


def gysin_check(m, variant="polynomial", window=None, schedule=None):
    """Exactness of the Gysin and tautological sequences and commutativity of the squares.

    Checks run at every degree in ``window`` where every node involved is
    trusted (exact, or stabilized along ``schedule``).  Returns a report with
    one entry per (relation, degree).
    """
    s_fl, m_fl, q_fl = GYSIN_VARIANTS[variant]
    window = Window(-4, 4) if window is None else window
    schedule = default_schedule(window) if schedule is None else list(schedule)
    big = Window(window.degree_lo - 2, window.degree_hi + 3, window.margin,
                 window.upower_lo, window.upower_hi, window.cap)
    big_sched = [Window(big.degree_lo, big.degree_hi, big.margin, w.upower_lo, w.upower_hi, w.cap)
                 for w in schedule]
    trust = {}
    for key, fl in (("S", s_fl), ("M", m_fl), ("Q", q_fl)):
        t = stabilize(m, fl, big, big_sched)
        trust[key] = {k: t.trust(k) in ("exact", "stabilized") for k in t.degrees}
    final = big_sched[-1] if big_sched else big
    nodes = {key: stage_flavour(m, fl, final)
             for key, fl in (("S", s_fl), ("M", m_fl), ("Q", q_fl))}
    mm = nodes["S"].outer.mixed
    plain = _PlainNode(mm.ensure(big.degree_lo - 1, big.degree_hi + 1))
    nodes["C"] = StagedSlice(plain, plain)
    trust["C"] = {k: plain.trusted(k) for k in range(big.degree_lo, big.degree_hi + 1)}
    arrows = _arrows(mm)

    def ok(node, k):
        return trust[node].get(k, False)

    rep = Report("Gysin/tautological sequences (%s: %s, %s, %s)" % (variant, s_fl, m_fl, q_fl))
    checked = 0
    for k in range(window.degree_lo, window.degree_hi + 1):
        for seq, node, off, a_in, a_out in _EXACTNESS:
            fi, fo = arrows[a_in], arrows[a_out]
            x = k + off
            a = x - fi.degree
            b = x + fo.degree
            if not (ok(fi.src, a) and ok(node, x) and ok(fo.tgt, b)):
                continue
            X, A, B = nodes[node], nodes[fi.src], nodes[fo.tgt]
            r_in = staged_rank(fi.fn, A, X, a, fi.degree)
            r_out = staged_rank(fo.fn, X, B, x, fo.degree)
            r_comp = staged_rank(_compose_fn(arrows, (a_in, a_out)), A, B, a,
                                 fi.degree + fo.degree)
            dim = X.homology_dim(x)
            checked += 1
            rep.add("%s exact at %s^%d" % (seq, node, x), r_in + r_out == dim and r_comp == 0,
                    "rank in %d + rank out %d vs dim %d, composite rank %d"
                    % (r_in, r_out, dim, r_comp))
        for name, node, off, p1, p2 in _SQUARES:
            x = k + off
            path_nodes = [(node, x)]
            deg = x
            for n in p1:
                deg += arrows[n].degree
                path_nodes.append((arrows[n].tgt, deg))
            deg2 = x
            for n in p2:
                deg2 += arrows[n].degree
                path_nodes.append((arrows[n].tgt, deg2))
            if not all(ok(nd, d) for nd, d in path_nodes):
                continue
            end_node, end_deg = path_nodes[len(p1)]
            X, E = nodes[node], nodes[end_node]
            diff_fn = _compose_fn(arrows, p1)
            other = _compose_fn(arrows, p2)

            def delta_fn(l, f1=diff_fn, f2=other):
                return _combo_add(dict(f1(l)), f2(l), -1)

            r = staged_rank(delta_fn, X, E, x, end_deg - x)
            checked += 1
            rep.add("square %s at degree %d" % (name, x), r == 0,
                    "difference has rank %d on homology" % r)
    if not checked:
        rep.add("at least one trusted degree", False, "no degree in the window was trusted")
    return rep


# ---------------------------------------------------------------------------
# subquotients of C determined by D

SUBQUOTIENTS = ("imD", "kerD", "kerD/imD", "C/imD", "C/kerD", "C")


def d_subquotient(m, which, degrees):
    """Presentation of a ``D``-defined subquotient of ``C`` over ``degrees`` (padded by one)."""
    lo, hi = min(degrees) - 1, max(degrees) + 1
    m = m.ensure(lo - 1, hi + 1)
    im, ker, full = {}, {}, {}
    for k in range(lo, hi + 1):
        im[k] = [c for c in m.dd.block(k + 1).cols if c]
        ker[k] = m.dd.block(k).nullspace()
        full[k] = [{i: 1} for i in range(m.space.dim(k))]
    sub, den = {
        "imD": (im, {}),
        "kerD": (ker, {}),
        "kerD/imD": (ker, im),
        "C/imD": (full, im),
        "C/kerD": (full, ker),
        "C": (full, {}),
    }[which]
    return m, SubquotientPresentation(m.space, sub, den)


def d_subquotient_homology(m, which, degrees):
    """``delta``-homology dimensions of ``im D``, ``ker D`` and their quotients."""
    degrees = list(degrees)
    mm, sq = d_subquotient(m, which, degrees)
    return {k: sq.homology_dim(mm.delta, k) for k in degrees}


def d_subquotient_table(m, degrees):
    return {w: d_subquotient_homology(m, w, degrees) for w in SUBQUOTIENTS}
