"""
Mixed complexes and the eight flavours of their cyclic homology.

A mixed complex is a cochain complex ``(C, delta)`` with an extra
anticommuting differential ``D`` of degree -1.  Its flavours are
subquotients of ``C[[u, u^-1]]`` (``|u| = 2``) with differential
``delta + u D``.  Every flavour is computed on a finite *slice*: a set of
basis pairs ``(c, i)`` (standing for ``c u^i``) cut out by linear
inequalities in ``(i, total degree, weight)``.  Each inequality either
defines a subcomplex or a quotient, so the slice is a subquotient on which
the projected differential still squares to zero.

Complexes that are infinite-dimensional overall are represented lazily: a
:class:`MixedComplex` holds a finite materialization plus an ``extend``
callback that rebuilds a larger one on demand.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import ceil, floor

from .exactlin import GradedMap, GradedSpace, SparseMatrix, induced_rank, solve
from .report import Report

DEFAULT_CAP = 6


class InvalidComplex(ValueError):
    """Raised when operator degrees or shapes are inconsistent."""


class InvalidWindow(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


# ---------------------------------------------------------------------------
# the complex itself

def _combo_add(acc, combo, scale=1):
    for l, v in combo.items():
        s = acc.get(l, 0) + scale * v
        if s:
            acc[l] = s
        else:
            acc.pop(l, None)
    return acc


class MixedComplex:
    """A finite materialization of a mixed complex.

    ``complete`` is ``None`` when ``space`` is the whole complex; otherwise a
    pair ``(lo, hi)`` (either end may be ``None`` for unbounded) of degrees in
    which the materialization agrees with the full complex.  ``support`` bounds
    the degrees in which the full complex can be nonzero.  ``weight`` assigns
    to each label a nonnegative integer that ``delta`` does not raise and ``D``
    raises by at most one.  When the complex is not finite in each degree,
    ``weight_cap`` records the largest weight present and ``degree_finite`` is
    False.
    """

    def __init__(self, space, delta, dd, *, support=None, complete=None,
                 weight=None, weight_cap=None, degree_finite=True, extend=None, name=""):
        if delta.degree != 1 or dd.degree != -1:
            raise InvalidComplex("delta must have degree +1 and D degree -1")
        for m, what in ((delta, "delta"), (dd, "D")):
            if m.source != space or m.target != space:
                raise InvalidComplex("%s is not an endomorphism of the basis" % what)
        self.space = space
        self.delta = delta
        self.dd = dd
        if support is None:
            if complete is None:
                ds = space.degrees
                support = (ds[0], ds[-1]) if ds else (0, -1)
            else:
                support = (None, None)
        self.support = tuple(support)
        self.complete = complete
        self.weight = weight
        self.weight_cap = weight_cap
        self.degree_finite = degree_finite
        self.extend = extend
        self.name = name

    @classmethod
    def from_images(cls, basis, delta, dd, **kw):
        """Build from ``{degree: labels}`` and ``{label: {label: coeff}}`` images.

        An image landing in the wrong degree raises :class:`InvalidComplex`.
        When ``kw`` declares the materialization incomplete, images that leave
        the materialized basis are dropped.
        """
        space = GradedSpace(basis)
        strict = kw.get("complete") is None and kw.get("weight_cap") is None
        try:
            dlt = GradedMap.from_images(space, space, 1, delta, strict=strict)
            ddm = GradedMap.from_images(space, space, -1, dd, strict=strict)
        except ValueError as e:
            raise InvalidComplex(str(e)) from None
        return cls(space, dlt, ddm, **kw)

    def __repr__(self):
        return "MixedComplex(%s%s)" % (self.name + ", " if self.name else "",
                                       {k: self.space.dim(k) for k in self.space.degrees})

    def dim(self, k):
        return self.space.dim(k)

    def covers(self, jlo, jhi, wmax=None):
        if self.weight_cap is not None and wmax is not None and wmax > self.weight_cap:
            return False
        if self.complete is None:
            return True
        slo, shi = self.support
        if slo is not None:
            jlo = max(jlo, slo)
        if shi is not None:
            jhi = min(jhi, shi)
        if jlo > jhi:
            return True
        clo, chi = self.complete
        return (clo is None or clo <= jlo) and (chi is None or jhi <= chi)

    def is_complete_at(self, j):
        if self.complete is None:
            return True
        slo, shi = self.support
        if (slo is not None and j < slo) or (shi is not None and j > shi):
            return True
        clo, chi = self.complete
        return (clo is None or clo <= j) and (chi is None or j <= chi)

    def ensure(self, jlo, jhi, wmax=None):
        """Return a materialization complete on degrees ``jlo..jhi``."""
        if self.covers(jlo, jhi, wmax):
            return self
        if self.extend is None:
            raise WindowTooSmall("complex %r is not materialized on degrees %d..%d"
                                 % (self.name, jlo, jhi))
        out = self.extend(jlo, jhi, wmax)
        if not out.covers(jlo, jhi, wmax):
            raise WindowTooSmall("extension of %r did not cover %d..%d" % (self.name, jlo, jhi))
        return out

    def weight_of(self, label):
        return 0 if self.weight is None else self.weight.get(label, 0)


def validate_mixed(m, degrees=None):
    """Check ``delta^2 = D^2 = delta D + D delta = 0`` label by label.

    Labels whose images could be affected by the materialization boundary are
    skipped.  Each failing identity reports the first offending basis label.
    """
    rep = Report("mixed complex axioms" + (" (%s)" % m.name if m.name else ""))
    degs = m.space.degrees if degrees is None else [k for k in degrees if m.space.dim(k)]

    def trusted(label, k):
        if m.weight_cap is not None and m.weight_of(label) >= m.weight_cap - 1:
            return False
        return all(m.is_complete_at(j) for j in (k - 2, k - 1, k, k + 1, k + 2))

    ops = {
        "delta^2 = 0": lambda l: m.delta.apply(m.delta.image(l)),
        "D^2 = 0": lambda l: m.dd.apply(m.dd.image(l)),
        "delta D + D delta = 0": lambda l: _combo_add(dict(m.delta.apply(m.dd.image(l))),
                                                      m.dd.apply(m.delta.image(l))),
    }
    for name, op in ops.items():
        witness = None
        for k in degs:
            for l in m.space.labels(k):
                if trusted(l, k) and op(l):
                    witness = l
                    break
            if witness is not None:
                break
        rep.add(name, witness is None, "" if witness is None else "fails on %r" % (witness,))
    return rep


# ---------------------------------------------------------------------------
# flavours and windows

class Flavour(Enum):
    LAURENT_SERIES = "[[u,u^-1]]"
    SERIES_U_POLY_UINV = "[[u,u^-1]"
    POLY_U_SERIES_UINV = "[u,u^-1]]"
    LAURENT_POLY = "[u,u^-1]"
    SERIES_U = "[[u]]"
    POLY_U = "[u]"
    SERIES_UINV = "[[u^-1]]"
    POLY_UINV = "[u^-1]"

    @property
    def upper(self):
        """How large powers of ``u`` are handled: series, poly or hard (none)."""
        return _SIDES[self][1]

    @property
    def lower(self):
        return _SIDES[self][0]

    @property
    def notation(self):
        return self.value

    @classmethod
    def parse(cls, text):
        key = text.strip().lower().replace(" ", "").replace("{", "").replace("}", "").replace("⁻¹", "^-1").replace("-1", "^-1")
        key = key.replace("^^", "^").replace("_", "-")
        if key in _ALIASES:
            return _ALIASES[key]
        for f in cls:
            if f.value == key or f.name.lower() == key.replace("-", "_"):
                return f
        raise ValueError("unknown flavour %r" % text)

    def __str__(self):
        return self.value


# (lower side, upper side); "hard" means the powers stop at zero on that side
_SIDES = {
    Flavour.LAURENT_SERIES: ("series", "series"),
    Flavour.SERIES_U_POLY_UINV: ("poly", "series"),
    Flavour.POLY_U_SERIES_UINV: ("series", "poly"),
    Flavour.LAURENT_POLY: ("poly", "poly"),
    Flavour.SERIES_U: ("hard", "series"),
    Flavour.POLY_U: ("hard", "poly"),
    Flavour.SERIES_UINV: ("series", "hard"),
    Flavour.POLY_UINV: ("poly", "hard"),
}

_ALIASES = {
    "borel": Flavour.SERIES_U,
    "negative": Flavour.SERIES_U,
    "goodwillie": Flavour.SERIES_U_POLY_UINV,
    "periodic": Flavour.SERIES_U_POLY_UINV,
    "nilpotent": Flavour.POLY_UINV,
    "positive": Flavour.POLY_UINV,
    "jones-petrack": Flavour.LAURENT_SERIES,
}


@dataclass(frozen=True)
class Window:
    """Degrees to report, a degree margin, the ``u``-power box and a weight cap."""

    degree_lo: int = 0
    degree_hi: int = 8
    margin: int = 2
    upower_lo: int = -8
    upower_hi: int = 8
    cap: int = None

    def __post_init__(self):
        if self.degree_lo > self.degree_hi:
            raise InvalidWindow("empty degree range")
        if self.margin < 1:
            raise InvalidWindow("margin must be at least 1")
        if not self.upower_lo <= 0 <= self.upower_hi:
            raise InvalidWindow("u-power box must contain 0")
        if self.cap is not None and self.cap < 0:
            raise InvalidWindow("cap must be nonnegative")

    @property
    def slice_lo(self):
        return self.degree_lo - 2 - self.margin

    @property
    def slice_hi(self):
        return self.degree_hi + self.margin

    def widened(self, step):
        return replace(self, upower_lo=self.upower_lo - step, upower_hi=self.upower_hi + step,
                       cap=None if self.cap is None else self.cap + step)


def default_schedule(window, steps=(4, 8)):
    return [window.widened(s) for s in steps]


# ---------------------------------------------------------------------------
# slices

@dataclass(frozen=True)
class _Ineq:
    """Keep ``(c, p)`` in slice degree ``k`` iff ``ap*p + ak*k + aw*weight(c) <= b``."""

    ap: int
    ak: int
    aw: int
    b: int
    kind: str  # "sub", "quot" or "hard"

    def holds(self, p, k, w=0):
        return self.ap * p + self.ak * k + self.aw * w <= self.b


def _p_range(ineqs, k, support, pdeg):
    """Integer interval of powers allowed at degree ``k`` (ignoring weights)."""
    lo, hi = None, None
    for q in ineqs:
        if q.aw or not q.ap:
            continue
        bound = Fraction(q.b - q.ak * k, q.ap)
        if q.ap > 0:
            v = floor(bound)
            hi = v if hi is None else min(hi, v)
        else:
            v = ceil(bound)
            lo = v if lo is None else max(lo, v)
    slo, shi = support
    if shi is not None:  # k - pdeg*p <= shi
        v = ceil(Fraction(k - shi, pdeg))
        lo = v if lo is None else max(lo, v)
    if slo is not None:
        v = floor(Fraction(k - slo, pdeg))
        hi = v if hi is None else min(hi, v)
    return lo, hi


@dataclass
class PowerSlice:
    """A finite subquotient of ``C[[x, x^-1]]`` for a formal variable ``x``.

    ``space`` has labels ``(c, p)``; ``differential`` is the projected
    ``delta + x^{pdeg/2}-twisted D``; ``shift`` is multiplication by ``x``.
    ``exact_degrees`` lists slice degrees where nothing of the untruncated
    flavour was cut away.
    """

    mixed: MixedComplex
    pdeg: int
    klo: int
    khi: int
    ineqs: tuple
    space: GradedSpace
    differential: GradedMap
    shift: GradedMap
    uncut: set
    _cache: dict = field(default_factory=dict, repr=False)

    def contains(self, c, p, k):
        w = self.mixed.weight_of(c)
        return self.klo <= k <= self.khi and all(q.holds(p, k, w) for q in self.ineqs)

    # homology bookkeeping ---------------------------------------------------
    def cycles(self, k):
        key = ("Z", k)
        if key not in self._cache:
            self._cache[key] = self.differential.block(k).nullspace()
        return self._cache[key]

    def boundaries(self, k):
        key = ("B", k)
        if key not in self._cache:
            self._cache[key] = [c for c in self.differential.block(k - 1).cols if c]
        return self._cache[key]

    def drank(self, k):
        key = ("r", k)
        if key not in self._cache:
            self._cache[key] = self.differential.block(k).rank()
        return self._cache[key]

    def homology_dim(self, k):
        return self.space.dim(k) - self.drank(k) - self.drank(k - 1)

    def map_rank(self, f_block, k_src, target, k_tgt):
        """Rank on homology of a chain map block from this slice to ``target``."""
        return induced_rank(f_block, self.cycles(k_src), target.boundaries(k_tgt))

    def trusted(self, k, back=3, ahead=1):
        return all(j in self.uncut for j in range(k - back, k + ahead + 1))


def _u_images(m, c, p):
    img = {(t, p): v for t, v in m.delta.image(c).items()}
    for t, v in m.dd.image(c).items():
        key = (t, p + 1)
        img[key] = img.get(key, 0) + v
    return img


def _build_power_slice(m, pdeg, klo, khi, ineqs, hard, wmax_of, images_fn=_u_images,
                       shift_step=1):
    """Materialize ``m`` and assemble the slice cut out by ``ineqs``.

    ``hard`` are the inequalities of the untruncated flavour; a slice degree
    is uncut when every basis pair allowed by ``hard`` (and the support of the
    complex) is also allowed by ``ineqs``.
    """
    support = m.support
    ranges = {k: _p_range(ineqs, k, support, pdeg) for k in range(klo, khi + 1)}
    for k, (lo, hi) in ranges.items():
        if lo is None or hi is None:
            raise WindowTooSmall("window does not bound the powers at degree %d" % k)
    js = [k - pdeg * p for k, (lo, hi) in ranges.items() for p in (lo, hi) if lo <= hi]
    if js:
        pmax = max(hi for lo, hi in ranges.values() if lo <= hi)
        m = m.ensure(min(js), max(js), wmax_of(pmax))
    basis = {}
    weight_dropped = set()
    for k, (lo, hi) in ranges.items():
        labels = []
        for p in range(lo, hi + 1):
            for c in m.space.labels(k - pdeg * p):
                w = m.weight_of(c)
                if all(q.holds(p, k, w) for q in ineqs):
                    labels.append((c, p))
                else:
                    weight_dropped.add(k)
        basis[k] = labels
    space = GradedSpace(basis)
    images, shifts = {}, {}
    for k in space.degrees:
        for (c, p) in space.labels(k):
            img = images_fn(m, c, p)
            images[(c, p)] = {l: v for l, v in img.items() if v and l in space}
            nxt = (c, p + shift_step)
            shifts[(c, p)] = {nxt: 1} if nxt in space else {}
    diff = GradedMap.from_images(space, space, 1, images, strict=False)
    shift = GradedMap.from_images(space, space, pdeg * shift_step, shifts, strict=False)

    uncut = set()
    for k in range(klo, khi + 1):
        if k in weight_dropped or not m.degree_finite:
            continue
        if _uncut(m, k, ranges[k], hard, pdeg):
            uncut.add(k)
    return PowerSlice(m, pdeg, klo, khi, tuple(ineqs), space, diff, shift, uncut)


def _uncut(m, k, window_range, hard, pdeg):
    tlo, thi = _p_range(hard, k, m.support, pdeg)
    wlo, whi = window_range
    if tlo is not None and thi is not None and tlo > thi:
        return True
    if wlo > whi:
        # nothing kept: uncut only if the true range holds only zero spaces
        if tlo is None or thi is None:
            return False
        return all(m.is_complete_at(k - pdeg * p) and m.dim(k - pdeg * p) == 0
                   for p in range(tlo, thi + 1))
    for side in ("lo", "hi"):
        if side == "lo":
            if tlo is not None and tlo >= wlo:
                continue
            if tlo is None:
                return False
            ps = range(tlo, wlo)
        else:
            if thi is not None and thi <= whi:
                continue
            if thi is None:
                return False
            ps = range(whi + 1, thi + 1)
        for p in ps:
            j = k - pdeg * p
            if not (m.is_complete_at(j) and m.dim(j) == 0):
                return False
    return True


def flavour_inequalities(flavour, window, klo, khi, weighted):
    """The cutting inequalities (and the untruncated ones) for a ``u``-flavour."""
    ineqs, hard = [], []
    lo, hi = flavour.lower, flavour.upper
    if lo == "hard":
        q = _Ineq(-1, 0, 0, 0, "hard")
        ineqs.append(q)
        hard.append(q)
    elif lo == "poly":
        ineqs.append(_Ineq(-1, 0, 0, -window.upower_lo, "sub"))
    else:  # i - k >= upower_lo - khi
        ineqs.append(_Ineq(-1, 1, 0, khi - window.upower_lo, "quot"))
    if hi == "hard":
        q = _Ineq(1, 0, 0, 0, "hard")
        ineqs.append(q)
        hard.append(q)
    elif hi == "series":
        ineqs.append(_Ineq(1, 0, 0, window.upower_hi, "quot"))
    else:  # i - k <= upower_hi - klo
        ineqs.append(_Ineq(1, -1, 0, window.upower_hi - klo, "sub"))
    if weighted is not None:
        ineqs.append(_Ineq(-1, 0, 1, weighted, "sub"))
    return ineqs, hard


def _effective_cap(m, window):
    if window.cap is not None:
        return window.cap if m.weight is not None else None
    return None if m.degree_finite else DEFAULT_CAP


@dataclass
class FlavourSlice:
    flavour: Flavour
    window: Window
    slice: PowerSlice

    @property
    def total(self):
        return self.slice.space

    @property
    def differential(self):
        return self.slice.differential

    @property
    def u_action(self):
        return self.slice.shift

    def trust(self, k):
        return "exact" if self.slice.trusted(k) else "truncated"


def assemble_flavour(m, flavour, window):
    """Finite slice of the ``flavour`` complex of ``m`` for ``window``."""
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    klo, khi = window.slice_lo, window.slice_hi
    cap = _effective_cap(m, window)
    ineqs, hard = flavour_inequalities(flavour, window, klo, khi, cap)
    wmax = (lambda pmax: cap + pmax) if cap is not None else (lambda pmax: None)
    sl = _build_power_slice(m, 2, klo, khi, ineqs, hard, wmax)
    return FlavourSlice(flavour, window, sl)


# ---------------------------------------------------------------------------
# two-stage slices
#
# A truncated slice can carry spurious classes at its edges: cycles whose
# killers lie just outside the window (on sides cut by a subcomplex), or
# boundaries that are missing because their sources were quotiented away.
# Comparing a slice with a larger one through the natural map, and taking
# the rank on homology, discards them.

STAGE_GAP = 4


def resolve_cap(m, window):
    """Pin the weight cap a window will use on ``m``, so that widening moves it."""
    if window.cap is None and not m.degree_finite:
        return replace(window, cap=DEFAULT_CAP)
    return window


def stage_windows(flavour, window, gap=STAGE_GAP):
    """``(inner, outer)`` windows: inner is tighter on sub cuts and looser on quotient cuts."""
    big = window.widened(gap)
    lo_sub = flavour.lower == "poly"
    hi_sub = flavour.upper == "poly"
    inner = replace(window, upower_lo=(window if lo_sub else big).upower_lo,
                    upower_hi=(window if hi_sub else big).upower_hi)
    outer = replace(window, upower_lo=(big if lo_sub else window).upower_lo,
                    upower_hi=(big if hi_sub else window).upower_hi, cap=big.cap)
    return inner, outer


def label_block(fn, src, tgt, k, deg):
    """Matrix of ``fn`` from degree ``k`` of ``src`` to degree ``k + deg`` of ``tgt``.

    Image labels absent from ``tgt`` are dropped.
    """
    tk = k + deg
    cols = []
    for l in src.space.labels(k):
        col = {}
        for t, v in fn(l).items():
            if v and t in tgt.space and tgt.space.degree_of(t) == tk:
                col[tgt.space.index(tk, t)] = v
        cols.append(col)
    return SparseMatrix(tgt.space.dim(tk), src.space.dim(k), cols)


def _same_label(l):
    return {l: 1}


@dataclass
class StagedSlice:
    """A pair of slices of one complex, ``inner`` mapping to ``outer``."""

    inner: object
    outer: object
    _cache: dict = field(default_factory=dict, repr=False)

    def homology_dim(self, k):
        if k not in self._cache:
            self._cache[k] = staged_rank(_same_label, self, self, k, 0)
        return self._cache[k]

    def u_rank(self, k):
        def mul_u(lbl):
            return self.outer.shift.image(lbl) if lbl in self.outer.space else {}
        return staged_rank(mul_u, self, self, k - 2, 2)

    def trusted(self, k):
        return self.inner.trusted(k) and self.outer.trusted(k)


def staged_rank(fn, src, tgt, k, deg):
    """Rank on homology of ``fn`` from ``src.inner`` (degree ``k``) to ``tgt.outer``."""
    blk = label_block(fn, src.inner, tgt.outer, k, deg)
    return induced_rank(blk, src.inner.cycles(k), tgt.outer.boundaries(k + deg))


def stage_flavour(m, flavour, window, gap=STAGE_GAP):
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    w_in, w_out = stage_windows(flavour, resolve_cap(m, window), gap)
    return StagedSlice(assemble_flavour(m, flavour, w_in).slice,
                       assemble_flavour(m, flavour, w_out).slice)


# ---------------------------------------------------------------------------
# tables

@dataclass
class Row:
    degree: int
    dimension: int
    u_rank: int
    trust: str


@dataclass
class ModuleTable:
    """Per-degree dimension, rank of ``u`` into that degree, and a trust flag."""

    flavour: Flavour
    window: Window
    rows: dict

    def dim(self, k):
        return self.rows[k].dimension

    def u_rank(self, k):
        return self.rows[k].u_rank

    def trust(self, k):
        return self.rows[k].trust

    @property
    def degrees(self):
        return sorted(self.rows)

    def dims(self):
        return {k: r.dimension for k, r in sorted(self.rows.items())}

    def nonzero(self):
        return {k: d for k, d in self.dims().items() if d}

    def all_trusted(self):
        return all(r.trust in ("exact", "stabilized") for r in self.rows.values())

    def to_records(self):
        return [{"flavour": str(self.flavour), "degree": r.degree, "dimension": r.dimension,
                 "u_rank": r.u_rank, "trust": r.trust} for r in self.rows.values()]

    def __str__(self):
        lines = ["HC_%s" % self.flavour, "  deg  dim  u-rank  trust"]
        for k in self.degrees:
            r = self.rows[k]
            lines.append("  %3d  %3d  %6d  %s" % (k, r.dimension, r.u_rank, r.trust))
        return "\n".join(lines)


def _raw_table(m, flavour, window):
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    st = stage_flavour(m, flavour, window)
    rows = {}
    for k in range(window.degree_lo, window.degree_hi + 1):
        d = st.homology_dim(k)
        ur = st.u_rank(k) if d else 0
        rows[k] = Row(k, d, ur, "exact" if st.trusted(k) else "truncated")
    return ModuleTable(flavour, window, rows)


def stabilize_values(compute, windows, can_stabilize=True):
    """Run ``compute(window) -> {k: (value, exact)}`` over a schedule.

    The result takes values from the last window.  A degree is ``exact`` when
    the last window computed it exactly, ``stabilized`` when the last two
    windows agree, ``truncated`` otherwise.  Pass ``can_stabilize=False`` for
    complexes that are infinite in each degree: there a word-length cap can
    cut off every series cycle at once, so agreement proves nothing.
    """
    results = [compute(w) for w in windows]
    last = results[-1]
    out = {}
    for k, (val, exact) in last.items():
        if exact:
            out[k] = (val, "exact")
        elif can_stabilize and len(results) > 1 and results[-2].get(k, (None,))[0] == val:
            out[k] = (val, "stabilized")
        else:
            out[k] = (val, "truncated")
    return out


def stabilize(m, flavour, window, schedule=None):
    """Flavour table with trust flags from widening the window along ``schedule``."""
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    schedule = default_schedule(window) if schedule is None else list(schedule)
    windows = [window] + schedule

    def compute(w):
        t = _raw_table(m, flavour, w)
        return {k: ((r.dimension, r.u_rank), r.trust == "exact")
                for k, r in t.rows.items() if window.degree_lo <= k <= window.degree_hi}

    vals = stabilize_values(compute, windows, m.degree_finite)
    rows = {k: Row(k, v[0], v[1], trust) for k, (v, trust) in sorted(vals.items())}
    return ModuleTable(flavour, window, rows)


def flavour_homology(m, flavour, window=None, auto_stabilize=True, schedule=None):
    """Cyclic homology of ``m`` in the given flavour over ``window``.

    With ``auto_stabilize`` the window is widened along ``schedule`` so that
    degrees which are not exact can be reported as stabilized.
    """
    window = Window() if window is None else window
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    if auto_stabilize:
        return stabilize(m, flavour, window, schedule)
    return _raw_table(m, flavour, window)


# ---------------------------------------------------------------------------
# morphisms

class MixedMorphism:
    """Degree-0 map commuting with both differentials, given on basis labels.

    ``images`` is either a dict ``{label: {label: coeff}}`` or a callable
    returning that combination, so it applies to any materialization.
    """

    def __init__(self, source, target, images, name=""):
        self.source = source
        self.target = target
        self._images = images
        self.name = name

    def image(self, label):
        if callable(self._images):
            return self._images(label)
        return self._images.get(label, {})

    def graded_map(self, src, tgt):
        imgs = {l: self.image(l) for l in src.space.all_labels()}
        return GradedMap.from_images(src.space, tgt.space, 0, imgs, strict=False)

    def check(self, degrees):
        src = self.source.ensure(min(degrees) - 1, max(degrees) + 1)
        tgt = self.target.ensure(min(degrees) - 1, max(degrees) + 1)
        rep = Report("mixed morphism" + (" " + self.name if self.name else ""))
        for op_name, s_op, t_op in (("delta", src.delta, tgt.delta), ("D", src.dd, tgt.dd)):
            bad = None
            for k in degrees:
                for l in src.space.labels(k):
                    lhs = t_op.apply(self.image(l))
                    rhs = {}
                    for t, v in s_op.image(l).items():
                        _combo_add(rhs, self.image(t), v)
                    if _combo_add(dict(lhs), rhs, -1):
                        bad = l
                        break
                if bad is not None:
                    break
            rep.add("commutes with " + op_name, bad is None,
                    "" if bad is None else "fails on %r" % (bad,))
        return rep


@dataclass
class MapRow:
    degree: int
    source_dim: int
    target_dim: int
    rank: int
    trust: str

    @property
    def injective(self):
        return self.rank == self.source_dim

    @property
    def surjective(self):
        return self.rank == self.target_dim

    @property
    def bijective(self):
        return self.injective and self.surjective


def morphism_flavour_map(f, flavour, window=None, schedule=None):
    """Ranks of the map induced by ``f`` on a flavour, degree by degree."""
    window = Window() if window is None else window
    if isinstance(flavour, str):
        flavour = Flavour.parse(flavour)
    schedule = default_schedule(window) if schedule is None else list(schedule)

    def compute(w):
        s = stage_flavour(f.source, flavour, w)
        t = stage_flavour(f.target, flavour, w)

        def fn(lbl):
            c, p = lbl
            return {(x, p): v for x, v in f.image(c).items()}

        out = {}
        for k in range(w.degree_lo, w.degree_hi + 1):
            r = staged_rank(fn, s, t, k, 0)
            out[k] = ((s.homology_dim(k), t.homology_dim(k), r), s.trusted(k) and t.trusted(k))
        return out

    vals = stabilize_values(compute, [window] + schedule,
                            f.source.degree_finite and f.target.degree_finite)
    return {k: MapRow(k, v[0], v[1], v[2], trust) for k, (v, trust) in sorted(vals.items())}


# ---------------------------------------------------------------------------
# constructions

def _merge_support(a, b):
    lo = None if a[0] is None or b[0] is None else min(a[0], b[0])
    hi = None if a[1] is None or b[1] is None else max(a[1], b[1])
    return lo, hi


def _intersect_complete(ms):
    if all(m.complete is None for m in ms):
        return None
    lo, hi = None, None
    for m in ms:
        if m.complete is None:
            continue
        clo, chi = m.complete
        if clo is not None:
            lo = clo if lo is None else max(lo, clo)
        if chi is not None:
            hi = chi if hi is None else min(hi, chi)
    return lo, hi


def _assemble(parts, basis, delta, dd, weight, name, extend, shift=0):
    complete = _intersect_complete(parts)
    if complete is not None:
        complete = tuple(None if x is None else x - shift for x in complete)
    support = parts[0].support
    for p in parts[1:]:
        support = _merge_support(support, p.support)
    support = tuple(None if x is None else x - shift for x in support)
    caps = [p.weight_cap for p in parts if p.weight_cap is not None]
    has_w = any(p.weight is not None for p in parts)
    lazy = any(p.extend is not None for p in parts)
    return MixedComplex.from_images(
        basis, delta, dd, support=support, complete=complete,
        weight=weight if has_w else None, weight_cap=min(caps) if caps else None,
        degree_finite=all(p.degree_finite for p in parts),
        extend=extend if lazy else None, name=name)


def direct_sum(a, b):
    basis, delta, dd, weight = {}, {}, {}, {}
    for tag, m in ((0, a), (1, b)):
        for k in m.space.degrees:
            basis.setdefault(k, []).extend((tag, l) for l in m.space.labels(k))
            for l in m.space.labels(k):
                delta[(tag, l)] = {(tag, t): v for t, v in m.delta.image(l).items()}
                dd[(tag, l)] = {(tag, t): v for t, v in m.dd.image(l).items()}
                weight[(tag, l)] = m.weight_of(l)

    def extend(jlo, jhi, wmax):
        return direct_sum(a.ensure(jlo, jhi, wmax), b.ensure(jlo, jhi, wmax))

    return _assemble([a, b], basis, delta, dd, weight, "(%s)+(%s)" % (a.name, b.name), extend)


def shift(m, s):
    """``m[s]``: degree ``k`` holds the old degree ``k + s``; both maps pick up ``(-1)^s``."""
    sign = -1 if s % 2 else 1
    basis = {k - s: m.space.labels(k) for k in m.space.degrees}
    delta = {l: {t: sign * v for t, v in m.delta.image(l).items()} for l in m.space.all_labels()}
    dd = {l: {t: sign * v for t, v in m.dd.image(l).items()} for l in m.space.all_labels()}
    weight = dict(m.weight) if m.weight is not None else None

    def extend(jlo, jhi, wmax):
        return shift(m.ensure(jlo + s, jhi + s, wmax), s)

    return _assemble([m], basis, delta, dd, weight or {}, "%s[%d]" % (m.name, s), extend, shift=s)


def cone(f):
    """Mapping cone of a mixed morphism ``f: A -> B`` (``A[1] + B``)."""
    a, b = f.source, f.target
    basis, delta, dd, weight = {}, {}, {}, {}
    for k in a.space.degrees:
        basis.setdefault(k - 1, []).extend((0, l) for l in a.space.labels(k))
    for k in b.space.degrees:
        basis.setdefault(k, []).extend((1, l) for l in b.space.labels(k))
    for l in a.space.all_labels():
        img = {(0, t): -v for t, v in a.delta.image(l).items()}
        img.update({(1, t): v for t, v in f.image(l).items() if t in b.space})
        delta[(0, l)] = img
        dd[(0, l)] = {(0, t): -v for t, v in a.dd.image(l).items()}
        weight[(0, l)] = a.weight_of(l)
    for l in b.space.all_labels():
        delta[(1, l)] = {(1, t): v for t, v in b.delta.image(l).items()}
        dd[(1, l)] = {(1, t): v for t, v in b.dd.image(l).items()}
        weight[(1, l)] = b.weight_of(l)

    def extend(jlo, jhi, wmax):
        g = MixedMorphism(a.ensure(jlo, jhi + 1, wmax), b.ensure(jlo, jhi, wmax), f.image)
        return cone(g)

    out = _assemble([a, b], basis, delta, dd, weight, "cone(%s)" % f.name, extend)
    a_support = tuple(None if x is None else x - 1 for x in a.support)
    out.support = _merge_support(a_support, b.support)
    if a.complete is None and b.complete is None:
        return out
    # the A part sits one degree lower, so completeness shrinks by one on top
    if out.complete is not None:
        lo, hi = out.complete
        out.complete = (lo, None if hi is None else hi - 1)
    return out


def change_basis(m, matrices):
    """Conjugate by invertible per-degree matrices ``{k: rows}`` acting on coordinates."""
    basis = {k: [("e", k, i) for i in range(m.space.dim(k))] for k in m.space.degrees}
    new_space = GradedSpace(basis)
    P = {}
    for k in m.space.degrees:
        n = m.space.dim(k)
        P[k] = SparseMatrix.from_dense(matrices[k]) if k in matrices else SparseMatrix.identity(n)

    def conj(op, deg):
        blocks = {}
        for k in m.space.degrees:
            tk = k + deg
            if not m.space.dim(tk):
                continue
            prod = op.block(k) @ P[k]
            cols = []
            for c in prod.cols:
                x = solve(P[tk], c)
                if x is None:
                    raise ValueError("change of basis matrix is singular in degree %d" % tk)
                cols.append(x)
            blocks[k] = SparseMatrix(new_space.dim(tk), new_space.dim(k), cols)
        return GradedMap(new_space, new_space, deg, blocks)
    return MixedComplex(new_space, conj(m.delta, 1), conj(m.dd, -1), name=m.name + "'")


def trivial_mixed(lo, hi):
    """``R`` in every degree of ``lo..hi`` with both differentials zero."""
    basis = {k: [("t", k)] for k in range(lo, hi + 1)}
    return MixedComplex.from_images(basis, {}, {}, name="trivial[%d,%d]" % (lo, hi))


def finite_mixed(basis, delta, dd, name=""):
    return MixedComplex.from_images(basis, delta, dd, name=name)


def homology_dims(space, diff, degrees):
    """Dimensions of the homology of a plain complex over ``degrees``."""
    return {k: space.dim(k) - diff.block(k).rank() - diff.block(k - 1).rank() for k in degrees}
