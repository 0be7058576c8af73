"""
Exact sparse linear algebra over the rationals.

Matrices are stored column-wise as dicts ``row -> Fraction``.  Ranks are
computed by fraction-free elimination on integer rows with Markowitz pivot
selection; kernels and linear solves go through a reduced echelon form over
``Fraction``.  Nothing here ever touches floating point.
"""

from fractions import Fraction
from math import gcd, lcm


class CompositionNotZero(ValueError):
    pass


class NotAChainMap(ValueError):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def label_key(label):
    """Deterministic sort key for basis labels (strings sort lexicographically)."""
    if isinstance(label, str):
        return (0, label)
    if isinstance(label, tuple):
        return (1, tuple(label_key(x) for x in label))
    if isinstance(label, int):
        return (2, label)
    return (3, repr(label))


# ---------------------------------------------------------------------------
# sparse matrices

class SparseMatrix:
    """Column-sparse rational matrix."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows, ncols, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        else:
            cols = [{r: _frac(v) for r, v in c.items() if v} for c in cols]
        assert len(cols) == ncols
        self.cols = cols

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows, cols):
        return cls(nrows, len(cols), cols)

    def to_dense(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def is_zero(self):
        return all(not c for c in self.cols)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    @property
    def T(self):
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, cols)

    def apply(self, vec):
        """Multiply by a sparse vector given as ``{col: value}``."""
        out = {}
        for j, a in vec.items():
            if not a:
                continue
            for i, v in self.cols[j].items():
                s = out.get(i, 0) + a * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                s = c.get(i, 0) + v
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            cols.append(c)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = _frac(a)
        if not a:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            [{i: a * v for i, v in c.items()} for c in self.cols])

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    def __repr__(self):
        return "SparseMatrix(%d x %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())

    def rank(self, pivoting="markowitz"):
        return rank_of_vectors(self.cols, pivoting=pivoting)

    def nullspace(self):
        return nullspace(self)


def hstack(nrows, *blocks):
    """Concatenate column lists / matrices sharing ``nrows`` rows."""
    cols = []
    for b in blocks:
        cols.extend(b.cols if isinstance(b, SparseMatrix) else b)
    return SparseMatrix(nrows, len(cols), cols)


# ---------------------------------------------------------------------------
# fraction-free rank

def _integer_row(vec):
    den = 1
    for v in vec.values():
        den = lcm(den, v.denominator)
    row = {k: int(v * den) for k, v in vec.items() if v}
    return _primitive(row)


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def rank_of_vectors(vectors, pivoting="markowitz"):
    """Rank of the span of sparse vectors ``{index: value}``.

    Each vector becomes an integer row (denominators cleared, content
    removed); elimination is fraction-free: ``r <- p*r - a*pivot_row``
    followed by division by the row content.  With ``pivoting="markowitz"``
    the pivot minimises ``(row_len-1)*(col_count-1)``, ties broken by the
    lowest ``(row, column)``; ``"natural"`` takes rows in order with their
    leading index as pivot.
    """
    rows = {}
    for r, v in enumerate(vectors):
        if v:
            row = _integer_row(v)
            if row:
                rows[r] = row
    if pivoting == "natural":
        return _rank_natural(rows)
    if pivoting != "markowitz":
        raise ValueError("unknown pivoting %r" % pivoting)

    colrows = {}
    for r, row in rows.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)

    rank = 0
    while rows:
        best = None
        for r in sorted(rows):
            row = rows[r]
            rl = len(row) - 1
            for c in sorted(row):
                cost = rl * (len(colrows[c]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, r, c)
                    if cost == 0:
                        break
            if best[0] == 0:
                break
        _, pr, pc = best
        prow = rows.pop(pr)
        for c in prow:
            colrows[c].discard(pr)
        p = prow[pc]
        for r in sorted(colrows[pc]):
            row = rows[r]
            a = row[pc]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            new = {}
            for c in set(row) | set(prow):
                v = mp * row.get(c, 0) - ma * prow.get(c, 0)
                if v:
                    new[c] = v
            for c in row:
                if c not in new:
                    colrows[c].discard(r)
            if new:
                new = _primitive(new)
                for c in new:
                    colrows.setdefault(c, set()).add(r)
                rows[r] = new
            else:
                del rows[r]
        rank += 1
    return rank


def _rank_natural(rows):
    pivots = {}
    rank = 0
    for r in sorted(rows):
        row = dict(rows[r])
        while row:
            c = min(row)
            if c not in pivots:
                pivots[c] = row
                rank += 1
                break
            prow = pivots[c]
            p, a = prow[c], row[c]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            new = {}
            for cc in set(row) | set(prow):
                v = mp * row.get(cc, 0) - ma * prow.get(cc, 0)
                if v:
                    new[cc] = v
            row = _primitive(new) if new else new
    return rank


def rank(m, k=None, pivoting="markowitz"):
    """Rank of a matrix, or of the degree-``k`` block of a :class:`GradedMap`."""
    if isinstance(m, GradedMap):
        return m.block(k).rank(pivoting)
    return m.rank(pivoting)


# ---------------------------------------------------------------------------
# reduced echelon form over Fraction

def rref(m):
    """Reduced row echelon form. Returns (rows, pivot_columns); rows are dicts."""
    rows = [dict() for _ in range(m.nrows)]
    for j, col in enumerate(m.cols):
        for i, v in col.items():
            rows[i][j] = v
    rows = [r for r in rows if r]
    pivots = []
    out = []
    for j in range(m.ncols):
        piv = None
        for idx, r in enumerate(rows):
            if r.get(j):
                if piv is None or len(r) < len(rows[piv]):
                    piv = idx
        if piv is None:
            continue
        prow = rows.pop(piv)
        inv = 1 / prow[j]
        prow = {c: v * inv for c, v in prow.items()}
        for target in (rows, out):
            for idx, r in enumerate(target):
                a = r.get(j)
                if a:
                    new = dict(r)
                    for c, v in prow.items():
                        s = new.get(c, 0) - a * v
                        if s:
                            new[c] = s
                        else:
                            new.pop(c, None)
                    target[idx] = new
        rows = [r for r in rows if r]
        out.append(prow)
        pivots.append(j)
    return out, pivots


def nullspace(m):
    """Basis of the kernel as a list of sparse column vectors (dicts)."""
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for r, p in zip(rows, pivots):
            a = r.get(f)
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def solve(m, b):
    """Some ``x`` with ``m x = b`` (sparse dict), or ``None`` if inconsistent."""
    aug = hstack(m.nrows, m, [b])
    rows, pivots = rref(aug)
    x = {}
    for r, p in zip(rows, pivots):
        if p == m.ncols:
            return None
        v = r.get(m.ncols)
        if v:
            x[p] = v
    return x


def in_span(vectors, v):
    """Exact membership test of ``v`` in the span of ``vectors`` by rank comparison."""
    if not v:
        return True
    return rank_of_vectors(list(vectors) + [v]) == rank_of_vectors(list(vectors))


def independent_subset(vectors, base=()):
    """Indices of a greedy subset of ``vectors`` independent modulo ``base``."""
    chosen = []
    current = list(base)
    r = rank_of_vectors(current)
    for i, v in enumerate(vectors):
        r2 = rank_of_vectors(current + [v])
        if r2 > r:
            chosen.append(i)
            current.append(v)
            r = r2
    return chosen


# ---------------------------------------------------------------------------
# graded spaces and maps

class GradedSpace:
    """Finite labeled basis in each integer degree; absent degree means zero."""

    __slots__ = ("basis", "_index", "_degree_of")

    def __init__(self, basis, sort=True):
        clean = {}
        for k, labels in basis.items():
            labels = list(labels)
            if not labels:
                continue
            if sort:
                labels = sorted(labels, key=label_key)
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate basis labels in degree %d" % k)
            clean[int(k)] = tuple(labels)
        self.basis = clean
        self._index = {k: {l: i for i, l in enumerate(ls)} for k, ls in clean.items()}
        self._degree_of = {}
        for k, ls in clean.items():
            for l in ls:
                if l in self._degree_of:
                    raise ValueError("label %r appears in two degrees" % (l,))
                self._degree_of[l] = k

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, k):
        return len(self.basis.get(k, ()))

    def labels(self, k):
        return self.basis.get(k, ())

    def index(self, k, label):
        return self._index[k][label]

    def degree_of(self, label):
        return self._degree_of[label]

    def __contains__(self, label):
        return label in self._degree_of

    def all_labels(self):
        for k in self.degrees:
            yield from self.basis[k]

    def vector(self, k, combo):
        """Sparse column of a ``{label: coeff}`` combination living in degree ``k``."""
        idx = self._index.get(k, {})
        out = {}
        for l, v in combo.items():
            if v:
                out[idx[l]] = _frac(v)
        return out

    def combo(self, k, col):
        ls = self.basis.get(k, ())
        return {ls[i]: v for i, v in col.items() if v}

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.basis == other.basis

    def __repr__(self):
        return "GradedSpace(%s)" % {k: len(v) for k, v in self.basis.items()}


class GradedMap:
    """Homogeneous linear map of fixed degree between graded spaces."""

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(self, source, target, degree, blocks=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.blocks = {}
        for k, b in (blocks or {}).items():
            if (b.nrows, b.ncols) != (target.dim(k + degree), source.dim(k)):
                raise ValueError("block %d has shape %s, expected %s"
                                 % (k, b.shape, (target.dim(k + degree), source.dim(k))))
            if not b.is_zero():
                self.blocks[k] = b

    @classmethod
    def from_images(cls, source, target, degree, images, strict=True):
        """Build from ``{source_label: {target_label: coeff}}``.

        Target labels missing from ``target`` raise unless ``strict`` is False,
        in which case they are dropped (truncation).
        """
        cols = {}
        for k in source.degrees:
            tk = k + degree
            col_list = []
            for l in source.labels(k):
                img = images.get(l, {})
                col = {}
                for tl, v in img.items():
                    if not v:
                        continue
                    if tl not in target:
                        if strict:
                            raise ValueError("image label %r not in target" % (tl,))
                        continue
                    if target.degree_of(tl) != tk:
                        raise ValueError("label %r has degree %d, expected %d"
                                         % (tl, target.degree_of(tl), tk))
                    col[target.index(tk, tl)] = _frac(v)
                col_list.append(col)
            cols[k] = SparseMatrix(target.dim(tk), source.dim(k), col_list)
        return cls(source, target, degree, cols)

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {k: SparseMatrix.identity(space.dim(k)) for k in space.degrees})

    def block(self, k):
        b = self.blocks.get(k)
        if b is None:
            return SparseMatrix(self.target.dim(k + self.degree), self.source.dim(k))
        return b

    def image(self, label):
        k = self.source.degree_of(label)
        col = self.block(k).cols[self.source.index(k, label)]
        return self.target.combo(k + self.degree, col)

    def apply(self, combo):
        out = {}
        for l, a in combo.items():
            for tl, v in self.image(l).items():
                s = out.get(tl, 0) + a * v
                if s:
                    out[tl] = s
                else:
                    out.pop(tl, None)
        return out

    def compose(self, other):
        """``self ∘ other``."""
        blocks = {}
        for k in other.source.degrees:
            blocks[k] = self.block(k + other.degree) @ other.block(k)
        return GradedMap(other.source, self.target, self.degree + other.degree, blocks)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        ks = set(self.blocks) | set(other.blocks)
        return GradedMap(self.source, self.target, self.degree,
                         {k: self.block(k) + other.block(k) for k in ks})

    def scale(self, a):
        return GradedMap(self.source, self.target, self.degree,
                         {k: b.scale(a) for k, b in self.blocks.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.blocks

    def transpose(self):
        """Transposed map between the same spaces, reversed (degree ``-degree``)."""
        blocks = {k + self.degree: b.T for k, b in self.blocks.items()}
        return GradedMap(self.target, self.source, -self.degree, blocks)

    def __repr__(self):
        return "GradedMap(degree=%d, blocks=%s)" % (self.degree, sorted(self.blocks))


# ---------------------------------------------------------------------------
# homology

def _check_composition(d_in, d_out, k):
    comp = d_out.block(k) @ d_in.block(k - 1)
    if not comp.is_zero():
        raise CompositionNotZero("d_out ∘ d_in != 0 at degree %d" % k)


def homology_at(d_in, d_out, k, representatives=True):
    """Homology of ``C^{k-1} -> C^k -> C^{k+1}``.

    Returns ``(dimension, representatives)`` where the representatives are
    cycles (sparse columns in the basis of degree ``k``) spanning a complement
    of the boundaries.
    """
    if d_in.degree != 1 or d_out.degree != 1:
        raise ValueError("differentials must have degree +1")
    _check_composition(d_in, d_out, k)
    space = d_out.source
    n = space.dim(k)
    out_block = d_out.block(k)
    in_block = d_in.block(k - 1)
    if not representatives:
        return n - out_block.rank() - in_block.rank(), []
    cycles = out_block.nullspace()
    bnd = [c for c in in_block.cols if c]
    chosen = independent_subset(cycles, bnd)
    reps = [cycles[i] for i in chosen]
    return len(reps), reps


def cycles_and_boundaries(d_in, d_out, k):
    """Kernel basis at ``k`` and boundary spanning columns at ``k``."""
    cyc = d_out.block(k).nullspace()
    bnd = [c for c in d_in.block(k - 1).cols if c]
    return cyc, bnd


def induced_rank(f_block, src_cycles, tgt_boundaries):
    """Rank of the map induced on homology by a chain map block.

    ``rank [f(Z) | B] - rank B`` over the target degree.
    """
    images = [f_block.apply(z) for z in src_cycles]
    images = [v for v in images if v]
    if not images:
        return 0
    rb = rank_of_vectors(tgt_boundaries)
    return rank_of_vectors(list(tgt_boundaries) + images) - rb


def check_chain_map(f, src_diff, tgt_diff, k):
    """Raise :class:`NotAChainMap` unless ``d f = ± f d`` on degree ``k``."""
    lhs = tgt_diff.block(k + f.degree) @ f.block(k)
    rhs = f.block(k + 1) @ src_diff.block(k)
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    raise NotAChainMap("map does not commute with the differentials at degree %d" % k)


def induced_map_on_homology(f, k, src_diff, tgt_diff):
    """Matrix of ``f_*`` on chosen homology representatives at degree ``k``.

    Columns are indexed by the source representatives, rows by the target
    representatives; coordinates are taken modulo boundaries.
    """
    for j in (k - 1, k):
        check_chain_map(f, src_diff, tgt_diff, j)
    _, src_reps = homology_at(src_diff, src_diff, k)
    tk = k + f.degree
    _, tgt_reps = homology_at(tgt_diff, tgt_diff, tk)
    bnd = [c for c in tgt_diff.block(tk - 1).cols if c]
    n = tgt_diff.source.dim(tk)
    system = hstack(n, tgt_reps, bnd)
    cols = []
    for z in src_reps:
        x = solve(system, f.block(k).apply(z))
        if x is None:
            raise NotAChainMap("image of a cycle is not a cycle at degree %d" % k)
        cols.append({i: v for i, v in x.items() if i < len(tgt_reps)})
    return SparseMatrix(len(tgt_reps), len(src_reps), cols)


# ---------------------------------------------------------------------------
# subquotients

class SubquotientPresentation:
    """``sub / den`` inside an ambient graded space with a differential.

    ``sub[k]`` and ``den[k]`` are lists of sparse columns in the ambient
    degree-``k`` basis; ``den`` must lie in the span of ``sub`` and both must
    be stable under the differential.
    """

    def __init__(self, ambient, sub, den):
        self.ambient = ambient
        self.sub = {k: [c for c in v if c] for k, v in sub.items()}
        self.den = {k: [c for c in v if c] for k, v in den.items()}

    def dim(self, k):
        return rank_of_vectors(self.sub.get(k, []) + self.den.get(k, [])) \
            - rank_of_vectors(self.den.get(k, []))

    def check(self, diff=None, degrees=None):
        degrees = self.ambient.degrees if degrees is None else degrees
        for k in degrees:
            s, d = self.sub.get(k, []), self.den.get(k, [])
            if rank_of_vectors(s + d) != rank_of_vectors(s):
                return False
            if diff is not None:
                blk = diff.block(k)
                tk = k + diff.degree
                for (space, tgt) in ((s, self.sub.get(tk, [])), (d, self.den.get(tk, []))):
                    imgs = [blk.apply(c) for c in space]
                    if rank_of_vectors(tgt + imgs) != rank_of_vectors(tgt):
                        return False
        return True

    def homology_dim(self, diff, k):
        """Homology of the subquotient complex at ``k`` (``diff`` has degree ±1)."""
        e = diff.degree
        X = self.sub.get(k, [])
        Y = self.den.get(k, [])
        Xn = self.sub.get(k - e, [])
        Yt = self.den.get(k + e, [])
        dX = [diff.block(k).apply(c) for c in X]
        dXn = [diff.block(k - e).apply(c) for c in Xn]
        rY = rank_of_vectors(Y)
        dim_quot = rank_of_vectors(X + Y) - rY
        rYt = rank_of_vectors(Yt)
        rank_d = rank_of_vectors(Yt + dX) - rYt
        rank_in = rank_of_vectors(Y + dXn) - rY
        return dim_quot - rank_d - rank_in

    def cycles(self, diff, k):
        """Spanning columns of ``{x in sub_k : dx in den_{k+e}}``."""
        e = diff.degree
        X = self.sub.get(k, [])
        Yt = self.den.get(k + e, [])
        dX = [diff.block(k).apply(c) for c in X]
        n_t = self.ambient.dim(k + e)
        # solve  sum a_i dX_i - sum b_j Yt_j = 0
        m = hstack(n_t, dX, [{r: -v for r, v in c.items()} for c in Yt])
        out = []
        for v in nullspace(m):
            combo = {}
            for i, a in v.items():
                if i < len(X):
                    for r, x in X[i].items():
                        s = combo.get(r, 0) + a * x
                        if s:
                            combo[r] = s
                        else:
                            combo.pop(r, None)
            if combo:
                out.append(combo)
        return out

    def boundaries(self, diff, k):
        e = diff.degree
        Xn = self.sub.get(k - e, [])
        return self.den.get(k, []) + [diff.block(k - e).apply(c) for c in Xn]
