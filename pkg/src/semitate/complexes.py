"""Chain complexes on finite windows with optional periodic tails.

A window stores objects for degrees lo..hi and differentials d_n for
lo < n <= hi.  Degrees outside the window are zero unless a periodic
tail is installed on that side; a tail of period p replays the last
(first) p stored degrees verbatim, which requires the seam objects to
be equal on the nose.  Accessors resolve any integer degree, so
homology can be asked for anywhere and is exact wherever the complex is
genuinely represented.

Sign conventions, fixed once and used everywhere:

* hom complex degree n holds maps raising degree by n; its differential
  sends f to d_target . f - (-1)^n f . d_source;
* the shift by i multiplies differentials by (-1)^i;
* the cone of f: M -> N has degree n part N_n (+) M_{n-1} and
  differential [[d_N, f], [0, -d_M]].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (
    Algebra,
    FdModule,
    HomSpace,
    ModuleHom,
    ValidationError,
    direct_sum,
    hom_space,
    quotient_data,
    zero_module,
)
from .linalg import Matrix, column_space_basis, hstack, kernel_basis, rank, solve, vec, vstack


@dataclass(frozen=True)
class Tail:
    period: int

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError("tail period must be positive")


@dataclass
class ComplexWindow:
    algebra: Algebra
    lo: int
    hi: int
    objects: dict  # degree -> FdModule, for lo..hi
    diffs: dict    # degree n -> Matrix of d_n : X_n -> X_{n-1}, for lo < n <= hi
    left_tail: Tail | None = None
    right_tail: Tail | None = None

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ValueError("empty window")
        for n in range(self.lo, self.hi + 1):
            if n not in self.objects:
                raise ValueError(f"missing object in degree {n}")
        for n in range(self.lo + 1, self.hi + 1):
            if n not in self.diffs:
                raise ValueError(f"missing differential in degree {n}")
            d = self.diffs[n]
            if d.rows != self.objects[n - 1].dim or d.cols != self.objects[n].dim:
                raise ValueError(f"differential shape mismatch in degree {n}")
        span = self.hi - self.lo
        if self.right_tail is not None:
            p = self.right_tail.period
            if span < p:
                raise ValueError("window too short for right tail period")
            if self.objects[self.hi] != self.objects[self.hi - p]:
                raise ValueError("right tail seam objects differ")
        if self.left_tail is not None:
            p = self.left_tail.period
            if span < p:
                raise ValueError("window too short for left tail period")
            if self.objects[self.lo] != self.objects[self.lo + p]:
                raise ValueError("left tail seam objects differ")

    # -- degree accessors -------------------------------------------

    def _rep_obj(self, n: int) -> int | None:
        if self.lo <= n <= self.hi:
            return n
        if n > self.hi:
            if self.right_tail is None:
                return None
            p = self.right_tail.period
            return self.hi - ((self.hi - n) % p)
        if self.left_tail is None:
            return None
        p = self.left_tail.period
        return self.lo + ((n - self.lo) % p)

    def _rep_diff(self, n: int) -> int | None:
        if self.lo < n <= self.hi:
            return n
        if n > self.hi:
            if self.right_tail is None:
                return None
            p = self.right_tail.period
            r = self.hi - ((self.hi - n) % p)
            return r if r > self.lo else r + p
        if self.left_tail is None:
            return None
        p = self.left_tail.period
        return self.lo + 1 + ((n - self.lo - 1) % p)

    def obj_at(self, n: int) -> FdModule:
        r = self._rep_obj(n)
        return self.objects[r] if r is not None else zero_module(self.algebra)

    def diff_at(self, n: int) -> Matrix:
        r = self._rep_diff(n)
        if r is not None:
            return self.diffs[r]
        return Matrix.zeros(self.algebra.field, self.obj_at(n - 1).dim, self.obj_at(n).dim)

    def materialize(self, lo: int, hi: int) -> "ComplexWindow":
        """Widen (never narrow past content) to an explicit lo..hi window."""
        lo = min(lo, self.lo)
        hi = max(hi, self.hi)
        objs = {n: self.obj_at(n) for n in range(lo, hi + 1)}
        diffs = {n: self.diff_at(n) for n in range(lo + 1, hi + 1)}
        return ComplexWindow(self.algebra, lo, hi, objs, diffs,
                             self.left_tail, self.right_tail)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(self.objects[n].dim == 0 for n in self.degrees())


def concentrated(m: FdModule, degree: int = 0) -> ComplexWindow:
    return ComplexWindow(m.algebra, degree, degree, {degree: m}, {})


def two_term(f: ModuleHom, top: int = 1) -> ComplexWindow:
    """The complex 0 -> source -> target -> 0 with source in degree top."""
    return ComplexWindow(
        f.source.algebra, top - 1, top,
        {top: f.source, top - 1: f.target}, {top: f.matrix})


def validate_complex(x: ComplexWindow, check_module_structure: bool = True) -> None:
    """d . d = 0 and action-compatibility on the window plus one tail period."""
    lo = x.lo - (x.left_tail.period if x.left_tail else 0)
    hi = x.hi + (x.right_tail.period if x.right_tail else 0)
    for n in range(lo + 1, hi + 1):
        d = x.diff_at(n)
        if check_module_structure:
            src, tgt = x.obj_at(n), x.obj_at(n - 1)
            for i in x.algebra.radical_indices:
                if d * src.action(i) != tgt.action(i) * d:
                    raise ValidationError(f"differential in degree {n} is not a module map")
        if n > lo + 1:
            prev = x.diff_at(n - 1)
            if not (prev * d).is_zero():
                raise ValidationError(f"d.d != 0 at degree {n}")


# -- chain maps ------------------------------------------------------


@dataclass
class ChainMap:
    source: ComplexWindow
    target: ComplexWindow
    comps: dict  # degree -> Matrix
    degree_shift: int = 0
    periodic: bool = False  # resolve missing components through the source tails

    def comp_at(self, n: int) -> Matrix:
        if n in self.comps:
            return self.comps[n]
        if self.periodic:
            r = self.source._rep_obj(n)
            if r is not None and r in self.comps:
                return self.comps[r]
        return Matrix.zeros(
            self.source.algebra.field,
            self.target.obj_at(n + self.degree_shift).dim,
            self.source.obj_at(n).dim)

    def check_range(self) -> range:
        lo = min(self.source.lo, self.target.lo - self.degree_shift)
        hi = max(self.source.hi, self.target.hi - self.degree_shift)
        return range(lo, hi + 1)

    def is_morphism(self, degrees=None) -> bool:
        if self.degree_shift != 0:
            return False
        degs = degrees if degrees is not None else self.check_range()
        for n in degs:
            lhs = self.target.diff_at(n) * self.comp_at(n)
            rhs = self.comp_at(n - 1) * self.source.diff_at(n)
            if lhs != rhs:
                return False
        return True


def shift(x: ComplexWindow, i: int) -> ComplexWindow:
    objs = {n + i: x.objects[n] for n in x.degrees()}
    sign = 1 if i % 2 == 0 else -1
    diffs = {n + i: (x.diffs[n] if sign == 1 else -x.diffs[n])
             for n in range(x.lo + 1, x.hi + 1)}
    return ComplexWindow(x.algebra, x.lo + i, x.hi + i, objs, diffs,
                         x.left_tail, x.right_tail)


def truncate(x: ComplexWindow, mode: str, i: int) -> ComplexWindow:
    """Hard truncation; the cut side loses its tail."""
    if mode == ">=":
        pad = x.right_tail.period if x.right_tail else 0
        m = x.materialize(min(x.lo, i), max(x.hi, i + pad))
        objs = {n: m.objects[n] for n in range(i, m.hi + 1)}
        diffs = {n: m.diffs[n] for n in range(i + 1, m.hi + 1)}
        return ComplexWindow(x.algebra, i, m.hi, objs, diffs, None, x.right_tail)
    if mode == "<=":
        pad = x.left_tail.period if x.left_tail else 0
        m = x.materialize(min(x.lo, i - pad), max(x.hi, i))
        objs = {n: m.objects[n] for n in range(m.lo, i + 1)}
        diffs = {n: m.diffs[n] for n in range(m.lo + 1, i + 1)}
        return ComplexWindow(x.algebra, m.lo, i, objs, diffs, x.left_tail, None)
    raise ValueError("mode must be '>=' or '<='")


def cone(f: ChainMap) -> ComplexWindow:
    """Mapping cone on materialized windows (no tails)."""
    if f.degree_shift != 0:
        raise ValueError("cone expects a degree-zero chain map")
    x, y = f.source, f.target
    lo = min(y.lo, x.lo + 1)
    hi = max(y.hi, x.hi + 1)
    a = x.algebra
    objs = {}
    parts = {}
    for n in range(lo, hi + 1):
        summands = [y.obj_at(n), x.obj_at(n - 1)]
        total, inj, proj = direct_sum(summands)
        objs[n] = total
        parts[n] = (inj, proj)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        inj_prev, _ = parts[n - 1]
        _, proj_cur = parts[n]
        dn = (inj_prev[0] * y.diff_at(n) * proj_cur[0]
              + inj_prev[0] * f.comp_at(n - 1) * proj_cur[1]
              + inj_prev[1] * (-x.diff_at(n - 1)) * proj_cur[1])
        diffs[n] = dn
    return ComplexWindow(a, lo, hi, objs, diffs)


# -- homology --------------------------------------------------------


@dataclass
class Homology:
    """Homology at one degree with canonical cycle and class bases."""

    complex: ComplexWindow
    degree: int
    cycles: Matrix          # ambient x z
    boundary_coords: Matrix  # z x b: boundaries written in cycle coordinates
    projection: Matrix      # h x z
    section: Matrix         # z x h
    module: FdModule

    @property
    def dim(self) -> int:
        return self.module.dim

    def class_of(self, ambient_vec: Matrix) -> Matrix:
        c = solve(self.cycles, ambient_vec)
        if c is None:
            raise ValueError("vector is not a cycle")
        return self.projection * c

    def representative(self, class_vec: Matrix) -> Matrix:
        return self.cycles * (self.section * class_vec)


def homology(x: ComplexWindow, n: int) -> Homology:
    a = x.algebra
    f = a.field
    d_out = x.diff_at(n)
    d_in = x.diff_at(n + 1)
    cycles = kernel_basis(d_out)
    bdry = column_space_basis(d_in)
    bc = solve(cycles, bdry)
    if bc is None:
        raise ValidationError(f"boundaries are not cycles at degree {n}")
    qd = quotient_data(f, cycles.cols, bc)
    acts = []
    amb = x.obj_at(n)
    for i in a.radical_indices:
        moved = solve(cycles, amb.action(i) * cycles)
        if moved is None:
            raise ValidationError("cycles not action-stable")
        acts.append(qd.projection * moved * qd.section)
    mod = FdModule(a, qd.projection.rows, tuple(acts))
    return Homology(x, n, cycles, bc, qd.projection, qd.section, mod)


def homology_dim(x: ComplexWindow, n: int) -> int:
    return rank(kernel_basis(x.diff_at(n))) - rank(x.diff_at(n + 1))


def induced_map(src: Homology, tgt: Homology, comp: Matrix) -> Matrix:
    """Matrix of the map on homology classes induced by a chain-map component."""
    f = comp.field
    cols = []
    for t in range(src.dim):
        cls = Matrix.zeros(f, src.dim, 1)
        ent = list(cls.entries)
        ent[t] = f.normalize(1)
        cls = Matrix(f, src.dim, 1, tuple(ent))
        cols.append(tgt.class_of(comp * src.representative(cls)))
    return hstack(cols) if cols else Matrix.zeros(f, tgt.dim, 0)


# -- hom complexes ---------------------------------------------------


@dataclass
class HomComplex:
    window: ComplexWindow
    homs: dict  # degree -> HomSpace (single-block cases)
    contravariant: bool


def hom_into_module(x: ComplexWindow, target: FdModule, lo: int, hi: int) -> HomComplex:
    """Hom(X, N): degree n holds Hom(X_{-n}, N); differential precomposes."""
    a = x.algebra
    f = a.field
    homs = {n: hom_space(x.obj_at(-n), target) for n in range(lo, hi + 1)}
    objs = {n: homs[n].module for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = homs[n], homs[n - 1]
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        d = x.diff_at(-n + 1)
        cols = [tgt.coords(b * d) for b in src.basis]
        mat = hstack(cols) if cols else Matrix.zeros(f, tgt.dim, 0)
        diffs[n] = mat if sign == 1 else -mat
    return HomComplex(ComplexWindow(a, lo, hi, objs, diffs), homs, True)


def hom_from_module(source: FdModule, y: ComplexWindow, lo: int, hi: int) -> HomComplex:
    """Hom(M, Y): degree n holds Hom(M, Y_n); differential postcomposes."""
    a = y.algebra
    f = a.field
    homs = {n: hom_space(source, y.obj_at(n)) for n in range(lo, hi + 1)}
    objs = {n: homs[n].module for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = homs[n], homs[n - 1]
        d = y.diff_at(n)
        cols = [tgt.coords(d * b) for b in src.basis]
        diffs[n] = hstack(cols) if cols else Matrix.zeros(f, tgt.dim, 0)
    return HomComplex(ComplexWindow(a, lo, hi, objs, diffs), homs, False)


@dataclass
class BigradedHomComplex:
    window: ComplexWindow
    blocks: dict  # degree n -> list of (p, HomSpace) with ascending p
    offsets: dict  # degree n -> list of starting coordinates per block

    def coords_of(self, n: int, components: dict) -> Matrix:
        """Total coordinates of a degree-n element {p: matrix}."""
        f = self.window.algebra.field
        pieces = []
        for (p, hs), off in zip(self.blocks[n], self.offsets[n]):
            mat = components.get(p)
            if mat is None:
                pieces.append(Matrix.zeros(f, hs.dim, 1))
            else:
                pieces.append(hs.coords(mat))
        return vstack(pieces) if pieces else Matrix.zeros(f, 0, 1)


def hom_complex(x: ComplexWindow, y: ComplexWindow, lo: int, hi: int) -> BigradedHomComplex:
    """Hom(X, Y) on finite windows; degree n block p maps X_p to Y_{p+n}."""
    a = x.algebra
    f = a.field
    blocks = {}
    offsets = {}
    objs = {}
    for n in range(lo, hi + 1):
        row = []
        offs = []
        pos = 0
        for p in range(x.lo, x.hi + 1):
            if y.lo <= p + n <= y.hi:
                hs = hom_space(x.objects[p], y.objects[p + n])
                row.append((p, hs))
                offs.append(pos)
                pos += hs.dim
        blocks[n] = row
        offsets[n] = offs
        mods = [hs.module for (_, hs) in row]
        objs[n] = direct_sum(mods)[0] if mods else zero_module(a)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        tgt_dim = objs[n - 1].dim
        src_dim = objs[n].dim
        mat_cols = []
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        tgt_blocks = dict((p, (hs, off)) for (p, hs), off in zip(blocks[n - 1], offsets[n - 1]))
        for (p, hs), off in zip(blocks[n], offsets[n]):
            for b in hs.basis:
                col = [f.normalize(0)] * tgt_dim
                # post-composition with the target differential, same p
                if p in tgt_blocks:
                    hs2, off2 = tgt_blocks[p]
                    piece = hs2.coords(y.diff_at(p + n) * b)
                    for t in range(piece.rows):
                        col[off2 + t] = piece[t, 0]
                # pre-composition with the source differential, block p+1
                if (p + 1) in tgt_blocks:
                    hs2, off2 = tgt_blocks[p + 1]
                    piece = hs2.coords(b * x.diff_at(p + 1))
                    for t in range(piece.rows):
                        col[off2 + t] = f.normalize(col[off2 + t] + sign * piece[t, 0])
                mat_cols.append(col)
        if mat_cols:
            mat = Matrix.from_rows(f, [[c[r] for c in mat_cols] for r in range(tgt_dim)]) \
                if tgt_dim else Matrix.zeros(f, 0, len(mat_cols))
        else:
            mat = Matrix.zeros(f, tgt_dim, 0)
        diffs[n] = mat
    return BigradedHomComplex(ComplexWindow(a, lo, hi, objs, diffs), blocks, offsets)


# -- homotopies ------------------------------------------------------


def null_homotopy(fmap: ChainMap, degrees=None) -> ChainMap | None:
    """Solve d s_n + s_{n-1} d = f_n for module maps s_n : X_n -> Y_{n+1}.

    Unknowns in tail regions are identified with their representative
    degree, so on periodic windows a None answer is conclusive.
    """
    x, y = fmap.source, fmap.target
    a = x.algebra
    f = a.field
    same_tails = (x.left_tail == y.left_tail and x.right_tail == y.right_tail
                  and x.lo == y.lo and x.hi == y.hi)
    y_conc = y.lo == y.hi and y.left_tail is None and y.right_tail is None

    def key_of(n: int) -> int:
        if x.lo <= n <= x.hi:
            return n
        r = x._rep_obj(n)
        return r if r is not None else n

    if degrees is None:
        ext_l = x.left_tail.period if x.left_tail else 0
        ext_r = x.right_tail.period if x.right_tail else 0
        degrees = range(min(x.lo, y.lo) - ext_l, max(x.hi, y.hi) + ext_r + 1)
    if (x.left_tail or x.right_tail) and not (same_tails or y_conc):
        raise ValueError("periodic homotopy needs matching tails or a concentrated target")

    keys = sorted({key_of(n) for n in degrees} | {key_of(n - 1) for n in degrees})
    spaces = {}
    for kdeg in keys:
        spaces[kdeg] = hom_space(x.obj_at(kdeg), y.obj_at(kdeg + 1))
    col_off = {}
    pos = 0
    for kdeg in keys:
        col_off[kdeg] = pos
        pos += spaces[kdeg].dim
    total_unknowns = pos
    rows = []
    rhs = []
    for n in degrees:
        fn = fmap.comp_at(n)
        eq_rows = y.obj_at(n).dim * x.obj_at(n).dim
        if eq_rows == 0:
            continue
        row_block = [[f.normalize(0)] * total_unknowns for _ in range(eq_rows)]
        kn, kp = key_of(n), key_of(n - 1)
        dY = y.diff_at(n + 1)
        dX = x.diff_at(n)
        for t, b in enumerate(spaces[kn].basis):
            v = vec(dY * b)
            for r in range(eq_rows):
                row_block[r][col_off[kn] + t] = f.normalize(
                    row_block[r][col_off[kn] + t] + v[r, 0])
        for t, b in enumerate(spaces[kp].basis):
            v = vec(b * dX)
            for r in range(eq_rows):
                row_block[r][col_off[kp] + t] = f.normalize(
                    row_block[r][col_off[kp] + t] + v[r, 0])
        rows.extend(row_block)
        rhs.extend(vec(fn)[r, 0] for r in range(eq_rows))
    if not rows:
        return ChainMap(x, y, {}, degree_shift=1)
    system = Matrix.from_rows(f, rows)
    target_vec = Matrix.column(f, rhs)
    sol = solve(system, target_vec)
    if sol is None:
        return None
    comps = {}
    for kdeg in keys:
        hs = spaces[kdeg]
        if hs.dim == 0:
            continue
        coeffs = Matrix(f, hs.dim, 1,
                        tuple(sol[col_off[kdeg] + t, 0] for t in range(hs.dim)))
        comps[kdeg] = hs.from_coords(coeffs)
    return ChainMap(x, y, comps, degree_shift=1)


def homotopy_of_maps(f1: ChainMap, f2: ChainMap, degrees=None) -> ChainMap | None:
    """Homotopy between two chain maps with the same source and target."""
    diff_comps = {}
    degs = set()
    degs.update(f1.comps.keys())
    degs.update(f2.comps.keys())
    for n in degs:
        diff_comps[n] = f1.comp_at(n) - f2.comp_at(n)
    return null_homotopy(ChainMap(f1.source, f1.target, diff_comps), degrees)


# -- relative exactness ----------------------------------------------


def check_relative_exactness(x: ComplexWindow, probe: FdModule, side: str) -> int | None:
    """Apply Hom(probe, -) or Hom(-, probe) degreewise and locate nonexact spots.

    Returns None when exact at every represented degree (window plus one
    tail period on each side), else the first failing degree.
    """
    ext_l = x.left_tail.period if x.left_tail else 0
    ext_r = x.right_tail.period if x.right_tail else 0
    lo = x.lo - ext_l
    hi = x.hi + ext_r
    wide = x.materialize(lo - 1, hi + 1)
    if side == "into":
        hc = hom_into_module(wide, probe, -(hi + 1), -(lo - 1))
        for n in range(lo, hi + 1):
            if homology_dim(hc.window, -n) != 0:
                return n
        return None
    if side == "from":
        hc = hom_from_module(probe, wide, lo - 1, hi + 1)
        for n in range(lo, hi + 1):
            if homology_dim(hc.window, n) != 0:
                return n
        return None
    raise ValueError("side must be 'into' or 'from'")


def exactness_check(x: ComplexWindow) -> int | None:
    """First degree with nonzero homology on the represented range, or None."""
    ext_l = x.left_tail.period if x.left_tail else 0
    ext_r = x.right_tail.period if x.right_tail else 0
    for n in range(x.lo - ext_l, x.hi + ext_r + 1):
        if homology_dim(x, n) != 0:
            return n
    return None


# -- long exact sequence of a short exact sequence of complexes ----------


@dataclass
class LongExactHomology:
    """Homology long exact sequence of a degreewise exact pair of chain maps.

    Nodes live at degrees lo..hi in each of the three columns; the maps
    into/onto sit at the same degree, the connecting map lowers it by one.
    """

    incl: ChainMap
    proj: ChainMap
    lo: int
    hi: int
    sub: dict       # j -> Homology of the subcomplex
    mid: dict
    quo: dict
    into: dict      # j -> Matrix  H_j(sub) -> H_j(mid)
    onto: dict      # j -> Matrix  H_j(mid) -> H_j(quo)
    delta: dict     # j -> Matrix  H_j(quo) -> H_{j-1}(sub)

    def junction_failures(self, jlo: int, jhi: int) -> list:
        """Exactness verdicts; rank of the incoming map must fill the kernel."""
        bad = []
        for j in range(jlo, jhi + 1):
            if j + 1 <= self.hi:
                if not (self.into[j] * self.delta[j + 1]).is_zero() or \
                        rank(self.delta[j + 1]) != self.sub[j].dim - rank(self.into[j]):
                    bad.append(("sub", j))
            if not (self.onto[j] * self.into[j]).is_zero() or \
                    rank(self.into[j]) != self.mid[j].dim - rank(self.onto[j]):
                bad.append(("mid", j))
            if j - 1 >= self.lo:
                if not (self.delta[j] * self.onto[j]).is_zero() or \
                        rank(self.onto[j]) != self.quo[j].dim - rank(self.delta[j]):
                    bad.append(("quo", j))
        return bad


def homology_les(incl: ChainMap, proj: ChainMap, lo: int, hi: int) -> LongExactHomology:
    """Build the homology long exact sequence of 0 -> A -> B -> C -> 0.

    The pair must be degreewise exact on [lo-1, hi+1]; the connecting
    map is assembled by lifting representatives through the surjection
    and pulling the boundary back along the injection.
    """
    a, b, c = incl.source, incl.target, proj.target
    if proj.source is not b and proj.source != b:
        raise ValueError("maps do not compose")
    f = a.algebra.field
    for j in range(lo - 1, hi + 2):
        fi, fp = incl.comp_at(j), proj.comp_at(j)
        if not (fp * fi).is_zero() or rank(fi) != a.obj_at(j).dim \
                or rank(fp) != c.obj_at(j).dim \
                or a.obj_at(j).dim + c.obj_at(j).dim != b.obj_at(j).dim:
            raise ValidationError(f"not a short exact sequence of complexes at {j}")
    sub = {j: homology(a, j) for j in range(lo, hi + 1)}
    mid = {j: homology(b, j) for j in range(lo, hi + 1)}
    quo = {j: homology(c, j) for j in range(lo, hi + 1)}
    into = {j: induced_map(sub[j], mid[j], incl.comp_at(j)) for j in range(lo, hi + 1)}
    onto = {j: induced_map(mid[j], quo[j], proj.comp_at(j)) for j in range(lo, hi + 1)}
    delta = {}
    for j in range(lo + 1, hi + 1):
        cols = []
        for t in range(quo[j].dim):
            cls = Matrix.zeros(f, quo[j].dim, 1)
            ent = list(cls.entries)
            ent[t] = f.normalize(1)
            z = quo[j].representative(Matrix(f, quo[j].dim, 1, tuple(ent)))
            lift = solve(proj.comp_at(j), z)
            if lift is None:
                raise ValidationError(f"cannot lift a cycle through degree {j}")
            w = b.diff_at(j) * lift
            back = solve(incl.comp_at(j - 1), w)
            if back is None:
                raise ValidationError(f"boundary does not pull back at degree {j}")
            cols.append(sub[j - 1].class_of(back))
        delta[j] = hstack(cols) if cols else Matrix.zeros(f, sub[j - 1].dim, 0)
    return LongExactHomology(incl, proj, lo, hi, sub, mid, quo, into, onto, delta)
