"""Finite-dimensional commutative local algebras and their modules.

An algebra is given by structure constants on a named basis containing
the unit; validation checks the unit law, commutativity, associativity,
and locality (every non-unit basis element must act nilpotently, which
pins the radical to the span of the non-unit basis vectors).

A module is a list of commuting action matrices, one per non-unit basis
element, satisfying the structure-constant relations; the unit always
acts as the identity.  Submodules, quotients, duals, homs and tensor
products are all computed with canonical echelon bases so repeated runs
produce identical matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .linalg import (
    Field,
    Matrix,
    block_diag,
    column_space_basis,
    echelon,
    hstack,
    invert,
    kernel_basis,
    kron,
    rank,
    solve,
    unvec,
    vec,
    vstack,
)


class ValidationError(ValueError):
    """A structural axiom failed; message names the first violation."""


@dataclass(frozen=True)
class Algebra:
    name: str
    field: Field
    basis_names: tuple[str, ...]
    unit: int
    # table[i][j] = coefficient tuple of b_i * b_j over the full basis
    table: tuple[tuple[tuple, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def radical_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if i != self.unit)

    def mult_op(self, i: int) -> Matrix:
        """Left multiplication by basis element i as a dim x dim matrix."""
        cols = [self.table[i][j] for j in range(self.dim)]
        return Matrix.from_rows(self.field, [[cols[j][r] for j in range(self.dim)] for r in range(self.dim)])

    def elem_op(self, coeffs) -> Matrix:
        """Left multiplication by the element with the given coordinates."""
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c != 0:
                out = out + self.mult_op(i).scale(c)
        return out

    def unit_vector(self) -> Matrix:
        v = [self.field.normalize(0)] * self.dim
        v[self.unit] = self.field.normalize(1)
        return Matrix.column(self.field, v)


def make_algebra(name: str, field: Field, basis_names, unit_name: str, products) -> Algebra:
    """Build an algebra from products on unordered non-unit pairs.

    products maps (name_i, name_j) to a coefficient dict {basis_name: scalar};
    unit products are filled in automatically.
    """
    basis_names = tuple(basis_names)
    if len(set(basis_names)) != len(basis_names):
        raise ValidationError("duplicate basis name")
    idx = {n: i for i, n in enumerate(basis_names)}
    if unit_name not in idx:
        raise ValidationError(f"unit {unit_name!r} not in basis")
    unit = idx[unit_name]
    dim = len(basis_names)
    zero = field.normalize(0)
    table = [[None] * dim for _ in range(dim)]
    for j in range(dim):
        ej = [zero] * dim
        ej[j] = field.normalize(1)
        table[unit][j] = tuple(ej)
        table[j][unit] = tuple(ej)
    for (a, b), coeffs in products.items():
        if a not in idx or b not in idx:
            raise ValidationError(f"unknown basis name in product {a}*{b}")
        i, j = idx[a], idx[b]
        v = [zero] * dim
        for nm, c in coeffs.items():
            if nm not in idx:
                raise ValidationError(f"unknown basis name {nm!r} in product {a}*{b}")
            v[idx[nm]] = field.normalize(c)
        table[i][j] = tuple(v)
        table[j][i] = tuple(v)
    for i in range(dim):
        for j in range(dim):
            if table[i][j] is None:
                ni, nj = basis_names[i], basis_names[j]
                raise ValidationError(f"missing product {ni}*{nj}")
    return Algebra(name, field, basis_names, unit, tuple(tuple(r) for r in table))


def validate_algebra(a: Algebra) -> None:
    """Raise ValidationError on the first failed axiom."""
    dim = a.dim
    f = a.field
    for j in range(dim):
        expected = tuple(f.normalize(1) if r == j else f.normalize(0) for r in range(dim))
        if a.table[a.unit][j] != expected:
            raise ValidationError(f"unit law fails at {a.basis_names[j]}")
    for i in range(dim):
        for j in range(dim):
            if a.table[i][j] != a.table[j][i]:
                raise ValidationError(
                    f"commutativity fails at {a.basis_names[i]}*{a.basis_names[j]}")
    ops = [a.mult_op(i) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            lhs = a.elem_op(a.table[i][j])  # multiplication by b_i*b_j
            rhs = ops[i] * ops[j]
            if lhs != rhs:
                raise ValidationError(
                    "associativity fails at "
                    f"({a.basis_names[i]}*{a.basis_names[j]})*: tables disagree")
    # locality: every non-unit basis element must be nilpotent
    for i in a.radical_indices:
        power = ops[i]
        for _ in range(dim):
            power = power * ops[i]
        if not power.is_zero():
            raise ValidationError(
                f"locality fails: {a.basis_names[i]} is not nilpotent")


@dataclass(frozen=True)
class FdModule:
    """A finite module: action matrices indexed by the non-unit basis."""

    algebra: Algebra
    dim: int
    actions: tuple[Matrix, ...]  # one per radical index, in order

    def action(self, basis_index: int) -> Matrix:
        if basis_index == self.algebra.unit:
            return Matrix.identity(self.algebra.field, self.dim)
        pos = self.algebra.radical_indices.index(basis_index)
        return self.actions[pos]

    def elem_action(self, coeffs) -> Matrix:
        out = Matrix.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c != 0:
                out = out + self.action(i).scale(c)
        return out

    def __str__(self) -> str:
        return f"module(dim={self.dim} over {self.algebra.name})"


def validate_module(m: FdModule) -> None:
    a = m.algebra
    f = a.field
    if len(m.actions) != len(a.radical_indices):
        raise ValidationError("wrong number of action matrices")
    for mat in m.actions:
        if mat.rows != m.dim or mat.cols != m.dim or mat.field != f:
            raise ValidationError("action matrix has wrong shape")
    for i in a.radical_indices:
        for j in a.radical_indices:
            lhs = m.action(i) * m.action(j)
            rhs = m.elem_action(a.table[i][j])
            if lhs != rhs:
                raise ValidationError(
                    f"structure relation fails at {a.basis_names[i]}*{a.basis_names[j]}")


def zero_module(a: Algebra) -> FdModule:
    z = Matrix.zeros(a.field, 0, 0)
    return FdModule(a, 0, tuple(z for _ in a.radical_indices))


def free_module(a: Algebra, n: int) -> FdModule:
    """Rank-n free module; coordinates ordered (copy, algebra basis)."""
    eye = Matrix.identity(a.field, n)
    acts = tuple(kron(eye, a.mult_op(i)) for i in a.radical_indices)
    return FdModule(a, n * a.dim, acts)


def residue_field_module(a: Algebra) -> FdModule:
    z = Matrix.zeros(a.field, 1, 1)
    return FdModule(a, 1, tuple(z for _ in a.radical_indices))


@dataclass(frozen=True)
class ModuleHom:
    source: FdModule
    target: FdModule
    matrix: Matrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise ValueError("hom matrix shape mismatch")

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        # self after other
        if other.target is not self.source and other.target != self.source:
            raise ValueError("compose: modules do not match")
        return ModuleHom(other.source, self.target, self.matrix * other.matrix)

    def is_valid(self) -> bool:
        for i in self.source.algebra.radical_indices:
            if self.matrix * self.source.action(i) != self.target.action(i) * self.matrix:
                return False
        return True

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim


def identity_hom(m: FdModule) -> ModuleHom:
    return ModuleHom(m, m, Matrix.identity(m.algebra.field, m.dim))


def zero_hom(source: FdModule, target: FdModule) -> ModuleHom:
    return ModuleHom(source, target, Matrix.zeros(source.algebra.field, target.dim, source.dim))


# -- subquotients with canonical bases ------------------------------


@dataclass(frozen=True)
class QuotientData:
    """Canonical presentation of ambient/span: projection and a section."""

    projection: Matrix  # q x D
    section: Matrix     # D x q, projection * section = identity


def quotient_data(field: Field, ambient_dim: int, span: Matrix) -> QuotientData:
    if span.rows != ambient_dim:
        raise ValueError("span rows must match ambient dimension")
    red, pivots, r = echelon(span.transpose())
    pivset = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    q = len(free)
    proj_rows = [[field.normalize(0)] * ambient_dim for _ in range(q)]
    for qi, h in enumerate(free):
        proj_rows[qi][h] = field.normalize(1)
    for ri, p in enumerate(pivots):
        for qi, h in enumerate(free):
            proj_rows[qi][p] = field.normalize(-red[ri, h])
    projection = (Matrix.from_rows(field, proj_rows)
                  if q else Matrix.zeros(field, 0, ambient_dim))
    sect_cols = []
    for h in free:
        v = [field.normalize(0)] * ambient_dim
        v[h] = field.normalize(1)
        sect_cols.append(v)
    section = (Matrix.from_rows(field, [[c[i] for c in sect_cols] for i in range(ambient_dim)])
               if q else Matrix.zeros(field, ambient_dim, 0))
    return QuotientData(projection, section)


def submodule(ambient: FdModule, span: Matrix) -> tuple[FdModule, ModuleHom]:
    """Submodule spanned by the given columns (must be action-stable)."""
    basis = column_space_basis(span)
    acts = []
    for i in ambient.algebra.radical_indices:
        moved = ambient.action(i) * basis
        coords = solve(basis, moved)
        if coords is None:
            raise ValidationError("span is not stable under the algebra action")
        acts.append(coords)
    sub = FdModule(ambient.algebra, basis.cols, tuple(acts))
    return sub, ModuleHom(sub, ambient, basis)


def quotient_module(ambient: FdModule, span: Matrix) -> tuple[FdModule, ModuleHom, Matrix]:
    """Quotient by the submodule spanned by the columns.

    Returns (quotient, projection hom, section matrix).
    """
    qd = quotient_data(ambient.algebra.field, ambient.dim, span)
    acts = tuple(qd.projection * ambient.action(i) * qd.section
                 for i in ambient.algebra.radical_indices)
    quo = FdModule(ambient.algebra, qd.projection.rows, acts)
    return quo, ModuleHom(ambient, quo, qd.projection), qd.section


def kernel_module(f: ModuleHom) -> tuple[FdModule, ModuleHom]:
    return submodule(f.source, kernel_basis(f.matrix))


def image_module(f: ModuleHom) -> tuple[FdModule, ModuleHom]:
    return submodule(f.target, f.matrix)


def cokernel_module(f: ModuleHom) -> tuple[FdModule, ModuleHom, Matrix]:
    return quotient_module(f.target, f.matrix)


def direct_sum(mods) -> tuple[FdModule, list[Matrix], list[Matrix]]:
    """Direct sum with injection and projection matrices, in order."""
    mods = list(mods)
    if not mods:
        raise ValueError("direct sum of nothing")
    a = mods[0].algebra
    f = a.field
    total = sum(m.dim for m in mods)
    acts = tuple(block_diag(f, [m.action(i) for m in mods]) for i in a.radical_indices)
    out = FdModule(a, total, acts)
    injections, projections = [], []
    offset = 0
    for m in mods:
        inj = Matrix.zeros(f, total, m.dim)
        pro = Matrix.zeros(f, m.dim, total)
        inj_rows = [[f.normalize(0)] * m.dim for _ in range(total)]
        pro_rows = [[f.normalize(0)] * total for _ in range(m.dim)]
        for t in range(m.dim):
            inj_rows[offset + t][t] = f.normalize(1)
            pro_rows[t][offset + t] = f.normalize(1)
        injections.append(Matrix.from_rows(f, inj_rows) if total else inj)
        projections.append(Matrix.from_rows(f, pro_rows) if m.dim else pro)
        offset += m.dim
    return out, injections, projections


# -- hom, tensor, dual ----------------------------------------------


@dataclass(frozen=True)
class HomSpace:
    """Hom_R(source, target) with a canonical matrix basis.

    The module structure acts by post-composition with the target action
    (equivalently pre-composition with the source action).
    """

    source: FdModule
    target: FdModule
    basis: tuple[Matrix, ...]
    module: FdModule

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, mat: Matrix) -> Matrix:
        """Coordinates of a hom in the canonical basis (column vector)."""
        if not self.basis:
            if vec(mat).is_zero():
                return Matrix.zeros(mat.field, 0, 1)
            raise ValueError("matrix is not in the hom space")
        stacked = hstack([vec(b) for b in self.basis])
        c = solve(stacked, vec(mat))
        if c is None:
            raise ValueError("matrix is not in the hom space")
        return c

    def from_coords(self, c: Matrix) -> Matrix:
        f = self.source.algebra.field
        out = Matrix.zeros(f, self.target.dim, self.source.dim)
        for t, b in enumerate(self.basis):
            if c[t, 0] != 0:
                out = out + b.scale(c[t, 0])
        return out


def hom_space(source: FdModule, target: FdModule) -> HomSpace:
    a = source.algebra
    f = a.field
    nm, nn = source.dim, target.dim
    if nm == 0 or nn == 0:
        return HomSpace(source, target, (), zero_module(a))
    eye_m = Matrix.identity(f, nm)
    eye_n = Matrix.identity(f, nn)
    blocks = []
    for i in a.radical_indices:
        # F A_source = A_target F, vectorized row-major
        blocks.append(kron(target.action(i), eye_m) - kron(eye_n, source.action(i).transpose()))
    system = vstack(blocks) if blocks else Matrix.zeros(f, 0, nn * nm)
    kb = kernel_basis(system)
    basis = tuple(unvec(f, nn, nm, kb.col_matrix(t)) for t in range(kb.cols))
    acts = []
    if basis:
        stacked = hstack([vec(b) for b in basis])
        for i in a.radical_indices:
            cols = [solve(stacked, vec(target.action(i) * b)) for b in basis]
            acts.append(hstack(cols))
    else:
        acts = [Matrix.zeros(f, 0, 0) for _ in a.radical_indices]
    module = FdModule(a, len(basis), tuple(acts))
    return HomSpace(source, target, basis, module)


@dataclass(frozen=True)
class TensorSpace:
    """source tensor target over the algebra, as a canonical quotient.

    The ambient space is the field tensor with (source, target) row-major
    index order; projection maps it onto the canonical quotient basis.
    """

    source: FdModule
    target: FdModule
    module: FdModule
    projection: Matrix
    section: Matrix


def tensor_over(source: FdModule, target: FdModule) -> TensorSpace:
    a = source.algebra
    f = a.field
    dm, dn = source.dim, target.dim
    eye_m = Matrix.identity(f, dm)
    eye_n = Matrix.identity(f, dn)
    rel_blocks = [kron(source.action(i), eye_n) - kron(eye_m, target.action(i))
                  for i in a.radical_indices]
    span = hstack(rel_blocks) if rel_blocks else Matrix.zeros(f, dm * dn, 0)
    qd = quotient_data(f, dm * dn, span)
    acts = tuple(qd.projection * kron(source.action(i), eye_n) * qd.section
                 for i in a.radical_indices)
    module = FdModule(a, qd.projection.rows, acts)
    return TensorSpace(source, target, module, qd.projection, qd.section)


def matlis_dual(m: FdModule) -> FdModule:
    """Dual over the base field with transposed actions."""
    return FdModule(m.algebra, m.dim, tuple(mat.transpose() for mat in m.actions))


def matlis_dual_hom(f: ModuleHom) -> ModuleHom:
    return ModuleHom(matlis_dual(f.target), matlis_dual(f.source), f.matrix.transpose())


def minimal_generators(m: FdModule) -> tuple[int, Matrix]:
    """Number of minimal generators and a lift matrix (columns in m)."""
    a = m.algebra
    f = a.field
    if m.dim == 0:
        return 0, Matrix.zeros(f, 0, 0)
    rad_cols = [m.action(i) for i in a.radical_indices]
    span = hstack(rad_cols) if rad_cols else Matrix.zeros(f, m.dim, 0)
    qd = quotient_data(f, m.dim, span)
    return qd.projection.rows, qd.section


def is_isomorphic(m: FdModule, n: FdModule, attempts: int = 64, seed: int = 0) -> ModuleHom | None:
    """Search for an isomorphism; None is inconclusive, a hom is a proof."""
    if m.dim != n.dim:
        return None
    hs = hom_space(m, n)
    if hs.dim == 0:
        return None if m.dim else identity_hom(m)
    for b in hs.basis:
        if rank(b) == m.dim:
            return ModuleHom(m, n, b)
    rng = random.Random(seed)
    f = m.algebra.field
    for _ in range(attempts):
        cand = Matrix.zeros(f, n.dim, m.dim)
        for b in hs.basis:
            c = rng.randrange(f.p) if not f.is_rational else rng.randint(-2, 2)
            if c:
                cand = cand + b.scale(c)
        if rank(cand) == m.dim:
            return ModuleHom(m, n, cand)
    return None


# -- natural maps ----------------------------------------------------


def homothety_map(c: FdModule) -> tuple[Matrix, HomSpace]:
    """Algebra -> Hom(C, C), r |-> multiplication by r, in hom coordinates."""
    a = c.algebra
    hs = hom_space(c, c)
    cols = [hs.coords(c.elem_action(_unit_coeffs(a, i))) for i in range(a.dim)]
    return hstack(cols) if cols else Matrix.zeros(a.field, hs.dim, 0), hs


def _unit_coeffs(a: Algebra, i: int):
    return tuple(1 if j == i else 0 for j in range(a.dim))


def bass_evaluation(c: FdModule, m: FdModule) -> tuple[ModuleHom, TensorSpace, HomSpace]:
    """Evaluation C (x) Hom(C, M) -> M as a hom from the tensor module."""
    a = c.algebra
    f = a.field
    hs = hom_space(c, m)
    ts = tensor_over(c, hs.module)
    amb_cols = []
    for i in range(c.dim):
        for t in range(hs.dim):
            amb_cols.append(hs.basis[t].col_matrix(i))
    raw = (hstack(amb_cols) if amb_cols
           else Matrix.zeros(f, m.dim, c.dim * hs.dim))
    ev = raw * ts.section
    # factoring through the quotient must reproduce raw on the nose
    if ev * ts.projection != raw:
        raise ValidationError("evaluation does not descend to the tensor quotient")
    return ModuleHom(ts.module, m, ev), ts, hs


def auslander_unit(c: FdModule, m: FdModule) -> tuple[ModuleHom, TensorSpace, HomSpace]:
    """Natural map M -> Hom(C, C (x) M), m |-> (c |-> c tensor m)."""
    a = c.algebra
    f = a.field
    ts = tensor_over(c, m)
    hs = hom_space(c, ts.module)
    cols = []
    for j in range(m.dim):
        hom_cols = []
        for i in range(c.dim):
            amb = Matrix.zeros(f, c.dim * m.dim, 1)
            idx = i * m.dim + j
            ent = list(amb.entries)
            ent[idx] = f.normalize(1)
            amb = Matrix(f, c.dim * m.dim, 1, tuple(ent))
            hom_cols.append(ts.projection * amb)
        phi = hstack(hom_cols) if hom_cols else Matrix.zeros(f, ts.module.dim, c.dim)
        cols.append(hs.coords(phi))
    mat = hstack(cols) if cols else Matrix.zeros(f, hs.dim, 0)
    return ModuleHom(m, hs.module, mat), ts, hs


def biduality_map(m: FdModule, r_free: FdModule) -> tuple[ModuleHom, HomSpace, HomSpace]:
    """Natural map M -> Hom(Hom(M, R), R) in canonical hom coordinates."""
    f = m.algebra.field
    star = hom_space(m, r_free)
    dstar = hom_space(star.module, r_free)
    cols = []
    for t in range(m.dim):
        ev_cols = [b.col_matrix(t) for b in star.basis]
        ev = hstack(ev_cols) if ev_cols else Matrix.zeros(f, r_free.dim, star.dim)
        cols.append(dstar.coords(ev))
    mat = hstack(cols) if cols else Matrix.zeros(f, dstar.dim, 0)
    return ModuleHom(m, dstar.module, mat), star, dstar
