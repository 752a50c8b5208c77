"""Shared fixture algebras and modules used by tests and examples.

Three base rings cover the interesting behaviours at desk scale:

* ``F2[x]/(x^2)``   - self-injective, every module is a sum of k and R;
* ``F3[x]/(x^3)``   - self-injective with period-two syzygies;
* ``F2[x,y]/(x^2, xy, y^2)`` - not self-injective, residue-field Betti
  numbers double at every step, and the dual of the ring is a
  semidualizing module that is not free.
"""

from __future__ import annotations

from .algebra import Algebra, FdModule, Matrix, free_module, make_algebra, matlis_dual, residue_field_module
from .linalg import GF, QQ, Field


def truncated_polynomial(p: int | None, n: int, name: str | None = None) -> Algebra:
    """k[x]/(x^n) over GF(p), or over the rationals when p is None."""
    field = QQ if p is None else GF(p)
    names = ["e"] + [f"x{i}" if i > 1 else "x" for i in range(1, n)]
    products = {}
    for i in range(1, n):
        for j in range(i, n):
            tgt = {}
            if i + j < n:
                tgt = {names[i + j]: 1}
            products[(names[i], names[j])] = tgt
    label = name or (f"R{p}x{n}" if p else f"RQx{n}")
    return make_algebra(label, field, names, "e", products)


def square_zero_pair(p: int = 2, name: str = "S") -> Algebra:
    """k[x,y]/(x^2, xy, y^2): radical square zero on two generators."""
    field = GF(p)
    products = {("x", "x"): {}, ("x", "y"): {}, ("y", "y"): {}}
    return make_algebra(name, field, ["e", "x", "y"], "e", products)


def dual_numbers() -> Algebra:
    return truncated_polynomial(2, 2, name="R2")


def cubic_line() -> Algebra:
    return truncated_polynomial(3, 3, name="R3")


def cyclic_quotient(a: Algebra, i: int) -> FdModule:
    """k[x]/(x^n)-module k[x]/(x^i) with x acting as the shift block."""
    f = a.field
    n = a.dim
    if not (0 < i <= n):
        raise ValueError("quotient exponent out of range")
    shift = Matrix.from_rows(f, [[1 if c == r - 1 else 0 for c in range(i)] for r in range(i)])
    acts = []
    power = Matrix.identity(f, i)
    for _ in a.radical_indices:
        power = power * shift
        acts.append(power)
    return FdModule(a, i, tuple(acts))


def injective_envelope(a: Algebra) -> FdModule:
    """Matlis dual of the free rank-one module."""
    return matlis_dual(free_module(a, 1))


def k_module(a: Algebra) -> FdModule:
    return residue_field_module(a)
