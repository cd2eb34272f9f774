"""The negative definite cycle-space form of a black graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intlinalg as la
from .blackgraph import BlackGraph, CircuitMatrix, circuit_matrix, spanning_tree


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class GoeritzForm:
    """Symmetric negative definite integer form with exact inverse.

    Build one with :func:`gram_matrix` (from circuits) or
    :meth:`from_matrix` (from a literal matrix).
    """

    Q: la.Matrix
    Qinv: la.RatMatrix = field(repr=False, compare=False)
    det: int = field(compare=False)

    @property
    def b(self) -> int:
        return len(self.Q)

    @property
    def abs_det(self) -> int:
        return abs(self.det)

    @classmethod
    def from_matrix(cls, Q: Sequence[Sequence[int]]) -> "GoeritzForm":
        Q = la.as_matrix(Q)
        n = len(Q)
        if any(len(row) != n for row in Q):
            raise FormError("matrix is not square")
        if any(Q[i][j] != Q[j][i] for i in range(n) for j in range(i)):
            raise FormError("matrix is not symmetric")
        if not is_negative_definite(Q):
            raise FormError("matrix is not negative definite")
        det, inv = det_and_inverse(Q)
        return cls(Q, inv, det)


def det_and_inverse(Q: Sequence[Sequence[int]]) -> tuple[int, la.RatMatrix]:
    try:
        return la.det_and_inverse(Q)
    except la.SingularMatrixError as exc:
        raise FormError("singular form") from exc


def is_negative_definite(Q: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion: leading minors alternate in sign, starting negative."""
    minors = la.leading_minors(Q)
    return all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors))


def gram_matrix(N: CircuitMatrix) -> GoeritzForm:
    """``Q = -N Nᵀ``: minus the signed count of edges shared by two circuits."""
    rows = N.rows
    Q = tuple(
        tuple(-sum(x * y for x, y in zip(ri, rj)) for rj in rows) for ri in rows
    )
    if not rows:
        return GoeritzForm((), (), 1)
    det, inv = det_and_inverse(Q)  # circuits of a spanning tree are independent
    form = GoeritzForm(Q, inv, det)
    assert is_negative_definite(Q)
    return form


def goeritz_form(g: BlackGraph) -> GoeritzForm:
    return gram_matrix(circuit_matrix(g, spanning_tree(g)))


def dual_norm_sq(f: GoeritzForm, alpha: Sequence[int]) -> Fraction:
    """``α Q⁻¹ αᵀ``, the maximum of α(v)²/Q(v,v); always ≤ 0."""
    if len(alpha) != f.b:
        raise ValueError(f"expected a vector of length {f.b}")
    return Fraction(la.quad(alpha, f.Qinv)) if f.b else Fraction(0)
