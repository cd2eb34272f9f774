"""Characteristic covectors modulo ``2·Q(Zᵇ)`` and the group ``H = Zᵇ/Q(Zᵇ)``.

Covectors are integer tuples of length b. The base characteristic covector
is the diagonal of Q; a class is labelled by the Smith coordinates of
``(κ - diag Q)/2`` in H. Smith coordinates: if ``U Q V = diag(d)`` then
``x ↦ (U x) mod d`` is an isomorphism ``Zᵇ/Q(Zᵇ) ≅ ⊕ Z/dᵢ``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import intlinalg as la
from .goeritz import GoeritzForm

HElement = tuple[int, ...]


class ParityError(ValueError):
    """A covector is not characteristic for the form."""


@dataclass(frozen=True)
class HomologyGroup:
    """``⊕ Z/dᵢ`` with the Smith transform used to reach it.

    ``factors`` keeps trivial factors (``dᵢ = 1``) so coordinates line up
    with ``Zᵇ``; :attr:`invariant_factors` drops them.
    """

    factors: tuple[int, ...]
    U: la.Matrix
    U_inv: la.Matrix

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d != 1)

    def reduce(self, y: Sequence[int]) -> HElement:
        return tuple(int(v) % d for v, d in zip(y, self.factors))

    def coords(self, x: Sequence[int]) -> HElement:
        """Smith coordinates of an integer vector of ``Zᵇ``."""
        return self.reduce(la.matvec(self.U, x))

    def lift(self, y: Sequence[int]) -> tuple[int, ...]:
        return la.matvec(self.U_inv, y)

    def add(self, y: Sequence[int], z: Sequence[int]) -> HElement:
        return self.reduce([a + c for a, c in zip(y, z)])

    def neg(self, y: Sequence[int]) -> HElement:
        return self.reduce([-a for a in y])

    def scale(self, k: int, y: Sequence[int]) -> HElement:
        return self.reduce([k * a for a in y])

    def elements(self) -> list[HElement]:
        return [tuple(y) for y in itertools.product(*(range(d) for d in self.factors))]

    def zero(self) -> HElement:
        return (0,) * len(self.factors)


@dataclass(frozen=True)
class SpincClass:
    representative: tuple[int, ...]
    class_id: HElement


@lru_cache(maxsize=256)
def homology_group(f: GoeritzForm) -> HomologyGroup:
    if f.b == 0:
        return HomologyGroup((), (), ())
    snf = la.smith_normal_form(f.Q)
    return HomologyGroup(snf.diagonal, snf.U, snf.U_inv)


def base_characteristic(f: GoeritzForm) -> tuple[int, ...]:
    return tuple(f.Q[i][i] for i in range(f.b))


def is_characteristic(f: GoeritzForm, kappa: Sequence[int]) -> bool:
    return len(kappa) == f.b and all((k - f.Q[i][i]) % 2 == 0 for i, k in enumerate(kappa))


def _check(f: GoeritzForm, kappa: Sequence[int]) -> tuple[int, ...]:
    kappa = tuple(int(k) for k in kappa)
    if not is_characteristic(f, kappa):
        raise ParityError(f"{kappa} is not characteristic (entries must match diag Q mod 2)")
    return kappa


def class_of(f: GoeritzForm, kappa: Sequence[int]) -> SpincClass:
    kappa = _check(f, kappa)
    base = base_characteristic(f)
    alpha = [(k - c) // 2 for k, c in zip(kappa, base)]
    return SpincClass(kappa, homology_group(f).coords(alpha))


def enumerate_classes(f: GoeritzForm) -> list[SpincClass]:
    """One class per element of H, in lexicographic Smith-coordinate order."""
    H = homology_group(f)
    base = base_characteristic(f)
    out = []
    for y in H.elements():
        rep = tuple(c + 2 * a for c, a in zip(base, H.lift(y)))
        out.append(SpincClass(rep, y))
    return out


def same_class(f: GoeritzForm, k1: Sequence[int], k2: Sequence[int]) -> bool:
    k1, k2 = _check(f, k1), _check(f, k2)
    H = homology_group(f)
    diff = [(a - c) // 2 for a, c in zip(k1, k2)]
    return H.coords(diff) == H.zero()


def two_torsion_elements(H: HomologyGroup) -> list[HElement]:
    """All ``t`` with ``2t = 0``, zero first, lexicographic."""
    choices = [(0, d // 2) if d % 2 == 0 else (0,) for d in H.factors]
    return [tuple(t) for t in itertools.product(*choices)]


def shift_class(f: GoeritzForm, c: SpincClass, alpha: Sequence[int]) -> SpincClass:
    """The class ``c + 2[α]`` computed from an explicit lift of α."""
    H = homology_group(f)
    lift = H.lift(alpha)
    return class_of(f, [k + 2 * a for k, a in zip(c.representative, lift)])


def conjugate_class(f: GoeritzForm, c: SpincClass) -> SpincClass:
    return class_of(f, [-k for k in c.representative])
