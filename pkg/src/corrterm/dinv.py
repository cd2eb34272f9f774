"""Correction terms ``d(c) = max_{κ∈c} (κ Q⁻¹ κᵀ + b) / 4``.

Writing ``κ = rep + 2 Q x`` with ``x ∈ Zᵇ`` gives
``κ Q⁻¹ κᵀ = -4 (x - c)ᵀ P (x - c)`` where ``P = -Q`` and
``c = -Q⁻¹ repᵀ / 2``, so each class needs one closest-vector search in the
positive definite form P. The search is a depth-first Schnorr-Euchner
enumeration over an exact ``L D Lᵀ`` factorization; every comparison is
done in rationals.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import intlinalg as la
from .goeritz import GoeritzForm
from .spinc import HElement, SpincClass, enumerate_classes

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class RadiusTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class DEntry:
    spinc: SpincClass
    norm_sq: Fraction
    d: Fraction
    maximizer: tuple[int, ...]


@dataclass(frozen=True)
class DInvariantTable:
    form: GoeritzForm
    entries: tuple[DEntry, ...]

    @property
    def b(self) -> int:
        return self.form.b

    @property
    def det(self) -> int:
        return self.form.det

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def by_id(self) -> dict[HElement, DEntry]:
        return {e.spinc.class_id: e for e in self.entries}

    def d(self, class_id: Sequence[int]) -> Fraction:
        return self.by_id()[tuple(class_id)].d


class _Lattice:
    """Per-form data for the enumeration: ``P = -Q = L D Lᵀ``."""

    def __init__(self, f: GoeritzForm):
        self.form = f
        self.b = f.b
        self.P = tuple(tuple(-x for x in row) for row in f.Q)
        self.L, self.D = la.ldl(self.P)

    def center(self, rep: Sequence[int]) -> list[Fraction]:
        X0 = la.matvec(self.form.Qinv, rep)
        return [-Fraction(x) / 2 for x in X0]

    def closest(self, rep: Sequence[int]) -> tuple[Fraction, list[tuple[int, ...]]]:
        """Minimum of ``(x-c)ᵀP(x-c)`` over integer x and every x attaining it."""
        b, L, D = self.b, self.L, self.D
        c = self.center(rep)
        seed = [math.floor(ci + Fraction(1, 2)) for ci in c]
        z = [s - ci for s, ci in zip(seed, c)]
        best = la.quad(z, self.P)
        sols: list[tuple[int, ...]] = []
        x = [0] * b

        def search(i: int, partial: Fraction) -> None:
            nonlocal best, sols
            ctr = c[i] - sum(L[j][i] * (x[j] - c[j]) for j in range(i + 1, b))
            x0 = math.floor(ctr + Fraction(1, 2))
            up, dn = x0, x0 - 1
            up_alive = dn_alive = True
            while up_alive or dn_alive:
                if up_alive and (not dn_alive or abs(up - ctr) <= abs(dn - ctr)):
                    v, side = up, 1
                else:
                    v, side = dn, -1
                total = partial + D[i] * (v - ctr) ** 2
                if total > best:
                    if side == 1:
                        up_alive = False
                    else:
                        dn_alive = False
                    continue
                if side == 1:
                    up += 1
                else:
                    dn -= 1
                x[i] = v
                if i == 0:
                    if total < best:
                        best, sols = total, [tuple(x)]
                    else:
                        sols.append(tuple(x))
                else:
                    search(i - 1, total)

        search(b - 1, Fraction(0))
        return best, sols


@lru_cache(maxsize=64)
def _lattice(f: GoeritzForm) -> _Lattice:
    return _Lattice(f)


def max_kappa_norm_sq(f: GoeritzForm, c: SpincClass) -> tuple[Fraction, tuple[int, ...]]:
    """Largest ``κ Q⁻¹ κᵀ`` over the class of ``c`` and the lexicographically
    smallest covector attaining it."""
    if f.b == 0:
        return Fraction(0), ()
    lat = _lattice(f)
    rep = c.representative
    dist, xs = lat.closest(rep)
    kappas = [tuple(r + 2 * q for r, q in zip(rep, la.matvec(f.Q, x))) for x in xs]
    return -4 * dist, min(kappas)


def d_invariant(f: GoeritzForm, c: SpincClass) -> Fraction:
    value, _ = max_kappa_norm_sq(f, c)
    return (value + f.b) / 4


def _entry(args: tuple[GoeritzForm, SpincClass]) -> DEntry:
    f, c = args
    value, kappa = max_kappa_norm_sq(f, c)
    return DEntry(c, value, (value + f.b) / 4, kappa)


def d_table(
    f: GoeritzForm, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> DInvariantTable:
    """d-invariants of every class, in the order of :func:`enumerate_classes`.

    ``workers > 1`` spreads classes over processes; the result does not
    depend on it.
    """
    if f.abs_det > budget:
        raise BudgetExceeded(f"|det Q| = {f.abs_det} exceeds the class budget {budget}")
    classes = enumerate_classes(f)
    if workers and workers > 1 and len(classes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = tuple(pool.map(_entry, [(f, c) for c in classes], chunksize=64))
    else:
        entries = tuple(_entry((f, c)) for c in classes)
    return DInvariantTable(f, entries)


# -- brute-force oracle ------------------------------------------------------


def _seed_and_value(f: GoeritzForm, rep: Sequence[int]) -> tuple[list[int], Fraction]:
    P = [[-x for x in row] for row in f.Q]
    X0 = la.matvec(f.Qinv, rep)
    c = [-Fraction(x) / 2 for x in X0]
    seed = [math.floor(ci + Fraction(1, 2)) for ci in c]
    z = [s - ci for s, ci in zip(seed, c)]
    return seed, Fraction(la.quad(z, P))


def certified_radius(f: GoeritzForm, c: SpincClass) -> int:
    """Box half-width around the rounded seed that must contain a maximizer.

    A minimizer x* of ``(x-c)ᵀP(x-c)`` satisfies ``|x*-c|² ≤ v₀/λ`` with v₀
    the seed value and λ ≤ λ_min(P). Gershgorin applied to ``P⁻¹ = -Q⁻¹``
    bounds its largest eigenvalue by ``g = max_i Σ_j |P⁻¹_ij|``, so
    λ = 1/g works. The seed is within 1/2 of c in each coordinate, which the
    final +1 absorbs.
    """
    if f.b == 0:
        return 0
    _, v0 = _seed_and_value(f, c.representative)
    g = max(sum(abs(x) for x in row) for row in f.Qinv)
    return la.ceil_sqrt(v0 * g) + 1


def brute_force_max(f: GoeritzForm, c: SpincClass, radius: int | None = None) -> Fraction:
    """Maximum of ``κ Q⁻¹ κᵀ`` over ``κ = rep + 2Qx`` with x in a box.

    Uses ``|rep + 2Qx|² = |rep|² + 4 rep·x + 4 xᵀQx``: only the constant
    needs Q⁻¹, the box scan itself is integer arithmetic.
    """
    if f.b == 0:
        return Fraction(0)
    need = certified_radius(f, c)
    if radius is None:
        radius = need
    if radius < need:
        raise RadiusTooSmall(f"radius {radius} is below the certified bound {need}")
    rep = c.representative
    seed, _ = _seed_and_value(f, rep)
    const = Fraction(la.quad(rep, f.Qinv))
    b = f.b
    Q = np.array(f.Q, dtype=np.int64)
    r = np.array(rep, dtype=np.int64)
    span = np.arange(-radius, radius + 1, dtype=np.int64)
    big = max(abs(s) for s in seed) + radius
    if 4 * b * b * int(np.abs(Q).max()) * big * big + 4 * b * int(np.abs(r).max()) * big > 2**62:
        raise OverflowError("box too large for int64 scan")
    best = None
    # scan the box one leading coordinate at a time to bound memory
    rest = b - 1
    tail = (
        np.array(list(itertools.product(span, repeat=rest)), dtype=np.int64).reshape(-1, rest)
        if rest
        else np.zeros((1, 0), dtype=np.int64)
    )
    tail = tail + np.array(seed[1:], dtype=np.int64)
    for x0 in span + seed[0]:
        X = np.hstack([np.full((tail.shape[0], 1), x0, dtype=np.int64), tail])
        vals = X @ r + np.einsum("ij,jk,ik->i", X, Q, X)
        m = int(vals.max())
        best = m if best is None else max(best, m)
    return const + 4 * best
