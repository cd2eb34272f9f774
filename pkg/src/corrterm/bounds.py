"""Genus, Z₂-norm and complexity bounds read off a d-invariant table."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intlinalg as la
from .blackgraph import BlackGraph, black_graph_of_braid, braid_blocks
from .braidlang import BraidWord, family_braid, st_length_upper_bound
from .dinv import DEFAULT_BUDGET, DInvariantTable, d_table
from .goeritz import GoeritzForm, goeritz_form
from .spinc import HElement, homology_group, two_torsion_elements

ASSUMPTIONS = (
    "complexity lower bound assumes the cover is irreducible and atoroidal",
    "Z2-surjectivity condition on incompressible surfaces: assumed, not verified "
    "(norm bounds here come from the three-class inequality test instead)",
)


@dataclass(frozen=True)
class TautConnResult:
    """Norm lower bounds from three connected-genus bounds, if the test passes."""

    lower: tuple[Fraction, Fraction, Fraction] | None
    failed: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.lower is not None


@dataclass(frozen=True)
class Family:
    kind: str
    params: tuple[int, ...]

    def braid(self) -> BraidWord:
        return family_braid(self.kind, self.params)


@dataclass(frozen=True)
class GenusBound:
    torsion: HElement
    theta: Fraction
    genus: Fraction


@dataclass(frozen=True)
class BoundsReport:
    table: DInvariantTable
    genus_bounds: tuple[GenusBound, ...]
    norm_lower: tuple[Fraction, ...] | None
    norm_upper: tuple[int, ...] | None
    taut_failed: tuple[int, ...]
    complexity_lower: int | None
    complexity_upper: int | None
    layering_witness: object | None
    family: Family | None
    flags: tuple[str, ...] = field(default=())

    @property
    def norms_exact(self) -> bool:
        return (
            self.norm_lower is not None
            and self.norm_upper is not None
            and tuple(self.norm_lower) == tuple(self.norm_upper)
        )


def theta_lower_bound(tbl: DInvariantTable, alpha: Sequence[int]) -> Fraction:
    """``max_c d(c + 2α) - d(c)``, a lower bound for ``1 + Θ(α)``."""
    H = homology_group(tbl.form)
    alpha = H.reduce(alpha)
    d = {e.spinc.class_id: e.d for e in tbl.entries}
    return max(d[H.add(cid, alpha)] - dc for cid, dc in d.items())


def nonorientable_genus_bound(tbl: DInvariantTable, t: Sequence[int]) -> Fraction:
    H = homology_group(tbl.form)
    t = H.reduce(t)
    if H.scale(2, t) != H.zero():
        raise ValueError(f"{t} is not 2-torsion")
    if t == H.zero():
        raise ValueError("the zero class carries no nonorientable surface")
    return 2 * theta_lower_bound(tbl, t)


def taut_conn_norm_bounds(h: Sequence[Fraction]) -> TautConnResult:
    """Check ``h_i + h_{i+1} >= h_{i+2} + 2`` cyclically; if all hold, ``h_i - 2`` bound the norms.

    ``failed`` lists the indices i (0-based) of the inequalities that fail.
    """
    if len(h) != 3:
        raise ValueError("exactly three genus bounds are required")
    h = [Fraction(x) for x in h]
    failed = tuple(i for i in range(3) if h[i] + h[(i + 1) % 3] < h[(i + 2) % 3] + 2)
    if failed:
        return TautConnResult(None, failed)
    return TautConnResult(tuple(x - 2 for x in h))


def family_norm_upper(kind: str, params: Sequence[int]) -> tuple[int, int, int]:
    """Negative Euler characteristic of the lifted spanning disks of the three components."""
    family_braid(kind, params)  # validates
    p = [int(x) for x in params]
    if kind == "even":
        n = len(p) // 2
        odd = sum(p[0::2])  # a_1, a_3, ... (1-based odd indices)
        even = sum(p[1::2])
        return (max(odd + n - 2, 0), max(even + n - 2, 0), max(odd + even - 2, 0))
    a, b, c = p
    return (a + b, b + c, c + a)


def jrt_complexity_lower(norms: Sequence[Fraction]) -> int:
    total = 2 + sum(Fraction(x) for x in norms)
    if total.denominator != 1:
        raise ValueError("norm values must be integers")
    return int(total)


def family_kappas(kind: str, params: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """The covectors κ₀, κ₁, κ₂, κ₃ singled out for each family.

    For ``even`` these are 0, q(Σ_odd eᵢ), q(Σ_even eᵢ) and their sum, whose
    differences from κ₀ are the three order-2 classes. For ``odd`` they are
    κ₀ = (1,-1,1) and κ₀ + q(e₁-e₂), κ₀ + q(e₂-e₃), κ₀ + q(e₃-e₁). Each
    picks out the right class, but only κ₀, κ₁ (and all four in the even
    case) are maximizers of their classes; use the d-table for values.
    """
    f = family_form(kind, params)
    Q, b = f.Q, f.b
    if kind == "even":
        odd_ind = [1 if i % 2 == 0 else 0 for i in range(b)]
        even_ind = [1 - x for x in odd_ind]
        k1 = la.matvec(Q, odd_ind)
        k2 = la.matvec(Q, even_ind)
        k3 = tuple(x + y for x, y in zip(k1, k2))
        return ((0,) * b, k1, k2, k3)
    k0 = (1, -1, 1)
    out = [k0]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        v = [0, 0, 0]
        v[i], v[j] = 1, -1
        out.append(tuple(k + q for k, q in zip(k0, la.matvec(Q, v))))
    return tuple(out)


def family_torsion(kind: str, params: Sequence[int]) -> tuple[HElement, HElement, HElement]:
    """Order-2 classes ``(κⱼ - κ₀)/2`` in family order."""
    f = family_form(kind, params)
    H = homology_group(f)
    k = family_kappas(kind, params)
    return tuple(H.coords([(x - y) // 2 for x, y in zip(kj, k[0])]) for kj in k[1:])


def family_form(kind: str, params: Sequence[int]) -> GoeritzForm:
    return goeritz_form(black_graph_of_braid(family_braid(kind, params)))


def detect_family(w: BraidWord) -> Family | None:
    """Recognize a braid whose rotation is one of the two families."""
    q = braid_blocks(w)
    if q is None or len(q) < 2:
        return None
    if len(q) % 2 == 0 and all(x % 2 == 0 for x in q):
        return Family("even", tuple(x // 2 for x in q))
    if len(q) == 3 and all(x % 2 == 1 for x in q):
        return Family("odd", tuple((x - 1) // 2 for x in q))
    return None


def bounds_report(
    source: BraidWord | Family | BlackGraph | GoeritzForm,
    k_max: int = 2,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> BoundsReport:
    """Run the whole pipeline on a braid, a family, a graph, or a form."""
    braid: BraidWord | None = None
    family: Family | None = None
    if isinstance(source, Family):
        family = source
        braid = source.braid()
    elif isinstance(source, BraidWord):
        braid = source
        family = detect_family(braid)
    if braid is not None:
        form = goeritz_form(black_graph_of_braid(braid))
    elif isinstance(source, BlackGraph):
        form = goeritz_form(source)
    else:
        form = source
    tbl = d_table(form, budget=budget, workers=workers)
    H = homology_group(form)

    if family is not None:
        torsion = list(family_torsion(family.kind, family.params))
    else:
        torsion = two_torsion_elements(H)[1:]
    genus = tuple(
        GenusBound(t, theta_lower_bound(tbl, t), nonorientable_genus_bound(tbl, t))
        for t in torsion
    )

    flags = list(ASSUMPTIONS)
    norm_lower = None
    failed: tuple[int, ...] = ()
    c_lower = None
    if len(genus) == 3:
        res = taut_conn_norm_bounds([g.genus for g in genus])
        if res.ok:
            norm_lower = tuple(max(x, Fraction(0)) for x in res.lower)
            c_lower = jrt_complexity_lower(norm_lower)
        else:
            failed = res.failed
            flags.append("three-class inequality test failed; no norm bound")
    else:
        flags.append(
            f"H2(Y;Z2) has rank {len(two_torsion_elements(H)).bit_length() - 1}, not 2; "
            "no norm or complexity claims"
        )

    norm_upper = family_norm_upper(family.kind, family.params) if family else None
    c_upper = None
    witness = None
    if braid is not None:
        c_upper, witness = st_length_upper_bound(braid, k_max)
    return BoundsReport(
        table=tbl,
        genus_bounds=genus,
        norm_lower=norm_lower,
        norm_upper=norm_upper,
        taut_failed=failed,
        complexity_lower=c_lower,
        complexity_upper=c_upper,
        layering_witness=witness,
        family=family,
        flags=tuple(flags),
    )
