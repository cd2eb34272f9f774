"""Layered triangulations of genus-one open books.

Layering a tetrahedron on an interior edge of the one-vertex triangulation
of the punctured torus flips that edge and right-multiplies the gluing map
by a fixed word in the twists τ_a, τ_b:

    a₁ → τ_b⁻¹τ_a⁻¹    a₂ → τ_aτ_b    b₁ → τ_a⁻¹    b₂ → τ_a

Under the branched double cover τ_a covers σ₂ and τ_b covers σ₁, so an
s/t word (s = σ₂, t = σ₂σ₁) compiles letter by letter into flips:
s → b₂, s⁻¹ → b₁, t → a₂, t⁻¹ → a₁.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intlinalg as la
from .blackgraph import black_graph_of_braid
from .braidlang import BraidWord, STWord, reduce_letters
from .goeritz import goeritz_form
from .spinc import homology_group

FLIP_EDGES = ("a1", "a2", "b1", "b2")

FLIP_TABLE: dict[str, tuple[tuple[str, int], ...]] = {
    "a1": (("b", -1), ("a", -1)),
    "a2": (("a", 1), ("b", 1)),
    "b1": (("a", -1),),
    "b2": (("a", 1),),
}

_ST_FLIP = {("s", 1): "b2", ("s", -1): "b1", ("t", 1): "a2", ("t", -1): "a1"}

T_A = ((1, 1), (0, 1))
T_B = ((1, 0), (-1, 1))
_TWIST = {
    ("a", 1): T_A,
    ("a", -1): ((1, -1), (0, 1)),
    ("b", 1): T_B,
    ("b", -1): ((1, 0), (1, 1)),
}


@dataclass(frozen=True)
class MappingClassWord:
    """Word in the Dehn twists τ_a, τ_b; letters are ``("a"|"b", ±1)``."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((g, int(e)) for g, e in self.letters)
        for g, e in letters:
            if g not in ("a", "b") or e not in (1, -1):
                raise ValueError(f"not a twist letter: {(g, e)}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "MappingClassWord") -> "MappingClassWord":
        return MappingClassWord(self.letters + other.letters)

    def reduced(self) -> "MappingClassWord":
        return MappingClassWord(reduce_letters(self.letters, lambda x: (x[0], -x[1])))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"τ{g}" + ("" if e == 1 else "⁻¹") for g, e in self.letters)


@dataclass(frozen=True)
class LayeringPlan:
    flips: tuple[str, ...]
    monodromy: MappingClassWord
    matrix: la.Matrix

    @property
    def tetrahedron_count(self) -> int:
        return len(self.flips)


@dataclass(frozen=True)
class H1Group:
    """``coker(M - I)``: torsion orders plus the rank of the free part."""

    torsion: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out


@dataclass(frozen=True)
class Crosscheck:
    ok: bool
    open_book: H1Group
    goeritz_factors: tuple[int, ...]
    matrix: la.Matrix


def braid_to_monodromy(w: BraidWord) -> MappingClassWord:
    return MappingClassWord(tuple(("b" if abs(x) == 1 else "a", 1 if x > 0 else -1) for x in w))


def st_to_monodromy(w: STWord) -> MappingClassWord:
    """τ-image of an s/t word: s ↦ τ_a, t ↦ τ_aτ_b."""
    out: list[tuple[str, int]] = []
    for g, e in w:
        block = [("a", 1)] if g == "s" else [("a", 1), ("b", 1)]
        out.extend(block if e > 0 else [(x, -1) for x, _ in reversed(block)])
    return MappingClassWord(tuple(out))


def monodromy_matrix(m: MappingClassWord) -> la.Matrix:
    """Action on first homology of the page, multiplied in word order."""
    M = la.identity(2)
    for letter in m.letters:
        M = la.matmul(M, _TWIST[letter])
    return M


def flip_step(current: MappingClassWord, edge: str) -> MappingClassWord:
    if edge not in FLIP_TABLE:
        raise ValueError(f"unknown interior edge {edge!r}; expected one of {FLIP_EDGES}")
    return (current * MappingClassWord(FLIP_TABLE[edge])).reduced()


def compile_layering(stw: STWord) -> LayeringPlan:
    flips = tuple(_ST_FLIP[letter] for letter in stw)
    m = flips_monodromy(flips)
    return LayeringPlan(flips, m, monodromy_matrix(m))


def flips_monodromy(flips: Sequence[str]) -> MappingClassWord:
    m = MappingClassWord()
    for edge in flips:
        m = flip_step(m, edge)
    return m


def h1_open_book(m: MappingClassWord | la.Matrix) -> H1Group:
    M = m if not isinstance(m, MappingClassWord) else monodromy_matrix(m)
    A = [[M[i][j] - (i == j) for j in range(2)] for i in range(2)]
    factors = la.smith_normal_form(A).cokernel_factors()
    return H1Group(
        tuple(d for d in factors if d > 1),
        sum(1 for d in factors if d == 0),
    )


def crosscheck_h1(w: BraidWord) -> Crosscheck:
    """Compare ``coker(M - I)`` of the open book with ``coker(Q)`` of the black graph."""
    f = goeritz_form(black_graph_of_braid(w))
    ob = h1_open_book(braid_to_monodromy(w))
    goeritz_factors = homology_group(f).invariant_factors
    ok = ob.free_rank == 0 and ob.torsion == goeritz_factors
    return Crosscheck(ok, ob, goeritz_factors, monodromy_matrix(braid_to_monodromy(w)))
