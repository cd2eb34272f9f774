"""Words in the 3-strand braid group and their {s, t} rewriting.

A :class:`BraidWord` stores letters as signed integers: ``1`` is σ₁, ``-2``
is σ₂⁻¹ and so on. An :class:`STWord` uses the generators ``s = σ₂`` and
``t = σ₂σ₁``; its length is the tetrahedron count of the layered
triangulation built from it (see :mod:`corrterm.openbook`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

L = TypeVar("L", bound=Hashable)

_SUPERSCRIPT = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


class BraidParseError(ValueError):
    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} at position {position}: {token!r}")
        self.position = position
        self.token = token


def reduce_letters(letters: Iterable[L], inverse: Callable[[L], L]) -> tuple[L, ...]:
    """Cancel adjacent inverse pairs with a stack (one left-to-right pass)."""
    out: list[L] = []
    for x in letters:
        if out and out[-1] == inverse(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _runs(letters: Sequence[L]) -> list[tuple[L, int]]:
    runs: list[tuple[L, int]] = []
    for x in letters:
        if runs and runs[-1][0] == x:
            runs[-1] = (x, runs[-1][1] + 1)
        else:
            runs.append((x, 1))
    return runs


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        bad = [x for x in letters if x not in (1, -1, 2, -2)]
        if bad:
            raise ValueError(f"not a 3-strand braid letter: {bad[0]}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(-x for x in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def rotate(self, k: int) -> "BraidWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.letters[k:] + self.letters[:k])

    def tokens(self) -> str:
        """Canonical token string, e.g. ``"1 2^-2 1 2^-4"``."""
        parts = []
        for x, n in _runs(self.letters):
            g, e = abs(x), (n if x > 0 else -n)
            parts.append(f"{g}" if e == 1 else f"{g}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for x, n in _runs(self.letters):
            e = n if x > 0 else -n
            sup = "" if e == 1 else str(e).translate(_SUPERSCRIPT)
            parts.append(f"σ{'₁' if abs(x) == 1 else '₂'}{sup}")
        return "".join(parts)


@dataclass(frozen=True)
class STWord:
    """Word in ``s = σ₂`` and ``t = σ₂σ₁``; letters are ``(gen, ±1)``."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((g, int(e)) for g, e in self.letters)
        for g, e in letters:
            if g not in ("s", "t") or e not in (1, -1):
                raise ValueError(f"not an s/t letter: {(g, e)}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def to_braid(self) -> BraidWord:
        """Substitute s ↦ σ₂, t ↦ σ₂σ₁ back into the braid alphabet."""
        out: list[int] = []
        for g, e in self.letters:
            block = [2] if g == "s" else [2, 1]
            out.extend(block if e > 0 else [-x for x in reversed(block)])
        return BraidWord(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for (g, e), n in _runs(self.letters):
            k = n * e
            parts.append(g if k == 1 else f"{g}^{k}")
        return " ".join(parts)


_TOKEN = re.compile(r"([+-]?)(\d+)(?:(\^)([+-]?)(\d*))?")


def parse_braid(text: str) -> BraidWord:
    """Parse whitespace-separated tokens ``sign? gen (^ sign? digits)?``.

    >>> parse_braid("1 2^-3").tokens()
    '1 2^-3'
    >>> str(parse_braid("-2^-2"))
    'σ₂²'
    """
    letters: list[int] = []
    for m in re.finditer(r"\S+", text):
        tok, pos = m.group(), m.start()
        tm = _TOKEN.fullmatch(tok)
        if tm is None:
            raise BraidParseError("malformed token", pos, tok)
        sign, gen, caret, esign, edigits = tm.groups()
        if int(gen) not in (1, 2):
            raise BraidParseError("generator index outside {1,2}", pos, tok)
        if caret and not edigits:
            raise BraidParseError("empty exponent", pos, tok)
        letter = -int(gen) if sign == "-" else int(gen)
        exp = int(edigits) if caret else 1
        if esign == "-":
            letter = -letter
        letters.extend([letter] * exp)
    return BraidWord(tuple(letters))


def family_braid(kind: str, params: Sequence[int]) -> BraidWord:
    """The two 3-braid families with Z₂² second homology in the cover.

    ``even``: σ₁σ₂^{-2a₁}⋯σ₁σ₂^{-2a₂ₙ} with 2n parameters, all positive.
    ``odd``: σ₁σ₂^{-2a-1}σ₁σ₂^{-2b-1}σ₁σ₂^{-2c-1} with a, b, c ≥ 0.
    """
    params = [int(p) for p in params]
    if kind == "even":
        if not params or len(params) % 2:
            raise ValueError("even family needs 2n > 0 parameters")
        if any(p <= 0 for p in params):
            raise ValueError("even family parameters must be positive")
        exps = [2 * p for p in params]
    elif kind == "odd":
        if len(params) != 3:
            raise ValueError("odd family needs exactly 3 parameters")
        if any(p < 0 for p in params):
            raise ValueError("odd family parameters must be nonnegative")
        exps = [2 * p + 1 for p in params]
    else:
        raise ValueError(f"unknown family {kind!r}; expected 'even' or 'odd'")
    letters: list[int] = []
    for e in exps:
        letters.append(1)
        letters.extend([-2] * e)
    return BraidWord(tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    return BraidWord(reduce_letters(w.letters, lambda x: -x))


def st_free_reduce(w: STWord) -> STWord:
    return STWord(reduce_letters(w.letters, lambda x: (x[0], -x[1])))


def strand_permutation(w: BraidWord) -> tuple[int, int, int]:
    """Strand labels found at positions 1, 2, 3 after reading ``w``."""
    pos = [1, 2, 3]
    for x in w.letters:
        i = abs(x) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    return tuple(pos)


_ST_IMAGE = {
    2: (("s", 1),),
    -2: (("s", -1),),
    1: (("s", -1), ("t", 1)),
    -1: (("t", -1), ("s", 1)),
}


def to_st_word(w: BraidWord, power: int = 1) -> STWord:
    """Rewrite ``σ₂^power · w · σ₂^-power`` in the s/t alphabet.

    Uses σ₂ ↦ s, σ₁ ↦ s⁻¹t, σ₁⁻¹ ↦ t⁻¹s and then cancels. The default
    single conjugation by σ₂ turns σ₁σ₂^k blocks into t s^(k-1).
    """
    e = 1 if power >= 0 else -1
    letters: list[tuple[str, int]] = [("s", e)] * abs(power)
    for x in w.letters:
        letters.extend(_ST_IMAGE[x])
    letters.extend([("s", -e)] * abs(power))
    return st_free_reduce(STWord(tuple(letters)))


def st_length_upper_bound(w: BraidWord, k_max: int = 2) -> tuple[int, STWord]:
    """Shortest s/t rewriting over cyclic rotations and σ₂^k conjugations.

    The search covers every rotation of ``w`` and every ``|k| <= k_max``;
    ties keep the first candidate found, trying rotation 0 and a single
    conjugation (k = 1) first. The result bounds the word length from
    above; it is not a geodesic length.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    ks = sorted(range(-k_max, k_max + 1), key=lambda k: (abs(k - 1), k))
    best: STWord | None = None
    for r in range(max(len(w), 1)):
        rotated = w.rotate(r)
        for k in ks:
            cand = to_st_word(rotated, k)
            if best is None or len(cand) < len(best):
                best = cand
    assert best is not None
    return len(best), best
