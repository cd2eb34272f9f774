import pytest
from hypothesis import given
from hypothesis import strategies as st

from corrterm.braidlang import (
    BraidParseError,
    BraidWord,
    STWord,
    family_braid,
    free_reduce,
    parse_braid,
    st_length_upper_bound,
    strand_permutation,
    to_st_word,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=30).map(lambda x: BraidWord(tuple(x)))


def conj(w: BraidWord, k: int) -> BraidWord:
    e = 2 if k >= 0 else -2
    return BraidWord((e,) * abs(k)) * w * BraidWord((-e,) * abs(k))


class TestParse:
    def test_empty(self):
        assert parse_braid("") == BraidWord()
        assert parse_braid("   ") == BraidWord()

    def test_even_family_example(self):
        w = parse_braid("1 -2 -2 1 -2 -2 -2 -2")
        assert w.letters == (1, -2, -2, 1, -2, -2, -2, -2)
        assert str(w) == "σ₁σ₂⁻²σ₁σ₂⁻⁴"

    def test_exponent_tokens(self):
        w = parse_braid("1 2^-3 1 2^-1 1 2^-1")
        assert str(w) == "σ₁σ₂⁻³σ₁σ₂⁻¹σ₁σ₂⁻¹"
        assert parse_braid("-2^-2").letters == (2, 2)
        assert parse_braid("2^0") == BraidWord()
        assert parse_braid("+1^+2").letters == (1, 1)

    def test_canonical_tokens_roundtrip(self):
        w = parse_braid("1 -2 -2 1 -2 -2 -2 -2")
        assert w.tokens() == "1 2^-2 1 2^-4"
        assert parse_braid(w.tokens()) == w

    @pytest.mark.parametrize(
        "text, pos, token",
        [("1 3", 2, "3"), ("1 x", 2, "x"), ("2^", 0, "2^"), ("1  2^-", 3, "2^-"), ("0", 0, "0")],
    )
    def test_errors_report_position(self, text, pos, token):
        with pytest.raises(BraidParseError) as err:
            parse_braid(text)
        assert err.value.position == pos
        assert err.value.token == token

    @given(letters)
    def test_tokens_roundtrip(self, w):
        assert parse_braid(w.tokens()) == w


class TestFamilies:
    def test_examples(self):
        assert family_braid("even", (1, 2)) == parse_braid("1 -2 -2 1 -2 -2 -2 -2")
        assert family_braid("odd", (0, 0, 0)) == parse_braid("1 -2 1 -2 1 -2")
        assert len(family_braid("even", (1, 1, 1, 1))) == 12

    @pytest.mark.parametrize(
        "kind, params",
        [("even", (1,)), ("even", ()), ("even", (0, 1)), ("odd", (1, 1)), ("odd", (-1, 0, 0)), ("xx", (1, 1))],
    )
    def test_invalid(self, kind, params):
        with pytest.raises(ValueError):
            family_braid(kind, params)

    @pytest.mark.parametrize("params", [(1, 2), (1, 1, 1, 1), (3, 1, 2, 2)])
    def test_even_family_is_pure(self, params):
        assert strand_permutation(family_braid("even", params)) == (1, 2, 3)

    @pytest.mark.parametrize("params", [(1, 2), (0, 0, 0), (2, 1, 0)])
    def test_family_words_are_reduced(self, params):
        kind = "even" if len(params) == 2 else "odd"
        w = family_braid(kind, params)
        assert free_reduce(w) == w


class TestReduction:
    def test_examples(self):
        assert free_reduce(BraidWord((1, -1))) == BraidWord()
        assert free_reduce(BraidWord((1, -2, 2, -2))) == BraidWord((1, -2))

    @given(letters)
    def test_idempotent_and_shrinking(self, w):
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert len(r) <= len(w)
        assert all(a != -b for a, b in zip(r.letters, r.letters[1:]))

    @given(letters)
    def test_invariants_survive_reduction(self, w):
        r = free_reduce(w)
        assert strand_permutation(r) == strand_permutation(w)
        assert r.exponent_sum() == w.exponent_sum()

    def test_permutation_examples(self):
        assert strand_permutation(BraidWord()) == (1, 2, 3)
        assert strand_permutation(BraidWord((1,))) == (2, 1, 3)

    @given(letters, letters)
    def test_permutation_is_a_homomorphism(self, u, v):
        # reading u then v permutes positions by composition
        pu, pv = strand_permutation(u), strand_permutation(v)
        composed = tuple(pu[p - 1] for p in pv)
        assert strand_permutation(u * v) == composed


class TestSTWords:
    def test_even_example(self):
        w = family_braid("even", (1, 2))
        stw = to_st_word(w, 1)
        assert str(stw) == "t s^-3 t s^-5"
        assert len(stw) == 10

    def test_odd_example(self):
        stw = to_st_word(family_braid("odd", (0, 0, 0)), 1)
        assert str(stw) == "t s^-2 t s^-2 t s^-2"
        assert len(stw) == 9

    def test_empty(self):
        assert to_st_word(BraidWord()) == STWord()
        assert st_length_upper_bound(BraidWord()) == (0, STWord())

    def test_to_braid(self):
        assert STWord((("t", 1), ("s", -1))).to_braid() == BraidWord((2, 1, -2))
        assert STWord((("t", -1),)).to_braid() == BraidWord((-1, -2))

    @given(letters, st.integers(-3, 3))
    def test_resubstitution_matches_conjugate(self, w, k):
        stw = to_st_word(w, k)
        back = stw.to_braid()
        target = conj(w, k)
        assert strand_permutation(back) == strand_permutation(target)
        assert back.exponent_sum() == target.exponent_sum()
        assert free_reduce(back) == free_reduce(target)

    @given(letters)
    def test_length_monotone_in_kmax(self, w):
        lengths = [st_length_upper_bound(w, k)[0] for k in range(4)]
        assert lengths == sorted(lengths, reverse=True)

    @given(letters)
    def test_witness_is_a_conjugate_rotation(self, w):
        n, stw = st_length_upper_bound(w, 2)
        assert n == len(stw)
        back = free_reduce(stw.to_braid())
        rotations = [w.rotate(r) for r in range(max(len(w), 1))]
        assert any(back == free_reduce(conj(r, k)) for r in rotations for k in range(-2, 3))

    def test_negative_kmax(self):
        with pytest.raises(ValueError):
            st_length_upper_bound(BraidWord((1,)), -1)


@pytest.mark.parametrize("params", [(1, 2), (1, 1), (2, 3), (1, 1, 1, 1), (2, 1, 3, 1), (1, 2, 1, 2, 1, 1)])
def test_even_upper_bound(params):
    n = len(params) // 2
    assert st_length_upper_bound(family_braid("even", params), 1)[0] == 4 * n + 2 * sum(params)


@pytest.mark.parametrize("params", [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 0), (4, 0, 3)])
def test_odd_upper_bound(params):
    assert st_length_upper_bound(family_braid("odd", params), 1)[0] == 2 * sum(params) + 9
