import pytest
from hypothesis import given, settings, strategies as st

from whp.words import (
    Alphabet,
    AlphabetError,
    CyclicWord,
    Endomorphism,
    EPSILON,
    Letter,
    Word,
    WordSyntaxError,
    apply,
    compose,
    conjugator_between,
    cyclic_reduce,
    format_word,
    free_reduce,
    inner_automorphism,
    least_rotation,
    parse_word,
)

AB = Alphabet(("a", "b"))
A, B = 1, 2


def w(*codes):
    return Word(tuple(codes))


def words(rank=2, max_len=64):
    letters = st.integers(-rank, rank).filter(lambda c: c != 0)
    return st.lists(letters, max_size=max_len).map(free_reduce)


class TestFreeReduce:
    def test_cancellation(self):
        assert free_reduce([A, -A]) == EPSILON

    def test_inner_cancellation(self):
        assert free_reduce([A, B, -B, A]) == w(A, A)
        assert free_reduce([B, -A, A, B]) == w(B, B)

    def test_bad_code(self):
        with pytest.raises(AlphabetError):
            free_reduce([0])

    @given(st.lists(st.integers(-3, 3).filter(lambda c: c != 0), max_size=100))
    def test_idempotent_and_shorter(self, codes):
        r = free_reduce(codes)
        assert free_reduce(r.codes) == r
        assert len(r) <= len(codes)


class TestCyclicReduce:
    def test_examples(self):
        core, conj = cyclic_reduce(w(B, A, -B))
        assert core == CyclicWord((A,)) and conj == w(B)
        core, conj = cyclic_reduce(w(A, B))
        assert core == CyclicWord((A, B)) and conj == EPSILON
        core, conj = cyclic_reduce(w(-A, B, A))
        assert core == CyclicWord((B,)) and conj == w(-A)

    @given(words())
    def test_round_trip(self, word):
        core, conj = cyclic_reduce(word)
        assert conj * core.as_word() * conj.inverse() == word

    @given(words(max_len=24), words(max_len=12))
    def test_conjugation_invariance(self, word, g):
        assert cyclic_reduce(word.conjugate(g))[0] == cyclic_reduce(word)[0]


class TestLeastRotation:
    def test_letter_order(self):
        # a < a^-1 < b < b^-1
        assert least_rotation((B, A)) == (A, B)
        assert least_rotation((B, -A)) == (-A, B)

    def test_sign_order(self):
        assert least_rotation((-A, B, A, B)) == (A, B, -A, B)

    def test_canonical_is_rotation(self):
        seq = (B, -A, B, B)
        rot = least_rotation(seq)
        doubled = seq + seq
        assert any(doubled[i : i + len(seq)] == rot for i in range(len(seq)))


class TestApplyCompose:
    E = Endomorphism(AB, (w(A, B), w(B)))  # a -> ab, b -> b

    def test_apply_examples(self):
        assert self.E.apply(w(A, -B)) == w(A)
        assert Endomorphism.identity(AB).apply(w(A, B)) == w(A, B)
        inv_a = Endomorphism(AB, (w(-A), w(B)))
        assert inv_a.apply(w(A, B)) == w(-A, B)

    def test_compose_examples(self):
        ident = Endomorphism.identity(AB)
        assert compose(ident, self.E) == self.E
        twice = compose(self.E, self.E)
        assert twice.images == (w(A, B, B), w(B))
        inv = Endomorphism(AB, (w(A, -B), w(B)))
        assert compose(self.E, inv).is_identity

    @given(words(max_len=16), words(max_len=16))
    def test_multiplicative(self, x, y):
        assert self.E.apply(x * y) == self.E.apply(x) * self.E.apply(y)

    @given(words(max_len=12))
    def test_respects_composition(self, word):
        f = Endomorphism(AB, (w(B, A), w(-A)))
        assert compose(self.E, f).apply(word) == self.E.apply(f.apply(word))

    def test_alphabet_mismatch(self):
        other = Endomorphism.identity(Alphabet(("x", "y", "z")))
        with pytest.raises(AlphabetError):
            compose(self.E, other)
        with pytest.raises(AlphabetError):
            self.E.apply(w(3))


class TestAutomorphism:
    def test_inner(self):
        auto = inner_automorphism(AB, w(A))
        assert auto(w(B)) == w(-A, B, A)
        assert auto.inverted()(auto(w(B, A))) == w(B, A)

    def test_rejects_non_inverse(self):
        from whp.words import Automorphism

        e = Endomorphism(AB, (w(A, A), w(B)))
        with pytest.raises(ValueError):
            Automorphism(e, e)


class TestConjugator:
    @given(words(max_len=16), words(max_len=8))
    def test_between(self, x, g):
        y = x.conjugate(g)
        found = conjugator_between(x, y)
        assert found is not None
        assert x.conjugate(found) == y

    def test_not_conjugate(self):
        assert conjugator_between(w(A), w(A, A)) is None


class TestTextSyntax:
    def test_parse(self):
        assert parse_word(AB, "a b^-1") == w(A, -B)
        assert parse_word(AB, "a^3") == w(A, A, A)
        assert parse_word(AB, "eps") == EPSILON
        assert parse_word(AB, "b^-2 a") == w(-B, -B, A)

    def test_format_round_trip(self):
        for text in ["a b^-1", "a^3", "eps", "a b a^-1 b^-1"]:
            word = parse_word(AB, text)
            assert parse_word(AB, format_word(AB, word)) == word

    def test_errors(self):
        with pytest.raises(WordSyntaxError):
            parse_word(AB, "")
        with pytest.raises(WordSyntaxError):
            parse_word(AB, "a^0")
        with pytest.raises(AlphabetError):
            parse_word(AB, "c")

    @given(words())
    def test_format_parse_identity(self, word):
        assert parse_word(AB, format_word(AB, word)) == word


class TestPrimitiveRoot:
    def test_powers(self):
        assert w(A, B, A, B).primitive_root() == (w(A, B), 2)
        assert w(A, B).primitive_root() == (w(A, B), 1)
        assert EPSILON.primitive_root() == (EPSILON, 1)


class TestLetter:
    def test_codes(self):
        assert Letter(0, 1).code == 1
        assert Letter(1, -1).code == -2
        assert Letter.from_code(-2) == Letter(1, -1)
        assert Letter(0, 1).inverse() == Letter(0, -1)
