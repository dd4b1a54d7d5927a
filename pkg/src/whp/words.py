"""Exact arithmetic on freely reduced words over a finite symmetric alphabet.

Letters are stored as nonzero integer codes: generator ``i`` (0-based) is
``i + 1`` and its inverse is ``-(i + 1)``.  Words are immutable tuples of
codes, always freely reduced.  All operations return fresh values, so words
and maps can be shared freely across workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence


class AlphabetError(ValueError):
    """Raised for malformed alphabets or out-of-range letters."""


class WordSyntaxError(ValueError):
    """Raised when parsing word text fails."""


class Letter(NamedTuple):
    """A signed generator: ``index`` in [0, rank), ``sign`` in {+1, -1}."""

    index: int
    sign: int

    @property
    def code(self) -> int:
        return (self.index + 1) * self.sign

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    @staticmethod
    def from_code(code: int) -> "Letter":
        if code == 0:
            raise AlphabetError("letter code 0 is not a letter")
        return Letter(abs(code) - 1, 1 if code > 0 else -1)


@dataclass(frozen=True)
class Alphabet:
    """A finite generating set: distinct printable names, rank >= 1."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.names) < 1:
            raise AlphabetError("rank must be at least 1")
        if len(set(self.names)) != len(self.names):
            raise AlphabetError("generator names must be distinct")
        for name in self.names:
            if not name or not name.isprintable() or any(ch.isspace() for ch in name):
                raise AlphabetError(f"bad generator name {name!r}")
            if "^" in name or name == "eps":
                raise AlphabetError(f"reserved generator name {name!r}")

    @staticmethod
    def of_rank(rank: int, prefix: str = "") -> "Alphabet":
        """Default names a, b, c, ... (x1, x2, ... beyond 26)."""
        if rank <= 26 and not prefix:
            return Alphabet(tuple(chr(ord("a") + i) for i in range(rank)))
        return Alphabet(tuple(f"{prefix}x{i + 1}" for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.names)

    def letter(self, name: str, sign: int = 1) -> Letter:
        try:
            return Letter(self.names.index(name), sign)
        except ValueError:
            raise AlphabetError(f"unknown generator {name!r}") from None

    def check_codes(self, codes: Iterable[int]) -> None:
        for c in codes:
            if c == 0 or abs(c) > self.rank:
                raise AlphabetError(f"letter code {c} out of alphabet bounds (rank {self.rank})")

    def name_of(self, code: int) -> str:
        if code == 0 or abs(code) > self.rank:
            raise AlphabetError(f"letter code {code} out of alphabet bounds")
        return self.names[abs(code) - 1]


def free_reduce_codes(codes: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs; the workhorse for every word product."""
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _letter_key(code: int) -> tuple[int, int]:
    # Fixed total order: generator index first, then sign with +1 < -1.
    return (abs(code), 0 if code > 0 else 1)


def least_rotation(codes: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation under the fixed letter order (Booth)."""
    n = len(codes)
    if n == 0:
        return ()
    keys = [_letter_key(c) for c in codes] * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = keys[j]
        i = f[j - k - 1]
        while i != -1 and sj != keys[k + i + 1]:
            if sj < keys[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != keys[k + i + 1]:
            if sj < keys[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return tuple(codes[k:]) + tuple(codes[:k])


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty tuple is the identity."""

    codes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.codes, self.codes[1:]):
            if a == -b:
                raise ValueError(f"word {self.codes} is not freely reduced")

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    @property
    def is_identity(self) -> bool:
        return not self.codes

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce_codes(self.codes + other.codes))

    def inverse(self) -> "Word":
        return Word(tuple(-c for c in reversed(self.codes)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def conjugate(self, g: "Word") -> "Word":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def max_index(self) -> int:
        return max((abs(c) for c in self.codes), default=0)

    def primitive_root(self) -> tuple["Word", int]:
        """Write self = r**k with k maximal (k=1 for the identity)."""
        n = len(self.codes)
        if n == 0:
            return self, 1
        for p in range(1, n + 1):
            if n % p:
                continue
            if self.codes == self.codes[:p] * (n // p):
                return Word(self.codes[:p]), n // p
        return self, 1


EPSILON = Word()


def free_reduce(raw: Sequence[Letter] | Sequence[int]) -> Word:
    """The unique freely reduced word equal to the input; idempotent."""
    codes = tuple(x.code if isinstance(x, Letter) else int(x) for x in raw)
    for c in codes:
        if c == 0:
            raise AlphabetError("letter code 0 is not a letter")
    return Word(free_reduce_codes(codes))


@dataclass(frozen=True)
class CyclicWord:
    """A conjugacy class: cyclically reduced, rotation-canonical core."""

    codes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = self.codes
        for a, b in zip(c, c[1:]):
            if a == -b:
                raise ValueError("core is not freely reduced")
        if len(c) > 1 and c[0] == -c[-1]:
            raise ValueError("core is not cyclically reduced")
        if c != least_rotation(c):
            raise ValueError("core is not rotation-canonical")

    @staticmethod
    def of(word: Word) -> "CyclicWord":
        core, _ = cyclic_reduce(word)
        return core

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def is_identity(self) -> bool:
        return not self.codes

    def as_word(self) -> Word:
        return Word(self.codes)

    def inverse_class(self) -> "CyclicWord":
        return CyclicWord(least_rotation(tuple(-c for c in reversed(self.codes))))

    def rotations(self) -> list[Word]:
        n = len(self.codes)
        return [Word(self.codes[i:] + self.codes[:i]) for i in range(n)] or [EPSILON]

    def primitive_root(self) -> tuple["CyclicWord", int]:
        root, k = self.as_word().primitive_root()
        return CyclicWord(least_rotation(root.codes)), k


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split w = conjugator * core * conjugator^-1 with core cyclically reduced.

    The core is returned rotation-canonical; the conjugator absorbs the
    rotation so the round-trip identity holds exactly.
    """
    codes = list(w.codes)
    prefix: list[int] = []
    while len(codes) > 1 and codes[0] == -codes[-1]:
        prefix.append(codes[0])
        codes = codes[1:-1]
    canonical = least_rotation(tuple(codes))
    if canonical != tuple(codes):
        # codes = p * canonical * p^-1 with p = codes[:i] for the rotation i.
        n = len(codes)
        for i in range(n):
            if tuple(codes[i:] + codes[:i]) == canonical:
                prefix.extend(codes[:i])
                break
    conj = Word(free_reduce_codes(prefix))
    return CyclicWord(canonical), conj


def conjugator_between(x: Word, y: Word) -> Word | None:
    """Some g with g^-1 x g = y, or None if x, y are not conjugate."""
    cx, px = cyclic_reduce(x)
    cy, py = cyclic_reduce(y)
    if cx.codes != cy.codes:
        return None
    # x = px X px^-1, y = py X py^-1  =>  g = px * py^-1.
    g = px * py.inverse()
    assert x.conjugate(g) == y
    return g


def transporter(x: Word, y: Word) -> tuple[Word, Word] | None:
    """Solutions of g^-1 x g = y as the left coset <z> * g0; returns (g0, z).

    z generates the centralizer of x (its primitive root), so the full
    solution set is {z**k * g0}.  None when x, y are not conjugate.
    """
    g0 = conjugator_between(x, y)
    if g0 is None:
        return None
    if x.is_identity:
        return g0, EPSILON
    root, _ = x.primitive_root()
    return g0, root


@dataclass(frozen=True)
class Endomorphism:
    """A generator-to-word map over a fixed alphabet."""

    alphabet: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.alphabet.rank:
            raise AlphabetError("one image per generator required")
        for img in self.images:
            self.alphabet.check_codes(img.codes)

    @staticmethod
    def identity(alphabet: Alphabet) -> "Endomorphism":
        return Endomorphism(alphabet, tuple(Word((i + 1,)) for i in range(alphabet.rank)))

    @property
    def is_identity(self) -> bool:
        return all(img.codes == (i + 1,) for i, img in enumerate(self.images))

    def table(self) -> dict[int, tuple[int, ...]]:
        return _endo_table(self)

    def apply(self, w: Word) -> Word:
        if w.max_index() > self.alphabet.rank:
            raise AlphabetError("word uses letters outside this alphabet")
        t = self.table()
        return Word(free_reduce_codes(itertools.chain.from_iterable(t[c] for c in w.codes)))

    def __call__(self, w: Word) -> Word:
        return self.apply(w)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other: (self.compose(other))(w) == self(other(w))."""
        if self.alphabet != other.alphabet:
            raise AlphabetError("alphabet mismatch in composition")
        return Endomorphism(self.alphabet, tuple(self.apply(img) for img in other.images))


@lru_cache(maxsize=8192)
def _endo_table(e: "Endomorphism") -> dict[int, tuple[int, ...]]:
    t: dict[int, tuple[int, ...]] = {}
    for i, img in enumerate(e.images):
        t[i + 1] = img.codes
        t[-(i + 1)] = img.inverse().codes
    return t


def apply(e: Endomorphism, w: Word) -> Word:
    return e.apply(w)


def compose(e1: Endomorphism, e2: Endomorphism) -> Endomorphism:
    return e1.compose(e2)


@dataclass(frozen=True)
class Automorphism:
    """An endomorphism packaged with its verified inverse."""

    forward: Endomorphism
    inverse: Endomorphism

    def __post_init__(self) -> None:
        if self.forward.alphabet != self.inverse.alphabet:
            raise AlphabetError("forward/inverse alphabet mismatch")
        if not self.forward.compose(self.inverse).is_identity:
            raise ValueError("inverse is not a right inverse")
        if not self.inverse.compose(self.forward).is_identity:
            raise ValueError("inverse is not a left inverse")

    @staticmethod
    def identity(alphabet: Alphabet) -> "Automorphism":
        e = Endomorphism.identity(alphabet)
        return Automorphism(e, e)

    @property
    def alphabet(self) -> Alphabet:
        return self.forward.alphabet

    def apply(self, w: Word) -> Word:
        return self.forward.apply(w)

    def __call__(self, w: Word) -> Word:
        return self.forward.apply(w)

    def inverted(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward)

    def compose(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(
            self.forward.compose(other.forward), other.inverse.compose(self.inverse)
        )


def inner_automorphism(alphabet: Alphabet, g: Word) -> Automorphism:
    """Conjugation x -> g^-1 x g as an Automorphism."""
    fwd = Endomorphism(
        alphabet, tuple(Word((i + 1,)).conjugate(g) for i in range(alphabet.rank))
    )
    ginv = g.inverse()
    inv = Endomorphism(
        alphabet, tuple(Word((i + 1,)).conjugate(ginv) for i in range(alphabet.rank))
    )
    return Automorphism(fwd, inv)


# ---------------------------------------------------------------------------
# Text syntax: whitespace-separated factors `name` or `name^k`; `eps` empty.
# ---------------------------------------------------------------------------


def parse_word(alphabet: Alphabet, text: str) -> Word:
    tokens = text.split()
    if not tokens:
        raise WordSyntaxError("empty word text (use 'eps' for the identity)")
    codes: list[int] = []
    for tok in tokens:
        if tok == "eps":
            continue
        name, _, exp_text = tok.partition("^")
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise WordSyntaxError(f"bad exponent in factor {tok!r}") from None
            if exp == 0:
                raise WordSyntaxError(f"zero exponent in factor {tok!r}")
        else:
            exp = 1
        letter = alphabet.letter(name)
        code = letter.code if exp > 0 else -letter.code
        codes.extend([code] * abs(exp))
    return Word(free_reduce_codes(codes))


def format_word(alphabet: Alphabet, w: Word) -> str:
    if w.is_identity:
        return "eps"
    parts: list[str] = []
    for code, run in itertools.groupby(w.codes):
        k = len(list(run))
        name = alphabet.name_of(code)
        if code < 0:
            k = -k
        parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts)
