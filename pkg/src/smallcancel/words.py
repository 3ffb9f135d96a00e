"""Words over a finite alphabet with formal inverses.

A letter is stored as a nonzero integer: ``g + 1`` for the generator with
index ``g`` and ``-(g + 1)`` for its inverse, so inversion is negation.
Words are immutable tuples of such codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

_NAME = re.compile(r"[A-Za-z0-9_]+")
_TOKEN = re.compile(r"([A-Za-z0-9_]+)(?:\^(-?[0-9]+))?")


class WordSyntaxError(ValueError):
    pass


def generator_of(letter: int) -> int:
    return abs(letter) - 1


def sign_of(letter: int) -> int:
    return 1 if letter > 0 else -1


@dataclass(frozen=True)
class Alphabet:
    generators: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be distinct")
        for name in self.generators:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid generator name: {name!r}")
        object.__setattr__(
            self, "_index", {name: i for i, name in enumerate(self.generators)}
        )

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name: object) -> bool:
        return name in self._index  # type: ignore[attr-defined]

    def letter(self, name: str, sign: int = 1) -> int:
        try:
            g = self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise WordSyntaxError(f"unknown generator {name!r}") from None
        return (g + 1) * (1 if sign > 0 else -1)

    def letter_name(self, letter: int) -> str:
        name = self.generators[generator_of(letter)]
        return name if letter > 0 else f"{name}^-1"

    def extended(self, *names: str) -> "Alphabet":
        return Alphabet(self.generators + tuple(names))

    def parse(self, text: str) -> "Word":
        """Parse whitespace-separated tokens ``s``, ``s^k``, ``s^-k``.

        ``#`` starts a comment running to the end of the line. Powers are
        expanded; the result is not freely reduced.
        """
        letters: list[int] = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            for token in line.split():
                m = _TOKEN.fullmatch(token)
                if m is None:
                    raise WordSyntaxError(f"bad token {token!r}")
                name, exp = m.group(1), m.group(2)
                k = 1 if exp is None else int(exp)
                if k == 0:
                    raise WordSyntaxError(f"zero exponent in {token!r}")
                letters.extend([self.letter(name, k)] * abs(k))
        return Word(tuple(letters))

    def format(self, word: "Word | Sequence[int]", powers: bool = True) -> str:
        """Render a word; runs are written as powers unless ``powers`` is off."""
        letters = word.letters if isinstance(word, Word) else tuple(word)
        if not powers:
            return " ".join(self.letter_name(c) for c in letters)
        out = []
        for syl in syllables(Word(letters)):
            name = self.generators[generator_of(syl.letter)]
            k = syl.exponent * sign_of(syl.letter)
            out.append(name if k == 1 else f"{name}^{k}")
        return " ".join(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.letters[key])
        return self.letters[key]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __mul__(self, k: int) -> "Word":
        return Word(self.letters * k)

    def inverse(self) -> "Word":
        return Word(tuple(-c for c in reversed(self.letters)))

    def is_reduced(self) -> bool:
        ls = self.letters
        return all(ls[i] != -ls[i + 1] for i in range(len(ls) - 1))

    def is_cyclically_reduced(self) -> bool:
        return self.is_reduced() and (len(self) < 2 or self.letters[0] != -self.letters[-1])

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.letters)

    def letter_set(self) -> frozenset[int]:
        return frozenset(self.letters)

    @property
    def first(self) -> int:
        return self.letters[0]

    @property
    def last(self) -> int:
        return self.letters[-1]


@dataclass(frozen=True)
class CyclicWord:
    """A relator: a nonempty cyclically reduced word read cyclically."""

    representative: Word

    def __post_init__(self) -> None:
        w = self.representative
        if not isinstance(w, Word):
            w = Word(tuple(w))
            object.__setattr__(self, "representative", w)
        if len(w) == 0:
            raise ValueError("a cyclic word must be nonempty")
        if not w.is_cyclically_reduced():
            raise ValueError("relator is not cyclically reduced")

    def __len__(self) -> int:
        return len(self.representative)

    @property
    def letters(self) -> tuple[int, ...]:
        return self.representative.letters

    def rotation(self, k: int) -> Word:
        ls = self.representative.letters
        k %= len(ls)
        return Word(ls[k:] + ls[:k])

    def inverse(self) -> "CyclicWord":
        return CyclicWord(self.representative.inverse())

    def doubled(self) -> tuple[int, ...]:
        return self.representative.letters * 2


@dataclass(frozen=True)
class Syllable:
    letter: int
    exponent: int

    def word(self) -> Word:
        return Word((self.letter,) * self.exponent)


def free_reduce(w: Word | Iterable[int]) -> Word:
    stack: list[int] = []
    for c in w:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return Word(tuple(stack))


def cyclic_shifts(r: CyclicWord) -> list[Word]:
    return [r.rotation(k) for k in range(len(r))]


def symmetrized_closure(relators: Iterable[CyclicWord], T: float = float("inf")) -> frozenset[Word]:
    out: set[Word] = set()
    for r in relators:
        if len(r) > T:
            continue
        out.update(cyclic_shifts(r))
        out.update(cyclic_shifts(r.inverse()))
    return frozenset(out)


def prefix_function(s: Sequence[int]) -> list[int]:
    pi = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    return pi


def find_all(pattern: Sequence[int], text: Sequence[int]) -> list[int]:
    """Start positions of ``pattern`` in ``text`` (KMP)."""
    m = len(pattern)
    if m == 0:
        return list(range(len(text) + 1))
    pi = prefix_function(pattern)
    hits = []
    k = 0
    for i, c in enumerate(text):
        while k and c != pattern[k]:
            k = pi[k - 1]
        if c == pattern[k]:
            k += 1
        if k == m:
            hits.append(i - m + 1)
            k = pi[k - 1]
    return hits


def rotation_period(r: CyclicWord) -> int:
    """Smallest k > 0 with rotation(k) == r; divides |r|."""
    n = len(r)
    p = n - prefix_function(r.letters)[-1]
    return p if n % p == 0 else n


def closure_size(r: CyclicWord) -> int:
    """Number of distinct words in the symmetrized closure of ``{r}``."""
    q = rotation_period(r)
    inv = r.inverse().letters
    inverse_is_rotation = bool(find_all(inv, r.doubled()[: 2 * len(r) - 1]))
    return q if inverse_is_rotation else 2 * q


def is_non_periodic(r: CyclicWord) -> bool:
    return closure_size(r) == 2 * len(r)


def syllables(w: Word) -> list[Syllable]:
    out: list[Syllable] = []
    for c in w:
        if out and out[-1].letter == c:
            out[-1] = Syllable(c, out[-1].exponent + 1)
        else:
            out.append(Syllable(c, 1))
    return out


def interior(w: Word) -> Word:
    syls = syllables(w)
    if len(syls) <= 2:
        return Word()
    return w[syls[0].exponent : len(w) - syls[-1].exponent]


def power(letter: int, k: int) -> Word:
    return Word((letter,) * k)
