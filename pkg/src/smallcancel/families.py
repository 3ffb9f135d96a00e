"""Generators for the explicit relator families and random test presentations."""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .pieces import SymmetrizedSet, check_c_prime
from .viable import ViableFunction, corrected_example
from .words import Alphabet, CyclicWord, Word, find_all, is_non_periodic


class FamilyError(ValueError):
    pass


class GenerationBudgetExceeded(RuntimeError):
    pass


class RelatorFamily:
    """A (possibly infinite) relator family, enumerated up to a length bound."""

    name = "family"
    alphabet: Alphabet

    def members(self, T: float = math.inf) -> list[tuple[str, CyclicWord]]:
        raise NotImplementedError

    def omitted_min(self, T: float = math.inf) -> float:
        """Lower bound on the length of every relator not returned by ``members(T)``."""
        raise NotImplementedError

    def symmetrized(self, T: float = math.inf) -> SymmetrizedSet:
        ms = self.members(T)
        return SymmetrizedSet(
            [r for _, r in ms], T, [rid for rid, _ in ms], omitted_min=self.omitted_min(T)
        )


class FinitePresentation(RelatorFamily):
    name = "finite"

    def __init__(self, alphabet: Alphabet, relators: Sequence[CyclicWord], ids: Optional[Sequence[str]] = None):
        self.alphabet = alphabet
        self.relators = list(relators)
        self.ids = list(ids) if ids is not None else [f"r{j + 1}" for j in range(len(relators))]

    def members(self, T=math.inf):
        return [(rid, r) for rid, r in zip(self.ids, self.relators) if len(r) <= T]

    def omitted_min(self, T=math.inf):
        return min((len(r) for r in self.relators if len(r) > T), default=math.inf)


# --- base-disjoint and level families ------------------------------------


def _check_N_L(N: int, L: int) -> None:
    if N < 28:
        raise FamilyError(f"N must be at least 28 (got {N})")
    if L <= 0 or L % N:
        raise FamilyError(f"L must be a positive multiple of N (got L={L}, N={N})")


def level_alphabet(N: int) -> Alphabet:
    return Alphabet(tuple(f"s{j}" for j in range(1, 4 * N + 1)))


def gen_base_disjoint(N: int = 28, L: Optional[int] = None) -> list[CyclicWord]:
    """``r_i^1 = s_{Ni+1} ... s_{Ni+N}`` for i = 1, 2, 3 over ``s_1..s_{4N}``."""
    L = N if L is None else L
    _check_N_L(N, L)
    if L != N:
        raise FamilyError("the disjoint base example has L = N; supply base relators for other L")
    return [CyclicWord(Word(tuple(range(N * i + 1, N * i + N + 1)))) for i in (1, 2, 3)]


@dataclass(frozen=True, order=True)
class LevelWordId:
    i: int
    l: int
    k: int

    def __post_init__(self) -> None:
        if self.i not in (1, 2, 3) or self.k < 1:
            raise FamilyError(f"invalid level word id {self}")


def _succ(i: int) -> int:
    return i % 3 + 1


class LevelFamily(RelatorFamily):
    """Relators ``r_i^k`` built from level words ``y_{(i,l)}^k``.

    ``y_{(i,l)}^{k+1}`` is the product over j of ``y_{(i,l)}^k y_{(i+1,j)}^k``.
    With ``modified`` the third relator of level k gets a tail ``a^k``
    whenever ``42 k <= |r_3^k|``.
    """

    def __init__(
        self,
        N: int = 28,
        L: Optional[int] = None,
        k_max: int = 3,
        base: Optional[Sequence[CyclicWord]] = None,
        modified: bool = False,
    ) -> None:
        L = N if L is None else L
        _check_N_L(N, L)
        self.N, self.L, self.k_max, self.modified = N, L, k_max, modified
        self.name = "level-modified" if modified else "level"
        alphabet = level_alphabet(N)
        if base is None:
            base = gen_base_disjoint(N, L)
        base = list(base)
        if len(base) != 3 or len({b.letters for b in base}) != 3:
            raise FamilyError("need three distinct base relators")
        for b in base:
            if len(b) != L or not b.representative.is_positive() or not is_non_periodic(b):
                raise FamilyError("base relators must be positive non-periodic words of length L")
            if max(b.letters) > len(alphabet):
                raise FamilyError("base relator letters outside s_1..s_4N")
        self.base = base
        if modified:
            alphabet = alphabet.extended("a")
            self.tail_letter = alphabet.letter("a")
        self.alphabet = alphabet
        self._memo: dict[LevelWordId, tuple[int, ...]] = {}
        self._relators: dict[tuple[int, int], CyclicWord] = {}

    def word_length(self, k: int) -> int:
        return (2 * self.N) ** (k - 1) * self.L // self.N

    def base_length(self, k: int) -> int:
        return (2 * self.N) ** (k - 1) * self.L

    def relator_length(self, i: int, k: int) -> int:
        n = self.base_length(k)
        if self.modified and i == 3 and 42 * k <= n:
            n += k
        return n

    def level_word(self, wid: LevelWordId) -> tuple[int, ...]:
        if not 1 <= wid.l <= self.N:
            raise FamilyError(f"invalid level word id {wid}")
        got = self._memo.get(wid)
        if got is not None:
            return got
        if wid.k == 1:
            m = self.L // self.N
            word = self.base[wid.i - 1].letters[(wid.l - 1) * m : wid.l * m]
        else:
            a = self.level_word(LevelWordId(wid.i, wid.l, wid.k - 1))
            parts = []
            for j in range(1, self.N + 1):
                parts.append(a)
                parts.append(self.level_word(LevelWordId(_succ(wid.i), j, wid.k - 1)))
            word = tuple(c for p in parts for c in p)
        self._memo[wid] = word
        return word

    def relator(self, i: int, k: int) -> CyclicWord:
        """``r_i^k`` (with the tail when the family is modified)."""
        if i not in (1, 2, 3) or k < 1:
            raise FamilyError(f"invalid relator index ({i}, {k})")
        key = (i, k)
        if key not in self._relators:
            if k == 1:
                letters = self.base[i - 1].letters
            else:
                letters = tuple(
                    c for l in range(1, self.N + 1) for c in self.level_word(LevelWordId(i, l, k))
                )
            if self.modified and i == 3 and 42 * k <= len(letters):
                letters = letters + (self.tail_letter,) * k
            self._relators[key] = CyclicWord(Word(letters))
        return self._relators[key]

    def members(self, T=math.inf):
        out = []
        for k in range(1, self.k_max + 1):
            for i in (1, 2, 3):
                if self.relator_length(i, k) <= T:
                    out.append((f"r{i}^{k}", self.relator(i, k)))
        return out

    def omitted_min(self, T=math.inf):
        lens = [
            self.relator_length(i, k)
            for k in range(1, self.k_max + 1)
            for i in (1, 2, 3)
            if self.relator_length(i, k) > T
        ]
        lens.append(self.base_length(self.k_max + 1))
        return min(lens)

    # -- block structure ---------------------------------------------------

    def expand(self, ids: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
        """Rewrite a sequence of level-k ids as level-(k-1) ids."""
        out = []
        for i, l in ids:
            for j in range(1, self.N + 1):
                out.append((i, l))
                out.append((_succ(i), j))
        return out

    def word_blocks(self, wid: LevelWordId, k_low: int) -> list[tuple[int, int]]:
        if not 1 <= k_low <= wid.k:
            raise FamilyError("need 1 <= k_low <= k")
        ids = [(wid.i, wid.l)]
        for _ in range(wid.k - k_low):
            ids = self.expand(ids)
        return ids

    def relator_blocks(self, i: int, k: int, k_low: int) -> list[tuple[int, int]]:
        """Level-``k_low`` block decomposition of the unmodified ``r_i^k``."""
        if not 1 <= k_low <= k:
            raise FamilyError("need 1 <= k_low <= k")
        ids = [(i, l) for l in range(1, self.N + 1)]
        for _ in range(k - k_low):
            ids = self.expand(ids)
        return ids


def structure_violations(blocks: Sequence[tuple[int, int]], cyclic: bool = False) -> list[str]:
    """Check the first-index constraints on a block decomposition:
    ``i_1 != i_2``, ``i_{m-1} != i_m`` and no three consecutive equal ``i``."""
    idx = [i for i, _ in blocks]
    m = len(idx)
    out = []
    if m < 2:
        return ["fewer than two blocks"]
    if not cyclic:
        if idx[0] == idx[1]:
            out.append("i_1 == i_2")
        if idx[-2] == idx[-1]:
            out.append("i_{m-1} == i_m")
    rng = range(m) if cyclic else range(1, m - 1)
    for t in rng:
        if idx[t - 1] == idx[t] == idx[(t + 1) % m]:
            out.append(f"three equal first indices at block {t}")
    return out


def occurrences(pattern: Sequence[int], text: Sequence[int]) -> list[int]:
    """All start positions of ``pattern`` in ``text`` over positive letters."""
    if max(pattern, default=0) > 255 or max(text, default=0) > 255:
        return find_all(pattern, text)
    pb, tb = bytes(pattern), bytes(text)
    out = []
    p = tb.find(pb)
    while p >= 0:
        out.append(p)
        p = tb.find(pb, p + 1)
    return out


def block_alignment_violations(fam: LevelFamily, k_low: int, k: int) -> list[str]:
    """Every cyclic occurrence of each ``y_{(i,l)}^{k_low}`` inside each ``r_{i'}^k``
    must start at a level-``k_low`` block boundary whose block id is ``(i,l)``."""
    if fam.modified:
        raise FamilyError("alignment is checked on the unmodified family")
    m = fam.word_length(k_low)
    out = []
    for ir in (1, 2, 3):
        r = fam.relator(ir, k).letters
        n = len(r)
        blocks = fam.relator_blocks(ir, k, k_low)
        text = r + r[: m - 1]
        for i in (1, 2, 3):
            for l in range(1, fam.N + 1):
                pat = fam.level_word(LevelWordId(i, l, k_low))
                for p in occurrences(pat, text):
                    if p >= n:
                        continue
                    if p % m:
                        out.append(f"y({i},{l})^{k_low} at offset {p} of r{ir}^{k}: not a block boundary")
                    elif blocks[p // m] != (i, l):
                        out.append(f"y({i},{l})^{k_low} at block {p // m} of r{ir}^{k}: block is {blocks[p // m]}")
    return out


# --- the C'(1/f) example --------------------------------------------------


def example_cf_length(i: int) -> int:
    return (2 * i + 1) * (i * i + i + 1)


class ExampleCF(RelatorFamily):
    """``r_i = prod_{j=0}^{2i} x y^{i^2 + j}`` for ``i >= 14``."""

    name = "example-cf"
    first_index = 14

    def __init__(self, i_max: int = 20) -> None:
        if i_max < 14:
            raise FamilyError("example-cf needs i_max >= 14")
        self.i_max = i_max
        self.alphabet = Alphabet(("x", "y"))
        self._cache: dict[int, CyclicWord] = {}

    def relator(self, i: int) -> CyclicWord:
        if i < 14:
            raise FamilyError("example-cf relators start at i = 14")
        if i not in self._cache:
            x, y = 1, 2
            letters: list[int] = []
            for j in range(2 * i + 1):
                letters.append(x)
                letters.extend([y] * (i * i + j))
            self._cache[i] = CyclicWord(Word(tuple(letters)))
        return self._cache[i]

    def indices(self) -> range:
        return range(14, self.i_max + 1)

    def lengths(self) -> list[int]:
        return [example_cf_length(i) for i in self.indices()]

    def members(self, T=math.inf):
        return [(f"r{i}", self.relator(i)) for i in self.indices() if example_cf_length(i) <= T]

    def omitted_min(self, T=math.inf):
        for i in self.indices():
            if example_cf_length(i) > T:
                return example_cf_length(i)
        return example_cf_length(self.i_max + 1)


def gen_example_cf(i_max: int = 20) -> tuple[list[CyclicWord], ViableFunction]:
    fam = ExampleCF(i_max)
    return [fam.relator(i) for i in fam.indices()], corrected_example()


def derived_viable(f: ViableFunction, lengths: Sequence[int], first_index: int = 1) -> ViableFunction:
    """``f'(n) = f(n)`` below ``|r_12|`` and ``min(f(n), k/2)`` for
    ``|r_k| <= n < |r_{k+1}|``, where ``lengths[t]`` is ``|r_{first_index + t}|``.

    When the family starts after index 12 the first branch covers everything
    below the first supplied length. The last band extends forever.
    """
    lengths = list(lengths)
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise FamilyError("lengths must be strictly increasing")
    if first_index + len(lengths) - 1 < 12:
        raise FamilyError("need relator lengths indexed up to at least 12")
    k0 = max(12, first_index)
    tail = lengths[k0 - first_index :]
    start = tail[0]

    def g(n: int) -> Fraction:
        if n < start:
            return f(n)
        k = k0 + bisect.bisect_right(tail, n) - 1
        return min(f(n), Fraction(k, 2))

    k_last = k0 + len(tail) - 1

    def bound(n0: int) -> Optional[Fraction]:
        b = f.min_ratio_from(n0)
        if n0 >= tail[-1]:
            c = Fraction(2 * n0, k_last)
            b = c if b is None else max(b, c)
        return b

    return ViableFunction(f"derived[{f.name}]", g, bound, unbounded=False)


# --- random presentations ------------------------------------------------


def random_cyclically_reduced(rng: random.Random, n_gens: int, length: int) -> Word:
    letters = [g for g in range(1, n_gens + 1)] + [-g for g in range(1, n_gens + 1)]
    while True:
        w = [rng.choice(letters)]
        while len(w) < length:
            c = rng.choice(letters)
            if c != -w[-1]:
                w.append(c)
        if length < 2 or w[0] != -w[-1]:
            return Word(tuple(w))


def random_reduced(rng: random.Random, n_gens: int, length: int) -> Word:
    letters = [g for g in range(1, n_gens + 1)] + [-g for g in range(1, n_gens + 1)]
    w: list[int] = []
    while len(w) < length:
        c = rng.choice(letters)
        if not w or c != -w[-1]:
            w.append(c)
    return Word(tuple(w))


def _quick_c_prime(rels: Sequence[CyclicWord], lam: Fraction) -> bool:
    """Exact C'(lam) test for small sets by hashing bounded prefixes.

    A piece shared by elements of r and r' violates the condition iff its
    length reaches ``min(F(r), F(r'))`` with ``F(r) = ceil(lam |r|)``.
    """
    F = [math.ceil(lam * len(r)) for r in rels]
    elems: list[tuple[int, tuple[int, ...]]] = []
    seen = set()
    for j, r in enumerate(rels):
        for s in (r.letters, r.inverse().letters):
            for k in range(len(s)):
                e = s[k:] + s[:k]
                if e not in seen:
                    seen.add(e)
                    elems.append((j, e))
    for f in sorted(set(F)):
        groups: dict[tuple[int, ...], list[bool]] = {}
        for j, e in elems:
            if F[j] >= f:
                g = groups.setdefault(e[:f], [0, False])
                g[0] += 1
                g[1] = g[1] or F[j] == f
        if any(n >= 2 and tight for n, tight in groups.values()):
            return False
    return True


def default_alphabet(n_gens: int) -> Alphabet:
    names = "abcdefghijklmnopqrstuvwxyz"
    if n_gens <= len(names):
        return Alphabet(tuple(names[:n_gens]))
    return Alphabet(tuple(f"g{j}" for j in range(1, n_gens + 1)))


def gen_random_presentation(
    n_gens: int,
    n_relators: int,
    length: int | tuple[int, int],
    lam=Fraction(1, 6),
    seed: int = 0,
    attempts: int = 100000,
) -> FinitePresentation:
    """Rejection-sample relator sets of uniformly random cyclically reduced,
    non-periodic words until the set satisfies ``C'(lam)``."""
    lam = Fraction(lam)
    if not 0 < lam <= Fraction(1, 6):
        raise ValueError("lambda must lie in (0, 1/6]")
    if n_gens < 1 or n_relators < 1:
        raise ValueError("need at least one generator and one relator")
    lo, hi = (length, length) if isinstance(length, int) else length
    rng = random.Random(seed)
    for _ in range(attempts):
        rels = []
        for _ in range(n_relators):
            w = random_cyclically_reduced(rng, n_gens, rng.randint(lo, hi))
            rels.append(CyclicWord(w))
        if not all(is_non_periodic(r) for r in rels):
            continue
        if len({r.letters for r in rels}) < len(rels):
            continue
        if not _quick_c_prime(rels, lam):
            continue
        S = SymmetrizedSet(rels)
        if check_c_prime(S, lam).passed:
            return FinitePresentation(default_alphabet(n_gens), rels)
    raise GenerationBudgetExceeded(
        f"no C'({lam}) presentation found in {attempts} attempts "
        f"({n_gens} generators, {n_relators} relators, length {length})"
    )


FAMILY_NAMES = ("base-disjoint", "example-cf", "level", "level-modified")


def make_family(name: str, N: int = 28, L: Optional[int] = None, k_max: int = 3, i_max: int = 20) -> RelatorFamily:
    if name == "base-disjoint":
        rels = gen_base_disjoint(N, L)
        return FinitePresentation(level_alphabet(N), rels, [f"r{i}^1" for i in (1, 2, 3)])
    if name == "level":
        return LevelFamily(N, L, k_max)
    if name == "level-modified":
        return LevelFamily(N, L, k_max, modified=True)
    if name == "example-cf":
        return ExampleCF(i_max)
    raise FamilyError(f"unknown family {name!r}")
