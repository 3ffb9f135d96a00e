"""Ground truth for small presentations: Dehn's algorithm and exact distances.

Dehn's algorithm is complete for the word problem only under C'(1/6), so a
``Presentation`` refuses to run unless its relators pass that check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .pieces import SymmetrizedSet, check_c_prime
from .words import Alphabet, CyclicWord, Word, free_reduce


class OracleRefused(ValueError):
    pass


@dataclass(frozen=True)
class ClosureElement:
    index: int
    relator_id: str
    inverted: bool
    offset: int
    letters: tuple[int, ...]


class Presentation:
    def __init__(self, alphabet: Alphabet, relators: Sequence[CyclicWord], ids: Optional[Sequence[str]] = None,
                 lam=Fraction(1, 6)) -> None:
        self.alphabet = alphabet
        self.relators = tuple(relators)
        self.ids = tuple(ids) if ids is not None else tuple(f"r{j + 1}" for j in range(len(relators)))
        lam = Fraction(lam)
        if lam > Fraction(1, 6):
            raise OracleRefused("the oracle needs lambda <= 1/6")
        if not self.relators:
            raise OracleRefused("no relators")
        verdict = check_c_prime(SymmetrizedSet(self.relators, ids=self.ids), lam)
        if not verdict.passed:
            raise OracleRefused(f"presentation fails C'({lam}): worst ratio {verdict.worst_ratio}")
        self.lam = lam
        self.verdict = verdict
        self.elements = self._closure()
        self._by_first: dict[int, list[ClosureElement]] = {}
        for e in self.elements:
            self._by_first.setdefault(e.letters[0], []).append(e)

    @property
    def letters(self) -> list[int]:
        n = len(self.alphabet)
        return [g for g in range(1, n + 1)] + [-g for g in range(1, n + 1)]

    def _closure(self) -> tuple[ClosureElement, ...]:
        seen: set[tuple[int, ...]] = set()
        out = []
        for rid, r in zip(self.ids, self.relators):
            for inverted, s in ((False, r.letters), (True, r.inverse().letters)):
                for k in range(len(s)):
                    e = s[k:] + s[:k]
                    if e in seen:
                        continue
                    seen.add(e)
                    out.append(ClosureElement(len(out), rid, inverted, k, e))
        return tuple(out)


@dataclass(frozen=True)
class DehnStep:
    position: int
    element: int
    relator_id: str
    inverted: bool
    offset: int
    replaced_len: int
    replacement_len: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class DehnTrace:
    input: Word
    output: Word
    steps: tuple[DehnStep, ...] = field(default=())

    def to_json(self, alphabet: Optional[Alphabet] = None) -> dict:
        fmt = (lambda w: alphabet.format(w, powers=False)) if alphabet else (lambda w: list(w.letters))
        return {"input": fmt(self.input), "output": fmt(self.output), "steps": [s.to_json() for s in self.steps]}

    def dumps(self, alphabet: Optional[Alphabet] = None) -> str:
        return json.dumps(self.to_json(alphabet), sort_keys=True)


def _apply(w: tuple[int, ...], pos: int, e: ClosureElement, length: int) -> tuple[int, ...]:
    if w[pos : pos + length] != e.letters[:length]:
        raise ValueError("trace step does not match the word")
    rest = tuple(-c for c in reversed(e.letters[length:]))
    return free_reduce(w[:pos] + rest + w[pos + length :]).letters


def _find_rewrite(w: tuple[int, ...], P: Presentation) -> Optional[tuple[int, ClosureElement, int]]:
    """Leftmost position, then longest over-half prefix, then lowest element index."""
    n = len(w)
    for pos in range(n):
        best = None
        for e in P._by_first.get(w[pos], ()):
            m = min(len(e.letters), n - pos)
            k = 1
            while k < m and w[pos + k] == e.letters[k]:
                k += 1
            if 2 * k > len(e.letters) and (best is None or k > best[1]):
                best = (e, k)
        if best is not None:
            return pos, best[0], best[1]
    return None


def dehn_reduce(w: Word, P: Presentation) -> tuple[Word, DehnTrace]:
    cur = free_reduce(w).letters
    steps = []
    while True:
        hit = _find_rewrite(cur, P)
        if hit is None:
            break
        pos, e, k = hit
        nxt = _apply(cur, pos, e, k)
        steps.append(DehnStep(pos, e.index, e.relator_id, e.inverted, e.offset, k, len(e.letters) - k))
        assert len(nxt) < len(cur)
        cur = nxt
    out = Word(cur)
    return out, DehnTrace(Word(tuple(w.letters)), out, tuple(steps))


def replay(trace: DehnTrace, P: Presentation) -> Word:
    cur = free_reduce(trace.input).letters
    for s in trace.steps:
        e = P.elements[s.element]
        if (e.relator_id, e.inverted, e.offset) != (s.relator_id, s.inverted, s.offset):
            raise ValueError("trace names a different closure element")
        cur = _apply(cur, s.position, e, s.replaced_len)
    return Word(cur)


def is_trivial(w: Word, P: Presentation) -> bool:
    return len(dehn_reduce(w, P)[0]) == 0


def are_equal(u: Word, v: Word, P: Presentation) -> bool:
    return is_trivial(u + v.inverse(), P)


EXHAUSTED = "EXHAUSTED"


@dataclass(frozen=True)
class DistanceResult:
    distance: Optional[int]
    witness: Optional[Word]
    tests: int
    status: str = "OK"

    @property
    def exhausted(self) -> bool:
        return self.status == EXHAUSTED


class _Budget(Exception):
    pass


def reduced_words(letters: Sequence[int], length: int, first_not: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All freely reduced words of the given length, in lexicographic order of
    ``letters``; ``first_not`` forbids one first letter."""
    if length == 0:
        yield ()
        return

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in letters:
            if prefix and c == -prefix[-1]:
                continue
            if not prefix and c == first_not:
                continue
            prefix.append(c)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def brute_force_distance(w: Word, P: Presentation, budget: int = 10**6, mode: str = "pruned") -> DistanceResult:
    """Word length of the group element ``w``.

    ``exhaustive`` tests every reduced word shorter than ``w``, shortest
    first. ``pruned`` first Dehn-reduces ``w`` to ``w0`` and then only tests
    candidates of the shape forced on a shorter geodesic ``v``: write
    ``w0 = p w'' s`` and ``v = p v'' s`` with maximal common prefix and
    suffix. Then ``w'' v''^-1`` is a cyclically reduced nontrivial word equal
    to 1 whose halves contain no over-half relator factor, so by the strong
    Greendlinger lemma it has two disjoint over-half relator arcs, one across
    each junction. That pins both ends of ``v''`` and leaves only its middle
    free. The budget counts equality tests.
    """
    if mode not in ("pruned", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    tests = 0

    def equal(v: tuple[int, ...], target: Word) -> bool:
        nonlocal tests
        if tests >= budget:
            raise _Budget
        tests += 1
        return are_equal(Word(v), target, P)

    try:
        if mode == "exhaustive":
            target = free_reduce(w)
            for n in range(len(target)):
                for v in reduced_words(P.letters, n):
                    if equal(v, target):
                        return DistanceResult(n, Word(v), tests)
            return DistanceResult(len(target), target, tests)

        w0 = dehn_reduce(w, P)[0]
        if len(w0) == 0:
            return DistanceResult(0, Word(), tests)
        a = w0.letters
        for n in range(1, len(a)):
            for v in _pruned_candidates(a, n, P):
                if equal(v, w0):
                    return DistanceResult(n, Word(v), tests)
        return DistanceResult(len(a), w0, tests)
    except _Budget:
        return DistanceResult(None, None, tests, EXHAUSTED)


def _junction_tails(word: tuple[int, ...], P: Presentation) -> set[tuple[int, ...]]:
    """Nonempty ``beta`` with ``alpha beta`` an over-half prefix of a closure
    element for some nonempty suffix ``alpha`` of ``word``."""
    out = set()
    for la in range(1, len(word) + 1):
        alpha = word[len(word) - la :]
        for e in P._by_first.get(alpha[0], ()):
            if e.letters[:la] != alpha:
                continue
            r = len(e.letters)
            for lh in range(max(la + 1, r // 2 + 1), r + 1):
                out.add(e.letters[la:lh])
    return out


def _inv(w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-c for c in reversed(w))


def _pruned_candidates(a: tuple[int, ...], n: int, P: Presentation) -> Iterator[tuple[int, ...]]:
    """Reduced words ``p beta2^-1 m beta1^-1 s`` of length ``n`` (see above)."""
    seen: set[tuple[int, ...]] = set()
    m = len(a)
    for lp in range(m):
        for ls in range(m - lp):
            inner = n - lp - ls
            if inner < 2:
                continue
            p, s = a[:lp], a[m - ls :]
            mid = a[lp : m - ls]
            right = [_inv(b) for b in _junction_tails(mid, P) if len(b) < inner]
            if not right:
                continue
            left = [b for b in _junction_tails(_inv(mid), P) if len(b) < inner]
            for b1 in right:  # b1 = beta1^-1, the end of v''
                for b2 in left:  # b2 = beta2^-1, the start of v''
                    lg = inner - len(b1) - len(b2)
                    if lg < 0:
                        continue
                    for g in reduced_words(P.letters, lg):
                        v = p + b2 + g + b1 + s
                        if v in seen:
                            continue
                        seen.add(v)
                        if Word(v).is_reduced():
                            yield v
