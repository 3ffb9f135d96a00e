"""Pieces of truncated symmetrized closures and small-cancellation checks.

Closure elements are never materialized: the element starting at offset
``o`` of relator ``r`` (or of ``r^-1``) is the length-``|r|`` factor of the
doubled word ``rr`` at ``o``. All doubled words live in one generalized
suffix array; the longest common prefix of two elements is the suffix LCP
capped at the shorter element length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .index import SuffixAutomaton, lcp_array, suffix_array
from .viable import ViableFunction
from .words import CyclicWord, Word, find_all, rotation_period, closure_size


@dataclass(frozen=True, order=True)
class ElementId:
    relator: int
    inverted: bool
    offset: int


class SymmetrizedSet:
    """The closure of those relators with ``|r| <= truncation``.

    ``omitted_min`` is a lower bound on the length of every relator of the
    underlying presentation that is *not* included; ``math.inf`` means the
    presentation is finite and fully included.
    """

    def __init__(
        self,
        relators: Sequence[CyclicWord],
        truncation: float = math.inf,
        ids: Optional[Sequence[str]] = None,
        omitted_min: float = math.inf,
    ) -> None:
        ids = list(ids) if ids is not None else [f"r{j}" for j in range(len(relators))]
        if len(ids) != len(relators):
            raise ValueError("ids and relators differ in length")
        kept, kept_ids = [], []
        for rid, r in zip(ids, relators):
            if len(r) <= truncation:
                kept.append(r)
                kept_ids.append(rid)
            else:
                omitted_min = min(omitted_min, len(r))
        self.relators: tuple[CyclicWord, ...] = tuple(kept)
        self.ids: tuple[str, ...] = tuple(kept_ids)
        self.truncation = truncation
        self.omitted_min = omitted_min

    def __len__(self) -> int:
        return len(self.relators)

    @property
    def lengths(self) -> list[int]:
        return [len(r) for r in self.relators]

    def strings(self, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The relator and its inverse, as letter tuples."""
        r = self.relators[j]
        return r.letters, r.inverse().letters

    def element(self, eid: ElementId) -> Word:
        r = self.relators[eid.relator]
        if eid.inverted:
            r = r.inverse()
        return r.rotation(eid.offset)

    def covers_below(self, n: float) -> bool:
        """True iff every relator of length < n is included."""
        return self.omitted_min >= n

    @cached_property
    def letters(self) -> frozenset[int]:
        out: set[int] = set()
        for r in self.relators:
            out.update(r.letters)
            out.update(-c for c in r.letters)
        return frozenset(out)

    @cached_property
    def _index(self) -> "_Index":
        return _Index(self)

    def prefix_count(self, p: Word) -> int:
        """Number of distinct closure elements having ``p`` as a prefix."""
        total = 0
        for r in self.relators:
            n = len(r)
            if len(p) > n:
                continue
            q = rotation_period(r)
            both = closure_size(r) == 2 * q
            strings = [r.doubled()] + ([r.inverse().doubled()] if both else [])
            for s in strings:
                total += len({o % q for o in find_all(p.letters, s[: n + len(p) - 1]) if o < n})
        return total

    def is_piece(self, p: Word) -> bool:
        return self.prefix_count(p) >= 2


class _Index:
    """Generalized suffix array over all doubled closure strings.

    String ``2j`` is the doubled relator ``j``; string ``2j+1`` its doubled
    inverse. Each is followed by its own sentinel symbol.
    """

    def __init__(self, S: SymmetrizedSet) -> None:
        max_gen = max((abs(c) for c in S.letters), default=0)
        sentinel0 = 2 * max_gen + 3
        chunks, letter_chunks, lens = [], [], []
        for j in range(len(S)):
            for s in S.strings(j):
                arr = np.asarray(s, dtype=np.int64)
                doubled = np.concatenate([arr, arr])
                code = np.where(doubled > 0, 2 * doubled - 1, -2 * doubled)
                chunks.append(code)
                chunks.append(np.array([sentinel0 + len(lens)], dtype=np.int64))
                letter_chunks.append(doubled)
                letter_chunks.append(np.zeros(1, dtype=np.int64))
                lens.append(len(s))
        self.lens = np.asarray(lens, dtype=np.int64)
        if not lens:
            self.codes = np.zeros(0, dtype=np.int64)
            self.letters = self.codes
            self.base = self.lens
            return
        self.codes = np.concatenate(chunks)
        self.letters = np.concatenate(letter_chunks)
        self.base = np.concatenate([[0], np.cumsum(2 * self.lens + 1)[:-1]])
        self.string_of = np.repeat(np.arange(len(lens)), 2 * self.lens + 1)
        self.sa = suffix_array(self.codes)
        self.lcp = lcp_array(self.codes, self.sa)

    def element_of(self, pos: int) -> ElementId:
        s = int(self.string_of[pos])
        return ElementId(s // 2, bool(s % 2), int(pos - self.base[s]))

    def factor(self, pos: int, length: int) -> Word:
        return Word(tuple(int(c) for c in self.letters[pos : pos + length]))

    def element_bests(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """For every closure element (in suffix order) the longest common
        prefix with any *distinct* element, and one partner attaining it.

        Returns ``(positions, best, partner)``; ``partner`` indexes into
        ``positions`` (-1 when no distinct element shares a letter).
        """
        if len(self.lens) == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty, empty
        sa, lcp = self.sa, self.lcp
        offset = np.arange(len(self.codes)) - self.base[self.string_of]
        is_start = offset < self.lens[self.string_of]
        kidx = np.nonzero(is_start[sa])[0]
        pos = sa[kidx]
        caps = self.lens[self.string_of[pos]]
        m = len(pos)
        best = np.full(m, -1, dtype=np.int64)
        partner = np.full(m, -1, dtype=np.int64)
        if m < 2:
            return pos, np.maximum(best, 0), partner
        # L[t] = LCP of kept suffixes t and t+1 (range minimum over the full array)
        ext = np.append(lcp, 0)
        L = np.minimum.reduceat(ext, kidx + 1)[:-1]
        ca, cb = caps[:-1], caps[1:]
        equal = (ca == cb) & (L >= ca)
        cand = np.minimum(L, np.minimum(ca, cb))
        right_final = (cb >= np.minimum(L, ca)) & ~equal
        left_final = (ca >= np.minimum(L, cb)) & ~equal

        t = np.arange(m - 1)
        sel = right_final
        best[t[sel]] = cand[sel]
        partner[t[sel]] = t[sel] + 1
        sel = left_final & (cand > best[1:])
        best[t[sel] + 1] = cand[sel]
        partner[t[sel] + 1] = t[sel]

        todo_right = np.nonzero(~right_final)[0].tolist()
        todo_left = (np.nonzero(~left_final)[0] + 1).tolist()
        Ll, capl = L.tolist(), caps.tolist()
        bl, pl = best.tolist(), partner.tolist()
        for start, step in [(todo_right, 1), (todo_left, -1)]:
            for a in start:
                ba, pa = bl[a], pl[a]
                ca_ = capl[a]
                run = math.inf
                u = a
                while True:
                    u += step
                    if u < 0 or u >= m:
                        break
                    run = min(run, Ll[u - 1] if step == 1 else Ll[u])
                    bound = min(run, ca_)
                    if bound <= ba:
                        break
                    if capl[u] == ca_ and run >= ca_:
                        continue
                    v = min(bound, capl[u])
                    if v > ba:
                        ba, pa = v, u
                bl[a], pl[a] = ba, pa
        best = np.maximum(np.asarray(bl, dtype=np.int64), 0)
        return pos, best, np.asarray(pl, dtype=np.int64)


@dataclass(frozen=True)
class PieceWitness:
    piece: Word
    first: ElementId
    second: ElementId


@dataclass(frozen=True)
class PieceEntry:
    relator_id: str
    relator_len: int
    max_piece_len: int
    witness: Optional[PieceWitness]

    def to_json(self, alphabet=None, ratio: Optional[Fraction] = None) -> dict:
        if ratio is None:
            ratio = Fraction(self.max_piece_len, self.relator_len)
        piece = None
        if self.witness is not None:
            w = self.witness.piece
            piece = alphabet.format(w) if alphabet is not None else list(w.letters)
        return {
            "relator_id": self.relator_id,
            "relator_len": self.relator_len,
            "max_piece_len": self.max_piece_len,
            "witness_piece": piece,
            "ratio_num": ratio.numerator,
            "ratio_den": ratio.denominator,
        }


@dataclass(frozen=True)
class PieceReport:
    entries: tuple[PieceEntry, ...]
    truncation: float

    @property
    def max_piece(self) -> int:
        return max((e.max_piece_len for e in self.entries), default=0)

    def worst(self) -> Optional[PieceEntry]:
        """Entry with the largest ratio ``max_piece_len / relator_len``."""
        if not self.entries:
            return None
        return max(self.entries, key=lambda e: Fraction(e.max_piece_len, e.relator_len))

    def by_id(self) -> dict[str, PieceEntry]:
        return {e.relator_id: e for e in self.entries}


def max_piece_lengths(S: SymmetrizedSet) -> PieceReport:
    if len(S) == 0:
        raise ValueError("empty symmetrized set")
    ix = S._index
    pos, best, partner = ix.element_bests()
    rel = ix.string_of[pos] // 2
    entries = []
    # per relator: the element with the largest best value
    order = np.lexsort((-best, rel))
    first_of = {}
    for k in order.tolist():
        first_of.setdefault(int(rel[k]), k)
    for j in range(len(S)):
        k = first_of.get(j)
        value = int(best[k]) if k is not None else 0
        witness = None
        if k is not None and partner[k] >= 0 and value >= 0:
            p = int(pos[k])
            witness = PieceWitness(
                ix.factor(p, value), ix.element_of(p), ix.element_of(int(pos[partner[k]]))
            )
        entries.append(PieceEntry(S.ids[j], len(S.relators[j]), value, witness))
    return PieceReport(tuple(entries), S.truncation)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    report: Optional[PieceReport]
    worst: Optional[PieceEntry]
    worst_ratio: Fraction
    truncation: float
    unconditional: bool = False
    details: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.passed:
            return "FAIL"
        return "PASS" if self.unconditional else "PASS (truncated)"


def _ratio(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x).limit_denominator(10**12)


def check_c_prime(S: SymmetrizedSet, lam, report: Optional[PieceReport] = None) -> Verdict:
    """``C'(lam)``: every piece ``p`` of every relator ``r`` has ``|p| < lam |r|``."""
    lam = _ratio(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    report = report or max_piece_lengths(S)
    bad = [e for e in report.entries if not e.max_piece_len < lam * e.relator_len]
    worst = report.worst()
    ratio = Fraction(worst.max_piece_len, worst.relator_len) if worst else Fraction(0)
    if bad:
        worst = max(bad, key=lambda e: Fraction(e.max_piece_len, e.relator_len))
        ratio = Fraction(worst.max_piece_len, worst.relator_len)
    return Verdict(not bad, report, worst, ratio, S.truncation, not bad and S.omitted_min == math.inf,
                   details={"lambda": str(lam)})


def check_c_prime_f(S: SymmetrizedSet, f: ViableFunction, report: Optional[PieceReport] = None) -> Verdict:
    """``C'(1/f)``: every piece has ``|p| < |r| / f(|r|)``; the reported ratio
    is the tightest ``f(|r|) |p| / |r|`` (pass iff below 1)."""
    report = report or max_piece_lengths(S)
    worst, ratio = None, Fraction(-1)
    for e in report.entries:
        q = f(e.relator_len) * e.max_piece_len / e.relator_len
        if q > ratio:
            worst, ratio = e, q
    passed = ratio < 1
    return Verdict(passed, report, worst, max(ratio, Fraction(0)), S.truncation,
                   passed and S.omitted_min == math.inf, details={"f": f.name})


def cyclic_lcf(sam: SuffixAutomaton, s: Sequence[int]) -> tuple[int, int, int]:
    """Longest common factor of the automaton word and the cyclic word ``s``
    (factors of length at most ``|s|``): ``(length, pos in word, offset in s)``."""
    n = len(s)
    length, i, j = sam.longest_common_factor(tuple(s) * 2)
    if length > n:
        i, j, length = i + length - n, j + length - n, n
    return length, i, j % n if n else 0


@dataclass(frozen=True)
class FactorHit:
    relator: int
    inverted: bool
    length: int
    pos_in_word: int
    offset: int


def factor_hits(w: Word, S: SymmetrizedSet, max_len: float = math.inf) -> list[FactorHit]:
    """Longest common factor of ``w`` with each closure string (relator and
    inverse) of length at most ``max_len``."""
    hits = []
    if len(w) == 0:
        return hits
    sam = SuffixAutomaton(w.letters)
    wl = w.letter_set()
    for j, r in enumerate(S.relators):
        if len(r) > max_len:
            continue
        for inverted, s in enumerate(S.strings(j)):
            if wl.isdisjoint(s):
                hits.append(FactorHit(j, bool(inverted), 0, 0, 0))
                continue
            length, i, o = cyclic_lcf(sam, s)
            hits.append(FactorHit(j, bool(inverted), length, i, o))
    return hits


def pair_condition(x: Word, S: SymmetrizedSet, f: ViableFunction) -> Verdict:
    """Every common factor ``p`` of ``x`` and a closure element ``r`` has
    ``|p| < |r| / f(|r|)``. Relators beyond the truncation are covered
    (``unconditional``) when ``|x| < n / f(n)`` for all omitted lengths."""
    ratio = Fraction(0)
    worst_hit = None
    for h in factor_hits(x, S):
        n = len(S.relators[h.relator])
        q = f(n) * h.length / n
        if worst_hit is None or q > ratio:
            ratio, worst_hit = q, h
    passed = ratio < 1
    unconditional = False
    bound = None
    if passed:
        if S.omitted_min == math.inf:
            unconditional = True
        else:
            bound = f.min_ratio_from(int(S.omitted_min))
            unconditional = bound is not None and len(x) < bound
    details = {"f": f.name, "word_len": len(x)}
    if worst_hit is not None:
        details.update(
            worst_relator=S.ids[worst_hit.relator],
            worst_inverted=worst_hit.inverted,
            worst_factor_len=worst_hit.length,
        )
    if bound is not None:
        details["tail_ratio_bound"] = str(bound)
    return Verdict(passed, None, None, ratio, S.truncation, unconditional, details)


def longest_common_factor(u: Word, v: Word) -> tuple[int, int, int]:
    """``(length, position in u, position in v)`` of a longest common factor."""
    if len(u) == 0 or len(v) == 0:
        return 0, 0, 0
    return SuffixAutomaton(u.letters).longest_common_factor(v.letters)
