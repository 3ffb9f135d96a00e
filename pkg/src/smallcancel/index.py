"""Factor-index primitives: generalized suffix array with LCP, and a suffix
automaton used for longest-common-factor (matching statistics) queries."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def suffix_array(codes: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling.

    ``codes`` must end in a symbol that occurs nowhere else (the generalized
    builders guarantee this with per-string sentinels).
    """
    n = len(codes)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(codes, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:] if k < n else second[:0]
        sa = np.lexsort((second, rank))
        r1 = rank[sa]
        r2 = second[sa]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(step)
        rank = new_rank
        if rank[sa[-1]] == n - 1 or k >= n:
            return sa
        k *= 2


def lcp_array(codes: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai: ``lcp[i]`` is the LCP of suffixes ``sa[i-1]`` and ``sa[i]``."""
    n = len(sa)
    text = codes.tolist()
    sa_l = sa.tolist()
    rank = [0] * n
    for i, p in enumerate(sa_l):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa_l[r - 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


class SuffixAutomaton:
    """Suffix automaton of a single word, for streaming factor matches."""

    def __init__(self, word: Sequence[int]) -> None:
        self.word = tuple(word)
        self.next: list[dict[int, int]] = [{}]
        self.link = [-1]
        self.length = [0]
        self.endpos = [-1]  # end index of the first occurrence
        last = 0
        for i, c in enumerate(self.word):
            cur = self._new(self.length[last] + 1, i)
            p = last
            while p != -1 and c not in self.next[p]:
                self.next[p][c] = cur
                p = self.link[p]
            if p == -1:
                self.link[cur] = 0
            else:
                q = self.next[p][c]
                if self.length[p] + 1 == self.length[q]:
                    self.link[cur] = q
                else:
                    clone = self._new(self.length[p] + 1, self.endpos[q])
                    self.next[clone] = dict(self.next[q])
                    self.link[clone] = self.link[q]
                    while p != -1 and self.next[p].get(c) == q:
                        self.next[p][c] = clone
                        p = self.link[p]
                    self.link[q] = clone
                    self.link[cur] = clone
            last = cur

    def _new(self, length: int, endpos: int) -> int:
        self.next.append({})
        self.link.append(-1)
        self.length.append(length)
        self.endpos.append(endpos)
        return len(self.length) - 1

    def contains(self, pattern: Sequence[int]) -> bool:
        state = 0
        for c in pattern:
            state = self.next[state].get(c, -1)
            if state < 0:
                return False
        return True

    def longest_common_factor(self, text: Sequence[int]) -> tuple[int, int, int]:
        """Return ``(length, start in word, start in text)`` of a longest
        common factor of the indexed word and ``text``; length 0 gives
        positions ``(0, 0)``."""
        nxt, link, length, endpos = self.next, self.link, self.length, self.endpos
        state = 0
        cur = 0
        best = 0
        best_state = 0
        best_end = -1
        for i, c in enumerate(text):
            t = nxt[state].get(c)
            if t is None:
                while state != -1 and c not in nxt[state]:
                    state = link[state]
                if state == -1:
                    state = 0
                    cur = 0
                    continue
                cur = length[state] + 1
                state = nxt[state][c]
            else:
                cur += 1
                state = t
            if cur > best:
                best = cur
                best_state = state
                best_end = i
        if best == 0:
            return 0, 0, 0
        return best, endpos[best_state] - best + 1, best_end - best + 1
