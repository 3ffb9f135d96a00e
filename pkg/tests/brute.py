"""Independent slow reference computations used by the tests."""

from __future__ import annotations

import numpy as np


def closure_elements(relators):
    """Distinct closure elements as (tuple, relator index)."""
    seen = {}
    for j, r in enumerate(relators):
        for s in (r.letters, r.inverse().letters):
            for k in range(len(s)):
                e = s[k:] + s[:k]
                seen.setdefault(e, set()).add(j)
    return seen


def _lcp(a, b):
    n = min(len(a), len(b))
    k = 0
    while k < n and a[k] == b[k]:
        k += 1
    return k


def pairwise_max_pieces(relators):
    """Quadratic LCP over all pairs of distinct closure elements."""
    elems = closure_elements(relators)
    items = list(elems.items())
    best = [0] * len(relators)
    for x in range(len(items)):
        for y in range(x + 1, len(items)):
            v = _lcp(items[x][0], items[y][0])
            for j in items[x][1] | items[y][1]:
                best[j] = max(best[j], v)
    return best


def hashed_max_pieces(relators):
    """Max piece per relator by growing the prefix length and grouping
    elements by a double rolling hash of their prefixes."""
    mods = (1_000_000_007, 998_244_353)
    base = 1_000_003
    text, starts, rel, lens = [], [], [], []
    seen = set()
    for j, r in enumerate(relators):
        for s in (r.letters, r.inverse().letters):
            n = len(s)
            off = len(text)
            text.extend(s * 2)
            for k in range(n):
                e = s[k:] + s[:k]
                if e in seen:
                    continue
                seen.add(e)
                starts.append(off + k)
                rel.append(j)
                lens.append(n)
    text = np.asarray(text, dtype=np.int64) + 10**6
    starts, rel, lens = np.asarray(starts), np.asarray(rel), np.asarray(lens)
    best = [0] * len(relators)
    h = [np.zeros(len(starts), dtype=np.int64) for _ in mods]
    idx = np.arange(len(starts))
    for L in range(1, int(lens.max()) + 1):
        idx = idx[lens[idx] >= L]
        if len(idx) < 2:
            break
        c = text[starts[idx] + L - 1]
        for q, m in enumerate(mods):
            h[q][idx] = (h[q][idx] * base + c) % m
        key = h[0][idx] * mods[1] + h[1][idx]
        _, inv, cnt = np.unique(key, return_inverse=True, return_counts=True)
        shared = cnt[inv] >= 2
        if not shared.any():
            break
        for j in set(rel[idx[shared]].tolist()):
            best[j] = L
        idx = idx[shared]
    return best
