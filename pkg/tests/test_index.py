import numpy as np
from hypothesis import given, strategies as st

from smallcancel.index import SuffixAutomaton, lcp_array, suffix_array

codes = st.lists(st.integers(0, 4), min_size=1, max_size=60)


@given(codes)
def test_suffix_array_sorts_suffixes(c):
    sa = suffix_array(np.asarray(c, dtype=np.int64))
    assert list(sa) == sorted(range(len(c)), key=lambda i: c[i:])


@given(codes)
def test_lcp_array(c):
    arr = np.asarray(c, dtype=np.int64)
    sa = suffix_array(arr)
    lcp = lcp_array(arr, sa)
    for k in range(1, len(c)):
        a, b = c[sa[k - 1] :], c[sa[k] :]
        n = 0
        while n < min(len(a), len(b)) and a[n] == b[n]:
            n += 1
        assert lcp[k] == n


@given(st.lists(st.integers(1, 3), min_size=1, max_size=25), st.lists(st.integers(1, 3), min_size=1, max_size=25))
def test_automaton_lcf(u, v):
    sam = SuffixAutomaton(tuple(u))
    length, i, j = sam.longest_common_factor(tuple(v))
    best = 0
    for a in range(len(u)):
        for b in range(len(v)):
            n = 0
            while a + n < len(u) and b + n < len(v) and u[a + n] == v[b + n]:
                n += 1
            best = max(best, n)
    assert length == best
    assert tuple(u[i : i + length]) == tuple(v[j : j + length])
    for k in range(len(u)):
        for m in range(k, min(len(u), k + 4) + 1):
            assert sam.contains(tuple(u[k:m]))
