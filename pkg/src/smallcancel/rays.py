"""Ray constructions and finite witnesses for their checkable inequalities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .pieces import SymmetrizedSet, Verdict, factor_hits, pair_condition
from .viable import ViableFunction
from .words import CyclicWord, Word, find_all, free_reduce, interior, syllables


class RayError(ValueError):
    pass


@dataclass(frozen=True)
class RaySpec:
    construction: str  # caf | a-ray | spliced
    family: str
    i_min: int = 18
    i_max: int = 24
    k: Optional[Mapping[int, int]] = None

    def __post_init__(self) -> None:
        if self.construction not in ("caf", "a-ray", "spliced"):
            raise RayError(f"unknown construction {self.construction!r}")
        if self.i_max < self.i_min:
            raise RayError("empty index range")


# --- the caf construction --------------------------------------------------


@dataclass(frozen=True)
class CafSegment:
    i: int
    relator_id: str
    relator_len: int
    inverted: bool
    offset: int
    x: Word
    k_i: int
    f_value: Fraction
    conditions: dict

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "relator_id": self.relator_id,
            "relator_len": self.relator_len,
            "inverted": self.inverted,
            "offset": self.offset,
            "x_len": len(self.x),
            "k_i": self.k_i,
            "f_of_relator_len": str(self.f_value),
            "conditions": self.conditions,
        }


@dataclass(frozen=True)
class CafRay:
    word: Word
    segments: tuple[CafSegment, ...]

    def to_json(self) -> dict:
        return {"construction": "caf", "length": len(self.word), "segments": [s.to_json() for s in self.segments]}


def _caf_conditions(prev: Optional[CafSegment], r: CyclicWord, prev_r: Optional[CyclicWord],
                    x: Word, k_i: int, i: int) -> dict:
    n = len(r)
    distinct = prev_r is None or not _same_closure(r, prev_r)
    return {
        "1_closure_distinct": distinct,
        "2_length_at_least_k": n >= k_i,
        "3_lower": 2 * i * len(x) >= n,
        "3_upper": i * len(x) <= n,
        "4_reduced_join": prev is None or prev.x.letters[-1] != -x.letters[0],
    }


def _same_closure(r: CyclicWord, s: CyclicWord) -> bool:
    if len(r) != len(s):
        return False
    d = r.doubled()
    return bool(find_all(s.letters, d)) or bool(find_all(s.inverse().letters, d))


def build_caf_ray(
    relators: Sequence[tuple[str, CyclicWord]],
    i_min: int = 18,
    i_max: int = 24,
    k: Optional[Mapping[int, int]] = None,
    f: Optional[ViableFunction] = None,
    index_of: Optional[Callable[[int], int]] = None,
) -> CafRay:
    """Concatenate prefixes ``x_i`` of relators ``r_i`` with
    ``|r_i| >= k_i`` and ``|r_i|/(2i) <= |x_i| <= |r_i|/i``.

    ``k`` defaults to ``k_i = |r_i|`` where ``r_i`` is ``relators[index_of(i)]``
    (by default the relator whose id is ``r{i}``). The relator chosen for ``i``
    is the shortest admissible one whose closure differs from the previous
    choice; rotations are tried only if the join with the previous prefix is
    not reduced.
    """
    if i_min < 18:
        raise RayError("the construction starts at i >= 18")
    if i_max < i_min:
        raise RayError("empty index range")
    rels = list(relators)
    by_id = {rid: r for rid, r in rels}
    order = sorted(range(len(rels)), key=lambda t: (len(rels[t][1]), t))
    segments: list[CafSegment] = []
    prev_r: Optional[CyclicWord] = None
    for i in range(i_min, i_max + 1):
        if k is not None and i in k:
            k_i = k[i]
        elif index_of is not None:
            k_i = len(rels[index_of(i)][1])
        elif f"r{i}" in by_id:
            k_i = len(by_id[f"r{i}"])
        else:
            raise RayError(f"no threshold k_{i} and no relator r{i}")
        chosen = None
        for t in order:
            rid, r = rels[t]
            if len(r) < k_i or (prev_r is not None and _same_closure(r, prev_r)):
                continue
            m = -(-len(r) // (2 * i))
            prev = segments[-1] if segments else None
            for inverted, base in ((False, r), (True, r.inverse())):
                for off in range(len(base)):
                    x = base.rotation(off)[:m]
                    conds = _caf_conditions(prev, r, prev_r, x, k_i, i)
                    if all(conds.values()):
                        chosen = (rid, r, inverted, off, x, conds)
                        break
                if chosen:
                    break
            if chosen:
                break
        if chosen is None:
            raise RayError(f"no admissible relator for i = {i}")
        rid, r, inverted, off, x, conds = chosen
        fv = f(len(r)) if f is not None else Fraction(0)
        if f is not None:
            conds = dict(conds, f_exceeds_4i=bool(fv > 4 * i))
        segments.append(CafSegment(i, rid, len(r), inverted, off, x, k_i, fv, conds))
        prev_r = r
    word = Word(tuple(c for s in segments for c in s.x.letters))
    return CafRay(word, tuple(segments))


def verify_caf_ray(ray: CafRay, relators: Sequence[tuple[str, CyclicWord]]) -> list[str]:
    """Re-derive conditions (1)-(4) from the stored metadata."""
    by_id = dict(relators)
    out = []
    prev, prev_r = None, None
    pos = 0
    for s in ray.segments:
        r = by_id[s.relator_id]
        base = r.inverse() if s.inverted else r
        if base.rotation(s.offset)[: len(s.x)] != s.x:
            out.append(f"i={s.i}: x is not a prefix of the named rotation")
        if ray.word[pos : pos + len(s.x)] != s.x:
            out.append(f"i={s.i}: x is not at its place in the ray")
        pos += len(s.x)
        for name, ok in _caf_conditions(prev, r, prev_r, s.x, s.k_i, s.i).items():
            if not ok:
                out.append(f"i={s.i}: condition {name} fails")
        prev, prev_r = s, r
    if pos != len(ray.word):
        out.append("segment lengths do not add up")
    return out


# --- surgery ---------------------------------------------------------------


CASE3_NOTE = "case 3 reads the undefined first letter x_i'^- as the first letter of x_i"


@dataclass(frozen=True)
class Segment:
    """An ambient relator piece ``b^l x a^j`` with ``x`` its interior."""

    b: int
    l: int
    x: Word
    a: int
    j: int

    def word(self) -> Word:
        return Word((self.b,) * self.l + self.x.letters + (self.a,) * self.j)


@dataclass
class SurgeryContext:
    q: Word
    segments: list[Segment]
    r0: Optional[CyclicWord] = None

    @property
    def q_core(self) -> Word:
        return self.q[3 : len(self.q) - 3]

    def violations(self) -> list[str]:
        out = []
        q = self.q
        if len(q) < 7:
            out.append("q needs at least seven letters")
        if not q.is_reduced():
            out.append("q is not reduced")
        if self.r0 is not None:
            n = len(self.r0)
            if 3 * len(q) > n:
                out.append("|q| > |r_0|/3")
            if 6 * (len(q) - 6) < n:
                out.append("|q| - 6 < |r_0|/6")
            d = self.r0.doubled()
            if not _occurs(q.letters, d[: n + len(q) - 1]) and not _occurs(
                q.letters, self.r0.inverse().doubled()[: n + len(q) - 1]
            ):
                out.append("q is not a factor of r_0")
        for t, s in enumerate(self.segments):
            if 12 * len(q) > len(s.x):
                out.append(f"segment {t}: 12|q| > |x|")
            if s.l < 1 or s.j < 1 or len(s.x) == 0:
                out.append(f"segment {t}: need l, j > 0 and x nonempty")
                continue
            if not s.word().is_reduced() or interior(s.word()) != s.x:
                out.append(f"segment {t}: x is not the interior of b^l x a^j")
        return out


def _occurs(p: Sequence[int], text: Sequence[int]) -> bool:
    return bool(find_all(tuple(p), tuple(text)))


def choose_left(s4: int, s5: int, s6: int, letter: int, exponent: int, x_first: int) -> tuple[tuple[int, ...], tuple[int, ...], str]:
    """``(u, v, case)`` for the join ``q' u | v x``, where ``letter^exponent``
    is the run of the ambient relator next to ``x`` on that side."""
    power = (letter,) * exponent
    if s4 == s5:
        v = power if letter not in (s4, -s4) else ()
        return (s4,), v, "1"
    if s5 == s6:
        v = power if letter not in (s5, -s5) else ()
        return (s4, s5), v, "2"
    if letter not in (-s4, s5):
        return (s4,), power, "3a"
    if letter not in (-s5, s6):
        return (s4, s5), power, "3a"
    # only letter == s6 == s4^-1 is left; the first letter of x is then
    # neither s6 nor s4, and v must be empty
    u = (s4,) if x_first == -s5 else (s4, s5)
    return u, (), "3b"


def choose_right(s3: int, s2: int, s1: int, letter: int, exponent: int, x_last: int) -> tuple[tuple[int, ...], tuple[int, ...], str]:
    """Mirror image of :func:`choose_left` for the join ``x w | z q'``."""
    u, v, case = choose_left(s3, s2, s1, letter, exponent, x_last)
    return tuple(reversed(u)), tuple(reversed(v)), case


@dataclass(frozen=True)
class SpliceResult:
    word: Word
    choices: tuple[dict, ...]
    postconditions: dict
    truncation: float
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(self.postconditions.values())


def _is_factor(p: Word, S: SymmetrizedSet) -> bool:
    return any(h.length == len(p) for h in factor_hits(p, S))


def splice_segments(ctx: SurgeryContext, S: SymmetrizedSet, check_core: bool = True) -> SpliceResult:
    """Emit ``w = y_1 q_2 y_2 ... q_m y_m`` with ``y_i = v_i x_i w_i`` and
    ``q_i = z_{i-1} q' u_i`` following the case table."""
    bad = ctx.violations()
    if bad:
        raise RayError("surgery preconditions fail: " + "; ".join(bad))
    q = ctx.q.letters
    s1, s2, s3 = q[0], q[1], q[2]
    s4, s5, s6 = q[-3], q[-2], q[-1]
    core = ctx.q_core
    if check_core and S.prefix_count(core) >= 2:
        raise RayError("q' is a piece of the truncated set")
    choices = []
    ys, qs = [], []
    for t, seg in enumerate(ctx.segments):
        u, v, lcase = choose_left(s4, s5, s6, seg.b, seg.l, seg.x.letters[0])
        z, w, rcase = choose_right(s3, s2, s1, seg.a, seg.j, seg.x.letters[-1])
        y = Word(v + seg.x.letters + w)
        ys.append(y)
        choices.append({"segment": t, "u": list(u), "v": list(v), "w": list(w), "z": list(z),
                        "left_case": lcase, "right_case": rcase})
    for t in range(1, len(ys)):
        z_prev = tuple(choices[t - 1]["z"])
        u = tuple(choices[t]["u"])
        qs.append(Word(z_prev + core.letters + u))
    parts: list[int] = []
    for t, y in enumerate(ys):
        if t:
            parts.extend(qs[t - 1].letters)
        parts.extend(y.letters)
    word = Word(tuple(parts))
    post = {
        "1_q_i_factor_of_q": all(_occurs(qi.letters, q) for qi in qs),
        "2_y_i_factor_of_segment": all(_occurs(y.letters, seg.word().letters) for y, seg in zip(ys, ctx.segments)),
        "3_reduced": free_reduce(word) == word,
    }
    ext = True
    for t in range(1, len(ys)):
        qi = qs[t - 1].letters
        if _is_factor(Word(qi + (ys[t].letters[0],)), S) or _is_factor(Word((ys[t - 1].letters[-1],) + qi), S):
            ext = False
    post["4_no_boundary_extension"] = ext
    notes = [CASE3_NOTE] if any("3b" in (c["left_case"], c["right_case"]) for c in choices) else []
    notes.append(f"condition 4 is checked against relators of length <= {S.truncation}")
    return SpliceResult(word, tuple(choices), post, S.truncation, tuple(notes))


# --- IPSC witnesses --------------------------------------------------------


@dataclass(frozen=True)
class IpscWitness:
    i: int
    relator_id: str
    relator_len: int
    inverted: bool
    offset: int
    x: Word
    n_i: int
    strong: bool
    verdict: Verdict
    interior_len: int

    @property
    def inequalities(self) -> dict:
        n, m = self.relator_len, len(self.x)
        out = {
            "relator_len_at_least_n_i": n >= self.n_i,
            "x_at_least_r_over_i": self.i * m >= n,
            "x_below_2r_over_i": self.i * m < 2 * n,
            "pair_condition": self.verdict.passed,
        }
        if self.strong:
            out["interior_at_least_r_over_i"] = self.i * self.interior_len >= n
        return out

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "relator_id": self.relator_id,
            "relator_len": self.relator_len,
            "inverted": self.inverted,
            "offset": self.offset,
            "x_len": len(self.x),
            "interior_len": self.interior_len,
            "n_i": self.n_i,
            "strong": self.strong,
            "pair_condition": self.verdict.label,
            "pair_ratio": str(self.verdict.worst_ratio),
            "inequalities": self.inequalities,
        }


def _min_split(base: Word, n: int, i: int, strong: bool) -> Optional[int]:
    """Shortest proper prefix length meeting the length (or interior) bound."""
    need = -(-n // i)
    if not strong:
        return need if need < n else None
    # a prefix ending on the first letter of syllable t has interior
    # equal to the total length of syllables 1 .. t-1
    runs = [s.exponent for s in syllables(base)]
    inner = 0
    for t in range(2, len(runs)):
        inner += runs[t - 1]
        if inner >= need:
            L = runs[0] + inner + 1
            return L if L < n else None
    return None


def ipsc_witness_search(
    S: SymmetrizedSet,
    f: ViableFunction,
    n_table: Union[Mapping[int, int], Callable[[int], int]],
    K: int,
    i_max: int,
    strong: bool = False,
    all_rotations: bool = False,
) -> Optional[IpscWitness]:
    """First witness in (i, relator, split length) order, or ``None``.

    Each relator contributes its representative and the inverse of it (every
    rotation when ``all_rotations`` is set). Per element only the shortest
    admissible split is tested: longer prefixes have more common factors, so
    the pair condition can only get worse.
    """
    n_of = n_table if callable(n_table) else (lambda i: n_table[i])
    for i in range(K, i_max + 1):
        n_i = n_of(i)
        for j, r in enumerate(S.relators):
            n = len(r)
            if n < n_i:
                continue
            for inverted, cyc in ((False, r), (True, r.inverse())):
                offsets = range(n) if all_rotations else range(1)
                for off in offsets:
                    base = cyc.rotation(off)
                    L = _min_split(base, n, i, strong)
                    if L is None:
                        continue
                    x = base[:L]
                    verdict = pair_condition(x, S, f)
                    if verdict.passed:
                        return IpscWitness(i, S.ids[j], n, inverted, off, x, n_i, strong, verdict, len(interior(x)))
    return None


# --- the a-ray ----------------------------------------------------------------


def a_ray(m: int, letter: int) -> Word:
    if m < 0:
        raise RayError("negative length")
    return Word((letter,) * m)
