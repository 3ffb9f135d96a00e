"""Intersection profiles, the thirds criterion for geodesics, and finite-scale
diagnostics derived from a profile."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .pieces import FactorHit, SymmetrizedSet, factor_hits
from .words import Word, syllables


@dataclass(frozen=True)
class ProfileWitness:
    relator_id: str
    inverted: bool
    length: int
    pos_in_word: int
    offset: int  # start of the factor inside the relator (or its inverse)
    factor: Word


@dataclass(frozen=True)
class ProfilePoint:
    t: int
    rho: int
    witness: Optional[ProfileWitness]


@dataclass(frozen=True)
class IntersectionProfile:
    word_len: int
    truncation: float
    points: tuple[ProfilePoint, ...]
    hits: tuple[ProfileWitness, ...] = field(default=(), repr=False)

    def __call__(self, t: int) -> int:
        """rho(t): the step function through the realized lengths."""
        v = 0
        for p in self.points:
            if p.t > t:
                break
            v = p.rho
        return v

    def as_rows(self) -> list[tuple[int, int, str, int]]:
        rows = []
        for p in self.points:
            w = p.witness
            rows.append((p.t, p.rho, w.relator_id if w else "", w.length if w else 0))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["t", "rho", "witness_relator", "witness_len"])
        out.writerows(self.as_rows())
        return buf.getvalue()


def _witness(S: SymmetrizedSet, w: Word, h: FactorHit) -> ProfileWitness:
    return ProfileWitness(
        S.ids[h.relator], h.inverted, h.length, h.pos_in_word, h.offset,
        w[h.pos_in_word : h.pos_in_word + h.length],
    )


def relator_overlaps(w: Word, S: SymmetrizedSet, max_len: float = math.inf) -> list[ProfileWitness]:
    """Longest common factor of ``w`` with each relator (either orientation)."""
    per: dict[int, FactorHit] = {}
    for h in factor_hits(w, S, max_len):
        cur = per.get(h.relator)
        if cur is None or h.length > cur.length:
            per[h.relator] = h
    return [_witness(S, w, per[j]) for j in sorted(per)]


def intersection_profile(w: Word, S: SymmetrizedSet) -> IntersectionProfile:
    """rho(t) at each realized relator length t, exact over the truncation."""
    if not w.is_reduced():
        raise ValueError("word is not reduced")
    hits = relator_overlaps(w, S) if len(w) else []
    by_id = {h.relator_id: h for h in hits}
    order = sorted(range(len(S)), key=lambda j: (len(S.relators[j]), j))
    points: list[ProfilePoint] = []
    best: Optional[ProfileWitness] = None
    for j in order:
        h = by_id.get(S.ids[j])
        if h is not None and h.length > (best.length if best else 0):
            best = h
        t = len(S.relators[j])
        point = ProfilePoint(t, best.length if best else 0, best)
        if points and points[-1].t == t:
            points[-1] = point
        else:
            points.append(point)
    return IntersectionProfile(len(w), S.truncation, tuple(points), tuple(hits))


CERTIFIED = "CERTIFIED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class GeodesicCertificate:
    verdict: str
    reason: str
    truncation: float
    required_bound: int
    worst_ratio: Fraction  # 3|u| / |r| over the inspected relators; <= 1 passes
    worst: Optional[ProfileWitness]
    worst_relator_len: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self, alphabet=None) -> dict:
        w = self.worst
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "truncation": None if self.truncation == math.inf else self.truncation,
            "required_bound": self.required_bound,
            "worst_ratio_num": self.worst_ratio.numerator,
            "worst_ratio_den": self.worst_ratio.denominator,
            "worst_relator": w.relator_id if w else None,
            "worst_relator_len": self.worst_relator_len,
            "worst_factor": (alphabet.format(w.factor) if alphabet else list(w.factor.letters)) if w else None,
        }


def geodesic_criterion(w: Word, S: SymmetrizedSet) -> GeodesicCertificate:
    """Certify ``w`` as a geodesic label when every common factor ``u`` with a
    relator ``r`` has ``3|u| <= |r|``.

    Relators with ``|r| >= 3|w|`` satisfy this automatically and are never
    inspected. Everything shorter must be present in ``S``: the set's
    ``omitted_min`` has to be at least ``3|w|``.
    """
    if not w.is_reduced():
        raise ValueError("word is not reduced")
    need = 3 * len(w)
    if not S.covers_below(need):
        return GeodesicCertificate(
            UNKNOWN,
            f"truncation insufficient: relators of length {S.omitted_min} < {need} are not included",
            S.truncation, need, Fraction(0), None,
        )
    lens = {rid: len(r) for rid, r in zip(S.ids, S.relators)}
    worst, ratio, worst_len = None, Fraction(0), 0
    if len(w):
        for h in relator_overlaps(w, S, max_len=need - 1):
            n = lens[h.relator_id]
            q = Fraction(3 * h.length, n)
            if worst is None or q > ratio:
                worst, ratio, worst_len = h, q, n
    if ratio > 1:
        return GeodesicCertificate(
            UNKNOWN,
            f"common factor of length {worst.length} with {worst.relator_id} exceeds a third of {worst_len}",
            S.truncation, need, ratio, worst, worst_len,
        )
    return GeodesicCertificate(CERTIFIED, "all common factors are at most a third", S.truncation,
                               need, ratio, worst, worst_len)


@dataclass(frozen=True)
class Band:
    lo: int
    hi: int  # exclusive
    max_ratio: Fraction
    at_t: int


def sublinearity_diagnostic(P: IntersectionProfile, thresholds: Optional[Sequence[int]] = None) -> dict:
    """Max rho(t)/t per dyadic band (or per the given band edges), plus the
    running maximum of the ratio from the top down. Finite-scale only."""
    pts = [p for p in P.points if p.t > 0]
    if thresholds is None:
        edges = sorted({1 << max(p.t.bit_length() - 1, 0) for p in pts})
        edges.append(edges[-1] * 2 if edges else 1)
    else:
        edges = sorted(set(thresholds))
    bands = []
    for lo, hi in zip(edges, edges[1:]):
        inside = [p for p in pts if lo <= p.t < hi]
        if not inside:
            continue
        top = max(inside, key=lambda p: (Fraction(p.rho, p.t), -p.t))
        bands.append(Band(lo, hi, Fraction(top.rho, top.t), top.t))
    envelope = []
    run = Fraction(0)
    for b in reversed(bands):
        run = max(run, b.max_ratio)
        envelope.append(run)
    envelope.reverse()
    nonincreasing = all(x >= y for x, y in zip(envelope, envelope[1:]))
    return {
        "kind": "finite-scale diagnostic",
        "bands": bands,
        "tail_envelope": envelope,
        "band_maxima_nonincreasing": all(a.max_ratio >= b.max_ratio for a, b in zip(bands, bands[1:])),
        "envelope_nonincreasing": nonincreasing,
        "truncation": P.truncation,
    }


def boundedness_diagnostic(P: IntersectionProfile) -> dict:
    """Largest rho value and whether rho still increases inside the top
    dyadic band of realized lengths."""
    if not P.points:
        return {"max_rho": 0, "at_t": None, "growth": False, "truncation": P.truncation}
    top = max(P.points, key=lambda p: (p.rho, -p.t))
    t_max = P.points[-1].t
    lo = 1 << max(t_max.bit_length() - 1, 0)
    before = P(lo - 1)
    return {
        "max_rho": top.rho,
        "at_t": top.t,
        "growth": P(t_max) > before,
        "truncation": P.truncation,
    }


def generator_power_profile(s: int, S: SymmetrizedSet) -> list[tuple[int, int]]:
    """``(t, max k)`` with ``s^k`` a factor of a closure element of length at most t."""
    per = []
    for j, r in enumerate(S.relators):
        k = 0
        if s in S.letters:
            for seq in S.strings(j):
                runs = syllables(Word(seq))
                m = max((x.exponent for x in runs if x.letter == s), default=0)
                # a run may wrap around the end of the cyclic word
                if len(runs) > 1 and runs[0].letter == s and runs[-1].letter == s:
                    m = max(m, runs[0].exponent + runs[-1].exponent)
                elif len(runs) == 1 and runs[0].letter == s:
                    m = len(seq)
                k = max(k, m)
        per.append((len(r), k))
    per.sort()
    out: list[tuple[int, int]] = []
    best = 0
    for t, k in per:
        best = max(best, k)
        if out and out[-1][0] == t:
            out[-1] = (t, best)
        else:
            out.append((t, best))
    return out
