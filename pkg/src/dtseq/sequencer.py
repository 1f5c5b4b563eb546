"""l-good sequencings of a DTS.

A sequencing ``s`` lists the points left to right (position ``i`` holds
``s[i]``).  It is l-good when no triple ``(a, b, c)`` of the design has
``pos(a) < pos(b) < pos(c)`` with ``pos(c) - pos(a) <= l - 1``.  Any other
relative order of the three points is fine.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Iterable, NamedTuple, Optional

from .design import Dts, Permutation, Sequencing, TransitiveTriple, validate_dts
from .errors import BadPermutation, BadWindow, InvalidInput


class Verdict(NamedTuple):
    good: bool
    violation: Optional[TransitiveTriple] = None

    def __bool__(self) -> bool:
        return self.good


@dataclass(frozen=True)
class SequencingReport:
    design_id: str
    ell: int
    least: Optional[Sequencing]
    count: int
    max_ell: int

    @property
    def least_digits(self) -> str:
        return self.least.digits() if self.least is not None else "-"


def _check_window(v: int, ell: int) -> None:
    if not 1 <= ell <= v:
        raise BadWindow(f"window length {ell} outside 1..{v}")


def is_ell_good(d: Dts, s: Iterable[int], ell: int) -> Verdict:
    s = s if isinstance(s, Permutation) else Permutation(s)
    if len(s) != d.v:
        raise BadPermutation(f"sequencing of length {len(s)} for a design on {d.v} points")
    _check_window(d.v, ell)
    pos = s.inverse()
    for t in d.triples:
        a, b, c = pos[t[0]], pos[t[1]], pos[t[2]]
        if a < b < c and c - a <= ell - 1:
            return Verdict(False, t)
    return Verdict(True)


def _search(d: Dts, ell: int, first_only: bool) -> tuple[Optional[tuple], int]:
    """Depth-first scan of prefixes in lexicographic order.

    A violation is complete the moment its sink is placed, so each placement
    only checks triples ending at the new point.  Returns the first good
    sequencing reached and the number of good sequencings (1 when
    ``first_only`` stops early).
    """
    v = d.v
    by_sink: list[list[tuple[int, int]]] = [[] for _ in range(v)]
    for a, b, c in d.triples:
        by_sink[c].append((a, b))
    span = ell - 1
    pos = [-1] * v
    seq: list[int] = []
    first: list[tuple] = []

    def extend(k: int) -> int:
        if k == v:
            if not first:
                first.append(tuple(seq))
            return 1
        total = 0
        for p in range(v):
            if pos[p] >= 0:
                continue
            bad = False
            for a, b in by_sink[p]:
                pa = pos[a]
                if pa >= 0 and k - pa <= span:
                    pb = pos[b]
                    if pb > pa:
                        bad = True
                        break
            if bad:
                continue
            pos[p] = k
            seq.append(p)
            total += extend(k + 1)
            seq.pop()
            pos[p] = -1
            if first_only and first:
                return total
        return total

    count = extend(0)
    return (first[0] if first else None), count


def least_good_sequencing(d: Dts, ell: int) -> Optional[Sequencing]:
    _check_window(d.v, ell)
    least, _ = _search(d, ell, first_only=True)
    return None if least is None else Permutation(least)


def count_good_sequencings(d: Dts, ell: int) -> int:
    _check_window(d.v, ell)
    return _search(d, ell, first_only=False)[1]


def least_and_count(d: Dts, ell: int) -> tuple[Optional[Sequencing], int]:
    _check_window(d.v, ell)
    least, count = _search(d, ell, first_only=False)
    return (None if least is None else Permutation(least)), count


def count_good_brute(d: Dts, ell: int) -> int:
    """Reference count: test every one of the v! permutations."""
    _check_window(d.v, ell)
    return sum(1 for s in itertools.permutations(range(d.v)) if is_ell_good(d, s, ell))


def least_good_brute(d: Dts, ell: int) -> Optional[Sequencing]:
    _check_window(d.v, ell)
    for s in itertools.permutations(range(d.v)):
        if is_ell_good(d, s, ell):
            return Permutation(s)
    return None


def max_good_ell(d: Dts) -> tuple[int, Sequencing]:
    if not validate_dts(d).valid:
        raise InvalidInput(f"not a DTS({d.v})")
    for ell in range(d.v, 0, -1):
        least = least_good_sequencing(d, ell)
        if least is not None:
            return ell, least
    raise AssertionError("a window of length <= 2 is always good")


def sequencing_report(design_id: str, d: Dts, ell: Optional[int] = None) -> SequencingReport:
    """Least sequencing and exact count at ``ell``, or at the maximum good ``ell`` if None."""
    if not validate_dts(d).valid:
        raise InvalidInput(f"{design_id}: not a DTS({d.v})")
    if ell is None:
        for ell in range(d.v, 0, -1):
            least, count = least_and_count(d, ell)
            if count:
                return SequencingReport(design_id, ell, least, count, ell)
        raise AssertionError("a window of length <= 2 is always good")
    least, count = least_and_count(d, ell)
    top = max_good_ell(d)[0]
    return SequencingReport(design_id, ell, least, count, top)


def _report_job(args):
    return sequencing_report(*args)


def sequence_all(items: Iterable[tuple[str, Dts]], ell: Optional[int] = None,
                 workers: int = 1) -> list[SequencingReport]:
    """Reports for ``(design_id, dts)`` pairs, in input order regardless of ``workers``."""
    jobs = [(i, d, ell) for i, d in items]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_report_job, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    return [_report_job(j) for j in jobs]


def all_good_count(v: int) -> int:
    return factorial(v)
