"""Oracle-equivalence and invariant checks behind ``dtseq selfcheck``.

Samples are taken by fixed stride so repeated runs check the same designs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator

from .catalog import format_catalog, parse_catalog
from .design import TransitiveTriple, arcs_of, validate_dts, validate_tts
from .dts import (
    direct_all,
    direct_completions_brute,
    enumerate_dts,
    full_isomorphism_check_dts,
    stabilizer,
)
from .sequencer import count_good_brute, count_good_sequencings, least_good_brute, least_good_sequencing
from .tts import automorphism_group, enumerate_tts, orbit_size


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f" ({self.detail})" if self.detail else "")


def _stride(items: list, n: int) -> list:
    if len(items) <= n:
        return list(items)
    step = len(items) / n
    return [items[int(i * step)] for i in range(n)]


def check_tts(v: int) -> CheckResult:
    reps = enumerate_tts(v)
    for t in reps:
        g = automorphism_group(t)
        if not validate_tts(t).valid or g.order * orbit_size(t) != factorial(v):
            return CheckResult(f"tts v={v}", False, "validity or orbit-stabilizer failed")
    return CheckResult(f"tts v={v}", True, f"{len(reps)} classes")


def check_directing_oracle() -> CheckResult:
    t4 = enumerate_tts(4)[0]
    if direct_all(t4) != direct_completions_brute(t4):
        return CheckResult("directing oracle", False, "v=4 full scan disagrees")
    for t in enumerate_tts(7):
        sample = direct_all(t)
        for d in _stride(sample, 3):
            fixed = d.triples[:9]
            expect = [x for x in sample if set(fixed) <= set(x.triples)]
            if direct_completions_brute(t, fixed) != expect:
                return CheckResult("directing oracle", False, "v=7 partial scan disagrees")
    return CheckResult("directing oracle", True, "v=4 full, v=7 partial")


def check_catalog(v: int, sample: int) -> Iterator[CheckResult]:
    cat = enumerate_dts(v)
    bad = [i for i, d in cat.items() if not validate_dts(d).valid]
    yield CheckResult(f"dts v={v} pair coverage", not bad, f"{cat.total} classes {cat.totals}, {len(bad)} invalid")

    ok = True
    for _, t, designs in cat.per_tts:
        g = automorphism_group(t)
        if len(direct_all(t)) != sum(g.order // len(stabilizer(d, g)) for d in designs):
            ok = False
    yield CheckResult(f"dts v={v} orbit-stabilizer", ok)

    ok = parse_catalog(format_catalog(cat)) == cat
    yield CheckResult(f"dts v={v} catalog round trip", ok)

    designs = [d for _, d in cat.items()]
    checked = _stride(designs, sample) if v == 7 else designs
    ells = (v - 1, v)
    bad = 0
    for d in checked:
        counts = [count_good_sequencings(d, ell) for ell in range(1, v + 1)]
        if counts[1] != factorial(v) or any(a < b for a, b in zip(counts, counts[1:])):
            bad += 1
        for ell in ells:
            if counts[ell - 1] != count_good_brute(d, ell):
                bad += 1
            if least_good_sequencing(d, ell) != least_good_brute(d, ell):
                bad += 1
    yield CheckResult(f"sequencing oracle v={v}", bad == 0, f"{len(checked)} designs, {bad} failures")

    pairs = 0
    bad = 0
    for _, _, ds in cat.per_tts:
        chosen = _stride(ds, 8) if v == 7 else ds
        for i, a in enumerate(chosen):
            for b in chosen[i + 1:]:
                pairs += 1
                bad += full_isomorphism_check_dts(a, b)
    yield CheckResult(f"isomorph rejection v={v}", bad == 0, f"{pairs} pairs, {bad} isomorphic")


def check_reversal_law() -> CheckResult:
    for a, b, c in ((0, 1, 2), (3, 5, 4)):
        x, y = arcs_of(TransitiveTriple(a, b, c)), arcs_of(TransitiveTriple(c, b, a))
        if x & y or len(x | y) != 6:
            return CheckResult("reversal law", False)
    for t in enumerate_tts(7):
        repeated = {b for b, n in t.multiplicities().items() if n == 2}
        for d in direct_all(t):
            for blk in repeated:
                pair = [tr for tr in d.triples if tuple(sorted(tr)) == blk]
                if len(pair) != 2 or pair[0] != tuple(reversed(pair[1])):
                    return CheckResult("reversal law", False, f"repeated block {blk}")
    return CheckResult("reversal law", True)


def run_all(sample: int = 50) -> list[CheckResult]:
    results = [check_tts(v) for v in (4, 6, 7)]
    results.append(check_directing_oracle())
    results.append(check_reversal_law())
    for v in (4, 6, 7):
        results.extend(check_catalog(v, sample))
    return results
