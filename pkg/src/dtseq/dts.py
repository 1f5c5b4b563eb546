"""Directing TTS blocks into DTS and isomorph rejection by orbit-minimality.

Isomorphism classes of DTS(v) are found per underlying TTS: two DTS with
non-isomorphic underlying TTS are never isomorphic, and two directings of the
same TTS are isomorphic exactly when an automorphism of the TTS maps one onto
the other.  So we keep the directings that are least in their orbit under
Aut(TTS).  ``full_isomorphism_check_dts`` is the brute-force oracle used to
check this reduction.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .design import (
    Dts,
    Permutation,
    TransitiveTriple,
    Tts,
    apply_permutation,
    underlying_tts,
    validate_dts,
    validate_tts,
)
from .errors import GroupMismatch, InvalidInput, OrderMismatch
from .tts import AutGroup, aligned_representatives, all_permutations, automorphism_group, check_order


@dataclass
class DtsCatalog:
    """Orbit-minimal DTS grouped by underlying TTS.

    ``per_tts`` holds ``(tts_id, tts, designs)`` in a fixed order; design ids
    are ``"<tts_id>/<1-based index>"``.
    """

    v: int
    per_tts: list = field(default_factory=list)

    @property
    def totals(self) -> dict:
        return {tts_id: len(designs) for tts_id, _, designs in self.per_tts}

    @property
    def total(self) -> int:
        return sum(self.totals.values())

    def items(self) -> Iterable[tuple[str, Dts]]:
        for tts_id, _, designs in self.per_tts:
            for i, d in enumerate(designs, 1):
                yield f"{tts_id}/{i}", d

    def designs(self) -> list[Dts]:
        return [d for _, d in self.items()]

    def tts_of(self, tts_id: str) -> Tts:
        for tid, t, _ in self.per_tts:
            if tid == tts_id:
                return t
        raise KeyError(tts_id)


# Ordered triples on v points are numbered in lexicographic order, so a sorted
# tuple of indices orders exactly like the sorted triple list it encodes.

@lru_cache(maxsize=None)
def _triple_index(v: int) -> tuple[tuple, dict]:
    triples = tuple(itertools.permutations(range(v), 3))
    return triples, {t: i for i, t in enumerate(triples)}


def _encode(d: Dts) -> tuple[int, ...]:
    _, index = _triple_index(d.v)
    return tuple(index[tuple(t)] for t in d.triples)


def _decode(v: int, code: Sequence[int]) -> Dts:
    triples, _ = _triple_index(v)
    return Dts(v, tuple(TransitiveTriple(*triples[i]) for i in code))


def _action_tables(v: int, perms: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    triples, index = _triple_index(v)
    return [tuple(index[(g[a], g[b], g[c])] for a, b, c in triples) for g in perms]


def _directings(blocks: Sequence[Sequence[int]]):
    """Yield every choice of orientation per block that covers each arc once."""
    used: set = set()
    chosen: list = []
    n = len(blocks)

    def extend(k):
        if k == n:
            yield tuple(chosen)
            return
        for a, b, c in itertools.permutations(blocks[k]):
            arcs = ((a, b), (b, c), (a, c))
            if arcs[0] in used or arcs[1] in used or arcs[2] in used:
                continue
            used.update(arcs)
            chosen.append((a, b, c))
            yield from extend(k + 1)
            chosen.pop()
            used.difference_update(arcs)

    yield from extend(0)


def _direct_codes(t: Tts) -> list[tuple[int, ...]]:
    _, index = _triple_index(t.v)
    codes = {tuple(sorted(index[x] for x in tri)) for tri in _directings(t.blocks)}
    return sorted(codes)


def direct_all(t: Tts) -> list[Dts]:
    """All distinct DTS whose underlying TTS is ``t``, ascending.

    Swapping the orientations of the two copies of a repeated block gives the
    same triple set; those collapse to a single DTS.
    """
    if not validate_tts(t).valid:
        raise InvalidInput(f"not a TTS({t.v})")
    return [_decode(t.v, c) for c in _direct_codes(t)]


def direct_completions_brute(t: Tts, fixed: Sequence[TransitiveTriple] = ()) -> list[Dts]:
    """Brute-force directing oracle.

    Tries all 6^k orientations of the blocks of ``t`` not accounted for by
    ``fixed`` and keeps those that validate.  With ``fixed`` empty this is the
    full 6^b scan, which is only practical for v=4.
    """
    free = list(t.blocks)
    for tri in fixed:
        free.remove(tuple(sorted(tri)))
    found = set()
    for combo in itertools.product(*(list(itertools.permutations(b)) for b in free)):
        d = Dts(t.v, tuple(fixed) + combo)
        if validate_dts(d).valid:
            found.add(d.triples)
    return [Dts(t.v, tr) for tr in sorted(found)]


def is_orbit_minimal(d: Dts, group: AutGroup) -> bool:
    """True iff no element of ``group`` maps ``d`` to a smaller sorted triple list."""
    t = underlying_tts(d)
    for h in group:
        if apply_permutation(t, h) != t:
            raise GroupMismatch(f"{h!r} does not stabilize the underlying TTS")
    for h in group:
        if apply_permutation(d, h).triples < d.triples:
            return False
    return True


def _orbit_minimal_codes(codes: list, tables: list) -> list:
    out = []
    for code in codes:
        for tbl in tables:
            if tuple(sorted([tbl[i] for i in code])) < code:
                break
        else:
            out.append(code)
    return out


def orbit_minimal_directings(t: Tts, group: Optional[AutGroup] = None) -> list[Dts]:
    """Orbit-minimal members of ``direct_all(t)`` under Aut(t), ascending."""
    group = group or automorphism_group(t)
    ident = tuple(range(t.v))
    tables = _action_tables(t.v, [g for g in group if tuple(g) != ident])
    return [_decode(t.v, c) for c in _orbit_minimal_codes(_direct_codes(t), tables)]


def _enumerate_one(item):
    tts_id, t = item
    return tts_id, t, orbit_minimal_directings(t)


def enumerate_dts(v: int, workers: int = 1) -> DtsCatalog:
    """Nonisomorphic DTS(v), grouped by underlying TTS in reference order.

    TTS classes are generated from scratch and then relabeled onto the
    reference listings so per-TTS results line up with them.
    """
    check_order(v)
    systems = aligned_representatives(v)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_one, systems))
    else:
        parts = [_enumerate_one(s) for s in systems]
    return DtsCatalog(v, parts)


def find_isomorphism_dts(a: Dts, b: Dts) -> Optional[Permutation]:
    """Least ``g`` with ``apply_permutation(a, g) == b``, by scanning all of S_v."""
    if a.v != b.v:
        raise OrderMismatch(f"v={a.v} vs v={b.v}")
    if len(a.triples) != len(b.triples):
        return None
    target = set(b.triples)
    src = a.triples
    for g in all_permutations(a.v):
        for x, y, z in src:
            if (g[x], g[y], g[z]) not in target:
                break
        else:
            return g
    return None


def full_isomorphism_check_dts(a: Dts, b: Dts) -> bool:
    return find_isomorphism_dts(a, b) is not None


def dts_automorphism_group(d: Dts) -> AutGroup:
    """Permutations fixing the triple set of ``d``, found by brute force."""
    if not validate_dts(d).valid:
        raise InvalidInput(f"not a DTS({d.v})")
    target = set(d.triples)
    elems = []
    for g in all_permutations(d.v):
        for x, y, z in d.triples:
            if (g[x], g[y], g[z]) not in target:
                break
        else:
            elems.append(g)
    return AutGroup(d.v, tuple(elems))


def stabilizer(d: Dts, group: AutGroup) -> list[Permutation]:
    return [h for h in group if apply_permutation(d, h) == d]


def orbit_min(d: Dts, group: AutGroup) -> Dts:
    return min((apply_permutation(d, h) for h in group), key=lambda x: x.triples)
