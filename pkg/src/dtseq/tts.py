"""Twofold triple systems: generation, canonical forms and automorphism groups.

Everything here works by brute force over the symmetric group, which has at
most 5040 elements for the orders we support.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator, Optional

from .design import Permutation, Tts, apply_permutation, parse_design, validate_tts
from .errors import InvalidInput, OrderMismatch, UnsupportedOrder

SUPPORTED_ORDERS = (4, 6, 7)


def check_order(v: int) -> None:
    if v not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"v={v} not supported (expected one of {SUPPORTED_ORDERS})")


@lru_cache(maxsize=None)
def all_permutations(v: int) -> tuple[Permutation, ...]:
    return tuple(tuple.__new__(Permutation, p) for p in itertools.permutations(range(v)))


def relabel_blocks(blocks, g) -> tuple:
    """Sorted block tuple after relabeling by ``g``; the fast path behind apply_permutation."""
    return tuple(sorted(tuple(sorted((g[a], g[b], g[c]))) for a, b, c in blocks))


@dataclass(frozen=True)
class AutGroup:
    v: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self._set

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(tuple(g) for g in self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def is_group(self) -> bool:
        """Identity present, closed under composition and inverse."""
        if tuple(range(self.v)) not in self._set:
            return False
        for g in self.elements:
            if tuple(g.inverse()) not in self._set:
                return False
            for h in self.elements:
                if tuple(g * h) not in self._set:
                    return False
        return True


@dataclass(frozen=True, order=True)
class CanonicalForm:
    v: int
    encoding: tuple


def _labeled_tts(v: int) -> Iterator[tuple]:
    """Every labeled TTS(v) exactly once, as a sorted block tuple.

    The next block in sorted order always starts with the lexicographically
    first pair that is still uncovered, so we only branch on its third point.
    """
    pairs = list(itertools.combinations(range(v), 2))
    cap = {p: 2 for p in pairs}
    chosen: list[tuple] = []
    total = v * (v - 1) // 3

    def first_open():
        for p in pairs:
            if cap[p]:
                return p
        return None

    def extend():
        if len(chosen) == total:
            yield tuple(chosen)
            return
        x, y = first_open()
        last = chosen[-1] if chosen else None
        for z in range(y + 1, v):
            blk = (x, y, z)
            if last is not None and blk < last:
                continue
            if not (cap[(x, z)] and cap[(y, z)]):
                continue
            for p in ((x, y), (x, z), (y, z)):
                cap[p] -= 1
            chosen.append(blk)
            yield from extend()
            chosen.pop()
            for p in ((x, y), (x, z), (y, z)):
                cap[p] += 1

    yield from extend()


def count_labeled_tts(v: int) -> int:
    return sum(1 for _ in _labeled_tts(v))


def enumerate_tts(v: int) -> list[Tts]:
    """One canonical representative per isomorphism class, ascending by encoding."""
    check_order(v)
    perms = all_permutations(v)
    covered: set = set()
    reps = []
    for blocks in _labeled_tts(v):
        if blocks in covered:
            continue
        orbit = {relabel_blocks(blocks, g) for g in perms}
        covered |= orbit
        reps.append(min(orbit))
    return [Tts(v, r) for r in sorted(reps)]


def canonical_form_tts(t: Tts) -> CanonicalForm:
    blocks = tuple(tuple(b) for b in t.blocks)
    return CanonicalForm(t.v, min(relabel_blocks(blocks, g) for g in all_permutations(t.v)))


def automorphism_group(t: Tts) -> AutGroup:
    if not validate_tts(t).valid:
        raise InvalidInput(f"not a TTS({t.v})")
    blocks = tuple(tuple(b) for b in t.blocks)
    elems = tuple(g for g in all_permutations(t.v) if relabel_blocks(blocks, g) == blocks)
    return AutGroup(t.v, elems)


def find_isomorphism_tts(a: Tts, b: Tts) -> Optional[Permutation]:
    """Least ``g`` (as an image tuple) with ``apply_permutation(a, g) == b``, or None."""
    if a.v != b.v:
        raise OrderMismatch(f"v={a.v} vs v={b.v}")
    if sorted(a.multiplicities().values()) != sorted(b.multiplicities().values()):
        return None
    src = tuple(tuple(x) for x in a.blocks)
    dst = tuple(tuple(x) for x in b.blocks)
    for g in all_permutations(a.v):
        if relabel_blocks(src, g) == dst:
            return g
    return None


def is_isomorphic_tts(a: Tts, b: Tts) -> bool:
    if a.v != b.v:
        raise OrderMismatch(f"v={a.v} vs v={b.v}")
    return canonical_form_tts(a) == canonical_form_tts(b)


def orbit_size(t: Tts) -> int:
    """Number of distinct relabelings of ``t``."""
    blocks = tuple(tuple(b) for b in t.blocks)
    return len({relabel_blocks(blocks, g) for g in all_permutations(t.v)})


@dataclass(frozen=True)
class ReferenceTts:
    """A published TTS listing with its stated group data."""

    tts_id: str
    tts: Tts
    aut_order: int
    generators: tuple[Permutation, ...]


def load_reference_tts(v: int | None = None) -> list[ReferenceTts]:
    text = resources.files("dtseq.data").joinpath("tts_fixtures.txt").read_text()
    out = []
    for chunk in text.split("# tts ")[1:]:
        lines = chunk.splitlines()
        tts_id = lines[0].strip()
        meta = {}
        body = []
        for ln in lines[1:]:
            if ln.startswith("# "):
                key, _, val = ln[2:].partition(" ")
                meta[key] = val
            else:
                body.append(ln)
        t = parse_design("\n".join(body))
        if v is not None and t.v != v:
            continue
        gens = tuple(Permutation.from_cycles(t.v, g) for g in meta["aut-generators"].split())
        out.append(ReferenceTts(tts_id, t, int(meta["aut-order"]), gens))
    return out


def aligned_representatives(v: int) -> list[tuple[str, Tts]]:
    """Generated classes relabeled onto the reference listings, in reference order.

    Every reference system must match exactly one generated class and every
    generated class must be matched, otherwise InvalidInput is raised.
    """
    reps = enumerate_tts(v)
    forms = [canonical_form_tts(r) for r in reps]
    out = []
    used = set()
    for ref in load_reference_tts(v):
        hits = [i for i, f in enumerate(forms) if f == canonical_form_tts(ref.tts)]
        if len(hits) != 1 or hits[0] in used:
            raise InvalidInput(f"reference {ref.tts_id} does not match a unique generated class")
        used.add(hits[0])
        g = find_isomorphism_tts(reps[hits[0]], ref.tts)
        out.append((ref.tts_id, apply_permutation(reps[hits[0]], g)))
    if len(used) != len(reps):
        raise InvalidInput(f"{len(reps) - len(used)} generated TTS({v}) classes have no reference listing")
    return out
