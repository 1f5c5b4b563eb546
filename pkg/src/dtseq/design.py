"""Points, transitive triples, blocks, TTS/DTS value types and the text grammar.

Points are the integers ``0..v-1``.  A transitive triple ``(a, b, c)`` covers
the arcs ``a->b``, ``b->c`` and ``a->c``.  Designs store their triples/blocks
sorted, so two equal designs compare equal as plain tuples and the tuple
order is the order used for orbit-minimality.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import BadPermutation, DuplicatePoint, InvalidInput, OutOfRange, ParseError


class TransitiveTriple(NamedTuple):
    source: int
    middle: int
    sink: int

    def arcs(self) -> frozenset[tuple[int, int]]:
        return arcs_of(self)

    def __str__(self) -> str:
        return f"({self.source},{self.middle},{self.sink})"


class Block(NamedTuple):
    """An unordered 3-subset, members kept ascending."""

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, *points: int) -> "Block":
        if len(points) == 1:
            points = tuple(points[0])
        if len(points) != 3 or len(set(points)) != 3:
            raise DuplicatePoint(f"block needs 3 distinct points, got {points}")
        return cls(*sorted(points))

    def __str__(self) -> str:
        return f"{{{self.a},{self.b},{self.c}}}"


class Permutation(tuple):
    """A bijection of ``0..v-1`` stored as its image tuple, ``p[i] = g(i)``.

    ``h * g`` is the composition ``h o g`` (apply ``g`` first).
    """

    def __new__(cls, image: Iterable[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise BadPermutation(f"not a bijection on 0..{len(image) - 1}: {image}")
        return super().__new__(cls, image)

    @classmethod
    def identity(cls, v: int) -> "Permutation":
        return cls(range(v))

    @classmethod
    def from_cycles(cls, v: int, cycles: str | Sequence[Sequence[int]]) -> "Permutation":
        """Build from cycle notation, e.g. ``"(0,1)(2,3)"`` or ``[[0, 1], [2, 3]]``."""
        if isinstance(cycles, str):
            cycles = [[int(x) for x in c.split(",")] for c in re.findall(r"\(([\d,\s]+)\)", cycles)]
        image = list(range(v))
        seen = set()
        for cyc in cycles:
            for i, p in enumerate(cyc):
                if p in seen or not 0 <= p < v:
                    raise BadPermutation(f"bad cycle {cyc} for v={v}")
                seen.add(p)
                image[p] = cyc[(i + 1) % len(cyc)]
        return cls(image)

    @classmethod
    def from_digits(cls, digits: str) -> "Permutation":
        return cls(int(ch) for ch in digits)

    @property
    def v(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        if len(other) != len(self):
            raise BadPermutation("composing permutations of different degree")
        return tuple.__new__(Permutation, (self[x] for x in other))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, p in enumerate(self):
            inv[p] = i
        return tuple.__new__(Permutation, inv)

    def digits(self) -> str:
        return "".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Permutation({self.digits()})"


# A sequencing is a permutation read left to right: position i holds point s[i].
Sequencing = Permutation


@dataclass(frozen=True)
class Tts:
    v: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(Block.of(b) for b in self.blocks)))

    def multiplicities(self) -> Counter:
        return Counter(self.blocks)

    def __str__(self) -> str:
        return format_design(self)


@dataclass(frozen=True, order=True)
class Dts:
    v: int
    triples: tuple[TransitiveTriple, ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(sorted(TransitiveTriple(*t) for t in self.triples)))

    def __str__(self) -> str:
        return format_design(self)


Design = Union[Dts, Tts]


@dataclass
class ValidationReport:
    """Per-pair coverage counts plus the verdict; invalidity is data, not an error."""

    v: int
    size: int
    expected_size: int
    coverage: dict
    required: int
    out_of_range: list = field(default_factory=list)

    @property
    def bad_pairs(self) -> dict:
        return {p: n for p, n in self.coverage.items() if n != self.required}

    @property
    def valid(self) -> bool:
        return self.size == self.expected_size and not self.bad_pairs and not self.out_of_range

    def __bool__(self) -> bool:
        return self.valid

    def summary(self) -> str:
        if self.valid:
            return "valid"
        parts = []
        if self.size != self.expected_size:
            parts.append(f"{self.size} members, expected {self.expected_size}")
        if self.out_of_range:
            parts.append(f"labels out of range: {self.out_of_range}")
        for p, n in sorted(self.bad_pairs.items()):
            parts.append(f"{p} covered {n}x")
        return "; ".join(parts)


def make_transitive_triple(a: int, b: int, c: int, v: int | None = None) -> TransitiveTriple:
    if len({a, b, c}) != 3:
        raise DuplicatePoint(f"triple ({a},{b},{c}) repeats a point")
    for p in (a, b, c):
        if p < 0 or (v is not None and p >= v):
            raise OutOfRange(f"point {p} outside 0..{'' if v is None else v - 1}")
    return TransitiveTriple(a, b, c)


def arcs_of(t: TransitiveTriple) -> frozenset[tuple[int, int]]:
    a, b, c = t
    return frozenset(((a, b), (b, c), (a, c)))


def design_size(v: int) -> int:
    return v * (v - 1) // 3


def validate_dts(d: Dts) -> ValidationReport:
    v = d.v
    coverage = {(a, b): 0 for a in range(v) for b in range(v) if a != b}
    bad = []
    for t in d.triples:
        for arc in arcs_of(t):
            if arc in coverage:
                coverage[arc] += 1
            else:
                bad.append(arc)
    return ValidationReport(v, len(d.triples), design_size(v), coverage, 1, bad)


def validate_tts(t: Tts) -> ValidationReport:
    v = t.v
    coverage = {p: 0 for p in itertools.combinations(range(v), 2)}
    bad = []
    for blk in t.blocks:
        for pair in itertools.combinations(blk, 2):
            if pair in coverage:
                coverage[pair] += 1
            else:
                bad.append(pair)
    return ValidationReport(v, len(t.blocks), design_size(v), coverage, 2, bad)


def underlying_tts(d: Dts) -> Tts:
    report = validate_dts(d)
    if not report.valid:
        raise InvalidInput(f"not a DTS({d.v}): {report.summary()}")
    return Tts(d.v, tuple(Block.of(t) for t in d.triples))


def _check_perm(v: int, g: Sequence[int]) -> Permutation:
    g = g if isinstance(g, Permutation) else Permutation(g)
    if len(g) != v:
        raise BadPermutation(f"permutation of degree {len(g)} applied to a design on {v} points")
    return g


def apply_permutation(d: Design, g: Sequence[int]) -> Design:
    """Relabel every point ``p`` as ``g(p)``; the result is re-sorted into canonical order."""
    g = _check_perm(d.v, g)
    if isinstance(d, Dts):
        return Dts(d.v, tuple(TransitiveTriple(g[a], g[b], g[c]) for a, b, c in d.triples))
    return Tts(d.v, tuple(Block.of(g[a], g[b], g[c]) for a, b, c in d.blocks))


# text grammar

_TRIPLE_RE = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")
_BLOCK_RE = re.compile(r"^\{\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\}$")
_HEADER_RE = re.compile(r"^(dts|tts) v=(\d+)$")


def parse_triple(text: str, lineno: int | None = None) -> TransitiveTriple:
    m = _TRIPLE_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed triple {text.strip()!r}", lineno)
    try:
        return make_transitive_triple(*map(int, m.groups()))
    except DuplicatePoint as exc:
        raise ParseError(str(exc), lineno) from exc


def parse_block(text: str, lineno: int | None = None) -> Block:
    m = _BLOCK_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed block {text.strip()!r}", lineno)
    pts = tuple(map(int, m.groups()))
    if list(pts) != sorted(set(pts)):
        raise ParseError(f"block {text.strip()!r} must list 3 distinct points ascending", lineno)
    return Block(*pts)


def parse_header(text: str, lineno: int | None = None) -> tuple[str, int]:
    m = _HEADER_RE.match(text.strip())
    if not m:
        raise ParseError(f"expected 'dts v=<v>' or 'tts v=<v>', got {text.strip()!r}", lineno)
    return m.group(1), int(m.group(2))


def format_design(d: Design) -> str:
    if isinstance(d, Dts):
        lines = [f"dts v={d.v}"] + [str(t) for t in d.triples]
    else:
        lines = [f"tts v={d.v}"] + [str(b) for b in d.blocks]
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> Design:
    """Parse a single design file (header line, then one triple/block per line)."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty design file", 1)
    kind, v = parse_header(lines[0][1], lines[0][0])
    if kind == "dts":
        triples = [parse_triple(ln, i) for i, ln in lines[1:]]
        for i, t in zip((i for i, _ in lines[1:]), triples):
            if max(t) >= v:
                raise ParseError(f"point label in {t} exceeds v-1={v - 1}", i)
        return Dts(v, tuple(triples))
    blocks = [parse_block(ln, i) for i, ln in lines[1:]]
    for i, b in zip((i for i, _ in lines[1:]), blocks):
        if b.c >= v:
            raise ParseError(f"point label in {b} exceeds v-1={v - 1}", i)
    return Tts(v, tuple(blocks))
