"""Catalog files, the shipped reference fixtures, and diffing against them.

Catalog grammar (ASCII, LF)::

    # catalog v=7
    # tts T7.1
    tts v=7
    {0,1,2}
    ...
    # class T7.1/1
    dts v=7
    (1,0,2)
    ...
    least 7 0123456        <- optional expectation trailers (fixtures)
    count 7 480

Every ``# class`` record may optionally be preceded by the ``# tts`` record of
its underlying system; without one the system is derived from the designs.
"""

from __future__ import annotations

import os
import re
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .design import (
    Dts,
    Permutation,
    Tts,
    apply_permutation,
    format_design,
    parse_block,
    parse_header,
    parse_triple,
    underlying_tts,
    validate_dts,
    validate_tts,
)
from .dts import DtsCatalog, orbit_min
from .errors import InvariantFailure, MissingReport, ParseError, ValidationError
from .sequencer import SequencingReport, is_ell_good, least_good_sequencing, sequence_all
from .tts import AutGroup, automorphism_group, check_order, find_isomorphism_tts

PathLike = Union[str, os.PathLike]

_CLASS_RE = re.compile(r"^# class (\S+)/(\d+)$")
_TTS_RE = re.compile(r"^# tts (\S+)$")
_LEAST_RE = re.compile(r"^least (\d+) (\d+)$")
_COUNT_RE = re.compile(r"^count (\d+) (\d+)$")


@dataclass
class Record:
    kind: str  # "tts" or "dts"
    tts_id: str
    index: Optional[int]
    design: Union[Dts, Tts]
    least: dict = field(default_factory=dict)
    count: dict = field(default_factory=dict)
    lineno: int = 0


def parse_records(text: str) -> list[Record]:
    records: list[Record] = []
    cur: Optional[Record] = None
    body: list = []
    kind = v = None

    def finish():
        if cur is None:
            return
        if kind is None:
            raise ParseError(f"record {cur.tts_id} has no design header", cur.lineno)
        if kind == "dts":
            cur.design = Dts(v, tuple(body))
        else:
            cur.design = Tts(v, tuple(body))
        if cur.kind != kind:
            raise ParseError(f"'{cur.kind}' record holds a {kind} design", cur.lineno)
        records.append(cur)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        m_class, m_tts = _CLASS_RE.match(line), _TTS_RE.match(line)
        if m_class or m_tts:
            finish()
            if m_class:
                cur = Record("dts", m_class.group(1), int(m_class.group(2)), None, lineno=lineno)
            else:
                cur = Record("tts", m_tts.group(1), None, None, lineno=lineno)
            body, kind, v = [], None, None
            continue
        if line.startswith("#"):
            continue
        if cur is None:
            raise ParseError(f"content before any '# class' or '# tts' header: {line!r}", lineno)
        if kind is None:
            kind, v = parse_header(line, lineno)
            continue
        m = _LEAST_RE.match(line)
        if m:
            cur.least[int(m.group(1))] = m.group(2)
            continue
        m = _COUNT_RE.match(line)
        if m:
            cur.count[int(m.group(1))] = int(m.group(2))
            continue
        item = parse_triple(line, lineno) if kind == "dts" else parse_block(line, lineno)
        if max(item) >= v:
            raise ParseError(f"point label in {line} exceeds v-1={v - 1}", lineno)
        body.append(item)
    finish()
    return records


# catalogs

def format_catalog(c: DtsCatalog) -> str:
    out = [f"# catalog v={c.v}"]
    for tts_id, t, designs in c.per_tts:
        out.append(f"# tts {tts_id}")
        out.append(format_design(t).rstrip("\n"))
        for i, d in enumerate(designs, 1):
            out.append(f"# class {tts_id}/{i}")
            out.append(format_design(d).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_catalog(text: str) -> DtsCatalog:
    records = parse_records(text)
    systems: dict = {}
    designs: dict = defaultdict(list)
    order: list = []
    v = None
    for r in records:
        if v is None:
            v = r.design.v
        elif r.design.v != v:
            raise ValidationError(f"line {r.lineno}: mixed orders {v} and {r.design.v} in one catalog")
        if r.tts_id not in order:
            order.append(r.tts_id)
        if r.kind == "tts":
            if not validate_tts(r.design).valid:
                raise ValidationError(f"{r.tts_id}: invalid TTS ({validate_tts(r.design).summary()})")
            systems[r.tts_id] = r.design
            continue
        rep = validate_dts(r.design)
        if not rep.valid:
            raise ValidationError(f"{r.tts_id}/{r.index}: invalid DTS ({rep.summary()})")
        if r.index != len(designs[r.tts_id]) + 1:
            raise ValidationError(f"{r.tts_id}/{r.index}: class indices must run 1, 2, ... in order")
        designs[r.tts_id].append(r.design)
    if v is None:
        m = re.search(r"^# catalog v=(\d+)$", text, re.M)
        if not m:
            raise ParseError("empty catalog without a '# catalog v=<v>' header", 1)
        return DtsCatalog(int(m.group(1)), [])
    per_tts = []
    for tts_id in order:
        ds = designs[tts_id]
        t = systems.get(tts_id) or underlying_tts(ds[0])
        seen = set()
        for i, d in enumerate(ds, 1):
            if underlying_tts(d) != t:
                raise ValidationError(f"{tts_id}/{i}: underlying TTS differs from {tts_id}")
            if d.triples in seen:
                raise ValidationError(f"{tts_id}/{i}: duplicated design")
            seen.add(d.triples)
        per_tts.append((tts_id, t, ds))
    return DtsCatalog(v, per_tts)


def write_catalog(c: DtsCatalog, path: PathLike) -> None:
    Path(path).write_bytes(format_catalog(c).encode("ascii"))


def read_catalog(path: PathLike) -> DtsCatalog:
    return parse_catalog(Path(path).read_bytes().decode("ascii"))


# fixtures

@dataclass(frozen=True)
class FixtureEntry:
    label: str  # e.g. "D7.4.926"
    class_id: str  # e.g. "T7.4/926"
    tts_id: str
    dts: Dts
    expected_max_ell: int
    expected_least: str
    expected_count: int
    fallback: Optional[tuple[str, int]] = None  # (least, count) one window down, if v-good fails

    @property
    def triples(self):
        return self.dts.triples


def _fixture_label(tts_id: str, index: int) -> str:
    return "D" + tts_id[1:] + f".{index}"


def _entry_from_record(r: Record) -> FixtureEntry:
    v = r.design.v
    good = [ell for ell, n in r.count.items() if n > 0]
    if not good:
        raise ValidationError(f"{r.tts_id}/{r.index}: no positive count recorded")
    top = max(good)
    if top not in r.least:
        raise ValidationError(f"{r.tts_id}/{r.index}: no least sequencing recorded at l={top}")
    fallback = None
    if top < v:
        if r.count.get(v) != 0:
            raise ValidationError(f"{r.tts_id}/{r.index}: max window {top} < {v} without a zero count at {v}")
        fallback = (r.least[top], r.count[top])
    return FixtureEntry(
        label=_fixture_label(r.tts_id, r.index),
        class_id=f"{r.tts_id}/{r.index}",
        tts_id=r.tts_id,
        dts=r.design,
        expected_max_ell=top,
        expected_least=r.least[top],
        expected_count=r.count[top],
        fallback=fallback,
    )


def parse_fixtures(text: str, check: bool = True) -> list[FixtureEntry]:
    entries = []
    for r in parse_records(text):
        if r.kind != "dts":
            continue
        rep = validate_dts(r.design)
        if not rep.valid:
            raise ValidationError(f"{_fixture_label(r.tts_id, r.index)}: invalid DTS ({rep.summary()})")
        e = _entry_from_record(r)
        if check:
            v = e.dts.v
            if sorted(e.expected_least) != [str(i) for i in range(v)]:
                raise ValidationError(f"{e.label}: least sequencing {e.expected_least} is not a permutation")
            if not is_ell_good(e.dts, Permutation.from_digits(e.expected_least), e.expected_max_ell):
                raise ValidationError(f"{e.label}: {e.expected_least} is not {e.expected_max_ell}-good")
        entries.append(e)
    return entries


def load_fixtures(v: int, check: bool = True) -> list[FixtureEntry]:
    check_order(v)
    text = resources.files("dtseq.data").joinpath(f"fixtures_v{v}.txt").read_text(encoding="ascii")
    return parse_fixtures(text, check=check)


def format_fixtures(entries: Iterable[FixtureEntry]) -> str:
    out = []
    for e in entries:
        v = e.dts.v
        out.append(f"# class {e.class_id}")
        out.append(format_design(e.dts).rstrip("\n"))
        out.append(f"least {e.expected_max_ell} {e.expected_least}")
        if e.fallback is not None:
            out.append(f"count {v} 0")
        out.append(f"count {e.expected_max_ell} {e.expected_count}")
    return "\n".join(out) + "\n"


# diffing

@dataclass(frozen=True)
class Mismatch:
    label: str
    design_id: Optional[str]
    field: str
    expected: object
    actual: object


@dataclass
class DiffReport:
    matched: int = 0
    mismatched: list = field(default_factory=list)
    unmatched_fixtures: list = field(default_factory=list)
    unmatched_computed: list = field(default_factory=list)
    # fixture label -> (design id, permutation taking the fixture onto the catalog design)
    alignment: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatched and not self.unmatched_fixtures and not self.unmatched_computed

    def summary(self) -> str:
        bad = len({m.label for m in self.mismatched})
        return (f"{self.matched} matched / {bad} mismatched / "
                f"{len(self.unmatched_fixtures)} unmatched fixtures / "
                f"{len(self.unmatched_computed)} unmatched computed")


def _orbit_min_with_witness(d: Dts, group: AutGroup) -> tuple[Dts, Permutation]:
    best = None
    for h in group:
        img = apply_permutation(d, h)
        if best is None or img.triples < best[0].triples:
            best = (img, h)
    return best


def match_catalog(computed: DtsCatalog, fixtures: list[FixtureEntry],
                  reports: Optional[dict] = None, workers: int = 1) -> DiffReport:
    """Pair each fixture with its catalog design and compare statistics.

    The fixture is mapped onto the catalog's copy of its underlying TTS and
    then to the least member of its orbit under that system's automorphism
    group, which is the catalog representative if the catalog is complete.
    Max window and count are isomorphism invariants and are compared straight
    from the catalog reports.  The least sequencing depends on labels, so it is
    recomputed on the catalog design carried back onto the fixture's labels.
    """
    if reports is None:
        reports = {r.design_id: r for r in sequence_all(computed.items(), None, workers)}
    index = {}
    groups = {}
    for tts_id, t, designs in computed.per_tts:
        groups[tts_id] = (t, automorphism_group(t))
        for i, d in enumerate(designs, 1):
            index[(tts_id, d.triples)] = f"{tts_id}/{i}"

    diff = DiffReport()
    hit: dict = {}
    tts_cache: dict = {}
    for f in fixtures:
        if f.dts.v != computed.v:
            diff.unmatched_fixtures.append(f.label)
            continue
        base = underlying_tts(f.dts)
        if base not in tts_cache:
            tts_cache[base] = None
            for tts_id, (t, _) in groups.items():
                g = find_isomorphism_tts(base, t)
                if g is not None:
                    tts_cache[base] = (tts_id, g)
                    break
        if tts_cache[base] is None:
            diff.unmatched_fixtures.append(f.label)
            continue
        tts_id, g = tts_cache[base]
        rep, h = _orbit_min_with_witness(apply_permutation(f.dts, g), groups[tts_id][1])
        design_id = index.get((tts_id, rep.triples))
        if design_id is None or design_id in hit:
            diff.unmatched_fixtures.append(f.label)
            continue
        hit[design_id] = f.label
        sigma = h * g
        diff.alignment[f.label] = (design_id, sigma)
        if apply_permutation(rep, sigma.inverse()) != f.dts:
            raise InvariantFailure(f"{f.label}: alignment does not reproduce the fixture")

        report = reports.get(design_id)
        if report is None:
            raise MissingReport(design_id)
        problems = []
        if report.max_ell != f.expected_max_ell:
            problems.append(("max_ell", f.expected_max_ell, report.max_ell))
        else:
            if report.count != f.expected_count:
                problems.append(("count", f.expected_count, report.count))
            aligned = apply_permutation(rep, sigma.inverse())
            least = least_good_sequencing(aligned, f.expected_max_ell)
            actual = least.digits() if least is not None else "-"
            if actual != f.expected_least:
                problems.append(("least", f.expected_least, actual))
        for name, exp, act in problems:
            diff.mismatched.append(Mismatch(f.label, design_id, name, exp, act))
        if not problems:
            diff.matched += 1
    diff.unmatched_computed = [i for i, _ in computed.items() if i not in hit]
    return diff


# reports

def _report_map(c: DtsCatalog, reports: Iterable[SequencingReport]) -> dict:
    by_id = {r.design_id: r for r in reports}
    for design_id, _ in c.items():
        if design_id not in by_id:
            raise MissingReport(f"no sequencing report for {design_id}")
    return by_id


def render_report(c: DtsCatalog, reports: Iterable[SequencingReport], fmt: str = "tsv",
                  ell: Optional[int] = None) -> str:
    """Deterministic text rendering; ``ell=None`` labels the rows as max-window reports."""
    by_id = _report_map(c, reports)
    mode = "max" if ell is None else str(ell)
    if fmt == "tsv":
        lines = [f"# report v={c.v} ell={mode}", "design\tmax_ell\tleast\tcount"]
        for design_id, _ in c.items():
            r = by_id[design_id]
            lines.append(f"{design_id}\t{r.max_ell}\t{r.least_digits}\t{r.count}")
        return "\n".join(lines) + "\n"
    if fmt != "paper":
        raise ValueError(f"unknown report format {fmt!r}")
    v = c.v
    lines = [f"# report v={c.v} ell={mode} designs={c.total}"]
    for design_id, d in c.items():
        r = by_id[design_id]
        lines.append("")
        lines.append(f"{design_id}:")
        lines.append("\t" + " ".join(str(t) for t in d.triples))
        if r.ell < v and r.max_ell < v and ell is None:
            lines.append(f"\tNumber of {v}-good sequencings found: 0")
        if r.count:
            lines.append(f"\tLexicographic least {r.ell}-good sequencing {r.least_digits}")
        lines.append(f"\tNumber of {r.ell}-good sequencings found: {r.count}")
    return "\n".join(lines) + "\n"


def parse_report_tsv(text: str) -> tuple[Optional[int], list[SequencingReport]]:
    lines = text.splitlines()
    m = re.match(r"^# report v=(\d+) ell=(\w+)$", lines[0]) if lines else None
    if not m or len(lines) < 2 or lines[1] != "design\tmax_ell\tleast\tcount":
        raise ParseError("missing report header", 1)
    ell = None if m.group(2) == "max" else int(m.group(2))
    out = []
    for lineno, line in enumerate(lines[2:], 3):
        parts = line.split("\t")
        if len(parts) != 4:
            raise ParseError(f"expected 4 tab-separated fields, got {line!r}", lineno)
        design_id, top, least, count = parts
        least_perm = None if least == "-" else Permutation.from_digits(least)
        row_ell = int(top) if ell is None else ell
        out.append(SequencingReport(design_id, row_ell, least_perm, int(count), int(top)))
    return ell, out
