"""Top-k candidate lattices: parsing, pruning, greedy decoding, path counting.

A lattice holds, for every position of an input sentence, a short list of
candidate characters with natural-log probabilities, as emitted by any
token-classification speller. The interchange format is UTF-8 JSON lines,
one record per sentence:

    {"id": "...", "input": "...", "positions": [[{"t": "x", "lp": -0.5}, ...], ...]}

Candidates are canonically ordered by log-probability descending, ties by
token code point ascending.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .errors import LatticeError


@dataclass(frozen=True)
class Candidate:
    """One candidate character with its natural-log probability."""

    token: str
    logp: float

    def __post_init__(self) -> None:
        if len(self.token) != 1:
            raise LatticeError(f"candidate token must be one character, got {self.token!r}")
        if not math.isfinite(self.logp) or self.logp > 0.0:
            raise LatticeError(f"candidate logp must be finite and <= 0, got {self.logp!r}")


@dataclass(frozen=True)
class Lattice:
    """Per-position top-k candidates for one input sentence."""

    id: str
    input: str
    positions: tuple[tuple[Candidate, ...], ...]

    def __post_init__(self) -> None:
        if len(self.positions) != len(self.input):
            raise LatticeError(
                f"lattice {self.id!r}: {len(self.positions)} positions for "
                f"{len(self.input)}-char input"
            )
        for j, cands in enumerate(self.positions):
            tokens = [c.token for c in cands]
            if len(set(tokens)) != len(tokens):
                raise LatticeError(f"lattice {self.id!r}: duplicate token at position {j}")
            for a, b in zip(cands, cands[1:]):
                if a.logp < b.logp:
                    raise LatticeError(
                        f"lattice {self.id!r}: candidates not sorted at position {j}"
                    )

    def __len__(self) -> int:
        return len(self.input)


@dataclass(frozen=True)
class PruneConfig:
    """Thresholds controlling candidate pruning.

    A position whose top candidate exceeds ``max_logp`` is fixed to that
    single candidate; candidates below ``min_logp`` are discarded unless
    that would empty the position, in which case the top candidate survives.
    """

    min_logp: float = -11.0
    max_logp: float = -0.001
    k: int = 5

    def __post_init__(self) -> None:
        if not (self.min_logp < self.max_logp <= 0.0):
            raise LatticeError(
                f"require min_logp < max_logp <= 0, got {self.min_logp}, {self.max_logp}"
            )
        if self.k < 1:
            raise LatticeError(f"k must be >= 1, got {self.k}")

    @classmethod
    def disabled(cls, k: int = 10**6) -> "PruneConfig":
        """A config under which prune() keeps every candidate unchanged."""
        return cls(min_logp=-math.inf, max_logp=-0.0, k=k)


@dataclass(frozen=True)
class CorrectionPath:
    """One token per position plus its raw and dictionary scores."""

    tokens: str
    raw_score: float
    dict_score: int = 0
    eta: float = 0.0

    @property
    def total(self) -> float:
        return self.raw_score + self.eta * self.dict_score


def _candidate_sort_key(c: Candidate) -> tuple[float, str]:
    return (-c.logp, c.token)


def make_lattice(id: str, input: str, positions: Iterable[Iterable[Candidate]]) -> Lattice:
    """Build a lattice, canonicalizing candidate order at each position."""
    canon = tuple(tuple(sorted(p, key=_candidate_sort_key)) for p in positions)
    return Lattice(id=id, input=input, positions=canon)


def parse_lattice(stream: Iterable[str] | IO[str]) -> Iterator[Lattice]:
    """Parse JSON-lines lattice records, yielding one Lattice per record.

    Raises LatticeError naming the (0-based) record index on any malformed
    or structurally inconsistent record.
    """
    for idx, line in enumerate(stream):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            positions = [
                [Candidate(token=c["t"], logp=float(c["lp"])) for c in pos]
                for pos in obj["positions"]
            ]
            yield make_lattice(str(obj["id"]), obj["input"], positions)
        except LatticeError as e:
            raise LatticeError(f"record {idx}: {e}") from e
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
            raise LatticeError(f"record {idx}: malformed lattice record: {e}") from e


def serialize_lattice(lat: Lattice) -> str:
    """Canonical single-line JSON form of one lattice record."""
    obj = {
        "id": lat.id,
        "input": lat.input,
        "positions": [
            [{"t": c.token, "lp": c.logp} for c in sorted(pos, key=_candidate_sort_key)]
            for pos in lat.positions
        ],
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_lattices(lats: Iterable[Lattice], fh: IO[str]) -> None:
    for lat in lats:
        fh.write(serialize_lattice(lat) + "\n")


def prune(lat: Lattice, cfg: PruneConfig) -> Lattice:
    """Apply threshold pruning position by position.

    Never empties a position: if every candidate falls below ``min_logp``
    the single top candidate is retained.
    """
    out = []
    for cands in lat.positions:
        if cands and cands[0].logp > cfg.max_logp:
            out.append((cands[0],))
            continue
        kept = tuple(c for c in cands if c.logp >= cfg.min_logp)[: cfg.k]
        if not kept and cands:
            kept = (cands[0],)
        out.append(kept)
    return Lattice(id=lat.id, input=lat.input, positions=tuple(out))


def greedy_path(lat: Lattice) -> CorrectionPath:
    """Per-position argmax path; raw score is the sum of top log-probs."""
    tokens = []
    raw = 0.0
    for j, cands in enumerate(lat.positions):
        if not cands:
            raise LatticeError(f"lattice {lat.id!r}: empty position {j}")
        tokens.append(cands[0].token)
        raw += cands[0].logp
    return CorrectionPath(tokens="".join(tokens), raw_score=raw)


@dataclass(frozen=True)
class PathCount:
    """Exact candidate-path count plus its natural log (overflow-safe view)."""

    count: int
    log_count: float


def candidate_path_count(lat: Lattice, cfg: PruneConfig | None = None) -> PathCount:
    """Product over positions of the (optionally post-prune) candidate count."""
    target = prune(lat, cfg) if cfg is not None else lat
    count = 1
    log_count = 0.0
    for cands in target.positions:
        count *= len(cands)
        log_count += math.log(len(cands)) if cands else -math.inf
    return PathCount(count=count, log_count=log_count)


def average_path_count(lats: Iterable[Lattice], cfg: PruneConfig | None = None) -> float:
    """Corpus-average candidate-path count (the per-speller lattice statistic)."""
    total = 0
    n = 0
    for lat in lats:
        total += candidate_path_count(lat, cfg).count
        n += 1
    if n == 0:
        raise LatticeError("cannot average over an empty lattice stream")
    return total / n
