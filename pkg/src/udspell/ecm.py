"""Error-consistent corruption: one error type per sentence, injected under
a 15% character budget.

Each sentence draws a single error type (pronunciation 30%, shape 30%,
random 20%, unchanged 20% by default) and all edits in the sentence share
that type. Continuous (2-4 char) replacements come from the fragment
confusion set and occur only under the pronunciation type.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Sequence

from .confusion import NGRAM_LENGTHS, CharConfusion, NgramConfusion, is_chinese_char
from .errors import EcmError

ERROR_TYPES = ("pronunciation", "shape", "random", "unchanged")

_MAX_RETRIES = 8


@dataclass(frozen=True)
class EcmConfig:
    p_pronunciation: float = 0.30
    p_shape: float = 0.30
    p_random: float = 0.20
    p_unchanged: float = 0.20
    max_ratio: float = 0.15
    seed: int = 0

    def __post_init__(self) -> None:
        probs = (self.p_pronunciation, self.p_shape, self.p_random, self.p_unchanged)
        if any(p < 0 for p in probs) or abs(sum(probs) - 1.0) > 1e-9:
            raise EcmError(f"error-type probabilities must be >= 0 and sum to 1, got {probs}")
        if not (0 < self.max_ratio <= 1):
            raise EcmError(f"max_ratio must be in (0, 1], got {self.max_ratio}")

    def sample_type(self, rng: random.Random) -> str:
        x = rng.random()
        for name, p in zip(
            ERROR_TYPES,
            (self.p_pronunciation, self.p_shape, self.p_random, self.p_unchanged),
        ):
            x -= p
            if x < 0:
                return name
        return ERROR_TYPES[-1]


@dataclass(frozen=True)
class Edit:
    pos: int
    orig: str
    repl: str


@dataclass(frozen=True)
class CorruptionRecord:
    source: str  # corrupted sentence
    target: str  # original sentence
    error_type: str
    edits: tuple[Edit, ...] = ()
    degraded: bool = False  # drawn non-unchanged but no edit was possible

    def __post_init__(self) -> None:
        if len(self.source) != len(self.target):
            raise EcmError("source and target must have equal length")


def _edit_sites(sentence: str) -> list[int]:
    return [i for i, c in enumerate(sentence) if is_chinese_char(c)]


def corrupt_sentence(
    sentence: str,
    char_conf: CharConfusion,
    ngram_conf: NgramConfusion,
    cfg: EcmConfig,
    rng: random.Random,
    inventory: Sequence[str] | None = None,
) -> CorruptionRecord:
    """Corrupt one sentence with a single sampled error type.

    The total number of replaced characters never exceeds
    floor(max_ratio * len); sentences where no edit is possible degrade to
    an unchanged record flagged as degraded.
    """
    if not sentence:
        raise EcmError("cannot corrupt an empty sentence")
    if inventory is None:
        inventory = char_conf.inventory()

    error_type = cfg.sample_type(rng)
    if error_type == "unchanged":
        return CorruptionRecord(sentence, sentence, "unchanged")

    budget = math.floor(cfg.max_ratio * len(sentence))
    sites = _edit_sites(sentence)
    if budget == 0 or not sites:
        return CorruptionRecord(sentence, sentence, "unchanged", degraded=True)

    chars = list(sentence)
    used: set[int] = set()
    edits: list[Edit] = []
    spent = 0
    want = rng.randint(1, budget)

    attempts = 0
    while spent < want and attempts < _MAX_RETRIES * budget:
        attempts += 1
        pos = rng.choice(sites)
        if pos in used:
            continue
        orig = sentence[pos]

        if error_type == "pronunciation":
            frag_lens = [
                ln
                for ln in NGRAM_LENGTHS
                if ln <= want - spent
                and pos + ln <= len(sentence)
                and all(i in sites and i not in used for i in range(pos, pos + ln))
                and ngram_conf.entries.get(sentence[pos : pos + ln])
            ]
            if frag_lens and rng.random() < 0.5:
                ln = rng.choice(frag_lens)
                frag = sentence[pos : pos + ln]
                repl = rng.choice(sorted(ngram_conf.entries[frag]))
                chars[pos : pos + ln] = list(repl)
                used.update(range(pos, pos + ln))
                edits.append(Edit(pos, frag, repl))
                spent += ln
                continue
            cands = sorted(char_conf.phonetic_candidates(orig))
        elif error_type == "shape":
            cands = sorted(char_conf.morphological_candidates(orig))
        else:  # random
            cands = [c for c in inventory if c != orig]

        if not cands:
            continue
        repl = rng.choice(cands)
        chars[pos] = repl
        used.add(pos)
        edits.append(Edit(pos, orig, repl))
        spent += 1

    if not edits:
        return CorruptionRecord(sentence, sentence, "unchanged", degraded=True)
    edits.sort(key=lambda e: e.pos)
    return CorruptionRecord("".join(chars), sentence, error_type, tuple(edits))


def _sentence_rng(seed: int, index: int) -> random.Random:
    # str seeds hash deterministically (sha512) across processes
    return random.Random(f"{seed}:{index}")


def generate_corpus(
    corpus: Iterable[str],
    char_conf: CharConfusion,
    ngram_conf: NgramConfusion,
    cfg: EcmConfig,
    inventory: Sequence[str] | None = None,
) -> Iterator[CorruptionRecord]:
    """One corruption record per sentence, reproducible for a fixed seed.

    Each sentence uses an RNG derived from (seed, sentence index), so the
    output is independent of processing order.
    """
    if inventory is None:
        inventory = char_conf.inventory()
    for idx, sentence in enumerate(corpus):
        yield corrupt_sentence(
            sentence, char_conf, ngram_conf, cfg, _sentence_rng(cfg.seed, idx), inventory
        )


@dataclass
class CorpusStats:
    type_counts: Counter = field(default_factory=Counter)
    edit_count: int = 0
    degraded_count: int = 0
    record_count: int = 0

    def add(self, rec: CorruptionRecord) -> None:
        self.type_counts[rec.error_type] += 1
        self.edit_count += len(rec.edits)
        self.degraded_count += int(rec.degraded)
        self.record_count += 1


def format_edit_spec(edits: Sequence[Edit]) -> str:
    return ";".join(f"{e.pos}:{e.orig}>{e.repl}" for e in edits)


def write_records(records: Iterable[CorruptionRecord], fh: IO[str]) -> CorpusStats:
    """TSV output ``source<TAB>target<TAB>error_type<TAB>edit_spec`` plus a
    trailing commented summary block; returns the summary counters."""
    stats = CorpusStats()
    for rec in records:
        fh.write(
            f"{rec.source}\t{rec.target}\t{rec.error_type}\t{format_edit_spec(rec.edits)}\n"
        )
        stats.add(rec)
    fh.write(f"# records={stats.record_count} edits={stats.edit_count} ")
    fh.write(f"degraded={stats.degraded_count}\n")
    for name in ERROR_TYPES:
        fh.write(f"# type.{name}={stats.type_counts.get(name, 0)}\n")
    return stats
