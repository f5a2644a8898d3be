"""Pinyin syllable decomposition and phonetic-similarity predicates.

A syllable such as "cha1" splits into an initial ("ch"), a final ("a") and
a tone digit 1..5 (5 = neutral). The ASCII letter "v" stands for the vowel
u-umlaut. Two syllables count as phonetically similar when they are equal
ignoring tone, or when their finals match and their initials fall in the
same fuzzy group (z/zh, c/ch, s/sh, l/n, f/h) as mainstream pinyin input
methods treat them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable

from .errors import PinyinError

# The 23 Mandarin initials; two-letter ones must be tried first.
INITIALS: tuple[str, ...] = (
    "zh", "ch", "sh",
    "b", "p", "m", "f", "d", "t", "n", "l",
    "g", "k", "h", "j", "q", "x", "r", "z", "c", "s", "y", "w",
)

FINALS: frozenset[str] = frozenset({
    "a", "o", "e", "i", "u", "v",
    "ai", "ei", "ui", "ao", "ou", "iu", "ie", "ue", "ve", "er",
    "an", "en", "in", "un", "vn",
    "ang", "eng", "ing", "ong",
    "ia", "iao", "ian", "iang", "iong",
    "ua", "uo", "uai", "uan", "uang", "uen", "ueng",
})

# Input-method fuzzy pairs; r/l deliberately excluded.
FUZZY_GROUPS: tuple[frozenset[str], ...] = (
    frozenset({"z", "zh"}),
    frozenset({"c", "ch"}),
    frozenset({"s", "sh"}),
    frozenset({"l", "n"}),
    frozenset({"f", "h"}),
)

_FUZZY_REP = {i: min(g) for g in FUZZY_GROUPS for i in g}

_SYLLABLE_RE = re.compile(r"^[a-züv]+[1-5]$")


@dataclass(frozen=True)
class PinyinSyllable:
    """(initial, final, tone) decomposition of one romanized syllable."""

    integral: str
    initial: str
    final: str
    tone: int

    @property
    def toneless(self) -> str:
        return self.initial + self.final

    def fuzzy_key(self, fuzzy: bool = True) -> str:
        """Tone-less form with the initial collapsed to its fuzzy-group representative."""
        ini = _FUZZY_REP.get(self.initial, self.initial) if fuzzy else self.initial
        return ini + self.final


def decompose(integral: str) -> PinyinSyllable:
    """Split a tone-digit syllable into (initial, final, tone).

    The initial is matched longest-first against the closed inventory of 23
    initials; the remainder must be a known final.
    """
    s = integral.strip().lower().replace("ü", "v")
    if not _SYLLABLE_RE.match(s):
        raise PinyinError(f"unparseable pinyin syllable {integral!r}")
    body, tone = s[:-1], int(s[-1])
    for ini in INITIALS:
        if body.startswith(ini) and body[len(ini):] in FINALS:
            return PinyinSyllable(integral=s, initial=ini, final=body[len(ini):], tone=tone)
    if body in FINALS:
        return PinyinSyllable(integral=s, initial="", final=body, tone=tone)
    raise PinyinError(f"unparseable pinyin syllable {integral!r}")


def recompose(syl: PinyinSyllable) -> str:
    return syl.initial + syl.final + str(syl.tone)


def phonetic_similar(a: PinyinSyllable, b: PinyinSyllable, fuzzy: bool = True) -> bool:
    """True iff the syllables match ignoring tone, exactly or under fuzzy initials."""
    if a.toneless == b.toneless:
        return True
    if not fuzzy:
        return False
    return a.final == b.final and _FUZZY_REP.get(a.initial, a.initial) == _FUZZY_REP.get(
        b.initial, b.initial
    )


class PinyinTable:
    """Immutable character-to-readings map; polyphones keep all readings in file order."""

    def __init__(self, entries: dict[str, tuple[PinyinSyllable, ...]]):
        self._entries = dict(entries)

    def __contains__(self, char: str) -> bool:
        return char in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def chars(self) -> Iterable[str]:
        return self._entries.keys()

    def readings(self, char: str) -> tuple[PinyinSyllable, ...]:
        try:
            return self._entries[char]
        except KeyError:
            raise PinyinError(f"character {char!r} not in pinyin table") from None

    def first_reading(self, char: str) -> PinyinSyllable:
        """The most frequent reading (first listed) of a polyphonic character."""
        return self.readings(char)[0]

    def similar(self, a: str, b: str, fuzzy: bool = True) -> bool:
        """True iff any reading pair of the two characters is phonetically similar."""
        if a not in self._entries or b not in self._entries:
            return False
        return any(
            phonetic_similar(ra, rb, fuzzy=fuzzy)
            for ra in self._entries[a]
            for rb in self._entries[b]
        )


def load_pinyin_table(stream: Iterable[str] | IO[str]) -> PinyinTable:
    """Load a TSV of ``char<TAB>syll1,syll2,...`` lines; ``#`` starts a comment."""
    entries: dict[str, tuple[PinyinSyllable, ...]] = {}
    for ln, line in enumerate(stream, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or len(parts[0]) != 1:
            raise PinyinError(f"line {ln}: bad pinyin table entry {line!r}")
        char, sylls = parts
        entries[char] = tuple(decompose(s) for s in sylls.split(",") if s)
        if not entries[char]:
            raise PinyinError(f"line {ln}: no readings for {char!r}")
    return PinyinTable(entries)


def default_table() -> PinyinTable:
    """The table bundled with the package (covers the shipped confusion data)."""
    text = resources.files("udspell.data").joinpath("pinyin.tsv").read_text("utf-8")
    return load_pinyin_table(text.splitlines())
