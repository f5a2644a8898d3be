"""User dictionary storage, multi-pattern matching, and span-match scoring.

Matching is backed by an Aho-Corasick automaton so the decoder can advance
one character at a time along a hypothesis and learn, at each position,
which dictionary terms just ended there.
"""
from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

from .confusion import greedy_segment
from .errors import DictionaryError

logger = logging.getLogger(__name__)


class AhoCorasick:
    """Multi-pattern matcher over a fixed term set.

    States are integers; 0 is the root. ``step`` advances by one character
    (following failure links), ``end_lengths`` reports the lengths of every
    term ending at the current state.
    """

    def __init__(self, terms: Iterable[str]):
        self._goto: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._out: list[tuple[int, ...]] = [()]
        self.max_term_len = 0
        for term in sorted(set(terms)):
            self._insert(term)
        self._build_links()
        self._step_cache: dict[tuple[int, str], int] = {}

    def _insert(self, term: str) -> None:
        state = 0
        for ch in term:
            nxt = self._goto[state].get(ch)
            if nxt is None:
                nxt = len(self._goto)
                self._goto[state][ch] = nxt
                self._goto.append({})
                self._fail.append(0)
                self._out.append(())
            state = nxt
        self._out[state] = self._out[state] + (len(term),)
        self.max_term_len = max(self.max_term_len, len(term))

    def _build_links(self) -> None:
        queue: deque[int] = deque()
        for child in self._goto[0].values():
            queue.append(child)
        while queue:
            state = queue.popleft()
            for ch, child in self._goto[state].items():
                queue.append(child)
                f = self._fail[state]
                while f and ch not in self._goto[f]:
                    f = self._fail[f]
                self._fail[child] = self._goto[f].get(ch, 0) if self._goto[f].get(ch, 0) != child else 0
                self._out[child] = self._out[child] + self._out[self._fail[child]]

    def step(self, state: int, ch: str) -> int:
        """Advance one character; memoized for the decoder's inner loop."""
        key = (state, ch)
        cached = self._step_cache.get(key)
        if cached is not None:
            return cached
        s = state
        while s and ch not in self._goto[s]:
            s = self._fail[s]
        nxt = self._goto[s].get(ch, 0)
        self._step_cache[key] = nxt
        return nxt

    def end_lengths(self, state: int) -> tuple[int, ...]:
        return self._out[state]

    def iter_matches(self, text: str) -> Iterator[tuple[int, int]]:
        """(start, end) of every term occurrence in text, end exclusive."""
        state = 0
        for j, ch in enumerate(text):
            state = self.step(state, ch)
            for ln in self._out[state]:
                yield (j - ln + 1, j + 1)


@dataclass(frozen=True)
class SpanMatch:
    start: int
    end: int  # exclusive
    term: str


class UserDictionary:
    """Immutable term set (each term >= 2 chars) with its matcher."""

    def __init__(self, terms: Iterable[str]):
        self.terms = frozenset(terms)
        for t in self.terms:
            if len(t) < 2:
                raise DictionaryError(f"dictionary term too short: {t!r}")
        self.automaton = AhoCorasick(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    @property
    def max_term_len(self) -> int:
        return self.automaton.max_term_len


EMPTY_DICTIONARY = UserDictionary(())


def load_dictionary(stream: Iterable[str] | IO[str]) -> UserDictionary:
    """One term per line; ``#`` comments and blank lines ignored.

    Terms shorter than 2 characters are rejected with a warning; an empty
    result is legal (decoding then degrades toward greedy).
    """
    terms = set()
    rejected = 0
    for line in stream:
        term = line.strip()
        if not term or term.startswith("#"):
            continue
        if len(term) < 2:
            rejected += 1
            continue
        terms.add(term)
    if rejected:
        logger.warning("rejected %d single-character dictionary terms", rejected)
    if not terms:
        logger.warning("loaded an empty dictionary")
    return UserDictionary(terms)


def rsm_spans(input: str, dic: UserDictionary) -> list[SpanMatch]:
    """Every occurrence (overlaps included) of a dictionary term in the raw input."""
    if not input:
        raise DictionaryError("input must be non-empty")
    spans = [
        SpanMatch(start=s, end=e, term=input[s:e]) for s, e in dic.automaton.iter_matches(input)
    ]
    spans.sort(key=lambda m: (m.start, m.end))
    return spans


def rsm_fixed_positions(input: str, dic: UserDictionary) -> set[int]:
    fixed: set[int] = set()
    for m in rsm_spans(input, dic):
        fixed.update(range(m.start, m.end))
    return fixed


def asm_reward(
    input: str, path: str, dic: UserDictionary, count_mode: str = "covered"
) -> int:
    """Altered-span-match reward for one complete path.

    Dictionary-term occurrences in the path that contain at least one
    altered position (path differs from input there) contribute their
    positions; the reward counts distinct covered positions
    (``count_mode="covered"``) or only the altered ones among them
    (``count_mode="altered"``).
    """
    if len(path) != len(input):
        raise DictionaryError(
            f"path length {len(path)} != input length {len(input)}"
        )
    if count_mode not in ("covered", "altered"):
        raise DictionaryError(f"unknown asm count mode {count_mode!r}")
    altered = {i for i in range(len(input)) if path[i] != input[i]}
    covered: set[int] = set()
    for s, e in dic.automaton.iter_matches(path):
        span = range(s, e)
        if any(i in altered for i in span):
            covered.update(span)
    if count_mode == "altered":
        covered &= altered
    return len(covered)


def _diff_runs(source: str, target: str) -> list[tuple[int, int]]:
    """Maximal (start, end) runs where the two equal-length strings differ."""
    runs = []
    i = 0
    n = len(source)
    while i < n:
        if source[i] != target[i]:
            j = i
            while j < n and source[j] != target[j]:
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    return runs


def error_phrases(
    pairs: Iterable[tuple[str, str]], wordlist: set[str] | None = None
) -> set[str]:
    """Distinct gold-side phrases around the error positions of (source, target) pairs.

    Each contiguous corrected run is extended to the boundaries of the word
    containing it under greedy segmentation of the target; phrases shorter
    than 2 characters are widened by one character where possible.
    """
    pairs = list(pairs)
    if wordlist is None:
        # high-frequency grams of the gold sentences stand in for a word list
        from collections import Counter

        counts: Counter[str] = Counter()
        for _, target in pairs:
            for ln in (2, 3, 4):
                for i in range(len(target) - ln + 1):
                    counts[target[i : i + ln]] += 1
        wordlist = {g for g, c in counts.items() if c >= 2}

    phrases: set[str] = set()
    for source, target in pairs:
        if len(source) != len(target):
            raise DictionaryError("dataset pair lengths differ")
        if not _diff_runs(source, target):
            continue
        # word boundaries of the segmented target
        bounds = []
        i = 0
        for word in greedy_segment(target, wordlist):
            bounds.append((i, i + len(word)))
            i += len(word)
        for rs, re_ in _diff_runs(source, target):
            lo = min(b[0] for b in bounds if b[1] > rs)
            hi = max(b[1] for b in bounds if b[0] < re_)
            if hi - lo < 2:
                lo = max(0, lo - 1)
                if hi - lo < 2:
                    hi = min(len(target), hi + 1)
            if hi - lo >= 2:
                phrases.add(target[lo:hi])
    return phrases


def build_ideal_dictionary(
    pairs: Iterable[tuple[str, str]],
    proportion: float,
    seed: int = 0,
    wordlist: set[str] | None = None,
) -> UserDictionary:
    """Sample the given proportion of distinct gold error phrases into a dictionary."""
    if not (0.0 <= proportion <= 1.0):
        raise DictionaryError(f"proportion must be in [0, 1], got {proportion}")
    phrases = sorted(error_phrases(pairs, wordlist=wordlist))
    count = round(proportion * len(phrases))
    rng = random.Random(seed)
    return UserDictionary(rng.sample(phrases, count))
