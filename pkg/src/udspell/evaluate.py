"""Sentence-level spelling-check metrics and dataset statistics.

Both metric styles judge whole sentences. In the stricter style a detection
hit requires the system to flag exactly the gold error positions; the
official-tool style counts any flagged erroneous sentence as detected.
Correction hits require the full output to equal the gold sentence under
both styles. Perplexity is deliberately not computed (it would need an
external language model).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

from .errors import EvalError

STYLES = ("faspell", "official")
LEVELS = ("detection", "correction")


@dataclass(frozen=True)
class EvalRecord:
    input: str
    gold: str
    pred: str

    def __post_init__(self) -> None:
        if not (len(self.input) == len(self.gold) == len(self.pred)):
            raise EvalError(
                f"record length mismatch: input={self.input!r} gold={self.gold!r} "
                f"pred={self.pred!r}"
            )


@dataclass(frozen=True)
class MetricsReport:
    level: str
    style: str
    acc: float
    pre: float
    rec: float
    f1: float

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "style": self.style,
            "acc": self.acc,
            "pre": self.pre,
            "rec": self.rec,
            "f1": self.f1,
        }


def _diff_positions(a: str, b: str) -> frozenset[int]:
    return frozenset(i for i in range(len(a)) if a[i] != b[i])


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def sentence_metrics(
    records: Iterable[EvalRecord], style: str = "faspell", level: str = "correction"
) -> MetricsReport:
    """Accuracy/precision/recall/F1 over whole sentences at one level."""
    if style not in STYLES:
        raise EvalError(f"unknown metrics style {style!r}")
    if level not in LEVELS:
        raise EvalError(f"unknown metrics level {level!r}")

    n = flagged = with_errors = tp = clean_untouched = 0
    for rec in records:
        n += 1
        is_flagged = rec.pred != rec.input
        has_err = rec.gold != rec.input
        flagged += int(is_flagged)
        with_errors += int(has_err)
        clean_untouched += int(not is_flagged and not has_err)
        if not (is_flagged and has_err):
            continue
        if level == "correction":
            hit = rec.pred == rec.gold
        elif style == "official":
            hit = True
        else:
            hit = _diff_positions(rec.pred, rec.input) == _diff_positions(rec.gold, rec.input)
        tp += int(hit)

    pre = _safe_div(tp, flagged)
    rec_ = _safe_div(tp, with_errors)
    return MetricsReport(
        level=level,
        style=style,
        acc=_safe_div(tp + clean_untouched, n),
        pre=pre,
        rec=rec_,
        f1=_safe_div(2 * pre * rec_, pre + rec_),
    )


def all_metrics(records: Iterable[EvalRecord], style: str = "faspell") -> list[MetricsReport]:
    records = list(records)
    return [sentence_metrics(records, style=style, level=lv) for lv in LEVELS]


@dataclass(frozen=True)
class DatasetStats:
    total: int
    error_sents: int
    min_len: int | None
    max_len: int | None
    avg_len: float | None
    continuous_error_sents: int

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "error_sents": self.error_sents,
            "min_len": self.min_len,
            "max_len": self.max_len,
            "avg_len": self.avg_len,
            "continuous_error_sents": self.continuous_error_sents,
        }


def _has_continuous_error(source: str, target: str) -> bool:
    run = 0
    for a, b in zip(source, target):
        run = run + 1 if a != b else 0
        if run >= 2:
            return True
    return False


def dataset_stats(pairs: Iterable[tuple[str, str]]) -> DatasetStats:
    """Error-sentence counts and length statistics of (source, target) pairs."""
    total = errors = continuous = 0
    lengths: list[int] = []
    for source, target in pairs:
        if len(source) != len(target):
            raise EvalError(f"pair length mismatch: {source!r} / {target!r}")
        total += 1
        lengths.append(len(source))
        if source != target:
            errors += 1
            continuous += int(_has_continuous_error(source, target))
    if not lengths:
        return DatasetStats(0, 0, None, None, None, 0)
    return DatasetStats(
        total=total,
        error_sents=errors,
        min_len=min(lengths),
        max_len=max(lengths),
        avg_len=sum(lengths) / total,
        continuous_error_sents=continuous,
    )


def read_eval_records(stream: Iterable[str] | IO[str]) -> list[EvalRecord]:
    """TSV ``id<TAB>input<TAB>gold<TAB>pred`` lines."""
    records = []
    for ln, line in enumerate(stream, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise EvalError(f"line {ln}: expected 4 tab-separated fields")
        try:
            records.append(EvalRecord(input=parts[1], gold=parts[2], pred=parts[3]))
        except EvalError as e:
            raise EvalError(f"line {ln}: {e}") from e
    return records


def read_dataset(stream: Iterable[str] | IO[str]) -> list[tuple[str, str]]:
    """TSV ``id<TAB>source<TAB>target`` lines into (source, target) pairs."""
    pairs = []
    for ln, line in enumerate(stream, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise EvalError(f"line {ln}: expected 3 tab-separated fields")
        pairs.append((parts[1], parts[2]))
    return pairs
