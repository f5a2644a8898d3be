"""Exception hierarchy shared across the toolkit."""


class UdspellError(Exception):
    """Base class for all toolkit errors."""


class LatticeError(UdspellError):
    """Malformed lattice record or violated lattice contract."""


class PinyinError(UdspellError):
    """Unparseable pinyin syllable or table entry."""


class ConfusionError(UdspellError):
    """Bad confusion-set input or query."""


class EcmError(UdspellError):
    """Corruption pipeline failure."""


class DictionaryError(UdspellError):
    """Dictionary loading or matching contract violation."""


class DecodeError(UdspellError):
    """Decoder contract violation or refused search."""


class EvalError(UdspellError):
    """Evaluation input failure."""


class ScorerError(UdspellError):
    """Scorer training or scoring failure."""
