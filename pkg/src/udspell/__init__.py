"""User-dictionary guided decoding and data plumbing for Chinese spelling check.

The toolkit rescores the top-k output lattice of any token-classification
speller with a user dictionary (raw-span and altered-span matching under a
beam search), generates error-consistent synthetic corpora from confusion
sets, evaluates corrections with sentence-level metrics, and ships a small
noisy-channel scorer so the whole loop runs without a neural model.
"""

from .confusion import (
    CharConfusion,
    NgramConfusion,
    build_ngram_confusion,
    load_char_confusion,
    lookup,
)
from .decoder import DecodeConfig, decode, decode_corpus, decode_exhaustive
from .dictionary import (
    UserDictionary,
    asm_reward,
    build_ideal_dictionary,
    load_dictionary,
    rsm_spans,
)
from .ecm import CorruptionRecord, EcmConfig, corrupt_sentence, generate_corpus
from .errors import UdspellError
from .evaluate import EvalRecord, dataset_stats, sentence_metrics
from .lattice import (
    Candidate,
    CorrectionPath,
    Lattice,
    PruneConfig,
    candidate_path_count,
    greedy_path,
    make_lattice,
    parse_lattice,
    prune,
    serialize_lattice,
)
from .pinyin import PinyinSyllable, PinyinTable, decompose, phonetic_similar
from .scorer import ChannelModel, NgramModel, score_sentence, train

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "ChannelModel",
    "CharConfusion",
    "CorrectionPath",
    "CorruptionRecord",
    "DecodeConfig",
    "EcmConfig",
    "EvalRecord",
    "Lattice",
    "NgramConfusion",
    "NgramModel",
    "PinyinSyllable",
    "PinyinTable",
    "PruneConfig",
    "UdspellError",
    "UserDictionary",
    "asm_reward",
    "build_ideal_dictionary",
    "build_ngram_confusion",
    "candidate_path_count",
    "corrupt_sentence",
    "dataset_stats",
    "decode",
    "decode_corpus",
    "decode_exhaustive",
    "decompose",
    "generate_corpus",
    "greedy_path",
    "load_char_confusion",
    "load_dictionary",
    "lookup",
    "make_lattice",
    "parse_lattice",
    "phonetic_similar",
    "prune",
    "rsm_spans",
    "score_sentence",
    "sentence_metrics",
    "serialize_lattice",
    "train",
]
