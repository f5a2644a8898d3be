import random

import pytest

from udspell.confusion import CharConfusion, NgramConfusion, default_char_confusion
from udspell.lattice import Candidate, make_lattice
from udspell.pinyin import default_table

VOCAB = [chr(ord("一") + i) for i in range(20)]


def random_lattice(rng: random.Random, max_n=6, max_k=3, vocab=None, lattice_id="L"):
    """Random valid lattice; the input char is usually the top candidate."""
    vocab = vocab or VOCAB
    n = rng.randint(1, max_n)
    input_chars = []
    positions = []
    for _ in range(n):
        k = rng.randint(1, max_k)
        toks = rng.sample(vocab, k)
        lps = sorted((rng.uniform(-14.0, -0.0005) for _ in range(k)), reverse=True)
        positions.append([Candidate(t, lp) for t, lp in zip(toks, lps)])
        input_chars.append(toks[0] if rng.random() < 0.7 else rng.choice(vocab))
    return make_lattice(lattice_id, "".join(input_chars), positions)


@pytest.fixture(scope="session")
def pinyin_table():
    return default_table()


@pytest.fixture(scope="session")
def char_confusion(pinyin_table):
    return default_char_confusion(pinyin_table)


def make_dense_confusion():
    """Synthetic confusion over 30 chars where every char has P and M candidates."""
    chars = [chr(ord("一") + i) for i in range(30)]
    cc = CharConfusion()
    for i, c in enumerate(chars):
        cc.phonetic[c] = {chars[(i + 1) % 30], chars[(i + 2) % 30]}
        cc.morphological[c] = {chars[(i + 3) % 30]}
    ng = NgramConfusion()
    ng.add_pair(chars[0] + chars[1], chars[5] + chars[6])
    ng.add_pair(chars[2] + chars[3] + chars[4], chars[7] + chars[8] + chars[9])
    return chars, cc, ng


@pytest.fixture
def dense_confusion():
    return make_dense_confusion()
