import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udspell.dictionary import (
    AhoCorasick,
    UserDictionary,
    asm_reward,
    build_ideal_dictionary,
    error_phrases,
    load_dictionary,
    rsm_spans,
)
from udspell.errors import DictionaryError

ALPHA = "甲乙丙丁戊"

terms_strategy = st.sets(
    st.text(alphabet=ALPHA, min_size=2, max_size=4), min_size=0, max_size=6
)
text_strategy = st.text(alphabet=ALPHA, min_size=1, max_size=12)


def naive_spans(text, terms):
    found = set()
    for term in terms:
        start = 0
        while True:
            i = text.find(term, start)
            if i < 0:
                break
            found.add((i, i + len(term)))
            start = i + 1
    return found


class TestLoadDictionary:
    def test_load_terms(self):
        dic = load_dictionary(["人民检察院", "审查案件"])
        assert len(dic) == 2 and "审查案件" in dic

    def test_empty_file(self):
        dic = load_dictionary([])
        assert len(dic) == 0

    def test_duplicates_collapse(self):
        dic = load_dictionary(["案件", "案件", "案件"])
        assert len(dic) == 1

    def test_short_terms_rejected_with_warning(self, caplog):
        dic = load_dictionary(["一", "案件"])
        assert len(dic) == 1

    def test_comments_and_blanks_ignored(self):
        dic = load_dictionary(["# c", "", "案件"])
        assert len(dic) == 1

    def test_direct_short_term_is_error(self):
        with pytest.raises(DictionaryError):
            UserDictionary({"一"})


class TestRsmSpans:
    def test_single_occurrence(self):
        dic = UserDictionary({"审查案件"})
        spans = rsm_spans("依法审查案件", dic)
        assert [(m.start, m.end, m.term) for m in spans] == [(2, 6, "审查案件")]

    def test_no_match(self):
        dic = UserDictionary({"审查案件"})
        assert rsm_spans("人民法院", dic) == []

    def test_overlapping_terms_both_reported(self):
        dic = UserDictionary({"案件", "审查案件"})
        spans = rsm_spans("依法审查案件", dic)
        assert {(m.start, m.end) for m in spans} == {(2, 6), (4, 6)}

    def test_empty_input_raises(self):
        with pytest.raises(DictionaryError):
            rsm_spans("", UserDictionary({"案件"}))

    @given(text_strategy, terms_strategy)
    @settings(max_examples=200, deadline=None)
    def test_matches_naive_substring_scan(self, text, terms):
        dic = UserDictionary(terms)
        assert {(m.start, m.end) for m in rsm_spans(text, dic)} == naive_spans(text, terms)


class TestAutomaton:
    @given(text_strategy, terms_strategy)
    @settings(max_examples=200, deadline=None)
    def test_incremental_equals_whole_string(self, text, terms):
        ac = AhoCorasick(terms)
        incremental = []
        state = 0
        for j, ch in enumerate(text):
            state = ac.step(state, ch)
            for ln in ac.end_lengths(state):
                incremental.append((j - ln + 1, j + 1))
        assert sorted(incremental) == sorted(ac.iter_matches(text))
        assert set(incremental) == naive_spans(text, terms)


class TestAsmReward:
    def test_flagship_case(self):
        dic = UserDictionary({"人民检察院"})
        inp = "人民监查员依法审查案件"
        path = "人民检察院依法审查案件"
        assert asm_reward(inp, path, dic) == 5

    def test_identity_path_scores_zero(self):
        dic = UserDictionary({"人民检察院"})
        inp = "人民检察院依法审查案件"
        assert asm_reward(inp, inp, dic) == 0

    def test_unaltered_occurrence_contributes_nothing(self):
        dic = UserDictionary({"审查案件"})
        inp = "人民监查员依法审查案件"
        path = "人民检察院依法审查案件"  # term occurs only over unaltered tail
        assert asm_reward(inp, path, dic) == 0

    def test_altered_count_mode(self):
        dic = UserDictionary({"人民检察院"})
        inp = "人民监查员依法审查案件"
        path = "人民检察院依法审查案件"
        assert asm_reward(inp, path, dic, count_mode="altered") == 3

    def test_overlaps_not_double_counted(self):
        dic = UserDictionary({"甲乙丙", "乙丙丁"})
        inp = "甲乙乙丁"
        path = "甲乙丙丁"
        # both terms occur, both altered (position 2); union covers 4 positions
        assert asm_reward(inp, path, dic) == 4

    def test_monotone_in_dictionary(self):
        rng = random.Random(0)
        for _ in range(100):
            inp = "".join(rng.choice(ALPHA) for _ in range(8))
            path = "".join(
                c if rng.random() < 0.7 else rng.choice(ALPHA) for c in inp
            )
            terms = {"".join(rng.choice(ALPHA) for _ in range(2)) for _ in range(3)}
            extra = terms | {"".join(rng.choice(ALPHA) for _ in range(3))}
            assert asm_reward(inp, path, UserDictionary(extra)) >= asm_reward(
                inp, path, UserDictionary(terms)
            )

    def test_length_mismatch_raises(self):
        with pytest.raises(DictionaryError):
            asm_reward("甲乙", "甲", UserDictionary({"甲乙"}))

    def test_unknown_mode_raises(self):
        with pytest.raises(DictionaryError):
            asm_reward("甲乙", "甲乙", UserDictionary({"甲乙"}), count_mode="bogus")


class TestIdealDictionary:
    PAIRS = [
        ("人民监查员办事", "人民检察院办事"),
        ("依法审察案件好", "依法审查案件好"),
        ("一年一年又一年", "一年一年又一年"),
    ]

    def test_proportion_zero_is_empty(self):
        dic = build_ideal_dictionary(self.PAIRS, 0.0, seed=1)
        assert len(dic) == 0

    def test_proportion_one_is_all_phrases(self):
        phrases = error_phrases(self.PAIRS)
        dic = build_ideal_dictionary(self.PAIRS, 1.0, seed=1)
        assert dic.terms == frozenset(phrases)
        assert phrases  # the fixture must actually produce phrases

    def test_half_proportion_reproducible(self):
        # ten pairs whose single error character differs, yielding ten phrases
        pairs = [
            (f"甲乙口丙丁", f"甲乙{x}丙丁")
            for x in "戊己庚辛壬癸子丑寅卯"
        ]
        phrases = error_phrases(pairs)
        assert len(phrases) == 10
        a = build_ideal_dictionary(pairs, 0.5, seed=7)
        b = build_ideal_dictionary(pairs, 0.5, seed=7)
        assert len(a) == 5 and a.terms == b.terms

    def test_phrases_contain_the_error(self):
        for phrase in error_phrases(self.PAIRS):
            assert len(phrase) >= 2
            assert any(phrase in target for _, target in self.PAIRS)

    def test_bad_proportion_raises(self):
        with pytest.raises(DictionaryError):
            build_ideal_dictionary(self.PAIRS, 1.5)
