import pytest
from hypothesis import given, strategies as st

from phonener.dataset import Corpus, Form, fixture_path
from phonener.g2p import (CasePolicy, MappingError, MappingTable, load_mapping,
                          load_mapping_file, transliterate_corpus, transliterate_word)
from phonener.tagging import WordLabeledSentence

CHINA = load_mapping("ch,t͡ʃ\ni,i\nn,n\na,a", "sin")


class TestLoadMapping:
    def test_four_rules(self):
        assert len(CHINA) == 4
        assert CHINA.lookup("ch") == "t͡ʃ"

    def test_duplicate_grapheme(self):
        with pytest.raises(MappingError, match="duplicate grapheme-sequence 'a'"):
            load_mapping("a,x\na,y", "xxx")

    def test_empty_file(self):
        assert len(load_mapping("", "xxx")) == 0

    def test_header_comments_and_blank_lines(self):
        table = load_mapping("Orth,Phon\n# comment\n\nb,b\n", "xxx")
        assert table.rules == (("b", "b"),)

    def test_malformed_line_reports_number(self):
        with pytest.raises(MappingError, match="line 3"):
            load_mapping("a,a\nb,b\nc\n", "xxx")

    def test_empty_grapheme(self):
        with pytest.raises(MappingError, match="line 1: empty"):
            load_mapping(",x", "xxx")

    def test_case_folding_detects_duplicates(self):
        with pytest.raises(MappingError):
            load_mapping("A,a\na,a", "xxx")
        table = load_mapping("A,a\na,b", "xxx", CasePolicy.PRESERVE)
        assert len(table) == 2

    def test_rules_sorted_longest_first(self):
        table = load_mapping("a,1\nabc,3\nab,2", "xxx")
        assert [g for g, _ in table.rules] == ["abc", "ab", "a"]

    def test_direct_construction_rejects_duplicates(self):
        with pytest.raises(MappingError):
            MappingTable("xxx", (("a", "x"), ("a", "y")))

    @pytest.mark.parametrize("lang", ["eng", "som", "sin"])
    def test_bundled_tables_load(self, lang):
        assert len(load_mapping_file(fixture_path(f"mappings/{lang}.csv"), lang)) > 20


class TestTransliterateWord:
    def test_china(self):
        assert transliterate_word(CHINA, "china").ipa == "t͡ʃina"

    def test_capitalised_input_folds(self):
        assert transliterate_word(CHINA, "China").ipa == "t͡ʃina"

    def test_empty(self):
        res = transliterate_word(CHINA, "")
        assert res.ipa == "" and res.unmapped == ()

    def test_greedy_longest_match(self):
        table = load_mapping("a,x\nab,y", "xxx")
        assert transliterate_word(table, "aab").ipa == "xy"

    def test_pass_through_and_drop(self):
        res = transliterate_word(CHINA, "chin7a")
        assert res.ipa == "t͡ʃin7a"
        assert res.unmapped == ((4, "7"),)
        dropped = transliterate_word(CHINA, "chin7a", "drop")
        assert dropped.ipa == "t͡ʃina"
        assert dropped.unmapped == ((4, "7"),)

    def test_all_dropped_gives_empty(self):
        assert transliterate_word(CHINA, "777", "drop").ipa == ""

    def test_pass_through_keeps_original_case(self):
        assert transliterate_word(CHINA, "X").ipa == "X"

    def test_whitespace_rejected(self):
        with pytest.raises(ValueError):
            transliterate_word(CHINA, "chi na")

    def test_sinhala_demo_table(self):
        table = load_mapping_file(fixture_path("mappings/sin.csv"), "sin")
        assert transliterate_word(table, "චීනය").ipa == "t͡ʃiːnaja"


WORDS = st.text(alphabet="abchin7.-", max_size=12)


def _consumed(table, word):
    """Sum of matched grapheme lengths, recomputed by replaying the match."""
    text, i, total = word.lower(), 0, 0
    while i < len(text):
        for k in range(len(text) - i, 0, -1):
            if table.lookup(text[i:i + k]) is not None:
                total += k
                i += k
                break
        else:
            i += 1
    return total


@given(WORDS)
def test_deterministic(word):
    assert transliterate_word(CHINA, word) == transliterate_word(CHINA, word)


@given(WORDS)
def test_consumption_accounts_for_every_character(word):
    res = transliterate_word(CHINA, word)
    assert _consumed(CHINA, word) + len(res.unmapped) == len(word)


@given(st.text(alphabet="abc", max_size=8), st.text(alphabet="xyz", max_size=8))
def test_concatenation_without_spanning_rules(u, v):
    # no grapheme mixes {a,b,c} with {x,y,z}, so no rule can span the boundary
    table = load_mapping("a,1\nab,2\nbc,3\nc,4\nb,5\nx,6\nxy,7\nz,8\ny,9", "xxx")
    joined = transliterate_word(table, u + v).ipa
    assert joined == transliterate_word(table, u).ipa + transliterate_word(table, v).ipa


class TestTransliterateCorpus:
    def _corpus(self, *sents):
        return Corpus("sin", "test", tuple(WordLabeledSentence(t, g) for t, g in sents))

    def test_empty_corpus(self):
        out, summary = transliterate_corpus(CHINA, self._corpus())
        assert len(out) == 0 and not summary
        assert out.form is Form.PHONEME

    def test_one_sentence(self):
        out, _ = transliterate_corpus(CHINA, self._corpus((["china"], ["B-LOC"])))
        assert out.sentences[0].tokens == ("t͡ʃina",)
        assert [str(t) for t in out.sentences[0].tags] == ["B-LOC"]

    def test_unmapped_digit_counted(self):
        out, summary = transliterate_corpus(CHINA, self._corpus((["7", "china"], ["O", "B-LOC"])))
        assert out.sentences[0].tokens[0] == "7"
        assert summary["7"] == 1

    def test_tags_bit_identical(self):
        corpus = self._corpus((["china", "x"], ["B-LOC", "O"]), (["a", "n"], ["B-PER", "I-PER"]))
        out, _ = transliterate_corpus(CHINA, corpus)
        assert [s.tags for s in out.sentences] == [s.tags for s in corpus.sentences]

    def test_drop_policy_empty_token_is_error(self):
        with pytest.raises(ValueError, match="empty"):
            transliterate_corpus(CHINA, self._corpus((["7"], ["O"])), "drop")
