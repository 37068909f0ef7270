import pytest
from hypothesis import given, strategies as st

from phonener.segment import SegmentationError, SegmenterConfig, segment_ipa

BASES = list("abdeɛimnptkʃʒəŋɡsrlʋjiuo")
MARKS = ["͡", "̃", "̩", "̥"]  # tie bar, tilde, syllabic, voiceless
MODS = list("ʰʷʲːˑ")


def test_benjamin_nine_segments():
    seg = segment_ipa("bɛnd͡ʒəmən")
    assert seg.segments == ("b", "ɛ", "n", "d͡", "ʒ", "ə", "m", "ə", "n")
    assert len(seg) == 9


def test_empty():
    assert segment_ipa("").segments == ()


def test_join_tie_bar():
    cfg = SegmenterConfig(join_tie_bar=True)
    assert segment_ipa("t͡ʃina", cfg).segments == ("t͡ʃ", "i", "n", "a")
    assert len(segment_ipa("bɛnd͡ʒəmən", cfg)) == 8


def test_modifiers_attach():
    assert segment_ipa("tʰaːkʷ").segments == ("tʰ", "aː", "kʷ")


def test_modifier_set_is_configurable():
    cfg = SegmenterConfig(attach_modifiers=frozenset("ː"))
    assert segment_ipa("tʰaː", cfg).segments == ("t", "ʰ", "aː")


def test_leading_mark_is_error():
    with pytest.raises(SegmentationError, match="dangling combining mark at position 0"):
        segment_ipa("̃a")


def test_whitespace_rejected():
    with pytest.raises(SegmentationError):
        segment_ipa("a b")


def test_base_letter_not_allowed_as_modifier():
    with pytest.raises(ValueError):
        SegmenterConfig(attach_modifiers=frozenset("a"))


ipa_strings = st.lists(
    st.tuples(st.sampled_from(BASES), st.lists(st.sampled_from(MARKS + MODS), max_size=3)),
    max_size=15,
).map(lambda parts: "".join(b + "".join(m) for b, m in parts))


@given(ipa_strings, st.booleans())
def test_lossless_and_nonempty(ipa, join):
    seg = segment_ipa(ipa, SegmenterConfig(join_tie_bar=join))
    assert "".join(seg.segments) == ipa
    assert all(seg.segments)


@given(ipa_strings, st.data())
def test_count_stable_under_added_mark(ipa, data):
    if not ipa:
        return
    n = len(segment_ipa(ipa))
    # insert a non-tie combining mark right after some segment's end
    segs = list(segment_ipa(ipa).segments)
    k = data.draw(st.integers(0, len(segs) - 1))
    mark = data.draw(st.sampled_from(["̃", "̩", "̥"]))
    segs[k] = segs[k] + mark
    assert len(segment_ipa("".join(segs))) == n


@given(ipa_strings)
def test_deterministic(ipa):
    assert segment_ipa(ipa) == segment_ipa(ipa)
