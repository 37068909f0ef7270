"""
From spelling to phoneme segments
=================================

Turn a word-labelled sentence into IPA, split it into phoneme segments and
carry the entity tags down to the segment level.
"""
from phonener import load_mapping_file, segment_ipa, transliterate_word
from phonener.dataset import fixture_path
from phonener.tagging import Tag, project_tags

# A mapping table is a two-column CSV of spelling -> IPA rewrite rules.
eng = load_mapping_file(fixture_path("mappings/eng.csv"), "eng")
sin = load_mapping_file(fixture_path("mappings/sin.csv"), "sin")

# Rules apply greedily, longest spelling first.
for table, word in [(eng, "Benjamin"), (eng, "China"), (sin, "චීනය")]:
    ipa = transliterate_word(table, word).ipa
    print(f"{word:>10} -> {ipa:<12} {'|'.join(segment_ipa(ipa).segments)}")

# Diacritics and length marks stay on their base letter.
print(segment_ipa("tʰaːkʷ").segments)

# A one-word person name becomes B-PER followed by I-PER on every other segment.
segments = segment_ipa("bɛnd͡ʒəmən").segments
tags = project_tags([Tag("B", "PER")], [len(segments)])
for seg, tag in zip(segments, tags):
    print(f"{seg}\t{tag}")
