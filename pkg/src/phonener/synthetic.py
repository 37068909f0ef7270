"""Synthetic parallel corpora in two scripts that share one pronunciation.

The second script is a letter-for-letter substitution of lowercase Latin into
the Georgian block (U+10D0 onward), so no code point is shared. Because the
two mapping tables carry the same phonemes, both scripts transliterate to
identical IPA. This isolates the effect of the input representation on
cross-script transfer.
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .dataset import Corpus, Split
from .g2p import MappingTable
from .tagging import WordLabeledSentence

CIPHER_BASE = 0x10D0

LATIN_RULES: Tuple[Tuple[str, str], ...] = (
    ("ch", "t͡ʃ"), ("sh", "ʃ"), ("ng", "ŋ"), ("aa", "aː"), ("ii", "iː"), ("uu", "uː"),
    ("kh", "kʰ"), ("th", "tʰ"),
    ("a", "a"), ("b", "b"), ("c", "k"), ("d", "d"), ("e", "e"), ("f", "f"), ("g", "ɡ"),
    ("h", "h"), ("i", "i"), ("j", "d͡ʒ"), ("k", "k"), ("l", "l"), ("m", "m"), ("n", "n"),
    ("o", "o"), ("p", "p"), ("q", "q"), ("r", "r"), ("s", "s"), ("t", "t"), ("u", "u"),
    ("v", "v"), ("w", "w"), ("x", "x"), ("y", "j"), ("z", "z"),
)

PERSONS = ["benjamin", "marija", "ahmed hasan", "nelson mandela", "kofi anan", "ali mohamed",
           "sara konor", "ivan petrov", "chen wei", "amina yusuf", "juan garsia", "tanaka",
           "olga ivanova", "samir khan"]
LOCATIONS = ["china", "rusija", "london", "somalija", "kenija", "moskva", "kolombo",
             "beijing", "parij", "india", "tokijo", "nairobi", "lagos", "lima"]
ORGANIZATIONS = ["junaited neishons", "world bank", "red kros", "gugul", "bibisi",
                 "arsenal", "toyota", "nato", "unesko", "interpol", "fifa"]
TEMPLATES: Sequence[Sequence[str]] = (
    ("P", "was", "born", "in", "L"),
    ("P", "visited", "L", "last", "year"),
    ("P", "works", "for", "O"),
    ("the", "office", "of", "O", "is", "in", "L"),
    ("L", "is", "a", "big", "country"),
    ("P", "and", "P", "met", "in", "L"),
    ("she", "moved", "to", "L", "with", "P"),
    ("he", "joined", "O", "in", "may"),
    ("the", "capital", "of", "L", "is", "L"),
    ("O", "is", "based", "in", "L"),
    ("people", "from", "L", "love", "the", "city"),
    ("mister", "P", "spoke", "for", "O"),
)


def cipher(text: str) -> str:
    """Map lowercase ASCII letters into the Georgian block; other characters pass."""
    return "".join(chr(CIPHER_BASE + string.ascii_lowercase.index(c))
                   if c in string.ascii_lowercase else c for c in text)


def latin_table(lang: str = "lat") -> MappingTable:
    return MappingTable(lang, LATIN_RULES)


def cipher_table(lang: str = "cip") -> MappingTable:
    return MappingTable(lang, tuple((cipher(g), p) for g, p in LATIN_RULES))


def _sentence(rng: random.Random) -> WordLabeledSentence:
    pools: Dict[str, Tuple[List[str], str]] = {
        "P": (PERSONS, "PER"), "L": (LOCATIONS, "LOC"), "O": (ORGANIZATIONS, "ORG")}
    tokens, tags = [], []
    for slot in rng.choice(TEMPLATES):
        if slot in pools:
            names, etype = pools[slot]
            for i, word in enumerate(rng.choice(names).split()):
                tokens.append(word)
                tags.append(("B-" if i == 0 else "I-") + etype)
        else:
            tokens.append(slot)
            tags.append("O")
    return WordLabeledSentence(tuple(tokens), tuple(tags))


def encipher_corpus(corpus: Corpus, lang: str = "cip") -> Corpus:
    sents = [WordLabeledSentence(tuple(cipher(t) for t in s.tokens), s.tags)
             for s in corpus.sentences]
    return Corpus(lang, corpus.split, tuple(sents), corpus.form)


@dataclass(frozen=True)
class BilingualFixture:
    train: Corpus          # Latin script
    test_latin: Corpus
    test_cipher: Corpus    # same sentences as test_latin, disjoint script
    latin: MappingTable
    cipher: MappingTable


def bilingual_fixture(seed: int = 0, n_train: int = 120, n_test: int = 60) -> BilingualFixture:
    rng = random.Random(seed)
    train = Corpus("lat", Split.TRAIN, tuple(_sentence(rng) for _ in range(n_train)))
    test = Corpus("lat", Split.TEST, tuple(_sentence(rng) for _ in range(n_test)))
    return BilingualFixture(train, test, encipher_corpus(test), latin_table(), cipher_table())
