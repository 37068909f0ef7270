"""Rule-based grapheme-to-phoneme transliteration.

A :class:`MappingTable` holds grapheme -> IPA rewrite rules for one language.
Words are converted by a single greedy left-to-right pass that always consumes
the longest grapheme sequence matching at the current position.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Tuple

from .dataset import Corpus, Form
from .tagging import WordLabeledSentence

logger = logging.getLogger(__name__)


class MappingError(ValueError):
    """Raised for malformed mapping files."""


class CasePolicy(str, Enum):
    FOLD = "fold-to-lower"
    PRESERVE = "preserve"


class UnmappedPolicy(str, Enum):
    PASS_THROUGH = "pass-through"
    DROP = "drop"


@dataclass(frozen=True)
class MappingTable:
    lang: str
    rules: Tuple[Tuple[str, str], ...]
    case_policy: CasePolicy = CasePolicy.FOLD
    _lookup: Dict[str, str] = field(init=False, repr=False, compare=False)
    _max_len: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lookup: Dict[str, str] = {}
        for graph, phon in self.rules:
            if not graph:
                raise MappingError("empty grapheme-sequence")
            if graph in lookup:
                raise MappingError(f"duplicate grapheme-sequence {graph!r}")
            lookup[graph] = phon
        # Matching is by length, never by list position.
        ordered = tuple(sorted(self.rules, key=lambda r: (-len(r[0]), r[0])))
        object.__setattr__(self, "rules", ordered)
        object.__setattr__(self, "_lookup", lookup)
        object.__setattr__(self, "_max_len", max((len(g) for g in lookup), default=0))

    def __len__(self) -> int:
        return len(self.rules)

    def lookup(self, graph: str) -> str | None:
        return self._lookup.get(graph)


@dataclass(frozen=True)
class TransliterationResult:
    ipa: str
    unmapped: Tuple[Tuple[int, str], ...] = ()


def load_mapping(source: str, lang: str,
                 case_policy: CasePolicy | str = CasePolicy.FOLD) -> MappingTable:
    """Parse mapping-file text into a :class:`MappingTable`.

    One ``grapheme,phoneme`` rule per line. Blank lines and ``#`` comments are
    ignored and a leading ``Orth,Phon`` header is skipped. The phoneme side may
    be empty (a deletion rule). Errors carry the 1-based line number.
    """
    case_policy = CasePolicy(case_policy)
    rules: List[Tuple[str, str]] = []
    seen: Dict[str, int] = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not rules and not seen and line.lower() == "orth,phon":
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise MappingError(
                f"line {lineno}: expected 'grapheme,phoneme', got {raw!r}")
        graph, phon = parts[0].strip(), parts[1].strip()
        if not graph:
            raise MappingError(f"line {lineno}: empty grapheme-sequence")
        if case_policy is CasePolicy.FOLD:
            graph = graph.lower()
        if graph in seen:
            raise MappingError(
                f"line {lineno}: duplicate grapheme-sequence {graph!r} "
                f"(first defined on line {seen[graph]})")
        seen[graph] = lineno
        rules.append((graph, phon))
    return MappingTable(lang=lang, rules=tuple(rules), case_policy=case_policy)


def load_mapping_file(path: str | Path, lang: str,
                      case_policy: CasePolicy | str = CasePolicy.FOLD) -> MappingTable:
    return load_mapping(Path(path).read_text(encoding="utf-8"), lang, case_policy)


def transliterate_word(table: MappingTable, word: str,
                       unmapped_policy: UnmappedPolicy | str = UnmappedPolicy.PASS_THROUGH,
                       ) -> TransliterationResult:
    unmapped_policy = UnmappedPolicy(unmapped_policy)
    if any(ch.isspace() for ch in word):
        raise ValueError(f"word contains whitespace: {word!r}")
    text = word.lower() if table.case_policy is CasePolicy.FOLD else word
    # lower() can change length for a few code points; only then emit folded chars
    original = word if len(text) == len(word) else text

    out: List[str] = []
    unmapped: List[Tuple[int, str]] = []
    i, n = 0, len(text)
    while i < n:
        for k in range(min(table._max_len, n - i), 0, -1):
            phon = table.lookup(text[i:i + k])
            if phon is not None:
                out.append(phon)
                i += k
                break
        else:
            unmapped.append((i, original[i]))
            if unmapped_policy is UnmappedPolicy.PASS_THROUGH:
                out.append(original[i])
            i += 1
    return TransliterationResult(ipa="".join(out), unmapped=tuple(unmapped))


def transliterate_corpus(table: MappingTable, corpus: Corpus,
                         unmapped_policy: UnmappedPolicy | str = UnmappedPolicy.PASS_THROUGH,
                         ) -> Tuple[Corpus, Counter]:
    """Convert every token of ``corpus`` to IPA; tags are left untouched.

    Returns the phoneme-form corpus and a counter of unmapped characters.
    A token that transliterates to the empty string (possible only under the
    ``drop`` policy) is an error, since it would leave a tag with no units.
    """
    summary: Counter = Counter()
    sentences = []
    for sent in corpus.sentences:
        tokens = []
        for tok in sent.tokens:
            res = transliterate_word(table, tok, unmapped_policy)
            summary.update(ch for _, ch in res.unmapped)
            if not res.ipa:
                raise ValueError(f"token {tok!r} transliterates to an empty string")
            tokens.append(res.ipa)
        sentences.append(WordLabeledSentence(tuple(tokens), sent.tags))
    if summary:
        logger.info("%s: %d unmapped characters (%d distinct)",
                    corpus.lang, sum(summary.values()), len(summary))
    return Corpus(corpus.lang, corpus.split, tuple(sentences), Form.PHONEME), summary
