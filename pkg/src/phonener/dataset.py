"""WikiANN-style corpus I/O and the language registry.

Corpus files hold one ``token<TAB>tag`` pair per line with a blank line after
each sentence. Raw WikiANN dumps prefix tokens with a language code
(``en:Benjamin``); the prefix is stripped on read and checked against the
expected language.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .tagging import ENTITY_TYPES, Tag, TagError, WordLabeledSentence


class CorpusFormatError(ValueError):
    pass


class Split(str, Enum):
    TRAIN = "train"
    DEV = "dev"
    TEST = "test"


class Form(str, Enum):
    GRAPHEME = "grapheme"
    PHONEME = "phoneme"


# ISO 639-1 (or WikiANN) prefixes for registry languages that have one.
PREFIX_ALIASES = {
    "en": "eng", "si": "sin", "so": "som", "mi": "mri", "qu": "quy", "ug": "uig",
    "rw": "kin", "eo": "epo", "km": "khm", "tk": "tuk", "am": "amh", "mt": "mlt",
    "or": "ori", "sa": "san", "ia": "ina", "gn": "grn", "be": "bel", "ku": "kur",
    "sd": "snd", "tg": "tgk", "yo": "yor", "mr": "mar", "jv": "jav", "ur": "urd",
    "ms": "msa", "hr": "hrv", "ml": "mal", "te": "tel", "uz": "uzb", "pa": "pan",
    "ky": "kir", "ko": "kor", "es": "spa",
}
_PREFIX_RE = re.compile(r"^([a-z]{2,3}):(.+)$")


@dataclass(frozen=True)
class Corpus:
    lang: str
    split: Split
    sentences: Tuple[WordLabeledSentence, ...]
    form: Form = Form.GRAPHEME

    def __post_init__(self):
        object.__setattr__(self, "split", Split(self.split))
        object.__setattr__(self, "form", Form(self.form))
        object.__setattr__(self, "sentences", tuple(self.sentences))
        for i, sent in enumerate(self.sentences):
            if not sent.tokens:
                raise CorpusFormatError(f"sentence {i} is empty")

    def __len__(self) -> int:
        return len(self.sentences)


def _strip_prefix(token: str, lang: str, lineno: int) -> str:
    m = _PREFIX_RE.match(token)
    if not m:
        return token
    prefix, rest = m.groups()
    code = PREFIX_ALIASES.get(prefix, prefix)
    if code == lang:
        return rest
    if prefix in PREFIX_ALIASES or prefix in _known_codes():
        raise CorpusFormatError(
            f"line {lineno}: token prefix {prefix!r} does not match language {lang!r}")
    return token


def parse_corpus(text: str, lang: str, split: Split | str = Split.TEST,
                 form: Form | str = Form.GRAPHEME) -> Corpus:
    sentences: List[WordLabeledSentence] = []
    tokens: List[str] = []
    tags: List[Tag] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip():
            if tokens:
                sentences.append(WordLabeledSentence(tuple(tokens), tuple(tags)))
                tokens, tags = [], []
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise CorpusFormatError(
                f"line {lineno}: expected token<TAB>tag, got {len(fields)} field(s)")
        try:
            tag = Tag.parse(fields[1])
        except TagError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        tokens.append(_strip_prefix(fields[0], lang, lineno))
        tags.append(tag)
    if tokens:
        sentences.append(WordLabeledSentence(tuple(tokens), tuple(tags)))
    return Corpus(lang, split, tuple(sentences), form)


def read_corpus(path: str | Path, lang: str, split: Split | str = Split.TEST,
                form: Form | str = Form.GRAPHEME) -> Corpus:
    try:
        return parse_corpus(Path(path).read_text(encoding="utf-8"), lang, split, form)
    except CorpusFormatError as exc:
        raise CorpusFormatError(f"{path}: {exc}") from None


def write_corpus(corpus: Corpus) -> str:
    lines: List[str] = []
    for sent in corpus.sentences:
        for tok, tag in zip(sent.tokens, sent.tags):
            if not tok or any(c in tok for c in "\t\n\r"):
                raise CorpusFormatError(f"token {tok!r} cannot be serialized")
            lines.append(f"{tok}\t{tag}")
        lines.append("")
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class CorpusStats:
    sentences: int
    tokens: int
    entities: Dict[str, int]


def corpus_stats(corpus: Corpus) -> CorpusStats:
    entities = dict.fromkeys(ENTITY_TYPES, 0)
    tokens = 0
    for sent in corpus.sentences:
        tokens += len(sent.tokens)
        for tag in sent.tags:
            if tag.kind == "B":
                entities[tag.entity_type] += 1
    return CorpusStats(len(corpus.sentences), tokens, entities)


# --------------------------------------------------------------------------
# Language registry
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LanguageProfile:
    code: str
    script: str
    seen_by: FrozenSet[str] = frozenset()
    split_sizes: Optional[Tuple[int, int, int]] = field(default=None, compare=False)

    def __post_init__(self):
        seen = frozenset(self.seen_by)
        if not seen <= {"B", "X"}:
            raise ValueError(f"seen_by must be a subset of {{B, X}}, got {sorted(seen)}")
        object.__setattr__(self, "seen_by", seen)

    @property
    def script_class(self) -> str:
        return script_class(self.script)


def script_class(script: str) -> str:
    return "Latin" if script == "Latn" else "non-Latin"


@dataclass(frozen=True)
class CaseGrouping:
    case1: FrozenSet[str]
    case2: FrozenSet[str]
    case3: FrozenSet[str]

    def as_dict(self) -> Dict[str, FrozenSet[str]]:
        return {"case1": self.case1, "case2": self.case2, "case3": self.case3}

    def case_of(self, code: str) -> Optional[str]:
        for name, members in self.as_dict().items():
            if code in members:
                return name
        return None


_TRUE = {"1", "true", "yes", "y"}
_FALSE = {"0", "false", "no", "n", ""}


def _flag(value: str, lineno: int) -> bool:
    v = value.strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ValueError(f"line {lineno}: expected a boolean flag, got {value!r}")


def _size(value: str) -> int:
    v = value.strip().lower()
    return int(float(v[:-1]) * 1000) if v.endswith("k") else int(v)


def parse_registry(text: str) -> List[LanguageProfile]:
    """Parse ``code,script,seen_by_B,seen_by_X[,train,dev,test]`` lines."""
    profiles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.lower().startswith("code,"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) not in (4, 7):
            raise ValueError(f"line {lineno}: expected 4 or 7 fields, got {len(fields)}")
        seen = {name for name, val in zip("BX", fields[2:4]) if _flag(val, lineno)}
        sizes = None
        if len(fields) == 7 and all(fields[4:]):
            sizes = tuple(_size(v) for v in fields[4:])
        profiles.append(LanguageProfile(fields[0], fields[1], frozenset(seen), sizes))
    return profiles


def load_registry(path: str | Path | None = None) -> List[LanguageProfile]:
    """Load a registry file, or the bundled one transcribed from the WikiANN
    benchmark tables when ``path`` is None."""
    if path is None:
        text = resources.files("phonener.data").joinpath("registry.csv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_registry(text)


_KNOWN: Optional[FrozenSet[str]] = None


def _known_codes() -> FrozenSet[str]:
    global _KNOWN
    if _KNOWN is None:
        _KNOWN = frozenset(p.code for p in load_registry())
    return _KNOWN


def registry_index(registry: Sequence[LanguageProfile]) -> Dict[str, LanguageProfile]:
    index: Dict[str, LanguageProfile] = {}
    for prof in registry:
        if prof.code in index:
            raise ValueError(f"duplicate language code {prof.code!r} in registry")
        index[prof.code] = prof
    return index


def compute_cases(registry: Iterable[LanguageProfile]) -> CaseGrouping:
    """Partition languages by which model families saw them in pre-training.

    case1: seen by neither; case2: phoneme model only; case3: grapheme
    baselines only. Languages seen by both belong to no case.
    """
    index = registry_index(list(registry))
    langs = set(index)
    base = {c for c, p in index.items() if "B" in p.seen_by}
    phon = {c for c, p in index.items() if "X" in p.seen_by}
    return CaseGrouping(
        case1=frozenset(langs - (base | phon)),
        case2=frozenset((langs & phon) - base),
        case3=frozenset((langs & base) - phon),
    )


def fixture_path(name: str) -> Path:
    """Path of a file bundled under ``phonener/data``."""
    return Path(str(resources.files("phonener.data").joinpath(name)))
