"""BIO tag algebra: parsing, projection onto phoneme segments, span extraction."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

ENTITY_TYPES = ("PER", "ORG", "LOC")


class TagError(ValueError):
    pass


class SpanMode(str, Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True, order=True)
class Tag:
    kind: str
    entity_type: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("B", "I", "O"):
            raise TagError(f"unknown tag kind {self.kind!r}")
        if self.kind == "O":
            if self.entity_type is not None:
                raise TagError("O carries no entity type")
        elif self.entity_type not in ENTITY_TYPES:
            raise TagError(f"unknown entity type {self.entity_type!r}")

    @classmethod
    def parse(cls, text: str) -> "Tag":
        if text == "O":
            return OUTSIDE
        kind, sep, etype = text.partition("-")
        if not sep:
            raise TagError(f"cannot parse tag {text!r}")
        return cls(kind, etype)

    def __str__(self) -> str:
        return "O" if self.kind == "O" else f"{self.kind}-{self.entity_type}"


OUTSIDE = Tag("O")
TagLike = Union[Tag, str]


def as_tag(tag: TagLike) -> Tag:
    return tag if isinstance(tag, Tag) else Tag.parse(tag)


def as_tags(tags: Iterable[TagLike]) -> Tuple[Tag, ...]:
    return tuple(as_tag(t) for t in tags)


@dataclass(frozen=True)
class WordLabeledSentence:
    tokens: Tuple[str, ...]
    tags: Tuple[Tag, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "tags", as_tags(self.tags))
        if len(self.tokens) != len(self.tags):
            raise TagError(f"{len(self.tokens)} tokens but {len(self.tags)} tags")


@dataclass(frozen=True)
class SegmentLabeledSentence:
    segments: Tuple[str, ...]
    tags: Tuple[Tag, ...]
    word_boundaries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "tags", as_tags(self.tags))
        object.__setattr__(self, "word_boundaries", tuple(self.word_boundaries))
        if len(self.segments) != len(self.tags):
            raise TagError(f"{len(self.segments)} segments but {len(self.tags)} tags")
        if sum(self.word_boundaries) != len(self.segments):
            raise TagError("word_boundaries do not sum to the number of segments")

    def word_starts(self) -> Tuple[bool, ...]:
        """True at the first unit of every word."""
        starts: List[bool] = []
        for count in self.word_boundaries:
            starts.extend([True] + [False] * (count - 1))
        return tuple(starts)


class EntitySpan(NamedTuple):
    start: int
    end: int
    entity_type: str


class Violation(NamedTuple):
    position: int
    description: str


def project_tags(word_tags: Sequence[TagLike], segment_counts: Sequence[int]) -> List[Tag]:
    """Expand word-level tags to one tag per phoneme segment.

    Only the first segment of a ``B-X`` word keeps ``B-X``; every other segment
    of an entity word becomes ``I-X``.
    """
    if len(word_tags) != len(segment_counts):
        raise TagError(f"{len(word_tags)} word tags but {len(segment_counts)} segment counts")
    out: List[Tag] = []
    for i, (tag, count) in enumerate(zip(as_tags(word_tags), segment_counts)):
        if count < 1:
            raise TagError(f"word {i} has no segments (empty transliteration?)")
        if tag.kind == "B":
            out.append(tag)
            out.extend([Tag("I", tag.entity_type)] * (count - 1))
        else:
            out.extend([tag] * count)
    return out


def collapse_tags(unit_tags: Sequence[TagLike], segment_counts: Sequence[int]) -> List[Tag]:
    """Map unit-level tags back to words by taking each word's first unit."""
    unit_tags = as_tags(unit_tags)
    if sum(segment_counts) != len(unit_tags):
        raise TagError("segment counts do not cover the tag sequence")
    out, pos = [], 0
    for count in segment_counts:
        out.append(unit_tags[pos])
        pos += count
    return out


def validate_bio(tags: Sequence[TagLike]) -> List[Violation]:
    violations = []
    prev = OUTSIDE
    for i, tag in enumerate(as_tags(tags)):
        if tag.kind == "I" and (prev.kind == "O" or prev.entity_type != tag.entity_type):
            violations.append(Violation(i, f"{tag} follows {prev}"))
        prev = tag
    return violations


def extract_spans(tags: Sequence[TagLike], mode: SpanMode | str = SpanMode.LENIENT,
                  violations: Optional[List[Violation]] = None) -> List[EntitySpan]:
    """Return maximal entity spans (``end`` exclusive).

    In strict mode an ``I-X`` that does not continue an open ``X`` span is
    skipped; pass a list as ``violations`` to collect those positions. Lenient
    mode opens a new span there instead, as conlleval does.
    """
    mode = SpanMode(mode)
    tags = as_tags(tags)
    if violations is not None:
        violations.extend(validate_bio(tags))
    spans: List[EntitySpan] = []
    start, etype = None, None
    for i, tag in enumerate(tags):
        if tag.kind == "I" and start is not None and tag.entity_type == etype:
            continue
        if start is not None:
            spans.append(EntitySpan(start, i, etype))
            start, etype = None, None
        if tag.kind == "B" or (tag.kind == "I" and mode is SpanMode.LENIENT):
            start, etype = i, tag.entity_type
    if start is not None:
        spans.append(EntitySpan(start, len(tags), etype))
    return spans
