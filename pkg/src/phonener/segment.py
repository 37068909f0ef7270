"""Split IPA strings into phoneme segments.

A segment is one base character plus everything that decorates it: combining
marks (Unicode category Mn) and a configurable set of spacing modifier
letters such as aspiration or length. With the default configuration the tie
bar of an affricate stays on the first half, so ``d͡ʒ`` yields ``d͡`` and ``ʒ``.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import FrozenSet, Tuple

TIE_BARS = frozenset("͜͡")
DEFAULT_MODIFIERS = frozenset("ʰʷʲˠˤːˑ")


class SegmentationError(ValueError):
    pass


@dataclass(frozen=True)
class SegmenterConfig:
    attach_modifiers: FrozenSet[str] = DEFAULT_MODIFIERS
    join_tie_bar: bool = False

    def __post_init__(self):
        mods = frozenset(self.attach_modifiers)
        object.__setattr__(self, "attach_modifiers", mods)
        for ch in mods:
            if len(ch) != 1:
                raise ValueError(f"modifier must be a single character: {ch!r}")
            if unicodedata.category(ch) not in ("Lm", "Sk", "Mn"):
                raise ValueError(f"{ch!r} (U+{ord(ch):04X}) is a base letter, not a modifier")


@dataclass(frozen=True)
class SegmentedWord:
    ipa: str
    segments: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.segments)


def _is_mark(ch: str) -> bool:
    return unicodedata.category(ch) == "Mn"


def segment_ipa(ipa: str, config: SegmenterConfig | None = None) -> SegmentedWord:
    config = config or SegmenterConfig()
    if any(ch.isspace() for ch in ipa):
        raise SegmentationError(f"IPA text contains whitespace: {ipa!r}")
    if ipa and _is_mark(ipa[0]):
        raise SegmentationError("dangling combining mark at position 0")

    segments = []
    i, n = 0, len(ipa)
    while i < n:
        j = i + 1
        while j < n:
            ch = ipa[j]
            if _is_mark(ch) or ch in config.attach_modifiers:
                j += 1
                if config.join_tie_bar and ch in TIE_BARS and j < n and not _is_mark(ipa[j]):
                    j += 1  # pull in the second half; its own marks follow via the loop
                continue
            break
        segments.append(ipa[i:j])
        i = j
    return SegmentedWord(ipa, tuple(segments))


def segment_word(ipa: str, config: SegmenterConfig | None = None) -> Tuple[str, ...]:
    return segment_ipa(ipa, config).segments
