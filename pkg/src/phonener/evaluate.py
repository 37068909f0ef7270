"""Span-level scoring and per-language / per-group reporting.

Scores are percentages. Group spread is the sample standard deviation
(divisor n - 1), which is the convention the published benchmark tables use.
"""
from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .dataset import CaseGrouping, LanguageProfile, registry_index
from .tagging import SpanMode, TagLike, extract_spans

SCRIPT_CLASSES = ("Latin", "non-Latin")


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_pr(cls, precision: float, recall: float) -> "ScoreTriple":
        denom = precision + recall
        return cls(precision, recall, 2 * precision * recall / denom if denom > 0 else 0.0)

    @classmethod
    def f1_only(cls, f1: float) -> "ScoreTriple":
        """A published score where only F1 is known."""
        return cls(math.nan, math.nan, float(f1))


@dataclass(frozen=True)
class SpanCounts:
    correct: int
    predicted: int
    gold: int

    def score(self) -> ScoreTriple:
        p = 100.0 * self.correct / self.predicted if self.predicted else 0.0
        r = 100.0 * self.correct / self.gold if self.gold else 0.0
        return ScoreTriple.from_pr(p, r)


def span_counts(gold: Sequence[Sequence[TagLike]], pred: Sequence[Sequence[TagLike]],
                mode: SpanMode | str = SpanMode.LENIENT) -> SpanCounts:
    if len(gold) != len(pred):
        raise ValueError(f"{len(gold)} gold sentences but {len(pred)} predicted")
    correct = n_pred = n_gold = 0
    for i, (g, p) in enumerate(zip(gold, pred)):
        if len(g) != len(p):
            raise ValueError(f"sentence {i}: {len(g)} gold tags but {len(p)} predicted")
        g_spans = set(extract_spans(g, mode))
        p_spans = set(extract_spans(p, mode))
        correct += len(g_spans & p_spans)
        n_pred += len(p_spans)
        n_gold += len(g_spans)
    return SpanCounts(correct, n_pred, n_gold)


def span_f1(gold: Sequence[Sequence[TagLike]], pred: Sequence[Sequence[TagLike]],
            mode: SpanMode | str = SpanMode.LENIENT) -> ScoreTriple:
    """Micro-averaged exact-match span precision, recall and F1 (in %)."""
    return span_counts(gold, pred, mode).score()


def aggregate(f1_by_language: Mapping[str, float], require_std: bool = True
              ) -> Tuple[float, Optional[float]]:
    """Mean and sample standard deviation of per-language F1.

    With ``require_std=False`` a single language yields ``std=None`` instead
    of raising.
    """
    values = [float(v) for v in f1_by_language.values()]
    if not values:
        raise ValueError("aggregate needs at least one language")
    if len(values) < 2:
        if require_std:
            raise ValueError("standard deviation needs at least two languages")
        return statistics.fmean(values), None
    return statistics.fmean(values), statistics.stdev(values)


def fmt2(value: Optional[float]) -> str:
    """Two-decimal display with half-up rounding; missing values print as '-'."""
    if value is None or math.isnan(value):
        return "-"
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class GroupScore:
    avg: float
    std: Optional[float]
    members: Tuple[str, ...]


@dataclass
class EvalReport:
    per_language: Dict[str, ScoreTriple] = field(default_factory=dict)
    groups: Dict[str, GroupScore] = field(default_factory=dict)
    script_breakdown: Dict[str, List[float]] = field(default_factory=dict)
    metadata: Dict[str, str] = field(default_factory=dict)

    def to_tsv(self) -> str:
        lines = ["language\tP\tR\tF1"]
        for code, s in self.per_language.items():
            lines.append(f"{code}\t{fmt2(s.precision)}\t{fmt2(s.recall)}\t{fmt2(s.f1)}")
        if self.groups:
            lines.append("")
            lines.append("group\tAVG\tSTD\tN")
            for name, g in self.groups.items():
                lines.append(f"{name}\t{fmt2(g.avg)}\t{fmt2(g.std)}\t{len(g.members)}")
        if self.metadata:
            lines.append("")
            lines.extend(f"# {k}={v}" for k, v in self.metadata.items())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def num(x):
            return None if x is None or math.isnan(x) else x

        payload = {
            "metadata": self.metadata,
            "per_language": [
                {"language": c, "precision": num(s.precision), "recall": num(s.recall),
                 "f1": s.f1} for c, s in self.per_language.items()],
            "groups": [
                {"group": n, "avg": g.avg, "std": g.std, "members": list(g.members)}
                for n, g in self.groups.items()],
            "script_breakdown": self.script_breakdown,
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


ScoreLike = Union[ScoreTriple, float]


def build_report(scores: Mapping[str, ScoreLike], cases: CaseGrouping,
                 registry: Sequence[LanguageProfile],
                 metadata: Optional[Mapping[str, str]] = None) -> EvalReport:
    """Assemble per-language rows plus case-group and script-class aggregates.

    Rows and group members follow registry order. Groups with no scored
    language are omitted.
    """
    index = registry_index(registry)
    unknown = sorted(set(scores) - set(index))
    if unknown:
        raise ValueError(f"languages not in registry: {', '.join(unknown)}")
    report = EvalReport(metadata=dict(metadata or {}))
    if not scores:
        return report
    order = [p.code for p in registry if p.code in scores]
    for code in order:
        s = scores[code]
        report.per_language[code] = s if isinstance(s, ScoreTriple) else ScoreTriple.f1_only(s)

    def add_group(name: str, members: List[str]) -> None:
        if members:
            avg, std = aggregate({c: report.per_language[c].f1 for c in members},
                                 require_std=False)
            report.groups[name] = GroupScore(avg, std, tuple(members))

    for name, members in cases.as_dict().items():
        add_group(name, [c for c in order if c in members])
    for cls in SCRIPT_CLASSES:
        members = [c for c in order if index[c].script_class == cls]
        add_group(cls, members)
        if members:
            report.script_breakdown[cls] = [report.per_language[c].f1 for c in members]
    return report
