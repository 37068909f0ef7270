"""Experiment configuration: a flat file of ``dotted.key = value`` lines.

Recognised keys and defaults::

    train_lang                 = eng
    eval_langs                 = (required) comma-separated ISO 639-3 codes
    input_form                 = phoneme            # or grapheme
    output_dir                 = out
    registry                   = (bundled registry)
    corpus.<lang>.train        = path               # needed for train_lang
    corpus.<lang>.test         = path               # needed for every eval lang
    mapping.<lang>             = path               # needed in phoneme form
    mapping.<lang>.case_policy = fold-to-lower      # or preserve
    g2p.unmapped_policy        = pass-through       # or drop
    segmenter.attach_modifiers = ʰʷʲˠˤːˑ
    segmenter.join_tie_bar     = false
    features.window            = 2
    features.use_unit_identity = true
    features.use_affixes       = true
    features.use_bigrams       = true
    features.use_word_boundary = false
    training.epochs            = 10
    training.learning_rate     = 1.0
    training.l2_lambda         = 0.0001
    training.batch_size        = 32
    training.seed              = 0
    scoring.mode               = lenient            # or strict
    scoring.level              = unit               # or word

Relative paths are resolved against the config file's directory. A value of
the form ``bundled:<name>`` points at a file shipped in ``phonener/data``.
Unknown keys are errors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Optional, Tuple

from .dataset import Form, fixture_path
from .g2p import CasePolicy, UnmappedPolicy
from .segment import DEFAULT_MODIFIERS, SegmenterConfig
from .tagger import FeatureTemplate, TrainingConfig
from .tagging import SpanMode


class ConfigError(ValueError):
    pass


_DYNAMIC = [
    re.compile(r"^corpus\.([a-z]{2,3})\.(train|dev|test)$"),
    re.compile(r"^mapping\.([a-z]{2,3})$"),
    re.compile(r"^mapping\.([a-z]{2,3})\.case_policy$"),
]


@dataclass(frozen=True)
class ExperimentConfig:
    eval_langs: Tuple[str, ...]
    train_lang: str = "eng"
    input_form: Form = Form.PHONEME
    output_dir: Path = Path("out")
    registry: Optional[Path] = None
    corpora: Dict[Tuple[str, str], Path] = field(default_factory=dict)
    mappings: Dict[str, Path] = field(default_factory=dict)
    case_policies: Dict[str, CasePolicy] = field(default_factory=dict)
    unmapped_policy: UnmappedPolicy = UnmappedPolicy.PASS_THROUGH
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)
    template: FeatureTemplate = field(default_factory=FeatureTemplate)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    scoring_mode: SpanMode = SpanMode.LENIENT
    scoring_level: str = "unit"

    def __post_init__(self):
        if not self.eval_langs:
            raise ConfigError("eval_langs must list at least one language")
        if self.scoring_level not in ("unit", "word"):
            raise ConfigError(f"scoring.level must be unit or word, got {self.scoring_level!r}")
        if self.input_form is Form.PHONEME:
            missing = [l for l in (self.train_lang, *self.eval_langs) if l not in self.mappings]
            if missing:
                raise ConfigError("phoneme form needs mapping.<lang> for: "
                                  + ", ".join(dict.fromkeys(missing)))

    def corpus_path(self, lang: str, split: str) -> Path:
        try:
            return self.corpora[(lang, split)]
        except KeyError:
            raise ConfigError(f"no corpus.{lang}.{split} configured") from None

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        """Apply CLI overrides: ``seed``, ``output_dir``, ``input_form``."""
        cfg = self
        if kwargs.get("seed") is not None:
            cfg = replace(cfg, training=replace(cfg.training, seed=kwargs["seed"]))
        if kwargs.get("output_dir") is not None:
            cfg = replace(cfg, output_dir=Path(kwargs["output_dir"]))
        if kwargs.get("input_form") is not None:
            cfg = replace(cfg, input_form=Form(kwargs["input_form"]))
        return cfg


def _bool(key: str, value: str) -> bool:
    v = value.lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _path(value: str, base: Path) -> Path:
    if value.startswith("bundled:"):
        return fixture_path(value[len("bundled:"):])
    p = Path(value)
    return p if p.is_absolute() else base / p


def _typed(key: str, value: str, kind):
    try:
        return kind(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r}") from None


def parse_config(text: str, base_dir: Path | str = ".") -> ExperimentConfig:
    base = Path(base_dir)
    raw: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    kw: Dict[str, object] = {}
    corpora: Dict[Tuple[str, str], Path] = {}
    mappings: Dict[str, Path] = {}
    policies: Dict[str, CasePolicy] = {}
    seg: Dict[str, object] = {}
    tmpl: Dict[str, object] = {}
    train: Dict[str, object] = {}
    tmpl_types = {f.name: f.type for f in fields(FeatureTemplate)}
    train_types = {"epochs": int, "learning_rate": float, "l2_lambda": float,
                   "batch_size": int, "seed": int}

    for key, value in raw.items():
        if key == "train_lang":
            kw["train_lang"] = value
        elif key == "eval_langs":
            kw["eval_langs"] = tuple(v.strip() for v in value.split(",") if v.strip())
        elif key == "input_form":
            kw["input_form"] = _typed(key, value, Form)
        elif key == "output_dir":
            kw["output_dir"] = _path(value, base)
        elif key == "registry":
            kw["registry"] = _path(value, base)
        elif key == "g2p.unmapped_policy":
            kw["unmapped_policy"] = _typed(key, value, UnmappedPolicy)
        elif key == "segmenter.attach_modifiers":
            seg["attach_modifiers"] = frozenset(value)
        elif key == "segmenter.join_tie_bar":
            seg["join_tie_bar"] = _bool(key, value)
        elif key.startswith("features.") and key[9:] in tmpl_types:
            name = key[9:]
            tmpl[name] = _typed(key, value, int) if name == "window" else _bool(key, value)
        elif key.startswith("training.") and key[9:] in train_types:
            train[key[9:]] = _typed(key, value, train_types[key[9:]])
        elif key == "scoring.mode":
            kw["scoring_mode"] = _typed(key, value, SpanMode)
        elif key == "scoring.level":
            kw["scoring_level"] = value
        elif m := _DYNAMIC[0].match(key):
            corpora[(m.group(1), m.group(2))] = _path(value, base)
        elif m := _DYNAMIC[1].match(key):
            mappings[m.group(1)] = _path(value, base)
        elif m := _DYNAMIC[2].match(key):
            policies[m.group(1)] = _typed(key, value, CasePolicy)
        else:
            raise ConfigError(f"unknown config key {key!r}")

    if "eval_langs" not in kw:
        raise ConfigError("eval_langs is required")
    try:
        return ExperimentConfig(
            corpora=corpora, mappings=mappings, case_policies=policies,
            segmenter=SegmenterConfig(**{"attach_modifiers": DEFAULT_MODIFIERS, **seg}),
            template=FeatureTemplate(**tmpl), training=TrainingConfig(**train), **kw)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), path.parent)
