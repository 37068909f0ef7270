"""End-to-end experiment: g2p -> segment -> project -> train -> tag -> score -> report.

Every intermediate artifact is written under the output directory, named by
stage and language:

    g2p.<lang>.<split>.tsv    phoneme-form corpus (phoneme runs only)
    project.<lang>.train.tsv  unit-level training data
    train.<lang>.model        CRF model
    tag.<lang>.tsv            unit-level predictions
    report.tsv, report.json   scores and group aggregates
    experiment.log            stage log (no timestamps, so runs diff cleanly)

Unit-level files hold ``unit<TAB>tag<TAB>word_index`` lines with a blank line
after each sentence.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from .config import ExperimentConfig
from .dataset import (Corpus, CorpusFormatError, Form, compute_cases, load_registry, read_corpus,
                      write_corpus)
from .evaluate import EvalReport, ScoreTriple, build_report, span_f1
from .g2p import CasePolicy, load_mapping_file, transliterate_corpus
from .tagger import corpus_units, fit, init_model, save_model, tag_corpus
from .tagging import SegmentLabeledSentence, Tag, TagError, collapse_tags

logger = logging.getLogger(__name__)


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage} failed: {cause}")
        self.stage = stage
        self.cause = cause


def write_units(sentences: Sequence[SegmentLabeledSentence]) -> str:
    lines: List[str] = []
    for sent in sentences:
        word = 0
        starts = sent.word_starts()
        for i, (unit, tag) in enumerate(zip(sent.segments, sent.tags)):
            if starts[i] and i > 0:
                word += 1
            lines.append(f"{unit}\t{tag}\t{word}")
        lines.append("")
    return "".join(line + "\n" for line in lines)


def parse_units(text: str) -> List[SegmentLabeledSentence]:
    """Read a unit-level file. Two-column corpus files are accepted too, with
    every line treated as its own word."""
    out: List[SegmentLabeledSentence] = []
    units: List[str] = []
    tags: List[Tag] = []
    words: List[int] = []

    def flush():
        counts: List[int] = []
        prev = None
        for w in words:
            if w == prev:
                counts[-1] += 1
            else:
                counts.append(1)
            prev = w
        out.append(SegmentLabeledSentence(tuple(units), tuple(tags), tuple(counts)))

    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            if units:
                flush()
                units, tags, words = [], [], []
            continue
        fields = raw.split("\t")
        if len(fields) not in (2, 3):
            raise CorpusFormatError(f"line {lineno}: expected 2 or 3 tab-separated fields")
        try:
            tags.append(Tag.parse(fields[1]))
            words.append(int(fields[2]) if len(fields) == 3 else len(words))
        except (TagError, ValueError) as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        units.append(fields[0])
    if units:
        flush()
    return out


def read_units(path: str | Path) -> List[SegmentLabeledSentence]:
    try:
        return parse_units(Path(path).read_text(encoding="utf-8"))
    except CorpusFormatError as exc:
        raise CorpusFormatError(f"{path}: {exc}") from None


def score_units(gold: Sequence[SegmentLabeledSentence], pred: Sequence[SegmentLabeledSentence],
                mode, level: str = "unit") -> ScoreTriple:
    """Span F1 between two unit-level files; ``level='word'`` first collapses
    each word to the tag of its first unit."""
    if level == "word":
        g = [collapse_tags(s.tags, s.word_boundaries) for s in gold]
        p = [collapse_tags(s.tags, s.word_boundaries) for s in pred]
    else:
        g = [s.tags for s in gold]
        p = [s.tags for s in pred]
    return span_f1(g, p, mode)


def _to_form(cfg: ExperimentConfig, corpus: Corpus, out: Path) -> Corpus:
    if cfg.input_form is Form.GRAPHEME:
        return corpus
    table = load_mapping_file(cfg.mappings[corpus.lang], corpus.lang,
                              cfg.case_policies.get(corpus.lang, CasePolicy.FOLD))
    converted, unmapped = transliterate_corpus(table, corpus, cfg.unmapped_policy)
    if unmapped:
        summary = " ".join(f"{ch}:{n}" for ch, n in sorted(unmapped.items()))
        logger.info("g2p %s.%s unmapped %s", corpus.lang, corpus.split.value, summary)
    (out / f"g2p.{corpus.lang}.{corpus.split.value}.tsv").write_text(
        write_corpus(converted), encoding="utf-8")
    return converted


def _stage(name: str):
    def wrap(fn):
        def run(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except StageError:
                raise
            except (OSError, ValueError) as exc:
                raise StageError(name, exc) from exc
        return run
    return wrap


def run_experiment(cfg: ExperimentConfig) -> EvalReport:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(out / "experiment.log", mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    pkg_logger = logging.getLogger("phonener")
    pkg_logger.addHandler(handler)
    old_level = pkg_logger.level
    pkg_logger.setLevel(logging.INFO)
    try:
        return _run(cfg, out)
    finally:
        pkg_logger.removeHandler(handler)
        pkg_logger.setLevel(old_level)
        handler.close()


def _run(cfg: ExperimentConfig, out: Path) -> EvalReport:
    form = cfg.input_form
    logger.info("experiment train=%s eval=%s form=%s seed=%d", cfg.train_lang,
                ",".join(cfg.eval_langs), form.value, cfg.training.seed)

    registry = _stage("load")(load_registry)(cfg.registry)
    known = {p.code for p in registry}
    for lang in (cfg.train_lang, *cfg.eval_langs):
        if lang not in known:
            raise StageError("load", ValueError(f"language {lang!r} not in registry"))

    @_stage("g2p")
    def load(lang: str, split: str) -> Corpus:
        corpus = read_corpus(cfg.corpus_path(lang, split), lang, split)
        return _to_form(cfg, corpus, out)

    train_corpus = load(cfg.train_lang, "train")

    @_stage("project")
    def project() -> List[SegmentLabeledSentence]:
        units = corpus_units(train_corpus, cfg.segmenter)
        (out / f"project.{cfg.train_lang}.train.tsv").write_text(write_units(units), "utf-8")
        return units

    units = project()

    @_stage("train")
    def train():
        model = init_model(units, cfg.template, form, cfg.segmenter)
        model, history = fit(model, units, cfg.training)
        for epoch, loss in enumerate(history, 1):
            logger.info("train epoch %d objective %.6f", epoch, loss)
        save_model(model, out / f"train.{cfg.train_lang}.model")
        return model

    model = train()

    scores: Dict[str, ScoreTriple] = {}
    for lang in cfg.eval_langs:
        test = load(lang, "test")

        @_stage("tag")
        def tag() -> Tuple[List[SegmentLabeledSentence], List[SegmentLabeledSentence]]:
            pred = tag_corpus(model, test)
            (out / f"tag.{lang}.tsv").write_text(write_units(pred), "utf-8")
            return corpus_units(test, cfg.segmenter), pred

        gold, pred = tag()
        scores[lang] = _stage("eval")(score_units)(gold, pred, cfg.scoring_mode,
                                                    cfg.scoring_level)
        logger.info("eval %s F1 %.4f", lang, scores[lang].f1)

    @_stage("report")
    def report() -> EvalReport:
        rep = build_report(scores, compute_cases(registry), registry, {
            "averaging": "micro",
            "input_form": form.value,
            "level": cfg.scoring_level,
            "mode": cfg.scoring_mode.value,
            "seed": str(cfg.training.seed),
            "train_lang": cfg.train_lang,
        })
        (out / "report.tsv").write_text(rep.to_tsv(), "utf-8")
        (out / "report.json").write_text(rep.to_json(), "utf-8")
        return rep

    return report()
