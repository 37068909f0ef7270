"""Command-line entry point: ``phonener <stage> ...``.

Exit status: 0 success, 2 usage error, 3 missing file, 4 malformed input,
5 configuration error, 1 any other failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .config import ConfigError, ExperimentConfig, load_config
from .dataset import CorpusFormatError, Form, compute_cases, load_registry, read_corpus, write_corpus
from .evaluate import ScoreTriple, build_report
from .g2p import CasePolicy, MappingError, UnmappedPolicy, load_mapping_file, transliterate_corpus
from .pipeline import StageError, read_units, run_experiment, score_units, write_units
from .segment import SegmentationError, segment_ipa
from .tagger import (FeatureTemplate, TrainingConfig, corpus_units, fit, init_model, load_model,
                     save_model, tag_corpus)
from .tagging import SpanMode, TagError

EXIT_ERROR, EXIT_MISSING, EXIT_FORMAT, EXIT_CONFIG = 1, 3, 4, 5

log = logging.getLogger("phonener.cli")


def _emit(text: str, out_dir: Optional[str], name: str) -> None:
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _settings(args):
    """Template, training and segmenter settings from --config (or defaults)."""
    if args.config:
        cfg = load_config(args.config)
        training = cfg.training
        if args.seed is not None:
            training = TrainingConfig(training.epochs, training.learning_rate,
                                      training.l2_lambda, training.batch_size, args.seed)
        return cfg.template, training, cfg.segmenter, cfg
    training = TrainingConfig(seed=args.seed if args.seed is not None else 0)
    return FeatureTemplate(), training, None, None


def cmd_g2p(args) -> None:
    table = load_mapping_file(args.mapping, args.lang, args.case_policy)
    corpus = read_corpus(args.input, args.lang, args.split)
    converted, unmapped = transliterate_corpus(table, corpus, args.unmapped)
    for ch, n in sorted(unmapped.items()):
        print(f"unmapped\t{args.lang}\t{ch}\t{n}", file=sys.stderr)
    _emit(write_corpus(converted), args.out, f"g2p.{args.lang}.{args.split}.tsv")


def cmd_segment(args) -> None:
    _, _, segmenter, _ = _settings(args)
    lines = []
    for word in Path(args.input).read_text(encoding="utf-8").split():
        lines.append("|".join(segment_ipa(word, segmenter).segments))
    _emit("".join(l + "\n" for l in lines), args.out, "segment.txt")


def cmd_project(args) -> None:
    _, _, segmenter, _ = _settings(args)
    corpus = read_corpus(args.input, args.lang, args.split, args.form)
    _emit(write_units(corpus_units(corpus, segmenter)), args.out,
          f"project.{args.lang}.{args.split}.tsv")


def cmd_train(args) -> None:
    template, training, segmenter, _ = _settings(args)
    corpus = read_corpus(args.input, args.lang, "train", args.form)
    units = corpus_units(corpus, segmenter)
    model = init_model(units, template, corpus.form, segmenter)
    model, history = fit(model, units, training)
    for epoch, loss in enumerate(history, 1):
        log.info("epoch %d objective %.6f", epoch, loss)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    save_model(model, out / f"train.{args.lang}.model")


def cmd_tag(args) -> None:
    model = load_model(args.model)
    corpus = read_corpus(args.input, args.lang, "test", model.form)
    _emit(write_units(tag_corpus(model, corpus)), args.out, f"tag.{args.lang}.tsv")


def _registry(args):
    registry = load_registry(args.registry)
    return registry, compute_cases(registry)


def cmd_eval(args) -> None:
    gold, pred = read_units(args.gold), read_units(args.pred)
    score = score_units(gold, pred, args.mode, args.level)
    registry, cases = _registry(args)
    report = build_report({args.lang: score}, cases, registry,
                          {"averaging": "micro", "level": args.level, "mode": args.mode})
    _emit(report.to_tsv(), args.out, f"eval.{args.lang}.tsv")


def parse_scores(text: str):
    """``language<TAB>F1`` or ``language<TAB>P<TAB>R<TAB>F1`` lines; a header
    line starting with ``language`` and ``#`` comments are skipped."""
    scores = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#") or line.startswith("language"):
            continue
        fields = line.split("\t")
        try:
            if len(fields) == 2:
                scores[fields[0]] = ScoreTriple.f1_only(float(fields[1]))
            elif len(fields) == 4:
                p, r, f = (float(v) for v in fields[1:])
                scores[fields[0]] = ScoreTriple(p, r, f)
            else:
                raise ValueError(f"expected 2 or 4 fields, got {len(fields)}")
        except ValueError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
    return scores


def cmd_report(args) -> None:
    scores = parse_scores(Path(args.input).read_text(encoding="utf-8"))
    registry, cases = _registry(args)
    report = build_report(scores, cases, registry)
    if args.out:
        _emit(report.to_json(), args.out, "report.json")
    _emit(report.to_tsv(), args.out, "report.tsv")


def cmd_experiment(args) -> None:
    if not args.config:
        raise ConfigError("experiment needs --config")
    cfg: ExperimentConfig = load_config(args.config).with_overrides(
        seed=args.seed, output_dir=args.out, input_form=args.form)
    report = run_experiment(cfg)
    sys.stdout.write(report.to_tsv())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment configuration file")
    common.add_argument("--lang", default="eng", help="ISO 639-3 language code")
    common.add_argument("--form", choices=[f.value for f in Form], default=None)
    common.add_argument("--out", help="output directory (default: stdout where applicable)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--registry", help="language registry file (default: bundled)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="phonener", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="stage", required=True)

    p = sub.add_parser("g2p", parents=[common], help="transliterate a corpus to IPA")
    p.add_argument("input")
    p.add_argument("--mapping", required=True)
    p.add_argument("--split", default="test", choices=["train", "dev", "test"])
    p.add_argument("--case-policy", default=CasePolicy.FOLD.value,
                   choices=[c.value for c in CasePolicy])
    p.add_argument("--unmapped", default=UnmappedPolicy.PASS_THROUGH.value,
                   choices=[u.value for u in UnmappedPolicy])
    p.set_defaults(func=cmd_g2p)

    p = sub.add_parser("segment", parents=[common], help="segment IPA words, one per line")
    p.add_argument("input")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("project", parents=[common], help="project word tags onto units")
    p.add_argument("input")
    p.add_argument("--split", default="train", choices=["train", "dev", "test"])
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("train", parents=[common], help="train a CRF on a word-level corpus")
    p.add_argument("input")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tag", parents=[common], help="decode a corpus with a trained model")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", parents=[common], help="span P/R/F1 of predictions")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("--mode", default="lenient", choices=[m.value for m in SpanMode])
    p.add_argument("--level", default="unit", choices=["unit", "word"])
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", parents=[common], help="aggregate per-language scores")
    p.add_argument("input")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("experiment", parents=[common], help="run a configured experiment")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "form", None) is None and args.stage in ("project", "train"):
        args.form = Form.GRAPHEME.value
    level = logging.INFO if args.verbose else logging.WARNING
    console = logging.StreamHandler()
    console.setLevel(level)  # the experiment log file still records INFO
    console.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logging.basicConfig(level=level, handlers=[console])
    try:
        args.func(args)
    except StageError as exc:
        print(f"phonener: {exc}", file=sys.stderr)
        return _status(exc.cause)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        print(f"phonener {args.stage}: {_describe(exc)}", file=sys.stderr)
        return _status(exc)
    return 0


def _describe(exc: BaseException) -> str:
    if isinstance(exc, FileNotFoundError):
        return f"file not found: {exc.filename}"
    if isinstance(exc, ConfigError):
        return f"config error: {exc}"
    if isinstance(exc, (CorpusFormatError, MappingError, TagError, SegmentationError)):
        return f"format error: {exc}"
    return f"error: {exc}"


def _status(exc: BaseException) -> int:
    if isinstance(exc, FileNotFoundError):
        return EXIT_MISSING
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, (CorpusFormatError, MappingError, TagError, SegmentationError)):
        return EXIT_FORMAT
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
