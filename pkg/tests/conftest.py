import itertools
import math

import numpy as np
import pytest

from phonener.tagger import DEFAULT_TAGS, CrfModel, FeatureTemplate, extract_features
from phonener.tagging import SegmentLabeledSentence

VOCAB = list("abcdə")


def random_model(rng: np.random.Generator, num_tags: int, template=None, scale=1.0) -> CrfModel:
    """A model over every feature the template can produce from VOCAB."""
    template = template or FeatureTemplate(window=1, use_affixes=False, use_bigrams=False)
    feats = {"bias"}
    for a, b, c in itertools.product(VOCAB, repeat=3):
        feats.update(extract_features(template, [a, b, c], 1))
        feats.update(extract_features(template, [a, b], 0))
        feats.update(extract_features(template, [b, c], 1))
        feats.update(extract_features(template, [b], 0))
    index = {f: i for i, f in enumerate(sorted(feats))}
    tags = DEFAULT_TAGS[:num_tags]
    return CrfModel(tags, index, rng.normal(0, scale, (len(index), num_tags)),
                    rng.normal(0, scale, (num_tags, num_tags)), template)


def random_units(rng: np.random.Generator, length: int):
    return [VOCAB[i] for i in rng.integers(0, len(VOCAB), length)]


def brute_score(model: CrfModel, units, path) -> float:
    """Path score computed straight from feature strings."""
    total = 0.0
    for t, y in enumerate(path):
        for f in extract_features(model.template, units, t):
            if f in model.feature_index:
                total += model.emission_weights[model.feature_index[f], y]
        if t:
            total += model.transition_weights[path[t - 1], y]
    return total


def all_paths(model: CrfModel, length: int):
    return itertools.product(range(model.num_tags), repeat=length)


def brute_log_partition(model: CrfModel, units) -> float:
    scores = [brute_score(model, units, p) for p in all_paths(model, len(units))]
    m = max(scores)
    return m + math.log(sum(math.exp(s - m) for s in scores))


def random_sentence(rng, model, length):
    units = random_units(rng, length)
    tags = [model.tag_set[i] for i in rng.integers(0, model.num_tags, length)]
    return SegmentLabeledSentence(tuple(units), tuple(tags), (length,))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (passed, seconds, notes) in sorted(mod.RESULTS.items()):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({seconds:.2f}s)  {notes}")
