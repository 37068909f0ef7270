"""Linear-chain CRF over character or phoneme-segment units.

Emission scores are sums of per-feature weight rows; transitions are a single
tag x tag matrix. All inference runs in log space.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from .dataset import Corpus, Form, Split
from .segment import SegmenterConfig, segment_word
from .tagging import ENTITY_TYPES, SegmentLabeledSentence, Tag, TagLike, project_tags

logger = logging.getLogger(__name__)

DEFAULT_TAGS: Tuple[str, ...] = ("O",) + tuple(
    f"{kind}-{etype}" for etype in ENTITY_TYPES for kind in "BI")
MODEL_FORMAT = "phonener-crf 1"


@dataclass(frozen=True)
class FeatureTemplate:
    window: int = 2
    use_unit_identity: bool = True
    use_affixes: bool = True
    use_bigrams: bool = True
    use_word_boundary: bool = False

    def __post_init__(self):
        if self.window < 0:
            raise ValueError("window must be >= 0")


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 10
    learning_rate: float = 1.0
    l2_lambda: float = 1e-4
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.learning_rate <= 0 or self.l2_lambda < 0 or self.batch_size < 1:
            raise ValueError("learning_rate and batch_size must be positive, l2_lambda >= 0")


def _unit_at(units: Sequence[str], i: int) -> str:
    if i < 0:
        return "<BOS>"
    if i >= len(units):
        return "<EOS>"
    return units[i]


def extract_features(template: FeatureTemplate, units: Sequence[str], position: int,
                     word_starts: Optional[Sequence[bool]] = None) -> List[str]:
    if not 0 <= position < len(units):
        raise IndexError(f"position {position} out of range for {len(units)} units")
    feats = ["bias"]
    cur = units[position]
    if template.use_unit_identity:
        for off in range(-template.window, template.window + 1):
            name = "u0" if off == 0 else f"u{off:+d}"
            feats.append(f"{name}={_unit_at(units, position + off)}")
    if template.use_affixes:
        for k in range(1, min(3, len(cur)) + 1):
            feats.append(f"pre{k}={cur[:k]}")
            feats.append(f"suf{k}={cur[-k:]}")
    if template.use_bigrams:
        feats.append(f"b-1={_unit_at(units, position - 1)}|{cur}")
        feats.append(f"b+1={cur}|{_unit_at(units, position + 1)}")
    if template.use_word_boundary and word_starts is not None:
        feats.append("wb=B" if word_starts[position] else "wb=I")
    return feats


def sequence_features(template: FeatureTemplate, units: Sequence[str],
                      word_starts: Optional[Sequence[bool]] = None) -> List[List[str]]:
    return [extract_features(template, units, i, word_starts) for i in range(len(units))]


@dataclass(frozen=True, eq=False)
class CrfModel:
    tag_set: Tuple[str, ...]
    feature_index: Dict[str, int]
    emission_weights: np.ndarray
    transition_weights: np.ndarray
    template: FeatureTemplate = field(default_factory=FeatureTemplate)
    form: Form = Form.PHONEME
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)

    def __post_init__(self):
        object.__setattr__(self, "tag_set", tuple(self.tag_set))
        object.__setattr__(self, "form", Form(self.form))
        emit = np.asarray(self.emission_weights, dtype=np.float64)
        trans = np.asarray(self.transition_weights, dtype=np.float64)
        k = len(self.tag_set)
        if emit.shape != (len(self.feature_index), k):
            raise ValueError(f"emission weights have shape {emit.shape}, "
                             f"expected {(len(self.feature_index), k)}")
        if trans.shape != (k, k):
            raise ValueError(f"transition weights have shape {trans.shape}, expected {(k, k)}")
        if not (np.all(np.isfinite(emit)) and np.all(np.isfinite(trans))):
            raise ValueError("model weights must be finite")
        object.__setattr__(self, "emission_weights", emit)
        object.__setattr__(self, "transition_weights", trans)

    @property
    def num_tags(self) -> int:
        return len(self.tag_set)

    def tag_ids(self, tags: Sequence[TagLike]) -> np.ndarray:
        lookup = {t: i for i, t in enumerate(self.tag_set)}
        try:
            return np.array([lookup[str(t)] for t in tags], dtype=np.intp)
        except KeyError as exc:
            raise ValueError(f"tag {exc.args[0]} is not in the model tag set") from None

    def encode(self, units: Sequence[str],
               word_starts: Optional[Sequence[bool]] = None) -> sparse.csr_matrix:
        """Binary position x feature matrix; features unseen in training are dropped."""
        rows, cols = [], []
        for i, feats in enumerate(sequence_features(self.template, units, word_starts)):
            for f in feats:
                j = self.feature_index.get(f)
                if j is not None:
                    rows.append(i)
                    cols.append(j)
        data = np.ones(len(rows))
        return sparse.csr_matrix((data, (rows, cols)),
                                 shape=(len(units), len(self.feature_index)))

    def emission_scores(self, units: Sequence[str],
                        word_starts: Optional[Sequence[bool]] = None) -> np.ndarray:
        return np.asarray(self.encode(units, word_starts) @ self.emission_weights)

    def with_weights(self, emission: np.ndarray, transition: np.ndarray) -> "CrfModel":
        return replace(self, emission_weights=emission, transition_weights=transition)


# --------------------------------------------------------------------------
# Inference on score matrices
# --------------------------------------------------------------------------

def _logsumexp(x: np.ndarray, axis: int) -> np.ndarray:
    # scipy.special.logsumexp is ~7x slower on these tiny arrays
    m = x.max(axis=axis, keepdims=True)
    m[~np.isfinite(m)] = 0.0
    return np.log(np.exp(x - m).sum(axis=axis)) + m.squeeze(axis)


def _forward_backward(emit: np.ndarray, trans: np.ndarray):
    T, K = emit.shape
    alpha = np.empty((T, K))
    beta = np.zeros((T, K))
    alpha[0] = emit[0]
    for t in range(1, T):
        alpha[t] = _logsumexp(alpha[t - 1][:, None] + trans, axis=0) + emit[t]
    for t in range(T - 2, -1, -1):
        beta[t] = _logsumexp(trans + (emit[t + 1] + beta[t + 1])[None, :], axis=1)
    log_z = float(_logsumexp(alpha[-1], axis=0))
    unary = np.exp(alpha + beta - log_z)
    pairwise = np.exp(alpha[:-1, :, None] + trans[None, :, :]
                      + (emit[1:] + beta[1:])[:, None, :] - log_z)
    return log_z, unary, pairwise


def _viterbi(emit: np.ndarray, trans: np.ndarray) -> List[int]:
    T, K = emit.shape
    delta = emit[0].copy()
    back = np.zeros((T, K), dtype=np.intp)
    for t in range(1, T):
        cand = delta[:, None] + trans
        back[t] = np.argmax(cand, axis=0)  # argmax returns the lowest index on ties
        delta = cand[back[t], np.arange(K)] + emit[t]
    path = [int(np.argmax(delta))]
    for t in range(T - 1, 0, -1):
        path.append(int(back[t, path[-1]]))
    return path[::-1]


def _path_score(emit: np.ndarray, trans: np.ndarray, path: Sequence[int]) -> float:
    path = np.asarray(path)
    return float(emit[np.arange(len(path)), path].sum() + trans[path[:-1], path[1:]].sum())


@dataclass(frozen=True)
class Marginals:
    log_partition: float
    unary: np.ndarray      # (T, K)
    pairwise: np.ndarray   # (T-1, K, K); pairwise[t, a, b] = P(y_t = a, y_{t+1} = b)


def forward_backward(model: CrfModel, units: Sequence[str],
                     word_starts: Optional[Sequence[bool]] = None) -> Marginals:
    if len(units) == 0:
        raise ValueError("sequence must be non-empty")
    log_z, unary, pairwise = _forward_backward(
        model.emission_scores(units, word_starts), model.transition_weights)
    return Marginals(log_z, unary, pairwise)


def viterbi_decode(model: CrfModel, units: Sequence[str],
                   word_starts: Optional[Sequence[bool]] = None) -> List[Tag]:
    if len(units) == 0:
        raise ValueError("sequence must be non-empty")
    path = _viterbi(model.emission_scores(units, word_starts), model.transition_weights)
    return [Tag.parse(model.tag_set[i]) for i in path]


def path_score(model: CrfModel, units: Sequence[str], tags: Sequence[TagLike],
               word_starts: Optional[Sequence[bool]] = None) -> float:
    return _path_score(model.emission_scores(units, word_starts),
                       model.transition_weights, model.tag_ids(tags))


# --------------------------------------------------------------------------
# Likelihood and training
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Encoded:
    features: sparse.csr_matrix
    gold: np.ndarray


def _encode_sentence(model: CrfModel, sent: SegmentLabeledSentence) -> _Encoded:
    if not sent.segments:
        raise ValueError("sentence has no units")
    return _Encoded(model.encode(sent.segments, sent.word_starts()), model.tag_ids(sent.tags))


def _data_term(emission: np.ndarray, transition: np.ndarray, batch: Sequence[_Encoded]):
    loss = 0.0
    g_emit = np.zeros_like(emission)
    g_trans = np.zeros_like(transition)
    K = transition.shape[0]
    for enc in batch:
        emit = np.asarray(enc.features @ emission)
        log_z, unary, pairwise = _forward_backward(emit, transition)
        loss += log_z - _path_score(emit, transition, enc.gold)
        resid = unary
        resid[np.arange(len(enc.gold)), enc.gold] -= 1.0
        g_emit += np.asarray(enc.features.T @ resid)
        g_trans += pairwise.sum(axis=0)
        np.add.at(g_trans, (enc.gold[:-1], enc.gold[1:]), -1.0)
    return loss, g_emit, g_trans.reshape(K, K)


def nll_gradient(model: CrfModel, batch: Sequence[SegmentLabeledSentence],
                 l2_lambda: float = 0.0) -> Tuple[float, Tuple[np.ndarray, np.ndarray]]:
    """Summed negative log-likelihood of ``batch`` plus an L2 penalty.

    Returns ``(loss, (emission_grad, transition_grad))``.
    """
    if not batch:
        raise ValueError("batch must be non-empty")
    encoded = [_encode_sentence(model, s) for s in batch]
    W, A = model.emission_weights, model.transition_weights
    loss, g_emit, g_trans = _data_term(W, A, encoded)
    loss += 0.5 * l2_lambda * (np.sum(W * W) + np.sum(A * A))
    return loss, (g_emit + l2_lambda * W, g_trans + l2_lambda * A)


def corpus_units(corpus: Corpus, segmenter: SegmenterConfig | None = None
                 ) -> List[SegmentLabeledSentence]:
    """Unit-level view of a word-level corpus.

    Grapheme corpora are split into characters, phoneme corpora into IPA
    segments; word tags are projected onto the units.
    """
    out = []
    for sent in corpus.sentences:
        if corpus.form is Form.PHONEME:
            pieces = [segment_word(tok, segmenter) for tok in sent.tokens]
        else:
            pieces = [tuple(tok) for tok in sent.tokens]
        counts = [len(p) for p in pieces]
        units = tuple(u for p in pieces for u in p)
        out.append(SegmentLabeledSentence(units, project_tags(sent.tags, counts), counts))
    return out


def build_feature_index(sentences: Sequence[SegmentLabeledSentence],
                        template: FeatureTemplate) -> Dict[str, int]:
    index: Dict[str, int] = {}
    for sent in sentences:
        for feats in sequence_features(template, sent.segments, sent.word_starts()):
            for f in feats:
                if f not in index:
                    index[f] = len(index)
    return index


def init_model(sentences: Sequence[SegmentLabeledSentence], template: FeatureTemplate,
               form: Form | str = Form.PHONEME, segmenter: SegmenterConfig | None = None,
               tag_set: Sequence[str] = DEFAULT_TAGS) -> CrfModel:
    index = build_feature_index(sentences, template)
    K = len(tag_set)
    return CrfModel(tuple(tag_set), index, np.zeros((len(index), K)), np.zeros((K, K)),
                    template, form, segmenter or SegmenterConfig())


def fit(model: CrfModel, sentences: Sequence[SegmentLabeledSentence],
        config: TrainingConfig) -> Tuple[CrfModel, List[float]]:
    """Minibatch gradient descent on summed NLL + (l2/2)||w||^2.

    Each minibatch gradient is rescaled to estimate the full-data gradient,
    then every weight's step is divided by how often its feature occurs in
    the training data (transitions: by the number of tag bigrams). This fixed
    diagonal preconditioner keeps always-on features such as ``bias`` from
    dictating the stable step size; it does not depend on gradient history.

    Visiting order per epoch comes from a generator seeded by
    ``config.seed``. Returns the trained model and, per epoch, the summed batch
    losses plus the penalty at the start of the epoch (the exact objective
    when one batch covers the data).
    """
    if not sentences:
        raise ValueError("cannot train on an empty corpus")
    encoded = [_encode_sentence(model, s) for s in sentences]
    W = model.emission_weights.copy()
    A = model.transition_weights.copy()
    lam, lr, n = config.l2_lambda, config.learning_rate, len(encoded)
    rng = np.random.default_rng(config.seed)

    feat_counts = np.zeros(W.shape[0])
    for enc in encoded:
        feat_counts += np.asarray(enc.features.sum(axis=0)).ravel()
    emit_scale = (lr / np.maximum(feat_counts, 1.0))[:, None]
    trans_scale = lr / max(sum(len(enc.gold) - 1 for enc in encoded), 1)

    history = []
    for epoch in range(config.epochs):
        total = 0.5 * lam * (np.sum(W * W) + np.sum(A * A))
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = [encoded[i] for i in order[start:start + config.batch_size]]
            loss, g_emit, g_trans = _data_term(W, A, batch)
            total += loss
            factor = n / len(batch)
            W -= emit_scale * (factor * g_emit + lam * W)
            A -= trans_scale * (factor * g_trans + lam * A)
        history.append(total)
        logger.debug("epoch %d objective %.6f", epoch + 1, total)
    return model.with_weights(W, A), history


def train(corpus: Corpus, template: FeatureTemplate | None = None,
          config: TrainingConfig | None = None,
          segmenter: SegmenterConfig | None = None) -> CrfModel:
    template = template or FeatureTemplate()
    config = config or TrainingConfig()
    if corpus.split is not Split.TRAIN:
        raise ValueError(f"expected a train split, got {corpus.split.value}")
    if not corpus.sentences:
        raise ValueError("cannot train on an empty corpus")
    sentences = corpus_units(corpus, segmenter)
    model = init_model(sentences, template, corpus.form, segmenter)
    model, _ = fit(model, sentences, config)
    return model


def tag_corpus(model: CrfModel, corpus: Corpus) -> List[SegmentLabeledSentence]:
    """Decode every sentence; returns unit-level sentences carrying predicted tags."""
    if corpus.form is not model.form:
        raise ValueError(f"model expects {model.form.value} input, corpus is {corpus.form.value}")
    out = []
    for sent in corpus_units(corpus, model.segmenter):
        pred = viterbi_decode(model, sent.segments, sent.word_starts())
        out.append(SegmentLabeledSentence(sent.segments, pred, sent.word_boundaries))
    return out


# --------------------------------------------------------------------------
# Persistence
# --------------------------------------------------------------------------
# Plain UTF-8 text:
#   phonener-crf 1
#   key=value meta lines (form, template.*, segmenter.*)
#   tags <K>            followed by K lines
#   features <F>        followed by F lines, in column order
#   emission <F> <K>    followed by F rows of K space-separated floats
#   transition <K> <K>  followed by K rows
# Floats are written with repr(), which round-trips exactly.

def _row(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in values)


def dumps_model(model: CrfModel) -> str:
    t, s = model.template, model.segmenter
    lines = [MODEL_FORMAT, f"form={model.form.value}"]
    for name in ("window", "use_unit_identity", "use_affixes", "use_bigrams",
                 "use_word_boundary"):
        lines.append(f"template.{name}={getattr(t, name)}")
    lines.append("segmenter.attach_modifiers=" + "".join(sorted(s.attach_modifiers)))
    lines.append(f"segmenter.join_tie_bar={s.join_tie_bar}")
    lines.append(f"tags {model.num_tags}")
    lines.extend(model.tag_set)
    features = sorted(model.feature_index, key=model.feature_index.__getitem__)
    lines.append(f"features {len(features)}")
    lines.extend(features)
    lines.append(f"emission {len(features)} {model.num_tags}")
    lines.extend(_row(r) for r in model.emission_weights)
    lines.append(f"transition {model.num_tags} {model.num_tags}")
    lines.extend(_row(r) for r in model.transition_weights)
    return "\n".join(lines) + "\n"


def _bool(text: str) -> bool:
    if text not in ("True", "False"):
        raise ValueError(f"expected True/False, got {text!r}")
    return text == "True"


def loads_model(text: str) -> CrfModel:
    lines = text.split("\n")
    if lines[0] != MODEL_FORMAT:
        raise ValueError(f"not a model file (header {lines[0]!r})")
    meta: Dict[str, str] = {}
    pos = 1
    while "=" in lines[pos] and not lines[pos].startswith("tags "):
        key, _, value = lines[pos].partition("=")
        meta[key] = value
        pos += 1

    def block(name: str):
        nonlocal pos
        head = lines[pos].split(" ")
        if head[0] != name:
            raise ValueError(f"expected {name!r} block at line {pos + 1}")
        dims = [int(d) for d in head[1:]]
        body = lines[pos + 1:pos + 1 + dims[0]]
        pos += 1 + dims[0]
        return dims, body

    _, tags = block("tags")
    _, features = block("features")
    (f, k), rows = block("emission")
    emit = np.array([[float(v) for v in r.split()] for r in rows]).reshape(f, k)
    (k1, k2), rows = block("transition")
    trans = np.array([[float(v) for v in r.split()] for r in rows]).reshape(k1, k2)
    template = FeatureTemplate(
        window=int(meta["template.window"]),
        use_unit_identity=_bool(meta["template.use_unit_identity"]),
        use_affixes=_bool(meta["template.use_affixes"]),
        use_bigrams=_bool(meta["template.use_bigrams"]),
        use_word_boundary=_bool(meta["template.use_word_boundary"]),
    )
    segmenter = SegmenterConfig(frozenset(meta["segmenter.attach_modifiers"]),
                                _bool(meta["segmenter.join_tie_bar"]))
    return CrfModel(tuple(tags), {name: i for i, name in enumerate(features)},
                    emit, trans, template, Form(meta["form"]), segmenter)


def save_model(model: CrfModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path: str | Path) -> CrfModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))
