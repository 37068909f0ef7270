"""Declarative span definitions, checked by enumerating every (start, end, type) triple."""
from phonener.tagging import ENTITY_TYPES


def _label(tag):
    return str(tag)


def oracle_spans(tags, mode):
    tags = [_label(t) for t in tags]
    n = len(tags)
    spans = set()
    for i in range(n):
        for j in range(i + 1, n + 1):
            for etype in ENTITY_TYPES:
                if is_span(tags, i, j, etype, mode):
                    spans.add((i, j, etype))
    return spans


def is_span(tags, i, j, etype, mode):
    first = tags[i]
    if mode == "strict":
        if first != f"B-{etype}":
            return False
    else:
        prev = tags[i - 1] if i else "O"
        starts = first == f"B-{etype}" or (first == f"I-{etype}" and prev[2:] != etype)
        if not starts:
            return False
    if any(t != f"I-{etype}" for t in tags[i + 1:j]):
        return False
    return j == len(tags) or tags[j] != f"I-{etype}"


def oracle_f1(gold, pred, mode):
    correct = n_pred = n_gold = 0
    for g, p in zip(gold, pred):
        gs, ps = oracle_spans(g, mode), oracle_spans(p, mode)
        correct += len(gs & ps)
        n_pred += len(ps)
        n_gold += len(gs)
    prec = 100.0 * correct / n_pred if n_pred else 0.0
    rec = 100.0 * correct / n_gold if n_gold else 0.0
    f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
    return prec, rec, f1
