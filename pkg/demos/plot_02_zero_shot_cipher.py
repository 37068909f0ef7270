"""
Zero-shot transfer to an unseen script
======================================

Train two CRF taggers on a small Latin-script corpus: one reads characters,
the other reads phoneme segments. Then test both on the same sentences
written in a script neither has seen.
"""
from phonener.evaluate import span_f1
from phonener.g2p import transliterate_corpus
from phonener.synthetic import bilingual_fixture
from phonener.tagger import TrainingConfig, corpus_units, tag_corpus, train

fx = bilingual_fixture(seed=0)
print(fx.test_latin.sentences[0].tokens)
print(fx.test_cipher.sentences[0].tokens)

config = TrainingConfig(seed=0)


def score(model, corpus):
    gold = [s.tags for s in corpus_units(corpus, model.segmenter)]
    pred = [s.tags for s in tag_corpus(model, corpus)]
    return span_f1(gold, pred).f1


# Character model: its lexical features never fire on the new script.
chars = train(fx.train, config=config)
print(f"characters, Latin test  F1 {score(chars, fx.test_latin):6.2f}")
print(f"characters, cipher test F1 {score(chars, fx.test_cipher):6.2f}")

# Phoneme model: both scripts map to the same IPA, so the features carry over.
train_ipa, _ = transliterate_corpus(fx.latin, fx.train)
test_ipa, _ = transliterate_corpus(fx.cipher, fx.test_cipher)
phones = train(train_ipa, config=config)
print(f"phonemes,   cipher test F1 {score(phones, test_ipa):6.2f}")
