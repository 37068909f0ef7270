"""Zero-shot cross-lingual NER through IPA phonemes at desk scale."""
from .dataset import (CaseGrouping, Corpus, Form, LanguageProfile, Split, compute_cases,
                      corpus_stats, load_registry, parse_corpus, read_corpus, write_corpus)
from .evaluate import EvalReport, ScoreTriple, aggregate, build_report, span_f1
from .g2p import (MappingTable, TransliterationResult, load_mapping, load_mapping_file,
                  transliterate_corpus, transliterate_word)
from .segment import SegmentedWord, SegmenterConfig, segment_ipa
from .tagger import (CrfModel, FeatureTemplate, TrainingConfig, extract_features,
                     forward_backward, load_model, nll_gradient, save_model, train,
                     viterbi_decode)
from .tagging import (EntitySpan, SegmentLabeledSentence, Tag, WordLabeledSentence,
                      extract_spans, project_tags, validate_bio)

__version__ = "0.1.0"
