"""Per-language F1 rows with their published AVG/STD, transcribed from the benchmark tables."""

CASE1 = ["sin", "som", "mri", "quy", "uig", "aii", "kin", "ilo"]
CASE2 = ["epo", "khm", "tuk", "amh", "mlt", "ori", "san", "ina", "grn", "bel", "kur", "snd"]
CASE3 = ["tgk", "yor", "mar", "jav", "urd", "msa", "ceb", "hrv", "mal", "tel", "uzb", "pan", "kir"]
XLMR_CASE1 = ["mri", "quy", "aii", "kin", "ilo", "tgk", "yor", "ceb"]
XLMR_CASE2 = ["tuk", "mlt", "ina", "grn"]
XLMR_CASE3 = ["epo", "khm", "amh", "ori", "san", "bel", "kur", "snd", "sin", "som", "uig"]

# (label, languages, per-language F1, published AVG, published STD)
ROWS = [
    ("case1/mBERT", CASE1, [10.71, 44.76, 38.48, 55.07, 18.70, 12.58, 62.37, 79.51], 40.27, 25.00),
    ("case1/CANINE", CASE1, [26.31, 43.35, 51.30, 59.48, 27.19, 22.38, 54.74, 80.70], 45.68, 19.99),
    ("case1/XPhoneBERT", CASE1,
     [43.61, 38.91, 38.07, 51.90, 44.82, 31.03, 49.67, 73.05], 46.38, 12.67),
    ("case2/mBERT", CASE2, [71.31, 16.12, 64.52, 11.90, 63.83, 9.96, 48.73, 73.89, 50.44, 83.12,
                            54.16, 35.02], 48.58, 25.13),
    ("case2/CANINE", CASE2, [68.19, 27.33, 58.07, 22.65, 61.58, 33.53, 26.79, 68.78, 55.37, 80.07,
                             57.33, 29.87], 49.13, 19.86),
    ("case2/XPhoneBERT", CASE2, [75.26, 31.86, 61.17, 44.85, 52.58, 40.73, 59.42, 68.68, 49.95,
                                 77.61, 52.95, 47.28], 55.20, 13.83),
    ("case3/mBERT", CASE3, [74.10, 56.60, 74.30, 73.59, 57.09, 74.98, 64.44, 84.93, 69.94, 67.24,
                            80.04, 53.98, 68.14], 69.18, 9.28),
    ("case3/CANINE", CASE3, [62.12, 51.15, 44.28, 61.11, 42.41, 76.82, 70.36, 77.51, 48.29, 37.29,
                             72.54, 45.74, 57.73], 57.49, 13.77),
    ("case3/XPhoneBERT", CASE3, [48.93, 50.87, 35.12, 45.98, 33.37, 61.76, 58.72, 58.76, 32.52,
                                 28.93, 60.92, 43.85, 35.95], 45.82, 11.85),
    ("xlmr-case1/XLM-R", XLMR_CASE1,
     [29.93, 65.09, 14.58, 49.05, 71.29, 40.96, 55.01, 64.31], 48.78, 19.42),
    ("xlmr-case1/XPhoneBERT", XLMR_CASE1,
     [38.07, 51.90, 31.03, 49.67, 73.05, 48.93, 50.87, 58.72], 50.28, 12.62),
    ("xlmr-case2/XLM-R", XLMR_CASE2, [53.63, 58.81, 72.55, 44.80], 57.45, 11.61),
    ("xlmr-case2/XPhoneBERT", XLMR_CASE2, [61.17, 52.58, 68.68, 49.95], 58.10, 8.53),
    ("xlmr-case3/XLM-R", XLMR_CASE3, [73.82, 48.85, 64.89, 54.93, 59.92, 82.93, 75.61, 42.90,
                                      64.91, 55.52, 61.74], 62.37, 11.88),
    ("xlmr-case3/XPhoneBERT", XLMR_CASE3, [75.26, 31.86, 44.85, 40.73, 59.42, 77.61, 52.95, 47.28,
                                           43.61, 38.91, 44.82], 50.66, 14.60),
]


def row_scores(label):
    for name, langs, f1s, _, _ in ROWS:
        if name == label:
            return dict(zip(langs, f1s))
    raise KeyError(label)
