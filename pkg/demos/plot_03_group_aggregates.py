"""
Per-language scores and group summaries
=======================================

Group per-language F1 scores by pre-training coverage and by script, and
print the mean and sample standard deviation of each group.
"""
from phonener.dataset import compute_cases, load_registry
from phonener.evaluate import build_report

registry = load_registry()
cases = compute_cases(registry)
print("languages unseen by every model:", sorted(cases.case1))

# Phoneme-model F1 on those languages.
scores = {"sin": 43.61, "som": 38.91, "mri": 38.07, "quy": 51.90,
          "uig": 44.82, "aii": 31.03, "kin": 49.67, "ilo": 73.05}
report = build_report(scores, cases, registry, {"averaging": "micro"})
print(report.to_tsv())

# The spread uses the n - 1 divisor; dividing by n would give a visibly smaller value.
for cls, values in report.script_breakdown.items():
    print(cls, values)
