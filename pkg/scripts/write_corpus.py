"""
One-shot script that writes the canonical builder corpus as A2C files.
Usage:
    python -m scripts.write_corpus corpus/

For every spec in CORPUS:
- <name>.a2c               the complex (angles included, source recorded)
- <name>.weight-test.json  its WeightTestReport
Existing files are overwritten; the directory is created if missing.
"""
import re
import sys
from pathlib import Path

from angled.builders import build
from angled.dependencies import write_complex, write_report
from angled.errors import AngledError
from angled.weight_test import classify

CORPUS = [
    "polygon:3",
    "polygon:4",
    "polygon:8",
    "grid:2,2",
    "grid:3,4",
    "grid:6,6",
    "torus",
    "cylinder:3",
    "cylinder:8",
    "heptadisk",
    "tetrahedron",
    "surface:2",
    "presentation:a,b|b a b^-1 a^-2",
]


def file_stem(spec: str) -> str:
    """grid:3,4 -> grid-3x4; presentation specs are numbered instead of spelled out"""
    if spec.startswith("presentation:"):
        return f"presentation-{CORPUS.index(spec)}"
    name, _, params = spec.partition(":")
    return name if not params else f"{name}-{re.sub(',', 'x', params)}"


def write_corpus(directory: str):
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    try:
        for spec in CORPUS:
            complex_ = build(spec)
            stem = file_stem(spec)
            write_complex(complex_, target / f"{stem}.a2c")
            report = classify(complex_)
            write_report(report, target / f"{stem}.weight-test.json")
            print(f"{stem}: {len(complex_.vertices)}V {len(complex_.edges)}E {len(complex_.faces)}F, "
                  f"{report.classification.value}")
    except AngledError as e:
        print(f"Corpus error: {e.detail}")
        sys.exit(1)

    print(f"Wrote {len(CORPUS)} complexes to {target}")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print("Usage: python -m scripts.write_corpus <directory>")
        sys.exit(1)

    write_corpus(sys.argv[1])
