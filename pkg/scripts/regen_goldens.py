"""Regenerates the golden circuit files under tests/golden.

Goldens are the canonical serializations of the shipped payloads and
of the four canonical growth stages cut to their local frames. Run
from the repository root after an intentional change:

    python scripts/regen_goldens.py
"""

from __future__ import annotations

from pathlib import Path

from surfgrow import synth

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    files = {
        "base_d2.txt": synth.base_encoder(2).to_text(),
        "base_d3.txt": synth.base_encoder(3).to_text(),
        "chain_odd.txt": synth.growth_chain("odd").canonicalized().to_text(),
        "chain_even.txt": synth.growth_chain("even").canonicalized().to_text(),
        "stage_odd_3to5.txt": synth.canonical_stage("odd", 0).to_text(),
        "stage_odd_5to7.txt": synth.canonical_stage("odd", 1).to_text(),
        "stage_even_2to4.txt": synth.canonical_stage("even", 0).to_text(),
        "stage_even_4to6.txt": synth.canonical_stage("even", 1).to_text(),
    }
    for name, content in files.items():
        path = GOLDEN_DIR / name
        path.write_text(content + "\n")
        print(f"wrote {path} ({len(content)} chars)")


if __name__ == "__main__":
    main()
