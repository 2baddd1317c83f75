"""Regenerate src/whk/corpus/*.json from the builders in whk.instances.

The manifest of expected exit codes is written from EXPECTED below, not
from running the tool, so that a regression shows up as a mismatch.
Run with --check to compare against the files on disk instead of writing.
"""

import argparse
import json
import sys
from pathlib import Path

from whk.instances import CORPUS

OUT = Path(__file__).resolve().parent.parent / "src" / "whk" / "corpus"

EXPECTED = {
    "eqGG.wha.json": {
        "check-groupoid": 0, "groupoid-algebra": 0, "check-weak-hopf": 0, "counital": 0,
        "grouplikes": 0, "gamma": 0, "report": 0,
    },
    "fold_to_group.json": {"check-groupoid": 0, "check-weak-hopf": 1, "report": 1},
    "swap_module_algebra.json": {
        "check-module-algebra": 0, "decompose": 0, "inner-faithful": 0, "der": 0, "report": 0,
    },
    "nonunital_module.json": {"check-module-algebra": 1, "decompose": 0, "report": 1},
    "local_units.json": {"local-units": 0, "gamma": 0, "report": 0},
    "corollary47.json": {
        "check-module-algebra": 0, "inner-faithful": 1, "ideal": 0, "decompose": 0, "report": 1,
    },
    "corollary47_trivialized.json": {"check-module-algebra": 0, "inner-faithful": 0, "report": 0},
    "block_swap_smash.json": {"smash": 0, "check-module-algebra": 0, "check-weak-hopf": 0, "report": 0},
    "poly_gl.json": {
        "check-groupoid": 0, "check-module-algebra": 0, "check-lie-action": 0,
        "envelope-consistency": 0, "der": 0,
    },
    "trivial.json": {"check-groupoid": 0, "groupoid-algebra": 0, "check-weak-hopf": 0, "gamma": 0, "report": 0},
    "derivations.json": {"der": 0, "report": 0},
}


def render(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    if set(EXPECTED) != set(CORPUS):
        sys.exit(f"manifest and builders disagree: {sorted(set(EXPECTED) ^ set(CORPUS))}")
    wanted = {name: render(build()) for name, build in CORPUS.items()}
    wanted["manifest.json"] = render(EXPECTED)
    stale = []
    for name, text in sorted(wanted.items()):
        p = OUT / name
        if args.check:
            if not p.is_file() or p.read_text() != text:
                stale.append(name)
        else:
            p.write_text(text)
    if stale:
        print("stale:", ", ".join(stale))
        return 1
    print(f"{len(wanted)} files {'up to date' if args.check else 'written'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
