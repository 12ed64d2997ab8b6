"""Run round-trip fuzzing over several families and write one JSON report per family.

    python scripts/fuzz_campaign.py --trials 200 --seed 3 --out runs/
"""

import argparse
from pathlib import Path

from dmrealize.graph import FamilySpec
from dmrealize.harness import SampleConfig, fuzz_roundtrip
from dmrealize.io import fuzz_report_to_json, write_json

DEFAULT_FAMILIES = ["gp:5,2", "gp:7,2", "gp:7,3", "gp:9,2", "gp:11,3", "gp:13,5", "kneser:7,3"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", nargs="+", default=DEFAULT_FAMILIES)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("runs"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for text in args.families:
        fam = FamilySpec.parse(text)
        rep = fuzz_roundtrip(SampleConfig(fam, seed=args.seed), args.trials, workers=args.workers)
        write_json(args.out / f"fuzz_{fam.kind}_{fam.n}_{fam.k}.json", fuzz_report_to_json(rep))
        print(f"{fam}: {rep.passes}/{rep.trials} in {rep.seconds:.1f}s")


if __name__ == "__main__":
    main()
