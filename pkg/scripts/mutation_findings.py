"""Mutation campaign across families; prints every finding for manual triage."""

import argparse
import json

from dmrealize.graph import FamilySpec
from dmrealize.harness import SampleConfig, mutation_campaign


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--families", nargs="+", default=["gp:5,2", "gp:7,2", "kneser:7,3"])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    for text in args.families:
        out = mutation_campaign(SampleConfig(FamilySpec.parse(text), seed=args.seed), args.trials)
        print(f"{text}: {out['rejected_with_witness']}/{out['trials']} rejected with rechecked witness")
        for f in out["findings"]:
            print("  " + json.dumps(f))


if __name__ == "__main__":
    main()
