"""Regenerate the golden fixtures in tests/golden/ (unit GP(5,2), GP(10,2), Kneser(7,3))."""

import json
from pathlib import Path

from dmrealize.characterize import classify
from dmrealize.graph import FamilySpec
from dmrealize.io import dump_graph, dump_matrix, verdict_to_json
from dmrealize.metric import all_pairs_distances

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"
FAMILIES = {"gp_5_2": FamilySpec.gp(5, 2), "gp_10_2": FamilySpec.gp(10, 2), "kneser_7_3": FamilySpec.kneser(7, 3)}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, fam in FAMILIES.items():
        g = fam.graph()
        d = all_pairs_distances(g)
        (OUT / f"{name}.txt").write_text(dump_graph(g))
        (OUT / f"{name}.csv").write_text(dump_matrix(d))
        verdict = verdict_to_json(classify(d, fam))
        verdict.pop("realization")
        (OUT / f"{name}_verdict.json").write_text(json.dumps(verdict, indent=2) + "\n")
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
