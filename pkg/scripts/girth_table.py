"""Tabulate girth and checker scope for GP(n,k) over a range of n."""

import argparse

from dmrealize.characterize import TheoremScopeError, check_scope
from dmrealize.graph import FamilySpec, girth, gp_girth_precondition


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=16)
    args = ap.parse_args()
    print(f"{'n':>3} {'k':>3} {'girth':>5} {'cond':>5}  scope")
    for n in range(3, args.max_n + 1):
        for k in range(1, (n + 1) // 2):
            if 2 * k >= n:
                continue
            fam = FamilySpec.gp(n, k)
            try:
                check_scope(fam)
                scope = "in scope"
            except TheoremScopeError as exc:
                scope = str(exc)
            print(f"{n:>3} {k:>3} {girth(fam.graph()):>5} {str(gp_girth_precondition(n, k)):>5}  {scope}")


if __name__ == "__main__":
    main()
