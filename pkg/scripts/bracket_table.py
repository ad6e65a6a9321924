"""Print the bivector commutator table of Cl(p,q) as computed by the product.

Each row lists [B_ij, B_kl] for i<j, k<l, with B_ab = (1/2) e_a e_b, and flags
any disagreement with the closed form in gk.spin.

    python3 scripts/bracket_table.py --sig 4,0
"""

import argparse
from itertools import combinations

from gk.clifford import Signature, commutator
from gk.spin import bivector, bivector_bracket_rhs


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sig", default="3,0")
    ap.add_argument("--nonzero", action="store_true", help="hide vanishing brackets")
    args = ap.parse_args()
    sig = Signature.parse(args.sig)

    pairs = list(combinations(range(1, sig.n + 1), 2))
    mismatches = 0
    for (i, j) in pairs:
        for (k, l) in pairs:
            got = commutator(bivector(i, j, sig), bivector(k, l, sig))
            ok = got == bivector_bracket_rhs(i, j, k, l, sig)
            mismatches += not ok
            if args.nonzero and got.is_zero():
                continue
            flag = "" if ok else "   <-- closed form disagrees"
            print(f"[B{i}{j}, B{k}{l}] = {got}{flag}")
    print(f"{sig}: {len(pairs) ** 2} brackets, {mismatches} mismatches")


if __name__ == "__main__":
    main()
