"""Sweep rotor angles and report the worst deviations seen.

Compares the closed-form rotor against exp_series of its matrix image and
checks the extracted rotation for orthogonality.

    python3 scripts/rotor_sweep.py --steps 64
"""

import argparse
import math
from itertools import combinations

import numpy as np

from gk.clifford import CliffordElement, Signature
from gk.matrices import build_clifford_generators, build_fermion_rep, exp_series, rep_map
from gk.spin import rotor, rotor_to_rotation


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=32)
    ap.add_argument("--modes", type=int, default=2)
    args = ap.parse_args()

    sig = Signature(2 * args.modes, 0)
    gens = build_clifford_generators(build_fermion_rep(args.modes))
    worst_exp = worst_orth = worst_det = 0.0
    for i, j in combinations(range(1, sig.n + 1), 2):
        for t in np.linspace(-2 * math.pi, 2 * math.pi, args.steps):
            r = rotor(i, j, float(t), sig)
            want = exp_series(rep_map(CliffordElement.blade(sig, (i, j), t / 2), gens))
            worst_exp = max(worst_exp, float(np.max(np.abs(rep_map(r.elem, gens) - want))))
            m = rotor_to_rotation(r)
            worst_orth = max(worst_orth, float(np.max(np.abs(m.T @ m - np.eye(sig.n)))))
            worst_det = max(worst_det, abs(np.linalg.det(m) - 1))
    print(f"{sig}, {args.steps} angles per plane")
    print(f"  exp_series vs closed form : {worst_exp:.3e}")
    print(f"  |R^T R - I|               : {worst_orth:.3e}")
    print(f"  |det R - 1|               : {worst_det:.3e}")


if __name__ == "__main__":
    main()
