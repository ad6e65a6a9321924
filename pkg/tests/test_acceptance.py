"""Acceptance criteria, one marker per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report for one PASS/FAIL line per criterion.
"""

import math
import subprocess
import sys
import time
from itertools import product
from math import comb
from pathlib import Path

import numpy as np
import pytest

from gk.blades import Multivector, basis_blades, grade_project, wedge
from gk.clifford import (
    CliffordElement,
    Signature,
    anticommutator,
    commutator,
    contract_left,
    contract_right,
)
from gk.matrices import (
    DEL_HAT,
    THETA_HAT,
    build_clifford_generators,
    build_fermion_rep,
    exp_series,
    rep_map,
)
from gk.qcalc import QContext, QPolynomial, q_derivative, q_difference_quotient, qvar_matrices
from gk.spin import (
    bivector,
    bivector_bracket_rhs,
    quaternion_basis,
    Rotor,
    rotor,
    rotor_to_rotation,
    so3_basis,
    so3_bivector_images,
)

ROOT = Path(__file__).resolve().parents[1]
SUITE = ROOT / "src" / "gk" / "data" / "identities.gk"

crit = pytest.mark.criterion


def random_mv(rng, n, grade=None, terms=None):
    """Random complex multivector; ``terms`` limits the number of blades."""
    masks = list(range(1 << n)) if grade is None else basis_blades(n, grade)
    if terms is not None and terms < len(masks):
        masks = list(rng.choice(masks, size=terms, replace=False))
    coeffs = rng.uniform(-1, 1, len(masks)) + 1j * rng.uniform(-1, 1, len(masks))
    return Multivector(n, {int(m): complex(c) for m, c in zip(masks, coeffs)})


# 1 -----------------------------------------------------------------------

@crit(1, "CAR relations, N = 1..6, residual 0, < 10 s")
def test_car_suite():
    start = time.perf_counter()
    for N in range(1, 7):
        rep = build_fermion_rep(N)
        eye = np.eye(rep.dim)
        count = 0
        for i in range(N):
            for j in range(N):
                assert not anticommutator(rep.theta[i], rep.theta[j]).any()
                assert not anticommutator(rep.dels[i], rep.dels[j]).any()
                target = eye if i == j else 0
                assert not (anticommutator(rep.dels[i], rep.theta[j]) - target).any()
                count += 3
        assert count == 3 * N * N
    assert time.perf_counter() - start < 10


# 2 -----------------------------------------------------------------------

@crit(2, "Euclidean Clifford realization, N = 1..5, residual 0")
def test_euclidean_realization():
    for N in range(1, 6):
        gens = build_clifford_generators(build_fermion_rep(N))
        assert len(gens) == 2 * N
        eye = np.eye(2**N)
        for a, b in product(range(2 * N), repeat=2):
            target = 2 * eye if a == b else 0
            assert not (anticommutator(gens[a], gens[b]) - target).any()


# 3 -----------------------------------------------------------------------

@crit(3, "exterior grading and 1000 associativity/antisymmetry triples")
def test_grading_counts():
    for n in range(1, 11):
        counts = [len(basis_blades(n, k)) for k in range(n + 1)]
        assert counts == [comb(n, k) for k in range(n + 1)]
        assert sum(counts) == 2**n


@crit(3, "exterior grading and 1000 associativity/antisymmetry triples")
def test_wedge_triples():
    rng = np.random.default_rng(20241014)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        a, b, c = (random_mv(rng, n, terms=int(rng.integers(1, 7))) for _ in range(3))
        left, right = wedge(wedge(a, b), c), wedge(a, wedge(b, c))
        assert (left - right).max_abs() <= 1e-12 * max(1.0, left.max_abs())

        r, s = int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1))
        ar, bs = grade_project(a, r), grade_project(b, s)
        swapped = wedge(bs, ar) * (-1) ** (r * s)
        assert (wedge(ar, bs) - swapped).max_abs() <= 1e-12

        v = random_mv(rng, n, grade=1)
        assert wedge(v, v).max_abs() <= 1e-12


# 4 -----------------------------------------------------------------------

@crit(4, "rep_map homomorphism on Cl(4,0) and Cl(6,0)")
@pytest.mark.parametrize("modes", [2, 3])
def test_rep_homomorphism(modes):
    rng = np.random.default_rng(modes)
    sig = Signature(2 * modes, 0)
    gens = build_clifford_generators(build_fermion_rep(modes))
    for _ in range(100):
        a = CliffordElement(sig, random_mv(rng, sig.n))
        b = CliffordElement(sig, random_mv(rng, sig.n))
        lhs = rep_map(a * b, gens)
        rhs = rep_map(a, gens) @ rep_map(b, gens)
        assert np.max(np.abs(lhs - rhs)) <= 1e-9


# 5 -----------------------------------------------------------------------

@crit(5, "q-derivative rule vs difference quotient, k = 2..16")
@pytest.mark.parametrize("k", range(2, 17))
def test_q_rule_matches_quotient(k):
    rng = np.random.default_rng(100 + k)
    ctx = QContext(k)
    radii = rng.uniform(0.5, 1.2, 10)
    phases = rng.uniform(0, 2 * math.pi, 10)
    points = radii * np.exp(1j * phases)
    for hat in (False, True):
        for n in range(k):
            f = QPolynomial.monomial(ctx, n)
            df = q_derivative(f, hat)
            for t in points:
                assert abs(q_difference_quotient(f, complex(t), hat) - df(complex(t))) <= 1e-10


@crit(5, "q-derivative rule vs difference quotient, k = 2..16")
@pytest.mark.parametrize("k", range(2, 17))
def test_theta_nilpotent(k):
    theta, _ = qvar_matrices(QContext(k))
    assert np.linalg.matrix_power(theta, k - 1).any()
    assert not np.linalg.matrix_power(theta, k).any()


@crit(5, "q-derivative rule vs difference quotient, k = 2..16")
def test_k2_base_pair():
    theta, d = qvar_matrices(QContext(2))
    assert np.array_equal(theta, THETA_HAT)
    assert np.array_equal(d, DEL_HAT)


# 6 -----------------------------------------------------------------------

@crit(6, "contraction parity, n <= 6")
def test_contraction_parity():
    rng = np.random.default_rng(6)
    for n in range(1, 7):
        for p in range(n + 1):
            sig = Signature(p, n - p)
            for k in range(1, n + 1):
                for _ in range(5):
                    v = CliffordElement(sig, random_mv(rng, n, grade=1))
                    w = CliffordElement(sig, random_mv(rng, n, grade=k))
                    diff = contract_left(v, w) - contract_right(w, v) * (-1) ** (k - 1)
                    assert diff.max_abs() <= 1e-12


# 7 -----------------------------------------------------------------------

ANGLES = [0.3, math.pi / 2, 2.0, -1.1]
PLANES = [(1, 2), (2, 3), (1, 4)]


@crit(7, "rotor suite: SO(n), exp agreement, double cover")
def test_rotation_is_special_orthogonal():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4, 5):
        sig = Signature(n, 0)
        for _ in range(20):
            r = None
            for _ in range(3):
                i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
                step = rotor(int(i), int(j), float(rng.uniform(-math.pi, math.pi)), sig)
                r = step if r is None else Rotor(r.elem * step.elem)
            m = rotor_to_rotation(r)
            assert np.max(np.abs(m.T @ m - np.eye(n))) <= 1e-12
            assert abs(np.linalg.det(m) - 1) <= 1e-12


@crit(7, "rotor suite: SO(n), exp agreement, double cover")
@pytest.mark.parametrize("plane", PLANES)
@pytest.mark.parametrize("angle", ANGLES)
def test_rotor_matches_matrix_exp(plane, angle):
    sig = Signature(4, 0)
    gens = build_clifford_generators(build_fermion_rep(2))
    i, j = plane
    generator = CliffordElement.blade(sig, (i, j), angle / 2)
    want = exp_series(rep_map(generator, gens))
    got = rep_map(rotor(i, j, angle, sig).elem, gens)
    assert np.max(np.abs(got - want)) <= 1e-10


@crit(7, "rotor suite: SO(n), exp agreement, double cover")
@pytest.mark.parametrize("plane", PLANES)
@pytest.mark.parametrize("angle", ANGLES)
def test_double_cover(plane, angle):
    sig = Signature(4, 0)
    r = rotor(*plane, angle, sig)
    assert np.max(np.abs(rotor_to_rotation(r) - rotor_to_rotation(-r))) <= 1e-12
    turned = rotor(*plane, angle + 2 * math.pi, sig)
    assert (turned.elem + r.elem).max_abs() <= 1e-14


# 8 -----------------------------------------------------------------------

# unit quaternion products written out by hand: (sign, unit)
UNIT_TABLE = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


@crit(8, "quaternion relations and group table")
def test_quaternion_squares():
    eye, qi, qj, qk = quaternion_basis()
    assert np.array_equal(eye, np.eye(4))
    for q in (qi, qj, qk):
        assert np.array_equal(q @ q, -eye)
    assert np.array_equal(qi @ qj @ qk, -eye)


@crit(8, "quaternion relations and group table")
def test_quaternion_group_table():
    units = dict(zip("1ijk", quaternion_basis()))
    group = {(s, u): s * m for (u, m), s in product(units.items(), (1, -1))}
    assert len({m.tobytes() for m in group.values()}) == 8

    def label(m):
        hits = [key for key, g in group.items() if np.array_equal(g, m)]
        assert len(hits) == 1, "product left the group"
        return hits[0]

    for (sa, ua), (sb, ub) in product(group, repeat=2):
        s, u = UNIT_TABLE[ua, ub]
        assert label(group[sa, ua] @ group[sb, ub]) == (sa * sb * s, u)


# 9 -----------------------------------------------------------------------

@crit(9, "so(3) and bivector bracket tables")
def test_so3_brackets_exact():
    lx, ly, lz = so3_basis()
    assert np.array_equal(commutator(lx, ly), lz)
    assert np.array_equal(commutator(ly, lz), lx)
    assert np.array_equal(commutator(lz, lx), ly)


@crit(9, "so(3) and bivector bracket tables")
def test_bivector_images_cl3():
    images = so3_bivector_images()
    # [L_a, L_b] = eps_abc L_c is mirrored by the images
    for a, b, c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        assert (commutator(images[a], images[b]) - images[c]).max_abs() <= 1e-12
        assert (commutator(images[b], images[a]) + images[c]).max_abs() <= 1e-12
    for a in range(3):
        assert commutator(images[a], images[a]).max_abs() <= 1e-12


@crit(9, "so(3) and bivector bracket tables")
def test_bivector_table_cl4():
    sig = Signature(4, 0)
    checked = 0
    for i, j, k, l in product(range(1, 5), repeat=4):
        if i == j or k == l:
            continue
        direct = commutator(bivector(i, j, sig), bivector(k, l, sig))
        assert direct == bivector_bracket_rhs(i, j, k, l, sig)
        checked += 1
    assert checked == 144


# 10 ----------------------------------------------------------------------

def gk(*args):
    return subprocess.run([sys.executable, "-m", "gk", *args], capture_output=True, text=True)


@crit(10, "CLI exit codes 0 / 1 / 2")
def test_cli_shipped_suite():
    proc = gk("check", "--suite", str(SUITE))
    assert proc.returncode == 0, proc.stdout
    passed, total = map(int, proc.stdout.splitlines()[-1].split()[1].split("/"))
    assert passed == total >= 25


@crit(10, "CLI exit codes 0 / 1 / 2")
def test_cli_false_check():
    proc = gk("check", "e1*e2 == e2*e1", "--sig", "3,0")
    assert proc.returncode == 1
    assert proc.stdout.startswith("FAIL")


@crit(10, "CLI exit codes 0 / 1 / 2")
def test_cli_malformed():
    proc = gk("check", "e1 + (e2 ^ == e3", "--sig", "3,0")
    assert proc.returncode == 2
    assert "offset 12" in proc.stdout
