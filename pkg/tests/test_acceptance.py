"""Acceptance criteria, one test per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line
per criterion.  Statistical criteria use fixed seeds chosen during
calibration (documented inline); their thresholds are desk-scale
witnesses, not theoretical constants.
"""

import math
import time
from fractions import Fraction as F

import numpy as np

from conftest import golden_exact_iet, golden_float_iet, \
    grid_min_quadratic_d2, sampled_conj_min
from ietext import (
    ExtendedState,
    Representation,
    SU2,
    Torus,
    U1,
    check_P2,
    fixed_vector_obstruction,
    haar_tuple,
    identity_tuple,
    rauzy_step,
    renormalize,
    rep_matrix,
    return_word,
    track_conjugacy,
    track_fixed_vector,
    walk,
)
from ietext.cli import main
from ietext.groups import GroupElement, GTuple, conj_min_distance
from ietext.iet import Permutation
from ietext.sampling import (
    random_exact_iet,
    random_exact_state,
    random_float_iet,
)
from ietext.selftest import _tail_decayed


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_rauzy_oracle_equivalence():
    """200 random exact IETs, one step, 100 exact points: exact equality."""
    t0 = time.time()
    rng = np.random.default_rng(1001)
    points = 0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        iet = random_exact_iet(n, rng, denominator=1000)
        _, induced, matrix, words = rauzy_step(iet)
        ok = matrix.apply(induced.lengths) == iet.lengths
        for _ in range(100):
            x = F(int(rng.integers(0, 10**9)), 10**9) * induced.total
            point, steps, word = iet.first_return(x, induced.total)
            j = induced.interval_index(x)
            ok &= (point == induced.apply(x) and word == words.words[j - 1]
                   and steps == len(word))
            points += 1
            if not ok:
                break
        if not ok:
            break
    elapsed = time.time() - t0
    report(1, ok and elapsed < 10.0,
           f"{points} exact first-return agreements in {elapsed:.1f}s (< 10s)")


def test_criterion_2_extended_cocycle_oracle():
    """100 extended states (SU2 + Torus(2)), 10 steps: tuple components
    equal ordered products along return words."""
    t0 = time.time()
    su2, torus = SU2(), Torus(2)
    worst_frob = 0.0
    exact_ok = True
    rng = np.random.default_rng(1002)
    for trial in range(100):
        n = int(rng.integers(2, 5))
        if trial % 2 == 0:
            group = su2
            state = random_exact_state(n, group, rng, steps_required=10)
        else:
            group = torus
            iet = random_exact_iet(n, rng)
            elements = tuple(
                GroupElement(torus, (F(int(rng.integers(0, 997)), 997),
                                     F(int(rng.integers(0, 997)), 997)))
                for _ in range(n))
            state = ExtendedState(iet, GTuple(torus, elements))
            if renormalize(state, 10).m < 10:
                continue
        path = renormalize(state, 10)
        final = path.steps[-1].tuple_after
        for j in range(1, n + 1):
            prod = group.identity()
            for s in return_word(path, j):
                prod = state.tuple.elements[s - 1] * prod
            if group is su2:
                frob = group.distance(prod, final.elements[j - 1]) * math.sqrt(2)
                worst_frob = max(worst_frob, frob)
            else:
                exact_ok &= prod.data == final.elements[j - 1].data
    elapsed = time.time() - t0
    ok = exact_ok and worst_frob < 1e-9 and elapsed < 30.0
    report(2, ok, f"torus exact={exact_ok}, SU2 worst Frobenius "
                  f"{worst_frob:.2e} (< 1e-9), {elapsed:.1f}s (< 30s)")


def test_criterion_3_haar_preservation():
    """1e5 Haar tuples through Nielsen maps and both induction maps:
    every tested nontrivial character mean within 5/sqrt(N)."""
    from ietext import RauzyRule, gamma_apply, nielsen_alpha, nielsen_beta

    t0 = time.time()
    N = 10**5
    bound = 5.0 / math.sqrt(N)
    n = 3
    perm = Permutation((3, 1, 2))
    worst = 0.0
    from ietext.groups import character
    for group, reps in (
            (U1(), [Representation(U1(), 1), Representation(U1(), 2)]),
            (SU2(), [Representation(SU2(), F(1, 2)), Representation(SU2(), 1)])):
        rng = np.random.default_rng(1003)
        tuples = [haar_tuple(group, n, rng) for _ in range(N)]
        for push in (lambda t: nielsen_alpha(t, 1, 3), nielsen_beta,
                     lambda t: gamma_apply(RauzyRule.A, perm, t),
                     lambda t: gamma_apply(RauzyRule.B, perm, t)):
            pushed = [push(t) for t in tuples]
            for rep in reps:
                for comp in range(n):
                    mean = sum(character(rep, t.elements[comp])
                               for t in pushed) / N
                    worst = max(worst, abs(mean))
    elapsed = time.time() - t0
    ok = worst < bound and elapsed < 60.0
    report(3, ok, f"worst |char mean| {worst:.4f} (< {bound:.4f}), "
                  f"{elapsed:.1f}s (< 60s)")


def test_criterion_4_golden_rotation_structure():
    """Exact golden data: rules ABAB... for 50 steps, balanced lengths."""
    iet = golden_exact_iet()
    path = renormalize(ExtendedState(iet, identity_tuple(U1(), 2)), 50)
    rules_ok = (path.m == 50
                and "".join(str(r.rule) for r in path.steps) == "AB" * 25)
    min_ok = all(min(rec.iet_after.normalized().lengths) >= F(38, 100)
                 for rec in path.steps[:30])
    p2_ok = all(check_P2(iet, m, F(35, 100)) for m in range(1, 31))
    report(4, rules_ok and min_ok and p2_ok,
           f"rule alternation={rules_ok}, min component >= 0.38 for m<=30="
           f"{min_ok}, P2(0.35)={p2_ok} (exact arithmetic)")


def test_criterion_5_equidistribution():
    """Weyl sums < 0.05 at K=1e5 in >= 9/10 fixed seeds (U1 and SU2).

    Seed blocks 0..9 (U1) and 4000..4009 (SU2) were fixed during
    calibration; the SU2 spin-1 sum decays slowly for a minority of draws,
    which the 9/10 margin absorbs."""
    t0 = time.time()
    K = 10**5
    u1, su2 = U1(), SU2()
    golden = golden_float_iet()
    u1_reps = [Representation(u1, m) for m in (1, 2, 3)]
    u1_pass = 0
    for seed in range(10):
        rng = np.random.default_rng(seed)
        g = haar_tuple(u1, 2, rng)
        x = float(rng.random()) * golden.total
        rec = walk(golden, g, x, K, u1_reps)
        u1_pass += all(abs(rec.weyl_sum(r)) < 0.05 for r in u1_reps)
    su2_reps = [Representation(su2, F(1, 2)), Representation(su2, 1)]
    su2_pass = 0
    for seed in range(10):
        rng = np.random.default_rng(4000 + seed)
        iet = random_exact_iet(3, rng)
        g = haar_tuple(su2, 3, rng)
        x = F(int(rng.integers(0, 10**9)), 10**9) * iet.total
        rec = walk(iet, g, x, K, su2_reps)
        su2_pass += all(abs(rec.weyl_sum(r)) < 0.05 for r in su2_reps)
    elapsed = time.time() - t0
    ok = u1_pass >= 9 and su2_pass >= 9 and elapsed < 120.0
    report(5, ok, f"U1 {u1_pass}/10, SU2 {su2_pass}/10 seeds below 0.05, "
                  f"{elapsed:.1f}s (< 120s)")


def test_criterion_6_obstruction_functional():
    su2 = SU2()
    rep_half = Representation(su2, F(1, 2))
    rep_one = Representation(su2, 1)
    id_ok = fixed_vector_obstruction(identity_tuple(su2, 3), rep_one).ob == 0.0

    rng = np.random.default_rng(1006)
    axis_ok = True
    for _ in range(100):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        elements = []
        for _ in range(3):
            half = 0.5 * float(rng.uniform(0, 2 * math.pi))
            s = math.sin(half)
            elements.append(GroupElement(su2, (
                math.cos(half), s * axis[0], s * axis[1], s * axis[2])))
        axis_ok &= fixed_vector_obstruction(
            GTuple(su2, tuple(elements)), rep_one).ob <= 1e-12

    pair_hits = 0
    worst_gap = 0.0
    for _ in range(100):
        tup = haar_tuple(su2, 2, rng)
        rep_report = fixed_vector_obstruction(tup, rep_half)
        pair_hits += rep_report.ob > 1e-3
        mats = [rep_matrix(rep_half, el) for el in tup.elements]
        m = sum((u - np.eye(2)).conj().T @ (u - np.eye(2)) for u in mats)
        grid_q, grid_w = grid_min_quadratic_d2(m, coarse=10**4)
        grid_ob = max(float(np.linalg.norm(u @ grid_w - grid_w)) for u in mats)
        worst_gap = max(worst_gap, abs(grid_q - rep_report.surrogate**2),
                        abs(grid_ob - rep_report.ob))
    ok = id_ok and axis_ok and pair_hits == 100 and worst_gap <= 1e-3
    report(6, ok, f"identity exact zero={id_ok}, shared-axis<=1e-12={axis_ok}, "
                  f"Haar pairs ob>1e-3: {pair_hits}/100, grid-vs-eigen gap "
                  f"{worst_gap:.2e} (<= 1e-3)")


def test_criterion_7_conjugacy_functional():
    su2 = SU2()
    rng = np.random.default_rng(1007)
    worst = 0.0
    for _ in range(100):
        a, b = su2.haar(rng), su2.haar(rng)
        worst = max(worst, abs(conj_min_distance(a, b)
                               - sampled_conj_min(a, b, 10**4, rng)))
    iet = random_float_iet(3, np.random.default_rng(170))
    g = haar_tuple(su2, 3, np.random.default_rng(171))
    zeros = track_conjugacy(ExtendedState(iet, g), ExtendedState(iet, g), steps=30)
    zero_ok = all(r.value == 0.0 for r in zeros)
    a = su2.haar(np.random.default_rng(172))
    conj = track_conjugacy(ExtendedState(iet, g),
                           ExtendedState(iet, g.conjugated(a)), steps=30)
    conj_ok = len(conj) == 31 and all(r.value <= 1e-10 for r in conj)
    ok = worst <= 1e-3 and zero_ok and conj_ok
    report(7, ok, f"closed form vs 1e4-sample oracle worst {worst:.2e} "
                  f"(<= 1e-3), equal tuples exactly zero={zero_ok}, global "
                  f"conjugation <= 1e-10 over 30 steps={conj_ok}")


def test_criterion_8_rigidity_witnesses():
    """50-run batches of both trackers: distributions emitted, no run with
    terminal monotone decay below the documented 1e-6 floor (a calibration
    threshold, mirrored in the selftest batch summary)."""
    su2 = SU2()
    rep_one = Representation(su2, 1)
    decayed = 0
    ob_terminals, conj_terminals = [], []
    for i in range(50):
        rng = np.random.default_rng(8000 + i)
        iet = random_float_iet(3, rng)
        series = [r.ob for r in track_fixed_vector(
            ExtendedState(iet, haar_tuple(su2, 3, rng)), rep_one, steps=30)]
        ob_terminals.append(series[-1])
        decayed += _tail_decayed(series)
    for i in range(50):
        rng = np.random.default_rng(8100 + i)
        iet = random_float_iet(3, rng)
        g = ExtendedState(iet, haar_tuple(su2, 3, rng))
        h = ExtendedState(iet, haar_tuple(su2, 3, rng))
        series = [r.value for r in track_conjugacy(g, h, steps=30)]
        conj_terminals.append(series[-1])
        decayed += _tail_decayed(series)
    ok = decayed == 0
    report(8, ok, f"decayed runs {decayed}/100 (floor 1e-6); fixed-vector "
                  f"terminal min {min(ob_terminals):.3f}, conjugacy terminal "
                  f"min {min(conj_terminals):.4f}")


def test_criterion_9_cli_determinism(tmp_path):
    renorm_args = ["renorm", "--lengths", "random", "--n", "3", "--group", "su2",
                   "--tuple", "haar", "--steps", "15", "--seed", "90"]
    walk_args = ["walk", "--lengths", "random", "--n", "2", "--perm", "2,1",
                 "--group", "u1", "--tuple", "haar", "--K", "20000",
                 "--reps", "1,2,3", "--stride", "1000", "--seed", "91"]
    ok = True
    for name, args in (("renorm", renorm_args), ("walk", walk_args)):
        a, b = tmp_path / f"{name}_a.csv", tmp_path / f"{name}_b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        ok &= a.read_bytes() == b.read_bytes()
    report(9, ok, "cmd_renorm and cmd_walk byte-identical across reruns")
