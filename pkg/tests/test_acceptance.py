"""Acceptance gate: the ten headline checks, one verdict line each.

Each test prints ACCEPTANCE <number> ... PASS or FAIL on the terminal
(bypassing capture) and then asserts, so a red line always comes with a
failing test of the same number.
"""

import time
from fractions import Fraction
from random import Random

import pytest

from birmod import (BurnElem, BurnGen, CyclicAction, FormalSum,
                    GroupRingElem, QZ, RewriteRules, SparseMat, boundary_snc,
                    bridge, build_equivariant_diagram, canonicalize,
                    check_grading, check_laws, check_poset_in_groupoids,
                    descent_failures, gr_rho, gr_sigma, model_from_json,
                    pushforward, rank_q, relation_matrix, rho_op, sigma_op,
                    torsion, tower_boundary_check)
from conftest import (chain_category, group_category, parallel_category,
                      random_snc_model)


def _verdict(capsys, num, label, ok, extra=""):
    with capsys.disabled():
        tail = " (%s)" % extra if extra else ""
        print("ACCEPTANCE %2d %-52s %s%s"
              % (num, label, "PASS" if ok else "FAIL", tail))
    assert ok, "acceptance check %d failed: %s" % (num, label)


@pytest.fixture(scope="module")
def composition_report():
    t0 = time.perf_counter()
    rep = check_laws("lemma48", 3, 8, (2, 3, 4))
    return rep, time.perf_counter() - t0


def euler_phi(N):
    return sum(1 for j in range(1, N + 1) if Fraction(j, N).denominator == N)


def test_criterion_01_operator_composition_laws(capsys, composition_report):
    rep, elapsed = composition_report
    scalar = next(l for l in rep.laws if l.law == "scale_lift_scalar")
    ok = (rep.failures_total == 0
          and all(l.checked > 0 for l in rep.laws)
          and scalar.failures == 0
          and "arity 1" in rep.info["scalar_note"]
          and len(rep.info["projected_composite_deviations"]) > 0)
    _verdict(capsys, 1, "operator composition laws, arity<=3 modulus<=8",
             ok, "%.1fs, %d checks" % (elapsed, sum(l.checked
                                                    for l in rep.laws)))
    assert elapsed < 60.0


def test_criterion_02_lift_is_a_product_hom(capsys):
    rep = check_laws("ringhom", 2, 6, (2, 3))
    law = rep.laws[0]
    ok = rep.failures_total == 0 and law.checked > 0
    _verdict(capsys, 2, "lift respects the level product, arity<=2 mod<=6",
             ok, "%d checks" % law.checked)


def test_criterion_03_scale_respects_coproduct(capsys):
    rep = check_laws("coalg", 3, 8, (2, 3, 5))
    ok = (rep.failures_total == 0
          and rep.laws[0].checked > 0
          and isinstance(rep.info["non_coprime_reports"], list))
    _verdict(capsys, 3, "coprime scaling commutes with the coproduct",
             ok, "%d checks, %d reports"
             % (rep.laws[0].checked,
                len(rep.info["non_coprime_reports"])))


def test_criterion_04_averaged_lift_sections_scaling(capsys,
                                                     composition_report):
    rep, _ = composition_report
    law = next(l for l in rep.laws if l.law == "averaged_lift_section")
    ok = law.failures == 0 and law.checked > 0
    _verdict(capsys, 4, "averaged lift is a rational section of scaling",
             ok, "%d checks" % law.checked)


def test_criterion_05_rank_table_and_row_order(capsys):
    ok = True
    for N in range(2, 21):
        if relation_matrix(1, N).quotient_rank() != euler_phi(N):
            ok = False
    for N in range(3, 21):
        if relation_matrix(1, N, minus=True).quotient_rank() != \
                euler_phi(N) // 2:
            ok = False
    two = relation_matrix(1, 2, minus=True)
    if two.quotient_rank() != 0 or two.invariant_factors() != (2,):
        ok = False
    shuffles = 0
    for n in range(1, 4):
        for N in range(2, 7):
            for minus in (False, True):
                m = relation_matrix(n, N, minus)
                base = rank_q(m.mat)
                rng = Random(1000 * n + 10 * N + minus)
                for _ in range(5):
                    rows = [dict(r) for r in m.mat.rows]
                    rng.shuffle(rows)
                    shuffles += 1
                    if rank_q(SparseMat(rows, m.mat.ncols)) != base:
                        ok = False
    _verdict(capsys, 5, "arity-1 ranks match the unit counts, order-free",
             ok, "%d shuffles" % shuffles)


def test_criterion_06_operators_descend_to_quotients(capsys):
    bad = []
    for n in range(1, 4):
        for N in range(2, 7):
            for minus in (False, True):
                bad.extend(descent_failures(n, N, minus, (2, 3)))
    _verdict(capsys, 6, "scale, lift, torsion shift descend to quotients",
             not bad, "%d escapes" % len(bad))


def test_criterion_07_boundary_grading_and_blowdown(capsys):
    rng = Random(20260823)
    graded = all(
        not check_grading(boundary_snc(m), m.dim - 1)
        for m in (random_snc_model(rng) for _ in range(200)))

    xp = model_from_json({"dim": 2, "labels": ["Zt", "E"],
                          "strata": {"1,2": {"name": "pt", "dim": 0}},
                          "name": "Xp", "boundary": "Zp"})
    rules = RewriteRules([("Zt", "Z"), ("E", "line/pt"),
                          ("line/pt", "pt x A^1")])
    pushed = pushforward(boundary_snc(xp), {"Zp": "Z"}, rules)
    blowdown = pushed == BurnElem({BurnGen("Z", 0, "Z", 1): 1})

    big = model_from_json({"dim": 2, "labels": ["Y"], "strata": {},
                           "name": "X", "boundary": "Y"})
    small = model_from_json({"dim": 1, "labels": ["p"], "strata": {},
                             "name": "Y", "boundary": "Z"})
    tower = tower_boundary_check(
        big, small, {"Y": BurnGen("p", 0, "Z", 0)}).ok

    ok = graded and blowdown and tower
    _verdict(capsys, 7, "boundaries grade in codim 1; blow-down and tower",
             ok, "200 models")


def test_criterion_08_action_orders_and_twists(capsys):
    ok = True
    pairs = 0
    for M in range(1, 7):
        labels = ["c%d" % i for i in range(M)]
        act = CyclicAction(M, {labels[i]: labels[(i + 1) % M]
                               for i in range(M)})
        if act.versch(1) != act:
            ok = False
        for n in range(1, 5):
            if (M * n) % act.versch(n).order() != 0:
                ok = False
            pairs += 1
        for i in range(1, 5):
            for j in range(1, 5):
                if act.twist(i).twist(j) != act.twist(i * j):
                    ok = False
    _verdict(capsys, 8, "copy-cycling orders divide M*n; twists compose",
             ok, "%d (M, n) cells" % pairs)


def test_criterion_09_group_ring_model_and_bridge(capsys):
    points = [QZ(p, q) for q in range(1, 13) for p in range(q)
              if QZ(p, q).order == q]
    ok = True
    for r in points:
        x = GroupRingElem.of(r)
        for n in range(1, 7):
            if gr_sigma(n, gr_rho(n, x)) != n * x:
                ok = False
            shift = GroupRingElem({r + t: 1 for t in torsion(n)})
            if gr_rho(n, gr_sigma(n, x)) != shift:
                ok = False
    checked_sigma = 0
    for r in points:
        if r.order < 2:
            continue
        xs = FormalSum.of(canonicalize([r]))
        for k in range(2, 7):
            if bridge(rho_op(k, xs)) != gr_rho(k, bridge(xs)):
                ok = False
            sx = sigma_op(k, xs)
            if not sx.is_zero():
                checked_sigma += 1
                if bridge(sx) != gr_sigma(k, bridge(xs)):
                    ok = False
    # the annihilated case genuinely separates the two sides
    killed = FormalSum.of(canonicalize([QZ(1, 2)]))
    if not (bridge(sigma_op(2, killed)).is_zero()
            and gr_sigma(2, bridge(killed)) == GroupRingElem.of(QZ(0))):
        ok = False
    _verdict(capsys, 9, "group-ring scalar and shift laws; bridge commutes",
             ok, "%d points, %d scale cases" % (len(points), checked_sigma))


def test_criterion_10_diagram_shifts_and_category_verdicts(capsys):
    data = {"ladders": [["X", "Y", "Z"]],
            "morphisms": [{"from": ["X", "Y"], "to": ["Y", "Z"]}],
            "twists": [["X", "Y"], ["Y", "Z"]],
            "i_range": [0, 1, 2], "w_range": [0, 1]}
    dia = build_equivariant_diagram(data)
    want = {"pullback": (0, 0), "boundary": (1, 0), "twist": (2, 1)}
    shifts_ok = bool(dia.edges) and all(
        (e.dst[2] - e.src[2], e.dst[3] - e.src[3]) == want[e.kind]
        for e in dia.edges)

    verdicts = (check_poset_in_groupoids(group_category()).ok,
                check_poset_in_groupoids(chain_category()).ok,
                check_poset_in_groupoids(parallel_category()).ok)
    ok = shifts_ok and verdicts == (True, True, False)
    _verdict(capsys, 10, "degree/weight shifts exact; shape verdicts",
             ok, "%d edges" % dia.edge_count())
