"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Arithmetic is exact everywhere, so every identity is checked with zero
tolerance; the stated time budgets are part of each criterion.
"""
import random
import time

from greenkit.cli import dress_report, frobenius_report, green_report, monadicity_report, rectification_suite
from greenkit.cohomology import cohomology_green_functor, cohomology_group
from greenkit.corpus import CORPUS, by_name
from greenkit.exactla import GF, QQ
from greenkit.frobenius import induced_frobenius, verify_frobenius, verify_half_braiding, verify_projection_formula
from greenkit.instances import k_decat_gsets, marks
from greenkit.mackey import check_green_axioms, check_mackey_axioms
from greenkit.monadicity import verify_equivalence
from greenkit.repcat import Induction, random_rep
from greenkit.report import Report

FIELDS = (QQ, GF(5))
SEED = 2024
MARKS_S3 = [["6", "0", "0", "0"], ["3", "1", "0", "0"], ["2", "0", "2", "0"], ["1", "1", "1", "1"]]


def corpus():
    return [by_name(n) for n in CORPUS]


def run_criterion(capsys, number, title, limit, body):
    t0 = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - t0
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {number}: {title} ({elapsed:.1f}s, limit {limit}s) {detail}")
    assert ok, detail
    assert within, f"took {elapsed:.1f}s, limit {limit}s"


def summarize(reports):
    checks = sum(len(r.checks) for r in reports)
    failed = [f"{r.group}/{r.field}:{c.id}" for r in reports for c in r.failures]
    return not failed, f"{checks} checks, {len(failed)} failed {failed[:3]}"


def test_1_rectification(capsys):
    def body():
        return summarize([rectification_suite(G, F, SEED, dim_cap=4, samples=3) for F in FIELDS for G in corpus()])

    run_criterion(capsys, 1, "triangles, special relation and base-change mates", 30, body)


def test_2_projection_formulas(capsys):
    def body():
        reports = []
        for F in FIELDS:
            for G in corpus():
                rng = random.Random(SEED)
                rep = Report("projection", G.name, F.tag, SEED)
                for k, H in enumerate(G.lattice):
                    xs = [random_rep(G, F, rng, 4) for _ in range(3)]
                    ys = [random_rep(H.as_group, F, rng, 4) for _ in range(3)]
                    verify_projection_formula(Induction(G, H), list(zip(xs, ys)), rep, tag=f"H{k}.")
                reports.append(rep)
        return summarize(reports)

    run_criterion(capsys, 2, "projection maps mutually inverse in both slots", 30, body)


def test_3_frobenius(capsys):
    def body():
        reports = []
        for F in FIELDS:
            for G in corpus():
                rep = Report("frobenius", G.name, F.tag)
                for k, H in enumerate(G.lattice):
                    verify_frobenius(induced_frobenius(Induction(G, H), F), rep, tag=f"H{k}.")
                reports.append(rep)
        return summarize(reports)

    run_criterion(capsys, 3, "special commutative Frobenius algebra A(i)", 30, body)


def test_4_half_braiding_and_dimension(capsys):
    def body():
        reports = []
        for F in FIELDS:
            for G in corpus():
                rng = random.Random(SEED)
                rep = Report("half-braiding", G.name, F.tag, SEED)
                for k, H in enumerate(G.lattice):
                    xs = [random_rep(G, F, rng, 4) for _ in range(3)]
                    verify_half_braiding(Induction(G, H), xs, rng, rep, tag=f"H{k}.")
                reports.append(rep)
        return summarize(reports)

    run_criterion(capsys, 4, "half-braiding is the flip; dim A(i) = index two ways", 30, body)


def test_5_monadicity(capsys):
    def body():
        reports = []
        for F in FIELDS:
            for G in corpus():
                rep = Report("monadicity", G.name, F.tag, SEED)
                for k, H in enumerate(G.lattice):
                    verify_equivalence(G, H, F, random.Random(SEED), pairs=3, dim_cap=2, report=rep, tag=f"H{k}.")
                reports.append(rep)
        return summarize(reports)

    run_criterion(capsys, 5, "modules and comodules over A(i) recover the subgroup", 60, body)


def test_6_green_instances(capsys):
    def body():
        reports = []
        for G in corpus():
            for inst in ("burnside", "fixed-points", "end", "convolution"):
                reports.append(green_report(inst, G, QQ))
            if G.order <= 8:
                reports.append(green_report("cohomology", G, QQ, prime=2, max_degree=3))
        return summarize(reports)

    run_criterion(capsys, 6, "Mackey and Green axioms for all instances", 60, body)


def test_7_burnside_cross_check(capsys):
    def body():
        problems = []
        for G in corpus():
            for S in G.lattice:
                k_decat_gsets(G, S, check=True)  # raises on disagreement
            if marks(G).det() == 0:
                problems.append(f"{G.name}: singular marks")
        if marks(by_name("S3")).to_strings() != MARKS_S3:
            problems.append("S3 marks table")
        return not problems, f"{len(CORPUS)} groups, problems {problems}"

    run_criterion(capsys, 7, "G-set products agree with double cosets; marks", 10, body)


def test_8_dress_round_trip(capsys):
    def body():
        return summarize([dress_report(G) for G in corpus()])

    run_criterion(capsys, 8, "internal/external pairings round trip with naturality", 10, body)


def test_9_cohomology(capsys):
    def body():
        problems = []
        c2, v4 = by_name("C2"), by_name("C2xC2")
        if [cohomology_group(c2, 2, n).dim for n in range(5)] != [1] * 5:
            problems.append("H^n(C2)")
        if (cohomology_group(v4, 2, 1).dim, cohomology_group(v4, 2, 2).dim) != (2, 3):
            problems.append("H^1, H^2 of C2xC2")
        reports = []
        for G in corpus():
            if G.order > 8:
                continue
            M, P, _ = cohomology_green_functor(G, 2, 3)
            for K in G.lattice:
                for H in G.lattice:
                    if H.is_subgroup_of(K) and M.ind(H, K) @ M.res(K, H) != M.identity(K).scale(K.order // H.order):
                        problems.append(f"{G.name}: tr res at {H.order}<{K.order}")
            rep = Report("cohomology", G.name, "fp:2")
            check_mackey_axioms(M, rep)
            check_green_axioms(M, P, rep)
            reports.append(rep)
        ok, detail = summarize(reports)
        return ok and not problems, f"{detail}; problems {problems}"

    run_criterion(capsys, 9, "mod-2 cohomology dimensions, transfer, graded Green axioms", 120, body)


def test_10_determinism(capsys):
    def body():
        G = by_name("S3")
        H = G.classes[1].representative
        runs = [
            lambda: rectification_suite(G, GF(5), SEED).to_json(),
            lambda: frobenius_report(G, H, QQ, SEED)[0].to_json(),
            lambda: monadicity_report(G, H, GF(5), SEED).to_json(),
            lambda: green_report("cohomology", by_name("C2xC2"), QQ, 2, 3).to_json(),
            lambda: dress_report(by_name("C2xC2")).to_json(),
        ]
        same = [f() == f() for f in runs]
        return all(same), f"{sum(same)}/{len(same)} suites byte-identical"

    run_criterion(capsys, 10, "same seed gives byte-identical JSON reports", 60, body)
