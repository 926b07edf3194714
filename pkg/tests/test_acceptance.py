"""Acceptance checks with pinned tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary under
"acceptance criteria".  Tolerances are exact unless a runtime bound is named.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from wellcover import cli
from wellcover.edge_ring import (
    LinearForm,
    MonomialIdeal,
    format_monomial,
    kernel_zero_divisor_oracle,
    linear_zero_divisor_witness,
    monomial_annihilators,
)
from wellcover.enumeration import enumerate_maximal_independent_sets, find_clique_covers
from wellcover.errors import DegenerateInputError
from wellcover.formats import FORMATS, dump_report, parse_graph, serialize_graph
from wellcover.lab import (
    GeneratorConfig,
    all_labeled_bipartite_graphs,
    conjecture_scan,
    reverify_counterexample,
    theorem_corpus_check,
)
from wellcover.recognition import matched_edge_check
from wellcover.reports import scan_document

from .conftest import FIXTURES, G_D, record_acceptance
from .test_formats import random_graphs

SWEEP_SEEDS = {7: 2031, 8: 2032}
SWEEP_COUNT = 5000


def outcome(key, ok, detail):
    record_acceptance(key, ok, detail)
    assert ok, detail


def sets(labels_list):
    return {frozenset(x) for x in labels_list}


@pytest.fixture(scope="module")
def theorem_sweep():
    start = time.perf_counter()
    reports = [theorem_corpus_check(GeneratorConfig("exhaustive-labeled", n)) for n in range(1, 7)]
    reports += [
        theorem_corpus_check(GeneratorConfig("random-gnp", n, p=0.5, seed=seed, count=SWEEP_COUNT))
        for n, seed in SWEEP_SEEDS.items()
    ]
    return reports, time.perf_counter() - start


CONJECTURE_CONFIGS = [
    GeneratorConfig("exhaustive-spartite", parts=(2, 2)),
    GeneratorConfig("exhaustive-spartite", parts=(2, 2, 2)),
    GeneratorConfig("exhaustive-spartite", parts=(3, 3)),
    GeneratorConfig("random-spartite", parts=(2, 2, 2, 2), p=0.8, seed=4242, count=20_000),
    GeneratorConfig("random-spartite", parts=(2, 2, 2, 2, 2), p=0.85, seed=4243, count=10_000),
    GeneratorConfig("random-spartite", parts=(3, 3, 3), p=0.85, seed=4244, count=10_000),
]


@pytest.fixture(scope="module")
def conjecture_scans():
    start = time.perf_counter()
    reports = [conjecture_scan(cfg) for cfg in CONJECTURE_CONFIGS]
    return reports, time.perf_counter() - start


def test_criterion_1_example_fixtures(capsys, data_dir):
    start = time.perf_counter()

    def check(name):
        assert cli.main(["check", str(data_dir / f"{name}.edges")]) == 0
        return json.loads(capsys.readouterr().out)

    a, b, c = check("gA"), check("gB"), check("gC")
    problems = []
    wa = a["well_covered"]
    if not (wa["verdict"] is False and {1, 4} == set(wa["witness_small"]) and {1, 3, 5} == set(wa["witness_large"])):
        problems.append(f"G_A: {wa}")
    if {len(m) for m in a["maximal_independent_sets"]} != {2, 3}:
        problems.append("G_A witness sizes")
    gb_mis = sets([[1, 3], [1, 4], [1, 5], [2, 5], [2, 6], [3, 6], [4, 6]])
    if not (b["well_covered"] == {"type": "WellCovered", "verdict": True, "common_size": 2}
            and sets(b["maximal_independent_sets"]) == gb_mis
            and b["uniformly_well_covered"]["verdict"] is False):
        problems.append("G_B")
    gc_mis = sets([[1, 3], [1, 4], [2, 5], [2, 6], [3, 6], [4, 6]])
    if not (c["uniformly_well_covered"].get("partition") == [[1, 5, 6], [2, 3, 4]]
            and sets(c["maximal_independent_sets"]) == gc_mis):
        problems.append("G_C")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 1.0
    outcome("1", ok, f"three fixtures exact, {elapsed:.3f}s (< 1 s){'; ' + ', '.join(problems) if problems else ''}")


def test_criterion_2_no_cover_fixture():
    start = time.perf_counter()
    report = enumerate_maximal_independent_sets(G_D)
    covers = {s: find_clique_covers(G_D, s) for s in range(1, G_D.n + 1)}
    elapsed = time.perf_counter() - start
    ok = report.well_covered and report.sizes == {2} and not any(covers.values()) and elapsed < 1.0
    outcome("2", ok, f"MIS sizes {sorted(report.sizes)}, covers for s=1..6: "
                     f"{[len(c) for c in covers.values()]}, {elapsed:.3f}s (< 1 s)")


def test_criterion_3_equivalence_sweep(theorem_sweep):
    reports, elapsed = theorem_sweep
    examined = sum(r.instances_examined for r in reports)
    covers = sum(r.tallies.get("clique_cover_criteria", {}).get("pass", 0) + r.failures("clique_cover_criteria") for r in reports)
    fails = {name: sum(r.failures(name) for r in reports)
             for name in ("clique_cover_criteria", "clique_sums_regular", "witness_bridge")}
    timed_out = sum(r.instances_timed_out for r in reports)
    ok = examined == 2**0 + 2**1 + 2**3 + 2**6 + 2**10 + 2**15 + 2 * SWEEP_COUNT
    ok = ok and covers > 0 and not any(fails.values()) and timed_out == 0 and elapsed < 600
    outcome("3", ok, f"{examined} graphs, {covers} qualifying covers, disagreements {fails}, "
                     f"timeouts {timed_out}, {elapsed:.1f}s (< 600 s)")


def test_criterion_4_bipartite_matching_sweep():
    start = time.perf_counter()
    checked = disagreements = 0
    for n in range(2, 8):
        for g in all_labeled_bipartite_graphs(n):
            if any(row == 0 for row in g.adj):
                continue
            checked += 1
            r = matched_edge_check(g)
            if not r.applicable or r.verdict != enumerate_maximal_independent_sets(g).well_covered:
                disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and checked > 0 and elapsed < 300
    outcome("4", ok, f"{checked} bipartite graphs without isolated vertices, n <= 7, "
                     f"{disagreements} disagreements, {elapsed:.1f}s (< 300 s)")


def test_criterion_5_part_sizes_and_matchings(theorem_sweep, conjecture_scans):
    reports = theorem_sweep[0] + conjecture_scans[0]
    passed = sum(r.tallies.get("part_matchings", {}).get("pass", 0) for r in reports)
    failed = sum(r.failures("part_matchings") for r in reports)
    ok = failed == 0 and passed > 0
    outcome("5", ok, f"{passed + failed} qualifying instances, {failed} failures")


def _random_square_free_case(rng):
    n = rng.randint(1, 6)
    gens = [rng.randint(1, (1 << n) - 1) for _ in range(rng.randint(0, 6))]
    ideal = MonomialIdeal.from_supports(n, gens)
    while True:
        support = rng.randint(1, (1 << n) - 1)
        coeffs = {i: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
                  for i in range(n) if support >> i & 1}
        f = LinearForm.from_dict(n, coeffs)
        try:
            return f, ideal, linear_zero_divisor_witness(f, ideal)
        except DegenerateInputError:
            # f vanishes in the quotient; draw another form
            if all(any(g == 1 << i for g in ideal.support_masks) for i in range(n)):
                ideal = MonomialIdeal.from_supports(n, [g for g in gens if g & (g - 1)])


def test_criterion_6a_monomial_search_matches_kernel():
    start = time.perf_counter()
    rng = random.Random(8)
    disagreements = zero_divisors = 0
    for _ in range(500):
        f, ideal, witness = _random_square_free_case(rng)
        kernel = kernel_zero_divisor_oracle(f, ideal, ideal.n)
        zero_divisors += witness is not None
        disagreements += (witness is None) != (kernel is None)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 60
    outcome("6a", ok, f"500 square-free cases ({zero_divisors} zero-divisors), "
                      f"{disagreements} disagreements, {elapsed:.1f}s (< 60 s)")


def test_criterion_6b_non_square_free_ideal():
    ideal = MonomialIdeal.from_monomials(2, [(2, 0), (1, 1), (0, 2)])
    f = LinearForm.sum_of(2, 0b11)
    kernel = kernel_zero_divisor_oracle(f, ideal, 1)
    monomials = monomial_annihilators(f, ideal, 3)
    ok = kernel is not None and monomials == []
    outcome("6b", ok, f"kernel at degree 1: {kernel}; monomial annihilators up to degree 3: "
                      f"{[format_monomial(m) for m in monomials]} (expected none)")


def test_criterion_7_conjecture_scan(conjecture_scans):
    reports, elapsed = conjecture_scans
    counterexamples = [c for r in reports for c in r.counterexamples]
    reverified = all(reverify_counterexample(c) for c in counterexamples)
    checked = all(
        r.tallies.get("conjecture", {}).get("pass", 0) + r.failures("conjecture")
        == r.instances_qualifying_any_partition
        and r.instances_timed_out == 0
        for r in reports
    )
    qualifying = sum(r.instances_qualifying for r in reports)
    ok = reverified and checked and elapsed < 900
    outcome("7", ok, f"{sum(r.instances_examined for r in reports)} graphs, {qualifying} qualifying, "
                     f"{len(counterexamples)} counterexamples (re-verified: {reverified}), {elapsed:.1f}s (< 900 s)")


def test_criterion_8_determinism():
    def text(report):
        doc = scan_document(report)
        doc.pop("wall_time")
        return dump_report(doc)

    configs = [
        (conjecture_scan, GeneratorConfig("random-spartite", parts=(2, 2, 2, 2), p=0.8, seed=77, count=2000)),
        (theorem_corpus_check, GeneratorConfig("random-gnp", 7, p=0.5, seed=78, count=1000)),
    ]
    same = all(text(scan(cfg)) == text(scan(cfg)) == text(scan(cfg, workers=2)) for scan, cfg in configs)
    outcome("8", same, "seeded scans repeated (and run on 2 workers) give byte-identical reports without wall_time")


def test_criterion_9_cli_contract(capsys, data_dir, tmp_path, monkeypatch):
    failures = []

    def code(*argv):
        try:
            rc = cli.main(list(argv))
        except SystemExit as exc:
            rc = exc.code
        out = capsys.readouterr().out
        return rc, out

    def expect(rc_wanted, *argv):
        rc, out = code(*argv)
        if rc != rc_wanted:
            failures.append(f"{' '.join(argv[:2])} -> {rc}, wanted {rc_wanted}")
        return out

    reports = []
    for name in ("gA", "gB", "gC", "gD", "c6", "p4"):
        path = str(data_dir / f"{name}.edges")
        reports.append(expect(0, "check", path))
        reports.append(expect(0, "certify", path, "--route", "all"))
        reports.append(expect(0, "bipartite", path))
    reports.append(expect(0, "algebra", str(data_dir / "gC.edges"), "--cover", "1,5,6;2,3,4"))
    reports.append(expect(0, "conjecture", "--mode", "random-gnp", "--n", "6", "--seed", "3",
                          "--count", "200", "--suite", "theorems"))
    for i, text in enumerate(reports):
        path = tmp_path / f"r{i}.json"
        path.write_text(text)
        expect(0, "verify", str(path))

    c6 = json.loads(reports[13])
    c6["covers"][0]["witnesses"]["dominator"]["dominator"] = [2, 4]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(c6))
    expect(1, "verify", str(tampered))

    bad = tmp_path / "bad.edges"
    bad.write_text("1 1\n")
    expect(2, "check", str(bad))
    expect(2, "algebra", str(data_dir / "gC.edges"), "--cover", "1,2;3,4,5,6")
    expect(64, "nonsense")
    expect(64, "conjecture", "--mode", "exhaustive-spartite", "--parts", "2,2", "--s", "3")
    expect(65, "conjecture", "--mode", "exhaustive-labeled", "--n", "9")

    real = cli.certify_document

    def disagreeing(g, name, route):
        doc = real(g, name, route)
        doc["agree"] = False
        return doc

    monkeypatch.setattr(cli, "certify_document", disagreeing)
    expect(3, "certify", str(data_dir / "c6.edges"))
    monkeypatch.undo()

    round_trips = 0
    for g in list(FIXTURES.values()) + list(random_graphs(1000)):
        for fmt in FORMATS:
            round_trips += 1
            if parse_graph(serialize_graph(g, fmt), fmt) != g:
                failures.append(f"round trip {fmt}")
    ok = not failures
    outcome("9", ok, f"exit codes 0/1/2/3/64/65 and {round_trips} format round trips"
                     f"{': ' + '; '.join(failures[:5]) if failures else ''}")
