"""Acceptance criteria 1-8, exact throughout.

Each seeded suite runs once per module; every criterion prints a single
``criterion N: pass|FAIL ...`` line to the terminal.
"""

import time
from collections import Counter

import pytest

from extform.verify import DEFAULT_SEED, SUITES

LIMITS = {"hull": 30, "coupled": 60, "trees": 60, "steiner": 120, "gomory-hu": 300, "gh-polytope": 180, "tcut": 600}


class SuiteCache:
    def __init__(self):
        self.reports = {}
        self.seconds = {}

    def get(self, name):
        if name not in self.reports:
            t0 = time.perf_counter()
            self.reports[name] = SUITES[name](DEFAULT_SEED)
            self.seconds[name] = time.perf_counter() - t0
        return self.reports[name]


@pytest.fixture(scope="module")
def suites():
    return SuiteCache()


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number}: {'pass' if ok else 'FAIL'} ({detail})")


def failures(reports):
    return [f"{r.instance}: {c.name}" for r in reports for c in r.failures()]


def judge(capsys, suites, number, name, extra_ok=True, extra=""):
    reports = suites.get(name)
    bad = failures(reports)
    secs = suites.seconds[name]
    timely = secs < LIMITS[name]
    ok = not bad and timely and extra_ok
    detail = f"{len(reports)} reports, {len(bad)} failed checks, {secs:.1f}s < {LIMITS[name]}s"
    if extra:
        detail += f"; {extra}"
    announce(capsys, number, ok, detail)
    assert not bad, bad[:5]
    assert timely, f"{name} took {secs:.1f}s"
    assert extra_ok, extra


def by_prefix(reports, prefix):
    return [r for r in reports if r.instance.startswith(prefix)]


def test_criterion_1_balas_hull(capsys, suites):
    reps = by_prefix(suites.get("hull"), "hull #")
    vertex_checked = all("k" in r.info for r in reps)
    judge(capsys, suites, 1, "hull", len(reps) == 100 and vertex_checked, f"{len(reps)} random instances, all basic optima at a checked vertex: {vertex_checked}")


def test_criterion_2_coupled(capsys, suites):
    reps = suites.get("coupled")
    random_reps = by_prefix(reps, "coupled #")
    unb = by_prefix(reps, "coupled unbounded")
    ok = len(random_reps) == 50 and len(unb) == 5 and all(r.info.get("status") == "unbounded" for r in unb)
    judge(capsys, suites, 2, "coupled", ok, f"{len(random_reps)} random, {len(unb)} unbounded")


def test_criterion_3_spanning_trees(capsys, suites):
    reps = suites.get("trees")
    both = all(any(c.name == "backends agree" for c in r.checks) for r in reps)
    judge(capsys, suites, 3, "trees", len(reps) == 50 and both, f"both backends compared on every graph: {both}")


def test_criterion_4_steiner(capsys, suites):
    reps = suites.get("steiner")
    random_reps = by_prefix(reps, "steiner n=")[1:]
    audit = by_prefix(reps, "size-audit")
    ok = len(random_reps) == 30 and len(audit) == 1 and len(audit[0].checks) == 6
    judge(capsys, suites, 4, "steiner", ok, f"{len(random_reps)} random graphs; audit ratios {audit[0].info.get('ratios') if audit else None}")


def test_criterion_5_gomory_hu(capsys, suites):
    reps = suites.get("gomory-hu")
    random_reps = reps[2:]
    enumerated = all(
        any(c.name.startswith("LP optimum equals minimum requirement") for c in r.checks)
        for r in reps
        if int(r.instance.split("n=")[1].split()[0]) <= 5
    )
    judge(capsys, suites, 5, "gomory-hu", len(random_reps) == 30 and enumerated, f"enumeration confirmed for every n <= 5: {enumerated}")


def test_criterion_6_gh_polytope(capsys, suites):
    reps = suites.get("gh-polytope")
    path = reps[0]
    point = path.info.get("lambda_point") == "{ab,bc}"
    objectives = sum(c.name.startswith("objective ") for c in path.checks)
    audit = by_prefix(reps, "size-audit")
    ok = point and objectives == 10 and len(audit) == 1
    judge(capsys, suites, 6, "gh-polytope", ok, f"path projection {path.info.get('lambda_point')}, {objectives} objectives; audit ratios {audit[0].info.get('ratios') if audit else None}")


def test_criterion_7_tcut(capsys, suites):
    reps = suites.get("tcut")
    worked = [r.info.get("optimum") for r in reps[:2]]
    ok = len(reps) == 22 and worked == [1, 2]
    judge(capsys, suites, 7, "tcut", ok, f"worked examples {[str(v) for v in worked]}")


def test_criterion_8_lp_core(capsys, suites):
    outcomes = Counter()
    certs = []
    for name in SUITES:
        for r in suites.get(name):
            outcomes.update(r.outcomes)
            certs.extend(c for c in r.certificate_checks())
    bad = [c.name for c in certs if not c.passed]
    certified = len(certs) == sum(outcomes.values())
    ok = not bad and certified and outcomes["optimal"] > 0 and outcomes["unbounded"] > 0 and outcomes["aborted"] == 0
    announce(capsys, 8, ok, f"{len(certs)} certified outcomes {dict(sorted(outcomes.items()))}, {len(bad)} failed")
    assert not bad, bad[:5]
    assert certified
    assert outcomes["optimal"] > 0 and outcomes["unbounded"] > 0
    assert outcomes["aborted"] == 0
