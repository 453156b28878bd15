"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import time

import pytest

from voakit.cases import registry, run_case
from voakit.presets import data_dir

RESULTS: list[str] = []

# criterion -> (title, time limit in seconds)
CRITERIA = {
    1: ("Wang W3: c = -2, W primary of weight 3, both in the commutant", 1),
    2: ("C(3) identities for L1 and W1", 10),
    3: ("C(2) suite: c = 1, primaries, four identities, P forms", 60),
    4: ("C(1,1) identities for L1 and W1", 10),
    5: ("sl2 C1 coefficients k + 2/5 and -1/15", 60),
    6: ("BP quadratics (conditional on the OPE data file)", 60),
    7: ("Ising decompositions and the character criterion to q^20", 30),
    8: ("Singlet weights and the weight criterion", 1),
    9: ("Hopf-link criterion on the Ising data", 1),
    10: ("Lattice suite", 5),
    11: ("modrep suite", 5),
    12: ("Engine properties: axioms, oracle, canonical forms", 120),
}


def _cases(criterion):
    return [c["id"] for c in registry() if c["criterion"] == criterion]


def _record(capsys, criterion, status, detail, elapsed):
    title, limit = CRITERIA[criterion]
    line = f"criterion {criterion:2d} {status:4} {title} [{elapsed:.2f}s / {limit}s] {detail}".rstrip()
    RESULTS.append(line)
    with capsys.disabled():
        print("\n" + line)


def _run(criterion, capsys):
    t0 = time.perf_counter()
    reports = [run_case(i, 20) for i in _cases(criterion)]
    elapsed = time.perf_counter() - t0
    limit = CRITERIA[criterion][1]
    bad = [(r.id, c) for r in reports for c in r.checks if not c.ok]
    ok = not bad and all(r.status == "pass" for r in reports) and elapsed < limit
    if bad:
        rid, chk = bad[0]
        detail = f"({rid}: {chk.name} computed {chk.computed}, expected {chk.expected})"
    elif elapsed >= limit:
        detail = "(over time limit)"
    else:
        detail = ""
    _record(capsys, criterion, "PASS" if ok else "FAIL", detail, elapsed)
    return ok, reports


LITERAL_FAILURES = {
    1: "the displayed W is not primary; W + 3/4*dL is",
    3: "the Sugawara field of C(2) has c = -3, not 1",
}


@pytest.mark.parametrize("criterion", [
    pytest.param(n, marks=pytest.mark.xfail(strict=True, reason=LITERAL_FAILURES[n]))
    if n in LITERAL_FAILURES else n
    for n in CRITERIA if n != 6
])
def test_criterion(criterion, capsys):
    ok, _ = _run(criterion, capsys)
    assert ok


def test_criterion_6_bp(capsys):
    if not (data_dir() / "bp_ope.json").exists():
        _record(capsys, 6, "SKIP", "(no BP OPE data file)", 0.0)
        pytest.skip("BP OPE data file absent")
    ok, reports = _run(6, capsys)
    with capsys.disabled():
        for r in reports:
            got = {c.name: c.computed for c in r.checks}
            print(f"    {r.id}: computed {got['computed (OPE file level)']}; "
                  f"shifted {got['computed at k -> k - 3/2']}; expected {r.expected}")
    assert ok


def test_literal_failures_are_the_only_failures():
    for n in LITERAL_FAILURES:
        reports = [run_case(i) for i in _cases(n)]
        failing = [c.name for r in reports for c in r.checks if not c.ok]
        assert failing == {1: ["W primary of weight 3"], 3: ["central_charge"]}[n]
