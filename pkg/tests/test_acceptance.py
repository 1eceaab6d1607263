"""Acceptance criteria P1-P8 and mutation sensitivity at their stated counts.

Every comparison is exact rational equality.  One pass/fail line per
criterion is printed; run this file directly to see only those lines.
"""

import pytest

from flattice.propsuite import (GenConfig, REQUIRED_COVERAGE, gen_falgebra, mutation_caught,
                                perturb_one_entry, run_property, stream)

CRITERIA = ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"]
SEED = 20240601


def _emit(capsys, line):
    with capsys.disabled():
        print("\n" + line)


@pytest.mark.parametrize("pid", CRITERIA)
def test_criterion(pid, capsys):
    res = run_property(pid, GenConfig(seed=SEED))
    missing = [t for t in REQUIRED_COVERAGE.get(pid, ()) if not res.coverage.get(t)]
    line = res.line() + (f"\n    missing coverage: {missing}" if missing else "")
    _emit(capsys, f"ACCEPTANCE {line}")
    assert not res.no_evidence
    assert res.ok, line
    assert not missing


def test_mutation_sensitivity(capsys):
    caught = 0
    trials = 50
    first_miss = None
    for k in range(trials):
        rng = stream(SEED, "mutation", k)
        A = gen_falgebra(rng, GenConfig(seed=SEED), nonzero=True)
        ok, how = mutation_caught(A, rng)
        caught += ok
        if not ok and first_miss is None:
            first_miss = (k, how)
    # the same perturbation fed through the round-trip path must also fail it
    res = run_property("P2", GenConfig(seed=SEED, instance_count=trials,
                                       mutation=lambda t, r: perturb_one_entry(t, r)))
    status = "pass" if caught == trials and res.passed < trials else "FAIL"
    _emit(capsys, f"ACCEPTANCE [{status}] M mutation sensitivity: {caught}/{trials} caught; "
                  f"mutated P2 failed {trials - res.passed}/{trials}")
    assert caught == trials, first_miss
    assert not res.ok


if __name__ == "__main__":  # pragma: no cover
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
