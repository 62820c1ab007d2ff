import json

import numpy as np
import pytest

from pcmaxioms import harness as h
from pcmaxioms.harness import (REFERENCE_VERDICTS, STANDARD_INDICES, IndexFunction, LogUniform,
                               VerdictTable, build_ri_table, check_axiom1, check_axiom2, check_axiom3,
                               check_axiom4, check_axiom5, check_axiom6, estimate_ri,
                               random_reciprocal, ri_monotone, verdict_table)
from pcmaxioms.indices import RiTable, gwi, pli, ric
from pcmaxioms.matrix import corner, from_upper_triangle, is_consistent

FEW = 40


def _const(c):
    return IndexFunction(f"const{c}", lambda m: c)


class TestRandomReciprocal:
    def test_saaty_values(self):
        m = random_reciprocal(6, "saaty", 3)
        upper = m.entries[np.triu_indices(6, 1)]
        assert all(np.isclose(h.SAATY_SCALE, v).any() for v in upper)
        assert len(h.SAATY_SCALE) == 17

    def test_loguniform(self):
        m = random_reciprocal(5, LogUniform(0.5, 2), 1)
        upper = m.entries[np.triu_indices(5, 1)]
        assert np.all((upper >= 0.5) & (upper <= 2))

    def test_deterministic(self):
        assert random_reciprocal(5, seed=9) == random_reciprocal(5, seed=9)
        assert random_reciprocal(5, seed=9) != random_reciprocal(5, seed=10)

    def test_order_two_consistent(self):
        assert is_consistent(random_reciprocal(2, seed=1))

    def test_errors(self):
        with pytest.raises(ValueError):
            random_reciprocal(1)
        with pytest.raises(ValueError):
            LogUniform(2, 1)
        with pytest.raises(ValueError):
            random_reciprocal(3, "uniform")


class TestAxiom1:
    def test_constant_zero_fails(self):
        v = check_axiom1(_const(0.0), FEW)
        assert v.outcome == "fail"
        assert v.counterexample.transform["kind"] == "inconsistent-zero"
        assert v.counterexample.still_violates(_const(0.0))

    def test_constant_positive_fails(self):
        v = check_axiom1(_const(1.0), FEW)
        assert v.outcome == "fail" and v.trials == 1
        assert v.counterexample.transform["kind"] == "consistent-nonzero"

    def test_standard_pass(self):
        for f in STANDARD_INDICES.values():
            assert check_axiom1(f, FEW).outcome == "pass", f.name


class TestAxiom2:
    def test_single_entry_index_fails(self):
        f = IndexFunction("a12", lambda m: abs(np.log(m[0, 1])))
        v = check_axiom2(f, FEW)
        assert v.outcome == "fail"
        assert v.counterexample.still_violates(f)
        assert sorted(v.counterexample.transform["sigma"]) == list(range(v.counterexample.matrix.n))

    def test_identity_permutation_self_test(self):
        # with sigma = id even the label-dependent index must pass
        f = IndexFunction("a12", lambda m: abs(np.log(m[0, 1])))
        assert check_axiom2(f, FEW, identity_only=True).outcome == "pass"


class TestAxiom3:
    def test_ric_fails_on_probe(self):
        v = check_axiom3(STANDARD_INDICES["RIC"], FEW)
        assert v.outcome == "fail"
        c = v.counterexample
        assert c.matrix == from_upper_triangle(3, (0.1, 0.15, 0.3)) and c.transform["b"] == 2.0
        assert c.observed["original"] == pytest.approx(0.0472, abs=1e-4)
        assert c.observed["powered"] == pytest.approx(0.0185, abs=1e-4)
        assert c.still_violates(STANDARD_INDICES["RIC"])

    def test_gwi_fails_by_search(self):
        v = check_axiom3(STANDARD_INDICES["GWI"], 200)
        assert v.outcome == "fail"
        assert v.counterexample.still_violates(STANDARD_INDICES["GWI"])

    def test_pli_passes(self):
        assert check_axiom3(STANDARD_INDICES["PLI"], FEW).outcome == "pass"

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            check_axiom3(STANDARD_INDICES["PLI"], 1, b_grid=(0.5,))


class TestAxiom4:
    def test_decreasing_index_fails(self):
        f = IndexFunction("neg", lambda m: -pli(m))
        v = check_axiom4(f, FEW)
        assert v.outcome == "fail"
        assert v.counterexample.still_violates(f)

    def test_kii_passes(self):
        assert check_axiom4(STANDARD_INDICES["KII"], FEW).outcome == "pass"

    def test_grid_must_straddle_one(self):
        with pytest.raises(ValueError):
            check_axiom4(STANDARD_INDICES["KII"], 1, delta_grid=(2, 3))


class TestAxiom5:
    def test_step_function_fails(self):
        f = IndexFunction("step", lambda m: float(pli(m) > 1.0))
        v = check_axiom5(f, FEW)
        assert v.outcome == "fail"
        assert v.counterexample.still_violates(f)

    def test_constant_inconclusive(self):
        assert check_axiom5(_const(0.5), 5).outcome == "inconclusive"

    def test_continuous_passes(self):
        assert check_axiom5(STANDARD_INDICES["GCI"], FEW).outcome == "pass"

    def test_ladder_must_decrease(self):
        with pytest.raises(ValueError):
            check_axiom5(STANDARD_INDICES["GCI"], 1, eps_ladder=(1e-4, 1e-2))


class TestAxiom6:
    @pytest.mark.parametrize("name", ["CI", "PLI", "GCI"])
    def test_unbounded(self, name):
        v = check_axiom6(STANDARD_INDICES[name])
        assert v.outcome == "fail"
        assert v.counterexample.transform["n"] == 3
        assert v.counterexample.still_violates(STANDARD_INDICES[name])

    @pytest.mark.parametrize("name", ["RIC", "KII", "GWI"])
    def test_bounded(self, name):
        assert check_axiom6(STANDARD_INDICES[name]).outcome == "pass"

    def test_ric_under_one(self):
        f = IndexFunction("RIC", ric, bound=1.0)
        assert check_axiom6(f).outcome == "pass"

    def test_gwi_with_unit_bound_is_not_a_pass(self):
        # GWI exceeds 1 on corner matrices of order >= 4
        assert check_axiom6(IndexFunction("GWI", gwi, bound=1.0)).outcome == "inconclusive"

    def test_no_bound_declared(self):
        assert check_axiom6(IndexFunction("RIC", ric)).outcome == "inconclusive"

    def test_ladder_validation(self):
        with pytest.raises(ValueError):
            check_axiom6(STANDARD_INDICES["RIC"], x_ladder=(10, 100))


class TestVerdictTable:
    def test_empty(self):
        t = VerdictTable({})
        assert t.render_text() == ""
        assert t.mismatches() == []
        assert t.to_json()["table"] == {}

    def test_kii_row(self):
        t = verdict_table([STANDARD_INDICES["KII"]], trials=100)
        assert t.symbols("KII") == "YYYYYY" == REFERENCE_VERDICTS["KII"]
        assert not t.mismatches()

    def test_gwi_a4_not_asserted(self):
        t = verdict_table([STANDARD_INDICES["GWI"]], trials=50)
        assert t.symbols("GWI")[3] == "?"
        assert "GWI/A4: not asserted" in t.render_text()
        assert not t.mismatches()

    def test_mismatch_detected(self):
        t = verdict_table([_const(1.0)], trials=3)
        assert t.mismatches({"const1.0": "YYYYYY"})
        assert t.symbols("const1.0")[0] == "N"

    def test_reproducible(self):
        fs = [STANDARD_INDICES["GWI"], STANDARD_INDICES["RIC"]]
        a = verdict_table(fs, seed=7, trials=30).to_json()
        b = verdict_table(fs, seed=7, trials=30).to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_json_shape(self):
        j = verdict_table([STANDARD_INDICES["RIC"]], trials=10).to_json()
        assert j["table"] == {"RIC": "YYNYYY"}
        a3 = j["verdicts"]["RIC"][2]
        assert a3["outcome"] == "fail" and "counterexample" in a3
        json.dumps(j)


class TestRi:
    def test_order_two(self):
        e = estimate_ri(2, 200)
        assert e.mean_ci == 0 and e.std_error == 0

    def test_small_run(self):
        e = estimate_ri(3, 5000, seed=1)
        assert 0.45 < e.mean_ci < 0.6
        assert e.std_error > 0 and e.samples == 5000 and e.skipped == 0

    def test_seed_determinism(self):
        assert build_ri_table([3, 4], 2000, 5) == build_ri_table([3, 4], 2000, 5)
        assert build_ri_table([3], 2000, 5) != build_ri_table([3], 2000, 6)

    def test_independent_of_chunking(self):
        a = estimate_ri(4, 3000, 2, chunk=3000)
        b = estimate_ri(4, 3000, 2, chunk=700)
        # same draws in the same order, so only summation order may differ
        assert a.mean_ci == pytest.approx(b.mean_ci, rel=1e-12)

    def test_loguniform_scale(self):
        t = build_ri_table([3], 1000, 1, LogUniform(1 / 9, 9))
        assert t.provenance["scale"].startswith("loguniform")

    def test_monotone_helper(self):
        assert ri_monotone(RiTable({3: 0.5, 4: 0.9}))
        assert not ri_monotone(RiTable({3: 0.5, 4: 0.4}))
        assert ri_monotone(RiTable({3: 0.5, 4: 0.49}, {"std_error": {"3": 0.01, "4": 0.01}}))

    def test_small_samples_rejected(self):
        with pytest.raises(ValueError):
            estimate_ri(3, 10)


def test_counterexample_describe_is_readable():
    v = check_axiom6(STANDARD_INDICES["PLI"])
    text = v.counterexample.describe()
    assert text.startswith("A6: n=3") and "observed values=" in text


def test_corner_gwi_above_one():
    assert gwi(corner(4, 1e6)) > 1
