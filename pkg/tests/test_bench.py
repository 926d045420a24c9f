import pytest

from quadfrob.bench import BENCH_KINDS, run_bench


@pytest.fixture(scope="module")
def small_report():
    return run_bench(bits=192, reps=3, seed=11)


class TestBenchReport:
    def test_all_kinds_timed(self, small_report):
        assert set(small_report.mean_time) == set(BENCH_KINDS)
        assert all(t > 0 for t in small_report.mean_time.values())

    def test_counter_structure(self, small_report):
        c2 = small_report.counter_totals["selfridge2"]
        assert c2.full_modmul == 2 * c2.loop_iterations
        assert c2.full_modsquare == 0
        cf = small_report.counter_totals["fermat"]
        assert cf.full_modsquare == cf.loop_iterations
        assert 0 < cf.full_modmul <= cf.loop_iterations
        cl = small_report.counter_totals["lucas_chain"]
        assert cl.full_modmul == cl.full_modsquare == cl.loop_iterations

    def test_general_matches_selfridge2_mul_count(self, small_report):
        assert (
            small_report.counter_totals["general"].full_modmul
            == small_report.counter_totals["selfridge2"].full_modmul
        )

    def test_ratios_relative_to_fermat(self, small_report):
        ratios = small_report.selfridge_ratio
        assert ratios["fermat"] == 1.0
        assert all(r > 0 for r in ratios.values())

    def test_deterministic_operands(self):
        a = run_bench(bits=128, reps=2, seed=5)
        b = run_bench(bits=128, reps=2, seed=5)
        for kind in BENCH_KINDS:
            assert a.counter_totals[kind].as_dict() == b.counter_totals[kind].as_dict()

    def test_input_validation(self):
        with pytest.raises(ValueError):
            run_bench(bits=32, reps=1, seed=1)
        with pytest.raises(ValueError):
            run_bench(bits=128, reps=0, seed=1)
