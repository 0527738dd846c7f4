import math
import statistics

import pytest

from wafomkit.constants import constant_A, constant_B
from wafomkit.errors import DimensionError
from wafomkit.exp_error import err_exp
from wafomkit.experiment import (
    CSV_HEADER,
    Criterion,
    ExperimentConfig,
    bench_compare,
    bench_to_csv,
    bench_to_text,
    random_search,
    read_records_csv,
    records_to_csv,
    run_ratio_experiment,
    score,
)
from wafomkit.merit import wafom_pointwise
from wafomkit.net import generate_points, random_net
from wafomkit.rng import derive_seed


class TestConfig:
    def test_defaults(self):
        cfg = ExperimentConfig(s=3, m=8)
        assert (cfg.n, cfg.q, cfg.u) == (32, 1024, (2.0, 2.0, 2.0))
        assert cfg.criterion is Criterion.WAFOM

    @pytest.mark.parametrize("kw", [dict(s=2, m=8, q=0), dict(s=2, m=9, n=8), dict(s=0, m=2)])
    def test_invalid(self, kw):
        with pytest.raises(DimensionError):
            ExperimentConfig(**kw)

    def test_trial_in_isolation(self):
        cfg = ExperimentConfig(s=2, m=6, seed=123)
        assert cfg.trial_net(5) == random_net(2, 32, 6, derive_seed(123, 5))


class TestRatioExperiment:
    def test_single_record(self):
        cfg = ExperimentConfig(s=2, m=6, q=1, seed=4)
        (rec,) = run_ratio_experiment(cfg)
        assert run_ratio_experiment(cfg) == [rec]
        assert rec.trial == 0 and rec.seed == cfg.trial_seed(0)

    def test_records_match_direct_evaluation(self):
        cfg = ExperimentConfig(s=3, m=7, q=12, seed=9)
        A, B = constant_A(cfg.u), constant_B(cfg.u)
        tau = 2.0 ** (-cfg.n + 8)
        for rec in run_ratio_experiment(cfg):
            P = generate_points(cfg.trial_net(rec.trial))
            assert rec.err == err_exp(P, cfg.u)
            assert rec.wafom == pytest.approx(wafom_pointwise(P, cfg.u, cfg.n), rel=1e-10)
            assert rec.ratio_defined and B - tau <= rec.ratio <= A + tau

    def test_undefined_ratio(self):
        # n = m nets of full rank have a trivial truncated dual, so W^n is 0 up to rounding
        cfg = ExperimentConfig(s=1, m=8, n=8, q=40, seed=1)
        recs = run_ratio_experiment(cfg)
        flagged = [r for r in recs if not r.ratio_defined]
        assert flagged
        assert all(r.wafom <= cfg.ratio_floor for r in flagged)
        assert all(r.ratio == r.err / r.wafom for r in recs if r.ratio_defined)

    def test_csv(self):
        cfg = ExperimentConfig(s=2, m=5, q=8, seed=3)
        text = records_to_csv(run_ratio_experiment(cfg))
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 9
        assert text == records_to_csv(run_ratio_experiment(cfg))
        back = read_records_csv(text)
        assert back == run_ratio_experiment(cfg)
        fields = lines[1].split(",")
        assert float(fields[5]) == pytest.approx(math.log2(float(fields[2])), rel=1e-15)


class TestSearch:
    def test_single_candidate(self):
        cfg = ExperimentConfig(s=2, m=6, q=1, seed=8)
        net, best = random_search(cfg)
        assert net == cfg.trial_net(0)
        assert best == wafom_pointwise(generate_points(net), cfg.u, cfg.n)

    @pytest.mark.parametrize("criterion", list(Criterion))
    def test_best_below_median(self, criterion):
        cfg = ExperimentConfig(s=3, m=6, q=64, seed=2, criterion=criterion)
        net, best = random_search(cfg)
        scores = [score(generate_points(cfg.trial_net(t)), cfg) for t in range(cfg.q)]
        assert best == min(scores) <= statistics.median(scores)
        assert net == cfg.trial_net(scores.index(best))
        assert random_search(cfg) == (net, best)

    def test_both_criteria_sandwich(self):
        A, B = constant_A([2.0] * 3), constant_B([2.0] * 3)
        for criterion in Criterion:
            cfg = ExperimentConfig(s=3, m=6, q=32, seed=5, criterion=criterion)
            net, _ = random_search(cfg)
            P = generate_points(net)
            w, e = wafom_pointwise(P, cfg.u, cfg.n), err_exp(P, cfg.u)
            assert B * w - 2.0**-24 <= e <= A * w + 2.0**-24


class TestBench:
    def test_report(self):
        cfg = ExperimentConfig(s=4, m=8, q=3, seed=1)
        rep = bench_compare(cfg, chunk_bits=8)
        assert [r.evaluator for r in rep.rows] == ["wafom_naive", "wafom_lookup", "err_exp"]
        assert rep.row("wafom_naive").mults_per_point == 8 * rep.row("wafom_lookup").mults_per_point
        assert rep.precompute_seconds > 0
        assert rep.sandwich_ok and rep.max_lookup_rel_diff <= 1e-10
        csv_lines = bench_to_csv([rep]).splitlines()
        assert len(csv_lines) == 4
        assert len(bench_to_text([rep]).splitlines()) == 4
