"""
测试外层遗传算法（小规模配置）
"""

import logging
import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.core.errors import ConfigError
from src.core.event_bus import EventBus, EventType
from src.evolution.checkpoint import CheckpointStore
from src.evolution.config import evo_config_from_items
from src.evolution.evolve import evolve, initial_jobs, offspring_jobs, summarize
from src.evolution.individual import EpisodeObjective, evaluate
from src.morphology.body import parse_body
from src.strategies.strategy import StrategyId


def tiny_config(strategy='best-1', **extra):
    items = {'strategy': strategy, 'task': 'simple', 'seed': 1, 'n_pop': 4, 'n_gen': 2,
             'n_tour': 2, 'n_final': 2, 'n0': 1, 'restarts': 2, 'max_iter': 5,
             'episode_steps': 5}
    items.update(extra)
    return evo_config_from_items(items)


class TestEvaluate:
    """测试单个个体的学习"""

    def test_budget(self):
        """测试恰好仿真 n_final 个回合"""
        cfg = tiny_config(n_final=3, n0=2)
        body = parse_body("RH...-SV...-.....-.....-.....")
        ind = evaluate(body, [np.zeros(321)], cfg, gen=0, index=2)
        assert not ind.failed
        assert ind.episodes == 3
        assert len(ind.learned) == 3
        assert ind.q == ind.learned.best().y

    def test_deterministic(self):
        """测试相同输入得到相同个体"""
        cfg = tiny_config()
        body = parse_body("RH...-SV...-.....-.....-.....")
        a = evaluate(body, [np.zeros(321)], cfg, gen=1, index=0)
        b = evaluate(body, [np.zeros(321)], cfg, gen=1, index=0)
        assert a.q == b.q
        assert np.array_equal(a.learned.xs(), b.learned.xs())

    def test_nobo_prefix(self):
        """测试 NoBO 先评估给定候选再随机采样"""
        cfg = tiny_config('nobo', n_final=3)
        body = parse_body("RH...-SV...-.....-.....-.....")
        ind = evaluate(body, [np.full(321, 0.5)], cfg)
        assert np.array_equal(ind.learned[0].x, np.full(321, 0.5))
        assert len(ind.learned) == 3

    def test_episode_seeds_distinct(self):
        """测试每次调用目标函数使用新的回合种子"""
        cfg = tiny_config()
        objective = EpisodeObjective(parse_body("R....-.....-.....-.....-....."), cfg, (1, 0, 0, 3))
        seeds = {objective(np.zeros(321)).episode_seed for _ in range(3)}
        assert len(seeds) == 3
        assert objective.calls == 3


class TestJobs:
    """测试评估任务的构造"""

    def test_initial(self):
        """测试第 0 代任务"""
        jobs = initial_jobs(tiny_config('il'))
        assert len(jobs) == 4
        for job in jobs:
            assert job['parent'] is None
            assert len(job['candidates']) == 1
            assert np.array_equal(job['candidates'][0], job['genotype_theta'])
            assert job['body'].is_valid()

    def test_initial_deterministic(self):
        """测试第 0 代只由种子决定"""
        a = initial_jobs(tiny_config())
        b = initial_jobs(tiny_config())
        assert [j['body'] for j in a] == [j['body'] for j in b]
        assert all(np.array_equal(x['candidates'][0], y['candidates'][0]) for x, y in zip(a, b))

    def test_offspring_inherit(self):
        """测试子代的候选来自上一代"""
        cfg = tiny_config('parent')
        previous = [evaluate(job['body'], job['candidates'], cfg, 0, job['index'])
                    for job in initial_jobs(cfg)]
        for job in offspring_jobs(cfg, 1, previous):
            parent = previous[job['parent']]
            assert job['body'] != parent.body
            assert np.array_equal(job['candidates'][0], parent.best_theta)


class TestEvolve:
    """测试完整进化运行"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """每个测试方法后执行"""
        shutil.rmtree(self.temp_dir)

    @pytest.mark.parametrize("strategy", ['il', 'nobo', 'similar-n'])
    def test_episode_budget(self, strategy):
        """测试回合总数等于 n_gen · n_pop · n_final"""
        cfg = tiny_config(strategy)
        record = evolve(cfg, keep_history=True)
        assert record.total_episodes == cfg.expected_episodes == 16
        assert len(record.summaries) == 2
        assert len(record.history) == 2
        assert len(record.best_history) == 2

    def test_q_star(self):
        """测试 q* 是所有代中的最大质量且单调不减"""
        record = evolve(tiny_config(), keep_history=True)
        everything = [ind.q for population in record.history for ind in population]
        assert record.q_star == max(everything)
        history = record.q_star_history
        assert history == sorted(history)
        assert history[-1] == record.q_star

    def test_files_written(self):
        """测试运行目录中的文件"""
        run_dir = Path(self.temp_dir) / 'run'
        record = evolve(tiny_config(), run_dir)
        store = CheckpointStore(run_dir)
        assert store.completed_generations() == [0, 1]
        assert store.is_complete(2)
        best = store.load_best()
        assert [b['gen'] for b in best] == [0, 1]
        assert best[-1]['q_star'] == record.q_star
        assert len(best[-1]['theta']) == 321
        assert len(store.load_summary()) == 2

    def test_reproducible(self):
        """测试相同配置两次运行的 summary.csv 逐字节一致"""
        a, b = Path(self.temp_dir) / 'a', Path(self.temp_dir) / 'b'
        evolve(tiny_config(), a)
        evolve(tiny_config(), b)
        assert (a / 'summary.csv').read_bytes() == (b / 'summary.csv').read_bytes()
        assert (a / 'best.jsonl').read_bytes() == (b / 'best.jsonl').read_bytes()

    def test_resume(self):
        """测试中断后从最后一个检查点恢复，结果与不中断一致"""
        full, cut = Path(self.temp_dir) / 'full', Path(self.temp_dir) / 'cut'
        evolve(tiny_config(), full)
        evolve(tiny_config(), cut)
        # 模拟第 1 代写完之前中断
        (cut / 'checkpoints' / 'gen_1.jsonl').unlink()

        bus = EventBus()
        resumed = []
        bus.subscribe(EventType.RUN_RESUMED, lambda e: resumed.append(e.data['gen']))
        record = evolve(tiny_config(), cut, bus=bus)
        assert resumed == [0]
        assert record.total_episodes == 16
        assert (full / 'summary.csv').read_bytes() == (cut / 'summary.csv').read_bytes()

    def test_resume_config_mismatch(self):
        """测试运行目录配置不同时拒绝恢复"""
        run_dir = Path(self.temp_dir) / 'run'
        evolve(tiny_config(n_gen=1), run_dir)
        bus = EventBus()
        failed = []
        bus.subscribe(EventType.RUN_FAILED, lambda e: failed.append(e.data))
        with pytest.raises(ConfigError):
            evolve(tiny_config(n_gen=1, seed=2), run_dir, bus=bus)
        assert len(failed) == 1
        assert failed[0]['run_dir'] == str(run_dir)
        assert '--force' in failed[0]['error']

    def test_resume_complete_run(self):
        """测试已完成的运行不再仿真"""
        run_dir = Path(self.temp_dir) / 'run'
        first = evolve(tiny_config(), run_dir)
        bus = EventBus()
        started = []
        bus.subscribe(EventType.GENERATION_STARTED, lambda e: started.append(e.data['gen']))
        second = evolve(tiny_config(), run_dir, bus=bus)
        assert started == []
        assert second.q_star == first.q_star

    def test_events(self):
        """测试事件顺序"""
        bus = EventBus()
        seen = []
        for event_type in (EventType.GENERATION_STARTED, EventType.GENERATION_COMPLETE,
                           EventType.CHECKPOINT_WRITTEN, EventType.RUN_COMPLETE):
            bus.subscribe(event_type, lambda e: seen.append((e.event_type, e.data.get('gen'))))
        evolve(tiny_config(), Path(self.temp_dir) / 'run', bus=bus)
        assert seen == [
            (EventType.GENERATION_STARTED, 0), (EventType.CHECKPOINT_WRITTEN, 0),
            (EventType.GENERATION_COMPLETE, 0),
            (EventType.GENERATION_STARTED, 1), (EventType.CHECKPOINT_WRITTEN, 1),
            (EventType.GENERATION_COMPLETE, 1),
            (EventType.RUN_COMPLETE, None),
        ]

    def test_progress_log_uses_label(self, caplog):
        """测试进度日志使用策略的显示名"""
        with caplog.at_level(logging.INFO):
            evolve(tiny_config(), Path(self.temp_dir) / 'run')
        assert any('[Best-One/simple/seed=1]' in r.getMessage() for r in caplog.records)


class TestSummarize:
    """测试每代统计"""

    def test_failed_excluded_from_mean(self):
        """测试失败个体不计入平均质量"""
        from src.evolution.individual import Individual

        bodies = [parse_body("R....-.....-.....-.....-....."), parse_body("RR...-.....-.....-.....-.....")]
        population = [Individual(0, bodies[0], q=1.0), Individual(1, bodies[1], q=3.0),
                      Individual(2, bodies[0], failed=True)]
        summary = summarize(4, population)
        assert summary.best_q == 3.0
        assert summary.mean_q == 2.0
        assert summary.diversity > 0

    def test_single_individual(self):
        """测试种群只有一个个体时多样性为 NaN"""
        from src.evolution.individual import Individual

        summary = summarize(0, [Individual(0, parse_body("R....-.....-.....-.....-....."), q=0.5)])
        assert np.isnan(summary.diversity)
