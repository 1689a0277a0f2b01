"""
测试进化配置与检查点存储
"""

import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.bayesopt.samples import SampleArchive
from src.core.errors import ConfigError, MissingRun
from src.evolution.checkpoint import CheckpointStore, format_float, read_csv, write_csv
from src.evolution.config import EvoConfig, GAParams, evo_config_from_items, evo_config_items, section_keys
from src.evolution.individual import Individual
from src.morphology.body import parse_body
from src.strategies.strategy import StrategyId
from src.tasks.task import TaskId


class TestGAParams:
    """测试遗传算法参数"""

    def test_load_default(self):
        """测试从 config/evolution.toml 读取"""
        params = GAParams.load_default()
        assert (params.n_pop, params.n_gen, params.n_tour) == (200, 50, 4)

    @pytest.mark.parametrize("kwargs", [{'n_pop': 0}, {'n_pop': 3, 'n_tour': 4}, {'sigma_mut': -0.1}])
    def test_invalid(self, kwargs):
        """测试非法参数"""
        with pytest.raises(ValueError):
            GAParams(**kwargs)


class TestEvoConfigItems:
    """测试扁平配置"""

    def test_keys_unique(self):
        """测试各节键名互不重复"""
        keys = section_keys()
        assert keys['n_pop'] == 'ga'
        assert keys['n0'] == 'bo'
        assert keys['dt'] == 'sim'
        assert keys['episode_steps'] == 'task_params'
        assert keys['strategy'] is None

    def test_from_items(self):
        """测试覆盖项路由到各节"""
        cfg = evo_config_from_items({'strategy': 'similar-n', 'task': 'catch', 'seed': 3,
                                     'n_pop': 6, 'n_final': 10, 'friction': 0.5})
        assert cfg.strategy is StrategyId.SIMILAR_MANY
        assert cfg.task is TaskId.CATCH
        assert cfg.seed == 3
        assert cfg.ga.n_pop == 6
        assert cfg.bo.n_final == 10
        assert cfg.sim.friction == 0.5
        assert cfg.ga.n_gen == 50

    def test_expected_episodes(self):
        """测试回合预算 n_gen · n_pop · n_final"""
        cfg = evo_config_from_items({'n_pop': 6, 'n_gen': 3, 'n_final': 10})
        assert cfg.expected_episodes == 180

    def test_unknown_key(self):
        """测试未知配置项"""
        with pytest.raises(ConfigError):
            evo_config_from_items({'population': 10})

    @pytest.mark.parametrize("items", [{'strategy': 'social'}, {'task': 'swim'}, {'n_pop': -1}])
    def test_invalid_value(self, items):
        """测试非法值统一报 ConfigError"""
        with pytest.raises(ConfigError):
            evo_config_from_items(items)

    def test_items_round_trip(self):
        """测试展开后再构造得到相同配置"""
        cfg = evo_config_from_items({'strategy': 'parent', 'task': 'steps', 'seed': 9, 'beta': 1.5})
        assert evo_config_from_items(dict(evo_config_items(cfg))) == cfg

    def test_default_config(self):
        """测试代码默认值与配置文件一致"""
        assert evo_config_from_items({}) == EvoConfig()


class TestCsv:
    """测试 CSV 读写"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """每个测试方法后执行"""
        shutil.rmtree(self.temp_dir)

    def test_float_repr(self):
        """测试浮点数用 repr 写出"""
        assert format_float(0.1) == '0.1'
        assert format_float(1) == '1.0'
        assert format_float(float('-inf')) == '-inf'

    def test_rewrite_identical(self):
        """测试读回再写出逐字节一致"""
        path = Path(self.temp_dir) / 'a.csv'
        write_csv(path, ['gen', 'q'], [(0, 1 / 3), (1, 2.5e-17)])
        rows = read_csv(path)
        copy = Path(self.temp_dir) / 'b.csv'
        write_csv(copy, ['gen', 'q'], [(int(r['gen']), float(r['q'])) for r in rows])
        assert path.read_bytes() == copy.read_bytes()

    def test_field_with_comma(self):
        """测试含逗号和引号的字段读回不变"""
        path = Path(self.temp_dir) / 'a.csv'
        write_csv(path, ['name', 'q'], [('R..,S', 0.5), ('say "hi"', -1.0)])
        rows = read_csv(path)
        assert [r['name'] for r in rows] == ['R..,S', 'say "hi"']
        assert [float(r['q']) for r in rows] == [0.5, -1.0]


class TestCheckpointStore:
    """测试检查点存储"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()
        self.store = CheckpointStore(Path(self.temp_dir) / 'run')

    def teardown_method(self):
        """每个测试方法后执行"""
        shutil.rmtree(self.temp_dir)

    def make_population(self):
        archive = SampleArchive()
        archive.add(np.array([0.5, -0.25]), 1.25, episode_seed=77)
        return [
            Individual(index=0, body=parse_body("RH...-.....-.....-.....-....."), learned=archive,
                       q=1.25, genotype_theta=np.array([0.1, 0.2]), parent=3, episodes=1),
            Individual(index=1, body=parse_body("V....-.....-.....-.....-....."), failed=True),
        ]

    def test_missing_run(self):
        """测试目录不存在"""
        assert not self.store.exists()
        assert self.store.last_generation() is None
        with pytest.raises(MissingRun):
            self.store.load_config()
        with pytest.raises(MissingRun):
            self.store.load_best()

    def test_generation_round_trip(self):
        """测试检查点写出再读回"""
        self.store.save_generation(0, self.make_population())
        loaded = self.store.load_generation(0)
        assert len(loaded) == 2
        first, second = loaded
        assert first.q == 1.25
        assert first.parent == 3
        assert first.best_episode_seed == 77
        assert np.array_equal(first.best_theta, [0.5, -0.25])
        assert np.array_equal(first.genotype_theta, [0.1, 0.2])
        assert second.failed
        assert second.q == float('-inf')
        assert len(second.learned) == 0

    def test_completed_generations(self):
        """测试按编号列出完整的代，忽略临时文件"""
        population = self.make_population()
        for gen in (0, 1, 10):
            self.store.save_generation(gen, population)
        (self.store.checkpoint_dir / 'gen_11.jsonl.tmp').write_text('{', encoding='utf-8')
        assert self.store.completed_generations() == [0, 1, 10]
        assert self.store.last_generation() == 10

    def test_corrupt_checkpoint(self):
        """测试损坏的检查点读成 None"""
        self.store.ensure()
        (self.store.checkpoint_dir / 'gen_0.jsonl').write_text('not json\n', encoding='utf-8')
        assert self.store.load_generation(0) is None
        assert self.store.load_generation(5) is None

    def test_summary_and_diversity(self):
        """测试 summary.csv 与 diversity.csv"""
        self.store.save_summary([(0, 1.0, 0.5, 3.25), (1, 2.0, 1.5, 2.75)])
        rows = self.store.load_summary()
        assert [r['best_q'] for r in rows] == ['1.0', '2.0']
        diversity = read_csv(self.store.diversity_path)
        assert diversity == [{'gen': '0', 'diversity': '3.25'}, {'gen': '1', 'diversity': '2.75'}]

    def test_config_round_trip(self):
        """测试 config.toml 写出再读回"""
        cfg = evo_config_from_items({'strategy': 'random-1', 'seed': 4})
        self.store.save_config(evo_config_items(cfg))
        assert evo_config_from_items(self.store.load_config()) == cfg

    def test_is_complete(self):
        """测试运行是否完成"""
        population = self.make_population()
        self.store.save_generation(0, population)
        assert not self.store.is_complete(1)
        self.store.save_best([{'gen': 0}])
        assert self.store.is_complete(1)
        assert not self.store.is_complete(2)
