"""
测试实验设置
"""

import os
import shutil
import tempfile
from pathlib import Path

import pytest

from src.core.errors import ConfigError
from src.experiments.settings import (
    OUTPUT_ROOT_ENV, CampaignConfig, collect_items, evo_config, resolve_output_root,
)
from src.strategies.strategy import StrategyId
from src.tasks.task import TaskId


class TestOutputRoot:
    """测试输出根目录"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.saved = os.environ.pop(OUTPUT_ROOT_ENV, None)

    def teardown_method(self):
        """每个测试方法后执行"""
        os.environ.pop(OUTPUT_ROOT_ENV, None)
        if self.saved is not None:
            os.environ[OUTPUT_ROOT_ENV] = self.saved

    def test_priority(self):
        """测试 --out 优先于环境变量，环境变量优先于默认值"""
        assert resolve_output_root() == Path('runs')
        os.environ[OUTPUT_ROOT_ENV] = '/tmp/vsr-env'
        assert resolve_output_root() == Path('/tmp/vsr-env')
        assert resolve_output_root('elsewhere') == Path('elsewhere')


class TestCollectItems:
    """测试配置合并"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """每个测试方法后执行"""
        shutil.rmtree(self.temp_dir)

    def test_layering(self):
        """测试命名配置 < 配置文件 < 覆盖项"""
        path = Path(self.temp_dir) / 'exp.toml'
        path.write_text('n_pop = 8\nn_gen = 3\nstrategies = ["il", "best-1"]\n', encoding='utf-8')
        items = collect_items(str(path), ['n_gen=2', 'beta=1.5'], profile='desk')
        assert items['n_pop'] == 8
        assert items['n_gen'] == 2
        assert items['beta'] == 1.5
        assert items['n_final'] == 20
        assert items['strategies'] == ['il', 'best-1']

    def test_unknown_profile(self):
        """测试未知配置档"""
        with pytest.raises(ConfigError):
            collect_items(profile='cluster')

    def test_bad_override(self):
        """测试覆盖项缺少等号"""
        with pytest.raises(ConfigError):
            collect_items(overrides=['n_pop'])


class TestCampaignConfig:
    """测试批量实验配置"""

    def test_from_items(self):
        """测试拆分批量实验键"""
        campaign = CampaignConfig.from_items(
            {'strategies': 'il, best-n', 'tasks': ['carry'], 'repetitions': 3, 'seed_base': 10,
             'n_pop': 4}, Path('out'))
        assert campaign.strategies == (StrategyId.IL, StrategyId.BEST_MANY)
        assert campaign.tasks == (TaskId.CARRY,)
        assert campaign.run_count == 6
        assert campaign.evo_items == {'n_pop': 4}

    def test_runs(self):
        """测试运行顺序、种子与目录"""
        campaign = CampaignConfig.from_items(
            {'strategies': ['nobo'], 'tasks': ['simple', 'steps'], 'repetitions': 2, 'seed_base': 5},
            Path('out'))
        runs = list(campaign.runs())
        assert [(r.task.value, r.repetition, r.seed) for r in runs] == [
            ('simple', 0, 5), ('simple', 1, 6), ('steps', 0, 5), ('steps', 1, 6)]
        assert runs[1].run_dir == Path('out') / 'nobo' / 'simple' / 'rep_01'
        assert runs[1].config.strategy is StrategyId.NOBO
        assert runs[1].config.seed == 6

    def test_single_strategy_fallback(self):
        """测试没有 strategies 时使用 strategy"""
        campaign = CampaignConfig.from_items({'strategy': 'parent', 'task': 'catch'}, Path('out'))
        assert campaign.strategies == (StrategyId.PARENT,)
        assert campaign.tasks == (TaskId.CATCH,)

    @pytest.mark.parametrize("items", [
        {'strategies': ['teach-all']},
        {'repetitions': 0},
        {'n_generations': 5},
        {'n_pop': 0},
    ])
    def test_invalid(self, items):
        """测试非法批量实验配置"""
        with pytest.raises(ConfigError):
            CampaignConfig.from_items(items, Path('out'))

    def test_evo_config_ignores_campaign_keys(self):
        """测试单次运行配置忽略批量实验键"""
        cfg = evo_config({'strategies': ['il'], 'repetitions': 5, 'strategy': 'best-1', 'n_pop': 3,
                          'n_tour': 2})
        assert cfg.strategy is StrategyId.BEST_ONE
        assert cfg.ga.n_pop == 3
