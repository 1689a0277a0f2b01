"""
实验模块

批量进化、重新学习/迁移、学习曲线、描述子分析与显著性检验
"""

from .analysis import cmd_analyze, cmd_stats, load_q_star_groups
from .campaign import CampaignResult, QSTAR_FILE, QSTAR_HEADER, cmd_evolve, run_single
from .curves import CURVE_HEADER, CURVE_MODES, cmd_learning_curve
from .relearn import RELEARN_HEADER, cmd_relearn, cmd_replay, relearn_run
from .runs import RunSummary, discover_runs, load_run
from .settings import (
    CampaignConfig, OUTPUT_ROOT_ENV, RunSpec, collect_items, evo_config, resolve_output_root,
)

__all__ = [
    'cmd_evolve', 'cmd_relearn', 'cmd_replay', 'cmd_learning_curve', 'cmd_analyze', 'cmd_stats',
    'relearn_run', 'run_single', 'load_q_star_groups',
    'CampaignConfig', 'CampaignResult', 'RunSpec', 'RunSummary',
    'collect_items', 'evo_config', 'resolve_output_root', 'discover_runs', 'load_run',
    'OUTPUT_ROOT_ENV', 'QSTAR_FILE', 'QSTAR_HEADER', 'CURVE_HEADER', 'CURVE_MODES', 'RELEARN_HEADER',
]
