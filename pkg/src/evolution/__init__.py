"""
进化模块

种群管理、锦标赛选择、代际替换、个体学习与检查点
"""

from .config import GAParams, EvoConfig, evo_config_from_items, evo_config_items, section_keys
from .individual import Individual, EpisodeObjective, evaluate, evaluate_job, individual_rng
from .selection import tournament_select
from .checkpoint import CheckpointStore, write_csv, read_csv, format_float
from .evolve import GenerationSummary, RunRecord, evolve, summarize, initial_jobs, offspring_jobs

__all__ = [
    'GAParams', 'EvoConfig', 'evo_config_from_items', 'evo_config_items', 'section_keys',
    'Individual', 'EpisodeObjective', 'evaluate', 'evaluate_job', 'individual_rng',
    'tournament_select',
    'CheckpointStore', 'write_csv', 'read_csv', 'format_float',
    'GenerationSummary', 'RunRecord', 'evolve', 'summarize', 'initial_jobs', 'offspring_jobs',
]
