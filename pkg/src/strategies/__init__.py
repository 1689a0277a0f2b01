"""
学习策略模块

IL / NoBO 与七种社会学习教师选择
"""

from .strategy import StrategyId
from .selection import (
    TeacherRecord, Candidate, GenerationArchive,
    random_candidates, bootstrap_candidates, select_init_candidates,
)

__all__ = [
    'StrategyId',
    'TeacherRecord', 'Candidate', 'GenerationArchive',
    'random_candidates', 'bootstrap_candidates', 'select_init_candidates',
]
