"""
任务模块

Simple / Steps / Carry / Catch 四个任务的环境与质量函数
"""

from .task import TaskId, TaskParams
from .environment import build_terrain, spawn_payload, catch_gap
from .episode import (
    EpisodeResult, run_episode, episode_seed_for, is_carried, carry_quality,
)

__all__ = [
    'TaskId', 'TaskParams',
    'build_terrain', 'spawn_payload', 'catch_gap',
    'EpisodeResult', 'run_episode', 'episode_seed_for', 'is_carried', 'carry_quality',
]
