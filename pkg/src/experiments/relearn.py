"""
重新学习、跨任务迁移与重放

重新学习：取一次运行的最好身体，从 1 个随机候选开始用 BO 学到 n_final_relearn 个样本，
可以换成另一个任务（迁移）。重放：用保存的回合种子重新仿真最好的个体。
"""

import dataclasses
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from ..bayesopt.learner import bo_learn
from ..controller.mlp import random_params
from ..core.errors import MissingRun
from ..core.logger import get_module_logger
from ..evolution.checkpoint import write_csv
from ..evolution.individual import EpisodeObjective
from ..physics.trajectory import TrajectoryRecorder
from ..tasks.episode import run_episode
from ..tasks.task import TaskId
from .runs import RunSummary, load_run


logger = get_module_logger(__name__)

RELEARN_HEADER = ['run_dir', 'strategy', 'source_task', 'dest_task', 'repetition',
                  'original_q_star', 'relearned_q']

# 重新学习使用的随机流编号（与进化中的流区分）
STREAM_RELEARN = 4


def relearn_run(run: RunSummary, n_final_relearn: int, task: Optional[TaskId] = None,
                seed: Optional[int] = None) -> float:
    """
    在（可能替换的）任务上重新学习最好身体的大脑

    Returns:
        重新学习得到的最好质量
    """
    if n_final_relearn < 1:
        raise ValueError(f"n_final_relearn 至少为 1: {n_final_relearn}")
    task = task or run.config.task
    seed = run.config.seed if seed is None else seed
    bo = dataclasses.replace(run.config.bo, n0=1, n_final=n_final_relearn)
    cfg = dataclasses.replace(run.config, task=task, bo=bo)

    rng = np.random.default_rng(np.random.SeedSequence([seed, STREAM_RELEARN]))
    init = [random_params(rng, low=bo.init_low, high=bo.init_high)]
    objective = EpisodeObjective(run.body, cfg, (seed, STREAM_RELEARN, 1))
    archive = bo_learn(objective, init, bo, rng)
    q = archive.best().y
    logger.info(f"重新学习 {run.run_dir} ({run.config.task.value} -> {task.value}): "
                f"q={q:.4f}, 原 q*={run.q_star:.4f}")
    return q


def cmd_relearn(run_dirs: Sequence[Path], n_final_relearn: int, task_override: Optional[TaskId] = None,
                out_csv: Optional[Path] = None, all_tasks: bool = False) -> List[tuple]:
    """
    对每个运行重新学习，写出表格

    all_tasks 为 True 时对除源任务外的每个任务都做一次迁移。

    Raises:
        MissingRun: 运行目录缺失
    """
    if not run_dirs:
        raise MissingRun("没有给出运行目录")
    rows = []
    for run_dir in run_dirs:
        run = load_run(run_dir)
        if all_tasks:
            destinations = [t for t in TaskId if t is not run.config.task]
        else:
            destinations = [task_override or run.config.task]
        for dest in destinations:
            q = relearn_run(run, n_final_relearn, dest)
            rows.append((str(run.run_dir), run.config.strategy.value, run.config.task.value,
                         dest.value, run.repetition, run.q_star, q))
    if out_csv is not None:
        out_csv.parent.mkdir(parents=True, exist_ok=True)
        write_csv(out_csv, RELEARN_HEADER, rows)
    return rows


def cmd_replay(run_dir: Path, trajectory_out: Optional[Path] = None) -> tuple:
    """
    用保存的回合种子重新仿真最好个体

    Returns:
        (重放质量, 原 q*, 是否一致)
    """
    run = load_run(run_dir)
    if run.theta is None:
        raise MissingRun(f"{run_dir} 的最好个体没有大脑参数")
    recorder = TrajectoryRecorder(trajectory_out) if trajectory_out is not None else None
    result = run_episode(run.body, run.theta, run.config.task, run.episode_seed,
                         run.config.task_params, run.config.sim, recorder)
    if recorder is not None:
        recorder.save()
    matches = result.q == run.q_star
    if matches:
        logger.info(f"重放一致: q={result.q!r}")
    else:
        logger.warning(f"重放结果 {result.q!r} 与记录的 q* {run.q_star!r} 不一致")
    return result.q, run.q_star, matches
