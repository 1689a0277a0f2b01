"""
固定身体上的学习曲线

三种模式：
- nobo: 全部随机
- il:   从 1 个随机候选开始 BO
- sl:   从同一种子 il 运行的前 min(50, budget) 个样本中取最好的 n0 个开始 BO
"""

import dataclasses
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..bayesopt.learner import bo_learn, random_learn
from ..bayesopt.samples import SampleArchive
from ..controller.mlp import param_count, random_params
from ..core.logger import get_module_logger
from ..evolution.checkpoint import write_csv
from ..evolution.config import EvoConfig
from ..evolution.individual import EpisodeObjective
from ..morphology.body import parse_body

logger = get_module_logger(__name__)

CURVE_HEADER = ['mode', 'seed', 'iteration', 'best_so_far']
CURVE_MODES = ('nobo', 'il', 'sl')
SL_SOURCE_SAMPLES = 50

_MODE_STREAM = {'nobo': 5, 'il': 6, 'sl': 7}


def _learn_curve(mode: str, body, cfg: EvoConfig, budget: int, seed: int,
                 il_archive: Optional[SampleArchive]) -> SampleArchive:
    stream = _MODE_STREAM[mode]
    rng = np.random.default_rng(np.random.SeedSequence([seed, stream]))
    objective = EpisodeObjective(body, cfg, (seed, stream))

    if mode == 'nobo':
        bo = dataclasses.replace(cfg.bo, n0=1, n_final=budget)
        return random_learn(objective, bo, rng, dim=param_count())
    if mode == 'il':
        bo = dataclasses.replace(cfg.bo, n0=1, n_final=budget)
        init = [random_params(rng, low=bo.init_low, high=bo.init_high)]
        return bo_learn(objective, init, bo, rng)

    n0 = min(cfg.bo.n0, budget)
    bo = dataclasses.replace(cfg.bo, n0=n0, n_final=budget)
    source = il_archive.head(min(SL_SOURCE_SAMPLES, budget))
    init = [s.x for s in source.top(n0)]
    return bo_learn(objective, init, bo, rng)


def cmd_learning_curve(body_text: str, cfg: EvoConfig, modes: Sequence[str], budget: int,
                       seeds: Sequence[int], out_csv: Optional[Path] = None) -> List[tuple]:
    """
    计算每个 (模式, 种子) 的逐次最好质量

    Raises:
        ParseError: 身体文本非法
        ValueError: 未知模式、预算非法或身体不连通
    """
    body = parse_body(body_text)
    if not body.is_valid():
        raise ValueError(f"身体不是合法的多联骨牌: {body_text}")
    unknown = [m for m in modes if m not in CURVE_MODES]
    if unknown:
        raise ValueError(f"未知模式 {unknown}，可选: {CURVE_MODES}")
    if budget < 1:
        raise ValueError(f"budget 至少为 1: {budget}")

    rows = []
    for seed in seeds:
        archives: Dict[str, SampleArchive] = {}
        # sl 依赖同种子的 il 档案
        needed = list(modes)
        if 'sl' in needed and 'il' not in needed:
            needed.insert(0, 'il')
        for mode in sorted(needed, key=CURVE_MODES.index):
            archives[mode] = _learn_curve(mode, body, cfg, budget, seed, archives.get('il'))
        for mode in modes:
            curve = archives[mode].best_so_far()
            rows.extend((mode, seed, i + 1, float(v)) for i, v in enumerate(curve))
            logger.info(f"学习曲线 {mode} seed={seed}: 最终 {curve[-1]:.4f}")

    if out_csv is not None:
        out_csv.parent.mkdir(parents=True, exist_ok=True)
        write_csv(out_csv, CURVE_HEADER, rows)
    return rows
