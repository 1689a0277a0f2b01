"""
学习循环

bo_learn:     评估初始点 -> (拟合 -> 最大化 UCB -> 评估 -> 加入档案) 直到 n_final 个样本
random_learn: 不使用代理模型，剩余样本在搜索边界内均匀随机取
"""

from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from ..core.errors import LearningFailed
from ..core.logger import get_module_logger
from .config import BOConfig
from .gp import GPModel, fit_gp, ucb, ucb_with_grad
from .samples import Evaluation, SampleArchive


logger = get_module_logger(__name__)

Objective = Callable[[np.ndarray], Union[float, Evaluation]]

# 重复提议点的扰动宽度
DUPLICATE_NOISE = 1e-6
# 新提议点与已有样本的最小间隔（L∞，相对搜索边界宽度）
MIN_SEPARATION = 1e-4


def _separated(x: np.ndarray, taken: Optional[np.ndarray], tolerance: float) -> bool:
    if taken is None or len(taken) == 0:
        return True
    return float(np.min(np.max(np.abs(taken - x), axis=1))) > tolerance


def maximize_acquisition(model: GPModel, cfg: BOConfig, rng: np.random.Generator,
                         exclude: Optional[np.ndarray] = None) -> np.ndarray:
    """
    多起点 L-BFGS-B 最大化 UCB

    起点为最好的已观测点加上 restarts-1 个边界内的均匀随机点；
    restarts 为 0 时直接返回最好的已观测点。

    给出 exclude（已评估的点）时，返回离这些点都超过最小间隔的最好端点；
    所有端点都落在已有样本上时返回边界内的均匀随机点。
    """
    best = cfg.clamp(model.best_x)
    if cfg.restarts == 0:
        return best

    dim = model.dim
    starts = [best] + [rng.uniform(cfg.bound_low, cfg.bound_high, size=dim)
                       for _ in range(cfg.restarts - 1)]
    bounds = [(cfg.bound_low, cfg.bound_high)] * dim

    def negative(x):
        value, grad = ucb_with_grad(model, x, cfg.beta)
        return -value, -grad

    candidates = []
    for start in starts:
        candidates.append((ucb(model, start, cfg.beta), start))
        try:
            result = minimize(negative, start, method='L-BFGS-B', jac=True, bounds=bounds,
                              options={'maxiter': cfg.max_iter})
        except (ValueError, FloatingPointError) as e:
            logger.debug(f"采集函数优化失败，保留起点: {e}")
            continue
        candidate = cfg.clamp(result.x)
        value = ucb(model, candidate, cfg.beta)
        if np.isfinite(value):
            candidates.append((value, candidate))

    # 稳定排序：同值时先出现的优先
    candidates.sort(key=lambda item: -item[0])
    tolerance = MIN_SEPARATION * (cfg.bound_high - cfg.bound_low)
    for _, x in candidates:
        if _separated(x, exclude, tolerance):
            return cfg.clamp(x)

    logger.debug("采集函数的极大点都已评估过，改用随机点")
    return rng.uniform(cfg.bound_low, cfg.bound_high, size=dim)


def _evaluate(objective: Objective, x: np.ndarray, archive: SampleArchive) -> None:
    try:
        result = objective(x)
    except Exception as e:
        raise LearningFailed(f"第 {len(archive)} 次评估失败: {e}", archive) from e
    if isinstance(result, Evaluation):
        y, seed = result.y, result.episode_seed
    else:
        y, seed = result, None
    if not np.isfinite(y):
        raise LearningFailed(f"第 {len(archive)} 次评估得到非有限质量 {y}", archive)
    archive.add(x, float(y), seed)


def _deduplicate(x: np.ndarray, archive: SampleArchive, cfg: BOConfig,
                 rng: np.random.Generator) -> np.ndarray:
    """与已有样本完全相同的点加微小扰动，越界的分量改为反向扰动"""
    if archive.contains_x(x):
        noise = rng.uniform(-DUPLICATE_NOISE / 2, DUPLICATE_NOISE / 2, size=x.shape)
        moved = x + noise
        outside = (moved < cfg.bound_low) | (moved > cfg.bound_high)
        x = np.where(outside, x - noise, moved)
    return x


def bo_learn(objective: Objective, init: Sequence[np.ndarray], cfg: BOConfig,
             rng: np.random.Generator) -> SampleArchive:
    """
    贝叶斯优化学习大脑

    Args:
        objective: θ -> q（或 Evaluation）
        init: 初始候选，1 <= len(init) <= n0，超出边界的分量被夹紧
        cfg: 配置
        rng: 随机数发生器（采集函数起点、重复点扰动）

    Returns:
        恰好 n_final 个样本的档案

    Raises:
        ValueError: 初始候选个数不合法
        LearningFailed: 目标函数出错，携带已有档案
    """
    if not 1 <= len(init) <= cfg.n0:
        raise ValueError(f"初始候选个数应在 [1, {cfg.n0}]，得到 {len(init)}")

    archive = SampleArchive()
    for x in init:
        _evaluate(objective, _deduplicate(cfg.clamp(x), archive, cfg, rng), archive)

    while len(archive) < cfg.n_final:
        model = fit_gp(archive, cfg)
        proposal = maximize_acquisition(model, cfg, rng, exclude=archive.xs())
        x = _deduplicate(proposal, archive, cfg, rng)
        _evaluate(objective, x, archive)
        logger.debug(f"BO 第 {len(archive)}/{cfg.n_final} 个样本: y={archive[-1].y:.4f}, "
                     f"best={archive.best().y:.4f}")
    return archive


def random_learn(objective: Objective, cfg: BOConfig, rng: np.random.Generator,
                 dim: Optional[int] = None,
                 init: Optional[Sequence[np.ndarray]] = None) -> SampleArchive:
    """
    随机搜索（No-BO）

    先评估 init（若给出），其余样本在搜索边界内均匀随机取，共 n_final 个。
    """
    init = list(init or [])
    if dim is None:
        if not init:
            raise ValueError("未给出初始候选时必须指定 dim")
        dim = len(init[0])
    if len(init) > cfg.n_final:
        raise ValueError(f"初始候选 {len(init)} 个超过 n_final={cfg.n_final}")

    archive = SampleArchive()
    for x in init:
        _evaluate(objective, cfg.clamp(x), archive)
    while len(archive) < cfg.n_final:
        _evaluate(objective, rng.uniform(cfg.bound_low, cfg.bound_high, size=dim), archive)
    return archive
