"""
高斯过程代理模型

Matérn 5/2 核：
    k(r) = s² (1 + √5 r/ℓ + 5r²/(3ℓ²)) exp(-√5 r/ℓ)
对 x 的梯度：
    ∂k/∂x = -s² (5/(3ℓ²)) (1 + √5 r/ℓ) exp(-√5 r/ℓ) (x - x_i)

目标先标准化（总体标准差；标准差为 0 时只做零中心化），
核矩阵加抖动后做 Cholesky 分解，分解失败或求解残差过大时抖动 ×10 逐级提升。
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..core.errors import ShapeMismatch, SingularKernel
from ..core.logger import get_module_logger
from .config import BOConfig
from .samples import SampleArchive


logger = get_module_logger(__name__)

SQRT5 = np.sqrt(5.0)


def matern52(x1: np.ndarray, x2: np.ndarray, length_scale: float,
             signal_variance: float = 1.0) -> np.ndarray:
    """(n, d) × (m, d) 的 Matérn 5/2 核矩阵"""
    x1 = np.atleast_2d(x1)
    x2 = np.atleast_2d(x2)
    sq = np.sum(x1 ** 2, axis=1)[:, None] + np.sum(x2 ** 2, axis=1)[None, :] - 2.0 * x1 @ x2.T
    r = np.sqrt(np.maximum(sq, 0.0)) / length_scale
    return signal_variance * (1.0 + SQRT5 * r + 5.0 / 3.0 * r ** 2) * np.exp(-SQRT5 * r)


def matern52_grad(x: np.ndarray, xs: np.ndarray, length_scale: float,
                  signal_variance: float = 1.0) -> np.ndarray:
    """k(x, xs_i) 对 x 的梯度，形状 (n, d)"""
    diff = x[None, :] - xs
    r = np.sqrt(np.sum(diff ** 2, axis=1)) / length_scale
    factor = -signal_variance * 5.0 / (3.0 * length_scale ** 2) * (1.0 + SQRT5 * r) * np.exp(-SQRT5 * r)
    return factor[:, None] * diff


@dataclass
class GPModel:
    """
    已拟合的高斯过程

    Attributes:
        xs: (n, d) 训练输入
        ys: (n,) 原始训练目标
        y_mean, y_std: 标准化变换
        cho: Cholesky 因子（cho_factor 的返回值）
        alpha: K⁻¹ y_std 化后的目标
        jitter: 实际使用的抖动
    """
    xs: np.ndarray
    ys: np.ndarray
    y_mean: float
    y_std: float
    cho: Tuple[np.ndarray, bool]
    alpha: np.ndarray
    length_scale: float
    signal_variance: float
    jitter: float

    @property
    def dim(self) -> int:
        return self.xs.shape[1]

    @property
    def best_x(self) -> np.ndarray:
        return self.xs[int(np.argmax(self.ys))]


# Cholesky 求解的相对残差上限
SOLVE_TOLERANCE = 1e-6


def _factor_and_solve(matrix: np.ndarray, targets: np.ndarray):
    """Cholesky 分解并求解；分解失败或残差超过 SOLVE_TOLERANCE 时返回 (None, None)"""
    try:
        cho = cho_factor(matrix, lower=True)
    except LinAlgError:
        return None, None
    alpha = cho_solve(cho, targets)
    residual = float(np.max(np.abs(matrix @ alpha - targets)))
    if not residual <= SOLVE_TOLERANCE * (1.0 + float(np.max(np.abs(targets)))):
        return None, None
    return cho, alpha


def fit_gp(samples: SampleArchive, cfg: BOConfig) -> GPModel:
    """
    拟合代理模型

    Raises:
        ValueError: 样本为空
        SingularKernel: 抖动提升到上限仍无法分解
    """
    if len(samples) < 1:
        raise ValueError("拟合高斯过程至少需要一个样本")
    xs = samples.xs()
    ys = samples.ys()
    y_mean = float(np.mean(ys))
    y_std = float(np.std(ys))
    if not y_std > 0:
        y_std = 1.0
    targets = (ys - y_mean) / y_std

    gram = matern52(xs, xs, cfg.length_scale, cfg.signal_variance)
    eye = np.eye(len(xs))
    jitter = cfg.jitter
    while True:
        cho, alpha = _factor_and_solve(gram + jitter * eye, targets)
        if cho is not None:
            break
        jitter *= 10.0
        if jitter > cfg.jitter_max:
            raise SingularKernel(f"核矩阵在抖动 {cfg.jitter_max} 下仍无法分解（{len(xs)} 个样本）")
        logger.warning(f"核矩阵分解失败或求解不准，抖动提升到 {jitter:g}")

    return GPModel(
        xs=xs,
        ys=ys,
        y_mean=y_mean,
        y_std=y_std,
        cho=cho,
        alpha=alpha,
        length_scale=cfg.length_scale,
        signal_variance=cfg.signal_variance,
        jitter=jitter,
    )


def _check_x(model: GPModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dim,):
        raise ShapeMismatch(f"查询点维度应为 ({model.dim},)，得到 {x.shape}")
    return x


def posterior(model: GPModel, x) -> Tuple[float, float]:
    """
    后验均值与标准差（反标准化后）

    Raises:
        ShapeMismatch: x 维度不对
    """
    x = _check_x(model, x)
    k_star = matern52(x[None, :], model.xs, model.length_scale, model.signal_variance)[0]
    mu = model.y_mean + model.y_std * float(k_star @ model.alpha)
    v = cho_solve(model.cho, k_star)
    var = max(model.signal_variance - float(k_star @ v), 0.0)
    return mu, model.y_std * float(np.sqrt(var))


def posterior_with_grad(model: GPModel, x) -> Tuple[float, float, np.ndarray, np.ndarray]:
    """后验均值、标准差及其对 x 的梯度"""
    x = _check_x(model, x)
    k_star = matern52(x[None, :], model.xs, model.length_scale, model.signal_variance)[0]
    dk = matern52_grad(x, model.xs, model.length_scale, model.signal_variance)
    v = cho_solve(model.cho, k_star)
    mu = model.y_mean + model.y_std * float(k_star @ model.alpha)
    dmu = model.y_std * (dk.T @ model.alpha)
    var = model.signal_variance - float(k_star @ v)
    if var > 0:
        sigma_s = np.sqrt(var)
        dsigma = model.y_std * (-(dk.T @ v)) / sigma_s
    else:
        sigma_s = 0.0
        dsigma = np.zeros_like(x)
    return mu, model.y_std * float(sigma_s), dmu, dsigma


def ucb(model: GPModel, x, beta: float) -> float:
    """μ(x) + β σ(x)"""
    mu, sigma = posterior(model, x)
    return mu + beta * sigma


def ucb_with_grad(model: GPModel, x, beta: float) -> Tuple[float, np.ndarray]:
    mu, sigma, dmu, dsigma = posterior_with_grad(model, x)
    return mu + beta * sigma, dmu + beta * dsigma
