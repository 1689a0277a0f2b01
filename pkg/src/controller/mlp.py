"""
共享权重的体素 MLP 大脑

参数布局固定为 [W1 行优先, b1, W2 行优先, b2]：
    W1: (n_hidden, n_inputs)   b1: (n_hidden,)
    W2: (n_outputs, n_hidden)  b2: (n_outputs,)
所有体素使用同一组参数，输出差异只来自各自的输入。
"""

import struct
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import expit

from ..core.constants import ACTUATION, CONTROLLER
from ..core.errors import ShapeMismatch


@dataclass(frozen=True)
class ControllerSpec:
    """
    控制器结构

    Attributes:
        n_inputs: 输入维度
        n_hidden: 隐层神经元数（ReLU）
        n_outputs: 输出维度（sigmoid）
    """
    n_inputs: int = CONTROLLER.N_INPUTS
    n_hidden: int = CONTROLLER.N_HIDDEN
    n_outputs: int = CONTROLLER.N_OUTPUTS

    def __post_init__(self):
        if self.n_inputs < 0 or self.n_hidden < 1 or self.n_outputs < 1:
            raise ValueError(f"非法的控制器结构: {self}")


DEFAULT_SPEC = ControllerSpec()


def param_count(spec: ControllerSpec = DEFAULT_SPEC) -> int:
    """参数个数 (n_in+1)*h + (h+1)*n_out"""
    return (spec.n_inputs + 1) * spec.n_hidden + (spec.n_hidden + 1) * spec.n_outputs


def unpack_params(theta: np.ndarray, spec: ControllerSpec = DEFAULT_SPEC
                  ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    把扁平参数向量拆成 (W1, b1, W2, b2) 视图

    Raises:
        ShapeMismatch: 参数长度不对
    """
    theta = np.asarray(theta, dtype=float)
    if theta.ndim != 1 or theta.shape[0] != param_count(spec):
        raise ShapeMismatch(f"参数长度应为 {param_count(spec)}，得到 {theta.shape}")
    n_in, h, n_out = spec.n_inputs, spec.n_hidden, spec.n_outputs
    i = 0
    w1 = theta[i:i + h * n_in].reshape(h, n_in)
    i += h * n_in
    b1 = theta[i:i + h]
    i += h
    w2 = theta[i:i + n_out * h].reshape(n_out, h)
    i += n_out * h
    b2 = theta[i:i + n_out]
    return w1, b1, w2, b2


def forward_batch(theta: np.ndarray, inputs: np.ndarray,
                  spec: ControllerSpec = DEFAULT_SPEC) -> np.ndarray:
    """
    对所有体素同时前向计算

    Args:
        theta: 扁平参数
        inputs: (n_voxels, n_inputs) 输入矩阵

    Returns:
        (n_voxels,) 驱动目标，位于 (0.6, 1.6)
    """
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim != 2 or inputs.shape[1] != spec.n_inputs:
        raise ShapeMismatch(f"输入应为 (n, {spec.n_inputs})，得到 {inputs.shape}")
    w1, b1, w2, b2 = unpack_params(theta, spec)
    hidden = np.maximum(inputs @ w1.T + b1, 0.0)
    out = expit(hidden @ w2.T + b2)
    return ACTUATION.MIN_SCALE + out[:, 0] * ACTUATION.SPAN


def forward(theta: np.ndarray, inputs: np.ndarray,
            spec: ControllerSpec = DEFAULT_SPEC) -> float:
    """
    单个体素的前向计算

    y = sigmoid(W2 ReLU(W1 x + b1) + b2)，再映射到 0.6 + y

    Raises:
        ShapeMismatch: 输入长度不等于 n_inputs
    """
    inputs = np.asarray(inputs, dtype=float)
    if inputs.shape != (spec.n_inputs,):
        raise ShapeMismatch(f"输入长度应为 {spec.n_inputs}，得到 {inputs.shape}")
    return float(forward_batch(theta, inputs[None, :], spec)[0])


def random_params(rng: np.random.Generator, spec: ControllerSpec = DEFAULT_SPEC,
                  low: float = CONTROLLER.INIT_LOW, high: float = CONTROLLER.INIT_HIGH
                  ) -> np.ndarray:
    """每个参数独立均匀取自 [low, high]（默认 [-1, 1]）"""
    return rng.uniform(low, high, size=param_count(spec))


def gaussian_perturb(theta: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """
    高斯变异：theta + N(0, sigma^2 I)

    sigma 为 0 时原样返回副本（不消耗随机数）。
    """
    if sigma < 0:
        raise ValueError(f"sigma 不能为负: {sigma}")
    theta = np.asarray(theta, dtype=float)
    if sigma == 0:
        return theta.copy()
    return theta + rng.normal(0.0, sigma, size=theta.shape)


def params_to_bytes(theta: np.ndarray) -> bytes:
    """检查点二进制格式：小端 uint64 长度 + 小端 float64 数组"""
    theta = np.asarray(theta, dtype='<f8')
    return struct.pack('<Q', theta.shape[0]) + theta.tobytes()


def params_from_bytes(data: bytes) -> np.ndarray:
    """
    读取 params_to_bytes 写出的参数

    Raises:
        ShapeMismatch: 长度前缀与数据不一致
    """
    if len(data) < 8:
        raise ShapeMismatch("参数数据缺少长度前缀")
    (length,) = struct.unpack('<Q', data[:8])
    payload = data[8:]
    if len(payload) != 8 * length:
        raise ShapeMismatch(f"长度前缀 {length} 与数据字节数 {len(payload)} 不一致")
    return np.frombuffer(payload, dtype='<f8').astype(float)
