"""
控制器模块

共享权重的体素 MLP：参数布局、前向计算、随机初始化与高斯变异
"""

from .mlp import (
    ControllerSpec, DEFAULT_SPEC, param_count, unpack_params,
    forward, forward_batch, random_params, gaussian_perturb,
    params_to_bytes, params_from_bytes,
)

__all__ = [
    'ControllerSpec', 'DEFAULT_SPEC', 'param_count', 'unpack_params',
    'forward', 'forward_batch', 'random_params', 'gaussian_perturb',
    'params_to_bytes', 'params_from_bytes',
]
