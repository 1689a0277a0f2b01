"""
贝叶斯优化模块

高斯过程代理（Matérn 5/2）、UCB 采集函数、L-BFGS-B 多起点最大化，
以及大脑学习循环和随机搜索基线
"""

from .config import BOConfig
from .samples import Evaluation, Sample, SampleArchive, save_archive, load_archive
from .gp import (
    GPModel, matern52, matern52_grad, fit_gp, posterior, posterior_with_grad, ucb, ucb_with_grad,
)
from .learner import maximize_acquisition, bo_learn, random_learn

__all__ = [
    'BOConfig',
    'Evaluation', 'Sample', 'SampleArchive', 'save_archive', 'load_archive',
    'GPModel', 'matern52', 'matern52_grad', 'fit_gp', 'posterior', 'posterior_with_grad',
    'ucb', 'ucb_with_grad',
    'maximize_acquisition', 'bo_learn', 'random_learn',
]
