"""
锦标赛选择
"""

from typing import Sequence

import numpy as np

from .individual import Individual


def tournament_select(population: Sequence[Individual], n_tour: int, rng: np.random.Generator) -> int:
    """
    不放回地均匀抽取 n_tour 个个体，返回其中 q 最高者的下标（并列取较小下标）

    Raises:
        ValueError: n_tour 不在 [1, len(population)]
    """
    if not 1 <= n_tour <= len(population):
        raise ValueError(f"n_tour={n_tour} 超出种群规模 {len(population)}")
    drawn = np.sort(rng.choice(len(population), size=n_tour, replace=False))
    qualities = np.array([population[i].q for i in drawn])
    # argmax 取第一个最大值，drawn 已升序
    return int(drawn[int(np.argmax(qualities))])
