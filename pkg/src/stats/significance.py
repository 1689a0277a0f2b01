"""
显著性检验

Mann-Whitney U（总样本数 <= 12 且无并列时精确，否则带连续性校正的正态近似）
与 Benjamini-Hochberg 多重比较校正。
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.stats import mannwhitneyu
from statsmodels.stats.multitest import multipletests

from ..core.constants import STATS
from ..core.errors import DegenerateInput


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> Tuple[float, float]:
    """
    双侧 Mann-Whitney U 检验

    Returns:
        (U, p)，U 为第一组的 U 统计量（中位秩处理并列）

    Raises:
        ValueError: 某组为空
        DegenerateInput: 两组所有值都相同（按约定 p = 1）
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 1 or b.size < 1:
        raise ValueError("两组样本都至少需要一个值")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        raise DegenerateInput(f"两组 {pooled.size} 个值全部相同")

    has_ties = np.unique(pooled).size < pooled.size
    method = 'exact' if pooled.size <= STATS.EXACT_MAX_SIZE and not has_ties else 'asymptotic'
    result = mannwhitneyu(a, b, alternative='two-sided', method=method, use_continuity=True)
    return float(result.statistic), float(min(result.pvalue, 1.0))


def benjamini_hochberg(p_values: Sequence[float]) -> List[float]:
    """BH 逐步上调校正，按原顺序返回"""
    p = np.asarray(p_values, dtype=float)
    if p.size == 0:
        return []
    if np.any((p < 0) | (p > 1)):
        raise ValueError("p 值必须位于 [0, 1]")
    return multipletests(p, method='fdr_bh')[1].tolist()


@dataclass(frozen=True)
class StatsResult:
    """
    两两比较结果

    Attributes:
        labels: 组名（矩阵行列顺序）
        raw: 原始 p 值矩阵（对称，对角为 1）
        adjusted: BH 校正后的 p 值矩阵
        significant: adjusted < alpha
        alpha: 显著性水平
    """
    labels: Tuple[str, ...]
    raw: np.ndarray
    adjusted: np.ndarray
    significant: np.ndarray
    alpha: float

    def pairs(self) -> List[Tuple[str, str, float, float, bool]]:
        """上三角各对 (a, b, p, p_adj, 显著)"""
        rows = []
        for i, j in combinations(range(len(self.labels)), 2):
            rows.append((self.labels[i], self.labels[j], float(self.raw[i, j]),
                         float(self.adjusted[i, j]), bool(self.significant[i, j])))
        return rows


def pairwise_comparison(groups: Mapping[str, Sequence[float]], alpha: float = STATS.ALPHA) -> StatsResult:
    """
    所有组两两做 Mann-Whitney U，再对全部 p 值做 BH 校正

    两组值全部相同时该对 p = 1。
    """
    labels = tuple(groups)
    k = len(labels)
    raw = np.ones((k, k))
    pairs = list(combinations(range(k), 2))
    p_values = []
    for i, j in pairs:
        try:
            _, p = mann_whitney_u(groups[labels[i]], groups[labels[j]])
        except DegenerateInput as e:
            p = e.p_value
        p_values.append(p)

    adjusted = np.ones((k, k))
    for (i, j), p, adj in zip(pairs, p_values, benjamini_hochberg(p_values)):
        raw[i, j] = raw[j, i] = p
        adjusted[i, j] = adjusted[j, i] = adj

    significant = adjusted < alpha
    np.fill_diagonal(significant, False)
    return StatsResult(labels, raw, adjusted, significant, alpha)


def medians(groups: Mapping[str, Sequence[float]]) -> Dict[str, float]:
    """各组中位数"""
    return {label: float(np.median(values)) for label, values in groups.items() if len(values)}
