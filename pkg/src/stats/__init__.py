"""
统计模块
"""

from .significance import mann_whitney_u, benjamini_hochberg, StatsResult, pairwise_comparison, medians

__all__ = ['mann_whitney_u', 'benjamini_hochberg', 'StatsResult', 'pairwise_comparison', 'medians']
