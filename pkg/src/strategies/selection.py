"""
教师选择：为新身体构造 n0 个初始 BO 候选

- Parent:       父代档案中最好的 n0 个样本
- *-One:        一个教师（最好 / 最相似 / 随机）的最好 n0 个样本
- *-Many:       n0 个不同教师各自最好的一个样本
- IL:           基因型携带的 θ
- NoBO:         n0 个在搜索边界内均匀随机的向量（与随机搜索同分布）

质量并列取较小下标；相似度并列取较高质量，再取较小下标。
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..bayesopt.config import BOConfig
from ..bayesopt.samples import SampleArchive
from ..core.errors import InsufficientTeachers
from ..morphology.body import BodyGrid
from ..morphology.similarity import hamming_distance_aligned
from .strategy import StrategyId


@dataclass(frozen=True)
class TeacherRecord:
    """上一代一个个体的可继承信息"""
    index: int
    body: BodyGrid
    q: float
    archive: SampleArchive
    parent: Optional[int] = None


@dataclass(frozen=True)
class Candidate:
    """
    初始候选

    Attributes:
        theta: 大脑参数（已夹到搜索边界内）
        teacher: 来源个体下标，随机候选为 None
        rank: 在来源档案中的名次（0 为最好）
    """
    theta: np.ndarray
    teacher: Optional[int] = None
    rank: Optional[int] = None


class GenerationArchive:
    """上一代的只读快照"""

    def __init__(self, records: Sequence[TeacherRecord]):
        self._records = tuple(records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __getitem__(self, index: int) -> TeacherRecord:
        return self._records[index]

    def teachers(self) -> List[TeacherRecord]:
        """有样本可继承的个体"""
        return [r for r in self._records if len(r.archive) > 0]


def random_candidates(n: int, rng: np.random.Generator, dim: int, cfg: BOConfig) -> List[Candidate]:
    """n 个在初始化范围内均匀随机的候选"""
    return [Candidate(rng.uniform(cfg.init_low, cfg.init_high, size=dim)) for _ in range(n)]


def bootstrap_candidates(strategy: StrategyId, n0: int, rng: np.random.Generator, dim: int,
                         cfg: BOConfig, genotype_theta: Optional[np.ndarray] = None) -> List[Candidate]:
    """第 0 代：IL 用基因型 θ，NoBO 在整个搜索边界内随机，其余模式在初始化范围内随机"""
    if strategy is StrategyId.IL:
        if genotype_theta is None:
            raise ValueError("IL 模式需要基因型 θ")
        return [Candidate(cfg.clamp(genotype_theta))]
    if strategy is StrategyId.NOBO:
        return [Candidate(rng.uniform(cfg.bound_low, cfg.bound_high, size=dim)) for _ in range(n0)]
    return random_candidates(n0, rng, dim, cfg)


def _best_samples(record: TeacherRecord, n: int, cfg: BOConfig) -> List[Candidate]:
    if len(record.archive) < n:
        raise InsufficientTeachers(
            f"教师 {record.index} 只有 {len(record.archive)} 个样本，需要 {n} 个")
    return [Candidate(cfg.clamp(s.x), record.index, rank)
            for rank, s in enumerate(record.archive.top(n))]


def _one_from_each(teachers: List[TeacherRecord], n0: int, cfg: BOConfig) -> List[Candidate]:
    """依次从每个教师取一个样本；教师不足 n0 时循环取第二好、第三好 ..."""
    ranked = {t.index: t.archive.top(n0) for t in teachers}
    candidates: List[Candidate] = []
    rank = 0
    while len(candidates) < n0:
        progressed = False
        for teacher in teachers:
            samples = ranked[teacher.index]
            if rank < len(samples):
                candidates.append(Candidate(cfg.clamp(samples[rank].x), teacher.index, rank))
                progressed = True
                if len(candidates) == n0:
                    break
        if not progressed:
            raise InsufficientTeachers(f"{len(teachers)} 个教师的样本总数不足 {n0}")
        rank += 1
    return candidates


def _by_quality(teachers: List[TeacherRecord]) -> List[TeacherRecord]:
    return sorted(teachers, key=lambda t: (-t.q, t.index))


def _by_similarity(teachers: List[TeacherRecord], body: BodyGrid) -> List[TeacherRecord]:
    return sorted(teachers, key=lambda t: (hamming_distance_aligned(body, t.body), -t.q, t.index))


def select_init_candidates(strategy: StrategyId, learner_body: BodyGrid,
                           learner_parent: Optional[int], prev: Optional[GenerationArchive],
                           n0: int, rng: np.random.Generator, dim: int, cfg: BOConfig,
                           genotype_theta: Optional[np.ndarray] = None) -> List[Candidate]:
    """
    按策略构造初始候选

    Args:
        strategy: 学习策略
        learner_body: 学习者身体
        learner_parent: 学习者父代在 prev 中的下标
        prev: 上一代快照；None 或为空时走第 0 代的随机候选
        n0: 候选个数
        rng: 随机数发生器（Random-* 与 NoBO）
        dim: 参数维度
        cfg: BO 配置（边界与初始化范围）
        genotype_theta: IL 模式的基因型 θ

    Returns:
        IL 为 1 个候选，其余模式为 n0 个

    Raises:
        InsufficientTeachers: 教师或样本不够
    """
    if n0 < 1:
        raise ValueError(f"n0 至少为 1: {n0}")
    if not strategy.is_social or prev is None or len(prev) == 0:
        return bootstrap_candidates(strategy, n0, rng, dim, cfg, genotype_theta)

    if strategy is StrategyId.PARENT:
        if learner_parent is None:
            raise InsufficientTeachers("Parent 模式需要父代下标")
        return _best_samples(prev[learner_parent], n0, cfg)

    teachers = prev.teachers()
    if not teachers:
        raise InsufficientTeachers("上一代没有任何可继承的样本")

    if strategy is StrategyId.BEST_ONE:
        return _best_samples(_by_quality(teachers)[0], n0, cfg)
    if strategy is StrategyId.SIMILAR_ONE:
        return _best_samples(_by_similarity(teachers, learner_body)[0], n0, cfg)
    if strategy is StrategyId.RANDOM_ONE:
        return _best_samples(teachers[int(rng.integers(len(teachers)))], n0, cfg)

    if strategy is StrategyId.BEST_MANY:
        ordered = _by_quality(teachers)
    elif strategy is StrategyId.SIMILAR_MANY:
        ordered = _by_similarity(teachers, learner_body)
    else:
        ordered = [teachers[i] for i in rng.permutation(len(teachers))]
    return _one_from_each(ordered[:n0], n0, cfg)
