"""
外层遗传算法

第 0 代随机身体（IL 另带随机 θ），之后每代由锦标赛选出父代、变异身体
（IL 另对 θ 做高斯变异），子代完全替换父代（无精英保留）。
每个个体的大脑由学习得到，学习者的初始候选由策略从上一代选出。
"""

from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..controller.mlp import gaussian_perturb, param_count, random_params
from ..core.errors import ConfigError, DegeneratePopulation, InsufficientTeachers, RetryExhausted, VsrError
from ..core.event_bus import Event, EventBus, EventType
from ..core.logger import get_module_logger
from ..morphology.body import format_body
from ..morphology.operators import mutate_body, random_body
from ..morphology.similarity import population_diversity
from ..strategies.selection import (
    GenerationArchive, bootstrap_candidates, random_candidates, select_init_candidates,
)
from ..strategies.strategy import StrategyId
from .checkpoint import CheckpointStore
from .config import EvoConfig, evo_config_items
from .individual import STREAM_VARIATION, Individual, evaluate_job, individual_rng
from .selection import tournament_select


logger = get_module_logger(__name__)


@dataclass(frozen=True)
class GenerationSummary:
    gen: int
    best_q: float
    mean_q: float
    diversity: float

    def as_row(self) -> tuple:
        return (self.gen, self.best_q, self.mean_q, self.diversity)


@dataclass
class RunRecord:
    """
    一次进化运行的结果

    Attributes:
        config: 运行配置
        summaries: 每代的最好 / 平均质量与多样性
        population: 最后一代种群
        best: 所有代中质量最高的个体（q*）
        best_gen: best 所在的代
        total_episodes: 实际仿真的回合总数
        history: keep_history 为 True 时保存每一代的种群
        best_history: 每代结束时的 q* 记录（best.jsonl 的内容）
        run_dir: 运行目录
    """
    config: EvoConfig
    summaries: List[GenerationSummary] = field(default_factory=list)
    population: List[Individual] = field(default_factory=list)
    best: Optional[Individual] = None
    best_gen: int = -1
    total_episodes: int = 0
    history: Optional[List[List[Individual]]] = None
    best_history: List[Dict[str, Any]] = field(default_factory=list)
    run_dir: Optional[Path] = None

    @property
    def q_star(self) -> float:
        return self.best.q if self.best is not None else float('-inf')

    @property
    def q_star_history(self) -> List[float]:
        """每代结束时的 q*"""
        result, current = [], float('-inf')
        for summary in self.summaries:
            current = max(current, summary.best_q)
            result.append(current)
        return result

    def best_record(self, gen: int) -> Dict[str, Any]:
        best = self.best
        return {
            'gen': gen,
            'q_star': best.q if np.isfinite(best.q) else None,
            'source_gen': self.best_gen,
            'source_index': best.index,
            'body': format_body(best.body),
            'theta': None if best.best_theta is None else best.best_theta.tolist(),
            'episode_seed': best.best_episode_seed,
        }


def summarize(gen: int, population: List[Individual]) -> GenerationSummary:
    qualities = np.array([ind.q for ind in population])
    finite = qualities[np.isfinite(qualities)]
    try:
        diversity = population_diversity([ind.body for ind in population])
    except DegeneratePopulation:
        diversity = float('nan')
    return GenerationSummary(
        gen=gen,
        best_q=float(qualities.max()),
        mean_q=float(finite.mean()) if finite.size else float('nan'),
        diversity=float(diversity),
    )


def _make_job(cfg: EvoConfig, gen: int, index: int, body, candidates, parent, theta) -> Dict[str, Any]:
    return {
        'cfg': cfg,
        'gen': gen,
        'index': index,
        'body': body,
        'candidates': [c.theta for c in candidates],
        'parent': parent,
        'genotype_theta': theta,
    }


def initial_jobs(cfg: EvoConfig) -> List[Dict[str, Any]]:
    """第 0 代：随机身体与随机候选"""
    jobs = []
    dim = param_count()
    for index in range(cfg.n_pop):
        rng = individual_rng(cfg.seed, 0, index, STREAM_VARIATION)
        body = random_body(rng)
        theta = None
        if cfg.strategy is StrategyId.IL:
            theta = random_params(rng, low=cfg.bo.init_low, high=cfg.bo.init_high)
        candidates = bootstrap_candidates(cfg.strategy, cfg.bo.n0, rng, dim, cfg.bo, theta)
        jobs.append(_make_job(cfg, 0, index, body, candidates, None, theta))
    return jobs


def offspring_jobs(cfg: EvoConfig, gen: int, previous: List[Individual]) -> List[Dict[str, Any]]:
    """由上一代产生 n_pop 个子代的评估任务"""
    archive = GenerationArchive([ind.as_teacher() for ind in previous])
    dim = param_count()
    jobs = []
    for index in range(cfg.n_pop):
        rng = individual_rng(cfg.seed, gen, index, STREAM_VARIATION)
        parent_index = tournament_select(previous, cfg.ga.n_tour, rng)
        parent = previous[parent_index]
        try:
            body = mutate_body(parent.body, rng)
        except RetryExhausted:
            logger.warning(f"第 {gen} 代个体 {index} 变异失败，沿用父代身体")
            body = parent.body

        theta = None
        if cfg.strategy is StrategyId.IL:
            theta = gaussian_perturb(parent.genotype_theta, cfg.ga.sigma_mut, rng)

        try:
            candidates = select_init_candidates(cfg.strategy, body, parent_index, archive,
                                                cfg.bo.n0, rng, dim, cfg.bo, theta)
        except InsufficientTeachers as e:
            logger.warning(f"第 {gen} 代个体 {index} 教师不足，改用随机候选: {e}")
            candidates = random_candidates(cfg.bo.n0, rng, dim, cfg.bo)
        jobs.append(_make_job(cfg, gen, index, body, candidates, parent_index, theta))
    return jobs


def _run_jobs(jobs: List[Dict[str, Any]], executor: Optional[Executor]) -> List[Individual]:
    if executor is None:
        return [evaluate_job(job) for job in jobs]
    return list(executor.map(evaluate_job, jobs))


def _publish(bus: Optional[EventBus], event_type: EventType, **data) -> None:
    if bus is not None:
        bus.publish(Event(event_type, data))


def _resume(store: CheckpointStore, cfg: EvoConfig, record: RunRecord,
            keep_history: bool, bus: Optional[EventBus]) -> int:
    """从检查点恢复，返回下一代的编号"""
    if store.config_path.exists() and store.completed_generations():
        saved = dict(store.load_config())
        current = dict(evo_config_items(cfg))
        saved.pop('jobs', None)
        current.pop('jobs', None)
        if saved != current:
            raise ConfigError(f"运行目录 {store.run_dir} 的配置与本次不同，使用 --force 重新开始")

    next_gen = 0
    for gen in store.completed_generations():
        if gen != next_gen or gen >= cfg.n_gen:
            break
        population = store.load_generation(gen)
        if population is None or len(population) != cfg.n_pop:
            logger.warning(f"第 {gen} 代检查点不完整，从这一代重新开始")
            break
        _absorb(record, gen, population, keep_history)
        next_gen = gen + 1

    if next_gen > 0:
        logger.info(f"从第 {next_gen - 1} 代检查点恢复 {store.run_dir}")
        _publish(bus, EventType.RUN_RESUMED, gen=next_gen - 1, run_dir=str(store.run_dir))
    return next_gen


def _absorb(record: RunRecord, gen: int, population: List[Individual], keep_history: bool) -> GenerationSummary:
    """把一代加入运行记录"""
    summary = summarize(gen, population)
    record.summaries.append(summary)
    record.population = population
    record.total_episodes += sum(ind.episodes for ind in population)
    for ind in population:
        if record.best is None or ind.q > record.best.q:
            record.best = ind
            record.best_gen = gen
    record.best_history.append(record.best_record(gen))
    if keep_history:
        record.history.append(population)
    return summary


def evolve(cfg: EvoConfig, run_dir: Optional[Union[str, Path]] = None,
           bus: Optional[EventBus] = None, resume: bool = True,
           keep_history: bool = False) -> RunRecord:
    """
    执行一次进化运行

    Args:
        cfg: 运行配置
        run_dir: 运行目录；给出时每代写检查点、summary.csv 与 best.jsonl
        bus: 可选事件总线
        resume: 运行目录已有检查点时是否从最后一代继续
        keep_history: 是否在内存里保留每一代的种群

    Returns:
        RunRecord

    Raises:
        VsrError: 运行失败，抛出前发布 RUN_FAILED
    """
    try:
        return _evolve(cfg, run_dir, bus, resume, keep_history)
    except VsrError as e:
        _publish(bus, EventType.RUN_FAILED, run_dir=None if run_dir is None else str(run_dir),
                 error=str(e))
        raise


def _evolve(cfg: EvoConfig, run_dir: Optional[Union[str, Path]], bus: Optional[EventBus],
            resume: bool, keep_history: bool) -> RunRecord:
    record = RunRecord(config=cfg, history=[] if keep_history else None)
    store = CheckpointStore(run_dir) if run_dir is not None else None
    start_gen = 0
    if store is not None:
        record.run_dir = store.run_dir
        if resume:
            start_gen = _resume(store, cfg, record, keep_history, bus)
        store.save_config(evo_config_items(cfg))

    if store is not None and start_gen:
        store.save_summary([s.as_row() for s in record.summaries])
        store.save_best(record.best_history)

    executor_cm = ProcessPoolExecutor(max_workers=cfg.ga.jobs) if cfg.ga.jobs > 1 else nullcontext(None)
    with executor_cm as executor:
        for gen in range(start_gen, cfg.n_gen):
            _publish(bus, EventType.GENERATION_STARTED, gen=gen)
            jobs = initial_jobs(cfg) if gen == 0 else offspring_jobs(cfg, gen, record.population)
            population = _run_jobs(jobs, executor)

            for ind in population:
                if ind.failed:
                    _publish(bus, EventType.INDIVIDUAL_FAILED, gen=gen, index=ind.index)

            summary = _absorb(record, gen, population, keep_history)
            logger.info(f"[{cfg.strategy.label}/{cfg.task.value}/seed={cfg.seed}] 第 {gen} 代: "
                        f"best={summary.best_q:.4f} mean={summary.mean_q:.4f} "
                        f"diversity={summary.diversity:.3f} q*={record.q_star:.4f}")

            if store is not None:
                store.save_generation(gen, population)
                store.save_summary([s.as_row() for s in record.summaries])
                store.save_best(record.best_history)
                _publish(bus, EventType.CHECKPOINT_WRITTEN, gen=gen, run_dir=str(store.run_dir))

            _publish(bus, EventType.GENERATION_COMPLETE, gen=gen, best_q=summary.best_q,
                     mean_q=summary.mean_q, diversity=summary.diversity, q_star=record.q_star)

    _publish(bus, EventType.RUN_COMPLETE, q_star=record.q_star, total_episodes=record.total_episodes)
    return record
