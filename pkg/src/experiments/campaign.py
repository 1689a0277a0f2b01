"""
批量进化

对每个 (策略, 任务, 重复) 执行一次进化运行，写出运行目录和 qstar.csv。
已完成的运行直接跳过（--force 时删除重跑）；单次运行失败只记录日志，其余继续。
"""

import dataclasses
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from ..core.errors import VsrError
from ..core.event_bus import Event, EventBus, EventType
from ..core.logger import get_module_logger
from ..evolution.checkpoint import CheckpointStore, write_csv
from ..evolution.evolve import evolve
from .settings import CampaignConfig, RunSpec


logger = get_module_logger(__name__)

QSTAR_HEADER = ['strategy', 'task', 'repetition', 'seed', 'q_star']
QSTAR_FILE = 'qstar.csv'


@dataclass
class CampaignResult:
    """批量实验结果"""
    rows: List[tuple] = field(default_factory=list)
    failures: List[Tuple[str, str]] = field(default_factory=list)
    run_dirs: List[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _progress_bus() -> EventBus:
    bus = EventBus()
    bus.subscribe(EventType.RUN_RESUMED,
                  lambda e: logger.info(f"续跑 {e.data['run_dir']}（已完成到第 {e.data['gen']} 代）"))
    bus.subscribe(EventType.INDIVIDUAL_FAILED,
                  lambda e: logger.warning(f"第 {e.data['gen']} 代个体 {e.data['index']} 失败"))
    bus.subscribe(EventType.RUN_FAILED,
                  lambda e: logger.error(f"运行失败 {e.data['run_dir']}: {e.data['error']}"))
    return bus


def completed_q_star(run_dir: Path, n_gen: int) -> Optional[float]:
    """已完成运行的 q*，未完成时为 None"""
    store = CheckpointStore(run_dir)
    if not store.is_complete(n_gen):
        return None
    records = store.load_best()
    q = records[-1]['q_star']
    return float('-inf') if q is None else float(q)


def run_single(spec: RunSpec, jobs: int = 1, force: bool = False) -> Tuple[tuple, Optional[str]]:
    """
    执行（或跳过）一次运行

    Returns:
        (qstar.csv 行, 错误信息或 None)
    """
    row_prefix = (spec.strategy.value, spec.task.value, spec.repetition, spec.seed)
    bus = _progress_bus()
    started = False
    try:
        if force and spec.run_dir.exists():
            shutil.rmtree(spec.run_dir)
        q_star = completed_q_star(spec.run_dir, spec.config.n_gen)
        if q_star is not None:
            logger.info(f"跳过已完成的运行 {spec.run_dir}")
            return row_prefix + (q_star,), None
        cfg = dataclasses.replace(spec.config, ga=dataclasses.replace(spec.config.ga, jobs=jobs))
        started = True
        record = evolve(cfg, spec.run_dir, bus=bus)
        logger.info(f"运行完成 {spec.run_dir}: q*={record.q_star:.4f}, 回合数={record.total_episodes}")
        return row_prefix + (float(record.q_star),), None
    except VsrError as e:
        # evolve 内部的失败已经发布过 RUN_FAILED
        if not started:
            bus.publish(Event(EventType.RUN_FAILED, {'run_dir': str(spec.run_dir), 'error': str(e)}))
        return row_prefix + (float('nan'),), str(e)


def _run_single_job(args) -> Tuple[tuple, Optional[str]]:
    return run_single(*args)


def cmd_evolve(campaign: CampaignConfig, jobs: int = 1, force: bool = False) -> CampaignResult:
    """
    执行批量进化

    多个运行时 jobs 个进程并行跑不同的运行；只有一个运行时 jobs 用于代内并行。
    每次运行的结果与并行方式无关。
    """
    specs = list(campaign.runs())
    logger.info(f"批量进化: {len(specs)} 次运行，输出到 {campaign.output_root}")
    result = CampaignResult(run_dirs=[s.run_dir for s in specs])

    if len(specs) > 1 and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_run_single_job, [(s, 1, force) for s in specs]))
    else:
        outcomes = [run_single(s, jobs, force) for s in specs]

    for spec, (row, error) in zip(specs, outcomes):
        if error is None:
            result.rows.append(row)
        else:
            result.failures.append((str(spec.run_dir), error))

    campaign.output_root.mkdir(parents=True, exist_ok=True)
    write_csv(campaign.output_root / QSTAR_FILE, QSTAR_HEADER, result.rows)
    if result.failures:
        logger.error(f"{len(result.failures)} 次运行失败")
    return result
