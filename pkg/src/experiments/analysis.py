"""
结果分析

- analyze: 每次运行最好身体的描述子、每个 (策略, 任务) 的描述子中位数、每代多样性曲线
- stats:   每个任务上各策略 q* 的两两 Mann-Whitney U + BH 校正
"""

from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from ..core.constants import STATS
from ..core.errors import MissingRun
from ..core.logger import get_module_logger
from ..evolution.checkpoint import CheckpointStore, read_csv, write_csv
from ..morphology.descriptors import descriptors
from ..stats.significance import medians, pairwise_comparison
from .campaign import QSTAR_FILE
from .runs import discover_runs, load_run


logger = get_module_logger(__name__)

DESCRIPTOR_HEADER = ['run_dir', 'strategy', 'task', 'repetition', 'q_star',
                     'active_rate', 'compactness', 'voxel_count']
DESCRIPTOR_MEDIAN_HEADER = ['strategy', 'task', 'runs', 'active_rate', 'compactness', 'q_star']
DIVERSITY_HEADER = ['strategy', 'task', 'repetition', 'gen', 'diversity']
STATS_HEADER = ['strategy_a', 'strategy_b', 'p_raw', 'p_adjusted', 'significant']
MEDIAN_HEADER = ['strategy', 'task', 'runs', 'median_q_star']


def cmd_analyze(campaign_dir: Path) -> Dict[str, List[tuple]]:
    """
    写出 descriptors.csv、descriptor_medians.csv 与 diversity_curves.csv

    Raises:
        MissingRun: 没有已完成的运行
    """
    campaign_dir = Path(campaign_dir)
    descriptor_rows, diversity_rows = [], []
    grouped: Dict[Tuple[str, str], List[tuple]] = defaultdict(list)

    for run_dir in discover_runs(campaign_dir):
        run = load_run(run_dir)
        strategy, task = run.config.strategy.value, run.config.task.value
        d = descriptors(run.body)
        row = (str(run_dir.relative_to(campaign_dir)) if run_dir != campaign_dir else '.',
               strategy, task, run.repetition, run.q_star, d.active_rate, d.compactness, d.voxel_count)
        descriptor_rows.append(row)
        grouped[(strategy, task)].append((d.active_rate, d.compactness, run.q_star))
        for summary in CheckpointStore(run_dir).load_summary():
            diversity_rows.append((strategy, task, run.repetition, int(summary['gen']),
                                   float(summary['diversity'])))

    median_rows = []
    for (strategy, task), values in sorted(grouped.items()):
        values = np.array(values)
        median_rows.append((strategy, task, len(values), float(np.median(values[:, 0])),
                            float(np.median(values[:, 1])), float(np.median(values[:, 2]))))

    write_csv(campaign_dir / 'descriptors.csv', DESCRIPTOR_HEADER, descriptor_rows)
    write_csv(campaign_dir / 'descriptor_medians.csv', DESCRIPTOR_MEDIAN_HEADER, median_rows)
    write_csv(campaign_dir / 'diversity_curves.csv', DIVERSITY_HEADER, diversity_rows)
    logger.info(f"分析完成: {len(descriptor_rows)} 次运行")
    return {'descriptors': descriptor_rows, 'medians': median_rows, 'diversity': diversity_rows}


def load_q_star_groups(campaign_dir: Path) -> Dict[str, Dict[str, List[float]]]:
    """{任务: {策略: [q*, ...]}}，来自 qstar.csv"""
    path = Path(campaign_dir) / QSTAR_FILE
    if not path.exists():
        raise MissingRun(f"缺少 {path}")
    groups: Dict[str, Dict[str, List[float]]] = defaultdict(lambda: defaultdict(list))
    for row in read_csv(path):
        q = float(row['q_star'])
        if np.isfinite(q):
            groups[row['task']][row['strategy']].append(q)
    return groups


def cmd_stats(campaign_dir: Path, alpha: float = STATS.ALPHA) -> Dict[str, List[tuple]]:
    """
    每个任务写出 stats_<task>.csv，另写 stats_medians.csv

    Raises:
        MissingRun: 缺少 qstar.csv
    """
    campaign_dir = Path(campaign_dir)
    tables: Dict[str, List[tuple]] = {}
    median_rows = []
    for task, by_strategy in sorted(load_q_star_groups(campaign_dir).items()):
        groups = {s: by_strategy[s] for s in sorted(by_strategy)}
        result = pairwise_comparison(groups, alpha)
        rows = [(a, b, p, p_adj, str(sig).lower()) for a, b, p, p_adj, sig in result.pairs()]
        write_csv(campaign_dir / f"stats_{task}.csv", STATS_HEADER, rows)
        tables[task] = rows
        for strategy, median in medians(groups).items():
            median_rows.append((strategy, task, len(groups[strategy]), median))
        significant = sum(1 for r in rows if r[4] == 'true')
        logger.info(f"任务 {task}: {len(rows)} 对比较，{significant} 对显著 (alpha={alpha})")
    write_csv(campaign_dir / 'stats_medians.csv', MEDIAN_HEADER, median_rows)
    return tables
