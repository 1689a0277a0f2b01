"""
读取已完成的运行目录
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..core.errors import MissingRun
from ..evolution.checkpoint import CheckpointStore
from ..evolution.config import EvoConfig, evo_config_from_items
from ..morphology.body import BodyGrid, parse_body


@dataclass(frozen=True)
class RunSummary:
    """一次运行的最好个体"""
    run_dir: Path
    config: EvoConfig
    repetition: int
    q_star: float
    body: BodyGrid
    theta: Optional[np.ndarray]
    episode_seed: Optional[int]
    source_gen: int


def _repetition(run_dir: Path) -> int:
    name = run_dir.name
    return int(name[4:]) if name.startswith('rep_') and name[4:].isdigit() else 0


def load_run(run_dir: Union[str, Path]) -> RunSummary:
    """
    读取运行目录中的配置与历代最好个体

    Raises:
        MissingRun: 目录或必要文件缺失
    """
    run_dir = Path(run_dir)
    store = CheckpointStore(run_dir)
    if not store.exists():
        raise MissingRun(f"运行目录不存在: {run_dir}")
    config = evo_config_from_items(store.load_config())
    records = store.load_best()
    if not records:
        raise MissingRun(f"best.jsonl 为空: {run_dir}")
    best: Dict[str, Any] = records[-1]
    q = best.get('q_star')
    theta = best.get('theta')
    return RunSummary(
        run_dir=run_dir,
        config=config,
        repetition=_repetition(run_dir),
        q_star=float('-inf') if q is None else float(q),
        body=parse_body(best['body']),
        theta=None if theta is None else np.array(theta, dtype=float),
        episode_seed=best.get('episode_seed'),
        source_gen=int(best.get('source_gen', -1)),
    )


def discover_runs(root: Union[str, Path]) -> List[Path]:
    """
    找出 root 下所有运行目录（含 config.toml 与 best.jsonl），按路径排序

    Raises:
        MissingRun: 一个运行都没有
    """
    root = Path(root)
    if not root.is_dir():
        raise MissingRun(f"目录不存在: {root}")
    candidates = [root] if (root / 'config.toml').exists() else []
    candidates += [p.parent for p in root.rglob('config.toml') if p.parent != root]
    runs = sorted({p for p in candidates if (p / 'best.jsonl').exists()})
    if not runs:
        raise MissingRun(f"{root} 下没有已完成的运行")
    return runs
