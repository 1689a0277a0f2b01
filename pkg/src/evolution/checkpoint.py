"""
检查点存储 - 管理一次进化运行的目录

包括：
- 每代种群检查点 checkpoints/gen_<g>.jsonl（先写临时文件再改名）
- 历代最好个体 best.jsonl
- summary.csv / diversity.csv
- 运行配置 config.toml
- 从最后一个完整检查点恢复
"""

import csv
import io
import json
import os
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from ..core.config_manager import dump_flat_config, load_flat_config
from ..core.errors import MissingRun
from ..core.logger import get_module_logger
from .individual import Individual


logger = get_module_logger(__name__)

SUMMARY_HEADER = ['gen', 'best_q', 'mean_q', 'diversity']
DIVERSITY_HEADER = ['gen', 'diversity']


def format_float(value: float) -> str:
    """CSV 中浮点数统一用 repr，保证重新解析再写出逐字节一致"""
    return repr(float(value))


def atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + '.tmp')
    with open(tmp, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def write_csv(path: Path, header: List[str], rows: Iterable[Iterable[Any]]) -> None:
    """原子写出 CSV（浮点数用 repr，含逗号或引号的字段按 CSV 规则加引号）"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else str(v) for v in row])
    atomic_write_text(Path(path), buffer.getvalue())


def read_csv(path: Union[str, Path]) -> List[Dict[str, str]]:
    with open(path, 'r', encoding='utf-8', newline='') as f:
        return list(csv.DictReader(f))


class CheckpointStore:
    """
    运行目录

    一代的检查点写完之后才会出现在 checkpoints/ 下，
    因此目录中编号最大的 gen_<g>.jsonl 就是最后一个完整的代。
    """

    CHECKPOINT_PATTERN = re.compile(r'^gen_(\d+)\.jsonl$')

    def __init__(self, run_dir: Union[str, Path]):
        self.run_dir = Path(run_dir)
        self.checkpoint_dir = self.run_dir / 'checkpoints'

    def ensure(self) -> None:
        """确保运行目录存在"""
        self.checkpoint_dir.mkdir(parents=True, exist_ok=True)

    @property
    def config_path(self) -> Path:
        return self.run_dir / 'config.toml'

    @property
    def summary_path(self) -> Path:
        return self.run_dir / 'summary.csv'

    @property
    def diversity_path(self) -> Path:
        return self.run_dir / 'diversity.csv'

    @property
    def best_path(self) -> Path:
        return self.run_dir / 'best.jsonl'

    def _gen_path(self, gen: int) -> Path:
        return self.checkpoint_dir / f"gen_{gen}.jsonl"

    # ---- 写 ----

    def save_config(self, items: Iterable[tuple]) -> None:
        self.ensure()
        dump_flat_config(list(items), self.config_path)

    def save_generation(self, gen: int, population: List[Individual]) -> Path:
        """原子写出一代的检查点"""
        self.ensure()
        path = self._gen_path(gen)
        text = ''.join(json.dumps(ind.to_dict()) + '\n' for ind in population)
        atomic_write_text(path, text)
        logger.debug(f"检查点已写出: {path}")
        return path

    def save_best(self, records: List[Dict[str, Any]]) -> None:
        """best.jsonl：每代一行，记录截至该代的历代最好个体"""
        self.ensure()
        atomic_write_text(self.best_path, ''.join(json.dumps(r) + '\n' for r in records))

    def save_summary(self, rows: List[tuple]) -> None:
        self.ensure()
        write_csv(self.summary_path, SUMMARY_HEADER, rows)
        write_csv(self.diversity_path, DIVERSITY_HEADER, [(row[0], row[3]) for row in rows])

    # ---- 读 ----

    def exists(self) -> bool:
        return self.run_dir.is_dir()

    def load_config(self) -> Dict[str, Any]:
        if not self.config_path.exists():
            raise MissingRun(f"运行目录缺少 config.toml: {self.run_dir}")
        return load_flat_config(self.config_path)

    def completed_generations(self) -> List[int]:
        if not self.checkpoint_dir.is_dir():
            return []
        gens = []
        for entry in self.checkpoint_dir.iterdir():
            match = self.CHECKPOINT_PATTERN.match(entry.name)
            if match:
                gens.append(int(match.group(1)))
        return sorted(gens)

    def last_generation(self) -> Optional[int]:
        gens = self.completed_generations()
        return gens[-1] if gens else None

    def load_generation(self, gen: int) -> Optional[List[Individual]]:
        """
        读取一代的检查点

        Returns:
            个体列表，文件不存在或损坏时返回 None
        """
        path = self._gen_path(gen)
        if not path.exists():
            logger.debug(f"检查点不存在: {path}")
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return [Individual.from_dict(json.loads(line)) for line in f if line.strip()]
        except Exception as e:
            logger.error(f"读取检查点失败 {path}: {e}")
            return None

    def load_best(self) -> List[Dict[str, Any]]:
        if not self.best_path.exists():
            raise MissingRun(f"运行目录缺少 best.jsonl: {self.run_dir}")
        with open(self.best_path, 'r', encoding='utf-8') as f:
            return [json.loads(line) for line in f if line.strip()]

    def load_summary(self) -> List[Dict[str, str]]:
        if not self.summary_path.exists():
            raise MissingRun(f"运行目录缺少 summary.csv: {self.run_dir}")
        return read_csv(self.summary_path)

    def is_complete(self, n_gen: int) -> bool:
        return self.last_generation() == n_gen - 1 and self.best_path.exists()
