"""
样本与样本档案

样本档案按评估顺序保存 (θ, q) 对，best() 取最大 q（并列取最早）。
档案可以按 JSON-lines 保存，每行 {index, y, theta, episode_seed}。
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Union

import numpy as np

from ..core.errors import ShapeMismatch
from ..core.logger import get_module_logger


logger = get_module_logger(__name__)


@dataclass(frozen=True)
class Evaluation:
    """目标函数返回值：质量与（可选）产生它的回合种子"""
    y: float
    episode_seed: Optional[int] = None


@dataclass(frozen=True)
class Sample:
    """
    一次评估

    Attributes:
        x: 大脑参数
        y: 观测到的质量（有限值）
        episode_seed: 回合种子，用于重放
    """
    x: np.ndarray
    y: float
    episode_seed: Optional[int] = None

    def __post_init__(self):
        if not np.isfinite(self.y):
            raise ValueError(f"样本质量必须是有限值: {self.y}")
        x = np.array(self.x, dtype=float)
        x.setflags(write=False)
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', float(self.y))


class SampleArchive:
    """有序样本档案"""

    def __init__(self, samples: Optional[Sequence[Sample]] = None):
        self._samples: List[Sample] = []
        for sample in samples or ():
            self.append(sample)

    def append(self, sample: Sample) -> None:
        if self._samples and sample.x.shape != self._samples[0].x.shape:
            raise ShapeMismatch(f"样本维度 {sample.x.shape} 与档案 {self._samples[0].x.shape} 不一致")
        self._samples.append(sample)

    def add(self, x: np.ndarray, y: float, episode_seed: Optional[int] = None) -> Sample:
        sample = Sample(x, y, episode_seed)
        self.append(sample)
        return sample

    def __len__(self) -> int:
        return len(self._samples)

    def __iter__(self) -> Iterator[Sample]:
        return iter(self._samples)

    def __getitem__(self, index) -> Sample:
        return self._samples[index]

    @property
    def dim(self) -> int:
        return self._samples[0].x.shape[0] if self._samples else 0

    def xs(self) -> np.ndarray:
        return np.array([s.x for s in self._samples])

    def ys(self) -> np.ndarray:
        return np.array([s.y for s in self._samples])

    def best(self) -> Sample:
        """最大 y 的样本，并列取最早"""
        if not self._samples:
            raise ValueError("样本档案为空")
        # np.argmax 返回第一个最大值的位置
        return self._samples[int(np.argmax(self.ys()))]

    def best_so_far(self) -> np.ndarray:
        """学习曲线：前 i 个样本中的最好 y"""
        return np.maximum.accumulate(self.ys()) if self._samples else np.array([])

    def top(self, n: int) -> List[Sample]:
        """按 y 降序的前 n 个样本（稳定排序，并列保持评估顺序）"""
        order = sorted(range(len(self._samples)), key=lambda i: -self._samples[i].y)
        return [self._samples[i] for i in order[:max(n, 0)]]

    def head(self, n: int) -> 'SampleArchive':
        return SampleArchive(self._samples[:n])

    def contains_x(self, x: np.ndarray) -> bool:
        return any(np.array_equal(s.x, x) for s in self._samples)


def save_archive(archive: SampleArchive, path: Union[str, Path]) -> Path:
    """写出 JSON-lines 档案"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        for index, sample in enumerate(archive):
            f.write(json.dumps({
                'index': index,
                'y': sample.y,
                'theta': sample.x.tolist(),
                'episode_seed': sample.episode_seed,
            }) + '\n')
    return path


def load_archive(path: Union[str, Path]) -> SampleArchive:
    """读取 save_archive 写出的档案"""
    archive = SampleArchive()
    with open(path, 'r', encoding='utf-8') as f:
        for line in f:
            if not line.strip():
                continue
            record = json.loads(line)
            archive.add(np.array(record['theta'], dtype=float), record['y'], record.get('episode_seed'))
    logger.debug(f"读取样本档案 {path}: {len(archive)} 条")
    return archive
