"""
轨迹记录 - 每个控制步一行 JSON
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .payload import PayloadBox
from .soft_body import SoftBodyState


class TrajectoryRecorder:
    """
    轨迹记录器

    记录 {k, com_x, com_y, payload_x?, payload_y?, actuation}，
    可以只保存在内存里，也可以写到 JSON-lines 文件。
    """

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path) if path is not None else None
        self.records: List[Dict[str, Any]] = []

    def record(self, state: SoftBodyState, actuation: Optional[np.ndarray] = None,
               payload: Optional[PayloadBox] = None) -> Dict[str, Any]:
        com = state.center_of_mass()
        entry: Dict[str, Any] = {'k': int(state.k), 'com_x': float(com[0]), 'com_y': float(com[1])}
        if payload is not None:
            entry['payload_x'] = float(payload.position[0])
            entry['payload_y'] = float(payload.position[1])
        entry['actuation'] = [] if actuation is None else [float(a) for a in actuation]
        self.records.append(entry)
        return entry

    def __len__(self) -> int:
        return len(self.records)

    def save(self, path: Optional[Union[str, Path]] = None) -> Path:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("未指定轨迹文件路径")
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, 'w', encoding='utf-8') as f:
            for entry in self.records:
                f.write(json.dumps(entry) + '\n')
        return target

    @staticmethod
    def load(path: Union[str, Path]) -> List[Dict[str, Any]]:
        with open(path, 'r', encoding='utf-8') as f:
            return [json.loads(line) for line in f if line.strip()]
