"""
身体形态模块

体素网格身体的表示、生成、变异、比较与描述
"""

from .body import (
    VoxelType, BodyGrid, FILLED_TYPES,
    is_valid_polyomino, parse_body, format_body, mirror_body,
)
from .operators import random_body, mutate_body
from .similarity import (
    center_of_mass, alignment_shift, hamming_distance_aligned, population_diversity,
)
from .descriptors import BodyDescriptor, descriptors

__all__ = [
    'VoxelType', 'BodyGrid', 'FILLED_TYPES',
    'is_valid_polyomino', 'parse_body', 'format_body', 'mirror_body',
    'random_body', 'mutate_body',
    'center_of_mass', 'alignment_shift', 'hamming_distance_aligned', 'population_diversity',
    'BodyDescriptor', 'descriptors',
]
