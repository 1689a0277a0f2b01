"""
学习策略标识
"""

from enum import Enum


class StrategyId(Enum):
    """九种模式，值即命令行名"""
    IL = "il"
    NOBO = "nobo"
    PARENT = "parent"
    BEST_ONE = "best-1"
    BEST_MANY = "best-n"
    SIMILAR_ONE = "similar-1"
    SIMILAR_MANY = "similar-n"
    RANDOM_ONE = "random-1"
    RANDOM_MANY = "random-n"

    @property
    def is_social(self) -> bool:
        """从上一代样本继承经验的模式"""
        return self not in (StrategyId.IL, StrategyId.NOBO)

    @property
    def single_teacher(self) -> bool:
        return self in (StrategyId.PARENT, StrategyId.BEST_ONE, StrategyId.SIMILAR_ONE,
                        StrategyId.RANDOM_ONE)

    @property
    def uses_bo(self) -> bool:
        return self is not StrategyId.NOBO

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_name(cls, name: str) -> 'StrategyId':
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ' | '.join(s.value for s in cls)
            raise ValueError(f"未知策略 {name!r}，可选: {names}") from None


_LABELS = {
    StrategyId.IL: "IL",
    StrategyId.NOBO: "No-BO",
    StrategyId.PARENT: "Parent",
    StrategyId.BEST_ONE: "Best-One",
    StrategyId.BEST_MANY: "Best-Many",
    StrategyId.SIMILAR_ONE: "Similar-One",
    StrategyId.SIMILAR_MANY: "Similar-Many",
    StrategyId.RANDOM_ONE: "Random-One",
    StrategyId.RANDOM_MANY: "Random-Many",
}
