"""
配置管理器

从 config/ 目录下的 TOML 文件加载默认配置，并提供：
- 分节读取（physics / tasks / evolution / bayesopt / profiles）
- 扁平 key = value 配置文件读取与写出
- 命令行 --set key=value 覆盖项解析
- dataclass 构造（拒绝未知键）
"""

import dataclasses
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Dict, Any, Optional, Type, TypeVar, Iterable

from .errors import ConfigError
from .logger import get_module_logger


logger = get_module_logger(__name__)

T = TypeVar('T')


class ConfigManager:
    """配置管理器 - 加载和管理实验默认配置"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self._config_dir = Path(__file__).parent.parent.parent / 'config'
        self._physics_config: Dict[str, Any] = {}
        self._tasks_config: Dict[str, Any] = {}
        self._evolution_config: Dict[str, Any] = {}
        self._bayesopt_config: Dict[str, Any] = {}
        self._profiles: Dict[str, Any] = {}

        self._load_configs()

    def _load_configs(self):
        """加载所有配置文件"""
        physics = self._read_toml('physics.toml')
        self._physics_config = physics.get('physics', {})

        tasks = self._read_toml('tasks.toml')
        self._tasks_config = tasks.get('tasks', {})

        evolution = self._read_toml('evolution.toml')
        self._evolution_config = evolution.get('evolution', {})
        self._bayesopt_config = evolution.get('bayesopt', {})
        self._profiles = evolution.get('profiles', {})

    def _read_toml(self, name: str) -> Dict[str, Any]:
        config_path = self._config_dir / name
        if not config_path.exists():
            logger.warning(f"配置文件不存在，使用代码默认值: {config_path}")
            return {}
        with open(config_path, 'rb') as f:
            return tomllib.load(f)

    def get_physics_config(self) -> Dict[str, Any]:
        """获取物理仿真配置"""
        return self._physics_config.copy()

    def get_tasks_config(self) -> Dict[str, Any]:
        """获取任务参数配置"""
        return self._tasks_config.copy()

    def get_evolution_config(self) -> Dict[str, Any]:
        """获取进化配置"""
        return self._evolution_config.copy()

    def get_bayesopt_config(self) -> Dict[str, Any]:
        """获取贝叶斯优化配置"""
        return self._bayesopt_config.copy()

    def get_profile(self, name: str) -> Optional[Dict[str, Any]]:
        """获取命名的覆盖配置（例如 desk）"""
        profile = self._profiles.get(name)
        return None if profile is None else dict(profile)

    def get_profile_names(self) -> list:
        return sorted(self._profiles)

    def reload(self):
        """重新加载配置"""
        self._physics_config.clear()
        self._tasks_config.clear()
        self._evolution_config.clear()
        self._bayesopt_config.clear()
        self._profiles.clear()
        self._load_configs()

    @classmethod
    def get_instance(cls) -> 'ConfigManager':
        """获取单例实例"""
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance


def dataclass_from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
    """
    用字典构造 dataclass，未知键报错

    Args:
        cls: 目标 dataclass 类型
        data: 键值对

    Returns:
        dataclass 实例

    Raises:
        ConfigError: 存在未知键或值非法
    """
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"{cls.__name__} 不认识的配置项: {sorted(unknown)}")
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name in data:
            value = data[f.name]
            # TOML 中的数组在冻结 dataclass 里保存为元组
            kwargs[f.name] = tuple(value) if isinstance(value, list) else value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{cls.__name__} 配置非法: {e}") from e


def parse_override(text: str) -> tuple:
    """
    解析命令行覆盖项 key=value

    值按 TOML 标量解析（整数、浮点、布尔、带引号字符串），
    解析失败时按裸字符串处理。
    """
    if '=' not in text:
        raise ConfigError(f"覆盖项格式应为 key=value: {text!r}")
    key, raw = text.split('=', 1)
    key = key.strip()
    raw = raw.strip()
    if not key:
        raise ConfigError(f"覆盖项缺少键名: {text!r}")
    try:
        value = tomllib.loads(f"v = {raw}")['v']
    except tomllib.TOMLDecodeError:
        value = raw
    return key, value


def load_flat_config(path: Path) -> Dict[str, Any]:
    """
    读取扁平 key = value 配置文件

    文件是只含顶层标量（或标量数组）的 TOML 文档。
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"配置文件不存在: {path}")
    with open(path, 'rb') as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"配置文件解析失败 {path}: {e}") from e
    nested = [k for k, v in data.items() if isinstance(v, dict)]
    if nested:
        raise ConfigError(f"配置文件必须是扁平的 key = value 格式，发现分节: {nested}")
    return data


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if math.isnan(value):
            return 'nan'
        return repr(value)
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(_format_value(v) for v in value) + ']'
    escaped = str(value).replace('\\', '\\\\').replace('"', '\\"')
    return f'"{escaped}"'


def dump_flat_config(items: Iterable[tuple], path: Path) -> None:
    """
    写出扁平 key = value 配置文件（可被 load_flat_config 读回）

    Args:
        items: (key, value) 序列，按给定顺序写出
        path: 目标文件
    """
    lines = [f"{key} = {_format_value(value)}" for key, value in items]
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')
