# Core模块 - 日志、配置、事件、常量与异常
from .errors import VsrError, ConfigError
from .event_bus import Event, EventBus, EventType
from .config_manager import ConfigManager
from .logger import get_logger, get_module_logger

__all__ = [
    'VsrError', 'ConfigError',
    'Event', 'EventBus', 'EventType',
    'ConfigManager',
    'get_logger', 'get_module_logger',
]
