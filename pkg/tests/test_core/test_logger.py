"""
日志系统测试
"""
import logging
import shutil
import sys
import tempfile
from pathlib import Path


class TestLogger:
    """日志管理器测试"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """每个测试方法后执行"""
        from src.core.logger import get_logger

        get_logger().setup(to_file=False)
        sys.excepthook = sys.__excepthook__
        shutil.rmtree(self.temp_dir)

    def test_singleton(self):
        """测试单例"""
        from src.core.logger import Logger, get_logger

        assert get_logger() is Logger()

    def test_file_output(self):
        """测试模块日志写入按日期命名的文件"""
        from src.core.logger import get_logger, get_module_logger

        get_logger().setup(logs_dir=self.temp_dir)
        get_module_logger('src.evolution.evolve').info("第 0 代完成")

        files = list(Path(self.temp_dir).glob('vsr_*.log'))
        assert len(files) == 1
        get_logger().setup(to_file=False)
        assert "第 0 代完成" in files[0].read_text(encoding='utf-8')

    def test_setup_replaces_handlers(self):
        """测试重复初始化不会叠加处理器"""
        from src.core.logger import get_logger

        root = logging.getLogger()
        get_logger().setup(logs_dir=self.temp_dir)
        count = len(root.handlers)
        get_logger().setup(logs_dir=self.temp_dir)

        assert len(root.handlers) == count

    def test_level(self):
        """测试日志级别"""
        from src.core.logger import get_logger

        get_logger().setup(log_level=logging.DEBUG, to_file=False)
        assert logging.getLogger().level == logging.DEBUG
        get_logger().setup(log_level=logging.WARNING, to_file=False)
        assert logging.getLogger().level == logging.WARNING

    def test_exception_hook(self):
        """测试未捕获异常写入日志"""
        from src.core.logger import get_logger

        get_logger().setup(logs_dir=self.temp_dir)
        get_logger().setup_exception_hook()
        assert sys.excepthook is not sys.__excepthook__
