"""
体素软体机器人身体与大脑协同优化 - 命令行入口

子命令：
    evolve    批量进化（策略 × 任务 × 重复）
    relearn   在原任务上重新学习最好身体的大脑
    transfer  在其他任务上重新学习（迁移）
    curve     固定身体上的学习曲线（nobo / il / sl）
    analyze   身体描述子与多样性曲线
    stats     各策略 q* 的两两显著性检验
    replay    用保存的种子重放最好个体

退出码：全部成功为 0，否则为 1。
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.core.constants import STATS
from src.core.errors import VsrError
from src.core.logger import get_logger
from src.experiments import (
    CURVE_MODES, CampaignConfig, cmd_analyze, cmd_evolve, cmd_learning_curve, cmd_relearn,
    cmd_replay, cmd_stats, collect_items, discover_runs, evo_config, resolve_output_root,
)
from src.tasks.task import TaskId

DEFAULT_RELEARN_BUDGET = 500


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='扁平 key = value 的 TOML 配置文件')
    parser.add_argument('--set', dest='overrides', action='append', default=[],
                        metavar='KEY=VALUE', help='覆盖单个配置项，可重复')
    parser.add_argument('--profile', help='config/evolution.toml 中的命名配置档，如 desk')


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--out', help='输出根目录（默认取环境变量 VSR_OUTPUT_ROOT，否则 ./runs）')
    parser.add_argument('--force', action='store_true', help='删除已有输出并重跑')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='vsr', description='体素软体机器人的进化与社会学习实验')
    parser.add_argument('--log-dir', default='logs', help='日志目录')
    parser.add_argument('-v', '--verbose', action='store_true', help='输出 DEBUG 日志')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('evolve', help='批量进化')
    _add_config_args(p)
    _add_output_args(p)
    p.add_argument('--jobs', type=int, default=1, help='并行进程数')

    for name, help_text in (('relearn', '重新学习'), ('transfer', '跨任务迁移')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('runs', nargs='+', help='运行目录或批量实验目录')
        p.add_argument('--n-final', type=int, default=DEFAULT_RELEARN_BUDGET, help='重新学习的样本预算')
        p.add_argument('--csv', required=True, help='输出表格路径')
        p.add_argument('--force', action='store_true', help='覆盖已有表格')
        p.add_argument('--task', choices=[t.value for t in TaskId], help='目标任务')
        if name == 'transfer':
            p.add_argument('--all-tasks', action='store_true', help='迁移到除源任务外的所有任务')

    p = sub.add_parser('curve', help='固定身体上的学习曲线')
    _add_config_args(p)
    p.add_argument('--body', required=True, help="身体文本，行之间用 '-' 分隔")
    p.add_argument('--modes', default=','.join(CURVE_MODES), help='逗号分隔的模式')
    p.add_argument('--budget', type=int, default=100, help='每条曲线的样本数')
    p.add_argument('--seeds', type=int, nargs='+', default=[0, 1, 2, 3, 4], help='种子列表')
    p.add_argument('--csv', required=True, help='输出表格路径')
    p.add_argument('--force', action='store_true', help='覆盖已有表格')

    p = sub.add_parser('analyze', help='描述子与多样性曲线')
    p.add_argument('campaign_dir', nargs='?', help='批量实验目录（默认输出根目录）')

    p = sub.add_parser('stats', help='两两显著性检验')
    p.add_argument('campaign_dir', nargs='?', help='含 qstar.csv 的目录（默认输出根目录）')
    p.add_argument('--alpha', type=float, default=STATS.ALPHA, help='FDR 水平')

    p = sub.add_parser('replay', help='重放最好个体')
    p.add_argument('run_dir', help='运行目录')
    p.add_argument('--trajectory', help='轨迹输出路径（JSON lines）')
    return parser


def _expand_runs(paths: Sequence[str]) -> List[Path]:
    runs: List[Path] = []
    for path in paths:
        runs.extend(discover_runs(path))
    return runs


def _skip_existing(path: Path, force: bool) -> bool:
    if path.exists() and not force:
        get_logger().info(f"{path} 已存在，跳过（使用 --force 重新计算）")
        return True
    return False


def run_command(args: argparse.Namespace) -> int:
    """执行子命令，返回退出码"""
    if args.command == 'evolve':
        items = collect_items(args.config, args.overrides, args.profile)
        campaign = CampaignConfig.from_items(items, resolve_output_root(args.out))
        return 0 if cmd_evolve(campaign, jobs=args.jobs, force=args.force).ok else 1

    if args.command in ('relearn', 'transfer'):
        out_csv = Path(args.csv)
        if _skip_existing(out_csv, args.force):
            return 0
        all_tasks = getattr(args, 'all_tasks', False)
        if args.command == 'transfer' and not all_tasks and args.task is None:
            raise VsrError("transfer 需要 --task 或 --all-tasks")
        task = TaskId.from_name(args.task) if args.task else None
        cmd_relearn(_expand_runs(args.runs), args.n_final, task, out_csv, all_tasks=all_tasks)
        return 0

    if args.command == 'curve':
        out_csv = Path(args.csv)
        if _skip_existing(out_csv, args.force):
            return 0
        cfg = evo_config(collect_items(args.config, args.overrides, args.profile))
        modes = [m.strip() for m in args.modes.split(',') if m.strip()]
        cmd_learning_curve(args.body, cfg, modes, args.budget, args.seeds, out_csv)
        return 0

    if args.command == 'analyze':
        cmd_analyze(Path(args.campaign_dir) if args.campaign_dir else resolve_output_root())
        return 0

    if args.command == 'stats':
        cmd_stats(Path(args.campaign_dir) if args.campaign_dir else resolve_output_root(), args.alpha)
        return 0

    if args.command == 'replay':
        _, _, matches = cmd_replay(Path(args.run_dir),
                                   Path(args.trajectory) if args.trajectory else None)
        return 0 if matches else 1

    raise VsrError(f"未知子命令: {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行主入口"""
    args = build_parser().parse_args(argv)
    logger = get_logger()
    logger.setup(logs_dir=args.log_dir, log_level=logging.DEBUG if args.verbose else logging.INFO)
    logger.setup_exception_hook()

    logger.info(f"执行子命令: {args.command}")
    try:
        code = run_command(args)
    except (VsrError, ValueError) as e:
        logger.error(f"{args.command} 失败: {e}")
        code = 1
    logger.info(f"子命令 {args.command} 结束，退出码 {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
