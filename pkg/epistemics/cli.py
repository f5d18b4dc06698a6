#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口

    python -m epistemics refine   --spec spec.json --out results/run1
    python -m epistemics classify --builtin oscillator
    python -m epistemics lattice  --builtin firefly --format dot
    python -m epistemics entropy  --spec family.json --threads 4
    python -m epistemics systems

退出码: 0 成功，2 规格/校验错误，3 计算错误。
"""

import argparse
import logging
import sys
from typing import List, Optional

from .artifacts import ConsoleReporter
from .config import TOOL_NAME, TOOL_VERSION
from .errors import ComputationError, NotALattice, SpecError, SpecValidationError
from .router import RunRouter
from .spec import OUTPUT_FORMATS, load_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_COMPUTATION = 3

COMMANDS = ("refine", "classify", "lattice", "entropy", "systems")


def print_banner(reporter: ConsoleReporter):
    """打印程序横幅"""
    reporter.banner(f"认知划分计算工具 {TOOL_NAME} {TOOL_VERSION}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="RunSpec JSON 文件路径")
    common.add_argument("--out", default="results", help="输出目录 (默认 results)")
    common.add_argument("--horizon", type=int, help="覆盖规格中的时域")
    common.add_argument("--builtin", help="内置示例 (classify: oscillator; lattice: firefly/o6/mo2/...)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="只写出一种格式的产物")
    common.add_argument("--threads", type=int, help="工作线程上限 (覆盖 EPISTEMICS_THREADS)")
    common.add_argument("--verbose", action="store_true", help="输出调试日志")
    common.add_argument("--quiet", action="store_true", help="不打印摘要")

    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="动力学系统的认知划分、命题格与熵诊断")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("refine", parents=[common], help="动力学细化与生成性诊断")
    sub.add_parser("classify", parents=[common], help="两个划分的相容/互补分类")
    sub.add_parser("lattice", parents=[common], help="命题格构造与格定律检查")
    sub.add_parser("entropy", parents=[common], help="动力学熵估计")
    sub.add_parser("systems", parents=[common], help="列出内置动力学系统")
    return parser


def _dispatch(args, router: RunRouter):
    if args.command == "systems":
        return router.cmd_systems()

    if args.horizon is not None and args.horizon < 1:
        raise SpecValidationError(f"--horizon 必须 ≥ 1，得到 {args.horizon}")
    if args.threads is not None and args.threads < 1:
        raise SpecValidationError(f"--threads 必须 ≥ 1，得到 {args.threads}")

    spec = load_spec(args.spec) if args.spec else None
    if args.command in ("classify", "lattice"):
        if spec is None and not args.builtin:
            raise SpecValidationError(f"{args.command} 需要 --spec 或 --builtin")
        handler = router.cmd_classify if args.command == "classify" else router.cmd_lattice
        return handler(spec=spec, builtin=args.builtin)

    if spec is None:
        raise SpecValidationError(f"{args.command} 需要 --spec")
    if args.command == "refine":
        return router.cmd_refine(spec)
    return router.cmd_entropy(spec)


def main(argv: Optional[List[str]] = None) -> int:
    """命令行主函数，返回退出码"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse 的参数错误按规格错误处理，--help / --version 返回 0
        return e.code if isinstance(e.code, int) else EXIT_SPEC

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    reporter = ConsoleReporter(quiet=args.quiet)
    print_banner(reporter)

    try:
        router = RunRouter(
            out_dir=args.out,
            threads=args.threads,
            formats=[args.format] if args.format else None,
            horizon=args.horizon,
            reporter=reporter,
        )
        _dispatch(args, router)
        return EXIT_OK

    except SpecError as e:
        logger.error(f"规格错误: {e}")
        reporter.error(f"规格错误: {e}")
        return EXIT_SPEC
    except NotALattice as e:
        logger.error(f"粘合失败: {e} (元素对 {e.pair})")
        reporter.error(f"不是格: {e}" + (f" 元素对 {e.pair}" if e.pair is not None else ""))
        return EXIT_COMPUTATION
    except ComputationError as e:
        logger.error(f"计算错误: {e}")
        reporter.error(f"计算错误: {type(e).__name__}: {e}")
        return EXIT_COMPUTATION
    except KeyboardInterrupt:
        reporter.error("已中断")
        return EXIT_COMPUTATION
    except Exception as e:
        reporter.error(f"程序异常: {e}")
        import traceback
        traceback.print_exc()
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
