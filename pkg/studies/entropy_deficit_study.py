#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
二元划分的熵亏损研究

研究描述：
对倍增映射的轨道样本，把二元划分 {x < b, x ≥ b} 的分界点 b 在 (0, 1) 内扫描，
逐个估计动力学熵，并与系统的真实熵 ln 2 比较。
分界点偏离生成划分时，估计值系统性偏低(熵亏损)，
本研究给出亏损随分界点的变化以及亏损消失的区间。
"""

import os
import sys
import logging
from datetime import datetime

import numpy as np
import pandas as pd

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from epistemics.core import build_sample
from epistemics.entropy import boundary_sweep
from epistemics.systems import get_system

logger = logging.getLogger(__name__)


class EntropyDeficitStudy:
    def __init__(self, system: str = "doubling", sample_size: int = 2 ** 20, seed: int = 0,
                 output_root: str = None):
        """初始化研究"""
        self.study_name = "二元划分熵亏损研究"
        self.system = system
        self.sample_size = sample_size
        self.seed = seed
        self.output_root = output_root

        # 扫描参数
        self.boundaries = np.round(np.arange(0.05, 0.96, 0.05), 2)
        self.horizon = 10
        self.reference_entropy = float(np.log(2))
        self.deficit_tolerance = 0.02
        self.threads = 1

        self.results = None
        self.result_dir = None

    def run(self, boundaries=None, horizon: int = None, reference_entropy: float = None,
            deficit_tolerance: float = None, threads: int = None):
        if boundaries is not None:
            self.boundaries = np.asarray(boundaries, dtype=float)
        self.horizon = horizon or self.horizon
        if reference_entropy is not None:
            self.reference_entropy = reference_entropy
        if deficit_tolerance is not None:
            self.deficit_tolerance = deficit_tolerance
        self.threads = threads or self.threads

        dynamics = get_system(self.system)
        print(f"🔄 生成轨道样本 ({self.sample_size} 点) ...")
        space = build_sample("trajectory", self.sample_size, dynamics, seed=self.seed)

        print(f"🔄 扫描 {len(self.boundaries)} 个分界点 (时域 {self.horizon}) ...")
        frame = boundary_sweep(dynamics, space, self.boundaries, self.horizon, threads=self.threads)
        frame["deficit"] = self.reference_entropy - frame["estimate"]
        frame["deficit_vanishes"] = frame["deficit"].abs() <= self.deficit_tolerance
        self.results = frame

        self.print_summary()
        self.generate_reports()
        return frame

    def vanishing_range(self):
        """亏损在容差内的分界点区间"""
        if self.results is None:
            return None
        hits = self.results.loc[self.results["deficit_vanishes"], "boundary"]
        if hits.empty:
            return None
        return float(hits.min()), float(hits.max())

    def print_summary(self):
        frame = self.results
        best = frame.loc[frame["estimate"].idxmax()]
        print(f"\n📊 最大估计: {best['estimate']:.6f} nats (b = {best['boundary']:g})")
        print(f"   参考熵: {self.reference_entropy:.6f} nats")
        print(f"   最大亏损: {frame['deficit'].max():.6f} nats")
        span = self.vanishing_range()
        if span is None:
            print(f"   ⚠️ 没有分界点的亏损在 {self.deficit_tolerance} 以内")
        else:
            print(f"   亏损消失区间: [{span[0]:g}, {span[1]:g}]")
        saturated = int(frame["saturated"].sum())
        if saturated:
            print(f"   ⚠️ {saturated} 个估计触发饱和标记")

    def generate_reports(self):
        """生成研究报告"""
        timestamp = datetime.now().strftime("%m%d_%H%M")

        # 默认写到项目根目录下的 results
        output_root = self.output_root
        if output_root is None:
            script_dir = os.path.dirname(os.path.abspath(__file__))
            output_root = os.path.join(os.path.dirname(script_dir), "results")
        result_dir = os.path.join(output_root, f"熵亏损研究_{timestamp}")
        os.makedirs(result_dir, exist_ok=True)
        self.result_dir = result_dir

        self.results.to_csv(os.path.join(result_dir, "boundary_sweep.csv"), index=False, float_format="%.15g")
        self.generate_readme(result_dir)
        print(f"📁 报告已生成至: {result_dir}")

    def generate_readme(self, result_dir):
        """生成README文件"""
        span = self.vanishing_range()
        span_text = "无" if span is None else f"[{span[0]:g}, {span[1]:g}]"
        table = "\n".join(
            f"| {row.boundary:g} | {row.estimate:.6f} | {row.markov_rate:.6f} | {row.deficit:.6f} | "
            f"{'是' if row.saturated else '否'} |"
            for row in self.results.itertuples()
        )
        readme_content = f"""# {self.study_name}

## 研究设置
- **系统**: {self.system}
- **样本**: 轨道样本 {self.sample_size} 点 (种子 {self.seed})
- **时域**: {self.horizon}
- **参考熵**: {self.reference_entropy:.6f} nats
- **亏损容差**: {self.deficit_tolerance}

## 结果
- **亏损消失区间**: {span_text}

| 分界点 | 熵估计 | 马尔可夫熵率 | 亏损 | 饱和 |
|---|---|---|---|---|
{table}

## 文件说明
- `boundary_sweep.csv`: 每个分界点的估计值、马尔可夫熵率与亏损
- `README.md`: 本报告文件
"""
        with open(os.path.join(result_dir, "README.md"), "w", encoding="utf-8") as f:
            f.write(readme_content)


def run_study(**kwargs):
    """研究入口函数"""
    study = EntropyDeficitStudy(
        system=kwargs.pop("system", "doubling"),
        sample_size=kwargs.pop("sample_size", 2 ** 20),
        seed=kwargs.pop("seed", 0),
        output_root=kwargs.pop("output_root", None),
    )
    return study.run(**kwargs)


if __name__ == "__main__":
    # ==================== 研究参数设置 ====================
    SYSTEM = "doubling"          # 内置系统名称 - 参考熵需与之匹配
    SAMPLE_SIZE = 2 ** 20        # 轨道样本点数 - 范围：2^16-2^22
    SEED = 0                     # 随机种子
    HORIZON = 10                 # 细化时域 - 需满足 2^(HORIZON+1) 远小于样本数
    BOUNDARIES = np.round(np.arange(0.05, 0.96, 0.05), 2)
    REFERENCE_ENTROPY = np.log(2)  # 倍增映射的真实熵(nats)
    DEFICIT_TOLERANCE = 0.02     # 亏损低于该值视为消失
    THREADS = 4                  # 并行线程数

    logging.basicConfig(level=logging.WARNING)

    print("=" * 60)
    print("📈 二元划分熵亏损研究")
    print("=" * 60)
    print(f"📊 当前参数设置:")
    print(f"   系统: {SYSTEM}")
    print(f"   样本点数: {SAMPLE_SIZE}")
    print(f"   时域: {HORIZON}")
    print(f"   分界点: {BOUNDARIES[0]:g} … {BOUNDARIES[-1]:g} 共 {len(BOUNDARIES)} 个")
    print("=" * 60)

    run_study(
        system=SYSTEM,
        sample_size=SAMPLE_SIZE,
        seed=SEED,
        boundaries=BOUNDARIES,
        horizon=HORIZON,
        reference_entropy=float(REFERENCE_ENTROPY),
        deficit_tolerance=DEFICIT_TOLERANCE,
        threads=THREADS,
    )
