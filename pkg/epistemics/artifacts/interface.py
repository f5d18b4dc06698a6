#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys
import logging
from typing import List

logger = logging.getLogger(__name__)


class ConsoleReporter:
    """命令行输出: 摘要打印到标准输出，错误打印到标准错误"""

    def __init__(self, quiet: bool = False):
        self.quiet = quiet

    def _print(self, text: str = ""):
        if not self.quiet:
            print(text)

    def step(self, text: str):
        self._print(text)

    def banner(self, title: str):
        self._print(f"🔬 {title}")
        self._print("=" * 40)

    def show_refinement(self, name: str, result):
        self._print(f"\n📐 划分 {name}: 时域 {result.horizon} ({'双向' if result.two_sided else '单向'})")
        self._print(f"   格子数: {' → '.join(str(c) for c in result.cell_count_series)}")
        self._print(f"   最大直径: {result.max_diameter_series[-1]:.6g} (ε_gen = {result.epsilon:.3g})")
        if result.saturated_at is not None:
            self._print(f"   第 {result.saturated_at} 步到达不动点")
        self._print(f"   结论: {result.verdict}")

    def show_classification(self, names: List[str], report):
        self._print(f"\n⚖️  分类 {names[0]} vs {names[1]} (时域 {report.horizon})")
        self._print(f"   {names[0]}: {report.generating_F}")
        self._print(f"   {names[1]}: {report.generating_G}")
        self._print(f"   细化相同: {'是' if report.refinement_equal else '否'}，公共粗化平凡: {'是' if report.coarsening_trivial else '否'}")
        self._print(f"   结论: {report.verdict}" + (" (扩展结论)" if report.extension else ""))

    def show_lattice(self, lattice, report):
        self._print(f"\n🔷 格 {lattice.name}: {lattice.size} 个元素")
        self._print(f"   分配律: {'成立' if report.distributive else '不成立'}")
        if report.distributive_witness is not None:
            self._print(f"   反例: {tuple(lattice.labels[i] for i in report.distributive_witness)}")
        if report.orthocomplemented:
            self._print(f"   正交模律: {'成立' if report.orthomodular else '不成立'}")
            if report.orthomodular_witness is not None:
                self._print(f"   反例: {tuple(lattice.labels[i] for i in report.orthomodular_witness)}")
        self._print(f"   布尔块: {len(report.boolean_blocks)} 个, 大小 {[len(b) for b in report.boolean_blocks]}")

    def show_entropy(self, reports, best_value: float, best_name: str):
        self._print("\n📊 动力学熵估计 (nats)")
        for report in reports:
            flag = " ⚠️ 饱和" if report.saturation_flag else ""
            self._print(f"   {report.partition_name}: {report.estimate:.6f}{flag}")
        self._print(f"   最大值: {best_value:.6f} ({best_name})")

    def show_systems(self, systems: List[dict]):
        self._print("\n🧭 内置系统")
        for entry in systems:
            params = ", ".join(f"{k}={v:g}" for k, v in entry["defaults"].items()) or "-"
            self._print(f"   {entry['name']:<12} {params:<24} {entry['description']}")

    def show_written(self, paths: List[str]):
        if paths:
            self._print(f"\n✅ 共写入 {len(paths)} 个文件")

    def error(self, message: str):
        print(f"❌ {message}", file=sys.stderr)
