#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
from typing import List, Optional

from .artifacts import ArtifactWriter, ConsoleReporter
from .config import resolve_threads
from .core import build_sample
from .entropy import ks_estimate, transition_matrix
from .epistemic import classify, epistemic_quantization_demo
from .errors import SpecValidationError
from .lattice import FIXTURES, boolean_from_partition, hasse_dot, laws, partition_logic
from .partition import dynamic_refinement
from .spec import RunSpec, spec_digest
from .systems import get_system, list_systems

logger = logging.getLogger(__name__)

# 黄金分割角(圈数)
GOLDEN_ANGLE = (5 ** 0.5 - 1) / 2


class RunRouter:
    """运行路由器: 规格 → 计算 → 产物"""

    def __init__(self, out_dir: str = "results", threads: int = None,
                 formats: Optional[List[str]] = None, horizon: int = None,
                 reporter: ConsoleReporter = None):
        self.out_dir = out_dir
        self.threads = resolve_threads(threads)
        self.formats = formats
        self.horizon = horizon
        self.reporter = reporter or ConsoleReporter()

    def _prepare(self, spec: RunSpec) -> RunSpec:
        if self.horizon is not None:
            spec = spec.with_horizon(self.horizon)
        return spec

    def _writer(self, spec: Optional[RunSpec], digest: str = None) -> ArtifactWriter:
        if spec is None:
            return ArtifactWriter(self.out_dir, digest or "", self.formats)
        formats = self.formats or spec.formats
        paths = {o.format: o.path for o in spec.outputs if o.path is not None and o.format in formats}
        return ArtifactWriter(self.out_dir, spec.digest, formats, paths)

    def _load(self, spec: RunSpec, minimum: int, maximum: int = None):
        count = len(spec.partitions)
        if count < minimum or (maximum is not None and count > maximum):
            wanted = f"{minimum}" if maximum == minimum else f"至少 {minimum}"
            raise SpecValidationError(f"该命令需要 {wanted} 个划分，规格中有 {count} 个")
        dynamics, space = spec.build()
        logger.info(f"系统 {dynamics.describe()}, 样本 {space.kind} × {space.size}")
        return dynamics, space, spec.build_partitions(space)

    # ==================== refine ====================

    def cmd_refine(self, spec: RunSpec) -> dict:
        spec = self._prepare(spec)
        dynamics, space, partitions = self._load(spec, 1, 1)
        name, P = partitions[0]
        self.reporter.step(f"🔄 正在细化划分 {name} ...")
        result = dynamic_refinement(P, dynamics, spec.horizon)

        writer = self._writer(spec)
        writer.write_csv("refinement.csv", result.series_frame())
        payload = {"partition": name, "system": dynamics.describe(), "sample_size": space.size}
        payload.update(result.to_dict())
        writer.write_json("verdict.json", payload)
        writer.write_readme(f"细化 {name}", {
            "系统": dynamics.describe(),
            "时域": spec.horizon,
            "最终格子数": result.cell_count_series[-1],
            "最大直径": f"{result.max_diameter_series[-1]:.6g}",
            "结论": result.verdict,
        })
        self.reporter.show_refinement(name, result)
        self.reporter.show_written(writer.written)
        return payload

    # ==================== classify ====================

    def cmd_classify(self, spec: RunSpec = None, builtin: str = None) -> dict:
        if spec is None:
            if builtin != "oscillator":
                raise SpecValidationError(f"classify 没有内置示例 {builtin!r} (可选: oscillator)")
            return self._classify_oscillator()
        spec = self._prepare(spec)
        dynamics, space, partitions = self._load(spec, 2, 2)
        (name_F, F), (name_G, G) = partitions
        self.reporter.step(f"🔄 正在分类 {name_F} 与 {name_G} ...")
        report = classify(F, G, dynamics, spec.horizon, threads=self.threads)
        return self._write_classification(self._writer(spec), [name_F, name_G], report, dynamics.describe())

    def _classify_oscillator(self) -> dict:
        horizon = self.horizon or 12
        dynamics = get_system("oscillator", angle=GOLDEN_ANGLE)
        space = build_sample("grid", 256 * 256, dynamics)
        self.reporter.step("🔄 正在运行谐振子示例 ...")
        report = epistemic_quantization_demo(space, GOLDEN_ANGLE, 2, horizon=horizon, threads=self.threads)
        digest = spec_digest({"builtin": "oscillator", "horizon": horizon})
        return self._write_classification(self._writer(None, digest), ["position", "momentum"], report,
                                          dynamics.describe())

    def _write_classification(self, writer: ArtifactWriter, names: List[str], report, system: str) -> dict:
        payload = {"partitions": names, "system": system}
        payload.update(report.to_dict())
        writer.write_json("classification.json", payload)
        writer.write_readme(f"分类 {names[0]} vs {names[1]}", {
            "系统": system,
            "时域": report.horizon,
            names[0]: report.generating_F,
            names[1]: report.generating_G,
            "结论": report.verdict,
        })
        self.reporter.show_classification(names, report)
        self.reporter.show_written(writer.written)
        return payload

    # ==================== lattice ====================

    def cmd_lattice(self, spec: RunSpec = None, builtin: str = None) -> dict:
        if spec is not None:
            spec = self._prepare(spec)
            _, _, partitions = self._load(spec, 1, 2)
            if len(partitions) == 1:
                lattice = boolean_from_partition(partitions[0][1])
            else:
                lattice = partition_logic(partitions[0][1], partitions[1][1])
            writer = self._writer(spec)
        else:
            fixtures = {key.lower(): factory for key, factory in FIXTURES.items()}
            factory = fixtures.get((builtin or "").lower())
            if factory is None:
                raise SpecValidationError(f"未知的内置格 {builtin!r} (可选: {', '.join(FIXTURES)})")
            lattice = factory()
            writer = self._writer(None, spec_digest({"builtin": builtin.lower()}))

        self.reporter.step(f"🔄 正在检查格定律 ({lattice.size} 个元素) ...")
        report = laws(lattice)
        writer.write_json("lattice.json", lattice.to_dict())
        writer.write_json("laws.json", report.to_dict(lattice))
        writer.write_dot("hasse.dot", hasse_dot(lattice))
        writer.write_readme(f"命题格 {lattice.name}", {
            "元素数": lattice.size,
            "分配律": report.distributive,
            "正交模律": report.orthomodular,
            "布尔块": len(report.boolean_blocks),
        })
        self.reporter.show_lattice(lattice, report)
        self.reporter.show_written(writer.written)
        return report.to_dict(lattice)

    # ==================== entropy ====================

    def cmd_entropy(self, spec: RunSpec) -> dict:
        spec = self._prepare(spec)
        if spec.horizon < 2:
            raise SpecValidationError("熵估计的时域必须 ≥ 2")
        dynamics, space, partitions = self._load(spec, 1)
        self.reporter.step(f"🔄 正在估计 {len(partitions)} 个划分的动力学熵 ...")
        best_value, best_name, reports = ks_estimate(dynamics, space, partitions, spec.horizon,
                                                     threads=self.threads)

        writer = self._writer(spec)
        for report in reports:
            writer.write_csv(f"entropy_{report.partition_name}.csv", report.to_frame())
        for name, P in partitions:
            if P.n_cells <= 64 and P.measures.min() > 0:
                writer.write_csv(f"transition_{name}.csv",
                                 transition_matrix(P, dynamics, space).to_frame().rename_axis("cell").reset_index())
        warnings = sum(1 for r in reports if r.saturation_flag)
        summary = {
            "system": dynamics.describe(),
            "sample_size": space.size,
            "horizon": spec.horizon,
            "ks_estimate": best_value,
            "argmax": best_name,
            "warnings": warnings,
            "reports": [r.to_dict() for r in reports],
        }
        writer.write_json("entropy.json", summary)
        rows = {r.partition_name: f"{r.estimate:.6f}" + (" (饱和)" if r.saturation_flag else "") for r in reports}
        rows["最大值"] = f"{best_value:.6f} ({best_name})"
        writer.write_readme("动力学熵", rows)
        self.reporter.show_entropy(reports, best_value, best_name)
        self.reporter.show_written(writer.written)
        return summary

    # ==================== systems ====================

    def cmd_systems(self) -> List[dict]:
        systems = list_systems()
        self.reporter.show_systems(systems)
        return systems
