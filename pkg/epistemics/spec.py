#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RunSpec: 命令行运行规格的读取、校验与对象构造

规格是一个 JSON 文档:
{"system": {"name": "doubling", "params": {}},
 "sample": {"kind": "grid", "size": 1048576, "seed": 0},
 "partitions": [{"name": "b05", "boundaries": [0.5]}],
 "horizon": 10,
 "outputs": ["csv", "json"]}
"""

import hashlib
import json
import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .core import (
    DynamicalMap,
    SampleSpace,
    build_sample,
    constant_observable,
    coordinate_observable,
    finite_space,
    floor_observable,
    indicator_observable,
    parity_observable,
    quadrant_observable,
)
from .errors import SpecValidationError
from .partition import Partition, induce, proposition_partition, threshold_partition
from .systems import get_system, table_map

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv", "dot")
OBSERVABLES = ("coordinate", "parity", "floor", "indicator", "quadrant", "identity", "constant")


def spec_digest(document: Dict[str, Any]) -> str:
    """规格文档的 sha256 摘要(键排序后的紧凑 JSON)"""
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class OutputSpec:
    format: str
    path: Optional[str] = None


@dataclass(frozen=True)
class RunSpec:
    system: Dict[str, Any]
    sample: Dict[str, Any]
    partitions: List[Dict[str, Any]]
    horizon: int
    outputs: List[OutputSpec]
    digest: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "RunSpec":
        if not isinstance(document, dict):
            raise SpecValidationError("规格必须是 JSON 对象")
        sample = document.get("sample")
        if not isinstance(sample, dict):
            raise SpecValidationError("规格缺少 sample，或 sample 不是对象")
        system = document.get("system", document.get("map"))
        if system is None and sample.get("kind") != "finite":
            raise SpecValidationError("规格缺少 system (或 map)")
        system = system or {"name": "identity", "params": {}}
        if not isinstance(system, dict) or not isinstance(system.get("name"), str):
            raise SpecValidationError("system 必须包含字符串字段 name")
        _check_params(system.get("params", {}))

        for key in ("kind", "size"):
            if key not in sample:
                raise SpecValidationError(f"sample 缺少字段 {key}")
        if not isinstance(sample["size"], int) or isinstance(sample["size"], bool):
            raise SpecValidationError("sample.size 必须是整数")
        if not isinstance(sample.get("seed", 0), int):
            raise SpecValidationError("sample.seed 必须是整数")

        partitions = document.get("partitions", [])
        if not isinstance(partitions, list) or not all(isinstance(p, dict) for p in partitions):
            raise SpecValidationError("partitions 必须是对象列表")
        names = [p.get("name", f"P{i}") for i, p in enumerate(partitions)]
        if len(set(names)) != len(names):
            raise SpecValidationError("划分名称必须互不相同")
        for entry in partitions:
            _check_partition_entry(entry)

        horizon = document.get("horizon", 10)
        if not isinstance(horizon, int) or isinstance(horizon, bool) or horizon < 1:
            raise SpecValidationError(f"horizon 必须是 ≥ 1 的整数，当前 {horizon!r}")

        outputs = [_parse_output(item) for item in document.get("outputs", ["json", "csv"])]
        paths = [o.path for o in outputs if o.path is not None]
        if len(set(paths)) != len(paths):
            raise SpecValidationError("输出路径必须互不相同")

        extra = {k: v for k, v in document.items()
                 if k not in ("system", "map", "sample", "partitions", "horizon", "outputs")}
        return cls(system=system, sample=sample, partitions=partitions, horizon=horizon,
                   outputs=outputs, digest=spec_digest(document), extra=extra)

    @property
    def formats(self) -> List[str]:
        return [o.format for o in self.outputs]

    def with_horizon(self, horizon: int) -> "RunSpec":
        if horizon < 1:
            raise SpecValidationError(f"horizon 必须 ≥ 1，当前 {horizon}")
        return RunSpec(self.system, self.sample, self.partitions, horizon, self.outputs,
                       self.digest, self.extra)

    # ---------- 对象构造 ----------

    def build(self) -> Tuple[DynamicalMap, SampleSpace]:
        """构造映射与样本空间"""
        name = self.system["name"]
        params = dict(self.system.get("params", {}))
        kind = self.sample["kind"]
        size = self.sample["size"]
        seed = self.sample.get("seed", 0)

        if kind == "finite":
            space = finite_space(size, self.sample.get("names"))
            if name == "table":
                dynamics = table_map(space, params.get("table", []))
            else:
                dynamics = _construct(name, params)
            return dynamics, space

        if name == "table":
            raise SpecValidationError("查表映射只能用于 finite 样本")
        dynamics = _construct(name, params)
        x0 = self.sample.get("x0")
        space = build_sample(kind, size, dynamics, seed=seed, x0=x0)
        return dynamics, space

    def build_partitions(self, space: SampleSpace) -> List[Tuple[str, Partition]]:
        return [(p.get("name", f"P{i}"), build_partition(p, space)) for i, p in enumerate(self.partitions)]


def _is_real(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _check_params(params):
    """系统参数必须是有限实数；查表映射的 table 为整数列表"""
    if not isinstance(params, dict):
        raise SpecValidationError("system.params 必须是对象")
    for key, value in params.items():
        if key == "table":
            if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
                raise SpecValidationError("system.params.table 必须是整数列表")
        elif not _is_real(value):
            raise SpecValidationError(f"system.params.{key} 必须是有限实数，当前 {value!r}")


def _construct(name: str, params: Dict[str, Any]) -> DynamicalMap:
    try:
        return get_system(name, **params)
    except (TypeError, ValueError) as e:
        raise SpecValidationError(f"系统 {name} 的参数无效: {e}") from None


def _boundaries(entry: Dict[str, Any]) -> List[float]:
    values = entry["boundaries"]
    if not isinstance(values, list) or not all(_is_real(v) for v in values):
        raise SpecValidationError(f"boundaries 必须是有限实数列表，当前 {values!r}")
    return [float(v) for v in values]


def _check_partition_entry(entry: Dict[str, Any]):
    axis = entry.get("axis", 0)
    if not isinstance(axis, int) or isinstance(axis, bool) or axis < 0:
        raise SpecValidationError(f"axis 必须是非负整数，当前 {axis!r}")
    if "boundaries" in entry:
        _boundaries(entry)


def _parse_output(item) -> OutputSpec:
    if isinstance(item, str):
        item = {"format": item}
    if not isinstance(item, dict) or item.get("format") not in OUTPUT_FORMATS:
        raise SpecValidationError(f"未知的输出格式: {item!r}")
    return OutputSpec(item["format"], item.get("path"))


def _parse_binning(value):
    if value is None or value == "exact":
        return "exact"
    if isinstance(value, dict) and isinstance(value.get("uniform_bins"), int):
        return value["uniform_bins"]
    raise SpecValidationError(f"未知的分箱方式: {value!r}")


def _observable(entry: Dict[str, Any]):
    kind = entry.get("observable")
    axis = entry.get("axis", 0)
    if kind == "coordinate":
        return coordinate_observable(axis)
    if kind == "parity":
        return parity_observable(axis)
    if kind == "floor":
        return floor_observable(entry.get("divisor", 2), axis)
    if kind == "indicator":
        return indicator_observable(entry.get("threshold", 0.5), axis)
    if kind == "quadrant":
        return quadrant_observable()
    if kind == "constant":
        return constant_observable(entry.get("value", 0.0))
    raise SpecValidationError(f"未知的观测量: {kind!r} (可选: {', '.join(OBSERVABLES)})")


def build_partition(entry: Dict[str, Any], space: SampleSpace) -> Partition:
    """由单个划分规格构造划分"""
    if "boundaries" in entry:
        axis = entry.get("axis", 0)
        if axis >= space.dimension:
            raise SpecValidationError(f"坐标轴 {axis} 超出维数 {space.dimension}")
        return threshold_partition(space, _boundaries(entry), axis)
    if "labels" in entry:
        labels = entry["labels"]
        if not isinstance(labels, list) or len(labels) != space.size:
            raise SpecValidationError(f"labels 必须为每个样本点给出一个标签 (共 {space.size} 个)")
        keys = [str(label) for label in labels]
        return Partition.from_labels(space, keys, lambda i: keys[i])
    if "proposition" in entry:
        prop = entry["proposition"]
        if not isinstance(prop, dict) or "value" not in prop:
            raise SpecValidationError("proposition 必须包含 observable 与 value")
        return proposition_partition(_observable(prop), float(prop["value"]),
                                     float(prop.get("tol", 0.0)), space)
    if "observable" in entry:
        if entry["observable"] == "identity":
            return Partition.identity(space)
        return induce(_observable(entry), space, _parse_binning(entry.get("binning")))
    raise SpecValidationError(f"无法识别的划分规格: {entry!r}")


def load_spec(path: str) -> RunSpec:
    """读取 JSON 规格文件"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise SpecValidationError(f"规格文件不存在: {path}") from None
    except json.JSONDecodeError as e:
        raise SpecValidationError(f"规格文件不是合法的 JSON: {e}") from None
    spec = RunSpec.from_dict(document)
    logger.debug(f"已读取规格 {path} (sha256 {spec.digest[:12]})")
    return spec
