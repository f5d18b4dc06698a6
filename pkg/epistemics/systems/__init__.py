"""
内置动力系统注册表

新系统只需在 SYSTEMS 中登记工厂函数、默认参数与简介。
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List

from ..core import DynamicalMap
from ..errors import SpecValidationError, UnknownSystem
from .expanding import doubling_map, logistic_map, tent_map
from .finite import cycle_map, table_map
from .invertible import baker_map, identity_map, oscillator_map, rotation_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemEntry:
    factory: Callable[..., DynamicalMap]
    defaults: Dict[str, float]
    description: str


SYSTEMS: Dict[str, SystemEntry] = {
    "doubling": SystemEntry(doubling_map, {}, "倍增映射 x ↦ 2x mod 1"),
    "tent": SystemEntry(tent_map, {"s": 2.0}, "帐篷映射 x ↦ s·min(x, 1-x)"),
    "logistic": SystemEntry(logistic_map, {"r": 4.0}, "逻辑斯蒂映射 x ↦ r·x(1-x)"),
    "baker": SystemEntry(baker_map, {}, "面包师映射(可逆，单位方块)"),
    "rotation": SystemEntry(rotation_map, {"alpha": 0.5 ** 0.5}, "圆周旋转 x ↦ x+α mod 1"),
    "oscillator": SystemEntry(oscillator_map, {"angle": 0.25}, "谐振子相流，圆盘内旋转 angle 圈"),
    "identity": SystemEntry(identity_map, {"dimension": 1}, "恒等映射"),
    "cycle": SystemEntry(cycle_map, {"size": 5}, "有限循环 i ↦ i+1 mod size"),
}


def get_system(name: str, **params) -> DynamicalMap:
    """按名称构造映射，未给出的参数取默认值"""
    entry = SYSTEMS.get(name)
    if entry is None:
        raise UnknownSystem(f"未知系统: {name} (可选: {', '.join(sorted(SYSTEMS))})")
    unknown = set(params) - set(entry.defaults)
    if unknown:
        raise SpecValidationError(f"系统 {name} 不接受参数: {', '.join(sorted(unknown))}")
    merged = {**entry.defaults, **params}
    if name in ("identity", "cycle"):
        merged = {key: int(value) for key, value in merged.items()}
    logger.debug(f"构造系统 {name}: {merged}")
    return entry.factory(**merged)


def list_systems() -> List[dict]:
    return [
        {"name": name, "defaults": dict(entry.defaults), "description": entry.description}
        for name, entry in sorted(SYSTEMS.items())
    ]


__all__ = ['SYSTEMS', 'SystemEntry', 'get_system', 'list_systems', 'table_map',
           'doubling_map', 'tent_map', 'logistic_map', 'baker_map', 'rotation_map',
           'oscillator_map', 'identity_map', 'cycle_map']
