#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果对象到 JSON / CSV / DOT 文本的序列化

所有文本都带可复现性头部(工具名、版本、规格摘要)，不含时间戳，相同输入得到相同字节。
"""

import json
import math
from typing import Any, Dict

import numpy as np
import pandas as pd

from ..config import TOOL_NAME, TOOL_VERSION

FLOAT_FORMAT = "%.15g"


def header_fields(digest: str) -> Dict[str, str]:
    return {"tool": TOOL_NAME, "version": TOOL_VERSION, "spec_sha256": digest}


def _plain(value: Any) -> Any:
    """把 numpy 标量/数组与 NaN 转成标准 JSON 值"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) or math.isinf(value) else value
    return value


def json_text(payload: Dict[str, Any], digest: str) -> str:
    document = {"_meta": header_fields(digest)}
    document.update(_plain(payload))
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def csv_text(frame: pd.DataFrame, digest: str) -> str:
    meta = " ".join(f"{k}={v}" for k, v in header_fields(digest).items())
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT)
    return f"# {meta}\n{body}"


def dot_text(dot: str, digest: str) -> str:
    meta = " ".join(f"{k}={v}" for k, v in header_fields(digest).items())
    return f"// {meta}\n{dot}"


def markdown_text(title: str, rows: Dict[str, Any], digest: str) -> str:
    """运行目录的 README.md 摘要"""
    lines = [f"# {title}", ""]
    for key, value in header_fields(digest).items():
        lines.append(f"- {key}: `{value}`")
    lines.append("")
    lines.append("| 项目 | 结果 |")
    lines.append("|---|---|")
    for key, value in rows.items():
        lines.append(f"| {key} | {value} |")
    return "\n".join(lines) + "\n"
