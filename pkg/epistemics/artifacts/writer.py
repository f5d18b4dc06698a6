#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import logging
import tempfile
from typing import Dict, List, Optional

import pandas as pd

from . import serializers

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """统一的结果写入器: 原子写入(临时文件 + 重命名)，每个文件带规格摘要与版本"""

    def __init__(self, out_dir: str, digest: str = "", formats: List[str] = None,
                 paths: Optional[Dict[str, str]] = None):
        self.out_dir = out_dir
        self.digest = digest
        self.formats = list(formats) if formats else ["json", "csv", "dot"]
        # 规格里为某种格式指定的文件名，只用于该格式的第一个产物
        self.paths = dict(paths or {})
        self.written: List[str] = []
        os.makedirs(out_dir, exist_ok=True)

    def wants(self, fmt: str) -> bool:
        return fmt in self.formats

    def _target(self, fmt: str, default_name: str) -> str:
        name = self.paths.pop(fmt, None) or default_name
        return os.path.join(self.out_dir, name)

    def _write(self, path: str, text: str) -> str:
        directory = os.path.dirname(path) or "."
        os.makedirs(directory, exist_ok=True)
        fd, temp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
            os.replace(temp_path, path)
        except BaseException:
            if os.path.exists(temp_path):
                os.remove(temp_path)
            raise
        self.written.append(path)
        logger.info(f"✅ 已写入 {path}")
        return path

    def write_json(self, name: str, payload: dict) -> Optional[str]:
        if not self.wants("json"):
            return None
        return self._write(self._target("json", name), serializers.json_text(payload, self.digest))

    def write_csv(self, name: str, frame: pd.DataFrame) -> Optional[str]:
        if not self.wants("csv"):
            return None
        return self._write(self._target("csv", name), serializers.csv_text(frame, self.digest))

    def write_dot(self, name: str, dot: str) -> Optional[str]:
        if not self.wants("dot"):
            return None
        return self._write(self._target("dot", name), serializers.dot_text(dot, self.digest))

    def write_readme(self, title: str, rows: dict) -> str:
        """README.md 总是写出"""
        path = os.path.join(self.out_dir, "README.md")
        return self._write(path, serializers.markdown_text(title, rows, self.digest))
