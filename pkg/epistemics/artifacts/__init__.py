"""
结果输出模块
"""
from .writer import ArtifactWriter
from .interface import ConsoleReporter
from . import serializers

__all__ = ['ArtifactWriter', 'ConsoleReporter', 'serializers']
