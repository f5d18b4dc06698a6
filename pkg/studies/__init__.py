"""
研究脚本模块
"""
