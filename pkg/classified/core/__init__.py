"""
Core module: settings and the error hierarchy
"""
from .config import settings, Settings

__all__ = ["settings", "Settings"]
