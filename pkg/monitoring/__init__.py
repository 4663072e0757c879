"""
PAMDP EXPLORER - Monitoring Module
"""

from .logger import setup_logging
from .run_status import RunStatusCollector

__all__ = ["setup_logging", "RunStatusCollector"]
