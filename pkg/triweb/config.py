# Default configuration and logging setup

import copy
import logging
import sys

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"


def get_default_config():
    """Get default configuration"""
    return {
        'suite': {
            'max_label': None,
            'workers': 1,
            'relations': None
        },
        'output': {
            'indent': 2,
            'sort_keys': False
        },
        'debug': {
            'enable_logging': False,
            'log_level': 'WARNING'
        }
    }


def merge_config(base, overrides):
    """Deep-merge overrides into a copy of base; None values are ignored"""
    merged = copy.deepcopy(base)
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        elif value is not None:
            merged[key] = value
    return merged


def setup_logging(config):
    """Configure the root logger from the debug section; logs go to stderr"""
    debug = config.get('debug', {})
    if debug.get('enable_logging'):
        level = getattr(logging, str(debug.get('log_level', 'INFO')).upper(), logging.INFO)
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    return level
