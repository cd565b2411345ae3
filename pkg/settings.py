#!/usr/bin/env python3
"""
⚙️ Settings - Конфигурация CDC-Assistant

Все значения необязательны: читаются из окружения (и .env, если он есть),
иначе берутся значения по умолчанию. Каждый лимит можно также передать
явным аргументом в соответствующую функцию.
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

try:
    from dotenv import load_dotenv
    DOTENV_AVAILABLE = True
except ImportError:
    DOTENV_AVAILABLE = False

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Лимиты переборных режимов и уровень логирования"""
    oracle_max_vertices: int = 14
    pm_enum_max_vertices: int = 16
    cyclic_search_max_vertices: int = 64
    cut_avoid_max_iterations: int = 0  # 0 = |E|
    random_max_retries: int = 1000
    log_level: str = "WARNING"


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("⚠️ %s=%r не является целым числом, используется %d", name, raw, default)
        return default
    if value < 0:
        logger.warning("⚠️ %s=%d отрицательно, используется %d", name, value, default)
        return default
    return value


@lru_cache(maxsize=1)
def load_settings() -> Settings:
    """Загрузка настроек (один раз за процесс)"""
    if DOTENV_AVAILABLE:
        load_dotenv()

    defaults = Settings()
    return Settings(
        oracle_max_vertices=_int_from_env("CDC_ORACLE_MAX_VERTICES", defaults.oracle_max_vertices),
        pm_enum_max_vertices=_int_from_env("CDC_PM_ENUM_MAX_VERTICES", defaults.pm_enum_max_vertices),
        cyclic_search_max_vertices=_int_from_env(
            "CDC_CYCLIC_SEARCH_MAX_VERTICES", defaults.cyclic_search_max_vertices
        ),
        cut_avoid_max_iterations=_int_from_env(
            "CDC_CUT_AVOID_MAX_ITERATIONS", defaults.cut_avoid_max_iterations
        ),
        random_max_retries=_int_from_env("CDC_RANDOM_MAX_RETRIES", defaults.random_max_retries),
        log_level=os.getenv("CDC_LOG_LEVEL", defaults.log_level).upper(),
    )
