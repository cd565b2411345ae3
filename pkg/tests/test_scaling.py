#!/usr/bin/env python3
"""
Тесты масштабирования: half_n на n = 10^4 и рост расширения + трассировки
"""

import statistics

import pytest

from utils.scale_check import doubling_ratio

pytestmark = pytest.mark.slow


def test_half_n_at_ten_thousand_vertices():
    ratio, large = doubling_ratio(10_000, runs=5, seed=1)
    assert statistics.median(s.total for s in large) < 10.0
    # удвоение n не более чем удваивает расширение + трассировку
    assert ratio <= 2.0
