#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exception hierarchy shared by the engine, the builders and the front ends
"""

from typing import Optional, Tuple


class WalgError(Exception):
    """Base class for every error raised by this package"""


class ScalarError(WalgError):
    """Zero denominator, pole at an evaluation point or malformed scalar"""


class ParseError(WalgError):
    def __init__(self, message: str, text: str = "", span: Optional[Tuple[int, int]] = None):
        self.text = text
        self.span = span
        if span is not None and text:
            start, end = span
            message = f"{message} at {start}:{end} in {text!r} (near {text[start:end]!r})"
        super().__init__(message)


class PresentationError(WalgError):
    """Unknown or foreign generator, malformed bracket table, non-free presentation"""


class PairingError(WalgError):
    """Exponent pairing that is not a constant integer"""


class BudgetExceeded(WalgError):
    """Expansion budget exhausted"""


class OracleTruncationError(WalgError):
    """Mode truncation too small for the requested computation"""


class RangeError(WalgError):
    """Rank, hook index or root index out of range"""


class GradingError(WalgError):
    """Grading is not good for the nilpotent, or grading data inconsistent"""


class CriticalLevelError(WalgError):
    """Formula evaluated at the critical level k = -h"""


class ConfigError(WalgError):
    """Invalid command-line or API configuration"""


class UnknownCampaign(ConfigError):
    """Requested verification campaign does not exist"""
