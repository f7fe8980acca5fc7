"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License.  See Project Root for the license information.
"""

import math

import numpy as np
from aws_lambda_powertools import Logger

logger = Logger(__name__)

class NumberUtility:
    """
    Number Utility.
    """

    @staticmethod
    def to_significant_digits(value: float, significant_digits: int = 6) -> str:
        """
        Formats a number with a fixed count of significant digits for CSV output.

        >>> NumberUtility.to_significant_digits(0.4472135955)
        '0.447214'
        """
        if value is None:
            return ""
        number = float(value)
        if math.isnan(number):
            return ""
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        if number == 0.0:
            return "0"
        return np.format_float_positional(
            number, precision=significant_digits, unique=False, fractional=False, trim="-"
        )

    @staticmethod
    def is_close(a: float, b: float, tolerance: float) -> bool:
        """Absolute-tolerance comparison used by golden checks."""
        return abs(float(a) - float(b)) <= tolerance
