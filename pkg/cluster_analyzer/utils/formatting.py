"""
Number Formatting Utilities
Fixed-precision formatting shared by every exporter
"""
import math

SIGNIFICANT_DIGITS = 6


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """
    Round a float to a fixed number of significant digits

    The result goes through the text form, so equal inputs always
    serialize to the same bytes.

    Args:
        value: Value to round
        digits: Significant digits

    Returns:
        Rounded float (non-finite values are returned unchanged)
    """
    if not math.isfinite(value):
        return value
    rounded = float(f"{value:.{digits}g}")
    # Avoid "-0.0" in exports
    return 0.0 if rounded == 0 else rounded


def format_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Format a float with a fixed number of significant digits

    Examples:
        >>> format_sig(0.829871234)
        '0.829871'
        >>> format_sig(15.0)
        '15'
    """
    return f"{round_sig(value, digits):.{digits}g}"


def format_score(value: float) -> str:
    """
    Format a score the way it appears in a CSV cell

    Integral values print without a decimal point, other values use the
    shortest repr that reads back to the same float.
    """
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def format_bar(value: float, width: int = 20) -> str:
    """
    Render a value in [0, 1] as a unicode bar

    Args:
        value: Degree of membership
        width: Bar width in characters

    Returns:
        Bar string padded to width
    """
    value = min(max(value, 0.0), 1.0)
    filled = int(round(value * width))
    return "█" * filled + "░" * (width - filled)
