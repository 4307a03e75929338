"""
Settings and Presets classes for numeric tolerances and output formatting
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    """Numeric settings shared by valuations, verification and the CLI"""
    tolerance: float = 1e-9            # max absolute entry difference for equality
    relative_tolerance: float = 1e-12  # extra slack for the algebraic law checks
    normal_tolerance: float = 1e-9     # |total mass - 1| allowed for normality
    significant_digits: int = 12
    max_commonality_frame: int = 20    # |Θ(scope)| limit for subset lattices

    def with_tolerance(self, tolerance: float) -> "Settings":
        """Copy with a different equality tolerance"""
        if tolerance <= 0:
            raise ValueError("tolerance must be positive")
        return replace(self, tolerance=tolerance)

    def format_number(self, value: float) -> str:
        """Locale-independent rendering with the configured significant digits"""
        text = format(float(value), f".{self.significant_digits}g")
        return "0" if text == "-0" else text


class Presets:
    """Collection of named settings"""

    default = Settings()
    strict = Settings(tolerance=1e-12, normal_tolerance=1e-12)
    loose = Settings(tolerance=1e-6, relative_tolerance=1e-9, normal_tolerance=1e-6)
