from typing import Any, Callable, Dict


class GraphError(ValueError):
    """Malformed graph data or a query over mismatched vertex sets."""


class GraphParseError(GraphError):
    """Graph file that cannot be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class ContractError(ValueError):
    """A caller violated the precondition of an operation."""


class OracleCapError(ContractError):
    """Brute-force enumeration was asked to exceed its edge cap."""


class IntegrityError(RuntimeError):
    """An internal invariant failed (e.g. a lifted root does not verify)."""


def _run_checks(params: Dict[str, Any]) -> None:
    """
    Run all validation checks on parameters.

    Args:
        params: Dictionary of solver or generator parameters

    Raises:
        ValueError: If any validation check fails
    """
    for k, v in params.items():
        if k in param_checks and v is not None:
            param_checks[k](k, v)


def _check_positive_integer(key: str, value: Any) -> None:
    """Validate that value is a positive integer."""
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ValueError(f"Invalid setting for {key}, must be positive integer")


def _check_positive_integer_inclusive(key: str, value: Any) -> None:
    """Validate that value is a non-negative integer (zero allowed)."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f"Invalid setting for {key}, must be positive integer, or 0")


def _check_fraction(key: str, value: Any) -> None:
    """Validate that value is a number between 0 and 1."""
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0 <= value <= 1:
        raise ValueError(f"Invalid setting for {key}, must be a number between 0 and 1")


def _check_bool_type(key: str, value: Any) -> None:
    """Validate that value is a boolean."""
    if not isinstance(value, bool):
        raise ValueError(f"Invalid setting for {key}, must be boolean type")


def _check_vertex_count(key: str, value: Any) -> None:
    """Validate that value is an integer of at least 2."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 2:
        raise ValueError(f"Invalid setting for {key}, must be integer of at least 2")


param_checks: Dict[str, Callable[[str, Any], None]] = {
    "k": _check_positive_integer_inclusive,
    "seed": _check_positive_integer_inclusive,
    "jobs": _check_positive_integer,
    "density": _check_fraction,
    "edge_cap": _check_positive_integer,
    "n_interval": _check_positive_integer,
    "count": _check_positive_integer,
    "n_max": _check_vertex_count,
    "raw": _check_bool_type,
    "drop_nan": _check_bool_type,
    "include_max": _check_bool_type,
}
