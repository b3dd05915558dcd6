import math
from fractions import Fraction
from pathlib import Path
from typing import (Any, Dict, Iterable, List, NoReturn, Optional, Sequence,
                    Tuple, Union)

import typer
import yaml

Rational = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """
    Parse ``"3"``, ``"-5/3"`` into an exact rational.

    Decimal notation is rejected so that instance data stays exact.
    Args:
        text: The token to parse
    Returns:
        The parsed Fraction
    """
    token = text.strip()
    if not token or any(ch in token for ch in ".eE"):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(token)


def format_rational(value: Rational) -> str:
    """Render a rational as ``p/q`` in lowest terms, or as an integer."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value: Any) -> Fraction:
    """Coerce ints, Fractions and ``p/q`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def is_integral(value: Rational) -> bool:
    return Fraction(value).denominator == 1


def common_denominator(values: Iterable[Rational]) -> int:
    """Least common multiple of the denominators of ``values``."""
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    return den


def scale_to_integers(
    coeffs: Sequence[Rational], rhs: Rational
) -> Tuple[List[int], int]:
    """Multiply a row and its rhs by the lcm of their denominators."""
    den = common_denominator([*coeffs, rhs])
    return [int(Fraction(c) * den) for c in coeffs], int(Fraction(rhs) * den)


def dot(coeffs: Dict[int, Fraction], point: Sequence[Rational]) -> Fraction:
    """Exact inner product of a sparse vector with a dense point."""
    return sum((a * point[j] for j, a in coeffs.items()), Fraction(0))


def closure_ratio(maximize: bool, z_int: Rational, z_closure: Rational) -> Optional[Fraction]:
    """``z_closure / z_int`` for max, ``z_int / z_closure`` for min; 0/0 is 1."""
    num, den = (Fraction(z_closure), Fraction(z_int))
    if not maximize:
        num, den = den, num
    if den == 0:
        return Fraction(1) if num == 0 else None
    return num / den


def jsonable(obj: Any) -> Any:
    """
    Convert rationals, sets and enums into YAML/JSON friendly values.
    Args:
        obj: The object to convert
    Returns:
        A structure of str, int, list and dict
    """
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else format_rational(obj)
    if isinstance(obj, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    if isinstance(obj, Path):
        return obj.as_posix()
    return obj


def dump_yaml(data: Any) -> str:
    return yaml.safe_dump(jsonable(data), sort_keys=False)


def load_yaml_file(fpath: Path) -> Dict[str, Any]:
    """Load a YAML file and return its contents as a dictionary."""
    with open(fpath, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    return data or {}


def write_to_file(content: str, file_path: Path):
    """Write content to a file, reporting the destination on stderr."""
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf8", newline="\n") as f:
            f.write(content)
        typer.echo(f"Output written to: {file_path}", err=True)
    except OSError as e:
        typer.echo(f"Error writing to file {file_path}: {e}", err=True)
        raise typer.Exit(1)


def abort(message: str, code: int = 2) -> NoReturn:
    """Print ``Error: message`` on stderr and leave with ``code``."""
    typer.echo(f"Error: {message}", err=True)
    raise typer.Exit(code)


def parse_index_sets(texts: Sequence[str]) -> List[List[int]]:
    """Parse ``"1,3"`` style 1-based index lists into 0-based lists."""
    sets = []
    for text in texts:
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise ValueError("empty index set")
        values = [int(t) - 1 for t in tokens]
        if min(values) < 0:
            raise ValueError(f"indices are 1-based, got {text!r}")
        sets.append(values)
    return sets
