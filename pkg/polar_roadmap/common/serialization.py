"""
JSON and CSV I/O for reports: ujson with sorted keys, rationals as ``n/d``
text and intervals as ``[lo, hi]`` text pairs.
"""
import csv
from fractions import Fraction
import logging
from pathlib import Path
from typing import Any, Iterable, Sequence, Tuple, Union

from pydantic import BaseModel
import ujson

from polar_roadmap.polyring.interval import Interval

logger = logging.getLogger(__name__)

IntervalPair = Tuple[str, str]


def rational_text(x: Union[int, Fraction]) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational_text(text: str) -> Fraction:
    return Fraction(text.strip())


def interval_pair(iv: Interval) -> IntervalPair:
    return rational_text(iv.lo), rational_text(iv.hi)


def pair_interval(pair: Sequence[str]) -> Interval:
    lo, hi = pair
    return Interval(parse_rational_text(lo), parse_rational_text(hi))


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    return obj


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, unescaped slashes."""
    return ujson.dumps(to_jsonable(obj), sort_keys=True, indent=2, escape_forward_slashes=False) + "\n"


def loads(text: str) -> Any:
    return ujson.loads(text)


def write_json(path: Union[str, Path], obj: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    logger.debug("wrote %s", path)
    return path


def read_json(path: Union[str, Path]) -> Any:
    return loads(Path(path).read_text(encoding="utf-8"))


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    logger.debug("wrote %s", path)
    return path
