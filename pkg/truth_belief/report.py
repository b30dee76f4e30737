"""Distribution files, number formatting and the JSON run report."""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .dist import Alphabet, Distribution, make_distribution
from .exceptions import DomainError, ParseError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

JSON_INFINITY = "+inf"
CSV_INFINITY = "inf"
_INTEGER_LIMIT = 2.0**53


def format_number(value: float, infinity: str = JSON_INFINITY) -> str:
    """Shortest round-trip decimal; integral values print without ``.0``."""
    value = float(value)
    if value == math.inf:
        return infinity
    if value == -math.inf:
        return "-" + infinity.lstrip("+")
    if value.is_integer() and abs(value) < _INTEGER_LIMIT:
        return str(int(value))
    return repr(value)


def file_digest(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _parse_prob(text: Any, where: str) -> float:
    if isinstance(text, bool):
        raise ParseError(f"expected a number, got {text!r}", field=where)
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ParseError(f"expected a number, got {text!r}", field=where) from None


def _read_csv(path: Path) -> Dict[str, list]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or not {"label", "prob"} <= set(reader.fieldnames):
            raise ParseError("CSV header must contain 'label' and 'prob'", field="header")
        labels, probs = [], []
        for i, row in enumerate(reader):
            labels.append((row["label"] or "").strip())
            probs.append(_parse_prob(row["prob"], f"row {i + 1} prob"))
    return {"labels": labels, "probs": probs}


def _read_json(path: Path) -> Dict[str, list]:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg}, line {exc.lineno})", field="json") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", field="json")
    probs = data.get("probs")
    if not isinstance(probs, list):
        raise ParseError("missing or non-list 'probs'", field="probs")
    probs = [_parse_prob(p, f"probs[{i}]") for i, p in enumerate(probs)]
    labels = data.get("labels")
    if labels is None:
        labels = list(Alphabet.default(len(probs)).labels) if probs else []
    elif not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise ParseError("'labels' must be a list of strings", field="labels")
    if len(labels) != len(probs):
        raise ParseError(f"{len(labels)} labels for {len(probs)} probabilities", field="labels")
    return {"labels": labels, "probs": probs}


def load_distribution(path: PathLike, normalize: bool = False) -> Distribution:
    """Read a distribution from JSON (``{"labels": [...], "probs": [...]}``)
    or from CSV with a ``label,prob`` header.

    Raises:
        ParseError: unreadable file, bad syntax, or values that do not form a
            distribution; `field` names the offending part.
    """
    path = Path(path)
    try:
        raw = _read_csv(path) if path.suffix.lower() == ".csv" else _read_json(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", field="path") from None
    if not raw["probs"]:
        raise ParseError("no probabilities", field="probs")
    try:
        alphabet = Alphabet(tuple(raw["labels"]))
    except DomainError as exc:
        raise ParseError(str(exc), field="labels") from None
    try:
        dist = make_distribution(alphabet, raw["probs"], normalize=normalize)
    except DomainError as exc:
        raise ParseError(str(exc), field="probs") from None
    logger.debug("loaded %d probabilities from %s", len(dist), path)
    return dist


def dump_distribution(path: PathLike, dist: Distribution) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(dist.as_dict(), f, indent=2)
        f.write("\n")


def _encode(value: Any) -> Any:
    if isinstance(value, float):
        if math.isinf(value):
            return JSON_INFINITY if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode(value: Any) -> Any:
    if value == JSON_INFINITY:
        return math.inf
    if value == "-inf":
        return -math.inf
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


@dataclass
class RunReport:
    """Machine-readable record of one command run.

    Infinite values are written as the string ``"+inf"``; `from_json`
    restores them, so ``from_json(to_json())`` gives back an equal report.
    """

    command: str
    inputs: Dict[str, Dict[str, str]] = field(default_factory=dict)
    q_values: List[float] = field(default_factory=list)
    results: List[Dict[str, Any]] = field(default_factory=list)
    suite_outcomes: List[Dict[str, Any]] = field(default_factory=list)
    tool_version: str = ""
    seed: int = 0

    def add_input(self, name: str, path: Optional[PathLike]) -> None:
        if path is not None:
            self.inputs[name] = {"path": str(path), "sha256": file_digest(path)}

    def to_dict(self) -> Dict[str, Any]:
        return _encode(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid report JSON ({exc.msg})", field="report") from None
        if not isinstance(data, dict):
            raise ParseError("report must be a JSON object", field="report")
        try:
            return cls(**_decode(data))
        except TypeError as exc:
            raise ParseError(str(exc), field="report") from None

    def write(self, path: PathLike) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")
        logger.info("report written to %s", path)

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [o for o in self.suite_outcomes if not o.get("passed", True)]
