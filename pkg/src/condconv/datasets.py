"""Embedded SC16 / P3 datasets and the plain-text dataset file format.

Both datasets are computation times of two probabilistic production-costing
algorithms (Caramanis et al., 1983), rescaled to the unit interval.
"""
from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO, Union

from .errors import DatasetLookupError, DomainError
from .lcg import Dataset

SC16 = (
    0.853, 0.759, 0.866, 0.809, 0.717, 0.544, 0.492, 0.403, 0.344, 0.213, 0.116,
    0.116, 0.092, 0.070, 0.059, 0.048, 0.036, 0.029, 0.021, 0.014, 0.011, 0.008, 0.006,
)

P3 = (
    0.853, 0.759, 0.874, 0.800, 0.716, 0.557, 0.503, 0.399, 0.334, 0.207, 0.118,
    0.118, 0.097, 0.078, 0.067, 0.056, 0.044, 0.036, 0.026, 0.019, 0.014, 0.010,
)

_BUILTIN = {"SC16": SC16, "P3": P3}

# Published one-parameter fits on these data: (estimate, loglik, aic).
# The LCG rows were produced with the quadratic ML equation.
REFERENCE_FITS = {
    ("SC16", "toppleone"): (0.5943, -11.3660, 25.7837),
    ("SC16", "lcg"): (1.9876, 2.9459, -3.8981),
    ("P3", "toppleone"): (0.6778, -10.9016, 23.8032),
    ("P3", "lcg"): (1.8646, 2.3009, -2.6098),
}


def available() -> list[str]:
    return sorted(_BUILTIN)


def builtin_dataset(name: str) -> Dataset:
    """Return an embedded dataset by case-insensitive name."""
    key = name.strip().upper()
    if key not in _BUILTIN:
        raise DatasetLookupError(f"unknown dataset {name!r}; available: {', '.join(available())}")
    return Dataset(key, _BUILTIN[key])


def read_dataset(source: Union[str, Path, TextIO], name: str | None = None) -> Dataset:
    """Parse one value per line; ``#`` starts a comment; blank lines are skipped."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        with path.open() as fh:
            return read_dataset(fh, name or path.stem)
    values = []
    for lineno, line in enumerate(source, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise DomainError(f"line {lineno}: cannot parse {text!r} as a number") from None
    return Dataset(name or "data", tuple(values))


def write_dataset(data: Dataset, dest: Union[str, Path, TextIO]) -> None:
    """Write in the format :func:`read_dataset` accepts; values round-trip exactly."""
    if isinstance(dest, (str, Path)):
        with Path(dest).open("w") as fh:
            write_dataset(data, fh)
        return
    dest.write(f"# {data.name}\n")
    for v in data.values:
        dest.write(f"{v!r}\n")


def load_dataset(spec: str, stdin: TextIO | None = None) -> Dataset:
    """Resolve a built-in name, ``-`` (standard input) or a file path."""
    if spec == "-":
        import sys

        return read_dataset(stdin or sys.stdin, "stdin")
    if spec.strip().upper() in _BUILTIN:
        return builtin_dataset(spec)
    path = Path(spec)
    if not path.exists():
        raise DatasetLookupError(f"{spec!r} is neither a built-in dataset ({', '.join(available())}) nor a file")
    return read_dataset(path)


def dataset_to_text(data: Dataset) -> str:
    buf = io.StringIO()
    write_dataset(data, buf)
    return buf.getvalue()
