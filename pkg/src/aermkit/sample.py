"""Labeled i.i.d. samples and their CSV representation."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class LabeledSample:
    """An i.i.d. sample of (example, label) pairs.

    ``examples`` has shape (m, p) with p >= 0; p = 0 means the model sees no
    inputs and hypotheses are constants.  Arrays are made read-only so
    samples can be shared freely across threads.
    """

    examples: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.examples, dtype=np.float64))
        y = np.asarray(self.labels, dtype=np.float64).ravel()
        if y.size == 0:
            raise ConfigurationError("sample must contain at least one observation")
        if x.size == 0:
            x = np.empty((y.size, 0), dtype=np.float64)
        if x.shape[0] != y.size:
            raise ConfigurationError(
                f"examples ({x.shape[0]}) and labels ({y.size}) disagree in length")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
            raise ConfigurationError("sample contains non-finite values")
        x = np.ascontiguousarray(x)
        y = np.ascontiguousarray(y)
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "examples", x)
        object.__setattr__(self, "labels", y)

    @property
    def m(self) -> int:
        return self.labels.size

    @property
    def p(self) -> int:
        return self.examples.shape[1]

    @classmethod
    def from_labels(cls, labels) -> "LabeledSample":
        """Build a featureless (p = 0) sample from labels alone."""
        y = np.asarray(labels, dtype=np.float64).ravel()
        return cls(np.empty((y.size, 0)), y)


def read_sample_csv(path) -> LabeledSample:
    """Read a sample from CSV with header ``x_1,...,x_p,y`` (just ``y`` if p=0)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigurationError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if header[-1] != "y":
            raise ConfigurationError(f"{path}: last column must be 'y', got {header[-1]!r}")
        p = len(header) - 1
        expected = [f"x_{j}" for j in range(1, p + 1)] + ["y"]
        if header != expected:
            raise ConfigurationError(
                f"{path}: header must be {','.join(expected)}, got {','.join(header)}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != p + 1:
                raise ConfigurationError(f"{path}:{lineno}: expected {p + 1} fields")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ConfigurationError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=np.float64)
    return LabeledSample(data[:, :p], data[:, p])


def write_sample_csv(sample: LabeledSample, path) -> None:
    """Write a sample in the CSV layout accepted by :func:`read_sample_csv`."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x_{j}" for j in range(1, sample.p + 1)] + ["y"])
        for i in range(sample.m):
            row = [format(v, ".17g") for v in sample.examples[i]]
            row.append(format(sample.labels[i], ".17g"))
            writer.writerow(row)
