"""Binary-labelled sample container and its CSV interchange format."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Dataset:
    """An observed sample: N feature rows with binary labels.

    ``seed_record`` is the seed that regenerated (or would regenerate) the
    sample; ingested real data carries 0.
    """

    features: np.ndarray
    labels: np.ndarray
    seed_record: int = 0

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise ValueError("features must be a 2-D array")
        if features.shape[0] != labels.shape[0]:
            raise ValueError(
                f"row mismatch: {features.shape[0]} feature rows, {labels.shape[0]} labels"
            )
        if features.shape[0] < 2 or features.shape[1] < 1:
            raise ValueError("need at least 2 rows and 1 feature column")
        if not np.all(np.isfinite(features)):
            raise ValueError("features contain non-finite values")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def class_counts(self) -> tuple[int, int]:
        labels = self.labels
        ones = int(labels.sum())
        return len(labels) - ones, ones

    def subset(self, index: np.ndarray) -> "Dataset":
        return Dataset(self.features[index], self.labels[index], self.seed_record)


def write_dataset_csv(data: Dataset, path: str) -> None:
    """CSV with header ``label,f1,...,fn``; features at 17 significant digits."""
    lines = ["label," + ",".join(f"f{j + 1}" for j in range(data.n_features))]
    for label, row in zip(data.labels, data.features):
        lines.append(f"{int(label)}," + ",".join(format(v, ".17g") for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_dataset_csv(path: str) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if not header or header[0] != "label":
            raise ValueError(f"{path}: expected header starting with 'label'")
        rows = []
        labels = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            labels.append(int(cells[0]))
            rows.append([float(c) for c in cells[1:]])
    return Dataset(np.array(rows, dtype=np.float64), np.array(labels, dtype=np.int64))
