import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vax.dataset import Dataset
from vax.forest import mine
from vax.jep import select_and_aggregate
from vax.synthetic import five_class_blobs


@pytest.fixture(scope="session")
def blob_dataset() -> Dataset:
    return five_class_blobs(seed=1)


@pytest.fixture(scope="session")
def blob_jep_set(blob_dataset):
    raw = mine(blob_dataset, 64, seed=1)
    jep_set, counts = select_and_aggregate(raw, blob_dataset)
    return jep_set, counts, raw


def tiny_dataset() -> Dataset:
    """Six rows, two variables, two well-separated classes."""
    return Dataset(
        instances=np.array(
            [[1.0, 5.0], [2.0, 6.0], [1.5, 5.5], [8.0, 1.0], [9.0, 2.0], [8.5, 1.5]]
        ),
        variable_names=["a", "b"],
        labels=np.array([0, 0, 0, 1, 1, 1]),
        classes=["left", "right"],
        instance_ids=[10, 11, 12, 13, 14, 15],
        label_name="side",
    )


@pytest.fixture()
def six_rows() -> Dataset:
    return tiny_dataset()


def write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    lines = [",".join(header)]
    lines += [",".join(str(cell) for cell in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture()
def blob_csv(tmp_path, blob_dataset) -> Path:
    rows = [
        [
            blob_dataset.instances[i, 0],
            blob_dataset.instances[i, 1],
            blob_dataset.classes[int(blob_dataset.labels[i])],
        ]
        for i in range(blob_dataset.n_rows)
    ]
    return write_csv(tmp_path / "blobs.csv", ["var_1", "var_2", "class"], rows)
