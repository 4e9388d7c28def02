"""Secondary acceptance: regenerate the figure from the primary run artifacts.

Runs only after the primary acceptance suite has produced
runs/acceptance_figure/ (override the location with MFD3_RUN_DIR); skips
otherwise.
"""

import os
from pathlib import Path

import numpy as np
import pytest

from mfd3_plotter import build_spec, render

RUN_DIR = Path(
    os.environ.get(
        "MFD3_RUN_DIR",
        Path(__file__).resolve().parents[2] / "runs" / "acceptance_figure",
    )
)


def _hull_diameter(points: np.ndarray) -> float:
    diff = points[:, None, :] - points[None, :, :]
    return float(np.sqrt((diff**2).sum(axis=2)).max())


def _read_cols(path, names):
    lines = [l for l in Path(path).read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    data = np.array([[float(t) for t in l.split(",")] for l in lines[1:]])
    return {n: data[:, header.index(n)] for n in names}


@pytest.fixture(scope="module")
def figure_artifacts():
    if not (RUN_DIR / "metrics.csv").exists():
        pytest.skip(
            "primary figure-run artifacts not found; run the primary acceptance "
            "suite first (pytest tests/test_acceptance.py)"
        )
    return RUN_DIR


def test_regenerate_three_panel_figure(figure_artifacts, tmp_path):
    out = tmp_path / "figure.png"
    spec = build_spec(figure_artifacts, out_path=out)
    fig = render(spec)

    assert out.exists() and out.stat().st_size > 10_000
    assert len(fig.axes) == 3

    # loss panel strictly reflects the CSV column
    cols = _read_cols(figure_artifacts / "metrics.csv", ["step", "loss"])
    line = fig.axes[0].lines[0]
    assert np.array_equal(line.get_ydata(), cols["loss"])
    assert np.array_equal(line.get_xdata(), cols["step"])

    # neuron scatter contracts: final convex-hull diameter below initial
    first, last = spec.neurons_paths[0], spec.neurons_paths[-1]
    pts_first = _read_cols(first, ["w2", "b2"])
    pts_last = _read_cols(last, ["w2", "b2"])
    d_first = _hull_diameter(np.stack([pts_first["w2"], pts_first["b2"]], axis=1))
    d_last = _hull_diameter(np.stack([pts_last["w2"], pts_last["b2"]], axis=1))
    print(f"SECONDARY ACCEPTANCE: hull diameter {d_first:.6g} -> {d_last:.6g}")
    assert d_last < d_first
