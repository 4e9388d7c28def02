"""Render the three-panel training figure from run CSVs.

Panels: loss vs step on a log axis with dashed vertical lines at the
selected checkpoint steps; the radial shape of f at those checkpoints; and
the second-layer neuron scatter at those checkpoints with the cloud mean
marked. With no shape files the figure degrades to two panels.

The renderer is a pure function of its input files: re-rendering the same
inputs with the same matplotlib version reproduces the image byte for byte.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "SchemaError", "build_spec", "render", "main", "entry"]


class SchemaError(ValueError):
    """An input CSV does not carry the columns this renderer expects."""


def _read_csv(path: Path, expected_columns: list[str]) -> dict[str, np.ndarray]:
    lines = [l for l in Path(path).read_text().splitlines() if l and not l.startswith("#")]
    if not lines:
        raise SchemaError(f"{path}: empty file")
    names = lines[0].split(",")
    for col in expected_columns:
        if col not in names:
            raise SchemaError(f"{path}: missing column {col!r}")
    data = np.array([[float(t) for t in l.split(",")] for l in lines[1:]])
    if data.size == 0:
        data = data.reshape(0, len(names))
    return {n: data[:, i] for i, n in enumerate(names)}


@dataclass
class FigureSpec:
    """Input files and the checkpoint steps the side panels display."""

    metrics_path: Path
    fshape_paths: list[Path]
    neurons_paths: list[Path]
    out_path: Path
    checkpoint_steps: list[int]

    def __post_init__(self):
        for p in [self.metrics_path, *self.fshape_paths, *self.neurons_paths]:
            if not Path(p).exists():
                raise FileNotFoundError(p)
        if sorted(self.checkpoint_steps) != list(self.checkpoint_steps):
            raise ValueError("checkpoint_steps must be sorted")


_STEP_RE = re.compile(r"_(\d+)\.csv$")


def _step_of(path: Path) -> int:
    m = _STEP_RE.search(path.name)
    if m is None:
        raise ValueError(f"cannot parse checkpoint step from {path.name!r}")
    return int(m.group(1))


def build_spec(run_dir, out_path=None, max_checkpoints: int = 6) -> FigureSpec:
    """Assemble a FigureSpec from a run directory.

    Picks up to ``max_checkpoints`` checkpoint steps, evenly spaced through
    the available files and always including the first and last.
    """
    run_dir = Path(run_dir)
    fshape = sorted(run_dir.glob("fshape_*.csv"), key=_step_of)
    neurons = sorted(run_dir.glob("neurons2_*.csv"), key=_step_of)
    steps = [_step_of(p) for p in (neurons if neurons else fshape)]
    if steps and len(steps) > max_checkpoints:
        idx = np.unique(np.linspace(0, len(steps) - 1, max_checkpoints).round().astype(int))
    else:
        idx = np.arange(len(steps))
    chosen = {steps[i] for i in idx}
    fshape = [p for p in fshape if _step_of(p) in chosen]
    neurons = [p for p in neurons if _step_of(p) in chosen]
    return FigureSpec(
        metrics_path=run_dir / "metrics.csv",
        fshape_paths=fshape,
        neurons_paths=neurons,
        out_path=Path(out_path) if out_path else run_dir / "figure.png",
        checkpoint_steps=sorted(chosen),
    )


def render(spec: FigureSpec):
    """Write the multi-panel figure and return the matplotlib Figure."""
    metrics = _read_csv(spec.metrics_path, ["step", "loss"])
    n_panels = 2 + bool(spec.fshape_paths)
    fig, axes = plt.subplots(1, n_panels, figsize=(5.0 * n_panels, 4.2))
    ax_loss = axes[0]
    ax_shape = axes[1] if spec.fshape_paths else None
    ax_scatter = axes[-1]

    ax_loss.plot(metrics["step"], metrics["loss"], color="tab:blue", lw=1.5)
    for s in spec.checkpoint_steps:
        ax_loss.axvline(s, color="gray", ls="--", lw=0.8)
    ax_loss.set_yscale("log")
    ax_loss.set_xlabel("step")
    ax_loss.set_ylabel("loss")
    ax_loss.set_title("training loss")

    cmap = plt.get_cmap("viridis")
    denom = max(len(spec.checkpoint_steps) - 1, 1)

    if ax_shape is not None:
        for p in spec.fshape_paths:
            cols = _read_csv(p, ["r", "f"])
            step = _step_of(p)
            pos = spec.checkpoint_steps.index(step) / denom
            ax_shape.plot(cols["r"], cols["f"], color=cmap(pos), lw=1.4, label=f"step {step}")
        ax_shape.set_xlabel("r")
        ax_shape.set_ylabel("f(r)")
        ax_shape.set_title("radial shape of f")
        ax_shape.legend(fontsize=8)

    for p in spec.neurons_paths:
        cols = _read_csv(p, ["w2", "b2"])
        step = _step_of(p)
        pos = spec.checkpoint_steps.index(step) / denom
        ax_scatter.scatter(cols["w2"], cols["b2"], s=12, marker="x",
                           color=cmap(pos), label=f"step {step}")
        ax_scatter.scatter([cols["w2"].mean()], [cols["b2"].mean()], s=60,
                           marker="*", color="black", zorder=3)
    ax_scatter.set_xlabel("w2")
    ax_scatter.set_ylabel("b2")
    ax_scatter.set_title("second-layer neurons")
    if spec.neurons_paths:
        ax_scatter.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=130)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="render_figure", description=__doc__)
    parser.add_argument("run_dir")
    parser.add_argument("--out", default=None)
    parser.add_argument("--max-checkpoints", type=int, default=6)
    args = parser.parse_args(argv)
    try:
        spec = build_spec(args.run_dir, args.out, args.max_checkpoints)
        render(spec)
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"render_figure: {exc}", file=sys.stderr)
        return 1
    print(spec.out_path)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
