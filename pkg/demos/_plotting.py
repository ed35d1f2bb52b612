"""Tiny helper shared by the demos: save a figure if matplotlib is around."""

from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # plots are optional
    plt = None

OUT = Path("demo_output")


def save(fig, name):
    OUT.mkdir(exist_ok=True)
    fig.savefig(OUT / name, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print(f"wrote {OUT / name}")
