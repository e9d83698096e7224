#!/usr/bin/env python3
"""Quick-look plots for a quadftc trajectory CSV."""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit("usage: plot_trajectory.py TRAJECTORY_CSV [OUT_PNG]")
    df = pd.read_csv(sys.argv[1])
    out = sys.argv[2] if len(sys.argv) > 2 else sys.argv[1].replace(".csv", ".png")

    fig, axes = plt.subplots(4, 1, figsize=(10, 11), sharex=True)
    axes[0].plot(df.t, -df.zn)
    axes[0].set_ylabel("altitude [m]")
    axes[1].plot(df.t, df.r, label="r")
    axes[1].plot(df.t, df.p, label="p", alpha=0.6)
    axes[1].plot(df.t, df.q, label="q", alpha=0.6)
    axes[1].set_ylabel("rates [rad/s]")
    axes[1].legend(loc="upper right")
    for i in (1, 2, 3, 4):
        axes[2].plot(df.t, df[f"omega{i}"], label=f"rotor {i}", alpha=0.7)
    axes[2].set_ylabel("omega [rad/s]")
    axes[2].legend(loc="upper right")
    axes[3].plot(df.t, df.reward)
    axes[3].set_ylabel("reward")
    axes[3].set_xlabel("t [s]")
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
