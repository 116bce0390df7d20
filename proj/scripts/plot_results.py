#!/usr/bin/env python3
# Copyright 2026 The Dismagick Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plots the CSV files written by the dismagick CLI.

  plot_results.py bench data/random_bench_aggregate.csv -o bench.png
  plot_results.py heisenberg data/heisenberg_L20_D4.csv -o heisenberg.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

SCHEMA = "# dismagick-csv v1"


def read_csv(path):
    with open(path) as f:
        first = f.readline().rstrip("\n")
    if first != SCHEMA:
        raise SystemExit(f"{path}: expected '{SCHEMA}' header, got '{first}'")
    return pd.read_csv(path, comment="#")


def plot_bench(df, out):
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharex=True)
    for strategy, g in df.groupby("strategy", sort=False):
        for ax, col in zip(axes, ("m2", "ee")):
            mean, std = g[f"{col}_mean"], g[f"{col}_std"]
            ax.plot(g["sweep"], mean, marker="o", ms=3, label=strategy)
            ax.fill_between(g["sweep"], mean - std, mean + std, alpha=0.2)
    axes[0].set_ylabel("$M_2$")
    axes[1].set_ylabel("half-chain EE (bits)")
    for ax in axes:
        ax.set_xlabel("sweep")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def plot_heisenberg(df, out):
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), sharex=True)
    axes[0].errorbar(df["sweep"], df["m2"], yerr=df["m2_stderr"], marker="o", ms=3)
    axes[0].set_ylabel("sampled $M_2$")
    axes[1].plot(df["sweep"], df["ee_mean"], marker="o", ms=3)
    axes[1].set_ylabel("mean bond EE (bits)")
    axes[2].semilogy(df["sweep"], df["relative_error"], marker="o", ms=3)
    axes[2].set_ylabel("relative energy error")
    for ax in axes:
        ax.set_xlabel("sweep")
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("kind", choices=("bench", "heisenberg"))
    parser.add_argument("csv")
    parser.add_argument("-o", "--output", default=None)
    args = parser.parse_args()
    df = read_csv(args.csv)
    out = args.output or args.csv.rsplit(".", 1)[0] + ".png"
    (plot_bench if args.kind == "bench" else plot_heisenberg)(df, out)
    print(out)


if __name__ == "__main__":
    main()
