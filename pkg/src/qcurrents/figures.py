"""Matplotlib figure rendering for the CLI report path.

Figures are written next to the delimited output; they are a visual aid
only, all quantitative results live in the CSV/JSON files.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_series_figure",
    "save_profile_figure",
    "save_timeseries_figure",
    "save_sun_figure",
]


def save_series_figure(path, x, named_series, title, ylabel="current"):
    """Real/imaginary parts of one or more complex series over x."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, values in named_series.items():
        values = np.asarray(values)
        ax.plot(x, values.real, label=f"Re {label}")
        if np.max(np.abs(values.imag)) > 1e-14 * max(np.max(np.abs(values)), 1.0):
            ax.plot(x, values.imag, "--", label=f"Im {label}")
    ax.set_xlabel("x")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_profile_figure(path, profiles, x_range, title, labels=None):
    """Step plot of one or more piecewise-constant landscapes."""
    fig, ax = plt.subplots(figsize=(7, 3))
    x = np.linspace(x_range[0], x_range[1], 2000)
    for idx, profile in enumerate(profiles):
        label = labels[idx] if labels else f"V{idx + 1}"
        ax.plot(x, profile.sample(x), drawstyle="steps-post", label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("V(x)")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_timeseries_figure(path, t, named_series, title, ylabel="residual norm"):
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, values in named_series.items():
        ax.plot(t, values, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_sun_figure(path, ks, projection, closed_form, title):
    """Bar comparison of the two coefficient conventions per Cartan index."""
    fig, ax = plt.subplots(figsize=(6, 4))
    width = 0.35
    ks = np.asarray(ks, dtype=float)
    ax.bar(ks - width / 2, projection, width, label="projection")
    ax.bar(ks + width / 2, closed_form, width, label="closed form")
    ax.set_xlabel("k")
    ax.set_ylabel("coefficient")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
