"""
Статические SVG-рисунки через объектный API matplotlib (без pyplot, можно строить из потоков).

Фиксированная хэш-соль и пустая дата делают файлы побайтно воспроизводимыми.
"""

from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

matplotlib.rcParams["svg.hashsalt"] = "sign-changing-helmholtz"
matplotlib.rcParams["svg.fonttype"] = "path"


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def plot_profiles(path: Path, x: np.ndarray, profiles: dict[str, np.ndarray], title: str) -> Path:
    fig = Figure(figsize=(8, 4))
    ax = fig.subplots()
    for label, values in profiles.items():
        ax.plot(x, values, linewidth=1.2, label=label)
    ax.axvline(0.0, color="grey", linestyle=":", linewidth=0.8)
    ax.set_xlabel("x")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_bifurcation_diagram(path: Path, branches: dict[int, tuple[np.ndarray, np.ndarray]]) -> Path:
    fig = Figure(figsize=(8, 5))
    ax = fig.subplots()
    ax.axhline(0.0, color="black", linewidth=1.0)
    for seed_index, (lams, norms) in sorted(branches.items()):
        ax.plot(lams, norms, "o-", markersize=2, linewidth=1.0, label=f"C_{seed_index}")
    ax.set_xlabel("lambda")
    ax.set_ylabel("||u||_c")
    ax.set_title("Bifurcation diagram")
    ax.grid(True, alpha=0.3)
    if branches:
        ax.legend()
    return _save(fig, path)


def plot_riesz_sweep(path: Path, sweeps: dict[float, tuple[np.ndarray, np.ndarray, np.ndarray]]) -> Path:
    fig = Figure(figsize=(11, 4))
    ax_max, ax_min = fig.subplots(1, 2)
    for sigma_minus, (lambdas, min_eigs, max_eigs) in sorted(sweeps.items()):
        ax_max.plot(lambdas, max_eigs, "o-", markersize=3, label=f"sigma_- = {sigma_minus:g}")
        ax_min.plot(lambdas, min_eigs, "o-", markersize=3, label=f"sigma_- = {sigma_minus:g}")
    for ax, title in ((ax_max, "max eigenvalue of M_Lambda"), (ax_min, "min eigenvalue of M_Lambda")):
        ax.set_xscale("log")
        ax.set_xlabel("Lambda")
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    return _save(fig, path)


def plot_weyl(path: Path, lambdas: np.ndarray, counts: np.ndarray, slope: float, fitted: float) -> Path:
    roots = np.sqrt(np.asarray(lambdas, dtype=float))
    fig = Figure(figsize=(7, 5))
    ax = fig.subplots()
    ax.step(roots, counts, where="post", label="count(Lambda)")
    ax.plot(roots, slope * roots, "--", label=f"asymptotic slope {slope:.4f}")
    ax.plot(roots, fitted * roots, ":", label=f"M = {fitted:.4f}")
    ax.set_xlabel("sqrt(Lambda)")
    ax.set_ylabel("count")
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _save(fig, path)
