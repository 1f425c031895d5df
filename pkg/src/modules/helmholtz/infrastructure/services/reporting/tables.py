from pathlib import Path

import numpy as np
import pandas as pd

from src.modules.helmholtz.domain.entities.branch import Branch
from src.modules.helmholtz.domain.entities.medium import EigenPair
from src.modules.helmholtz.domain.entities.mesh import Mesh

SPECTRUM_COLUMNS = ["j", "lambda", "tau", "alpha", "zeros_minus", "zeros_plus"]
BRANCH_COLUMNS = [
    "branch_id",
    "step",
    "lambda",
    "l2c_norm",
    "h_norm",
    "energy",
    "zeros_minus",
    "zeros_plus",
    "plateau_value",
]
RIESZ_COLUMNS = ["Lambda", "dim", "min_eig", "max_eig", "sigma_minus"]
WEYL_COLUMNS = ["Lambda", "count", "sqrt_lambda_slope"]
COERCIVITY_COLUMNS = ["m", "k", "min_eig", "pass"]


def _write(df: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    return path


def spectrum_frame(pairs: list[EigenPair], zeros: list[tuple[int, int]]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "j": [p.index for p in pairs],
            "lambda": [p.lam for p in pairs],
            "tau": [p.tau for p in pairs],
            "alpha": [p.alpha for p in pairs],
            "zeros_minus": [z[0] for z in zeros],
            "zeros_plus": [z[1] for z in zeros],
        },
        columns=SPECTRUM_COLUMNS,
    )


def write_spectrum(path: Path, pairs: list[EigenPair], zeros: list[tuple[int, int]]) -> Path:
    return _write(spectrum_frame(pairs, zeros), path)


def write_profile(path: Path, x: np.ndarray, values: np.ndarray) -> Path:
    return _write(pd.DataFrame({"x": x, "phi": values}), path)


def branch_frame(branch_id: int, branch: Branch) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "branch_id": branch_id,
                "step": step,
                "lambda": p.lam,
                "l2c_norm": p.l2c_norm,
                "h_norm": p.h_norm,
                "energy": p.energy,
                "zeros_minus": p.zeros_minus,
                "zeros_plus": p.zeros_plus,
                "plateau_value": np.nan if p.plateau is None else p.plateau,
            }
            for step, p in enumerate(branch.points)
        ],
        columns=BRANCH_COLUMNS,
    )


def write_branch(path: Path, branch_id: int, branch: Branch) -> Path:
    return _write(branch_frame(branch_id, branch), path)


def write_branch_vectors(path: Path, mesh: Mesh, branch: Branch) -> Path:
    """Коэффициенты u каждой точки: столбец x внутренних узлов и по столбцу на шаг."""
    columns = {"x": mesh.interior_nodes}
    columns.update({f"step_{step}": p.u for step, p in enumerate(branch.points)})
    return _write(pd.DataFrame(columns), path)


def read_branch_vectors(path: Path) -> dict[int, np.ndarray]:
    df = pd.read_csv(path)
    return {
        int(name.removeprefix("step_")): df[name].to_numpy(dtype=float)
        for name in df.columns
        if name.startswith("step_")
    }


def write_riesz(path: Path, rows) -> Path:
    return _write(
        pd.DataFrame([{c: getattr(r, c) for c in RIESZ_COLUMNS} for r in rows], columns=RIESZ_COLUMNS),
        path,
    )


def write_weyl(path: Path, lambdas: list[float], counts: list[int]) -> Path:
    df = pd.DataFrame({"Lambda": lambdas, "count": counts}, columns=["Lambda", "count"])
    df["sqrt_lambda_slope"] = df["count"] / np.sqrt(df["Lambda"])
    return _write(df[WEYL_COLUMNS], path)


def write_coercivity(path: Path, results) -> Path:
    return _write(
        pd.DataFrame(
            [{"m": r.m, "k": r.k, "min_eig": r.min_eig, "pass": r.passed} for r in results],
            columns=COERCIVITY_COLUMNS,
        ),
        path,
    )
