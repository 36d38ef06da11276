import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, Iterable, List

import numpy as np
import pandas as pd

from .checks import _run_checks
from .definitions import describe_cols, rule_count_keys, survey_cols, survey_group_cols
from .generators import PlantedInstance
from .maxroot import max_root_exact
from .minroot import min_square_root
from .rules import kernel_vertex_bound

logger = logging.getLogger(__name__)

default_kwargs: Dict[str, Any] = {
    "n_interval": 10,
    "raw": False,
    "include_max": False,
    "drop_nan": True,
    "jobs": 1,
}


def _solve_row(args: Any) -> Dict[str, Any]:
    """Run the minimum-root pipeline on one planted instance; top level for pickling."""
    instance, include_max = args
    g, k = instance.square, instance.k_true
    solution = min_square_root(g, k)
    counts = dict.fromkeys(rule_count_keys, 0)
    kernel_vertices = np.nan
    if solution is not None and solution.trace is not None:
        counts = solution.trace.rule_counts()
        kernel_vertices = solution.counters.get("kernel_vertices", np.nan)
    row = {
        "n": g.n,
        "m": g.m,
        "k": k,
        "answer": solution is not None,
        "root_edges": solution.edge_count if solution is not None else np.nan,
        "kernel_vertices": kernel_vertices,
        "kernel_bound": kernel_vertex_bound(k) if k >= 1 else np.nan,
        **counts,
    }
    if include_max:
        best = max_root_exact(g)
        row["max_root_edges"] = best.edge_count if best is not None else np.nan
    return row


def _cut_by_n(data: pd.DataFrame, n_interval: int) -> pd.DataFrame:
    """Categorize runs into vertex-count intervals for grouping."""
    upper = int(data["n"].max()) + n_interval
    data["n_range"] = pd.cut(data["n"], list(range(0, upper + 1, n_interval)))
    return data


def _group_by_intervals(data: pd.DataFrame, drop_na: bool) -> pd.DataFrame:
    """Group runs by intervals and describe the kernel sizes."""
    grouped = data.groupby(survey_group_cols, observed=True)["kernel_vertices"].describe()
    if drop_na:
        subset = [col for col in describe_cols if col != "count"]
        grouped = grouped.dropna(subset=subset, how="all")
    return grouped


def survey(instances: Iterable[PlantedInstance], **kwargs: Any) -> pd.DataFrame:
    """
    Run the minimum-root pipeline over planted instances and summarize it.

    Args:
        instances: Planted instances, solved at their planted budget
        n_interval: Width of the vertex-count buckets
        raw: Return one row per instance instead of grouped statistics
        include_max: Also record the maximum root size of each square
        drop_nan: Drop groups whose kernel statistics are all missing
        jobs: Worker processes; output order follows input order

    Returns:
        DataFrame of per-instance rows or of kernel-size statistics grouped
        by vertex-count interval and k
    """
    params = {**default_kwargs, **kwargs}
    _run_checks(params)
    tasks = [(instance, params["include_max"]) for instance in instances]
    if params["jobs"] > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=params["jobs"]) as pool:
            rows = list(pool.map(_solve_row, tasks))
    else:
        rows = [_solve_row(t) for t in tasks]
    logger.info("surveyed %d instances", len(rows))

    cols: List[str] = survey_cols + (["max_root_edges"] if params["include_max"] else [])
    data = pd.DataFrame(rows, columns=cols)
    if params["raw"] or data.empty:
        return data.reset_index(drop=True)
    return (
        data.pipe(_cut_by_n, params["n_interval"])
        .pipe(_group_by_intervals, params["drop_nan"])
        .reset_index()
    )
