"""Sparsity-trend sweeps: delimited tables plus rendered figures."""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .css import build_code_c
from .lifts import cellular_lift, error_matrix, sparse_search


def thread_limit() -> int:
    raw = os.environ.get("LIFTLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LIFTLAB_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def sweep_sparsity(ks, n: int = 1, strategy: str = "greedy",
                   budget: int = 20000, seed: int = 0) -> list[dict]:
    """Best-found correction weight of the cellular lift of code C, per
    fine-end polygon size k."""

    def run(k: int) -> dict:
        code = build_code_c(k=k, n=n)
        lift = cellular_lift(code)
        e = error_matrix(lift)
        rep = sparse_search(code, e, strategy=strategy, budget=budget,
                            seed=seed, instance={"family": "code_c",
                                                 "k": k, "n": n})
        return {"k": k, "n": n, "strategy": strategy, "budget": budget,
                "seed": seed, "objective_best": rep.objective_best,
                "total_weight": rep.secondary_total_weight,
                "verified": rep.verified, "complete": rep.complete}

    workers = thread_limit()
    ks = list(ks)
    if workers == 1:
        return [run(k) for k in ks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, ks))


TREND_FIELDS = ["k", "n", "strategy", "budget", "seed", "objective_best",
                "total_weight", "verified", "complete"]


def write_trend_csv(rows: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=TREND_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def render_trend_png(rows: list[dict], path: str | Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [row["k"] for row in rows]
    obj = [row["objective_best"] for row in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ks, obj, "o-", color="tab:blue")
    ax.set_xlabel("fine-end polygon size k")
    ax.set_ylabel("best max row/col weight")
    ax.set_title("correction sparsity vs resolution")
    ax.set_xticks(ks)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
