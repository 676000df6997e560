"""Delimited output and figures for corpus verification runs."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_report(results: list[dict], report_dir) -> list[str]:
    """Write results.csv and summary figures; returns the file names."""
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "results.csv"
    fields = [
        "spec",
        "order",
        "tag",
        "predicted",
        "computed",
        "kernel_rank",
        "status",
        "seconds",
    ]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=fields)
        w.writeheader()
        for r in results:
            w.writerow({k: r.get(k, "") for k in fields})
    written.append(csv_path.name)

    done = [r for r in results if r.get("order")]

    fig, ax = plt.subplots(figsize=(8, 4.5))
    tags = sorted({r["tag"] for r in done})
    counts = [sum(1 for r in done if r["tag"] == t) for t in tags]
    ax.bar(tags, counts, color="steelblue")
    ax.set_ylabel("groups")
    ax.set_title("classification outcomes over the corpus")
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    p = out / "classification_counts.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    written.append(p.name)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    ok = [r for r in done if r["status"] == "pass"]
    bad = [r for r in done if r["status"] != "pass"]
    ax.scatter(
        [r["order"] for r in ok], [r["seconds"] for r in ok], s=18, label="pass"
    )
    if bad:
        ax.scatter(
            [r["order"] for r in bad],
            [r["seconds"] for r in bad],
            s=24,
            color="crimson",
            label="fail",
        )
        ax.legend()
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("group order")
    ax.set_ylabel("seconds")
    ax.set_title("verification time by group order")
    fig.tight_layout()
    p = out / "runtime_by_order.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    written.append(p.name)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    ranks = [r["kernel_rank"] for r in done if r.get("kernel_rank") != ""]
    if ranks:
        ax.hist(ranks, bins=range(0, max(ranks) + 2), color="darkseagreen",
                edgecolor="black", align="left")
    ax.set_xlabel("rank of the relation lattice")
    ax.set_ylabel("groups")
    ax.set_title("relation lattice ranks over the corpus")
    fig.tight_layout()
    p = out / "kernel_ranks.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    written.append(p.name)

    return written
