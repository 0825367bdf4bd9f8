"""Instructor report rendering: cohort statistics as figures plus a
delimited per-student table.

Writes three files into the output directory: tries_histogram.png (how
many attempts each solver needed), hourly_histogram.png (submissions
over the 24 one-hour intervals of the day) and stats.csv.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def render_assignment_report(stats: dict, outdir) -> list[str]:
    """Write the figures and the CSV; returns the file paths written."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    tries = {int(k): v for k, v in stats["tries_before_success"].items()}
    fig, ax = plt.subplots(figsize=(6, 3.5))
    xs = list(range(1, max(tries, default=1) + 1))
    ax.bar(xs, [tries.get(x, 0) for x in xs], color="#4878a8")
    ax.set_xlabel("submissions until first full score")
    ax.set_ylabel("students")
    ax.set_title(f"Attempts per solver ({stats['solved_count']} solved)")
    ax.set_xticks(xs)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    path = out / "tries_histogram.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(str(path))

    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(range(24), stats["hourly"], color="#4878a8")
    ax.set_xlabel("hour of day")
    ax.set_ylabel("submissions")
    ax.set_title(
        f"Submission times ({stats['submitted_count']}/{stats['roster_size']} "
        "students submitted)"
    )
    ax.set_xticks(range(0, 24, 2))
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    path = out / "hourly_histogram.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(str(path))

    path = out / "stats.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["user_id", "name", "submission_count", "final_score",
             "submission_scores", "submission_times"]
        )
        for row in stats["per_student"]:
            writer.writerow(
                [
                    row["user_id"],
                    row["name"],
                    row["submission_count"],
                    row["final_score"],
                    " ".join(str(s) for s in row["submission_scores"]),
                    " ".join(row["submission_times"]),
                ]
            )
    written.append(str(path))
    return written
