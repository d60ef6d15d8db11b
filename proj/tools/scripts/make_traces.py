"""Writes the synthetic dirty-fraction traces in data/traces/."""

import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[2] / "data" / "traces"


def write(name, gen, seed, n=120):
    rng = random.Random(seed)
    with open(OUT / f"{name}.csv", "w") as f:
        f.write(f"# synthetic {name} dirty-fraction trace, {n} windows at 60 Hz\n")
        f.write("window_index,dirty_fraction\n")
        for i in range(n):
            f.write(f"{i},{gen(rng, i):.4f}\n")


def productivity(rng, i):
    if rng.random() < 0.25:
        return 0.0
    if rng.random() < 0.1:
        return min(1.0, rng.uniform(0.2, 0.6))
    return rng.uniform(0.002, 0.03)


if __name__ == "__main__":
    # Mostly full redraws.
    write("gaming", lambda r, i: min(1.0, max(0.55, r.gauss(0.85, 0.12))), seed=11)
    # Video tiles over mostly static chrome.
    write("conferencing", lambda r, i: min(1.0, max(0.05, r.gauss(0.35, 0.08))), seed=12)
    # Caret blinks and typing, often idle.
    write("productivity", productivity, seed=13)
