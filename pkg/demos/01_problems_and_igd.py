"""Benchmark problems and the IGD metric.

Instantiates a few scalable benchmarks, evaluates random populations, and
shows how IGD against the analytic Pareto front summarizes approximation
quality.  Run with:  python3 demos/01_problems_and_igd.py
"""

import numpy as np

from igdrift.metrics import igd
from igdrift.problems import (
    PROBLEM_IDS,
    evaluate_population,
    make_problem,
    random_population,
    reference_front,
)


def main():
    print("available problems:", ", ".join(sorted(PROBLEM_IDS)))
    print()

    problem = make_problem("zdt1", 10)
    front = reference_front(problem)
    print(f"{problem.id} n={problem.n}: {problem.m} objectives, "
          f"reference front of {len(front.points)} points")
    print("front endpoints:", front.points[0], front.points[-1])
    print()

    # IGD of ever-larger random populations: more coverage, lower IGD.
    print("population size vs IGD of a random population (zdt1, n=10):")
    for size in (10, 100, 1000):
        pop = random_population(problem, size, seed=0)
        objs = evaluate_population(problem, pop)
        print(f"  size {size:>5}: igd = {igd(objs, front):.4f}")
    print()

    # A population sitting exactly on the front scores (near) zero.
    on_front = igd(front.points, front)
    print(f"igd of the front against itself: {on_front:.1e}")
    print()

    print("initial random-population IGD across problems (n=10, pop 100):")
    for pid in sorted(PROBLEM_IDS):
        prob = make_problem(pid, 10)
        pop = random_population(prob, 100, seed=1)
        value = igd(evaluate_population(prob, pop), reference_front(prob))
        print(f"  {pid:>10}: {value:8.4f}")


if __name__ == "__main__":
    main()
