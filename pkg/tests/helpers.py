"""Independent oracles and generators shared across test modules.

The oracles deliberately avoid the library's code paths: plain Python sums
and scans only, so agreement with the library is evidence, not tautology.
"""

from itertools import combinations
import random

from chainmeter import PaymentGraph

COVERAGE_TOL = 1e-9


def oracle_level(weights, epsilon):
    """Brute-force centralization level: sort descending, re-sum each prefix."""
    ordered = sorted(weights, reverse=True)
    total = sum(ordered)
    for n in range(1, len(ordered) + 1):
        covered = sum(ordered[:n])  # re-summed from scratch on purpose
        if covered / total >= (1.0 - epsilon) - COVERAGE_TOL:
            return n
    return len(ordered)


def random_distribution(rng: random.Random, max_producers: int = 20):
    """Random (id, weight) pairs; at least one strictly positive weight."""
    n = rng.randint(1, max_producers)
    while True:
        weights = [rng.choice([0.0, rng.uniform(0.01, 100.0), float(rng.randint(1, 1000))]) for _ in range(n)]
        if sum(weights) > 0:
            return [(f"p{i:03d}", w) for i, w in enumerate(weights)]


def all_payment_graphs(max_clients: int):
    """Every non-empty payment graph on 2..max_clients labelled clients."""
    for n in range(2, max_clients + 1):
        clients = [f"c{i}" for i in range(n)]
        pairs = list(combinations(clients, 2))
        for mask in range(1, 2 ** len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            yield PaymentGraph(
                clients=frozenset(clients),
                payments=tuple((a, b, 1) for a, b in chosen),
            )
