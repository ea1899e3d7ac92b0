"""Concrete search problems: resource-constrained scheduling over activity
lists and time-cost trade-off over option-index vectors."""

from __future__ import annotations

import random

from .model import ModeVector, ProjectNetwork, TctpInstance
from .rcpsp import is_precedence_feasible, random_activity_list, serial_sgs
from .search import (
    Move,
    SearchProblem,
    neighbor_mode_change,
    neighbor_swap,
    order_crossover,
    repair_precedence,
)


def rcpsp_problem(net: ProjectNetwork, capacity: int) -> SearchProblem:
    """Makespan minimization over precedence-feasible activity lists decoded
    by the serial schedule-generation scheme."""
    n = len(net.activities)
    direct_preds = {aid: net.predecessors.get(aid, frozenset()) for aid in net.ids}

    def evaluate(order: tuple) -> tuple[float, int, int]:
        makespan = serial_sgs(net, capacity, order).makespan
        return float(makespan), makespan, 0

    def neighborhood(order: tuple) -> list[Move]:
        moves = []
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            if a in direct_preds[b]:
                continue
            swapped = list(order)
            swapped[i], swapped[i + 1] = b, a
            pair = frozenset((a, b))
            moves.append(Move(tabu_key=pair, store_key=pair, candidate=tuple(swapped)))
        return moves

    def crossover(p1: tuple, p2: tuple, rng: random.Random) -> tuple:
        cut1 = rng.randrange(n)
        cut2 = rng.randrange(cut1 + 1, n + 1)
        return repair_precedence(net, order_crossover(p1, p2, cut1, cut2))

    def mutate(order: tuple, rate: float, rng: random.Random) -> tuple:
        out = list(order)
        for i in range(n - 1):
            if rng.random() < rate and out[i] not in direct_preds[out[i + 1]]:
                out[i], out[i + 1] = out[i + 1], out[i]
        return tuple(out)

    return SearchProblem(
        kind="rcpsp",
        size=n,
        initial=lambda rng: random_activity_list(net, rng),
        evaluate=evaluate,
        neighbor=lambda order, rng: neighbor_swap(net, order, rng),
        neighborhood=neighborhood,
        crossover=crossover,
        mutate=mutate,
        is_feasible=lambda order: is_precedence_feasible(net, order),
    )


def tctp_problem(instance: TctpInstance, indirect_cost: int | None = None) -> SearchProblem:
    """Total-cost minimization over 1-based option-index vectors.

    Candidates align with the instance's activity order; the forward pass is
    inlined over precomputed index arrays so a fitness call is cheap enough
    for large evaluation budgets.
    """
    if indirect_cost is None:
        indirect_cost = instance.indirect_cost_per_day
    ids = list(instance.network.ids)
    index_of = {aid: i for i, aid in enumerate(ids)}
    n = len(ids)
    option_durations = [
        tuple(o.duration for o in instance.options[aid]) for aid in ids
    ]
    option_costs = [
        tuple(o.direct_cost for o in instance.options[aid]) for aid in ids
    ]
    option_counts = tuple(len(instance.options[aid]) for aid in ids)
    topo = [index_of[aid] for aid in instance.network.topological_order()]
    preds_idx = [
        [index_of[p] for p in instance.network.predecessors.get(aid, ())] for aid in ids
    ]

    def evaluate(modes: tuple) -> tuple[float, int, int]:
        finish = [0] * n
        for i in topo:
            start = 0
            for p in preds_idx[i]:
                if finish[p] > start:
                    start = finish[p]
            finish[i] = start + option_durations[i][modes[i] - 1]
        duration = max(finish)
        direct = sum(option_costs[i][modes[i] - 1] for i in range(n))
        return float(duration * indirect_cost + direct), duration, direct

    def initial(rng: random.Random) -> tuple:
        return tuple(rng.randrange(1, count + 1) for count in option_counts)

    def neighborhood(modes: tuple) -> list[Move]:
        moves = []
        for i in range(n):
            for idx in range(1, option_counts[i] + 1):
                if idx == modes[i]:
                    continue
                changed = list(modes)
                changed[i] = idx
                moves.append(
                    Move(
                        tabu_key=(ids[i], idx),
                        store_key=(ids[i], modes[i]),
                        candidate=tuple(changed),
                    )
                )
        return moves

    def crossover(p1: tuple, p2: tuple, rng: random.Random) -> tuple:
        return tuple(p1[i] if rng.random() < 0.5 else p2[i] for i in range(n))

    def mutate(modes: tuple, rate: float, rng: random.Random) -> tuple:
        out = list(modes)
        for i in range(n):
            if rng.random() < rate:
                out[i] = rng.randrange(1, option_counts[i] + 1)
        return tuple(out)

    def is_feasible(modes: tuple) -> bool:
        return len(modes) == n and all(
            1 <= modes[i] <= option_counts[i] for i in range(n)
        )

    return SearchProblem(
        kind="tctp",
        size=n,
        initial=initial,
        evaluate=evaluate,
        neighbor=lambda modes, rng: neighbor_mode_change(option_counts, modes, rng),
        neighborhood=neighborhood,
        crossover=crossover,
        mutate=mutate,
        is_feasible=is_feasible,
    )


def modes_to_vector(instance: TctpInstance, candidate: tuple) -> ModeVector:
    """Convert a search candidate back into a per-activity mode vector."""
    return ModeVector(dict(zip(instance.network.ids, candidate)))


def vector_to_modes(instance: TctpInstance, modes: ModeVector) -> tuple:
    return tuple(modes.choices[aid] for aid in instance.network.ids)
