"""Simulated annealing, tabu search, and a generational genetic algorithm
behind one problem abstraction.

Every run is a pure function of (problem, config, seed): a single explicit
`random.Random(seed)` drives all randomness, fitness is counted per call, and
the best-so-far trajectory plus a non-dominated archive of every evaluated
candidate are recorded.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .model import ProjectNetwork
from .tctp import ParetoArchive, ParetoPoint, archive_insert

Candidate = tuple


@dataclass(frozen=True)
class SaConfig:
    initial_temperature: float | None = None  # auto-calibrated when unset
    cooling_factor: float = 0.95
    steps_per_temperature: int = 50
    max_evaluations: int = 20_000

    def __post_init__(self):
        if self.initial_temperature is not None and self.initial_temperature <= 0:
            raise ValueError("initial_temperature must be positive")
        if not 0 < self.cooling_factor < 1:
            raise ValueError("cooling_factor must be in (0, 1)")
        if self.steps_per_temperature < 1 or self.max_evaluations < 1:
            raise ValueError("steps_per_temperature and max_evaluations must be positive")


@dataclass(frozen=True)
class TsConfig:
    tabu_tenure: int = 7
    neighborhood_sample: int | str = "full"
    max_evaluations: int = 20_000
    stagnation_limit: int = 30  # iterations without improvement before diversifying
    record_moves: bool = False

    def __post_init__(self):
        if self.tabu_tenure < 1 or self.max_evaluations < 1:
            raise ValueError("tabu_tenure and max_evaluations must be positive")
        if self.neighborhood_sample != "full" and (
            not isinstance(self.neighborhood_sample, int) or self.neighborhood_sample < 1
        ):
            raise ValueError("neighborhood_sample must be 'full' or a positive integer")


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 50
    crossover_rate: float = 0.9
    mutation_rate: float | None = None  # defaults to 1/n per gene
    tournament_size: int = 2
    elitism_count: int = 1
    max_evaluations: int = 20_000

    def __post_init__(self):
        if self.population_size < 1 or self.max_evaluations < 1:
            raise ValueError("population_size and max_evaluations must be positive")
        if not 0 <= self.crossover_rate <= 1:
            raise ValueError("crossover_rate must be in [0, 1]")
        if self.mutation_rate is not None and not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be >= 2")
        if not 0 <= self.elitism_count < self.population_size:
            raise ValueError("elitism_count must be in [0, population_size)")


@dataclass(frozen=True)
class Move:
    """A tabu-search move: the candidate it leads to, the key checked against
    the tabu list, and the key stored when the move is applied."""

    tabu_key: tuple | frozenset
    store_key: tuple | frozenset
    candidate: Candidate


@dataclass(frozen=True)
class SearchProblem:
    """One optimization problem: representation, variation, and evaluation.

    `evaluate` returns (fitness, duration, cost); fitness is minimized and
    duration/cost feed the visited-solution archive. `mutate` takes a
    per-gene rate so the GA default of 1/size needs no problem knowledge.
    """

    kind: str  # "rcpsp" | "tctp"
    size: int
    initial: Callable[[random.Random], Candidate]
    evaluate: Callable[[Candidate], tuple[float, int, int]]
    neighbor: Callable[[Candidate, random.Random], Candidate]
    neighborhood: Callable[[Candidate], list[Move]]
    crossover: Callable[[Candidate, Candidate, random.Random], Candidate]
    mutate: Callable[[Candidate, float, random.Random], Candidate]
    is_feasible: Callable[[Candidate], bool]

    def fitness(self, candidate: Candidate) -> float:
        return self.evaluate(candidate)[0]


@dataclass(frozen=True)
class RunResult:
    algorithm: str
    seed: int
    best: Candidate
    best_fitness: float
    best_duration: int
    best_cost: int  # direct cost for TCTP, 0 for RCPSP
    evaluations_used: int
    native_iterations: int
    trajectory: tuple[tuple[int, float], ...]  # (evaluation index, best-so-far)
    archive: ParetoArchive
    move_log: tuple = ()


class _Tracker:
    """Counts evaluations, tracks the best-ever candidate and trajectory, and
    archives every evaluated candidate's (duration, cost) point."""

    def __init__(self, problem: SearchProblem, max_evaluations: int):
        self.problem = problem
        self.max_evaluations = max_evaluations
        self.evaluations = 0
        self.best: Candidate | None = None
        self.best_fitness = math.inf
        self.best_duration = 0
        self.best_cost = 0
        self.trajectory: list[tuple[int, float]] = []
        self.archive = ParetoArchive()

    @property
    def remaining(self) -> int:
        return self.max_evaluations - self.evaluations

    def evaluate(self, candidate: Candidate) -> float:
        fitness, duration, cost = self.problem.evaluate(candidate)
        self.evaluations += 1
        if fitness < self.best_fitness:
            self.best = candidate
            self.best_fitness = fitness
            self.best_duration = duration
            self.best_cost = cost
            self.trajectory.append((self.evaluations, fitness))
        # Cheap dominance pre-check avoids allocating a point for the common
        # case of a visited solution the archive already covers.
        if not any(
            p.duration <= duration and p.cost <= cost for p in self.archive.points
        ):
            self.archive = archive_insert(
                self.archive, ParetoPoint(duration=duration, cost=cost, modes=candidate)
            )
        return fitness

    def result(self, algorithm: str, seed: int, native_iterations: int, move_log=()) -> RunResult:
        return RunResult(
            algorithm=algorithm,
            seed=seed,
            best=self.best,
            best_fitness=self.best_fitness,
            best_duration=self.best_duration,
            best_cost=self.best_cost,
            evaluations_used=self.evaluations,
            native_iterations=native_iterations,
            trajectory=tuple(self.trajectory),
            archive=self.archive,
            move_log=tuple(move_log),
        )


def sa_accept_probability(delta: float, temperature: float) -> float:
    """Acceptance probability for a fitness change at a given temperature:
    1 for improving moves, exp(-delta/temperature) for worsening ones."""
    if temperature <= 0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    if delta <= 0:
        return 1.0
    exponent = -delta / temperature
    if exponent < -745:  # exp underflow threshold
        return 0.0
    return math.exp(exponent)


def run_sa(problem: SearchProblem, config: SaConfig, seed: int) -> RunResult:
    rng = random.Random(seed)
    tracker = _Tracker(problem, config.max_evaluations)
    current = problem.initial(rng)
    f_cur = tracker.evaluate(current)

    temperature = config.initial_temperature
    if temperature is None:
        temperature = _calibrate_temperature(problem, tracker, current, f_cur, rng)

    steps = 0
    while tracker.remaining > 0:
        candidate = problem.neighbor(current, rng)
        f_new = tracker.evaluate(candidate)
        if rng.random() < sa_accept_probability(f_new - f_cur, temperature):
            current, f_cur = candidate, f_new
        steps += 1
        if steps % config.steps_per_temperature == 0:
            temperature = max(temperature * config.cooling_factor, 1e-12)
    return tracker.result("sa", seed, native_iterations=steps)


def _calibrate_temperature(
    problem: SearchProblem,
    tracker: _Tracker,
    start: Candidate,
    f_start: float,
    rng: random.Random,
    samples: int = 100,
    target_acceptance: float = 0.8,
) -> float:
    """Pick a starting temperature that would accept ~80% of sampled
    worsening moves from the initial candidate."""
    worsening: list[float] = []
    for _ in range(min(samples, tracker.remaining)):
        neighbor = problem.neighbor(start, rng)
        delta = tracker.evaluate(neighbor) - f_start
        if delta > 0:
            worsening.append(delta)
    if not worsening:
        return 1.0
    mean_delta = sum(worsening) / len(worsening)
    return max(mean_delta / -math.log(target_acceptance), 1e-9)


def run_ts(problem: SearchProblem, config: TsConfig, seed: int) -> RunResult:
    rng = random.Random(seed)
    tracker = _Tracker(problem, config.max_evaluations)
    current = problem.initial(rng)
    tracker.evaluate(current)

    tabu_until: dict = {}
    frequency: Counter = Counter()
    move_log: list[tuple] = []
    iteration = 0
    last_improvement = 0
    while tracker.remaining > 0:
        iteration += 1
        best_before = tracker.best_fitness
        moves = problem.neighborhood(current)
        if not moves:
            break
        if config.neighborhood_sample != "full" and len(moves) > config.neighborhood_sample:
            moves = rng.sample(moves, config.neighborhood_sample)
        scored: list[tuple[float, int, Move]] = []
        for i, move in enumerate(moves):
            if tracker.remaining <= 0:
                break
            scored.append((tracker.evaluate(move.candidate), i, move))
        if not scored:
            break
        scored.sort(key=lambda item: (item[0], item[1]))

        chosen = None
        chosen_fitness = math.inf
        was_tabu = aspirated = fallback = False
        for fitness, _, move in scored:
            tabu = tabu_until.get(move.tabu_key, 0) >= iteration
            if not tabu:
                chosen, chosen_fitness, was_tabu = move, fitness, False
                break
            if fitness < best_before:  # aspiration: beats the global best
                chosen, chosen_fitness, was_tabu, aspirated = move, fitness, True, True
                break
        if chosen is None:  # everything tabu and nothing aspires: take the best anyway
            chosen_fitness, _, chosen = scored[0]
            was_tabu, fallback = True, True

        current = chosen.candidate
        tabu_until[chosen.store_key] = iteration + config.tabu_tenure
        frequency[chosen.store_key] += 1
        if config.record_moves:
            move_log.append(
                (iteration, chosen.store_key, chosen.tabu_key, was_tabu, aspirated, fallback, chosen_fitness)
            )

        if tracker.best_fitness < best_before:
            last_improvement = iteration
        elif iteration - last_improvement >= config.stagnation_limit:
            current = _diversify(problem, tracker, current, frequency, rng)
            last_improvement = iteration
    return tracker.result("ts", seed, native_iterations=iteration, move_log=move_log)


def _diversify(
    problem: SearchProblem,
    tracker: _Tracker,
    current: Candidate,
    frequency: Counter,
    rng: random.Random,
    kick_moves: int = 3,
) -> Candidate:
    """Frequency-based kick: walk along the least-used move attributes to push
    the trajectory into rarely visited territory."""
    for _ in range(kick_moves):
        moves = problem.neighborhood(current)
        if not moves:
            break
        least = min(range(len(moves)), key=lambda i: (frequency[moves[i].store_key], i))
        chosen = moves[least]
        frequency[chosen.store_key] += 1
        current = chosen.candidate
    if tracker.remaining > 0:
        tracker.evaluate(current)
    return current


def run_ga(problem: SearchProblem, config: GaConfig, seed: int) -> RunResult:
    rng = random.Random(seed)
    tracker = _Tracker(problem, config.max_evaluations)
    rate = config.mutation_rate if config.mutation_rate is not None else 1.0 / problem.size

    population: list[tuple[float, Candidate]] = []
    while len(population) < config.population_size and tracker.remaining > 0:
        candidate = problem.initial(rng)
        population.append((tracker.evaluate(candidate), candidate))

    generations = 0
    while tracker.remaining > 0 and population:
        generations += 1
        population.sort(key=lambda item: item[0])
        next_population = population[: config.elitism_count]
        offspring: list[tuple[float, Candidate]] = []
        while (
            len(next_population) + len(offspring) < config.population_size
            and tracker.remaining > 0
        ):
            parent1 = _tournament(population, config.tournament_size, rng)
            parent2 = _tournament(population, config.tournament_size, rng)
            if rng.random() < config.crossover_rate:
                child = problem.crossover(parent1, parent2, rng)
            else:
                child = parent1
            child = problem.mutate(child, rate, rng)
            offspring.append((tracker.evaluate(child), child))
        population = next_population + offspring
    return tracker.result("ga", seed, native_iterations=generations)


def _tournament(
    population: list[tuple[float, Candidate]], size: int, rng: random.Random
) -> Candidate:
    picks = [population[rng.randrange(len(population))] for _ in range(size)]
    return min(picks, key=lambda item: item[0])[1]


# ---------------------------------------------------------------------------
# Variation operators


def order_crossover(
    parent1: tuple, parent2: tuple, cut1: int, cut2: int
) -> tuple:
    """Order crossover (OX) without feasibility repair.

    The child keeps parent1's segment [cut1, cut2); the remaining positions,
    taken in index order, receive the absent ids in the order they appear in
    parent2. Precedence repair is the caller's job.
    """
    n = len(parent1)
    if not 0 <= cut1 < cut2 <= n:
        raise ValueError(f"invalid cuts ({cut1}, {cut2}) for length {n}")
    if set(parent1) != set(parent2) or len(set(parent1)) != n:
        raise ValueError("parents must be permutations of the same id set")
    segment = set(parent1[cut1:cut2])
    filler = iter(x for x in parent2 if x not in segment)
    child = [
        parent1[i] if cut1 <= i < cut2 else next(filler) for i in range(n)
    ]
    return tuple(child)


def repair_precedence(net: ProjectNetwork, order: tuple) -> tuple:
    """Stable topological reinsertion: among ready activities, always emit the
    one appearing earliest in the given order."""
    position = {aid: i for i, aid in enumerate(order)}
    indegree = {aid: len(net.predecessors.get(aid, ())) for aid in order}
    followers: dict = {aid: [] for aid in order}
    for aid in order:
        for p in net.predecessors.get(aid, ()):
            followers[p].append(aid)
    ready = [position[aid] for aid, deg in indegree.items() if deg == 0]
    heapq.heapify(ready)
    repaired: list = []
    while ready:
        pick = order[heapq.heappop(ready)]
        repaired.append(pick)
        for follower in followers[pick]:
            indegree[follower] -= 1
            if indegree[follower] == 0:
                heapq.heappush(ready, position[follower])
    return tuple(repaired)


def neighbor_swap(
    net: ProjectNetwork, order: tuple, rng: random.Random, max_tries: int = 32
) -> tuple:
    """Swap a uniformly chosen adjacent pair whose swap keeps the list
    precedence-feasible; unchanged if no such pair is found within the bound."""
    n = len(order)
    if n < 2:
        return order
    for _ in range(max_tries):
        i = rng.randrange(n - 1)
        if order[i] not in net.predecessors.get(order[i + 1], ()):
            swapped = list(order)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            return tuple(swapped)
    return order


def neighbor_mode_change(
    option_counts: tuple[int, ...], modes: tuple, rng: random.Random
) -> tuple:
    """Replace one uniformly chosen activity's option index with a uniformly
    chosen different valid index; activities with one option are never picked."""
    mutable = [i for i, count in enumerate(option_counts) if count > 1]
    if not mutable:
        return modes
    i = mutable[rng.randrange(len(mutable))]
    alternatives = [idx for idx in range(1, option_counts[i] + 1) if idx != modes[i]]
    changed = list(modes)
    changed[i] = alternatives[rng.randrange(len(alternatives))]
    return tuple(changed)
