"""Time-cost trade-off evaluation and non-dominated archive maintenance.

Costs are exact integers (smallest currency unit); the total cost of a mode
vector is duration * indirect_cost_per_day + sum of the chosen direct costs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cpm import makespan_for_modes
from .model import ModeVector, TctpInstance


@dataclass(frozen=True)
class TctpEvaluation:
    duration: int
    direct_cost: int
    total_cost: int


@dataclass(frozen=True)
class ParetoPoint:
    duration: int
    cost: int
    modes: tuple

    @property
    def objectives(self) -> tuple[int, int]:
        return (self.duration, self.cost)


@dataclass(frozen=True)
class ParetoArchive:
    """Pairwise non-dominated (duration, cost) points, sorted by duration.

    Immutable; `archive_insert` returns a new archive. Equal (duration, cost)
    duplicates are kept singly (first inserted wins).
    """

    points: tuple[ParetoPoint, ...] = ()


def evaluate_mode_vector(instance: TctpInstance, modes: ModeVector) -> TctpEvaluation:
    duration = makespan_for_modes(instance, modes)
    direct = sum(
        instance.option(aid, idx).direct_cost for aid, idx in modes.choices.items()
    )
    total = duration * instance.indirect_cost_per_day + direct
    return TctpEvaluation(duration=duration, direct_cost=direct, total_cost=total)


def dominates(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Weak dominance with at least one strict inequality; minimization both ways."""
    return a[0] <= b[0] and a[1] <= b[1] and a != b


def archive_insert(archive: ParetoArchive, candidate: ParetoPoint) -> ParetoArchive:
    obj = candidate.objectives
    for p in archive.points:
        if dominates(p.objectives, obj) or p.objectives == obj:
            return archive
    kept = [p for p in archive.points if not dominates(obj, p.objectives)]
    kept.append(candidate)
    kept.sort(key=lambda p: (p.duration, p.cost))
    return ParetoArchive(points=tuple(kept))


def min_direct_cost(instance: TctpInstance) -> int:
    """Sum of each activity's cheapest option: a direct-cost lower bound, and
    the exact optimum when the indirect cost is zero."""
    return sum(min(o.direct_cost for o in opts) for opts in instance.options.values())
