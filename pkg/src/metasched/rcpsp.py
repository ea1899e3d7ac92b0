"""Resource-constrained scheduling: serial schedule-generation scheme,
resource profiles, and feasibility audits under a single renewable capacity."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import InstanceError, ProjectNetwork


class SchedulingError(ValueError):
    """Raised when a schedule cannot be decoded (bad list or capacity)."""


@dataclass(frozen=True)
class Schedule:
    start_times: dict[int, int]
    makespan: int


@dataclass(frozen=True)
class ResourceProfile:
    """Per-time-unit resource usage over [0, makespan)."""

    usage: tuple[int, ...]

    @property
    def peak(self) -> int:
        return max(self.usage, default=0)


def is_precedence_feasible(net: ProjectNetwork, order: tuple[int, ...]) -> bool:
    """True iff every activity appears after all of its predecessors."""
    if sorted(order) != sorted(net.ids):
        return False
    position = {aid: i for i, aid in enumerate(order)}
    return all(
        position[p] < position[aid]
        for aid in order
        for p in net.predecessors.get(aid, ())
    )


def random_activity_list(net: ProjectNetwork, rng: random.Random) -> tuple[int, ...]:
    """Uniformly random-ish precedence-feasible permutation (random eligible pick)."""
    remaining = {aid: set(net.predecessors.get(aid, ())) for aid in net.ids}
    order: list[int] = []
    while remaining:
        ready = sorted(aid for aid, preds in remaining.items() if not preds)
        pick = rng.choice(ready)
        del remaining[pick]
        order.append(pick)
        for preds in remaining.values():
            preds.discard(pick)
    return tuple(order)


def serial_sgs(
    net: ProjectNetwork,
    capacity: int,
    order: tuple[int, ...],
    durations: dict[int, int] | None = None,
) -> Schedule:
    """Decode an activity list into a schedule.

    Activities are placed in list order at the earliest integer start that
    respects predecessor finishes and keeps usage within capacity for the
    activity's whole (non-preemptive) duration.
    """
    activities = net.activities
    if durations is None:
        durations = net._duration_map
    demand = net._demand_map
    max_demand = max(demand.values(), default=0)
    if capacity < max_demand:
        raise SchedulingError(
            f"capacity {capacity} below maximum activity demand {max_demand}"
        )
    if len(order) != len(activities):
        raise SchedulingError(f"activity list is not a permutation of the network: {order}")

    # Predecessor lookups double as the feasibility check: an unscheduled
    # predecessor (or an unknown/duplicated id) surfaces as a KeyError.
    preds = net.predecessors
    binding = capacity < sum(demand.values())
    if binding:
        usage = [0] * (sum(durations.values()) + 1)
    finish: dict[int, int] = {}
    start_times: dict[int, int] = {}
    try:
        for aid in order:
            d = durations[aid]
            dem = demand[aid]
            t = 0
            for p in preds.get(aid, ()):
                f = finish[p]
                if f > t:
                    t = f
            if binding and d > 0 and dem > 0:
                # Advance past each violating time unit; a window of d
                # consecutive feasible units always exists because capacity
                # covers every single demand.
                u, end = t, t + d
                while u < end:
                    if usage[u] + dem > capacity:
                        t, end = u + 1, u + 1 + d
                    u += 1
                for u in range(t, t + d):
                    usage[u] += dem
            start_times[aid] = t
            finish[aid] = t + d
    except KeyError as exc:
        raise SchedulingError(
            f"activity list is not precedence-feasible: {order} (at {exc})"
        ) from exc
    if len(start_times) != len(activities):
        raise SchedulingError(f"activity list repeats ids: {order}")
    makespan = max(finish.values(), default=0)
    return Schedule(start_times=start_times, makespan=makespan)


def resource_profile(
    net: ProjectNetwork,
    schedule: Schedule,
    durations: dict[int, int] | None = None,
) -> ResourceProfile:
    if durations is None:
        durations = net.durations()
    usage = [0] * schedule.makespan
    for a in net.activities:
        start = schedule.start_times[a.id]
        for t in range(start, start + durations[a.id]):
            usage[t] += a.resource_demand
    return ResourceProfile(usage=tuple(usage))


def check_schedule(
    net: ProjectNetwork,
    schedule: Schedule,
    capacity: int,
    durations: dict[int, int] | None = None,
) -> list[str]:
    """Audit precedence and capacity invariants; empty report means feasible."""
    if durations is None:
        durations = net.durations()
    report: list[str] = []
    for aid in net.ids:
        if aid not in schedule.start_times:
            report.append(f"activity {aid} is unscheduled")
    if report:
        return report
    for aid in net.ids:
        for p in net.predecessors.get(aid, ()):
            if schedule.start_times[aid] < schedule.start_times[p] + durations[p]:
                report.append(
                    f"activity {aid} starts at {schedule.start_times[aid]} before "
                    f"predecessor {p} finishes at {schedule.start_times[p] + durations[p]}"
                )
    finish = {aid: schedule.start_times[aid] + durations[aid] for aid in net.ids}
    actual_makespan = max(finish.values(), default=0)
    if actual_makespan != schedule.makespan:
        report.append(
            f"recorded makespan {schedule.makespan} != actual {actual_makespan}"
        )
    profile = resource_profile(net, Schedule(schedule.start_times, actual_makespan), durations)
    for t, used in enumerate(profile.usage):
        if used > capacity:
            report.append(f"capacity exceeded at t={t}: usage {used} > {capacity}")
    return report


def constrained_critical(
    net: ProjectNetwork, capacity: int, order: tuple[int, ...]
) -> frozenset[int]:
    """Activities whose unit lengthening strictly increases the decoded makespan.

    This is a sensitivity notion of criticality for resource-constrained
    schedules: re-decode the same list with one activity's duration + 1 and
    see whether the makespan grows.
    """
    base = serial_sgs(net, capacity, order).makespan
    durations = net.durations()
    critical = set()
    for aid in net.ids:
        bumped = dict(durations)
        bumped[aid] += 1
        if serial_sgs(net, capacity, order, bumped).makespan > base:
            critical.add(aid)
    return frozenset(critical)
