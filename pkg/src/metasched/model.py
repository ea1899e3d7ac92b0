"""Domain types for project instances: activities, precedence networks, and
time-cost trade-off data, plus parsing and validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

AOA_FORMAT = "aoa-v1"
TCTP_FORMAT = "tctp-v1"


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instance data."""


@dataclass(frozen=True)
class Activity:
    id: int
    duration: int
    resource_demand: int = 1

    def __post_init__(self):
        if self.id < 1:
            raise InstanceError(f"activity id must be positive, got {self.id}")
        if self.duration < 0:
            raise InstanceError(f"activity {self.id}: negative duration {self.duration}")
        if self.resource_demand < 0:
            raise InstanceError(f"activity {self.id}: negative demand {self.resource_demand}")


@dataclass(frozen=True)
class AoaArc:
    """One activity expressed as an arc between two event nodes."""

    activity_id: int
    start_node: int
    end_node: int
    duration: int
    demand: int = 1

    def __post_init__(self):
        if self.duration < 0:
            raise InstanceError(
                f"activity {self.activity_id}: negative duration {self.duration}"
            )
        if self.duration > 0 and self.start_node == self.end_node:
            raise InstanceError(
                f"activity {self.activity_id}: self-loop at node {self.start_node}"
            )


@dataclass(frozen=True)
class ProjectNetwork:
    """Activities plus an acyclic predecessor relation over their ids.

    Instances are immutable after construction; `predecessors` maps every
    activity id to a (possibly empty) frozenset of activity ids. Construction
    does not validate: `validate_network` reports violations of the acyclicity
    and reference invariants, so that broken inputs can be diagnosed rather
    than rejected opaquely.
    """

    activities: tuple[Activity, ...]
    predecessors: dict[int, frozenset[int]]

    @cached_property
    def ids(self) -> tuple[int, ...]:
        return tuple(a.id for a in self.activities)

    def activity(self, activity_id: int) -> Activity:
        return self._by_id[activity_id]

    @cached_property
    def _by_id(self) -> dict[int, Activity]:
        return {a.id: a for a in self.activities}

    @cached_property
    def _duration_map(self) -> dict[int, int]:
        return {a.id: a.duration for a in self.activities}

    @cached_property
    def _demand_map(self) -> dict[int, int]:
        return {a.id: a.resource_demand for a in self.activities}

    def durations(self) -> dict[int, int]:
        return dict(self._duration_map)

    def successors(self) -> dict[int, frozenset[int]]:
        succ: dict[int, set[int]] = {a.id: set() for a in self.activities}
        for aid, preds in self.predecessors.items():
            for p in preds:
                succ[p].add(aid)
        return {aid: frozenset(s) for aid, s in succ.items()}

    def topological_order(self) -> tuple[int, ...]:
        """Deterministic topological order (ties broken by activity id)."""
        remaining = {a.id: set(self.predecessors.get(a.id, ())) for a in self.activities}
        order: list[int] = []
        while remaining:
            ready = sorted(aid for aid, preds in remaining.items() if not preds)
            if not ready:
                raise InstanceError(f"cycle among activities {sorted(remaining)}")
            for aid in ready:
                del remaining[aid]
                order.append(aid)
            for preds in remaining.values():
                preds.difference_update(ready)
        return tuple(order)


def validate_network(net: ProjectNetwork) -> list[str]:
    """Check a network's structural invariants.

    Returns a list of human-readable violations; empty iff ids are unique,
    every reference resolves, the relation is acyclic, and the network has
    at least one source and one sink.
    """
    report: list[str] = []
    ids = [a.id for a in net.activities]
    seen: set[int] = set()
    for aid in ids:
        if aid in seen:
            report.append(f"duplicate activity id {aid}")
        seen.add(aid)
    known = set(ids)
    for aid, preds in net.predecessors.items():
        if aid not in known:
            report.append(f"predecessor entry for unknown activity {aid}")
        for p in preds:
            if p not in known:
                report.append(f"activity {aid} depends on nonexistent activity {p}")
    # Cycle check by repeated source elimination over resolvable references.
    remaining = {aid: {p for p in net.predecessors.get(aid, ()) if p in known} for aid in known}
    while remaining:
        ready = [aid for aid, preds in remaining.items() if not preds]
        if not ready:
            report.append(f"cycle among activities {sorted(remaining)}")
            break
        for aid in ready:
            del remaining[aid]
        for preds in remaining.values():
            preds.difference_update(ready)
    if not report and net.activities:
        if all(net.predecessors.get(a.id) for a in net.activities):
            report.append("no source activity (every activity has predecessors)")
        succ = net.successors()
        if all(succ[a.id] for a in net.activities):
            report.append("no sink activity (every activity has successors)")
    return report


def derive_precedence_from_nodes(arcs: list[AoaArc] | tuple[AoaArc, ...]) -> ProjectNetwork:
    """Build the precedence network implied by shared event nodes.

    Activity j is a successor of activity i iff j starts at the node i ends
    at. The arc order is preserved in the resulting activity tuple.
    """
    seen: set[int] = set()
    for arc in arcs:
        if arc.activity_id in seen:
            raise InstanceError(f"duplicate activity id {arc.activity_id}")
        seen.add(arc.activity_id)
    by_end: dict[int, set[int]] = {}
    for arc in arcs:
        by_end.setdefault(arc.end_node, set()).add(arc.activity_id)
    activities = tuple(
        Activity(id=a.activity_id, duration=a.duration, resource_demand=a.demand) for a in arcs
    )
    predecessors = {
        a.activity_id: frozenset(by_end.get(a.start_node, ())) for a in arcs
    }
    net = ProjectNetwork(activities=activities, predecessors=predecessors)
    net.topological_order()  # raises if the node structure induced a cycle
    return net


def induced_subnetwork(net: ProjectNetwork, keep: set[int] | frozenset[int]) -> ProjectNetwork:
    """Restrict a network to a subset of activity ids, dropping outside edges."""
    keep = frozenset(keep)
    activities = tuple(a for a in net.activities if a.id in keep)
    predecessors = {
        a.id: frozenset(net.predecessors.get(a.id, frozenset()) & keep) for a in activities
    }
    return ProjectNetwork(activities=activities, predecessors=predecessors)


@dataclass(frozen=True)
class ActivityOption:
    """One selectable (duration, direct cost) mode for an activity."""

    duration: int
    direct_cost: int

    def __post_init__(self):
        if self.duration < 1:
            raise InstanceError(f"option duration must be >= 1, got {self.duration}")
        if self.direct_cost < 0:
            raise InstanceError(f"negative option cost {self.direct_cost}")


@dataclass(frozen=True)
class TctpInstance:
    """A discrete time-cost trade-off instance: a network, per-activity option
    lists, and a daily indirect cost charged per day of project duration."""

    network: ProjectNetwork
    options: dict[int, tuple[ActivityOption, ...]]
    indirect_cost_per_day: int

    def __post_init__(self):
        if self.indirect_cost_per_day < 0:
            raise InstanceError("negative indirect cost")
        for aid in self.network.ids:
            opts = self.options.get(aid)
            if not opts:
                raise InstanceError(f"activity {aid} has no options")
            if len(opts) > 5:
                raise InstanceError(f"activity {aid} has more than 5 options")
        if set(self.options) != set(self.network.ids):
            raise InstanceError("options do not cover exactly the network's activities")

    @property
    def n_activities(self) -> int:
        return len(self.network.activities)

    def option(self, activity_id: int, index: int) -> ActivityOption:
        """Look up a 1-based option index."""
        opts = self.options[activity_id]
        if not 1 <= index <= len(opts):
            raise InstanceError(
                f"activity {activity_id}: option index {index} out of range 1..{len(opts)}"
            )
        return opts[index - 1]


@dataclass(frozen=True)
class ModeVector:
    """One chosen option index (1-based) per activity."""

    choices: dict[int, int] = field(default_factory=dict)

    def validate(self, instance: TctpInstance) -> None:
        if set(self.choices) != set(instance.network.ids):
            raise InstanceError("mode vector does not cover exactly the instance activities")
        for aid, idx in self.choices.items():
            instance.option(aid, idx)

    @classmethod
    def uniform(cls, instance: TctpInstance, index: int) -> "ModeVector":
        """The vector choosing the same option index for every activity."""
        return cls({aid: index for aid in instance.network.ids})


def parse_aoa_instance(document: str) -> tuple[AoaArc, ...]:
    """Parse an activity-on-arrow instance document into arcs, order preserved."""
    data = _load_json(document)
    if data.get("format") != AOA_FORMAT:
        raise InstanceError(f"expected format {AOA_FORMAT!r}, got {data.get('format')!r}")
    records = data.get("arcs")
    if not isinstance(records, list) or not records:
        raise InstanceError("empty instance")
    arcs = []
    for i, rec in enumerate(records):
        try:
            arcs.append(
                AoaArc(
                    activity_id=_int_field(rec, "id"),
                    start_node=_int_field(rec, "start"),
                    end_node=_int_field(rec, "end"),
                    duration=_int_field(rec, "duration"),
                    demand=_int_field(rec, "demand", default=1),
                )
            )
        except InstanceError:
            raise
        except (TypeError, KeyError) as exc:
            raise InstanceError(f"arc record {i}: {exc}") from exc
    return tuple(arcs)


def parse_tctp_instance(document: str, indirect_cost_override: int | None = None) -> TctpInstance:
    """Parse a time-cost trade-off instance document.

    The daily indirect cost may come from the file or from
    `indirect_cost_override` (which wins when both are present); it is an
    error if neither supplies it.
    """
    data = _load_json(document)
    if data.get("format") != TCTP_FORMAT:
        raise InstanceError(f"expected format {TCTP_FORMAT!r}, got {data.get('format')!r}")
    records = data.get("activities")
    if not isinstance(records, list) or not records:
        raise InstanceError("empty instance")
    if indirect_cost_override is not None:
        indirect = indirect_cost_override
    elif "indirect_cost_per_day" in data:
        indirect = _as_int(data["indirect_cost_per_day"], "indirect_cost_per_day")
    else:
        raise InstanceError("indirect cost required (file field or override)")

    activities = []
    predecessors: dict[int, frozenset[int]] = {}
    options: dict[int, tuple[ActivityOption, ...]] = {}
    for rec in records:
        aid = _int_field(rec, "id")
        deps = rec.get("depends", [])
        if not isinstance(deps, list):
            raise InstanceError(f"activity {aid}: 'depends' must be a list")
        opts = rec.get("options")
        if not isinstance(opts, list) or not opts:
            raise InstanceError(f"activity {aid}: missing options")
        parsed = tuple(
            ActivityOption(
                duration=_int_field(o, "duration"), direct_cost=_int_field(o, "cost")
            )
            for o in opts
        )
        # Network durations default to the first option; evaluation always
        # substitutes the chosen option's duration.
        activities.append(Activity(id=aid, duration=parsed[0].duration))
        predecessors[aid] = frozenset(_as_int(d, f"activity {aid} dependency") for d in deps)
        options[aid] = parsed

    known = {a.id for a in activities}
    for aid, deps in predecessors.items():
        for d in deps:
            if d not in known:
                raise InstanceError(f"activity {aid} depends on unknown activity {d}")
    net = ProjectNetwork(activities=tuple(activities), predecessors=predecessors)
    return TctpInstance(network=net, options=options, indirect_cost_per_day=indirect)


def serialize_aoa_instance(arcs: tuple[AoaArc, ...]) -> str:
    """Inverse of parse_aoa_instance (round-trips structurally)."""
    payload = {
        "format": AOA_FORMAT,
        "arcs": [
            {
                "id": a.activity_id,
                "start": a.start_node,
                "end": a.end_node,
                "duration": a.duration,
                "demand": a.demand,
            }
            for a in arcs
        ],
    }
    return json.dumps(payload, indent=2)


def _load_json(document: str) -> dict:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed document: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("malformed document: top level must be an object")
    return data


def _as_int(value, label: str) -> int:
    if isinstance(value, bool):
        raise InstanceError(f"{label}: expected integer, got bool")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise InstanceError(f"{label}: expected integer, got {value!r}")


def _int_field(record: dict, key: str, default: int | None = None) -> int:
    if key not in record:
        if default is not None:
            return default
        raise InstanceError(f"missing required field {key!r} in {record!r}")
    return _as_int(record[key], key)
