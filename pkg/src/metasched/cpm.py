"""Critical path method: forward/backward passes, floats, and makespan."""

from __future__ import annotations

from dataclasses import dataclass

from .model import InstanceError, ModeVector, ProjectNetwork, TctpInstance


@dataclass(frozen=True)
class CpmRow:
    early_start: int
    early_finish: int
    late_start: int
    late_finish: int
    total_float: int


@dataclass(frozen=True)
class CpmResult:
    rows: dict[int, CpmRow]
    makespan: int
    critical: frozenset[int]


def forward_pass(net: ProjectNetwork, durations: dict[int, int]) -> dict[int, tuple[int, int]]:
    """Early start/finish per activity: start at the latest predecessor finish."""
    _check_durations(net, durations)
    times: dict[int, tuple[int, int]] = {}
    for aid in net.topological_order():
        preds = net.predecessors.get(aid, frozenset())
        es = max((times[p][1] for p in preds), default=0)
        times[aid] = (es, es + durations[aid])
    return times


def backward_pass(
    net: ProjectNetwork, durations: dict[int, int], makespan: int
) -> dict[int, tuple[int, int]]:
    """Late start/finish per activity, anchored at the given makespan."""
    _check_durations(net, durations)
    earliest = forward_pass(net, durations)
    project_end = max((ef for _, ef in earliest.values()), default=0)
    if makespan < project_end:
        raise InstanceError(
            f"makespan {makespan} below forward-pass makespan {project_end}"
        )
    succ = net.successors()
    times: dict[int, tuple[int, int]] = {}
    for aid in reversed(net.topological_order()):
        lf = min((times[s][0] for s in succ[aid]), default=makespan)
        times[aid] = (lf - durations[aid], lf)
    return times


def compute_cpm(net: ProjectNetwork, durations: dict[int, int] | None = None) -> CpmResult:
    """Both passes plus floats; critical activities are those with zero float."""
    if durations is None:
        durations = net.durations()
    earliest = forward_pass(net, durations)
    makespan = max((ef for _, ef in earliest.values()), default=0)
    latest = backward_pass(net, durations, makespan)
    rows = {}
    for aid in net.ids:
        es, ef = earliest[aid]
        ls, lf = latest[aid]
        rows[aid] = CpmRow(es, ef, ls, lf, ls - es)
    critical = frozenset(aid for aid, row in rows.items() if row.total_float == 0)
    return CpmResult(rows=rows, makespan=makespan, critical=critical)


def makespan_for_modes(instance: TctpInstance, modes: ModeVector) -> int:
    """Project duration when each activity runs at its chosen option's duration."""
    modes.validate(instance)
    durations = {
        aid: instance.option(aid, idx).duration for aid, idx in modes.choices.items()
    }
    earliest = forward_pass(instance.network, durations)
    return max((ef for _, ef in earliest.values()), default=0)


def _check_durations(net: ProjectNetwork, durations: dict[int, int]) -> None:
    missing = [aid for aid in net.ids if aid not in durations]
    if missing:
        raise InstanceError(f"missing duration for activities {missing}")
