"""Execute a behavioral model over a static model and record a trace.

Firing is deterministic: among simultaneously enabled events the
lexicographically smallest id fires first, and the covered actions of a
region execute in flow-topological order. Create is the only operation
that mints a thing-token; all other actions merely move tokens along
covered flows or rewrite stores via their update rules.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Optional

from . import expr as ex
from . import model as md
from .errors import FillPathUnstored, MissingInput, TypeMismatch
from .events import BehavioralModel, EventRegion, region_edges

DEFAULT_MAX_STEPS = 10_000


@dataclasses.dataclass
class ThingToken:
    id: str
    value: Optional[ex.Value]
    location: str  # action id (or store path once deposited)


@dataclasses.dataclass
class WorldState:
    stores: dict[str, object]  # path -> value or expr.UNSET
    declared_types: dict[str, Optional[str]]
    tokens: list[ThingToken] = dataclasses.field(default_factory=list)
    step: int = 0


@dataclasses.dataclass(frozen=True)
class StoreDelta:
    path: str
    old: object
    new: object


@dataclasses.dataclass(frozen=True)
class TraceEntry:
    step: int
    event: str
    actions_fired: tuple[str, ...]
    deltas: tuple[StoreDelta, ...]


@dataclasses.dataclass(frozen=True)
class Trace:
    entries: tuple[TraceEntry, ...]
    outcome: str  # Completed | StepBudgetExhausted | Stuck

    def fired_events(self) -> list[str]:
        return [e.event for e in self.entries]


def init_world(static: md.StaticModel, fills=None) -> WorldState:
    """Two-stage instantiation: empty template first, then fill values."""
    stores = {}
    types = {}
    for path, thimac in static.iter_thimacs():
        if thimac.store is None:
            continue
        stores[path] = ex.UNSET
        declared = thimac.store.value
        types[path] = None if declared is None else md.value_type_of(declared)
    world = WorldState(stores, types)
    for path, value in (fills or {}).items():
        _write_store(world, path, value)
    return world


def _write_store(world: WorldState, path: str, value):
    if path not in world.stores:
        raise FillPathUnstored(f"no store at path '{path}'")
    new_type = md.value_type_of(value)
    declared = world.declared_types[path]
    if declared is not None and new_type != declared:
        raise TypeMismatch(
            f"store '{path}' holds {declared} values, got {new_type} "
            f"{value!r}")
    old = world.stores[path]
    if old is not ex.UNSET and md.value_type_of(old) != new_type:
        raise TypeMismatch(
            f"store '{path}' was {md.value_type_of(old)}, got {new_type}")
    world.stores[path] = value
    return old


def evaluate_guard(guard: ex.Expr, world: WorldState) -> bool:
    return bool(ex.evaluate(guard, world.stores))


def simulate(static: md.StaticModel, behavior: BehavioralModel,
             world: WorldState, inputs=None,
             max_steps: int = DEFAULT_MAX_STEPS) -> Trace:
    """Fire enabled events until quiescence or budget exhaustion."""
    assert max_steps >= 1
    inputs = inputs or {}
    fired: set[str] = set()
    triggered: set[str] = set()
    incoming: dict[str, list] = {}
    for edge in behavior.edges:
        incoming.setdefault(edge.dst, []).append(edge)
    entries: list[TraceEntry] = []
    terminals = behavior.terminal_events()

    while True:
        event = _next_enabled(behavior, incoming, fired, triggered, inputs,
                              world)
        if event is None:
            outcome = "Completed" if fired & terminals else "Stuck"
            break
        if len(entries) >= max_steps:
            outcome = "StepBudgetExhausted"
            break
        entries.append(_fire(static, behavior, event, world, inputs,
                             triggered))
        fired.add(event.id)
        triggered.discard(event.id)
    return Trace(tuple(entries), outcome)


def _next_enabled(behavior, incoming, fired, triggered, inputs, world):
    for event in sorted(behavior.events, key=lambda e: e.id):
        if event.id in fired:
            if event.id not in behavior.repeatable:
                continue
            if event.id not in triggered:
                continue
        edges = incoming.get(event.id, [])
        if edges:
            satisfied = any(
                edge.src in fired and (
                    edge.guard is None or evaluate_guard(edge.guard, world))
                for edge in edges)
            if not satisfied:
                continue
            if event.input_path is not None and event.id not in inputs:
                raise MissingInput(
                    f"event '{event.id}' needs an input payload")
        else:
            # entry event: without its payload it simply never starts
            if event.input_path is not None and event.id not in inputs:
                continue
        return event
    return None


def _fire(static, behavior, event: EventRegion, world: WorldState, inputs,
          triggered) -> TraceEntry:
    world.step += 1
    deltas: list[StoreDelta] = []
    if event.input_path is not None:
        old = _write_store(world, event.input_path, inputs[event.id])
        deltas.append(StoreDelta(event.input_path, old,
                                 world.stores[event.input_path]))

    flows, triggers = region_edges(static, event)
    order = _topo_order(event.covers, flows)
    preds: dict[str, list[str]] = {}
    for edge in flows:
        preds.setdefault(edge.dst, []).append(edge.src)

    for aid in order:
        action = static.actions[aid]
        if action.kind is md.ActionKind.CREATE:
            token = ThingToken(f"t{len(world.tokens) + 1}", None, aid)
            world.tokens.append(token)
        else:
            for src in sorted(preds.get(aid, [])):
                for token in world.tokens:
                    if token.location == src:
                        token.location = aid
        if action.update is not None:
            target, rule = action.update
            value = ex.evaluate(rule, world.stores)
            old = _write_store(world, target, value)
            deltas.append(StoreDelta(target, old, value))

    for edge in triggers:
        for other in behavior.events:
            if edge.dst in other.covers:
                triggered.add(other.id)

    return TraceEntry(world.step, event.id, tuple(order), tuple(deltas))


def _topo_order(covers, flows) -> list[str]:
    """Kahn's algorithm with lexicographic tie-break; falls back to plain
    sorted order if the covered subgraph is cyclic."""
    indegree = {aid: 0 for aid in covers}
    succs: dict[str, list[str]] = {}
    for edge in flows:
        indegree[edge.dst] += 1
        succs.setdefault(edge.src, []).append(edge.dst)
    ready = sorted(a for a, d in indegree.items() if d == 0)
    order = []
    while ready:
        aid = ready.pop(0)
        order.append(aid)
        for nxt in succs.get(aid, []):
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                ready.append(nxt)
        ready.sort()
    if len(order) != len(indegree):
        return sorted(covers)
    return order


# -- trace serialization --

def _value_repr(value) -> str:
    if value is ex.UNSET:
        return "unset"
    return json.dumps(value)


def trace_to_text(trace: Trace) -> str:
    lines = []
    for entry in trace.entries:
        deltas = ";".join(
            f"{d.path}={_value_repr(d.old)}→{_value_repr(d.new)}"
            for d in entry.deltas)
        lines.append(f"{entry.step}\t{entry.event}\t"
                     f"fired:{','.join(entry.actions_fired)}\t"
                     f"deltas:{deltas}")
    return "".join(line + "\n" for line in lines)


def trace_to_json(trace: Trace) -> str:
    def jsonable(value):
        return None if value is ex.UNSET else value

    entries = [{
        "step": e.step,
        "event": e.event,
        "fired": list(e.actions_fired),
        "deltas": [{"path": d.path, "old": jsonable(d.old),
                    "new": jsonable(d.new)} for d in e.deltas],
    } for e in trace.entries]
    return json.dumps(entries, indent=2) + "\n"
