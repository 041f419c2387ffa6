import pytest

from tmkit import dsl, errors
from tmkit.events import (BehaviorEdge, build_behavior, check_behavior,
                          eventize, region_edges)


def test_eventize_beef_fetch_region(beef):
    static, _, _ = beef
    region = eventize(
        static, "E4", "The cook fetches the meat",
        {"Refrigerator.Sirloin.release", "Refrigerator.Sirloin.transfer",
         "Cook.Sirloin.transfer", "Cook.Sirloin.receive"})
    assert region.covers == {
        "Refrigerator.Sirloin.release", "Refrigerator.Sirloin.transfer",
        "Cook.Sirloin.transfer", "Cook.Sirloin.receive"}
    flows, triggers = region_edges(static, region)
    assert len(flows) == 3
    assert triggers == []


def test_eventize_maximal_region(beef):
    static, _, _ = beef
    region = eventize(static, "All", "everything", set(static.actions))
    flows, triggers = region_edges(static, region)
    assert len(flows) == len(static.flows)
    assert len(triggers) == len(static.triggers)


def test_eventize_unknown_path(beef):
    static, _, _ = beef
    with pytest.raises(errors.UnknownActionPath):
        eventize(static, "E", "bad", {"Cook.Pizza.create"})


def test_eventize_empty_cover(beef):
    static, _, _ = beef
    with pytest.raises(errors.EmptyCover):
        eventize(static, "E", "empty", set())


def test_region_edges_invent_nothing(parsed_corpus):
    for static, events, _ in parsed_corpus.values():
        known = {(e.src, e.dst) for e in static.flows}
        known |= {(e.src, e.dst) for e in static.triggers}
        for region in events:
            assert region.covers <= set(static.actions)
            flows, triggers = region_edges(static, region)
            for edge in flows + triggers:
                assert (edge.src, edge.dst) in known
                assert edge.src in region.covers
                assert edge.dst in region.covers


def test_build_behavior_beef_chain(beef):
    static, events, _ = beef
    edges = [BehaviorEdge(f"E{i}", f"E{i + 1}") for i in range(1, 8)]
    behavior = build_behavior(events, edges)
    assert behavior.entry_events() == ["E1"]
    assert behavior.terminal_events() == {"E8"}


def test_build_behavior_bank_guards(bank):
    _, _, behavior = bank
    assert len(behavior.events) == 23
    guarded = {(e.src, e.dst) for e in behavior.edges if e.guard is not None}
    assert ("E18", "E20") in guarded
    assert ("E18", "E22") in guarded
    assert ("E19", "E21") in guarded
    assert ("E19", "E23") in guarded


def test_build_behavior_rejects_unknown_event(beef):
    _, events, _ = beef
    with pytest.raises(errors.UnknownEvent):
        build_behavior(events, [BehaviorEdge("E1", "E99")])


def test_build_behavior_rejects_duplicate_ids(beef):
    _, events, _ = beef
    with pytest.raises(errors.DuplicateEventId):
        build_behavior(list(events) + [events[0]], [])


def test_build_behavior_does_not_mutate_events(beef):
    _, events, _ = beef
    snapshot = list(events)
    build_behavior(events, [])
    assert list(events) == snapshot


def test_check_behavior_clean_on_beef(beef):
    static, _, behavior = beef
    report = check_behavior(behavior, static)
    assert report.diagnostics == []


def test_check_behavior_self_loop_warns(beef):
    static, events, _ = beef
    behavior = build_behavior(events, [BehaviorEdge("E1", "E1")])
    report = check_behavior(behavior, static)
    assert any(d.code == "Cycle" for d in report.warnings)


def test_check_behavior_unreachable_warns(beef):
    static, events, _ = beef
    # a two-event cycle feeding itself has no entry point, so neither
    # member can ever be reached
    behavior = build_behavior(
        events, [BehaviorEdge("E2", "E3"), BehaviorEdge("E3", "E2")])
    report = check_behavior(behavior, static)
    assert any(d.code == "Unreachable" and d.location == "E2"
               for d in report.warnings)
    assert any(d.code == "Unreachable" and d.location == "E3"
               for d in report.warnings)


def test_guard_over_storeless_path_is_error():
    src = ("thimac Cook { thimac Mood { process; } }\n"
           "event E1 covers { Cook.Mood.process } guard Cook.Mood = \"ok\";\n"
           "event E2 covers { Cook.Mood.process };\n"
           "behavior { E2 -> E1; }\n")
    static, events, behavior = dsl.parse(src)
    report = check_behavior(behavior, static)
    assert any(d.code == "GuardPathUnstored" for d in report.errors)


def test_disconnected_region_warns():
    src = ("thimac A { create; process; } thimac B { create; }\n"
           "flow A.create -> A.process;\n"
           "event E covers { A.create, B.create };\n"
           "behavior { }\n")
    static, events, behavior = dsl.parse(src)
    report = check_behavior(behavior, static)
    assert any(d.code == "RegionDisconnected" for d in report.warnings)
