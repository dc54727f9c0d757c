import json

import pytest

import ged


def ring(prefix, first, count, t):
    names = [f"{prefix}{first + i}" for i in range(count)]
    return "".join(f"{names[i]}\t{names[(i + 1) % count]}\t{t}\n" for i in range(count))


def split_fixture():
    edges, report = ged.parse_edges(ring("n", 0, 10, 1) + ring("n", 0, 5, 11) + ring("n", 5, 5, 11))
    assert report.malformed == 0
    tsn = ged.slice_timeframes(edges, window_length=10)
    groups = "".join(f"1\tP\tn{i}\n" for i in range(10))
    groups += "".join(f"2\tA\tn{i}\n" for i in range(5))
    groups += "".join(f"2\tB\tn{i}\n" for i in range(5, 10))
    return tsn, ged.load_groupings(groups)


def test_parse_and_slice():
    edges, report = ged.parse_edges("a\tb\t10\na\ta\t11\nbad line\n")
    assert [(e.source, e.target, e.timestamp, e.weight) for e in edges] == [("a", "b", 10, 1.0)]
    assert report.self_loops_dropped == 1
    assert report.malformed == 1
    tsn = ged.slice_timeframes([ged.TimedEdge("a", "b", 0), ged.TimedEdge("a", "b", 2, 2.0)], window_length=5)
    assert len(tsn) == 1
    assert tsn.timeframes[0].edges == {("a", "b"): 3.0}


def test_inclusion_and_classifier():
    assert ged.inclusion({"a", "b", "c"}, {"b", "c", "d"}, {"a": 1.5, "b": 1.0, "c": 0.5}) == pytest.approx(1 / 3)
    assert ged.classify_pair(0.8, 0.9, 5, 5, 1, 1) == "Continuing"
    assert ged.classify_pair(0.25, 1.0, 10, 5, 2, 1) == "Splitting"
    assert ged.classify_pair(0.3, 0.3, 5, 5, 1, 1) is None


def test_social_position_chain():
    snap = ged.Snapshot()
    snap.add_edge("a", "b", 1.0)
    sp = ged.social_position(snap, epsilon=0.9, tolerance=1e-12)
    assert sp["a"] == pytest.approx(0.1, abs=1e-9)
    assert sp["b"] == pytest.approx(0.19, abs=1e-9)
    with pytest.raises(ged.ConvergenceError):
        ged.social_position(snap, epsilon=0.9, tolerance=1e-12, max_iter=1)


def test_track_even_split():
    tsn, groupings = split_fixture()
    log = ged.track_evolution(tsn, groupings)
    assert [(e.group_from, e.group_to, e.event_type, e.balance) for e in log.events] == [
        ("P", "A", "Splitting", "Equal"),
        ("P", "B", "Splitting", "Equal"),
    ]
    rows = json.loads(log.to_json())
    assert rows[0]["i_backward"] == 1.0
    assert log.to_dot().count(" -> ") == 2
    assert len(ged.event_log_from_json(log.to_json()).events) == 2


def test_track_with_python_importance():
    tsn, groupings = split_fixture()
    log = ged.track_evolution(tsn, groupings, importance=lambda members, edges: {m: 2.0 for m in members})
    assert {e.event_type for e in log.events} == {"Splitting"}


def test_errors_surface_as_python_exceptions():
    tsn, groupings = split_fixture()
    with pytest.raises(ged.ConfigError):
        ged.track_evolution(tsn, groupings, alpha=1.01)
    with pytest.raises(ged.ParseError):
        ged.load_groupings("1\tg\n")
    with pytest.raises(ged.GedError):
        ged.event_log_from_json("[{")


def test_label_propagation_is_seeded():
    snap = ged.Snapshot()
    for u, v in [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")]:
        snap.add_edge(u, v, 1.0)
    snap.add_edge("c", "d", 0.1)
    found = ged.label_propagation(snap, seed=5)
    assert sorted(sorted(g.members) for g in found.groups) == [["a", "b", "c"], ["d", "e", "f"]]
