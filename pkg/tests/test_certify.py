import json

import pytest

from involgen.certify import (
    SKETCH_VERDICT, NotGeneratedByInvolutions, certify, replay, select_branch,
)
from involgen.words import INVOLUTIONS


@pytest.mark.parametrize("g, b, count", [
    (8, 3, 4), (7, 3, 5), (3, 5, 9), (7, 4, 4), (5, 1, 6), (5, 0, 5), (3, 0, 6), (4, 7, 6),
])
def test_select_branch_examples(g, b, count):
    assert select_branch(g, b).count == count


def test_select_branch_low_genus():
    with pytest.raises(NotGeneratedByInvolutions):
        select_branch(2, 0)


@pytest.mark.parametrize("b", range(0, 8))
def test_branch_count_non_increasing_in_genus(b):
    counts = [select_branch(g, b).count for g in range(3, 13)]
    assert counts == sorted(counts, reverse=True)


def test_certify_g6_b0():
    cert = certify(6, 0)
    assert cert.verified and cert.branch["count"] == 5
    curves = [c["curve"] for c in cert.coverage]
    expected = ([f"alpha{i}" for i in range(1, 7)] + [f"beta{i}" for i in range(1, 7)]
                + [f"gamma{i}" for i in range(1, 6)])
    assert curves == expected
    assert all(c["ok"] for c in cert.coverage)


def test_certify_g3_b2():
    cert = certify(3, 2, depth=4)
    assert cert.verified and cert.branch["count"] == 6
    assert cert.sym["order_images"] == 2 and cert.sym["full"]
    assert cert.quotient["order"] == 1451520 and cert.quotient["ok"]


def test_sketch_branch():
    cert = certify(3, 5)
    assert not cert.verified
    assert cert.reason == "sketch-only branch"
    assert cert.verdict == SKETCH_VERDICT
    assert cert.coverage == [] and cert.generators == []


def test_census_and_involution_letters():
    cert = certify(8, 0, quotient=False)
    assert cert.census == ["rho1", "rho2", "rho3", "J"]
    assert len(cert.census) <= cert.branch["count"]
    assert set(cert.census) <= INVOLUTIONS
    inv = [e for e in cert.relations if e["relation"] == "involution"]
    assert {e["instance"].split("^")[0] for e in inv} == set(cert.census)
    assert all(e["holds"] for e in inv)


def test_replay_round_trip():
    cert = certify(5, 2, quotient=False, delta=False)
    data = json.loads(cert.dumps())
    assert replay(data) == [c["ok"] for c in data["coverage"]]


def test_replay_detects_tampering():
    cert = certify(4, 0, quotient=False, delta=False)
    data = json.loads(cert.dumps())
    data["coverage"][0]["word"] = data["coverage"][1]["word"]
    assert replay(data)[0] is False


def test_json_schema_fields():
    data = certify(4, 1, quotient=False, depth=2).to_json()
    for key in ("params", "branch", "generators", "relations", "coverage", "sym",
                "quotient", "delta", "verified"):
        assert key in data
    assert set(data["params"]) == {"g", "b"}
    assert {"count", "case"} <= set(data["branch"])
    assert set(data["generators"][0]) == {"name", "matrix", "perm"}
    assert set(data["coverage"][0]) == {"curve", "word", "ok"}
    assert {"order_r1r2", "order_images", "full"} <= set(data["sym"])
    assert {"p", "order", "expected"} <= set(data["quotient"])
    assert "scope" in data and "not faithful" in data["scope"]


def test_quotient_skipped_marker():
    q = certify(4, 0, delta=False).quotient
    assert q["skipped"] == "quotient check skipped (size)"


def test_delta_searches_reported():
    cert = certify(4, 3, quotient=False, depth=3)
    assert [d["j"] for d in cert.delta] == [1, 2]
    for d in cert.delta:
        if d["word"] is None:
            assert d["status"] == "not certified at representation level"
