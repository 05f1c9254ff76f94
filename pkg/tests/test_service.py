import pytest
from fastapi.testclient import TestClient

from conftest import CLOTHING_DB_TEXT
from taxrules.core import MiningParams, RuleSet, Side
from taxrules.formats import write_generalized, write_ruleset
from taxrules.generalize import generalize
from taxrules.service import create_app

TAX_TEXT = """\
= clothes
short\tlight_clothes
t-shirt\tlight_clothes
= shoes
sandal\tlight_shoes
slipper\tlight_shoes
"""


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(tmp_path / "store"))


def upload(client, kind, body, name=""):
    resp = client.post(f"/artifacts/{kind}", params={"name": name}, content=body.encode())
    assert resp.status_code == 201, resp.text
    return resp.json()["id"]


@pytest.fixture
def fig2_ids(client, clothing_rules):
    rs = RuleSet(clothing_rules.rules, mining_params=MiningParams(0.5, 0.5, 5))
    return {
        "dataset": upload(client, "transactions", CLOTHING_DB_TEXT),
        "ruleset": upload(client, "ruleset", write_ruleset(rs)),
        "taxonomy": upload(client, "taxonomy", TAX_TEXT),
    }


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_artifact_round_trip(client):
    aid = upload(client, "transactions", CLOTHING_DB_TEXT, name="clothes")
    assert client.get(f"/artifacts/{aid}/raw").text == CLOTHING_DB_TEXT
    meta = client.get(f"/artifacts/{aid}").json()
    assert meta["kind"] == "transactions" and meta["name"] == "clothes"


def test_artifact_idempotent_upload(client):
    a = upload(client, "transactions", CLOTHING_DB_TEXT)
    b = upload(client, "transactions", CLOTHING_DB_TEXT)
    assert a == b


def test_artifact_validation_error(client):
    resp = client.post("/artifacts/taxonomy", content=b"= t\na\tb\nb\ta\n")
    assert resp.status_code == 422
    assert "cycle" in resp.json()["detail"]


def test_unknown_kind_and_missing_artifact(client):
    assert client.post("/artifacts/nonsense", content=b"x").status_code == 400
    assert client.get("/artifacts/deadbeef").status_code == 404
    assert client.get("/artifacts/deadbeef/raw").status_code == 404


def test_mine_endpoint(client):
    did = upload(client, "transactions", "a b\na c\na b c\nb\n")
    resp = client.post("/mine", json={"dataset_id": did, "min_support": 0.5, "min_confidence": 0.5, "max_items": 3})
    assert resp.status_code == 200
    body = resp.json()
    # frozen from the brute-force oracle: a=>b, b=>a, a=>c, c=>a
    assert body["rule_count"] == 4
    assert client.post("/mine", json={"dataset_id": "missing", "min_support": 0.5, "min_confidence": 0.5, "max_items": 3}).status_code == 404


def test_generalize_run_fig2(client, fig2_ids, clothing_rules, clothing_taxes, clothing_db):
    resp = client.post(
        "/generalize",
        json={
            "ruleset_id": fig2_ids["ruleset"],
            "taxonomyset_id": fig2_ids["taxonomy"],
            "dataset_id": fig2_ids["dataset"],
            "side": "lhs",
        },
    )
    assert resp.status_code == 200
    run = resp.json()
    assert run["status"] == "done"
    assert run["input_count"] == 4 and run["output_count"] == 1
    # run record retrievable and downloads all resolve
    fetched = client.get(f"/runs/{run['id']}").json()
    assert fetched == run
    for aid in run["downloads"].values():
        assert client.get(f"/artifacts/{aid}/raw").status_code == 200
    # service document byte-identical to the library path (CLI parity)
    rs = RuleSet(clothing_rules.rules, mining_params=MiningParams(0.5, 0.5, 5))
    expected = write_generalized(generalize(rs, clothing_taxes, Side.LHS, db=clothing_db))
    assert client.get(f"/artifacts/{run['result_id']}/raw").text == expected


@pytest.fixture
def fig2_run(client, fig2_ids):
    return client.post(
        "/generalize",
        json={
            "ruleset_id": fig2_ids["ruleset"],
            "taxonomyset_id": fig2_ids["taxonomy"],
            "dataset_id": fig2_ids["dataset"],
            "side": "lhs",
        },
    ).json()


def test_query_endpoint(client, fig2_run):
    rid = fig2_run["result_id"]
    body = client.get(f"/results/{rid}/rules").json()
    assert body["total"] == 1 and body["matched"] == 1
    rule = body["rules"][0]
    assert rule["lhs"] == ["light_clothes", "light_shoes"]
    assert rule["links"]["expanded"] and rule["links"]["sources"]
    assert not rule["links"]["measures_drilldown"]
    assert rule["rendered"] == "(light_clothes) & (light_shoes) ⇒ cap"

    # descendant-aware item query
    hit = client.get(f"/results/{rid}/rules", params={"item": ["short"]}).json()
    assert hit["matched"] == 1
    miss = client.get(f"/results/{rid}/rules", params={"item": ["short"], "exact": "true"}).json()
    assert miss["matched"] == 0

    # measure predicate
    kept = client.get(f"/results/{rid}/rules", params={"where": ["support>=0.5"]}).json()
    assert kept["matched"] == 1
    dropped = client.get(f"/results/{rid}/rules", params={"where": ["support>=0.99"]}).json()
    assert dropped["matched"] == 0

    assert client.get(f"/results/{rid}/rules", params={"where": ["bogus>=1"]}).status_code == 400


def test_drilldown_endpoints(client, fig2_run):
    rid = fig2_run["result_id"]
    key = client.get(f"/results/{rid}/rules").json()["rules"][0]["key"]
    exp = client.get(f"/results/{rid}/rules/{key}/expanded").json()
    assert len(exp["expansions"]) == 4
    src = client.get(f"/results/{rid}/rules/{key}/sources").json()
    assert len(src["sources"]) == 4
    meas = client.get(f"/results/{rid}/rules/{key}/measures").json()
    assert meas["measures"]["support"] == pytest.approx(5 / 7)
    assert client.get(f"/results/{rid}/rules/nope/expanded").status_code == 404


def test_export_endpoint(client, fig2_run):
    rid = fig2_run["result_id"]
    text = client.get(f"/results/{rid}/export", params={"measure": ["support"]}).text
    assert text.splitlines()[0] == "rule\tsupport"
    assert "0.7143" in text


def test_generalize_without_dataset(client, fig2_ids):
    run = client.post(
        "/generalize",
        json={"ruleset_id": fig2_ids["ruleset"], "taxonomyset_id": fig2_ids["taxonomy"]},
    ).json()
    assert run["status"] == "done"
    body = client.get(f"/results/{run['result_id']}/rules").json()
    assert body["rules"][0]["measures"]["support"] is None


def test_generalize_empty_taxonomy_pass_through(client, fig2_ids):
    tid = upload(client, "taxonomy", "")
    run = client.post(
        "/generalize",
        json={"ruleset_id": fig2_ids["ruleset"], "taxonomyset_id": tid},
    ).json()
    assert run["output_count"] == run["input_count"] == 4


def test_generalize_dangling_refs(client, fig2_ids):
    resp = client.post(
        "/generalize",
        json={"ruleset_id": "missing", "taxonomyset_id": fig2_ids["taxonomy"]},
    )
    assert resp.status_code == 404


def test_store_survives_restart(tmp_path):
    root = tmp_path / "store"
    with TestClient(create_app(root)) as c1:
        aid = upload(c1, "transactions", CLOTHING_DB_TEXT)
    with TestClient(create_app(root)) as c2:
        assert c2.get(f"/artifacts/{aid}/raw").text == CLOTHING_DB_TEXT
