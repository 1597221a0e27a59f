import json
import time
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from optics2d.export import scene_to_json, scene_to_obj
from optics2d.scenarios import glass_plate, oceanarium, regular_prism
from optics2d.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.text == "ok"


def test_list_scenarios(client):
    r = client.get("/api/scenarios")
    assert r.status_code == 200
    names = [d["name"] for d in r.json()]
    assert "oceanarium" in names
    assert "regular_prism" in names
    prism = next(d for d in r.json() if d["name"] == "regular_prism")
    sides = next(p for p in prism["params"] if p["name"] == "sides")
    assert sides["min"] == 3
    # stable across calls
    assert client.get("/api/scenarios").content == r.content


def test_instantiate_matches_builder_bytes(client):
    r = client.post("/api/scenarios/oceanarium", content=b"{}")
    assert r.status_code == 200
    assert r.text == scene_to_json(oceanarium())
    r = client.post("/api/scenarios/glass_plate", content=json.dumps({"thickness": 2.0}))
    assert r.text == scene_to_json(glass_plate(thickness=2.0))


def test_instantiate_unknown_404(client):
    assert client.post("/api/scenarios/warp_core", content=b"{}").status_code == 404


def test_instantiate_bad_params_422(client):
    r = client.post("/api/scenarios/regular_prism", content=json.dumps({"sides": 2}))
    assert r.status_code == 422
    detail = r.json()["detail"]
    assert any(e["param"] == "sides" for e in detail)
    r = client.post("/api/scenarios/oceanarium", content=json.dumps({"bogus": 1}))
    assert r.status_code == 422


def test_trace_glass_plate(client):
    body = {"scene": scene_to_obj(glass_plate())}
    r = client.post("/api/trace", content=json.dumps(body))
    assert r.status_code == 200
    assert "X-Elapsed-Ms" in r.headers
    paths = r.json()["paths"]
    assert len(paths) == 1
    assert len(paths[0]["segments"]) == 3


def test_trace_rejects_invalid_scene_with_violations(client):
    obj = scene_to_obj(glass_plate())
    # second copy of the plate shifted half a width: partial overlap
    clone = json.loads(json.dumps(obj["elements"][0]))
    clone["id"] = "plate2"
    clone["pose"]["x"] = 0.5
    obj["elements"].append(clone)
    r = client.post("/api/trace", content=json.dumps({"scene": obj}))
    assert r.status_code == 422
    kinds = {v["kind"] for v in r.json()["detail"]}
    assert "PartialOverlap" in kinds


def test_trace_rejects_malformed(client):
    assert client.post("/api/trace", content=b"{not json").status_code == 400
    assert client.post("/api/trace", content=json.dumps({"nope": 1})).status_code == 400
    bad_version = {"scene": dict(scene_to_obj(glass_plate()), version=99)}
    assert client.post("/api/trace", content=json.dumps(bad_version)).status_code == 400


def test_trace_deterministic_and_stateless(client):
    prism = {"scene": scene_to_obj(regular_prism(3, 1.0, "crown"))}
    plate = {"scene": scene_to_obj(glass_plate())}
    first = client.post("/api/trace", content=json.dumps(prism)).content
    client.post("/api/trace", content=json.dumps(plate))  # interleave another request
    second = client.post("/api/trace", content=json.dumps(prism)).content
    assert first == second


def test_trace_concurrent_identical_bodies(client):
    payload = json.dumps({"scene": scene_to_obj(regular_prism(3, 1.0, "crown"))})

    def call(_):
        return client.post("/api/trace", content=payload).content

    with ThreadPoolExecutor(max_workers=8) as pool:
        bodies = list(pool.map(call, range(16)))
    assert len(set(bodies)) == 1


def test_white_prism_trace_under_50ms(client):
    payload = json.dumps({"scene": scene_to_obj(regular_prism(3, 1.0, "crown"))})
    client.post("/api/trace", content=payload)  # warm-up
    started = time.perf_counter()
    r = client.post("/api/trace", content=payload)
    elapsed_ms = (time.perf_counter() - started) * 1000
    assert r.status_code == 200
    assert len(r.json()["paths"]) == 7
    assert elapsed_ms < 50.0


def test_static_serving(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>sandbox</body></html>")
    app = create_app(static_dir=str(tmp_path))
    client = TestClient(app)
    assert "sandbox" in client.get("/").text
    assert client.get("/healthz").text == "ok"  # api still wins over static
