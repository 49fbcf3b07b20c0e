"""Tests for the HTTP service endpoints."""

import json

import pytest
from fastapi.testclient import TestClient

from surfgrow.service import app
from surfgrow.synth import full_encoder, growth_stage, strip_markers

client = TestClient(app)


def post(path: str, payload: dict):
    return client.post(path, json=payload)


class TestHealth:
    def test_health(self):
        r = client.get("/health")
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "ok"
        assert body["version"]


class TestGenerate:
    def test_text_encoder(self):
        r = post("/generate", {"distance": 3})
        assert r.status_code == 200
        body = r.json()
        assert body["content"] == full_encoder(3).to_text()
        assert body["qubits"] == 9
        assert body["depth"] == 4
        assert body["cx_count"] == 11
        assert body["local"] is True
        assert body["input_qubit"] == 4

    def test_url_format(self):
        r = post("/generate", {"distance": 2, "format": "url"})
        assert r.json()["content"].startswith("https://algassert.com/crumble#circuit=")

    def test_records_format(self):
        r = post("/generate", {"distance": 2, "format": "records"})
        payload = json.loads(r.json()["content"])
        assert payload["layers"] == 3
        assert any(rec["op"] == "CX" for rec in payload["records"])

    def test_marker_stripping(self):
        bare = post("/generate", {"distance": 3, "include_markers": False}).json()
        assert bare["content"] == strip_markers(full_encoder(3)).to_text()
        assert "MARK" not in bare["content"]

    def test_stage_generation(self):
        r = post("/generate", {"distance": 4, "kind": "stage"})
        body = r.json()
        assert body["content"] == growth_stage(4).to_text()
        assert body["input_qubit"] is None
        assert body["depth"] == 2

    def test_distance_cap_is_config_error(self):
        r = post("/generate", {"distance": 26})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_cap_can_be_raised(self):
        r = post("/generate", {"distance": 26, "max_pattern_distance": 27})
        assert r.status_code == 200
        assert r.json()["qubits"] == 676

    def test_request_validation(self):
        assert post("/generate", {"distance": 1}).status_code == 422
        assert post("/generate", {"distance": 3, "format": "qasm"}).status_code == 422


class TestVerify:
    def test_generated_distance(self):
        r = post("/verify", {"distance": 5})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["group_match"] and body["sign_match"]
        assert body["depth"] == 6 and body["depth_match"]
        assert body["logical_frame"]["text"] == "X->-Y, Z->+Z"
        assert body["per_stage_cx"] == [11, 20]

    def test_supplied_circuit_with_inferred_distance(self):
        text = full_encoder(4).to_text()
        r = post("/verify", {"circuit_text": text})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["distance"] == 4
        assert body["logical_frame"]["text"] == "X->+X, Z->+Z"

    def test_sabotaged_circuit_is_not_an_http_error(self):
        text = full_encoder(3).to_text()
        # Remove the final CX pair; verification fails honestly.
        sabotaged = text.rsplit("CX_", 1)[0].rstrip(";")
        r = post("/verify", {"circuit_text": sabotaged})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is False
        assert body["group_match"] is False
        assert body["first_unmatched"]

    def test_parse_error_kind(self):
        r = post("/verify", {"circuit_text": "Q(0,0)0;WAT_1"})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "parse"

    def test_missing_everything_is_config(self):
        r = post("/verify", {})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_cap_applies_to_generated_verification(self):
        r = post("/verify", {"distance": 30})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_non_square_circuit_is_verification_error(self):
        r = post("/verify", {"circuit_text": "Q(0,0)0;Q(0,1)1;Q(0,2)2;R_0_1_2"})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "verification"

    def test_strict_flag_round_trips(self):
        r = post("/verify", {"distance": 3, "strict": True})
        assert r.json()["strict_checked"] is True


class TestVerifyStage:
    def test_stage_pass(self):
        r = post("/verify-stage", {"distance": 4})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["start_distance"] == 4 and body["end_distance"] == 6
        assert body["logical_frame"] == "X->+X, Z->+Z"
        assert body["cx_count"] == 26

    def test_stage_cap(self):
        r = post("/verify-stage", {"distance": 99})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"


class TestStats:
    def test_rows(self):
        r = post("/stats", {"distances": [2, 3, 5]})
        assert r.status_code == 200
        rows = r.json()["rows"]
        assert [row["distance"] for row in rows] == [2, 3, 5]
        d5 = rows[2]
        assert d5["cx_count"] == 31
        assert d5["stage"]["measured_cx"] == 32
        assert d5["stage"]["claimed_cx"] == 36
        assert d5["stage"]["claim_matches"] is False
        assert d5["stage"]["baseline_cx"] == 44
        assert d5["stage"]["beats_baseline"] is True

    def test_even_distance_has_no_baseline(self):
        row = post("/stats", {"distances": [4]}).json()["rows"][0]
        assert row["stage"]["baseline_cx"] is None
        assert row["stage"]["beats_baseline"] is None

    def test_low_distance_is_config(self):
        r = post("/stats", {"distances": [1]})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_empty_list_is_rejected(self):
        assert post("/stats", {"distances": []}).status_code == 422


class TestOracle:
    def test_impossibility(self):
        r = post("/oracle", {"distance": 3})
        assert r.status_code == 200
        imp = r.json()["impossibility"]
        assert imp["impossible"] is True
        assert imp["ring_qubits"] == 16
        assert imp["available_rank"] == 8
        assert imp["census_backed"] is True
        assert "impossible" in imp["text"]

    def test_census(self):
        r = post("/oracle", {"census_distance": 4, "include_elements": True})
        census = r.json()["census"]
        assert census["weight1_count"] == 0
        assert census["weight2_count"] == 6
        assert census["independent_rank"] == 6
        assert len(census["weight2_elements"]) == 6

    def test_census_elements_omitted_by_default(self):
        census = post("/oracle", {"census_distance": 3}).json()["census"]
        assert census["weight2_elements"] is None

    def test_both_at_once(self):
        body = post("/oracle", {"distance": 2, "census_distance": 2}).json()
        assert body["impossibility"]["impossible"] is True
        assert body["census"]["weight2_count"] == 2

    def test_census_cap_is_config(self):
        r = post("/oracle", {"census_distance": 20})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_empty_request_is_config(self):
        r = post("/oracle", {})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "config"

    def test_beyond_cap_impossibility_uses_formula(self):
        imp = post("/oracle", {"distance": 15}).json()["impossibility"]
        assert imp["census_backed"] is False
        assert imp["impossible"] is True
        assert imp["available_rank"] == 32
