"""Record a real devil-play HTTP session into the frontend test fixture.

The frontend's scripted-session test replays these exchanges through a
stubbed fetch, so the client is exercised against genuine server payloads.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from qefg.runtime.service import create_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "test" / "fixtures" / "session.json"

CREATE_BODY = {
    "config": {
        "walker": {"power": 1, "length": 13, "initial_position": 6},
        "horizon": 20,
        "seed": 0,
    },
    "angel_strategy": "fixed-coin",
    "debug": False,
}

SITES = [5, 6, 7, 5, 8]


def main() -> None:
    client = TestClient(create_app())
    exchanges = []

    def record(method: str, url: str, body, response):
        exchanges.append({
            "method": method,
            "url": url,
            "request_body": body,
            "status": response.status_code,
            "response_body": response.json(),
        })

    response = client.post("/v1/games", json=CREATE_BODY)
    record("POST", "/v1/games", CREATE_BODY, response)
    session_id = response.json()["id"]

    for site in SITES:
        response = client.post(f"/v1/games/{session_id}/action", json={"site": site})
        record("POST", f"/v1/games/{session_id}/action", {"site": site}, response)

    response = client.get(f"/v1/games/{session_id}?view=devil")
    record("GET", f"/v1/games/{session_id}?view=devil", None, response)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"session_id": session_id, "exchanges": exchanges}, indent=2) + "\n")
    outcomes = [
        e for x in exchanges
        for e in x["response_body"].get("view", {}).get("history", [])
        if e["type"] == "detect"
    ]
    print(f"wrote {OUT} with {len(exchanges)} exchanges; "
          f"detections: {[(e['site'], e['outcome']) for e in outcomes[-5:]]}")


if __name__ == "__main__":
    main()
