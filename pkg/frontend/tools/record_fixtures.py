#!/usr/bin/env python3
"""Record /api/v1 responses from the real engine into test fixtures.

Run from the repository root after installing the engine:

    python3 frontend/tools/record_fixtures.py
"""
from pathlib import Path

from fastapi.testclient import TestClient

from fourd.bundle import load_bundle
from fourd.service import create_app

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = Path(__file__).resolve().parents[1] / "test" / "fixtures"

REJECT_CSV = "Activity_ID,Name,Duration,Predecessors\nA,X,1,B\nB,Y,1,A\n"
ACCEPT_CSV = (ROOT / "demo" / "schedule.csv").read_text(encoding="utf-8").replace(
    "EXC,Excavation,2,", "EXC,Excavation,4,")


def save(name: str, response) -> None:
    path = FIXTURES / name
    path.write_bytes(response.content)
    print(f"{name}: {response.status_code} {len(response.content)}B")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    bundle = load_bundle(ROOT / "demo" / "project.json")
    client = TestClient(create_app(bundle))

    save("project.json", client.get("/api/v1/project"))
    save("schedule_default.json", client.get("/api/v1/schedule"))
    save("schedule_tf_desc_promoted.json",
         client.get("/api/v1/schedule",
                    params={"sort": "total_float", "order": "desc",
                            "promote": "FIN,SLB"}))
    for day in ("2007-01-01", "2007-01-08", "2007-01-15"):
        save(f"scene_{day}.json", client.get("/api/v1/scene", params={"date": day}))
    save("activity_FND.json", client.get("/api/v1/activities/FND"))
    save("boq.json", client.get("/api/v1/boq"))

    (FIXTURES / "schedule_accept_body.csv").write_text(ACCEPT_CSV, encoding="utf-8")

    reject = client.post("/api/v1/revisions", content=REJECT_CSV)
    assert reject.status_code == 422
    save("revision_reject.json", reject)

    accept = client.post("/api/v1/revisions", content=ACCEPT_CSV)
    assert accept.status_code == 200
    save("revision_accept.json", accept)
    # post-acceptance views (revision 2) for the stateful replay
    save("project_rev2.json", client.get("/api/v1/project"))
    save("schedule_rev2.json", client.get("/api/v1/schedule"))
    save("scene_rev2_2007-01-08.json",
         client.get("/api/v1/scene", params={"date": "2007-01-08"}))
    save("activity_rev2_FND.json", client.get("/api/v1/activities/FND"))


if __name__ == "__main__":
    main()
