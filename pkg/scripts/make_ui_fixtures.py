"""Regenerate the frontend test fixtures from a real seeded pipeline run.

Usage: python3 scripts/make_ui_fixtures.py
Writes frontend/tests/fixtures/*.json plus a small manifest of the chosen
pattern/instance ids so the tests stay self-describing.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from vax.pipeline import RunConfig, run
from vax.service import Session, create_app
from vax.synthetic import five_class_blobs

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        dataset = five_class_blobs(seed=1)
        csv_path = Path(tmp) / "blobs.csv"
        lines = ["var_1,var_2,class"]
        for i in range(dataset.n_rows):
            lines.append(
                f"{dataset.instances[i, 0]},{dataset.instances[i, 1]},"
                f"{dataset.classes[int(dataset.labels[i])]}"
            )
        csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        out = Path(tmp) / "artifacts"
        run(
            RunConfig(
                input_path=str(csv_path),
                label_column="class",
                out_dir=str(out),
                seed=1,
                trees=16,
                blend="auto",
                blend_grid=[0.0, 0.25, 0.5, 0.65, 0.75, 1.0],
            )
        )
        session = Session.load(out)
        client = TestClient(create_app(out))

        def save(name: str, payload) -> None:
            (FIXTURES / name).write_text(
                json.dumps(payload, indent=2) + "\n", encoding="utf-8"
            )

        save("meta.json", client.get("/api/meta").json())
        base = client.get("/api/patterns", params={"order": "support"}).json()
        save("patterns_support.json", base)
        save("map_000.json", client.get("/api/map", params={"lambda": "0"}).json())
        save("map_auto.json", client.get("/api/map", params={"lambda": "auto"}).json())

        # One low-support pattern outside the pinned top-3: the brush target.
        rows = base["rows"]
        target = rows[6]
        target_ids = target["supported_instance_ids"]
        save(
            "selection_single.json",
            client.post("/api/selection", json={"instance_ids": target_ids}).json(),
        )
        save(
            "patterns_instances_single.json",
            client.get(
                "/api/patterns",
                params={"instances": ",".join(map(str, target_ids)), "order": "support"},
            ).json(),
        )

        # Three low-support patterns, two instances each: the six-point
        # multi-selection scenario.
        low = [r for r in rows[3:] if len(r["supported_instance_ids"]) >= 2][:3]
        multi_ids = [iid for r in low for iid in r["supported_instance_ids"][:2]]
        save(
            "selection_multi.json",
            client.post("/api/selection", json={"instance_ids": multi_ids}).json(),
        )
        save(
            "patterns_instances_multi.json",
            client.get(
                "/api/patterns",
                params={"instances": ",".join(map(str, multi_ids)), "order": "support"},
            ).json(),
        )
        save(
            "fixture_manifest.json",
            {
                "target_pattern_id": target["pattern_id"],
                "target_instance_ids": target_ids,
                "multi_pattern_ids": [r["pattern_id"] for r in low],
                "multi_instance_ids": multi_ids,
                "resolved_lambda": session.manifest["resolved_lambda"],
            },
        )
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
