"""Reads a preset CSV the way the plotting scripts do: stdlib csv, '#' comment first."""

import csv
import subprocess
import sys
import tempfile
from pathlib import Path

REQUIRED = ["band", "series_axis", "series_value", "axis", "axis_value", "strategy", "seed", "energy_j",
            "energy_stderr", "t_total", "t_m", "t_h", "r0_m", "cfg.deployment.lambda_c", "cfg.q_bits"]


def main(cli, config):
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "fig2.csv"
        subprocess.run([cli, "run", config, "--preset", "fig2", "--out", str(out)], check=True)
        lines = out.read_text().splitlines()

    assert lines[0].startswith("# uavmec ") and "csv-v1" in lines[0] and "config-crc32=" in lines[0], lines[0]
    rows = list(csv.DictReader(lines[1:]))
    missing = [c for c in REQUIRED if c not in rows[0]]
    assert not missing, missing
    assert len(rows) == 123, len(rows)
    assert {r["strategy"] for r in rows} == {"B", "MR-B@10", "MR-B@20"}
    for r in rows:
        assert float(r["energy_j"]) > 0.0
        assert float(r["axis_value"]) == float(r["cfg.deployment.lambda_c"])
    print(f"{len(rows)} rows, {len(rows[0])} columns")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
