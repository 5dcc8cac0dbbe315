#!/usr/bin/env python3
"""Validates one CLI report of every kind against the published JSON schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    if len(sys.argv) != 4:
        print("usage: check_schema.py <bell_cli> <schema.json> <data-dir>")
        return 2
    cli, schema_path, data = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)
    validator.check_schema(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as td:
        tmp = Path(td)
        shift_spec = tmp / "shift.json"
        shift_spec.write_text('{"sigma": [1, 1], "lambda1": 0.5, "lambdas": [0.0]}\n')
        forced_spec = tmp / "forced.json"
        forced_spec.write_text('{"sigma": [1, 1], "lambda1": 0.0, "lambdas": [4.0]}\n')

        runs = {
            "bounds": [cli, "bounds", str(data / "chsh.csv"), "--out"],
            "seesaw": [cli, "seesaw", str(data / "gisin3.csv"), "--dprime", "2",
                       "--restarts", "10", "--seed", "1", "--out"],
            "twist": [cli, "twist", str(data / "gisin3.csv"), "--spec",
                      str(data / "twist_gisin3_witness.json"), "--out"],
            "shift": [cli, "shift", str(data / "gisin3.csv"), "--spec", str(shift_spec),
                      "--out"],
            "shift_forced": [cli, "shift", str(data / "gisin3.csv"), "--spec",
                             str(forced_spec), "--force", "--out"],
            "optimize": [cli, "optimize", str(data / "gisin3.csv"), "--samples", "10",
                         "--seed", "1", "--out"],
            "optimize_ratio": [cli, "optimize", str(data / "gisin3.csv"), "--objective",
                               "dim:2", "--samples", "2", "--no-refine",
                               "--seesaw-restarts", "10", "--seed", "1", "--out"],
            "histogram": [cli, "histogram", "--mode", "random", "--n", "50", "--seed", "2",
                          "--json-out"],
            "scan": [cli, "scan", "0.3", "0.8", "1.7", "--axis", "pitch", "--steps", "36",
                     "--json-out"],
        }

        reports = {}
        for name, cmd in runs.items():
            out = tmp / f"{name}.json"
            proc = subprocess.run(cmd + [str(out)], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"[FAIL] {name}: exit {proc.returncode}\n{proc.stderr}")
                failures += 1
                continue
            reports[name] = json.loads(out.read_text())

        for name, report in reports.items():
            errors = sorted(validator.iter_errors(report), key=str)
            if errors:
                print(f"[FAIL] {name}: {errors[0].message} at {list(errors[0].absolute_path)}")
                failures += 1
            else:
                print(f"[ok] {name} validates as kind={report['kind']}")

        # the schema must actually constrain: mutations have to be rejected
        if "bounds" in reports:
            broken = dict(reports["bounds"])
            del broken["B"]
            if validator.is_valid(broken):
                print("[FAIL] schema accepted a bounds report without B")
                failures += 1
            broken = dict(reports["bounds"])
            broken["kind"] = "bogus"
            if validator.is_valid(broken):
                print("[FAIL] schema accepted an unknown report kind")
                failures += 1
            broken = dict(reports["bounds"])
            broken["extra"] = 1
            if validator.is_valid(broken):
                print("[FAIL] schema accepted an undeclared key")
                failures += 1
            print("[ok] mutated reports are rejected")

        if "shift_forced" in reports:
            recert = reports["shift_forced"]["recertification"]
            if not isinstance(recert, dict):
                print("[FAIL] forced shift report lacks a recertification object")
                failures += 1

    if failures:
        print(f"{failures} schema check(s) failed")
        return 1
    print("all schema checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
