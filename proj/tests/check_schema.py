"""Run each subcommand with --json and validate the output against the schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = tempfile.mkdtemp()
    cert = os.path.join(tmp, "cert.json")
    subprocess.run([cli, "closure", "--gens", "01,10", "--witness", "100110", "--out", cert], check=True)

    runs = [
        ["mul", "10", "01", "10"],
        ["mul", "0", "1", "0"],
        ["dual", "001"],
        ["degree", "100110"],
        ["enumerate", "--balanced", "--max-len", "4"],
        ["closure", "--gens", "01,10", "--member", "0011", "--member", "0", "--witness", "1001",
         "--witness", "0011"],
        ["closure", "--gens", "", "--members"],
        ["ad-closure", "--seeds", "01", "--ambient", "au", "--work-len", "8", "--report-len", "4",
         "--ad-len", "4", "--witness", "10"],
        ["check-simple", "--ambient", "pu", "--seed-len", "4", "--report-len", "4", "--ad-len", "6",
         "--work-len", "10"],
        ["check-simple", "--ambient", "gen:01,10", "--seed-len", "2", "--report-len", "4",
         "--ad-len", "6", "--work-len", "10", "--timing"],
        ["check-circle", "--seed-len", "2", "--report-len", "4", "--ad-len", "6", "--work-len", "10"],
        ["invertibles", "--max-len", "6"],
        ["verify-cert", cert],
    ]
    failures = 0
    for args in runs:
        proc = subprocess.run([cli] + args + ["--json"], capture_output=True, text=True)
        try:
            doc = json.loads(proc.stdout)
            validator.validate(doc)
            if doc["exit_code"] != proc.returncode:
                raise ValueError("exit_code field %d != process exit %d" % (doc["exit_code"], proc.returncode))
            print("ok   ", " ".join(args[:3]))
        except Exception as e:  # noqa: BLE001
            failures += 1
            print("FAIL ", " ".join(args), "->", e)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
