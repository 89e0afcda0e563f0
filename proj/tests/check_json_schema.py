"""Validate JSON output of every collent subcommand against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = [
    ("correlations", ["correlations", "--alpha", "0.9", "--l-max", "6", "--format", "json"]),
    ("correlations", ["correlations", "--alpha", "0.5", "--l-max", "3", "--oracle-n", "4096",
                      "--format", "json"]),
    ("sweep", ["sweep", "--alphas", "0.3,0.99", "--m", "1..3", "--s", "1..2", "--d", "0..1",
               "--approx", "--oracle-n", "4096", "--format", "json"]),
    ("sweep", ["sweep", "--alpha", "0.5", "--format", "json"]),
    ("field", ["field", "--mass", "1", "--length", "1", "--r", "0,0.5,2", "--format", "json"]),
    ("validate", ["validate", "--oracle-n", "65536", "--tol", "1e-6", "--json"]),
    ("validate", ["validate", "--oracle-n", "65536", "--inject-fault", "g1-sign", "--json"]),
]


def main() -> int:
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for name, args in RUNS:
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}\n{proc.stderr}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(proc.stdout), schema,
                                cls=jsonschema.Draft202012Validator)
        except (json.JSONDecodeError, jsonschema.ValidationError) as err:
            print(f"FAIL {' '.join(args)}: {err}")
            failures += 1
            continue
        print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
