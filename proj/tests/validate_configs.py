"""Validate every example config against the shipped JSON schema."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "experiment.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
failures = 0
for path in sorted((root / "examples").glob("*.json")):
    try:
        jsonschema.validate(json.loads(path.read_text()), schema)
        print(f"ok   {path.name}")
    except jsonschema.ValidationError as e:
        failures += 1
        print(f"FAIL {path.name}: {e.message}")
sys.exit(1 if failures else 0)
