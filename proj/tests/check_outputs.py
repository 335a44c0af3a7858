#!/usr/bin/env python3
"""Run `report --synthetic` and check every JSON output against its schema and every SVG for well-formedness."""

import json
import pathlib
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
from referencing import Registry, Resource

SCHEMAS = {
    "validation.json": "validation.schema.json",
    "qa.json": "qa.schema.json",
    "fit.json": "fit.schema.json",
    "report.json": "report.schema.json",
}


def main() -> int:
    cli, schema_dir, out_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    shutil.rmtree(out_dir, ignore_errors=True)
    run = subprocess.run([cli, "report", "--synthetic", "--seed", "7", "--out-dir", str(out_dir)],
                         capture_output=True, text=True)
    if run.returncode != 0:
        print(f"report exited {run.returncode}: {run.stderr}")
        return 1

    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())
    failures = 0
    for output, schema_name in SCHEMAS.items():
        schema = schemas[schema_name]
        jsonschema.Draft202012Validator.check_schema(schema)
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        errors = list(validator.iter_errors(json.loads((out_dir / output).read_text())))
        for e in errors:
            print(f"{output}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        failures += bool(errors)
        print(f"{output}: {'ok' if not errors else 'INVALID'}")

    if json.loads(run.stdout) != json.loads((out_dir / "report.json").read_text()):
        print("stdout does not match report.json")
        failures += 1

    svgs = sorted(out_dir.rglob("*.svg"))
    if len(svgs) < 5:
        print(f"expected at least 5 SVG files, found {len(svgs)}")
        failures += 1
    for svg in svgs:
        try:
            root = ET.parse(svg).getroot()
            if root.tag != "{http://www.w3.org/2000/svg}svg":
                raise ValueError(f"root element is {root.tag}")
            print(f"{svg.relative_to(out_dir)}: ok")
        except (ET.ParseError, ValueError) as e:
            print(f"{svg.relative_to(out_dir)}: {e}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
