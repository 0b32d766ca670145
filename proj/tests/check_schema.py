"""Validates tgs reports against tools/report.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    (0, ["verify", "z6-mult.tgs"]),
    (0, ["verify", "z6-sum.tgs"]),
    (0, ["verify", "z3-mult-loose.tgs"]),
    (0, ["enumerate", "--order", "2", "--gamma", "1"]),
    (0, ["enumerate", "--order", "2", "--gamma", "2", "--up-to-iso", "--commutative"]),
    (0, ["ideals", "z4-mult.tgs"]),
    (0, ["ideals", "z6-mult.tgs", "--classify"]),
    (0, ["spec", "z4-mult.tgs", "--topology"]),
    (0, ["spec", "trivial.tgs", "--topology"]),
    (0, ["localize", "z4-mult.tgs", "--prime", "0,2"]),
    (0, ["localize", "z6-mult.tgs", "--system", "1,2,4", "--plain-relation"]),
    (1, ["localize", "z6-mult.tgs", "--system", "1,2,4", "--displayed-sum"]),
    (0, ["sheaf", "z4-mult.tgs"]),
    (0, ["sheaf", "z6-mult.tgs", "--module", "z6-regular.tgm", "--open", "2,3"]),
    (0, ["module", "verify", "z3-null.tgm"]),
    (0, ["module", "homs", "z3-regular.tgm", "z3-null.tgm"]),
    (0, ["module", "tensor", "z6-regular.tgm", "z6-three.tgm"]),
    (0, ["module", "hom-module", "z3-regular.tgm", "z3-regular.tgm"]),
    (0, ["cech", "z6-mult.tgs", "--cover", "1,2,3", "--module", "z6-three.tgm"]),
    (0, ["euler", "z6-mult.tgs", "--cover", "2,3"]),
    (0, ["tor", "z6-mod3.tgm", "z6-three.tgm", "--i", "0"]),
    (0, ["ext", "z4-half.tgm", "z4-regular.tgm", "--i", "1", "--descending"]),
    (1, ["localize", "z6-mult.tgs", "--system", "0"]),
    (1, ["tor", "z3-null.tgm", "z3-regular.tgm"]),
    (2, ["verify", "bad-index.tgs"]),
    (2, ["spec", "no-such-file.tgs"]),
    (2, ["cech", "z6-mult.tgs", "--cover", "7"]),
]


def main():
    tool, schema_path, data, golden = (str(pathlib.Path(a).resolve()) for a in sys.argv[1:5])
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0

    def check(label, text):
        nonlocal failures
        errors = list(validator.iter_errors(json.loads(text)))
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0].message[:200]}")

    for path in sorted(pathlib.Path(golden).glob("*.json")):
        check(path.name, path.read_text())

    with tempfile.TemporaryDirectory() as tmp:
        catalog = pathlib.Path(tmp) / "cat"
        runs = RUNS + [
            (0, ["catalog", "query", str(catalog)]),
            (0, ["catalog", "add", str(catalog), "z4-mult.tgs", "z6-mult.tgs"]),
            (0, ["catalog", "query", str(catalog), "--flag", "valid", "--order", "6"]),
            (0, ["catalog", "rebuild", str(catalog)]),
        ]
        for code, args in runs:
            proc = subprocess.run([tool, *args], cwd=data, capture_output=True, text=True)
            label = " ".join(args[:3])
            if proc.returncode != code:
                failures += 1
                print(f"FAIL {label}: exit {proc.returncode}, expected {code}")
                continue
            check(label, proc.stdout)

    print(f"{failures} schema failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
