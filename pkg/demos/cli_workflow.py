"""End-to-end command-line workflow in a temporary directory.

Writes a problem document, runs several subcommands against it, and shows
the CSV/verdict conventions: every CSV starts with a config-hash comment so
results stay traceable to the exact inputs, every analysis ends with a
greppable VERDICT line, and exit code 3 is reserved for verdict FAIL.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

DOC = {
    "interval": {"a": 0.0, "b": 1.0},
    "coefficients": {
        "s": {"breakpoints": [0.0, 1.0], "values": [1.0]},
        "q": {"breakpoints": [0.0, 1.0], "values": [0.0]},
        "r": {"breakpoints": [0.0, 1.0], "values": [1.0]},
    },
    "bc": {"alpha": 0.0, "beta": "pi"},
}


def run(*args):
    cmd = [sys.executable, "-m", "slprime.cli", *args]
    print("$", " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    for line in (proc.stdout + proc.stderr).strip().splitlines():
        print("  ", line)
    print("   exit code:", proc.returncode)
    print()
    return proc


with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "unit.json"
    cfg.write_text(json.dumps(DOC))
    out = Path(tmp) / "spec.csv"

    run("spectrum", "--config", str(cfg), "--n-max", "4", "--out", str(out))
    print("CSV written:")
    print(out.read_text())

    run("incompat", "--config", str(cfg), "--n-max", "1000",
        "--out", str(Path(tmp) / "inc.csv"))

    # validation failures exit with code 2 and name the offending field
    bad = json.loads(json.dumps(DOC))
    bad["bc"]["alpha"] = 3.5
    cfg.write_text(json.dumps(bad))
    run("spectrum", "--config", str(cfg))
