"""Run the acceptance module and print only the per-criterion lines.

    python3 scripts/run_acceptance.py [-v]
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def main(argv: list[str]) -> int:
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]
    proc = subprocess.run(cmd, cwd=ROOT, capture_output=True, text=True)
    lines = proc.stdout.splitlines()
    if "-v" in argv:
        print(proc.stdout)
    else:
        for line in lines:
            if line.startswith("criterion"):
                print(line)
        if lines:
            print(lines[-1])
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
