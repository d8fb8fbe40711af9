"""Run the acceptance gate and print one line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    cmd = [sys.executable, "-m", "pytest", "-q", str(ROOT / "tests" / "test_acceptance.py")]
    sys.exit(subprocess.call(cmd + sys.argv[1:], cwd=ROOT))
