"""Run the acceptance suite and print one line per criterion."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                       str(root / "tests" / "test_acceptance.py")],
                      cwd=root, capture_output=True, text=True)
lines = [l for l in proc.stdout.splitlines() if l.startswith("CRITERION ")]
print("\n".join(lines))
sys.exit(proc.returncode)
