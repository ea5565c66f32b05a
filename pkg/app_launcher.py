"""Start the verification dashboard with the repo root importable.

Usage:
    python app_launcher.py [extra streamlit args]
"""

import os
import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent
home = root / "app" / "Home.py"

env = dict(os.environ)
env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(root), env.get("PYTHONPATH", "")]))
env.setdefault("DIVLIE_RESULTS_DIR", str(root / "verification_results"))

sys.exit(subprocess.run(["streamlit", "run", str(home), *sys.argv[1:]], cwd=str(root), env=env).returncode)
