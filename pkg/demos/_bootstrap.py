"""Make the demos runnable from a fresh checkout, installed or not."""

import pathlib
import sys

try:
    import topomodal  # noqa: F401
except ImportError:
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))
