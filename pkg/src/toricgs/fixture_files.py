"""Access to the JSON instance files bundled with the package."""

from __future__ import annotations

import os

_FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(relative: str) -> str:
    """Absolute path of a bundled fixture file, e.g. ``"tetriamond.json"``."""
    path = os.path.join(_FIXTURE_DIR, relative)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no bundled fixture {relative!r}")
    return path


def list_fixtures() -> list[str]:
    out = []
    for root, _dirs, names in os.walk(_FIXTURE_DIR):
        for name in sorted(names):
            if name.endswith(".json"):
                out.append(os.path.relpath(os.path.join(root, name), _FIXTURE_DIR))
    return sorted(out)
