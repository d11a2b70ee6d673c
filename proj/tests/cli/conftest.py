import json
import os
import pathlib
import subprocess

import pytest


@pytest.fixture(scope="session")
def ndisco_bin():
    path = os.environ.get("NDISCO_BIN")
    if not path or not pathlib.Path(path).exists():
        pytest.skip("NDISCO_BIN does not point at the built CLI")
    return path


@pytest.fixture(scope="session")
def schemas():
    root = pathlib.Path(os.environ.get("NDISCO_SCHEMAS", pathlib.Path(__file__).resolve().parents[2] / "schemas"))
    return {p.name: json.loads(p.read_text()) for p in root.glob("*.schema.json")}


@pytest.fixture
def run(ndisco_bin):
    def _run(*args, env=None, stdin=None):
        full_env = {k: v for k, v in os.environ.items() if k != "NDISCO_SEED"}
        if env:
            full_env.update(env)
        return subprocess.run([ndisco_bin, *map(str, args)], capture_output=True, text=True, env=full_env,
                              input=stdin, timeout=600)

    return _run
