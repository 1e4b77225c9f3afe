import json
import os
import pathlib
import subprocess

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(os.environ.get("KEYPOLY_ROOT", pathlib.Path(__file__).resolve().parents[2]))
SAMPLES = ROOT / "samples"


@pytest.fixture(scope="session")
def schemas():
    docs = {}
    for path in sorted((ROOT / "docs" / "schemas").glob("*.schema.json")):
        docs[path.name.split(".")[0]] = json.loads(path.read_text())
    registry = Registry().with_resources((d["$id"], Resource.from_contents(d)) for d in docs.values())

    def validate(name, document):
        validator = Draft202012Validator(docs[name], registry=registry)
        errors = [f"{list(e.absolute_path)}: {e.message[:200]}" for e in validator.iter_errors(document)]
        assert not errors, errors

    validate.documents = docs
    return validate


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("KEYPOLY_CLI", str(ROOT / "build" / "keypoly"))

    def call(*args):
        return subprocess.run([exe, *map(str, args)], capture_output=True, text=True, timeout=120)

    return call


@pytest.fixture
def samples():
    return SAMPLES
