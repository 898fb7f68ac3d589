import pathlib

import pytest

from fibercheck.cli import corpus_dir, read_manifest
from fibercheck.diagram import parse_pd


@pytest.fixture(scope="session")
def corpus_root() -> pathlib.Path:
    return corpus_dir()


@pytest.fixture(scope="session")
def corpus(corpus_root):
    """name -> (diagram, expected_class, expected_verdict) for every entry."""
    out = {}
    for name, fname, exp_class, exp_verdict, _note in read_manifest(corpus_root):
        out[name] = (parse_pd((corpus_root / fname).read_text()),
                     exp_class, exp_verdict)
    return out


@pytest.fixture(scope="session")
def diagrams(corpus):
    """name -> diagram only."""
    return {name: d for name, (d, _, _) in corpus.items()}
