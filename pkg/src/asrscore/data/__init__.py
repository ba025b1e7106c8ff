"""Bundled sample data."""

from importlib import resources
from pathlib import Path


def minicorpus_dir() -> Path:
    """Directory holding the 20-utterance sample corpus."""
    return Path(str(resources.files("asrscore.data").joinpath("minicorpus")))
