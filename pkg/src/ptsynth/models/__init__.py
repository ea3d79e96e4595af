"""Bundled example models and the default benchmark suite manifest."""

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    """Filesystem path of a bundled model/property/manifest file."""
    p = resources.files(__package__).joinpath(name)
    if not p.is_file():
        raise FileNotFoundError(f"no bundled file {name!r}")
    return Path(str(p))


def read(name: str) -> str:
    return path(name).read_text()


def available():
    base = resources.files(__package__)
    return sorted(entry.name for entry in base.iterdir()
                  if entry.name.endswith((".ptm", ".prop", ".manifest")))
