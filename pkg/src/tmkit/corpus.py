"""Access to the shipped fixture corpus."""

from importlib import resources

FIXTURES = ("bank", "beef", "human", "person", "stack")


def fixture_text(name: str) -> str:
    ref = resources.files("tmkit") / "fixtures" / f"{name}.tm"
    return ref.read_text(encoding="utf-8")


def fixture_path(name: str) -> str:
    ref = resources.files("tmkit") / "fixtures" / f"{name}.tm"
    return str(ref)
