"""Bundled example models and categories."""
from __future__ import annotations

from importlib import resources

from ..formats import parse_cat, parse_pgd


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def fixture_path(name: str):
    return resources.files(__package__).joinpath(name)


def load_model(name: str):
    return parse_pgd(fixture_text(name))


def load_category(name: str):
    return parse_cat(fixture_text(name))


def model_names() -> tuple[str, ...]:
    files = resources.files(__package__)
    return tuple(sorted(p.name for p in files.iterdir()
                        if p.name.endswith(".pgd")))
