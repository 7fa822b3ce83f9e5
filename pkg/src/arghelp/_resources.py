from __future__ import annotations

from importlib import resources


def read_data(name: str) -> str:
    return resources.files("arghelp.data").joinpath(name).read_text(encoding="utf-8")


def data_lines(name: str) -> list[str]:
    """Non-blank, non-comment lines of a bundled data file."""
    out = []
    for line in read_data(name).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


SAMPLE_ALIAS = "@sample"


def data_path(name: str):
    return resources.files("arghelp.data").joinpath(name)


def resolve_input(path):
    """Map the ``@sample`` alias to the bundled synthetic review file."""
    if str(path) == SAMPLE_ALIAS:
        return data_path("sample_reviews.jsonl")
    return path
