"""Bundled presentations and skeleta."""

from importlib import resources

from .presentation import Presentation, parse_presentation, parse_skeleton


def text(name: str) -> str:
    return resources.files("quivgrass").joinpath("data", name).read_text(encoding="utf-8")


def carlson() -> Presentation:
    return parse_presentation(text("carlson.txt"))


def a0() -> Presentation:
    return parse_presentation(text("a0.txt"))


def carlson_example_skeleton(pres: Presentation | None = None):
    pres = pres or carlson()
    return parse_skeleton(text("carlson_example.skel"), pres)
