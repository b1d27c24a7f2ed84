"""Bundled example trees.

Four short English sentences with their dependency trees and word orders,
and an 18-vertex tree on which forbidding crossings raises the minimum sum
of dependency lengths from 23 to 24.  ``words`` are listed by vertex label,
so for a reordered sentence read them through ``arrangement.order``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .treebank_io import EdgeListEntry, parse_edge_lists

SENTENCE_IDS = ("dog_which", "dog_yesterday_which", "woman_in_situ", "woman_extraposed")
COUNTEREXAMPLE_ID = "minla_counterexample"


def _read(name: str) -> str:
    return resources.files("depcross").joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _all() -> dict[str, EdgeListEntry]:
    entries = {}
    for name in ("example_sentences.txt", "minla_counterexample.txt"):
        for e in parse_edge_lists(_read(name), source=name):
            entries[e.sentence_id] = e
    return entries


def example(name: str) -> EdgeListEntry:
    try:
        return _all()[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(_all())}") from None


def example_sentences() -> list[EdgeListEntry]:
    return [example(i) for i in SENTENCE_IDS]


def example_text(name: str = "example_sentences.txt") -> str:
    """Raw edge-list text of a bundled file, e.g. to feed the command line."""
    return _read(name)
