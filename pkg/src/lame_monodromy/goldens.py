"""Loaders for the reference tables shipped as package data.

The JSON files record the expected classification results (basic triangle
classes, counting formulae, monodromy group names, ramification passports);
the library recomputes all of them from scratch and the test-suite checks the
two against each other.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .counting import CountRow


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    path = resources.files("lame_monodromy.data").joinpath(name)
    return json.loads(path.read_text())


def _distances(raw):
    if raw is None or isinstance(raw, str):
        return raw
    return tuple((int(d), bool(p)) for d, p in raw)


@lru_cache(maxsize=None)
def triangle_table() -> list[dict]:
    """Reference list of basic triangle classes."""
    rows = []
    for row in _load("table1.json")["rows"]:
        rows.append(
            {
                "family": row["family"],
                "n_values": tuple(Fraction(v) for v in row["n_values"]),
                "distances": _distances(row["distances"]),
                "note": row["note"],
            }
        )
    return rows


@lru_cache(maxsize=None)
def count_rows() -> list[CountRow]:
    """Counting-formula rows, one per basic triangle family."""
    rows = []
    for row in _load("table2.json")["rows"]:
        rows.append(
            CountRow(
                family=row["family"],
                bases=tuple(Fraction(v) for v in row["bases"]),
                distances=_distances(row["distances"]) if row["distances"] else None,
                formula=row["formula"],
                note=row["note"],
            )
        )
    return rows


@lru_cache(maxsize=None)
def group_table() -> list[dict]:
    """Reference monodromy group names per family."""
    return list(_load("table3.json")["rows"])


@lru_cache(maxsize=None)
def passport_table() -> list[dict]:
    """Reference ramification passport families."""
    return list(_load("table4.json")["rows"])


def expected_passport(row: dict, k: int):
    """Materialise a passport family row at parameter k.

    Returns (n, signature, degree, genus, partitions) where partitions maps
    the branch points "0", "1", "infinity" to sorted part lists.
    """
    n = Fraction(row["n"]["base"]) + k * row["n"]["step"]
    a, b = row["degree"]
    degree = a * k + b
    partitions = {}
    for key, entries in row["partitions"].items():
        parts: list[int] = []
        for entry in entries:
            part = entry["part"][0] * k + entry["part"][1]
            mult = entry["mult"][0] * k + entry["mult"][1]
            parts.extend([part] * mult)
        partitions[key] = sorted(parts, reverse=True)
    return n, tuple(row["signature"]), degree, row["genus"], partitions
