"""Shared fixtures and independent reference oracles.

The oracles here deliberately avoid the package's own machinery: dense
numpy matrices built from ``np.roll`` of the identity, dense Gaussian
elimination on ``uint8`` arrays, and networkx for girth.
"""

from __future__ import annotations

import csv
import re
from collections import defaultdict
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from fourcycle.model import INF

DATA = Path(__file__).parent / "data"

# Worked example with P = 7, sigma = 2, tau = 3.
EXAMPLE_723_C = [(1, 2, 4, 3, 6, 5), (4, 1, 2, 5, 3, 6), (2, 4, 1, 6, 5, 3)]
EXAMPLE_723_D = [(4, 2, 1, 6, 3, 5), (1, 4, 2, 5, 6, 3), (2, 1, 4, 3, 5, 6)]

# The 3 x 6 dual-containing binary matrix with a length-4 cycle.
DUAL_CONTAINING_3x6 = ["110011", "001111", "111100"]


def dense_circulant(c, P: int) -> np.ndarray:
    """Oracle for a single block: ``I(1)`` has ones at ``(r, r+1 mod P)``."""
    if c == INF:
        return np.zeros((P, P), dtype=np.uint8)
    return np.roll(np.eye(P, dtype=np.uint8), int(c), axis=1)


def dense_expand(rows, P: int) -> np.ndarray:
    return np.block([[dense_circulant(c, P) for c in r] for r in rows]).astype(np.uint8)


def dense_rank(a: np.ndarray) -> int:
    """Textbook GF(2) elimination on a dense copy."""
    a = (np.array(a, dtype=np.uint8) & 1).copy()
    rank = 0
    n_rows, n_cols = a.shape
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r, col]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(n_rows):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


def nx_girth(a: np.ndarray) -> float:
    """Tanner-graph girth via networkx (``inf`` for a forest)."""
    g = nx.Graph()
    m, n = a.shape
    g.add_nodes_from(range(m + n))
    g.add_edges_from((i, m + j) for i, j in zip(*np.nonzero(a)))
    return nx.girth(g)


def load_reference_table() -> dict[tuple[int, int], set[int]]:
    """Transcribed fulfillment tables, keyed by ``(order, P)``."""
    out: dict[tuple[int, int], set[int]] = defaultdict(set)
    with open(DATA / "reference_fulfillments.csv") as fh:
        for row in csv.DictReader(fh):
            out[int(row["order"]), int(row["P"])].add(int(row["sigma"]))
    return dict(out)


@pytest.fixture(scope="session")
def reference_table():
    return load_reference_table()


# --- acceptance reporting -------------------------------------------------------
#
# Tests marked ``@pytest.mark.acceptance("label")`` get one PASS/FAIL line in the
# terminal summary; notes attached via ``record_property("note", ...)`` (e.g.
# erratum flags) are printed underneath.

_ACCEPTANCE: list[tuple[str, str, list[str]]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): a primary acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        notes = [str(v) for k, v in item.user_properties if k == "note"]
        if rep.outcome != "passed" and call.excinfo is not None:
            notes.append(f"reason: {call.excinfo.exconly().splitlines()[0][:300]}")
        _ACCEPTANCE.append((marker.args[0], "PASS" if rep.outcome == "passed" else "FAIL", notes))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    def key(entry):
        m = re.match(r"\[(\d+)(\w*)\]", entry[0])
        return (int(m.group(1)), m.group(2)) if m else (10**9, entry[0])

    for label, status, notes in sorted(_ACCEPTANCE, key=key):
        tr.write_line(f"{status}  {label}")
        for note in notes:
            tr.write_line(f"      {note}")
