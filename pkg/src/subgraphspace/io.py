"""File formats: edge lists, graph collections (directories or JSON
lines), and census CSV tables.

Edge lists are UTF-8 text, one ``u v`` pair per line, whitespace
separated, ``#`` comments ignored. Labels may be arbitrary strings and
are re-indexed to 0..n-1 in order of first appearance, unless the file
declares ``n <count>`` on its first line, in which case labels must be
integers below the count (this is how isolated nodes are represented).
"""

from __future__ import annotations

import csv
import json
from math import comb
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .catalog import build_catalog
from .census import FrequencyVector
from .graphs import Graph

__all__ = [
    "parse_edge_list",
    "write_edge_list",
    "read_collection",
    "write_collection",
    "write_census_csv",
    "read_census_csv",
    "census_header",
]

FORMAT_VERSION = 1


def parse_edge_list(lines: Iterable[str], name: str = "<edge list>") -> Graph:
    """Parse one edge-list document into a Graph."""
    declared_n: int | None = None
    labels: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    first_content = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if first_content and parts[0] == "n" and len(parts) == 2:
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise ValueError(
                    f"{name}:{lineno}: bad node count {parts[1]!r}"
                ) from None
            if declared_n < 0:
                raise ValueError(f"{name}:{lineno}: negative node count")
            first_content = False
            continue
        first_content = False
        if len(parts) != 2:
            raise ValueError(
                f"{name}:{lineno}: expected 'u v', got {line!r}"
            )
        u_raw, v_raw = parts
        if declared_n is not None:
            try:
                u, v = int(u_raw), int(v_raw)
            except ValueError:
                raise ValueError(
                    f"{name}:{lineno}: integer labels required when a node "
                    f"count is declared, got {line!r}"
                ) from None
            if not (0 <= u < declared_n and 0 <= v < declared_n):
                raise ValueError(
                    f"{name}:{lineno}: node out of declared range "
                    f"0..{declared_n - 1}"
                )
        else:
            u = labels.setdefault(u_raw, len(labels))
            v = labels.setdefault(v_raw, len(labels))
        if u == v:
            raise ValueError(f"{name}:{lineno}: self-loop at {u_raw!r}")
        edges.append((u, v))
    n = declared_n if declared_n is not None else len(labels)
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph, out: TextIO) -> None:
    out.write(f"n {g.n}\n")
    for u, v in sorted(g.edges):
        out.write(f"{u} {v}\n")


def read_collection(path: str | Path) -> list[tuple[str, Graph]]:
    """Read a collection: a directory of edge-list files (sorted by name)
    or a JSON-lines file of {id, n, edges} records."""
    path = Path(path)
    if path.is_dir():
        out = []
        for f in sorted(path.iterdir()):
            if f.is_file() and not f.name.startswith("."):
                if f.suffix == ".json" and f.name == "manifest.json":
                    continue
                with open(f, encoding="utf-8") as handle:
                    out.append((f.stem, parse_edge_list(handle, str(f))))
        if not out:
            raise ValueError(f"no graphs found in directory {path}")
        return out
    out = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                gid = str(record["id"])
                n = int(record["n"])
                edges = [(int(u), int(v)) for u, v in record["edges"]]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                raise ValueError(
                    f"{path}:{lineno}: bad JSON-lines graph record"
                ) from None
            out.append((gid, Graph.from_edges(n, edges)))
    if not out:
        raise ValueError(f"no graphs found in {path}")
    return out


def write_collection(
    directory: str | Path,
    graphs: Sequence[Graph],
    ids: Sequence[str] | None = None,
) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if ids is None:
        width = max(4, len(str(len(graphs) - 1)))
        ids = [f"graph_{i:0{width}d}" for i in range(len(graphs))]
    paths = []
    for gid, g in zip(ids, graphs):
        p = directory / f"{gid}.txt"
        with open(p, "w", encoding="utf-8") as out:
            write_edge_list(g, out)
        paths.append(p)
    return paths


def census_header(k: int) -> list[str]:
    cat = build_catalog(k)
    return ["id", "n", "density"] + [
        f"s_{c.code.bitstring}" for c in cat.classes
    ]


def write_census_csv(
    out: TextIO,
    rows: Iterable[tuple[str, int, float, FrequencyVector]],
    k: int,
) -> None:
    writer = csv.writer(out)
    writer.writerow(census_header(k))
    for gid, n, density, fv in rows:
        writer.writerow(
            [gid, n, f"{density:.12g}"]
            + [f"{v:.12g}" for v in fv.values]
        )


def read_census_csv(path: str | Path) -> tuple[int, list[dict]]:
    """Read a census CSV back; returns (k, rows) where each row has id, n,
    density, and the frequency vector."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header or header[:3] != ["id", "n", "density"]:
            raise ValueError(f"{path}: not a census CSV (bad header)")
        nclasses = len(header) - 3
        k_of = {comb(k, 2): k for k in range(2, 6)}
        bits = len(header[3]) - 2  # strip "s_"
        if bits not in k_of:
            raise ValueError(f"{path}: unrecognized class columns")
        k = k_of[bits]
        if len(build_catalog(k)) != nclasses:
            raise ValueError(
                f"{path}: expected {len(build_catalog(k))} class columns "
                f"for k={k}, found {nclasses}"
            )
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(header):
                raise ValueError(f"{path}:{lineno}: wrong column count")
            try:
                values = np.array([float(v) for v in rec[3:]])
                rows.append(
                    {
                        "id": rec[0],
                        "n": int(rec[1]),
                        "density": float(rec[2]),
                        "census": FrequencyVector(
                            k=k, values=values, mode="sampled", sample_count=0
                        ),
                    }
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return k, rows
