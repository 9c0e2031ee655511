"""Graph exports: incidence, chamber and hypermap graphs as DOT or JSON.

Node identifiers are canonical: they derive from minimal element
fingerprints, so repeated exports of the same structure are byte-identical.
JSON payloads carry the versioned schema tag and fully sorted node and
edge lists; DOT output mirrors the same ordering.
"""

import json
import os
import tempfile

from .chamber_system import ChamberSystem
from .coset_geometry import CosetGeometry
from .hypermap import Hypermap

SCHEMA = "ovgeo/1"


def _fp_label(fp) -> str:
    return "_".join(str(v) for v in fp)


def incidence_graph_data(geom: CosetGeometry) -> dict:
    """Typed coset nodes; one edge per incident pair of distinct types."""
    nodes = []
    ids = []
    for i in range(3):
        row = [f"t{i}_{_fp_label(fp)}" for fp in geom.labels[i]]
        ids.append(row)
        nodes.extend({"id": nid, "type": i} for nid in row)
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            for ci, hit in enumerate(geom.adj[(i, j)]):
                for cj in hit:
                    edges.append({"source": ids[i][ci], "target": ids[j][cj]})
    nodes.sort(key=lambda n: n["id"])
    edges.sort(key=lambda e: (e["source"], e["target"]))
    return {
        "schema": SCHEMA,
        "kind": "incidence-graph",
        "q": geom.group.q,
        "m": geom.triangle.m,
        "nodes": nodes,
        "edges": edges,
    }


def chamber_graph_data(cs: ChamberSystem) -> dict:
    """One node per chamber; colored edges from the thin panels."""
    labels = [f"c_{_fp_label(p[:3])}" for p in cs.table.perms]
    nodes = [{"id": nid} for nid in sorted(labels)]
    edges = []
    for i in range(3):
        arr = cs.nbr[i]
        for x in range(cs.size):
            y = arr[x]
            if x < y:
                a, b = labels[x], labels[y]
                if a > b:
                    a, b = b, a
                edges.append({"source": a, "target": b, "color": i})
    edges.sort(key=lambda e: (e["source"], e["target"], e["color"]))
    return {
        "schema": SCHEMA,
        "kind": "chamber-graph",
        "q": cs.group.q,
        "m": cs.triangle.m,
        "nodes": nodes,
        "edges": edges,
    }


def hypermap_graph_data(hm: Hypermap) -> dict:
    """Hypervertex, hyperedge and hyperface orbits, joined by shared flags."""
    prefixes = ("hv", "he", "hf")
    table = hm.cs.table
    nodes = []
    cell_ids = []
    cell_of = []
    for i in range(3):
        cells = hm._cells[i]
        own = [-1] * hm.n_flags
        row = []
        for cid, cell in enumerate(cells):
            fp = min(tuple(table.perms[x][:3]) for x in cell)
            nid = f"{prefixes[i]}_{_fp_label(fp)}"
            row.append(nid)
            for x in cell:
                own[x] = cid
        cell_ids.append(row)
        cell_of.append(own)
        nodes.extend({"id": nid, "type": prefixes[i]} for nid in row)
    pair_sets = {(i, j): set() for i in range(3) for j in range(3) if i < j}
    for x in range(hm.n_flags):
        for i in range(3):
            for j in range(i + 1, 3):
                pair_sets[(i, j)].add((cell_of[i][x], cell_of[j][x]))
    edges = []
    for (i, j), pairs in pair_sets.items():
        for ci, cj in pairs:
            edges.append({"source": cell_ids[i][ci], "target": cell_ids[j][cj]})
    nodes.sort(key=lambda n: n["id"])
    edges.sort(key=lambda e: (e["source"], e["target"]))
    return {
        "schema": SCHEMA,
        "kind": "hypermap-graph",
        "q": hm.group.q,
        "m": hm.triangle.m,
        "nodes": nodes,
        "edges": edges,
    }


def to_json_text(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def to_dot_text(data: dict) -> str:
    name = data["kind"].replace("-", "_")
    lines = [f"graph {name} {{"]
    for n in data["nodes"]:
        attrs = "".join(f' [type="{n[k]}"]' for k in ("type",) if k in n)
        lines.append(f'  "{n["id"]}"{attrs};')
    for e in data["edges"]:
        attrs = "".join(f' [color="{e[k]}"]' for k in ("color",) if k in e)
        lines.append(f'  "{e["source"]}" -- "{e["target"]}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json_text(data)
    if fmt == "dot":
        return to_dot_text(data)
    raise ValueError(f"unknown export format {fmt!r}")


def write_atomic(path: str, content: str) -> None:
    """Write through a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".export-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
