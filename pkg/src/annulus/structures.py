"""Domain wall structures: planar graphs with wall edges and defect vertices.

A structure is combinatorial: vertices carry a template fixing the cyclic
(counterclockwise) order of their edge slots, so faces can be traced from the
rotation system alone; no geometric embedding is ever computed. Cavities are
declared by callers (or derived) and validated against the traced faces; the
two external regions are always derived.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .defects import DefectLabel, parse_defect
from .reps import TRI12, TRI21, BivalentRep, TrivalentRep
from .walls import BimoduleLabel

TEMPLATE_SLOTS = {
    "bivalent": ("lower", "upper"),
    "tri21": ("bl", "br", "top"),
    "tri12": ("bottom", "tl", "tr"),
}

# Counterclockwise slot order, and the region between each slot and the next.
TEMPLATE_CCW = {
    "bivalent": ("upper", "lower"),
    "tri21": ("top", "bl", "br"),
    "tri12": ("tr", "tl", "bottom"),
}
REGION_AFTER = {
    "bivalent": {"upper": "left", "lower": "right"},
    "tri21": {"top": "left", "bl": "mid", "br": "right"},
    "tri12": {"tr": "mid", "tl": "left", "bottom": "right"},
}

# Sign a bubble labeled u enters each region slot with (ascending-string
# convention; fixed by the worked bubble computations).
BUBBLE_SIGN = {
    ("bivalent", "left"): -1, ("bivalent", "right"): 1,
    ("tri21", "left"): -1, ("tri21", "right"): 1, ("tri21", "mid"): 1,
    ("tri12", "left"): -1, ("tri12", "right"): 1, ("tri12", "mid"): -1,
}

_EXT = "__ext__"


@dataclass(frozen=True)
class Edge:
    eid: str
    wall: BimoduleLabel
    ends: tuple  # two entries, each (vid, slot) or None for an external stub


class StructureError(ValueError):
    pass


class DomainWallStructure:
    """Validated combinatorial structure with traced faces.

    vertices: ordered {vid: template}; edges: list of Edge; external: stub
    edge ids in disc-boundary order ([bottom, top] for 2-string structures);
    cavities: list of corner lists [(vid, region), ...] (None derives them
    from the internal faces).
    """

    def __init__(self, p: int, vertices: dict, edges: list, external: list,
                 cavities=None):
        self.p = p
        self.vertices = dict(vertices)
        self.edges = list(edges)
        self.edge_by_id = {e.eid: e for e in self.edges}
        self.external = list(external)
        self._slot_edge = {}
        for e in self.edges:
            for end in e.ends:
                if end is not None:
                    self._slot_edge[end] = e
        self._validate_incidence()
        faces = self._trace_faces()
        self.external_faces, internal = faces
        self.left_face, self.right_face = self._orient_external()
        if cavities is None:
            self.cavities = internal
        else:
            self.cavities = [list(c) for c in cavities]
            declared = {frozenset((v, r) for v, r in c) for c in self.cavities}
            derived = {frozenset(c) for c in internal}
            if declared != derived:
                raise StructureError(
                    "declared cavities do not match the internal faces of the structure")

    def _validate_incidence(self):
        if len(self.edge_by_id) != len(self.edges):
            raise StructureError("duplicate edge ids")
        seen = set()
        stub_edges = []
        for e in self.edges:
            if e.wall.p != self.p:
                raise StructureError(
                    f"edge {e.eid}: wall modulus {e.wall.p} != structure p={self.p}")
            if len(e.ends) != 2:
                raise StructureError(f"edge {e.eid} must have two ends")
            stubs = sum(1 for end in e.ends if end is None)
            if stubs == 2:
                raise StructureError(f"edge {e.eid} has no attached vertex")
            if stubs == 1:
                stub_edges.append(e.eid)
            for end in e.ends:
                if end is None:
                    continue
                vid, slot = end
                if vid not in self.vertices:
                    raise StructureError(f"edge {e.eid} references unknown vertex {vid}")
                if slot not in TEMPLATE_SLOTS[self.vertices[vid]]:
                    raise StructureError(
                        f"edge {e.eid}: vertex {vid} has no slot {slot!r}")
                if (vid, slot) in seen:
                    raise StructureError(f"slot {(vid, slot)} used twice")
                seen.add((vid, slot))
        for vid, template in self.vertices.items():
            for slot in TEMPLATE_SLOTS[template]:
                if (vid, slot) not in seen:
                    raise StructureError(f"slot {(vid, slot)} not connected")
        if sorted(stub_edges) != sorted(self.external):
            raise StructureError("external list must name exactly the stub edges")

    def _slot_of(self, eid, vid):
        e = self.edge_by_id[eid]
        for end in e.ends:
            if end is not None and end[0] == vid:
                return end[1]
        raise StructureError(f"edge {eid} does not touch {vid}")

    def _trace_faces(self):
        """Orbits of the next-dart map; returns (external faces, internal faces).

        A dart is (eid, head) with head a vertex id or _EXT; corners of a face
        are the (vid, region) pairs swept at each internal vertex.
        """
        ccw_edges = {}
        for vid, template in self.vertices.items():
            order = []
            for slot in TEMPLATE_CCW[template]:
                order.append(self._edge_at(vid, slot).eid)
            ccw_edges[vid] = order
        ccw_edges[_EXT] = list(self.external)

        def head_of(eid, tail):
            e = self.edge_by_id[eid]
            ends = [end[0] if end is not None else _EXT for end in e.ends]
            if ends[0] == tail:
                return ends[1]
            if ends[1] == tail:
                return ends[0]
            raise StructureError(f"dart error on {eid}")

        darts = []
        for e in self.edges:
            ends = [end[0] if end is not None else _EXT for end in e.ends]
            darts.append((e.eid, ends[0]))
            darts.append((e.eid, ends[1]))

        def next_dart(dart):
            eid, head = dart
            order = ccw_edges[head]
            idx = order.index(eid)
            out_eid = order[(idx + 1) % len(order)]
            return (out_eid, head_of(out_eid, head))

        remaining = set(darts)
        external_faces, internal_faces = [], []
        while remaining:
            start = min(remaining)
            face_darts = []
            d = start
            while True:
                face_darts.append(d)
                remaining.discard(d)
                d = next_dart(d)
                if d == start:
                    break
            corners = []
            through_ext = False
            for (eid, head) in face_darts:
                if head == _EXT:
                    through_ext = True
                    continue
                slot = self._slot_of(eid, head)
                region = REGION_AFTER[self.vertices[head]][slot]
                corners.append((head, region))
            if through_ext:
                external_faces.append((face_darts, corners))
            else:
                internal_faces.append(corners)
        return external_faces, internal_faces

    def _edge_at(self, vid, slot):
        try:
            return self._slot_edge[(vid, slot)]
        except KeyError:
            raise StructureError(f"no edge at {(vid, slot)}") from None

    def _orient_external(self):
        """For a 2-stub structure: (left corners, right corners)."""
        if len(self.external) != 2:
            return None, None
        bottom, top = self.external
        left = right = None
        for face_darts, corners in self.external_faces:
            dart_eids = {eid for eid, head in face_darts if head != _EXT}
            # the face leaving the outside vertex along `top` is the left one
            for i, (eid, head) in enumerate(face_darts):
                if head == _EXT:
                    out_eid, _ = face_darts[(i + 1) % len(face_darts)]
                    if out_eid == top:
                        left = corners
                    elif out_eid == bottom:
                        right = corners
        if left is None or right is None:
            raise StructureError("could not orient the external boundary")
        return left, right

    def external_walls(self):
        return tuple(self.edge_by_id[eid].wall for eid in self.external)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "vertices": [
                {"id": vid, "template": tpl} for vid, tpl in self.vertices.items()
            ],
            "edges": [
                {
                    "id": e.eid,
                    "wall": e.wall.name(),
                    "from": list(e.ends[0]) if e.ends[0] else None,
                    "to": list(e.ends[1]) if e.ends[1] else None,
                }
                for e in self.edges
            ],
            "cavities": [[list(c) for c in cav] for cav in self.cavities],
            "external": list(self.external),
        }


class CompoundDefect:
    """A structure with a representation assigned to every vertex."""

    def __init__(self, structure: DomainWallStructure, reps: dict):
        self.structure = structure
        self.p = structure.p
        self.reps = dict(reps)
        if set(self.reps) != set(structure.vertices):
            raise StructureError("assignment must cover exactly the vertices")
        for vid, rep in self.reps.items():
            template = structure.vertices[vid]
            expected = TEMPLATE_SLOTS[template]
            if tuple(rep.slots) != expected:
                raise StructureError(
                    f"vertex {vid}: representation of wrong template")
            for slot in expected:
                e = structure._edge_at(vid, slot)
                if rep.wall_of_slot(slot) != e.wall:
                    raise StructureError(
                        f"vertex {vid} slot {slot}: representation wall "
                        f"{rep.wall_of_slot(slot).name()} != edge wall {e.wall.name()}")

    @property
    def vertex_order(self):
        return list(self.structure.vertices)

    def __repr__(self):
        return f"<compound defect on {len(self.reps)} vertices, p={self.p}>"


# --------------------------------------------------------------------------
# Built-in templates
# --------------------------------------------------------------------------


def vertical_compound(d1: DefectLabel, d2: DefectLabel) -> CompoundDefect:
    """d1 stacked below d2; d1's upper wall must equal d2's lower wall."""
    if d1.upper != d2.lower:
        raise StructureError(
            f"wall mismatch: {d1.name()} upper is {d1.upper.name()}, "
            f"{d2.name()} lower is {d2.lower.name()}")
    p = d1.p
    edges = [
        Edge("bottom", d1.lower, (None, ("v1", "lower"))),
        Edge("mid", d1.upper, (("v1", "upper"), ("v2", "lower"))),
        Edge("top", d2.upper, (("v2", "upper"), None)),
    ]
    s = DomainWallStructure(
        p, {"v1": "bivalent", "v2": "bivalent"}, edges, ["bottom", "top"])
    return CompoundDefect(s, {"v1": BivalentRep(d1), "v2": BivalentRep(d2)})


def horizontal_compound(d1: DefectLabel, d2: DefectLabel,
                        corner_bottom=None, corner_top=None) -> CompoundDefect:
    """The diamond: d1 on the left, d2 on the right, one internal cavity."""
    p = d1.p
    vb = TrivalentRep("tri12", d1.lower, d2.lower, corner=corner_bottom)
    vt = TrivalentRep("tri21", d1.upper, d2.upper, corner=corner_top)
    edges = [
        Edge("bottom", vb.third, (None, ("vb", "bottom"))),
        Edge("a1", d1.lower, (("vb", "tl"), ("d1", "lower"))),
        Edge("a2", d2.lower, (("vb", "tr"), ("d2", "lower"))),
        Edge("b1", d1.upper, (("d1", "upper"), ("vt", "bl"))),
        Edge("b2", d2.upper, (("d2", "upper"), ("vt", "br"))),
        Edge("top", vt.third, (("vt", "top"), None)),
    ]
    s = DomainWallStructure(
        p,
        {"vb": "tri12", "d1": "bivalent", "d2": "bivalent", "vt": "tri21"},
        edges, ["bottom", "top"])
    return CompoundDefect(
        s, {"vb": vb, "d1": BivalentRep(d1), "d2": BivalentRep(d2), "vt": vt})


def associator_compound(m: BimoduleLabel, n: BimoduleLabel, pwall: BimoduleLabel,
                        corners: dict | None = None) -> CompoundDefect:
    """The triangle [M,N,P]: two 1:2 splits, two 2:1 merges, two cavities.

    Corner names: mu0 at the bottom split (W1 -> M, N*P), mu1 at the upper
    split (N*P -> N, P), nu0 at the M,N merge, nu1 at the top merge.
    """
    corners = dict(corners or {})
    p = m.p
    v1 = TrivalentRep("tri12", m, _prod(n, pwall), corner=corners.pop("mu0", None))
    v2 = TrivalentRep("tri12", n, pwall, corner=corners.pop("mu1", None))
    v3 = TrivalentRep("tri21", m, n, corner=corners.pop("nu0", None))
    v4 = TrivalentRep("tri21", v3.third, pwall, corner=corners.pop("nu1", None))
    if corners:
        raise StructureError(f"unknown corner names {sorted(corners)}")
    if v1.third != v4.third:
        raise StructureError("wall product is not associative?!")
    edges = [
        Edge("bottom", v1.third, (None, ("v1", "bottom"))),
        Edge("M", m, (("v1", "tl"), ("v3", "bl"))),
        Edge("W2", v2.third, (("v1", "tr"), ("v2", "bottom"))),
        Edge("N", n, (("v2", "tl"), ("v3", "br"))),
        Edge("P", pwall, (("v2", "tr"), ("v4", "br"))),
        Edge("W3", v3.third, (("v3", "top"), ("v4", "bl"))),
        Edge("top", v4.third, (("v4", "top"), None)),
    ]
    s = DomainWallStructure(
        p,
        {"v1": "tri12", "v2": "tri12", "v3": "tri21", "v4": "tri21"},
        edges, ["bottom", "top"])
    return CompoundDefect(s, {"v1": v1, "v2": v2, "v3": v3, "v4": v4})


def associator_corner_names(m, n, pwall) -> list[str]:
    """The corner parameters the [M,N,P] structure actually carries."""
    names = []
    if TRI12[(m.ekind(), _prod(n, pwall).ekind())]["mu"]:
        names.append("mu0")
    if TRI12[(n.ekind(), pwall.ekind())]["mu"]:
        names.append("mu1")
    if TRI21[(m.ekind(), n.ekind())]["mu"]:
        names.append("nu0")
    if TRI21[(_prod(m, n).ekind(), pwall.ekind())]["mu"]:
        names.append("nu1")
    return names


def horizontal_corner_names(d1, d2) -> list[str]:
    names = []
    if TRI12[(d1.lower.ekind(), d2.lower.ekind())]["mu"]:
        names.append("bottom")
    if TRI21[(d1.upper.ekind(), d2.upper.ekind())]["mu"]:
        names.append("top")
    return names


def _prod(a, b):
    from .walls import wall_product

    return wall_product(a, b)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------


def compound_from_json(doc: dict) -> CompoundDefect:
    """Build a compound defect from the structure document format.

    Besides explicit graphs, the built-in templates are accepted as
    shorthand: {"p", "template": "vertical"|"diamond", "defects": [d1, d2],
    "corners": {...}} and {"p", "template": "associator", "walls":
    [M, N, P], "corners": {...}}.
    """
    p = doc["p"]
    template = doc.get("template")
    if template is not None:
        corners = {k: int(v) for k, v in (doc.get("corners") or {}).items()}
        if template == "vertical":
            d1, d2 = (parse_defect(t, p) for t in doc["defects"])
            return vertical_compound(d1, d2)
        if template == "diamond":
            d1, d2 = (parse_defect(t, p) for t in doc["defects"])
            return horizontal_compound(d1, d2,
                                       corner_bottom=corners.get("bottom"),
                                       corner_top=corners.get("top"))
        if template == "associator":
            walls = [BimoduleLabel.parse(t, p) for t in doc["walls"]]
            return associator_compound(*walls, corners=corners)
        raise StructureError(f"unknown template {template!r}")
    vertices = {}
    vertex_docs = {}
    for v in doc["vertices"]:
        vertices[v["id"]] = v["template"]
        vertex_docs[v["id"]] = v
    edges = []
    for e in doc["edges"]:
        ends = []
        for key in ("from", "to"):
            end = e.get(key)
            ends.append(tuple(end) if end else None)
        edges.append(Edge(e["id"], BimoduleLabel.parse(e["wall"], p), tuple(ends)))
    structure = DomainWallStructure(
        p, vertices, edges, doc["external"], doc.get("cavities"))
    reps = {}
    for vid, template in vertices.items():
        vdoc = vertex_docs[vid]
        if template == "bivalent":
            if "defect" not in vdoc:
                raise StructureError(f"bivalent vertex {vid} needs a defect label")
            reps[vid] = BivalentRep(parse_defect(vdoc["defect"], p))
        else:
            slots = TEMPLATE_SLOTS[template]
            pair = slots[:2] if template == "tri21" else slots[1:]
            w1 = structure._edge_at(vid, pair[0]).wall
            w2 = structure._edge_at(vid, pair[1]).wall
            reps[vid] = TrivalentRep(template, w1, w2, corner=vdoc.get("corner"))
    return CompoundDefect(structure, reps)


def compound_to_json(cd: CompoundDefect) -> dict:
    doc = cd.structure.to_json()
    for vdoc in doc["vertices"]:
        rep = cd.reps[vdoc["id"]]
        if isinstance(rep, BivalentRep):
            vdoc["defect"] = rep.defect.name()
        elif rep.has_corner:
            vdoc["corner"] = rep.corner
    return doc


def load_compound(path: str) -> CompoundDefect:
    with open(path) as fh:
        return compound_from_json(json.load(fh))
