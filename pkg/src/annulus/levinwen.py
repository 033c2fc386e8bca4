"""Generalized string-net model on honeycomb patches with walls and defects.

Degrees of freedom live on edges (one simple object of the edge's wall) and
on vertices (a basis vector of the assigned trivalent representation). Vertex
terms match each incident edge label against the vertex state's grading;
face terms insert a group-labeled loop in the face and absorb it into the six
surrounding vertices, shifting the face's edge labels accordingly. All
operators are exact projectors on the finite patch.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .engine import SizeLimitError
from .linalg import ExactMatrix
from .reps import TrivalentRep
from .scalars import CycField
from .structures import BUBBLE_SIGN, StructureError
from .walls import STAR, BimoduleLabel


@dataclass(frozen=True)
class PatchEdge:
    eid: str
    wall: BimoduleLabel
    ends: tuple  # (vid, slot) pairs; dangling edges have one None


class LatticePatch:
    """Finite honeycomb fragment with explicit faces and boundary policy.

    faces: list of corner lists [(vid, region), ...]; pinned: {eid: object}
    fixing dangling edge values (free dangling edges enumerate all objects).
    Exact solves are sized for desk scale (a few faces at small p);
    ANNULUS_MAX_BASIS caps the state enumeration.
    """

    def __init__(self, p: int, vertices: dict, edges: list, faces: list,
                 pinned: dict | None = None):
        self.p = p
        self.field = CycField(p)
        self.vertices: dict[str, TrivalentRep] = dict(vertices)
        self.edges = list(edges)
        self.edge_by_id = {e.eid: e for e in self.edges}
        self.faces = [list(f) for f in faces]
        self.pinned = dict(pinned or {})
        self._validate()
        self._edge_domain = {
            e.eid: ([self.pinned[e.eid]] if e.eid in self.pinned
                    else e.wall.simple_objects())
            for e in self.edges
        }
        self._basis = None

    def _validate(self):
        seen = set()
        for e in self.edges:
            dangling = 0
            for end in e.ends:
                if end is None:
                    dangling += 1
                    continue
                vid, slot = end
                rep = self.vertices.get(vid)
                if rep is None:
                    raise StructureError(f"edge {e.eid}: unknown vertex {vid}")
                if slot not in rep.slots:
                    raise StructureError(f"edge {e.eid}: bad slot {slot}")
                if rep.wall_of_slot(slot) != e.wall:
                    raise StructureError(
                        f"edge {e.eid}: wall {e.wall.name()} != vertex "
                        f"{vid} slot wall {rep.wall_of_slot(slot).name()}")
                if (vid, slot) in seen:
                    raise StructureError(f"slot {(vid, slot)} used twice")
                seen.add((vid, slot))
            if dangling == 2:
                raise StructureError(f"edge {e.eid} attaches to no vertex")
        for vid, rep in self.vertices.items():
            for slot in rep.slots:
                if (vid, slot) not in seen:
                    raise StructureError(f"slot {(vid, slot)} not connected")
        for eid in self.pinned:
            e = self.edge_by_id[eid]
            if all(end is not None for end in e.ends):
                raise StructureError(f"cannot pin interior edge {eid}")
            if self.pinned[eid] not in e.wall.simple_objects():
                raise StructureError(f"pin value for {eid} is not an object")
        for face in self.faces:
            for vid, region in face:
                if vid not in self.vertices:
                    raise StructureError(f"face references unknown vertex {vid}")
                if region not in ("left", "right", "mid"):
                    raise StructureError(f"bad region {region!r}")

    # -- basis ------------------------------------------------------------

    def vertex_order(self):
        return list(self.vertices)

    def consistent_basis(self):
        """States where every edge label equals both endpoint gradings and
        pinned values; these span the common kernel of all vertex terms."""
        if self._basis is not None:
            return self._basis
        import os

        limit = int(os.environ.get("ANNULUS_MAX_BASIS", "200000"))
        order = self.vertex_order()
        partials = [((), {})]
        for vid in order:
            rep = self.vertices[vid]
            local = [(vec, rep.edge_labels(vec)) for vec in rep.basis()]
            new_partials = []
            for assignment, edge_vals in partials:
                for vec, labels in local:
                    ok = True
                    for slot, lab in labels.items():
                        eid = self._edge_at(vid, slot).eid
                        if eid in edge_vals:
                            if edge_vals[eid] != lab:
                                ok = False
                                break
                        elif lab not in self._edge_domain[eid]:
                            ok = False
                            break
                    if not ok:
                        continue
                    merged = dict(edge_vals)
                    for slot, lab in labels.items():
                        merged[self._edge_at(vid, slot).eid] = lab
                    new_partials.append((assignment + (vec,), merged))
                    if len(new_partials) > limit:
                        raise SizeLimitError(
                            f"patch basis exceeds ANNULUS_MAX_BASIS={limit}")
            partials = new_partials
        self._basis = [assignment for assignment, _ in partials]
        return self._basis

    def _edge_at(self, vid, slot):
        for e in self.edges:
            if (vid, slot) in e.ends:
                return e
        raise StructureError(f"no edge at {(vid, slot)}")

    def edge_labels_of(self, state):
        labels = {}
        for vid, vec in zip(self.vertex_order(), state):
            for slot, lab in self.vertices[vid].edge_labels(vec).items():
                labels[self._edge_at(vid, slot).eid] = lab
        return labels

    def full_state_dims(self) -> dict:
        """Sizes of the unconstrained tensor factors (diagnostics only)."""
        return {
            "edges": {e.eid: len(self._edge_domain[e.eid]) for e in self.edges},
            "vertices": {vid: len(rep.basis())
                         for vid, rep in self.vertices.items()},
        }

    # -- operators ---------------------------------------------------------

    def face_action(self, face_idx: int, g: int, state):
        """H_{f,g} on a consistent basis state: (phase, new state)."""
        corners = self.faces[face_idx]
        args: dict[str, dict[str, int]] = {}
        for vid, region in corners:
            template = ("tri21" if self.vertices[vid].direction == "tri21"
                        else "tri12")
            sign = BUBBLE_SIGN[(template, region)]
            slot_args = args.setdefault(vid, {})
            slot_args[region] = slot_args.get(region, 0) + sign * g
        phase = self.field.one
        out = []
        for vid, vec in zip(self.vertex_order(), state):
            a = args.get(vid)
            if a:
                ph, vec = self.vertices[vid].act(vec, a, self.field)
                phase = phase * ph
            out.append(vec)
        return phase, tuple(out)

    def violated_terms(self, edge_values: dict, state) -> dict:
        """Per-vertex count of violated edge-match terms for a raw state whose
        edge degrees of freedom are given explicitly."""
        report = {}
        for vid, vec in zip(self.vertex_order(), state):
            rep = self.vertices[vid]
            bad = 0
            for slot, lab in rep.edge_labels(vec).items():
                eid = self._edge_at(vid, slot).eid
                if edge_values.get(eid, lab) != lab:
                    bad += 1
            if bad:
                report[vid] = bad
        return report

    def check_commutation(self) -> dict:
        """Verify all Hamiltonian terms commute exactly.

        H_z terms are diagonal (trivially mutually commuting); H_{z}/H_f
        commute because face actions shift edge and grading labels equally
        (asserted structurally); face/face commutation is checked per shared
        vertex on the full local state space, with state-independent phase
        mismatches multiplied around each shared edge.
        """
        field = self.field
        report = {"faces": len(self.faces), "face_pairs": 0, "ok": True}
        for i, j in itertools.combinations(range(len(self.faces)), 2):
            shared = {v for v, _ in self.faces[i]} & {v for v, _ in self.faces[j]}
            if not shared:
                continue
            report["face_pairs"] += 1
            for g in range(self.p):
                for h in range(self.p):
                    mismatch = field.one
                    for vid in shared:
                        mm = self._vertex_commutator_phase(vid, i, j, g, h)
                        mismatch = mismatch * mm
                    if mismatch != field.one:
                        report["ok"] = False
                        report.setdefault("violations", []).append(
                            {"faces": [i, j], "g": g, "h": h})
        return report

    def _vertex_commutator_phase(self, vid, face_i, face_j, g, h):
        """U_i(g)U_j(h) = phase * U_j(h)U_i(g) at one vertex; must be
        state-independent (asserted by evaluation over the full local basis)."""
        rep = self.vertices[vid]
        field = self.field

        def args_for(face_idx, u):
            out: dict[str, int] = {}
            template = "tri21" if rep.direction == "tri21" else "tri12"
            for v, region in self.faces[face_idx]:
                if v == vid:
                    sign = BUBBLE_SIGN[(template, region)]
                    out[region] = out.get(region, 0) + sign * u
            return out

        ai, aj = args_for(face_i, g), args_for(face_j, h)
        ratio = None
        for vec in rep.basis():
            p1, v1 = rep.act(vec, aj, field)
            p2, v2 = rep.act(v1, ai, field)
            q1, w1 = rep.act(vec, ai, field)
            q2, w2 = rep.act(w1, aj, field)
            if v2 != w2:
                raise StructureError("face relabelings do not commute")
            r = (p1 * p2) * (q1 * q2).inverse()
            if ratio is None:
                ratio = r
            elif ratio != r:
                raise StructureError("state-dependent commutator phase")
        return ratio if ratio is not None else field.one

    def assert_face_group_rep(self) -> None:
        """Each face's operators form a strict Z/p action on the consistent
        basis (needed for H_f idempotency and the trace formula)."""
        basis = self.consistent_basis()
        index = {s: i for i, s in enumerate(basis)}
        for f in range(len(self.faces)):
            for g in range(self.p):
                for h in range(self.p):
                    for state in basis:
                        p1, s1 = self.face_action(f, g, state)
                        p2, s2 = self.face_action(f, h, s1)
                        ps, ss = self.face_action(f, (g + h) % self.p, state)
                        if s2 != ss or p1 * p2 != ps:
                            raise StructureError(
                                f"face {f} does not carry a strict group action")
                        if s2 not in index:
                            raise StructureError(
                                f"face {f} left the consistent subspace")

    def face_matrix(self, face_idx: int, g: int) -> ExactMatrix:
        """H_{f,g} on the consistent basis."""
        basis = self.consistent_basis()
        index = {s: i for i, s in enumerate(basis)}
        mat = ExactMatrix(self.field, len(basis), len(basis))
        for j, state in enumerate(basis):
            phase, new = self.face_action(face_idx, g, state)
            mat.add_to(index[new], j, phase)
        return mat

    def face_projector(self, face_idx: int) -> ExactMatrix:
        basis = self.consistent_basis()
        n = len(basis)
        acc = ExactMatrix(self.field, n, n)
        for g in range(self.p):
            acc = acc + self.face_matrix(face_idx, g)
        return acc.scale(self.field.inv_p)

    def vertex_projector_diagonal(self, vid: str, edge_values: dict, state):
        """Eigenvalue (0..3) of H_z = sum of the three edge-match projectors."""
        rep = self.vertices[vid]
        idx = self.vertex_order().index(vid)
        good = 0
        for slot, lab in rep.edge_labels(state[idx]).items():
            eid = self._edge_at(vid, slot).eid
            if edge_values.get(eid, lab) == lab:
                good += 1
        return good

    def ground_space_dim(self) -> int:
        """Exact dimension of the joint +1 eigenspace of all terms.

        Computed on the consistent subspace (the vertex-term kernel) via the
        character formula rank(prod_f H_f) = p^-F sum_g tr U_g, exact in the
        cyclotomic field.
        """
        self.assert_face_group_rep()
        basis = self.consistent_basis()
        nf = len(self.faces)
        field = self.field
        total = field.zero
        for gs in itertools.product(range(self.p), repeat=nf):
            tr = field.zero
            for state in basis:
                phase = field.one
                cur = state
                for f, g in enumerate(gs):
                    ph, cur = self.face_action(f, g, cur)
                    phase = phase * ph
                if cur == state:
                    tr = tr + phase
            total = total + tr
        for _ in range(nf):
            total = total * field.inv_p
        value = total.as_rational()
        if value is None or value.denominator != 1 or value < 0:
            raise StructureError(f"trace formula produced non-integer {total!r}")
        return int(value)


# --------------------------------------------------------------------------
# Patch builders
# --------------------------------------------------------------------------


def _hex_vertex_names(i):
    # per hexagon i: t=top, ul/ll = upper/lower left, b=bottom, lr/ur = right
    return {k: f"h{i}_{k}" for k in ("t", "ul", "ll", "b", "lr", "ur")}


def hexagon_chain_patch(p: int, n_faces: int, wall_name: str = "Xk:1",
                        pin: bool = True, pin_value=None) -> LatticePatch:
    """A horizontal chain of hexagons, all edges on one wall (the bulk model).

    Interior vertices alternate 2:1 / 1:2; dangling edges are pinned to
    `pin_value` (default: the wall's first simple object) unless pin=False.
    """
    w = BimoduleLabel.parse(wall_name, p)
    vertices: dict[str, TrivalentRep] = {}
    edges: list[PatchEdge] = []
    faces = []
    pinned = {}
    if pin_value is None:
        pin_value = w.simple_objects()[0]

    def add_edge(eid, ends):
        edges.append(PatchEdge(eid, w, ends))

    def dangle(eid, end):
        add_edge(eid, (end, None))
        if pin:
            pinned[eid] = pin_value

    for i in range(n_faces):
        names = _hex_vertex_names(i)
        # left column shared with previous hexagon
        if i == 0:
            vertices[names["ul"]] = TrivalentRep("tri12", w, w)
            vertices[names["ll"]] = TrivalentRep("tri21", w, w)
            add_edge(f"h{i}_w", ((names["ul"], "bottom"), (names["ll"], "top")))
            dangle(f"h{i}_ul_r", (names["ul"], "tl"))
            dangle(f"h{i}_ll_r", (names["ll"], "bl"))
        vertices[names["t"]] = TrivalentRep("tri21", w, w)
        vertices[names["b"]] = TrivalentRep("tri12", w, w)
        vertices[names["ur"]] = TrivalentRep("tri12", w, w)
        vertices[names["lr"]] = TrivalentRep("tri21", w, w)
        ul = names["ul"] if i == 0 else _hex_vertex_names(i - 1)["ur"]
        ll = names["ll"] if i == 0 else _hex_vertex_names(i - 1)["lr"]
        add_edge(f"h{i}_nw", ((ul, "tr"), (names["t"], "bl")))
        add_edge(f"h{i}_ne", ((names["t"], "br"), (names["ur"], "tl")))
        add_edge(f"h{i}_e", ((names["ur"], "bottom"), (names["lr"], "top")))
        add_edge(f"h{i}_se", ((names["lr"], "bl"), (names["b"], "tr")))
        add_edge(f"h{i}_sw", ((names["b"], "tl"), (ll, "br")))
        dangle(f"h{i}_t_r", (names["t"], "top"))
        dangle(f"h{i}_b_r", (names["b"], "bottom"))
        if i == n_faces - 1:
            dangle(f"h{i}_ur_r", (names["ur"], "tr"))
            dangle(f"h{i}_lr_r", (names["lr"], "br"))
        faces.append([
            (names["t"], "mid"),
            (names["ur"], "left"), (names["lr"], "left"),
            (names["b"], "mid"),
            (ll, "right"), (ul, "right"),
        ])
    return LatticePatch(p, vertices, edges, faces, pinned)


def defect_line_patch(p: int) -> LatticePatch:
    """Two hexagons in an X_1 bulk crossed by F_0, T and L defect lines
    meeting at a junction on the shared edge (the defect-line ground-state
    configuration)."""
    x1 = BimoduleLabel("X", 1, p)
    f0 = BimoduleLabel("F", 0, p)
    tw = BimoduleLabel("T", None, p)
    lw = BimoduleLabel("L", None, p)

    vertices = {
        # hexagon boundary, left cell
        "ul0": TrivalentRep("tri12", x1, x1),
        "ll0": TrivalentRep("tri21", x1, x1),
        "t0": TrivalentRep("tri21", x1, x1),
        # junction: F_0 (from hexagon 0) and T (hexagon 1) merge into L
        "b0": TrivalentRep("tri12", x1, f0),      # lower-left of hexagon 0
        "jn": TrivalentRep("tri21", f0, tw),      # bottom of the shared edge
        "tj": TrivalentRep("tri12", x1, lw),      # top of the shared edge
        "t1": TrivalentRep("tri21", lw, x1),      # L line exits upward here
        "b1": TrivalentRep("tri12", tw, x1),      # lower-right, T line enters
        "ur1": TrivalentRep("tri12", x1, x1),
        "lr1": TrivalentRep("tri21", x1, x1),
    }
    edges = [
        PatchEdge("w0", x1, (("ul0", "bottom"), ("ll0", "top"))),
        PatchEdge("nw0", x1, (("ul0", "tr"), ("t0", "bl"))),
        PatchEdge("ne0", x1, (("t0", "br"), ("tj", "tl"))),
        PatchEdge("mid", lw, (("tj", "bottom"), ("jn", "top"))),
        PatchEdge("se0", f0, (("jn", "bl"), ("b0", "tr"))),
        PatchEdge("sw0", x1, (("b0", "tl"), ("ll0", "br"))),
        PatchEdge("nw1", lw, (("tj", "tr"), ("t1", "bl"))),
        PatchEdge("ne1", x1, (("t1", "br"), ("ur1", "tl"))),
        PatchEdge("e1", x1, (("ur1", "bottom"), ("lr1", "top"))),
        PatchEdge("se1", x1, (("lr1", "bl"), ("b1", "tr"))),
        PatchEdge("sw1", tw, (("b1", "tl"), ("jn", "br"))),
        # dangling
        PatchEdge("d_ul0", x1, (("ul0", "tl"), None)),
        PatchEdge("d_ll0", x1, (("ll0", "bl"), None)),
        PatchEdge("d_t0", x1, (("t0", "top"), None)),
        PatchEdge("d_b0", f0, (("b0", "bottom"), None)),
        PatchEdge("d_t1", lw, (("t1", "top"), None)),
        PatchEdge("d_b1", tw, (("b1", "bottom"), None)),
        PatchEdge("d_ur1", x1, (("ur1", "tr"), None)),
        PatchEdge("d_lr1", x1, (("lr1", "br"), None)),
    ]
    faces = [
        [("t0", "mid"), ("tj", "left"), ("jn", "left"), ("b0", "mid"),
         ("ll0", "right"), ("ul0", "right")],
        [("t1", "mid"), ("ur1", "left"), ("lr1", "left"), ("b1", "mid"),
         ("jn", "right"), ("tj", "right")],
    ]
    pinned = {
        "d_ul0": 0, "d_ll0": 0, "d_t0": 0, "d_b0": STAR,
        "d_t1": 0, "d_b1": (0, 0), "d_ur1": 0, "d_lr1": 0,
    }
    return LatticePatch(p, vertices, edges, faces, pinned)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------


def patch_from_json(doc: dict) -> LatticePatch:
    p = doc["p"]
    vertices = {}
    for v in doc["vertices"]:
        direction = v["template"]
        w1 = BimoduleLabel.parse(v["walls"][0], p)
        w2 = BimoduleLabel.parse(v["walls"][1], p)
        vertices[v["id"]] = TrivalentRep(direction, w1, w2,
                                         corner=v.get("corner"))
    edges = []
    for e in doc["edges"]:
        ends = tuple(tuple(end) if end else None for end in e["ends"])
        edges.append(PatchEdge(e["id"], BimoduleLabel.parse(e["wall"], p), ends))
    pinned = {}
    for eid, value in (doc.get("pinned") or {}).items():
        pinned[eid] = tuple(value) if isinstance(value, list) else value
    faces = [[(vid, region) for vid, region in face] for face in doc["faces"]]
    return LatticePatch(p, vertices, edges, faces, pinned)


def patch_to_json(patch: LatticePatch) -> dict:
    return {
        "p": patch.p,
        "vertices": [
            {"id": vid, "template": rep.direction,
             "walls": [rep.first.name(), rep.second.name()],
             **({"corner": rep.corner} if rep.has_corner else {})}
            for vid, rep in patch.vertices.items()
        ],
        "edges": [
            {"id": e.eid, "wall": e.wall.name(),
             "ends": [list(end) if end else None for end in e.ends]}
            for e in patch.edges
        ],
        "faces": [[list(c) for c in face] for face in patch.faces],
        "pinned": {
            eid: (list(v) if isinstance(v, tuple) else v)
            for eid, v in patch.pinned.items()
        },
    }


def load_patch(path: str) -> LatticePatch:
    with open(path) as fh:
        return patch_from_json(json.load(fh))
