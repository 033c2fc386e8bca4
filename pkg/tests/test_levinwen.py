"""Lattice model checks: projectors, commutation, exact ground spaces."""

import json

import pytest

from annulus.levinwen import (
    LatticePatch, PatchEdge, defect_line_patch, hexagon_chain_patch,
    patch_from_json, patch_to_json,
)
from annulus.linalg import ExactMatrix
from annulus.reps import TrivalentRep
from annulus.structures import StructureError
from annulus.walls import BimoduleLabel


def dense_ground_dim(patch):
    """Independent oracle: assemble every face projector as an exact matrix on
    the vertex-term kernel and take the rank of their product by elimination."""
    basis = patch.consistent_basis()
    n = len(basis)
    total = ExactMatrix.identity(patch.field, n)
    for f in range(len(patch.faces)):
        proj = patch.face_projector(f)
        assert (proj @ proj) == proj  # exact projector
        total = proj @ total
    return total.rank()


def test_single_hexagon_dims():
    for p in (2, 3):
        patch = hexagon_chain_patch(p, 1)
        assert len(patch.consistent_basis()) == p
        assert patch.check_commutation()["ok"]
        assert patch.ground_space_dim() == 1
        assert dense_ground_dim(patch) == 1


def test_chain_dims_against_dense_oracle():
    for p in (2, 3):
        for nf in (1, 2, 3):
            patch = hexagon_chain_patch(p, nf)
            assert len(patch.consistent_basis()) == p ** nf
            dim = patch.ground_space_dim()
            assert dim == dense_ground_dim(patch)
            assert dim == 1


def test_face_term_removed_multiplies_dimension_by_p():
    for p in (2, 3):
        full = hexagon_chain_patch(p, 2)
        reduced = LatticePatch(p, full.vertices, full.edges, full.faces[:-1],
                               full.pinned)
        assert reduced.ground_space_dim() == p * full.ground_space_dim()
        assert dense_ground_dim(reduced) == p


def test_zero_face_patch_counts_consistent_labelings():
    p = 3
    full = hexagon_chain_patch(p, 2)
    bare = LatticePatch(p, full.vertices, full.edges, [], full.pinned)
    assert bare.ground_space_dim() == len(bare.consistent_basis()) == p * p


def test_face_operators_are_monomial_group_action():
    p = 3
    patch = hexagon_chain_patch(p, 2)
    patch.assert_face_group_rep()
    basis = patch.consistent_basis()
    for f in range(2):
        hfg = patch.face_matrix(f, 1)
        acc = hfg
        for _ in range(p - 1):
            acc = hfg @ acc
        assert acc == ExactMatrix.identity(patch.field, len(basis))


def test_h_z_eigenvalues():
    p = 2
    patch = hexagon_chain_patch(p, 1)
    state = patch.consistent_basis()[0]
    edges = patch.edge_labels_of(state)
    vid = patch.vertex_order()[0]
    assert patch.vertex_projector_diagonal(vid, edges, state) == 3
    # a mismatched edge drops exactly the terms naming it
    bad = dict(edges)
    eid = next(e.eid for e in patch.edges
               if (vid, patch.vertices[vid].slots[0]) in e.ends)
    bad[eid] = (bad[eid] + 1) % p
    assert patch.vertex_projector_diagonal(vid, bad, state) == 2
    report = patch.violated_terms(bad, state)
    assert all(count >= 1 for count in report.values())


def test_open_string_violates_two_vertex_terms():
    """Flipping one interior edge value away from both endpoint gradings
    (an open string end pair) violates exactly one term at each endpoint."""
    p = 2
    patch = hexagon_chain_patch(p, 1)
    state = patch.consistent_basis()[0]
    edges = patch.edge_labels_of(state)
    interior = next(e for e in patch.edges if all(end for end in e.ends))
    bad = dict(edges)
    bad[interior.eid] = (bad[interior.eid] + 1) % p
    report = patch.violated_terms(bad, state)
    assert sorted(report.values()) == [1, 1]
    assert set(report) == {end[0] for end in interior.ends}


def test_defect_line_patch():
    for p in (2, 3):
        patch = defect_line_patch(p)
        rep = patch.check_commutation()
        assert rep["ok"]
        dim = patch.ground_space_dim()
        assert dim == dense_ground_dim(patch)
        for f in range(len(patch.faces)):
            proj = patch.face_projector(f)
            assert (proj @ proj) == proj


def test_free_boundary_mode():
    # 12 vertex labels minus 6 interior matching constraints; the face move
    # then identifies states along one loop orbit.
    p = 2
    patch = hexagon_chain_patch(p, 1, pin=False)
    assert len(patch.consistent_basis()) == p ** 6
    dim = patch.ground_space_dim()
    assert dim == dense_ground_dim(patch) == p ** 5


def test_face_move_toggles_loop_edges_p2():
    """H_{f,1} on the all-X_1 p=2 hexagon is the string-net loop move: all six
    face edges toggle, radiating edges stay put."""
    p = 2
    patch = hexagon_chain_patch(p, 1)
    face_eids = set()
    for vid, _ in patch.faces[0]:
        for slot in patch.vertices[vid].slots:
            e = patch._edge_at(vid, slot)
            if all(end is not None for end in e.ends):
                face_eids.add(e.eid)
    assert len(face_eids) == 6
    for state in patch.consistent_basis():
        before = patch.edge_labels_of(state)
        phase, new = patch.face_action(0, 1, state)
        after = patch.edge_labels_of(new)
        assert phase == patch.field.one
        for eid in before:
            if eid in face_eids:
                assert after[eid] == (before[eid] + 1) % 2
            else:
                assert after[eid] == before[eid]


def test_uniform_loop_superposition_is_ground_state():
    """The uniform superposition over closed-loop configurations on a single
    hexagon has H_f eigenvalue 1."""
    for p in (2, 3):
        patch = hexagon_chain_patch(p, 1)
        basis = patch.consistent_basis()
        proj = patch.face_projector(0)
        uniform = {i: patch.field.one for i in range(len(basis))}
        for i in range(len(basis)):
            acc = patch.field.zero
            for j, v in uniform.items():
                entry = proj.get(i, j)
                if entry:
                    acc = acc + entry * v
            assert acc == patch.field.one


def test_patch_size_limit(monkeypatch):
    import pytest as _pytest

    from annulus.engine import SizeLimitError

    monkeypatch.setenv("ANNULUS_MAX_BASIS", "2")
    patch = hexagon_chain_patch(3, 2)
    with _pytest.raises(SizeLimitError):
        patch.consistent_basis()


def test_patch_json_round_trip():
    patch = defect_line_patch(2)
    doc = json.loads(json.dumps(patch_to_json(patch)))
    patch2 = patch_from_json(doc)
    assert patch2.ground_space_dim() == patch.ground_space_dim()
    assert len(patch2.consistent_basis()) == len(patch.consistent_basis())


def test_patch_validation():
    p = 2
    x1 = BimoduleLabel("X", 1, p)
    v = {"a": TrivalentRep("tri21", x1, x1)}
    edges = [
        PatchEdge("e1", x1, (("a", "bl"), None)),
        PatchEdge("e2", x1, (("a", "br"), None)),
        PatchEdge("e3", x1, (("a", "top"), None)),
    ]
    LatticePatch(p, v, edges, [])
    with pytest.raises(StructureError):
        LatticePatch(p, v, edges[:2], [])  # unconnected slot
    with pytest.raises(StructureError):
        LatticePatch(p, v, edges, [], pinned={"e1": 7})
    with pytest.raises(StructureError):
        t = BimoduleLabel("T", None, p)
        LatticePatch(p, v, [PatchEdge("e1", t, (("a", "bl"), None))] + edges[1:], [])
