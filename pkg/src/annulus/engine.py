"""The domain wall structure algorithm.

Pipeline: enumerate the compound basis (consistent edge labelings), average
the bubble action of every internal cavity into a symmetrizer, take its image
grade by grade, then read off multiplicities of every candidate defect as the
exact rank of its idempotent on the graded quotient.

Structures and compound defects are immutable once validated; basis
enumeration, bubble application and per-defect idempotent ranks are pure and
independent per grade.
"""

from __future__ import annotations

import os

from .defects import DefectLabel, enumerate_defects, idempotent
from .linalg import ExactMatrix, solve_in_span
from .scalars import CycField
from .structures import BUBBLE_SIGN, CompoundDefect, StructureError


class SizeLimitError(RuntimeError):
    pass


def _max_basis() -> int:
    return int(os.environ.get("ANNULUS_MAX_BASIS", "200000"))


def enumerate_basis(cd: CompoundDefect) -> list[tuple]:
    """All consistent labelings: one free-label tuple per vertex, such that
    every internal edge gets the same object from both endpoints."""
    s = cd.structure
    order = cd.vertex_order
    placed: dict[str, int] = {}
    partials: list[tuple[tuple, dict]] = [((), {})]
    limit = _max_basis()
    for idx, vid in enumerate(order):
        placed[vid] = idx
        rep = cd.reps[vid]
        local = []
        for vec in rep.basis():
            local.append((vec, rep.edge_labels(vec)))
        new_partials = []
        for assignment, open_edges in partials:
            for vec, labels in local:
                ok = True
                merged = None
                for slot, lab in labels.items():
                    e = s._edge_at(vid, slot)
                    if e.eid in open_edges:
                        if open_edges[e.eid] != lab:
                            ok = False
                            break
                    else:
                        other = [
                            end for end in e.ends
                            if end is not None and end[0] != vid
                        ]
                        if other and other[0][0] in placed and other[0][0] != vid:
                            # already placed yet edge unseen: impossible
                            ok = False
                            break
                if not ok:
                    continue
                merged = dict(open_edges)
                for slot, lab in labels.items():
                    e = s._edge_at(vid, slot)
                    if e.eid in merged:
                        del merged[e.eid]  # both ends now placed
                    else:
                        other = [
                            end for end in e.ends
                            if end is not None and end != (vid, slot)
                        ]
                        if other:
                            merged[e.eid] = lab
                new_partials.append((assignment + (vec,), merged))
                if len(new_partials) > limit:
                    raise SizeLimitError(
                        f"compound basis exceeds ANNULUS_MAX_BASIS={limit}")
        partials = new_partials
    return [assignment for assignment, _ in partials]


def edge_labels_of(cd: CompoundDefect, vec: tuple) -> dict:
    """Object label of every edge for a compound basis vector."""
    labels = {}
    for vid, vvec in zip(cd.vertex_order, vec):
        rep = cd.reps[vid]
        for slot, lab in rep.edge_labels(vvec).items():
            e = cd.structure._edge_at(vid, slot)
            prev = labels.get(e.eid)
            if prev is not None and prev != lab:
                raise StructureError(f"inconsistent labeling on edge {e.eid}")
            labels[e.eid] = lab
    return labels


def external_grade(cd: CompoundDefect, vec: tuple):
    """Tuple of external-edge labels, in the structure's boundary order."""
    labels = edge_labels_of(cd, vec)
    return tuple(labels[eid] for eid in cd.structure.external)


def _apply_args(cd: CompoundDefect, vec: tuple, args_by_vertex: dict, field):
    phase = field.one
    out = []
    for vid, vvec in zip(cd.vertex_order, vec):
        args = args_by_vertex.get(vid)
        if args:
            ph, vvec = cd.reps[vid].act(vvec, args, field)
            phase = phase * ph
        out.append(vvec)
    return phase, tuple(out)


def boundary_action(cd: CompoundDefect, vec: tuple, g: int, h: int,
                    field: CycField):
    """Absorb a g string along the left external region and h along the right."""
    cache = getattr(cd, "_boundary_args_cache", None)
    if cache is None:
        cache = cd._boundary_args_cache = {}
    key = (g, h)
    args = cache.get(key)
    if args is None:
        args = {}
        for vid, region in cd.structure.left_face or ():
            slot_args = args.setdefault(vid, {})
            slot_args[region] = slot_args.get(region, 0) + g
        for vid, region in cd.structure.right_face or ():
            slot_args = args.setdefault(vid, {})
            slot_args[region] = slot_args.get(region, 0) + h
        cache[key] = args
    return _apply_args(cd, vec, args, field)


def _bubble_args(cd: CompoundDefect, cavity: int, g: int) -> dict:
    cache = getattr(cd, "_bubble_args_cache", None)
    if cache is None:
        cache = cd._bubble_args_cache = {}
    key = (cavity, g)
    if key not in cache:
        try:
            corners = cd.structure.cavities[cavity]
        except IndexError:
            raise StructureError(f"no cavity {cavity}") from None
        args: dict[str, dict[str, int]] = {}
        for vid, region in corners:
            sign = BUBBLE_SIGN[(cd.structure.vertices[vid], region)]
            slot_args = args.setdefault(vid, {})
            slot_args[region] = slot_args.get(region, 0) + sign * g
        cache[key] = args
    return cache[key]


def bubble_action(cd: CompoundDefect, cavity: int, g: int, vec: tuple,
                  field: CycField):
    """Insert a g-labeled loop in the given internal cavity and absorb it."""
    return _apply_args(cd, vec, _bubble_args(cd, cavity, g), field)


def cavity_symmetrizer(cd: CompoundDefect, cavity: int,
                       field: CycField | None = None) -> ExactMatrix:
    """P = (1/p) sum_g bubble_action(g) on the raw compound basis; exactly
    idempotent. Structures with no cavities have the identity as their total
    symmetrizer."""
    field = field or CycField(cd.p)
    basis = enumerate_basis(cd)
    index = {v: i for i, v in enumerate(basis)}
    n = len(basis)
    proj = ExactMatrix(field, n, n)
    for j, vec in enumerate(basis):
        for g in range(cd.p):
            phase, new = bubble_action(cd, cavity, g, vec, field)
            proj.add_to(index[new], j, phase)
    proj = proj.scale(field.inv_p)
    if not (proj @ proj) == proj:
        raise StructureError("cavity symmetrizer is not idempotent")
    return proj


class QuotientRep:
    """Bubble-invariant compound representation, graded by external labels."""

    def __init__(self, cd: CompoundDefect, field: CycField | None = None):
        self.cd = cd
        self.field = field or CycField(cd.p)
        self.raw_basis = enumerate_basis(cd)
        self.raw_index = {v: i for i, v in enumerate(self.raw_basis)}
        self.grades: dict = {}
        self._grade_of = []
        for i, vec in enumerate(self.raw_basis):
            grade = external_grade(cd, vec)
            self._grade_of.append(grade)
            self.grades.setdefault(grade, []).append(i)
        self._local = {
            grade: {raw: j for j, raw in enumerate(idxs)}
            for grade, idxs in self.grades.items()
        }
        self._build_image()

    def _symmetrizer_on_grade(self, grade) -> ExactMatrix:
        """Product over cavities of the averaged bubble action, on one grade."""
        field = self.field
        idxs = self.grades[grade]
        local = self._local[grade]
        n = len(idxs)
        if n == 1:
            # scalar fast path: the averaged bubble phase must be 0 or 1
            vec = self.raw_basis[idxs[0]]
            scalar = field.one
            for cav in range(len(self.cd.structure.cavities)):
                acc = field.zero
                for g in range(self.cd.p):
                    phase, new = bubble_action(self.cd, cav, g, vec, field)
                    if new != vec:
                        raise StructureError(
                            "bubble action left the external grade; "
                            "cavity declaration is inconsistent")
                    acc = acc + phase
                acc = acc * field.inv_p
                if not (acc * acc == acc):
                    raise StructureError(
                        "cavity symmetrizer is not idempotent; "
                        "slot conventions violated for this structure")
                scalar = scalar * acc
            out = ExactMatrix(field, 1, 1)
            out.set(0, 0, scalar)
            return out
        total = ExactMatrix.identity(field, n)
        for cav in range(len(self.cd.structure.cavities)):
            proj = ExactMatrix(field, n, n)
            for j, raw in enumerate(idxs):
                vec = self.raw_basis[raw]
                for g in range(self.cd.p):
                    phase, new = bubble_action(self.cd, cav, g, vec, field)
                    tgt = self.raw_index[new]
                    if tgt not in local:
                        raise StructureError(
                            "bubble action left the external grade; "
                            "cavity declaration is inconsistent")
                    proj.add_to(local[tgt], j, phase)
            proj = proj.scale(field.inv_p)
            if not (proj @ proj) == proj:
                raise StructureError(
                    "cavity symmetrizer is not idempotent; "
                    "slot conventions violated for this structure")
            total = proj @ total
        return total

    def _build_image(self):
        self.image: dict = {}
        for grade in self.grades:
            sym = self._symmetrizer_on_grade(grade)
            self.image[grade] = sym.image_basis()

    def grade_dim(self, grade) -> int:
        return len(self.image.get(grade, ()))

    def grade_dims(self) -> dict:
        return {g: len(cols) for g, cols in self.image.items() if cols}

    def total_dim(self) -> int:
        return sum(len(cols) for cols in self.image.values())

    def _action_matrix(self, grade, g: int, h: int):
        """Boundary (g,h) on the quotient, from `grade` to its image grade.

        Returns (target grade, matrix in image coordinates).
        """
        field = self.field
        idxs = self.grades[grade]
        cols = self.image[grade]
        target = None
        tloc = None
        raw_cols = []
        for col in cols:
            acc: dict[int, object] = {}
            for j, coeff in col.items():
                vec = self.raw_basis[idxs[j]]
                phase, new = boundary_action(self.cd, vec, g, h, field)
                new_idx = self.raw_index[new]
                tgrade = self._grade_of[new_idx]
                if target is None:
                    target = tgrade
                    tloc = self._local[target]
                elif target != tgrade:
                    raise StructureError("boundary action split a grade")
                row = tloc[new_idx]
                val = coeff * phase
                acc[row] = acc.get(row, field.zero) + val
            raw_cols.append({r: v for r, v in acc.items() if v})
        if target is None:
            return grade, ExactMatrix(field, 0, 0)
        tcols = self.image[target]
        mat = ExactMatrix(field, len(tcols), len(cols))
        for j, rawcol in enumerate(raw_cols):
            try:
                coeffs = solve_in_span(field, tcols, rawcol)
            except ValueError:
                raise StructureError(
                    "boundary action does not preserve the bubble quotient") from None
            for i, v in enumerate(coeffs):
                if v:
                    mat.rows[i][j] = v
        return target, mat

    def boundary_matrix(self, grade, g: int, h: int):
        if grade not in self.image:
            raise KeyError(f"no such grade {grade!r}")
        return self._action_matrix(grade, g, h)


def apply_idempotent(qr: QuotientRep, d: DefectLabel) -> ExactMatrix:
    """Matrix of d's idempotent on the quotient at d's source grade.

    A grade absent from the quotient gives the empty (rank 0) matrix.
    """
    field = qr.field
    expr = idempotent(d, field)
    grade = expr.source
    if qr.grade_dim(grade) == 0:
        return ExactMatrix(field, 0, 0)
    n = qr.grade_dim(grade)
    total = ExactMatrix(field, n, n)
    for coeff, (g, h) in expr.terms:
        target, mat = qr.boundary_matrix(grade, g, h)
        if target != grade:
            raise StructureError("idempotent generator moved the source grade")
        total = total + mat.scale(coeff)
    return total


def decompose(qr: QuotientRep, check_complete: bool = True):
    """Isotypic decomposition of a 2-string quotient representation.

    Returns [(DefectLabel, multiplicity)] with positive multiplicities; for
    external boundaries with more or fewer strings the quotient itself is
    returned unchanged (unsupported, per contract).
    """
    if len(qr.cd.structure.external) != 2:
        return qr
    lower, upper = qr.cd.structure.external_walls()
    out = []
    for d in enumerate_defects(lower, upper):
        mat = apply_idempotent(qr, d)
        mult = mat.rank() if mat.nrows else 0
        if mult:
            out.append((d, mult))
    if check_complete:
        verify_completeness(qr, out)
    return out


def verify_completeness(qr: QuotientRep, decomposition) -> None:
    """Assert sum_d mult_d * dim V^d(grade) == quotient dim at every grade."""
    want = qr.grade_dims()
    got: dict = {}
    for d, mult in decomposition:
        for grade, dim in d.grade_dims().items():
            got[grade] = got.get(grade, 0) + mult * dim
    got = {g: v for g, v in got.items() if v}
    if got != want:
        raise StructureError(
            f"decomposition incomplete: got {got}, quotient has {want}")
