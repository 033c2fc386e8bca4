"""High-level drivers: vertical/horizontal defect fusion and wall associators.

Corner parameters (one per F-type corner of the underlying trivalent
vertices) are enumerated exhaustively; associator results are additionally
compressed to exact delta constraints and diffed against the golden table
shipped in data/associator_table.json.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources

from .defects import DefectLabel, parse_annotated_defect, trivial_defect
from .engine import QuotientRep, decompose
from .scalars import mod_inverse
from .structures import (
    StructureError, associator_compound, associator_corner_names,
    horizontal_compound, horizontal_corner_names, vertical_compound,
)
from .walls import BimoduleLabel, all_walls, wall_product


@dataclass(frozen=True)
class FusionResult:
    """Decomposition of a fusion/associator, per corner-parameter assignment.

    outcomes maps each assignment (tuple aligned with corner_names) to a
    sorted tuple of (defect name, multiplicity); constraints, when present,
    are (mu_name, nu_name, coeff) with the exact meaning mu = coeff * nu.
    """

    kind: str
    p: int
    inputs: tuple[str, ...]
    corner_names: tuple[str, ...]
    outcomes: tuple  # ((corner values), ((defect name, mult), ...)), sorted
    constraints: tuple | None = None

    def outcome_map(self) -> dict:
        return {corners: dict(out) for corners, out in self.outcomes}

    def single(self) -> dict:
        """The decomposition when there are no corner parameters."""
        if self.corner_names:
            raise ValueError("result is parameterized by corners")
        return dict(self.outcomes[0][1])

    def support(self) -> set:
        return {corners for corners, out in self.outcomes if out}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "inputs": list(self.inputs),
            "corner_names": list(self.corner_names),
            "outcomes": [
                {"corners": list(corners),
                 "defects": [[name, mult] for name, mult in out]}
                for corners, out in self.outcomes
            ],
            "constraints": (
                None if self.constraints is None
                else [[m, n, c] for m, n, c in self.constraints]),
        }

    @staticmethod
    def from_json(doc: dict) -> "FusionResult":
        return FusionResult(
            kind=doc["kind"],
            p=doc["p"],
            inputs=tuple(doc["inputs"]),
            corner_names=tuple(doc["corner_names"]),
            outcomes=tuple(
                (tuple(o["corners"]),
                 tuple((name, mult) for name, mult in o["defects"]))
                for o in doc["outcomes"]),
            constraints=(
                None if doc.get("constraints") is None
                else tuple((m, n, c) for m, n, c in doc["constraints"])),
        )


def _decomposition(cd) -> tuple:
    qr = QuotientRep(cd)
    out = decompose(qr)
    return tuple(sorted((d.name(), mult) for d, mult in out))


def vertical_fuse(d1: DefectLabel, d2: DefectLabel) -> FusionResult:
    """Stack d1 below d2 and decompose (no corner parameters arise)."""
    cd = vertical_compound(d1, d2)
    out = _decomposition(cd)
    return FusionResult("vertical", d1.p, (d1.name(), d2.name()), (), (((), out),))


def horizontal_fuse(d1: DefectLabel, d2: DefectLabel,
                    corners: dict | None = None) -> FusionResult:
    """Fuse side by side; enumerate corner parameters unless given."""
    p = d1.p
    names = tuple(horizontal_corner_names(d1, d2))
    assignments = _corner_assignments(names, p, corners)
    outcomes = []
    for assignment in assignments:
        kw = dict(zip(names, assignment))
        cd = horizontal_compound(
            d1, d2, corner_bottom=kw.get("bottom"), corner_top=kw.get("top"))
        outcomes.append((assignment, _decomposition(cd)))
    return FusionResult("horizontal", p, (d1.name(), d2.name()), names,
                        tuple(outcomes))


def associator(m: BimoduleLabel, n: BimoduleLabel, pw: BimoduleLabel,
               corners: dict | None = None) -> FusionResult:
    """The compound defect of the [M,N,P] triangle, with delta compression."""
    p = m.p
    names = tuple(associator_corner_names(m, n, pw))
    assignments = _corner_assignments(names, p, corners)
    outcomes = []
    for assignment in assignments:
        cd = associator_compound(m, n, pw, dict(zip(names, assignment)))
        outcomes.append((assignment, _decomposition(cd)))
    constraints = None
    if corners is None:
        constraints = infer_delta_constraints(names, outcomes, p)
    return FusionResult("associator", p, (m.name(), n.name(), pw.name()),
                        names, tuple(outcomes), constraints)


def _corner_assignments(names, p, corners):
    if corners is not None:
        unknown = set(corners) - set(names)
        if unknown:
            raise StructureError(f"unknown corner names {sorted(unknown)}")
        missing = set(names) - set(corners)
        if missing:
            raise StructureError(f"missing corner values {sorted(missing)}")
        return [tuple(corners[nm] % p for nm in names)]
    return list(itertools.product(range(p), repeat=len(names)))


def infer_delta_constraints(names, outcomes, p):
    """Exact constraint summary of the support set, or None if no conjunction
    of pairwise mu = c*nu deltas reproduces it."""
    support = {corners for corners, out in outcomes if out}
    mus = [i for i, nm in enumerate(names) if nm.startswith("mu")]
    nus = [i for i, nm in enumerate(names) if nm.startswith("nu")]
    full = {t for t, _ in outcomes}
    kept = []
    for i in mus:
        for j in nus:
            for c in range(p):
                if all(t[i] == (c * t[j]) % p for t in support):
                    kept.append((i, j, c))
                    break  # at most one coefficient can work unless support is thin
    chosen = []
    defined = set(full)
    for (i, j, c) in kept:
        narrowed = {t for t in defined if t[i] == (c * t[j]) % p}
        if narrowed != defined:
            chosen.append((i, j, c))
            defined = narrowed
        if defined == support:
            break
    if defined != support:
        return None
    return tuple((names[i], names[j], c) for i, j, c in chosen)


# --------------------------------------------------------------------------
# Tables and golden comparison
# --------------------------------------------------------------------------


def load_golden_associators() -> dict:
    text = resources.files("annulus.data").joinpath(
        "associator_table.json").read_text()
    return json.loads(text)


def _eval_wall_param(expr: str, a, n, pz, p) -> int:
    """Evaluate a wall-parameter formula over tokens a, n, pz and inv()."""
    value = 1
    for factor in expr.split("*"):
        factor = factor.strip()
        invert = factor.startswith("inv(")
        if invert:
            factor = factor[4:].rstrip(")")
            # inv(x*y) arrives split; handled by caller tokens below
        token = {"a": a, "n": n, "pz": pz}.get(factor)
        if token is None:
            raise ValueError(f"bad token {factor!r} in {expr!r}")
        value = value * (mod_inverse(token, p) if invert else token) % p
    return value


def _expected_cell(golden, m, n, pw):
    """Expected (trivial defect, delta list) for concrete walls from golden data."""
    p = m.p
    key = "|".join((m.ekind(), n.ekind(), pw.ekind()))
    cell = golden["cells"][key]
    spec = cell["defect"]
    w4 = wall_product(wall_product(m, n), pw)
    if spec.startswith("wall:"):
        _, kind, expr = spec.split(":")
        expected_param = _eval_wall_param(expr, m.param, n.param, pw.param, p)
        if w4.kind != kind or w4.param != expected_param:
            raise AssertionError(
                f"[{m.name()},{n.name()},{pw.name()}]: product wall "
                f"{w4.name()} != golden {kind}:{expected_param}")
    else:
        names = {"TT": "T", "LL": "L", "RR": "R", "F0F0": "F0"}
        if w4.ekind() != names[spec]:
            raise AssertionError(
                f"[{m.name()},{n.name()},{pw.name()}]: product wall "
                f"{w4.name()} != golden {spec}")
    deltas = [(mu, nu, coeff) for mu, nu, coeff in cell["deltas"]]
    return trivial_defect(w4), deltas


def _expected_support(names, deltas, n_param, p):
    idx = {nm: i for i, nm in enumerate(names)}
    support = set()
    for t in itertools.product(range(p), repeat=len(names)):
        ok = True
        for mu, nu, coeff in deltas:
            c = 1 if coeff == "1" else (
                n_param if coeff == "n" else mod_inverse(n_param, p))
            if t[idx[mu]] != (c * t[idx[nu]]) % p:
                ok = False
                break
        if ok:
            support.add(t)
    return support


def check_associator_against_golden(result: FusionResult, golden=None) -> None:
    """Exact cell comparison; raises AssertionError on any mismatch."""
    golden = golden or load_golden_associators()
    p = result.p
    m, n, pw = (BimoduleLabel.parse(t, p) for t in result.inputs)
    expected_defect, deltas = _expected_cell(golden, m, n, pw)
    delta_names = {nm for d in deltas for nm in d[:2]}
    if not delta_names <= set(result.corner_names):
        raise AssertionError(
            f"[{m.name()},{n.name()},{pw.name()}]: golden deltas use corners "
            f"{sorted(delta_names)} but the structure has {result.corner_names}")
    want_support = _expected_support(result.corner_names, deltas, n.param, p)
    got = result.outcome_map()
    for corners, out in got.items():
        if corners in want_support:
            if out != {expected_defect.name(): 1}:
                raise AssertionError(
                    f"[{m.name()},{n.name()},{pw.name()}] at {corners}: got "
                    f"{out}, want trivial {expected_defect.name()}")
        elif out:
            raise AssertionError(
                f"[{m.name()},{n.name()},{pw.name()}] at {corners}: expected "
                f"zero, got {out}")


def generate_table(kind: str, p: int, golden_check: bool = False) -> dict:
    """Machine-readable fusion/associator table with deterministic ordering."""
    if kind == "associator":
        return _associator_table(p, golden_check)
    if kind == "vertical":
        return _vertical_table(p)
    if kind == "horizontal":
        return _horizontal_table(p)
    raise ValueError(f"unknown table kind {kind!r}")


def _associator_table(p: int, golden_check: bool) -> dict:
    golden = load_golden_associators() if golden_check else None
    entries = []
    walls = all_walls(p)
    for m in walls:
        for n in walls:
            for pw in walls:
                result = associator(m, n, pw)
                if golden_check:
                    check_associator_against_golden(result, golden)
                entries.append(result.to_json())
    return {"kind": "associator", "p": p, "entries": entries,
            "golden_checked": golden_check}


def _vertical_table(p: int) -> dict:
    from .defects import enumerate_defects

    entries = []
    walls = all_walls(p)
    for a in walls:
        for b in walls:
            lowers = enumerate_defects(a, b)
            for c in walls:
                uppers = enumerate_defects(b, c)
                for d1 in lowers:
                    for d2 in uppers:
                        entries.append(vertical_fuse(d1, d2).to_json())
    return {"kind": "vertical", "p": p, "entries": entries}


def _horizontal_table(p: int, wall_filter=None) -> dict:
    from .defects import enumerate_defects

    entries = []
    walls = all_walls(p)
    pairs = []
    for a in walls:
        for b in walls:
            pairs.extend(enumerate_defects(a, b))
    for d1 in pairs:
        for d2 in pairs:
            if wall_filter and not wall_filter(d1, d2):
                continue
            entries.append(horizontal_fuse(d1, d2).to_json())
    return {"kind": "horizontal", "p": p, "entries": entries}


def parse_defect_arg(text: str, p: int):
    """CLI parsing: defect label possibly carrying corner annotations."""
    return parse_annotated_defect(text, p)
