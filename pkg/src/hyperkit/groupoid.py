"""Hypergroupoids of boundary conditions and their composition.

A hypergroupoid has finitely many objects (the phases, or extensions,
on either side of a boundary) and, for each ordered pair of objects,
a finite basis of arrows Mor(Y -> X).  Composition of an arrow
``a in Mor(Y -> X)`` with ``b in Mor(Z -> Y)`` is a convex combination
of arrows in Mor(Z -> X):

    a . b = sum_c comp[a][b][c] * c,

subject to the same axioms as a hypergroup, stated per composable
triple: nonnegativity and row sums 1, associativity, identity arrows,
and a star bijection Mor(Y -> X) -> Mor(X -> Y) playing the role of
the involution (the identity coefficient of ``a . star(a)`` is
positive, and of ``a . b`` vanishes for every other b).  Each
endo-space Mor(X -> X) is then an ordinary hypergroup, and a
one-object hypergroupoid is exactly a hypergroup.

A BoundaryState is a convex mixture of arrows between two fixed
objects; composing states along a chain of phases folds the mixtures
left to right ("juxtaposition").  The composite of two elementary
boundaries answers which boundary conditions between the outer phases
are compatible with the given pair across the middle phase.

``double_coset_groupoid`` builds a genuinely multi-object example from
a group with a chosen subgroup: objects carry the trivial subgroup and
the chosen one, arrow bases are the double cosets H_X \\ G / H_Y, and
composition convolves uniform indicator measures exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    DEFAULT_TOL,
    HypergroupTable,
    ValidationReport,
    Violation,
    validate,
)
from .constructions import CayleyGroup, inverses, is_subgroup, validate_cayley
from .errors import PreconditionError, StructureError


@dataclass(frozen=True, eq=False)
class Hypergroupoid:
    """Objects, arrow bases per ordered pair, composition tensors, star.

    ``mor[x][y]`` lists the arrow labels of Mor(y -> x) (target first).
    ``comp[x][y][z]`` has shape (|Mor(y->x)|, |Mor(z->y)|, |Mor(z->x)|).
    ``star[x][y][a]`` is the index in Mor(x -> y) of the adjoint arrow.
    ``units[x]`` is the identity arrow index inside Mor(x -> x).
    """

    objects: tuple[str, ...]
    mor: tuple[tuple[tuple[str, ...], ...], ...]
    comp: tuple[tuple[tuple[np.ndarray, ...], ...], ...]
    star: tuple[tuple[tuple[int, ...], ...], ...]
    units: tuple[int, ...]

    def __post_init__(self):
        objects = tuple(str(x) for x in self.objects)
        k = len(objects)
        if k < 1:
            raise StructureError("a hypergroupoid needs at least one object")
        mor = tuple(
            tuple(tuple(str(a) for a in self.mor[x][y]) for y in range(k))
            for x in range(k)
        )
        if len(self.mor) != k or any(len(row) != k for row in self.mor):
            raise StructureError("mor must be an objects x objects grid")
        if len(self.comp) != k or len(self.star) != k or len(self.units) != k:
            raise StructureError("comp, star, and units must cover every object")
        comp_rows = []
        for x in range(k):
            row = []
            for y in range(k):
                cell = []
                for z in range(k):
                    t = np.array(self.comp[x][y][z], dtype=np.float64)
                    want = (len(mor[x][y]), len(mor[y][z]), len(mor[x][z]))
                    if t.shape != want:
                        raise StructureError(
                            f"composition tensor ({x},{y},{z}) has shape {t.shape}, expected {want}"
                        )
                    t.setflags(write=False)
                    cell.append(t)
                row.append(tuple(cell))
            comp_rows.append(tuple(row))
        star = []
        for x in range(k):
            row = []
            for y in range(k):
                s = tuple(int(v) for v in self.star[x][y])
                if len(s) != len(mor[x][y]) or any(
                    not 0 <= v < len(mor[y][x]) for v in s
                ):
                    raise StructureError(f"star ({x},{y}) is not a map into Mor({x}->{y})")
                row.append(s)
            star.append(tuple(row))
        units = tuple(int(u) for u in self.units)
        for x in range(k):
            if not 0 <= units[x] < len(mor[x][x]):
                raise StructureError(f"unit arrow of object {x} out of range")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "mor", mor)
        object.__setattr__(self, "comp", tuple(comp_rows))
        object.__setattr__(self, "star", tuple(star))
        object.__setattr__(self, "units", units)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def object_index(self, label: str) -> int:
        try:
            return self.objects.index(label)
        except ValueError:
            raise KeyError(f"no object named {label!r}") from None

    def arrow_index(self, to_object: int, from_object: int, label: str) -> int:
        try:
            return self.mor[to_object][from_object].index(label)
        except ValueError:
            raise KeyError(
                f"no arrow named {label!r} in Mor({self.objects[from_object]} -> "
                f"{self.objects[to_object]})"
            ) from None

    def endo_table(self, x: int) -> HypergroupTable:
        """The hypergroup carried by Mor(x -> x)."""
        return HypergroupTable(
            self.mor[x][x], self.units[x], self.star[x][x], self.comp[x][x][x]
        )


@dataclass(frozen=True, eq=False)
class BoundaryState:
    """A convex mixture of arrows from one object into another."""

    groupoid: Hypergroupoid
    to_object: int
    from_object: int
    coeffs: np.ndarray

    def __post_init__(self):
        g = self.groupoid
        if not (0 <= self.to_object < g.n_objects and 0 <= self.from_object < g.n_objects):
            raise StructureError("boundary state references unknown objects")
        coeffs = np.array(self.coeffs, dtype=np.float64)
        want = len(g.mor[self.to_object][self.from_object])
        if coeffs.shape != (want,):
            raise StructureError(
                f"boundary state has {coeffs.shape} coefficients, arrow basis has {want}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)


def point_state(
    g: Hypergroupoid, to_object: int, from_object: int, arrow: int | str
) -> BoundaryState:
    """The state concentrated on a single arrow."""
    if isinstance(arrow, str):
        arrow = g.arrow_index(to_object, from_object, arrow)
    n = len(g.mor[to_object][from_object])
    if not 0 <= arrow < n:
        raise IndexError(f"arrow index {arrow} out of range [0, {n})")
    c = np.zeros(n)
    c[arrow] = 1.0
    return BoundaryState(g, to_object, from_object, c)


def unit_state(g: Hypergroupoid, x: int) -> BoundaryState:
    return point_state(g, x, x, g.units[x])


def _groupoids_equal(g1: Hypergroupoid, g2: Hypergroupoid) -> bool:
    if g1 is g2:
        return True
    if g1.objects != g2.objects or g1.mor != g2.mor:
        return False
    if g1.star != g2.star or g1.units != g2.units:
        return False
    k = g1.n_objects
    return all(
        np.array_equal(g1.comp[x][y][z], g2.comp[x][y][z])
        for x in range(k)
        for y in range(k)
        for z in range(k)
    )


def validate_groupoid(g: Hypergroupoid, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check all hypergroupoid axioms; violations carry object indices first."""
    k = g.n_objects
    vios: list[Violation] = []

    for x in range(k):
        for y in range(k):
            for z in range(k):
                t = g.comp[x][y][z]
                for a, b, c in zip(*np.where(t < -tol)):
                    vios.append(
                        Violation(
                            "nonnegativity", (x, y, z, int(a), int(b), int(c)), float(-t[a, b, c])
                        )
                    )
                sums = t.sum(axis=2)
                for a, b in zip(*np.where(np.abs(sums - 1.0) > tol)):
                    vios.append(
                        Violation(
                            "convexity", (x, y, z, int(a), int(b)), float(abs(sums[a, b] - 1.0))
                        )
                    )

    for x in range(k):
        for y in range(k):
            n_xy = len(g.mor[x][y])
            eye = np.eye(n_xy)
            dev = np.abs(g.comp[x][x][y][g.units[x]] - eye)
            for b, c in zip(*np.where(dev > tol)):
                vios.append(Violation("unit", (x, y, g.units[x], int(b), int(c)), float(dev[b, c])))
            dev = np.abs(g.comp[x][y][y][:, g.units[y], :] - eye)
            for a, c in zip(*np.where(dev > tol)):
                vios.append(Violation("unit", (x, y, int(a), g.units[y], int(c)), float(dev[a, c])))

    for x in range(k):
        for y in range(k):
            for z in range(k):
                for w in range(k):
                    left = np.einsum("abm,mcp->abcp", g.comp[x][y][z], g.comp[x][z][w])
                    right = np.einsum("bcq,aqp->abcp", g.comp[y][z][w], g.comp[x][y][w])
                    dev = np.abs(left - right)
                    for a, b, c, p in zip(*np.where(dev > tol)):
                        vios.append(
                            Violation(
                                "associativity",
                                (x, y, z, w, int(a), int(b), int(c), int(p)),
                                float(dev[a, b, c, p]),
                            )
                        )

    for x in range(k):
        for y in range(k):
            for a, sa in enumerate(g.star[x][y]):
                if g.star[y][x][sa] != a:
                    vios.append(Violation("star-involution", (x, y, a), 1.0))
        if g.star[x][x][g.units[x]] != g.units[x]:
            vios.append(Violation("star-unit", (x, g.units[x]), 1.0))

    for x in range(k):
        for y in range(k):
            t = g.comp[x][y][x]  # a in Mor(y->x), b in Mor(x->y), c in Mor(x->x)
            for a in range(len(g.mor[x][y])):
                sa = g.star[x][y][a]
                for b in range(len(g.mor[y][x])):
                    v = float(t[a, b, g.units[x]])
                    if b == sa and v <= tol:
                        vios.append(Violation("involution", (x, y, a, b), tol - v))
                    elif b != sa and v > tol:
                        vios.append(Violation("involution", (x, y, a, b), v))

    for x in range(k):
        endo_report = validate(g.endo_table(x), tol)
        for sub in endo_report.violations:
            vios.append(Violation(f"endo:{sub.axiom}", (x, *sub.indices), sub.magnitude))

    return ValidationReport(not vios, tuple(vios))


def compose(
    g: Hypergroupoid, left: BoundaryState, right: BoundaryState, tol: float = DEFAULT_TOL
) -> BoundaryState:
    """Juxtapose two boundaries sharing their middle phase.

    ``left`` lives between the outer-left object and the middle one,
    ``right`` between the middle and the outer-right one; the result is
    the mixture of boundary conditions between the outer objects.
    """
    if not (_groupoids_equal(left.groupoid, g) and _groupoids_equal(right.groupoid, g)):
        raise PreconditionError("boundary states belong to a different hypergroupoid")
    if left.from_object != right.to_object:
        raise PreconditionError(
            f"cannot compose: left state ends at object "
            f"{g.objects[left.from_object]!r} but right state starts at "
            f"{g.objects[right.to_object]!r}"
        )
    tensor = g.comp[left.to_object][left.from_object][right.from_object]
    out = np.einsum("a,b,abc->c", left.coeffs, right.coeffs, tensor)
    out = np.where((out < 0.0) & (out >= -tol), 0.0, out)
    return BoundaryState(g, left.to_object, right.from_object, out)


def juxtapose_chain(
    g: Hypergroupoid, states, tol: float = DEFAULT_TOL
) -> BoundaryState:
    """Left-to-right fold of ``compose`` along a chain of phases."""
    states = list(states)
    if not states:
        raise PreconditionError("empty chain")
    acc = states[0]
    for pos, state in enumerate(states[1:], start=1):
        if acc.from_object != state.to_object:
            raise PreconditionError(
                f"chain mismatch at step {pos}: expected a state out of object "
                f"{g.objects[acc.from_object]!r}"
            )
        acc = compose(g, acc, state, tol)
    return acc


def from_hypergroup(table: HypergroupTable, object_label: str = "B") -> Hypergroupoid:
    """Wrap a hypergroup as the one-object hypergroupoid it is."""
    return Hypergroupoid(
        (object_label,),
        ((table.labels,),),
        (((table.lam,),),),
        ((table.involution,),),
        (table.unit,),
    )


def double_coset_groupoid(
    group: CayleyGroup,
    subgroup,
    object_labels: tuple[str, str] = ("X0", "X1"),
    arrow_prefixes: tuple[tuple[str, str], tuple[str, str]] = (("g", "u"), ("v", "h")),
) -> Hypergroupoid:
    """Two-object hypergroupoid from a group with a chosen subgroup.

    Object 0 carries the trivial subgroup, object 1 the given one; the
    arrows of Mor(y -> x) are the double cosets ``H_x g H_y`` and
    composition convolves their uniform indicator measures (computed
    exactly, converted to floats at the end).  Arrow labels are
    ``prefix + index`` with a distinct prefix per hom-space so that
    names stay globally unique.
    """
    validate_cayley(group)
    sub = sorted(int(x) for x in subgroup)
    if not is_subgroup(group, sub):
        raise StructureError("the given subset is not a subgroup")
    mul = group.mul
    inv = inverses(group)
    subgroups = [[group.identity], sub]

    cosets = {}
    for x in range(2):
        for y in range(2):
            seen = [False] * group.order
            parts = []
            for e in range(group.order):
                if seen[e]:
                    continue
                part = {
                    int(mul[mul[h1, e], h2])
                    for h1 in subgroups[x]
                    for h2 in subgroups[y]
                }
                for v in part:
                    seen[v] = True
                parts.append(tuple(sorted(part)))
            cosets[x, y] = parts

    part_of = {
        (x, y): {e: p for p, part in enumerate(parts) for e in part}
        for (x, y), parts in cosets.items()
    }

    def part_index(x, y, element):
        return part_of[x, y][element]

    comp = []
    for x in range(2):
        row = []
        for y in range(2):
            cell = []
            for z in range(2):
                a_parts, b_parts, c_parts = cosets[x, y], cosets[y, z], cosets[x, z]
                t = np.zeros((len(a_parts), len(b_parts), len(c_parts)))
                for a, A in enumerate(a_parts):
                    for b, B in enumerate(b_parts):
                        counts = [0] * len(c_parts)
                        for p in A:
                            for q in B:
                                counts[part_index(x, z, int(mul[p, q]))] += 1
                        total = len(A) * len(B)
                        for c in range(len(c_parts)):
                            t[a, b, c] = float(Fraction(counts[c], total))
                cell.append(t)
            row.append(tuple(cell))
        comp.append(tuple(row))

    star = []
    for x in range(2):
        row = []
        for y in range(2):
            row.append(
                tuple(part_index(y, x, inv[part[0]]) for part in cosets[x, y])
            )
        star.append(tuple(row))

    units = tuple(part_index(x, x, group.identity) for x in range(2))
    mor = tuple(
        tuple(
            tuple(f"{arrow_prefixes[x][y]}{i}" for i in range(len(cosets[x, y])))
            for y in range(2)
        )
        for x in range(2)
    )
    return Hypergroupoid(tuple(object_labels), mor, tuple(comp), tuple(star), units)
