"""Finite hypergroup tables and their basic operations.

A finite hypergroup is a vector space with a distinguished basis
``k_0, ..., k_{n-1}`` whose products expand as convex combinations

    k_i * k_j = sum_l  lambda[i][j][l] * k_l,

with all ``lambda[i][j][l] >= 0`` and each row summing to 1.  There is
a neutral element ``k_unit`` and an involution ``i <-> inv(i)`` such
that the unit coefficient ``lambda[i][j][unit]`` is nonzero exactly
when ``j = inv(i)``.  Groups are the special case where every row is a
point mass.

This module holds the table type, the axiom validator, multiplication
of basis elements and of convex mixtures, element weights
``mu_i = 1 / lambda[i][inv(i)][unit]`` and the Haar measure

    H = (sum_i mu_i)^(-1) * sum_i mu_i * k_i,

the unique absorbing idempotent mixture (H * k_i = k_i * H = H = H^2).

All values are immutable after construction and every operation is a
pure function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import AxiomError, PreconditionError, StructureError

#: Absolute comparison tolerance used throughout unless overridden.
DEFAULT_TOL = 1e-9


def _as_index_tuple(seq, n, what):
    try:
        out = tuple(int(x) for x in seq)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{what} must be a sequence of integers") from exc
    if any(x < 0 or x >= n for x in out):
        raise StructureError(f"{what} entries must lie in [0, {n})")
    return out


@dataclass(frozen=True, eq=False)
class HypergroupTable:
    """Structure constants of a finite hypergroup.

    Attributes:
        labels: one name per basis element.
        unit: index of the neutral element.
        involution: permutation of indices with ``inv(inv(i)) == i``.
        lam: tensor of shape (n, n, n); ``lam[i, j, l]`` is the
            coefficient of ``k_l`` in ``k_i * k_j``.

    Construction checks shapes only; axioms are checked by ``validate``.
    """

    labels: tuple[str, ...]
    unit: int
    involution: tuple[int, ...]
    lam: np.ndarray

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        if n < 1:
            raise StructureError("a hypergroup needs at least one element")
        if len(set(labels)) != n:
            raise StructureError("element labels must be distinct")
        lam = np.array(self.lam, dtype=np.float64)
        if lam.shape != (n, n, n):
            raise StructureError(
                f"lambda tensor has shape {lam.shape}, expected {(n, n, n)}"
            )
        if not np.all(np.isfinite(lam)):
            raise StructureError("lambda tensor contains non-finite entries")
        unit = int(self.unit)
        if not 0 <= unit < n:
            raise StructureError(f"unit index {unit} out of range [0, {n})")
        involution = _as_index_tuple(self.involution, n, "involution")
        if len(involution) != n:
            raise StructureError("involution must have one entry per element")
        lam.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "involution", involution)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element named {label!r}") from None


def with_labels(table: HypergroupTable, labels) -> HypergroupTable:
    """Same table, new element names."""
    return HypergroupTable(tuple(labels), table.unit, table.involution, table.lam)


def tables_equal(t1: HypergroupTable, t2: HypergroupTable, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise equality of two tables (labels included)."""
    return (
        t1.labels == t2.labels
        and t1.unit == t2.unit
        and t1.involution == t2.involution
        and t1.lam.shape == t2.lam.shape
        and bool(np.all(np.abs(t1.lam - t2.lam) <= tol))
    )


@dataclass(frozen=True, eq=False)
class Mixture:
    """A convex combination of basis elements of a fixed table."""

    table: HypergroupTable
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.float64)
        if coeffs.shape != (self.table.n,):
            raise StructureError(
                f"mixture has {coeffs.shape} coefficients, table has {self.table.n} elements"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)


def mixture(table: HypergroupTable, coeffs, tol: float = DEFAULT_TOL) -> Mixture:
    """Build a mixture, clamping round-off negatives in [-tol, 0) to zero.

    Raises PreconditionError if the vector is not convex within tol.
    """
    c = np.array(coeffs, dtype=np.float64)
    if c.shape != (table.n,):
        raise StructureError("coefficient count does not match the table")
    if np.any(c < -tol):
        raise PreconditionError("mixture has a negative coefficient beyond tolerance")
    c = np.where((c < 0.0) & (c >= -tol), 0.0, c)
    if abs(float(c.sum()) - 1.0) > tol:
        raise PreconditionError("mixture coefficients do not sum to 1 within tolerance")
    return Mixture(table, c)


def point_mass(table: HypergroupTable, i: int) -> Mixture:
    """The mixture concentrated on basis element ``i``."""
    if not 0 <= i < table.n:
        raise IndexError(f"element index {i} out of range [0, {table.n})")
    c = np.zeros(table.n)
    c[i] = 1.0
    return Mixture(table, c)


@dataclass(frozen=True)
class Violation:
    """One axiom failure: which axiom, at which indices, how large."""

    axiom: str
    indices: tuple[int, ...]
    magnitude: float

    def __str__(self):
        where = ", ".join(str(i) for i in self.indices)
        return f"{self.axiom} at ({where}): defect {self.magnitude:.3e}"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[Violation, ...]

    def __str__(self):
        if self.passed:
            return "all hypergroup axioms hold"
        lines = [f"{len(self.violations)} axiom violation(s):"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def validate(table: HypergroupTable, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check every hypergroup axiom, reporting all violations beyond tol.

    Checks, in order: nonnegativity, convexity (rows sum to 1), unit
    laws, associativity, involution consistency (the permutation is an
    involution fixing the unit, and unit mass appears exactly on
    conjugate pairs), and symmetry of the unit coefficients across each
    conjugate pair (equal weights for ``i`` and ``inv(i)``).
    """
    lam = table.lam
    n = table.n
    unit = table.unit
    inv = table.involution
    vios: list[Violation] = []

    for i, j, l in zip(*np.where(lam < -tol)):
        vios.append(Violation("nonnegativity", (int(i), int(j), int(l)), float(-lam[i, j, l])))

    sums = lam.sum(axis=2)
    for i, j in zip(*np.where(np.abs(sums - 1.0) > tol)):
        vios.append(Violation("convexity", (int(i), int(j)), float(abs(sums[i, j] - 1.0))))

    eye = np.eye(n)
    dev = np.abs(lam[unit] - eye)
    for j, l in zip(*np.where(dev > tol)):
        vios.append(Violation("unit", (unit, int(j), int(l)), float(dev[j, l])))
    dev = np.abs(lam[:, unit, :] - eye)
    for i, l in zip(*np.where(dev > tol)):
        if i != unit:
            vios.append(Violation("unit", (int(i), unit, int(l)), float(dev[i, l])))

    left = np.einsum("ijm,mlp->ijlp", lam, lam)
    right = np.einsum("jlm,imp->ijlp", lam, lam)
    dev = np.abs(left - right)
    for i, j, l, p in zip(*np.where(dev > tol)):
        vios.append(
            Violation("associativity", (int(i), int(j), int(l), int(p)), float(dev[i, j, l, p]))
        )

    if inv[unit] != unit:
        vios.append(Violation("involution-permutation", (unit,), 1.0))
    for i in range(n):
        if inv[inv[i]] != i:
            vios.append(Violation("involution-permutation", (i,), 1.0))

    for i in range(n):
        for j in range(n):
            v = float(lam[i, j, unit])
            if j == inv[i] and v <= tol:
                vios.append(Violation("involution", (i, j), tol - v))
            elif j != inv[i] and v > tol:
                vios.append(Violation("involution", (i, j), v))

    for i in range(n):
        if i <= inv[i]:
            d = abs(float(lam[i, inv[i], unit]) - float(lam[inv[i], i, unit]))
            if d > tol:
                vios.append(Violation("weight-symmetry", (i, inv[i]), d))

    return ValidationReport(not vios, tuple(vios))


def multiply(table: HypergroupTable, a: int, b: int) -> Mixture:
    """The product ``k_a * k_b`` as a mixture (row lam[a][b][.])."""
    if not (0 <= a < table.n and 0 <= b < table.n):
        raise IndexError(f"element indices ({a}, {b}) out of range [0, {table.n})")
    return Mixture(table, table.lam[a, b])


def _same_table(t1: HypergroupTable, t2: HypergroupTable) -> bool:
    return t1 is t2 or tables_equal(t1, t2, tol=0.0)


def multiply_mixtures(
    table: HypergroupTable, p: Mixture, q: Mixture, tol: float = DEFAULT_TOL
) -> Mixture:
    """Bilinear extension of the basis product to convex mixtures."""
    if not (_same_table(p.table, table) and _same_table(q.table, table)):
        raise PreconditionError("mixtures are over different tables")
    out = np.einsum("i,j,ijl->l", p.coeffs, q.coeffs, table.lam)
    out = np.where((out < 0.0) & (out >= -tol), 0.0, out)
    return Mixture(table, out)


def weights(table: HypergroupTable, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Element weights ``mu_i = 1 / lam[i, inv(i), unit]``.

    The unit has weight 1; group elements all have weight 1; for
    tables rescaled from fusion rules the weight is the squared
    dimension of the corresponding basis element.
    """
    diag = np.array([table.lam[i, table.involution[i], table.unit] for i in range(table.n)])
    bad = np.where(diag <= tol)[0]
    if bad.size:
        i = int(bad[0])
        raise AxiomError(
            f"unit coefficient of k_{i} * k_{table.involution[i]} vanishes; "
            "weights are undefined",
            detail=(i, table.involution[i], table.unit),
        )
    return 1.0 / diag


def haar(table: HypergroupTable, tol: float = DEFAULT_TOL) -> Mixture:
    """The Haar measure: weights normalized to a convex combination."""
    mu = weights(table, tol)
    return Mixture(table, mu / mu.sum())


def is_commutative(table: HypergroupTable, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``k_i * k_j = k_j * k_i`` for all pairs, within tol."""
    return bool(np.max(np.abs(table.lam - table.lam.transpose(1, 0, 2))) <= tol)


def table_isomorphism(
    t1: HypergroupTable, t2: HypergroupTable, tol: float = DEFAULT_TOL
) -> tuple[int, ...] | None:
    """Search for a basis bijection identifying two tables.

    Returns a permutation ``pi`` with ``lam1[i, j, l] == lam2[pi(i),
    pi(j), pi(l)]`` (within tol), ``pi(unit1) == unit2`` and
    ``pi . inv1 == inv2 . pi``, or None if no such bijection exists.
    Exhaustive over basis permutations, pruned by weight matching, so
    intended for the small tables this library works with.
    """
    n = t1.n
    if n != t2.n:
        return None
    try:
        w1 = weights(t1, tol)
        w2 = weights(t2, tol)
    except AxiomError:
        return None
    others1 = [i for i in range(n) if i != t1.unit]
    others2 = [i for i in range(n) if i != t2.unit]
    # candidate images per element, filtered by weight
    cands = {
        i: [j for j in others2 if abs(w1[i] - w2[j]) <= max(tol, 1e-6)] for i in others1
    }
    if any(not c for c in cands.values()):
        return None
    for images in itertools.permutations(others2):
        pi = [0] * n
        pi[t1.unit] = t2.unit
        ok = True
        for i, j in zip(others1, images):
            if j not in cands[i]:
                ok = False
                break
            pi[i] = j
        if not ok:
            continue
        if any(pi[t1.involution[i]] != t2.involution[pi[i]] for i in range(n)):
            continue
        perm = np.array(pi)
        pulled = t2.lam[np.ix_(perm, perm, perm)]
        if np.max(np.abs(t1.lam - pulled)) <= max(tol, 1e-6):
            return tuple(pi)
    return None
