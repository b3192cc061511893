"""Hypergroups built from groups, fusion rings, and two-element data.

Three families of constructions:

* From a finite group given by its Cayley table: the group itself
  (rows are point masses), its conjugacy classes, and its double cosets
  with respect to a subgroup.  The class and coset tables expand
  products of normalized indicator sums exactly in the integer group
  algebra (``fractions.Fraction``) and convert to floating point only
  at the very end.

* From a fusion ring (nonnegative-integer structure constants with a
  conjugation): rescale each basis element by its Perron-Frobenius
  dimension, ``k_i = f_i / dim_i``; the resulting table has weights
  ``dim_i ** 2``.

* The two-element family ``k_1^2 = lam * k_0 + (1 - lam) * k_1`` for
  ``0 < lam <= 1``, together with the decision procedure for whether a
  given ``lam`` arises from a two-element fusion ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import warnings

import numpy as np

from .core import DEFAULT_TOL, HypergroupTable, validate
from .errors import AxiomError, NumericalError, PreconditionError, StructureError


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group as a multiplication table of element indices."""

    mul: np.ndarray
    identity: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        mul = np.array(self.mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise StructureError("Cayley table must be square")
        n = mul.shape[0]
        if n < 1:
            raise StructureError("a group needs at least one element")
        if mul.min() < 0 or mul.max() >= n:
            raise StructureError("Cayley table entries out of range")
        if not 0 <= int(self.identity) < n:
            raise StructureError("identity index out of range")
        labels = self.labels
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise StructureError("label count does not match group order")
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "identity", int(self.identity))
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else f"g{i}"


def validate_cayley(group: CayleyGroup) -> None:
    """Raise StructureError unless ``mul`` is a genuine group table.

    Checks the Latin-square property, both identity laws,
    associativity over all triples, and existence of inverses.
    """
    mul = group.mul
    n = group.order
    e = group.identity
    rng = np.arange(n)
    for i in range(n):
        if sorted(mul[i]) != list(rng) or sorted(mul[:, i]) != list(rng):
            raise StructureError(f"Cayley table is not a Latin square at row/column {i}")
    if not (np.array_equal(mul[e], rng) and np.array_equal(mul[:, e], rng)):
        raise StructureError("identity element does not act trivially")
    left = mul[mul]            # left[i, j, k] = (i j) k
    right = mul[:, mul]        # right[i, j, k] = i (j k)
    if not np.array_equal(left, right):
        i, j, k = (int(x[0]) for x in np.where(left != right))
        raise StructureError(f"Cayley table is not associative at ({i}, {j}, {k})")
    # Latin square + associativity + identity already give inverses,
    # but check explicitly so the error message is direct.
    for i in range(n):
        if e not in mul[i]:
            raise StructureError(f"element {i} has no inverse")


def cayley_group(mul, identity, labels=None, check: bool = True) -> CayleyGroup:
    group = CayleyGroup(mul, identity, labels)
    if check:
        validate_cayley(group)
    return group


def inverses(group: CayleyGroup) -> tuple[int, ...]:
    e = group.identity
    return tuple(int(np.where(group.mul[i] == e)[0][0]) for i in range(group.order))


def conjugacy_classes(group: CayleyGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes by orbit enumeration, ordered by first representative."""
    mul = group.mul
    inv = inverses(group)
    seen = [False] * group.order
    classes = []
    for i in range(group.order):
        if seen[i]:
            continue
        orbit = {int(mul[mul[g, i], inv[g]]) for g in range(group.order)}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    return classes


def is_subgroup(group: CayleyGroup, elements) -> bool:
    elems = frozenset(int(x) for x in elements)
    if not elems or any(not 0 <= x < group.order for x in elems):
        return False
    if group.identity not in elems:
        return False
    inv = inverses(group)
    for a in elems:
        if inv[a] not in elems:
            return False
        for b in elems:
            if int(group.mul[a, b]) not in elems:
                return False
    return True


def double_cosets(group: CayleyGroup, left, right) -> list[tuple[int, ...]]:
    """Partition of the group into double cosets ``left * g * right``."""
    mul = group.mul
    lefts = sorted(int(x) for x in left)
    rights = sorted(int(x) for x in right)
    seen = [False] * group.order
    cosets = []
    for g in range(group.order):
        if seen[g]:
            continue
        coset = {int(mul[mul[h1, g], h2]) for h1 in lefts for h2 in rights}
        for x in coset:
            seen[x] = True
        cosets.append(tuple(sorted(coset)))
    return cosets


def indicator_product_coefficients(
    group: CayleyGroup, parts: list[tuple[int, ...]]
) -> list[list[list[Fraction]]]:
    """Exact expansion of products of normalized indicator sums.

    ``parts`` must partition the group.  For each pair (A, B) the
    uniform probability measures on A and B are convolved in the group
    algebra and the resulting measure is re-expressed as a convex
    combination over the parts.  All arithmetic is exact.
    """
    mul = group.mul
    n_parts = len(parts)
    part_of = {}
    for p, part in enumerate(parts):
        for x in part:
            part_of[x] = p
    if len(part_of) != group.order:
        raise StructureError("parts do not partition the group")
    out = [[[Fraction(0)] * n_parts for _ in range(n_parts)] for _ in range(n_parts)]
    for a, A in enumerate(parts):
        for b, B in enumerate(parts):
            counts = [0] * n_parts
            for g in A:
                row = mul[g]
                for h in B:
                    counts[part_of[int(row[h])]] += 1
            total = len(A) * len(B)
            row_out = out[a][b]
            for c in range(n_parts):
                row_out[c] = Fraction(counts[c], total)
    return out


def _partition_hypergroup(group, parts, labels) -> HypergroupTable:
    inv = inverses(group)
    coeffs = indicator_product_coefficients(group, parts)
    part_of = {x: p for p, part in enumerate(parts) for x in part}
    unit = part_of[group.identity]
    involution = tuple(part_of[inv[part[0]]] for part in parts)
    lam = np.array(
        [[[float(c) for c in row] for row in mat] for mat in coeffs], dtype=np.float64
    )
    return HypergroupTable(labels, unit, involution, lam)


def group_hypergroup(group: CayleyGroup) -> HypergroupTable:
    """The group itself as a hypergroup: every product is a point mass."""
    validate_cayley(group)
    n = group.order
    lam = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            lam[i, j, group.mul[i, j]] = 1.0
    labels = tuple(group.label(i) for i in range(n))
    return HypergroupTable(labels, group.identity, inverses(group), lam)


def conjugacy_class_hypergroup(group: CayleyGroup) -> HypergroupTable:
    """Hypergroup of normalized conjugacy-class sums ``(1/|C|) sum_{g in C} g``."""
    validate_cayley(group)
    classes = conjugacy_classes(group)
    labels = tuple(f"C{group.label(c[0])}" for c in classes)
    return _partition_hypergroup(group, classes, labels)


def double_coset_hypergroup(group: CayleyGroup, subgroup) -> HypergroupTable:
    """Hypergroup of normalized double-coset sums with respect to a subgroup."""
    validate_cayley(group)
    sub = sorted(int(x) for x in subgroup)
    if not is_subgroup(group, sub):
        raise StructureError("the given subset is not a subgroup")
    cosets = double_cosets(group, sub, sub)
    labels = tuple(f"D{group.label(c[0])}" for c in cosets)
    return _partition_hypergroup(group, cosets, labels)


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Integer structure constants ``N[i, j, l]`` with a conjugation."""

    labels: tuple[str, ...]
    unit: int
    conj: tuple[int, ...]
    N: np.ndarray

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        N = np.array(self.N, dtype=np.int64)
        if N.shape != (n, n, n):
            raise StructureError(f"fusion tensor has shape {N.shape}, expected {(n, n, n)}")
        if N.min() < 0:
            raise StructureError("fusion multiplicities must be nonnegative")
        if not 0 <= int(self.unit) < n:
            raise StructureError("unit index out of range")
        conj = tuple(int(x) for x in self.conj)
        if len(conj) != n or any(not 0 <= x < n for x in conj):
            raise StructureError("conjugation must be a permutation of the basis")
        N.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unit", int(self.unit))
        object.__setattr__(self, "conj", conj)
        object.__setattr__(self, "N", N)

    @property
    def n(self) -> int:
        return len(self.labels)


def validate_fusion_ring(ring: FusionRing) -> None:
    """Raise AxiomError on hard violations; warn on Frobenius asymmetry.

    Hard requirements: exact associativity, both unit laws, and the
    conjugation law ``N[i, j, unit] == (j == conj(i))``.  Frobenius
    reciprocity ``N[i, j, l] == N[conj(i), l, j]`` is reported as a
    warning only, since rescalings of group-like data may lack it.
    """
    N = ring.N
    n = ring.n
    unit = ring.unit
    eye = np.eye(n, dtype=np.int64)
    if not (np.array_equal(N[unit], eye) and np.array_equal(N[:, unit, :], eye)):
        raise AxiomError("fusion ring violates the unit law")
    conj_matrix = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        conj_matrix[i, ring.conj[i]] = 1
    if not np.array_equal(N[:, :, unit], conj_matrix):
        raise AxiomError(
            "fusion ring violates the conjugation law N[i, j, unit] = delta(j, conj(i))"
        )
    frob = N.transpose(0, 2, 1)[list(ring.conj)]  # frob[i, j, l] = N[conj(i), l, j]
    if not np.array_equal(N, frob):
        warnings.warn("fusion ring lacks Frobenius symmetry N[i,j,l] = N[conj(i),l,j]")
    left = np.einsum("ijm,mlp->ijlp", N, N)
    right = np.einsum("jlm,imp->ijlp", N, N)
    if not np.array_equal(left, right):
        i, j, l, p = (int(x[0]) for x in np.where(left != right))
        raise AxiomError(f"fusion ring is not associative at ({i}, {j}, {l}, {p})")


def fusion_ring(labels, unit, N, conj=None, check: bool = True) -> FusionRing:
    """Build a fusion ring, inferring the conjugation from N if omitted."""
    N = np.array(N, dtype=np.int64)
    n = len(labels)
    if conj is None:
        unit_slice = N[:, :, int(unit)] if N.shape == (n, n, n) else None
        if unit_slice is None:
            raise StructureError(f"fusion tensor has shape {N.shape}, expected {(n, n, n)}")
        conj = []
        for i in range(n):
            js = np.where(unit_slice[i] > 0)[0]
            if len(js) != 1 or unit_slice[i, js[0]] != 1:
                raise StructureError(
                    f"cannot infer conjugation: row {i} has no unique unit partner"
                )
            conj.append(int(js[0]))
    ring = FusionRing(tuple(labels), unit, tuple(conj), N)
    if check:
        validate_fusion_ring(ring)
    return ring


@dataclass(frozen=True, eq=False)
class DimensionVector:
    """Perron-Frobenius dimensions of the basis of a fusion ring."""

    dims: np.ndarray

    def __post_init__(self):
        dims = np.array(self.dims, dtype=np.float64)
        dims.setflags(write=False)
        object.__setattr__(self, "dims", dims)


def _is_irreducible(adjacency: np.ndarray) -> bool:
    # strong connectivity via boolean closure of (I + A)^(n-1)
    n = adjacency.shape[0]
    reach = (adjacency > 0) | np.eye(n, dtype=bool)
    power = reach
    for _ in range(n - 1):
        power = power @ reach
    return bool(power.all())


def pf_dimensions(
    ring: FusionRing,
    max_iterations: int = 100_000,
    residual: float = 1e-12,
) -> DimensionVector:
    """Spectral radius of each left-multiplication matrix, by power iteration.

    The matrix for basis element i is ``(M_i)[l, m] = N[i, m, l]``.
    Iteration runs on ``M_i + I`` (the shift makes the leading
    eigenvalue strictly dominant for a nonnegative matrix) from the
    all-ones start vector, and stops once the eigen-equation residual
    of the Rayleigh estimate drops below ``residual``.
    """
    total = ring.N.sum(axis=0).T
    if not _is_irreducible(total):
        raise PreconditionError("fusion graph is reducible; dimensions are not determined")
    n = ring.n
    dims = np.empty(n)
    for i in range(n):
        M = ring.N[i].T.astype(np.float64)
        B = M + np.eye(n)
        v = np.ones(n) / np.sqrt(n)
        rho = 0.0
        for _ in range(max_iterations):
            w = B @ v
            v = w / np.linalg.norm(w)
            Mv = M @ v
            rho = float(v @ Mv) / float(v @ v)
            if np.max(np.abs(Mv - rho * v)) <= residual:
                break
        else:
            raise NumericalError(
                f"power iteration did not converge for basis element {i} "
                f"after {max_iterations} iterations"
            )
        dims[i] = rho
    # sanity: dims must reproduce the fusion rules as an eigenvector equation
    defect = np.max(np.abs(np.outer(dims, dims) - np.einsum("ijl,l->ij", ring.N, dims)))
    if defect > 1e-7:
        raise NumericalError(f"dimension vector inconsistent with fusion rules ({defect:.3e})")
    return DimensionVector(dims)


def from_fusion_ring(ring: FusionRing, tol: float = DEFAULT_TOL) -> HypergroupTable:
    """Rescale ``k_i = f_i / dim_i``; weights of the result are ``dim_i**2``."""
    dims = pf_dimensions(ring).dims
    lam = ring.N * dims[None, None, :] / (dims[:, None, None] * dims[None, :, None])
    table = HypergroupTable(ring.labels, ring.unit, ring.conj, lam)
    report = validate(table, tol=max(tol, 1e-9))
    if not report.passed:
        raise AxiomError("rescaled fusion ring fails hypergroup axioms", report=report)
    return table


def two_element(lam: float, labels=("k0", "k1")) -> HypergroupTable:
    """The two-element hypergroup ``k1^2 = lam*k0 + (1-lam)*k1``."""
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise PreconditionError(f"two-element parameter must lie in (0, 1], got {lam}")
    tensor = np.zeros((2, 2, 2))
    tensor[0, 0, 0] = 1.0
    tensor[0, 1, 1] = 1.0
    tensor[1, 0, 1] = 1.0
    tensor[1, 1] = (lam, 1.0 - lam)
    return HypergroupTable(tuple(labels), 0, (0, 1), tensor)


def two_element_parameter(n_self: int) -> float:
    """The parameter realized by the fusion ring ``f1^2 = f0 + n_self*f1``.

    Equals ``1/dim**2`` with ``dim = (n + sqrt(n**2 + 4)) / 2``, which
    is the same number as ``1 + r/2 - r*sqrt(1/4 + 1/r)`` for
    ``r = n**2``.
    """
    if n_self < 0:
        raise PreconditionError("self-coupling must be nonnegative")
    dim = (n_self + np.sqrt(n_self * n_self + 4.0)) / 2.0
    return float(1.0 / (dim * dim))


def fusion_realizable_two_element(
    lam: float, search_bound: int = 64, tol: float = DEFAULT_TOL
) -> tuple[int, int] | None:
    """Decide whether ``two_element(lam)`` is the rescaling of a fusion ring.

    A two-element fusion ring has ``f1^2 = n0*f0 + n1*f1`` with the
    conjugation law forcing ``n0 = 1`` (the unit coefficient of
    ``f1 * conj(f1)`` is exactly 1), so candidates are scanned as
    ``(1, n1)`` for ``n1 = 0 .. search_bound`` and the first match of
    ``lam`` within tol is returned.  ``(1, 0)`` is the group Z2.
    Dropping the conjugation law would admit more parameters (for
    example double-coset rescalings with a unit multiplicity above 1),
    which this predicate deliberately rejects.
    """
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise PreconditionError(f"two-element parameter must lie in (0, 1], got {lam}")
    if search_bound < 1:
        raise PreconditionError("search bound must be at least 1")
    for n1 in range(0, search_bound + 1):
        if abs(two_element_parameter(n1) - lam) <= tol:
            return (1, n1)
    return None
