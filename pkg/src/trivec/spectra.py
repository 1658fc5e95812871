"""One-particle reduced density matrix, occupation spectra and pinning.

Occupation numbers are normalized to particle number (trace three) and
reported in descending order: orbital one is the most occupied.  With that
ordering the six-dimensional polytope boundary is lam4 <= lam5 + lam6 and
the seven-dimensional one is the four sums of quadruples bounded by two.
Saturation within 1e-9 counts as pinned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exterior import AltTensor, GroupElement, slocc_apply, tuple_of
from .scalars import (conjugate, hermitian_eigensystem,
                      hermitian_eigenvalues, is_exact, to_complex)

SATURATION_EPS = 1e-9
SUPPORT_EPS = 1e-10

# index quadruples of the seven-mode constraints: each sum is bounded by two
SEVEN_CONSTRAINTS = ((1, 2, 4, 7), (1, 2, 5, 6), (2, 3, 4, 5), (1, 3, 4, 6))


def one_matrix(p: AltTensor):
    """One-particle reduced density matrix, scaled so the trace is three.

    rho_ij = sum over sorted pairs (a < b) of P_iab conj(P_jab), divided by
    the squared norm; Hermitian by construction.  Exact states give exact
    entries.
    """
    if p.degree != 3:
        raise ValueError("one_matrix expects a three-fermion state")
    if p.is_zero():
        raise ValueError("one_matrix of the zero state is undefined")
    n = p.dim
    norm2 = p.norm_sq()
    rho = [[0] * n for _ in range(n)]
    by_pair = {}
    for m, v in p.masks().items():
        for i in tuple_of(m):
            rest = m ^ (1 << (i - 1))
            by_pair.setdefault(rest, []).append((i, p.component((i,) + tuple_of(rest))))
    for rest, entries in by_pair.items():
        for i, vi in entries:
            for j, vj in entries:
                rho[i - 1][j - 1] = rho[i - 1][j - 1] + vi * conjugate(vj)
    # raw trace is 3 * norm_sq (each triple feeds three diagonal slots)
    if is_exact(norm2) and norm2 == 1:
        return rho
    return [[x / norm2 for x in row] for row in rho]


@dataclass
class OccupationSpectrum:
    """Natural occupation numbers with an explicit ordering tag."""

    dimension: int
    eigenvalues: list
    ordering: str = "descending"
    trace: float = 3.0


def occupation_spectrum(p: AltTensor, ordering: str = "descending") -> OccupationSpectrum:
    """Eigenvalues of the one-matrix; exact diagonal matrices skip the solver."""
    rho = one_matrix(p)
    n = p.dim
    exact_diag = all(is_exact(rho[i][j]) for i in range(n) for j in range(n)) and \
        all(not rho[i][j] for i in range(n) for j in range(n) if i != j)
    if exact_diag:
        evs = [rho[i][i] for i in range(n)]
        evs = [x if isinstance(x, (int, Fraction)) else x.re for x in evs]
    else:
        evs = hermitian_eigenvalues([[to_complex(x) for x in row] for row in rho])
    if ordering == "descending":
        evs = sorted(evs, reverse=True)
    elif ordering == "ascending":
        evs = sorted(evs)
    else:
        raise ValueError("ordering must be 'descending' or 'ascending'")
    return OccupationSpectrum(n, evs, ordering)


def klyachko_check(spec: OccupationSpectrum, eps: float = SATURATION_EPS) -> list:
    """Constraint report: list of dicts with name, slack and saturation flag.

    Slacks are nonnegative for occupation numbers of genuine states; a slack
    within ``eps`` of zero counts as saturated (pinned).
    """
    lam = spec.eigenvalues
    if spec.ordering != "descending":
        lam = sorted(lam, reverse=True)
    out = []
    if spec.dimension == 6:
        slack = lam[4] + lam[5] - lam[3]
        out.append({"name": "borland_dennis", "slack": float(slack),
                    "saturated": abs(slack) <= eps})
        return out
    if spec.dimension == 7:
        for quad in SEVEN_CONSTRAINTS:
            s = 2.0 - float(sum(lam[i - 1] for i in quad))
            out.append({"name": "sum_" + "".join(map(str, quad)),
                        "slack": s, "saturated": abs(s) <= eps})
        return out
    raise ValueError("polytope constraints are tabulated for dimensions 6 and 7")


# canonical pinned support patterns, in descending natural-orbital labels
_PATTERN_BD = frozenset({(1, 2, 3), (1, 4, 5), (2, 4, 6)})
_PATTERN_7_TOTAL = frozenset({(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6)})
_PATTERN_7_FIRST = frozenset(
    t for t in itertools.combinations(range(1, 8), 3)
    if len(set(t) & {1, 2, 4, 7}) == 2 and len(set(t) & {3, 5, 6}) == 1)

# classes in which the given saturation can never occur
_FORBIDDEN_6 = {"GHZ", "GHZ+", "GHZ-"}
_FORBIDDEN_7_FIRST = {"X"}
_FORBIDDEN_7_TRIPLE = {"V", "VIII", "IX", "X"}


def natural_orbital_transform(p: AltTensor):
    """(rotated state, spectrum): express the state on its natural orbitals.

    The rotation is unitary, hence inside the group, so the class label is
    unchanged.  Orbitals are ordered by descending occupation.
    """
    rho = [[to_complex(x) for x in row] for row in one_matrix(p)]
    vals, vecs = hermitian_eigensystem(rho)
    order = sorted(range(p.dim), key=lambda i: -vals[i])
    u = [[vecs[r][order[c]] for c in range(p.dim)] for r in range(p.dim)]
    # the one-matrix transforms as rho -> A rho A-dagger with A the
    # inverse-transpose of the group element; A = U-dagger diagonalizes it,
    # so the element itself is the plain transpose of U
    g = GroupElement([[u[j][i] for j in range(p.dim)] for i in range(p.dim)])
    rotated = slocc_apply(g, p.to_float())
    spectrum = OccupationSpectrum(p.dim, sorted(vals, reverse=True))
    return rotated, spectrum


def _support_pattern(rotated: AltTensor):
    cut = SUPPORT_EPS * max(rotated.max_abs(), 1e-300)
    return {t for t, v in rotated.terms() if abs(to_complex(v)) > cut}


def pinning_analysis(p: AltTensor, eps: float = SATURATION_EPS) -> dict:
    """Saturations, natural-orbital support pattern and class compatibility.

    Rotates the state to its natural-orbital basis, reports which canonical
    pinned support pattern the rotation matches, and checks the saturation
    flags against the classes where pinning is impossible.  An inconsistency
    marks the report rather than guessing.
    """
    from .classify import classify6, classify7
    if p.dim not in (6, 7):
        raise ValueError("pinning analysis covers dimensions 6 and 7")
    rotated, spectrum = natural_orbital_transform(p)
    constraints = klyachko_check(spectrum, eps)
    support = _support_pattern(rotated)
    label = (classify6(p) if p.dim == 6 else classify7(p)).label

    pattern = None
    if p.dim == 6 and support <= _PATTERN_BD:
        pattern = "borland_dennis_pinned"
    elif p.dim == 7:
        if support <= _PATTERN_7_TOTAL:
            pattern = "totally_pinned"
        elif support <= _PATTERN_7_FIRST:
            pattern = "first_constraint_pinned"

    violations = []
    if p.dim == 6:
        if constraints[0]["saturated"] and label in _FORBIDDEN_6:
            violations.append("borland_dennis saturated in a class where pinning is impossible")
    else:
        sat = [c["saturated"] for c in constraints]
        if sat[0] and label in _FORBIDDEN_7_FIRST:
            violations.append("first constraint saturated in class X")
        if sat[0] and sat[1] and sat[3] and label in _FORBIDDEN_7_TRIPLE:
            violations.append("triple saturation in a class where it is impossible")

    return {
        "dimension": p.dim,
        "occupations": [float(x) for x in spectrum.eigenvalues],
        "constraints": constraints,
        "support_pattern": pattern,
        "support_triples": sorted(support),
        "class_label": label,
        "consistent": not violations,
        "violations": violations,
    }
