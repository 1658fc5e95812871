"""SLOCC class and family assignment for three-fermion states.

Six dimensions uses the invariant chain (quartic, cubic companion, Pluecker
residuals) cross-validated against the rank-triple table; seven and eight
dimensions are pure table lookups on covariant rank signatures; nine
dimensions resolves the family from the vanishing pattern of the four
discriminant combinations.  A state whose signature matches no table row
comes back as ``Unclassified`` with a diagnostic payload, never as a nearest
match.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .covariants import (bilinear_form_matrix, eight_covariants,
                         first_order_map, k_matrix_6, kappa_map, t_map)
from .exterior import AltTensor, GroupElement, slocc_apply, tuple_of
from .invariants import (DELTA_DEGREES, J_DEGREES, delta_132, delta_24,
                         delta_48, delta_48_prime, dual_trivector,
                         invariant_is_zero, nine_js_scaled, quartic_d,
                         _integer_rescale)
from .scalars import (DEFAULT_TOLERANCE, TolerancePolicy, imag_part, rank,
                      real_part, to_complex)


@dataclass
class ClassLabel:
    """Classification outcome: label plus the signature that justified it."""

    dimension: int
    label: str
    signature: tuple
    detail: dict = field(default_factory=dict)

    @property
    def classified(self) -> bool:
        return self.label != "Unclassified"


TABLE1 = {
    (0, 0, 0): "Null",
    (3, 0, 0): "Sep",
    (5, 1, 4): "Bisep",
    (6, 3, 6): "W",
    (6, 6, 6): "GHZ",
}

TABLE2 = {
    (0, 0, 0): "I",
    (0, 3, 0): "II",
    (0, 5, 1): "III",
    (0, 6, 3): "IV",
    (0, 6, 6): "V",
    (1, 7, 1): "VI",
    (1, 7, 4): "VII",
    (2, 7, 6): "VIII",
    (4, 7, 7): "IX",
    (7, 7, 7): "X",
}

TABLE3 = {
    (0, 3, 6, 0): "XI",
    (0, 4, 7, 0): "XII",
    (0, 4, 8, 0): "XIII",
    (0, 5, 8, 1): "XIV",
    (0, 6, 8, 2): "XV",
    (1, 8, 8, 1): "XVI",
    (1, 8, 8, 2): "XVII",
    (1, 8, 8, 4): "XVIII",
    (2, 8, 8, 2): "XIX",
    (2, 8, 8, 5): "XX",
    (3, 8, 8, 7): "XXI",
    (5, 8, 8, 8): "XXII",
    (8, 8, 8, 8): "XXIII",
}

# the five six-dimensional classes coincide with the first five rows of the
# seven-dimensional table
_SIX_TO_ROMAN = {"Null": "I", "Sep": "II", "Bisep": "III", "W": "IV",
                 "GHZ": "V", "GHZ+": "V", "GHZ-": "V"}

# family rows: (Delta132, Delta48, Delta48', Delta24) as is-zero flags
TABLE4_ZERO_PATTERNS = {
    (False, False, False, False): "family1",
    (True, False, False, False): "family2",
    (True, True, False, False): "family3",
    (True, False, True, False): "family4",
    (True, True, True, False): "family5",
    (True, True, True, True): "family6",
}


def _check(p, dim):
    if p.dim != dim or p.degree != 3:
        raise ValueError(f"expected a three-form in {dim} dimensions")


# ---------------------------------------------------------------------------
# Pluecker relations


def plucker_residuals(p: AltTensor):
    """All residuals Pi_{A,B} over (k-1)- and (k+1)-index subsets.

    A three-form is a single Slater determinant exactly when every residual
    vanishes.
    """
    k = p.degree
    out = []
    rng = range(1, p.dim + 1)
    for a_set in itertools.combinations(rng, k - 1):
        for b_set in itertools.combinations(rng, k + 1):
            total = 0
            for n, j in enumerate(b_set):
                rest = b_set[:n] + b_set[n + 1:]
                x = p.component(a_set + (j,))
                if x:
                    y = p.component(rest)
                    if y:
                        term = x * y
                        total = total + (term if n % 2 == 0 else -term)
            out.append(((a_set, b_set), total))
    return out


def leclerc_residuals(p: AltTensor):
    """Residuals of the 3x3 block form of the separability relations.

    Valid for six dimensions: eta X = adj(Y), xi Y = adj(X) and
    eta xi Id = X Y in the (eta, xi, X, Y) dictionary.  Agrees with the
    general residual test; both are checked in the suite.
    """
    _check(p, 6)
    from .invariants import _adjugate3, _block_dictionary
    eta, xi, x, y = _block_dictionary(p)
    adjx = _adjugate3(x)
    adjy = _adjugate3(y)
    res = []
    for i in range(3):
        for j in range(3):
            res.append(eta * x[i][j] - adjy[i][j])
            res.append(xi * y[i][j] - adjx[i][j])
            xy = sum(x[i][k] * y[k][j] for k in range(3))
            res.append(xy - (eta * xi if i == j else 0 * eta))
    return res


def is_separable(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    if p.is_zero():
        return True
    scale = p.max_abs()
    return all(invariant_is_zero(v, scale, 2) for _, v in plucker_residuals(p))


# ---------------------------------------------------------------------------
# six dimensions


def rank_triple_6(p: AltTensor, tol=DEFAULT_TOLERANCE):
    return (first_order_map(p, 2).rank(tol),
            kappa_map(p, (1,)).rank(tol),
            kappa_map(p, (2,)).rank(tol))


def classify6(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassLabel:
    """Invariant decision chain for six dimensions, table cross-validated.

    Chain: nonzero quartic invariant is the generic class; else a nonzero
    cubic companion is W; else nonzero Pluecker residuals mean biseparable;
    else separable or null.  The rank triple must independently agree.
    """
    _check(p, 6)
    scale = p.max_abs()
    d = quartic_d(p)
    if not invariant_is_zero(d, scale, 4):
        chain = "GHZ"
    elif _float_nonzero_tensor(dual_trivector(p), scale, 3):
        chain = "W"
    elif not is_separable(p, tol):
        chain = "Bisep"
    elif not _float_zero_tensor(p, scale):
        chain = "Sep"
    else:
        chain = "Null"
    triple = rank_triple_6(p, tol)
    table = TABLE1.get(triple)
    detail = {"quartic_d": d, "rank_triple": triple}
    if table != chain:
        detail["chain_label"] = chain
        detail["table_label"] = table
        return ClassLabel(6, "Unclassified", triple, detail)
    return ClassLabel(6, chain, triple, detail)


def _float_zero_tensor(p, scale, eps=1e-12):
    if p.mode != "float":
        return p.is_zero()
    return all(abs(v) <= eps * max(scale, 1e-300) for v in p.masks().values())


def _float_nonzero_tensor(p, scale, degree):
    if p.mode != "float":
        return not p.is_zero()
    cut = 1e-8 * max(scale, 1e-300) ** degree
    return any(abs(v) > cut for v in p.masks().values())


def classify6_real(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassLabel:
    """Real classification: the generic class splits by the sign of D.

    Requires every amplitude real.  For negative D in float mode the
    normalized 6x6 covariant squares to minus the identity (it defines a
    complex structure); that identity is verified as a sanity check.
    """
    _check(p, 6)
    for v in p.masks().values():
        if imag_part(v):
            raise ValueError("classify6_real requires real amplitudes")
    out = classify6(p, tol)
    if out.label != "GHZ":
        return out
    d = out.detail["quartic_d"]
    dr = real_part(d)
    label = "GHZ+" if dr > 0 else "GHZ-"
    if p.mode == "float" and dr < 0:
        k = k_matrix_6(p).matrix
        s = (-dr) ** 0.5
        j = [[to_complex(x) / s for x in row] for row in k]
        for i in range(6):
            for jj in range(6):
                want = -1.0 if i == jj else 0.0
                got = sum(j[i][t] * j[t][jj] for t in range(6))
                if abs(got - want) > 1e-8:
                    out.detail["complex_structure_defect"] = abs(got - want)
                    return ClassLabel(6, "Unclassified", out.signature, out.detail)
    return ClassLabel(6, label, out.signature, out.detail)


# ---------------------------------------------------------------------------
# seven dimensions


def rank_triple_7(p: AltTensor, tol=DEFAULT_TOLERANCE):
    n_form = bilinear_form_matrix(kappa_map(p, (1, 1)))
    return (rank(n_form, tol),
            first_order_map(p, 2).rank(tol),
            kappa_map(p, (1,)).rank(tol))


def classify7(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassLabel:
    """Rank-triple lookup; the ten signatures are pairwise distinct."""
    _check(p, 7)
    triple = rank_triple_7(p, tol)
    label = TABLE2.get(triple)
    if label is None:
        return ClassLabel(7, "Unclassified", triple, {"rank_triple": triple})
    return ClassLabel(7, label, triple)


# ---------------------------------------------------------------------------
# eight dimensions


def support_reduction(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE):
    """(group element, support rank): rotate the state onto leading indices.

    The kernel of v -> i_v P is complemented by pivot coordinates of the
    flattened amplitude matrix; the inverse of that basis moves the state
    into the span of the first ``rank`` indices.
    """
    n = p.dim
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    rows = []
    for (a, b) in pairs:
        rows.append([p.component((i, a, b)) for i in range(1, n + 1)])
    exact = p.mode != "float"
    if exact:
        m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    else:
        m = [[to_complex(x) for x in row] for row in rows]
    nr, nc = len(m), n
    piv_cols = []
    r = 0
    for c in range(nc):
        piv = None
        if exact:
            for i in range(r, nr):
                if m[i][c]:
                    piv = i
                    break
        else:
            cand = max(range(r, nr), key=lambda i: abs(m[i][c]), default=None)
            if cand is not None and abs(m[cand][c]) > tol.absolute_floor:
                piv = cand
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(nc) if c not in piv_cols]
    kernel = []
    for fc in free:
        vec = [0] * nc
        vec[fc] = 1
        for i, pc in enumerate(piv_cols):
            vec[pc] = -m[i][fc]
        kernel.append(vec)
    cols = []
    for pc in piv_cols:
        e = [0] * nc
        e[pc] = 1
        cols.append(e)
    cols.extend(kernel)
    # columns of h are (pivot axes | kernel basis); the state moved by h^-1
    # is supported on the leading pivot block, and h^-1 is the inverse
    # transpose of h^T
    ht = [list(col) for col in cols]
    g_inv = GroupElement(GroupElement(ht).inverse_transpose)
    return g_inv, len(piv_cols)


def classify8(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassLabel:
    """Quadruple lookup, delegating to lower tables on reduced support.

    States supported on at most seven independent directions are rotated
    onto the leading indices and classified by the seven- or six-dimensional
    chain; the class is unchanged because the rotation is a group element.
    """
    _check(p, 8)
    if p.mode == "exact":
        # labels are scale-free; integer coefficients keep the rank
        # computations in integer arithmetic
        _, coeffs = _integer_rescale(p)
        p = AltTensor(8, 3, coeffs)
    g, support = support_reduction(p, tol)
    if support <= 7:
        rotated = slocc_apply(g, p)
        sub_dim = 7 if support == 7 else 6
        keep = {}
        for m, v in rotated.masks().items():
            if p.mode == "float" and abs(v) <= 1e-10 * max(rotated.max_abs(), 1e-300):
                continue
            if m >= 1 << sub_dim:
                return ClassLabel(8, "Unclassified", (support,),
                                  {"support_reduction_defect": tuple_of(m)})
            keep[m] = v
        sub = AltTensor(sub_dim, 3, keep)
        out = classify6(sub, tol) if sub_dim == 6 else classify7(sub, tol)
        detail = dict(out.detail)
        detail["delegated_to"] = sub_dim
        detail["support_rank"] = support
        if sub_dim == 6 and out.label in _SIX_TO_ROMAN:
            detail["roman_equivalent"] = _SIX_TO_ROMAN[out.label]
        return ClassLabel(8, out.label, out.signature, detail)
    cov = eight_covariants(p)
    quad = (rank(cov.g_matrix, tol), cov.f_map.rank(tol),
            cov.e_map.rank(tol), rank(cov.fe_matrix, tol))
    label = TABLE3.get(quad)
    if label is None:
        return ClassLabel(8, "Unclassified", quad, {"rank_quadruple": quad})
    return ClassLabel(8, label, quad)


# ---------------------------------------------------------------------------
# nine dimensions


def classify9_family(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE,
                     compute_rank_t: bool = True) -> ClassLabel:
    """Family assignment from the vanishing pattern of the discriminants.

    All four trace invariants zero means the nilpotent family; otherwise the
    zero pattern of (Delta132, Delta48, Delta48', Delta24) is matched against
    the six semisimple rows.  The rank of the 84 x 84 endomorphism and the
    invariant values ride along in the report.
    """
    _check(p, 9)
    scale = p.max_abs()
    # work with the integer-rescaled invariants: vanishing patterns are
    # scale-free and the discriminant polynomials stay in integer arithmetic
    js_raw, lam = nine_js_scaled(p)
    js = js_raw if lam == 1 else tuple(
        j / lam ** deg for j, deg in zip(js_raw, J_DEGREES))
    detail = {"J": js}
    exact = p.mode != "float"
    raw_scale = scale * lam
    j_zero = tuple(invariant_is_zero(j, raw_scale, deg)
                   for j, deg in zip(js_raw, J_DEGREES))
    if compute_rank_t:
        detail["rank_T"] = t_map(p).rank(tol)
    if all(j_zero):
        return ClassLabel(9, "family7", (True,) * 4, detail)
    deltas_raw = (delta_132(js_raw), delta_48(js_raw),
                  delta_48_prime(js_raw), delta_24(js_raw))
    detail["deltas"] = deltas_raw if lam == 1 else tuple(
        dv / lam ** deg for dv, deg in zip(deltas_raw, DELTA_DEGREES))
    pattern = tuple(invariant_is_zero(dv, raw_scale, deg)
                    for dv, deg in zip(deltas_raw, DELTA_DEGREES))
    if not exact:
        detail["delta132_confidence"] = "low"
    label = TABLE4_ZERO_PATTERNS.get(pattern)
    if label is None:
        return ClassLabel(9, "Unclassified", pattern, detail)
    return ClassLabel(9, label, pattern, detail)


def classify(p: AltTensor, tol: TolerancePolicy = DEFAULT_TOLERANCE,
             real_mode: bool = False, **kwargs) -> ClassLabel:
    """Dispatch on dimension; ``real_mode`` selects the real six-dim split."""
    if p.dim == 6:
        return classify6_real(p, tol) if real_mode else classify6(p, tol)
    if p.dim == 7:
        return classify7(p, tol)
    if p.dim == 8:
        return classify8(p, tol)
    if p.dim == 9:
        return classify9_family(p, tol, **kwargs)
    raise ValueError("classification covers dimensions 6..9")
