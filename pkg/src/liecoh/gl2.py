"""Rank-one specializations: the two-by-two general and special linear
landmark computations.

The algebra has generators x_0..x_{r-1} (exterior, or polynomial of degree 1
when p = 2) and y_0..y_{r-1} (polynomial of degree 2, absent when p = 2),
with x_k and y_k both carrying weight p^k on a one-dimensional torus.  The
modulus is q - 1 for the full group of units and (q - 1)/2 for the
index-two subgroup of squares (p odd).

Landmarks are computed by enumeration first and only then compared with the
closed-form expectations; a mismatch is reported (`match: false`), never
silently patched.
"""

from .errors import InputError
from .invalg import (
    EXTERIOR,
    POLYNOMIAL,
    AlgebraSpec,
    GeneratorSpec,
    Monomial,
    invariant_monomials,
    monomial_json,
)


def _rank_one_algebra(p, r, modulus):
    gens = []
    if p == 2:
        for k in range(r):
            gens.append(GeneratorSpec(f"x{k}", POLYNOMIAL, 1, (p ** k,)))
    else:
        for k in range(r):
            gens.append(GeneratorSpec(f"x{k}", EXTERIOR, 1, (p ** k,)))
        for k in range(r):
            gens.append(GeneratorSpec(f"y{k}", POLYNOMIAL, 2, (p ** k,)))
    return AlgebraSpec.make(p, r, 1, gens, (modulus,))


def gl2_algebra(p, r) -> AlgebraSpec:
    """Weighted algebra whose invariants give the rank-one dimensions with
    the full group of units acting."""
    q = p ** r
    return _rank_one_algebra(p, r, q - 1 if q > 2 else 1)


def sl2_algebra(p, r) -> AlgebraSpec:
    """Same generators, but only the squares of units act: modulus (q-1)/2.

    p = 3, r = 1 yields modulus 1 (trivial torus) and is allowed.
    """
    if p == 2:
        raise InputError("the squares-of-units variant needs p odd")
    return _rank_one_algebra(p, r, (p ** r - 1) // 2)


def _expected_monomial(r, xexp, yexp):
    exps = []
    if xexp:
        exps += [(f"x{k}", xexp) for k in range(r)]
    if yexp:
        exps += [(f"y{k}", yexp) for k in range(r)]
    return Monomial(tuple(exps))


def _scan_landmarks(alg, max_degree):
    """Invariant monomials per degree, first positive hit, first fully
    polynomial (non-nilpotent) hit."""
    first = None
    first_monos = []
    nonnilp = None
    nonnilp_witness = None
    exterior_ids = {g.id for g in alg.generators if g.parity == EXTERIOR}
    for d in range(1, max_degree + 1):
        monos = invariant_monomials(alg, d)
        if monos and first is None:
            first = d
            first_monos = monos
        if nonnilp is None:
            solid = [m for m in monos if not (m.support() & exterior_ids)]
            if solid:
                nonnilp = d
                nonnilp_witness = solid[0]
        if first is not None and nonnilp is not None:
            break
    return first, first_monos, nonnilp, nonnilp_witness


def _landmark_report(group, alg, p, r, expected):
    cap = r * (2 * p - 2) + 1
    first, first_monos, nonnilp, nonnilp_witness = _scan_landmarks(alg, cap)
    witness = first_monos[0] if len(first_monos) == 1 else None

    square_free = None
    if p == 2:
        degree_r = invariant_monomials(alg, r)
        square_free = not any(
            all(e % 2 == 0 for _, e in m.exps) for m in degree_r)

    rep = {
        "group": group,
        "p": p,
        "r": r,
        "spec_hash": alg.spec_hash(),
        "first_positive_degree": first,
        "first_dim": len(first_monos),
        "witness": monomial_json(witness) if witness else None,
        "lowest_nonnilpotent_degree": nonnilp,
        "nonnilpotent_witness":
            monomial_json(nonnilp_witness) if nonnilp_witness else None,
        "square_free_check": square_free,
        "expected": expected,
    }
    ok = (first == expected["first_positive_degree"]
          and len(first_monos) == expected["first_dim"]
          and witness is not None
          and witness.format() == expected["witness"])
    if "lowest_nonnilpotent_degree" in expected:
        ok = (ok and nonnilp == expected["lowest_nonnilpotent_degree"]
              and nonnilp_witness is not None
              and nonnilp_witness.format() == expected["nonnilpotent_witness"])
    if p == 2:
        ok = ok and square_free is True
    rep["match"] = ok
    return rep


def gl2_landmarks(p, r) -> dict:
    """First positive invariant degree (expected r(2p-3), dimension 1) and
    lowest degree with a non-nilpotent invariant (expected r(2p-2) for p odd;
    for p = 2 nothing is nilpotent, so it coincides with the first landmark).
    """
    alg = gl2_algebra(p, r)
    if p == 2:
        expected = {
            "first_positive_degree": r,
            "first_dim": 1,
            "witness": _expected_monomial(r, 1, 0).format(),
            "lowest_nonnilpotent_degree": r,
            "nonnilpotent_witness": _expected_monomial(r, 1, 0).format(),
        }
    else:
        expected = {
            "first_positive_degree": r * (2 * p - 3),
            "first_dim": 1,
            "witness": _expected_monomial(r, 1, p - 2).format(),
            "lowest_nonnilpotent_degree": r * (2 * p - 2),
            "nonnilpotent_witness": _expected_monomial(r, 0, p - 1).format(),
        }
    return _landmark_report("GL2", alg, p, r, expected)


def sl2_landmarks(p, r) -> dict:
    """First positive invariant degree with only squares of units acting:
    expected r(p-2), dimension 1.  Non-nilpotent landmarks are computed and
    reported but carry no closed-form expectation here."""
    alg = sl2_algebra(p, r)
    expected = {
        "first_positive_degree": r * (p - 2),
        "first_dim": 1,
        "witness": _expected_monomial(r, 1, (p - 3) // 2).format(),
    }
    return _landmark_report("SL2", alg, p, r, expected)
