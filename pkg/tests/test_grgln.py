"""Upper-unitriangular specialization: the graded weight model, hook/edge
supports, detection kernels, theorem reporters, and matrix-level checks."""

import pytest

from liecoh.errors import InputError
from liecoh.ffq import Fq, FqMatrix, mat_pow
from liecoh.grgln import (
    build_gr_un,
    chern_coefficient,
    commuting_regular_subgroup,
    essential_kernel,
    exponent_check,
    hook_detection,
    max_rank,
    regular_unipotent_check,
    subgroup_support,
    theorem_borel_char2,
    theorem_lowest_gl,
)
from liecoh.invalg import EXTERIOR, POLYNOMIAL, Monomial, monomial_json


def test_build_gr_un_odd():
    spec = build_gr_un(3, 3, 1)
    alg = spec.algebra
    assert spec.n == 3
    assert alg.torus_rank == 3
    assert alg.moduli == (2, 2, 2)
    ids = [g.id for g in alg.generators]
    assert ids == ["x[1,2,0]", "y[1,2,0]", "x[1,3,0]", "y[1,3,0]",
                   "x[2,3,0]", "y[2,3,0]"]
    parities = {g.id: g.parity for g in alg.generators}
    assert parities["x[1,2,0]"] == EXTERIOR
    assert parities["y[1,2,0]"] == POLYNOMIAL
    # weight of (1,2) is e_1 - e_2 reduced mod 2
    assert alg.by_id("x[1,2,0]").weight == (1, 1, 0)
    assert alg.by_id("x[1,2,0]").weight == alg.by_id("y[1,2,0]").weight


def test_build_gr_un_char2():
    spec = build_gr_un(3, 2, 2)
    alg = spec.algebra
    assert alg.char2_mode
    assert len(alg.generators) == 6
    assert all(g.parity == POLYNOMIAL and g.degree == 1
               for g in alg.generators)
    assert alg.moduli == (3, 3, 3)
    assert alg.by_id("x[1,2,0]").weight == (1, 2, 0)
    assert alg.by_id("x[1,2,1]").weight == (2, 1, 0)


def test_build_gr_un_counts_and_errors():
    spec = build_gr_un(4, 5, 1)
    assert len(spec.algebra.generators) == 12
    assert spec.algebra.moduli == (4, 4, 4, 4)
    with pytest.raises(InputError):
        build_gr_un(1, 3, 1)


def test_triangle_weight_additivity():
    spec = build_gr_un(4, 3, 1)
    alg = spec.algebra
    m = alg.moduli[0]
    for i in range(1, 5):
        for j in range(i + 1, 5):
            for loong in range(j + 1, 5):
                wij = alg.by_id(f"x[{i},{j},0]").weight
                wjl = alg.by_id(f"x[{j},{loong},0]").weight
                wil = alg.by_id(f"x[{i},{loong},0]").weight
                assert tuple((a + b) % m for a, b in zip(wij, wjl)) == wil


def test_subgroup_supports():
    spec = build_gr_un(3, 3, 1)
    hook = subgroup_support(spec, "hook", 1, 3)
    assert hook.name == "hook(1,3)"
    assert hook.ids == {"x[1,2,0]", "y[1,2,0]", "x[1,3,0]", "y[1,3,0]",
                        "x[2,3,0]", "y[2,3,0]"}
    edge = subgroup_support(spec, "edge", 2)
    assert edge.name == "edge_L(2)"
    assert edge.ids == {"x[1,3,0]", "y[1,3,0]"}

    spec4 = build_gr_un(4, 5, 1)
    edge3 = subgroup_support(spec4, "edge", 3)
    positions = {i[:6] for i in edge3.ids}
    assert positions == {"x[1,2,", "y[1,2,", "x[1,4,", "y[1,4,",
                         "x[2,4,", "y[2,4,"}

    root = subgroup_support(spec4, "root", 1, 2)
    assert root.ids == {"x[1,2,0]", "y[1,2,0]"}
    sup = subgroup_support(spec4, "superdiag", 2)
    assert sup.ids == {"x[2,3,0]", "y[2,3,0]"}


def test_subgroup_support_twist_closure():
    spec = build_gr_un(3, 2, 2)
    root = subgroup_support(spec, "root", 1, 2)
    assert root.ids == {"x[1,2,0]", "x[1,2,1]"}


def test_subgroup_support_errors():
    spec = build_gr_un(3, 3, 1)
    for args in [("hook", 2, 2), ("hook", 0, 3), ("edge", 1), ("edge", 3),
                 ("root", 3, 2), ("root", 1, 4), ("superdiag", 3),
                 ("superdiag", 0), ("nonsense", 1)]:
        with pytest.raises(InputError):
            subgroup_support(spec, *args)


def test_edges_inside_hook():
    spec = build_gr_un(5, 5, 1)
    hook = subgroup_support(spec, "hook", 1, 5)
    for i in (2, 3, 4):
        edge = subgroup_support(spec, "edge", i)
        assert edge.ids < hook.ids


def test_hook_detection_odd():
    rep = hook_detection(build_gr_un(3, 3, 1))
    assert rep["degree"] == 3
    assert rep["series"] == [1, 0, 0, 4]
    assert rep["vanishing_ok"] is True
    assert rep["kernel_dim"] == 0
    assert rep["dim_at_degree"] == 4
    assert rep["pass"] is True


def test_hook_detection_char2():
    rep = hook_detection(build_gr_un(3, 2, 2))
    assert rep["degree"] == 2
    assert rep["series"] == [1, 0, 3]
    assert rep["kernel_dim"] == 0
    assert rep["dim_at_degree"] == 3  # C(3,2)
    assert rep["pass"] is True

    rep = hook_detection(build_gr_un(4, 2, 1))
    assert rep["degree"] == 1
    assert rep["kernel_dim"] == 0
    assert rep["dim_at_degree"] == 6


def test_essential_kernel_unique_witness():
    rep = essential_kernel(4, 5)
    assert rep["degree"] == 7
    assert rep["kernel_dim"] == 1
    witness = Monomial((("x[1,2,0]", 1), ("x[1,3,0]", 1), ("x[1,4,0]", 1),
                        ("x[2,4,0]", 1), ("x[3,4,0]", 1), ("y[1,4,0]", 1)))
    assert rep["kernel_basis"] == [monomial_json(witness)]
    assert rep["discrepancy"] is False
    assert rep["caution"] is False


def test_essential_kernel_vanishes_beyond_p():
    rep = essential_kernel(6, 5)
    assert rep["kernel_dim"] == 0
    assert rep["discrepancy"] is False
    rep = essential_kernel(5, 3)
    assert rep["kernel_dim"] == 0
    assert rep["discrepancy"] is False


def test_essential_kernel_rank_one():
    rep = essential_kernel(2, 5)
    assert rep["kernel_dim"] == 1
    assert rep["kernel_basis"][0]["str"] == "x[1,2,0]*y[1,2,0]^3"
    assert rep["discrepancy"] is False


def test_essential_kernel_n3_reports_discrepancy():
    rep = essential_kernel(3, 3)
    assert rep["kernel_dim"] == 3
    assert rep["discrepancy"] is True
    assert rep["caution"] is True
    got = [b["str"] for b in rep["kernel_basis"]]
    assert got == ["x[1,2,0]*x[1,3,0]*x[2,3,0]", "x[1,2,0]*y[1,2,0]",
                   "x[2,3,0]*y[2,3,0]"]

    rep = essential_kernel(3, 5)
    assert rep["kernel_dim"] == 3
    assert rep["discrepancy"] is True
    got = [b["str"] for b in rep["kernel_basis"]]
    assert got == ["x[1,2,0]*x[1,3,0]*x[2,3,0]*y[1,3,0]^2",
                   "x[1,2,0]*y[1,2,0]^3", "x[2,3,0]*y[2,3,0]^3"]


def test_essential_kernel_domain():
    with pytest.raises(InputError):
        essential_kernel(4, 2)
    with pytest.raises(InputError):
        essential_kernel(1, 5)


def test_theorem_lowest_gl_values():
    ones = [(2, 3, 1), (4, 5, 1), (2, 2, 3)]
    zeros = [(5, 3, 1), (6, 5, 1), (3, 2, 1), (3, 2, 2), (4, 2, 1)]
    for n, p, r in ones:
        rep = theorem_lowest_gl(n, p, r)
        assert rep["dim"] == 1, (n, p, r)
        assert rep["discrepancy"] is False, (n, p, r)
    for n, p, r in zeros:
        rep = theorem_lowest_gl(n, p, r)
        assert rep["dim"] == 0, (n, p, r)
        assert rep["discrepancy"] is False, (n, p, r)


def test_theorem_lowest_gl_flags_n3():
    rep = theorem_lowest_gl(3, 5, 1)
    assert rep["dim"] == 1
    assert rep["discrepancy"] is True
    assert rep["caution"] is True


def test_theorem_lowest_gl_ingredient_labels():
    rep = theorem_lowest_gl(4, 5, 1)
    statuses = {i["status"] for i in rep["ingredients"]}
    assert statuses == {"computed", "cited"}
    for ing in rep["ingredients"]:
        assert ing["fact"]
        if ing["status"] == "cited":
            assert ing["quote"]
        else:
            assert ing["ok"] is True


def test_theorem_lowest_gl_domain():
    with pytest.raises(InputError):
        theorem_lowest_gl(3, 3, 2)
    with pytest.raises(InputError):
        theorem_lowest_gl(1, 3, 1)


def test_theorem_borel_char2():
    assert theorem_borel_char2(2, 1)["dim"] == 1
    assert theorem_borel_char2(5, 1)["dim"] == 4
    rep = theorem_borel_char2(4, 2)
    assert rep["dim"] == 3
    assert rep["discrepancy"] is False
    gr = next(i for i in rep["ingredients"]
              if i["status"] == "computed" and "C(n,2)" in i["fact"])
    assert gr["ok"] is True
    assert gr["detail"]["dim_at_degree"] == 6
    with pytest.raises(InputError):
        theorem_borel_char2(1, 1)


def test_regular_unipotent_check():
    f3 = Fq(3, 1)
    jordan = FqMatrix.from_ints(f3, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert regular_unipotent_check(jordan) is True
    assert regular_unipotent_check(FqMatrix.identity(f3, 3)) is False
    f5 = Fq(5, 1)
    m = FqMatrix.from_ints(f5, [[1, 2, 1], [0, 1, 0], [0, 0, 1]])
    assert regular_unipotent_check(m) is False
    lower = FqMatrix.from_ints(f3, [[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(InputError):
        regular_unipotent_check(lower)


def test_commuting_regular_subgroup():
    rep = commuting_regular_subgroup(3, 3, 1)
    assert len(rep["generators"]) == 1
    assert rep["order"] == 3
    assert rep["nontrivial_count"] == 2
    assert rep["pass"] is True

    rep = commuting_regular_subgroup(3, 5, 2)
    assert len(rep["generators"]) == 2
    assert rep["order"] == 25
    assert rep["nontrivial_count"] == 24
    assert rep["all_regular"] is True
    assert rep["commuting"] is True
    assert rep["exponent_p"] is True
    assert rep["pass"] is True

    assert commuting_regular_subgroup(5, 5, 1)["pass"] is True

    with pytest.raises(InputError):
        commuting_regular_subgroup(4, 3, 1)


def test_exponent_check_all():
    rep = exponent_check(3, 3, 1)
    assert rep["pass"] is True
    assert rep["elements_checked"] == 27
    assert rep["witness"] is None

    rep = exponent_check(3, 2, 1)
    assert rep["pass"] is False
    assert rep["witness"] == [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    assert rep["witness_order"] == 4


def test_exponent_check_sample():
    rep = exponent_check(4, 5, 1, mode="sample", count=1000, seed=1)
    assert rep["pass"] is True
    assert rep["elements_checked"] == 1000
    again = exponent_check(4, 5, 1, mode="sample", count=1000, seed=1)
    assert again == rep


def test_chern_coefficient():
    for n, p in [(2, 3), (3, 3), (2, 5), (3, 5), (2, 7), (4, 2)]:
        assert chern_coefficient(n, p) == 1, (n, p)
    with pytest.raises(InputError):
        chern_coefficient(1, 3)
    with pytest.raises(InputError):
        chern_coefficient(2, 4)


def test_max_rank():
    assert max_rank(2, 1) == 1
    assert max_rank(4, 1) == 4
    assert max_rank(5, 3) == 18
    with pytest.raises(InputError):
        max_rank(0, 1)


def test_exponent_order_matches_matrix_power():
    f2 = Fq(2, 1)
    m = FqMatrix.from_ints(f2, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert mat_pow(m, 2) != FqMatrix.identity(f2, 3)
    assert mat_pow(m, 4) == FqMatrix.identity(f2, 3)
