import numpy as np
import pytest

from plocal import (
    ModuleData,
    NotAFunctor,
    atomic_functor_limits,
    build_orbit,
    build_orbit_skeletons,
    class_filtration_check,
    classifying_cohomology_functor,
    functor_cochain_complex,
    inverse_limit_dim,
    limits_profile,
    normalizer_reduction_check,
    punctured_class_vanishing,
    support_restriction_check,
    supported_cohomology_functor,
)
from plocal.catalog import build_group
from plocal.cohomology import CohomologyBasis, CohomologyCache
from plocal.limits import constant_functor
from plocal.omega import is_centric


def eye_module(G, dim=1):
    return ModuleData(dim, [np.eye(dim, dtype=np.int64) for _ in G.generators])


def test_constant_functor_on_one_object():
    G = build_group("cyc:1")
    O = build_orbit(G, [G.full_subgroup()])
    F = constant_functor(O, 2)
    prof = limits_profile(F, 3)
    assert prof.dims == [1, 0, 0]
    assert prof.lim0_cross_check == 1


def test_constant_functor_with_terminal_object():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    F = constant_functor(skel.omega_cat, 2)
    prof = limits_profile(F, 3)
    assert prof.dims == [1, 0, 0]


def test_validate_rejects_bad_matrices():
    G = build_group("cyc:2")
    O = build_orbit(G, [G.trivial_subgroup(), G.full_subgroup()])
    F = constant_functor(O, 2)
    # zero out a non-identity automorphism whose square is the identity
    tid = next(
        t for t, m in enumerate(O.morphisms)
        if m.src == m.tgt and not O.is_identity(t)
    )
    F.mats[tid] = np.zeros((1, 1), dtype=np.int64)
    with pytest.raises(NotAFunctor):
        F.validate()


def test_atomic_limits_vanish_with_p_element():
    # kernel of the trivial action contains an element of order p
    for spec, p in [("cyc:2", 2), ("sym:3", 2), ("sym:3", 3), ("alt:4", 2)]:
        G = build_group(spec)
        prof = atomic_functor_limits(G, p, eye_module(G), 3)
        assert prof.dims == [0, 0, 0], (spec, p)


def test_atomic_limits_no_p_subgroups():
    # no nontrivial 2-subgroups: the orbit category is the one-object
    # category of the group, and lim^0 is the fixed subspace
    G = build_group("cyc:3")
    prof = atomic_functor_limits(G, 2, eye_module(G), 3)
    assert prof.dims == [1, 0, 0]
    # order-3 action on F_2^2 with no nonzero fixed vectors
    act = ModuleData(2, [np.array([[0, 1], [1, 1]], dtype=np.int64)])
    prof2 = atomic_functor_limits(G, 2, act, 3)
    assert prof2.dims[0] == 0


def test_trivial_group_atomic_limits():
    G = build_group("cyc:1")
    prof = atomic_functor_limits(G, 2, ModuleData(2, []), 3)
    assert prof.dims == [2, 0, 0]


def test_lim0_equals_compat_system_everywhere():
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    cache = CohomologyCache(G, 2)
    for i in range(3):
        F = classifying_cohomology_functor(G, 2, skel.omega_cat, i, cache)
        cx = functor_cochain_complex(F, 3)
        assert cx.limit_dims()[0] == inverse_limit_dim(F)


def test_cohomology_basis_dimensions():
    G = build_group("dih:8")
    S = G.full_subgroup()
    # H^*(B D8; F_2) has dimensions 1, 2, 3, ...
    dims = [CohomologyBasis(G, S, i, 2).dim for i in range(3)]
    assert dims == [1, 2, 3]
    C2 = G.generated_subgroup([S.ids[1]])
    z2dims = [CohomologyBasis(G, C2, i, 2).dim for i in range(4)]
    assert z2dims == [1, 1, 1, 1]
    triv = G.trivial_subgroup()
    assert [CohomologyBasis(G, triv, i, 2).dim for i in range(3)] == [1, 0, 0]


def test_cohomology_basis_z3():
    G = build_group("cyc:3")
    S = G.full_subgroup()
    assert [CohomologyBasis(G, S, i, 3).dim for i in range(4)] == [1, 1, 1, 1]
    # prime-to-order coefficients: cohomology collapses
    assert [CohomologyBasis(G, S, i, 2).dim for i in range(3)] == [1, 0, 0]


def test_cohomology_functor_inner_action_trivial():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    F = classifying_cohomology_functor(G, 2, skel.p_cat, 1)
    k = next(i for i, R in enumerate(skel.p_reps) if R.order == 2)
    assert F.dims[k] == 1
    for tid in skel.p_cat.mor(k, k):
        assert np.array_equal(F.mats[tid], np.eye(1, dtype=np.int64))


def test_cohomology_functor_index_zero_constant():
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    F = classifying_cohomology_functor(G, 2, skel.omega_cat, 0)
    assert all(d == 1 for d in F.dims)
    for tid in range(skel.omega_cat.morphism_count):
        assert np.array_equal(F.mats[tid] % 2, np.eye(1, dtype=np.int64))


def test_punctured_vanishing_s3():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    v = punctured_class_vanishing(skel, G.trivial_subgroup(), 0, 3)
    assert v.applicable
    assert v.full_dims == [0, 0, 0]
    assert v.omega_dims == [0, 0, 0]
    assert v.passed and v.sides_agree


def test_punctured_vanishing_guard_on_centric():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    S = skel.sylow
    v = punctured_class_vanishing(skel, S, 0, 3)
    assert not v.applicable
    assert v.passed  # not-applicable verdicts never assert vanishing


def test_punctured_vanishing_s4_noncentric_small_class():
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    from plocal.catalog import parse_cycles
    Q = G.generated_subgroup([G.element_id(parse_cycles("(1 2)(3 4)", degree=4))])
    assert not is_centric(G, 2, Q)
    v = punctured_class_vanishing(skel, Q, 1, 3)
    assert v.applicable
    assert v.full_dims == [0, 0, 0]
    assert v.omega_dims is None  # the class is not an intersection of Sylows


def test_normalizer_reduction_sylow_class():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    v = normalizer_reduction_check(skel, skel.sylow, 1, 3)
    assert v.quotient_order == 1
    assert v.left_dims == v.right_dims == [1, 0, 0]


def test_normalizer_reduction_nontrivial_module():
    # the four-group in sym:4 has normalizer quotient of order 6 acting on
    # a two-dimensional first cohomology
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    V = skel.poset.members[skel.poset.minimum]
    v = normalizer_reduction_check(skel, V, 1, 3)
    assert v.quotient_order == 6
    assert v.passed


def test_normalizer_reduction_everywhere_s4():
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    for R in skel.p_reps:
        for i in range(2):
            assert normalizer_reduction_check(skel, R, i, 3).passed


def test_support_restriction():
    for spec, p in [("sym:3", 2), ("sym:4", 2), ("dih:12", 2)]:
        G = build_group(spec)
        skel = build_orbit_skeletons(G, p)
        for i in range(2):
            v = support_restriction_check(skel, i, 3)
            assert v.passed, (spec, p, i)


def test_support_restriction_full_support_trivially_equal():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    v = support_restriction_check(
        skel, 1, 3, support_classes=list(range(len(skel.omega_reps)))
    )
    assert v.passed
    assert v.support_size == len(skel.omega_reps)


def test_support_restriction_rejects_bad_support():
    import pytest
    from plocal import UpwardClosureViolated

    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    triv = next(c for c, R in enumerate(skel.omega_reps) if R.order == 1)
    with pytest.raises(UpwardClosureViolated):
        support_restriction_check(skel, 0, 3, support_classes=[triv])


def test_filtration_trivial_when_all_centric():
    G = build_group("sym:4")
    skel = build_orbit_skeletons(G, 2)
    v = class_filtration_check(skel, 1, 3)
    assert len(v.stages) == 0
    assert v.passed


def test_filtration_with_stages():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    v = class_filtration_check(skel, 1, 3)
    assert len(v.stages) == 1
    assert v.stages[0].punctured_dims == [0, 0, 0]
    assert v.passed
    G12 = build_group("dih:12")
    skel12 = build_orbit_skeletons(G12, 2)
    v12 = class_filtration_check(skel12, 1, 3)
    # one non-centric class: the central order-2 intersection of the Sylows
    assert len(v12.stages) == 1
    assert v12.stages[0].added_order == 2
    assert v12.passed


def test_filtration_multi_stage_with_order_ties():
    # three non-centric classes: the trivial subgroup and the two order-2
    # factor classes, which tie in order and exercise the tie-break
    G = build_group("sym:3 x sym:3")
    skel = build_orbit_skeletons(G, 2)
    assert sum(1 for f in skel.omega_centric if not f) == 3
    v = class_filtration_check(skel, 1, 3)
    assert len(v.stages) == 3
    assert [s.added_order for s in v.stages] == [2, 2, 1]
    assert v.passed


def test_cochain_budget_guard():
    from plocal import BudgetExceeded
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    F = classifying_cohomology_functor(G, 2, skel.p_cat, 0)
    with pytest.raises(BudgetExceeded):
        functor_cochain_complex(F, 3, budget=5)


def test_supported_functor_zero_off_support():
    G = build_group("sym:3")
    skel = build_orbit_skeletons(G, 2)
    k = next(i for i, R in enumerate(skel.p_reps) if R.order == 1)
    F = supported_cohomology_functor(G, 2, skel.p_cat, [k], 0)
    for j, d in enumerate(F.dims):
        assert (d > 0) == (j == k)
