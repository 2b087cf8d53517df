"""Quiver representations over F_q: enumeration, Hom/Ext, Aut, Hall numbers."""

import random
from itertools import product

import pytest

from periodic_hall import linalg
from periodic_hall.errors import ParseError, ResourceLimitError, UsageError
from periodic_hall.repcat import Quiver, Rep, RepContext


def test_quiver_parsing():
    a2 = Quiver.parse("A2")
    assert a2.n == 2 and a2.arrows == ((0, 1),)
    lit = Quiver.parse("3; 1->2, 2->3")
    assert lit.arrows == ((0, 1), (1, 2))
    kronecker = Quiver.parse("2; 1->2, 1->2")
    assert kronecker.arrows == ((0, 1), (0, 1))
    with pytest.raises(ParseError):
        Quiver.parse("2; 1->2, 2->1")  # oriented cycle
    with pytest.raises(ParseError):
        Quiver.parse("nonsense")


def test_enumeration_a2(ctx_factory):
    ctx = ctx_factory("A2", 2)
    names = {c.name for c in ctx.iso_classes_upto((1, 1))}
    assert names == {"0", "S1", "S2", "S1+S2", "P1"}
    assert len(ctx.iso_classes_upto((0, 0))) == 1


def test_enumeration_a1(ctx_factory):
    ctx = ctx_factory("A1", 2)
    names = [c.name for c in ctx.iso_classes_upto((2,))]
    assert names == ["0", "S1", "S1+S1"]


def test_enumeration_class_counts_match_orbit_partition(ctx_factory):
    # sum over classes of |orbit| must exhaust all representations per cell
    ctx = ctx_factory("A2", 3)
    cell = ctx._cell((1, 1))
    assert len(cell.orbit_of) == 3  # q^1 matrices
    assert sorted(c.name for c in cell.classes) == ["P1", "S1+S2"]


def test_kronecker_has_extra_indecomposables(ctx_factory):
    # dimension vector (1,1) over the Kronecker quiver: q+1 regular classes
    # plus the decomposable one
    ctx = ctx_factory("2; 1->2, 1->2", 2)
    classes = ctx.iso_classes_with_dims((1, 1))
    assert len(classes) == 4  # S1+S2 and three indecomposables (q + 1)
    x_names = [c.name for c in classes if c.name.startswith("X")]
    assert len(x_names) == 3


def test_hom_ext_dimensions(ctx_factory):
    for q in (2, 3):
        ctx = ctx_factory("A2", q)
        S1 = ctx.class_by_name("S1")
        S2 = ctx.class_by_name("S2")
        P1 = ctx.class_by_name("P1")
        assert ctx.hom_ext_dim(S1, S2) == (0, 1)
        assert ctx.hom_ext_dim(S2, S1) == (0, 0)
        assert ctx.hom_ext_dim(S1, S1) == (1, 0)
        assert ctx.hom_ext_dim(ctx.zero_class, S2) == (0, 0)
        assert ctx.hom_ext_dim(P1, S1) == (1, 0)
        assert ctx.hom_ext_dim(P1, S2) == (0, 0)
        assert ctx.hom_ext_dim(S2, P1) == (1, 0)


def test_euler_form(ctx_factory):
    ctx = ctx_factory("A2", 2)
    assert ctx.euler((1, 0), (0, 1)) == -1
    assert ctx.euler((1, 0), (0, 0)) == 0
    # half-class pairing in quarter units: <S1/2, S1/2> = 1/4
    assert ctx.euler_t_units((1, 0), (1, 0)) == 1
    assert ctx.sym_t_units((1, 0), (0, 1)) == -1


def test_euler_matches_hom_minus_ext(ctx_factory):
    for quiver in ("A2", "A3"):
        ctx = ctx_factory(quiver, 2)
        classes = ctx.iso_classes_upto((1,) * ctx.quiver.n)
        for m in classes:
            for n in classes:
                h, e = ctx.hom_ext_dim(m, n)
                assert h - e == ctx.euler(m.dims, n.dims)


def test_aut_counts(ctx_factory):
    for q in (2, 3):
        ctx = ctx_factory("A2", q)
        assert ctx.aut_count(ctx.zero_class) == 1
        assert ctx.aut_count(ctx.class_by_name("S1")) == q - 1
        assert ctx.aut_count(ctx.class_by_name("P1")) == q - 1
        # |GL_2(F_q)| by the standard order formula, an independent oracle
        assert ctx.aut_count(ctx.class_by_name("S1+S1")) == (q**2 - 1) * (q**2 - q)


def test_aut_count_nonsplit_endomorphisms(ctx_factory):
    # End(P1 + S1) over A2 is 3-dimensional; brute force must see exactly
    # the invertible pairs
    ctx = ctx_factory("A2", 2)
    cls = ctx.class_by_name("S1+P1")
    assert ctx.aut_count(cls) == 2  # unipotent Hom(P1,S1) times two units


def test_submodule_hall_numbers(ctx_factory):
    for q in (2, 3):
        ctx = ctx_factory("A2", q)
        S1 = ctx.class_by_name("S1")
        S2 = ctx.class_by_name("S2")
        P1 = ctx.class_by_name("P1")
        SS = ctx.class_by_name("S1+S2")
        assert ctx.submodule_hall_number(P1, S1, S2) == 1
        assert ctx.submodule_hall_number(P1, S2, S1) == 0
        assert ctx.submodule_hall_number(SS, S1, S2) == 1
        assert ctx.submodule_hall_number(SS, S2, S1) == 1
        assert ctx.submodule_hall_number(P1, ctx.zero_class, P1) == 1
        assert ctx.submodule_hall_number(P1, P1, ctx.zero_class) == 1
        # dimension mismatch short-circuits
        assert ctx.submodule_hall_number(P1, S1, S1) == 0


def test_submodule_partition_counts_each_submodule_once(ctx_factory):
    # For each L and each sub-dimension k: summing g^L_{M,N} over all class
    # pairs of the right dimensions equals the raw count of arrow-closed
    # subspace tuples, counted directly here without classification.
    ctx = ctx_factory("A2", 2)
    q = ctx.q
    for L in ctx.iso_classes_upto((1, 2)):
        rep = ctx.representative(L)
        for k in product(*(range(d + 1) for d in L.dims)):
            direct = 0
            for rows in product(
                *(linalg.subspaces(rep.dims[v], k[v], q) for v in range(2))
            ):
                if ctx._subrep(rep, rows) is not None:
                    direct += 1
            total = 0
            mdims = tuple(a - b for a, b in zip(L.dims, k))
            for n_cls in ctx.iso_classes_with_dims(k):
                for m_cls in ctx.iso_classes_with_dims(mdims):
                    total += ctx.submodule_hall_number(L, m_cls, n_cls)
            assert total == direct, (L.name, k)


def test_classification_invariant_under_base_change(ctx_factory):
    rng = random.Random(17)
    for quiver, q in (("A2", 2), ("A2", 3), ("A3", 2)):
        ctx = ctx_factory(quiver, q)
        for cls in ctx.iso_classes_upto((1,) * ctx.quiver.n):
            rep = ctx.representative(cls)
            for _ in range(5):
                moved = ctx.random_base_change(rep, rng)
                assert ctx.classify_rep(moved) == cls


def test_intertwiner_isomorphism_agrees_with_orbits(ctx_factory):
    # the exhaustive invertible-intertwiner search is an independent oracle
    # for the orbit-partition classification
    ctx = ctx_factory("A2", 2)
    rng = random.Random(23)
    classes = ctx.iso_classes_upto((1, 1))
    reps = {c: ctx.representative(c) for c in classes}
    for a in classes:
        for b in classes:
            expected = a == b
            assert ctx.is_isomorphic(reps[a], reps[b]) == expected
    # and on scrambled representatives
    for c in classes:
        moved = ctx.random_base_change(reps[c], rng)
        assert ctx.is_isomorphic(reps[c], moved)


def test_orbit_classification_matches_intertwiner_on_random_reps(ctx_factory):
    # two independent isomorphism deciders must agree on arbitrary matrices
    import numpy as np

    rng = random.Random(71)
    for quiver, q in (("A2", 2), ("A2", 3)):
        ctx = ctx_factory(quiver, q)
        for _ in range(40):
            dims = tuple(rng.randint(0, 2) for _ in range(ctx.quiver.n))
            reps = []
            for _ in range(2):
                mats = [
                    np.array(
                        [rng.randrange(q) for _ in range(dims[t] * dims[s])],
                        dtype=np.int64,
                    ).reshape(dims[t], dims[s])
                    for s, t in ctx.quiver.arrows
                ]
                reps.append(Rep(dims, tuple(mats)))
            same_class = ctx.classify_rep(reps[0]) == ctx.classify_rep(reps[1])
            assert same_class == ctx.is_isomorphic(reps[0], reps[1])


def test_q5_smoke(ctx_factory):
    ctx = ctx_factory("A1", 5)
    S = ctx.class_by_name("S1")
    assert ctx.aut_count(S) == 4
    assert ctx.aut_count(ctx.class_by_name("S1+S1")) == (25 - 1) * (25 - 5)
    assert ctx.hom_ext_dim(S, S) == (1, 0)


def test_iso_classes_are_interned(ctx_factory):
    ctx = ctx_factory("A2", 2)
    a = ctx.class_by_name("S1+P1")
    b = ctx.direct_sum_class(ctx.class_by_name("P1"), ctx.class_by_name("S1"))
    assert a is b


def test_class_name_parsing(ctx_factory):
    ctx = ctx_factory("A3", 2)
    assert ctx.class_by_name("0") is ctx.zero_class
    p2 = ctx.class_by_name("P2")
    assert p2.dims == (0, 1, 1)
    i2 = ctx.class_by_name("I2")
    assert i2.dims == (1, 1, 0)
    both = ctx.class_by_name("P2+I2")
    assert both.dims == (1, 2, 1)
    with pytest.raises(ParseError):
        ctx.class_by_name("S9")
    with pytest.raises(ParseError):
        ctx.class_by_name("garbage")


def test_resource_cap():
    ctx = RepContext(Quiver.parse("A2"), 2, max_cell_reps=4)
    with pytest.raises(ResourceLimitError):
        ctx.iso_classes_upto((2, 2))


def test_reject_nonprime_q():
    with pytest.raises(UsageError):
        RepContext(Quiver.parse("A2"), 4)


def test_riedtmann_identity_small(a2_q2):
    # g^L_{M,N} = |Ext^1(M,N)_L| / |Hom(M,N)| * a_L / (a_M a_N)
    from fractions import Fraction

    d = a2_q2
    ctx = d.rep
    S1 = ctx.class_by_name("S1")
    S2 = ctx.class_by_name("S2")
    P1 = ctx.class_by_name("P1")
    fibers = d.module_fiber_counts(d.stalk(S1), d.stalk(S2))
    for L in (P1, ctx.class_by_name("S1+S2")):
        lhs = Fraction(ctx.submodule_hall_number(L, S1, S2))
        rhs = (
            Fraction(fibers.get(L, 0))
            / Fraction(ctx.q) ** ctx.hom_dim(S1, S2)
            * Fraction(ctx.aut_count(L), ctx.aut_count(S1) * ctx.aut_count(S2))
        )
        assert lhs == rhs
