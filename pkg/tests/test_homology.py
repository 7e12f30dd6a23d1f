import pytest

from quivertilt import (BoundExceeded, InputError, injective,
                        opposite_algebra, projective, regular_module, simple,
                        zero_module)
from quivertilt.homology import (ExtClass, connecting_class, ext, ext_dim,
                                 global_dimension, left_add_approximation,
                                 left_module_from_op_rep, left_regular_module,
                                 min_resolution, proj_dim, projective_cover,
                                 realize_extension, tor_dim,
                                 universal_extension)
from quivertilt.modules import (cokernel, decompose, direct_sum, hom_space,
                                is_isomorphic, quotient, socle, zero_map)
from oracles import oracle_tensor_dim


# -- covers and resolutions -------------------------------------------------


def test_cover_of_simple(cycle2):
    p, epi = projective_cover(simple(cycle2, "2"))
    assert p.gens == ("2",)
    assert epi.is_surjective()


def test_cover_of_injective(cycle2):
    p, _ = projective_cover(injective(cycle2, "1"))
    assert p.gens == ("2",)


def test_cover_of_projective_is_identity_like(cycle2):
    m = projective(cycle2, "1")
    p, epi = projective_cover(m)
    assert p.gens == ("1",)
    assert epi.is_injective() and epi.is_surjective()


def test_cover_of_zero_raises(cycle2):
    with pytest.raises(InputError):
        projective_cover(zero_module(cycle2))


def test_resolution_s2(cycle2):
    res = min_resolution(simple(cycle2, "2"))
    assert res.length == 1
    assert [t.gens for t in res.terms] == [("2",), ("1",)]


def test_resolution_i1(cycle2):
    res = min_resolution(injective(cycle2, "1"))
    assert res.length == 2
    assert [t.gens for t in res.terms] == [("2",), ("2",), ("1",)]


def test_resolution_a2_s1(a2):
    res = min_resolution(simple(a2, "1"))
    assert res.length == 1
    assert [t.gens for t in res.terms] == [("1",), ("2",)]


def test_resolution_exactness_and_minimality(triple3):
    res = min_resolution(simple(triple3, "3"))
    assert res.length == 4
    # d_{k} then d_{k-1} = 0
    for k in range(1, len(res.diffs)):
        assert res.diffs[k].compose(res.diffs[k - 1]).is_zero()
    assert res.diffs[0].compose(res.augment).is_zero()


def test_global_dimensions(a2, kron2, cycle2, triple3):
    assert global_dimension(a2) == 1
    assert global_dimension(kron2) == 1
    assert global_dimension(cycle2) == 2
    assert global_dimension(triple3) == 4


def test_proj_dims(cycle2, triple3):
    assert proj_dim(simple(cycle2, "1")) == 2
    assert proj_dim(simple(cycle2, "2")) == 1
    assert proj_dim(projective(cycle2, "2")) == 0
    assert [proj_dim(simple(triple3, v)) for v in triple3.vertices] == [2, 3, 4]


# -- ext --------------------------------------------------------------------


def test_ext1_i1_s2_is_one_dimensional(cycle2):
    assert ext_dim(1, injective(cycle2, "1"), simple(cycle2, "2")) == 1


def test_ext1_tilting_orthogonality(cycle2):
    s2, p2 = simple(cycle2, "2"), projective(cycle2, "2")
    assert ext_dim(1, s2, direct_sum([s2, p2])) == 0


def test_ext_vanishes_on_projective_source(all_algebras):
    for alg in all_algebras.values():
        for v in alg.vertices:
            p = projective(alg, v)
            for w in alg.vertices:
                for k in (1, 2, 3):
                    assert ext_dim(k, p, injective(alg, w)) == 0


def test_ext0_agrees_with_hom(cycle2):
    for v in cycle2.vertices:
        m = injective(cycle2, v)
        for w in cycle2.vertices:
            n = projective(cycle2, w)
            assert ext_dim(0, m, n) == hom_space(m, n).dim


def test_ext_independent_of_basis_presentation(cycle2):
    """Conjugating a module by an invertible change of basis does not change
    any Ext dimension (resolution independence)."""
    from quivertilt.linalg import Matrix, QQ
    from quivertilt.modules import Representation
    i1 = injective(cycle2, "1")
    # change basis at both vertices by an invertible matrix (here a scaling
    # mixed with a shear on the 1-dim spaces there is little room, so build
    # on P2 instead)
    p2 = projective(cycle2, "2")
    g = {"1": Matrix.from_rows(QQ, [[2]]),
         "2": Matrix.from_rows(QQ, [[1, 3], [0, 1]])}
    ginv = {"1": Matrix.from_rows(QQ, [["1/2"]]),
            "2": Matrix.from_rows(QQ, [[1, -3], [0, 1]])}
    mats = {}
    for name, s, t in cycle2.quiver.arrows:
        mats[name] = ginv[s].mul(p2.arrow_mats[name]).mul(g[t])
    twisted = Representation(cycle2, dict(p2.dims), mats)
    assert is_isomorphic(twisted, p2)
    for k in range(3):
        for n in (i1, simple(cycle2, "2")):
            assert ext_dim(k, twisted, n) == ext_dim(k, p2, n)
            assert ext_dim(k, n, twisted) == ext_dim(k, n, p2)


def test_euler_characteristic_on_short_exact_sequences(cycle2):
    """Alternating sum of Ext dims over a short exact sequence vanishes."""
    p2 = projective(cycle2, "2")
    soc, incl = socle(p2)
    q, _ = quotient(p2, incl)
    # 0 -> soc -> p2 -> q -> 0 against several test modules
    for n in (simple(cycle2, "1"), simple(cycle2, "2"), injective(cycle2, "1")):
        total = 0
        for k in range(0, 6):
            total += (-1) ** k * (ext_dim(k, soc, n) - ext_dim(k, p2, n)
                                  + ext_dim(k, q, n))
        assert total == 0


def test_euler_characteristic_triple3(triple3):
    p2 = projective(triple3, "2")
    soc, incl = socle(p2)
    q, _ = quotient(p2, incl)
    for n in (simple(triple3, "1"), simple(triple3, "3")):
        total = 0
        for k in range(0, 7):
            total += (-1) ** k * (ext_dim(k, soc, n) - ext_dim(k, p2, n)
                                  + ext_dim(k, q, n))
        assert total == 0


# -- tor --------------------------------------------------------------------


def test_tor0_of_projective_against_regular(cycle2):
    left = left_regular_module(cycle2)
    for v in cycle2.vertices:
        p = projective(cycle2, v)
        assert tor_dim(0, p, left) == p.total_dim
        assert tor_dim(1, p, left) == 0
        assert tor_dim(2, p, left) == 0


def test_tor_a2_hand_table(a2):
    """Frozen from the hand computation: resolving S1 by 0 -> P2 -> P1 -> S1
    and tensoring with the left simple at vertex 2 gives 0 -> K -> 0, so
    Tor_0 = 0 and Tor_1 = K."""
    op = opposite_algebra(a2)
    left_s2 = left_module_from_op_rep(a2, simple(op, "2"))
    s1 = simple(a2, "1")
    assert tor_dim(0, s1, left_s2) == 0
    assert tor_dim(1, s1, left_s2) == 1
    assert tor_dim(2, s1, left_s2) == 0


def test_tor0_matches_brute_force_bilinear_quotient(a2, cycle2):
    """Independent oracle: X ⊗_A Y as the quotient of the full K-tensor
    space by the generator relations."""
    from quivertilt.homology import _total_action
    for alg in (a2, cycle2):
        left = left_regular_module(alg)
        gens = [alg.vertex_idempotent(v) for v in alg.vertices]
        gens += [alg.basis_index_of_arrow(a[0]) for a in alg.quiver.arrows]
        for v in alg.vertices:
            x = injective(alg, v)
            right_acts = [[list(r) for r in _total_action(x, g).entries] for g in gens]
            left_acts = [[list(r) for r in left.act[g].entries] for g in gens]
            expected = oracle_tensor_dim(x.total_dim, left.dim, right_acts, left_acts)
            assert tor_dim(0, x, left) == expected


# -- extensions ---------------------------------------------------------------


def test_realize_almost_split_sequence(cycle2):
    space = ext(1, injective(cycle2, "1"), simple(cycle2, "2"))
    assert space.dim == 1
    ses = realize_extension(space.classes[0])
    assert is_isomorphic(ses.mid, injective(cycle2, "2"))
    assert is_isomorphic(ses.mid, projective(cycle2, "2"))


def test_realize_zero_cocycle_splits(cycle2):
    space = ext(1, injective(cycle2, "1"), simple(cycle2, "2"))
    res = space.resolution
    zero_cls = ExtClass(res, 1, space.target,
                        zero_map(res.terms[1].rep, space.target))
    ses = realize_extension(zero_cls)
    expected = direct_sum([simple(cycle2, "2"), injective(cycle2, "1")])
    assert is_isomorphic(ses.mid, expected)


def test_realize_a2_unique_extension(a2):
    space = ext(1, simple(a2, "1"), simple(a2, "2"))
    assert space.dim == 1
    ses = realize_extension(space.classes[0])
    assert is_isomorphic(ses.mid, projective(a2, "1"))


def test_connecting_class_roundtrip(cycle2, a2):
    for alg, m, n in ((cycle2, injective(cycle2, "1"), simple(cycle2, "2")),
                      (a2, simple(a2, "1"), simple(a2, "2"))):
        space = ext(1, m, n)
        for k, cls in enumerate(space.classes):
            ses = realize_extension(cls)
            coords = connecting_class(ses, space)
            expected = tuple(1 if i == k else 0 for i in range(space.dim))
            assert tuple(coords) == expected


def test_universal_extension_bongartz_pattern(a2):
    n_mod, ses = universal_extension(simple(a2, "1"), regular_module(a2))
    assert is_isomorphic(n_mod, direct_sum([projective(a2, "1")] * 2))
    assert ext_dim(1, simple(a2, "1"), n_mod) == 0


def test_universal_extension_trivial_for_projective(cycle2):
    p = projective(cycle2, "2")
    x = regular_module(cycle2)
    n_mod, ses = universal_extension(p, x)
    assert n_mod.dims == x.dims
    assert ses.right.total_dim == 0


def test_universal_extension_cycle2(cycle2):
    s2 = simple(cycle2, "2")
    r = regular_module(cycle2)
    n_mod, ses = universal_extension(s2, r)
    p2 = projective(cycle2, "2")
    assert is_isomorphic(n_mod, direct_sum([p2, p2]))
    assert ses.right.dim_vector() == s2.dim_vector()
    assert ext_dim(1, s2, n_mod) == 0


# -- approximations -------------------------------------------------------------


def test_approximation_cycle2(cycle2):
    r = regular_module(cycle2)
    t = direct_sum([projective(cycle2, "2"), simple(cycle2, "2")])
    f, tags = left_add_approximation(r, t)
    assert f.is_injective()
    assert f.target.dim_vector() == (2, 4)
    cok, _ = cokernel(f)
    assert is_isomorphic(cok, simple(cycle2, "2"))


def test_approximation_of_member_of_add_t(cycle2):
    p2 = projective(cycle2, "2")
    t = direct_sum([p2, simple(cycle2, "2")])
    f, tags = left_add_approximation(p2, t)
    assert f.is_injective() and f.is_surjective()
    assert len(tags) == 1


def test_approximation_triple3(triple3):
    r = regular_module(triple3)
    tchar = direct_sum([projective(triple3, "1"), projective(triple3, "2"),
                        simple(triple3, "1")])
    f, tags = left_add_approximation(r, tchar)
    t0 = f.target
    dec = decompose(t0)
    assert t0.total_dim == 11
    p1 = projective(triple3, "1")
    p2 = projective(triple3, "2")
    assert any(is_isomorphic(fac, p1) and mult == 1 for fac, mult in dec)
    assert any(is_isomorphic(fac, p2) and mult == 2 for fac, mult in dec)
    cok, _ = cokernel(f)
    assert cok.dim_vector() == (1, 1, 0)


def test_approximation_factorization_property(cycle2):
    """Every basis morphism R -> t factors through the approximation."""
    from quivertilt.linalg import Matrix
    from quivertilt.modules import _flatten_map
    r = regular_module(cycle2)
    t = direct_sum([projective(cycle2, "2"), simple(cycle2, "2")])
    f, _ = left_add_approximation(r, t)
    through = hom_space(f.target, t)
    rows = [_flatten_map(f.compose(h)) for h in through.basis]
    fld = cycle2.field
    width = len(rows[0])
    from quivertilt.linalg import solve_linear_system
    rows_m = Matrix(fld, len(rows), width, tuple(rows))
    for g in hom_space(r, t).basis:
        sol, _ = solve_linear_system(rows_m, Matrix(fld, 1, width, (_flatten_map(g),)))
        assert sol is not None
