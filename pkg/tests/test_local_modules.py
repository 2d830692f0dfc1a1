import numpy as np
import pytest

from tensorcat.algebra import canonical_algebra, group_algebra, trivial_algebra
from tensorcat.errors import PreconditionError, StructuralError
from tensorcat.local_modules import (condensation_identity_check,
                                     enumerate_local_modules,
                                     free_module_decomposition, is_local,
                                     load_module, local_double_braid_trace,
                                     local_fusion, regular_module, save_module,
                                     verify_module)

from oracles import brute_force_local_count


def test_regular_module_over_itself(toric):
    A = group_algebra(toric, ("1", "e"))
    rep = verify_module(toric, A, regular_module(A))
    assert rep["passed"]


def test_module_with_corrupted_entry(toric):
    A = group_algebra(toric, ("1", "e"))
    X = regular_module(A)
    X.rho[(1, 1, 0)] = -X.rho[(1, 1, 0)]
    rep = verify_module(toric, A, X)
    assert rep["associativity"] > 0.1


def test_toric_magnetic_module_not_local(toric):
    A = group_algebra(toric, ("1", "e"))
    mods = free_module_decomposition(toric, A, 2)
    assert len(mods) == 1
    X = mods[0]
    assert X.support == (2, 3)
    assert verify_module(toric, A, X)["passed"]
    ok, resid = is_local(toric, A, X)
    assert not ok and resid > 0.5


def test_trivial_algebra_modules_are_simples(cats):
    for name in ("fibonacci", "toric_code", "vec_z3"):
        cd = cats[name]
        cond = enumerate_local_modules(cd, trivial_algebra())
        assert [m.support for m in cond.simples] == [(x,) for x in range(cd.ring.rank)]


def test_toric_condensation_electric(toric):
    A = group_algebra(toric, ("1", "e"))
    chk = condensation_identity_check(toric, A)
    assert chk["passed"]
    assert chk["n_simples"] == 1
    assert chk["sum_fpdim_sq"] == pytest.approx(4.0, abs=1e-6)
    assert chk["lagrangian"]


def test_toric_condensation_magnetic(toric):
    A = group_algebra(toric, ("1", "m"))
    chk = condensation_identity_check(toric, A)
    assert chk["passed"] and chk["n_simples"] == 1
    assert chk["sum_fpdim_sq"] == pytest.approx(4.0, abs=1e-6)


def test_enumeration_matches_brute_force_oracle(toric):
    """Independent support-enumeration oracle at halved tolerance."""
    for supp in (("1", "e"), ("1", "m")):
        A = group_algebra(toric, supp)
        lib = len(enumerate_local_modules(toric, A).simples)
        oracle = brute_force_local_count(toric, A)
        assert lib == oracle == 1


def test_enumeration_matches_brute_force_trivial(toric):
    A = trivial_algebra()
    lib = len(enumerate_local_modules(toric, A).simples)
    assert lib == brute_force_local_count(toric, A) == 4


def test_local_fusion_unit_law(toric):
    A = group_algebra(toric, ("1", "e"))
    cond = enumerate_local_modules(toric, A)
    X = cond.simples[0]
    _, mult = local_fusion(toric, A, X, regular_module(A), condensed=cond)
    assert list(mult) == [1]


def test_local_fusion_square(toric):
    A = group_algebra(toric, ("1", "e"))
    cond = enumerate_local_modules(toric, A)
    _, mult = local_fusion(toric, A, cond.simples[0], cond.simples[0],
                           condensed=cond)
    assert list(mult) == [1]


def test_local_fusion_trivial_algebra_reduces_to_ring(cats):
    for name in ("toric_code", "vec_z3"):
        cd = cats[name]
        A = trivial_algebra()
        cond = enumerate_local_modules(cd, A, with_ring=True)
        assert np.array_equal(cond.ring.N, cd.ring.N)


def test_condensed_ring_of_lagrangian_is_trivial(toric):
    from tensorcat.fusion_ring import validate_fusion_ring
    A = group_algebra(toric, ("1", "e"))
    cond = enumerate_local_modules(toric, A, with_ring=True)
    assert cond.ring.rank == 1
    assert validate_fusion_ring(cond.ring) == []
    assert cond.dims_over_Q[0] == pytest.approx(1.0)


def test_local_fusion_assoc_comm_multisets(toric):
    A = trivial_algebra()
    cond = enumerate_local_modules(toric, A)
    for i in range(4):
        for j in range(4):
            _, mij = local_fusion(toric, A, cond.simples[i], cond.simples[j],
                                  condensed=cond)
            _, mji = local_fusion(toric, A, cond.simples[j], cond.simples[i],
                                  condensed=cond)
            assert list(mij) == list(mji)


def test_condensed_braiding_observable(toric):
    A = group_algebra(toric, ("1", "e"))
    cond = enumerate_local_modules(toric, A)
    X = cond.simples[0]
    val = local_double_braid_trace(toric, A, X, X)
    assert val == pytest.approx(1.0, abs=1e-9)  # condensed theory is trivial


def test_enumerate_requires_commutative(fib):
    A = canonical_algebra(fib, "t")
    with pytest.raises(PreconditionError):
        enumerate_local_modules(fib, A)


def test_seed_independence(toric):
    A = group_algebra(toric, ("1", "e"))
    outs = []
    for seed in (0, 1, 17):
        cond = enumerate_local_modules(toric, A, seed=seed)
        outs.append([(m.support, tuple(round(abs(v), 9)
                                       for _k, v in sorted(m.rho.items())))
                     for m in cond.simples])
    assert outs[0] == outs[1] == outs[2]


def test_module_file_round_trip(tmp_path, toric):
    A = group_algebra(toric, ("1", "e"))
    X = regular_module(A)
    path = tmp_path / "mod.json"
    save_module(toric, X, path)
    Y = load_module(toric, path)
    assert Y.support == X.support
    for k, v in X.rho.items():
        assert Y.rho[k] == pytest.approx(v)


def test_inadmissible_rho_reported(toric):
    A = group_algebra(toric, ("1", "e"))
    X = regular_module(A)
    X.rho[(0, 1, 0)] = 1.0
    with pytest.raises(StructuralError):
        verify_module(toric, A, X)
