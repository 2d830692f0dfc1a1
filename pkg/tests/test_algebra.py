import numpy as np
import pytest

from tensorcat.algebra import (AlgebraObject, algebra_dim, canonical_algebra,
                               group_algebra, is_commutative, is_connected,
                               load_algebra, save_algebra, symmetric_enveloping,
                               trivial_algebra, verify_qsystem)
from tensorcat.braided_analysis import is_nondegenerate, twists
from tensorcat.category_data import reverse_braiding
from tensorcat.errors import StructuralError
from tensorcat.local_modules import is_local, regular_module

from oracles import PHI


def test_trivial_algebra_passes(fib):
    rep = verify_qsystem(fib, trivial_algebra())
    assert rep.passed
    assert algebra_dim(fib, trivial_algebra()) == pytest.approx(1.0)


def test_canonical_fibonacci(fib):
    A = canonical_algebra(fib, "t")
    assert A.support == (0, 1)
    rep = verify_qsystem(fib, A)
    assert rep.passed, rep.residuals
    assert algebra_dim(fib, A) == pytest.approx(PHI ** 2, abs=1e-9)
    # stored-gauge magnitudes forced by separability
    assert abs(A.mu[(1, 1, 0)]) == pytest.approx(np.sqrt(PHI), abs=1e-9)
    assert abs(A.mu[(1, 1, 1)]) == pytest.approx(1 / np.sqrt(PHI), abs=1e-9)


def test_canonical_wrong_scale_fails_separability(fib):
    A = canonical_algebra(fib, "t")
    A.mu[(1, 1, 1)] = 1.0
    rep = verify_qsystem(fib, A)
    assert rep.separability > 0.01
    assert not rep.passed


def test_canonical_unit_label_is_trivial(cats):
    for name, cd in cats.items():
        A = canonical_algebra(cd, 0)
        assert A.support == (0,)
        assert verify_qsystem(cd, A).passed


def test_canonical_ising_sigma_is_group_algebra(ising_cat):
    A = canonical_algebra(ising_cat, "s")
    assert A.support == (0, 2)
    for v in A.mu.values():
        assert abs(v) == pytest.approx(1.0, abs=1e-9)
    assert verify_qsystem(ising_cat, A).passed


def test_canonical_all_simples_all_catalog(cats):
    for name, cd in cats.items():
        for x in range(cd.ring.rank):
            A = canonical_algebra(cd, x)
            rep = verify_qsystem(cd, A)
            assert rep.passed, (name, x, rep.residuals)
            dx = cd.dims.dims[x]
            assert algebra_dim(cd, A) == pytest.approx(dx * dx, abs=1e-9)


def test_connectedness():
    assert is_connected(trivial_algebra())
    A = AlgebraObject(support=(0, 1), mu={(0, 0, 0): 1, (0, 1, 1): 1,
                                          (1, 0, 1): 1, (1, 1, 0): 1})
    assert is_connected(A)


def test_commutative_toric_electric(toric):
    A = group_algebra(toric, ("1", "e"))
    ok, resid = is_commutative(toric, A)
    assert ok and resid < 1e-12


def test_commutative_trivial(fib):
    assert is_commutative(fib, trivial_algebra())[0]


def test_fibonacci_canonical_not_commutative(fib):
    A = canonical_algebra(fib, "t")
    ok, resid = is_commutative(fib, A)
    assert not ok
    assert resid > 0.1


def test_noncommutativity_from_twist(cats):
    """canonical_algebra(x) is never commutative when theta_x != 1 in a
    nondegenerate catalog category."""
    for name, cd in cats.items():
        if not is_nondegenerate(cd):
            continue
        th = twists(cd).theta
        for x in range(cd.ring.rank):
            A = canonical_algebra(cd, x)
            if A.support == (0,):
                continue
            if abs(th[x] - 1.0) > 1e-9:
                assert not is_commutative(cd, A)[0], (name, x)


def test_symmetric_enveloping_dimension(cats):
    for name in ("vec_z2", "fibonacci", "ising", "semion", "toric_code", "vec_z4"):
        cd = cats[name]
        prod, S = symmetric_enveloping(cd)
        r = cd.ring.rank
        assert S.support == tuple(c * r + c for c in range(r))
        assert algebra_dim(prod, S) == pytest.approx(cd.dims.global_dim, abs=1e-9)
        rep = verify_qsystem(prod, S)
        assert rep.passed, (name, rep.residuals)


def test_symmetric_enveloping_fibonacci_value(fib):
    prod, S = symmetric_enveloping(fib)
    assert algebra_dim(prod, S) == pytest.approx(1 + PHI ** 2, abs=1e-9)


def test_commutative_implies_regular_module_local(cats):
    """One direction always holds; the converse fails exactly on the
    transparent-fermion algebras (support twists -1, self-monodromy +1)."""
    violations = []
    for name, cd in cats.items():
        for flip in (False, True):
            c = reverse_braiding(cd) if flip else cd
            algebras = [(f"canonical:{x}", canonical_algebra(c, x))
                        for x in range(c.ring.rank)]
            if name == "toric_code":
                algebras += [(f"group:{s}", group_algebra(c, s))
                             for s in (("1", "e"), ("1", "m"), ("1", "f"))]
            for tag, A in algebras:
                comm, _ = is_commutative(c, A)
                loc, _ = is_local(c, A, regular_module(A))
                if comm:
                    assert loc, (name, flip, tag)
                if comm != loc:
                    violations.append((name, tag))
    # the documented counterexamples: 1+psi in Ising, 1+f in toric code
    assert set(violations) == {("ising", "canonical:1"),
                               ("toric_code", "group:('1', 'f')")}


def test_dagger_consistency_under_reverse_braiding(cats):
    """Conjugating mu matches the reversed braiding: separability residual
    is unchanged."""
    for name in ("fibonacci", "ising"):
        cd = cats[name]
        A = canonical_algebra(cd, 1)
        rev = reverse_braiding(cd)
        B = AlgebraObject(support=A.support,
                          mu={k: np.conj(v) for k, v in A.mu.items()})
        ra = verify_qsystem(cd, A)
        rb = verify_qsystem(rev, B)
        assert ra.separability == pytest.approx(rb.separability, abs=1e-12)
        assert rb.passed


def test_admissibility_errors(fib):
    A = canonical_algebra(fib, "t")
    A.mu[(1, 1, 1)] = A.mu[(1, 1, 1)]
    bad = AlgebraObject(support=A.support, mu={**A.mu, (0, 0, 1): 1.0})
    with pytest.raises(StructuralError):
        verify_qsystem(fib, bad)
    missing = dict(A.mu)
    del missing[(1, 1, 0)]
    with pytest.raises(StructuralError):
        verify_qsystem(fib, AlgebraObject(support=A.support, mu=missing))


def test_unit_required_in_support():
    with pytest.raises(StructuralError):
        AlgebraObject(support=(1,), mu={})


def test_algebra_file_round_trip(tmp_path, toric):
    A = group_algebra(toric, ("1", "e"))
    path = tmp_path / "alg.json"
    save_algebra(toric, A, path)
    B = load_algebra(toric, path)
    assert B.support == A.support
    for k, v in A.mu.items():
        assert B.mu[k] == pytest.approx(v)
