"""Right modules over a Q-system, locality, and anyon condensation.

A ModuleObject stores action coefficients rho^{xa}_y in orthonormal tree
components with the unit channel pinned: rho^{x0}_x = 1 (same stored gauge
as AlgebraObject; the physical action is rho / sqrt(dim Q)).  In this gauge
module associativity reads rho(rho (x) id) = rho(id (x) m) verbatim with the
stored coefficients, and the standardly-normalized action satisfies
sum_{a,y} |rho^{xa}_y|^2 = dim Q for every x in the support.

Simple modules are enumerated by decomposing the induced modules x (x) A
over all simples x, which is complete: a simple module embeds in the
induction from any simple in its support.  Fusion of local modules uses the
canonical projector onto X (x)_Q Y built from the separability element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import (AlgebraObject, algebra_dim, is_commutative,
                      is_connected, verify_qsystem, _max_dev, _sum_values)
from .braided_analysis import is_nondegenerate
from .category_data import CategoryData
from .diagram_eval import (compose_values, insert, path_vector, paths,
                           scalar_generator, tensor_values)
from .errors import PreconditionError, StructuralError

__all__ = [
    "ModuleObject", "CondensedData", "verify_module", "is_local",
    "free_module_decomposition", "enumerate_local_modules", "local_fusion",
    "condensation_identity_check", "regular_module", "load_module",
    "save_module", "local_double_braid_trace",
]


@dataclass
class ModuleObject:
    """Multiplicity-free module: support labels and rho^{xa}_y coefficients."""

    support: tuple
    rho: dict  # (x, a, y) -> complex

    def __post_init__(self):
        self.support = tuple(sorted(int(x) for x in self.support))
        self.rho = {tuple(k): complex(v) for k, v in self.rho.items()}

    def check_admissible(self, cd: CategoryData, A: AlgebraObject):
        inside = set(self.support)
        admissible = {(x, a, y) for x in self.support for a in A.support
                      for y in cd.ring.channels(x, a) if y in inside}
        extra = set(self.rho) - admissible
        missing = admissible - set(self.rho)
        if extra:
            raise StructuralError(f"rho entry on inadmissible triple {sorted(extra)[0]}")
        if missing:
            raise StructuralError(f"rho missing on admissible triple {sorted(missing)[0]}")

    def fpdim(self, cd: CategoryData) -> float:
        return float(sum(cd.dims.dims[x] for x in self.support))

    def fingerprint(self):
        ent = tuple((k, round(abs(v), 8)) for k, v in sorted(self.rho.items()))
        return (self.support, ent)


@dataclass
class CondensedData:
    """Simple local modules over a connected commutative Q-system."""

    simples: list
    dims_over_Q: np.ndarray
    ring: object = None  # FusionRing of the condensed theory, when computed


def regular_module(A: AlgebraObject) -> ModuleObject:
    """A as a right module over itself (rho = mu)."""
    return ModuleObject(support=A.support, rho=dict(A.mu))


def verify_module(cd: CategoryData, A: AlgebraObject, X: ModuleObject) -> dict:
    """Residuals for module associativity and the unit axiom."""
    X.check_admissible(cd, A)
    rho_gens = {k: scalar_generator(cd, *k, v) for k, v in X.rho.items()}
    mu_gens = {k: scalar_generator(cd, *k, v) for k, v in A.mu.items()}
    unit_dev = max((abs(X.rho[k] - 1.0) for k in X.rho if k[1] == 0), default=0.0)

    assoc_dev = 0.0
    for x in X.support:
        for a in A.support:
            for b in A.support:
                for y in X.support:
                    src, tgt = (x, a, b), (y,)
                    lhs = [compose_values(cd, rho_gens[(z, b, y)],
                                          insert(cd, (), rho_gens[(x, a, z)], (b,)))
                           for z in X.support
                           if (x, a, z) in rho_gens and (z, b, y) in rho_gens]
                    rhs = [compose_values(cd, rho_gens[(x, c, y)],
                                          insert(cd, (x,), mu_gens[(a, b, c)], ()))
                           for c in A.support
                           if (a, b, c) in mu_gens and (x, c, y) in rho_gens]
                    if lhs or rhs:
                        assoc_dev = max(assoc_dev, _max_dev(
                            cd, _sum_values(cd, lhs, src, tgt),
                            _sum_values(cd, rhs, src, tgt)))
    scale = max(1.0, max((abs(v) for v in X.rho.values()), default=1.0) ** 2)
    tol = max(cd.tolerance * 100, 1e-9)
    return {"associativity": assoc_dev / scale, "unit": unit_dev,
            "passed": assoc_dev / scale < tol and unit_dev < tol}


def is_local(cd: CategoryData, A: AlgebraObject, X: ModuleObject):
    """(passed, residual): the action is invariant under the double braiding.

    Componentwise, rho^{xa}_y (R^{xa}_y R^{ax}_y - 1) must vanish on every
    admissible triple.
    """
    if cd.R is None:
        raise PreconditionError("locality requires R-symbols")
    residual = 0.0
    for (x, a, y), v in X.rho.items():
        residual = max(residual,
                       abs(v * (cd.rval(x, a, y) * cd.rval(a, x, y) - 1.0)))
    tol = max(cd.tolerance * 100, 1e-9)
    return residual < tol, residual


def _sector_entry(cd, x, b, a, c, y1, y2, coeff):
    """Matrix element of id_x (x) mu-vertex from sector (y1, b) to (y2, c).

    The vertex is b (x) a -> c with the given coefficient; entry is the block
    value of [x, b, a] -> [x, c] at total y2, column path (x, y1, y2).
    """
    mv = insert(cd, (x,), scalar_generator(cd, b, a, c, coeff), ())
    blk = mv.block(cd.ring, y2)
    if not blk.size:
        return 0.0
    cols = paths(cd.ring, (x, b, a)).get(y2, [])
    key = (x, y1, y2)
    if key not in cols:
        return 0.0
    return complex(blk[0, cols.index(key)])


def _induced_action(cd, A, x):
    """Action data of the induced module x (x) A.

    sectors[y] is the ordered basis {b in supp A : N^y_{xb} = 1} of the
    y-component; act[a][(y2, y1)] is the matrix of the a-action from the
    y1 sector to the y2 sector.
    """
    ring = cd.ring
    sectors = {}
    for b in A.support:
        for y in ring.channels(x, b):
            sectors.setdefault(y, []).append(b)
    sectors = {y: sorted(bs) for y, bs in sectors.items()}
    act = {}
    for a in A.support:
        mats = {}
        for y1, bs in sectors.items():
            for y2 in ring.channels(y1, a):
                if y2 not in sectors:
                    continue
                cs = sectors[y2]
                m = np.zeros((len(cs), len(bs)), dtype=complex)
                for j, b in enumerate(bs):
                    for i, c in enumerate(cs):
                        if (b, a, c) in A.mu:
                            m[i, j] = _sector_entry(cd, x, b, a, c, y1, y2,
                                                    A.mu[(b, a, c)])
                mats[(y2, y1)] = m
        act[a] = mats
    return sectors, act


def _commutant_generators(cd, A, x, sectors):
    """End_A(x (x) A) via Frobenius reciprocity: one generator per a with
    N^x_{xa} = 1, acting sector-diagonally."""
    ring = cd.ring
    gens = []
    for a in A.support:
        if not ring.N[x, a, x]:
            continue
        f_a = path_vector(cd, (x, a), x, (x, x))
        mats = {}
        for y, bs in sectors.items():
            m = np.zeros((len(bs), len(bs)), dtype=complex)
            for j, b in enumerate(bs):
                for i, c in enumerate(bs):
                    if (a, b, c) not in A.mu:
                        continue
                    mv = compose_values(
                        cd,
                        insert(cd, (x,), scalar_generator(cd, a, b, c, A.mu[(a, b, c)]), ()),
                        insert(cd, (), f_a, (b,)))
                    blk = mv.block(ring, y)
                    if blk.size:
                        cols = paths(ring, (x, b)).get(y, [])
                        if (x, y) in cols:
                            m[i, j] = blk[0, cols.index((x, y))]
            mats[y] = m
        gens.append(mats)
    return gens


def free_module_decomposition(cd, A, x, seed=0, max_rounds=5):
    """Simple submodules of x (x) A.

    A seeded random Hermitian element of the commutant is diagonalized per
    sector; eigenvalue groups across sectors are the simple summands.  A
    summand whose underlying object acquires multiplicity is out of scope
    and raises.
    """
    ring = cd.ring
    sectors, act = _induced_action(cd, A, x)
    ys = sorted(sectors)
    gens = _commutant_generators(cd, A, x, sectors)
    rng = np.random.default_rng((seed, x, 977))
    for attempt in range(max_rounds):
        coeff = rng.standard_normal(len(gens)) + 1j * rng.standard_normal(len(gens))
        H = {}
        for y in ys:
            n = len(sectors[y])
            h = np.zeros((n, n), dtype=complex)
            for ci, g in zip(coeff, gens):
                h += ci * g[y]
            H[y] = h + h.conj().T
        pairs = []
        for y in ys:
            w, U = np.linalg.eigh(H[y])
            for i, lam in enumerate(w):
                pairs.append((float(lam), y, U[:, i]))
        pairs.sort(key=lambda t: t[0])
        gap = 1e-6 * max(1.0, max(abs(p[0]) for p in pairs))
        groups = []
        for lam, y, vec in pairs:
            if groups and abs(lam - groups[-1][0]) < gap:
                groups[-1][1].append((y, vec))
            else:
                groups.append((lam, [(y, vec)]))
        modules = []
        ok = True
        for _lam, members in groups:
            per_y = {}
            for y, vec in members:
                per_y.setdefault(y, []).append(vec)
            if any(len(v) > 1 for v in per_y.values()):
                ok = False  # collision between distinct simples, or multiplicity
                break
            support = tuple(sorted(per_y))
            rho = {}
            for y1 in support:
                u1 = per_y[y1][0]
                for a in A.support:
                    for y2 in ring.channels(y1, a):
                        if y2 not in support:
                            continue
                        m = act[a].get((y2, y1))
                        if m is None:
                            continue
                        rho[(y1, a, y2)] = complex(per_y[y2][0].conj() @ m @ u1)
            mod = ModuleObject(support=support, rho=rho)
            if not _action_connected(mod):
                # two distinct simples merged by an eigenvalue collision
                ok = False
                break
            modules.append(mod)
        if not ok:
            continue
        if all(verify_module(cd, A, mod)["passed"] for mod in modules):
            return modules
    raise StructuralError(
        f"could not split x (x) A for x={x}: persistent eigenvalue collisions "
        "or underlying multiplicity (out of scope)")


def _action_connected(mod: ModuleObject, tol=1e-8) -> bool:
    """Simple modules have connected action graphs; a disconnected graph
    means the candidate splits into invariant pieces."""
    if len(mod.support) <= 1:
        return True
    adj = {x: set() for x in mod.support}
    for (x, a, y), v in mod.rho.items():
        if x != y and abs(v) > tol:
            adj[x].add(y)
            adj[y].add(x)
    seen = {mod.support[0]}
    stack = [mod.support[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(mod.support)


def _unitarily_equivalent(cd, A, m1: ModuleObject, m2: ModuleObject, tol=1e-6):
    """Equality up to a diagonal phase gauge rho -> u_y rho^{xa}_y u_x^{-1}."""
    if m1.support != m2.support or set(m1.rho) != set(m2.rho):
        return False
    for k in m1.rho:
        if abs(abs(m1.rho[k]) - abs(m2.rho[k])) > tol:
            return False
    phases = {m1.support[0]: 1.0 + 0j}
    edges = [(x, y, m2.rho[(x, a, y)] / m1.rho[(x, a, y)])
             for (x, a, y) in sorted(m1.rho) if abs(m1.rho[(x, a, y)]) > tol]
    changed = True
    while changed:
        changed = False
        for xx, yy, ratio in edges:
            if xx in phases and yy not in phases:
                phases[yy] = phases[xx] * ratio
                changed = True
            elif yy in phases and xx not in phases:
                phases[xx] = phases[yy] / ratio
                changed = True
    if set(phases) != set(m1.support):
        return True  # action graph disconnected; magnitudes already agree
    return all(abs(phases[yy] / phases[xx] - ratio) <= 10 * tol
               for xx, yy, ratio in edges)


def enumerate_local_modules(cd: CategoryData, A: AlgebraObject,
                            seed=0, with_ring=False) -> CondensedData:
    """All simple local modules over a connected commutative Q-system.

    Complete by Frobenius reciprocity; deduplicated up to unitary
    equivalence and deterministically ordered by (support, |rho| data).
    """
    if not is_connected(A):
        raise PreconditionError("algebra must be connected")
    qrep = verify_qsystem(cd, A)
    if not qrep.passed:
        raise PreconditionError(f"algebra fails Q-system axioms: {qrep.residuals}")
    comm, resid = is_commutative(cd, A)
    if not comm:
        raise PreconditionError(f"algebra is not commutative (residual {resid:.3e})")
    dQ = algebra_dim(cd, A)
    bound = dQ * np.sqrt(cd.dims.global_dim) + 1e-6
    found = []
    for x in range(cd.ring.rank):
        for mod in free_module_decomposition(cd, A, x, seed=seed):
            loc, _ = is_local(cd, A, mod)
            if not loc:
                continue
            if mod.fpdim(cd) > bound:
                raise StructuralError(
                    f"module dimension {mod.fpdim(cd):.6f} exceeds the "
                    f"enumeration bound {bound:.6f}")
            if not any(_unitarily_equivalent(cd, A, mod, got) for got in found):
                found.append(mod)
    found.sort(key=lambda m: m.fingerprint())
    data = CondensedData(
        simples=found,
        dims_over_Q=np.array([m.fpdim(cd) / dQ for m in found]))
    if with_ring:
        data.ring = _condensed_ring(cd, A, data)
    return data


def _left_action_gen(cd, Y: ModuleObject, a, y, y2):
    """Left action of the algebra summand a on Y, defined via the braiding."""
    lam = cd.rval(a, y, y2) * Y.rho[(y, a, y2)]
    return scalar_generator(cd, a, y, y2, lam)


def _projector_block(cd, A, X, Y, t, pairs, dQ):
    """Block of the canonical projector X (x) Y -> X (x)_Q Y at channel t."""
    ring = cd.ring
    P = np.zeros((len(pairs), len(pairs)), dtype=complex)
    for a in A.support:
        ab = ring.dual[a]
        wmu = np.conj(A.mu.get((a, ab, 0), 0.0))
        if wmu == 0:
            continue
        emb = path_vector(cd, (a, ab), 0, (a, 0))
        for ci, (x1, y1) in enumerate(pairs):
            for ri, (x2, y2) in enumerate(pairs):
                if (x1, a, x2) not in X.rho or (y1, ab, y2) not in Y.rho:
                    continue
                if not ring.N[ab, y1, y2]:
                    continue
                rx = scalar_generator(cd, x1, a, x2, X.rho[(x1, a, x2)])
                ly = _left_action_gen(cd, Y, ab, y1, y2)
                mv = compose_values(cd, tensor_values(cd, rx, ly),
                                    insert(cd, (x1,), emb, (y1,)))
                blk = mv.block(ring, t)
                if blk.size:
                    P[ri, ci] += wmu * blk[0, 0] / dQ
    return P


def local_fusion(cd: CategoryData, A: AlgebraObject, X: ModuleObject,
                 Y: ModuleObject, condensed: CondensedData | None = None,
                 seed=0):
    """Decompose X (x)_Q Y against the enumerated simple local modules.

    Returns (condensed, multiplicities).  Multiplicities are read off from
    the per-channel ranks of the canonical projector and must come out
    integral to within 0.01.
    """
    if condensed is None:
        condensed = enumerate_local_modules(cd, A, seed=seed)
    ring = cd.ring
    dQ = algebra_dim(cd, A)
    ranks = np.zeros(ring.rank)
    for t in range(ring.rank):
        pairs = [(x, y) for x in X.support for y in Y.support if ring.N[x, y, t]]
        if not pairs:
            continue
        P = _projector_block(cd, A, X, Y, t, pairs, dQ)
        dev = np.max(np.abs(P @ P - P))
        if dev > 1e-6:
            raise StructuralError(f"canonical projector not idempotent (dev {dev:.2e})")
        sv = np.linalg.svd(P, compute_uv=False)
        ranks[t] = int(np.sum(sv > 0.5))
    if not condensed.simples:
        raise StructuralError("no simple local modules to decompose against")
    indicator = np.zeros((ring.rank, len(condensed.simples)))
    for j, z in enumerate(condensed.simples):
        for t in z.support:
            indicator[t, j] = 1.0
    from scipy.optimize import nnls
    mults, _ = nnls(indicator, ranks)
    rounded = np.round(mults).astype(int)
    if np.max(np.abs(mults - rounded)) > 0.01 or np.max(
            np.abs(indicator @ rounded - ranks)) > 0.01:
        raise StructuralError(
            f"non-integral multiplicities {mults} for channel ranks {ranks}")
    return condensed, rounded


def local_double_braid_trace(cd, A, X: ModuleObject, Y: ModuleObject) -> complex:
    """Trace of the inherited double braiding on X (x)_Q Y.

    This pairwise observable is the only braiding data of the condensed
    theory exposed here; condensed R-symbols are not computed.
    """
    ring = cd.ring
    dQ = algebra_dim(cd, A)
    total = 0.0 + 0.0j
    for t in range(ring.rank):
        pairs = [(x, y) for x in X.support for y in Y.support if ring.N[x, y, t]]
        if not pairs:
            continue
        P = _projector_block(cd, A, X, Y, t, pairs, dQ)
        D = np.diag([cd.rval(x, y, t) * cd.rval(y, x, t) for (x, y) in pairs])
        total += cd.dims.dims[t] * np.trace(P @ D)
    return complex(total / dQ)


def condensation_identity_check(cd: CategoryData, A: AlgebraObject, seed=0) -> dict:
    """Size identities of the condensed theory.

    The simple locals must satisfy sum FPdim(underlying)^2 = global_dim(C);
    a Lagrangian algebra (algebra_dim^2 = global_dim) must condense to a
    single simple.
    """
    if not is_nondegenerate(cd):
        raise PreconditionError("condensation identities need a nondegenerate braiding")
    cond = enumerate_local_modules(cd, A, seed=seed)
    total = float(sum(m.fpdim(cd) ** 2 for m in cond.simples))
    D = cd.dims.global_dim
    dQ = algebra_dim(cd, A)
    lagrangian = abs(dQ ** 2 - D) < 1e-6
    ok = abs(total - D) < 1e-6 and (not lagrangian or len(cond.simples) == 1)
    return {
        "sum_fpdim_sq": total, "global_dim": D, "identity_ok": abs(total - D) < 1e-6,
        "lagrangian": lagrangian, "n_simples": len(cond.simples), "passed": ok,
        "condensed": cond,
    }


def _condensed_ring(cd, A, condensed: CondensedData):
    """Fusion ring of the condensed theory via pairwise local_fusion."""
    from .fusion_ring import FusionRing
    n = len(condensed.simples)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, Xi in enumerate(condensed.simples):
        for j, Yj in enumerate(condensed.simples):
            _, mult = local_fusion(cd, A, Xi, Yj, condensed=condensed)
            N[i, j, :len(mult)] = mult
    reg = regular_module(A)
    unit_idx = next(i for i, m in enumerate(condensed.simples)
                    if _unitarily_equivalent(cd, A, m, reg))
    order = [unit_idx] + [i for i in range(n) if i != unit_idx]
    N = N[np.ix_(order, order, order)]
    labels = tuple("Q" if i == 0 else f"X{i}" for i in range(n))
    dual = []
    for i in range(n):
        cands = [j for j in range(n) if N[i, j, 0] >= 1]
        dual.append(cands[0] if cands else i)
    return FusionRing(rank=n, labels=labels, dual=tuple(dual), N=N)


def load_module(cd: CategoryData, path) -> ModuleObject:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != 1:
        raise StructuralError(f"unsupported module format {doc.get('format')!r}")
    from .category_data import _decode_value
    support = tuple(cd.ring.label_index(x) for x in doc["support"])
    rho = {}
    for x, a, y, v in doc["rho"]:
        rho[(cd.ring.label_index(x), cd.ring.label_index(a),
             cd.ring.label_index(y))] = _decode_value(v)
    return ModuleObject(support=support, rho=rho)


def save_module(cd: CategoryData, X: ModuleObject, path):
    doc = {
        "format": 1,
        "support": [cd.ring.labels[x] for x in X.support],
        "rho": [[cd.ring.labels[x], cd.ring.labels[a], cd.ring.labels[y],
                 [complex(v).real, complex(v).imag]]
                for (x, a, y), v in sorted(X.rho.items())],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
