"""Q-systems as multiplicity-free algebra objects.

An AlgebraObject stores multiplication coefficients mu^{ab}_c in orthonormal
fusion-tree components, in the unit-normalized gauge mu^{0a}_a = mu^{a0}_a = 1.
The physically normalized multiplication of the corresponding Q-system is
m_phys = m / sqrt(dim Q) with unit i = sqrt(dim Q) times the unit inclusion,
so unitary separability reads

    sum_{a,b} |mu^{ab}_c|^2 = dim Q        for every c in the support,

and that is what the verifier checks (as m_phys m_phys^dag = id).
Associativity, unitality and the Frobenius relations are scale-free in this
gauge and are checked by evaluating the corresponding diagram words with the
mu components bound as generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .category_data import CategoryData, deligne_product_data, monoidal_opposite
from .diagram_eval import (MorphismValue, cap_morphism, compose_values,
                           dagger_value, insert, path_vector,
                           scalar_generator, tensor_values)
from .errors import PreconditionError, StructuralError

__all__ = [
    "AlgebraObject", "QSystemReport", "verify_qsystem", "is_connected",
    "is_commutative", "canonical_algebra", "symmetric_enveloping",
    "algebra_dim", "trivial_algebra", "group_algebra", "load_algebra",
    "save_algebra", "solve_support_algebra",
]


@dataclass
class AlgebraObject:
    """Support labels (unit required, multiplicity one) plus mu^{ab}_c."""

    support: tuple
    mu: dict  # (a, b, c) -> complex

    def __post_init__(self):
        self.support = tuple(sorted(int(x) for x in self.support))
        if 0 not in self.support:
            raise StructuralError("algebra support must contain the unit label")
        if len(set(self.support)) != len(self.support):
            raise StructuralError("algebra support has a repeated label")
        self.mu = {tuple(k): complex(v) for k, v in self.mu.items()}

    def check_admissible(self, cd: CategoryData):
        """mu must be defined on exactly the admissible support triples."""
        ring = cd.ring
        inside = set(self.support)
        admissible = {(a, b, c) for a in self.support for b in self.support
                      for c in ring.channels(a, b) if c in inside}
        extra = set(self.mu) - admissible
        missing = admissible - set(self.mu)
        if extra:
            raise StructuralError(f"mu entry on inadmissible triple {sorted(extra)[0]}")
        if missing:
            raise StructuralError(f"mu missing on admissible triple {sorted(missing)[0]}")


@dataclass
class QSystemReport:
    associativity: float
    unitality: float
    frobenius: float
    separability: float
    connected: bool
    tolerance: float

    @property
    def residuals(self):
        return {"associativity": self.associativity, "unitality": self.unitality,
                "frobenius": self.frobenius, "separability": self.separability}

    @property
    def passed(self):
        return (self.connected
                and all(r < self.tolerance for r in self.residuals.values()))


def algebra_dim(cd: CategoryData, A: AlgebraObject) -> float:
    return float(sum(cd.dims.dims[c] for c in A.support))


def trivial_algebra() -> AlgebraObject:
    return AlgebraObject(support=(0,), mu={(0, 0, 0): 1.0})


def group_algebra(cd: CategoryData, support) -> AlgebraObject:
    """mu = 1 on every admissible triple of a fusion-closed support."""
    support = tuple(sorted(cd.ring.label_index(x) for x in support))
    inside = set(support)
    mu = {}
    for a in support:
        for b in support:
            for c in cd.ring.channels(a, b):
                if c not in inside:
                    raise StructuralError(f"support not closed: {a} x {b} contains {c}")
                mu[(a, b, c)] = 1.0
    return AlgebraObject(support=support, mu=mu)


def _mu_generators(cd, A):
    return {k: scalar_generator(cd, k[0], k[1], k[2], v) for k, v in A.mu.items()}


def _max_dev(cd, f: MorphismValue, g: MorphismValue) -> float:
    ring = cd.ring
    dev = 0.0
    for c in set(f.blocks) | set(g.blocks):
        diff = f.block(ring, c) - g.block(ring, c)
        if diff.size:
            dev = max(dev, float(np.max(np.abs(diff))))
    return dev


def _sum_values(cd, values, source, target):
    from .diagram_eval import paths
    ring = cd.ring
    blocks = {}
    for c in set(paths(ring, source)) & set(paths(ring, target)):
        blocks[c] = sum((v.block(ring, c) for v in values),
                        np.zeros((len(paths(ring, target)[c]),
                                  len(paths(ring, source)[c])), dtype=complex))
    return MorphismValue(source=source, target=target, blocks=blocks)


def verify_qsystem(cd: CategoryData, A: AlgebraObject) -> QSystemReport:
    """Check the five Q-system axioms by diagram evaluation.

    Residuals are maxima of blockwise deviations; separability is measured
    on the physically normalized multiplication m / sqrt(dim Q).
    """
    A.check_admissible(cd)
    gens = _mu_generators(cd, A)
    supp = A.support
    ring = cd.ring
    dQ = algebra_dim(cd, A)

    unit_dev = max(abs(A.mu[k] - 1.0) for k in A.mu if k[0] == 0 or k[1] == 0)

    assoc_dev = 0.0
    for a in supp:
        for b in supp:
            for c in supp:
                for d in supp:
                    src, tgt = (a, b, c), (d,)
                    lhs = []
                    for e in supp:
                        if (a, b, e) in gens and (e, c, d) in gens:
                            lhs.append(compose_values(
                                cd, gens[(e, c, d)],
                                insert(cd, (), gens[(a, b, e)], (c,))))
                    rhs = []
                    for f in supp:
                        if (b, c, f) in gens and (a, f, d) in gens:
                            rhs.append(compose_values(
                                cd, gens[(a, f, d)],
                                insert(cd, (a,), gens[(b, c, f)], ())))
                    if lhs or rhs:
                        assoc_dev = max(assoc_dev, _max_dev(
                            cd, _sum_values(cd, lhs, src, tgt),
                            _sum_values(cd, rhs, src, tgt)))

    frob_dev = 0.0
    for a in supp:
        for b in supp:
            for c in supp:
                for d in supp:
                    src, tgt = (a, b), (c, d)
                    mid = [compose_values(cd, dagger_value(gens[(c, d, e)]),
                                          gens[(a, b, e)])
                           for e in supp if (a, b, e) in gens and (c, d, e) in gens]
                    left = [compose_values(
                        cd, insert(cd, (c,), gens[(g, b, d)], ()),
                        insert(cd, (), dagger_value(gens[(c, g, a)]), (b,)))
                        for g in supp if (c, g, a) in gens and (g, b, d) in gens]
                    right = [compose_values(
                        cd, insert(cd, (), gens[(a, g, c)], (d,)),
                        insert(cd, (a,), dagger_value(gens[(g, d, b)]), ()))
                        for g in supp if (a, g, c) in gens and (g, d, b) in gens]
                    if mid or left or right:
                        vm = _sum_values(cd, mid, src, tgt)
                        vl = _sum_values(cd, left, src, tgt)
                        vr = _sum_values(cd, right, src, tgt)
                        frob_dev = max(frob_dev, _max_dev(cd, vl, vm),
                                       _max_dev(cd, vr, vm))

    sep_dev = 0.0
    for c in supp:
        total = sum(abs(v) ** 2 for (a, b, cc), v in A.mu.items() if cc == c)
        sep_dev = max(sep_dev, abs(total / dQ - 1.0))

    scale = max(1.0, max(abs(v) for v in A.mu.values()) ** 2)
    return QSystemReport(
        associativity=assoc_dev / scale, unitality=unit_dev,
        frobenius=frob_dev / scale, separability=sep_dev,
        connected=is_connected(A), tolerance=max(cd.tolerance * 100, 1e-9))


def is_connected(A: AlgebraObject) -> bool:
    """Unit label occurs with multiplicity exactly one in the support."""
    return A.support.count(0) == 1


def is_commutative(cd: CategoryData, A: AlgebraObject):
    """(passed, residual) for mu^{ba}_c R^{ab}_c = mu^{ab}_c on all triples."""
    if cd.R is None:
        raise PreconditionError("commutativity requires R-symbols")
    residual = 0.0
    for (a, b, c), v in A.mu.items():
        residual = max(residual, abs(A.mu[(b, a, c)] * cd.rval(a, b, c) - v))
    tol = max(cd.tolerance * 100, 1e-9)
    return residual < tol, residual


def canonical_algebra(cd: CategoryData, x) -> AlgebraObject:
    """The Q-system on x (x) dual(x), with multiplication from the duality cap.

    Components are read off from the evaluated diagram id_x (x) cap (x) id
    and rescaled to the stored gauge.
    """
    xi = cd.ring.label_index(x)
    xb = cd.ring.dual[xi]
    ring = cd.ring
    support = ring.channels(xi, xb)
    if any(ring.N[xi, xb, c] > 1 for c in support):
        raise StructuralError(f"x (x) dual(x) has multiplicity for x={x}; out of scope")
    if support == [0]:
        return trivial_algebra()
    word = (xi, xb)
    m_raw = insert(cd, (xi,), cap_morphism(cd, xb), (xb,))
    dx = cd.dims.dims[xi]
    dQ = sum(cd.dims.dims[c] for c in support)
    mu = {}
    for a in support:
        ia = path_vector(cd, word, a, (xi, a))
        for b in support:
            ib = path_vector(cd, word, b, (xi, b))
            both = tensor_values(cd, ia, ib)
            for c in ring.channels(a, b):
                if c not in support:
                    continue
                pc = dagger_value(path_vector(cd, word, c, (xi, c)))
                val = compose_values(cd, pc, compose_values(cd, m_raw, both))
                coeff = complex(val.block(ring, c)[0, 0])
                mu[(a, b, c)] = coeff * np.sqrt(dQ) / np.sqrt(dx)
    # gauge-fix the unit channels to exactly 1
    unit_vals = [mu[k] for k in mu if k[0] == 0 or k[1] == 0]
    nu = unit_vals[0]
    if any(abs(v - nu) > 1e-8 for v in unit_vals):
        raise StructuralError("canonical algebra has non-constant unit channel; "
                              "cannot gauge-normalize")
    if abs(abs(nu) - 1.0) > 1e-8:
        raise StructuralError(f"canonical algebra unit channel has modulus {abs(nu)}")
    for (a, b, c), v in list(mu.items()):
        w = 1.0
        if a == 0:
            w /= nu
        if b == 0:
            w /= nu
        if c == 0:
            w *= nu
        mu[(a, b, c)] = v * w if (a == 0 or b == 0 or c == 0) else v
    return AlgebraObject(support=tuple(support), mu=mu)


def solve_support_algebra(cd: CategoryData, support, commutative=False,
                          seed=0, max_restarts=24) -> AlgebraObject:
    """Numerically solve for Q-system coefficients on a fusion-closed support.

    Residual system: associativity against the F-symbols, the Frobenius
    relations (precomputed recoupling tensors), unitary separability, and
    optionally commutativity.  Unit channels are pinned to 1.
    """
    from scipy.optimize import least_squares

    ring = cd.ring
    support = tuple(sorted(ring.label_index(x) for x in support))
    inside = set(support)
    triples = [(a, b, c) for a in support for b in support
               for c in ring.channels(a, b) if c in inside]
    fixed = {t: 1.0 + 0.0j for t in triples if t[0] == 0 or t[1] == 0}
    free = [t for t in triples if t not in fixed]
    dQ = float(sum(cd.dims.dims[c] for c in support))
    d = cd.dims.dims

    if not free:
        return AlgebraObject(support=support, mu=dict(fixed))

    # precompute Frobenius recoupling tensors with unit coefficients
    unit_gen = {t: scalar_generator(cd, *t, 1.0) for t in triples}
    frob_terms = []
    for a in support:
        for b in support:
            for c in support:
                for dd in support:
                    mid = [(e, compose_values(cd, dagger_value(unit_gen[(c, dd, e)]),
                                              unit_gen[(a, b, e)]))
                           for e in support if (a, b, e) in unit_gen
                           and (c, dd, e) in unit_gen]
                    left = [(g, compose_values(
                        cd, insert(cd, (c,), unit_gen[(g, b, dd)], ()),
                        insert(cd, (), dagger_value(unit_gen[(c, g, a)]), (b,))))
                        for g in support if (c, g, a) in unit_gen
                        and (g, b, dd) in unit_gen]
                    right = [(g, compose_values(
                        cd, insert(cd, (), unit_gen[(a, g, c)], (dd,)),
                        insert(cd, (a,), dagger_value(unit_gen[(g, dd, b)]), ())))
                        for g in support if (a, g, c) in unit_gen
                        and (g, dd, b) in unit_gen]
                    if mid or left or right:
                        frob_terms.append(((a, b, c, dd), mid, left, right))

    channels_all = {(a, b): ring.channels(a, b) for a in support for b in support}

    def unpack(xvec):
        mu = dict(fixed)
        for i, t in enumerate(free):
            mu[t] = xvec[2 * i] + 1j * xvec[2 * i + 1]
        return mu

    def residuals(xvec):
        mu = unpack(xvec)
        res = []
        # associativity over every admissible tree channel e
        for a in support:
            for b in support:
                for c in support:
                    for dd in support:
                        for e in channels_all[(a, b)]:
                            if not ring.N[e, c, dd]:
                                continue
                            lhs = (mu.get((a, b, e), 0.0) * mu.get((e, c, dd), 0.0)
                                   if e in inside else 0.0)
                            rhs = 0.0
                            for f in channels_all[(b, c)]:
                                if f in inside and ring.N[a, f, dd] and (a, f, dd) in mu:
                                    rhs += (cd.fval(a, b, c, dd, e, f)
                                            * mu[(b, c, f)] * mu[(a, f, dd)])
                            res.append(lhs - rhs)
        # Frobenius
        for (a, b, c, dd), mid, left, right in frob_terms:
            keys = set()
            for _, mv in mid + left + right:
                keys |= set(mv.blocks)
            for t in keys:
                vm = sum(mu[(a, b, e)] * np.conj(mu[(c, dd, e)])
                         * mv.block(ring, t)[0, 0]
                         for e, mv in mid if mv.block(ring, t).size)
                vl = sum(np.conj(mu[(c, g, a)]) * mu[(g, b, dd)]
                         * mv.block(ring, t)[0, 0]
                         for g, mv in left if mv.block(ring, t).size)
                vr = sum(mu[(a, g, c)] * np.conj(mu[(g, dd, b)])
                         * mv.block(ring, t)[0, 0]
                         for g, mv in right if mv.block(ring, t).size)
                res.append(vl - vm)
                res.append(vr - vm)
        # separability
        for c in support:
            res.append(sum(abs(mu[t]) ** 2 for t in triples if t[2] == c) - dQ)
        if commutative:
            for (a, b, c) in triples:
                res.append(mu[(b, a, c)] * cd.rval(a, b, c) - mu[(a, b, c)])
        out = np.empty(2 * len(res))
        out[0::2] = [z.real if isinstance(z, complex) else float(np.real(z)) for z in res]
        out[1::2] = [z.imag if isinstance(z, complex) else float(np.imag(z)) for z in res]
        return out

    rng = np.random.default_rng(seed)
    mags = np.array([np.sqrt(d[a] * d[b] * d[c] / dQ) for (a, b, c) in free])
    best = None
    for attempt in range(max_restarts):
        # magnitude heuristic with random phases; phase frustration is the
        # usual reason a single positive start stalls
        if attempt == 0:
            phases = np.zeros(len(free))
        else:
            phases = rng.uniform(0, 2 * np.pi, size=len(free))
        start = np.empty(2 * len(free))
        start[0::2] = mags * np.cos(phases)
        start[1::2] = mags * np.sin(phases)
        if attempt > 1:
            start *= 1 + 0.2 * rng.standard_normal(len(start))
        sol = least_squares(residuals, start, method="lm", xtol=1e-15, ftol=1e-15,
                            max_nfev=20_000)
        cost = float(np.sum(sol.fun ** 2))
        if best is None or cost < best[0]:
            best = (cost, sol.x)
        if cost < 1e-22:
            break
    cost, xbest = best
    if cost > 1e-18:
        raise StructuralError(
            f"no Q-system found on support {support} (residual {np.sqrt(cost):.2e})")
    return AlgebraObject(support=support, mu=unpack(xbest))


def symmetric_enveloping(cd: CategoryData):
    """The enveloping Q-system on the diagonal of op(C) (x) C.

    Returns (product_category, algebra); the support is {(c, c) : c}, and
    the multiplication is solved against the product F-symbols and then
    validated by verify_qsystem.
    """
    if cd.partial:
        raise PreconditionError("symmetric enveloping needs full F data")
    prod = deligne_product_data(monoidal_opposite(cd), cd)
    r2 = cd.ring.rank
    support = tuple(c * r2 + c for c in range(r2))
    alg = solve_support_algebra(prod, support)
    return prod, alg


def load_algebra(cd: CategoryData, path) -> AlgebraObject:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != 1:
        raise StructuralError(f"unsupported algebra format {doc.get('format')!r}")
    support = tuple(cd.ring.label_index(x) for x in doc["support"])
    from .category_data import _decode_value
    mu = {}
    for a, b, c, v in doc["mu"]:
        key = (cd.ring.label_index(a), cd.ring.label_index(b), cd.ring.label_index(c))
        mu[key] = _decode_value(v)
    return AlgebraObject(support=support, mu=mu)


def save_algebra(cd: CategoryData, A: AlgebraObject, path):
    doc = {
        "format": 1,
        "support": [cd.ring.labels[c] for c in A.support],
        "mu": [[cd.ring.labels[a], cd.ring.labels[b], cd.ring.labels[c],
                [complex(v).real, complex(v).imag]]
               for (a, b, c), v in sorted(A.mu.items())],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
