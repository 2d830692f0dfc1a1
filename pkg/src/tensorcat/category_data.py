"""Full categorical data: F-symbols, R-symbols, coherence validation and I/O.

All data is multiplicity-free: N^c_{ab} in {0, 1}.  F-symbols are stored in
the triangle-normalized unitary gauge, so any F with a unit leg equals 1 and
is synthesized rather than stored.  The F-move convention is

    |(ab)c -> d; e>  =  sum_f  F^{abc}_d[e, f]  |a(bc) -> d; f>

with e the channel of a*b and f the channel of b*c.  R^{ab}_c is the scalar
of the braiding sigma_{a,b}: a*b -> b*a on the channel c.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, StructuralError, ValidationFailure
from .fusion_ring import (FPDimData, FusionRing, deligne_product,
                          fp_dimensions, opposite_ring)

__all__ = [
    "FSymbolSet",
    "RSymbolSet",
    "CategoryData",
    "QuadraticForm",
    "verify_pentagon",
    "verify_hexagon",
    "pointed_from_quadratic_form",
    "kappa_of",
    "reverse_braiding",
    "monoidal_opposite",
    "deligne_product_data",
    "load_category",
    "save_category",
]


class FSymbolSet:
    """Associator entries (a,b,c,d,e,f) -> complex on admissible tuples.

    A tuple is admissible when N^e_{ab} = N^d_{ec} = N^f_{bc} = N^d_{af} = 1.
    Entries with a unit leg are not stored; ``value`` returns 1 for them.
    """

    def __init__(self, entries):
        self.entries = dict(entries)

    def value(self, a, b, c, d, e, f):
        if a == 0 or b == 0 or c == 0:
            return 1.0 + 0.0j
        try:
            return self.entries[(a, b, c, d, e, f)]
        except KeyError:
            raise StructuralError(
                f"missing F entry for admissible tuple {(a, b, c, d, e, f)}") from None

    def matrix(self, ring, a, b, c, d):
        """The unitary matrix [F^{abc}_d]_{e,f} with its index lists."""
        es = [e for e in ring.channels(a, b) if ring.N[e, c, d]]
        fs = [f for f in ring.channels(b, c) if ring.N[a, f, d]]
        mat = np.array([[self.value(a, b, c, d, e, f) for f in fs] for e in es],
                       dtype=complex) if es and fs else np.zeros((len(es), len(fs)), complex)
        return es, fs, mat


class RSymbolSet:
    """Braiding scalars (a,b,c) -> R^{ab}_c on channels with N^c_{ab} = 1."""

    def __init__(self, entries):
        self.entries = dict(entries)

    def value(self, a, b, c):
        if a == 0 or b == 0:
            return 1.0 + 0.0j
        try:
            return self.entries[(a, b, c)]
        except KeyError:
            raise StructuralError(f"missing R entry for admissible channel {(a, b, c)}") from None


@dataclass
class CategoryData:
    """A unitary fusion category skeleton: ring, dims, F and optional R.

    Treated as immutable after construction or load; safe to share
    read-only across threads.
    """

    ring: FusionRing
    dims: FPDimData
    F: FSymbolSet
    R: RSymbolSet | None = None
    tolerance: float = 1e-9
    name: str = ""
    partial: bool = False  # ring and dims only; F entries absent

    @property
    def braided(self):
        return self.R is not None

    def is_pointed(self, tol=None):
        tol = self.tolerance if tol is None else tol
        return bool(np.all(np.abs(self.dims.dims - 1.0) < tol))

    def fval(self, a, b, c, d, e, f):
        return self.F.value(a, b, c, d, e, f)

    def rval(self, a, b, c):
        if self.R is None:
            raise PreconditionError("category carries no braiding data")
        return self.R.value(a, b, c)


@dataclass(frozen=True)
class QuadraticForm:
    """A quadratic form on A = Z/n_1 + ... + Z/n_k.

    ``t[i]`` (mod 2 n_i) sets the restriction to the i-th factor via
    q(a e_i) = exp(pi i t_i a^2 / n_i); ``cross[(i, j)]`` (i < j) sets the
    pairing between factors via b(e_i, e_j) = exp(2 pi i c_ij / gcd(n_i, n_j)).
    """

    group: tuple
    t: tuple
    cross: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "group", tuple(int(n) for n in self.group))
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))
        object.__setattr__(self, "cross",
                           {tuple(k): int(v) for k, v in dict(self.cross).items()})
        if len(self.t) != len(self.group):
            raise StructuralError("need one t parameter per cyclic factor")
        for (i, j) in self.cross:
            if not 0 <= i < j < len(self.group):
                raise StructuralError(f"cross key {(i, j)} must have 0 <= i < j < k")

    @property
    def order(self):
        return math.prod(self.group)

    def elements(self):
        out = [()]
        for n in self.group:
            out = [e + (a,) for e in out for a in range(n)]
        return out

    def r_value(self, g, h):
        """The braiding scalar R(g, h) of the associated pointed category."""
        phase = 0.0
        for i, n in enumerate(self.group):
            phase += self.t[i] * g[i] * h[i] / n
        for (i, j), cij in self.cross.items():
            gcd = math.gcd(self.group[i], self.group[j])
            phase += 2.0 * cij * g[i] * h[j] / gcd
        return cmath.exp(1j * math.pi * phase)

    def q_value(self, g):
        return self.r_value(g, g)

    def validate(self):
        """Check q(g) = q(-g) and that b(g,h) = q(g+h)/(q(g)q(h)) is a bicharacter."""
        report = []
        els = self.elements()
        ns = self.group

        def neg(g):
            return tuple((-a) % n for a, n in zip(g, ns))

        def add(g, h):
            return tuple((a + b) % n for a, b, n in zip(g, h, ns))

        def q(g):
            return self.q_value(g)

        def b(g, h):
            return q(add(g, h)) / (q(g) * q(h))

        for g in els:
            if abs(q(g) - q(neg(g))) > 1e-9:
                report.append(f"q({g}) != q(-{g})")
        gens = [tuple(1 if j == i else 0 for j in range(len(ns))) for i in range(len(ns))]
        for g in gens:
            for h in els:
                for k in els:
                    if abs(b(g, add(h, k)) - b(g, h) * b(g, k)) > 1e-9:
                        report.append(f"b({g}, -) not multiplicative at {h}+{k}")
                        break
                else:
                    continue
                break
        return report


class _SymbolTable:
    """Vectorized lookup of F- or R-symbol dictionaries by packed integer key."""

    def __init__(self, entries, rank, arity, unit_positions):
        self.rank = rank
        self.arity = arity
        self.unit_positions = unit_positions
        keys = np.empty(len(entries), dtype=np.int64)
        vals = np.empty(len(entries), dtype=complex)
        for i, (key, v) in enumerate(entries.items()):
            keys[i] = self.pack(*key)
            vals[i] = v
        order = np.argsort(keys)
        self.keys = keys[order]
        self.vals = vals[order]

    def pack(self, *idx):
        out = 0
        for x in idx:
            out = out * self.rank + int(x)
        return out

    def pack_arrays(self, cols):
        out = np.zeros(len(cols[0]), dtype=np.int64)
        for col in cols:
            out = out * self.rank + col.astype(np.int64)
        return out

    def lookup(self, cols, what):
        """Values at the given index columns; unit legs give 1 exactly."""
        triangle = np.zeros(len(cols[0]), dtype=bool)
        for pos in self.unit_positions:
            triangle |= cols[pos] == 0
        out = np.ones(len(cols[0]), dtype=complex)
        rest = ~triangle
        if rest.any():
            packed = self.pack_arrays([c[rest] for c in cols])
            pos = np.searchsorted(self.keys, packed)
            pos = np.clip(pos, 0, max(len(self.keys) - 1, 0))
            hit = (self.keys[pos] == packed) if len(self.keys) else np.zeros(
                len(packed), dtype=bool)
            if not np.all(hit):
                bad = np.argmin(hit)
                raise StructuralError(
                    f"missing {what} entry for admissible tuple "
                    f"{self._unpack(packed[bad])}")
            out[rest] = self.vals[pos]
        return out

    def _unpack(self, key):
        idx = []
        for _ in range(self.arity):
            idx.append(int(key % self.rank))
            key //= self.rank
        return tuple(reversed(idx))


class _ChannelJoin:
    """Expand rows by the fusion channels of a pair of label columns."""

    def __init__(self, ring):
        r = ring.rank
        trip = np.argwhere(ring.N > 0)
        keys = trip[:, 0] * r + trip[:, 1]
        order = np.argsort(keys, kind="stable")
        self.c_sorted = trip[order, 2].astype(np.int64)
        self.counts = ring.N.sum(axis=2).reshape(-1).astype(np.int64)
        self.starts = np.concatenate([[0], np.cumsum(self.counts)[:-1]])
        self.rank = r

    def join(self, acol, bcol):
        """Return (row_idx, c) pairs with N^c_{a,b} = 1 for each input row."""
        keys = acol.astype(np.int64) * self.rank + bcol.astype(np.int64)
        counts = self.counts[keys]
        total = int(counts.sum())
        row_idx = np.repeat(np.arange(len(keys)), counts)
        cum = np.cumsum(counts)
        local = np.arange(total) - np.repeat(cum - counts, counts)
        cvals = self.c_sorted[self.starts[keys][row_idx] + local]
        return row_idx, cvals


def _is_group_ring(ring):
    return bool((ring.N.sum(axis=2) == 1).all())


def _pointed_tables(cd):
    """Group product table and dense F(a,b,c) array for a pointed category."""
    ring = cd.ring
    r = ring.rank
    P = np.argmax(ring.N, axis=2)
    FF = np.ones((r, r, r), dtype=complex)
    for (a, b, c, d, e, f), v in cd.F.entries.items():
        FF[a, b, c] = v
    return P, FF


def _pentagon_pointed(cd) -> list:
    """Dense cocycle check F(ab,c,d) F(a,b,cd) = F(a,b,c) F(a,bc,d) F(b,c,d)."""
    ring = cd.ring
    r = ring.rank
    P, FF = _pointed_tables(cd)
    a, b, c, d = np.ogrid[:r, :r, :r, :r]
    ab = P[a, b]          # broadcasts to (r, r, 1, 1)
    cdl = P[c, d]
    bc = P[b, c]
    lhs = FF[ab, c, d] * FF[a, b, cdl]
    rhs = FF[a, b, c] * FF[a, bc, d] * FF[b, c, d]
    resid = np.abs(lhs - rhs)
    report = []
    for ia, ib, ic, id_ in np.argwhere(resid > cd.tolerance):
        e = P[P[P[ia, ib], ic], id_]
        f, g = P[ia, ib], P[P[ia, ib], ic]
        l, k = P[ic, id_], P[ib, P[ic, id_]]
        report.append(
            "pentagon: (a,b,c,d,e;f,g,k,l)="
            f"({ia},{ib},{ic},{id_},{e};{f},{g},{k},{l}) "
            f"residual={resid[ia, ib, ic, id_]:.3e}")
    return report


def verify_pentagon(cd: CategoryData) -> list:
    """All multiplicity-free pentagon instances

        F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]

    Returns one report line per violated instance, ordered by index tuple.
    Fully vectorized; agrees with the reference loop implementation.
    """
    ring = cd.ring
    r = ring.rank
    if _is_group_ring(ring):
        return _pentagon_pointed(cd)
    join = _ChannelJoin(ring)
    ftab = _SymbolTable(cd.F.entries, r, 6, unit_positions=(0, 1, 2))

    trip = np.argwhere(ring.N > 0).astype(np.int64)  # (a, b, f)
    a, b, f = trip[:, 0], trip[:, 1], trip[:, 2]
    # extend by c and g with N^g_{fc} = 1
    n_rows = len(a)
    rep = np.repeat(np.arange(n_rows), r)
    c = np.tile(np.arange(r, dtype=np.int64), n_rows)
    a, b, f = a[rep], b[rep], f[rep]
    idx, g = join.join(f, c)
    a, b, f, c = a[idx], b[idx], f[idx], c[idx]
    # extend by d and e with N^e_{gd} = 1
    n_rows = len(a)
    rep = np.repeat(np.arange(n_rows), r)
    d = np.tile(np.arange(r, dtype=np.int64), n_rows)
    a, b, f, c, g = a[rep], b[rep], f[rep], c[rep], g[rep]
    idx, e = join.join(g, d)
    a, b, f, c, g, d = a[idx], b[idx], f[idx], c[idx], g[idx], d[idx]
    # l with N^l_{cd} = 1 and N^e_{fl} = 1
    idx, l = join.join(c, d)
    cols = [a[idx], b[idx], f[idx], c[idx], g[idx], d[idx], e[idx], l]
    keep = ring.N[cols[2], cols[7], cols[6]] > 0
    a, b, f, c, g, d, e, l = (col[keep] for col in cols)
    # k with N^k_{bl} = 1 and N^e_{ak} = 1
    idx, k = join.join(b, l)
    cols = [a[idx], b[idx], f[idx], c[idx], g[idx], d[idx], e[idx], l[idx], k]
    keep = ring.N[cols[0], cols[8], cols[6]] > 0
    a, b, f, c, g, d, e, l, k = (col[keep] for col in cols)

    lhs = (ftab.lookup([f, c, d, e, g, l], "F")
           * ftab.lookup([a, b, l, e, f, k], "F"))
    rhs = np.zeros(len(a), dtype=complex)
    idx, h = join.join(b, c)
    keep = (ring.N[a[idx], h, g[idx]] > 0) & (ring.N[h, d[idx], k[idx]] > 0)
    idx, h = idx[keep], h[keep]
    terms = (ftab.lookup([a[idx], b[idx], c[idx], g[idx], f[idx], h], "F")
             * ftab.lookup([a[idx], h, d[idx], e[idx], g[idx], k[idx]], "F")
             * ftab.lookup([b[idx], c[idx], d[idx], k[idx], h, l[idx]], "F"))
    rhs = (np.bincount(idx, weights=terms.real, minlength=len(a))
           + 1j * np.bincount(idx, weights=terms.imag, minlength=len(a)))

    resid = np.abs(lhs - rhs)
    bad = np.nonzero(resid > cd.tolerance)[0]
    order = sorted(bad, key=lambda i: (int(a[i]), int(b[i]), int(c[i]), int(d[i]),
                                       int(e[i]), int(f[i]), int(g[i]),
                                       int(k[i]), int(l[i])))
    return [
        "pentagon: (a,b,c,d,e;f,g,k,l)="
        f"({a[i]},{b[i]},{c[i]},{d[i]},{e[i]};{f[i]},{g[i]},{k[i]},{l[i]}) "
        f"residual={resid[i]:.3e}" for i in order]


def _verify_pentagon_loops(cd: CategoryData) -> list:
    """Reference implementation with plain loops (used as a testing oracle)."""
    ring = cd.ring
    tol = cd.tolerance
    r = ring.rank
    ch = [[ring.channels(a, b) for b in range(r)] for a in range(r)]
    fval = cd.fval
    report = []
    for a in range(r):
        for b in range(r):
            for f in ch[a][b]:
                for c in range(r):
                    for g in ch[f][c]:
                        for d in range(r):
                            for e in ch[g][d]:
                                for l in ch[c][d]:
                                    if not ring.N[f, l, e]:
                                        continue
                                    for k in ch[b][l]:
                                        if not ring.N[a, k, e]:
                                            continue
                                        lhs = fval(f, c, d, e, g, l) * fval(a, b, l, e, f, k)
                                        rhs = 0.0
                                        for h in ch[b][c]:
                                            if ring.N[a, h, g] and ring.N[h, d, k]:
                                                rhs += (fval(a, b, c, g, f, h)
                                                        * fval(a, h, d, e, g, k)
                                                        * fval(b, c, d, k, h, l))
                                        if abs(lhs - rhs) > tol:
                                            report.append(
                                                "pentagon: (a,b,c,d,e;f,g,k,l)="
                                                f"({a},{b},{c},{d},{e};{f},{g},{k},{l}) "
                                                f"residual={abs(lhs - rhs):.3e}")
    return report


def _hexagon_instances(cd, rtab, invert):
    """One hexagon family for braiding scalars rv(a,b,c):

        rv(a,b,e) F^{bac}_d[e,f] rv(a,c,f) = sum_g F^{abc}_d[e,g] rv(a,g,d) F^{bca}_d[g,f]

    With ``invert`` the scalars are those of the inverse braiding,
    rv(a,b,c) = 1 / R^{ba}_c.  Vectorized like verify_pentagon.
    """
    ring = cd.ring
    r = ring.rank
    if _is_group_ring(ring):
        return _hexagon_pointed(cd, rtab, invert)
    join = _ChannelJoin(ring)
    ftab = _SymbolTable(cd.F.entries, r, 6, unit_positions=(0, 1, 2))

    def rv(acol, bcol, ccol):
        if invert:
            return 1.0 / rtab.lookup([bcol, acol, ccol], "R")
        return rtab.lookup([acol, bcol, ccol], "R")

    trip = np.argwhere(ring.N > 0).astype(np.int64)  # (a, b, e)
    a, b, e = trip[:, 0], trip[:, 1], trip[:, 2]
    n_rows = len(a)
    rep = np.repeat(np.arange(n_rows), r)
    c = np.tile(np.arange(r, dtype=np.int64), n_rows)
    a, b, e = a[rep], b[rep], e[rep]
    idx, d = join.join(e, c)
    a, b, e, c = a[idx], b[idx], e[idx], c[idx]
    idx, f = join.join(a, c)
    cols = [a[idx], b[idx], e[idx], c[idx], d[idx], f]
    keep = ring.N[cols[1], cols[5], cols[4]] > 0
    a, b, e, c, d, f = (col[keep] for col in cols)

    lhs = rv(a, b, e) * ftab.lookup([b, a, c, d, e, f], "F") * rv(a, c, f)
    rhs = np.zeros(len(a), dtype=complex)
    idx, g = join.join(b, c)
    keep = ring.N[a[idx], g, d[idx]] > 0
    idx, g = idx[keep], g[keep]
    terms = (ftab.lookup([a[idx], b[idx], c[idx], d[idx], e[idx], g], "F")
             * rv(a[idx], g, d[idx])
             * ftab.lookup([b[idx], c[idx], a[idx], d[idx], g, f[idx]], "F"))
    rhs = (np.bincount(idx, weights=terms.real, minlength=len(a))
           + 1j * np.bincount(idx, weights=terms.imag, minlength=len(a)))

    resid = np.abs(lhs - rhs)
    bad = np.nonzero(resid > cd.tolerance)[0]
    order = sorted(bad, key=lambda i: (int(a[i]), int(b[i]), int(c[i]),
                                       int(d[i]), int(e[i]), int(f[i])))
    return [
        f"hexagon: (a,b,c,d;e,f)=({a[i]},{b[i]},{c[i]},{d[i]};{e[i]},{f[i]}) "
        f"residual={resid[i]:.3e}" for i in order]


def _hexagon_pointed(cd, rtab, invert) -> list:
    """Dense hexagon check for a pointed category."""
    ring = cd.ring
    r = ring.rank
    P, FF = _pointed_tables(cd)
    RR = np.ones((r, r), dtype=complex)
    for (a, b, c), v in cd.R.entries.items():
        RR[a, b] = v
    if invert:
        RR = 1.0 / RR.T
    a, b, c = np.ogrid[:r, :r, :r]
    bc = P[b, c]
    lhs = RR[a, b] * FF[b, a, c] * RR[a, c]
    rhs = FF[a, b, c] * RR[a, bc] * FF[b, c, a]
    resid = np.abs(lhs - rhs)
    report = []
    for ia, ib, ic in np.argwhere(resid > cd.tolerance):
        e, f, d = P[ia, ib], P[ia, ic], P[P[ia, ib], ic]
        report.append(
            f"hexagon: (a,b,c,d;e,f)=({ia},{ib},{ic},{d};{e},{f}) "
            f"residual={resid[ia, ib, ic]:.3e}")
    return report


def _hexagon_loops(cd, rv):
    """Reference loop implementation of one hexagon family (testing oracle)."""
    ring = cd.ring
    tol = cd.tolerance
    r = ring.rank
    fval = cd.fval
    report = []
    for a in range(r):
        for b in range(r):
            for e in ring.channels(a, b):
                for c in range(r):
                    for d in ring.channels(e, c):
                        for f in ring.channels(a, c):
                            if not ring.N[b, f, d]:
                                continue
                            lhs = rv(a, b, e) * fval(b, a, c, d, e, f) * rv(a, c, f)
                            rhs = 0.0
                            for g in ring.channels(b, c):
                                if ring.N[a, g, d]:
                                    rhs += (fval(a, b, c, d, e, g) * rv(a, g, d)
                                            * fval(b, c, a, d, g, f))
                            if abs(lhs - rhs) > tol:
                                report.append(
                                    f"hexagon: (a,b,c,d;e,f)=({a},{b},{c},{d};{e},{f}) "
                                    f"residual={abs(lhs - rhs):.3e}")
    return report


def verify_hexagon(cd: CategoryData) -> list:
    """Both hexagon families: for R and for the inverse braiding."""
    if cd.R is None:
        raise PreconditionError("verify_hexagon requires R-symbols")
    rtab = _SymbolTable(cd.R.entries, cd.ring.rank, 3, unit_positions=(0, 1))
    rep = _hexagon_instances(cd, rtab, invert=False)
    rep_inv = _hexagon_instances(cd, rtab, invert=True)
    return rep + [line.replace("hexagon:", "hexagon(inverse):") for line in rep_inv]


def validate_category(cd: CategoryData) -> list:
    """Ring axioms, F unitarity, pentagon, unimodularity and hexagons."""
    from .fusion_ring import validate_fusion_ring
    report = list(validate_fusion_ring(cd.ring))
    if report:
        return report
    if cd.partial:
        return report
    ring = cd.ring
    r = ring.rank
    # unitarity of each F-block
    for a in range(1, r):
        for b in range(1, r):
            for c in range(1, r):
                for d in range(r):
                    es, fs, mat = cd.F.matrix(ring, a, b, c, d)
                    if not es or not fs:
                        continue
                    if mat.shape[0] != mat.shape[1]:
                        report.append(f"F-block ({a},{b},{c};{d}) is not square")
                        continue
                    dev = np.max(np.abs(mat @ mat.conj().T - np.eye(len(es))))
                    if dev > cd.tolerance * 10:
                        report.append(f"F-block ({a},{b},{c};{d}) not unitary, dev={dev:.3e}")
    report += verify_pentagon(cd)
    if cd.R is not None:
        for (a, b, c), v in cd.R.entries.items():
            if not ring.N[a, b, c]:
                report.append(f"R entry on inadmissible channel ({a},{b},{c})")
            elif abs(abs(v) - 1.0) > cd.tolerance * 10:
                report.append(f"R^{{{a},{b}}}_{c} not unimodular: |R| = {abs(v):.12f}")
        report += verify_hexagon(cd)
    return report


def _finish(ring, F_entries, R_entries, tolerance=1e-9, name=""):
    dims = fp_dimensions(ring)
    cd = CategoryData(ring=ring, dims=dims, F=FSymbolSet(F_entries),
                      R=RSymbolSet(R_entries) if R_entries is not None else None,
                      tolerance=tolerance, name=name)
    return cd


def pointed_from_quadratic_form(qf: QuadraticForm, name="") -> CategoryData:
    """The pointed braided category attached to a quadratic form.

    Per cyclic factor Z/n with parameter t the closed forms are
    F(a,b,c) = exp(pi i t a (b + c - ((b+c) mod n)) / n) and
    R(a,b) = exp(pi i t a b / n); cross terms contribute only to R.
    """
    bad = qf.validate()
    if bad:
        raise StructuralError("quadratic form invalid: " + "; ".join(bad[:3]))
    ns = qf.group
    els = qf.elements()
    index = {g: i for i, g in enumerate(els)}
    rank = len(els)

    def add(g, h):
        return tuple((x + y) % n for x, y, n in zip(g, h, ns))

    def neg(g):
        return tuple((-x) % n for x, n in zip(g, ns))

    labels = tuple(".".join(str(x) for x in g) if len(ns) > 1 else str(g[0]) for g in els)
    dual = tuple(index[neg(g)] for g in els)
    N = np.zeros((rank, rank, rank), dtype=np.int64)
    for g in els:
        for h in els:
            N[index[g], index[h], index[add(g, h)]] = 1
    ring = FusionRing(rank=rank, labels=labels, dual=dual, N=N)

    def fscalar(g, h, k):
        phase = 0.0
        for i, n in enumerate(ns):
            carry = h[i] + k[i] - ((h[i] + k[i]) % n)
            phase += qf.t[i] * g[i] * carry / n
        return cmath.exp(1j * math.pi * phase)

    F_entries = {}
    for g in els:
        for h in els:
            for k in els:
                if index[g] == 0 or index[h] == 0 or index[k] == 0:
                    continue
                a, b, c = index[g], index[h], index[k]
                e = index[add(g, h)]
                f = index[add(h, k)]
                d = index[add(add(g, h), k)]
                F_entries[(a, b, c, d, e, f)] = fscalar(g, h, k)
    R_entries = {}
    for g in els:
        for h in els:
            R_entries[(index[g], index[h], index[add(g, h)])] = qf.r_value(g, h)
    cd = _finish(ring, F_entries, R_entries, name=name or f"pointed{list(ns)}")
    cd.quadratic_form = qf
    return cd


def kappa_of(cd: CategoryData, g) -> complex:
    """Self-braiding scalar R^{gg}_{g^2} of an invertible object."""
    if not cd.is_pointed():
        raise PreconditionError("kappa_of requires a pointed category (all dims 1)")
    if cd.R is None:
        raise PreconditionError("kappa_of requires braiding data")
    gi = cd.ring.label_index(g)
    sq = cd.ring.channels(gi, gi)
    assert len(sq) == 1
    return cd.rval(gi, gi, sq[0])


def reverse_braiding(cd: CategoryData) -> CategoryData:
    """Replace R^{ab}_c by conj(R^{ba}_c); an involution on the entries."""
    if cd.R is None:
        raise PreconditionError("reverse_braiding requires R-symbols")
    entries = {}
    for (a, b, c), v in cd.R.entries.items():
        entries[(a, b, c)] = np.conj(cd.R.entries[(b, a, c)])
    return CategoryData(ring=cd.ring, dims=cd.dims, F=cd.F, R=RSymbolSet(entries),
                        tolerance=cd.tolerance,
                        name=f"rev({cd.name})" if cd.name else "")


def monoidal_opposite(cd: CategoryData) -> CategoryData:
    """Monoidal opposite, transported along the dual functor.

    The ring becomes opposite_ring(ring); the data transports as
    F_op^{abc}_d[e,f] = conj(F^{c~ b~ a~}_{d~}[f~, e~]) and
    R_op^{ab}_c = R^{b~ a~}_{c~}, where x~ = dual(x).
    """
    ring_op = opposite_ring(cd.ring)
    dl = cd.ring.dual
    F_entries = {}
    r = cd.ring.rank
    for a in range(1, r):
        for b in range(1, r):
            for c in range(1, r):
                for e in ring_op.channels(a, b):
                    for d in ring_op.channels(e, c):
                        for f in ring_op.channels(b, c):
                            if not ring_op.N[a, f, d]:
                                continue
                            F_entries[(a, b, c, d, e, f)] = np.conj(
                                cd.fval(dl[c], dl[b], dl[a], dl[d], dl[f], dl[e]))
    R_entries = None
    if cd.R is not None:
        R_entries = {}
        for a in range(r):
            for b in range(r):
                for c in ring_op.channels(a, b):
                    R_entries[(a, b, c)] = cd.rval(dl[b], dl[a], dl[c])
    return _finish(ring_op, F_entries, R_entries, tolerance=cd.tolerance,
                   name=f"op({cd.name})" if cd.name else "")


def deligne_product_data(c1: CategoryData, c2: CategoryData) -> CategoryData:
    """Deligne product: ring product, componentwise F (and R when both braided)."""
    ring = deligne_product(c1.ring, c2.ring)
    k = c2.ring.rank

    def pi(i, j):
        return i * k + j

    F_entries = {}
    r1, r2 = c1.ring, c2.ring
    for a1 in range(r1.rank):
        for b1 in range(r1.rank):
            for e1 in r1.channels(a1, b1):
                for c1_ in range(r1.rank):
                    for d1 in r1.channels(e1, c1_):
                        for f1 in r1.channels(b1, c1_):
                            if not r1.N[a1, f1, d1]:
                                continue
                            v1 = c1.fval(a1, b1, c1_, d1, e1, f1)
                            for a2 in range(r2.rank):
                                for b2 in range(r2.rank):
                                    for e2 in r2.channels(a2, b2):
                                        for c2_ in range(r2.rank):
                                            for d2 in r2.channels(e2, c2_):
                                                for f2 in r2.channels(b2, c2_):
                                                    if not r2.N[a2, f2, d2]:
                                                        continue
                                                    A, B, C = pi(a1, a2), pi(b1, b2), pi(c1_, c2_)
                                                    if A == 0 or B == 0 or C == 0:
                                                        continue
                                                    F_entries[(A, B, C, pi(d1, d2),
                                                               pi(e1, e2), pi(f1, f2))] = (
                                                        v1 * c2.fval(a2, b2, c2_, d2, e2, f2))
    R_entries = None
    if c1.R is not None and c2.R is not None:
        R_entries = {}
        for a1 in range(r1.rank):
            for b1 in range(r1.rank):
                for cc1 in r1.channels(a1, b1):
                    for a2 in range(r2.rank):
                        for b2 in range(r2.rank):
                            for cc2 in r2.channels(a2, b2):
                                R_entries[(pi(a1, a2), pi(b1, b2), pi(cc1, cc2))] = (
                                    c1.rval(a1, b1, cc1) * c2.rval(a2, b2, cc2))
    name = f"{c1.name}(x){c2.name}" if c1.name and c2.name else ""
    return _finish(ring, F_entries, R_entries,
                   tolerance=max(c1.tolerance, c2.tolerance), name=name)


# ---------------------------------------------------------------------------
# file I/O


def _decode_value(v):
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(x, (int, float)) for x in v):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict) and "rou" in v:
        k, n = v["rou"]
        coeff = float(v.get("coeff", 1.0))
        return coeff * cmath.exp(2j * math.pi * int(k) / int(n))
    raise StructuralError(f"cannot decode complex value {v!r}")


def _encode_value(z):
    z = complex(z)
    return [z.real, z.imag]


def save_category(cd: CategoryData, path):
    """Write the documented JSON category format (format 1).

    Complex values are written as [re, im] float pairs; floats round-trip
    exactly through json, so save -> load -> save is byte identical.
    """
    ring = cd.ring
    doc = {
        "format": 1,
        "rank": ring.rank,
        "labels": list(ring.labels),
        "unit": 0,
        "dual": list(ring.dual),
        "N": [[int(a), int(b), int(c), int(ring.N[a, b, c])]
              for a in range(ring.rank) for b in range(ring.rank)
              for c in range(ring.rank) if ring.N[a, b, c]],
        "dims_hint": [float(x) for x in cd.dims.dims],
        "tolerance": cd.tolerance,
    }
    if cd.partial:
        doc["partial"] = True
    else:
        doc["F"] = [[a, b, c, d, e, f, _encode_value(v)]
                    for (a, b, c, d, e, f), v in sorted(cd.F.entries.items())]
        if cd.R is not None:
            doc["R"] = [[a, b, c, _encode_value(v)]
                        for (a, b, c), v in sorted(cd.R.entries.items())]
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_category(path, validate=True) -> CategoryData:
    """Load the JSON category format; validation runs unless suppressed.

    With ``validate=False`` the data loads with ``deferred_validation`` set
    on the returned object instead of raising on coherence failures.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != 1:
        raise StructuralError(f"unsupported format marker {doc.get('format')!r}")
    rank = int(doc["rank"])
    labels = doc.get("labels") or [str(i) for i in range(rank)]
    if len(labels) != rank:
        raise StructuralError("labels length does not match rank")
    if int(doc.get("unit", 0)) != 0:
        raise StructuralError("unit label must be index 0")
    dual = [int(x) for x in doc["dual"]]
    ring = FusionRing.from_sparse(rank, doc["N"], dual, labels)
    if (ring.N > 1).any():
        raise StructuralError("multiplicity > 1 is out of scope for this format")
    partial = bool(doc.get("partial", False))
    dims = fp_dimensions(ring)
    tol = float(doc.get("tolerance", 1e-9))
    if partial:
        cd = CategoryData(ring=ring, dims=dims, F=FSymbolSet({}), R=None,
                          tolerance=tol, partial=True)
        cd.deferred_validation = False
        return cd

    F_entries = {}
    for a, b, c, d, e, f, v in doc.get("F", []):
        a, b, c, d, e, f = map(int, (a, b, c, d, e, f))
        if not (ring.N[a, b, e] and ring.N[e, c, d] and ring.N[b, c, f] and ring.N[a, f, d]):
            raise StructuralError(f"F entry on inadmissible tuple ({a},{b},{c},{d},{e},{f})")
        F_entries[(a, b, c, d, e, f)] = _decode_value(v)
    R_entries = None
    if "R" in doc:
        R_entries = {}
        for a, b, c, v in doc["R"]:
            a, b, c = int(a), int(b), int(c)
            if not ring.N[a, b, c]:
                raise StructuralError(f"R entry on inadmissible channel ({a},{b},{c})")
            R_entries[(a, b, c)] = _decode_value(v)
    cd = CategoryData(ring=ring, dims=dims, F=FSymbolSet(F_entries),
                      R=RSymbolSet(R_entries) if R_entries is not None else None,
                      tolerance=tol)
    cd.deferred_validation = False
    if validate:
        report = validate_category(cd)
        if report:
            raise ValidationFailure(
                f"category data failed validation ({len(report)} problems); "
                f"first: {report[0]}", report)
    else:
        cd.deferred_validation = True
    return cd
