"""Tube algebra of a spherical fusion category and its center data.

Tube elements are coefficient vectors over the basis of annular maps
hom(X_i (x) X_g, X_g (x) X_j) indexed through the intermediate charge.  The
product stacks two annuli and re-expands the doubled ring through a single
simple strand via unit decomposition.  Minimal central idempotents of the
resulting algebra are the simple objects of the Drinfeld center; their
components encode half-braidings, from which twists and the S-matrix follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import morphism_calculus as mc

__all__ = [
    "TubeBasis", "TubeElement", "CenterObject", "ModularData", "TubeError",
    "DecompositionError", "tube_basis", "tube_identity", "tube_multiply",
    "tube_trace", "center_simples", "verify_killing", "modular_data",
    "half_braiding", "unit_projector",
]


class TubeError(ValueError):
    pass


class DecompositionError(TubeError):
    """Numerical eigenspaces of the center are ill-separated."""


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------

class TubeBasis:
    """Ordered basis (i, g, j, k, alpha, beta) of the tube algebra.

    The element (i, g, j, k, alpha, beta) is the annular map with strand
    entering as X_i, ring color X_g, strand leaving as X_j, routed through the
    intermediate charge k: split'(g j -> k; beta) o fuse(i g -> k; alpha).
    """

    def __init__(self, cat):
        self.cat = cat
        self.labels = []
        for i in range(cat.rank):
            for g in range(cat.rank):
                for j in range(cat.rank):
                    for k in range(cat.rank):
                        n1 = cat.N[i, g, k]
                        n2 = cat.N[g, j, k]
                        for al in range(n1):
                            for be in range(n2):
                                self.labels.append((i, g, j, k, al, be))
        self.index = {lab: n for n, lab in enumerate(self.labels)}
        self.size = len(self.labels)

    def morphism(self, label):
        """The coupon of a basis element as a Morphism [i,g] -> [g,j]."""
        i, g, j, k, al, be = label
        cat = self.cat
        row = mc.tree_basis(cat, (g, j), k).index(((g, k), (be,)))
        col = mc.tree_basis(cat, (i, g), k).index(((i, k), (al,)))
        return mc.basis_element(cat, (i, g), (g, j), k, row, col)


_BASIS_CACHE = {}


def tube_basis(cat):
    key = id(cat)
    hit = _BASIS_CACHE.get(key)
    if hit is None:
        hit = TubeBasis(cat)
        _BASIS_CACHE[key] = hit
    return hit


class TubeElement:
    """Coefficient vector over a TubeBasis."""

    __slots__ = ("basis", "vec")

    def __init__(self, basis, vec=None):
        self.basis = basis
        self.vec = (np.zeros(basis.size, dtype=complex)
                    if vec is None else np.asarray(vec, dtype=complex))

    def __add__(self, other):
        self._check(other)
        return TubeElement(self.basis, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        return TubeElement(self.basis, self.vec - other.vec)

    def __mul__(self, scalar):
        return TubeElement(self.basis, self.vec * scalar)

    __rmul__ = __mul__

    def _check(self, other):
        if self.basis is not other.basis:
            raise TubeError("basis mismatch")

    def norm(self):
        return float(np.max(np.abs(self.vec))) if self.vec.size else 0.0

    def coefficient(self, label):
        return complex(self.vec[self.basis.index[label]])

    def component(self, i, g, j):
        """The coupon morphism [i,g] -> [g,j] assembled from coefficients."""
        cat = self.basis.cat
        out = mc.zero(cat, (i, g), (g, j))
        for k in range(cat.rank):
            for al in range(cat.N[i, g, k]):
                for be in range(cat.N[g, j, k]):
                    c = self.vec[self.basis.index[(i, g, j, k, al, be)]]
                    if c != 0:
                        out = out + c * self.basis.morphism((i, g, j, k, al, be))
        return out

    def __repr__(self):
        terms = sum(1 for v in self.vec if abs(v) > 1e-12)
        return f"TubeElement({terms} terms)"


def tube_identity(cat):
    basis = tube_basis(cat)
    x = TubeElement(basis)
    for i in range(cat.rank):
        x.vec[basis.index[(i, 0, i, i, 0, 0)]] = 1.0
    return x


def element_from_pairs(cat, pairs):
    basis = tube_basis(cat)
    x = TubeElement(basis)
    for label, coef in pairs:
        x.vec[basis.index[label]] += coef
    return x


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

_STRUCTURE_CACHE = {}


def _structure_constants(cat):
    """mult[x_label][y_label] -> sparse dict of product coefficients."""
    key = id(cat)
    hit = _STRUCTURE_CACHE.get(key)
    if hit is not None:
        return hit
    basis = tube_basis(cat)
    table = {}
    for nx, (i2, g2, j2, k2, al2, be2) in enumerate(basis.labels):
        fx = basis.morphism((i2, g2, j2, k2, al2, be2))
        for ny, (i1, g1, j1, k1, al1, be1) in enumerate(basis.labels):
            if j1 != i2:
                continue
            fy = basis.morphism((i1, g1, j1, k1, al1, be1))
            # stack: ring word (g1, g2), coupon [i1, g1, g2] -> [g1, g2, j2]
            stacked = mc.compose(
                mc.tensor(mc.identity(cat, (g1,)), fx),
                mc.tensor(fy, mc.identity(cat, (g2,))))
            out = {}
            for m in range(cat.rank):
                fuses, splits = mc.dual_bases(cat, (g1, g2), m)
                for t, (fuse, split) in enumerate(zip(fuses, splits)):
                    # normalized so fuse o split = id_m; ring reduction needs
                    # the composition-dual pair, i.e. split scaled back by d_m
                    split = split * mc.spherical_dims(cat)[m]
                    coupon = mc.compose(
                        mc.tensor(fuse, mc.identity(cat, (j2,))),
                        stacked,
                        mc.tensor(mc.identity(cat, (i1,)), split))
                    for k in range(cat.rank):
                        blk = coupon.blocks.get(k)
                        if blk is None:
                            continue
                        rows = mc.tree_basis(cat, (m, j2), k)
                        cols = mc.tree_basis(cat, (i1, m), k)
                        for r, rt in enumerate(rows):
                            for c, ct in enumerate(cols):
                                v = blk[r, c]
                                if abs(v) > 1e-14:
                                    lab = (i1, m, j2, k, ct[1][0], rt[1][0])
                                    out[basis.index[lab]] = out.get(
                                        basis.index[lab], 0.0) + v
            if out:
                table[(nx, ny)] = out
    _STRUCTURE_CACHE[key] = table
    return table


def tube_multiply(x, y):
    """Product x . y: stack the annulus of x on top of the annulus of y."""
    x._check(y)
    basis = x.basis
    table = _structure_constants(basis.cat)
    out = TubeElement(basis)
    nzx = [n for n, v in enumerate(x.vec) if abs(v) > 1e-14]
    nzy = [n for n, v in enumerate(y.vec) if abs(v) > 1e-14]
    for nx in nzx:
        for ny in nzy:
            prod = table.get((nx, ny))
            if not prod:
                continue
            c = x.vec[nx] * y.vec[ny]
            for nz, v in prod.items():
                out.vec[nz] += c * v
    return out


def tube_trace(x):
    """tr(Cyl f) = Tr_C(f_0): the spherical trace of the empty-ring part."""
    cat = x.basis.cat
    sdim = mc.spherical_dims(cat)
    total = 0.0 + 0.0j
    for i in range(cat.rank):
        total += sdim[i] * x.vec[x.basis.index[(i, 0, i, i, 0, 0)]]
    return complex(total)


def gram_matrix(cat):
    basis = tube_basis(cat)
    g = np.zeros((basis.size, basis.size), dtype=complex)
    for nx in range(basis.size):
        x = TubeElement(basis)
        x.vec[nx] = 1.0
        for ny in range(basis.size):
            y = TubeElement(basis)
            y.vec[ny] = 1.0
            g[nx, ny] = tube_trace(tube_multiply(x, y))
    return g


def unit_projector(cat):
    """(1/mu) sum_g d_g (ring g) on the unit strand: projects O_1 onto the
    center's tensor unit."""
    basis = tube_basis(cat)
    sdim = mc.spherical_dims(cat)
    x = TubeElement(basis)
    for g in range(cat.rank):
        x.vec[basis.index[(0, g, 0, g, 0, 0)]] = sdim[g] / cat.global_dim
    return x


# ---------------------------------------------------------------------------
# center decomposition
# ---------------------------------------------------------------------------

@dataclass
class CenterObject:
    index: int
    idempotent: TubeElement
    qdim: complex
    twist: complex
    support: tuple            # simple indices i with m_{iA} = 1
    label: str = ""

    def half_braiding_component(self, i, g, j):
        cat = self.idempotent.basis.cat
        scale = cat.global_dim / mc.spherical_dims(cat)[g]
        return scale * self.idempotent.component(i, g, j)


@dataclass
class ModularData:
    rank_z: int
    s_tilde: np.ndarray
    twists: np.ndarray
    dims: np.ndarray
    mu_z: complex
    labels: list = field(default_factory=list)

    def charge_conjugation(self):
        c = self.s_tilde @ np.conj(self.s_tilde) / self.mu_z
        perm = np.rint(c.real)
        if np.max(np.abs(c - perm)) > 1e-6:
            raise TubeError("charge conjugation is not a permutation matrix")
        return perm.astype(int)


def _center_subspace(cat):
    """Kernel of all commutators: coefficient vectors of central elements."""
    basis = tube_basis(cat)
    table = _structure_constants(cat)
    n = basis.size
    rows = []
    for b in range(n):
        comm = np.zeros((n, n), dtype=complex)
        for (nx, ny), prod in table.items():
            if ny == b:
                for nz, v in prod.items():
                    comm[nz, nx] += v
            if nx == b:
                for nz, v in prod.items():
                    comm[nz, ny] -= v
        rows.append(comm)
    stacked = np.vstack(rows)
    _, s, vh = np.linalg.svd(stacked)
    tol = max(stacked.shape) * np.finfo(float).eps * (s[0] if s.size else 1.0)
    null = vh[np.sum(s > max(tol, 1e-10)):].conj()
    return [TubeElement(basis, row) for row in null]


def center_simples(cat, seed=0):
    """Minimal central idempotents of the tube algebra, as CenterObjects.

    The center is split by eigendecomposition of multiplication by a random
    central element; idempotents are Lagrange interpolations applied to the
    identity.  Index 0 is the block containing the unit projector.
    """
    basis = tube_basis(cat)
    central = _center_subspace(cat)
    nz = len(central)
    if nz == 0:
        raise DecompositionError("tube algebra has empty center")
    rng = np.random.default_rng(seed)
    for attempt in range(8):
        coeffs = rng.normal(size=nz) + 1j * rng.normal(size=nz)
        z = TubeElement(basis)
        for c, elt in zip(coeffs, central):
            z = z + c * elt
        # multiplication by z restricted to the center, in the central basis
        cmat = np.array([elt.vec for elt in central]).T  # size x nz
        pinv = np.linalg.pinv(cmat)
        mz = np.zeros((nz, nz), dtype=complex)
        for a, elt in enumerate(central):
            prod = tube_multiply(z, elt)
            mz[:, a] = pinv @ prod.vec
        evals, evecs = np.linalg.eig(mz)
        gap = _eigen_gap(evals)
        if gap < 1e-6:
            continue
        ident = tube_identity(cat)
        idems = []
        for lam in evals:
            p = ident
            for lam2 in evals:
                if lam2 is lam:
                    continue
                if abs(lam2 - lam) < 1e-9:
                    continue
                p = (1.0 / (lam - lam2)) * (tube_multiply(z, p) - lam2 * p)
            idems.append(p)
        # dedupe eigenvalues that coincide (should not happen past the gap check)
        if len(idems) != nz:
            continue
        ok = all((tube_multiply(p, p) - p).norm() < 1e-8 for p in idems)
        total = idems[0]
        for p in idems[1:]:
            total = total + p
        ok = ok and (total - ident).norm() < 1e-8
        if not ok:
            continue
        return _package_center(cat, idems)
    raise DecompositionError(
        "no generic central element found: eigenspace gap below 1e-6")


def _eigen_gap(evals):
    if len(evals) < 2:
        return np.inf
    gap = np.inf
    for i in range(len(evals)):
        for j in range(i + 1, len(evals)):
            gap = min(gap, abs(evals[i] - evals[j]))
    return float(gap)


def _support(cat, idem):
    """Support and dimension of the underlying object from the ring-0 block.

    The empty-ring coefficients of a minimal central idempotent satisfy
    mu d_i c_i = m_{iA} d_A; multiplicity-freeness makes all nonzero values
    equal to d_A.
    """
    basis = idem.basis
    sdim = mc.spherical_dims(cat)
    mu = cat.global_dim
    vals = {}
    for i in range(cat.rank):
        v = idem.vec[basis.index[(i, 0, i, i, 0, 0)]] * mu * sdim[i]
        if abs(v) > 1e-6:
            vals[i] = complex(v)
    if not vals:
        raise TubeError("idempotent has empty ring-0 support")
    d_a = max(vals.values(), key=abs)
    supp = []
    for i, v in vals.items():
        ratio = v / d_a
        if abs(ratio - round(ratio.real)) > 1e-6 or round(ratio.real) < 1:
            raise TubeError("ring-0 coefficients are not integer multiples")
        if round(ratio.real) != 1:
            raise TubeError(
                "center simple has multiplicity > 1 in a tube block; "
                "only multiplicity-free centers are supported")
        supp.append(i)
    return tuple(sorted(supp)), d_a


def _dehn_twist_element(cat):
    """The tube with the strand wound once around the annulus."""
    basis = tube_basis(cat)
    x = TubeElement(basis)
    for i in range(cat.rank):
        for k in range(cat.rank):
            for al in range(cat.N[i, i, k]):
                x.vec[basis.index[(i, i, i, k, al, al)]] = 1.0
    return x


def center_simples_with_unit_first(cat, seed=0):
    return center_simples(cat, seed)


def _package_center(cat, idems):
    sdim = mc.spherical_dims(cat)
    twist_elt = _dehn_twist_element(cat)
    unit = unit_projector(cat)
    objs = []
    for p in idems:
        supp, qdim = _support(cat, p)
        qdim = complex(qdim)
        tw = tube_multiply(twist_elt, p)
        # action must be scalar on the block
        lam = None
        for n, v in enumerate(p.vec):
            if abs(v) > 1e-6:
                lam = tw.vec[n] / v
                break
        if lam is None or (tw - lam * p).norm() > 1e-6 * max(1.0, abs(lam)):
            raise DecompositionError("Dehn twist does not act as a scalar")
        objs.append(CenterObject(-1, p, qdim, complex(lam), supp))
    # unit block first, then sort by (|dim|, twist phase) for determinism
    def unit_overlap(obj):
        return (tube_multiply(obj.idempotent, unit)).norm()

    unit_idx = max(range(len(objs)), key=lambda n: unit_overlap(objs[n]))
    rest = [o for n, o in enumerate(objs) if n != unit_idx]
    rest.sort(key=lambda o: (round(abs(o.qdim), 9),
                             round(np.angle(o.twist), 9),
                             round(o.qdim.real, 9)))
    ordered = [objs[unit_idx]] + rest
    for n, o in enumerate(ordered):
        o.index = n
        o.label = f"Z{n}[" + ",".join(cat.labels[i] for i in o.support) + "]"
    return ordered


def half_braiding(ctr, g):
    """Half-braiding components e_X(X_g) as a dict (i, j) -> Morphism."""
    cat = ctr.idempotent.basis.cat
    out = {}
    for i in ctr.support:
        for j in ctr.support:
            m = ctr.half_braiding_component(i, g, j)
            if m.norm() > 1e-12:
                out[(i, j)] = m
    return out


def verify_killing(cat, i, centers=None):
    """Deviation of the ring-projected identity tube from mu delta_{i,0} p.

    The center's unit must be supported on the unit strand alone; its
    idempotent sandwiched with the X_i identity tube realizes the ring-killing
    statement.
    """
    if centers is None:
        centers = center_simples(cat)
    unit = centers[0]
    basis = unit.idempotent.basis
    ident_i = TubeElement(basis)
    ident_i.vec[basis.index[(i, 0, i, i, 0, 0)]] = 1.0
    mu = cat.global_dim
    lhs = mu * tube_multiply(unit.idempotent,
                             tube_multiply(ident_i, unit.idempotent))
    if i == 0:
        expected = mu * unit.idempotent
    else:
        expected = TubeElement(basis)
    return (lhs - expected).norm()


# ---------------------------------------------------------------------------
# modular data
# ---------------------------------------------------------------------------

def modular_data(cat, centers=None):
    """Unnormalized S-matrix, twists and dimensions of the center."""
    if centers is None:
        centers = center_simples(cat)
    sdim = mc.spherical_dims(cat)
    mu = complex(cat.global_dim)
    nz = len(centers)
    s = np.zeros((nz, nz), dtype=complex)
    comps = []
    for ctr in centers:
        comp = {}
        for i in range(cat.rank):
            for g in range(cat.rank):
                for j in range(cat.rank):
                    m = ctr.idempotent.component(i, g, j)
                    if m.norm() > 1e-14:
                        comp[(i, g, j)] = m
        comps.append(comp)
    for a in range(nz):
        for b in range(a, nz):
            val = 0.0 + 0.0j
            for (i, g, i2), ma in comps[a].items():
                if i2 != i:
                    continue
                mb = comps[b].get((g, i, g))
                if mb is None:
                    continue
                val += (mu * mu / (sdim[i] * sdim[g])) * mc.trace(
                    mc.compose(mb, ma))
            s[a, b] = val
            s[b, a] = val
    twists = np.array([ctr.twist for ctr in centers])
    dims = np.array([ctr.qdim for ctr in centers])
    md = ModularData(rank_z=nz, s_tilde=s, twists=twists, dims=dims,
                     mu_z=mu * mu, labels=[c.label for c in centers])
    return md
