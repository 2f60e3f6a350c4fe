"""Coordinate engine for the planar graphical calculus.

Morphisms between tensor words of simples are stored blockwise in the
left-nested fusion-tree bases.  Composition is exact blockwise matrix
multiplication; tensor products are mediated by cached merge matrices that
re-express split tree pairs in the left-nested basis via F-moves.
"""

from __future__ import annotations

import numpy as np

from .fusion_data import FusionDataError

__all__ = [
    "Morphism", "MorphismError", "identity", "zero", "hom_dim", "compose",
    "tensor", "cup", "cap", "trace", "dual_bases", "tree_basis", "distance",
    "scalar_of", "braiding", "braiding_inv", "braid_past_word",
    "braid_past_word_inv", "rotate_left", "dual_word",
]


class MorphismError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fusion tree bookkeeping (cached per category)
# ---------------------------------------------------------------------------

_TREE_CACHE = {}
_MERGE_CACHE = {}
_CUPCAP_CACHE = {}
_SDIM_CACHE = {}


def _cache_key(cat):
    return id(cat)


def tree_basis(cat, word, root):
    """Left-nested fusion trees of ``word`` with total charge ``root``.

    A tree is ``(mids, mults)``: ``mids[i]`` is the charge after fusing the
    first ``i+1`` letters (so ``mids[-1] == root``), ``mults[i]`` indexes the
    fusion vertex multiplicity at step ``i`` (one entry per letter past the
    first).  The empty word has the single empty tree at root 0.
    """
    key = (_cache_key(cat), word, root)
    hit = _TREE_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    if len(word) == 0:
        if root == 0:
            out.append(((), ()))
    elif len(word) == 1:
        if word[0] == root:
            out.append(((word[0],), ()))
    else:
        head, last = word[:-1], word[-1]
        for mid in range(cat.rank):
            nv = cat.N[mid, last, root]
            if nv == 0:
                continue
            for mids, mults in tree_basis(cat, head, mid):
                for al in range(nv):
                    out.append((mids + (root,), mults + (al,)))
    _TREE_CACHE[key] = out
    return out


def _tree_index(cat, word, root):
    return {t: i for i, t in enumerate(tree_basis(cat, word, root))}


def hom_dim(cat, a, b):
    """dim hom(a, b) = sum_k (#trees of a at k) (#trees of b at k)."""
    a, b = tuple(a), tuple(b)
    for x in a + b:
        if not 0 <= x < cat.rank:
            raise MorphismError(f"letter {x} out of range")
    total = 0
    for k in range(cat.rank):
        total += len(tree_basis(cat, a, k)) * len(tree_basis(cat, b, k))
    return total


def merge_data(cat, wa, wc, root):
    """Pair basis and merge matrix for hom(wa . wc, root).

    The pair basis indexes ``vertex(k1,k2->root; al) o (t1 (x) t2)`` over
    roots/trees of the factors.  Column ``x`` of ``M`` expands that element in
    the left-nested tree basis of the concatenated word.  Returns
    ``(pairs, M, M_inv)``.
    """
    key = (_cache_key(cat), wa, wc, root)
    hit = _MERGE_CACHE.get(key)
    if hit is not None:
        return hit
    trees = tree_basis(cat, wa + wc, root)
    tindex = {t: i for i, t in enumerate(trees)}
    pairs = []
    for k1 in range(cat.rank):
        t1s = tree_basis(cat, wa, k1)
        if not t1s:
            continue
        for k2 in range(cat.rank):
            nv = cat.N[k1, k2, root]
            if nv == 0:
                continue
            t2s = tree_basis(cat, wc, k2)
            for i1, t1 in enumerate(t1s):
                for i2, t2 in enumerate(t2s):
                    for al in range(nv):
                        pairs.append((k1, i1, k2, i2, al))
    m = np.zeros((len(trees), len(pairs)), dtype=complex)
    if len(wc) == 0:
        for x, (k1, i1, k2, i2, al) in enumerate(pairs):
            # k2 = 0, trivial vertex: the pair element is t1 itself
            t1 = tree_basis(cat, wa, k1)[i1]
            m[tindex[t1], x] = 1.0
    elif len(wa) == 0:
        for x, (k1, i1, k2, i2, al) in enumerate(pairs):
            t2 = tree_basis(cat, wc, k2)[i2]
            m[tindex[t2], x] = 1.0
    elif len(wc) == 1:
        c = wc[0]
        for x, (k1, i1, k2, i2, al) in enumerate(pairs):
            # k2 == c; appending the vertex (k1, c -> root; al) is left-nested
            t1 = tree_basis(cat, wa, k1)[i1]
            t = (t1[0] + (root,), t1[1] + (al,))
            m[tindex[t], x] = 1.0
    else:
        head, c = wc[:-1], wc[-1]
        sub = {}
        for x, (k1, i1, k2, i2, al) in enumerate(pairs):
            t2 = tree_basis(cat, wc, k2)[i2]
            j2 = t2[0][-2] if len(t2[0]) >= 2 else t2[0][0]
            # strip the last vertex of t2: (j2, c -> k2; gv)
            gv = t2[1][-1]
            t2p = (t2[0][:-1], t2[1][:-1])
            cols, rows, finv = cat.f_matrix_inv(k1, j2, c, root)
            try:
                irow = cols.index((k2, gv, al))
            except ValueError:
                continue
            for (e, a2, be), coef in zip(rows, finv[irow]):
                if coef == 0:
                    continue
                subkey = (e,)
                if subkey not in sub:
                    subpairs, subm, _ = merge_data(cat, wa, head, e)
                    subidx = {p: i for i, p in enumerate(subpairs)}
                    sub[subkey] = (subidx, subm)
                subidx, subm = sub[subkey]
                i2p = tree_basis(cat, head, j2).index(t2p)
                col = subidx.get((k1, i1, j2, i2p, a2))
                if col is None:
                    continue
                for trow, val in enumerate(subm[:, col]):
                    if val == 0:
                        continue
                    tp = tree_basis(cat, wa + head, e)[trow]
                    t = (tp[0] + (root,), tp[1] + (be,))
                    m[tindex[t], x] += coef * val
    if m.size:
        if m.shape[0] != m.shape[1]:
            raise MorphismError(
                f"merge matrix for {wa}|{wc}@{root} is not square: {m.shape}")
        minv = np.linalg.inv(m)
    else:
        minv = m.reshape(m.shape[1], m.shape[0])
    out = (pairs, m, minv)
    _MERGE_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Morphism
# ---------------------------------------------------------------------------

class Morphism:
    """A morphism dom -> cod, blockwise over total charge.

    ``blocks[k]`` has shape (#trees(cod, k), #trees(dom, k)); missing blocks
    are zero.  Values are immutable by convention.
    """

    __slots__ = ("cat", "dom", "cod", "blocks")

    def __init__(self, cat, dom, cod, blocks):
        self.cat = cat
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.blocks = {}
        for k, b in blocks.items():
            b = np.asarray(b, dtype=complex)
            shape = (len(tree_basis(cat, self.cod, k)),
                     len(tree_basis(cat, self.dom, k)))
            if b.shape != shape:
                raise MorphismError(
                    f"block {k} has shape {b.shape}, expected {shape}")
            if np.any(b):
                self.blocks[k] = b

    def block(self, k):
        b = self.blocks.get(k)
        if b is None:
            return np.zeros((len(tree_basis(self.cat, self.cod, k)),
                             len(tree_basis(self.cat, self.dom, k))),
                            dtype=complex)
        return b

    def __add__(self, other):
        self._check_parallel(other)
        keys = set(self.blocks) | set(other.blocks)
        return Morphism(self.cat, self.dom, self.cod,
                        {k: self.block(k) + other.block(k) for k in keys})

    def __sub__(self, other):
        return self + (other * (-1))

    def __mul__(self, scalar):
        return Morphism(self.cat, self.dom, self.cod,
                        {k: b * scalar for k, b in self.blocks.items()})

    __rmul__ = __mul__

    def _check_parallel(self, other):
        if self.cat is not other.cat or self.dom != other.dom or self.cod != other.cod:
            raise MorphismError("morphisms are not parallel")

    def norm(self):
        if not self.blocks:
            return 0.0
        return max(float(np.max(np.abs(b))) for b in self.blocks.values())

    def __repr__(self):
        return f"Morphism({list(self.dom)} -> {list(self.cod)})"


def identity(cat, word):
    word = tuple(word)
    blocks = {}
    for k in range(cat.rank):
        n = len(tree_basis(cat, word, k))
        if n:
            blocks[k] = np.eye(n, dtype=complex)
    return Morphism(cat, word, word, blocks)


def zero(cat, dom, cod):
    return Morphism(cat, dom, cod, {})


def basis_element(cat, dom, cod, k, row, col, value=1.0):
    b = np.zeros((len(tree_basis(cat, cod, k)), len(tree_basis(cat, dom, k))),
                 dtype=complex)
    b[row, col] = value
    return Morphism(cat, dom, cod, {k: b})


def compose(f, g, *rest):
    """f o g (g applied first); extra arguments compose right-to-left."""
    if rest:
        return compose(compose(f, g), *rest)
    if f.cat is not g.cat:
        raise MorphismError("category mismatch")
    if f.dom != g.cod:
        raise MorphismError(f"cannot compose {f} after {g}")
    blocks = {}
    for k, fb in f.blocks.items():
        gb = g.blocks.get(k)
        if gb is not None:
            blocks[k] = fb @ gb
    return Morphism(f.cat, g.dom, f.cod, blocks)


def tensor(f, g, *rest):
    if rest:
        return tensor(tensor(f, g), *rest)
    if f.cat is not g.cat:
        raise MorphismError("category mismatch")
    cat = f.cat
    dom = f.dom + g.dom
    cod = f.cod + g.cod
    blocks = {}
    for k in range(cat.rank):
        nrow = len(tree_basis(cat, cod, k))
        ncol = len(tree_basis(cat, dom, k))
        if nrow == 0 or ncol == 0:
            continue
        dpairs, dm, _ = merge_data(cat, f.dom, g.dom, k)
        cpairs, _, cminv = merge_data(cat, f.cod, g.cod, k)
        gmat = np.zeros((len(cpairs), len(dpairs)), dtype=complex)
        any_entry = False
        crows = {}
        for yi, (k1, s1, k2, s2, al) in enumerate(cpairs):
            crows.setdefault((k1, k2, al), []).append((yi, s1, s2))
        for xi, (k1, t1, k2, t2, al) in enumerate(dpairs):
            fb = f.blocks.get(k1)
            gb = g.blocks.get(k2)
            if fb is None or gb is None:
                continue
            for (yi, s1, s2) in crows.get((k1, k2, al), ()):
                v = fb[s1, t1] * gb[s2, t2]
                if v != 0:
                    gmat[yi, xi] = v
                    any_entry = True
        if not any_entry:
            continue
        blocks[k] = cminv.T @ gmat @ dm.T
    return Morphism(cat, dom, cod, blocks)


# ---------------------------------------------------------------------------
# duality: cups and caps
# ---------------------------------------------------------------------------

def _raw_cup(cat, a):
    return Morphism(cat, (), (a, cat.dual[a]), {0: [[1.0]]})


def _raw_cap(cat, a):
    return Morphism(cat, (cat.dual[a], a), (), {0: [[1.0]]})


def _zigzag_scalar(cat, a):
    """Scalar of (id_a (x) cap_a) o (cup_a (x) id_a) with unit normalizations."""
    u = tensor(_raw_cup(cat, a), identity(cat, (a,)))
    v = tensor(identity(cat, (a,)), _raw_cap(cat, a))
    w = compose(v, u)
    return complex(w.block(a)[0, 0])


def spherical_dims(cat):
    """Loop values of the engine's duality: nu_a d_a with nu the pivotal sign.

    With these dimensions every closed planar diagram evaluates spherically
    (all pivotal coefficients are 1); for pseudo-real self-dual simples the
    loop value is the negative of the stored quantum dimension.
    """
    key = _cache_key(cat)
    hit = _SDIM_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for a in range(cat.rank):
        ad = cat.dual[a]
        if ad == a:
            z = _zigzag_scalar(cat, a)
            out.append(1.0 / z)
        else:
            out.append(complex(cat.qdim[a]))
    out = tuple(out)
    _SDIM_CACHE[key] = out
    return out


def _cupcap_scalars(cat):
    key = _cache_key(cat)
    hit = _CUPCAP_CACHE.get(key)
    if hit is not None:
        return hit
    sdim = spherical_dims(cat)
    lam = [None] * cat.rank
    kap = [None] * cat.rank
    for a in range(cat.rank):
        ad = cat.dual[a]
        if lam[a] is not None:
            continue
        z_a = _zigzag_scalar(cat, a)
        if abs(z_a) < 1e-14:
            raise FusionDataError(f"degenerate zig-zag scalar for simple {a}")
        if ad == a:
            # kap lam = 1/z = sdim: both zig-zags and the loop are exact
            lam[a] = 1.0
            kap[a] = 1.0 / z_a
        else:
            z_ad = _zigzag_scalar(cat, ad)
            d = complex(sdim[a])
            if abs(z_a * z_ad * d * d - 1.0) > 1e-8:
                raise FusionDataError(
                    f"dual pair ({a},{ad}) admits no compatible spherical "
                    f"normalization: z_a z_a* d^2 = {z_a * z_ad * d * d}")
            lam[a] = 1.0
            kap[a] = 1.0 / z_a
            kap[ad] = d
            lam[ad] = d * z_a
    out = (lam, kap)
    _CUPCAP_CACHE[key] = out
    return out


def cup(cat, a):
    """Coevaluation [] -> [a, a*], normalized so both zig-zags are exact."""
    lam, _ = _cupcap_scalars(cat)
    return _raw_cup(cat, a) * lam[a]


def cap(cat, a):
    """Evaluation [a*, a] -> []."""
    _, kap = _cupcap_scalars(cat)
    return _raw_cap(cat, a) * kap[a]


def pivotal_sign(cat, a):
    """cap_a o cup_a divided by d_a; the Frobenius-Schur phase for self-dual a."""
    ad = cat.dual[a]
    loop = compose(cap(cat, ad), cup(cat, a))
    return complex(scalar_of(loop) / cat.qdim[a])


def dual_word(cat, word):
    return tuple(cat.dual[x] for x in reversed(word))


def rotate_left(phi):
    """Move the first strand of a state phi: [] -> W to the last position."""
    cat = phi.cat
    if phi.dom != ():
        raise MorphismError("rotate_left expects a state with empty domain")
    w = phi.cod
    if not w:
        return phi
    x, rest = w[0], w[1:]
    xd = cat.dual[x]
    step1 = cup(cat, xd)                                   # [] -> [x*, x]
    step2 = tensor(identity(cat, (xd,)), phi, identity(cat, (x,)))
    step3 = tensor(cap(cat, x), identity(cat, rest + (x,)))
    return compose(step3, step2, step1)


# ---------------------------------------------------------------------------
# trace and dual bases
# ---------------------------------------------------------------------------

def trace(f):
    """Spherical trace sum_k d_k tr(block_k), with the engine's loop values."""
    if f.dom != f.cod:
        raise MorphismError("trace of a non-endomorphism")
    sdim = spherical_dims(f.cat)
    total = 0.0 + 0.0j
    for k, b in f.blocks.items():
        total += sdim[k] * np.trace(b)
    return complex(total)


def scalar_of(f):
    """The number c with f = c id (for endomorphisms of the empty word)."""
    if f.dom != () or f.cod != ():
        raise MorphismError("scalar_of expects an endomorphism of the unit")
    return complex(f.block(0)[0, 0])


def dual_bases(cat, word, k):
    """Bases (phi_j) of hom(word, k) and (phi'_j) of hom(k, word) with
    Tr(phi_j phi'_l) = delta_{jl}."""
    word = tuple(word)
    trees = tree_basis(cat, word, k)
    basis, dual = [], []
    dk = complex(spherical_dims(cat)[k])
    for t, _ in enumerate(trees):
        basis.append(basis_element(cat, word, (k,), k, 0, t))
        dual.append(basis_element(cat, (k,), word, k, t, 0, 1.0 / dk))
    return basis, dual


def distance(f, g):
    return (f - g).norm()


# ---------------------------------------------------------------------------
# braiding helpers (for categories with R-symbols)
# ---------------------------------------------------------------------------

def braiding(cat, a, b):
    """c_{a,b}: [a, b] -> [b, a] from R-symbols (multiplicity-free)."""
    blocks = {}
    for k in cat.channels(a, b):
        blocks[k] = np.array([[cat.r_scalar(a, b, k)]])
    return Morphism(cat, (a, b), (b, a), blocks)


def braiding_inv(cat, a, b):
    """Inverse braiding c_{b,a}^{-1}: [a, b] -> [b, a]."""
    blocks = {}
    for k in cat.channels(a, b):
        blocks[k] = np.array([[1.0 / cat.r_scalar(b, a, k)]])
    return Morphism(cat, (a, b), (b, a), blocks)


def _fuse_split(cat, word, k, t):
    """The t-th basis fusion morphism word -> [k] and its splitting dual."""
    fuse = basis_element(cat, word, (k,), k, 0, t)
    split = basis_element(cat, (k,), word, k, t, 0)
    return fuse, split


def braid_past_word(cat, a, word):
    """c_{a, word}: [a]+word -> word+[a] by braiding through fused channels."""
    word = tuple(word)
    out = zero(cat, (a,) + word, word + (a,))
    for k in range(cat.rank):
        trees = tree_basis(cat, word, k)
        for t in range(len(trees)):
            fuse, split = _fuse_split(cat, word, k, t)
            term = compose(tensor(split, identity(cat, (a,))),
                           braiding(cat, a, k),
                           tensor(identity(cat, (a,)), fuse))
            out = out + term
    return out


def braid_past_word_inv(cat, a, word):
    """c^{-1}-version of braid_past_word, for the second hexagon."""
    word = tuple(word)
    out = zero(cat, (a,) + word, word + (a,))
    for k in range(cat.rank):
        trees = tree_basis(cat, word, k)
        for t in range(len(trees)):
            fuse, split = _fuse_split(cat, word, k, t)
            term = compose(tensor(split, identity(cat, (a,))),
                           braiding_inv(cat, a, k),
                           tensor(identity(cat, (a,)), fuse))
            out = out + term
    return out
