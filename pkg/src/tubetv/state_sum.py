"""Turaev-Viro state sums on closed and pseudo-3-manifold triangulations.

Each admissible edge coloring contributes the product of its edge dimensions,
one tetrahedral network evaluation per tetrahedron and one inverse pairing
scalar per face class.  The tetrahedral network is assembled in the morphism
engine from four face states, so the weights inherit whatever gauge the
category's F-symbols use and triangulation independence is automatic.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import morphism_calculus as mc
from .triangulation import classify_vertices

__all__ = [
    "StateSumConfig", "StateSumError", "count_admissible", "tet_weight",
    "tv_invariant", "enumerate_colorings",
]


class StateSumError(ValueError):
    pass


@dataclass
class StateSumConfig:
    zeta: complex = 1.0
    workers: int = 1
    prune_order: tuple | None = None

    def __post_init__(self):
        if self.zeta == 0:
            raise StateSumError("zeta must be nonzero")


# ---------------------------------------------------------------------------
# per-category caches for face states, pairings and tetrahedron networks
# ---------------------------------------------------------------------------

_FACE_STATE_CACHE = {}
_PAIRING_CACHE = {}
_TET_CACHE = {}


def _face_space_dim(cat, word):
    return len(mc.tree_basis(cat, word, 0))


def face_state(cat, word, index=0):
    """The index-th basis state in hom(1, word) for a three-letter word."""
    key = (id(cat), word, index)
    hit = _FACE_STATE_CACHE.get(key)
    if hit is None:
        trees = mc.tree_basis(cat, word, 0)
        if index >= len(trees):
            raise StateSumError(f"face space {word} has dimension {len(trees)}")
        hit = mc.basis_element(cat, (), word, 0, index, 0)
        _FACE_STATE_CACHE[key] = hit
    return hit


def _nested_caps(cat, phi):
    """Close a state [] -> w1 ... wn w1*-reversed by capping inside out."""
    word = phi.cod
    n = len(word) // 2
    out = phi
    for _ in range(n):
        w = out.cod
        m = len(w) // 2
        x = w[m]            # cap the innermost adjacent pair (w[m-1], w[m])
        left = w[:m - 1]
        right = w[m + 1:]
        capper = mc.tensor(mc.identity(cat, left), mc.cap(cat, x),
                           mc.identity(cat, right))
        out = mc.compose(capper, out)
    return mc.scalar_of(out)


def rotate_spherical(phi):
    """Cyclic rotation of a face state.

    The engine's loop values are the signed spherical dimensions, so the bare
    strand rotation already agrees with the spherical calculus.
    """
    return mc.rotate_left(phi)


def pairing(cat, word1, word2, offset):
    """Closed pairing of the canonical face states on word1 and word2.

    ``word2`` rotated left by ``offset`` must equal the reversed dual of
    ``word1``; strand i of word1 is capped against its partner.
    """
    key = (id(cat), word1, word2, offset)
    hit = _PAIRING_CACHE.get(key)
    if hit is not None:
        return hit
    d1 = _face_space_dim(cat, word1)
    d2 = _face_space_dim(cat, word2)
    if d1 != d2:
        raise StateSumError("face spaces of a glued pair differ in dimension")
    if d1 != 1:
        raise StateSumError(
            "state sums currently require multiplicity-free face spaces")
    phi2 = face_state(cat, word2)
    for _ in range(offset):
        phi2 = rotate_spherical(phi2)
    if phi2.cod != mc.dual_word(cat, word1):
        raise StateSumError(
            f"face words {word1} / {word2} are incompatible at offset {offset}")
    joint = mc.tensor(face_state(cat, word1), phi2)
    val = _nested_caps(cat, joint)
    _PAIRING_CACHE[key] = val
    return val


# outward-oriented boundary cycles of a positively oriented tetrahedron
_FACE_CYCLES_POS = {0: (1, 2, 3), 1: (0, 3, 2), 2: (0, 1, 3), 3: (0, 2, 1)}
_FACE_CYCLES_NEG = {0: (1, 3, 2), 1: (0, 2, 3), 2: (0, 3, 1), 3: (0, 1, 2)}


def face_cycle(sign, face):
    return (_FACE_CYCLES_POS if sign > 0 else _FACE_CYCLES_NEG)[face]


def tet_network(cat, colors, sign):
    """Evaluate the closed tetrahedral network.

    ``colors`` maps directed local edges (u, v) to simple indices (both
    directions present, dual to each other); ``sign`` is the tetrahedron's
    orientation.  Face states are the canonical ones on the outward boundary
    cycles; the value is the planar closure described in the module docstring.
    """
    key = (id(cat), tuple(sorted(colors.items())), sign)
    hit = _TET_CACHE.get(key)
    if hit is not None:
        return hit
    if sign < 0:
        # mirror through the odd relabeling 0 <-> 1
        swap = {0: 1, 1: 0, 2: 2, 3: 3}
        colors = {(swap[u], swap[v]): c for (u, v), c in colors.items()}
        sign = 1

    a = colors[(0, 1)]
    b = colors[(0, 2)]
    c = colors[(0, 3)]
    d = colors[(1, 2)]
    e = colors[(1, 3)]
    f = colors[(2, 3)]
    dual = cat.dual

    w2 = (a, e, dual[c])            # cycle (0,1,3)
    w1 = (c, dual[f], dual[b])      # cycle (0,3,2)
    w0 = (d, f, dual[e])            # cycle (1,2,3)
    w3 = (b, dual[d], dual[a])      # cycle (0,2,1)
    for w in (w0, w1, w2, w3):
        if _face_space_dim(cat, w) == 0:
            _TET_CACHE[key] = 0.0
            return 0.0

    psi0 = rotate_spherical(rotate_spherical(face_state(cat, w0)))  # [e*, d, f]
    psi3 = rotate_spherical(face_state(cat, w3))                    # [d*, a*, b]

    a0 = mc.tensor(face_state(cat, w2), face_state(cat, w1))
    a1 = mc.compose(mc.tensor(mc.identity(cat, (a, e)), mc.cap(cat, c),
                              mc.identity(cat, (dual[f], dual[b]))), a0)
    a2 = mc.compose(mc.tensor(mc.identity(cat, (a, e)), psi0,
                              mc.identity(cat, (dual[f], dual[b]))), a1)
    a3 = mc.compose(mc.tensor(mc.identity(cat, (a,)), mc.cap(cat, dual[e]),
                              mc.identity(cat, (d, f, dual[f], dual[b]))), a2)
    a4 = mc.compose(mc.tensor(mc.identity(cat, (a, d)), mc.cap(cat, dual[f]),
                              mc.identity(cat, (dual[b],))), a3)
    a5 = mc.compose(mc.tensor(mc.identity(cat, (a, d)), psi3,
                              mc.identity(cat, (dual[b],))), a4)
    a6 = mc.compose(mc.tensor(mc.identity(cat, (a,)), mc.cap(cat, dual[d]),
                              mc.identity(cat, (dual[a], b, dual[b]))), a5)
    a7 = mc.compose(mc.tensor(mc.cap(cat, dual[a]),
                              mc.identity(cat, (b, dual[b]))), a6)
    val = _nested_caps(cat, a7)
    _TET_CACHE[key] = val
    return val


# ---------------------------------------------------------------------------
# triangulation-side combinatorics
# ---------------------------------------------------------------------------

@dataclass
class _Plan:
    edge_order: list
    edge_slot: dict           # edge class -> position in edge_order
    face_jobs: list           # per face: (slots, check_data, pairing_data)
    tet_jobs: list            # per tet: (slots, color_builder_data)
    num_edges: int


def _directed_color(tri, coloring, t, u, v):
    cls, direction = tri.edge_of(t, u, v)
    col = coloring[cls]
    return col


def _directed(cat, tri, coloring, t, u, v):
    cls, direction = tri.edge_of(t, u, v)
    col = coloring[cls]
    return col if direction > 0 else cat.dual[col]


def _face_word(cat, tri, coloring, t, face):
    sign = tri.tet_sign[t]
    cyc = face_cycle(sign, face)
    return tuple(
        _directed(cat, tri, coloring, t, cyc[i], cyc[(i + 1) % 3])
        for i in range(3))


def _face_edges(tri, t, face):
    cyc = _FACE_CYCLES_POS[face]
    return [tri.edge_of(t, cyc[i], cyc[(i + 1) % 3])[0] for i in range(3)]


def _tet_edges(tri, t):
    return [tri.edge_of(t, u, v)[0] for u, v in itertools.combinations(range(4), 2)]


def _greedy_edge_order(tri):
    """Order edges so faces complete as early as possible."""
    faces = []
    for cls, ((t, f), _) in enumerate(tri.face_classes):
        faces.append(set(_face_edges(tri, t, f)))
    remaining = set(range(tri.num_edges))
    order = []
    placed = set()
    while remaining:
        best, best_score = None, None
        for e in sorted(remaining):
            score = sum(1 for fe in faces if e in fe and fe <= placed | {e})
            touch = sum(1 for fe in faces if e in fe and len(fe - placed) <= 2)
            key = (score, touch)
            if best_score is None or key > best_score:
                best, best_score = e, key
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def _gluing_offset(tri, face_cls):
    """Rotation aligning the two boundary cycles of a glued face pair.

    Returns (slot1, slot2, offset): reading tet2's cycle rotated left by
    ``offset`` visits the image of tet1's cycle in reverse order.
    """
    (t1, f1), (t2, f2) = tri.face_classes[face_cls]
    _, _, perm = tri.gluings[(t1, f1)]
    cyc1 = face_cycle(tri.tet_sign[t1], f1)
    cyc2 = face_cycle(tri.tet_sign[t2], f2)
    image = [perm[v] for v in cyc1]
    rev = list(reversed(image))
    for off in range(3):
        rot = [cyc2[(off + i) % 3] for i in range(3)]
        if rot == rev:
            # strand i of word1 caps against strand (2 - i) of word2 rotated
            # left by r; matching the edge images forces r = off + 2 (mod 3).
            return (off + 2) % 3
    raise StateSumError("glued faces have incompatible orientations")


def _check_admissible(cat, word):
    return cat.N[word[0], word[1], cat.dual[word[2]]] > 0


def enumerate_colorings(cat, tri):
    """All admissible colorings (brute force; used as a test oracle)."""
    out = []
    faces = [(t, f) for (t, f), _ in tri.face_classes]
    for combo in itertools.product(range(cat.rank), repeat=tri.num_edges):
        coloring = dict(enumerate(combo))
        ok = True
        for (t, f) in faces:
            if not _check_admissible(cat, _face_word(cat, tri, coloring, t, f)):
                ok = False
                break
        if ok:
            out.append(coloring)
    return out


def count_admissible(cat, tri):
    total = 0
    for _ in _iter_admissible(cat, tri):
        total += 1
    return total


def _iter_admissible(cat, tri):
    order = _greedy_edge_order(tri)
    pos = {e: i for i, e in enumerate(order)}
    face_ready = {}
    for cls, ((t, f), _) in enumerate(tri.face_classes):
        trigger = max(pos[e] for e in _face_edges(tri, t, f))
        face_ready.setdefault(trigger, []).append((t, f))
    coloring = {}

    def rec(i):
        if i == len(order):
            yield dict(coloring)
            return
        e = order[i]
        for col in range(cat.rank):
            coloring[e] = col
            if all(_check_admissible(cat, _face_word(cat, tri, coloring, t, f))
                   for (t, f) in face_ready.get(i, ())):
                yield from rec(i + 1)
        del coloring[e]

    yield from rec(0)


def _tet_colors(cat, tri, coloring, t):
    colors = {}
    for u, v in itertools.combinations(range(4), 2):
        col = _directed(cat, tri, coloring, t, u, v)
        colors[(u, v)] = col
        colors[(v, u)] = cat.dual[col]
    return colors


def tet_weight(cat, tri, tet, coloring):
    """Normalized tetrahedron weight: network value over root face pairings."""
    if tri.tet_sign is None:
        raise StateSumError("triangulation is not oriented")
    word_check = [
        _face_word(cat, tri, coloring, tet, f) for f in range(4)]
    for w in word_check:
        if not _check_admissible(cat, w):
            raise StateSumError("coloring is inadmissible on a face")
    colors = _tet_colors(cat, tri, coloring, tet)
    net = tet_network(cat, colors, tri.tet_sign[tet])
    norm = 1.0 + 0j
    for f in range(4):
        w = word_check[f]
        p = pairing(cat, mc.dual_word(cat, w), w, 0)
        norm *= np.sqrt(complex(p))
    return complex(net / norm)


def _coloring_value(cat, tri, coloring, face_offsets):
    sdim = mc.spherical_dims(cat)
    total = 1.0 + 0j
    for e, col in coloring.items():
        total *= sdim[col]
    for cls, ((t1, f1), (t2, f2)) in enumerate(tri.face_classes):
        w1 = _face_word(cat, tri, coloring, t1, f1)
        w2 = _face_word(cat, tri, coloring, t2, f2)
        total /= pairing(cat, w1, w2, face_offsets[cls])
    for t in range(tri.num_tets):
        total *= tet_network(cat, _tet_colors(cat, tri, coloring, t),
                             tri.tet_sign[t])
    return total


def _branch_sum(args):
    cat, tri, face_offsets, fixed = args
    total = 0.0 + 0j
    for coloring in _iter_admissible_fixed(cat, tri, fixed):
        total += _coloring_value(cat, tri, coloring, face_offsets)
    return total


def _iter_admissible_fixed(cat, tri, fixed):
    for coloring in _iter_admissible(cat, tri):
        if all(coloring[e] == c for e, c in fixed.items()):
            yield coloring


def tv_invariant(cat, tri, cfg=None):
    """The state-sum invariant of a closed oriented (pseudo-)triangulation."""
    cfg = cfg or StateSumConfig()
    if tri.tet_sign is None:
        raise StateSumError("triangulation is not orientable")
    cls = classify_vertices(tri)
    v_inner = cls.num_inner
    face_offsets = {c: _gluing_offset(tri, c) for c in range(tri.num_faces)}

    if cfg.workers > 1 and tri.num_edges > 0:
        first = _greedy_edge_order(tri)[0]
        jobs = [(cat, tri, face_offsets, {first: col})
                for col in range(cat.rank)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_branch_sum, jobs))
        total = sum(parts)
    else:
        total = 0.0 + 0j
        for coloring in _iter_admissible(cat, tri):
            total += _coloring_value(cat, tri, coloring, face_offsets)

    mu = cat.global_dim
    zeta = complex(cfg.zeta)
    zexp = -tri.num_faces + tri.num_edges - v_inner + tri.num_tets
    return complex(mu ** (-v_inner) * zeta ** zexp * total)
