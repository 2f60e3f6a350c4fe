"""Triangulated closed (pseudo-)3-manifolds via tetrahedron face gluings.

A gluing identifies face ``f`` of tetrahedron ``t`` with face ``f'`` of ``t'``
through a vertex bijection ``perm`` of {0..3} with ``perm[f] == f'`` (face i
is opposite vertex i).  The skeleton (vertex/edge/face classes), orientation
and vertex-link data are derived on construction.
"""

from __future__ import annotations

import itertools

import numpy as np

__all__ = [
    "Triangulation", "TriangulationError", "InapplicableMoveError",
    "parse_triangulation", "serialize_triangulation", "classify_vertices",
    "VertexClassification", "pachner_23", "pachner_32", "pachner_14",
    "pachner_41", "census", "CENSUS_NAMES", "disjoint_union", "isomorphic",
    "first_homology",
]


class TriangulationError(ValueError):
    pass


class InapplicableMoveError(TriangulationError):
    pass


_FACE_CORNERS = {f: tuple(v for v in range(4) if v != f) for f in range(4)}


def _perm_parity(perm):
    p = list(perm)
    parity = 1
    for i in range(4):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            parity = -parity
    return parity


class _UnionFind:
    """Union-find with a relative sign (orientation parity) per element."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n

    def find_signed(self, x):
        s = 1
        while self.parent[x] != x:
            s *= self.sign[x]
            x = self.parent[x]
        return x, s

    def union(self, x, y, rel):
        """Declare sign(x) = rel * sign(y); returns False on parity conflict."""
        rx, sx = self.find_signed(x)
        ry, sy = self.find_signed(y)
        if rx == ry:
            return sx == rel * sy
        self.parent[ry] = rx
        self.sign[ry] = sx * rel * sy
        return True


class Triangulation:
    def __init__(self, num_tets, gluings):
        """``gluings``: dict (t, f) -> (t', f', perm)."""
        self.num_tets = int(num_tets)
        self.gluings = {}
        for (t, f), (t2, f2, perm) in gluings.items():
            self.gluings[(t, f)] = (t2, f2, tuple(perm))
        self._validate()
        self._build_skeleton()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        n = self.num_tets
        for (t, f), (t2, f2, perm) in self.gluings.items():
            if not (0 <= t < n and 0 <= t2 < n and 0 <= f < 4 and 0 <= f2 < 4):
                raise TriangulationError(f"gluing {(t, f)} out of range")
            if sorted(perm) != [0, 1, 2, 3]:
                raise TriangulationError(f"invalid permutation at {(t, f)}")
            if perm[f] != f2:
                raise TriangulationError(
                    f"permutation at {(t, f)} does not carry face {f} to {f2}")
            if (t2, f2) == (t, f):
                raise TriangulationError(f"face {(t, f)} glued to itself")
            back = self.gluings.get((t2, f2))
            inv = [0] * 4
            for i, p in enumerate(perm):
                inv[p] = i
            if back != (t, f, tuple(inv)):
                raise TriangulationError(
                    f"gluing at {(t, f)} is not mutually inverse")
        for t in range(n):
            for f in range(4):
                if (t, f) not in self.gluings:
                    raise TriangulationError(f"face {(t, f)} is unglued")

    # -- skeleton -----------------------------------------------------------

    def _build_skeleton(self):
        n = self.num_tets
        # vertex classes
        vuf = _UnionFind(4 * n)
        for (t, f), (t2, f2, perm) in self.gluings.items():
            for v in _FACE_CORNERS[f]:
                vuf.union(4 * t + v, 4 * t2 + perm[v], 1)
        vroots = {}
        self.vertex_class = {}
        for t in range(n):
            for v in range(4):
                root, _ = vuf.find_signed(4 * t + v)
                self.vertex_class[(t, v)] = vroots.setdefault(root, len(vroots))
        self.num_vertices = len(vroots)

        # edge classes with orientation parity relative to the class root
        edge_ids = {}
        for t in range(n):
            for u, v in itertools.combinations(range(4), 2):
                edge_ids[(t, u, v)] = len(edge_ids)
        euf = _UnionFind(len(edge_ids))
        for (t, f), (t2, f2, perm) in self.gluings.items():
            for u, v in itertools.combinations(_FACE_CORNERS[f], 2):
                a, b = perm[u], perm[v]
                rel = 1 if a < b else -1
                euf.union(edge_ids[(t, u, v)], edge_ids[(t2, min(a, b), max(a, b))], rel)
        members = {}
        for key, idx in edge_ids.items():
            root, sign = euf.find_signed(idx)
            members.setdefault(root, []).append((key, sign))
        self.edge_class = {}
        self.edge_sign = {}
        self.edge_classes = []
        for root in sorted(members, key=lambda r: min(m[0] for m in members[r])):
            mems = sorted(members[root])
            rep, rep_sign = min(mems)
            cls = len(self.edge_classes)
            self.edge_classes.append(rep)
            for key, sign in mems:
                self.edge_class[key] = cls
                self.edge_sign[key] = sign * rep_sign
        self.num_edges = len(self.edge_classes)

        # face classes
        self.face_class = {}
        self.face_classes = []
        seen = set()
        for (t, f) in sorted(self.gluings):
            if (t, f) in seen:
                continue
            t2, f2, _ = self.gluings[(t, f)]
            seen.add((t, f))
            seen.add((t2, f2))
            cls = len(self.face_classes)
            self.face_classes.append(((t, f), (t2, f2)))
            self.face_class[(t, f)] = cls
            self.face_class[(t2, f2)] = cls
        self.num_faces = len(self.face_classes)

        # orientation: s_t s_t' = -parity(perm) for every gluing
        sign = [0] * n
        self.orientable = True
        for start in range(n):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for f in range(4):
                    t2, f2, perm = self.gluings[(t, f)]
                    want = -sign[t] * _perm_parity(perm)
                    if sign[t2] == 0:
                        sign[t2] = want
                        stack.append(t2)
                    elif sign[t2] != want:
                        self.orientable = False
        self.tet_sign = tuple(sign) if self.orientable else None

    # -- derived data ---------------------------------------------------------

    def edge_of(self, t, u, v):
        """(class, direction) of the edge u->v in tet t; direction +1 if it
        agrees with the canonical class orientation."""
        if u == v:
            raise TriangulationError("degenerate edge")
        if u < v:
            return self.edge_class[(t, u, v)], self.edge_sign[(t, u, v)]
        cls, s = self.edge_class[(t, v, u)], self.edge_sign[(t, v, u)]
        return cls, -s

    def edge_degree(self, cls):
        return sum(1 for key, c in self.edge_class.items() if c == cls)

    def vertex_corners(self, vcls):
        return [(t, v) for (t, v), c in self.vertex_class.items() if c == vcls]

    def vertex_link_euler(self, vcls):
        corners = self.vertex_corners(vcls)
        ends = 0
        for cls in range(self.num_edges):
            (t, u, v) = self.edge_classes[cls]
            ends += int(self.vertex_class[(t, u)] == vcls)
            ends += int(self.vertex_class[(t, v)] == vcls)
        # chi = V_link - E_link + F_link with E = 3F/2
        return ends - len(corners) // 2

    def is_closed_manifold(self):
        return all(self.vertex_link_euler(v) == 2 for v in range(self.num_vertices))

    def euler_characteristic(self):
        return (self.num_vertices - self.num_edges
                + self.num_faces - self.num_tets)

    def relabeled(self, order):
        """Triangulation with tetrahedra renamed t -> order.index(t)."""
        new = {order.index(t): t for t in range(self.num_tets)}
        pos = {t: i for i, t in enumerate(order)}
        gl = {}
        for (t, f), (t2, f2, perm) in self.gluings.items():
            gl[(pos[t], f)] = (pos[t2], f2, perm)
        return Triangulation(self.num_tets, gl)

    def __repr__(self):
        return (f"Triangulation(T={self.num_tets}, V={self.num_vertices}, "
                f"E={self.num_edges}, F={self.num_faces}, "
                f"orientable={self.orientable})")


# ---------------------------------------------------------------------------
# vertex classification
# ---------------------------------------------------------------------------

class VertexClassification:
    def __init__(self, euler, inner, singular):
        self.euler = euler            # per vertex class
        self.inner = inner            # indices with sphere links
        self.singular = singular      # the rest

    @property
    def num_inner(self):
        return len(self.inner)


def classify_vertices(tri):
    euler = [tri.vertex_link_euler(v) for v in range(tri.num_vertices)]
    inner = [v for v, chi in enumerate(euler) if chi == 2]
    singular = [v for v, chi in enumerate(euler) if chi != 2]
    return VertexClassification(euler, inner, singular)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def parse_triangulation(text, require_orientable=True):
    num = None
    gl = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "tets":
            num = int(parts[1])
        elif parts[0] == "glue":
            if len(parts) != 9:
                raise TriangulationError(f"line {lineno}: malformed glue line")
            t, f, t2, f2 = map(int, parts[1:5])
            perm = tuple(map(int, parts[5:9]))
            inv = [0] * 4
            for i, p in enumerate(perm):
                inv[p] = i
            if (t, f) in gl and gl[(t, f)] != (t2, f2, perm):
                raise TriangulationError(f"line {lineno}: conflicting gluing")
            gl[(t, f)] = (t2, f2, perm)
            gl[(t2, f2)] = (t, f, tuple(inv))
        else:
            raise TriangulationError(f"line {lineno}: unknown keyword {parts[0]!r}")
    if num is None:
        raise TriangulationError("missing tets declaration")
    tri = Triangulation(num, gl)
    if require_orientable and not tri.orientable:
        raise TriangulationError("triangulation is not orientable")
    return tri


def serialize_triangulation(tri):
    lines = [f"tets {tri.num_tets}"]
    done = set()
    for (t, f) in sorted(tri.gluings):
        if (t, f) in done:
            continue
        t2, f2, perm = tri.gluings[(t, f)]
        done.add((t2, f2))
        lines.append(f"glue {t} {f} {t2} {f2} " + " ".join(map(str, perm)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Pachner moves
# ---------------------------------------------------------------------------

def _compose(p, q):
    """(p o q)[i] = p[q[i]]."""
    return tuple(p[q[i]] for i in range(4))


def _invert(p):
    inv = [0] * 4
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _rebuild(num_tets, gluings):
    full = {}
    for (t, f), (t2, f2, perm) in gluings.items():
        full[(t, f)] = (t2, f2, tuple(perm))
        full[(t2, f2)] = (t, f, _invert(perm))
    return Triangulation(num_tets, full)


def pachner_14(tri, tet):
    """Subdivide tetrahedron ``tet`` into four around a new interior vertex."""
    if not 0 <= tet < tri.num_tets:
        raise InapplicableMoveError("tetrahedron index out of range")
    n = tri.num_tets
    # old tets keep ids (tet removed, replaced by n-1 .. n+2 after compaction)
    old_ids = [t for t in range(n) if t != tet]
    newid = {t: i for i, t in enumerate(old_ids)}
    base = len(old_ids)
    piece = {i: base + i for i in range(4)}  # piece i replaces vertex i by the new vertex
    gl = {}
    done = set()
    for (t, f), (t2, f2, perm) in tri.gluings.items():
        if (t, f) in done or (t2, f2) in done:
            continue
        done.add((t, f))
        if t == tet and t2 == tet:
            gl[(piece[f], f)] = (piece[f2], f2, perm)
        elif t == tet:
            gl[(piece[f], f)] = (newid[t2], f2, perm)
        elif t2 == tet:
            gl[(newid[t], f)] = (piece[f2], f2, perm)
        else:
            gl[(newid[t], f)] = (newid[t2], f2, perm)
    for i in range(4):
        for j in range(i + 1, 4):
            perm = list(range(4))
            perm[i], perm[j] = j, i
            gl[(piece[i], j)] = (piece[j], i, tuple(perm))
    return _rebuild(base + 4, gl)


def pachner_41(tri, vertex_class):
    """Collapse the star of a vertex contained in exactly four tetrahedra."""
    corners = tri.vertex_corners(vertex_class)
    tets = sorted({t for t, _ in corners})
    if len(corners) != 4 or len(tets) != 4:
        raise InapplicableMoveError("vertex star is not four distinct tetrahedra")
    vpos = {t: v for t, v in corners}
    # internal faces: those of star tets containing the vertex
    for t in tets:
        for f in range(4):
            t2, f2, perm = tri.gluings[(t, f)]
            if f == vpos[t]:
                if t2 in tets:
                    raise InapplicableMoveError("external face glued into the star")
            else:
                if t2 not in tets or perm[vpos[t]] != vpos[t2]:
                    raise InapplicableMoveError("star is not a 1-4 configuration")
    # order the four tets; new tetrahedron vertex k <-> star tet tets[k]
    t_of = {k: tets[k] for k in range(4)}
    k_of = {tets[k]: k for k in range(4)}
    # position of new-vertex m inside star tet t: the corner opposite the
    # internal face shared with star tet tets[m]
    def pos_in(t, m):
        tm = t_of[m]
        for v in range(4):
            if v == vpos[t]:
                continue
            t2, _, _ = tri.gluings[(t, v)]
            if t2 == tm:
                return v
        raise InapplicableMoveError("star tets are not mutually glued")

    old_ids = [t for t in range(tri.num_tets) if t not in tets]
    newid = {t: i for i, t in enumerate(old_ids)}
    newtet = len(old_ids)
    gl = {}
    done = set()
    portals = {}
    for k in range(4):
        t = t_of[k]
        ext_face = vpos[t]
        # map: new tet local labels -> star tet t local labels on that face
        lab = {k: ext_face}
        for m in range(4):
            if m == k:
                continue
            lab[m] = pos_in(t, m)
        portals[(t, ext_face)] = (newtet, k, lab)
    for (t, f), (t2, f2, perm) in tri.gluings.items():
        if (t, f) in done or (t2, f2) in done:
            continue
        done.add((t, f))
        src_portal = portals.get((t, f))
        dst_portal = portals.get((t2, f2))
        if t in tets and src_portal is None:
            continue  # internal star face, dropped
        if src_portal and dst_portal:
            nt, nf, lab1 = src_portal
            nt2, nf2, lab2 = dst_portal
            inv2 = {v: m for m, v in lab2.items()}
            newperm = tuple(inv2[perm[lab1[m]]] for m in range(4))
            gl[(nt, nf)] = (nt2, nf2, newperm)
        elif src_portal:
            nt, nf, lab = src_portal
            newperm = tuple(perm[lab[m]] for m in range(4))
            gl[(nt, nf)] = (newid[t2], f2, newperm)
        elif dst_portal:
            nt2, nf2, lab = dst_portal
            inv = {v: m for m, v in lab.items()}
            newperm = tuple(inv[perm[v]] for v in range(4))
            # perm maps t-locals to t2-locals; restrict to the face
            newperm = tuple(inv[perm[v]] if perm[v] in inv else None
                            for v in range(4))
            if None in newperm:
                raise InapplicableMoveError("portal mismatch in 4-1 move")
            gl[(newid[t], f)] = (nt2, nf2, newperm)
        else:
            gl[(newid[t], f)] = (newid[t2], f2, perm)
    return _rebuild(newtet + 1, gl)


def pachner_23(tri, face_class):
    """Replace two tetrahedra sharing a face by three around a new edge."""
    (ta, fa), (tb, fb) = tri.face_classes[face_class]
    if ta == tb:
        raise InapplicableMoveError("face class is a self-gluing")
    _, _, sigma = tri.gluings[(ta, fa)]
    xs = list(_FACE_CORNERS[fa])          # corners of the shared face in A
    apex_a, apex_b = fa, fb
    # new tet i (i=0,1,2) keeps face corners xs[j], j != i
    # local labels: 0 = apex_a, 1 = apex_b, 2/3 = remaining corners (ascending j)
    base = 0
    old_ids = [t for t in range(tri.num_tets) if t not in (ta, tb)]
    newid = {t: i for i, t in enumerate(old_ids)}
    n0 = len(old_ids)
    new_tets = [n0, n0 + 1, n0 + 2]

    # portal maps: old removed faces -> (new tet, new face, label map old->new)
    portals = {}
    for i in range(3):
        rest = [j for j in range(3) if j != i]
        # A's face opposite corner xs[i]
        lab_a = {apex_a: 0, xs[rest[0]]: 2, xs[rest[1]]: 3, xs[i]: 1}
        portals[(ta, xs[i])] = (new_tets[i], 1, lab_a)
        lab_b = {apex_b: 1, sigma[xs[rest[0]]]: 2, sigma[xs[rest[1]]]: 3,
                 sigma[xs[i]]: 0}
        portals[(tb, sigma[xs[i]])] = (new_tets[i], 0, lab_b)

    gl = {}
    # internal gluings between the three new tets: N_i and N_j share the face
    # (0, 1, corner x_k) with k != i, j
    for i in range(3):
        for j in range(i + 1, 3):
            k = 3 - i - j
            # position of x_k in N_i and N_j
            rest_i = [m for m in range(3) if m != i]
            rest_j = [m for m in range(3) if m != j]
            pos_i = 2 + rest_i.index(k)
            pos_j = 2 + rest_j.index(k)
            # shared face of N_i is opposite its other corner
            other_i = 2 + rest_i.index(j)
            other_j = 2 + rest_j.index(i)
            perm = [0] * 4
            perm[0], perm[1] = 0, 1
            perm[pos_i] = pos_j
            perm[other_i] = other_j
            gl[(new_tets[i], other_i)] = (new_tets[j], other_j, tuple(perm))

    done = set()
    for (t, f), (t2, f2, perm) in tri.gluings.items():
        if (t, f) in done or (t2, f2) in done:
            continue
        if (t, f) in ((ta, fa), (tb, fb)):
            continue
        done.add((t, f))
        src = portals.get((t, f))
        dst = portals.get((t2, f2))
        if src and dst:
            nt, nf, lab1 = src
            nt2, nf2, lab2 = dst
            newperm = tuple(lab2[perm[old]] for old, new in
                            sorted(lab1.items(), key=lambda kv: kv[1]))
            gl[(nt, nf)] = (nt2, nf2, newperm)
        elif src:
            nt, nf, lab1 = src
            inv1 = {new: old for old, new in lab1.items()}
            newperm = tuple(perm[inv1[m]] for m in range(4))
            gl[(nt, nf)] = (newid[t2], f2, newperm)
        elif dst:
            nt2, nf2, lab2 = dst
            newperm = tuple(lab2[perm[v]] for v in range(4))
            gl[(newid[t], f)] = (nt2, nf2, newperm)
        else:
            gl[(newid[t], f)] = (newid[t2], f2, perm)
    return _rebuild(n0 + 3, gl)


def pachner_32(tri, edge_class):
    """Collapse three tetrahedra around a degree-3 edge into two."""
    members = sorted(key for key, c in tri.edge_class.items() if c == edge_class)
    tets = sorted({t for t, _, _ in members})
    if len(members) != 3 or len(tets) != 3:
        raise InapplicableMoveError("edge class does not have three distinct tets")
    # identify apexes consistently: start from the first tet, propagate
    t0, u0, v0 = members[0]
    apex = {t0: (u0, v0)}
    frontier = [t0]
    while frontier:
        t = frontier.pop()
        a, b = apex[t]
        for f in range(4):
            if f in (a, b):
                continue
            t2, f2, perm = tri.gluings[(t, f)]
            if t2 in tets and t2 not in apex:
                apex[t2] = (perm[a], perm[b])
                frontier.append(t2)
    if set(apex) != set(tets):
        raise InapplicableMoveError("edge star is not a 3-2 configuration")
    # equatorial corners: each tet has two (complement of its apex pair);
    # classify them via the internal face gluings into three vertices 0,1,2
    eq = {t: tuple(v for v in range(4) if v not in apex[t]) for t in tets}
    parent = {(t, c): (t, c) for t in tets for c in eq[t]}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for t in tets:
        for f in eq[t]:
            t2, f2, perm = tri.gluings[(t, f)]
            if t2 not in tets:
                raise InapplicableMoveError("edge star leaks outside")
            for c in eq[t]:
                if c == f:
                    continue
                key2 = (t2, perm[c])
                if key2 not in parent:
                    raise InapplicableMoveError("edge star corners degenerate")
                ra, rb = find((t, c)), find(key2)
                if ra != rb:
                    parent[rb] = ra
    roots = sorted({find(x) for x in parent})
    if len(roots) != 3:
        raise InapplicableMoveError("edge star does not have three equatorial vertices")
    labels = {x: roots.index(find(x)) for x in parent}
    by_missing = {}
    for t in tets:
        seen = {labels[(t, c)] for c in eq[t]}
        miss = sorted({0, 1, 2} - seen)
        if len(miss) != 1:
            raise InapplicableMoveError("equatorial labels degenerate")
        by_missing[miss[0]] = t
    if len(by_missing) != 3:
        raise InapplicableMoveError("equatorial labels degenerate")

    old_ids = [t for t in range(tri.num_tets) if t not in tets]
    newid = {t: i for i, t in enumerate(old_ids)}
    n0 = len(old_ids)
    t_a, t_b = n0, n0 + 1  # new tets: apex-A side and apex-B side
    # new tet A: local 0 = apex a, locals 1,2,3 = equatorial labels 0,1,2
    # new tet B: local 0 = apex b, locals 1,2,3 = equatorial labels 0,1,2
    gl = {(t_a, 0): (t_b, 0, (0, 1, 2, 3))}
    done = set()
    portals = {}
    for i in range(3):
        t = by_missing[i]
        a, b = apex[t]
        eq_lab = {labels[(t, c)]: c for c in eq[t]}
        # external faces of the star tet: opposite apex b lands on new tet A,
        # opposite apex a lands on new tet B
        for apex_kept, apex_pos, newt in ((a, b, t_a), (b, a, t_b)):
            # label map: new tet local -> old t local, on the glued face
            lab = {0: apex_kept}
            for l in range(3):
                lab[1 + l] = apex_pos if l == i else eq_lab[l]
            portals[(t, apex_pos)] = (newt, 1 + i, lab)
    for (t, f), (t2, f2, perm) in tri.gluings.items():
        if (t, f) in done or (t2, f2) in done:
            continue
        src = portals.get((t, f))
        dst = portals.get((t2, f2))
        if t in tets and src is None:
            continue  # internal star face
        done.add((t, f))
        done.add((t2, f2))
        if src and dst:
            nt, nf, lab1 = src
            nt2, nf2, lab2 = dst
            inv2 = {old: new for new, old in lab2.items()}
            newperm = tuple(inv2[perm[lab1[m]]] for m in range(4))
            gl[(nt, nf)] = (nt2, nf2, newperm)
        elif src:
            nt, nf, lab1 = src
            newperm = tuple(perm[lab1[m]] for m in range(4))
            gl[(nt, nf)] = (newid[t2], f2, newperm)
        elif dst:
            nt2, nf2, lab2 = dst
            inv2 = {old: new for new, old in lab2.items()}
            newperm = tuple(inv2[perm[v]] for v in range(4))
            gl[(newid[t], f)] = (nt2, nf2, newperm)
        else:
            gl[(newid[t], f)] = (newid[t2], f2, perm)
    return _rebuild(n0 + 2, gl)


# ---------------------------------------------------------------------------
# utilities
# ---------------------------------------------------------------------------

def disjoint_union(tri1, tri2):
    gl = dict(tri1.gluings)
    off = tri1.num_tets
    for (t, f), (t2, f2, perm) in tri2.gluings.items():
        gl[(t + off, f)] = (t2 + off, f2, perm)
    return Triangulation(off + tri2.num_tets, gl)


def isomorphic(tri1, tri2):
    """Combinatorial isomorphism test (backtracking; desk-scale inputs)."""
    if tri1.num_tets != tri2.num_tets:
        return False
    n = tri1.num_tets
    perms = list(itertools.permutations(range(4)))

    def extend(assign, labmap, frontier):
        if not frontier:
            if len(assign) == n:
                return True
            t = min(set(range(n)) - set(assign))
            for t2 in set(range(n)) - set(assign.values()):
                for p in perms:
                    a2 = dict(assign); a2[t] = t2
                    l2 = dict(labmap); l2[t] = p
                    if consistent(a2, l2, t) and extend(a2, l2, [t]):
                        return True
            return False
        t = frontier[0]
        rest = frontier[1:]
        for f in range(4):
            s2, g2, perm = tri1.gluings[(t, f)]
            p = labmap[t]
            t2 = assign[t]
            u2, h2, perm2 = tri2.gluings[(t2, p[f])]
            if s2 in assign:
                if assign[s2] != u2:
                    return False
                q = labmap[s2]
                for v in range(4):
                    if q[perm[v]] != perm2[p[v]]:
                        return False
            else:
                q = [None] * 4
                ok = True
                for v in range(4):
                    q[perm[v]] = perm2[p[v]]
                if sorted(q) != [0, 1, 2, 3]:
                    ok = False
                if ok:
                    assign[s2] = u2
                    labmap[s2] = tuple(q)
                    rest = rest + [s2]
        return extend(assign, labmap, rest)

    def consistent(assign, labmap, t):
        p = labmap[t]
        t2 = assign[t]
        for f in range(4):
            s, g, perm = tri1.gluings[(t, f)]
            u, h, perm2 = tri2.gluings[(t2, p[f])]
            if s in assign and assign[s] != u:
                return False
        return True

    for t2 in range(n):
        for p in perms:
            if extend({0: t2}, {0: p}, [0]):
                return True
    return False


def first_homology(tri):
    """H1 of the quotient cell complex as (betti, [torsion coefficients])."""
    ne, nv, nf = tri.num_edges, tri.num_vertices, tri.num_faces
    d1 = np.zeros((nv, ne), dtype=np.int64)
    for cls, (t, u, v) in enumerate(tri.edge_classes):
        d1[tri.vertex_class[(t, v)], cls] += 1
        d1[tri.vertex_class[(t, u)], cls] -= 1
    d2 = np.zeros((ne, nf), dtype=np.int64)
    for cls, ((t, f), _) in enumerate(tri.face_classes):
        a, b, c = _FACE_CORNERS[f]
        for (x, y, s) in ((a, b, 1), (b, c, 1), (a, c, -1)):
            e, direction = tri.edge_of(t, x, y)
            d2[e, cls] += s * direction
    r1 = _int_rank(d1)
    divisors = _smith_diagonal(d2)
    r2 = len(divisors)
    betti = ne - r1 - r2
    torsion = [d for d in divisors if d > 1]
    return betti, torsion


def _int_rank(m):
    m = m.astype(float)
    return int(np.linalg.matrix_rank(m)) if m.size else 0


def _smith_diagonal(mat):
    """Nonzero diagonal of the Smith normal form (small integer matrices)."""
    m = [row[:] for row in mat.tolist()]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = []
    r = c = 0
    while r < rows and c < cols:
        # find pivot of least absolute value
        piv = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j] != 0 and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[c], row[j] = row[j], row[c]
        again = True
        while again:
            again = False
            for i in range(r + 1, rows):
                if m[i][c] % m[r][c] != 0 or m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    for j in range(c, cols):
                        m[i][j] -= q * m[r][j]
                    if m[i][c] != 0:
                        m[r], m[i] = m[i], m[r]
                        again = True
            for j in range(c + 1, cols):
                if m[r][j] != 0:
                    q = m[r][j] // m[r][c]
                    for i in range(r, rows):
                        m[i][j] -= q * m[i][c]
                    if m[r][j] != 0:
                        for i in range(rows):
                            m[i][c], m[i][j] = m[i][j], m[i][c]
                        again = True
        out.append(abs(m[r][c]))
        r += 1
        c += 1
    # enforce divisibility chain
    out.sort()
    for i in range(len(out) - 1):
        a, b = out[i], out[i + 1]
        g = np.gcd(a, b)
        l = a * b // g if g else 0
        out[i], out[i + 1] = g, l
    return [d for d in out if d != 0]


# ---------------------------------------------------------------------------
# census (populated below; gluing tables are verified in the test suite)
# ---------------------------------------------------------------------------

_CENSUS_TABLES = {
    # one-vertex two-tetrahedron 3-sphere
    "s3_2tet": """tets 2
glue 0 0 0 1 1 0 2 3
glue 0 2 1 0 1 2 0 3
glue 0 3 1 1 0 2 3 1
glue 1 2 1 3 0 1 3 2
""",
    # one-vertex real projective 3-space
    "rp3_2tet": """tets 2
glue 0 0 0 1 1 0 2 3
glue 0 2 1 0 1 2 0 3
glue 0 3 1 1 3 0 2 1
glue 1 2 1 3 2 0 3 1
""",
    # one-vertex lens space with H1 = Z/3
    "lens_3_1": """tets 2
glue 0 0 0 1 1 0 2 3
glue 0 2 1 0 2 3 0 1
glue 0 3 1 1 2 3 0 1
glue 1 2 1 3 1 2 3 0
""",
    # one-tetrahedron lens space with H1 = Z/4
    "lens_4_1": """tets 1
glue 0 0 0 1 1 2 3 0
glue 0 2 0 3 1 2 3 0
""",
    # one-vertex S^2 x S^1
    "s2xs1": """tets 2
glue 0 0 0 1 1 2 3 0
glue 0 2 1 0 2 3 0 1
glue 0 3 1 1 2 3 0 1
glue 1 2 1 3 1 2 3 0
""",
    # unknot complement with its boundary torus coned (one singular vertex)
    "solid_torus_ideal": """tets 2
glue 0 0 0 1 1 0 2 3
glue 0 2 1 0 1 2 0 3
glue 0 3 1 1 0 2 3 1
glue 1 2 1 3 1 2 3 0
""",
    # suspension of the torus: Hopf link complement with both ends coned
    "hopf_complement_ideal": """tets 4
glue 0 0 2 0 0 1 2 3
glue 0 1 1 3 0 3 1 2
glue 0 2 1 2 0 1 2 3
glue 0 3 1 1 0 2 3 1
glue 1 0 3 0 0 1 2 3
glue 2 1 3 3 0 3 1 2
glue 2 2 3 2 0 1 2 3
glue 2 3 3 1 0 2 3 1
""",
}

CENSUS_NAMES = ("s3_2tet", "s3_3tet", "rp3_2tet", "lens_3_1", "lens_4_1",
                "s2xs1", "t3", "solid_torus_ideal", "hopf_complement_ideal")


def census(name):
    if name == "s3_3tet":
        base = census("s3_2tet")
        cls = next(c for c, ((t1, _), (t2, _)) in enumerate(base.face_classes)
                   if t1 != t2)
        return pachner_23(base, cls)
    if name == "t3":
        return _kuhn_torus()
    table = _CENSUS_TABLES.get(name)
    if table is None:
        raise TriangulationError(f"unknown census triangulation {name!r}")
    return parse_triangulation(table)


def _kuhn_torus():
    """Six-tetrahedron triangulation of the 3-torus from the subdivided cube."""
    verts = {}

    def vid(x, y, z):
        return (x, y, z)

    perms3 = list(itertools.permutations(range(3)))
    tets = []
    for p in perms3:
        chain = [np.array([0, 0, 0])]
        for axis in p:
            nxt = chain[-1].copy()
            nxt[axis] += 1
            chain.append(nxt)
        tets.append([tuple(v) for v in chain])
    # face matching inside the cube and across identified cube faces
    def reduced(v):
        return tuple(c % 1 if False else c for c in v)

    facemap = {}
    for t, vs in enumerate(tets):
        for f in range(4):
            corners = [vs[v] for v in range(4) if v != f]
            facemap.setdefault((t, f), corners)
    gl = {}
    items = list(facemap.items())
    used = set()
    for (t, f), corners in items:
        if (t, f) in used:
            continue
        found = False
        for shift in itertools.product((-1, 0, 1), repeat=3):
            shifted = [tuple(np.array(c) + shift) for c in corners]
            for (t2, f2), corners2 in items:
                if (t2, f2) == (t, f) or (t2, f2) in used:
                    continue
                if set(shifted) == set(corners2):
                    perm = [None] * 4
                    for v in range(4):
                        if v == f:
                            perm[v] = f2
                        else:
                            target = tuple(np.array(tets[t][v]) + shift)
                            perm[v] = tets[t2].index(target)
                    gl[(t, f)] = (t2, f2, tuple(perm))
                    used.add((t, f))
                    used.add((t2, f2))
                    found = True
                    break
            if found:
                break
        if not found:
            raise TriangulationError("cube face matching failed")
    return _rebuild(6, gl)
