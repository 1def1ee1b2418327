"""Two-family overlays: arrangements, regions, intersection numbers, cuts.

Curves of one family never cross each other; curves of different
families cross transversally inside the polygon, with the crossing
pattern fully determined by the chord endpoints.  Regions are the
components of the surface minus the drawn curves; they are computed by
building the planar arrangement of the chords in the disk, tracing its
faces, and gluing faces across identified side segments.

Minimal position of a pair is reached by removing bigon regions (disk
regions bounded by one arc of each family); the classical bigon
criterion then makes the remaining crossing count the geometric
intersection number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveSystem, CurveError, Scratch

# node/edge keys for the arrangement
_CORNER = "c"
_POINT = "p"
_CROSS = "x"
_BARC = "b"
_SEG = "s"


def scratch_components(sc: Scratch, family: int) -> list[tuple[bool, list[int]]]:
    """Components of one family as (closed, point ids in traversal order)."""
    pids = [pid for pid, f in sc.family.items() if f == family and pid in sc.side_of]
    unvisited = set(pids)
    out = []
    hole_pts = sorted(p for p in unvisited if sc.twin(p) is None)
    for start in hole_pts:
        if start not in unvisited:
            continue
        path = [start]
        unvisited.discard(start)
        cur = start
        while True:
            nxt = sc.mate[cur]
            path.append(nxt)
            unvisited.discard(nxt)
            tw = sc.twin(nxt)
            if tw is None:
                break
            path.append(tw)
            unvisited.discard(tw)
            cur = tw
        out.append((False, path))
    while unvisited:
        start = min(unvisited)
        path = [start]
        unvisited.discard(start)
        cur = start
        while True:
            nxt = sc.mate[cur]
            tw = sc.twin(nxt)
            if tw == start:
                path.append(nxt)
                unvisited.discard(nxt)
                break
            path.append(nxt)
            path.append(tw)
            unvisited.discard(nxt)
            unvisited.discard(tw)
            cur = tw
        out.append((True, path))
    return out


class Arrangement:
    """Planar arrangement of the scratch chords inside the polygon disk."""

    def __init__(self, sc: Scratch):
        self.sc = sc
        surf = sc.surface
        # global cyclic order of boundary nodes: corner of each side, then its points
        self.bnodes: list[tuple] = []
        self.arc_side: list[int] = []  # side carrying boundary arc k (arc k starts at bnodes[k])
        for side in range(surf.n):
            self.bnodes.append((_CORNER, side))
            for pid in sc.sides[side]:
                self.bnodes.append((_POINT, pid))
        self.N = len(self.bnodes)
        self.node_pos = {node: i for i, node in enumerate(self.bnodes)}
        for i, node in enumerate(self.bnodes):
            nxt = self.bnodes[(i + 1) % self.N]
            side = node[1] if node[0] == _CORNER else sc.side_of[node[1]]
            self.arc_side.append(side)

        # chords and their crossings
        self.chid = {}     # pid -> chord id (min of the two endpoint pids)
        chords = {}
        for a, b in sc.mate.items():
            cid = min(a, b)
            self.chid[a] = cid
            self.chid[b] = cid
            chords[cid] = (cid, max(a, b))
        self.chords = chords
        self.pos_of_pid = {}
        for i, node in enumerate(self.bnodes):
            if node[0] == _POINT:
                self.pos_of_pid[node[1]] = i

        def arc_contains(lo, hi, x):
            if lo <= hi:
                return lo < x < hi
            return x > lo or x < hi

        # crossing pairs between different families
        self.crossings: dict[tuple[int, int], tuple] = {}
        cids = sorted(chords)
        for i, c1 in enumerate(cids):
            p1, q1 = chords[c1]
            f1 = sc.family[p1]
            o1, o2 = self.pos_of_pid[p1], self.pos_of_pid[q1]
            for c2 in cids[i + 1:]:
                p2, q2 = chords[c2]
                if sc.family[p2] == f1:
                    continue
                u, v = self.pos_of_pid[p2], self.pos_of_pid[q2]
                if arc_contains(o1, o2, u) != arc_contains(o1, o2, v):
                    self.crossings[(c1, c2)] = None

        # order crossings along every chord, from its smaller endpoint
        self.chain_nodes: dict[int, list] = {}
        for cid, (p, q) in chords.items():
            op, oq = self.pos_of_pid[p], self.pos_of_pid[q]
            xs = []
            for (c1, c2) in self.crossings:
                other = c2 if c1 == cid else (c1 if c2 == cid else None)
                if other is None:
                    continue
                u, v = chords[other]
                ou, ov = self.pos_of_pid[u], self.pos_of_pid[v]
                inside = ou if arc_contains(op, oq, ou) else ov
                key = (inside - op) % self.N
                xs.append((key, (_CROSS, (min(cid, other), max(cid, other)))))
            xs.sort()
            self.chain_nodes[cid] = [(_POINT, p)] + [n for _, n in xs] + [(_POINT, q)]

        self._build_edges()
        self._trace_faces()

    def _build_edges(self):
        # edges: ("b", k) boundary arcs; ("s", (cid, j)) chord segments
        self.edges: dict[tuple, tuple] = {}
        for k in range(self.N):
            self.edges[(_BARC, k)] = (self.bnodes[k], self.bnodes[(k + 1) % self.N])
        for cid, chain in self.chain_nodes.items():
            for j in range(len(chain) - 1):
                self.edges[(_SEG, (cid, j))] = (chain[j], chain[j + 1])

        # rotation system: ccw order of (edge, end) around each node
        self.rot: dict[tuple, list] = {}
        sc = self.sc
        for k, node in enumerate(self.bnodes):
            prev_arc = ((_BARC, (k - 1) % self.N), 1)
            next_arc = ((_BARC, k), 0)
            if node[0] == _CORNER:
                self.rot[node] = [next_arc, prev_arc]
            else:
                pid = node[1]
                cid = self.chid[pid]
                chain = self.chain_nodes[cid]
                end = 0 if chain[0] == node else len(chain) - 2
                which = 0 if chain[0] == node else 1
                seg = ((_SEG, (cid, end)), which)
                # ccw around a boundary point, interior to the left of the
                # forward boundary direction: next arc, chord, prev arc
                self.rot[node] = [next_arc, seg, prev_arc]
        for (c1, c2) in self.crossings:
            node = (_CROSS, (c1, c2))
            ends = []
            for cid in (c1, c2):
                chain = self.chain_nodes[cid]
                j = chain.index(node)
                # segment toward chain[j-1] and toward chain[j+1]
                ends.append(((_SEG, (cid, j - 1)), 1, self._dir_pos(cid, j, -1)))
                ends.append(((_SEG, (cid, j)), 0, self._dir_pos(cid, j, +1)))
            # ccw order around the crossing follows the cyclic order of the
            # boundary positions each branch points toward
            ends.sort(key=lambda t: t[2])
            self.rot[node] = [(e, w) for e, w, _ in ends]

    def _dir_pos(self, cid: int, j: int, step: int) -> int:
        """Boundary position the branch of chord cid at index j points toward."""
        p, q = self.chords[cid]
        if step < 0:
            return self.pos_of_pid[p]
        return self.pos_of_pid[q]

    def _trace_faces(self):
        # half-edge (edge, dir): dir 0 = tail->head as stored
        half_edges = []
        for e in self.edges:
            half_edges.append((e, 0))
            half_edges.append((e, 1))
        self.face_of: dict[tuple, int] = {}
        self.faces: list[list[tuple]] = []

        def head(h):
            e, d = h
            return self.edges[e][1 - d]

        def next_he(h):
            e, d = h
            node = head(h)
            ends = self.rot[node]
            arriving = (e, 1 - d)  # as an end at node: (edge, which end is at node)
            # determine which entry in rot corresponds to the arriving edge-end
            idx = None
            for i, (e2, w2) in enumerate(ends):
                if e2 == e and self._end_node(e2, w2) == node and (w2 == (1 - d) or True):
                    # identify by edge and matching end
                    if self._end_node(e2, w2) == node and e2 == e:
                        # distinguish the two ends of a loop edge; none of
                        # our edges are loops, so edge identity suffices
                        idx = i
                        break
            te, tw = ends[(idx - 1) % len(ends)]
            # leave through that end: half-edge directed away from node
            d2 = 0 if self.edges[te][0] == node and tw == 0 else 1
            if self._end_node(te, tw) != node:
                raise CurveError("rotation table corrupt")
            d2 = tw  # end tw sits at node, so direction tw means tail==node
            return (te, d2) if tw == 0 else (te, 1)

        def _leave(h):
            return h

        for h in half_edges:
            if h in self.face_of:
                continue
            fid = len(self.faces)
            cyc = []
            cur = h
            while cur not in self.face_of:
                self.face_of[cur] = fid
                cyc.append(cur)
                cur = next_he(cur)
            if cur != h:
                raise CurveError("face trace did not close")
            self.faces.append(cyc)
        # Euler sanity for a connected graph in a disk
        V = len(self.rot)
        E = len(self.edges)
        if len(self.faces) != E - V + 1:
            raise CurveError("face count inconsistent")

    def _end_node(self, e, w):
        return self.edges[e][w]
