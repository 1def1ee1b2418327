"""Embedded multicurves and arcs on an identification polygon.

A curve system is recorded by its transverse intersection with the
polygon sides: an ordered list of points on every side ("slots") plus a
perfect matching of the points into chords drawn inside the polygon.
Chords of one system are pairwise non-crossing; a point on a paired
side continues through the gluing to its mirror slot on the partner
side, a point on a hole side is an arc endpoint.

Isotopy-canonical form is reached by (i) pushing off bigons with the
polygon edges (a chord returning to its own side at adjacent slots) and
(ii) sliding strands that hug a polygon vertex across more than half of
the edge ends at that vertex; strands hugging exactly half are resolved
to the lexicographically least of the slide-equivalent encodings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .polygonal import PolygonalSurface, SurfaceError, START

Point = tuple[int, int]  # (side position, slot)


class CurveError(ValueError):
    """Raised for non-embedded or otherwise malformed curve data."""


def _order_chord(p: Point, q: Point) -> tuple[Point, Point]:
    return (p, q) if p <= q else (q, p)


def chords_cross(a: tuple[Point, Point], b: tuple[Point, Point]) -> bool:
    """Whether two chords with distinct endpoints cross inside the disk."""
    p, q = a
    r, s = b
    def between(x, lo, hi):
        if lo <= hi:
            return lo < x < hi
        return x > lo or x < hi
    return between(r, p, q) != between(s, p, q)


@dataclass(frozen=True)
class CurveSystem:
    """Immutable chord-diagram encoding of a multicurve or arc family."""

    surface: PolygonalSurface
    counts: tuple[int, ...]
    chords: tuple[tuple[Point, Point], ...]
    trivial: int = 0

    def __post_init__(self):
        surf = self.surface
        if len(self.counts) != surf.n:
            raise CurveError("counts length does not match side count")
        for s in range(surf.n):
            p = surf.partner[s]
            if p is not None and self.counts[s] != self.counts[p]:
                raise CurveError(f"crossing counts differ across edge {surf.label(s)!r}")
        seen: set[Point] = set()
        for p, q in self.chords:
            for side, slot in (p, q):
                if not (0 <= side < surf.n) or not (0 <= slot < self.counts[side]):
                    raise CurveError(f"point {(side, slot)} out of range")
            if p == q:
                raise CurveError("degenerate chord")
            for pt in (p, q):
                if pt in seen:
                    raise CurveError(f"point {pt} used twice")
                seen.add(pt)
        total = sum(self.counts)
        if len(seen) != total:
            raise CurveError("unmatched points")
        cs = list(self.chords)
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if chords_cross(cs[i], cs[j]):
                    raise CurveError(f"chords cross: {cs[i]} x {cs[j]}")

    # -- navigation -----------------------------------------------------

    def twin(self, pt: Point) -> Point | None:
        side, slot = pt
        p = self.surface.partner[side]
        if p is None:
            return None
        return (p, self.counts[side] - 1 - slot)

    @cached_property
    def _mate(self) -> dict[Point, Point]:
        m = {}
        for p, q in self.chords:
            m[p] = q
            m[q] = p
        return m

    @cached_property
    def components(self) -> tuple[tuple[bool, tuple[Point, ...]], ...]:
        """Components as (closed, visited points in traversal order).

        Closed components list an even number of points (chord ends in
        order); traversal starts at the least point and runs in the
        direction making the encoding lexicographically smaller.  Open
        components (arcs) run from one hole endpoint to the other.
        """
        mate = self._mate
        unvisited = set(mate)
        out = []
        # arcs first: start from hole-side points
        hole_starts = sorted(pt for pt in unvisited
                             if self.surface.partner[pt[0]] is None)
        for start in hole_starts:
            if start not in unvisited:
                continue
            path = [start]
            unvisited.discard(start)
            cur = start
            while True:
                nxt = mate[cur]
                path.append(nxt)
                unvisited.discard(nxt)
                tw = self.twin(nxt)
                if tw is None:
                    break
                path.append(tw)
                unvisited.discard(tw)
                cur = tw
            out.append((False, tuple(path)))
        while unvisited:
            start = min(unvisited)
            path = [start]
            unvisited.discard(start)
            cur = start
            while True:
                nxt = mate[cur]
                tw = self.twin(nxt)
                if tw == start:
                    path.append(nxt)
                    unvisited.discard(nxt)
                    break
                path.append(nxt)
                path.append(tw)
                unvisited.discard(nxt)
                unvisited.discard(tw)
                cur = tw
            out.append((True, tuple(path)))
        return tuple(out)

    @property
    def num_components(self) -> int:
        return len(self.components) + self.trivial

    @property
    def closed_components(self) -> int:
        return sum(1 for closed, _ in self.components if closed) + self.trivial

    @property
    def open_components(self) -> int:
        return sum(1 for closed, _ in self.components if not closed)

    def is_multicurve(self) -> bool:
        return self.open_components == 0

    def is_arc(self) -> bool:
        return self.trivial == 0 and len(self.components) == 1 \
            and not self.components[0][0]

    # -- words ----------------------------------------------------------

    def component_word(self, comp: tuple[bool, tuple[Point, ...]]) -> tuple[tuple[str, int], ...]:
        """Signed edge word read along a component.

        Each gluing hop contributes (edge label, sign of the exit side).
        """
        closed, path = comp
        word = []
        # points come in chord pairs; every second point (odd index) is an
        # exit through its side, except an arc's final endpoint.
        for i in range(1, len(path), 2):
            side, _ = path[i]
            if self.surface.partner[side] is None:
                continue
            word.append((self.surface.label(side), self.surface.sign(side)))
        return tuple(word)

    # -- misc -----------------------------------------------------------

    def on_same_surface(self, other: "CurveSystem") -> bool:
        return self.surface == other.surface

    def component_systems(self) -> list["CurveSystem"]:
        """Each non-trivial component as a standalone system (slots renumbered)."""
        out = []
        for comp in self.components:
            _, path = comp
            pts = sorted(set(path))
            per_side: dict[int, list[Point]] = {}
            for pt in pts:
                per_side.setdefault(pt[0], []).append(pt)
            renum: dict[Point, Point] = {}
            counts = [0] * self.surface.n
            for side, lst in per_side.items():
                counts[side] = len(lst)
                for new_slot, pt in enumerate(sorted(lst)):
                    renum[pt] = (side, new_slot)
            chords = []
            mate = self._mate
            for pt in pts:
                if pt < mate[pt] and mate[pt] in renum and pt in renum:
                    chords.append(_order_chord(renum[pt], renum[mate[pt]]))
            out.append(CurveSystem(self.surface, tuple(counts),
                                   tuple(sorted(chords))))
        return out

    def encoding(self) -> tuple:
        """Hashable canonical encoding (surface word is implicit)."""
        return (self.counts, self.chords, self.trivial)


def from_chords(surface: PolygonalSurface,
                chords: list[tuple[Point, Point]], trivial: int = 0) -> CurveSystem:
    """Build a system from chords, inferring slot counts."""
    counts = [0] * surface.n
    for p, q in chords:
        for side, slot in (p, q):
            counts[side] = max(counts[side], slot + 1)
    return CurveSystem(surface, tuple(counts),
                       tuple(sorted(_order_chord(p, q) for p, q in chords)),
                       trivial)


def empty_system(surface: PolygonalSurface) -> CurveSystem:
    return CurveSystem(surface, (0,) * surface.n, ())


# ---------------------------------------------------------------------------
# mutable scratch state used by normalization and surgery
# ---------------------------------------------------------------------------

class Scratch:
    """Mutable chord diagram; point ids are stable across mutations."""

    def __init__(self, surface: PolygonalSurface):
        self.surface = surface
        self.sides: list[list[int]] = [[] for _ in range(surface.n)]
        self.side_of: dict[int, int] = {}
        self.mate: dict[int, int] = {}
        self.family: dict[int, int] = {}
        self.trivial: dict[int, int] = {}
        self._next = 0

    @classmethod
    def from_system(cls, sys: CurveSystem, family: int = 0) -> "Scratch":
        sc = cls(sys.surface)
        sc.add_system(sys, family)
        return sc

    def add_system(self, sys: CurveSystem, family: int):
        """Append a system's points after any existing points per side."""
        if sys.surface != self.surface:
            raise CurveError("surface mismatch")
        ids: dict[Point, int] = {}
        for side in range(self.surface.n):
            for slot in range(sys.counts[side]):
                pid = self._new_id(family)
                ids[(side, slot)] = pid
                self.sides[side].append(pid)
                self.side_of[pid] = side
        for p, q in sys.chords:
            self.mate[ids[p]] = ids[q]
            self.mate[ids[q]] = ids[p]
        self.trivial[family] = self.trivial.get(family, 0) + sys.trivial

    def _new_id(self, family: int) -> int:
        pid = self._next
        self._next += 1
        self.family[pid] = family
        return pid

    def clone(self) -> "Scratch":
        sc = Scratch(self.surface)
        sc.sides = [list(s) for s in self.sides]
        sc.side_of = dict(self.side_of)
        sc.mate = dict(self.mate)
        sc.family = dict(self.family)
        sc.trivial = dict(self.trivial)
        sc._next = self._next
        return sc

    # -- geometry helpers ------------------------------------------------

    def slot(self, pid: int) -> int:
        return self.sides[self.side_of[pid]].index(pid)

    def twin(self, pid: int) -> int | None:
        side = self.side_of[pid]
        partner = self.surface.partner[side]
        if partner is None:
            return None
        i = self.sides[side].index(pid)
        return self.sides[partner][len(self.sides[partner]) - 1 - i]

    def point(self, pid: int) -> Point:
        return (self.side_of[pid], self.slot(pid))

    def insert(self, side: int, index: int, family: int) -> int:
        pid = self._new_id(family)
        self.sides[side].insert(index, pid)
        self.side_of[pid] = side
        return pid

    def remove_points(self, pids: list[int]):
        for pid in pids:
            side = self.side_of.pop(pid)
            self.sides[side].remove(pid)
            self.family.pop(pid, None)
            self.mate.pop(pid, None)

    def join(self, a: int, b: int):
        self.mate[a] = b
        self.mate[b] = a

    # -- freezing ---------------------------------------------------------

    def to_system(self, family: int | None = None) -> CurveSystem:
        counts = [0] * self.surface.n
        locs: dict[int, Point] = {}
        for side in range(self.surface.n):
            pts = [pid for pid in self.sides[side]
                   if family is None or self.family[pid] == family]
            counts[side] = len(pts)
            for slot, pid in enumerate(pts):
                locs[pid] = (side, slot)
        chords = []
        for pid, qid in self.mate.items():
            if pid < qid and pid in locs and qid in locs:
                chords.append(_order_chord(locs[pid], locs[qid]))
        triv = self.trivial.get(family, 0) if family is not None \
            else sum(self.trivial.values())
        return CurveSystem(self.surface, tuple(counts), tuple(sorted(chords)), triv)

    def check(self):
        """Internal consistency: counts across edges, chords non-crossing per family."""
        surf = self.surface
        for s in range(surf.n):
            p = surf.partner[s]
            if p is not None and len(self.sides[s]) != len(self.sides[p]):
                raise CurveError(f"edge {surf.label(s)!r} crossing counts differ")
        pos = {}
        k = 0
        for side in range(surf.n):
            for pid in self.sides[side]:
                pos[pid] = k
                k += 1
        seen = set()
        for a, b in self.mate.items():
            if a in seen:
                continue
            seen.add(a); seen.add(b)
        for a in pos:
            if a not in self.mate:
                raise CurveError("unmatched point")
        chords = [(min(pos[a], pos[self.mate[a]]), max(pos[a], pos[self.mate[a]]), self.family[a])
                  for a in pos if a < self.mate[a]]
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                (p, q, fa), (r, s, fb) = chords[i], chords[j]
                if fa != fb:
                    continue
                if (p < r < q) != (p < s < q):
                    raise CurveError("same-family chords cross")


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def _find_edge_bigon(sc: Scratch, family: int | None):
    """Chord of the family returning to one paired side at globally adjacent slots."""
    for side in range(sc.surface.n):
        if sc.surface.partner[side] is None:
            continue
        pts = sc.sides[side]
        for i in range(len(pts) - 1):
            a, b = pts[i], pts[i + 1]
            if sc.mate.get(a) == b:
                if family is None or sc.family[a] == family:
                    return (a, b)
    return None


def _remove_edge_bigon(sc: Scratch, bigon: tuple[int, int]):
    a, b = bigon
    fam = sc.family[a]
    ta, tb = sc.twin(a), sc.twin(b)
    ma, mb = sc.mate[ta], sc.mate[tb]
    if ma == tb:  # the twin chord closes up: trivial component
        sc.remove_points([a, b, ta, tb])
        sc.trivial[fam] = sc.trivial.get(fam, 0) + 1
        return
    sc.remove_points([a, b, ta, tb])
    sc.join(ma, mb)


def _vertex_sectors(surface: PolygonalSurface, vclass: int):
    """For an interior vertex: (sectors, ends) with ends[i] = (side sectors[i], START)."""
    link, is_circle = surface.vertex_links[vclass]
    if not is_circle:
        return None
    sectors = [s for s, which in link if which == START]
    return sectors


def _corner_cut_chord(sc: Scratch, corner: int, family: int | None):
    """Chord cutting the given corner, if its endpoints are corner-extreme."""
    n = sc.surface.n
    prev_side = (corner - 1) % n
    if not sc.sides[prev_side] or not sc.sides[corner]:
        return None
    a = sc.sides[prev_side][-1]
    b = sc.sides[corner][0]
    if sc.mate.get(a) != b:
        return None
    if family is not None and sc.family[a] != family:
        return None
    return (a, b)


def _find_chains(sc: Scratch, family: int | None):
    """Maximal vertex-hugging chains.

    Returns a list of (vclass, sectors list, crossing count L+1, closed flag).
    A chain is a maximal run of corner-cutting chords whose corners are
    consecutive around one interior vertex.
    """
    surf = sc.surface
    chains = []
    for vclass, (link, is_circle) in surf.vertex_links.items():
        if not is_circle:
            continue
        sectors = [s for s, which in link if which == START]
        d = len(sectors)
        cut = [(_corner_cut_chord(sc, c, family) is not None) for c in sectors]
        if not any(cut):
            continue
        if all(cut):
            # check whether one strand circles the whole vertex
            chains.append((vclass, sectors, d + 1, False))
            continue
        i = 0
        while i < d:
            if cut[i] and not cut[(i - 1) % d]:
                j = i
                run = []
                while cut[j % d]:
                    run.append(sectors[j % d])
                    j += 1
                chains.append((vclass, run, len(run) + 1, False))
                i = j
            else:
                i += 1
    return chains


def _slide_chain(sc: Scratch, vclass: int, run: list[int], family: int | None):
    """Slide the strand cutting the given consecutive corners across the vertex."""
    surf = sc.surface
    sectors = _vertex_sectors(surf, vclass)
    d = len(sectors)
    idx = {c: i for i, c in enumerate(sectors)}
    i0 = idx[run[0]]
    L = len(run)
    for k in range(L):
        assert sectors[(i0 + k) % d] == run[k], "chain not consecutive"

    # chain chords and crossing points; crossing j sits between sector
    # run[j-1] and run[j]; crossing 0 enters, crossing L exits.
    chord_pts = []
    for c in run:
        chord_pts.append(_corner_cut_chord(sc, c, family))
    # entry: the point before the first chord is the mate of the twin of
    # the first chord's left endpoint.
    first_left = chord_pts[0][0]          # on side run[0]-1, END-extreme
    tw_in = sc.twin(first_left)
    pre = sc.mate[tw_in]
    last_right = chord_pts[-1][1]         # on side run[-1], START-extreme
    tw_out = sc.twin(last_right)
    post = sc.mate[tw_out]
    # a short component may close the two strand ends with one chord
    closed_through = (pre == tw_out)
    fam = sc.family[first_left]

    doomed = [tw_in]
    for a, b in chord_pts:
        doomed += [a, b]
    doomed.append(tw_out)
    sc.remove_points(doomed)

    # complementary ends crossed backwards: ends are indexed by their
    # sector (ends[i] = (side sectors[i], START)); the chain crossed ends
    # i0-1, i0, ..., i0+L-1 (mod d).  Complement, walked backward from
    # i0-2 down to i0+L.
    comp = [(i0 - 2 - k) % d for k in range(d - (L + 1))]
    cur = None if closed_through else pre
    first_attach = None
    for j in comp:
        s = sectors[j]
        partner = surf.partner[s]
        p_t = sc.insert(partner, len(sc.sides[partner]), fam)  # END-extreme twin
        p_s = sc.insert(s, 0, fam)                             # START-extreme
        if cur is None:
            first_attach = p_t
        else:
            sc.join(cur, p_t)
        cur = p_s
    sc.join(cur, first_attach if closed_through else post)


def _reduce_once(sc: Scratch, family: int | None) -> bool:
    bigon = _find_edge_bigon(sc, family)
    if bigon is not None:
        _remove_edge_bigon(sc, bigon)
        return True
    for vclass, run, crossings, _ in _find_chains(sc, family):
        sectors = _vertex_sectors(sc.surface, vclass)
        d = len(sectors)
        if crossings > d:  # full circuit: trivial loop around the vertex
            _slide_chain(sc, vclass, sectors, family)
            return True
        if 2 * crossings > d:
            _slide_chain(sc, vclass, run, family)
            return True
    return False


def reduce_system(sc: Scratch, family: int | None = None):
    """Apply all crossing-decreasing moves until none remain."""
    while _reduce_once(sc, family):
        pass


def _tie_chains(sc: Scratch, family: int | None):
    out = []
    for vclass, run, crossings, _ in _find_chains(sc, family):
        sectors = _vertex_sectors(sc.surface, vclass)
        if 2 * crossings == len(sectors):
            out.append((vclass, run))
    return out


_TIE_CAP = 20000


def _canonical_among_ties(sc: Scratch, family: int | None) -> CurveSystem:
    """Least encoding over the closure of half-vertex slides."""
    best_sys = sc.to_system(family)
    start = best_sys.encoding()
    seen = {start}
    frontier = [sc]
    best = start
    while frontier:
        cur = frontier.pop()
        for vclass, run in _tie_chains(cur, family):
            nxt = cur.clone()
            _slide_chain(nxt, vclass, run, family)
            reduce_system(nxt, family)  # a tie slide may expose reductions
            key = nxt.to_system(family).encoding()
            if key in seen:
                continue
            if len(seen) > _TIE_CAP:
                raise CurveError("tie-slide closure too large")
            seen.add(key)
            frontier.append(nxt)
            if key < best:
                best = key
    if best != start:
        counts, chords, triv = best
        return CurveSystem(sc.surface, counts, chords, triv)
    return best_sys


def normalize(sys: CurveSystem) -> CurveSystem:
    """Canonical bigon-free representative of the isotopy class."""
    sc = Scratch.from_system(sys, 0)
    reduce_system(sc, 0)
    if _tie_chains(sc, 0):
        return _canonical_among_ties(sc, 0)
    return sc.to_system(0)


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def signed_edge_crossings(sys: CurveSystem) -> dict[str, int]:
    """Net signed crossings with every paired edge.

    Components are oriented from their least point; crossing an edge by
    exiting through the positively-signed occurrence counts +1.
    """
    out = {label: 0 for label in sys.surface.edge_labels}
    for comp in sys.components:
        closed, path = comp
        for i in range(1, len(path), 2):
            side, _ = path[i]
            label = sys.surface.label(side)
            if sys.surface.partner[side] is None:
                continue
            out[label] += sys.surface.sign(side)
    return out


def homology_class(sys: CurveSystem) -> tuple[int, ...]:
    """Class in H1 of a closed surface, in the basis dual to the edges.

    Coordinate order follows ``surface.edge_labels``; the entry for edge
    e is the signed intersection number with the edge loop e.
    """
    if not sys.surface.is_closed:
        raise CurveError("homology_class needs a closed surface")
    if not sys.is_multicurve():
        raise CurveError("homology_class needs closed curves")
    crossings = signed_edge_crossings(sys)
    return tuple(crossings[label] for label in sys.surface.edge_labels)
