"""Combinatorial model of orientable surfaces as identification polygons.

A surface is a single polygon whose boundary word identifies sides in
pairs.  Each paired label appears exactly twice, once with sign +1 and
once with sign -1; the identification of the two occurrences is the
orientation-compatible one, so every surface built here is orientable.
Unpaired sides ("hole sides") are free boundary arcs; a boundary circle
of the surface may consist of several hole sides joined at corners.

The standard closed genus-G model is the word

    a1 b1 a1' b1' ... aG bG aG' bG'

(x' denoting the reversed occurrence).  Holes are carried on tethered
blocks ``t H t'`` appended after the handles, which keeps the base
vertex of the polygon a single interior point.  Genus 0 closed is the
2-gon ``e e'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class SurfaceError(ValueError):
    """Raised for malformed polygon words or bad gluing requests."""


Letter = tuple[str, int]  # (label, sign); sign is +1 or -1

START = 0
END = 1


def _inv(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


@dataclass(frozen=True)
class PolygonalSurface:
    """One-face identification polygon, possibly with free (hole) sides.

    ``word`` lists the sides in boundary order.  ``hole_labels`` names
    the labels that are free sides; every other label must occur exactly
    twice with opposite signs.
    """

    word: tuple[Letter, ...]
    hole_labels: frozenset[str] = frozenset()

    def __post_init__(self):
        seen: dict[str, list[int]] = {}
        for pos, (label, sign) in enumerate(self.word):
            if sign not in (1, -1):
                raise SurfaceError(f"bad sign on letter {label!r}")
            seen.setdefault(label, []).append(pos)
        for label, positions in seen.items():
            if label in self.hole_labels:
                if len(positions) != 1 or self.word[positions[0]][1] != 1:
                    raise SurfaceError(f"hole side {label!r} must occur once, positively")
            else:
                if len(positions) != 2:
                    raise SurfaceError(f"label {label!r} occurs {len(positions)} times")
                s0 = self.word[positions[0]][1]
                s1 = self.word[positions[1]][1]
                if s0 + s1 != 0:
                    raise SurfaceError(f"label {label!r} is glued non-orientably")
        for label in self.hole_labels:
            if label not in seen:
                raise SurfaceError(f"hole label {label!r} not in word")

    # -- basic accessors ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.word)

    def label(self, pos: int) -> str:
        return self.word[pos][0]

    def sign(self, pos: int) -> int:
        return self.word[pos][1]

    def is_hole_side(self, pos: int) -> bool:
        return self.word[pos][0] in self.hole_labels

    @cached_property
    def _positions_by_label(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, list[int]] = {}
        for pos, (label, _) in enumerate(self.word):
            out.setdefault(label, []).append(pos)
        return {k: tuple(v) for k, v in out.items()}

    def side_of(self, label: str, sign: int = 1) -> int:
        for pos in self._positions_by_label[label]:
            if self.word[pos][1] == sign:
                return pos
        raise SurfaceError(f"no side {label!r} with sign {sign}")

    @cached_property
    def partner(self) -> tuple[int | None, ...]:
        """Partner side position for each paired side, None for holes."""
        out: list[int | None] = [None] * self.n
        for label, positions in self._positions_by_label.items():
            if label in self.hole_labels:
                continue
            i, j = positions
            out[i], out[j] = j, i
        return tuple(out)

    @cached_property
    def edge_labels(self) -> tuple[str, ...]:
        """Paired edge labels in order of first occurrence."""
        seen = []
        for label, _ in self.word:
            if label not in self.hole_labels and label not in seen:
                seen.append(label)
        return tuple(seen)

    # -- cell structure -------------------------------------------------

    @cached_property
    def corner_class(self) -> tuple[int, ...]:
        """Vertex class of each polygon corner.

        Corner ``i`` sits between side ``i-1`` and side ``i``.  Gluing
        side i (corners i, i+1) to its partner j orientation-compatibly
        identifies corner i with corner j+1 and corner i+1 with corner j.
        """
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for i in range(self.n):
            j = self.partner[i]
            if j is None or j < i:
                continue
            union(i, (j + 1) % self.n)
            union((i + 1) % self.n, j)
        roots = sorted({find(i) for i in range(self.n)})
        index = {r: k for k, r in enumerate(roots)}
        return tuple(index[find(i)] for i in range(self.n))

    @cached_property
    def vertex_count(self) -> int:
        return len(set(self.corner_class))

    @cached_property
    def edge_count(self) -> int:
        return len(self.edge_labels) + len(self.hole_labels)

    @cached_property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + 1

    @cached_property
    def hole_circles(self) -> tuple[tuple[int, ...], ...]:
        """Boundary circles, each a tuple of hole side positions in order.

        The successor of hole side h along its boundary circle is found
        by rotating around h's end corner, through glued sides, until
        the next free side is reached.
        """
        hole_positions = [p for p in range(self.n) if self.is_hole_side(p)]
        succ: dict[int, int] = {}
        for h in hole_positions:
            # walk the link of the end corner of h: cross (side, START)
            # repeatedly until the side to cross is free.
            c = (h + 1) % self.n  # end corner of side h = start corner of side h+1
            while True:
                s = c  # side starting at corner c
                p = self.partner[s]
                if p is None:
                    succ[h] = s
                    break
                c = (p + 1) % self.n
        circles = []
        used = set()
        for h in hole_positions:
            if h in used:
                continue
            circle = [h]
            used.add(h)
            cur = succ[h]
            while cur != h:
                circle.append(cur)
                used.add(cur)
                cur = succ[cur]
            circles.append(tuple(circle))
        return tuple(circles)

    @cached_property
    def num_holes(self) -> int:
        return len(self.hole_circles)

    @cached_property
    def genus(self) -> int:
        g2 = 2 - self.euler_characteristic - self.num_holes
        if g2 % 2 != 0 or g2 < 0:
            raise SurfaceError("inconsistent cell structure")
        return g2 // 2

    @property
    def is_closed(self) -> bool:
        return self.num_holes == 0

    # -- vertex links ---------------------------------------------------

    @cached_property
    def vertex_links(self) -> dict[int, tuple[tuple[tuple[int, int], ...], bool]]:
        """Link of each vertex class.

        Maps vertex class -> (cyclic or linear sequence of side ends
        crossed when rotating around the vertex, is_circle).  A side end
        is (side position, START|END).  Boundary vertices have linear
        links ending at free side ends.
        """
        links: dict[int, tuple[tuple[tuple[int, int], ...], bool]] = {}
        for v in sorted(set(self.corner_class)):
            corners = [c for c in range(self.n) if self.corner_class[c] == v]
            start = corners[0]
            # rotate forward: from corner c cross (side c, START)
            ends: list[tuple[int, int]] = []
            c = start
            is_circle = True
            while True:
                s = c
                p = self.partner[s]
                ends.append((s, START))
                if p is None:
                    is_circle = False
                    break
                c = (p + 1) % self.n
                if c == start:
                    break
            if not is_circle:
                # extend backwards: from corner c cross (side c-1, END)
                back: list[tuple[int, int]] = []
                c = start
                while True:
                    s = (c - 1) % self.n
                    back.append((s, END))
                    p = self.partner[s]
                    if p is None:
                        break
                    c = p
                ends = list(reversed(back)) + ends
            links[v] = (tuple(ends), is_circle)
        return links

    # -- constructions --------------------------------------------------

    def mirrored(self) -> tuple["PolygonalSurface", dict[int, int]]:
        """Orientation-reversed copy.

        Returns the mirrored surface and the map old side position ->
        new side position.  The slot order along every side reverses.
        """
        n = self.n
        new_word = tuple(_inv(self.word[n - 1 - i]) for i in range(n))
        # hole sides must stay positive: flip their stored sign back
        fixed = []
        for label, sign in new_word:
            if label in self.hole_labels:
                fixed.append((label, 1))
            else:
                fixed.append((label, sign))
        surf = PolygonalSurface(tuple(fixed), self.hole_labels)
        posmap = {i: n - 1 - i for i in range(n)}
        return surf, posmap

    def relabelled(self, prefix: str) -> tuple["PolygonalSurface", dict[str, str]]:
        """Copy with every label prefixed, for disjoint assembly."""
        table = {label: f"{prefix}{label}" for label in self._positions_by_label}
        word = tuple((table[l], s) for l, s in self.word)
        holes = frozenset(table[l] for l in self.hole_labels)
        return PolygonalSurface(word, holes), table


def make_surface(genus: int, holes: int = 0) -> PolygonalSurface:
    """Standard model surface of the given genus and hole count."""
    if genus < 0 or holes < 0:
        raise SurfaceError("genus and holes must be non-negative")
    word: list[Letter] = []
    if genus == 0 and holes == 0:
        word = [("e", 1), ("e", -1)]
        return PolygonalSurface(tuple(word))
    for i in range(1, genus + 1):
        word += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
    hole_labels = []
    for j in range(1, holes + 1):
        word += [(f"t{j}", 1), (f"h{j}", 1), (f"t{j}", -1)]
        hole_labels.append(f"h{j}")
    if not word:
        word = [("e", 1), ("e", -1)]
    return PolygonalSurface(tuple(word), frozenset(hole_labels))


def splice(s1: PolygonalSurface, hole1: str, s2: PolygonalSurface, hole2: str,
           seam: str) -> tuple[PolygonalSurface, dict[int, int], dict[int, int]]:
    """Tube-join two distinct surfaces along single-side holes.

    The hole sides are replaced by a new paired edge ``seam``, the belt
    of the connecting tube.  Labels of the two inputs must already be
    disjoint.  Returns (surface, side map of s1, side map of s2).
    """
    h1 = s1.side_of(hole1)
    h2 = s2.side_of(hole2)
    if (h1,) not in s1.hole_circles:
        raise SurfaceError(f"hole {hole1!r} is not a single-side hole")
    if (h2,) not in s2.hole_circles:
        raise SurfaceError(f"hole {hole2!r} is not a single-side hole")
    common = set(s1._positions_by_label) & set(s2._positions_by_label)
    if common:
        raise SurfaceError(f"label collision in splice: {sorted(common)}")

    word: list[Letter] = []
    map1: dict[int, int] = {}
    map2: dict[int, int] = {}
    for pos in range(s1.n):
        if pos == h1:
            word.append((seam, 1))
            # walk s2 forward starting after h2
            for k in range(1, s2.n):
                q = (h2 + k) % s2.n
                map2[q] = len(word)
                word.append(s2.word[q])
            word.append((seam, -1))
        else:
            map1[pos] = len(word)
            word.append(s1.word[pos])
    holes = (s1.hole_labels | s2.hole_labels) - {hole1, hole2}
    return PolygonalSurface(tuple(word), frozenset(holes)), map1, map2


def self_splice(s: PolygonalSurface, hole1: str, hole2: str,
                seam: str) -> tuple[PolygonalSurface, dict[int, int]]:
    """Tube-join two distinct single-side holes of one surface.

    The two hole sides become the two occurrences of the new paired edge
    ``seam``.  Genus rises by one; both holes are consumed.
    """
    h1 = s.side_of(hole1)
    h2 = s.side_of(hole2)
    if hole1 == hole2:
        raise SurfaceError("self-splice needs two distinct holes")
    if (h1,) not in s.hole_circles or (h2,) not in s.hole_circles:
        raise SurfaceError("self-splice holes must be single-side holes")
    word = list(s.word)
    word[h1] = (seam, 1)
    word[h2] = (seam, -1)
    holes = s.hole_labels - {hole1, hole2}
    posmap = {i: i for i in range(s.n)}
    return PolygonalSurface(tuple(word), frozenset(holes)), posmap
