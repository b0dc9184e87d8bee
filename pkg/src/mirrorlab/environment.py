"""Sparse lazy random environment and its geometric indexes.

The environment discovered by a walk is a hash map from visited sites to
the matching stored there, plus an index over the subset of sites that
count as discovered-mirror locations (the origin, plus every site whose
matching was drawn at a discovery time).  The mirror set drives the
turning-opportunity set, the sparsity audit, and the heavy-block
diagnostics, so it carries two acceleration structures:

* a per-axis index (projection -> sorted coordinates) answering axis
  ray queries in O(log),
* a uniform bucket grid with cell side ceil(1/p) for box counting on
  the kinetic scale.

All balls and boxes use the sup norm.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
import math

from .errors import InternalInvariantError
from .lattice import MirrorFamily
from .rng import Stream


class MirrorSiteIndex:
    """Set of lattice sites with axis-ray and box-count queries."""

    def __init__(self, d: int, cell_side: int):
        self.d = d
        self.cell_side = max(1, int(cell_side))
        self.sites = []
        # per axis: projection (coords minus that axis) -> sorted axis coords
        self._axis = [dict() for _ in range(d)]
        self._cells = {}
        self._lo = None  # bounding box, for diameter queries
        self._hi = None

    def __len__(self) -> int:
        return len(self.sites)

    def __contains__(self, site) -> bool:
        a = 0
        lst = self._axis[a].get(site[1:])
        if not lst:
            return False
        i = bisect_left(lst, site[0])
        return i < len(lst) and lst[i] == site[0]

    def clear(self) -> None:
        self.sites.clear()
        for table in self._axis:
            table.clear()
        self._cells.clear()
        self._lo = None
        self._hi = None

    def add(self, site) -> None:
        self.sites.append(site)
        for a in range(self.d):
            proj = site[:a] + site[a + 1:]
            lst = self._axis[a].setdefault(proj, [])
            insort(lst, site[a])
        side = self.cell_side
        cell = tuple(c // side for c in site)
        self._cells.setdefault(cell, []).append(site)
        if self._lo is None:
            self._lo = list(site)
            self._hi = list(site)
        else:
            for a in range(self.d):
                if site[a] < self._lo[a]:
                    self._lo[a] = site[a]
                elif site[a] > self._hi[a]:
                    self._hi[a] = site[a]

    def diameter(self) -> int:
        """Sup-norm diameter of the current site set (0 if empty)."""
        if self._lo is None:
            return 0
        return max(h - l for l, h in zip(self._lo, self._hi))

    def ray_query(self, x, u: int, max_r: int, min_r: int = 0):
        """Smallest r in [min_r, max_r] with x - r*u a stored site, else None.

        With u the direction the walk could turn into at x, the hit site
        y = x - r*u sees x along u at distance r.
        """
        if max_r < min_r:
            return None
        a = u >> 1
        lst = self._axis[a].get(x[:a] + x[a + 1:])
        if not lst:
            return None
        xa = x[a]
        if u & 1 == 0:
            # y_a = x_a - r, want the largest stored coord <= x_a - min_r
            i = bisect_right(lst, xa - min_r) - 1
            if i < 0:
                return None
            r = xa - lst[i]
        else:
            # y_a = x_a + r, want the smallest stored coord >= x_a + min_r
            i = bisect_left(lst, xa + min_r)
            if i >= len(lst):
                return None
            r = lst[i] - xa
        return r if r <= max_r else None

    def box_count(self, center, r: int) -> int:
        """Number of stored sites within sup distance r of center."""
        if r < 0 or not self.sites:
            return 0
        side = self.cell_side
        lo = [(c - r) // side for c in center]
        hi = [(c + r) // side for c in center]
        n_range = 1
        for a in range(self.d):
            n_range *= hi[a] - lo[a] + 1
            if n_range > 4 * len(self._cells):
                break
        count = 0
        if n_range <= 4 * len(self._cells):
            count = self._count_cell_range(center, r, lo, hi, side)
        else:
            for cell, members in self._cells.items():
                count += self._count_cell(cell, members, center, r, side)
        return count

    def _count_cell_range(self, center, r, lo, hi, side):
        d = self.d
        count = 0
        idx = list(lo)
        while True:
            cell = tuple(idx)
            members = self._cells.get(cell)
            if members:
                count += self._count_cell(cell, members, center, r, side)
            a = d - 1
            while a >= 0:
                idx[a] += 1
                if idx[a] <= hi[a]:
                    break
                idx[a] = lo[a]
                a -= 1
            if a < 0:
                return count

    @staticmethod
    def _count_cell(cell, members, center, r, side):
        # cell spans [c*side, (c+1)*side - 1] on every axis
        inside = True
        for a, c in enumerate(cell):
            lo_a, hi_a = c * side, c * side + side - 1
            if lo_a < center[a] - r or hi_a > center[a] + r:
                inside = False
            if hi_a < center[a] - r or lo_a > center[a] + r:
                return 0
        if inside:
            return len(members)
        n = 0
        for s in members:
            if all(abs(s[a] - center[a]) <= r for a in range(len(cell))):
                n += 1
        return n


class EnvironmentRecord:
    """Per-trial discovered environment of one (regenerated) walk.

    ``visited`` maps a site to ``[matching_index, first_visit_time,
    discovered_by_T, seen_at_T_time]``; the последний flag records whether
    any visit to the site (first or later) happened at a discovery time,
    which is what the interaction stopping time reads.  ``mirror_index``
    holds the origin plus every site whose matching was drawn at a
    discovery time, for the current generation only.
    """

    def __init__(self, family: MirrorFamily, p: float):
        self.family = family
        self.d = family.dimension
        self.p = p
        cell = 1 if p <= 0 else math.ceil(1.0 / p)
        self.origin = (0,) * self.d
        self.visited = {}
        self.mirror_index = MirrorSiteIndex(self.d, cell)
        self.generation = 0
        self.mirror_index.add(self.origin)

    # -- queries ---------------------------------------------------------

    def is_visited(self, site) -> bool:
        return site in self.visited

    def stored_matching_index(self, site):
        rec = self.visited.get(site)
        return None if rec is None else rec[0]

    def mirror_sites(self):
        return self.mirror_index.sites

    def ray_query(self, x, u, max_r, min_r=0):
        return self.mirror_index.ray_query(x, u, max_r, min_r)

    def box_count(self, center, r):
        return self.mirror_index.box_count(center, r)

    # -- mutation --------------------------------------------------------

    def record_discovery(self, site, matching_index: int, t: int, in_T: bool) -> None:
        """Store a first visit.  Double inserts are a caller bug."""
        if site in self.visited:
            raise InternalInvariantError(f"double insert at {site}")
        self.visited[site] = [matching_index, t, in_T, in_T or site == self.origin]
        if in_T and site != self.origin:
            self.mirror_index.add(site)

    def visit_quenched(self, site, t: int, stream: Stream) -> int:
        """First-visit draw of the quenched field; replays stored sites.

        With probability 1-p the site holds the identity; otherwise a
        uniform member of the family (possibly the identity again) and
        the site counts as a mirror location.
        """
        rec = self.visited.get(site)
        if rec is not None:
            rec[3] = True if rec[3] else rec[3]
            return rec[0]
        if self.p > 0 and stream.bernoulli(self.p):
            mi = self.family.sample_index(stream)
            self.record_discovery(site, mi, t, True)
        else:
            mi = self.family.identity_index
            self.record_discovery(site, mi, t, False)
        return mi

    def note_T_visit(self, site) -> None:
        """Mark that some visit to an already-stored site fell at a discovery time."""
        rec = self.visited.get(site)
        if rec is not None:
            rec[3] = True

    def reset(self) -> None:
        """Start a fresh generation: clear everything, re-insert the origin."""
        self.generation += 1
        self.visited.clear()
        self.mirror_index.clear()
        self.mirror_index.add(self.origin)

    # -- debug -----------------------------------------------------------

    def dump_lines(self):
        """One line per visited site: x1..xd, matching index, first time, in_T, generation."""
        for site, (mi, t0, in_t, _) in sorted(self.visited.items()):
            coords = "\t".join(str(c) for c in site)
            yield f"{coords}\t{mi}\t{t0}\t{int(in_t)}\t{self.generation}"

    def audit_rebuild(self) -> None:
        """Debug check: rebuild the index from scratch and compare."""
        rebuilt = MirrorSiteIndex(self.d, self.mirror_index.cell_side)
        rebuilt.add(self.origin)
        for site, rec in self.visited.items():
            if rec[2] and site != self.origin:
                rebuilt.add(site)
        if sorted(rebuilt.sites) != sorted(self.mirror_index.sites):
            raise InternalInvariantError("mirror index out of sync with visited table")
