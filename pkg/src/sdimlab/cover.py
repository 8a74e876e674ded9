"""Certified bounds on connected-cover numbers of plane graphs.

For a compact set X and scale eps, the quantity of interest is the least
number of connected subsets of diameter strictly below eps that cover X.
Everything here brackets that number for a `PLGraph` host:

  * `upper_cover` produces a `CoverCertificate`, an explicit list of
    connected edge-fragment unions whose diameters are verified below eps
    and whose fragments cover every edge.
  * `lower_separation` produces a `SeparationCertificate`, a list of points
    with a per-pair witness that no single admissible piece can contain
    both: either the pair is at distance >= eps, or the eps-ball around one
    of them, clipped to the graph, falls apart into components separating
    the two.

Certificates are self-contained and re-checkable; `verify_cover` and
`verify_separation` recompute every claim from scratch with exact rational
arithmetic.  A `TruncationGuard` extends a separation certificate from a
finite shark-teeth truncation to the full continuum: when every chosen
point sits at height >= (omitted amplitude bound) + eps, the omitted teeth
cannot enter any relevant eps-ball, so the witnesses remain valid ambiently.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactcore as xc
from .errors import (EmptySubset, HostMismatch, ParseError, TooLarge,
                     VerificationFailure)
from .geom import PLGraph, Point, format_rational, parse_rational
from .limits import Budget

COVER_FORMAT = "sdimlab/cover"
SEPARATION_FORMAT = "sdimlab/separation"
FORMAT_VERSION = 1

ORACLE_MAX_EDGES = 12
_ORACLE_SEARCH_CAP = 300_000


class _Work:
    """Cumulative exact-arithmetic operation counter tied to a budget."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.total = 0

    def add(self, n: int) -> None:
        self.total += n
        self.budget.check_pairs(self.total)


# ---------------------------------------------------------------------------
# certificate data types


@dataclass(frozen=True)
class EdgeFragment:
    """Closed piece of one edge, parameters 0 <= lo <= hi <= 1.

    lo == hi is allowed and denotes a single point of the edge interior;
    the cover builder never emits these, but hand-written certificates may.
    """
    edge: int
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError(f"bad fragment [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class SubSet:
    """Union of edge fragments plus anchor vertices; one cover element."""
    fragments: tuple[EdgeFragment, ...]
    vertices: tuple[int, ...] = ()

    def endpoint_points(self, graph: PLGraph) -> list[Point]:
        pts = []
        for f in self.fragments:
            pts.append(graph.edge_point(f.edge, f.lo))
            pts.append(graph.edge_point(f.edge, f.hi))
        for v in self.vertices:
            pts.append(graph.vertices[v])
        if not pts:
            raise EmptySubset("element has no fragments and no vertices")
        return pts

    def is_connected(self, graph: PLGraph) -> bool:
        """Set connectivity: fragments touch iff they share a point.

        Fragments of distinct edges can only meet at a graph vertex, so
        interval overlap per edge plus shared-vertex incidence decides it.
        """
        nodes = len(self.fragments) + len(self.vertices)
        if nodes == 0:
            raise EmptySubset("element has no fragments and no vertices")
        parent = list(range(nodes))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

        per_edge: dict[int, list[int]] = {}
        for i, f in enumerate(self.fragments):
            per_edge.setdefault(f.edge, []).append(i)
        for idxs in per_edge.values():
            idxs.sort(key=lambda i: self.fragments[i].lo)
            top, top_hi = idxs[0], self.fragments[idxs[0]].hi
            for i in idxs[1:]:
                f = self.fragments[i]
                if f.lo <= top_hi:
                    union(i, top)
                if f.hi > top_hi:
                    top, top_hi = i, f.hi

        touch: dict[int, list[int]] = {}
        for i, f in enumerate(self.fragments):
            a, b = graph.edges[f.edge]
            if f.lo == 0:
                touch.setdefault(a, []).append(i)
            if f.hi == 1:
                touch.setdefault(b, []).append(i)
        for k, v in enumerate(self.vertices):
            touch.setdefault(v, []).append(len(self.fragments) + k)
        for idxs in touch.values():
            for i in idxs[1:]:
                union(idxs[0], i)

        root = find(0)
        return all(find(i) == root for i in range(nodes))


@dataclass(frozen=True)
class CoverCertificate:
    epsilon: Fraction
    elements: tuple[SubSet, ...]
    graph_id: str

    def __len__(self) -> int:
        return len(self.elements)

    def to_json_dict(self) -> dict:
        out = []
        for el in self.elements:
            frags = sorted(el.fragments, key=lambda f: (f.edge, f.lo, f.hi))
            out.append({
                "whole_edges": [f.edge for f in frags
                                if f.lo == 0 and f.hi == 1],
                "partial_edges": [[f.edge, format_rational(f.lo),
                                   format_rational(f.hi)]
                                  for f in frags
                                  if not (f.lo == 0 and f.hi == 1)],
                "anchor_vertices": sorted(el.vertices),
            })
        return {
            "format": COVER_FORMAT,
            "version": FORMAT_VERSION,
            "graph_id": self.graph_id,
            "epsilon": format_rational(self.epsilon),
            "elements": out,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoverCertificate":
        _expect_format(data, COVER_FORMAT)
        try:
            elements = []
            for el in data["elements"]:
                frags = [EdgeFragment(int(e), Fraction(0), Fraction(1))
                         for e in el.get("whole_edges", ())]
                frags.extend(EdgeFragment(int(e), parse_rational(lo),
                                          parse_rational(hi))
                             for e, lo, hi in el.get("partial_edges", ()))
                frags.sort(key=lambda f: (f.edge, f.lo, f.hi))
                elements.append(SubSet(
                    tuple(frags),
                    tuple(int(v) for v in el.get("anchor_vertices", ())),
                ))
            return cls(parse_rational(data["epsilon"]), tuple(elements),
                       str(data["graph_id"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed cover certificate: {exc}") from exc


@dataclass(frozen=True)
class GraphPoint:
    """Point on a plane graph: parameter t in [0, 1] along an edge."""
    edge: int
    t: Fraction

    def __post_init__(self):
        if not (0 <= self.t <= 1):
            raise ValueError(f"parameter {self.t} outside [0, 1]")

    def locate(self, graph: PLGraph) -> Point:
        return graph.edge_point(self.edge, self.t)


@dataclass(frozen=True)
class DistanceWitness:
    """The pair is at Euclidean distance >= eps (ties allowed)."""
    kind: str = field(default="distance", init=False)


@dataclass(frozen=True)
class DisconnectionWitness:
    """The clipped eps-ball around point `center` separates the pair.

    Verification recomputes the clip at fragment scale `delta`; the witness
    carries no geometry of its own.
    """
    center: int
    delta: Fraction
    kind: str = field(default="disconnection", init=False)


@dataclass(frozen=True)
class TruncationGuard:
    """Ambient validity marker for shark-teeth hosts.

    `k` is the number of teeth actually built; `amplitude_bound` dominates
    the peak height of every omitted tooth; `threshold` must be at least
    amplitude_bound + eps.  Points at height >= threshold are at distance
    >= eps from everything omitted, so omitted material never enters their
    open eps-balls and witnesses computed on the truncation hold ambiently.
    """
    k: int
    amplitude_bound: Fraction
    threshold: Fraction


@dataclass(frozen=True)
class SeparationCertificate:
    epsilon: Fraction
    points: tuple[GraphPoint, ...]
    witnesses: tuple[tuple[int, int, object], ...]
    guard: TruncationGuard | None
    graph_id: str

    def __len__(self) -> int:
        return len(self.points)

    def witness_for(self, i: int, j: int):
        if i > j:
            i, j = j, i
        for a, b, w in self.witnesses:
            if (a, b) == (i, j):
                return w
        return None

    def to_json_dict(self) -> dict:
        ws = []
        for i, j, w in sorted(self.witnesses, key=lambda t: (t[0], t[1])):
            entry = {"i": i, "j": j, "kind": w.kind}
            if isinstance(w, DisconnectionWitness):
                entry["center"] = w.center
                entry["delta"] = format_rational(w.delta)
            ws.append(entry)
        return {
            "format": SEPARATION_FORMAT,
            "version": FORMAT_VERSION,
            "graph_id": self.graph_id,
            "epsilon": format_rational(self.epsilon),
            "points": [[p.edge, format_rational(p.t)] for p in self.points],
            "witnesses": ws,
            "guard": None if self.guard is None else {
                "K": self.guard.k,
                "amplitude_bound": format_rational(self.guard.amplitude_bound),
                "threshold": format_rational(self.guard.threshold),
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SeparationCertificate":
        _expect_format(data, SEPARATION_FORMAT)
        try:
            points = tuple(GraphPoint(int(e), parse_rational(t))
                           for e, t in data["points"])
            witnesses = []
            for w in data["witnesses"]:
                i, j = int(w["i"]), int(w["j"])
                if w["kind"] == "distance":
                    witnesses.append((i, j, DistanceWitness()))
                elif w["kind"] == "disconnection":
                    witnesses.append((i, j, DisconnectionWitness(
                        int(w["center"]), parse_rational(w["delta"]))))
                else:
                    raise ValueError(f"unknown witness kind {w['kind']!r}")
            g = data.get("guard")
            guard = None if g is None else TruncationGuard(
                int(g["K"]),
                parse_rational(g["amplitude_bound"]),
                parse_rational(g["threshold"]))
            return cls(parse_rational(data["epsilon"]), points,
                       tuple(witnesses), guard, str(data["graph_id"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(
                f"malformed separation certificate: {exc}") from exc


def _expect_format(data: dict, name: str) -> None:
    if not isinstance(data, dict) or data.get("format") != name:
        raise ParseError(f"not a {name} document")
    if data.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported version {data.get('version')!r}")


def certificate_from_json_dict(data: dict):
    """Dispatch on the format field; accepts either certificate kind."""
    if isinstance(data, dict) and data.get("format") == COVER_FORMAT:
        return CoverCertificate.from_json_dict(data)
    if isinstance(data, dict) and data.get("format") == SEPARATION_FORMAT:
        return SeparationCertificate.from_json_dict(data)
    raise ParseError("not a certificate document")


# ---------------------------------------------------------------------------
# clipped-ball connectivity


def _frag_count(len2: Fraction, delta: Fraction) -> int:
    """Least n >= 1 with (edge length / n) <= delta."""
    r = len2 / (delta * delta)
    n = math.isqrt(r.numerator // r.denominator)
    while n * n < r:
        n += 1
    return max(n, 1)


class _ClipIndex:
    """Components of the closed eps-ball around `center`, on the graph.

    Each edge within reach is split into fragments no longer than delta;
    a fragment is kept when its exact distance to the center is <= eps.
    Kept fragments that share a point (consecutive on an edge, or meeting
    at a graph vertex) are merged.  The kept union contains the open
    eps-ball intersected with the graph, so disjoint components here prove
    genuine separation there.
    """

    def __init__(self, graph: PLGraph, center: GraphPoint, eps2: Fraction,
                 delta: Fraction, work: _Work):
        self.graph = graph
        self.delta = delta
        craw = center.locate(graph).raw()
        en, ed = eps2.numerator, eps2.denominator
        self.nfrag: list[int] = []
        self.kept: list[list[bool] | None] = []
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv

        touch: dict[int, list[tuple[int, int]]] = {}
        for e in range(len(graph.edges)):
            a, b = graph.edge_endpoints(e)
            work.add(1)
            dn, dd = xc.point_seg_dist2(craw, a.raw(), b.raw())
            if dn * ed > en * dd:
                self.nfrag.append(0)
                self.kept.append(None)
                continue
            m = _frag_count(graph.edge_length2(e), delta)
            work.add(m)
            flags = []
            prev = a
            for j in range(1, m + 1):
                nxt = graph.edge_point(e, Fraction(j, m))
                dn, dd = xc.point_seg_dist2(craw, prev.raw(), nxt.raw())
                flags.append(dn * ed <= en * dd)
                prev = nxt
            self.nfrag.append(m)
            self.kept.append(flags)
            for j, f in enumerate(flags):
                if f:
                    parent[(e, j)] = (e, j)
                    if j > 0 and flags[j - 1]:
                        union((e, j - 1), (e, j))
            if flags[0]:
                touch.setdefault(graph.edges[e][0], []).append((e, 0))
            if flags[m - 1]:
                touch.setdefault(graph.edges[e][1], []).append((e, m - 1))
        for nodes in touch.values():
            for u in nodes[1:]:
                union(nodes[0], u)
        self._find = find
        self.center_comps = self.components_at(center)

    def components_at(self, gp: GraphPoint) -> frozenset:
        flags = self.kept[gp.edge]
        if flags is None:
            return frozenset()
        m = self.nfrag[gp.edge]
        j0 = int(gp.t * m)
        if j0 >= m:
            j0 = m - 1
        js = {j0}
        if j0 > 0 and gp.t == Fraction(j0, m):
            js.add(j0 - 1)
        return frozenset(self._find((gp.edge, j))
                         for j in js if flags[j])

    def separates(self, gp: GraphPoint) -> bool:
        return self.center_comps.isdisjoint(self.components_at(gp))


def disconnection_witness(graph: PLGraph, center: GraphPoint,
                          other: GraphPoint, eps: Fraction,
                          delta: Fraction | None = None,
                          budget: Budget | None = None
                          ) -> DisconnectionWitness | None:
    """Standalone clipped-ball check for one pair; None when inconclusive.

    The returned witness stores only delta: verification repeats this exact
    computation.  Refining delta only removes fragments, so a witness found
    at some delta stays valid at every finer delta.  The center index is a
    placeholder (-1) here; certificate assembly fills in the real one.
    """
    delta = delta if delta is not None else eps / 8
    work = _Work(budget or Budget())
    clip = _ClipIndex(graph, center, eps * eps, delta, work)
    if clip.separates(other):
        return DisconnectionWitness(center=-1, delta=delta)
    return None


# ---------------------------------------------------------------------------
# verification


def check_cover(graph: PLGraph, cert: CoverCertificate,
                budget: Budget | None = None) -> int:
    """Recheck a cover certificate; returns the element count.

    Checks, in order: host identity, per-element well-formedness,
    connectivity, strict diameter < eps, and that the per-edge fragment
    unions cover every edge end to end.  Raises VerificationFailure with
    the first offending detail; `verify_cover` is the boolean wrapper.
    """
    work = _Work(budget or Budget())
    work.budget.check_edges(len(graph.edges))
    if cert.graph_id != graph.graph_id():
        raise HostMismatch(f"certificate is for graph {cert.graph_id}, "
                           f"host is {graph.graph_id()}")
    if cert.epsilon <= 0:
        raise VerificationFailure("epsilon must be positive")
    eps2 = cert.epsilon * cert.epsilon
    ne, nv = len(graph.edges), len(graph.vertices)
    covered: list[list[tuple[Fraction, Fraction]]] = [[] for _ in range(ne)]
    for idx, el in enumerate(cert.elements):
        for f in el.fragments:
            if not (0 <= f.edge < ne):
                raise VerificationFailure(
                    f"element {idx}: edge {f.edge} out of range")
            covered[f.edge].append((f.lo, f.hi))
        for v in el.vertices:
            if not (0 <= v < nv):
                raise VerificationFailure(
                    f"element {idx}: vertex {v} out of range")
        if not el.is_connected(graph):
            raise VerificationFailure(f"element {idx} is not connected")
        pts = [p.raw() for p in el.endpoint_points(graph)]
        work.add(len(pts) * len(pts))
        dn, dd = xc.max_pair_dist2(pts)
        if dn * eps2.denominator >= eps2.numerator * dd:
            raise VerificationFailure(
                f"element {idx} has diameter >= epsilon")
    for e in range(ne):
        reach = Fraction(0)
        for lo, hi in sorted(covered[e]):
            if lo > reach:
                break
            if hi > reach:
                reach = hi
        if reach < 1:
            raise VerificationFailure(f"edge {e} is not fully covered")
    return len(cert.elements)


def _guard_facts_for(graph: PLGraph) -> tuple[int, Fraction]:
    """Truncation index and canonical omitted-amplitude bound of the host,
    recomputed from builder metadata."""
    from .continuum import next_amplitude_bound, spec_from_meta
    try:
        spec = spec_from_meta(graph.meta)
    except (KeyError, ValueError) as exc:
        raise VerificationFailure(
            f"host carries no usable truncation metadata: {exc}") from exc
    return spec.K, next_amplitude_bound(spec)


def check_separation(graph: PLGraph, cert: SeparationCertificate,
                     budget: Budget | None = None) -> int:
    """Recheck a separation certificate; returns the point count.

    Every unordered pair of points must carry a valid witness.  When a
    guard is present, the truncation index and amplitude bound are
    recomputed from the host's builder metadata and every point must clear
    the height threshold.  Raises VerificationFailure with the first
    offending detail; `verify_separation` is the boolean wrapper.
    """
    budget = budget or Budget()
    budget.check_edges(len(graph.edges))
    work = _Work(budget)
    if cert.graph_id != graph.graph_id():
        raise HostMismatch(f"certificate is for graph {cert.graph_id}, "
                           f"host is {graph.graph_id()}")
    if cert.epsilon <= 0:
        raise VerificationFailure("epsilon must be positive")
    eps2 = cert.epsilon * cert.epsilon
    en, ed = eps2.numerator, eps2.denominator
    ne = len(graph.edges)
    for k, gp in enumerate(cert.points):
        if not (0 <= gp.edge < ne):
            raise VerificationFailure(f"point {k}: edge out of range")
    located = [gp.locate(graph) for gp in cert.points]

    if cert.guard is not None:
        host_k, canonical = _guard_facts_for(graph)
        if cert.guard.k != host_k:
            raise VerificationFailure(
                f"guard claims truncation {cert.guard.k}, host has {host_k}")
        if cert.guard.amplitude_bound < canonical:
            raise VerificationFailure(
                "guard amplitude bound is below the recomputed bound")
        if cert.guard.threshold < cert.guard.amplitude_bound + cert.epsilon:
            raise VerificationFailure(
                "guard threshold is below amplitude bound + epsilon")
        for k, p in enumerate(located):
            if p.y < cert.guard.threshold:
                raise VerificationFailure(
                    f"point {k} lies below the guard threshold")

    n = len(cert.points)
    table = {}
    for i, j, w in cert.witnesses:
        if not (0 <= i < j < n):
            raise VerificationFailure(f"witness indexes ({i},{j}) invalid")
        table[(i, j)] = w
    clips: dict[tuple[int, Fraction], _ClipIndex] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = table.get((i, j))
            if w is None:
                raise VerificationFailure(f"pair ({i},{j}) has no witness")
            if isinstance(w, DistanceWitness):
                work.add(1)
                dn, dd = xc.dist2_q(located[i].raw(), located[j].raw())
                if dn * ed < en * dd:
                    raise VerificationFailure(
                        f"pair ({i},{j}): distance below epsilon")
            elif isinstance(w, DisconnectionWitness):
                if w.center not in (i, j):
                    raise VerificationFailure(
                        f"pair ({i},{j}): center must be one of the pair")
                if w.delta <= 0:
                    raise VerificationFailure(
                        f"pair ({i},{j}): delta must be positive")
                c, o = (i, j) if w.center == i else (j, i)
                key = (c, w.delta)
                if key not in clips:
                    clips[key] = _ClipIndex(graph, cert.points[c], eps2,
                                            w.delta, work)
                if not clips[key].separates(cert.points[o]):
                    raise VerificationFailure(
                        f"pair ({i},{j}): clipped ball does not separate")
            else:
                raise VerificationFailure(
                    f"pair ({i},{j}): unknown witness type")
    return n


def verify_cover(graph: PLGraph, cert: CoverCertificate,
                 budget: Budget | None = None) -> bool:
    """True iff the cover certificate checks out against this host.

    Content failures come back as False; a certificate addressed to a
    different graph raises HostMismatch instead, since comparing it here
    is a caller error rather than a refuted claim.
    """
    try:
        check_cover(graph, cert, budget)
    except VerificationFailure:
        return False
    return True


def verify_separation(graph: PLGraph, cert: SeparationCertificate,
                      budget: Budget | None = None) -> bool:
    """True iff the separation certificate checks out against this host."""
    try:
        check_separation(graph, cert, budget)
    except VerificationFailure:
        return False
    return True


# ---------------------------------------------------------------------------
# upper bound: greedy connected cover


def _gap_right(covered: list[tuple[Fraction, Fraction]],
               a: Fraction) -> Fraction | None:
    """End of the uncovered stretch starting at a, or None if a is interior
    to covered territory (or at the edge end)."""
    if a >= 1:
        return None
    for lo, hi in covered:
        if lo <= a:
            if hi > a:
                return None
        else:
            return lo
    return Fraction(1)


def _gap_left(covered: list[tuple[Fraction, Fraction]],
              a: Fraction) -> Fraction | None:
    if a <= 0:
        return None
    out = Fraction(0)
    for lo, hi in covered:
        if hi >= a:
            if lo < a:
                return None
            break
        out = hi
    return out


def _merge_into(covered: list, lo: Fraction, hi: Fraction) -> None:
    covered.append((lo, hi))
    covered.sort()
    merged = [covered[0]]
    for xlo, xhi in covered[1:]:
        if xlo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], xhi))
        else:
            merged.append((xlo, xhi))
    covered[:] = merged


def _extend(graph: PLGraph, e: int, a: Fraction, b: Fraction, forward: bool,
            s_raw: list, en: int, ed: int, work: _Work) -> Fraction | None:
    """Farthest parameter c strictly between a and b (or b itself) such
    that the point at c stays strictly within eps of every piece endpoint.

    Float search suggests a boundary; the returned value is snapped to a
    coarse absolute dyadic grid and re-checked exactly, so denominators do
    not compound across pieces.  Falls back to exact halving, which must
    succeed eventually because the constraint is open and holds at a.
    """
    def ok(c: Fraction) -> bool:
        work.add(len(s_raw))
        return xc.all_dist2_below(s_raw, graph.edge_point(e, c).raw(), en, ed)

    if ok(b):
        return b
    pa, pb = graph.edge_point(e, a), graph.edge_point(e, b)
    ax, ay = float(pa.x), float(pa.y)
    bx, by = float(pb.x), float(pb.y)
    sf = [(n0 / d0, n1 / d1) for n0, d0, n1, d1 in s_raw]
    lim = en / ed

    def okf(t: float) -> bool:
        x, y = ax + t * (bx - ax), ay + t * (by - ay)
        return all((x - px) ** 2 + (y - py) ** 2 < lim for px, py in sf)

    lo, hi = 0.0, 1.0
    for _ in range(44):
        mid = (lo + hi) / 2
        if okf(mid):
            lo = mid
        else:
            hi = mid
    cstar = float(a) + lo * (float(b) - float(a))
    span = abs(cstar - float(a))
    if span > 0:
        base = max(2, math.ceil(-math.log2(span)) + 6)
        for s in (base, base + 8, base + 16):
            if s > 200:
                break
            step = Fraction(1, 2 ** s)
            if forward:
                c = Fraction(math.floor(cstar * 2 ** s), 2 ** s)
                for _ in range(3):
                    if a < c < b and ok(c):
                        return c
                    c -= step
            else:
                c = Fraction(math.ceil(cstar * 2 ** s), 2 ** s)
                for _ in range(3):
                    if b < c < a and ok(c):
                        return c
                    c += step
    c = (a + b) / 2
    for _ in range(300):
        if ok(c):
            return c
        c = (a + c) / 2
    return None


def upper_cover(graph: PLGraph, eps: Fraction,
                budget: Budget | None = None) -> CoverCertificate:
    """Greedy connected cover by pieces of diameter strictly below eps.

    Pieces grow from the lexicographically first uncovered point, creeping
    along edges and fanning out at vertices, but only ever into territory
    no earlier piece has claimed; this keeps each piece's contribution
    maximal instead of re-treading covered ground.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    work = _Work(budget or Budget())
    work.budget.check_edges(len(graph.edges))
    eps2 = eps * eps
    en, ed = eps2.numerator, eps2.denominator
    ne = len(graph.edges)
    covered: list[list[tuple[Fraction, Fraction]]] = [[] for _ in range(ne)]

    def first_gap() -> tuple[int, Fraction] | None:
        for e in range(ne):
            ivs = covered[e]
            if not ivs or ivs[0][0] > 0:
                return e, Fraction(0)
            reach = ivs[0][1]
            for lo, hi in ivs[1:]:
                if lo > reach:
                    return e, reach
                reach = max(reach, hi)
            if reach < 1:
                return e, reach
        return None

    elements: list[SubSet] = []
    while True:
        anchor = first_gap()
        if anchor is None:
            break
        e0, a0 = anchor
        s_raw: list = []
        s_seen: set = set()
        frags: dict[int, list[tuple[Fraction, Fraction]]] = {}
        piece_vertices: set[int] = set()
        queue: deque = deque([(e0, a0, True)])

        def absorb(v: int) -> None:
            if v in piece_vertices:
                return
            piece_vertices.add(v)
            for e2, end in sorted(graph.incident(v)):
                queue.append((e2, Fraction(end), end == 0))

        while queue:
            e, a, forward = queue.popleft()
            b = (_gap_right if forward else _gap_left)(covered[e], a)
            if b is None:
                continue
            ra = graph.edge_point(e, a).raw()
            if s_raw and ra not in s_seen:
                work.add(len(s_raw))
                if not xc.all_dist2_below(s_raw, ra, en, ed):
                    continue
            if ra not in s_seen:
                s_seen.add(ra)
                s_raw.append(ra)
            c = _extend(graph, e, a, b, forward, s_raw, en, ed, work)
            if c is None:
                continue
            rc = graph.edge_point(e, c).raw()
            if rc not in s_seen:
                s_seen.add(rc)
                s_raw.append(rc)
            lo, hi = (a, c) if forward else (c, a)
            frags.setdefault(e, []).append((lo, hi))
            _merge_into(covered[e], lo, hi)
            if lo == 0:
                absorb(graph.edges[e][0])
            if hi == 1:
                absorb(graph.edges[e][1])

        out: list[EdgeFragment] = []
        for e in sorted(frags):
            runs = sorted(frags[e])
            merged = [list(runs[0])]
            for flo, fhi in runs[1:]:
                if flo <= merged[-1][1]:
                    merged[-1][1] = max(merged[-1][1], fhi)
                else:
                    merged.append([flo, fhi])
            out.extend(EdgeFragment(e, flo, fhi) for flo, fhi in merged)
        elements.append(SubSet(tuple(out)))
    return CoverCertificate(eps, tuple(elements), graph.graph_id())


# ---------------------------------------------------------------------------
# lower bound: greedy separated set


def _candidate_points(graph: PLGraph, eps: Fraction,
                      mode: str) -> list[GraphPoint]:
    """Candidate pool for the separated-set greedy.

    "grid" places, per edge, the densest uniform subdivision whose spacing
    is still >= eps (so same-edge neighbours separate by distance alone),
    plus every vertex.  "vertices" restricts to vertices, which for
    shark-teeth hosts means base points and peaks.
    """
    cands: list[GraphPoint] = []
    seen: set[Point] = set()

    def push(gp: GraphPoint) -> None:
        p = gp.locate(graph)
        if p not in seen:
            seen.add(p)
            cands.append(gp)

    for v in range(len(graph.vertices)):
        e, end = min(graph.incident(v))
        push(GraphPoint(e, Fraction(end)))
    if mode == "grid":
        eps2 = eps * eps
        for e in range(len(graph.edges)):
            r = graph.edge_length2(e) / eps2
            q = math.isqrt(r.numerator // r.denominator)
            for j in range(1, q):
                push(GraphPoint(e, Fraction(j, q)))
    elif mode != "vertices":
        raise ValueError(f"unknown candidate mode {mode!r}")
    return cands


def lower_separation(graph: PLGraph, eps: Fraction,
                     guard: TruncationGuard | None = None,
                     candidates: str | Sequence[GraphPoint] = "grid",
                     delta: Fraction | None = None,
                     budget: Budget | None = None) -> SeparationCertificate:
    """Greedy maximal family of pairwise-separated points with witnesses.

    Candidates are scanned from the highest point down; each is kept when
    every already-kept point is either at distance >= eps or provably cut
    off by the candidate's clipped eps-ball.  With a guard, candidates
    below the height threshold are discarded first, which is what makes
    the resulting certificate meaningful for the untruncated continuum.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    work = _Work(budget or Budget())
    work.budget.check_edges(len(graph.edges))
    eps2 = eps * eps
    en, ed = eps2.numerator, eps2.denominator
    delta = delta if delta is not None else eps / 8
    pool = (_candidate_points(graph, eps, candidates)
            if isinstance(candidates, str) else list(candidates))
    located = [(gp, gp.locate(graph)) for gp in pool]
    if guard is not None:
        located = [(gp, p) for gp, p in located if p.y >= guard.threshold]
    located.sort(key=lambda it: (-it[1].y, it[1].x, it[0].edge, it[0].t))

    kept: list[GraphPoint] = []
    kept_raw: list = []
    witnesses: list[tuple[int, int, object]] = []
    for gp, p in located:
        rp = p.raw()
        clip: _ClipIndex | None = None
        found: list[tuple[int, object]] = []
        ok = True
        for i, rk in enumerate(kept_raw):
            work.add(1)
            dn, dd = xc.dist2_q(rp, rk)
            if dn * ed >= en * dd:
                found.append((i, DistanceWitness()))
                continue
            if clip is None:
                clip = _ClipIndex(graph, gp, eps2, delta, work)
            if clip.separates(kept[i]):
                found.append((i, DisconnectionWitness(center=len(kept),
                                                      delta=delta)))
            else:
                ok = False
                break
        if ok:
            j = len(kept)
            witnesses.extend((i, j, w) for i, w in found)
            kept.append(gp)
            kept_raw.append(rp)
    # Canonical witness order so the JSON round trip is the identity.
    witnesses.sort(key=lambda t: (t[0], t[1]))
    return SeparationCertificate(eps, tuple(kept), tuple(witnesses), guard,
                                 graph.graph_id())


def truncation_guard(graph: PLGraph, eps: Fraction) -> TruncationGuard:
    """Guard for a shark-teeth host, from its builder metadata.

    The amplitude bound is always recomputed here rather than accepted
    from the caller, so a guard can never quietly overstate what was built.
    """
    from .continuum import next_amplitude_bound, spec_from_meta
    spec = spec_from_meta(graph.meta)
    bound = next_amplitude_bound(spec)
    return TruncationGuard(spec.K, bound, bound + eps)


def s_bounds(graph: PLGraph, eps: Fraction,
             guard: TruncationGuard | None = None,
             candidates: str | Sequence[GraphPoint] = "grid",
             delta: Fraction | None = None,
             budget: Budget | None = None) -> tuple[int, int]:
    """Certified bracket (lower, upper) on the connected-cover number.

    Convenience over `lower_separation` and `upper_cover` for callers who
    want numbers rather than certificates.  lower <= upper always: both
    sides bracket the same quantity.
    """
    low = lower_separation(graph, eps, guard=guard, candidates=candidates,
                           delta=delta, budget=budget)
    up = upper_cover(graph, eps, budget=budget)
    assert len(low.points) <= len(up.elements)
    return len(low.points), len(up.elements)


# ---------------------------------------------------------------------------
# small-instance oracle


class _SearchCap(Exception):
    pass


def brute_force_oracle(graph: PLGraph, eps: Fraction,
                       delta: Fraction | None = None,
                       budget: Budget | None = None) -> tuple[int, int]:
    """Independent (lower, upper) bracket for tiny hosts, by exhaustion.

    The graph is chopped into fragments no longer than min(delta, eps/2).
    Upper: exact branch-and-bound set cover over a family of maximal
    connected fragment unions of diameter < eps, grown from every seed.
    Lower: exact branch-and-bound maximum independent set over fragment
    endpoints under the pairwise-separation relation.  Both searches fall
    back to their greedy seeds when the node cap trips, which keeps the
    bracket valid either way; on the small hosts this is meant for, the
    searches run to completion and the bracket is tight at this scale.
    """
    if len(graph.edges) > ORACLE_MAX_EDGES:
        raise TooLarge(f"{len(graph.edges)} edges exceeds oracle limit "
                       f"{ORACLE_MAX_EDGES}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    work = _Work(budget or Budget())
    eps2 = eps * eps
    en, ed = eps2.numerator, eps2.denominator
    d_eff = min(delta if delta is not None else eps / 4, eps / 2)

    frag_of: list[tuple[int, int]] = []
    frag_pts: list[tuple] = []
    counts: list[int] = []
    index: dict[tuple[int, int], int] = {}
    for e in range(len(graph.edges)):
        m = _frag_count(graph.edge_length2(e), d_eff)
        counts.append(m)
        for j in range(m):
            index[(e, j)] = len(frag_of)
            frag_of.append((e, j))
            frag_pts.append((graph.edge_point(e, Fraction(j, m)).raw(),
                             graph.edge_point(e, Fraction(j + 1, m)).raw()))
    nfrag = len(frag_of)
    adj: list[set[int]] = [set() for _ in range(nfrag)]
    touch: dict[int, list[int]] = {}
    for i, (e, j) in enumerate(frag_of):
        if j + 1 < counts[e]:
            k = index[(e, j + 1)]
            adj[i].add(k)
            adj[k].add(i)
        if j == 0:
            touch.setdefault(graph.edges[e][0], []).append(i)
        if j == counts[e] - 1:
            touch.setdefault(graph.edges[e][1], []).append(i)
    for nodes in touch.values():
        for i in nodes:
            for k in nodes:
                if i != k:
                    adj[i].add(k)

    upper = _oracle_upper(frag_pts, adj, en, ed, work)
    lower = _oracle_lower(graph, counts, eps, eps2, d_eff, work)
    return lower, upper


def _oracle_upper(frag_pts, adj, en, ed, work) -> int:
    nfrag = len(frag_pts)

    def grow(seed: int, reverse: bool) -> frozenset:
        chosen = {seed}
        pts = [frag_pts[seed][0], frag_pts[seed][1]]
        changed = True
        while changed:
            changed = False
            frontier = sorted({k for i in chosen for k in adj[i]} - chosen,
                              reverse=reverse)
            for k in frontier:
                qa, qb = frag_pts[k]
                work.add(2 * len(pts))
                if (xc.all_dist2_below(pts, qa, en, ed)
                        and xc.all_dist2_below(pts, qb, en, ed)):
                    chosen.add(k)
                    for q in (qa, qb):
                        if q not in pts:
                            pts.append(q)
                    changed = True
        return frozenset(chosen)

    family: list[frozenset] = []
    seen: set[frozenset] = set()
    for seed in range(nfrag):
        for rev in (False, True):
            s = grow(seed, rev)
            if s not in seen:
                seen.add(s)
                family.append(s)

    # Greedy cover seeds the branch-and-bound incumbent.
    uncovered = set(range(nfrag))
    greedy: list[int] = []
    while uncovered:
        si = max(range(len(family)), key=lambda i: len(family[i] & uncovered))
        greedy.append(si)
        uncovered -= family[si]
    best = [len(greedy)]
    maxsz = max(len(s) for s in family)
    containing: list[list[int]] = [[] for _ in range(nfrag)]
    for si, s in enumerate(family):
        for i in s:
            containing[i].append(si)
    iters = [0]

    def rec(uncov: frozenset, used: int) -> None:
        iters[0] += 1
        if iters[0] > _ORACLE_SEARCH_CAP:
            raise _SearchCap
        if not uncov:
            best[0] = min(best[0], used)
            return
        if used + (len(uncov) + maxsz - 1) // maxsz >= best[0]:
            return
        pivot = min(uncov, key=lambda i: len(containing[i]))
        for si in sorted(containing[pivot],
                         key=lambda si: -len(family[si] & uncov)):
            rec(uncov - family[si], used + 1)

    try:
        rec(frozenset(range(nfrag)), 0)
    except _SearchCap:
        pass
    return best[0]


def _oracle_lower(graph, counts, eps, eps2, d_eff, work) -> int:
    en, ed = eps2.numerator, eps2.denominator
    pts: list[GraphPoint] = []
    raws: list = []
    seen: set = set()
    for e, m in enumerate(counts):
        for j in range(m + 1):
            gp = GraphPoint(e, Fraction(j, m))
            r = gp.locate(graph).raw()
            if r not in seen:
                seen.add(r)
                pts.append(gp)
                raws.append(r)
    n = len(pts)
    clips: list[_ClipIndex | None] = [None] * n

    def clip(i: int) -> _ClipIndex:
        if clips[i] is None:
            clips[i] = _ClipIndex(graph, pts[i], eps2, d_eff, work)
        return clips[i]

    conflict: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            work.add(1)
            dn, dd = xc.dist2_q(raws[i], raws[j])
            if dn * ed >= en * dd:
                continue
            if clip(i).separates(pts[j]) or clip(j).separates(pts[i]):
                continue
            conflict[i].add(j)
            conflict[j].add(i)

    order = sorted(range(n), key=lambda i: len(conflict[i]))
    greedy: list[int] = []
    for i in order:
        if all(k not in conflict[i] for k in greedy):
            greedy.append(i)
    best = [len(greedy)]
    iters = [0]

    def rec(avail: list[int], cur: int) -> None:
        iters[0] += 1
        if iters[0] > _ORACLE_SEARCH_CAP:
            raise _SearchCap
        if cur + len(avail) <= best[0]:
            return
        if not avail:
            best[0] = max(best[0], cur)
            return
        v, rest = avail[0], avail[1:]
        rec([u for u in rest if u not in conflict[v]], cur + 1)
        rec(rest, cur)

    try:
        rec(sorted(range(n), key=lambda i: -len(conflict[i])), 0)
    except _SearchCap:
        pass
    return best[0]
