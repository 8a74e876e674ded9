"""Plane iterated function systems and word covers of their attractors.

This is the floating-point half of the package: attractors of contracting
affine systems live at machine precision, with a relative tolerance of 1e-9
on every claimed inequality.  The useful contrast with the shark-teeth side
is that here the cover counts n^k at scale ratio^k * D give a dimension
bound that the covers themselves attain up to any slack, at an explicitly
computable scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from .errors import ParseError, VerificationFailure
from .limits import Budget

IFS_FORMAT = "sdimlab/ifs"
FORMAT_VERSION = 1
REL_TOL = 1e-9


@dataclass(frozen=True)
class AffineMap2:
    """x -> A x + t with A = [[a, b], [c, d]], t = (e, f)."""
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def linear(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def shift(self) -> np.ndarray:
        return np.array([self.e, self.f], dtype=float)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return pts @ self.linear().T + self.shift()

    def compose(self, other: "AffineMap2") -> "AffineMap2":
        m = self.linear() @ other.linear()
        t = self.linear() @ other.shift() + self.shift()
        return AffineMap2(m[0, 0], m[0, 1], m[1, 0], m[1, 1], t[0], t[1])

    def fixed_point(self) -> np.ndarray:
        lhs = np.eye(2) - self.linear()
        return np.linalg.solve(lhs, self.shift())


def lip_affine(m: AffineMap2) -> float:
    """Largest singular value of the linear part, in closed form.

    For M = A^T A with p = a^2 + c^2, q = b^2 + d^2, r = ab + cd the top
    eigenvalue is (p+q)/2 + sqrt(((p-q)/2)^2 + r^2).
    """
    p = m.a * m.a + m.c * m.c
    q = m.b * m.b + m.d * m.d
    r = m.a * m.b + m.c * m.d
    half = (p - q) / 2
    return math.sqrt((p + q) / 2 + math.sqrt(half * half + r * r))


@dataclass(frozen=True)
class IFSSpec:
    """A finite list of contracting affine maps.

    `diameter_hint`, when the exact attractor diameter is known by hand
    (as for the bundled fixtures), skips the cloud-based measurement.
    """
    maps: tuple[AffineMap2, ...]
    name: str = ""
    diameter_hint: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("need at least one map")
        worst = max(lip_affine(m) for m in self.maps)
        if not worst < 1:
            raise ValueError(f"maps must contract; worst ratio {worst}")

    def ratio(self) -> float:
        """Largest contraction ratio over the maps."""
        return max(lip_affine(m) for m in self.maps)

    def to_json_dict(self) -> dict:
        return {
            "format": IFS_FORMAT,
            "version": FORMAT_VERSION,
            "name": self.name,
            "diameter_hint": (None if self.diameter_hint is None
                              else repr(self.diameter_hint)),
            "maps": [
                {"matrix": [[repr(m.a), repr(m.b)], [repr(m.c), repr(m.d)]],
                 "shift": [repr(m.e), repr(m.f)]}
                for m in self.maps
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "IFSSpec":
        if not isinstance(data, dict) or data.get("format") != IFS_FORMAT:
            raise ParseError("not an IFS document")
        if data.get("version") != FORMAT_VERSION:
            raise ParseError(f"unsupported version {data.get('version')!r}")
        try:
            maps = tuple(
                AffineMap2(float(m["matrix"][0][0]), float(m["matrix"][0][1]),
                           float(m["matrix"][1][0]), float(m["matrix"][1][1]),
                           float(m["shift"][0]), float(m["shift"][1]))
                for m in data["maps"]
            )
            hint = data.get("diameter_hint")
            return cls(maps, str(data.get("name", "")),
                       None if hint is None else float(hint))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed IFS document: {exc}") from exc


def _toward(point: tuple[float, float], scale: float) -> AffineMap2:
    """Similarity contracting by `scale` with the given fixed point."""
    px, py = point
    return AffineMap2(scale, 0.0, 0.0, scale,
                      (1 - scale) * px, (1 - scale) * py)


def sierpinski() -> IFSSpec:
    """Three half-scale maps toward the corners of a unit-side triangle."""
    h = math.sqrt(3) / 2
    return IFSSpec((_toward((0, 0), 0.5), _toward((1, 0), 0.5),
                    _toward((0.5, h), 0.5)), "sierpinski", 1.0)


def cantor_dust() -> IFSSpec:
    """Four quarter-scale maps fixing the unit square's corners."""
    corners = ((0, 0), (1, 0), (0, 1), (1, 1))
    return IFSSpec(tuple(_toward(c, 0.25) for c in corners),
                   "cantor-dust", math.sqrt(2))


def segment_halves() -> IFSSpec:
    """Two half-scale maps whose attractor is the unit segment."""
    return IFSSpec((_toward((0, 0), 0.5), _toward((1, 0), 0.5)),
                   "segment", 1.0)


FIXTURES = {
    "sierpinski": sierpinski,
    "cantor-dust": cantor_dust,
    "segment": segment_halves,
}


def ifs_dimension_bound(spec: IFSSpec) -> float:
    """ln(n) / -ln(ratio): the cover-count dimension bound for the system."""
    lam = spec.ratio()
    return math.log(len(spec.maps)) / -math.log(lam)


def attractor_cloud(spec: IFSSpec, depth: int,
                    seed: Sequence[float] | None = None,
                    budget: Budget | None = None) -> np.ndarray:
    """All length-`depth` words applied to the seed point.

    The seed defaults to the first map's fixed point, which lies on the
    attractor, making the cloud a subset of it.  Points come out in
    lexicographic word order, leftmost symbol applied last, so the array
    is reproducible run to run.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    budget = budget or Budget()
    n = len(spec.maps)
    budget.check_words(n ** depth)
    if seed is None:
        pts = spec.maps[0].fixed_point().reshape(1, 2)
    else:
        pts = np.asarray(seed, dtype=float).reshape(1, 2)
    for _ in range(depth):
        pts = np.concatenate([m.apply(pts) for m in spec.maps])
    return pts


def _extreme_points(pts: np.ndarray) -> np.ndarray:
    """Hull vertices, or projection extremes when the cloud is degenerate."""
    if len(pts) <= 3:
        return pts
    try:
        return pts[ConvexHull(pts).vertices]
    except QhullError:
        centered = pts - pts.mean(axis=0)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        proj = centered @ vt[0]
        return pts[[int(proj.argmin()), int(proj.argmax())]]


def cloud_diameter(pts: np.ndarray) -> float:
    """Max pairwise distance, attained on the extreme points."""
    ext = _extreme_points(np.asarray(pts, dtype=float))
    diff = ext[:, None, :] - ext[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two point clouds."""
    ta, tb = cKDTree(a), cKDTree(b)
    d_ab = tb.query(a)[0].max()
    d_ba = ta.query(b)[0].max()
    return float(max(d_ab, d_ba))


def _measured_diameter(spec: IFSSpec, budget: Budget,
                       override: float | None = None) -> float:
    if override is not None:
        return override
    if spec.diameter_hint is not None:
        return spec.diameter_hint
    depth = _cloud_depth(len(spec.maps))
    return cloud_diameter(attractor_cloud(spec, depth, budget=budget))


@dataclass(frozen=True)
class WordPiece:
    """One piece of a word cover: the word, the image of the attractor's
    extreme points under it, and the piece diameter measured on them."""
    word: tuple[int, ...]
    points: np.ndarray
    diameter: float


@dataclass(frozen=True)
class WordCover:
    """The word pieces w(A) over all words of one length.

    `diameter` is the ambient attractor diameter D the bound is relative
    to; `bound` is ratio^k * D, which every piece diameter must respect.
    The piece count n^k is the cover count this scale certifies.
    """
    k: int
    pieces: tuple[WordPiece, ...]
    diameter: float
    bound: float

    @property
    def words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.word for p in self.pieces)

    @property
    def diameters(self) -> np.ndarray:
        return np.array([p.diameter for p in self.pieces])


def word_cover(spec: IFSSpec, k: int,
               base_cloud: np.ndarray | None = None,
               budget: Budget | None = None) -> WordCover:
    """Measure every length-k piece and check it against ratio^k * D.

    Piece diameters are evaluated on the base cloud's extreme points: the
    image of a compact set under an affine map has its diameter on hull
    pairs, so pushing the pairwise difference vectors through the word's
    composed linear part is exact up to roundoff.  The base cloud defaults
    to a fixed-point cloud at a size-capped depth.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    budget = budget or Budget()
    n = len(spec.maps)
    budget.check_words(n ** k)
    if base_cloud is None:
        base_cloud = attractor_cloud(spec, _cloud_depth(n), budget=budget)
    ext = _extreme_points(np.asarray(base_cloud, dtype=float))
    diffs = []
    for i in range(len(ext)):
        for j in range(i + 1, len(ext)):
            diffs.append(ext[i] - ext[j])
    diffs = np.array(diffs) if diffs else np.zeros((1, 2))
    dhat = float(np.sqrt((diffs ** 2).sum(axis=1)).max()) if len(ext) > 1 \
        else 0.0
    lam = spec.ratio()
    bound = lam ** k * dhat
    # One compose per tree node instead of k per word.
    level: list[tuple[tuple[int, ...], AffineMap2]] = [
        ((), AffineMap2(1.0, 0.0, 0.0, 1.0, 0.0, 0.0))]
    for _ in range(k):
        level = [(w + (s,), comp.compose(m))
                 for w, comp in level
                 for s, m in enumerate(spec.maps)]
    pieces = []
    for word, comp in level:
        image = diffs @ comp.linear().T
        diam = float(np.sqrt((image ** 2).sum(axis=1)).max())
        pieces.append(WordPiece(word, comp.apply(ext), diam))
    worst = max(pieces, key=lambda p: p.diameter, default=None)
    if worst is not None and worst.diameter > bound * (1 + REL_TOL):
        raise VerificationFailure(
            f"word {worst.word} has diameter {worst.diameter} above "
            f"the contraction bound {bound}")
    return WordCover(k, tuple(pieces), dhat, bound)


def _cloud_depth(n: int) -> int:
    # Cap covers n == 1, where the point count never grows with depth.
    depth = 1
    while depth < 12 and n ** (depth + 1) <= 4096:
        depth += 1
    return depth


def s_upper_ifs(spec: IFSSpec, eps: float,
                diameter: float | None = None,
                budget: Budget | None = None) -> int:
    """Certified cover count at scale eps: n^k for the first k that works.

    k is the least exponent with ratio^k * D < eps; the n^k length-k word
    pieces cover the attractor at diameter <= ratio^k * D < eps.  Each
    piece is an affine image of the whole attractor, so when the attractor
    is connected the pieces are admissible connected cover elements; for a
    disconnected attractor the count bounds the unrestricted cover number.
    Nothing is materialized, so the count may be astronomically large.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    budget = budget or Budget()
    d = _measured_diameter(spec, budget, diameter)
    lam = spec.ratio()
    k = 0
    while lam ** k * d >= eps:
        k += 1
    return len(spec.maps) ** k


def find_k0(spec: IFSSpec, delta: float, diameter: float | None = None,
            window: int = 8, budget: Budget | None = None
            ) -> tuple[int, float]:
    """Smallest word length whose cover ratio sits within delta of the bound.

    At eps_k = ratio^(k-1) * D the certified count is n^k, giving the
    ratio k ln(n) / -ln(eps_k).  This decreases toward the dimension bound
    as k grows; the returned k0 is the first index where it is below
    bound + delta (with eps_k already below 1), re-checked over `window`
    further indices.  Returns (k0, eps_k0).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    budget = budget or Budget()
    d = _measured_diameter(spec, budget, diameter)
    if not d > 0:
        raise ParseError("attractor is a single point; there is no scale "
                         "sequence to anchor")
    n = len(spec.maps)
    lam = spec.ratio()
    bound = ifs_dimension_bound(spec)

    def eps_at(k: int) -> float:
        return lam ** (k - 1) * d

    def ratio_at(k: int) -> float:
        return k * math.log(n) / -math.log(eps_at(k))

    k = 1
    while not (eps_at(k) < 1 and ratio_at(k) < bound + delta):
        k += 1
        if k > 10_000:
            raise VerificationFailure(
                "no admissible word length below 10000")
    for kk in range(k, k + window + 1):
        if not ratio_at(kk) < bound + delta:
            raise VerificationFailure(
                f"ratio at word length {kk} regressed above bound + delta")
    return k, eps_at(k)
