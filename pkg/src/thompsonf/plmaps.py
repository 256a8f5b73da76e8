"""Exact dyadic piecewise-linear bijections [0,m] -> [0,n].

These are the maps with finitely many pieces, power-of-two slopes and
dyadic breakpoints, under ordinary composition; they form a monoidal
category with tensor given by juxtaposition.  The binary forest and
span machinery maps into this category (mu_forest, span_to_pl), and
conversely every PLMap factorizes through forests (pl_factorize), which
is how spans are recovered from maps.  All arithmetic is exact.

PL text format: comma-separated ``x:y`` breakpoints, for example
``0:0,1/2^2:1/2^1,1/2^1:3/2^2,1:1``; endpoints determine the objects.
"""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache

from .dyadic import Dyadic, ZERO, log2_ratio, pow2
from .errors import MismatchError, ParseError, ValidationError
from .forests import Forest, Tree, identity_forest

Point = tuple[Dyadic, Dyadic]


def _canonicalize(points: list[Point]) -> tuple[Point, ...]:
    """Drop interior breakpoints where consecutive segments are collinear."""
    if len(points) <= 2:
        return tuple(points)
    cleaned = [points[0]]
    for i in range(1, len(points) - 1):
        x0, y0 = cleaned[-1]
        x1, y1 = points[i]
        x2, y2 = points[i + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        cleaned.append(points[i])
    cleaned.append(points[-1])
    return tuple(cleaned)


class PLMap:
    """A canonical exact dyadic PL bijection [0, src] -> [0, dst]."""

    __slots__ = ("src", "dst", "points", "_hash")

    def __init__(self, src: int, dst: int, points: tuple[Point, ...]):
        self.src = src
        self.dst = dst
        self.points = points
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst
                and self.points == other.points)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.src, self.dst, self.points))
        return self._hash

    def __str__(self):
        return ",".join(f"{x}:{y}" for x, y in self.points)

    __repr__ = __str__

    def is_identity(self) -> bool:
        return self.src == self.dst and len(self.points) <= 2

    def breakpoints(self) -> list[tuple[str, str]]:
        return [(str(x), str(y)) for x, y in self.points]


def pl_make(src: int, dst: int, points) -> PLMap:
    """Validate and canonicalize a PLMap from its breakpoint list.

    Raises ValidationError on wrong endpoints, non-monotone coordinates
    or a segment slope that is not an integer power of two.
    """
    if src < 0 or dst < 0:
        raise ValidationError("objects must be natural numbers")
    if (src == 0) != (dst == 0):
        raise ValidationError("[0,0] maps only to [0,0]")
    pts: list[Point] = []
    for x, y in points:
        if not isinstance(x, Dyadic) or not isinstance(y, Dyadic):
            raise ValidationError("breakpoint coordinates must be dyadic")
        pts.append((x, y))
    if src == 0:
        return PLMap(0, 0, ((ZERO, ZERO),))
    if not pts or pts[0] != (ZERO, ZERO) or pts[-1] != (Dyadic(src), Dyadic(dst)):
        raise ValidationError(
            f"breakpoints must run from (0,0) to ({src},{dst})")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x0 < x1 and y0 < y1):
            raise ValidationError("breakpoints must be strictly increasing")
        log2_ratio(y1 - y0, x1 - x0)  # rejects non-power-of-two slopes
    return PLMap(src, dst, _canonicalize(pts))


def identity_pl(k: int) -> PLMap:
    if k == 0:
        return PLMap(0, 0, ((ZERO, ZERO),))
    return PLMap(k, k, ((ZERO, ZERO), (Dyadic(k), Dyadic(k))))


def _segment(pl: PLMap, x: Dyadic) -> tuple[Point, Point]:
    xs = [p[0] for p in pl.points]
    i = bisect_right(xs, x) - 1
    if i >= len(pl.points) - 1:
        i = len(pl.points) - 2
    return pl.points[i], pl.points[i + 1]


def evaluate(pl: PLMap, x: Dyadic) -> Dyadic:
    """The exact value of the map at a dyadic point of its domain."""
    if x < ZERO or x > Dyadic(pl.src):
        raise ValidationError(f"{x} outside [0,{pl.src}]")
    if pl.src == 0:
        return ZERO
    (x0, y0), (x1, y1) = _segment(pl, x)
    k = log2_ratio(y1 - y0, x1 - x0)
    return y0 + (x - x0) * pow2(k)


def evaluate_inverse(pl: PLMap, y: Dyadic) -> Dyadic:
    if y < ZERO or y > Dyadic(pl.dst):
        raise ValidationError(f"{y} outside [0,{pl.dst}]")
    if pl.dst == 0:
        return ZERO
    ys = [p[1] for p in pl.points]
    i = bisect_right(ys, y) - 1
    if i >= len(pl.points) - 1:
        i = len(pl.points) - 2
    (x0, y0), (x1, y1) = pl.points[i], pl.points[i + 1]
    k = log2_ratio(y1 - y0, x1 - x0)
    return x0 + (y - y0) * pow2(-k)


def pl_compose(g: PLMap, f: PLMap) -> PLMap:
    """The exact composite g after f; slopes multiply."""
    if f.dst != g.src:
        raise MismatchError(
            f"cannot compose PL {g.src}->{g.dst} after {f.src}->{f.dst}")
    if f.src == 0:
        return PLMap(0, 0, ((ZERO, ZERO),))
    xs = {p[0] for p in f.points}
    xs.update(evaluate_inverse(f, q[0]) for q in g.points)
    out = [(x, evaluate(g, evaluate(f, x))) for x in sorted(xs)]
    return pl_make(f.src, g.dst, out)


def pl_inverse(f: PLMap) -> PLMap:
    return PLMap(f.dst, f.src, tuple((y, x) for x, y in f.points))


def pl_tensor(f: PLMap, g: PLMap) -> PLMap:
    """Juxtaposition: g is placed after f with offset (f.src, f.dst)."""
    if f.src == 0:
        return g
    if g.src == 0:
        return f
    ox, oy = Dyadic(f.src), Dyadic(f.dst)
    pts = list(f.points) + [(x + ox, y + oy) for x, y in g.points[1:]]
    return PLMap(f.src + g.src, f.dst + g.dst, _canonicalize(pts))


# -- the forest model -------------------------------------------------

_HALVING = PLMap(2, 1, ((ZERO, ZERO), (Dyadic(2), Dyadic(1))))


def halving() -> PLMap:
    """The structure isomorphism [0,2] -> [0,1], division by two."""
    return _HALVING


@lru_cache(maxsize=None)
def _mu_tree(t: Tree) -> PLMap:
    if t.is_leaf:
        return identity_pl(1)
    if len(t.children) != 2:
        raise ValidationError("the PL model exists only for binary trees")
    left, right = t.children
    return pl_compose(_HALVING, pl_tensor(_mu_tree(left), _mu_tree(right)))


def mu_forest(forest: Forest) -> PLMap:
    """The PL realization of a binary forest: a leaf becomes the identity
    of [0,1], a node composes the halving map with the tensor of its
    children, and a forest tensors its trees."""
    out = PLMap(0, 0, ((ZERO, ZERO),))
    for t in forest.trees:
        out = pl_tensor(out, _mu_tree(t))
    return out


def _breakpoint_between(pl: PLMap, lo: Dyadic, hi: Dyadic) -> bool:
    return any(lo < x < hi for x, _ in pl.points)


def _is_standard(lo: Dyadic, hi: Dyadic) -> bool:
    """Is [lo, hi] of the form [a, a + 2^-e] with a a multiple of the
    length and the whole interval inside one unit interval?"""
    length = hi - lo
    if length.num != 1:
        return False
    scaled = lo * pow2(length.exp)  # lo / length
    if not scaled.is_integer():
        return False
    return hi <= Dyadic(lo.floor() + 1)


def _subdivision_tree(phi: PLMap, lo: Dyadic, hi: Dyadic,
                      images: list[tuple[Dyadic, Dyadic]]) -> Tree:
    """Refine [lo, hi] by bisection until phi is affine on each piece and
    every image is a standard dyadic interval; records images in order."""
    if not _breakpoint_between(phi, lo, hi):
        ylo, yhi = evaluate(phi, lo), evaluate(phi, hi)
        if _is_standard(ylo, yhi):
            images.append((ylo, yhi))
            return Tree()
    mid = (lo + hi).half()
    return Tree((_subdivision_tree(phi, lo, mid, images),
                 _subdivision_tree(phi, mid, hi, images)))


def _tile_tree(lo: Dyadic, hi: Dyadic,
               tiles: list[tuple[Dyadic, Dyadic]]) -> Tree:
    """Rebuild the binary tree whose leaves are the given ordered tiling
    of [lo, hi] by standard dyadic intervals."""
    if len(tiles) == 1:
        if tiles[0] != (lo, hi):
            raise ValidationError("tiling does not cover the interval")
        return Tree()
    mid = (lo + hi).half()
    split = 0
    while split < len(tiles) and tiles[split][1] <= mid:
        split += 1
    if split == 0 or tiles[split - 1][1] != mid:
        raise ValidationError("tiling does not split at the midpoint")
    return Tree((_tile_tree(lo, mid, tiles[:split]),
                 _tile_tree(mid, hi, tiles[split:])))


def pl_factorize(phi: PLMap) -> tuple[Forest, Forest]:
    """Factor phi: m -> n through forests: phi = mu(T) o mu(S)^-1.

    S: p -> m subdivides the domain into standard dyadic intervals, by
    repeated bisection of the leftmost offending interval, until phi is
    affine with standard dyadic image on every piece; T: p -> n is the
    forest tiling the codomain by the images.  The returned pair is
    jointly reduced.
    """
    if phi.src == 0:
        return Forest(), Forest()
    images: list[tuple[Dyadic, Dyadic]] = []
    s_trees = [
        _subdivision_tree(phi, Dyadic(i), Dyadic(i + 1), images)
        for i in range(phi.src)
    ]
    t_trees = []
    pos = 0
    for j in range(phi.dst):
        hi_bound = Dyadic(j + 1)
        chunk = []
        while pos < len(images) and images[pos][1] <= hi_bound:
            chunk.append(images[pos])
            pos += 1
        t_trees.append(_tile_tree(Dyadic(j), hi_bound, chunk))
    return Forest(tuple(s_trees)), Forest(tuple(t_trees))


# -- the bridge to spans ----------------------------------------------

def span_to_pl(span) -> PLMap:
    """The image of a span [T, S] in the PL category: mu(T) o mu(S)^-1."""
    return pl_compose(mu_forest(span.leg_dst), pl_inverse(mu_forest(span.leg_src)))


def pl_to_span(phi: PLMap):
    from .spans import span_make

    s, t = pl_factorize(phi)
    return span_make(t, s)


# -- text format ------------------------------------------------------

def parse_pl(text: str) -> PLMap:
    """Parse the x:y,... breakpoint format; objects are inferred from the
    endpoints, which must be integers."""
    pairs = []
    for chunk in text.strip().split(","):
        halves = chunk.split(":")
        if len(halves) != 2:
            raise ParseError(f"expected x:y, found {chunk!r}")
        pairs.append((Dyadic.parse(halves[0]), Dyadic.parse(halves[1])))
    if not pairs:
        raise ParseError("empty PL map")
    mx, my = pairs[-1]
    if not (mx.is_integer() and my.is_integer()):
        raise ValidationError("endpoints must be integers")
    return pl_make(mx.num, my.num, pairs)
