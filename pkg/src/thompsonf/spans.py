"""The free monoidal groupoid on the forest category: spans of forests.

A morphism k' -> k is an equivalence class of spans (leg_dst, leg_src)
of forests out of a common apex, two spans being identified when one is
obtained from the other by precomposing both legs with the same forest.
Every class contains a unique representative with no cancellable caret,
and that reduced representative is what a SpanMap stores; equality is
then syntactic.  Composition pulls back the middle cospan and pastes,
reducing eagerly.

Span text format: ``<FOREST_DST | FOREST_SRC>``, for example
``<[(l (l l))] | [((l l) l)]>``.
"""

from __future__ import annotations

from .errors import MismatchError, ParseError
from .forests import (Forest, LEAF, Tree, _TokenStream, _parse_forest,
                      _tokenize, forest_compose, forest_tensor,
                      identity_forest, pullback)


def _caret_windows(forest: Forest) -> set[tuple[int, int]]:
    """(global leaf offset, size) of every caret in the forest.

    A caret is a node all of whose children are leaves; its window is
    the run of consecutive global leaf positions it covers (0-based).
    """
    out: set[tuple[int, int]] = set()

    def walk(t: Tree, offset: int) -> None:
        if t.is_leaf:
            return
        if all(c.is_leaf for c in t.children):
            out.add((offset, len(t.children)))
            return
        for c in t.children:
            walk(c, offset)
            offset += c.leaves

    offset = 0
    for t in forest.trees:
        walk(t, offset)
        offset += t.leaves
    return out


def _contract(forest: Forest, start: int) -> Forest:
    """Replace the caret whose leaves begin at global offset start by a leaf."""

    def go(t: Tree, start: int) -> Tree:
        if not t.is_leaf and start == 0 and all(c.is_leaf for c in t.children):
            return LEAF
        kids = []
        for c in t.children:
            if 0 <= start < c.leaves:
                kids.append(go(c, start))
            else:
                kids.append(c)
            start -= c.leaves
        return Tree(tuple(kids))

    trees = []
    for t in forest.trees:
        if 0 <= start < t.leaves:
            trees.append(go(t, start))
        else:
            trees.append(t)
        start -= t.leaves
    return Forest(tuple(trees))


def _reduce_pair(leg_dst: Forest, leg_src: Forest) -> tuple[Forest, Forest]:
    """Cancel common carets, leftmost first, until none remain."""
    while True:
        common = _caret_windows(leg_dst) & _caret_windows(leg_src)
        if not common:
            return leg_dst, leg_src
        start, _ = min(common)
        leg_dst = _contract(leg_dst, start)
        leg_src = _contract(leg_src, start)


class SpanMap:
    """A reduced span of forests: a morphism src -> dst in the groupoid.

    Written [leg_dst, leg_src]: leg_src points at the source object,
    leg_dst at the destination (the reversal matches the convention of
    writing maps on the left).
    """

    __slots__ = ("leg_dst", "leg_src", "_hash")

    def __init__(self, leg_dst: Forest, leg_src: Forest, _reduced: bool = False):
        if leg_dst.leaves != leg_src.leaves:
            raise MismatchError(
                f"span legs disagree on apex: {leg_dst.leaves} vs {leg_src.leaves}")
        if not _reduced:
            leg_dst, leg_src = _reduce_pair(leg_dst, leg_src)
        self.leg_dst = leg_dst
        self.leg_src = leg_src
        self._hash = None

    @property
    def src(self) -> int:
        return self.leg_src.roots

    @property
    def dst(self) -> int:
        return self.leg_dst.roots

    @property
    def apex(self) -> int:
        return self.leg_src.leaves

    def __eq__(self, other):
        if not isinstance(other, SpanMap):
            return NotImplemented
        return self.leg_dst == other.leg_dst and self.leg_src == other.leg_src

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.leg_dst, self.leg_src))
        return self._hash

    def __str__(self):
        return f"<{self.leg_dst} | {self.leg_src}>"

    __repr__ = __str__

    def is_identity(self) -> bool:
        return self.apex == self.src == self.dst


def span_make(leg_dst: Forest, leg_src: Forest) -> SpanMap:
    """The class of the span with the given legs, stored reduced."""
    return SpanMap(leg_dst, leg_src)


def reduce_span(leg_dst: Forest, leg_src: Forest) -> SpanMap:
    return SpanMap(leg_dst, leg_src)


def identity_span(k: int) -> SpanMap:
    f = identity_forest(k)
    return SpanMap(f, f, _reduced=True)


def span_compose(g: SpanMap, f: SpanMap) -> SpanMap:
    """The composite g after f, by pullback of the middle cospan."""
    if f.dst != g.src:
        raise MismatchError(
            f"cannot compose span {g.src}->{g.dst} after {f.src}->{f.dst}")
    _, pf, pg = pullback(f.leg_dst, g.leg_src)
    return SpanMap(forest_compose(g.leg_dst, pg),
                   forest_compose(f.leg_src, pf))


def span_inverse(f: SpanMap) -> SpanMap:
    return SpanMap(f.leg_src, f.leg_dst, _reduced=True)


def span_tensor(f: SpanMap, g: SpanMap) -> SpanMap:
    return SpanMap(forest_tensor(f.leg_dst, g.leg_dst),
                   forest_tensor(f.leg_src, g.leg_src))


def span_equals(f: SpanMap, g: SpanMap) -> bool:
    return f == g


def eta(f: Forest) -> SpanMap:
    """The canonical functor from forests into the groupoid."""
    return SpanMap(f, identity_forest(f.leaves), _reduced=True)


def expansions(m: SpanMap | tuple[Forest, Forest], arity: int = 2
               ) -> list[tuple[Forest, Forest]]:
    """All one-caret expansions of a span representative.

    Precomposing both legs with the forest that is trivial except for a
    single caret at position i gives the generating moves of the span
    equivalence; this enumerates them for every i.
    """
    if isinstance(m, SpanMap):
        leg_dst, leg_src = m.leg_dst, m.leg_src
    else:
        leg_dst, leg_src = m
    apex = leg_dst.leaves
    out = []
    for i in range(apex):
        expander = Forest(tuple(
            Tree((LEAF,) * arity) if j == i else LEAF for j in range(apex)))
        out.append((forest_compose(leg_dst, expander),
                    forest_compose(leg_src, expander)))
    return out


# -- text format ------------------------------------------------------

def parse_span_report(text: str) -> tuple[SpanMap, bool]:
    """Parse a span; the flag reports whether the input was already reduced."""
    ts = _TokenStream(_tokenize(text))
    ts.take("<")
    leg_dst = _parse_forest(ts)
    ts.take("|")
    leg_src = _parse_forest(ts)
    ts.take(">")
    if ts.peek() is not None:
        raise ParseError("trailing input after span")
    span = SpanMap(leg_dst, leg_src)
    was_reduced = span.leg_dst == leg_dst and span.leg_src == leg_src
    return span, was_reduced


def parse_span(text: str) -> SpanMap:
    return parse_span_report(text)[0]
