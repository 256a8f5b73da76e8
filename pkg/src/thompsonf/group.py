"""Group facade: automorphism groups of objects in the span groupoid.

At binary arity and one root this is Thompson's group F; at arity n and
r roots it is the generalized group F_{n,r}.  Elements are reduced
spans with equal source and destination.

Products read left to right: ``multiply(a, b)`` (and ``a * b``) means
"apply a, then b", so a word like ``x0 x1^-1`` is evaluated first
letter first.  Under the PL realization this is reversed function
composition; span composition itself stays right to left, so
``multiply(a, b).rep == span_compose(b.rep, a.rep)``.  The two pinned
generators are

    x0 = <[(l (l l))] | [((l l) l)]>      breakpoints (1/4,1/2),(1/2,3/4)
    x1 = <[(l (l (l l)))] | [(l ((l l) l))]>

x1 acting as the identity on [0,1/2] and as a half-scale copy of x0 on
[1/2,1].  With this convention both defining relations of the standard
finite presentation hold: [x0 x1^-1, x0^-1 x1 x0] = 1 and
[x0 x1^-1, x0^-2 x1 x0^2] = 1.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import MismatchError, ParseError, ValidationError
from .forests import Forest, Tree, parse_tree
from .spans import (SpanMap, identity_span, span_compose, span_inverse,
                    span_make)


@dataclass(frozen=True)
class Context:
    """The ambient group: branching arity and the object (root count)."""

    arity: int = 2
    roots: int = 1

    def __post_init__(self):
        if self.arity < 2:
            raise ValidationError("arity must be at least 2")
        if self.roots < 1:
            raise ValidationError("roots must be at least 1")


def _as_context(ctx) -> Context:
    if isinstance(ctx, Context):
        return ctx
    if isinstance(ctx, tuple) and len(ctx) == 2:
        return Context(*ctx)
    raise ValidationError(f"not a group context: {ctx!r}")


class GroupElement:
    """An automorphism of the object ctx.roots in the arity-ctx.arity
    span groupoid, stored as its reduced span."""

    __slots__ = ("ctx", "rep")

    def __init__(self, ctx, rep: SpanMap):
        ctx = _as_context(ctx)
        if rep.src != ctx.roots or rep.dst != ctx.roots:
            raise MismatchError(
                f"span {rep.src}->{rep.dst} is not an automorphism of {ctx.roots}")
        if (rep.apex - ctx.roots) % (ctx.arity - 1) != 0:
            raise ValidationError(
                f"apex {rep.apex} incompatible with context {ctx}")
        self.ctx = ctx
        self.rep = rep

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.ctx == other.ctx and self.rep == other.rep

    def __hash__(self):
        return hash((self.ctx, self.rep))

    def __str__(self):
        return str(self.rep)

    __repr__ = __str__

    def __mul__(self, other):
        return multiply(self, other)

    def is_identity(self) -> bool:
        return self.rep.is_identity()

    def inverse(self) -> "GroupElement":
        return GroupElement(self.ctx, span_inverse(self.rep))


def identity(ctx=Context()) -> GroupElement:
    ctx = _as_context(ctx)
    return GroupElement(ctx, identity_span(ctx.roots))


_X0_DST = "(l (l l))"
_X0_SRC = "((l l) l)"
_X1_DST = "(l (l (l l)))"
_X1_SRC = "(l ((l l) l))"


def generator(i: int, ctx=Context()) -> GroupElement:
    """The pinned generators x0 and x1 of F."""
    ctx = _as_context(ctx)
    if ctx != Context(2, 1):
        raise ValidationError("generators are defined at arity 2, one root")
    if i == 0:
        texts = (_X0_DST, _X0_SRC)
    elif i == 1:
        texts = (_X1_DST, _X1_SRC)
    else:
        raise ValidationError(f"unsupported generator index {i}")
    dst, src = (Forest((parse_tree(t),)) for t in texts)
    return GroupElement(ctx, span_make(dst, src))


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """The product "a then b"."""
    if a.ctx != b.ctx:
        raise MismatchError(f"context mismatch: {a.ctx} vs {b.ctx}")
    return GroupElement(a.ctx, span_compose(b.rep, a.rep))


def inverse(a: GroupElement) -> GroupElement:
    return a.inverse()


_WORD_TOKEN = re.compile(r"^x([01])(\^-1)?$")


def parse_word(text: str) -> list[tuple[int, bool]]:
    """Tokenize a word over x0, x1 into (index, inverted) pairs."""
    out = []
    for tok in text.split():
        m = _WORD_TOKEN.match(tok)
        if not m:
            raise ParseError(f"unknown generator symbol {tok!r}")
        out.append((int(m.group(1)), m.group(2) is not None))
    return out


def from_word(w: str, ctx=Context()) -> GroupElement:
    """Evaluate a whitespace-separated word, left-to-right."""
    ctx = _as_context(ctx)
    acc = identity(ctx)
    for idx, inverted in parse_word(w):
        g = generator(idx, ctx)
        if inverted:
            g = g.inverse()
        acc = multiply(acc, g)
    return acc


def _random_composition(rng: random.Random, total: int, k: int) -> list[int]:
    """k non-negative parts summing to total."""
    if k == 0:
        return []
    cuts = sorted(rng.choices(range(total + 1), k=k - 1))
    return [b - a for a, b in zip((0, *cuts), (*cuts, total))]


def _random_tree(rng: random.Random, carets: int, arity: int) -> Tree:
    if carets == 0:
        return Tree()
    parts = _random_composition(rng, carets - 1, arity)
    return Tree(tuple(_random_tree(rng, p, arity) for p in parts))


def _random_forest(rng: random.Random, carets: int, roots: int,
                   arity: int) -> Forest:
    parts = _random_composition(rng, carets, roots)
    return Forest(tuple(_random_tree(rng, p, arity) for p in parts))


def random_element(ctx, seed: int, size: int) -> GroupElement:
    """A deterministic pseudorandom element with apex at most size.

    The element is produced by reducing a uniform-ish random pair of
    forests, not by multiplying random words, so large reduced shapes
    are reachable directly.
    """
    ctx = _as_context(ctx)
    if size < 0:
        raise ValidationError("size must be non-negative")
    rng = random.Random(f"element/{ctx.arity}/{ctx.roots}/{seed}/{size}")
    step = ctx.arity - 1
    max_carets = (size - ctx.roots) // step
    if max_carets < 0:
        return identity(ctx)
    carets = rng.randint(0, max_carets)
    leg_dst = _random_forest(rng, carets, ctx.roots, ctx.arity)
    leg_src = _random_forest(rng, carets, ctx.roots, ctx.arity)
    return GroupElement(ctx, span_make(leg_dst, leg_src))
