"""Rooted planar trees with a fixed branching arity, and forests of them.

A forest with n leaves and k roots is a morphism n -> k in the strict
monoidal category whose objects are the natural numbers: composition
grafts trees onto leaves, the tensor is juxtaposition.  This category
has pullbacks, computed componentwise from smallest common supertrees
and their cofactors; that construction is what everything downstream
(spans, the group, the PL model) is built on.

Text formats: a tree is ``l`` or ``(t1 t2 ... tk)``; a forest is
``[t1 t2 ...]`` (``[]`` when empty).  Whitespace-insensitive.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .errors import MismatchError, NotASubtree, ParseError, ValidationError


class Tree:
    """A leaf, or a node whose children are Trees.

    Shapes are immutable; arity consistency (every node having the same
    number of children) is a property of how they are used, validated
    where trees from different contexts meet.
    """

    __slots__ = ("children", "leaves", "_hash")

    def __init__(self, children: tuple["Tree", ...] = ()):
        self.children = children
        self.leaves = sum(c.leaves for c in children) if children else 1
        self._hash = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self.leaves == other.leaves and self.children == other.children

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.children)
        return self._hash

    def __str__(self):
        if self.is_leaf:
            return "l"
        return "(" + " ".join(str(c) for c in self.children) + ")"

    __repr__ = __str__


LEAF = Tree()


def caret(arity: int = 2) -> Tree:
    if arity < 2:
        raise ValidationError("arity must be at least 2")
    return Tree((LEAF,) * arity)


def node_arity(t: Tree) -> int | None:
    """The common branching factor of t's nodes, or None for a leaf.

    Raises ValidationError if t mixes node sizes.
    """
    found = None
    stack = [t]
    while stack:
        u = stack.pop()
        if u.children:
            k = len(u.children)
            if found is None:
                found = k
            elif found != k:
                raise ValidationError("tree mixes node arities")
            stack.extend(u.children)
    return found


def check_arity(t: Tree, arity: int) -> None:
    found = node_arity(t)
    if found is not None and found != arity:
        raise ValidationError(f"tree has arity {found}, expected {arity}")


def leaf_count(t: Tree) -> int:
    return t.leaves


def omega(t: Tree, i: int, arity: int = 2) -> Tree:
    """Graft a caret onto the i-th leaf (1-based) of t."""
    if not 1 <= i <= t.leaves:
        raise ValidationError(f"leaf index {i} out of range 1..{t.leaves}")

    def go(u: Tree, i: int) -> Tree:
        if u.is_leaf:
            return caret(arity)
        kids = []
        for c in u.children:
            if 0 < i <= c.leaves:
                kids.append(go(c, i))
            else:
                kids.append(c)
            i -= c.leaves
        return Tree(tuple(kids))

    return go(t, i)


def is_subtree(s: Tree, t: Tree) -> bool:
    """True iff s is obtained from t by pruning whole branches at the root."""
    if s.is_leaf:
        return True
    if t.is_leaf or len(s.children) != len(t.children):
        return False
    return all(is_subtree(a, b) for a, b in zip(s.children, t.children))


def join(s: Tree, t: Tree) -> Tree:
    """The smallest tree containing both s and t as subtrees.

    Computed by superimposing the two shapes: a leaf joins to anything,
    and nodes join childwise.
    """
    if s.is_leaf:
        return t
    if t.is_leaf:
        return s
    if len(s.children) != len(t.children):
        raise MismatchError("cannot join trees of different arities")
    return Tree(tuple(join(a, b) for a, b in zip(s.children, t.children)))


def cofactors(s: Tree, r: Tree) -> "Forest":
    """The unique forest F with (s) composed with F equal to (r).

    F has one tree per leaf of s: the branch of r hanging below that
    leaf.  Raises NotASubtree when s is not a root-sharing subtree of r.
    """
    out: list[Tree] = []

    def go(u: Tree, v: Tree) -> None:
        if u.is_leaf:
            out.append(v)
            return
        if v.is_leaf or len(u.children) != len(v.children):
            raise NotASubtree(f"{u} is not a subtree of {v}")
        for a, b in zip(u.children, v.children):
            go(a, b)

    go(s, r)
    return Forest(tuple(out))


def omega_factorization(s: Tree, r: Tree) -> list[tuple[int, int]]:
    """A sequence of single-caret grafts carrying s to r.

    Returns pairs (n, i): graft a caret at leaf i of the current n-leafed
    tree.  Grafts are applied leftmost-first; replaying them onto s
    reproduces r exactly.
    """
    arity = node_arity(r) or node_arity(s) or 2
    steps: list[tuple[int, int]] = []
    cur = s
    while cur != r:
        cof = cofactors(cur, r)
        for i, branch in enumerate(cof.trees, start=1):
            if not branch.is_leaf:
                steps.append((cur.leaves, i))
                cur = omega(cur, i, arity)
                break
    return steps


def graft(t: Tree, subs: Iterator[Tree]) -> Tree:
    """Replace the leaves of t, left to right, by trees drawn from subs."""
    if t.is_leaf:
        return next(subs)
    return Tree(tuple(graft(c, subs) for c in t.children))


class Forest:
    """An ordered finite sequence of trees: a morphism leaves -> roots."""

    __slots__ = ("trees", "leaves", "_hash")

    def __init__(self, trees: tuple[Tree, ...] = ()):
        self.trees = trees
        self.leaves = sum(t.leaves for t in trees)
        self._hash = None

    @property
    def roots(self) -> int:
        return len(self.trees)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Forest):
            return NotImplemented
        return self.leaves == other.leaves and self.trees == other.trees

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.trees)
        return self._hash

    def __iter__(self):
        return iter(self.trees)

    def __len__(self):
        return len(self.trees)

    def __str__(self):
        return "[" + " ".join(str(t) for t in self.trees) + "]"

    __repr__ = __str__


def identity_forest(k: int) -> Forest:
    if k < 0:
        raise ValidationError("object must be a natural number")
    return Forest((LEAF,) * k)


def forest_compose(g: Forest, f: Forest) -> Forest:
    """The composite of g after f: graft f's trees onto g's leaves.

    f is a morphism n -> k and g a morphism k -> j; the k trees of f are
    distributed, left to right, over the k leaves of g.
    """
    if f.roots != g.leaves:
        raise MismatchError(
            f"cannot compose: {f.roots} roots against {g.leaves} leaves")
    it = iter(f.trees)
    return Forest(tuple(graft(t, it) for t in g.trees))


def forest_tensor(f: Forest, g: Forest) -> Forest:
    return Forest(f.trees + g.trees)


def pullback(f: Forest, g: Forest) -> tuple[int, Forest, Forest]:
    """Pullback of the cospan f: m -> k, g: m' -> k.

    Both forests decompose as tensors of single trees, so the pullback
    is computed componentwise: the i-th components pull back to the
    smallest common supertree of the two trees, with legs given by the
    cofactors.  Returns (apex, pf, pg) with pf: apex -> m, pg: apex -> m'
    and forest_compose(f, pf) == forest_compose(g, pg).
    """
    if f.roots != g.roots:
        raise MismatchError(
            f"cospan mismatch: {f.roots} roots against {g.roots}")
    pf: list[Tree] = []
    pg: list[Tree] = []
    apex = 0
    for tau, sigma in zip(f.trees, g.trees):
        rho = join(tau, sigma)
        apex += rho.leaves
        pf.extend(cofactors(tau, rho).trees)
        pg.extend(cofactors(sigma, rho).trees)
    return apex, Forest(tuple(pf)), Forest(tuple(pg))


# -- enumeration ------------------------------------------------------

def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of k positive integers summing to n."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_trees(n: int, arity: int = 2) -> tuple[Tree, ...]:
    """All trees with exactly n leaves at the given arity.

    Counts satisfy the product recurrence: T_0 is empty, T_1 = {l}, and
    T_n is the disjoint union over arity-part compositions of n of the
    products of smaller tree sets.
    """
    if arity < 2:
        raise ValidationError("arity must be at least 2")
    if n < 0:
        raise ValidationError("leaf count must be non-negative")
    if n == 0:
        return ()
    if n == 1:
        return (LEAF,)
    out: list[Tree] = []
    for parts in _compositions(n, arity):
        kids_choices = [enumerate_trees(p, arity) for p in parts]

        def product(i: int, acc: tuple[Tree, ...]) -> None:
            if i == len(kids_choices):
                out.append(Tree(acc))
                return
            for t in kids_choices[i]:
                product(i + 1, acc + (t,))

        product(0, ())
    return tuple(out)


@lru_cache(maxsize=None)
def all_forests(leaves: int, roots: int, arity: int = 2) -> tuple[Forest, ...]:
    """All forests with the given leaf and root counts."""
    if roots == 0:
        return (Forest(),) if leaves == 0 else ()
    out: list[Forest] = []
    for parts in _compositions(leaves, roots):
        tree_choices = [enumerate_trees(p, arity) for p in parts]

        def product(i: int, acc: tuple[Tree, ...]) -> None:
            if i == len(tree_choices):
                out.append(Forest(acc))
                return
            for t in tree_choices[i]:
                product(i + 1, acc + (t,))

        product(0, ())
    return tuple(out)


def refines(base: Forest, fine: Forest) -> bool:
    """True iff fine = forest_compose(base, h) for some forest h."""
    if base.roots != fine.roots:
        return False
    return all(is_subtree(b, f) for b, f in zip(base.trees, fine.trees))


def refinement_cofactors(base: Forest, fine: Forest) -> Forest:
    """The unique h with forest_compose(base, h) == fine."""
    if base.roots != fine.roots:
        raise NotASubtree("root counts differ")
    out: list[Tree] = []
    for b, f in zip(base.trees, fine.trees):
        out.extend(cofactors(b, f).trees)
    return Forest(tuple(out))


# -- text format ------------------------------------------------------

def _tokenize(text: str) -> list[str]:
    tokens = []
    for ch in text:
        if ch in "()[]|<>":
            tokens.append(ch)
        elif ch == "l":
            tokens.append("l")
        elif ch.isspace():
            continue
        else:
            raise ParseError(f"unexpected character {ch!r}")
    return tokens


class _TokenStream:
    def __init__(self, tokens: Sequence[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok


def _parse_tree(ts: _TokenStream) -> Tree:
    tok = ts.take()
    if tok == "l":
        return LEAF
    if tok == "(":
        kids = []
        while ts.peek() != ")":
            kids.append(_parse_tree(ts))
        ts.take(")")
        if len(kids) < 2:
            raise ParseError("a node needs at least two children")
        return Tree(tuple(kids))
    raise ParseError(f"expected a tree, found {tok!r}")


def _parse_forest(ts: _TokenStream) -> Forest:
    ts.take("[")
    trees = []
    while ts.peek() != "]":
        trees.append(_parse_tree(ts))
    ts.take("]")
    return Forest(tuple(trees))


def parse_tree(text: str) -> Tree:
    ts = _TokenStream(_tokenize(text))
    t = _parse_tree(ts)
    if ts.peek() is not None:
        raise ParseError("trailing input after tree")
    return t


def parse_forest(text: str) -> Forest:
    ts = _TokenStream(_tokenize(text))
    f = _parse_forest(ts)
    if ts.peek() is not None:
        raise ParseError("trailing input after forest")
    return f
