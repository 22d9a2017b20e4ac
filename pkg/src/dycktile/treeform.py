"""Decorated plane trees of a word and closed product formulas.

A word is read through its link pattern (see linkflip) and turned into
a rooted plane tree with one edge per arc.  An arc that closes with a D
becomes an edge above the parse of its interior, followed by the parse
of what comes after it as right siblings; it is dotted when the arc is
dashed.  A dashed arc that closes with a U also becomes a dotted edge,
but it swallows everything to its right: the interior and the rest of
the word are parsed together below it, so such an edge is always a
rightmost child.  Arrows between edges are copied from the arrow
chains of the link pattern, one arrow between consecutive members.

The tree is then evaluated by repeatedly merging two adjacent sibling
chains (a chain is a child edge whose subtree is a bare path).  With N
the length of the left chain, which must be entirely plain, and M the
length of the right chain, a merge contributes

  rule 1: [M+N choose M]_q        right chain plain, no arrow touches
                                  its top, left top has no incoming;
  rule 2: [M+N choose M]_{q^2} *  right chain dotted at its top, top
          prod(1+q^i, i<=N)       has no outgoing arrow;
  rule 3: rule 2 * [2M+N]/[2M+2N] as rule 2 but the top of the right
                                  chain points at the top of the left.

The merge grafts the left chain above the right one: the right chain
keeps its decoration, and under rules 2 and 3 the new top edge gets a
dot.  All rules keep the outgoing arrow of the left top on the merged
top, so a chain of arrows triggers rule 3 repeatedly.  When a single
chain remains, it contributes 1 when its bottom edge is dotted and
otherwise prod(1+q^i) with i running over the plain run at the bottom.
The rule 3 denominators are divided out at the very end.

The rules are only trusted in configurations the worked examples pin
down, and outside them a merge is refused rather than guessed at:
nothing merges strictly below an edge that carries an arrow, rule 1
refuses while an unconsumed dotted top still sits further right among
the siblings, rule 3 with a left chain longer than one edge requires
that the left top has no outgoing arrow, and rule 2 never consumes a
left top that receives an arrow and, once the right chain contains
edges produced by an earlier merge, only fires with a single left
edge and at most two right edges.  Evaluation
explores every order of the remaining merges; the result is returned
only when at least one order finishes and all finishing orders agree,
and otherwise the tree raises StuckTreeError.  Exhaustive comparison
against the tiling sums covers every word up to length nine: each
word either evaluates to the correct polynomial or raises, and the
raising words (none shorter than six) genuinely lie outside the rules,
with sums such as 4 * 23 at q = 1 that no product of the available
factors can reach.

The same product shapes appear on their own: kw_type_a is the hook
quotient over the chords of a Dyck word, q_b(M, N) multiplies the
a-factors a_(j,N) onto prod(1+q^i), and factorized_p_d/_b evaluate
words of the restricted shape (prime Dyck prefix, then D^N U^M) as
hook quotient times connector times q_b.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .linkflip import link_pattern
from .pathword import PathWord, chords
from .qpoly import (
    ONE,
    PolyQ,
    exact_div,
    prod,
    q2_binomial,
    q_binomial,
    q_factorial,
    q_int,
)


class StuckTreeError(Exception):
    """No merge rule applies but the tree is not yet a single chain."""


def _one_plus_q(i: int) -> PolyQ:
    return PolyQ((1,) + (0,) * (i - 1) + (1,))


def _one_plus_powers(lo: int, hi: int) -> PolyQ:
    """prod(1+q^j) for lo <= j <= hi (empty when hi < lo)."""
    return prod(_one_plus_q(j) for j in range(lo, hi + 1))


@dataclass(eq=False)
class TreeNode:
    """A vertex; children are edges ordered left to right."""

    children: list["TreeEdge"] = field(default_factory=list)


@dataclass(eq=False)
class TreeEdge:
    """An edge to a child vertex, optionally dotted, with arrows.

    merged marks edges rebuilt by a merge; rule 2 refuses long left
    chains that are not original, so eligibility depends on it.
    """

    child: TreeNode
    dotted: bool = False
    outgoing: Optional["TreeEdge"] = None
    incoming: Optional["TreeEdge"] = None
    merged: bool = False


@dataclass(eq=False)
class PlaneTree:
    """A rooted plane tree with dotted edges and edge-to-edge arrows."""

    root: TreeNode

    def edges(self) -> Iterator[TreeEdge]:
        """All edges in depth-first order."""
        stack = list(reversed(self.root.children))
        while stack:
            e = stack.pop()
            yield e
            stack.extend(reversed(e.child.children))

    @property
    def is_empty(self) -> bool:
        return not self.root.children

    def copy(self) -> "PlaneTree":
        return copy.deepcopy(self)

    def to_json(self) -> dict:
        """Nested children with dotted flags; arrows as child-index paths."""
        paths: dict[int, tuple[int, ...]] = {}

        def walk(node: TreeNode, prefix: tuple[int, ...]) -> list[dict]:
            out = []
            for k, e in enumerate(node.children):
                path = prefix + (k,)
                paths[id(e)] = path
                out.append(
                    {"dotted": e.dotted, "children": walk(e.child, path)}
                )
            return out

        children = walk(self.root, ())
        arrows = []
        for e in self.edges():
            if e.outgoing is not None:
                arrows.append(
                    {
                        "source": list(paths[id(e)]),
                        "target": list(paths[id(e.outgoing)]),
                    }
                )
        return {"children": children, "arrows": arrows}

    def to_dot(self) -> str:
        """Graphviz text: solid/dotted tree edges, dashed gray arrows."""
        names: dict[int, str] = {id(self.root): "n0"}
        lines = ["digraph tree {", "  node [shape=point];"]
        counter = [0]

        def walk(node: TreeNode) -> None:
            for e in node.children:
                counter[0] += 1
                names[id(e.child)] = "n%d" % counter[0]
                style = "dotted" if e.dotted else "solid"
                lines.append(
                    "  %s -> %s [style=%s];"
                    % (names[id(node)], names[id(e.child)], style)
                )
                walk(e.child)

        walk(self.root)
        for e in self.edges():
            if e.outgoing is not None:
                lines.append(
                    "  %s -> %s [style=dashed, color=gray, constraint=false];"
                    % (names[id(e.child)], names[id(e.outgoing.child)])
                )
        lines.append("}")
        return "\n".join(lines)


def build_tree(w: PathWord) -> PlaneTree:
    """The decorated plane tree of a word, one edge per extended arc."""
    lp = link_pattern(w)
    p = lp.prepended_u_count
    letters = {}
    for pos in range(1 - p, 1):
        letters[pos] = "U"
    for pos in range(1, w.length + 1):
        letters[pos] = w.steps[pos - 1]
    by_open = {a.open: a for a in lp.arcs}
    edge_of = {}

    def parse(positions: list[int]) -> list[TreeEdge]:
        if not positions:
            return []
        arc = by_open.get(positions[0])
        assert arc is not None, "segment must start with an opening letter"
        split = positions.index(arc.close)
        interior = positions[1:split]
        rest = positions[split + 1 :]
        edge = TreeEdge(TreeNode(), dotted=arc.dashed)
        edge_of[arc] = edge
        if letters[arc.close] == "D":
            edge.child.children = parse(interior)
            return [edge] + parse(rest)
        assert arc.dashed, "an arc closing with U is always dashed"
        edge.child.children = parse(interior + rest)
        return [edge]

    root = TreeNode(parse(sorted(letters)))
    for chain in lp.arrow_chains():
        for a, b in zip(chain, chain[1:]):
            edge_of[a].outgoing = edge_of[b]
            edge_of[b].incoming = edge_of[a]
    return PlaneTree(root)


def _chain(edge: TreeEdge) -> Optional[list[TreeEdge]]:
    """The bare path below edge, or None if the subtree branches."""
    out = [edge]
    node = edge.child
    while node.children:
        if len(node.children) > 1:
            return None
        out.append(node.children[0])
        node = node.children[0].child
    return out


def _merge_factor(
    left: list[TreeEdge],
    right: list[TreeEdge],
    rest: tuple[TreeEdge, ...] = (),
):
    """(numerator, denominator, profile) for merging two sibling chains.

    None when no rule applies.  The denominator is 1 except under rule
    3, and profile lists the dotted flags of the merged chain: the left
    chain is grafted above the right one, so the right chain keeps its
    decoration and the new top edge is dotted under rules 2 and 3.
    rest holds the top edges right of the pair at the same vertex: an
    original dotted top there vetoes rule 1, which must not jump the
    queue ahead of the dotted chain it would feed.
    """
    if any(e.dotted for e in left):
        return None
    l_top, r_top = left[0], right[0]
    n, m = len(left), len(right)
    if r_top.dotted:
        profile = (True,) + (False,) * (n - 1) + tuple(e.dotted for e in right)
        num = q2_binomial(m + n, m) * _one_plus_powers(1, n)
        if r_top.outgoing is None:
            if l_top.incoming is not None:
                return None
            if (n > 1 or m > 2) and any(e.merged for e in right):
                return None
            return num, ONE, profile
        if r_top.outgoing is l_top:
            if n > 1 and l_top.outgoing is not None:
                return None
            return num * q_int(2 * m + n), q_int(2 * m + 2 * n), profile
        return None
    if any(e.dotted for e in right):
        return None
    if any(e.dotted and not e.merged for e in rest):
        return None
    if r_top.outgoing is None and r_top.incoming is None and l_top.incoming is None:
        return q_binomial(m + n, m), ONE, (False,) * (m + n)
    return None


def _eligible_merges(tree: PlaneTree) -> list[tuple[TreeNode, int]]:
    """(vertex, left-child index) sites where a rule fires, deepest first.

    Vertices strictly below an edge that carries an arrow are skipped:
    collapsing them first would erase what the arrow points at.
    """
    sites = []

    def walk(node: TreeNode, allowed: bool) -> None:
        for e in node.children:
            walk(e.child, allowed and e.outgoing is None and e.incoming is None)
        if not allowed:
            return
        kids = [(_chain(e)) for e in node.children]
        for k in range(len(kids) - 1):
            if kids[k] is not None and kids[k + 1] is not None:
                rest = tuple(node.children[k + 2 :])
                if _merge_factor(kids[k], kids[k + 1], rest) is not None:
                    sites.append((node, k))

    walk(tree.root, True)
    return sites


def _apply_merge(node: TreeNode, k: int) -> tuple[PolyQ, PolyQ]:
    """Merge the chains at children k and k+1, return (num, den)."""
    left = _chain(node.children[k])
    right = _chain(node.children[k + 1])
    assert left is not None and right is not None
    got = _merge_factor(left, right, tuple(node.children[k + 2 :]))
    assert got is not None, "merge site is not eligible"
    num, den, profile = got
    target = left[0].outgoing
    top = TreeEdge(TreeNode(), dotted=profile[0], merged=True)
    tail = top
    for flag in profile[1:]:
        nxt = TreeEdge(TreeNode(), dotted=flag, merged=True)
        tail.child.children = [nxt]
        tail = nxt
    if target is not None and target not in (left[0], right[0]):
        top.outgoing = target
        target.incoming = top
    node.children[k : k + 2] = [top]
    return num, den


def _single_chain(tree: PlaneTree) -> Optional[list[TreeEdge]]:
    if tree.is_empty:
        return []
    if len(tree.root.children) > 1:
        return None
    return _chain(tree.root.children[0])


def _encode(tree: PlaneTree) -> tuple:
    """Hashable snapshot of shape, dots, merged flags and arrows."""
    paths: dict[int, tuple[int, ...]] = {}

    def index(node: TreeNode, prefix: tuple[int, ...]) -> None:
        for k, e in enumerate(node.children):
            paths[id(e)] = prefix + (k,)
            index(e.child, prefix + (k,))

    index(tree.root, ())

    def enc(node: TreeNode) -> tuple:
        return tuple(
            (
                e.dotted,
                e.merged,
                paths[id(e.outgoing)] if e.outgoing is not None else None,
                enc(e.child),
            )
            for e in node.children
        )

    return enc(tree.root)


def _terminal(chain: list[TreeEdge]) -> PolyQ:
    """Weight of a finished single chain."""
    if not chain or chain[-1].dotted:
        return ONE
    run = 0
    while run < len(chain) and not chain[-1 - run].dotted:
        run += 1
    return _one_plus_powers(1, run)


def _evaluations(tree: PlaneTree, memo: dict) -> list[tuple[PolyQ, PolyQ]]:
    """All (numerator, denominator) pairs over complete merge orders."""
    key = _encode(tree)
    if key in memo:
        return memo[key]
    results: list[tuple[PolyQ, PolyQ]] = []
    chain = _single_chain(tree)
    if chain is not None:
        results.append((_terminal(chain), ONE))
    else:
        for pick in range(len(_eligible_merges(tree))):
            work = tree.copy()
            node, k = _eligible_merges(work)[pick]
            a, b = _apply_merge(node, k)
            for num, den in _evaluations(work, memo):
                pair = (a * num, b * den)
                if pair not in results:
                    results.append(pair)
    memo[key] = results
    return results


def omega(tree: PlaneTree) -> PolyQ:
    """Evaluate a decorated tree by chain merges; the input is not changed.

    Every order of eligible merges is explored.  The value is returned
    when at least one order finishes and all finishing orders agree;
    when none finishes, or two orders disagree, the tree is outside the
    rules and StuckTreeError is raised.  InexactDivisionError signals a
    rule 3 denominator that fails to divide out.
    """
    outcomes = {exact_div(num, den) for num, den in _evaluations(tree, {})}
    if not outcomes:
        raise StuckTreeError("no merge rule applies to this tree")
    if len(outcomes) > 1:
        raise StuckTreeError("merge orders disagree on this tree")
    return outcomes.pop()


def kw_type_a(w: PathWord) -> PolyQ:
    """Hook quotient of a Dyck word: [n]! over the chord lengths."""
    cs = chords(w)
    return exact_div(q_factorial(len(cs)), prod(q_int(c.length) for c in cs))


def a_factor(j: int, n: int) -> tuple[PolyQ, PolyQ]:
    """Numerator and denominator of the j-th column factor a_(j,N).

    a_(2m-1,N) = [N+2m]/[2m] and a_(2m,N) = [2N+2m]/[N+2m].
    """
    if j < 1 or n < 0:
        raise ValueError("a_factor needs j >= 1 and N >= 0")
    m = (j + 1) // 2
    if j % 2:
        return q_int(n + 2 * m), q_int(2 * m)
    return q_int(2 * n + 2 * m), q_int(n + 2 * m)


def q_b(m: int, n: int) -> PolyQ:
    """prod(1+q^i, i<=N) times the a-factors a_(1,N)..a_(M,N).

    All numerators are multiplied first and the denominators divided
    out in one exact step.
    """
    if m < 0 or n < 0:
        raise ValueError("q_b needs M, N >= 0")
    num = _one_plus_powers(1, n)
    den = ONE
    for j in range(1, m + 1):
        a, b = a_factor(j, n)
        num, den = num * a, den * b
    return exact_div(num, den)


def _split_prefix_tail(w: PathWord) -> tuple[PathWord, int, int]:
    """(prime Dyck prefix, N, M) with the tail equal to D^N U^M.

    The prefix is empty when the whole word already has shape D^N U^M;
    otherwise it runs to the first return to height zero.  Words that
    fit neither shape are rejected, as are tails with M >= 2 next to a
    nonempty prefix: the product formula is only known that far.
    """
    steps = w.steps
    flat = len(steps) - len(steps.lstrip("D"))
    if all(s == "U" for s in steps[flat:]):
        return PathWord(""), flat, len(steps) - flat
    if not steps or steps[0] == "D":
        raise ValueError("no product formula for %r" % steps)
    h = 0
    split = 0
    for i, s in enumerate(steps, start=1):
        h += 1 if s == "U" else -1
        if h == 0:
            split = i
            break
    if split == 0:
        raise ValueError("no product formula for %r" % steps)
    tail = steps[split:]
    n = len(tail) - len(tail.lstrip("D"))
    m = len(tail) - n
    if any(s == "D" for s in tail[n:]) or m >= 2:
        raise ValueError("no product formula for %r" % steps)
    return PathWord(steps[:split]), n, m


def factorized_p_d(w: PathWord) -> PolyQ:
    """Closed form for the lower sum of a word with art weights.

    Supported shapes are D^N U^M and a prime Dyck prefix followed by
    D^N or D^N U; anything else raises ValueError.
    """
    prefix, n, m = _split_prefix_tail(w)
    if m >= 1:
        tail_value = q_b(m - 1, n)
    elif n >= 1:
        tail_value = q_b(0, n - 1)
    else:
        tail_value = ONE
    if not prefix.length:
        return tail_value
    n1 = prefix.length // 2
    connector = _one_plus_powers(max(n + m, 1), n + m + n1 - 1)
    return kw_type_a(prefix) * connector * tail_value


def factorized_p_b(w: PathWord) -> PolyQ:
    """Ballot counterpart of factorized_p_d: tail value q_b(M, N).

    Next to a nonempty prefix only a tail of D's is supported; even a
    single trailing U needs a factor the connector products cannot
    reach (UDU wants 1 + q + q^2).
    """
    prefix, n, m = _split_prefix_tail(w)
    tail_value = q_b(m, n)
    if not prefix.length:
        return tail_value
    if m:
        raise ValueError("no product formula for %r" % w.steps)
    n1 = prefix.length // 2
    connector = _one_plus_powers(n + m + 1, n + m + n1)
    return kw_type_a(prefix) * connector * tail_value
