"""Subdivision trees: binary trees with an integer label at every caret.

A caret labelled k sends its incoming word w to w C^k A on the left and
w C^k B on the right. The leaf words partition [0, 1) into their images.
The same tree can be read in variant 2 or 3; functions take n explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Set, Tuple, Union

from .projective import IDENTITY, ProjMatrix, c_matrix, generator


@dataclass(frozen=True)
class Leaf:
    def __str__(self):
        return "."


LEAF = Leaf()


@dataclass(frozen=True)
class Caret:
    label: int
    left: "Tree"
    right: "Tree"

    def __str__(self):
        return f"({self.label} {self.left} {self.right})"


Tree = Union[Leaf, Caret]


_TOKEN = re.compile(r"\s*(\(|\)|\.|-?\d+)")


def parse_tree(text: str) -> Tree:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse(i: int) -> Tuple[Tree, int]:
        if i >= len(tokens):
            raise ValueError("unexpected end of tree")
        tok = tokens[i]
        if tok == ".":
            return LEAF, i + 1
        if tok != "(":
            raise ValueError(f"expected '(' or '.', got {tok!r}")
        if i + 1 >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[i + 1]):
            raise ValueError("caret must start with an integer label")
        left, j = parse(i + 2)
        right, j = parse(j)
        if j >= len(tokens) or tokens[j] != ")":
            raise ValueError("missing ')'")
        return Caret(int(tokens[i + 1]), left, right), j + 1

    tree, end = parse(0)
    if end != len(tokens):
        raise ValueError("trailing input after tree")
    return tree


def caret_count(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + caret_count(t.left) + caret_count(t.right)


def labels(t: Tree) -> List[int]:
    if isinstance(t, Leaf):
        return []
    return [t.label] + labels(t.left) + labels(t.right)


def c_power_word(k: int) -> str:
    return "C" * k if k >= 0 else "c" * -k


def leaf_words(t: Tree) -> List[str]:
    out: List[str] = []

    def walk(node: Tree, prefix: str):
        if isinstance(node, Leaf):
            out.append(prefix)
            return
        base = prefix + c_power_word(node.label)
        walk(node.left, base + "A")
        walk(node.right, base + "B")

    walk(t, "")
    return out


@lru_cache(maxsize=None)
def _c_power(k: int, n: int) -> ProjMatrix:
    return c_matrix(n) ** k


def leaf_matrices(t: Tree, n: int) -> List[ProjMatrix]:
    """Matrices of the leaf words, left to right."""
    A = generator("A", n).matrix
    B = generator("B", n).matrix
    out: List[ProjMatrix] = []

    def walk(node: Tree, m: ProjMatrix):
        if isinstance(node, Leaf):
            out.append(m)
            return
        m = m @ _c_power(node.label, n)
        walk(node.left, m @ A)
        walk(node.right, m @ B)

    walk(t, IDENTITY)
    return out


def _mul(m, k):
    a, b, c, d = m
    e, f, g, h = k
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _at(m, num: int, den: int) -> Fraction:
    a, b, c, d = m
    return Fraction(a * num + b * den, c * num + d * den)


def _power_tuple(k: int, n: int):
    p = n ** abs(k)
    return (p, 0, p - 1, 1) if k >= 0 else (1, 0, 1 - p, p)


def breakpoints(t: Tree, n: int) -> Tuple[Fraction, ...]:
    """Interior breakpoints of the partition, increasing."""
    out: List[Fraction] = []

    def walk(node: Tree, m):
        if isinstance(node, Leaf):
            return
        m = _mul(m, _power_tuple(node.label, n))
        walk(node.left, _mul(m, (1, 0, 1, 1)))
        out.append(_at(m, 1, 2))
        walk(node.right, _mul(m, (0, 1, -1, 2)))

    walk(t, (1, 0, 0, 1))
    return tuple(out)


def tree_partition(t: Tree, n: int) -> List[Tuple[Fraction, Fraction]]:
    """Leaf images as (lo, hi) pairs of the half-open intervals [lo, hi)."""
    points = (Fraction(0),) + breakpoints(t, n) + (Fraction(1),)
    return list(zip(points, points[1:]))


def trees_equivalent(t1: Tree, t2: Tree, n: int) -> bool:
    return breakpoints(t1, n) == breakpoints(t2, n)


def shift_root(t: Tree, delta: int) -> Tree:
    if isinstance(t, Leaf):
        return t
    return Caret(t.label + delta, t.left, t.right)


def _all_zero_depth2(t: Tree) -> bool:
    return (isinstance(t, Caret) and t.label == 0
            and isinstance(t.left, Caret) and t.left.label == 0
            and isinstance(t.right, Caret) and t.right.label == 0)


def _move_up(node: Caret, n: int) -> Optional[Caret]:
    """Rotate the all-zero right configuration into the left one."""
    k, ta, r = node.label, node.left, node.right
    if n == 2:
        if not (isinstance(r, Caret) and r.label == 0):
            return None
        tb, tc = r.left, r.right
        return Caret(k + 1, Caret(0, shift_root(ta, -1), shift_root(tb, 1)),
                     shift_root(tc, -1))
    if not _all_zero_depth2(r):
        return None
    tb, tc, td, te = r.left.left, r.left.right, r.right.left, r.right.right
    left = Caret(0, Caret(0, shift_root(ta, -1), shift_root(tb, 1)),
                 Caret(0, shift_root(tc, -1), shift_root(td, 1)))
    return Caret(k + 1, left, shift_root(te, -1))


def _move_down(node: Caret, n: int) -> Optional[Caret]:
    """Inverse of _move_up."""
    k, l, te = node.label, node.left, node.right
    if n == 2:
        if not (isinstance(l, Caret) and l.label == 0):
            return None
        ta, tb = l.left, l.right
        return Caret(k - 1, shift_root(ta, 1),
                     Caret(0, shift_root(tb, -1), shift_root(te, 1)))
    if not _all_zero_depth2(l):
        return None
    ta, tb, tc, td = l.left.left, l.left.right, l.right.left, l.right.right
    right = Caret(0, Caret(0, shift_root(tb, -1), shift_root(tc, 1)),
                  Caret(0, shift_root(td, -1), shift_root(te, 1)))
    return Caret(k - 1, shift_root(ta, 1), right)


def _check_variant(n: int):
    if n not in (2, 3):
        raise ValueError(f"variant must be 2 or 3, got {n}")


def _replace_at(t: Tree, path: str, new: Tree) -> Tree:
    if not path:
        return new
    if path[0] == "L":
        return Caret(t.label, _replace_at(t.left, path[1:], new), t.right)
    return Caret(t.label, t.left, _replace_at(t.right, path[1:], new))


def _carets_with_paths(t: Tree, path: str = "") -> Iterator[Tuple[str, Caret]]:
    if isinstance(t, Caret):
        yield path, t
        yield from _carets_with_paths(t.left, path + "L")
        yield from _carets_with_paths(t.right, path + "R")


def elementary_moves(t: Tree, n: int) -> List[Tuple[str, str, Tree]]:
    """All single moves as (path from root, "up" or "down", new tree).

    "up" raises the label at the node by one, "down" lowers it.
    """
    _check_variant(n)
    out = []
    for path, node in _carets_with_paths(t):
        up = _move_up(node, n)
        if up is not None:
            out.append((path, "up", _replace_at(t, path, up)))
        down = _move_down(node, n)
        if down is not None:
            out.append((path, "down", _replace_at(t, path, down)))
    return out


def is_blocking(t: Tree, n: int = 3) -> bool:
    """A tree is non-blocking when its root and both children are carets
    labelled 0."""
    if n != 3:
        raise ValueError("blocking trees are only defined in variant 3")
    return not _all_zero_depth2(t)


def is_sufficiently_expanded(t: Tree, side: str, n: int) -> bool:
    """Whether some arc from the root through the given side reaches a leaf
    while obeying the turning rules at every non-root node."""
    _check_variant(n)
    if not isinstance(t, Caret):
        raise ValueError("a trivial tree has no sides")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    start = t.left if side == "left" else t.right

    def arc_ok(node: Tree, after_zero: bool) -> bool:
        if isinstance(node, Leaf):
            return True
        if n == 2:
            if node.label == 0:
                return False
        else:
            if not is_blocking(node, 3):
                return False
            if after_zero and node.label == 0:
                return False
        if node.label > 0:
            return arc_ok(node.left, False)
        if node.label < 0:
            return arc_ok(node.right, False)
        return arc_ok(node.left, True) or arc_ok(node.right, True)

    return arc_ok(start, False)


@lru_cache(maxsize=None)
def _settable_zero_neighbourhood(t: Tree, n: int) -> Optional[Tree]:
    """A tree equivalent to t whose top is the all-zero configuration the
    variant's move needs next to the moving node, or None."""
    if isinstance(t, Leaf):
        return None
    t0 = set_root_label(t, 0, n)
    if t0 is None or n == 2:
        return t0
    left = set_root_label(t0.left, 0, n) if isinstance(t0.left, Caret) else None
    right = set_root_label(t0.right, 0, n) if isinstance(t0.right, Caret) else None
    if left is None or right is None:
        return None
    return Caret(0, left, right)


def _step(t: Caret, direction: int, n: int) -> Optional[Caret]:
    if direction > 0:
        side = _settable_zero_neighbourhood(t.right, n)
        return None if side is None else _move_up(Caret(t.label, t.left, side), n)
    side = _settable_zero_neighbourhood(t.left, n)
    return None if side is None else _move_down(Caret(t.label, side, t.right), n)


@lru_cache(maxsize=None)
def set_root_label(t: Tree, k: int, n: int) -> Optional[Tree]:
    """A tree equivalent to t with root label k, built from moves, or None."""
    _check_variant(n)
    if isinstance(t, Leaf):
        return None
    current = t
    while current.label != k:
        nxt = _step(current, 1 if k > current.label else -1, n)
        if nxt is None:
            return None
        current = nxt
    return current


@lru_cache(maxsize=None)
def root_label_range(t: Tree, n: int) -> Tuple[int, int]:
    """Least and greatest root labels over trees equivalent to t."""
    _check_variant(n)
    if isinstance(t, Leaf):
        raise ValueError("a trivial tree has no root label")
    bounds = []
    for direction in (-1, 1):
        current = t
        while True:
            nxt = _step(current, direction, n)
            if nxt is None:
                break
            current = nxt
        bounds.append(current.label)
    return bounds[0], bounds[1]


class SearchLimitExceeded(RuntimeError):
    pass


def split_point(k: int, n: int) -> Fraction:
    """Image of 1/2 under C_n^k."""
    return Fraction(n ** k, n ** k + 1) if k >= 0 else Fraction(1, n ** -k + 1)


def brute_force_range(t: Tree, n: int, bound: Optional[int] = None,
                      max_nodes: int = 10**7) -> Set[int]:
    """Root labels of all trees with the same number of carets and labels in
    [-bound, bound] whose partition equals that of t.

    The enumeration walks every labelled shape top down and abandons a
    partial tree as soon as one of its split points is not a breakpoint of
    the target, since no completion could then match.
    """
    _check_variant(n)
    if isinstance(t, Leaf):
        raise ValueError("a trivial tree has no root label")
    if bound is None:
        bound = max(abs(x) for x in labels(t)) + caret_count(t) + 2
    target = breakpoints(t, n)
    target_set = set(target)
    # plain integer matrices; determinants stay positive so no rescaling
    A, B = (1, 0, 1, 1), (0, 1, -1, 2)
    powers = {k: _power_tuple(k, n) for k in range(-bound, bound + 1)}
    counter = [0]
    memo = {}

    def fits(m, carets: int) -> bool:
        # some tree with this many carets hung below m reproduces exactly
        # the target breakpoints inside m's image
        key = (m, carets)
        if key in memo:
            return memo[key]
        counter[0] += 1
        if counter[0] > max_nodes:
            raise SearchLimitExceeded(f"more than {max_nodes} search nodes")
        lo, hi = _at(m, 0, 1), _at(m, 1, 1)
        inside = sum(1 for x in target if lo < x < hi)
        if carets == 0:
            result = inside == 0
        else:
            result = inside == carets and any(
                root_fits(m, k, carets) for k in powers)
        memo[key] = result
        return result

    def root_fits(m, k: int, carets: int) -> bool:
        mk = _mul(m, powers[k])
        if _at(mk, 1, 2) not in target_set:
            return False
        left, right = _mul(mk, A), _mul(mk, B)
        return any(fits(left, c) and fits(right, carets - 1 - c)
                   for c in range(carets))

    carets = caret_count(t)
    return {k for k in powers if root_fits((1, 0, 0, 1), k, carets)}


def enumerate_shapes(carets: int) -> Iterator[Tree]:
    if carets == 0:
        yield LEAF
        return
    for c in range(carets):
        for left in enumerate_shapes(c):
            for right in enumerate_shapes(carets - 1 - c):
                yield Caret(0, left, right)


def relabel(shape: Tree, values) -> Tree:
    """Assign labels in preorder from an iterator."""
    it = iter(values)

    def walk(node: Tree) -> Tree:
        if isinstance(node, Leaf):
            return node
        label = next(it)
        return Caret(label, walk(node.left), walk(node.right))

    return walk(shape)


def random_tree_of_size(rng, carets: int, lo: int, hi: int) -> Tree:
    if carets == 0:
        return LEAF
    left = rng.randint(0, carets - 1)
    return Caret(rng.randint(lo, hi), random_tree_of_size(rng, left, lo, hi),
                 random_tree_of_size(rng, carets - 1 - left, lo, hi))


def random_tree(rng, max_carets: int, lo: int, hi: int) -> Tree:
    return random_tree_of_size(rng, rng.randint(0, max_carets), lo, hi)
