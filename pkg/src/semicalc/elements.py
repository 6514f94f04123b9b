"""Group elements given by a pair of subdivision trees, a permutation of
leaves and an integer twist per leaf.

Leaf i of the domain tree, with word w, is sent to leaf perm[i] of the
range tree, with word w', by w' C^twist[i] w^-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .expansion import (
    common_upper_bound,
    partition_tree,
    vertex_of_tree,
)
from .projective import ProjMatrix, c_matrix, detect_c_power
from .trees import (
    Tree,
    breakpoints,
    leaf_matrices,
    parse_tree,
    caret_count,
    random_tree_of_size,
)


@dataclass(frozen=True)
class GroupElement:
    domain_tree: Tree
    range_tree: Tree
    perm: Tuple[int, ...]
    twists: Tuple[int, ...]
    n: int

    def __post_init__(self):
        leaves = caret_count(self.domain_tree) + 1
        if caret_count(self.range_tree) + 1 != leaves:
            raise ValueError("domain and range trees differ in leaf count")
        if sorted(self.perm) != list(range(leaves)):
            raise ValueError(f"perm is not a permutation of {leaves} leaves")
        if len(self.twists) != leaves:
            raise ValueError("one twist per leaf is required")
        if self.n not in (2, 3):
            raise ValueError(f"variant must be 2 or 3, got {self.n}")

    def piece_matrices(self) -> List[ProjMatrix]:
        dom = leaf_matrices(self.domain_tree, self.n)
        rng = leaf_matrices(self.range_tree, self.n)
        c = c_matrix(self.n)
        return [rng[self.perm[i]] @ c ** self.twists[i] @ dom[i].inverse()
                for i in range(len(dom))]

    def to_json(self) -> dict:
        return {
            "domain_tree": str(self.domain_tree),
            "range_tree": str(self.range_tree),
            "perm": list(self.perm),
            "twists": list(self.twists),
        }


def element_from_json(data, n: int) -> GroupElement:
    if isinstance(data, str):
        data = json.loads(data)
    return GroupElement(
        parse_tree(data["domain_tree"]),
        parse_tree(data["range_tree"]),
        tuple(data["perm"]),
        tuple(data["twists"]),
        n,
    )


def _locate(points: Sequence[Fraction], x: Fraction) -> int:
    i = 0
    while i < len(points) and points[i] <= x:
        i += 1
    return i


def ge_evaluate(g: GroupElement, x) -> Fraction:
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"{x} is outside [0, 1)")
    i = _locate(breakpoints(g.domain_tree, g.n), x)
    return g.piece_matrices()[i](x)


def ge_invert(g: GroupElement) -> GroupElement:
    leaves = len(g.perm)
    inv = [0] * leaves
    for i, j in enumerate(g.perm):
        inv[j] = i
    twists = tuple(-g.twists[inv[j]] for j in range(leaves))
    return GroupElement(g.range_tree, g.domain_tree, tuple(inv), twists, g.n)


def _piece_index(points: Sequence[Fraction], lo: Fraction) -> int:
    return _locate(points, lo)


def ge_compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """g1 after g2."""
    if g1.n != g2.n:
        raise ValueError("elements of different variants")
    n = g1.n
    upper = common_upper_bound(vertex_of_tree(g2.range_tree, n),
                               vertex_of_tree(g1.domain_tree, n))
    g2_inv = ge_invert(g2)
    back_maps = g2_inv.piece_matrices()
    forward_maps = g1.piece_matrices()
    back_points = breakpoints(g2.range_tree, n)
    forward_points = breakpoints(g1.domain_tree, n)
    sources, targets = [], []
    for pair in upper.pairs:
        m = pair.matrix(n)
        lo = m(Fraction(0))
        sources.append(back_maps[_piece_index(back_points, lo)] @ m)
        targets.append(forward_maps[_piece_index(forward_points, lo)] @ m)
    dom_tree = _tree_for(sources, n)
    rng_tree = _tree_for(targets, n)
    dom_points = breakpoints(dom_tree, n)
    rng_points = breakpoints(rng_tree, n)
    dom_words = leaf_matrices(dom_tree, n)
    rng_words = leaf_matrices(rng_tree, n)
    leaves = len(upper.pairs)
    perm = [0] * leaves
    twists = [0] * leaves
    for src, tgt in zip(sources, targets):
        i = _piece_index(dom_points, src(Fraction(0)))
        j = _piece_index(rng_points, tgt(Fraction(0)))
        piece = tgt @ src.inverse()
        k = detect_c_power(rng_words[j].inverse() @ piece @ dom_words[i], n)
        if k is None:
            raise ArithmeticError("composite piece is not a twisted leaf map")
        perm[i], twists[i] = j, k
    return GroupElement(dom_tree, rng_tree, tuple(perm), tuple(twists), n)


def _tree_for(maps: Sequence[ProjMatrix], n: int) -> Tree:
    lows = sorted(m(Fraction(0)) for m in maps)
    tree = partition_tree(tuple(lows[1:]), n)
    if tree is None:
        raise ArithmeticError("expanded vertex is not tree-representable")
    return tree


def ge_flavor(g: GroupElement) -> str:
    """"F" for the identity permutation, "T" for a cyclic rotation, else "V"."""
    leaves = len(g.perm)
    if all(g.perm[i] == i for i in range(leaves)):
        return "F"
    shift = g.perm[0]
    if all(g.perm[i] == (i + shift) % leaves for i in range(leaves)):
        return "T"
    return "V"


def is_identity(g: GroupElement) -> bool:
    dom = breakpoints(g.domain_tree, g.n)
    rng = breakpoints(g.range_tree, g.n)
    if dom != rng:
        return False
    identity = ProjMatrix(1, 0, 0, 1)
    return all(m == identity for m in g.piece_matrices())


def ge_equal(g1: GroupElement, g2: GroupElement) -> bool:
    return is_identity(ge_compose(ge_invert(g2), g1))


def random_element(rng, n: int, max_carets: int = 4, label_range=(-2, 2),
                   twist_range=(-2, 2), flavor: Optional[str] = None) -> GroupElement:
    carets = rng.randint(0, max_carets)

    def tree_with(c: int) -> Tree:
        return random_tree_of_size(rng, c, *label_range)

    leaves = carets + 1
    flavor = flavor or rng.choice("FTV")
    if flavor == "F":
        perm = list(range(leaves))
    elif flavor == "T":
        shift = rng.randrange(leaves)
        perm = [(i + shift) % leaves for i in range(leaves)]
    else:
        perm = list(range(leaves))
        rng.shuffle(perm)
    twists = [rng.randint(*twist_range) for _ in range(leaves)]
    return GroupElement(tree_with(carets), tree_with(carets), tuple(perm),
                        tuple(twists), n)
