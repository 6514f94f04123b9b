"""Pairs [f, D], vertices built from them, the expansion order between
vertices, and ascending links of tree vertices.

A generating domain is T^m w [0, 1) for a word w over A and B, or a ray
[m, inf). A pair [f, D] is identified with [f h, D'] whenever h lies in
the structure set from D' to D. For pairs over [0, 1) whose maps lie in
the monoid this class is determined by the image interval alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from .projective import (
    INF,
    UNIT,
    ZERO_MAP,
    Interval,
    ProjMatrix,
    detect_c_power,
    image_of,
    word_matrix,
    word_semantics,
)
from .trees import (
    LEAF,
    Caret,
    Leaf,
    Tree,
    c_power_word,
    leaf_words,
    root_label_range,
    set_root_label,
    _move_down,
    _move_up,
    _settable_zero_neighbourhood,
)


@dataclass(frozen=True)
class WordDomain:
    """T^tpow word [0, 1) with word over A and B."""

    word: str = ""
    tpow: int = 0

    def __post_init__(self):
        if any(ch not in "AB" for ch in self.word) or self.tpow < 0:
            raise ValueError(f"bad generating domain {self.tpow}, {self.word!r}")

    @property
    def letters(self) -> str:
        return "T" * self.tpow + self.word

    def __str__(self):
        return self.letters or "I"


@dataclass(frozen=True)
class RayDomain:
    """The ray [start, inf)."""

    start: int

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("rays start at a non-negative integer")

    def __str__(self):
        return f"[{self.start},inf)"


DomainWord = Union[WordDomain, RayDomain]
I_DOMAIN = WordDomain()


def parse_domain(text: str) -> DomainWord:
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[)").split(",")
        if len(body) != 2 or body[1].strip().lower() not in ("inf", "oo"):
            raise ValueError(f"bad ray {text!r}")
        return RayDomain(int(body[0]))
    if text in ("", "I", "1"):
        return I_DOMAIN
    tpow = len(text) - len(text.lstrip("T"))
    return WordDomain(text[tpow:], tpow)


def domain_interval(d: DomainWord, n: int = 2) -> Interval:
    if isinstance(d, RayDomain):
        return Interval(Fraction(d.start), INF)
    return image_of(word_matrix(d.letters, n), UNIT)


def generating_domain_of(iv: Interval, n: int = 2) -> Optional[WordDomain]:
    """The generating domain equal to iv, if there is one."""
    if iv.hi is INF or iv.lo < 0:
        return None
    tpow = int(iv.lo)
    if iv.hi > tpow + 1:
        return None
    lo, hi = iv.lo - tpow, iv.hi - tpow
    m = ProjMatrix(1, 0, 0, 1)
    A, B = word_matrix("A", n), word_matrix("B", n)
    word = ""
    while True:
        left, right = m(Fraction(0)), m(Fraction(1))
        if (lo, hi) == (left, right):
            return WordDomain(word, tpow)
        mid = m(Fraction(1, 2))
        if hi <= mid:
            m, word = m @ A, word + "A"
        elif lo >= mid:
            m, word = m @ B, word + "B"
        else:
            return None


@dataclass(frozen=True)
class PairClass:
    f: str
    domain: DomainWord = I_DOMAIN

    def matrix(self, n: int) -> ProjMatrix:
        return word_matrix(self.f, n)

    def image(self, n: int) -> Interval:
        return image_of(self.matrix(n), domain_interval(self.domain, n))

    def __str__(self):
        return f"[{self.f or '1'}, {self.domain}]"


def structure_set_membership(f: ProjMatrix, d1: DomainWord, d2: DomainWord,
                             n: int) -> Optional[int]:
    """k with f == w2 C^k w1^-1 where di = wi [0, 1), or None.

    For two rays the structure set is the single translation between them;
    membership is then reported as 0.
    """
    if isinstance(d1, RayDomain) and isinstance(d2, RayDomain):
        shift = d2.start - d1.start
        t = word_matrix("T" * shift if shift >= 0 else "t" * -shift, n)
        return 0 if f == t else None
    if isinstance(d1, RayDomain) or isinstance(d2, RayDomain):
        return None
    h = word_matrix(d2.letters, n).inverse() @ f @ word_matrix(d1.letters, n)
    return detect_c_power(h, n)


def pairs_equal(p1: PairClass, p2: PairClass, n: int) -> bool:
    h = p2.matrix(n).inverse() @ p1.matrix(n)
    return structure_set_membership(h, p1.domain, p2.domain, n) is not None


class RefinementLimit(RuntimeError):
    pass


def push_through(s: str, d: DomainWord, n: int, max_depth: int = 64,
                 ) -> List[Tuple[WordDomain, WordDomain]]:
    """Split d into generating domains each sent by s onto a generating
    domain. Returns (piece, image) pairs from left to right."""
    f = word_semantics(s, n)
    if isinstance(d, RayDomain):
        if any(ch not in "Tt" for ch in s):
            raise ValueError("only powers of T act on rays")
        shift = s.count("T") - s.count("t")
        if d.start + shift < 0:
            raise ValueError(f"{s} is not defined on {d}")
        return [(d, RayDomain(d.start + shift))]
    if f is ZERO_MAP or not domain_interval(d, n).issubset(f.domain):
        raise ValueError(f"{s} is not defined on all of {d}")
    out = []
    todo = [d]
    while todo:
        piece = todo.pop()
        if len(piece.word) - len(d.word) > max_depth:
            raise RefinementLimit(f"no generating images within depth {max_depth}")
        image = image_of(f.matrix, domain_interval(piece, n))
        target = generating_domain_of(image, n)
        if target is not None:
            out.append((piece, target))
        else:
            todo.append(WordDomain(piece.word + "B", piece.tpow))
            todo.append(WordDomain(piece.word + "A", piece.tpow))
    return out


@dataclass(frozen=True)
class Vertex:
    pairs: Tuple[PairClass, ...]
    n: int

    def images(self) -> List[Interval]:
        return [p.image(self.n) for p in self.pairs]

    def sorted_pairs(self) -> List[Tuple[Interval, PairClass]]:
        return sorted(zip(self.images(), self.pairs), key=lambda x: x[0].lo)

    def __str__(self):
        return "{" + ", ".join(str(p) for _, p in self.sorted_pairs()) + "}"


def vertices_equal(v1: Vertex, v2: Vertex) -> bool:
    if v1.n != v2.n or len(v1.pairs) != len(v2.pairs):
        return False
    for (i1, p1), (i2, p2) in zip(v1.sorted_pairs(), v2.sorted_pairs()):
        if i1 != i2 or not pairs_equal(p1, p2, v1.n):
            return False
    return True


def vertex_of_tree(t: Tree, n: int) -> Vertex:
    return Vertex(tuple(PairClass(w) for w in leaf_words(t)), n)


def _split_index(x: Fraction, n: int) -> Optional[int]:
    """k with x == n^k / (n^k + 1), or None."""
    if not 0 < x < 1:
        return None
    ratio = x / (1 - x)
    if ratio >= 1:
        num, sign = ratio, 1
    else:
        num, sign = 1 / ratio, -1
    if num.denominator != 1:
        return None
    value, k = num.numerator, 0
    while value > 1 and value % n == 0:
        value //= n
        k += 1
    return sign * k if value == 1 else None


@lru_cache(maxsize=None)
def partition_tree(points: Tuple[Fraction, ...], n: int) -> Optional[Tree]:
    """A subdivision tree whose interior breakpoints are exactly points."""
    if not points:
        return LEAF
    for x in points:
        k = _split_index(x, n)
        if k is None:
            continue
        left_inv = word_matrix(c_power_word(k) + "A", n).inverse()
        right_inv = word_matrix(c_power_word(k) + "B", n).inverse()
        left = partition_tree(tuple(left_inv(y) for y in points if y < x), n)
        if left is None:
            continue
        right = partition_tree(tuple(right_inv(y) for y in points if y > x), n)
        if right is None:
            continue
        return Caret(k, left, right)
    return None


def _partition_points(intervals: Sequence[Interval], support: Interval) -> List[Fraction]:
    ordered = sorted(intervals, key=lambda iv: iv.lo)
    point = support.lo
    inner = []
    for iv in ordered:
        if iv.lo != point:
            raise ValueError("intervals do not partition their support")
        if point != support.lo:
            inner.append(point)
        point = iv.hi
    if point != support.hi:
        raise ValueError("intervals do not partition their support")
    return inner


def tree_representable(words: Sequence[str], n: int) -> Optional[Tree]:
    """A tree whose leaf pairs are [w, I] for the given words, or None."""
    images = []
    for w in words:
        f = word_semantics(w, n)
        if f is ZERO_MAP or f.domain != UNIT:
            raise ValueError(f"{w} is not defined on all of [0, 1)")
        images.append(f.image)
    points = _partition_points(images, UNIT)
    return partition_tree(tuple(points), n)


def _require_unit_pairs(v: Vertex):
    for p in v.pairs:
        if p.domain != I_DOMAIN:
            raise ValueError("unsupported vertex family: pairs must sit over [0, 1)")


def vertex_leq(v1: Vertex, v2: Vertex) -> bool:
    """Whether v2 is obtained from v1 by expansions."""
    _require_unit_pairs(v1)
    _require_unit_pairs(v2)
    if v1.n != v2.n:
        raise ValueError("vertices of different variants")
    n = v1.n
    fine = v2.images()
    used = 0
    for p, iv in zip(v1.pairs, v1.images()):
        inside = [j for j in fine if j.issubset(iv)]
        if any(j.intersect(iv) is not None and not j.issubset(iv) for j in fine):
            return False
        try:
            points = _partition_points(inside, iv)
        except ValueError:
            return False
        pull = p.matrix(n).inverse()
        if partition_tree(tuple(pull(x) for x in points), n) is None:
            return False
        used += len(inside)
    return used == len(fine)


def expand_root(t: Tree, k: int, n: int) -> Caret:
    """A tree with root label k obtained from t by adding carets at leaves
    and applying moves, so its vertex lies above the vertex of t."""
    if isinstance(t, Leaf):
        return Caret(k, LEAF, LEAF)
    while t.label != k:
        if k > t.label:
            t = _move_up(Caret(t.label, t.left, _expand_zero(t.right, n)), n)
        else:
            t = _move_down(Caret(t.label, _expand_zero(t.left, n), t.right), n)
    return t


def _expand_zero(t: Tree, n: int) -> Caret:
    """Expansion of t whose top is the all-zero configuration a move needs."""
    top = expand_root(t, 0, n)
    if n == 2:
        return top
    return Caret(0, expand_root(top.left, 0, n), expand_root(top.right, 0, n))


def merge_trees(t1: Tree, t2: Tree, n: int) -> Tree:
    """A tree whose vertex lies above the vertices of both t1 and t2."""
    if isinstance(t1, Leaf):
        return t2
    if isinstance(t2, Leaf):
        return t1
    t2 = expand_root(t2, t1.label, n)
    return Caret(t1.label, merge_trees(t1.left, t2.left, n),
                 merge_trees(t1.right, t2.right, n))


def _tree_of_vertex(v: Vertex) -> Tree:
    _require_unit_pairs(v)
    t = tree_representable([p.f for p in v.pairs], v.n)
    if t is None:
        raise ValueError("vertex is not tree-representable")
    return t


def common_upper_bound(v1: Vertex, v2: Vertex) -> Vertex:
    """A tree vertex above both inputs.

    The two trees are merged caret by caret: the second tree is expanded and
    rotated until its root label matches the first, then both sides recurse.
    """
    if v1.n != v2.n:
        raise ValueError("vertices of different variants")
    merged = merge_trees(_tree_of_vertex(v1), _tree_of_vertex(v2), v1.n)
    upper = vertex_of_tree(merged, v1.n)
    if not (vertex_leq(v1, upper) and vertex_leq(v2, upper)):
        raise ArithmeticError("merged tree failed to dominate its inputs")
    return upper


def half_integer_words(h: Fraction, n: int) -> List[str]:
    """Leaf words of the vertex u_h for an integer or half-integer h."""
    h = Fraction(h)
    if h.denominator == 1:
        k = int(h)
        return [c_power_word(k) + "A", c_power_word(k) + "B"]
    if h.denominator != 2:
        raise ValueError(f"{h} is not a half-integer")
    k = int(h + Fraction(1, 2))
    base = c_power_word(k)
    tails = ["AA", "AB", "B"] if n == 2 else ["AAA", "AAB", "ABA", "ABB", "B"]
    return [base + tail for tail in tails]


def u_vertex(h: Fraction, n: int, prefix: str = "") -> Vertex:
    return Vertex(tuple(PairClass(prefix + w) for w in half_integer_words(h, n)), n)


def _half_steps(lo: Fraction, hi: Fraction) -> List[Fraction]:
    out = []
    x = Fraction(int(2 * lo + (1 if (2 * lo).denominator != 1 else 0)), 2)
    while x <= hi:
        if x >= lo:
            out.append(x)
        x += Fraction(1, 2)
    return out


def scheme_expansions(base: PairClass, k_lo, k_hi, n: int) -> List[Vertex]:
    """The pseudovertex {base} followed by its scheme expansions."""
    out = [Vertex((base,), n)]
    d = base.domain
    if isinstance(d, RayDomain):
        out.append(Vertex((PairClass(base.f, WordDomain("", d.start)),
                           PairClass(base.f, RayDomain(d.start + 1))), n))
        return out
    prefix = base.f + d.letters
    for h in _half_steps(Fraction(k_lo), Fraction(k_hi)):
        out.append(u_vertex(h, n, prefix))
    return out


def ascending_link(t: Tree, n: int) -> List[Fraction]:
    """Half-integers h with u_h below the vertex of t, via root moves."""
    if isinstance(t, Leaf):
        return []
    lo, hi = root_label_range(t, n)
    out: List[Fraction] = [Fraction(lo)]
    for k in range(lo + 1, hi + 1):
        rooted = set_root_label(t, k, n)
        if _settable_zero_neighbourhood(rooted.left, n) is not None:
            out.append(Fraction(2 * k - 1, 2))
        out.append(Fraction(k))
    return out


def ascending_link_by_definition(t: Tree, n: int) -> List[Fraction]:
    """Same set, found by testing u_h against the vertex directly."""
    v = vertex_of_tree(t, n)
    points = [iv.lo for iv in v.images()][1:]
    ks = sorted(k for k in (_split_index(x, n) for x in points) if k is not None)
    candidates = set()
    for k in ks:
        candidates.update((Fraction(k), Fraction(2 * k - 1, 2), Fraction(2 * k + 1, 2)))
    return sorted(h for h in candidates if vertex_leq(u_vertex(h, n), v))
