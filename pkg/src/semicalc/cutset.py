"""Search for a finite cut set of {A, B}-words L with C L = L' C^k.

Vertices of the infinite binary tree are words over A and B. For a vertex
L the search starts from the matrix C L and keeps prepending a (while the
image of [0, 1) sits in the left half) or b (right half). If the image
becomes all of [0, 1) the remaining matrix is a power of C and L is a leaf;
otherwise L is subdivided. Children are visited left first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .projective import (
    UNIT,
    ProjMatrix,
    c_matrix,
    detect_c_power,
    generator,
    image_of,
    word_matrix,
)


@dataclass(frozen=True)
class CutsetLeaf:
    omega: str
    omega_prime: str
    k: int

    def __str__(self):
        return f"C * {self.omega or '1'} = {self.omega_prime or '1'} * C^{self.k}"


@dataclass
class CutsetResult:
    leaves: List[CutsetLeaf]
    steps_used: int


@dataclass
class StepLimit:
    steps_used: int
    leaves_found: List[CutsetLeaf] = field(default_factory=list)


def _raw(m: ProjMatrix):
    return (m.a, m.b, m.c, m.d)


def _mul(m, k):
    a, b, c, d = m
    e, f, g, h = k
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _power_of(m: ProjMatrix, c: ProjMatrix, n: Optional[int]) -> Optional[int]:
    if n is not None:
        return detect_c_power(m, n)
    # generic seeds: C^k entries grow geometrically, so this is finite
    size = max(abs(x) for x in (m.a, m.b, m.c, m.d))
    for sign in (1, -1):
        p = ProjMatrix(1, 0, 0, 1)
        step = c if sign > 0 else c.inverse()
        for k in range(size.bit_length() + 2):
            if p == m:
                return sign * k
            p = p @ step
    return None


def run_search(n: int, max_steps: int = 10**5,
               seeds: Optional[Tuple[ProjMatrix, ProjMatrix, ProjMatrix]] = None,
               ) -> Union[CutsetResult, StepLimit]:
    """Depth-first search for a cut set.

    Each prepended letter and each classification of a vertex costs one
    step. seeds replaces the matrices of A, B and C.
    """
    if seeds is None:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        A, B, C = (generator("A", n).matrix, generator("B", n).matrix,
                   c_matrix(n))
        power_n: Optional[int] = n
    else:
        A, B, C = seeds
        power_n = None
    left_half, right_half = image_of(A, UNIT), image_of(B, UNIT)
    a, b = _raw(A.inverse()), _raw(B.inverse())
    A, B = _raw(A), _raw(B)

    def image(m):
        # denominators keep one sign on [0, 1] because the pole lies outside
        return Fraction(m[1], m[3]), Fraction(m[0] + m[1], m[2] + m[3])

    steps = 0
    leaves: List[CutsetLeaf] = []
    # the root itself is always subdivided: C [0, 1) = [0, 1) says nothing
    start = _raw(C)
    stack = [("B", _mul(start, B)), ("A", _mul(start, A))]
    while stack:
        label, vertex = stack.pop()
        m = vertex
        prefix = []
        while True:
            if steps >= max_steps:
                return StepLimit(steps, leaves)
            steps += 1
            lo, hi = image(m)
            if left_half.lo <= lo and hi <= left_half.hi:
                m = _mul(a, m)
                prefix.append("A")
            elif right_half.lo <= lo and hi <= right_half.hi:
                m = _mul(b, m)
                prefix.append("B")
            else:
                break
        if lo == 0 and hi == 1:
            k = _power_of(ProjMatrix(*m), C, power_n)
            if k is None:
                raise ArithmeticError(f"{m} fixes [0, 1) but is not a power of C")
            leaves.append(CutsetLeaf(label, "".join(prefix), k))
        else:
            stack.append((label + "B", _mul(vertex, B)))
            stack.append((label + "A", _mul(vertex, A)))
    return CutsetResult(leaves, steps)


def verify_result(result: CutsetResult, n: int) -> bool:
    """Leaves form a cut set and every identity holds as matrices."""
    words = [leaf.omega for leaf in result.leaves]
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            if u.startswith(v) or v.startswith(u):
                return False
    intervals = sorted(
        (image_of(word_matrix(w, n), UNIT) for w in words), key=lambda iv: iv.lo
    )
    point = Fraction(0)
    for iv in intervals:
        if iv.lo != point:
            return False
        point = iv.hi
    if point != 1:
        return False
    for leaf in result.leaves:
        lhs = word_matrix("C" + leaf.omega, n)
        power = "C" * leaf.k if leaf.k >= 0 else "c" * -leaf.k
        if lhs != word_matrix(leaf.omega_prime + power, n):
            return False
    return True
