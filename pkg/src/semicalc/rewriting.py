"""String rewriting over the letters A, B, C, c (and a, b, 0 in the hatted
systems). C and c always stand for the variant's C_n and its inverse."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .projective import (
    UNIT,
    ZERO_MAP,
    word_semantics,
)

ZERO = "0"
POSITIVE_LETTERS = "ABCc"
ALL_LETTERS = "ABCcab"


@dataclass(frozen=True)
class GenWord:
    """A word tagged with its variant. ZERO is the word "0"."""

    letters: str
    n: int

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError(f"variant must be 2 or 3, got {self.n}")
        if self.letters != ZERO and any(ch not in ALL_LETTERS for ch in self.letters):
            raise ValueError(f"bad letters in {self.letters!r}")

    def __add__(self, other: GenWord) -> GenWord:
        if other.n != self.n:
            raise ValueError("cannot concatenate words of different variants")
        if self.is_zero or other.is_zero:
            return GenWord(ZERO, self.n)
        return GenWord(self.letters + other.letters, self.n)

    @property
    def is_zero(self) -> bool:
        return self.letters == ZERO

    def __str__(self):
        return self.letters or "1"


def parse_word(text: str, n: int) -> GenWord:
    text = text.strip()
    if text == "1":
        text = ""
    return GenWord(text, n)


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: str

    def __str__(self):
        return f"{self.lhs} -> {self.rhs or '1'}"


@dataclass(frozen=True)
class RewriteSystem:
    name: str
    n: int
    rules: Tuple[Rule, ...]
    hatted: bool = False
    _by_first: Dict[str, Tuple[Rule, ...]] = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        index: Dict[str, List[Rule]] = {}
        for rule in self.rules:
            index.setdefault(rule.lhs[0], []).append(rule)
        object.__setattr__(
            self, "_by_first", {k: tuple(v) for k, v in index.items()}
        )

    def rules_at(self, word: str, i: int):
        for rule in self._by_first.get(word[i], ()):
            if word.startswith(rule.lhs, i):
                yield rule


def _rules(text: str) -> List[Rule]:
    out = []
    for item in text.split(","):
        lhs, rhs = (s.strip() for s in item.split("->"))
        out.append(Rule(lhs, "" if rhs == "1" else rhs))
    return out


def _zero_rules() -> List[Rule]:
    out = []
    for x in ALL_LETTERS + ZERO:
        out.append(Rule(ZERO + x, ZERO))
    for x in ALL_LETTERS:
        out.append(Rule(x + ZERO, ZERO))
    return out


_R2 = "CAA->AC, CB->BBC, CAB->BAc, cA->AAc, cBB->Bc, cBA->ABC, Cc->1, cC->1"
_R2_HAT = (
    "Caa->aC, Cb->bbC, Cab->bac, ca->aac, cbb->bc, "
    "bA->0, aB->0, bB->1, aA->1"
)
_R3 = (
    "CAAA->AC, CAAB->BAAc, CABA->BABC, CABB->BBAc, CB->BBBC, "
    "cA->AAAc, cBAA->AABC, cBAB->ABAc, cBBA->ABBC, cBBB->Bc, Cc->1, cC->1"
)
_R3_HAT = (
    "ca->aaac, Caab->baac, cbab->abac, Cabb->bbac, cbbb->bc, "
    "Caaa->aC, cbaa->aabC, Caba->babC, cbba->abbC, Cb->bbbC, "
    "bB->1, aA->1, aB->0, bA->0"
)


def _system(name: str) -> RewriteSystem:
    if name == "r2":
        return RewriteSystem("r2", 2, tuple(_rules(_R2)))
    if name == "r3":
        return RewriteSystem("r3", 3, tuple(_rules(_R3)))
    if name == "r2hat":
        rules = _rules(_R2) + _rules(_R2_HAT) + _zero_rules()
        return RewriteSystem("r2hat", 2, tuple(rules), hatted=True)
    if name == "r3hat":
        rules = _rules(_R3) + _rules(_R3_HAT) + _zero_rules()
        return RewriteSystem("r3hat", 3, tuple(rules), hatted=True)
    raise ValueError(f"unknown rewrite system {name!r}")


SYSTEMS = {name: _system(name) for name in ("r2", "r2hat", "r3", "r3hat")}


def get_system(name: str) -> RewriteSystem:
    try:
        return SYSTEMS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown rewrite system {name!r}") from None


class TerminationLimit(RuntimeError):
    pass


class HypothesisError(ValueError):
    """An input violates the hypotheses an operation is defined under."""


WordLike = Union[str, GenWord]


def _letters(w: WordLike, system: RewriteSystem) -> str:
    if isinstance(w, GenWord):
        if w.n != system.n:
            raise ValueError(
                f"word of variant {w.n} used with system {system.name}"
            )
        return w.letters
    allowed = ALL_LETTERS if system.hatted else POSITIVE_LETTERS
    if w == "1":
        return ""
    if w != ZERO and any(ch not in allowed + ZERO for ch in w):
        raise ValueError(f"word {w!r} has letters outside system {system.name}")
    return w


def _wrap(original: WordLike, letters: str, system: RewriteSystem) -> WordLike:
    if isinstance(original, GenWord):
        return GenWord(letters, system.n)
    return letters


def rewrite_step(word: str, system: RewriteSystem) -> Optional[str]:
    """One leftmost rewrite; ties at a position go to the earlier rule."""
    for i in range(len(word)):
        for rule in system.rules_at(word, i):
            return word[:i] + rule.rhs + word[i + len(rule.lhs):]
    return None


def _reduce(word: str, system: RewriteSystem, max_steps: int) -> str:
    for _ in range(max_steps):
        nxt = rewrite_step(word, system)
        if nxt is None:
            return word
        word = nxt
    raise TerminationLimit(f"no normal form within {max_steps} steps")


def reduce(w: WordLike, system: RewriteSystem, max_steps: int = 10**6) -> WordLike:
    return _wrap(w, _reduce(_letters(w, system), system, max_steps), system)


def rewrite_once_all(w: WordLike, system: RewriteSystem) -> List[Tuple[int, Rule, str]]:
    word = _letters(w, system)
    out = []
    for i in range(len(word)):
        for rule in system.rules_at(word, i):
            out.append((i, rule, word[:i] + rule.rhs + word[i + len(rule.lhs):]))
    return out


@dataclass(frozen=True)
class CriticalPair:
    word: str
    first: Rule
    second: Rule
    left: str
    right: str
    left_nf: str
    right_nf: str

    @property
    def joinable(self) -> bool:
        return self.left_nf == self.right_nf


def critical_pairs(system: RewriteSystem):
    """Yield (word, rule1, result1, rule2, result2) for every overlap."""
    for r1 in system.rules:
        l1 = r1.lhs
        for r2 in system.rules:
            l2 = r2.lhs
            # a proper suffix of l1 is a proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    word = l1 + l2[k:]
                    yield (word, r1, r1.rhs + l2[k:],
                           r2, l1[:-k] + r2.rhs)
            # l2 sits inside l1
            if r1 is not r2:
                start = l1.find(l2)
                while start != -1:
                    yield (l1, r1, r1.rhs,
                           r2, l1[:start] + r2.rhs + l1[start + len(l2):])
                    start = l1.find(l2, start + 1)


def critical_pair_report(system: RewriteSystem) -> List[CriticalPair]:
    report = []
    for word, r1, left, r2, right in critical_pairs(system):
        report.append(CriticalPair(
            word, r1, r2, left, right,
            _reduce(left, system, 10**6), _reduce(right, system, 10**6),
        ))
    return report


def same_map(u: str, v: str, n: int) -> bool:
    return word_semantics(u, n) == word_semantics(v, n)


def verify_rule_soundness(system: RewriteSystem) -> List[Tuple[Rule, bool]]:
    return [(rule, same_map(rule.lhs, rule.rhs, system.n)) for rule in system.rules]


def c_tracks(w: WordLike) -> List[str]:
    """Split before every C or c; each piece holds at most one, at its start."""
    word = w.letters if isinstance(w, GenWord) else w
    tracks = []
    current = ""
    for ch in word:
        if ch in "Cc" and current:
            tracks.append(current)
            current = ""
        current += ch
    if current:
        tracks.append(current)
    return tracks


def is_negative_to_positive(word: str) -> bool:
    """Every a or b comes before every A or B."""
    seen_positive = False
    for ch in word:
        if ch in "AB":
            seen_positive = True
        elif ch in "ab" and seen_positive:
            return False
    return True


def has_full_domain(word: str, n: int) -> bool:
    f = word_semantics(word, n)
    return f is not ZERO_MAP and f.domain == UNIT


def _check_hatted_input(word: str, system: RewriteSystem):
    if not any(ch in "ab" for ch in word):
        return
    if not system.hatted:
        raise ValueError(f"system {system.name} has no lowercase a or b")
    if not is_negative_to_positive(word):
        raise HypothesisError(f"{word} is not negative-to-positive")
    if "aA" in word or "bB" in word:
        raise HypothesisError(f"{word} contains a cancelling pair")
    if _reduce(word, system, 10**6) == ZERO:
        raise HypothesisError(f"{word} reduces to 0")


def has_npc(w: WordLike, system: RewriteSystem) -> bool:
    """No potential cancellation: reducing any single C-track in place never
    produces Cc or cC."""
    word = _letters(w, system)
    _check_hatted_input(word, system)
    tracks = c_tracks(word)
    for i, track in enumerate(tracks):
        reduced = _reduce(track, system, 10**6)
        if reduced == ZERO:
            continue
        joined = "".join(tracks[:i]) + reduced + "".join(tracks[i + 1:])
        if "Cc" in joined or "cC" in joined:
            return False
    return True


def _is_advancing(rule: Rule) -> bool:
    return rule.lhs[0] in "Cc" and rule.lhs not in ("Cc", "cC")


def advance(w: WordLike, position: int, system: RewriteSystem,
            cancel: bool = False) -> WordLike:
    """Apply the advancing rule whose left side starts at position.

    With cancel, occurrences of aA and bB are then removed.
    """
    word = _letters(w, system)
    for rule in system.rules_at(word, position) if 0 <= position < len(word) else ():
        if _is_advancing(rule):
            out = word[:position] + rule.rhs + word[position + len(rule.lhs):]
            if cancel:
                while "aA" in out or "bB" in out:
                    out = out.replace("aA", "").replace("bB", "")
            return _wrap(w, out, system)
    raise ValueError(f"no advancing rule applies to {word!r} at {position}")


# Right completions for a single trailing C-track: tail -> tau with
# r(tail tau) == (positive word) C.
_TAILS = {
    2: {"C": "", "c": "BA", "CA": "A", "cB": "A"},
    3: {"C": "", "c": "BBA", "CA": "AA", "CAB": "A", "CAA": "A",
        "cB": "AA", "cBA": "A", "cBB": "A"},
}


def _split_tail(word: str, j: int) -> Tuple[str, str]:
    """Split word as body + tail + C^j where tail starts at the last C/c."""
    if j:
        if not word.endswith("C" * j):
            raise HypothesisError(f"{word} does not end in C^{j}")
        word = word[:-j]
    i = max(word.rfind("C"), word.rfind("c"))
    if i < 0:
        raise HypothesisError(f"no C-track left in {word}")
    return word[:i], word[i:]


def _complete_positive(word: str, system: RewriteSystem) -> str:
    n = system.n
    positions = [i for i, ch in enumerate(word) if ch in "Cc"]
    if not positions:
        return ""
    split = positions[1] if len(positions) > 1 else len(word)
    head, rest = word[:split], word[split:]
    tau1 = _complete_positive(rest, system)
    j = len(positions) - 1
    reduced = _reduce(head + rest + tau1, system, 10**6)
    _, tail = _split_tail(reduced, j)
    if tail not in _TAILS[n]:
        raise HypothesisError(f"unexpected trailing track {tail} in {reduced}")
    tau_tail = _TAILS[n][tail]
    if j == 0:
        return tau1 + tau_tail
    if tail == "C":
        return tau1
    if set(tau_tail) != {"A"}:
        raise HypothesisError(f"{tail} followed by C^{j} cannot be completed")
    # C^j A^(p n^j) -> A^p C^j
    return tau1 + "A" * (len(tau_tail) * n ** j)


def _complete_ntp(word: str, system: RewriteSystem) -> str:
    n = system.n
    last_neg = max(word.rfind("a"), word.rfind("b"))
    if last_neg < 0:
        return _complete_positive(word, system)
    head, rest = word[:last_neg + 1], word[last_neg + 1:]
    tau1 = _complete_positive(rest, system)
    hat = _reduce(rest + tau1, system, 10**6)
    eps = sum(ch in "Cc" for ch in rest)
    tau_mid = ""
    if hat == "C" * eps:
        tau_mid = "A" * n ** eps
    reduced = _reduce(word + tau1 + tau_mid, system, 10**6)
    if reduced == ZERO:
        raise HypothesisError(f"{word} is sent to 0 by a right factor")
    if sum(ch in "ab" for ch in reduced) >= sum(ch in "ab" for ch in word):
        raise HypothesisError(f"no cancellation against {head} in {reduced}")
    return tau1 + tau_mid + _complete_ntp(reduced, system)


def complete_to_positive(w: WordLike, system: RewriteSystem) -> Tuple[str, str, int]:
    """Find tau with r(w tau) == (positive word) C^eps.

    Returns (tau, positive word, eps) where eps counts the C and c letters
    of w.
    """
    word = _letters(w, system)
    if word == ZERO:
        raise HypothesisError("the zero word has no completion")
    if not has_npc(word, system):
        raise HypothesisError(f"{word} has potential cancellation")
    if any(ch in "ab" for ch in word) and not has_full_domain(word, system.n):
        raise HypothesisError(f"{word} is sent to 0 by some right factor")
    eps = sum(ch in "Cc" for ch in word)
    tau = _complete_ntp(word, system)
    result = _reduce(word + tau, system, 10**6)
    body = result[:len(result) - eps] if eps else result
    if result[len(body):] != "C" * eps or any(ch not in "AB" for ch in body):
        raise HypothesisError(f"completion of {word} ended at {result}")
    return tau, body, eps


@dataclass(frozen=True)
class NormalForm:
    prefix: str
    blocks: Tuple[str, ...]
    suffix: str

    def __str__(self):
        return f"{self.prefix or '1'} | {'.'.join(self.blocks) or '1'} | {self.suffix or '1'}"


_BLOCK = {2: r"C+A|c+B", 3: r"C+A[AB]?|c+B[AB]?"}


def classify_normal_form(w: WordLike, system: RewriteSystem) -> NormalForm:
    word = _letters(w, system)
    if any(ch not in POSITIVE_LETTERS for ch in word):
        raise ValueError("normal forms are defined for words over A, B, C, c")
    if _reduce(word, system, 10**6) != word:
        raise ValueError(f"{word} is not reduced")
    block = _BLOCK[system.n]
    m = re.fullmatch(rf"([AB]*)((?:{block})*)([Cc]*)", word)
    if m is None:
        raise ValueError(f"{word} does not split into normal form pieces")
    return NormalForm(m.group(1), tuple(re.findall(block, m.group(2))), m.group(3))
