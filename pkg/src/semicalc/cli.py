"""Command-line front end.

Exit status is 0 on success, 1 when the answer is a semantic "no" (false,
none, non-joinable pairs, step limit) and 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import cutset, elements, expansion, rewriting, trees
from .projective import format_ext


class _Outcome:
    def __init__(self, text, data, ok=True):
        self.text, self.data, self.ok = text, data, ok


def _word(w: str) -> str:
    return w or "1"


def _system(args) -> rewriting.RewriteSystem:
    name = args.system or f"r{args.n}"
    return rewriting.get_system(name)


def _tree(text: str) -> trees.Tree:
    return trees.parse_tree(text)


def _verdict(flag: bool) -> _Outcome:
    return _Outcome("true" if flag else "false", flag, flag)


def cmd_reduce(args):
    system = _system(args)
    word = rewriting.parse_word(args.word, system.n).letters
    out = rewriting.reduce(word, system, max_steps=args.max_steps)
    return _Outcome(_word(out), _word(out))


def cmd_confluence(args):
    report = rewriting.critical_pair_report(_system(args))
    bad = [p for p in report if not p.joinable]
    lines = [f"{len(report)} critical pairs, {len(bad)} not joinable"]
    lines += [f"{p.word}: {_word(p.left_nf)} != {_word(p.right_nf)}" for p in bad]
    data = {"pairs": len(report),
            "not_joinable": [{"word": p.word, "left": _word(p.left_nf),
                              "right": _word(p.right_nf)} for p in bad]}
    return _Outcome("\n".join(lines), data, not bad)


def cmd_soundness(args):
    results = rewriting.verify_rule_soundness(_system(args))
    bad = [f"{_word(r.lhs)} -> {_word(r.rhs)}" for r, ok in results if not ok]
    text = f"{len(results)} rules, {len(bad)} unsound"
    if bad:
        text += "\n" + "\n".join(bad)
    return _Outcome(text, {"rules": len(results), "unsound": bad}, not bad)


def cmd_npc(args):
    system = _system(args)
    word = rewriting.parse_word(args.word, system.n).letters
    return _verdict(rewriting.has_npc(word, system))


def cmd_complete(args):
    system = _system(args)
    word = rewriting.parse_word(args.word, system.n).letters
    tau, body, eps = rewriting.complete_to_positive(word, system)
    return _Outcome(f"{_word(tau)} {_word(body)} {eps}",
                    {"tau": _word(tau), "body": _word(body), "eps": eps})


def cmd_tree(args):
    n = args.n
    t = _tree(args.trees[0])
    if args.action == "partition":
        parts = trees.tree_partition(t, n)
        text = " ".join(f"[{lo},{hi})" for lo, hi in parts)
        return _Outcome(text, [[str(lo), str(hi)] for lo, hi in parts])
    if args.action == "equiv":
        if len(args.trees) != 2:
            raise ValueError("equiv needs two trees")
        return _verdict(trees.trees_equivalent(t, _tree(args.trees[1]), n))
    if args.action == "moves":
        moves = trees.elementary_moves(t, n)
        lines = [f"{path or '.'} {kind} {new}" for path, kind, new in moves]
        data = [{"path": path, "move": kind, "tree": str(new)}
                for path, kind, new in moves]
        return _Outcome("\n".join(lines), data)
    if args.action == "range":
        lo, hi = trees.root_label_range(t, n)
        return _Outcome(f"{lo} {hi}", [lo, hi])
    words = trees.leaf_words(t)
    return _Outcome(" ".join(_word(w) for w in words), [_word(w) for w in words])


def cmd_cutset(args):
    result = cutset.run_search(args.n, max_steps=args.max_steps)
    if isinstance(result, cutset.StepLimit):
        return _Outcome("STEP_LIMIT", {"status": "STEP_LIMIT",
                                       "steps": result.steps_used}, False)
    lines = [str(leaf) for leaf in result.leaves]
    data = {"status": "OK", "steps": result.steps_used,
            "identities": [{"omega": leaf.omega, "omega_prime": leaf.omega_prime,
                            "k": leaf.k} for leaf in result.leaves]}
    return _Outcome("\n".join(lines), data)


def cmd_push(args):
    domain = expansion.parse_domain(args.domain)
    pieces = expansion.push_through(args.word, domain, args.n)
    lines = [f"{piece} -> {image}" for piece, image in pieces]
    return _Outcome("\n".join(lines),
                    [{"piece": str(p), "image": str(i)} for p, i in pieces])


def _half(h: Fraction) -> str:
    return str(h) if h.denominator == 1 else f"{h.numerator}/2"


def cmd_asclink(args):
    link = expansion.ascending_link(_tree(args.tree), args.n)
    return _Outcome(" ".join(_half(h) for h in link), [_half(h) for h in link])


def cmd_vleq(args):
    v1 = expansion.vertex_of_tree(_tree(args.first), args.n)
    v2 = expansion.vertex_of_tree(_tree(args.second), args.n)
    return _verdict(expansion.vertex_leq(v1, v2))


def cmd_upper(args):
    n = args.n
    merged = expansion.merge_trees(_tree(args.first), _tree(args.second), n)
    upper = expansion.vertex_of_tree(merged, n)
    return _Outcome(f"{merged}\n{upper}", {"tree": str(merged), "vertex": str(upper)})


def cmd_elt(args):
    n = args.n
    operands = args.operands
    need = {"eval": 2, "compose": 2, "invert": 1, "flavor": 1, "equal": 2}[args.action]
    if len(operands) != need:
        raise ValueError(f"elt {args.action} takes {need} operands")
    g = elements.element_from_json(operands[0], n)
    if args.action == "eval":
        y = elements.ge_evaluate(g, Fraction(operands[1]))
        return _Outcome(format_ext(y), format_ext(y))
    if args.action == "invert":
        h = elements.ge_invert(g)
        return _Outcome(json.dumps(h.to_json()), h.to_json())
    if args.action == "flavor":
        flavor = elements.ge_flavor(g)
        return _Outcome(flavor, flavor)
    other = elements.element_from_json(operands[1], n)
    if args.action == "equal":
        return _verdict(elements.ge_equal(g, other))
    h = elements.ge_compose(g, other)
    return _Outcome(json.dumps(h.to_json()), h.to_json())


def cmd_sample(args):
    g = elements.random_element(random.Random(args.seed), args.n)
    return _Outcome(json.dumps(g.to_json()), g.to_json())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2,
                        help="variant, 2 or 3 (cutset accepts any n >= 2)")
    common.add_argument("--system", choices=sorted(rewriting.SYSTEMS))
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-steps", type=int, default=10**5)

    parser = argparse.ArgumentParser(prog="semicalc")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    add("reduce", cmd_reduce).add_argument("word")
    add("confluence", cmd_confluence)
    add("soundness", cmd_soundness)
    add("npc", cmd_npc).add_argument("word")
    add("complete", cmd_complete).add_argument("word")
    p = add("tree", cmd_tree)
    p.add_argument("action", choices=("partition", "equiv", "moves", "range", "leaves"))
    p.add_argument("trees", nargs="+")
    add("cutset", cmd_cutset)
    p = add("push", cmd_push)
    p.add_argument("word")
    p.add_argument("domain", nargs="?", default="I")
    add("asclink", cmd_asclink).add_argument("tree")
    for name, func in (("vleq", cmd_vleq), ("upper", cmd_upper)):
        p = add(name, func)
        p.add_argument("first")
        p.add_argument("second")
    p = add("elt", cmd_elt)
    p.add_argument("action", choices=("eval", "compose", "invert", "flavor", "equal"))
    p.add_argument("operands", nargs="+")
    add("sample", cmd_sample, help="print a random element for the given --seed")
    return parser


def _command_name(args) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command != "cutset" and args.n not in (2, 3):
        print(f"error: variant must be 2 or 3, got {args.n}", file=sys.stderr)
        return 2
    try:
        outcome = args.func(args)
    except Exception as exc:  # every library failure maps to exit 2
        if args.json:
            print(json.dumps({"command": _command_name(args), "error": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"command": _command_name(args), "result": outcome.data}))
    elif outcome.text:
        print(outcome.text)
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
