"""Top-down SLD resolution with leftmost selection and textual clause order.

Two resource bounds are supported:

* ``max_depth`` limits the number of resolution steps of a derivation;
* ``max_height`` (optional) limits the height of the derivation's proof tree.
  A query atom sits at height 1 and the body atoms introduced when resolving
  an atom at height ``h`` sit at height ``h + 1``.

The height bound is what lines up with bottom-up evaluation: the answers of a
most general query whose proof trees have height at most ``k`` are, up to
variants, exactly the atoms of ``(T^pi_P)^k(empty)`` for that predicate.  A
derivation of ``d`` steps has height at most ``d``, and a proof tree of height
``k`` in a program whose bodies have at most ``b`` atoms has at most
``1 + b + ... + b^(k-1)`` nodes, so step bounds can be paired with iteration
counts in both directions (see :func:`steps_covering_height`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .terms import AtomSet, Atom, Program, Struct, Substitution, Var, apply, rename, variables
from .unify import resolve, unify_into

__all__ = [
    "Limits",
    "ComputedAnswer",
    "Solver",
    "UnknownPredicate",
    "solve",
    "most_general_query",
    "answer_set",
    "deepening",
    "steps_covering_height",
]


class UnknownPredicate(KeyError):
    pass


@dataclass(frozen=True)
class Limits:
    max_depth: int = 10_000
    max_answers: Optional[int] = None
    max_height: Optional[int] = None


@dataclass(frozen=True)
class ComputedAnswer:
    instance: Tuple[Atom, ...]
    substitution: Substitution = field(hash=False, compare=False)


class Solver:
    """Lazy enumeration of computed answers.

    After iteration stops, ``status`` tells why: ``"complete"`` (the search
    space was exhausted, so missing answers are a finite failure),
    ``"truncated"`` (some branch hit ``max_depth`` or ``max_height``) or
    ``"answer-limit"`` (``max_answers`` reached).
    """

    def __init__(self, program: Program, query: Sequence[Atom], limits: Limits = Limits()):
        self.program = program
        self.query = tuple(query)
        self.limits = limits
        known = set(program.predicates())
        for a in self.query:
            if a.key not in known:
                raise UnknownPredicate(f"{a.functor}/{len(a.args)}")
        self.index: Dict[Tuple[str, int], list] = {}
        for c in program.clauses:
            self.index.setdefault(c.head.key, []).append(c)
        self.status = "running"
        self.steps = 0
        self.truncated = False

    def __iter__(self) -> Iterator[ComputedAnswer]:
        lim = self.limits
        qvars = variables(self.query)
        goals = None
        for a in reversed(self.query):
            goals = (a, 1, goals)
        stack: List[tuple] = [(goals, {}, 0)]
        produced = 0
        while stack:
            goals, bindings, steps = stack.pop()
            if goals is None:
                sub = {}
                for v in qvars:
                    t = resolve(v, bindings)
                    if t is not v:
                        sub[v] = t
                yield ComputedAnswer(apply(sub, self.query), sub)
                produced += 1
                if lim.max_answers is not None and produced >= lim.max_answers:
                    self.status = "answer-limit"
                    return
                continue
            selected, height, rest = goals
            if steps >= lim.max_depth or (lim.max_height is not None and height > lim.max_height):
                self.truncated = True
                continue
            branches = []
            for clause in self.index.get(selected.key, ()):
                clause = rename(clause)
                extended = unify_into(clause.head, selected, bindings)
                if extended is None:
                    continue
                self.steps += 1
                new = rest
                for b in reversed(clause.body):
                    new = (b, height + 1, new)
                branches.append((new, extended, steps + 1))
            stack.extend(reversed(branches))
        self.status = "truncated" if self.truncated else "complete"


def solve(program: Program, query: Sequence[Atom], limits: Limits = Limits()) -> Solver:
    return Solver(program, query, limits)


def most_general_query(program: Program, pred: Union[str, Tuple[str, int]]) -> Tuple[Atom, ...]:
    """``p(V1,...,Vn)`` over fresh distinct variables."""
    if isinstance(pred, tuple):
        matches = [pred] if pred in program.predicates() else []
    else:
        matches = [k for k in program.predicates() if k[0] == pred]
    if len(matches) != 1:
        raise UnknownPredicate(str(pred))
    name, arity = matches[0]
    return (Struct(name, [Var(f"V{n}") for n in range(1, arity + 1)]),)


def answer_set(program: Program, query: Sequence[Atom], limits: Limits = Limits()):
    """Computed instances of a single-atom query as a variant-quotient set, plus the solver status."""
    if len(query) != 1:
        raise ValueError("answer_set expects a single-atom query")
    solver = Solver(program, query, limits)
    out = AtomSet(a.instance[0] for a in solver)
    return out, solver.status


def deepening(program: Program, query: Sequence[Atom], max_height: int, max_depth: int = 10_000):
    """Iterative deepening on proof-tree height: yields ``(k, answers, status)`` for k = 0..max_height."""
    for k in range(max_height + 1):
        answers, status = answer_set(program, query, Limits(max_depth=max_depth, max_height=k))
        yield k, answers, status


def steps_covering_height(program: Program, height: int) -> int:
    """Resolution steps sufficient for every proof tree of the given height."""
    b = max((len(c.body) for c in program.clauses), default=0)
    if b <= 1:
        return height
    return (b ** height - 1) // (b - 1)
