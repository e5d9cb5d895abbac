"""Bottom-up s-semantics and the ground least-Herbrand-model baseline.

``tpi`` is the non-ground immediate consequence operator: a clause
``H <- B1,...,Bn`` fires on atoms ``A1,...,An`` of the interpretation, taken
as fresh variants so that the ``n + 1`` expressions are pairwise variable
disjoint, and contributes ``H theta`` for an mgu ``theta`` of the body and the
atoms.  Interpretations are variant-quotient :class:`AtomSet` values.

The ground side (``herbrand_tp`` and ``ground_instances``) works over a
finite alphabet with a term-depth cut-off and shares no code with the
unifier, so that the two evaluators check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .terms import (
    AtomSet,
    Atom,
    Clause,
    Program,
    Struct,
    Term,
    Var,
    atom_depth,
    rename,
)
from .unify import resolve, unify_into

Symbol = Tuple[str, int]


@dataclass
class SInterpretation:
    atoms: AtomSet = field(default_factory=AtomSet)
    iterations: int = 0
    fixpoint: bool = False
    truncated: bool = False
    sizes: List[int] = field(default_factory=list)
    # classes per "name/arity" after each iteration
    pred_sizes: List[Dict[str, int]] = field(default_factory=list)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __contains__(self, a):
        return a in self.atoms


@dataclass
class FiringStats:
    tuples: int = 0
    unifications: int = 0
    heads: int = 0


def firings(
    clause: Clause,
    candidates: Sequence[Sequence[Atom]],
    stats: Optional[FiringStats] = None,
) -> Iterator[Tuple[Tuple[Atom, ...], Atom]]:
    """Fire ``clause`` on every tuple drawn from ``candidates`` (one list per body atom).

    Yields ``(body_tuple, head_instance)``.  The clause and each candidate are
    renamed apart here; candidate lists whose predicate differs from the body
    atom's are skipped early.  Unification proceeds left to right, extending
    one unifier, which prunes a tuple as soon as a prefix fails.
    """
    clause = rename(clause)
    body = clause.body
    pools = []
    for b, cands in zip(body, candidates):
        pools.append([(a, rename(a)) for a in cands if a.key == b.key])
    if len(pools) != len(body):
        raise ValueError("one candidate list per body atom expected")
    if stats is None:
        stats = FiringStats()

    def go(p, bindings, chosen):
        if p == len(body):
            stats.heads += 1
            yield tuple(chosen), resolve(clause.head, bindings)
            return
        for original, fresh in pools[p]:
            if p == len(body) - 1:
                stats.tuples += 1
            stats.unifications += 1
            extended = unify_into(body[p], fresh, bindings)
            if extended is not None:
                chosen.append(original)
                yield from go(p + 1, extended, chosen)
                chosen.pop()

    if not body:
        stats.tuples += 1
    yield from go(0, {}, [])


def tpi_clause(clause: Clause, interp: Iterable[Atom]) -> AtomSet:
    """``T^pi_{C}(I)`` as a variant-quotient set."""
    atoms = list(interp)
    return AtomSet(h for _, h in firings(clause, [atoms] * len(clause.body)))


def tpi(program: Program, interp: Iterable[Atom]) -> AtomSet:
    atoms = list(interp)
    out = AtomSet()
    for c in program.clauses:
        for _, h in firings(c, [atoms] * len(c.body)):
            out.add(h)
    return out


def iterate(
    program: Program,
    k: int,
    max_atoms: Optional[int] = None,
    detect: bool = True,
) -> SInterpretation:
    """``(T^pi_P)^k(empty)``.

    ``fixpoint`` is set when the result is a fixed point of the operator
    (with ``detect``, one extra application is made to find out when ``k``
    iterations did not already reveal it).  ``truncated`` is set, and
    iteration stops early, once more than ``max_atoms`` classes are stored.
    """
    cur = SInterpretation()
    for _ in range(k):
        nxt = tpi(program, cur.atoms)
        if nxt == cur.atoms:
            cur.fixpoint = True
            return cur
        cur.atoms = nxt
        cur.iterations += 1
        cur.sizes.append(len(nxt))
        counts: Dict[str, int] = {}
        for a in nxt:
            name = f"{a.functor}/{a.arity}"
            counts[name] = counts.get(name, 0) + 1
        cur.pred_sizes.append(dict(sorted(counts.items())))
        if max_atoms is not None and len(nxt) > max_atoms:
            cur.truncated = True
            return cur
    if detect and k > 0:
        cur.fixpoint = tpi(program, cur.atoms) == cur.atoms
    return cur


# -- ground side -------------------------------------------------------------

def herbrand_alphabet(program: Program) -> List[Symbol]:
    """Function symbols of the program, plus a constant ``a`` if it has none."""
    syms = program.function_symbols()
    if not any(arity == 0 for _, arity in syms):
        syms.append(("a", 0))
    return syms


def ground_terms(alphabet: Iterable[Symbol], depth: int) -> List[List[Struct]]:
    """``levels[d]`` = all ground terms of depth at most ``d``, for d = 0..depth."""
    alphabet = sorted(set(alphabet))
    consts = [Struct(f) for f, n in alphabet if n == 0]
    if not consts:
        raise ValueError("alphabet needs a constant")
    levels = [consts]
    for _ in range(depth):
        prev = levels[-1]
        cur = list(consts)
        for f, n in alphabet:
            if n > 0:
                cur.extend(Struct(f, args) for args in itertools.product(prev, repeat=n))
        levels.append(cur)
    return levels


def _budgets(t: Term, at: int, limit: int, out: Dict[Var, int]) -> bool:
    """Record, per variable, how deep a term may replace it; False if the skeleton is too deep."""
    if isinstance(t, Var):
        out[t] = min(out.get(t, limit), limit - at)
        return True
    if not t.args:
        return at <= limit
    return all(_budgets(a, at + 1, limit, out) for a in t.args)


def _subst(t: Term, sub: Dict[Var, Struct]) -> Term:
    if isinstance(t, Var):
        return sub.get(t, t)
    if not t.args:
        return t
    return Struct(t.functor, [_subst(a, sub) for a in t.args])


def _instances(a: Atom, sub: Dict[Var, Struct], depth: int, levels) -> Iterator[Atom]:
    """Ground instances of ``a`` extending ``sub`` whose arguments have depth at most ``depth``."""
    budgets: Dict[Var, int] = {}
    if not all(_budgets(t, 0, depth, budgets) for t in a.args):
        return
    free = [v for v in budgets if v not in sub]
    if any(budgets[v] < 0 for v in free):
        return
    for values in itertools.product(*(levels[budgets[v]] for v in free)):
        full = dict(sub)
        full.update(zip(free, values))
        inst = _subst(a, full)
        if atom_depth(inst) <= depth:
            yield inst


def ground_instances(interp: Iterable[Atom], depth: int, alphabet: Iterable[Symbol]) -> Set[Atom]:
    """All ground instances over ``alphabet`` with argument depth at most ``depth``."""
    levels = ground_terms(alphabet, depth)
    out: Set[Atom] = set()
    for a in interp:
        out.update(_instances(a, {}, depth, levels))
    return out


def _match(pattern: Term, ground: Term, sub: Dict[Var, Struct]) -> bool:
    if isinstance(pattern, Var):
        bound = sub.get(pattern)
        if bound is None:
            sub[pattern] = ground
            return True
        return bound == ground
    if pattern.functor != ground.functor or len(pattern.args) != len(ground.args):
        return False
    return all(_match(p, g, sub) for p, g in zip(pattern.args, ground.args))


def _body_matches(body, facts_by_key, sub):
    if not body:
        yield sub
        return
    first, rest = body[0], body[1:]
    for g in facts_by_key.get(first.key, ()):
        trial = dict(sub)
        if _match(first, g, trial):
            yield from _body_matches(rest, facts_by_key, trial)


def ground_tp(program: Program, facts: Set[Atom], depth: int, alphabet: Iterable[Symbol]) -> Set[Atom]:
    """One application of the ground immediate consequence operator, cut at ``depth``."""
    levels = ground_terms(alphabet, depth)
    by_key: Dict[Symbol, List[Atom]] = {}
    for f in facts:
        by_key.setdefault(f.key, []).append(f)
    out: Set[Atom] = set()
    for c in program.clauses:
        for sub in _body_matches(c.body, by_key, {}):
            out.update(_instances(c.head, sub, depth, levels))
    return out


def herbrand_tp(program: Program, k: int, depth: int, alphabet: Optional[Iterable[Symbol]] = None) -> Set[Atom]:
    """``T_P^k(empty)`` over ground atoms, every iterate restricted to depth ``depth``.

    This agrees with the depth-restricted ground instances of the s-semantics
    iterates whenever no clause instance has a body atom deeper than its head
    (e.g. facts, ``nat/1``, the ``pq/4`` clauses); otherwise a shallow atom
    may need deeper intermediate atoms and the cut-off version is smaller.
    """
    if alphabet is None:
        alphabet = herbrand_alphabet(program)
    alphabet = list(alphabet)
    facts: Set[Atom] = set()
    for _ in range(k):
        facts = ground_tp(program, facts, depth, alphabet)
    return facts
