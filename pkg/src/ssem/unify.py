"""Most general unifiers.

The algorithm is Martelli-Montanari's rule system (decompose, delete, orient,
eliminate with occurs check) run over a worklist of equations.  Elimination is
lazy: a solved equation ``x = t`` is recorded in a triangular binding map and
applied on lookup (``walk``) rather than eagerly pushed through every other
equation.  :func:`solved_form` flattens the map into an idempotent substitution
at the end.

The triangular map is also exposed directly (:func:`unify_into`) because the
bottom-up evaluator and the SLD engine extend one unifier atom by atom.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional

from .terms import Clause, Struct, Substitution, Term, Var, variables

Bindings = Dict[Var, Term]


def walk(t: Term, bindings: Bindings) -> Term:
    while isinstance(t, Var):
        nxt = bindings.get(t)
        if nxt is None:
            return t
        t = nxt
    return t


def occurs(v: Var, t: Term, bindings: Bindings) -> bool:
    stack = [t]
    while stack:
        t = walk(stack.pop(), bindings)
        if t is v:
            return True
        if isinstance(t, Struct):
            stack.extend(t.args)
    return False


def unify_into(a, b, bindings: Bindings) -> Optional[Bindings]:
    """Extend ``bindings`` to a unifier of ``a`` and ``b``.

    Returns a new map (``bindings`` is not modified) or ``None`` when no
    unifier exists.
    """
    out = dict(bindings)
    if _solve([(a, b)], out):
        return out
    return None


def _solve(equations, bindings: Bindings) -> bool:
    while equations:
        s, t = equations.pop()
        s = walk(s, bindings)
        t = walk(t, bindings)
        if s is t:
            continue  # delete
        if isinstance(s, Var):
            if occurs(s, t, bindings):
                return False
            bindings[s] = t  # eliminate
        elif isinstance(t, Var):
            if occurs(t, s, bindings):  # orient, then eliminate
                return False
            bindings[t] = s
        else:
            if s.functor != t.functor or len(s.args) != len(t.args):
                return False  # clash
            equations.extend(zip(s.args, t.args))  # decompose
    return True


def resolve(t: Term, bindings: Bindings) -> Term:
    """Apply the triangular map exhaustively."""
    t = walk(t, bindings)
    if isinstance(t, Var) or not t.args:
        return t
    return Struct(t.functor, [resolve(a, bindings) for a in t.args])


def solved_form(bindings: Bindings, keep: Optional[Iterable[Var]] = None) -> Substitution:
    """Idempotent substitution equivalent to ``bindings`` on ``keep`` (default: all)."""
    vs = bindings if keep is None else keep
    out = {}
    for v in vs:
        t = resolve(v, bindings)
        if t is not v:
            out[v] = t
    return out


def _pairs(a, b):
    if isinstance(a, (Var, Struct)) and isinstance(b, (Var, Struct)):
        return [(a, b)]
    if isinstance(a, Clause) or isinstance(b, Clause):
        raise TypeError("clauses are not unified")
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise ValueError("sequences of different length")
    return list(zip(a, b))


def mgu(a, b) -> Optional[Substitution]:
    """An idempotent most general unifier of ``a`` and ``b``, or ``None``.

    ``a`` and ``b`` are terms, atoms, or equally long sequences of them.  The
    result only binds variables occurring in the inputs.
    """
    pairs = _pairs(a, b)
    bindings: Bindings = {}
    if not _solve(pairs, bindings):
        return None
    return solved_form(bindings, variables([a, b]))


def unifiable(a, b) -> bool:
    return _solve(_pairs(a, b), {})
