"""First-order terms, atoms, clauses and substitutions.

Terms are immutable.  A variable is a :class:`Var` object and two variables
are the same variable iff they are the same object; the optional ``name`` is
only used for printing.  Everything else is a :class:`Struct` (constants are
zero-arity structs).  Atoms share the representation of compound terms.

Substitutions are plain dicts mapping :class:`Var` to terms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union


class Var:
    """A logic variable.  Identity is object identity."""

    __slots__ = ("name", "serial")

    # itertools.count.__next__ is atomic under the GIL, so serials stay unique
    # when several solvers run in threads.
    _serials = itertools.count(1)

    def __init__(self, name: Optional[str] = None):
        self.name = name
        self.serial = next(Var._serials)

    def __repr__(self):
        if self.name is not None:
            return f"{self.name}#{self.serial}"
        return f"_V{self.serial}"

    def __reduce__(self):
        return (Var, (self.name,))


class Struct:
    """A functor applied to a tuple of argument terms."""

    __slots__ = ("functor", "args", "_hash")

    def __init__(self, functor: str, args: Sequence["Term"] = ()):
        self.functor = functor
        self.args = tuple(args)
        self._hash = None

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def key(self) -> Tuple[str, int]:
        return (self.functor, len(self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Struct)
            and self.functor == other.functor
            and self.args == other.args
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.functor, self.args))
        return self._hash

    def __repr__(self):
        if not self.args:
            return self.functor
        return f"{self.functor}({', '.join(map(repr, self.args))})"

    def __reduce__(self):
        return (Struct, (self.functor, self.args))


Term = Union[Var, Struct]
Atom = Struct
Substitution = Dict[Var, Term]


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: Tuple[Atom, ...] = ()

    @property
    def is_unary(self) -> bool:
        return not self.body

    def __repr__(self):
        if not self.body:
            return f"{self.head!r}."
        return f"{self.head!r} :- {', '.join(map(repr, self.body))}."


@dataclass(frozen=True)
class Program:
    clauses: Tuple[Clause, ...] = ()
    declared: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def predicates(self) -> List[Tuple[str, int]]:
        """Predicate signatures, defined ones first in order of appearance."""
        seen = {}
        for c in self.clauses:
            seen.setdefault(c.head.key, None)
        for c in self.clauses:
            for b in c.body:
                seen.setdefault(b.key, None)
        for key in sorted(self.declared):
            seen.setdefault(key, None)
        return list(seen)

    def clauses_for(self, key: Tuple[str, int]) -> List[Tuple[int, Clause]]:
        return [(n, c) for n, c in enumerate(self.clauses) if c.head.key == key]

    def function_symbols(self) -> List[Tuple[str, int]]:
        found = {}
        for c in self.clauses:
            for a in (c.head,) + c.body:
                for arg in a.args:
                    _collect_functors(arg, found)
        return list(found)

    def replace(self, index: int, clause: Optional[Clause]) -> "Program":
        """Copy with clause ``index`` replaced, or deleted when ``clause`` is None."""
        clauses = list(self.clauses)
        if clause is None:
            del clauses[index]
        else:
            clauses[index] = clause
        return Program(tuple(clauses), self.declared | {c.head.key for c in self.clauses})

    def restrict(self, keys: Iterable[Tuple[str, int]]) -> "Program":
        keys = set(keys)
        return Program(tuple(c for c in self.clauses if c.head.key in keys), self.declared)


def _collect_functors(t, found):
    if isinstance(t, Struct):
        found.setdefault(t.key, None)
        for a in t.args:
            _collect_functors(a, found)


# -- constructors ------------------------------------------------------------

NIL = Struct("[]")
ZERO = Struct("0")


def atom(pred: str, *args: Term) -> Atom:
    return Struct(pred, args)


def cons(head: Term, tail: Term) -> Struct:
    return Struct(".", (head, tail))


def mklist(items: Sequence[Term], tail: Term = NIL) -> Term:
    """``[t1,...,tn|tail]``; with ``n == 0`` this is ``tail`` itself."""
    out = tail
    for item in reversed(items):
        out = Struct(".", (item, out))
    return out


def peano(n: int) -> Struct:
    if n < 0:
        raise ValueError("numerals are natural numbers")
    out = ZERO
    for _ in range(n):
        out = Struct("s", (out,))
    return out


class NotANumeral(ValueError):
    pass


class NotAList(ValueError):
    pass


def peano_value(t: Term) -> int:
    n = 0
    while isinstance(t, Struct) and t.functor == "s" and len(t.args) == 1:
        t = t.args[0]
        n += 1
    if isinstance(t, Struct) and t.functor == "0" and not t.args:
        return n
    raise NotANumeral(f"not a numeral: {t!r}")


def is_numeral(t: Term) -> bool:
    try:
        peano_value(t)
    except NotANumeral:
        return False
    return True


# -- traversal ---------------------------------------------------------------

def iter_vars(t) -> Iterator[Var]:
    """Variable occurrences in left-to-right order (with repetitions)."""
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Struct):
        for a in t.args:
            yield from iter_vars(a)
    elif isinstance(t, Clause):
        yield from iter_vars(t.head)
        for b in t.body:
            yield from iter_vars(b)
    else:  # sequence of terms/atoms
        for x in t:
            yield from iter_vars(x)


def variables(t) -> List[Var]:
    """Distinct variables of ``t`` in order of first occurrence."""
    return list(dict.fromkeys(iter_vars(t)))


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def is_linear(t) -> bool:
    seen = set()
    for v in iter_vars(t):
        if v in seen:
            return False
        seen.add(v)
    return True


def term_depth(t: Term) -> int:
    """Constants and variables have depth 0; ``f(t1..tn)`` is one more than its deepest argument."""
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def atom_depth(a: Atom) -> int:
    return max((term_depth(t) for t in a.args), default=0)


# -- substitutions -----------------------------------------------------------

def apply(sub: Substitution, t):
    """Simultaneous replacement of the variables bound in ``sub``."""
    if isinstance(t, Var):
        return sub.get(t, t)
    if isinstance(t, Struct):
        if not t.args or not sub:
            return t
        return Struct(t.functor, [apply(sub, a) for a in t.args])
    if isinstance(t, Clause):
        return Clause(apply(sub, t.head), tuple(apply(sub, b) for b in t.body))
    return type(t)(apply(sub, x) for x in t)


def compose(first: Substitution, second: Substitution) -> Substitution:
    """The substitution ``first`` followed by ``second``.

    ``apply(compose(s, t), x) == apply(t, apply(s, x))`` for every ``x``.
    """
    out = {}
    for v, t in first.items():
        t2 = apply(second, t)
        if t2 is not v:
            out[v] = t2
    for v, t in second.items():
        if v not in first and t is not v:
            out[v] = t
    return out


def restrict(sub: Substitution, vs: Iterable[Var]) -> Substitution:
    vs = set(vs)
    return {v: t for v, t in sub.items() if v in vs}


def renaming(vs: Iterable[Var]) -> Dict[Var, Var]:
    return {v: Var() for v in vs}


def rename(t):
    """A variant of ``t`` over fresh variables."""
    return apply(renaming(variables(t)), t)


def rename_apart(items: Sequence, avoid: Iterable[Var] = ()) -> list:
    """Variants of ``items`` that are pairwise variable disjoint and avoid ``avoid``.

    Every variable of the result is freshly created, so disjointness from
    ``avoid`` (and from anything else already built) is automatic.
    """
    del avoid  # fresh variables never collide with existing ones
    return [rename(x) for x in items]


# -- variants ----------------------------------------------------------------

def canonical(t, numbering: Optional[Dict[Var, int]] = None):
    """Hashable key equal for exactly the variants of ``t``.

    Variables become integers numbered by first occurrence; structs become
    tuples headed by their functor.
    """
    if numbering is None:
        numbering = {}
    if isinstance(t, Var):
        n = numbering.get(t)
        if n is None:
            n = numbering[t] = len(numbering)
        return n
    if isinstance(t, Struct):
        if not t.args:
            return t.functor
        return (t.functor,) + tuple(canonical(a, numbering) for a in t.args)
    if isinstance(t, Clause):
        return (":-", canonical(t.head, numbering)) + tuple(canonical(b, numbering) for b in t.body)
    return ("$seq",) + tuple(canonical(x, numbering) for x in t)


def is_variant(a, b) -> bool:
    return canonical(a) == canonical(b)


class AtomSet:
    """A finite set of atoms with one stored representative per variant class."""

    __slots__ = ("_items",)

    def __init__(self, atoms: Iterable[Atom] = ()):
        self._items: Dict[object, Atom] = {}
        for a in atoms:
            self.add(a)

    def add(self, a: Atom) -> bool:
        key = canonical(a)
        if key in self._items:
            return False
        self._items[key] = a
        return True

    def update(self, atoms: Iterable[Atom]) -> int:
        return sum(self.add(a) for a in atoms)

    def __contains__(self, a) -> bool:
        return canonical(a) in self._items

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._items.values())

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if not isinstance(other, AtomSet):
            return NotImplemented
        return self._items.keys() == other._items.keys()

    def keys(self):
        return self._items.keys()

    def copy(self) -> "AtomSet":
        out = AtomSet()
        out._items = dict(self._items)
        return out

    def issubset(self, other: "AtomSet") -> bool:
        return self._items.keys() <= other._items.keys()

    def difference(self, other: "AtomSet") -> "AtomSet":
        out = AtomSet()
        out._items = {k: a for k, a in self._items.items() if k not in other._items}
        return out

    def filter(self, pred) -> "AtomSet":
        out = AtomSet()
        out._items = {k: a for k, a in self._items.items() if pred(a)}
        return out

    def by_predicate(self, key: Tuple[str, int]) -> List[Atom]:
        return [a for a in self._items.values() if a.key == key]

    def __repr__(self):
        return f"AtomSet({list(self._items.values())!r})"


# -- lists -------------------------------------------------------------------

def open_list_view(t: Term) -> Tuple[List[Term], Term]:
    """Split ``t`` into its list members and the term ending the spine.

    Raises :class:`NotAList` if the spine ends in anything but a variable or ``[]``.
    """
    members, tail = list_prefix(t)
    if isinstance(tail, Var) or tail == NIL:
        return members, tail
    raise NotAList(f"spine of {t!r} ends in {tail!r}")


def list_prefix(t: Term) -> Tuple[List[Term], Term]:
    """Members along the maximal ``'.'/2`` spine of any term, and what ends it."""
    members = []
    while isinstance(t, Struct) and t.functor == "." and len(t.args) == 2:
        members.append(t.args[0])
        t = t.args[1]
    return members, t


def is_open_list(t: Term) -> bool:
    return isinstance(list_prefix(t)[1], Var)


def tail_of(t: Term) -> Term:
    """``tl([h|u]) = u``; the tail of an empty open list is a new variable."""
    if isinstance(t, Var):
        return Var()
    if isinstance(t, Struct) and t.functor == "." and len(t.args) == 2 and is_open_list(t):
        return t.args[1]
    raise NotAList(f"not an open list: {t!r}")


def kth_member(t: Term, k: int) -> Optional[Term]:
    """The ``k``-th member of ``t`` (1-based) when ``t = [t1,...,t(k-1),s|t0]``."""
    if k < 1:
        raise ValueError("k must be positive")
    for _ in range(k - 1):
        if not (isinstance(t, Struct) and t.functor == "." and len(t.args) == 2):
            return None
        t = t.args[1]
    if isinstance(t, Struct) and t.functor == "." and len(t.args) == 2:
        return t.args[0]
    return None


def list_length(t: Term) -> int:
    return len(list_prefix(t)[0])
