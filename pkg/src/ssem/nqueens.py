"""Fruehwirth's n-queens program and its s-semantics specifications.

Board encoding: ``cs`` is an open list of columns where the numeral ``i``
as the ``k``-th member means queen (row) ``i`` stands in column ``k``.  In the
context of row ``i``, queen ``j`` in column ``k`` lies on up diagonal
``k + j - i`` and down diagonal ``k + i - j``; ``us``/``ds`` hold queen ``j``
as their ``l``-th member when its up/down diagonal number is ``l > 0``.

Clause numbering follows the program text: (1) and (2) define ``pqs/4``,
(3) and (4) define ``pq/4``.  ``program(full=True)`` prepends the ``qu/2`` and
``gl/2`` driver clauses.

Membership predicates are exact (and variant-insensitive); enumerators
produce finite samples controlled by :class:`~ssem.checks.SpecBounds`:
``i`` bounds the row index, ``length`` every list spine, ``vars`` the number
of spare (non-required) members of a list and ``junk`` how many of those
spares, in the correctness sample, hold a ground numeral instead of a
variable.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .checks import SpecBounds, Specification
from .sld import ComputedAnswer
from .syntax import parse_program
from .terms import (
    NIL,
    ZERO,
    AtomSet,
    Atom,
    Clause,
    Program,
    Struct,
    Term,
    Var,
    is_ground,
    is_linear,
    iter_vars,
    kth_member,
    list_prefix,
    mklist,
    peano,
    peano_value,
    NotANumeral,
)

NQUEENS_TEXT = """\
% (1)
pqs(0,_,_,_).
% (2)
pqs(s(I),Cs,Us,[_|Ds]) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).
% (3) pq(Queen,Column,Updiagonal,Downdiagonal) places a single queen
pq(I,[I|_],[I|_],[I|_]).
% (4)
pq(I,[_|Cs],[_|Us],[_|Ds]) :- pq(I,Cs,Us,Ds).
"""

DRIVER_TEXT = """\
qu(N,Qs) :- gl(N,Qs), pqs(N,Qs,_,_).
gl(0,[]).
gl(s(N),[_|L]) :- gl(N,L).
"""


def program(full: bool = False) -> Program:
    """The four clauses (1)-(4); with ``full`` also the ``qu``/``gl`` driver."""
    text = DRIVER_TEXT + NQUEENS_TEXT if full else NQUEENS_TEXT
    return parse_program(text)


nqueens_program = program

_P = program()
CLAUSE = {n: c for n, c in enumerate(_P.clauses, 1)}


# Mutants used to show the correctness/completeness checks can fail.
MUTANT_TEXT = {
    # clause (2) with head pqs(s(I),Cs,Us,Ds)
    "drop-head-ds": NQUEENS_TEXT.replace("pqs(s(I),Cs,Us,[_|Ds]) :-", "pqs(s(I),Cs,Us,Ds) :-"),
    # clause (3) with Us and Ds exchanged; the clause is symmetric in them, so nothing changes
    "swap-us-ds-clause3": NQUEENS_TEXT.replace(
        "pq(I,[I|_],[I|_],[I|_]).", "pq(I,[I|Cs],[I|Ds],[I|Us])."
    ),
    # the recursive call of clause (2) with Us and Ds exchanged
    "swap-us-ds-clause2": NQUEENS_TEXT.replace("pqs(I,Cs,[_|Us],Ds), pq", "pqs(I,Cs,[_|Ds],Us), pq"),
    # the pq call of clause (2) with Us and Ds exchanged; pq is symmetric in them
    "swap-us-ds-pq-call": NQUEENS_TEXT.replace("pq(s(I),Cs,Us,Ds).", "pq(s(I),Cs,Ds,Us)."),
    # the body of clause (4) with Us and Ds exchanged; again pq is symmetric in them
    "swap-us-ds-clause4": NQUEENS_TEXT.replace(":- pq(I,Cs,Us,Ds).", ":- pq(I,Cs,Ds,Us)."),
    # clause (4) turned into a fact
    "drop-body-clause4": NQUEENS_TEXT.replace(
        "pq(I,[_|Cs],[_|Us],[_|Ds]) :- pq(I,Cs,Us,Ds).", "pq(I,[_|Cs],[_|Us],[_|Ds])."
    ),
    # clause (3) deleted
    "delete-clause3": NQUEENS_TEXT.replace("pq(I,[I|_],[I|_],[I|_]).\n", ""),
}


def mutant(name: str) -> Program:
    p = parse_program(MUTANT_TEXT[name])
    # keep pq/4 declared even when none of its clauses survive
    return Program(p.clauses, frozenset({("pq", 4), ("pqs", 4)}))


# -- diagonals ---------------------------------------------------------------

def up_diag(j: int, k: int, i: int) -> int:
    """Up diagonal number of queen ``j`` in column ``k`` w.r.t. row ``i``."""
    return k + j - i


def down_diag(j: int, k: int, i: int) -> int:
    """Down diagonal number of queen ``j`` in column ``k`` w.r.t. row ``i``."""
    return k + i - j


def _num(t: Term) -> Optional[int]:
    try:
        return peano_value(t)
    except NotANumeral:
        return None


# -- open-list predicates ----------------------------------------------------

def is_gvd(t: Term) -> bool:
    """Linear open list with pairwise distinct members, each ground or a variable."""
    members, tail = list_prefix(t)
    if not isinstance(tail, Var) or not is_linear(t):
        return False
    grounds = [m for m in members if not isinstance(m, Var)]
    if not all(is_ground(m) for m in grounds):
        return False
    return len(set(grounds)) == len(grounds)


def is_short_gvd(t: Term) -> bool:
    """A g.v.d. whose last member is ground, or which has no members."""
    if not is_gvd(t):
        return False
    members = list_prefix(t)[0]
    return not members or not isinstance(members[-1], Var)


def remove_member(t: Term, which: Term) -> Term:
    """A short g.v.d. with the ground member ``which`` removed.

    An interior member is replaced by a new variable; removing the last
    member also drops the variables that preceded it back to the previous
    ground member, keeping the open-list variable.
    """
    members, tail = list_prefix(t)
    if not is_ground(which) or which not in members:
        raise ValueError("not a ground member")
    p = members.index(which)
    if p == len(members) - 1:
        keep = p - 1
        while keep >= 0 and isinstance(members[keep], Var):
            keep -= 1
        return mklist(members[: keep + 1], tail)
    members = list(members)
    members[p] = Var()
    return mklist(members, tail)


def _placement(cs: Term) -> Optional[Dict[int, List[int]]]:
    """Columns (1-based) of every positive numeral member; None if some ground member is not one."""
    out: Dict[int, List[int]] = {}
    for k, m in enumerate(list_prefix(cs)[0], 1):
        if isinstance(m, Var):
            continue
        v = _num(m)
        if v is None or v < 1:
            return None
        out.setdefault(v, []).append(k)
    return out


def cs_correct_up_to(cs: Term, m: int) -> bool:
    """``cs`` is a g.v.d. holding exactly queens 1..m with distinct up and down diagonals."""
    if m < 0 or not is_gvd(cs):
        return False
    placed = _placement(cs)
    if placed is None or set(placed) != set(range(1, m + 1)):
        return False
    cols = {j: ks[0] for j, ks in placed.items()}
    ups = {k + j for j, k in cols.items()}
    downs = {k - j for j, k in cols.items()}
    return len(ups) == m and len(downs) == m


def pair_correct(us: Term, ds: Term, m: int, i: int, cs: Term) -> bool:
    """``(us, ds)`` is correct up to ``m`` w.r.t. row ``i`` and ``cs``."""
    members = list_prefix(cs)[0]
    for j in range(1, m + 1):
        pj = peano(j)
        cols = [k for k, x in enumerate(members, 1) if x == pj]
        if not cols:
            return False
        for k in cols:
            up = up_diag(j, k, i)
            if up > 0 and kth_member(us, up) != pj:
                return False
            down = down_diag(j, k, i)
            if down > 0 and kth_member(ds, down) != pj:
                return False
    return True


def _disjoint(*terms: Term) -> bool:
    seen: Set[Var] = set()
    for t in terms:
        vs = set(iter_vars(t))
        if vs & seen:
            return False
        seen |= vs
    return True


# -- membership --------------------------------------------------------------

def member_S_pq(a: Atom) -> bool:
    """``pq(v,[c1..ck,v|c0],[u1..uk,v|u0],[d1..dk,v|d0])`` over distinct variables."""
    if a.key != ("pq", 4) or not isinstance(a.args[0], Var):
        return False
    v = a.args[0]
    k = None
    for lst in a.args[1:]:
        members, tail = list_prefix(lst)
        if not members or members[-1] is not v or not isinstance(tail, Var):
            return False
        if not all(isinstance(x, Var) for x in members[:-1]):
            return False
        if k is None:
            k = len(members)
        elif len(members) != k:
            return False
    # besides v: k - 1 leading members and one tail per list, all distinct
    others = [x for x in iter_vars(a.args[1:]) if x is not v]
    return len(others) == len(set(others)) == 3 * k


def member_S_pqs2(a: Atom) -> bool:
    if a.key != ("pqs", 4) or a.args[0] != ZERO:
        return False
    rest = a.args[1:]
    return all(isinstance(x, Var) for x in rest) and len(set(rest)) == 3


def _split_pqs(a: Atom):
    """``(i, cs, us, ds)`` for ``pqs(i,cs,us,[h|ds])`` with ``i > 0`` and a fresh variable ``h``."""
    if a.key != ("pqs", 4):
        return None
    i = _num(a.args[0])
    if i is None or i < 1:
        return None
    cs, us, d4 = a.args[1:]
    if not (isinstance(d4, Struct) and d4.functor == "." and len(d4.args) == 2):
        return None
    h, ds = d4.args
    if not isinstance(h, Var) or h in set(iter_vars((cs, us, ds))):
        return None
    return i, cs, us, ds


def member_S_pqs1(a: Atom) -> bool:
    parts = _split_pqs(a)
    if parts is None:
        return False
    i, cs, us, ds = parts
    return cs_correct_up_to(cs, i) and pair_correct(us, ds, i, i, cs) and _disjoint(cs, us, ds)


def member_S_pqs(a: Atom) -> bool:
    return member_S_pqs1(a) or member_S_pqs2(a)


def member_S(a: Atom) -> bool:
    """The correctness specification ``S = S_pq u S_pqs``."""
    return member_S_pq(a) or member_S_pqs(a)


def member_S0_pqs(a: Atom) -> bool:
    if not member_S_pqs1(a):
        return False
    i, cs, us, ds = _split_pqs(a)
    if not (is_short_gvd(cs) and is_short_gvd(us) and is_short_gvd(ds)):
        return False
    cols = {j: ks[0] for j, ks in _placement(cs).items()}
    for lst, need_up in ((us, True), (ds, False)):
        for m in list_prefix(lst)[0]:
            if isinstance(m, Var):
                continue
            j = _num(m)
            if j is None or not 1 <= j <= i:
                return False
            if need_up and up_diag(j, cols[j], i) <= 0:
                return False
    return True


def member_S0(a: Atom) -> bool:
    """The completeness specification ``S0 = S0_pqs u S_pqs2 u S_pq``."""
    return member_S0_pqs(a) or member_S_pqs2(a) or member_S_pq(a)


def member_S_gl(a: Atom) -> bool:
    if a.key != ("gl", 2):
        return False
    n = _num(a.args[0])
    members, tail = list_prefix(a.args[1])
    return (
        n is not None
        and tail == NIL
        and len(members) == n
        and all(isinstance(m, Var) for m in members)
        and len(set(members)) == n
    )


def member_S_qu(a: Atom) -> bool:
    if a.key != ("qu", 2):
        return False
    n = _num(a.args[0])
    members, tail = list_prefix(a.args[1])
    if n is None or tail != NIL or len(members) != n:
        return False
    values = [_num(m) for m in members]
    if sorted(v for v in values if v is not None) != list(range(1, n + 1)) or None in values:
        return False
    return _non_attacking(values)


def member_S_full(a: Atom) -> bool:
    return member_S(a) or member_S_gl(a) or member_S_qu(a)


# -- level mapping -----------------------------------------------------------

def size(t: Term) -> int:
    """``|[h|t]| = 1 + |t|``, ``|s(t)| = 1 + |t|``, any other term 0."""
    n = 0
    while isinstance(t, Struct):
        if t.functor == "." and len(t.args) == 2:
            t = t.args[1]
        elif t.functor == "s" and len(t.args) == 1:
            t = t.args[0]
        else:
            break
        n += 1
    return n


def level(a: Atom) -> int:
    if a.key == ("pqs", 4):
        return size(a.args[0]) + size(a.args[1])
    if a.key == ("pq", 4):
        return size(a.args[1])
    raise ValueError(f"no level for {a.functor}/{len(a.args)}")


# -- samples -----------------------------------------------------------------

def pq_atom(k: int) -> Atom:
    """``B_k``: the ``S_pq`` atom placing its queen at position ``k + 1``."""
    v = Var()
    lists = [mklist([Var() for _ in range(k)] + [v], Var()) for _ in range(3)]
    return Struct("pq", [v] + lists)


def _placements(i: int, b: SpecBounds, short: bool) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """``(L, cols)`` with ``cols[j-1]`` the column of queen ``j`` on a row of ``L`` columns."""
    for L in range(i, min(b.length, i + b.vars) + 1):
        for cols in itertools.permutations(range(1, L + 1), i):
            if short and L and L not in cols:
                continue
            if len({c + j for j, c in enumerate(cols, 1)}) < i:
                continue
            if len({c - j for j, c in enumerate(cols, 1)}) < i:
                continue
            yield L, cols


def _columns(L: int, cols: Sequence[int]) -> Term:
    members: List[Term] = [Var() for _ in range(L)]
    for j, c in enumerate(cols, 1):
        members[c - 1] = peano(j)
    return mklist(members, Var())


def _required(cols: Sequence[int], i: int) -> Tuple[Dict[int, int], Dict[int, int]]:
    ups, downs = {}, {}
    for j, k in enumerate(cols, 1):
        if up_diag(j, k, i) > 0:
            ups[up_diag(j, k, i)] = j
        downs[down_diag(j, k, i)] = j
    return ups, downs


def _short_diag(required: Dict[int, int]) -> Term:
    L = max(required, default=0)
    return mklist([peano(required[p]) if p in required else Var() for p in range(1, L + 1)], Var())


def _diag_variants(required: Dict[int, int], i: int, b: SpecBounds) -> List[list]:
    """Recipes for diagonal lists: required members fixed, spares variables or junk numerals."""
    out = []
    top = max(required, default=0)
    for L in range(top, b.length + 1):
        spares = [p for p in range(1, L + 1) if p not in required]
        if len(spares) > b.vars:
            break
        for n_junk in range(0, min(b.junk, len(spares)) + 1):
            for where in itertools.combinations(spares, n_junk):
                for values in itertools.product(range(1, i + 1), repeat=n_junk):
                    fill = dict(required)
                    fill.update(zip(where, values))
                    for closed in (False, True):
                        out.append((L, fill, closed))
    return out


def _build_diag(recipe) -> Term:
    L, fill, closed = recipe
    members = [peano(fill[p]) if p in fill else Var() for p in range(1, L + 1)]
    return mklist(members, NIL if closed else Var())


def sample_S_pq(b: SpecBounds) -> List[Atom]:
    return [pq_atom(k) for k in range(b.length)]


def sample_S_pqs2(b: SpecBounds) -> List[Atom]:
    return [Struct("pqs", [ZERO, Var(), Var(), Var()])]


def sample_S_pqs1(b: SpecBounds) -> List[Atom]:
    """Correct placements for rows 1..i, with diagonal lists padded by spare members.

    Spares are variables or (up to ``junk`` of them) numerals 1..i; diagonal
    lists end in a variable or in ``[]``.  Shapes outside these (other ground
    terms, shared variables inside a list) are members of ``S`` but are not
    sampled.
    """
    out = []
    for i in range(1, b.i + 1):
        for L, cols in _placements(i, b, short=False):
            ups, downs = _required(cols, i)
            if max(ups) > b.length or max(downs) > b.length:
                continue
            for ur in _diag_variants(ups, i, b):
                for dr in _diag_variants(downs, i, b):
                    out.append(
                        Struct("pqs", [peano(i), _columns(L, cols), _build_diag(ur), Struct(".", (Var(), _build_diag(dr)))])
                    )
    return out


def sample_S0_pqs(b: SpecBounds) -> List[Atom]:
    """All ``S0_pqs`` atoms within the bounds (their diagonal lists are determined by ``cs``)."""
    out = []
    for i in range(1, b.i + 1):
        for L, cols in _placements(i, b, short=True):
            ups, downs = _required(cols, i)
            if max(ups) > b.length or max(downs) > b.length:
                continue
            out.append(
                Struct("pqs", [peano(i), _columns(L, cols), _short_diag(ups), Struct(".", (Var(), _short_diag(downs)))])
            )
    return out


def sample_S_gl(b: SpecBounds) -> List[Atom]:
    return [Struct("gl", [peano(n), mklist([Var() for _ in range(n)])]) for n in range(b.length + 1)]


def sample_S_qu(b: SpecBounds) -> List[Atom]:
    out = []
    for n in range(b.length + 1):
        for sol in sorted(brute_force_queens(n)):
            out.append(Struct("qu", [peano(n), mklist([peano(x) for x in sol])]))
    return out


_SAMPLERS = {
    "S_pq": (sample_S_pq,),
    "S_pqs1": (sample_S_pqs1,),
    "S_pqs2": (sample_S_pqs2,),
    "S_pqs": (sample_S_pqs1, sample_S_pqs2),
    "S": (sample_S_pq, sample_S_pqs1, sample_S_pqs2),
    "S0_pqs": (sample_S0_pqs,),
    "S0": (sample_S_pq, sample_S0_pqs, sample_S_pqs2),
    "S_gl": (sample_S_gl,),
    "S_qu": (sample_S_qu,),
    "S_full": (sample_S_pq, sample_S_pqs1, sample_S_pqs2, sample_S_gl, sample_S_qu),
}


def enumerate_spec(which: str, b: SpecBounds = SpecBounds()) -> AtomSet:
    """Bounded sample of a specification, one representative per variant class."""
    out = AtomSet()
    for f in _SAMPLERS[which]:
        out.update(f(b))
    return out


# Module-level functions keep specifications picklable for worker processes.
def _enum_S(b):
    return enumerate_spec("S", b)


def _enum_S0(b):
    return enumerate_spec("S0", b)


def _enum_S_gl(b):
    return enumerate_spec("S_gl", b)


def _enum_S_qu(b):
    return enumerate_spec("S_qu", b)


def _enum_S_full(b):
    return enumerate_spec("S_full", b)


SPECS: Dict[str, Specification] = {
    "S": Specification("S", member_S, _enum_S, level),
    "S0": Specification("S0", member_S0, _enum_S0, level),
    "S_gl": Specification("S_gl", member_S_gl, _enum_S_gl),
    "S_qu": Specification("S_qu", member_S_qu, _enum_S_qu),
    "S_full": Specification("S_full", member_S_full, _enum_S_full),
}


# -- completeness witnesses --------------------------------------------------

def _up_one_queen(cs: Term, i: int) -> Optional[int]:
    for j, ks in (_placement(cs) or {}).items():
        if j <= i and up_diag(j, ks[0], i) == 1:
            return j
    return None


def completeness_witness(a: Atom) -> Tuple[Clause, Tuple[Atom, ...]]:
    """Clause and body atoms from which ``a`` is obtained, each of lower level.

    Unary-clause variants come from (1) and (3); ``B_k`` comes from
    ``B_(k-1)`` by clause (4); ``pqs(s(i),cs,us,[v|ds])`` comes from clause
    (2) with the queen ``s(i)`` removed from ``cs``, ``us`` and ``ds``.
    """
    if member_S_pqs2(a):
        return CLAUSE[1], ()
    if member_S_pq(a):
        k = len(list_prefix(a.args[1])[0]) - 1
        if k == 0:
            return CLAUSE[3], ()
        return CLAUSE[4], (pq_atom(k - 1),)
    if not member_S0_pqs(a):
        raise ValueError("not in S0")
    n, cs, us, ds = _split_pqs(a)
    i = n - 1
    row = peano(n)
    j = list_prefix(cs)[0].index(row) + 1
    a2 = pq_atom(j - 1)
    if i == 0:
        a1 = Struct("pqs", [ZERO, Var(), Var(), Var()])
    else:
        t = _up_one_queen(cs, i)
        head = Var() if t is None else peano(t)
        a1 = Struct(
            "pqs",
            [peano(i), remove_member(cs, row), Struct(".", (head, remove_member(us, row))), remove_member(ds, row)],
        )
    return CLAUSE[2], (a1, a2)


def witness_chain(a: Atom) -> List[Tuple[Atom, Clause, Tuple[Atom, ...]]]:
    """Witness steps from ``a`` down to unary clauses, depth first."""
    out = []
    stack = [a]
    while stack:
        x = stack.pop()
        clause, body = completeness_witness(x)
        out.append((x, clause, body))
        stack.extend(reversed(body))
    return out


# -- the problem itself ------------------------------------------------------

def _non_attacking(cols: Sequence[int]) -> bool:
    n = len(cols)
    return all(abs(cols[a] - cols[b]) != b - a for a in range(n) for b in range(a + 1, n))


def brute_force_queens(n: int) -> Set[Tuple[int, ...]]:
    """Every placement of ``n`` non-attacking queens, as the row of each column."""
    return {p for p in itertools.permutations(range(1, n + 1)) if _non_attacking(p)}


def queens_query(n: int) -> Tuple[Atom, ...]:
    """``pqs(n, [Q1..Qn], _, _)``."""
    qs = mklist([Var(f"Q{k}") for k in range(1, n + 1)])
    return (Struct("pqs", [peano(n), qs, Var("U"), Var("D")]),)


def extract_solution(answer) -> Tuple[int, ...]:
    """Column list of an answer ``pqs(n, qs, _, _)`` as integers."""
    a = answer.instance[0] if isinstance(answer, ComputedAnswer) else answer
    members, tail = list_prefix(a.args[1])
    if tail != NIL:
        raise ValueError("second argument is not a closed list")
    values = [_num(m) for m in members]
    if None in values:
        raise ValueError("second argument has non-numeral members")
    return tuple(values)
