"""Bounded checks of the sufficient conditions for correctness and completeness.

Correctness: a program is correct w.r.t. ``S`` when every clause maps ``S``
into ``S`` under the non-ground consequence operator.  We fire each clause on
every tuple of a finite sample of ``S`` and test the resulting head instances
with the (exact) membership predicate.

Completeness: with a level mapping on ``S``, every ``A`` in ``S`` must be
produced by one clause from atoms (variants of members of ``S``) of strictly
smaller level.  Witnesses come either from a corpus-specific rule or from a
search over a sample.

``S`` is infinite in general, so a ``pass`` verdict means "no counterexample
within the bounds"; reports always carry the bounds used.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .semantics import FiringStats, firings, tpi_clause
from .syntax import to_text
from .terms import AtomSet, Atom, Clause, Program, Var, apply, canonical, is_variant, variables, rename
from .unify import unify_into

PASS = "pass"
FAIL = "fail"
TRUNCATED = "inconclusive-truncated"


@dataclass(frozen=True)
class SpecBounds:
    """Sampling bounds: row index, list spine length, spare variable members, extra ground members."""

    i: int = 3
    length: int = 6
    vars: int = 2
    junk: int = 1

    _ALIASES = {"i": "i", "len": "length", "length": "length", "vars": "vars", "junk": "junk"}

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"bound {f.name} must be >= 0")

    @classmethod
    def parse(cls, text: str, base: Optional["SpecBounds"] = None) -> "SpecBounds":
        """Parse ``"i=4,len=6,vars=3"``; unnamed bounds keep their defaults."""
        out = base or cls()
        if not text:
            return out
        for part in text.split(","):
            key, _, value = part.partition("=")
            key = cls._ALIASES.get(key.strip())
            if key is None or not value.strip().isdigit():
                raise ValueError(f"bad bound {part!r}")
            out = replace(out, **{key: int(value)})
        return out

    def widened(self, by: int = 1) -> "SpecBounds":
        return replace(self, length=self.length + by, vars=self.vars + by)

    def __str__(self):
        return f"i={self.i},len={self.length},vars={self.vars},junk={self.junk}"


@dataclass(frozen=True)
class Specification:
    name: str
    member: Callable[[Atom], bool]
    enumerate: Optional[Callable[[SpecBounds], AtomSet]] = None
    level: Optional[Callable[[Atom], int]] = None


@dataclass
class CheckReport:
    check: str
    program: str
    spec: str
    verdict: str
    bounds: str
    statistics: Dict[str, int] = field(default_factory=dict)
    counterexamples: List[Dict[str, str]] = field(default_factory=list)
    targets: Optional[List[Dict[str, object]]] = None
    # answers, classes or solutions listed by the non-check subcommands
    items: Optional[List[Dict[str, object]]] = None
    elapsed: Optional[float] = None
    # atoms behind the printed counterexamples, for programmatic use
    violations: List[Atom] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


# A witness rule maps a target atom to (clause, body atoms) or raises ValueError.
WitnessRule = Callable[[Atom], Tuple[Clause, Tuple[Atom, ...]]]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SSEM_JOBS", "1")))
    except ValueError:
        return 1


# -- correctness -------------------------------------------------------------

_SAMPLE: List[Atom] = []


def _set_sample(sample):
    global _SAMPLE
    _SAMPLE = sample


def _fire_chunk(clause: Clause, lo: int, hi: int, member, keep: int, max_tuples, sample=None):
    """Fire ``clause`` with its first body atom drawn from ``sample[lo:hi]``.

    Returns the firing statistics, the number of violations, the first
    ``keep`` of them and whether ``max_tuples`` stopped the scan.
    """
    sample = _SAMPLE if sample is None else sample
    stats = FiringStats()
    bad = []
    count = 0
    truncated = False
    if clause.body:
        first = [a for a in sample[lo:hi] if a.key == clause.body[0].key]
        cands = [first] + [sample] * (len(clause.body) - 1)
    else:
        cands = []
    for body, head in firings(clause, cands, stats):
        if not member(head):
            count += 1
            if len(bad) < keep:
                bad.append((body, head))
        if max_tuples is not None and stats.tuples > max_tuples:
            truncated = True
            break
    return stats, count, bad, truncated


def check_correctness(
    program: Program,
    spec: Specification,
    bounds: SpecBounds = SpecBounds(),
    max_tuples: Optional[int] = None,
    jobs: int = 1,
    program_name: str = "program",
    max_counterexamples: int = 10,
) -> CheckReport:
    """Bounded test of ``T^pi_{C}(S) <= S`` for every clause ``C``.

    Each clause is fired on every tuple (with repetition) of the sample
    ``spec.enumerate(bounds)``; every head instance must satisfy
    ``spec.member``.  Every tuple is tried even after a violation, so the
    report does not depend on ``jobs``.  ``max_tuples`` caps the number of
    tuples tried overall.
    """
    if spec.enumerate is None:
        raise ValueError(f"specification {spec.name} has no enumerator")
    start = time.perf_counter()
    sample = list(spec.enumerate(bounds))
    total = FiringStats()
    found: List[Tuple[int, tuple, Atom]] = []
    violations = 0
    truncated = False

    # Fixed chunking, so the order of counterexamples is the same for any jobs.
    size = max(1, -(-len(sample) // 64))
    work = []
    for n, clause in enumerate(program.clauses):
        if not clause.body:
            work.append((n, clause, 0, 0))
            continue
        for lo in range(0, len(sample), size):
            work.append((n, clause, lo, lo + size))

    def absorb(n, result):
        nonlocal truncated, violations
        stats, count, bad, trunc = result
        total.tuples += stats.tuples
        total.unifications += stats.unifications
        total.heads += stats.heads
        truncated = truncated or trunc
        violations += count
        found.extend((n, body, head) for body, head in bad)

    keep = max_counterexamples
    if jobs > 1 and len(work) > 1:
        # each worker gets the whole budget; the total is checked afterwards
        with ProcessPoolExecutor(max_workers=jobs, initializer=_set_sample, initargs=(sample,)) as pool:
            futures = [
                (n, pool.submit(_fire_chunk, c, lo, hi, spec.member, keep, max_tuples)) for n, c, lo, hi in work
            ]
            for n, fut in futures:
                absorb(n, fut.result())
        if max_tuples is not None and total.tuples > max_tuples:
            truncated = True
    else:
        for n, c, lo, hi in work:
            remaining = None if max_tuples is None else max_tuples - total.tuples
            if remaining is not None and remaining < 0:
                truncated = True
                break
            absorb(n, _fire_chunk(c, lo, hi, spec.member, keep, remaining, sample))

    report = CheckReport(
        check="correctness",
        program=program_name,
        spec=spec.name,
        verdict=FAIL if found else (TRUNCATED if truncated else PASS),
        bounds=str(bounds),
        statistics={
            "clauses": len(program.clauses),
            "sampled_atoms": len(sample),
            "tuples": total.tuples,
            "unifications": total.unifications,
            "head_instances": total.heads,
            "violations": violations,
        },
    )
    for n, body, head in found[:max_counterexamples]:
        report.counterexamples.append(
            {"clause": str(n + 1), "body": "[" + to_text(body) + "]", "head": to_text(head)}
        )
        report.violations.append(head)
    report.elapsed = time.perf_counter() - start
    return report


# -- completeness ------------------------------------------------------------

def _clause_index(program: Program, clause: Clause) -> Optional[int]:
    key = canonical(clause)
    for n, c in enumerate(program.clauses):
        if canonical(c) == key:
            return n
    return None


def verify_witness(
    program: Program,
    spec: Specification,
    target: Atom,
    clause: Clause,
    body: Sequence[Atom],
) -> Tuple[bool, str, Optional[int]]:
    """Check one completeness witness; returns ``(ok, reason, clause_index)``."""
    n = _clause_index(program, clause)
    if n is None:
        return False, "clause not in program", None
    if len(body) != len(clause.body):
        return False, "body length mismatch", n
    for a in body:
        if not spec.member(a):
            return False, f"{to_text(a)} not a variant of a member", n
    lv = spec.level(target)
    for a in body:
        if not spec.level(a) < lv:
            return False, f"level of {to_text(a)} not below {lv}", n
    if target not in tpi_clause(clause, body):
        return False, "head not reproduced", n
    return True, "ok", n


def _search_witness(program, spec, target, pool, budget, stats):
    """First (clause, body) from ``pool`` producing a variant of ``target``; None if none."""
    lv = spec.level(target)
    lower = [a for a in pool if spec.level(a) < lv]
    for clause in program.clauses:
        if clause.head.key != target.key:
            continue
        c = rename(clause)
        pinned = unify_into(c.head, rename(target), {})
        if pinned is None:
            continue
        pools = [[(a, rename(a)) for a in lower if a.key == b.key] for b in c.body]

        def go(p, bindings, chosen):
            if p == len(c.body):
                yield tuple(chosen)
                return
            for original, fresh in pools[p]:
                stats["unifications"] += 1
                ext = unify_into(c.body[p], fresh, bindings)
                if ext is not None:
                    chosen.append(original)
                    yield from go(p + 1, ext, chosen)
                    chosen.pop()

        # pinning the head to the target only prunes; the head instance is
        # recomputed without it before comparing
        for body in go(0, pinned, []):
            stats["tuples"] += 1
            if budget is not None and stats["tuples"] > budget:
                raise _Budget()
            if target in tpi_clause(clause, body):
                return clause, body
    return None


class _Budget(Exception):
    pass


def check_completeness(
    program: Program,
    spec: Specification,
    bounds: SpecBounds = SpecBounds(),
    witness: Optional[WitnessRule] = None,
    max_tuples: Optional[int] = None,
    program_name: str = "program",
    max_counterexamples: int = 10,
) -> CheckReport:
    """Bounded test of the level-mapping completeness condition.

    For every ``A`` in ``spec.enumerate(bounds)`` a witness ``(C, A1..An)``
    is taken from ``witness`` or, when it is None, searched for among the
    sample at bounds widened by one (enough to contain the smaller atoms a
    witness needs).  A witness is accepted when each ``Ai`` is a member,
    ``level(A) > level(Ai)``, and ``A`` is a variant of an element of
    ``T^pi_{C}({A1..An})``.
    """
    if spec.enumerate is None or spec.level is None:
        raise ValueError(f"specification {spec.name} needs an enumerator and a level mapping")
    start = time.perf_counter()
    targets = list(spec.enumerate(bounds))
    pool = list(spec.enumerate(bounds.widened())) if witness is None else []
    stats = {"targets": len(targets), "witnessed": 0, "tuples": 0, "unifications": 0}
    if witness is None:
        stats["pool_atoms"] = len(pool)
    report = CheckReport(
        check="completeness",
        program=program_name,
        spec=spec.name,
        verdict=PASS,
        bounds=str(bounds),
        targets=[],
    )
    truncated = False
    for a in targets:
        entry = {"atom": to_text(a), "level": spec.level(a)}
        try:
            if witness is not None:
                clause, body = witness(a)
                ok, reason, n = verify_witness(program, spec, a, clause, body)
            else:
                found = _search_witness(program, spec, a, pool, max_tuples, stats)
                if found is None:
                    ok, reason, n, body = False, "no witness in sample", None, ()
                else:
                    clause, body = found
                    ok, reason, n = True, "ok", _clause_index(program, clause)
        except _Budget:
            truncated = True
            entry["status"] = "budget"
            report.targets.append(entry)
            break
        except ValueError as e:
            ok, reason, n, body = False, f"no witness: {e}", None, ()
        entry["clause"] = "-" if n is None else n + 1
        entry["body_levels"] = (",".join(str(spec.level(b)) for b in body) or "-") if ok else "-"
        entry["status"] = "ok" if ok else reason
        report.targets.append(entry)
        if ok:
            stats["witnessed"] += 1
        elif len(report.counterexamples) < max_counterexamples:
            report.counterexamples.append({"target": to_text(a), "reason": reason})
            report.violations.append(a)
    missing = stats["targets"] - stats["witnessed"]
    if missing and not truncated:
        report.verdict = FAIL
    elif truncated:
        report.verdict = FAIL if report.counterexamples else TRUNCATED
    report.statistics = stats
    report.elapsed = time.perf_counter() - start
    return report


# -- level mappings ----------------------------------------------------------

def random_renaming(t, rng: random.Random) -> Dict[Var, Var]:
    """Fresh variables with random printed names (of random length) for the variables of ``t``."""
    alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
    out = {}
    for v in variables(t):
        name = rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ") + "".join(
            rng.choice(alphabet) for _ in range(rng.randrange(0, 12))
        )
        out[v] = Var(name)
    return out


def check_level_mapping(
    spec: Specification,
    bounds: SpecBounds = SpecBounds(),
    seed: int = 0,
    renamings: int = 3,
    sample: Optional[Iterable[Atom]] = None,
) -> CheckReport:
    """Levels must agree on variants: compare each sampled atom with random renamings of it."""
    if spec.level is None:
        raise ValueError(f"specification {spec.name} has no level mapping")
    start = time.perf_counter()
    rng = random.Random(seed)
    atoms = list(spec.enumerate(bounds) if sample is None else sample)
    report = CheckReport(
        check="level-mapping", program="-", spec=spec.name, verdict=PASS, bounds=str(bounds)
    )
    for a in atoms:
        base = spec.level(a)
        for _ in range(renamings):
            b = apply(random_renaming(a, rng), a)
            assert is_variant(a, b)
            lb = spec.level(b)
            if lb != base:
                report.verdict = FAIL
                report.counterexamples.append(
                    {"atom": to_text(a), "variant": to_text(b), "levels": f"{base},{lb}"}
                )
                report.violations.append(b)
                break
    report.statistics = {"sampled_atoms": len(atoms), "renamings": renamings * len(atoms)}
    report.elapsed = time.perf_counter() - start
    return report
