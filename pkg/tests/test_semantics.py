import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import atoms, renamings
from ssem.nqueens import CLAUSE, member_S_pq, member_S0, pq_atom, program
from ssem.semantics import (
    firings,
    ground_instances,
    ground_terms,
    herbrand_alphabet,
    herbrand_tp,
    iterate,
    tpi,
    tpi_clause,
)
from ssem.syntax import parse_clause, parse_program, parse_term
from ssem.terms import AtomSet, apply, is_variant, rename

P1 = parse_program("p(f(X)).\np(f(a)).")
P2 = parse_program("p(f(X)).")
NAT = parse_program("nat(0).\nnat(s(X)) :- nat(X).")
AF = [("a", 0), ("f", 1)]

# Rules over p/2 used by the operator properties.
RULES = parse_program(
    """
    p(f(X), Y) :- p(X, Y).
    p(X, g(Y, Z)) :- p(X, Y), p(Y, Z).
    p(a, b).
    p(X, X).
    """
)


def _atoms(text):
    return AtomSet(parse_term(t) for t in text)


class TestOperator:
    def test_unary_clause_on_empty(self):
        out = tpi_clause(CLAUSE[1], [])
        assert out == _atoms(["pqs(0,V1,V2,V3)"])

    def test_clause_four_on_b0(self):
        out = tpi_clause(CLAUSE[4], [parse_term("pq(V,[V|A],[V|B],[V|C])")])
        assert out == _atoms(["pq(V,[W1,V|A],[W2,V|B],[W3,V|C])"])
        (only,) = list(out)
        assert member_S_pq(only) and is_variant(only, pq_atom(1))

    def test_ground_fact_ignores_interpretation(self):
        c = parse_clause("p(f(a)).")
        assert tpi_clause(c, _atoms(["q(b)", "p(X)"])) == _atoms(["p(f(a))"])

    def test_two_programs_differ(self):
        assert tpi(P2, []) == _atoms(["p(f(X))"])
        assert tpi(P1, []) == _atoms(["p(f(X))", "p(f(a))"])

    def test_nqueens_on_empty(self):
        assert tpi(program(), []) == _atoms(["pqs(0,A,B,C)", "pq(I,[I|A],[I|B],[I|C])"])

    def test_body_atoms_are_renamed_apart(self):
        # one interpretation atom used twice must be two variable disjoint copies
        c = parse_clause("q(X, Y) :- p(X), p(Y).")
        out = tpi_clause(c, _atoms(["p(Z)"]))
        assert out == _atoms(["q(A,B)"])

    def test_firings_report_bodies(self):
        c = parse_clause("q(X) :- p(X).")
        got = list(firings(c, [[parse_term("p(a)"), parse_term("r(a)")]]))
        assert len(got) == 1 and got[0][0] == (parse_term("p(a)"),)


class TestIterate:
    def test_zero_iterations(self):
        r = iterate(P1, 0)
        assert len(r) == 0 and r.iterations == 0

    def test_first_program_fixpoint(self):
        r = iterate(P1, 1)
        assert r.fixpoint and len(r) == 2

    def test_second_program_fixpoint(self):
        r = iterate(P2, 2)
        assert r.fixpoint and len(r) == 1 and r.iterations == 1

    def test_nqueens_two_iterations(self):
        atoms_ = list(iterate(program(), 2).atoms)
        assert pq_atom(0) in AtomSet(atoms_) and pq_atom(1) in AtomSet(atoms_)
        zeros = [a for a in atoms_ if a.key == ("pqs", 4)]
        assert {a.args[0] for a in zeros} == {parse_term("0"), parse_term("1")}
        assert all(member_S0(a) for a in atoms_)

    def test_sizes_and_budget(self):
        r = iterate(program(), 6)
        assert r.sizes == [2, 4, 6, 9, 14, 25] and not r.fixpoint
        assert r.pred_sizes[-1] == {"pq/4": 6, "pqs/4": 19}
        capped = iterate(program(), 10, max_atoms=10)
        assert capped.truncated and capped.iterations == 5

    def test_answers_stay_in_s0(self):
        # bounded evidence that the computed answers lie inside S0
        assert all(member_S0(a) for a in iterate(program(), 7).atoms)


interpretations = st.lists(atoms(4), max_size=4).map(AtomSet)


class TestOperatorLaws:
    @given(st.integers(0, 3))
    def test_iterates_increase(self, k):
        assert iterate(RULES, k, detect=False).atoms.issubset(iterate(RULES, k + 1, detect=False).atoms)


class TestGround:
    def test_ground_terms(self):
        levels = ground_terms(AF, 2)
        assert [len(l) for l in levels] == [1, 2, 3]

    def test_instances(self):
        got = ground_instances([parse_term("p(f(X))")], 2, AF)
        assert got == {parse_term("p(f(a))"), parse_term("p(f(f(a)))")}

    def test_empty(self):
        assert ground_instances([], 3, AF) == set()
        assert herbrand_tp(P1, 0, 3) == set()

    def test_same_herbrand_model(self):
        both = [parse_term("p(f(X))"), parse_term("p(f(a))")]
        assert ground_instances(both, 2, AF) == ground_instances(both[:1], 2, AF)
        assert herbrand_tp(P1, 1, 2, AF) == herbrand_tp(P2, 1, 2, AF)

    def test_alphabet_adds_a_constant_when_missing(self):
        assert ("a", 0) in herbrand_alphabet(parse_program("p(f(X))."))
        assert ("0", 0) in herbrand_alphabet(NAT)

    @pytest.mark.parametrize(
        "prog, alphabet, depth, k",
        [
            (P1, AF, 4, 2),
            (P2, AF, 4, 2),
            (NAT, [("0", 0), ("s", 1)], 3, 5),
            (program().restrict([("pq", 4)]), [("0", 0), ("s", 1), (".", 2), ("[]", 0)], 1, 3),
        ],
    )
    def test_bridge(self, prog, alphabet, depth, k):
        lifted = ground_instances(iterate(prog, k).atoms, depth, alphabet)
        assert lifted
        assert herbrand_tp(prog, k, depth, alphabet) == lifted


@given(interpretations, interpretations)
def test_operator_monotone(i, j):
    union = AtomSet(list(i) + list(j))
    assert tpi(RULES, i).issubset(tpi(RULES, union))


@given(interpretations, renamings())
def test_operator_invariant_under_renaming_the_input(i, r):
    renamed = [apply(r, a) for a in i]
    assert tpi(RULES, renamed) == tpi(RULES, i)


@given(interpretations)
def test_operator_output_closed_under_renaming(i):
    out = tpi(RULES, i)
    assert all(rename(a) in out for a in out)
