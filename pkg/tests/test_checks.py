import pytest

from ssem.checks import (
    FAIL,
    PASS,
    TRUNCATED,
    SpecBounds,
    Specification,
    check_completeness,
    check_correctness,
    check_level_mapping,
    default_jobs,
    verify_witness,
)
from ssem.nqueens import CLAUSE, SPECS, completeness_witness, member_S, member_S_pq, mutant, pq_atom, program
from ssem.syntax import parse_program, parse_term, report_encode
from ssem.terms import Program, is_variant, variables

SMALL = SpecBounds(i=2, length=4, vars=2)


class TestBounds:
    def test_parse(self):
        assert SpecBounds.parse("i=4,len=6,vars=3") == SpecBounds(i=4, length=6, vars=3)
        assert SpecBounds.parse("junk=0").junk == 0
        assert str(SpecBounds()) == "i=3,len=6,vars=2,junk=1"
        with pytest.raises(ValueError):
            SpecBounds.parse("depth=3")

    def test_widened(self):
        assert SpecBounds(length=4, vars=2).widened() == SpecBounds(length=5, vars=3)

    def test_jobs_from_environment(self, monkeypatch):
        monkeypatch.setenv("SSEM_JOBS", "3")
        assert default_jobs() == 3
        monkeypatch.setenv("SSEM_JOBS", "many")
        assert default_jobs() == 1


class TestCorrectness:
    def test_nqueens_small(self):
        r = check_correctness(program(), SPECS["S"], SMALL)
        assert r.verdict == PASS and r.statistics["sampled_atoms"] > 0
        assert "verdict: pass" in report_encode(r)

    def test_dropped_head_list(self):
        r = check_correctness(mutant("drop-head-ds"), SPECS["S"], SMALL)
        assert r.verdict == FAIL and r.counterexamples
        assert all(c["clause"] == "2" for c in r.counterexamples)
        assert not any(member_S(h) for h in r.violations)
        assert r.counterexamples[0]["head"] in report_encode(r)

    @pytest.mark.parametrize("name", ["swap-us-ds-clause2", "drop-body-clause4"])
    def test_other_mutations(self, name):
        assert check_correctness(mutant(name), SPECS["S"], SMALL).verdict == FAIL

    @pytest.mark.parametrize("name", ["swap-us-ds-clause3", "swap-us-ds-pq-call", "swap-us-ds-clause4"])
    def test_equivalent_rewrites_pass(self, name):
        assert check_correctness(mutant(name), SPECS["S"], SMALL).verdict == PASS

    def test_empty_program(self):
        assert check_correctness(Program(), SPECS["S"], SMALL).verdict == PASS

    def test_budget(self):
        r = check_correctness(program(), SPECS["S"], SMALL, max_tuples=10)
        assert r.verdict == TRUNCATED

    def test_parallel_matches_serial(self):
        for prog in (program(), mutant("drop-head-ds")):
            a = check_correctness(prog, SPECS["S"], SMALL, jobs=1)
            b = check_correctness(prog, SPECS["S"], SMALL, jobs=3)
            assert report_encode(a) == report_encode(b)

    def test_full_program(self):
        r = check_correctness(program(full=True), SPECS["S_full"], SpecBounds(i=2, length=4, vars=1))
        assert r.verdict == PASS


def _unit_spec():
    qa = parse_term("q(a)")
    return Specification("Sq", lambda a: is_variant(a, qa), lambda b: [qa], lambda a: 0)


class TestCompleteness:
    def test_unit_clause_witness(self):
        prog = parse_program("q(a).")
        rule = lambda a: (prog.clauses[0], ())
        assert check_completeness(prog, _unit_spec(), witness=rule).verdict == PASS
        assert check_completeness(prog, _unit_spec()).verdict == PASS

    def test_missing_fact(self):
        r = check_completeness(parse_program("q(b)."), _unit_spec())
        assert r.verdict == FAIL and r.counterexamples[0]["reason"] == "no witness in sample"

    def test_nqueens_with_rule(self):
        r = check_completeness(program(), SPECS["S0"], SMALL, witness=completeness_witness)
        assert r.verdict == PASS and r.statistics["witnessed"] == r.statistics["targets"]
        for t in r.targets:
            assert t["status"] == "ok" and t["clause"] in (1, 2, 3, 4)
        assert "target[1]: atom=" in report_encode(r)

    def test_nqueens_by_search(self):
        r = check_completeness(program(), SPECS["S0"], SMALL)
        assert r.verdict == PASS and r.statistics["tuples"] > 0

    @pytest.mark.parametrize("rule", [completeness_witness, None])
    def test_deleted_fact_clause(self, rule):
        r = check_completeness(mutant("delete-clause3"), SPECS["S0"], SMALL, witness=rule)
        assert r.verdict == FAIL
        assert r.violations and all(is_variant(a, pq_atom(0)) for a in r.violations)

    def test_budget(self):
        r = check_completeness(program(), SPECS["S0"], SMALL, max_tuples=3)
        assert r.verdict == TRUNCATED

    def test_needs_level(self):
        with pytest.raises(ValueError):
            check_completeness(program(), SPECS["S_gl"], SMALL)


class TestVerifyWitness:
    spec = SPECS["S0"]

    def test_accepts_construction(self):
        a = pq_atom(2)
        ok, reason, n = verify_witness(program(), self.spec, a, *completeness_witness(a))
        assert ok and n == 3

    def test_level_must_decrease(self):
        ok, reason, _ = verify_witness(program(), self.spec, pq_atom(1), CLAUSE[4], (pq_atom(1),))
        assert not ok and "level" in reason

    def test_body_must_be_in_spec(self):
        bad = parse_term("pq(A,[A|B],[A|B],[A|C])")
        assert not member_S_pq(bad)
        ok, reason, _ = verify_witness(program(), self.spec, pq_atom(1), CLAUSE[4], (bad,))
        assert not ok and "member" in reason

    def test_head_must_be_reproduced(self):
        ok, reason, _ = verify_witness(program(), self.spec, pq_atom(2), CLAUSE[4], (pq_atom(0),))
        assert not ok and reason == "head not reproduced"


class TestLevelMapping:
    def test_nqueens_mapping(self):
        assert check_level_mapping(SPECS["S0"], SMALL, seed=1).verdict == PASS

    def test_distinct_variable_count_is_invariant(self):
        spec = Specification("S", member_S, SPECS["S"].enumerate, lambda a: len(variables(a)))
        assert check_level_mapping(spec, SMALL, seed=2).verdict == PASS

    def test_name_dependent_mapping_is_caught(self):
        spec = Specification("S", member_S, SPECS["S"].enumerate, lambda a: sum(len(v.name or "") for v in variables(a)))
        r = check_level_mapping(spec, SMALL, seed=3)
        assert r.verdict == FAIL and r.counterexamples

    def test_empty_sample(self):
        assert check_level_mapping(SPECS["S"], SMALL, sample=[]).verdict == PASS

    def test_seed_reproducible(self):
        spec = Specification("S", member_S, SPECS["S"].enumerate, lambda a: sum(len(v.name or "") for v in variables(a)))
        a = report_encode(check_level_mapping(spec, SMALL, seed=5))
        assert a == report_encode(check_level_mapping(spec, SMALL, seed=5))
