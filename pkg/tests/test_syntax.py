import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import atoms, terms
from ssem.checks import CheckReport
from ssem.nqueens import NQUEENS_TEXT, program
from ssem.syntax import ParseError, parse_clause, parse_program, parse_query, parse_term, report_encode, to_text
from ssem.terms import NIL, Clause, Program, Struct, Var, canonical, is_variant, mklist, peano


def test_fact_program():
    prog = parse_program("p(f(X)).")
    assert len(prog.clauses) == 1 and prog.clauses[0].body == ()
    assert to_text(prog.clauses[0]) == "p(f(X))."


def test_recursive_clause():
    c = parse_clause("pqs(s(I),Cs,Us,[_|Ds]) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).")
    assert c.head.key == ("pqs", 4) and [b.key for b in c.body] == [("pqs", 4), ("pq", 4)]
    i = c.head.args[0].args[0]
    assert c.body[0].args[0] is i and c.body[1].args[0].args[0] is i
    # the two anonymous variables are distinct and occur once
    anon1 = c.head.args[3].args[0]
    anon2 = c.body[0].args[2].args[0]
    assert isinstance(anon1, Var) and isinstance(anon2, Var) and anon1 is not anon2


def test_variables_are_scoped_per_clause():
    prog = parse_program("p(X). q(X).")
    assert prog.clauses[0].head.args[0] is not prog.clauses[1].head.args[0]


@pytest.mark.parametrize(
    "text, line, column",
    [("p(X", 1, 4), ("p(X).\nq(,).", 2, 3), ("p(X) :- .", 1, 9), ("P(x).", 1, 1), ("p(x)", 1, 5)],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as e:
        parse_program(text)
    assert (e.value.line, e.value.column) == (line, column)


def test_comments_and_integers():
    prog = parse_program("% header\nn(3). % three\n")
    assert prog.clauses[0].head.args[0] == peano(3)


def test_query_forms():
    assert len(parse_query("?- p(X), q(X).")) == 2
    assert len(parse_query("p(Y)")) == 1


@pytest.mark.parametrize(
    "term, text",
    [
        (peano(2), "2"),
        (peano(0), "0"),
        (Struct("s", [Var("N")]), "s(N)"),
        (mklist([peano(1), peano(2)], NIL), "[1,2]"),
        (mklist([Struct("a")], Var("T")), "[a|T]"),
        (NIL, "[]"),
    ],
)
def test_printing(term, text):
    assert to_text(term) == text


def test_unit_clause_with_anonymous_variables():
    assert to_text(program().clauses[0]) == "pqs(0,_G1,_G2,_G3)."


def test_substitution():
    x, y = Var("X"), Var("Y")
    assert to_text({y: Struct("f", [x])}) == "{Y = f(X)}"


def test_name_clash_falls_back_to_fresh_names():
    x1, x2 = Var("X"), Var("X")
    out = to_text(Struct("p", [x1, x2]))
    a, b = parse_term(out).args
    assert a is not b


def test_printing_is_deterministic():
    c = program().clauses[1]
    assert to_text(c) == to_text(c)


def test_corpus_round_trip():
    original = parse_program(NQUEENS_TEXT)
    again = parse_program(to_text(original))
    assert [canonical(c) for c in original.clauses] == [canonical(c) for c in again.clauses]


def _with_lists(max_leaves=6):
    base = terms(max_leaves)
    return st.one_of(
        base,
        st.builds(lambda xs, tail: mklist(xs, tail), st.lists(base, max_size=3), st.one_of(st.just(NIL), base)),
        st.builds(peano, st.integers(0, 5)),
    )


@st.composite
def clauses(draw):
    def atom():
        name = draw(st.sampled_from(["p", "q", "r"]))
        return Struct(name, draw(st.lists(_with_lists(), max_size=3)))

    return Clause(atom(), tuple(atom() for _ in range(draw(st.integers(0, 3)))))


@given(st.lists(clauses(), min_size=1, max_size=4))
def test_round_trip_up_to_renaming(cs):
    prog = Program(tuple(cs))
    text = to_text(prog)
    again = parse_program(text)
    assert [canonical(c) for c in again.clauses] == [canonical(c) for c in prog.clauses]
    assert to_text(again) == text


@given(atoms())
def test_term_round_trip(t):
    assert is_variant(parse_term(to_text(t)), t)


def _report(**kw):
    base = dict(check="correctness", program="nqueens", spec="S", verdict="pass", bounds="i=1")
    base.update(kw)
    return CheckReport(**base)


def test_report_text_lines():
    r = _report(statistics={"sampled_atoms": 12})
    out = report_encode(r)
    assert out.splitlines()[:5] == ["schema: v1", "check: correctness", "program: nqueens", "spec: S", "verdict: pass"]
    assert "stat.sampled_atoms: 12" in out
    assert "elapsed" not in out


def test_report_failing_case_lists_head():
    r = _report(verdict="fail", counterexamples=[{"clause": "2", "body": "[]", "head": "pqs(1,[1|_G1],_G2,_G3)"}])
    assert "head=pqs(1,[1|_G1],_G2,_G3)" in report_encode(r)


def test_report_json_and_timing():
    r = _report(elapsed=1.23456, targets=[{"atom": "pq(_G1)", "clause": 3, "body_levels": "-"}])
    d = json.loads(report_encode(r, "json", timing=True))
    assert d["schema"] == "v1" and d["elapsed_seconds"] == 1.235
    assert d["targets"][0]["clause"] == 3
    assert "elapsed_seconds" not in json.loads(report_encode(r, "json"))


def test_report_unknown_format():
    with pytest.raises(ValueError):
        report_encode(_report(), "yaml")
