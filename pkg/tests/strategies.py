"""Hypothesis strategies over a small signature: a/0, b/0, f/1, g/2, p/2."""

from hypothesis import strategies as st

from ssem.terms import Struct, Var

# A fixed pool keeps collisions (and therefore interesting unifiers) likely.
POOL = [Var(n) for n in ("X", "Y", "Z", "W")]
CONSTANTS = [Struct("a"), Struct("b")]

variables = st.sampled_from(POOL)
constants = st.sampled_from(CONSTANTS)


def terms(max_leaves: int = 8, with_vars: bool = True):
    leaves = st.one_of(variables, constants) if with_vars else constants
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(lambda t: Struct("f", [t]), kids),
            st.builds(lambda s, t: Struct("g", [s, t]), kids, kids),
        ),
        max_leaves=max_leaves,
    )


def atoms(max_leaves: int = 6):
    return st.builds(lambda s, t: Struct("p", [s, t]), terms(max_leaves), terms(max_leaves))


ground_terms = terms(with_vars=False)


@st.composite
def substitutions(draw, codomain=None):
    codomain = codomain or terms(4)
    dom = draw(st.lists(variables, unique=True, max_size=len(POOL)))
    return {v: draw(codomain) for v in dom}


@st.composite
def renamings(draw):
    """A bijection from the pool onto fresh variables."""
    return {v: Var(v.name + "_" + str(draw(st.integers(0, 9)))) for v in POOL}
