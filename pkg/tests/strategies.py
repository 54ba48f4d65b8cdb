"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from agcycles import tautring as tr
from agcycles.ppoly import PPoly

small_fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
ppolys = st.lists(small_fracs, max_size=5).map(PPoly)


@st.composite
def taut_classes(draw, g, mode=tr.RingMode.COMPACT):
    subsets = tr.basis(g, mode)
    chosen = draw(st.lists(st.sampled_from(subsets), max_size=4, unique=True))
    return tr.TautClass(g, {s: draw(ppolys) for s in chosen}, mode)
