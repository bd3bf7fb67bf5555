"""Hypothesis strategies for words and group-ring elements."""

from hypothesis import strategies as st

from l2euler.ring import GroupRingElement
from l2euler.words import reduce_word


def words(ngens=3, max_len=6):
    syl = st.tuples(st.integers(0, ngens - 1), st.sampled_from([-2, -1, 1, 2]))
    return st.lists(syl, max_size=max_len).map(reduce_word)


def elements(ngens=3, max_terms=4):
    pair = st.tuples(words(ngens, 4), st.integers(-3, 3))

    def build(pairs):
        out = GroupRingElement()
        for w, c in pairs:
            out = out + GroupRingElement.word(w, c)
        return out

    return st.lists(pair, max_size=max_terms).map(build)
