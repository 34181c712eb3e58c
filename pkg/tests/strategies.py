"""Hypothesis strategies shared by several test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from budq.presentation import (
    AugmentedPresentation,
    GeneratorId,
    Letter,
    OperatorRelation,
    PrimaryRelation,
    power_word,
)


@st.composite
def presentations(draw, max_primary=3, max_operator=1, max_len=3):
    """Small random augmented presentations, some with operator generators."""
    np_ = draw(st.integers(1, max_primary))
    no = draw(st.integers(0, max_operator))
    prim = [f"x{i}" for i in range(np_)]
    ops = [f"u{i}" for i in range(no)]
    gens = [GeneratorId(n) for n in prim] + [GeneratorId(n, "operator") for n in ops]
    letters = st.builds(Letter, st.sampled_from(prim + ops), st.sampled_from([1, -1]))
    words = st.lists(letters, max_size=max_len).map(tuple)
    prels = draw(
        st.lists(
            st.builds(PrimaryRelation, st.sampled_from(prim), st.sampled_from(prim), words),
            max_size=3,
        )
    )
    powers = st.builds(lambda g, k: OperatorRelation(power_word(g, k)), st.sampled_from(prim), st.integers(-4, 4))
    orels = draw(st.lists(st.one_of(powers, st.builds(OperatorRelation, words)), max_size=2))
    return AugmentedPresentation(tuple(gens), tuple(prels), tuple(orels))
