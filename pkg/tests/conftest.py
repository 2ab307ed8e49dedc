from fractions import Fraction

from hypothesis import strategies as st

from p3helix.kgroup import ChernCharacter

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-60, max_value=60),
    st.sampled_from([1, 2, 3, 6]),
)

chern_characters = st.builds(ChernCharacter, small_fractions, small_fractions, small_fractions, small_fractions)
