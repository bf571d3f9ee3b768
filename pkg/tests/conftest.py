from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quantumcurves.exactnum import RadicalScalar

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("exact")

SQUAREFREE = [1, 2, 3, 5, 6, 7, 10, 11, 13]


def fractions(max_num=9, max_den=9):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def radical_scalars():
    return st.builds(
        lambda pairs: RadicalScalar(dict(pairs)),
        st.lists(
            st.tuples(st.sampled_from(SQUAREFREE), fractions()),
            min_size=0,
            max_size=3,
        ),
    )


def nonzero_radical_scalars():
    return radical_scalars().filter(lambda a: not a.is_zero())
