"""Golden values reproduced by the ``examples`` command.

``EXPANSION_3_7`` is the signed term list of
``prod_{i in I, j in I^c} (a_i a_j - 1)`` for ``k = 3``, ``n = 7``: each
entry ``(sign, n)`` stands for ``sign * A_n * S_{n_1} S_{n_2} S_{n_3}``.
"""

EXPANSION_3_7 = [
    (+1, (4, 4, 4)),
    (-1, (3, 4, 4)),
    (+1, (3, 3, 4)), (+1, (2, 4, 4)),
    (-1, (3, 3, 3)), (-1, (2, 3, 4)), (-1, (1, 4, 4)),
    (+1, (2, 3, 3)), (+1, (2, 2, 4)), (+1, (1, 3, 4)), (+1, (0, 4, 4)),
    (-1, (2, 2, 3)), (-1, (1, 3, 3)), (-1, (1, 2, 4)), (-1, (0, 3, 4)),
    (+1, (2, 2, 2)), (+1, (1, 2, 3)), (+1, (0, 3, 3)), (+1, (1, 1, 4)), (+1, (0, 2, 4)),
    (-1, (1, 2, 2)), (-1, (1, 1, 3)), (-1, (0, 2, 3)), (-1, (0, 1, 4)),
    (+1, (1, 1, 2)), (+1, (0, 2, 2)), (+1, (0, 1, 3)), (+1, (0, 0, 4)),
    (-1, (1, 1, 1)), (-1, (0, 1, 2)), (-1, (0, 0, 3)),
    (+1, (0, 1, 1)), (+1, (0, 0, 2)),
    (-1, (0, 0, 1)),
    (+1, (0, 0, 0)),
]

# R for k = 3, bound = 4, weight 6
R_3_4_6_ORDER = [(2, 2, 2), (1, 2, 3), (0, 3, 3), (1, 1, 4), (0, 2, 4)]
R_3_4_6 = [
    [1, 2, 1, 1, 3],
    [0, 1, 1, 1, 2],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]

# surviving remainder determinants for m = (0, 2, 4), as (sign, sorted exponents)
CANCEL_024 = [
    (-1, (1, 3, 5)), (-1, (2, 3, 4)),
    (-1, (1, 2, 6)), (+1, (2, 3, 4)),
    (+1, (1, 2, 6)), (+1, (1, 3, 5)),
]

# the two-variable case at a = (2, 3), N = 2
N2_POINT = (2, 3)
N2_HORIZON = 2
N2_VALUE = 6
