"""Reference GL_6 decompositions of the low-weight cohomology, keyed by m parity and imbalance H.

Each entry maps H to {highest weight: multiplicity}.  The weight lists were
transcribed by hand; one non-dominant label was replaced by its dominant
correction.
"""

Z = (0, 0, 0, 0, 0, 0)

GENERATORS = {
    "even": {
        3: {(3, 0, 0, 0, 0, 0): 1},
        1: {(1, 0, 0, 0, 0, 0): 1, (2, 0, 0, 0, 0, -1): 1},
        -1: {(0, 0, 0, 0, 0, -1): 1, (1, 0, 0, 0, -1, -1): 1},
        -3: {(0, 0, 0, -1, -1, -1): 1},
    },
    "odd": {
        3: {(1, 1, 1, 0, 0, 0): 1},
        1: {(1, 0, 0, 0, 0, 0): 1, (1, 1, 0, 0, 0, -1): 1},
        -1: {(0, 0, 0, 0, 0, -1): 1, (1, 0, 0, 0, 0, -2): 1},
        -3: {(0, 0, 0, 0, 0, -3): 1},
    },
}

WEIGHT_TWO = {
    "even": {
        4: {(2, 2, 0, 0, 0, 0): 1},
        2: {(2, 0, 0, 0, 0, 0): 1, (2, 1, 0, 0, 0, -1): 1},
        0: {(1, 0, 0, 0, 0, -1): 1, (1, 1, 0, 0, 0, -2): 1, (2, 0, 0, 0, -1, -1): 1},
        -2: {(0, 0, 0, 0, -1, -1): 1, (1, 0, 0, 0, -1, -2): 1},
        -4: {(0, 0, 0, 0, -2, -2): 1},
    },
    "odd": {
        4: {(2, 2, 0, 0, 0, 0): 1},
        2: {(1, 1, 0, 0, 0, 0): 1, (2, 1, 0, 0, 0, -1): 1},
        0: {(1, 0, 0, 0, 0, -1): 1, (1, 1, 0, 0, 0, -2): 1, (2, 0, 0, 0, -1, -1): 1},
        -2: {(0, 0, 0, 0, 0, -2): 1, (1, 0, 0, 0, -1, -2): 1},
        -4: {(0, 0, 0, 0, -2, -2): 1},
    },
}

EXTERIOR_SQUARE = {
    "even": {
        6: {(3, 3, 0, 0, 0, 0): 1, (5, 1, 0, 0, 0, 0): 1},
        4: {
            (2, 2, 0, 0, 0, 0): 1,
            (3, 1, 0, 0, 0, 0): 2,
            (3, 2, 0, 0, 0, -1): 1,
            (4, 0, 0, 0, 0, 0): 2,
            (4, 1, 0, 0, 0, -1): 1,
            (5, 0, 0, 0, 0, -1): 1,
        },
        2: {
            (1, 1, 0, 0, 0, 0): 2,
            (2, 0, 0, 0, 0, 0): 2,
            (2, 1, 0, 0, 0, -1): 3,
            (2, 2, 0, 0, -1, -1): 1,
            (3, 0, 0, 0, 0, -1): 4,
            (3, 1, 0, 0, -1, -1): 1,
            (3, 1, 0, 0, 0, -2): 1,
            (4, 0, 0, 0, -1, -1): 2,
        },
        0: {
            Z: 1,
            (1, 0, 0, 0, 0, -1): 4,
            (1, 1, 0, 0, -1, -1): 2,
            (1, 1, 0, 0, 0, -2): 1,
            (2, 0, 0, 0, -1, -1): 5,
            (2, 0, 0, 0, 0, -2): 2,
            (2, 1, 0, -1, -1, -1): 1,
            (2, 1, 0, 0, -1, -2): 1,
            (3, 0, 0, -1, -1, -1): 2,
            (3, 0, 0, 0, -1, -2): 1,
        },
        -2: {
            (0, 0, 0, 0, -1, -1): 4,
            (1, 0, 0, -1, -1, -1): 4,
            (1, 0, 0, 0, -1, -2): 3,
            (1, 1, -1, -1, -1, -1): 1,
            (1, 1, 0, 0, -2, -2): 1,
            (2, 0, -1, -1, -1, -1): 1,
            (2, 0, 0, -1, -1, -2): 2,
        },
        -4: {
            (0, 0, -1, -1, -1, -1): 2,
            (0, 0, 0, -1, -1, -2): 2,
            (0, 0, 0, 0, -2, -2): 1,
            (1, -1, -1, -1, -1, -1): 1,
            (1, 0, -1, -1, -1, -2): 1,
            (1, 0, 0, -1, -2, -2): 1,
        },
        -6: {(-1, -1, -1, -1, -1, -1): 1, (0, 0, -1, -1, -2, -2): 1},
    },
    "odd": {
        6: {(1, 1, 1, 1, 1, 1): 1, (2, 2, 1, 1, 0, 0): 1},
        4: {
            (1, 1, 1, 1, 0, 0): 2,
            (2, 1, 1, 0, 0, 0): 2,
            (2, 2, 0, 0, 0, 0): 1,
            (1, 1, 1, 1, 1, -1): 1,
            (2, 1, 1, 1, 0, -1): 1,
            (2, 2, 1, 0, 0, -1): 1,
        },
        2: {
            (1, 1, 0, 0, 0, 0): 4,
            (1, 1, 1, 0, 0, -1): 4,
            (2, 1, 0, 0, 0, -1): 3,
            (1, 1, 1, 1, -1, -1): 1,
            (2, 2, 0, 0, -1, -1): 1,
            (1, 1, 1, 1, 0, -2): 1,
            (2, 1, 1, 0, 0, -2): 2,
        },
        0: {
            Z: 1,
            (1, 0, 0, 0, 0, -1): 4,
            (1, 1, 0, 0, -1, -1): 2,
            (2, 0, 0, 0, -1, -1): 1,
            (1, 1, 0, 0, 0, -2): 5,
            (2, 0, 0, 0, 0, -2): 2,
            (1, 1, 1, 0, -1, -2): 1,
            (2, 1, 0, 0, -1, -2): 1,
            (1, 1, 1, 0, 0, -3): 2,
            (2, 1, 0, 0, 0, -3): 1,
        },
        -2: {
            (0, 0, 0, 0, -1, -1): 2,
            (0, 0, 0, 0, 0, -2): 2,
            (1, 0, 0, 0, -1, -2): 3,
            (1, 1, 0, 0, -2, -2): 1,
            (1, 0, 0, 0, 0, -3): 4,
            (1, 1, 0, 0, -1, -3): 1,
            (2, 0, 0, 0, -1, -3): 1,
            (1, 1, 0, 0, 0, -4): 2,
        },
        -4: {
            (0, 0, 0, 0, -2, -2): 1,
            (0, 0, 0, 0, -1, -3): 2,
            (1, 0, 0, 0, -2, -3): 1,
            (0, 0, 0, 0, 0, -4): 2,
            (1, 0, 0, 0, -1, -4): 1,
            (1, 0, 0, 0, 0, -5): 1,
        },
        -6: {(0, 0, 0, 0, -3, -3): 1, (0, 0, 0, 0, -1, -5): 1},
    },
}

RELATIONS = {
    "even": {
        6: {(3, 3, 0, 0, 0, 0): 1, (5, 1, 0, 0, 0, 0): 1},
        4: {
            (3, 1, 0, 0, 0, 0): 2,
            (3, 2, 0, 0, 0, -1): 1,
            (4, 0, 0, 0, 0, 0): 2,
            (4, 1, 0, 0, 0, -1): 1,
            (5, 0, 0, 0, 0, -1): 1,
        },
        2: {
            (1, 1, 0, 0, 0, 0): 2,
            (2, 0, 0, 0, 0, 0): 1,
            (2, 1, 0, 0, 0, -1): 2,
            (2, 2, 0, 0, -1, -1): 1,
            (3, 0, 0, 0, 0, -1): 4,
            (3, 1, 0, 0, -1, -1): 1,
            (3, 1, 0, 0, 0, -2): 1,
            (4, 0, 0, 0, -1, -1): 2,
        },
        0: {
            Z: 1,
            (1, 0, 0, 0, 0, -1): 3,
            (1, 1, 0, 0, -1, -1): 2,
            (2, 0, 0, 0, -1, -1): 4,
            (2, 0, 0, 0, 0, -2): 2,
            (2, 1, 0, -1, -1, -1): 1,
            (2, 1, 0, 0, -1, -2): 1,
            (3, 0, 0, -1, -1, -1): 2,
            (3, 0, 0, 0, -1, -2): 1,
        },
        -2: {
            (0, 0, 0, 0, -1, -1): 3,
            (1, 0, 0, -1, -1, -1): 4,
            (1, 0, 0, 0, -1, -2): 2,
            (1, 1, -1, -1, -1, -1): 1,
            (1, 1, 0, 0, -2, -2): 1,
            (2, 0, -1, -1, -1, -1): 1,
            (2, 0, 0, -1, -1, -2): 2,
        },
        -4: {
            (0, 0, -1, -1, -1, -1): 2,
            (0, 0, 0, -1, -1, -2): 2,
            (1, -1, -1, -1, -1, -1): 1,
            (1, 0, -1, -1, -1, -2): 1,
            (1, 0, 0, -1, -2, -2): 1,
        },
        -6: {(-1, -1, -1, -1, -1, -1): 1, (0, 0, -1, -1, -2, -2): 1},
    },
    "odd": {
        6: {(1, 1, 1, 1, 1, 1): 1, (2, 2, 1, 1, 0, 0): 1},
        4: {
            (1, 1, 1, 1, 0, 0): 2,
            (2, 1, 1, 0, 0, 0): 2,
            (1, 1, 1, 1, 1, -1): 1,
            (2, 1, 1, 1, 0, -1): 1,
            (2, 2, 1, 0, 0, -1): 1,
        },
        2: {
            (1, 1, 0, 0, 0, 0): 3,
            (1, 1, 1, 0, 0, -1): 4,
            (2, 1, 0, 0, 0, -1): 2,
            (1, 1, 1, 1, -1, -1): 1,
            (2, 2, 0, 0, -1, -1): 1,
            (1, 1, 1, 1, 0, -2): 1,
            (2, 1, 1, 0, 0, -2): 2,
        },
        0: {
            Z: 1,
            (1, 0, 0, 0, 0, -1): 3,
            (1, 1, 0, 0, -1, -1): 2,
            (1, 1, 0, 0, 0, -2): 4,
            (2, 0, 0, 0, 0, -2): 2,
            (1, 1, 1, 0, -1, -2): 1,
            (2, 1, 0, 0, -1, -2): 1,
            (1, 1, 1, 0, 0, -3): 2,
            (2, 1, 0, 0, 0, -3): 1,
        },
        -2: {
            (0, 0, 0, 0, -1, -1): 2,
            (0, 0, 0, 0, 0, -2): 1,
            (1, 0, 0, 0, -1, -2): 2,
            (1, 1, 0, 0, -2, -2): 1,
            (1, 0, 0, 0, 0, -3): 4,
            (1, 1, 0, 0, -1, -3): 1,
            (2, 0, 0, 0, -1, -3): 1,
            (1, 1, 0, 0, 0, -4): 2,
        },
        -4: {
            (0, 0, 0, 0, -1, -3): 2,
            (1, 0, 0, 0, -2, -3): 1,
            (0, 0, 0, 0, 0, -4): 2,
            (1, 0, 0, 0, -1, -4): 1,
            (1, 0, 0, 0, 0, -5): 1,
        },
        -6: {(0, 0, 0, 0, -3, -3): 1, (0, 0, 0, 0, -1, -5): 1},
    },
}
