"""Register snapshots of the 4x4 cross-wired array, transcribed from the
published t=0..3 matrices. Each cell is a sum in compact ``a11b11`` form;
"0" marks an idle cell."""

import re

from crossmesh.matrix import SymbolicSum

SNAPSHOTS_4 = {
    0: [
        ["a11b11", "a21b12", "a31b13", "a41b14"],
        ["0", "0", "0", "0"],
        ["0", "0", "0", "0"],
        ["0", "0", "0", "0"],
    ],
    1: [
        ["a11b11+a12b21", "a21b12+a22b22", "a31b13+a32b23", "a41b14+a42b24"],
        ["a11b12", "a31b11", "a21b14", "a41b13"],
        ["0", "0", "0", "0"],
        ["0", "0", "0", "0"],
    ],
    2: [
        ["a11b11+a12b21+a13b31", "a21b12+a22b22+a23b32", "a31b13+a32b23+a33b33", "a41b14+a42b24+a43b34"],
        ["a11b12+a12b22", "a31b11+a32b21", "a21b14+a22b24", "a41b13+a42b23"],
        ["a31b12", "a11b14", "a41b11", "a21b13"],
        ["0", "0", "0", "0"],
    ],
    3: [
        ["a11b11+a12b21+a13b31+a14b41", "a21b12+a22b22+a23b32+a24b42",
         "a31b13+a32b23+a33b33+a34b43", "a41b14+a42b24+a43b34+a44b44"],
        ["a11b12+a12b22+a13b32", "a31b11+a32b21+a33b31", "a21b14+a22b24+a23b34", "a41b13+a42b23+a43b33"],
        ["a31b12+a32b22", "a11b14+a12b24", "a41b11+a42b21", "a21b13+a22b23"],
        ["a31b14", "a41b12", "a11b13", "a21b11"],
    ],
}

ASSIGNMENT_4 = """
11 22 33 44
12 31 24 43
32 14 41 23
34 42 13 21
"""

ARRIVAL_4 = [[1, 5, 15, 10], [16, 2, 12, 7], [6, 9, 3, 13], [11, 14, 8, 4]]

# verbatim, including the misprint at row 2, column 7
ASSIGNMENT_7_PRINTED = """
11 22 33 44 55 66 77
12 31 24 53 46 75 76
32 14 51 26 73 47 65
34 52 16 71 27 63 45
54 36 72 17 61 25 43
56 74 37 62 15 41 23
76 57 64 35 42 13 21
"""

_TERM = re.compile(r"a(\d)(\d)b(\d)(\d)")


def parse_sum(text: str) -> SymbolicSum:
    if text.strip() == "0":
        return SymbolicSum()
    terms = []
    for tok in text.split("+"):
        m = _TERM.fullmatch(tok.strip())
        assert m, tok
        i, k, k2, j = map(int, m.groups())
        terms.append(((i, k), (k2, j)))
    return SymbolicSum(terms)


def snapshot(t: int) -> list[list[SymbolicSum]]:
    return [[parse_sum(x) for x in row] for row in SNAPSHOTS_4[t]]
