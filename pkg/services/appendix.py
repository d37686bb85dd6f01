"""
Appendix Tables
Published Hilbert functions of the external (r=1), central (r=0) and internal (r=-1)
algebras of the complete graphs K2..K9, with the dimensions printed next to them.
"""

import logging
from typing import Dict, List, Optional, Tuple

from services.errors import InvalidGraphError

logger = logging.getLogger(__name__)

KIND_TO_R = {"external": 1, "central": 0, "internal": -1}

# Rows checked routinely; larger ones are stretch targets.
GATED = {"external": range(2, 8), "central": range(2, 8), "internal": range(3, 8)}

_TABLES: Dict[str, Dict[int, Tuple[int, ...]]] = {
    "external": {
        2: (1, 2),
        3: (1, 3, 6, 7),
        4: (1, 4, 10, 20, 31, 40, 38),
        5: (1, 5, 15, 35, 70, 121, 185, 255, 310, 335, 291),
        6: (1, 6, 21, 56, 126, 252, 456, 756, 1161, 1666, 2232, 2796, 3281, 3546, 3516, 2932),
        7: (1, 7, 28, 84, 210, 462, 924, 1709, 2954, 4809, 7420, 10906, 15309, 20559, 26454, 32655,
            38591, 43589, 46984, 47649, 45150, 36961),
        8: (1, 8, 36, 120, 330, 792, 1716, 3432, 6427, 11376, 19160, 30864, 47748, 71184, 102524,
            142920, 193117, 253240, 322596, 399344, 480390, 561472, 637400, 701296, 746089, 765640,
            748532, 691720, 561948),
        9: (1, 9, 45, 165, 495, 1287, 3003, 6435, 12870, 24301, 43677, 75177, 124485, 199035, 308187,
            463287, 677520, 965493, 1342513, 1823553, 2421927, 3147723, 4005819, 4993839, 6100350,
            7303545, 8570601, 9855829, 11101599, 12241305, 13203705, 13902291, 14254524, 14195199,
            13575951, 12369033, 10026505),
    },
    "central": {
        2: (1,),
        3: (1, 3, 3),
        4: (1, 4, 10, 16, 19, 16),
        5: (1, 5, 15, 35, 65, 101, 135, 155, 155, 125),
        6: (1, 6, 21, 56, 126, 246, 426, 666, 951, 1246, 1506, 1686, 1731, 1626, 1296),
        7: (1, 7, 28, 84, 210, 462, 917, 1667, 2807, 4417, 6538, 9142, 12117, 15267, 18327, 20958,
            22827, 23667, 23107, 21112, 16807),
        8: (1, 8, 36, 120, 330, 792, 1716, 3424, 6371, 11152, 18488, 29184, 44052, 63792, 88852,
            119288, 154645, 193880, 235292, 276592, 315078, 347880, 371820, 384112, 382817, 364232,
            328392, 262144),
        9: (1, 9, 45, 165, 495, 1287, 3003, 6435, 12861, 24229, 43353, 74097, 121515, 191907, 292743,
            432399, 619677, 863109, 1170073, 1545777, 1992195, 2506983, 3082599, 3705795, 4357593,
            5013801, 5645313, 6219649, 6703245, 7064073, 7267815, 7285959, 7100739, 6660495, 5966613,
            4782969),
    },
    "internal": {
        3: (1,),
        4: (1, 4, 6, 4, 1),
        5: (1, 5, 15, 30, 45, 51, 45, 30, 15),
        6: (1, 6, 21, 56, 120, 216, 336, 456, 546, 580, 546, 456, 336, 216),
        7: (1, 7, 28, 84, 210, 455, 875, 1520, 2415, 3535, 4795, 6055, 7140, 7875, 8135, 7875, 7140,
            6055, 4795, 3430),
        8: (1, 8, 36, 120, 330, 792, 1708, 3368, 6147, 10480, 16808, 25488, 36688, 50288, 65808,
            82384, 98813, 113688, 125588, 133288, 135954, 133288, 125588, 113688, 98533, 81488, 61440),
        9: (1, 9, 45, 165, 495, 1287, 3003, 6426, 12789, 23905, 42273, 71127, 114387, 176463, 261891,
            374808, 518301, 693693, 899857, 1132677, 1384803, 1645791, 1902663, 2140866, 2345553,
            2503053, 2602341, 2636263, 2602341, 2502423, 2342907, 2134062, 1881243, 1596861, 1240029),
    },
}

# Dimensions as printed beside each row. The central K8 and K9 figures do not match their
# rows (the K9 row sums to the figure printed for K8).
_STATED_DIMENSIONS: Dict[str, Dict[int, int]] = {
    "external": {2: 3, 3: 17, 4: 144, 5: 1623, 6: 22804, 7: 383415, 8: 7501422, 9: 167341283},
    "central": {2: 1, 3: 7, 4: 66, 5: 792, 6: 11590, 7: 200469, 8: 90759016, 9: 2301604074},
    "internal": {3: 1, 4: 16, 5: 237, 6: 3892, 7: 72425, 8: 1521810, 9: 35794801},
}


def _check_kind(kind: str) -> None:
    if kind not in _TABLES:
        raise InvalidGraphError(f"Unknown algebra kind {kind!r}; expected external, central or internal")


def appendix_row(kind: str, n: int) -> Optional[Tuple[int, ...]]:
    _check_kind(kind)
    return _TABLES[kind].get(n)


def stated_dimension(kind: str, n: int) -> Optional[int]:
    _check_kind(kind)
    return _STATED_DIMENSIONS[kind].get(n)


def appendix_rows(kind: str, max_n: int = 7, gated_only: bool = True) -> List[Tuple[int, Tuple[int, ...]]]:
    """(n, coefficients) for every tabulated K_n with n <= max_n."""
    _check_kind(kind)
    rows = sorted(_TABLES[kind].items())
    if gated_only:
        rows = [(n, c) for n, c in rows if n in GATED[kind]]
    return [(n, c) for n, c in rows if n <= max_n]


def inconsistent_rows() -> List[Tuple[str, int, int, int]]:
    """(kind, n, stated dimension, coefficient sum) wherever the two disagree."""
    out = []
    for kind, table in _TABLES.items():
        for n, coeffs in table.items():
            stated = _STATED_DIMENSIONS[kind][n]
            if stated != sum(coeffs):
                out.append((kind, n, stated, sum(coeffs)))
    return out
