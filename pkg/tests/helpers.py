from sumcrit.geometry import PointSet

from oracle import pts


def P(*rows) -> PointSet:
    return PointSet(pts(*rows))


SQUARE = P((0, 0), (1, 0), (0, 1), (1, 1))
SQUARE_CENTER = SQUARE.union(pts(("1/2", "1/2")))
TRIANGLE = P((0, 0), (1, 0), (0, 1))
TRI_MID = P((0, 0), (2, 0), (0, 2), (1, 0), (0, 1), (1, 1))
CUBE = P(*[(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
OCTAHEDRON = P((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
PRISM = P((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1))


def simplex(d: int) -> PointSet:
    return PointSet([tuple(int(i == j) for j in range(d)) for i in range(d)] + [(0,) * d])
