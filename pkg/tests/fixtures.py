"""Hand-built modules used by several test files."""

from qhkit.algebra import AModule
from qhkit.corpus import E1
from qhkit.linalg import ZZ, Matrix


def torsion_fixture():
    """Over E1/ZZ: rank 2, the arrow acts by 2, so the cokernel of Delta(2) -> M is not free."""
    A = E1(ZZ).algebra
    act = {"e1": [[1, 0], [0, 0]], "e2": [[0, 0], [0, 1]], "a": [[0, 0], [2, 0]]}
    return AModule(A, [Matrix(ZZ, act[n], 2) for n in A.names], [0, 1], name="torsion2")
