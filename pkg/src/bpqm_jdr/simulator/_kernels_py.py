"""Numpy versions of the gate kernels, used when the compiled module is missing."""
import numpy as np


def apply_1q(psi, u, target, n):
    view = psi.reshape((1 << target, 2, -1))
    view[...] = np.einsum("ij,ajb->aib", u, view)


def apply_2q(psi, u, qa, qb, n):
    tensor = psi.reshape((2,) * n)
    moved = np.moveaxis(tensor, (qa, qb), (0, 1))
    shape = moved.shape
    out = (u @ moved.reshape(4, -1)).reshape(shape)
    tensor[...] = np.moveaxis(out, (0, 1), (qa, qb))
