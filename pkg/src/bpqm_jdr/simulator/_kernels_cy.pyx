# cython: language_level=3
"""In-place gate application on a state vector; qubit 0 is the most significant bit."""


def apply_1q(double complex[::1] psi, const double complex[:, ::1] u, int target, int n):
    cdef Py_ssize_t size = psi.shape[0]
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n - 1 - target)
    cdef Py_ssize_t base, i, j
    cdef double complex a, b
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    for base in range(0, size, 2 * stride):
        for i in range(base, base + stride):
            j = i + stride
            a = psi[i]
            b = psi[j]
            psi[i] = u00 * a + u01 * b
            psi[j] = u10 * a + u11 * b


def apply_2q(double complex[::1] psi, const double complex[:, ::1] u, int qa, int qb, int n):
    # u acts on (qa, qb) with qa as the high bit of its 4x4 index
    cdef Py_ssize_t size = psi.shape[0]
    cdef Py_ssize_t sa = (<Py_ssize_t>1) << (n - 1 - qa)
    cdef Py_ssize_t sb = (<Py_ssize_t>1) << (n - 1 - qb)
    cdef Py_ssize_t mask = sa | sb
    cdef Py_ssize_t i, r, c
    cdef Py_ssize_t idx[4]
    cdef double complex amp[4]
    cdef double complex acc
    for i in range(size):
        if i & mask:
            continue
        idx[0] = i
        idx[1] = i + sb
        idx[2] = i + sa
        idx[3] = i + sa + sb
        for r in range(4):
            amp[r] = psi[idx[r]]
        for r in range(4):
            acc = 0
            for c in range(4):
                acc = acc + u[r, c] * amp[c]
            psi[idx[r]] = acc
