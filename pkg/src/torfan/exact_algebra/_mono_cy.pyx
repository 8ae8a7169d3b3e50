# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernel; interface mirrors ``_mono_py``."""

KERNEL = "cython"


def mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return tuple(out)


def mono_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if a[i] > b[i]:
            return False
    return True


def mono_div(tuple b, tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = b[i] - a[i]
    return tuple(out)


def mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] if a[i] > b[i] else b[i]
    return tuple(out)


def grevlex_key(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * (n + 1)
    cdef object total = 0
    for i in range(n):
        total = total + a[i]
        out[n - i] = -a[i]
    out[0] = total
    return tuple(out)
