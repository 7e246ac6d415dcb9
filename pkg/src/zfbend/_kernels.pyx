# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernels; same contract as ``zfbend._fallback``."""
from libc.math cimport log, log1p, sqrt, cos, sin, pow, M_PI
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

NAME = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t stream_key(uint64_t seed, uint64_t index, uint64_t attempt) noexcept nogil:
    return mix64(mix64(mix64(seed) + index) + attempt)


cdef inline double uniform(uint64_t key, uint64_t draw) noexcept nogil:
    cdef uint64_t out = mix64(key + (draw + 1) * GOLDEN)
    return (<double>(out >> 11) + 0.5) * 1.1102230246251565e-16


cdef void fill_rayleigh(double complex* h, int n, uint64_t key) noexcept nogil:
    cdef int j
    cdef double r, th
    for j in range(n * n):
        r = sqrt(-log(uniform(key, 2 * j)))
        th = 2.0 * M_PI * uniform(key, 2 * j + 1)
        h[j] = r * cos(th) + 1j * (r * sin(th))


cdef inline double abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef int eta_of(double complex* a, int n, double rtol, double complex* x,
                double* colmax, int* perm, double* eta) noexcept nogil:
    """In-place LU of ``a`` (row-major), ``eta = ||a^-1||_F**2``.

    Returns -1 on success, else the failing elimination step.  Pivots are
    compared by squared magnitude against ``(rtol * colmax)**2``.
    """
    cdef int i, j, k, p
    cdef double mag, best, tmpd
    cdef double complex t, piv
    for j in range(n):
        best = 0.0
        for i in range(n):
            mag = abs2(a[i * n + j])
            if mag > best:
                best = mag
        colmax[j] = best
        perm[j] = j
    for k in range(n):
        p = k
        best = abs2(a[k * n + k])
        for i in range(k + 1, n):
            mag = abs2(a[i * n + k])
            if mag > best:
                best = mag
                p = i
        if best == 0.0 or best < rtol * rtol * colmax[k]:
            return k
        if p != k:
            for j in range(n):
                t = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = t
            i = perm[k]
            perm[k] = perm[p]
            perm[p] = i
        piv = a[k * n + k]
        for i in range(k + 1, n):
            a[i * n + k] = a[i * n + k] / piv
            t = a[i * n + k]
            for j in range(k + 1, n):
                a[i * n + j] = a[i * n + j] - t * a[k * n + j]
    # x = P, then forward and back substitution row by row
    for i in range(n):
        for j in range(n):
            x[i * n + j] = 1.0 if perm[i] == j else 0.0
    for i in range(1, n):
        for k in range(i):
            t = a[i * n + k]
            for j in range(n):
                x[i * n + j] = x[i * n + j] - t * x[k * n + j]
    for i in range(n - 1, -1, -1):
        for k in range(i + 1, n):
            t = a[i * n + k]
            for j in range(n):
                x[i * n + j] = x[i * n + j] - t * x[k * n + j]
        piv = 1.0 / a[i * n + i]
        for j in range(n):
            x[i * n + j] = x[i * n + j] * piv
    tmpd = 0.0
    for j in range(n * n):
        tmpd += x[j].real * x[j].real + x[j].imag * x[j].imag
    eta[0] = tmpd
    return -1


def exp_chunk(double rho, int n, seed, long long start, long long stop):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef double x = pow(10.0, rho / 10.0)
    cdef long long i, count = 0
    cdef double g, v, mean = 0.0, m2 = 0.0, d
    with nogil:
        for i in range(start, stop):
            g = -log(uniform(stream_key(s, <uint64_t>i, 0), 0))
            v = n * log1p(x * g / n)
            count += 1
            d = v - mean
            mean += d / count
            m2 += d * (v - mean)
    return count, mean, m2


def zf_chunk(double rho, int n, seed, long long start, long long stop, double rtol=1e-12):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef double x = pow(10.0, rho / 10.0)
    cdef long long i, count = 0, resampled = 0
    cdef uint64_t attempt
    cdef double eta, v, mean = 0.0, m2 = 0.0, d
    cdef int nn = n * n
    cdef double complex* a = <double complex*> malloc(2 * nn * sizeof(double complex))
    cdef double* colmax = <double*> malloc(n * sizeof(double))
    cdef int* perm = <int*> malloc(n * sizeof(int))
    if a == NULL or colmax == NULL or perm == NULL:
        free(a); free(colmax); free(perm)
        raise MemoryError()
    try:
        with nogil:
            for i in range(start, stop):
                attempt = 0
                while True:
                    fill_rayleigh(a, n, stream_key(s, <uint64_t>i, attempt))
                    if eta_of(a, n, rtol, a + nn, colmax, perm, &eta) < 0:
                        break
                    attempt += 1
                    resampled += 1
                v = n * log1p(x / eta)
                count += 1
                d = v - mean
                mean += d / count
                m2 += d * (v - mean)
    finally:
        free(a); free(colmax); free(perm)
    return count, mean, m2, resampled
