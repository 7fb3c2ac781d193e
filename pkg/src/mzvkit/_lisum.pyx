# cython: boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed kernel for nested polylogarithm sums at z = 1/2.

Same contract and bit-exact output as ``_lisum_py.nested_sum_half``.
"""

from libc.stdlib cimport malloc, free

cdef extern from "gmp.h" nogil:
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct* mpz_ptr
    ctypedef unsigned long mp_bitcnt_t
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    void mpz_mul_2exp(mpz_ptr, mpz_ptr, mp_bitcnt_t)
    void mpz_ui_pow_ui(mpz_ptr, unsigned long, unsigned long)
    void mpz_fdiv_q(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    char* mpz_get_str(char*, int, mpz_ptr)


cdef object _to_int(mpz_ptr z):
    cdef size_t n = mpz_sizeinbase(z, 16) + 2
    cdef char* buf = <char*> malloc(n)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, z)
        return int((<bytes> buf).decode("ascii"), 16)
    finally:
        free(buf)


def nested_sum_half(parts, long n_terms, long bits):
    cdef tuple p = tuple(parts)
    cdef int r = len(p)
    if r == 0:
        return 1 << bits
    cdef unsigned long* ks = <unsigned long*> malloc(r * sizeof(unsigned long))
    cdef __mpz_struct* inner = <__mpz_struct*> malloc(r * sizeof(__mpz_struct))
    if ks == NULL or inner == NULL:
        free(ks)
        free(inner)
        raise MemoryError()
    cdef mpz_t total, tmp, den
    cdef int j
    cdef long m
    for j in range(r):
        ks[j] = p[j]
        if ks[j] < 1:
            free(ks)
            free(inner)
            raise ValueError("index parts must be positive")
        mpz_init(&inner[j])
    mpz_init(total)
    mpz_init(tmp)
    mpz_init(den)
    mpz_set_ui(&inner[0], 1)
    mpz_mul_2exp(&inner[0], &inner[0], bits)
    try:
        with nogil:
            for m in range(1, n_terms + 1):
                mpz_ui_pow_ui(den, m, ks[r - 1])
                mpz_mul_2exp(den, den, m)
                mpz_fdiv_q(tmp, &inner[r - 1], den)
                mpz_add(total, total, tmp)
                for j in range(r - 1, 0, -1):
                    mpz_ui_pow_ui(den, m, ks[j - 1])
                    mpz_fdiv_q(tmp, &inner[j - 1], den)
                    mpz_add(&inner[j], &inner[j], tmp)
        return _to_int(total)
    finally:
        for j in range(r):
            mpz_clear(&inner[j])
        mpz_clear(total)
        mpz_clear(tmp)
        mpz_clear(den)
        free(ks)
        free(inner)
