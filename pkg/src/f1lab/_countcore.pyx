# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled point-counting kernel.

Same contract as f1lab._countpure.count_solutions.  Fields up to
TABLE_LIMIT elements run through flat C add/mul/pow tables; larger
fields fall back to the pure-Python kernel (they are rare under any
sane evaluation budget, and enumeration cost dwarfs call overhead).
"""

from libc.stdlib cimport free, malloc

from f1lab import _countpure

TABLE_LIMIT = 2048


def count_solutions(int p, int n, modulus, int nvars, equations, long lo=0, hi=None):
    cdef long q = 1
    cdef int i
    for i in range(n):
        q *= p
    if q > TABLE_LIMIT or nvars == 0:
        return _countpure.count_solutions(p, n, modulus, nvars, equations, lo, hi)
    cdef long high = q if hi is None else <long> hi

    ops = _countpure.FieldOps(p, n, modulus)

    cdef int *add_t = <int *> malloc(q * q * sizeof(int))
    cdef int *mul_t = <int *> malloc(q * q * sizeof(int))
    if add_t == NULL or mul_t == NULL:
        if add_t != NULL:
            free(add_t)
        if mul_t != NULL:
            free(mul_t)
        raise MemoryError()
    cdef long a, b
    if ops.tabled:
        for a in range(q):
            row_add = ops.add_table[a]
            row_mul = ops.mul_table[a]
            for b in range(q):
                add_t[a * q + b] = row_add[b]
                mul_t[a * q + b] = row_mul[b]
    else:
        for a in range(q):
            for b in range(q):
                add_t[a * q + b] = ops.add(a, b)
                mul_t[a * q + b] = ops.mul(a, b)

    # flatten equations: per term a scalar and (var, exp) pairs
    cdef list eq_offsets = []
    cdef list term_scalars = []
    cdef list term_offsets = []
    cdef list factor_vars = []
    cdef list factor_exps = []
    exponents = set()
    for eq in equations:
        eq_offsets.append(len(term_scalars))
        for coeff, exps in eq:
            term_offsets.append(len(factor_vars))
            term_scalars.append(ops.scalar(coeff))
            for v, e in enumerate(exps):
                if e:
                    factor_vars.append(v)
                    factor_exps.append(e)
                    exponents.add(e)
    eq_offsets.append(len(term_scalars))
    term_offsets.append(len(factor_vars))

    cdef int n_eqs = len(equations)
    cdef int n_terms = len(term_scalars)
    cdef int n_factors = len(factor_vars)

    cdef int max_exp = 0
    for e in exponents:
        if e > max_exp:
            max_exp = e
    cdef int *pow_t = <int *> malloc((max_exp + 1) * q * sizeof(int))
    if pow_t == NULL:
        free(add_t)
        free(mul_t)
        raise MemoryError()
    for e in range(max_exp + 1):
        for a in range(q):
            pow_t[e * q + a] = ops.pow(a, e)

    cdef int *eq_off = <int *> malloc((n_eqs + 1) * sizeof(int))
    cdef int *t_scalar = <int *> malloc((n_terms if n_terms else 1) * sizeof(int))
    cdef int *t_off = <int *> malloc((n_terms + 1) * sizeof(int))
    cdef int *f_var = <int *> malloc((n_factors if n_factors else 1) * sizeof(int))
    cdef int *f_exp = <int *> malloc((n_factors if n_factors else 1) * sizeof(int))
    cdef int *point = <int *> malloc(nvars * sizeof(int))
    if (
        eq_off == NULL
        or t_scalar == NULL
        or t_off == NULL
        or f_var == NULL
        or f_exp == NULL
        or point == NULL
    ):
        free(add_t); free(mul_t); free(pow_t)
        if eq_off != NULL: free(eq_off)
        if t_scalar != NULL: free(t_scalar)
        if t_off != NULL: free(t_off)
        if f_var != NULL: free(f_var)
        if f_exp != NULL: free(f_exp)
        if point != NULL: free(point)
        raise MemoryError()
    for i in range(n_eqs + 1):
        eq_off[i] = eq_offsets[i]
    for i in range(n_terms):
        t_scalar[i] = term_scalars[i]
    for i in range(n_terms + 1):
        t_off[i] = term_offsets[i]
    for i in range(n_factors):
        f_var[i] = factor_vars[i]
        f_exp[i] = factor_exps[i]

    cdef long count = 0
    cdef long limit
    cdef int depth, acc, t, e_i, k
    cdef bint ok
    for i in range(nvars):
        point[i] = 0
    point[0] = <int> lo

    cdef bint done = high <= lo
    while not done:
        ok = True
        for i in range(n_eqs):
            acc = 0
            for k in range(eq_off[i], eq_off[i + 1]):
                t = t_scalar[k]
                for e_i in range(t_off[k], t_off[k + 1]):
                    t = mul_t[t * q + pow_t[f_exp[e_i] * q + point[f_var[e_i]]]]
                acc = add_t[acc * q + t]
            if acc:
                ok = False
                break
        if ok:
            count += 1
        # odometer: last variable fastest, first variable within [lo, hi)
        depth = nvars - 1
        while depth >= 0:
            point[depth] += 1
            limit = high if depth == 0 else q
            if point[depth] < limit:
                break
            point[depth] = lo if depth == 0 else 0
            depth -= 1
        if depth < 0:
            done = True

    free(add_t); free(mul_t); free(pow_t)
    free(eq_off); free(t_scalar); free(t_off); free(f_var); free(f_exp); free(point)
    return count
