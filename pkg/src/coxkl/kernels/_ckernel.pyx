# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word kernel: int64 root-coordinate tracking.

Same contract as pykernel.PyIntKernel, restricted to words of length at
most 32 and to coordinates below a fixed guard; anything larger raises
KernelOverflow so the caller can escalate to big integers.
"""


class KernelOverflow(Exception):
    """Input outside the fixed-width envelope; retry on the pure kernel."""


DEF MAXN = 32
DEF MAXLEN = 32

cdef long long GUARD = (<long long> 1) << 55


cdef class CKernel:
    cdef int n
    cdef long long a[MAXN][MAXN]

    def __init__(self, cartan):
        cdef int n = len(cartan)
        cdef int s, t
        cdef long long v
        if n > MAXN:
            raise KernelOverflow("too many generators for the compiled kernel")
        self.n = n
        for s in range(n):
            row = cartan[s]
            for t in range(n):
                v = row[t]
                if v < -8 or v > 8:
                    raise KernelOverflow("cartan entry outside compiled range")
                self.a[s][t] = v

    cdef int _apply_right(self, long long* cols, int s) except -1:
        # cols is column-major: cols[t*n + u]; right-multiply by sigma_s.
        cdef int n = self.n
        cdef int t, u
        cdef long long aa, x, mx = 0
        for t in range(n):
            if t == s:
                continue
            aa = self.a[s][t]
            if aa != 0:
                for u in range(n):
                    x = cols[t * n + u] - aa * cols[s * n + u]
                    cols[t * n + u] = x
                    if x < 0:
                        x = -x
                    if x > mx:
                        mx = x
        for u in range(n):
            cols[s * n + u] = -cols[s * n + u]
        if mx > GUARD:
            raise KernelOverflow("root coordinates exceed the int64 guard")
        return 0

    cdef void _identity(self, long long* cols):
        cdef int n = self.n
        cdef int t, u
        for t in range(n):
            for u in range(n):
                cols[t * n + u] = 1 if u == t else 0

    cdef int _check_letter(self, int s) except -1:
        if s < 0 or s >= self.n:
            raise ValueError("generator index out of range")
        return 0

    def canonicalize(self, word):
        cdef long long minv[MAXN * MAXN]
        cdef int L = len(word)
        cdef int i, s, t, u, found
        cdef int n = self.n
        if L > MAXLEN:
            raise KernelOverflow("word too long for the fixed-width kernel")
        self._identity(minv)
        for i in range(L - 1, -1, -1):
            s = word[i]
            self._check_letter(s)
            self._apply_right(minv, s)
        out = []
        while True:
            found = -1
            for t in range(n):
                for u in range(n):
                    if minv[t * n + u] > 0:
                        break
                else:
                    found = t
                    break
            if found < 0:
                break
            out.append(found)
            self._apply_right(minv, found)
        return tuple(out), len(out) == L

    def right_descent_mask(self, word):
        cdef long long m[MAXN * MAXN]
        cdef int L = len(word)
        cdef int i, s, t, u
        cdef int n = self.n
        cdef long long mask = 0
        if L > MAXLEN:
            raise KernelOverflow("word too long for the fixed-width kernel")
        self._identity(m)
        for i in range(L):
            s = word[i]
            self._check_letter(s)
            self._apply_right(m, s)
        for t in range(n):
            for u in range(n):
                if m[t * n + u] > 0:
                    break
            else:
                mask |= (<long long> 1) << t
        return int(mask)
