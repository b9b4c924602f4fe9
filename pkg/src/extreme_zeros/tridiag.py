"""Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL."""
import math

import numpy as np

from .errors import OracleFailure


def tql_eigenvalues(diag, off, max_iter: int = 60):
    """Eigenvalues (ascending) of the symmetric tridiagonal matrix ``T(diag, off)``.

    Implicit QL with Wilkinson shifts and Givens rotations, eigenvalues only.
    ``off`` holds the ``len(diag) - 1`` off-diagonal entries.
    """
    d = [float(v) for v in diag]
    n = len(d)
    e = [float(v) for v in off] + [0.0]
    if len(e) != n:
        raise ValueError("off-diagonal must have len(diag) - 1 entries")
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-300 or abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise OracleFailure(f"QL iteration did not converge for eigenvalue {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))
