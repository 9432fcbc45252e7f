"""Eulerian idempotents and Adams operations on bar slices.

The symmetric group acts on degree-n tensors by place permutation of the
bar entries; the idempotents e_n^(1), ..., e_n^(n) live in QQ[S_n] and are
extracted from the descent generating identity

    lambda_k = sum_sigma sgn(sigma) * C(k + n - 1 - d(sigma), n) * sigma
             = sum_i k^i * e_n^(i)

by an exact Vandermonde solve at k = 1..n.  Published variants differ in
whether d counts descents of sigma or of its inverse; both are built and
the one whose action commutes with b on probe slices is selected once and
cached.  The table is self-certifying: completeness, orthogonality and the
antisymmetrizer identity are checked exactly, and every slice application
re-checks completeness of the acting matrices.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from .rationals import QQ, ZERO
from .linalg import SparseMatrix
from .errors import IdempotentSanityError


@lru_cache(maxsize=None)
def _perms(n: int):
    return tuple(permutations(range(n)))


def _descents(perm) -> int:
    return sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


def _sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _inverse(perm):
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


def _compose(a, b):
    """(a o b)(x) = a(b(x))."""
    return tuple(a[b[i]] for i in range(len(a)))


def _convolve(p, q):
    out = {}
    for a, ca in p.items():
        for b, cb in q.items():
            s = _compose(a, b)
            v = out.get(s, ZERO) + ca * cb
            if v:
                out[s] = v
            else:
                out.pop(s, None)
    return out


def lambda_element(n: int, k: int, inverse_descents: bool = False) -> dict:
    """The k-th Adams element of QQ[S_n] from the descent identity."""
    out = {}
    for perm in _perms(n):
        d = _descents(_inverse(perm)) if inverse_descents else _descents(perm)
        c = comb(k + n - 1 - d, n) if k + n - 1 - d >= 0 else 0
        if c:
            out[perm] = QQ(_sign(perm) * c)
    return out


def _solve_idempotents(n: int, inverse_descents: bool):
    """Extract e^(1..n) from lambda_1..lambda_n by exact Vandermonde solve."""
    lam = [lambda_element(n, k, inverse_descents) for k in range(1, n + 1)]
    # invert V[k][i] = k^i (k, i = 1..n) over QQ
    vand = [[QQ(k**i) for i in range(1, n + 1)] for k in range(1, n + 1)]
    aug = [row + [QQ(1) if r == c else QQ(0) for c in range(n)] for r, row in enumerate(vand)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    idems = []
    for i in range(n):
        e = {}
        for k in range(n):
            c = inv[i][k]
            if not c:
                continue
            for perm, v in lam[k].items():
                s = e.get(perm, ZERO) + c * v
                if s:
                    e[perm] = s
                else:
                    e.pop(perm, None)
        idems.append(e)
    return idems


def _validate_table(n: int, idems):
    identity = tuple(range(n))
    total = {}
    for e in idems:
        for perm, c in e.items():
            s = total.get(perm, ZERO) + c
            if s:
                total[perm] = s
            else:
                total.pop(perm, None)
    if total != {identity: QQ(1)}:
        raise IdempotentSanityError(f"idempotents at n={n} do not sum to the identity")
    for i, ei in enumerate(idems):
        for j, ej in enumerate(idems):
            prod = _convolve(ei, ej)
            expect = ei if i == j else {}
            if prod != expect:
                raise IdempotentSanityError(
                    f"e^({i+1}) * e^({j+1}) != {'e' if i == j else '0'} at n={n}"
                )
    anti = {p: QQ(_sign(p), factorial(n)) for p in _perms(n)}
    if idems[-1] != anti:
        raise IdempotentSanityError(f"e^({n}) is not the antisymmetrizer at n={n}")


def permutation_action(perm, tensor):
    """Place permutation of the bar entries: out[perm(i)] = in[i]."""
    inv = _inverse(perm)
    body = tensor[1:]
    return (tensor[0],) + tuple(body[inv[i]] for i in range(len(body)))


def element_matrix(element: dict, ctx, n: int, w) -> SparseMatrix:
    """Action of a QQ[S_n] element on the (n, w) slice."""
    basis = ctx.basis(n, w)
    index = ctx.index(n, w)
    entries = {}
    for j, tensor in enumerate(basis):
        for perm, c in element.items():
            t = permutation_action(perm, tensor)
            key = (index[t], j)
            s = entries.get(key, ZERO) + c
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
    return SparseMatrix(len(basis), len(basis), entries)


class _Selector:
    """Lazily picks the descent variant that commutes with b, then caches."""

    def __init__(self):
        self.variant = None

    def variant_choice(self) -> bool:
        if self.variant is None:
            self.variant = self._probe()
        return self.variant

    def _probe(self) -> bool:
        from .algebra import GradedAlgebra
        from .barcomplex import SliceContext

        free2 = GradedAlgebra("hodge-probe", ("x", "y"), ((1,), (1,)), [])
        cusp = GradedAlgebra(
            "hodge-probe-cusp", ("x", "y"), ((2,), (3,)),
            [{(0, 2): QQ(1), (3, 0): QQ(-1)}],
        )
        probes = [
            (SliceContext(free2), [(2, (2,)), (2, (3,)), (3, (3,)), (3, (4,))]),
            (SliceContext(cusp), [(2, (6,)), (3, (8,))]),
        ]
        for inverse_descents in (False, True):
            tables = {k: _solve_idempotents(k, inverse_descents) for k in range(1, 5)}
            ok = True
            for ctx, cells in probes:
                for n, w in cells:
                    b = ctx.b_matrix(n, w)
                    for i in range(1, n):
                        upper = element_matrix(tables[n][i - 1], ctx, n, w)
                        lower = element_matrix(tables[n - 1][i - 1], ctx, n - 1, w)
                        if not (b @ upper - lower @ b).is_zero():
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                return inverse_descents
        raise IdempotentSanityError("no descent variant commutes with b on the probes")


_SELECTOR = _Selector()


@lru_cache(maxsize=None)
def eulerian_idempotents(n: int):
    """The validated table (e^(1), ..., e^(n)) as QQ[S_n] elements."""
    if n < 1:
        return ()
    idems = _solve_idempotents(n, _SELECTOR.variant_choice())
    _validate_table(n, tuple(idems))
    return tuple(idems)


def idempotent_matrix(ctx, n: int, w, i: int) -> SparseMatrix:
    """Chain-level matrix of e_n^(i) on the (n, w) slice (1 <= i <= n)."""
    return element_matrix(eulerian_idempotents(n)[i - 1], ctx, n, w)


def adams_matrix(ctx, n: int, w, k: int) -> SparseMatrix:
    """Chain-level psi_k on the (n, w) slice, from the descent identity."""
    return element_matrix(
        lambda_element(n, k, _SELECTOR.variant_choice()), ctx, n, w
    )


def check_slice_completeness(ctx, n: int, w):
    """Sum of acting idempotent matrices must be the identity, exactly."""
    dim = ctx.dim(n, w)
    total = SparseMatrix.zero(dim, dim)
    for i in range(1, n + 1):
        total = total + idempotent_matrix(ctx, n, w, i)
    if total != SparseMatrix.identity(dim):
        raise IdempotentSanityError(
            f"idempotent matrices do not sum to the identity on (n={n}, w={w})"
        )
