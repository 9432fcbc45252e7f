"""Normalized bar complex slices: bases, b, Connes B, shuffle products.

A chain in degree n is a QQ-combination of tensors m0[m1|...|mn] whose
entries are normal-form monomials, entries in positions >= 1 of positive
weight.  Everything is sliced by total weight, where each slice is finite
because the algebra is connected with positive generator weights.

Sign conventions (the literature's standard ones): b merges leftward with
(-1)^i and wraps with (-1)^n; B rotates with (-1)^{n i} and drops rotations
that put a scalar inside the bar; shuffles carry the permutation sign of
the interleave.  A Convention object can flip or drop the wrap term (the
corrupt negative controls) or conjugate everything by tensor reversal (the
transpose variant bracketed by the cusp cycle search).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .rationals import QQ, ZERO
from .linalg import SparseMatrix, Echelon
from .errors import SanityError, ParseError, PreconditionError
from .algebra import GradedAlgebra, vec_total, vec_sub, vec_leq


@dataclass(frozen=True)
class Convention:
    """Sign/variant switches; `corrupt` ones exist as negative controls."""

    name: str = "standard"
    b_drop_wrap: bool = False
    b_wrap_flip: bool = False
    reverse_tensors: bool = False
    twist_sign: int = 1
    corrupt: bool = False


CONVENTIONS = {
    "standard": Convention(),
    "b-transpose": Convention(name="b-transpose", reverse_tensors=True),
    "twist-minus": Convention(name="twist-minus", twist_sign=-1),
    "corrupt-b-drop-wrap": Convention(
        name="corrupt-b-drop-wrap", b_drop_wrap=True, corrupt=True
    ),
    "corrupt-b-wrap-flip": Convention(
        name="corrupt-b-wrap-flip", b_wrap_flip=True, corrupt=True
    ),
}


def convention(name: str) -> Convention:
    try:
        return CONVENTIONS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown convention {name!r}; choose from {sorted(CONVENTIONS)}"
        ) from None


class BarChain:
    """A homogeneous exact-rational combination of normalized bar tensors."""

    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra: GradedAlgebra, degree: int, terms=None):
        self.algebra = algebra
        self.degree = degree
        self.terms = {}
        unit = (0,) * algebra.ngens
        if terms:
            for tensor, c in terms.items() if isinstance(terms, dict) else terms:
                c = QQ(c)
                if not c:
                    continue
                if len(tensor) != degree + 1:
                    raise ValueError("tensor length does not match degree")
                if any(m == unit for m in tensor[1:]):
                    continue  # normalized complex: scalars inside the bar vanish
                s = self.terms.get(tensor, ZERO) + c
                if s:
                    self.terms[tensor] = s
                else:
                    self.terms.pop(tensor, None)

    def is_zero(self):
        return not self.terms

    def weight(self):
        """Common weight vector of all tensors (None for the zero chain)."""
        w = None
        for tensor in self.terms:
            tw = self.algebra.zero_weight
            for m in tensor:
                tw = tuple(a + b for a, b in zip(tw, self.algebra.mono_weight(m)))
            if w is None:
                w = tw
            elif w != tw:
                raise PreconditionError("chain is not weight-homogeneous")
        return w

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = out.get(t, ZERO) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return BarChain(self.algebra, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = QQ(c)
        return BarChain(self.algebra, self.degree, {t: c * v for t, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, BarChain)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def _compat(self, other):
        if self.algebra is not other.algebra or self.degree != other.degree:
            raise ValueError("chains live in different groups")

    def vector(self, index):
        """Sparse coordinates w.r.t. a slice index {tensor: position}."""
        return {index[t]: c for t, c in self.terms.items()}

    def __repr__(self):
        return f"BarChain({chain_str(self)})"


def chain_str(chain: BarChain) -> str:
    if not chain.terms:
        return "0"
    alg = chain.algebra
    bits = []
    for tensor in sorted(chain.terms, key=lambda t: tuple(alg.order_key(m) for m in t)):
        c = chain.terms[tensor]
        head = alg.mono_str(tensor[0])
        bar = "[" + "|".join(alg.mono_str(m) for m in tensor[1:]) + "]" if len(tensor) > 1 else ""
        from .rationals import qq_str

        coef = "" if c == 1 else ("-" if c == -1 else qq_str(c) + "*")
        bits.append(f"{coef}{head}{bar}" if head != "1" or not bar else f"{coef}{bar}")
    return " + ".join(bits).replace("+ -", "- ")


def parse_chain(algebra: GradedAlgebra, text: str, degree=None) -> BarChain:
    """Parse chains like ``2*x[y] + 3*y[x]`` or ``[y|y] - x[x|x] - [x^2|x]``."""
    from .algebra import parse_poly

    terms = {}
    deg = degree
    pos = 0
    text = text.strip()
    while pos < len(text):
        sign = QQ(1)
        while pos < len(text) and text[pos] in "+- ":
            if text[pos] == "-":
                sign = -sign
            pos += 1
        end = pos
        depth = 0
        while end < len(text):
            ch = text[end]
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            elif ch in "+-" and depth == 0:
                break
            end += 1
        piece = text[pos:end].strip()
        pos = end
        if not piece:
            raise ParseError("empty chain term")
        if "[" in piece:
            headtxt, rest = piece.split("[", 1)
            if not rest.endswith("]"):
                raise ParseError(f"unclosed bar bracket in {piece!r}")
            entries = rest[:-1].split("|")
        else:
            headtxt, entries = piece, []
        headtxt = headtxt.strip().rstrip("*").strip() or "1"
        head = parse_poly(headtxt, algebra.gens)
        tensor_entries = []
        for ent in entries:
            p = algebra.nf(parse_poly(ent.strip(), algebra.gens))
            if len(p) != 1 or next(iter(p.values())) != 1:
                raise ParseError(f"bar entry {ent!r} must be a monic monomial")
            tensor_entries.append(next(iter(p)))
        if deg is None:
            deg = len(entries)
        elif deg != len(entries):
            raise ParseError("mixed degrees in chain")
        for hm, hc in algebra.nf(head).items():
            tensor = (hm, *tensor_entries)
            c = terms.get(tensor, ZERO) + sign * hc
            if c:
                terms[tensor] = c
            else:
                terms.pop(tensor, None)
    return BarChain(algebra, deg if deg is not None else 0, terms)


class SliceContext:
    """Per-algebra cache of slice bases and differential matrices."""

    def __init__(self, algebra: GradedAlgebra, conv: Convention | str = "standard"):
        self.algebra = algebra
        self.conv = convention(conv) if isinstance(conv, str) else conv
        self._bases = {}
        self._indexes = {}
        self._b = {}
        self._B = {}
        self._checked = set()

    # -- bases --------------------------------------------------------

    def basis(self, n: int, w) -> tuple:
        w = self.algebra._coerce_weight(w)
        key = (n, w)
        cached = self._bases.get(key)
        if cached is not None:
            return cached
        alg = self.algebra
        if n < 0:
            result: tuple = ()
            self._bases[key] = result
            return result
        positive = [v for v in alg.weight_vectors_upto(w) if vec_total(v) > 0]
        positive.sort(key=lambda v: (vec_total(v), v))
        min_pos = min((vec_total(v) for v in positive), default=None)
        out = []

        def fill(slots, prefix):
            """Extend prefix (list of monomials) over remaining weight slots."""
            if not slots:
                out.append(tuple(prefix))
                return
            for m in alg.weight_basis(slots[0]):
                prefix.append(m)
                fill(slots[1:], prefix)
                prefix.pop()

        def compose(i, remaining, chosen):
            if i == n:
                # the head takes whatever weight is left (possibly zero)
                if alg.dim(remaining) > 0:
                    fill([remaining] + chosen, [])
                return
            if min_pos is None:
                return
            left = n - i
            if vec_total(remaining) < left * min_pos:
                return
            for v in positive:
                if vec_leq(v, remaining):
                    chosen.append(v)
                    compose(i + 1, vec_sub(remaining, v), chosen)
                    chosen.pop()

        if n == 0:
            fill([w], [])
        else:
            compose(0, w, [])
        result = tuple(out)
        self._bases[key] = result
        return result

    def index(self, n: int, w) -> dict:
        w = self.algebra._coerce_weight(w)
        key = (n, w)
        cached = self._indexes.get(key)
        if cached is None:
            cached = {t: i for i, t in enumerate(self.basis(n, w))}
            self._indexes[key] = cached
        return cached

    def dim(self, n: int, w) -> int:
        return len(self.basis(n, w))

    # -- differentials on single tensors --------------------------------

    def _reverse(self, tensor):
        return (tensor[0], *reversed(tensor[1:]))

    def b_tensor(self, tensor):
        """b of one tensor as {tensor: coeff}."""
        if self.conv.reverse_tensors:
            flipped = self._b_tensor_std(self._reverse(tensor))
            return {self._reverse(t): c for t, c in flipped.items()}
        return self._b_tensor_std(tensor)

    def _b_tensor_std(self, tensor):
        alg = self.algebra
        n = len(tensor) - 1
        out = {}
        if n == 0:
            return out

        def emit(t, c):
            s = out.get(t, ZERO) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)

        for i in range(n):
            sign = -1 if i % 2 else 1
            prod = alg.mono_mul(tensor[i], tensor[i + 1])
            rest = tensor[:i] + tensor[i + 2 :]
            for m, c in prod.items():
                emit(rest[:i] + (m,) + rest[i:], sign * c)
        if not self.conv.b_drop_wrap:
            sign = -1 if n % 2 else 1
            if self.conv.b_wrap_flip:
                sign = -sign
            prod = alg.mono_mul(tensor[n], tensor[0])
            body = tensor[1:n]
            for m, c in prod.items():
                emit((m, *body), sign * c)
        return out

    def B_tensor(self, tensor):
        if self.conv.reverse_tensors:
            flipped = self._B_tensor_std(self._reverse(tensor))
            return {self._reverse(t): c for t, c in flipped.items()}
        return self._B_tensor_std(tensor)

    def _B_tensor_std(self, tensor):
        alg = self.algebra
        n = len(tensor) - 1
        unit = (0,) * alg.ngens
        out = {}
        cyc = tensor
        for i in range(n + 1):
            rotated = cyc[i:] + cyc[:i]
            if any(m == unit for m in rotated):
                continue  # the old head is a scalar here: dies in the normalized complex
            sign = -1 if (n * i) % 2 else 1
            t = (unit, *rotated)
            s = out.get(t, ZERO) + QQ(sign)
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return out

    # -- chain-level operations ------------------------------------------

    def b_chain(self, chain: BarChain) -> BarChain:
        out = {}
        for tensor, c in chain.terms.items():
            for t, v in self.b_tensor(tensor).items():
                s = out.get(t, ZERO) + c * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return BarChain(chain.algebra, chain.degree - 1, out)

    def B_chain(self, chain: BarChain) -> BarChain:
        out = {}
        for tensor, c in chain.terms.items():
            for t, v in self.B_tensor(tensor).items():
                s = out.get(t, ZERO) + c * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return BarChain(chain.algebra, chain.degree + 1, out)

    def shuffle(self, left: BarChain, right: BarChain) -> BarChain:
        """Shuffle product: graded commutative, b acts as a derivation."""
        if left.algebra is not right.algebra:
            raise ValueError("different algebras")
        alg = left.algebra
        p, q = left.degree, right.degree
        out = {}
        for lt, lc in left.terms.items():
            xs = lt[1:]
            for rt, rc in right.terms.items():
                ys = rt[1:]
                head = alg.mono_mul(lt[0], rt[0])
                base = lc * rc
                for positions in combinations(range(p + q), p):
                    inv = sum(s - k for k, s in enumerate(positions))
                    sign = -1 if inv % 2 else 1
                    entries = [None] * (p + q)
                    for k, s in enumerate(positions):
                        entries[s] = xs[k]
                    it = iter(ys)
                    for s in range(p + q):
                        if entries[s] is None:
                            entries[s] = next(it)
                    coeff = base * sign
                    for hm, hc in head.items():
                        t = (hm, *entries)
                        s2 = out.get(t, ZERO) + coeff * hc
                        if s2:
                            out[t] = s2
                        else:
                            out.pop(t, None)
        return BarChain(alg, p + q, out)

    def shuffle_power(self, chain: BarChain, k: int) -> BarChain:
        out = BarChain(self.algebra, 0, {((0,) * self.algebra.ngens,): QQ(1)})
        for _ in range(k):
            out = self.shuffle(out, chain)
        return out

    # -- matrices ----------------------------------------------------------

    def b_matrix(self, n: int, w) -> SparseMatrix:
        w = self.algebra._coerce_weight(w)
        key = (n, w)
        cached = self._b.get(key)
        if cached is not None:
            return cached
        src = self.basis(n, w)
        dst_index = self.index(n - 1, w) if n >= 1 else {}
        entries = {}
        for j, tensor in enumerate(src):
            for t, c in self.b_tensor(tensor).items():
                entries[(dst_index[t], j)] = c
        mat = SparseMatrix(len(dst_index), len(src), entries)
        self._b[key] = mat
        return mat

    def B_matrix(self, n: int, w) -> SparseMatrix:
        w = self.algebra._coerce_weight(w)
        key = (n, w)
        cached = self._B.get(key)
        if cached is not None:
            return cached
        src = self.basis(n, w)
        dst_index = self.index(n + 1, w)
        entries = {}
        for j, tensor in enumerate(src):
            for t, c in self.B_tensor(tensor).items():
                entries[(dst_index[t], j)] = c
        mat = SparseMatrix(len(dst_index), len(src), entries)
        self._B[key] = mat
        return mat

    def check_slice(self, n: int, w):
        """Exact structural sanity at (n, w): b^2, B^2 and the mixed identity."""
        w = self.algebra._coerce_weight(w)
        key = (n, w)
        if key in self._checked:
            return
        loc = f"algebra {self.algebra.name}, slice (n={n}, w={w})"
        if n >= 1 and not (self.b_matrix(n, w) @ self.b_matrix(n + 1, w)).is_zero():
            raise SanityError(f"b.b != 0 at {loc}")
        if not (self.B_matrix(n + 1, w) @ self.B_matrix(n, w)).is_zero():
            raise SanityError(f"B.B != 0 at {loc}")
        if not self.conv.corrupt:
            mixed = self.b_matrix(n + 1, w) @ self.B_matrix(n, w)
            if n >= 1:
                mixed = mixed + self.B_matrix(n - 1, w) @ self.b_matrix(n, w)
            if not mixed.is_zero():
                raise SanityError(f"b.B + B.b != 0 at {loc}")
        self._checked.add(key)

    def boundary_echelon(self, n: int, w) -> Echelon:
        """Row-space echelon spanned by the image of b_{n+1} in C_n."""
        mat = self.b_matrix(n + 1, w)
        ech = Echelon(mat.rows)
        cols = {}
        for (i, j), v in mat.items():
            cols.setdefault(j, {})[i] = v
        for j in sorted(cols):
            ech.add_row(cols[j])
        return ech

    def in_boundary(self, chain: BarChain) -> bool:
        w = chain.weight()
        if w is None:
            return True
        idx = self.index(chain.degree, w)
        return self.boundary_echelon(chain.degree, w).contains(chain.vector(idx))

    def is_cycle(self, chain: BarChain) -> bool:
        return self.b_chain(chain).is_zero()
