"""Finitely presented connected graded commutative algebras over QQ.

Generators carry positive weights (internally small vectors of naturals, so
a polynomial extension can track its extra degree), relations are weight-
homogeneous, and normal forms come from a Buchberger completion driven
weight by weight: after completing weights <= w every normal form and
weight basis below w is final, so slices can be built lazily.

Monomials are plain exponent tuples, polynomials are dicts monomial -> QQ.
The monomial order is graded reverse lexicographic (weighted degree first,
later generators more significant), which fixes bases and representatives
across runs.
"""

from __future__ import annotations

import heapq
import re
import threading

from .rationals import QQ, ZERO, qq, qq_str
from .errors import (
    ParseError,
    InhomogeneousRelationError,
    ZeroWeightGeneratorError,
    WeightMismatchError,
    RelationNotKilledError,
    PreconditionError,
)

Mono = tuple  # exponent tuple, one slot per generator
WeightVec = tuple  # small vector of non-negative ints, not all zero


def vec_add(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k: int, a: WeightVec) -> WeightVec:
    return tuple(k * x for x in a)


def vec_leq(a: WeightVec, b: WeightVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def vec_total(a: WeightVec) -> int:
    return sum(a)


def poly_add(p, q):
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, ZERO) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def poly_scale(c, p):
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def poly_sub(p, q):
    return poly_add(p, poly_scale(QQ(-1), q))


def mono_mul_raw(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


class GradedAlgebra:
    """A connected graded commutative QQ-algebra with a normal-form engine.

    Immutable once built; the Buchberger state and basis caches grow lazily
    behind an internal lock and are safe for concurrent readers.
    """

    def __init__(self, name, gens, weights, relations, _rank=None):
        self.name = name
        self.gens = tuple(gens)
        rank = _rank if _rank is not None else (len(weights[0]) if weights else 1)
        self.weight_rank = rank
        self.weights = tuple(tuple(w) for w in weights)
        for g, w in zip(self.gens, self.weights):
            if len(w) != rank:
                raise ValueError(f"weight rank mismatch on generator {g}")
            if vec_total(w) <= 0 or any(x < 0 for x in w):
                raise ZeroWeightGeneratorError(f"generator {g} must have positive weight")
        self.ngens = len(self.gens)
        self.zero_weight = (0,) * rank
        self._key_cache = {}
        self.relations = tuple({Mono(m): QQ(c) for m, c in rel.items()} for rel in relations)
        for rel in self.relations:
            w = self._weight_of_poly(rel, check=True)
            if w is not None and vec_total(w) == 0:
                raise InhomogeneousRelationError(
                    f"relation {self.poly_str(rel)} has weight 0"
                )
        self._gb = []  # monic polys, leads pairwise non-divisible once interreduced
        self._pairs = []  # heap of (lcm scalar weight, i, j)
        self._completed = -1
        self._queued = list(self.relations)
        self._nf_mono_cache = {}
        self._basis_cache = {}
        self._lock = threading.RLock()

    # -- monomial order -----------------------------------------------

    def mono_weight(self, m: Mono) -> WeightVec:
        w = [0] * self.weight_rank
        for e, gw in zip(m, self.weights):
            if e:
                for i, x in enumerate(gw):
                    w[i] += e * x
        return tuple(w)

    def order_key(self, m: Mono):
        # graded reverse lexicographic with later generators more significant,
        # ascending; chosen so y^2 - x^3 style relations rewrite the last
        # generator into the earlier ones
        key = self._key_cache.get(m)
        if key is None:
            key = (vec_total(self.mono_weight(m)),) + tuple(-e for e in m)
            self._key_cache[m] = key
        return key

    def lead(self, p) -> Mono:
        return max(p, key=self.order_key)

    def _weight_of_poly(self, p, check=False) -> WeightVec | None:
        if not p:
            return None
        it = iter(p)
        w = self.mono_weight(next(it))
        if check:
            for m in it:
                if self.mono_weight(m) != w:
                    raise InhomogeneousRelationError(
                        f"polynomial {self.poly_str(p)} mixes weights "
                        f"{w} and {self.mono_weight(m)}"
                    )
        return w

    def poly_weight(self, p) -> WeightVec | None:
        """Weight vector of a homogeneous polynomial (None for 0)."""
        return self._weight_of_poly(p, check=True)

    # -- Buchberger completion, weight by weight ----------------------

    def ensure_weight(self, bound: int):
        """Complete the basis so normal forms are final below scalar weight `bound`."""
        with self._lock:
            if bound <= self._completed:
                return
            while self._queued:
                self._gb_insert(self._queued.pop(0))
            while self._pairs and self._pairs[0][0] <= bound:
                _, i, j = heapq.heappop(self._pairs)
                if i >= len(self._gb) or j >= len(self._gb):
                    continue
                f, g = self._gb[i], self._gb[j]
                if f is None or g is None:
                    continue
                lf, lg = self.lead(f), self.lead(g)
                if all(a == 0 or b == 0 for a, b in zip(lf, lg)):
                    continue  # coprime leads: the S-polynomial reduces to zero
                s = self._s_poly(f, g)
                s = self._reduce(s)
                if s:
                    self._gb_insert(s)
            self._completed = bound

    def _s_poly(self, f, g):
        lf, lg = self.lead(f), self.lead(g)
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        mf = vec_sub(lcm, lf)
        mg = vec_sub(lcm, lg)
        pf = {mono_mul_raw(m, mf): c for m, c in f.items()}
        pg = {mono_mul_raw(m, mg): c for m, c in g.items()}
        cf, cg = pf[lcm], pg[lcm]
        return poly_sub(poly_scale(cg, pf), poly_scale(cf, pg))

    def _reduce(self, p):
        """Full reduction against the current basis."""
        out = {}
        work = dict(p)
        while work:
            m = self.lead(work)
            c = work.pop(m)
            if not c:
                continue
            hit = None
            for g in self._gb:
                if g is not None and mono_divides(self.lead(g), m):
                    hit = g
                    break
            if hit is None:
                out[m] = out.get(m, ZERO) + c
                if not out[m]:
                    del out[m]
                continue
            shift = vec_sub(m, self.lead(hit))
            for gm, gc in hit.items():
                if gm == self.lead(hit):
                    continue
                mm = mono_mul_raw(gm, shift)
                s = work.get(mm, ZERO) - c * gc
                if s:
                    work[mm] = s
                else:
                    work.pop(mm, None)
        return out

    def _gb_insert(self, p):
        stack = [p]
        while stack:
            q = self._reduce(stack.pop())
            if not q:
                continue
            lead_new = self.lead(q)
            c = q[lead_new]
            q = {m: v / c for m, v in q.items()}
            # retire basis elements whose lead the newcomer divides
            for idx in range(len(self._gb)):
                g = self._gb[idx]
                if g is not None and mono_divides(lead_new, self.lead(g)):
                    self._gb[idx] = None
                    stack.append(g)
            new_index = len(self._gb)
            self._gb.append(q)
            for idx in range(new_index):
                g = self._gb[idx]
                if g is None:
                    continue
                lg = self.lead(g)
                lcm = tuple(max(a, b) for a, b in zip(lg, lead_new))
                heapq.heappush(
                    self._pairs, (vec_total(self.mono_weight(lcm)), idx, new_index)
                )
        self._nf_mono_cache.clear()
        self._basis_cache.clear()

    def groebner_leads(self, bound: int):
        self.ensure_weight(bound)
        return sorted(
            (self.lead(g) for g in self._gb if g is not None),
            key=self.order_key,
        )

    def reduced_relations(self, bound: int):
        """The reduced basis completed through scalar weight `bound`.

        Leads are pairwise non-divisible by construction; tails are reduced
        here so the returned presentation is fully interreduced.
        """
        self.ensure_weight(bound)
        out = []
        for g in self._gb:
            if g is None:
                continue
            lead = self.lead(g)
            tail = {m: c for m, c in g.items() if m != lead}
            reduced = self._reduce(tail)
            reduced[lead] = g[lead]
            out.append(reduced)
        return out

    def is_free(self, probe: int = 24) -> bool:
        return not self.reduced_relations(probe)

    # -- normal forms ---------------------------------------------------

    def nf(self, p):
        """Normal form; idempotent, QQ-linear, multiplicative modulo the ideal."""
        if not p:
            return {}
        w = self._weight_of_poly(p)
        self.ensure_weight(vec_total(w) if w else 0)
        return self._reduce(p)

    def nf_mono(self, m: Mono):
        cached = self._nf_mono_cache.get(m)
        if cached is None:
            with self._lock:
                cached = self.nf({m: QQ(1)})
                self._nf_mono_cache[m] = cached
        return cached

    def multiply(self, p, q):
        """nf(p*q); weight-additive on homogeneous inputs."""
        acc = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = mono_mul_raw(m1, m2)
                s = acc.get(m, ZERO) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        out = {}
        for m, c in acc.items():
            for rm, rc in self.nf_mono(m).items():
                s = out.get(rm, ZERO) + c * rc
                if s:
                    out[rm] = s
                else:
                    out.pop(rm, None)
        return out

    def mono_mul(self, a: Mono, b: Mono):
        """nf of a product of two monomials (hot path, cached per factor pair)."""
        return self.nf_mono(mono_mul_raw(a, b))

    def poly_pow(self, p, k: int):
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, p)
        return out

    def one(self):
        return {(0,) * self.ngens: QQ(1)}

    def gen_poly(self, i: int):
        m = [0] * self.ngens
        m[i] = 1
        return {tuple(m): QQ(1)}

    # -- weight components ----------------------------------------------

    def weight_basis(self, w) -> tuple:
        """Ordered monomial basis of the weight-w component (w int or vector)."""
        wvec = self._coerce_weight(w)
        cached = self._basis_cache.get(wvec)
        if cached is not None:
            return cached
        self.ensure_weight(vec_total(wvec))
        with self._lock:
            leads = [self.lead(g) for g in self._gb if g is not None]
            out = []
            exps = [0] * self.ngens

            def walk(i, remaining):
                if i == self.ngens:
                    if all(x == 0 for x in remaining):
                        m = tuple(exps)
                        if not any(mono_divides(l, m) for l in leads):
                            out.append(m)
                    return
                gw = self.weights[i]
                e = 0
                while True:
                    used = vec_scale(e, gw)
                    if not vec_leq(used, remaining):
                        break
                    exps[i] = e
                    walk(i + 1, vec_sub(remaining, used))
                    e += 1
                exps[i] = 0

            walk(0, wvec)
            out.sort(key=self.order_key)
            result = tuple(out)
            self._basis_cache[wvec] = result
            return result

    def dim(self, w) -> int:
        return len(self.weight_basis(w))

    def _coerce_weight(self, w) -> WeightVec:
        if isinstance(w, int):
            if self.weight_rank != 1:
                raise PreconditionError(
                    f"algebra {self.name} is graded over rank {self.weight_rank}; "
                    "pass a weight vector"
                )
            if w < 0:
                raise PreconditionError("weights are non-negative")
            return (w,)
        w = tuple(w)
        if len(w) != self.weight_rank:
            raise PreconditionError("weight vector rank mismatch")
        if any(x < 0 for x in w):
            raise PreconditionError("weights are non-negative")
        return w

    def weight_vectors_upto(self, bound) -> list:
        """All weight vectors componentwise <= bound with a nonzero component."""
        bvec = self._coerce_weight(bound)
        ranges = [range(b + 1) for b in bvec]
        out = []

        def walk(i, prefix):
            if i == len(ranges):
                w = tuple(prefix)
                if self.dim(w) > 0:
                    out.append(w)
                return
            for x in ranges[i]:
                walk(i + 1, prefix + [x])

        walk(0, [])
        return out

    # -- probes ----------------------------------------------------------

    def nilpotent_upto(self, p, bound: int) -> bool:
        """True if some power of p vanishes before its weight passes `bound`."""
        w = self._weight_of_poly(p)
        if w is None:
            return True
        if vec_total(w) == 0:
            return False
        q = self.nf(p)
        while q:
            if vec_total(self._weight_of_poly(q)) > bound:
                return False
            q = self.multiply(q, p)
        return True

    def zero_divisor_probe(self, bound: int):
        """A pair of nonzero elements multiplying to zero, or None, up to `bound`."""
        self.ensure_weight(bound)
        for g in self._gb:
            if g is None:
                continue
            # binomial/monomial leads give cheap witnesses via factor splitting
            for m in list(g):
                for i in range(self.ngens):
                    if m[i] > 0:
                        a = self.gen_poly(i)
                        rest = list(m)
                        rest[i] -= 1
                        b = self.nf_mono(tuple(rest))
                        if b and not self.multiply(a, b):
                            return (a, b)
        return None

    # -- construction helpers ---------------------------------------------

    def with_polynomial_generator(self, name: str):
        """A[name]: adds a fresh weight-(0,..,0,1) generator on a new grading axis."""
        gens = self.gens + (name,)
        weights = [w + (0,) for w in self.weights]
        weights.append((0,) * self.weight_rank + (1,))
        rels = [{m + (0,): c for m, c in rel.items()} for rel in self.relations]
        return GradedAlgebra(
            f"{self.name}[{name}]", gens, weights, rels, _rank=self.weight_rank + 1
        )

    # -- formatting --------------------------------------------------------

    def mono_str(self, m: Mono) -> str:
        parts = []
        for g, e in zip(self.gens, m):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts) if parts else "1"

    def poly_str(self, p) -> str:
        if not p:
            return "0"
        terms = []
        for m in sorted(p, key=self.order_key, reverse=True):
            c = p[m]
            mono = self.mono_str(m)
            if mono == "1":
                terms.append(qq_str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{qq_str(c)}*{mono}")
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"GradedAlgebra({self.name}: {', '.join(self.gens)})"


class GradedHom:
    """A weight-preserving algebra map, given by generator images."""

    def __init__(self, domain: GradedAlgebra, codomain: GradedAlgebra, images):
        if len(images) != domain.ngens:
            raise WeightMismatchError("one image per generator required")
        self.domain = domain
        self.codomain = codomain
        self._mono_cache = {}
        self.images = tuple(codomain.nf(img) for img in images)
        for g, w, img in zip(domain.gens, domain.weights, self.images):
            iw = codomain.poly_weight(img)
            if iw is not None and iw != w:
                raise WeightMismatchError(
                    f"image of {g} has weight {iw}, expected {w}"
                )
        for rel in domain.relations:
            if self.apply(rel):
                raise RelationNotKilledError(
                    f"relation {domain.poly_str(rel)} not killed by the map"
                )

    def apply_mono(self, m: Mono):
        cached = self._mono_cache.get(m)
        if cached is None:
            out = self.codomain.one()
            for img, e in zip(self.images, m):
                if e:
                    out = self.codomain.multiply(out, self.codomain.poly_pow(img, e))
            self._mono_cache[m] = cached = out
        return cached

    def apply(self, p):
        out = {}
        for m, c in p.items():
            out = poly_add(out, poly_scale(c, self.apply_mono(m)))
        return self.codomain.nf(out)

    def kernel_dim(self, w) -> int:
        """Dimension of the weight-w kernel slice."""
        return len(self.kernel_slice(w))

    def matrix_on_weight(self, w):
        """Sparse matrix of the map on weight-w monomial bases."""
        from .linalg import SparseMatrix

        dom = self.domain.weight_basis(w)
        cod = self.codomain.weight_basis(w)
        index = {m: i for i, m in enumerate(cod)}
        entries = {}
        for j, m in enumerate(dom):
            for im, c in self.apply_mono(m).items():
                entries[(index[im], j)] = c
        return SparseMatrix(len(cod), len(dom), entries)

    def kernel_slice(self, w):
        return self.matrix_on_weight(w).kernel_basis()

    @classmethod
    def identity(cls, algebra: GradedAlgebra):
        return cls(algebra, algebra, [algebra.gen_poly(i) for i in range(algebra.ngens)])


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<sym>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[\^*+-]))"
)


def parse_poly(text: str, gens, line_no=None) -> dict:
    """Parse a polynomial in the algebra grammar: `^` powers, optional `*`."""
    gen_index = {g: i for i, g in enumerate(gens)}
    ngens = len(gens)
    pos = 0
    terms = []
    sign = 1
    coeff = None
    exps = None
    seen_factor = False

    def flush(col):
        nonlocal sign, coeff, exps, seen_factor
        if exps is None and coeff is None:
            raise ParseError("empty term", line_no, col)
        c = qq(1) if coeff is None else coeff
        m = tuple(exps) if exps is not None else (0,) * ngens
        terms.append((m, QQ(sign) * c))
        sign, coeff, exps, seen_factor = 1, None, None, False

    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", line_no, pos + 1)
        col = m.start() + 1
        pos = m.end()
        if m.lastgroup == "op" and m.group("op") in "+-":
            if seen_factor or coeff is not None:
                flush(col)
            if m.group("op") == "-":
                sign = -sign
            continue
        if m.lastgroup == "op" and m.group("op") == "*":
            if not seen_factor and coeff is None:
                raise ParseError("dangling '*'", line_no, col)
            continue
        if m.lastgroup == "op" and m.group("op") == "^":
            raise ParseError("dangling '^'", line_no, col)
        if m.lastgroup == "num":
            if seen_factor or coeff is not None:
                raise ParseError("coefficient must lead its term", line_no, col)
            coeff = qq(m.group("num"))
            continue
        sym = m.group("sym")
        idx = gen_index.get(sym)
        if idx is None:
            raise ParseError(f"unknown generator {sym!r}", line_no, col)
        exp = 1
        caret = _TOKEN.match(text, pos)
        if caret and caret.lastgroup == "op" and caret.group("op") == "^":
            pos = caret.end()
            numtok = _TOKEN.match(text, pos)
            if not numtok or numtok.lastgroup != "num" or "/" in numtok.group("num"):
                raise ParseError("integer exponent expected after '^'", line_no, pos + 1)
            exp = int(numtok.group("num"))
            pos = numtok.end()
        if exps is None:
            exps = [0] * ngens
        exps[idx] += exp
        seen_factor = True
    if seen_factor or coeff is not None:
        flush(len(text))
    if not terms:
        raise ParseError("empty polynomial", line_no, 1)
    out = {}
    for m, c in terms:
        s = out.get(m, ZERO) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def split_blocks(text: str):
    """Split a file into algebra blocks plus trailing directive lines."""
    blocks = []
    extras = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split(None, 1)[0]
        if head == "algebra":
            current = []
            blocks.append(current)
        if head in ("algebra", "vars", "rel"):
            if current is None:
                raise ParseError(f"{head!r} before any `algebra` line", lineno)
            current.append((lineno, line))
        else:
            extras.append((lineno, line))
    return blocks, extras


def parse_algebra_block(lines) -> GradedAlgebra:
    name = None
    gens = []
    weights = []
    rels_raw = []
    for lineno, line in lines:
        parts = line.split(None, 1)
        head, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if head == "algebra":
            if name is not None:
                raise ParseError("duplicate `algebra` line", lineno)
            if not rest.strip():
                raise ParseError("algebra needs a name", lineno)
            name = rest.strip()
        elif head == "vars":
            for item in rest.split():
                if ":" not in item:
                    raise ParseError(f"expected sym:weight, got {item!r}", lineno)
                sym, wtxt = item.split(":", 1)
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", sym):
                    raise ParseError(f"bad generator name {sym!r}", lineno)
                try:
                    w = int(wtxt)
                except ValueError:
                    raise ParseError(f"bad weight {wtxt!r}", lineno) from None
                if w <= 0:
                    raise ZeroWeightGeneratorError(
                        f"generator {sym} has non-positive weight {w}", lineno
                    )
                gens.append(sym)
                weights.append((w,))
        elif head == "rel":
            rels_raw.append((lineno, rest))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if name is None:
        raise ParseError("missing `algebra` line", lines[0][0] if lines else 1)
    rels = [parse_poly(rest, gens, lineno) for lineno, rest in rels_raw]
    return GradedAlgebra(name, gens, weights, rels)


def parse_algebra(text: str) -> GradedAlgebra:
    """Build an algebra from its text presentation.

    Grammar: `algebra <name>`, then `vars <sym>:<weight> ...`, then any
    number of `rel <polynomial>` lines.  `#` starts a comment.
    """
    blocks, extras = split_blocks(text)
    if extras:
        lineno, line = extras[0]
        raise ParseError(f"unexpected directive {line.split()[0]!r}", lineno)
    if len(blocks) != 1:
        raise ParseError(f"expected exactly one algebra block, found {len(blocks)}")
    return parse_algebra_block(blocks[0])
