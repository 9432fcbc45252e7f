"""Differential forms of presented graded algebras.

Omega^p is presented as the free module on dg_{i1} ^ ... ^ dg_{ip} over
the algebra, modulo d(relations) wedged against (p-1)-forms; everything is
sliced by weight and handled by exact linear algebra on the presentation.
The antisymmetrization map into the bar slice realizes the smooth-case
comparison, and the kernel of Omega^p(A) -> Omega^p(Atil) measures the
torsion forms a normalization kills.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial

from .rationals import QQ, ZERO
from .linalg import SparseMatrix, QuotientSpace
from .errors import PreconditionError
from .algebra import GradedAlgebra, GradedHom, vec_add, vec_total


class DifferentialForms:
    """Weight slices of Omega^p for one algebra, with exact class coords."""

    def __init__(self, algebra: GradedAlgebra, gb_bound: int = 32):
        self.algebra = algebra
        self.gb_bound = gb_bound
        self._slices = {}

    def wedges(self, p: int):
        return tuple(combinations(range(self.algebra.ngens), p))

    def wedge_weight(self, wedge) -> tuple:
        w = self.algebra.zero_weight
        for i in wedge:
            w = vec_add(w, self.algebra.weights[i])
        return w

    def partials(self, rel):
        """d(rel) as {generator index: polynomial coefficient of dg_i}."""
        alg = self.algebra
        out = {}
        for m, c in rel.items():
            for i, e in enumerate(m):
                if e:
                    lowered = list(m)
                    lowered[i] -= 1
                    out.setdefault(i, {})
                    mono = tuple(lowered)
                    s = out[i].get(mono, ZERO) + c * e
                    if s:
                        out[i][mono] = s
                    else:
                        out[i].pop(mono, None)
        return {i: alg.nf(p) for i, p in out.items() if p}

    def slice(self, p: int, w) -> "OmegaSlice":
        w = self.algebra._coerce_weight(w)
        key = (p, w)
        cached = self._slices.get(key)
        if cached is None:
            cached = OmegaSlice(self, p, w)
            self._slices[key] = cached
        return cached

    def dim(self, p: int, w) -> int:
        if p < 0:
            return 0
        return self.slice(p, w).dim


class OmegaSlice:
    """The weight-w component of Omega^p: free basis modulo relation rows."""

    def __init__(self, forms: DifferentialForms, p: int, w):
        self.forms = forms
        self.p = p
        self.w = w
        alg = forms.algebra
        basis = []
        for wedge in forms.wedges(p):
            ww = forms.wedge_weight(wedge)
            rest = tuple(a - b for a, b in zip(w, ww))
            if any(x < 0 for x in rest):
                continue
            for m in alg.weight_basis(rest):
                basis.append((m, wedge))
        self.free_basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.free_basis)}
        nfree = len(self.free_basis)
        rel_cols = [row for row in self._relation_rows() if row]
        self.space = QuotientSpace(
            SparseMatrix.from_columns(nfree, rel_cols) if rel_cols
            else SparseMatrix.zero(nfree, 0),
            SparseMatrix.zero(0, nfree),
        )
        self.dim = self.space.dim

    def _relation_rows(self):
        alg = self.forms.algebra
        relations = alg.reduced_relations(
            max(self.forms.gb_bound, vec_total(self.w))
        )
        p, w = self.p, self.w
        if p == 0:
            return
        for rel in relations:
            rw = alg.poly_weight(rel)
            for wedge in self.forms.wedges(p - 1):
                ww = self.forms.wedge_weight(wedge)
                base = tuple(a - b - c for a, b, c in zip(w, rw, ww))
                if any(x < 0 for x in base):
                    continue
                for m in alg.weight_basis(base):
                    yield self._relation_row(rel, m, wedge)

    def _relation_row(self, rel, mono, wedge):
        """m * d(rel) ^ dg_wedge expanded over the free basis."""
        alg = self.forms.algebra
        row = {}
        for i, coeff in self.forms.partials(rel).items():
            if i in wedge:
                continue
            bigger = tuple(sorted((i,) + wedge))
            sign = -1 if bigger.index(i) % 2 else 1
            scaled = alg.multiply({mono: QQ(1)}, coeff)
            for mm, c in scaled.items():
                idx = self.index.get((mm, bigger))
                if idx is None:
                    continue
                s = row.get(idx, ZERO) + sign * c
                if s:
                    row[idx] = s
                else:
                    row.pop(idx, None)
        return row

    def class_reps(self):
        """Free-basis indices representing a deterministic slice basis."""
        return tuple(min(rep) for rep in self.space.reps)

    def coords(self, vec):
        """Class coordinates over class_reps of a free-basis vector."""
        return self.space.coords(vec)


def omega_dims(algebra: GradedAlgebra, p: int, w) -> int:
    """dim of the weight-w component of Omega^p over QQ."""
    if p < 0:
        raise PreconditionError("p >= 0 required")
    return DifferentialForms(algebra).dim(p, w)


def de_rham_matrix(forms: DifferentialForms, p: int, w) -> SparseMatrix:
    """d: Omega^p -> Omega^{p+1} on class coordinates at weight w."""
    alg = forms.algebra
    src = forms.slice(p, w)
    dst = forms.slice(p + 1, w)
    entries = {}
    for col, ridx in enumerate(src.class_reps()):
        mono, wedge = src.free_basis[ridx]
        img = {}
        for i, e in enumerate(mono):
            if not e or i in wedge:
                continue
            lowered = list(mono)
            lowered[i] -= 1
            bigger = tuple(sorted((i,) + wedge))
            sign = QQ(e) * (-1 if bigger.index(i) % 2 else 1)
            for mm, c in alg.nf_mono(tuple(lowered)).items():
                idx = dst.index.get((mm, bigger))
                if idx is None:
                    continue
                s = img.get(idx, ZERO) + sign * c
                if s:
                    img[idx] = s
                else:
                    img.pop(idx, None)
        for i, v in dst.coords(img).items():
            entries[(i, col)] = v
    return SparseMatrix(dst.dim, src.dim, entries)


def hkr_matrix(algebra: GradedAlgebra, n: int, w, ctx=None) -> SparseMatrix:
    """Antisymmetrization Omega^n -> C_n on the (n, w) slice.

    a0 dg_{i1}^...^dg_{in} maps to (1/n!) sum_sigma sgn(sigma)
    a0[g_{i sigma(1)}|...|g_{i sigma(n)}]; the image consists of cycles and
    the 1/n! makes the map split the top Hodge idempotent.
    """
    from .barcomplex import SliceContext
    from .hodge import _perms, _sign

    if ctx is None:
        ctx = SliceContext(algebra)
    w = algebra._coerce_weight(w)
    forms = DifferentialForms(algebra)
    src = forms.slice(n, w)
    index = ctx.index(n, w)
    scale = QQ(1, factorial(n)) if n else QQ(1)
    entries = {}
    for col, ridx in enumerate(src.class_reps()):
        mono, wedge = src.free_basis[ridx]
        gens = [algebra.gen_poly(i) for i in wedge]
        for perm in _perms(n):
            entry_monos = []
            for k in range(n):
                poly = gens[perm[k]]
                entry_monos.append(next(iter(poly)))
            tensor = (mono, *entry_monos)
            i = index.get(tensor)
            if i is None:
                continue
            c = scale * _sign(perm)
            key = (i, col)
            s = entries.get(key, ZERO) + c
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
    return SparseMatrix(len(index), src.dim, entries)


def hkr_class_rank(algebra: GradedAlgebra, n: int, w, engine=None) -> int:
    """Rank of the antisymmetrization map into HH_n classes at weight w."""
    from .homology import HomologyEngine

    if engine is None:
        engine = HomologyEngine(algebra)
    w = algebra._coerce_weight(w)
    mat = hkr_matrix(algebra, n, w, engine.ctx)
    space = engine.hh_space(n, w)
    entries = {}
    cols = {}
    for (i, j), v in mat.items():
        cols.setdefault(j, {})[i] = v
    for j in range(mat.cols):
        for i, v in space.coords(cols.get(j, {})).items():
            entries[(i, j)] = v
    return SparseMatrix(space.dim, mat.cols, entries).rank()


def torsion_dims(hom: GradedHom, p: int, w) -> int:
    """dim of the weight-w kernel of Omega^p(A) -> Omega^p(Atil)."""
    mat = omega_hom_matrix(hom, p, w)
    return mat.cols - mat.rank()


def omega_hom_matrix(hom: GradedHom, p: int, w) -> SparseMatrix:
    """Induced map on Omega^p class coordinates at weight w."""
    A, B = hom.domain, hom.codomain
    w = A._coerce_weight(w)
    fa = DifferentialForms(A)
    fb = DifferentialForms(B)
    src = fa.slice(p, w)
    dst = fb.slice(p, w)
    # dg_i maps to sum_j (partial phi(g_i) / partial h_j) dh_j
    gen_images = []
    for i in range(A.ngens):
        gen_images.append(fb.partials(hom.images[i]))
    entries = {}
    for col, ridx in enumerate(src.class_reps()):
        mono, wedge = src.free_basis[ridx]
        head = hom.apply_mono(mono)
        img = {}
        for sign, hwedge, coeffpoly in _wedge_images(B, gen_images, wedge):
            scaled = B.multiply(head, coeffpoly)
            for mm, c in scaled.items():
                idx = dst.index.get((mm, hwedge))
                if idx is None:
                    continue
                s = img.get(idx, ZERO) + sign * c
                if s:
                    img[idx] = s
                else:
                    img.pop(idx, None)
        for i, v in dst.coords(img).items():
            entries[(i, col)] = v
    return SparseMatrix(dst.dim, src.dim, entries)


def _wedge_images(codomain, gen_images, wedge):
    """Expand the image of dg_{i1}^...^dg_{ip} over target wedges with signs."""
    from itertools import product as _product

    pools = [list(gen_images[i].items()) for i in wedge]
    for combo in _product(*pools) if pools else [()]:
        js = [j for j, _ in combo]
        if len(set(js)) != len(js):
            continue
        inv = sum(
            1
            for a in range(len(js))
            for b in range(a + 1, len(js))
            if js[a] > js[b]
        )
        sign = -1 if inv % 2 else 1
        poly = codomain.one()
        for _, coeff in combo:
            poly = codomain.multiply(poly, coeff)
        yield sign, tuple(sorted(js)), poly


@dataclass
class SmoothnessVerdict:
    status: str  # SMOOTH | SINGULAR | INDETERMINATE
    non_reduced: bool = False
    zero_divisors: bool = False
    witness_weights: tuple = ()
    note: str = ""


def jacobian_smooth(algebra: GradedAlgebra, probe: int = 24) -> SmoothnessVerdict:
    """Jacobian criterion for a connected graded presentation.

    A free presentation is smooth.  Otherwise all Jacobian entries are
    normal-formed: for a connected graded algebra the Jacobian ideal is the
    unit ideal only if some entry has a constant term (an eliminable
    generator, reported INDETERMINATE as a non-minimal presentation); with
    every entry in the graded maximal ideal the origin is singular.
    """
    relations = algebra.reduced_relations(probe)
    non_reduced = any(
        algebra.nilpotent_upto(algebra.gen_poly(i), probe)
        for i in range(algebra.ngens)
    )
    if not relations:
        return SmoothnessVerdict("SMOOTH")
    zero_div = algebra.zero_divisor_probe(probe) is not None
    forms = DifferentialForms(algebra)
    weights = set()
    for rel in relations:
        for i, coeff in forms.partials(rel).items():
            if not coeff:
                continue
            w = algebra.poly_weight(coeff)
            if w is not None and vec_total(w) == 0:
                return SmoothnessVerdict(
                    "INDETERMINATE",
                    note="a Jacobian entry is a unit: presentation has an "
                    "eliminable generator",
                )
            if w is not None:
                weights.add(vec_total(w))
    return SmoothnessVerdict(
        "SINGULAR",
        non_reduced=non_reduced,
        zero_divisors=zero_div,
        witness_weights=tuple(sorted(weights)),
        note="nilpotent generator" if non_reduced else "Jacobian ideal is graded-proper",
    )
