"""Cochain complexes and cohomology of left Leibniz algebras.

Multilinear n-cochains are coordinatized by elementary cochains e_(T, m):
the map sending the basis tuple T = (t_1, ..., t_n) to the m-th module basis
vector and every other basis tuple to zero.  Flat index = rank(T) * dim(M) + m
with tuples ranked lexicographically, so the module index varies fastest.

The alternating (Chevalley-Eilenberg) complex of a Lie algebra is realized as
the subcomplex of cochains vanishing on tuples with two equal adjacent
entries; its differential is obtained by expressing the restricted
coboundary in the strictly-increasing-tuple basis.  This is valid in every
characteristic, including 2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations, product

from .bimodule import (
    Bimodule,
    LeftModule,
    dual_module,
    hom_module,
    restrict_along,
    symmetrize,
    trivial_module,
)
from .errors import AxiomError, ChainMapError, LinAlgError, ResourceLimitError
from .linalg import (
    Eliminated,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    image_basis,
    induced_map,
    kernel_basis,
    rank,
)

DEFAULT_MAX_NNZ = 10**7


def max_nnz_budget() -> int:
    env = os.environ.get("LEIBCOH_MAX_NNZ")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_NNZ


def _estimate_nnz(L, M, n, with_right):
    d, m = L.dim, M.dim
    ncols = d**n * m
    amax = max((max((len(c) for c in a.columns), default=0) for a in M.left), default=0)
    per = (n + (0 if with_right else 1)) * d * amax
    if with_right:
        bmax = max((max((len(c) for c in b.columns), default=0) for b in M.right), default=0)
        per += d * bmax
    pmax = max((len(p) for p in L.pairs_into), default=0)
    per += n * (n + 1) // 2 * pmax
    return ncols * per


def _check_budget(L, M, n, with_right, max_nnz):
    budget = max_nnz if max_nnz is not None else max_nnz_budget()
    est = _estimate_nnz(L, M, n, with_right)
    if est > budget:
        raise ResourceLimitError(
            f"degree-{n} differential would have ~{est} structural nonzeros "
            f"(budget {budget}; raise LEIBCOH_MAX_NNZ to override)"
        )


def _coboundary(L, M, n, with_right, max_nnz=None) -> SparseMatrix:
    """Assemble the degree-n coboundary matrix column by column."""
    _check_budget(L, M, n, with_right, max_nnz)
    f = L.field
    d, m = L.dim, M.dim
    rows_dim = d ** (n + 1) * m
    cols_dim = d**n * m
    pairs_into = L.pairs_into
    A = M.left
    B = M.right if with_right else None
    act_positions = n if with_right else n + 1
    cols = []
    dpow = [1] * (n + 2)
    for k in range(1, n + 2):
        dpow[k] = dpow[k - 1] * d
    for T in product(range(d), repeat=n):
        pre = [0] * (n + 1)  # rank of T[:i]
        for i in range(n):
            pre[i + 1] = pre[i] * d + T[i]
        suf = [0] * (n + 1)  # rank of T[i:]
        for i in range(n - 1, -1, -1):
            suf[i] = T[i] * dpow[n - 1 - i] + suf[i + 1]
        for mm in range(m):
            col = {}

            def put(flat, val):
                cur = col.get(flat)
                s = val if cur is None else f.add(cur, val)
                if f.is_zero(s):
                    col.pop(flat, None)
                else:
                    col[flat] = s

            # left-action terms: insert the acting element at position i0
            for i0 in range(act_positions):
                neg = i0 % 2 == 1
                shift = dpow[n - i0]
                head = pre[i0] * d * shift
                tail = suf[i0] if i0 < n else 0
                for a in range(d):
                    base = (head + a * shift + tail) * m
                    for r, v in A[a].col(mm):
                        put(base + r, f.neg(v) if neg else v)
            if with_right:
                # right-action term on the last argument
                neg = (n + 1) % 2 == 1
                head = pre[n] * d
                for a in range(d):
                    base = (head + a) * m
                    for r, v in B[a].col(mm):
                        put(base + r, f.neg(v) if neg else v)
            # product terms: arguments at i0 < j0 multiply into slot j0-1 of T
            for j0 in range(1, n + 1):
                k = T[j0 - 1]
                into = pairs_into[k]
                if not into:
                    continue
                for i0 in range(j0):
                    neg = i0 % 2 == 0  # sign (-1)^(i0+1)
                    midlen = j0 - 1 - i0
                    mid = pre[j0 - 1] - pre[i0] * dpow[midlen]
                    tail = suf[j0] if j0 < n else 0
                    for a, b, c in into:
                        yrank = ((pre[i0] * d + a) * dpow[midlen] + mid) * d + b
                        yrank = yrank * dpow[n - j0] + tail
                        put(yrank * m + mm, f.neg(c) if neg else c)
            cols.append(col)
    return SparseMatrix(f, rows_dim, cols_dim, cols)


def coboundary_bimodule(L, M: Bimodule, n, max_nnz=None) -> SparseMatrix:
    """Coboundary CL^n(L, M) -> CL^(n+1)(L, M) for a bimodule M."""
    if not isinstance(M, Bimodule):
        raise AxiomError("coboundary_bimodule needs a bimodule")
    if M.algebra is not L:
        raise AxiomError("module is not over the given algebra")
    return _coboundary(L, M, n, with_right=True, max_nnz=max_nnz)


def coboundary_left(L, M: LeftModule, n, max_nnz=None) -> SparseMatrix:
    """Coboundary for a left module (no right-action term)."""
    if isinstance(M, Bimodule):
        raise AxiomError("coboundary_left expects a plain left module")
    if M.algebra is not L:
        raise AxiomError("module is not over the given algebra")
    return _coboundary(L, M, n, with_right=False, max_nnz=max_nnz)


class CochainComplex:
    """A finite truncation of a cochain complex.

    dims has one entry per degree 0..top; diffs[n] maps degree n to n+1 and
    there is one for every degree but the last.  d o d = 0 is asserted at
    construction.  Cohomology is computable for degrees < top.
    """

    def __init__(self, field, dims, diffs, validate=True):
        if len(diffs) != len(dims) - 1:
            raise LinAlgError("need exactly one differential per non-top degree")
        for n, dmat in enumerate(diffs):
            if dmat.cols != dims[n] or dmat.rows != dims[n + 1]:
                raise LinAlgError(f"differential {n} has wrong shape")
        self.field = field
        self.dims = list(dims)
        self.diffs = list(diffs)
        if validate:
            for n in range(len(diffs) - 1):
                if not diffs[n + 1].matmul(diffs[n]).is_zero():
                    raise AxiomError(f"d o d != 0 between degrees {n} and {n + 2}")
        self._cocycles = {}
        self._cobound = {}

    @property
    def top(self):
        return len(self.dims) - 1

    def cocycles(self, n) -> Subspace:
        if n not in self._cocycles:
            if n >= len(self.diffs):
                raise LinAlgError(f"no differential stored at degree {n}")
            self._cocycles[n] = kernel_basis(self.diffs[n])
        return self._cocycles[n]

    def coboundaries(self, n) -> Subspace:
        if n not in self._cobound:
            if n == 0:
                self._cobound[n] = Subspace.zero(self.field, self.dims[0])
            else:
                self._cobound[n] = image_basis(self.diffs[n - 1])
        return self._cobound[n]

    def cohomology_dim(self, n) -> int:
        kernel_dim = self.dims[n] - rank(self.diffs[n])
        image_rank = rank(self.diffs[n - 1]) if n > 0 else 0
        return kernel_dim - image_rank

    def cohomology_dims(self, n_max) -> list:
        if n_max >= len(self.diffs):
            raise LinAlgError("complex not built far enough")
        ranks = [rank(self.diffs[n]) for n in range(n_max + 1)]
        out = []
        for n in range(n_max + 1):
            out.append(self.dims[n] - ranks[n] - (ranks[n - 1] if n > 0 else 0))
        return out

    def cohomology_space(self, n) -> QuotientSpace:
        return QuotientSpace(self.cocycles(n), self.coboundaries(n))

    def shifted(self, k) -> "CochainComplex":
        """Drop the first k degrees.

        When the dropped spaces are zero this relabels cohomology by a
        degree shift; otherwise it truncates (no incoming differential at
        the new degree 0).
        """
        return CochainComplex(self.field, self.dims[k:], self.diffs[k:], validate=False)


def cl_complex(L, M: Bimodule, n_max, max_nnz=None) -> CochainComplex:
    """The Leibniz cochain complex of a bimodule, through degree n_max + 1."""
    diffs = [coboundary_bimodule(L, M, n, max_nnz=max_nnz) for n in range(n_max + 1)]
    dims = [d.cols for d in diffs] + [diffs[-1].rows]
    return CochainComplex(L.field, dims, diffs)


def cl_left_complex(L, M: LeftModule, n_max, max_nnz=None) -> CochainComplex:
    diffs = [coboundary_left(L, M, n, max_nnz=max_nnz) for n in range(n_max + 1)]
    dims = [d.cols for d in diffs] + [diffs[-1].rows]
    return CochainComplex(L.field, dims, diffs)


# -- alternating (Chevalley-Eilenberg) subcomplex ------------------------------


def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def alt_embedding(L, module_dim, n) -> SparseMatrix:
    """Embedding of alternating cochains into CL^n coordinates.

    Column (I, m) for a strictly increasing tuple I is the signed sum of the
    elementary cochains over all permutations of I.
    """
    f = L.field
    d = L.dim
    m = module_dim
    rows_dim = d**n * m
    cols = []
    signs = {perm: _perm_sign(perm) for perm in permutations(range(n))}
    for I in combinations(range(d), n):
        for mm in range(m):
            col = {}
            for perm, sgn in signs.items():
                tup = [I[p] for p in perm]
                rnk = 0
                for t in tup:
                    rnk = rnk * d + t
                col[rnk * m + mm] = f.one() if sgn > 0 else f.neg(f.one())
            cols.append(col)
    ncols = len(cols)
    return SparseMatrix(f, rows_dim, ncols, cols)


class CEData:
    """CE complex of a Lie algebra in the increasing-tuple basis.

    Carries the embeddings into the Leibniz complex of the symmetrized
    module, which realize the complex as a subcomplex.
    """

    def __init__(self, g, module: LeftModule, n_max, max_nnz=None):
        if not g.is_lie():
            raise AxiomError("Chevalley-Eilenberg complex needs a Lie algebra")
        if module.algebra is not g:
            raise AxiomError("module is not over the given algebra")
        ms = symmetrize(module)
        self.g = g
        self.module = module
        self.embeddings = [alt_embedding(g, module.dim, n) for n in range(n_max + 2)]
        cl_diffs = [coboundary_bimodule(g, ms, n, max_nnz=max_nnz) for n in range(n_max + 1)]
        diffs = []
        for n in range(n_max + 1):
            solver = Eliminated(self.embeddings[n + 1], history=True)
            cols = []
            for j in range(self.embeddings[n].cols):
                w = cl_diffs[n].matvec(self.embeddings[n].col_dict(j))
                x = solver.solve(w)
                if x is None:
                    raise ChainMapError(
                        "coboundary of an alternating cochain is not alternating"
                    )
                cols.append(x)
            diffs.append(
                SparseMatrix(g.field, self.embeddings[n + 1].cols, self.embeddings[n].cols, cols)
            )
        dims = [e.cols for e in self.embeddings[: n_max + 2]]
        self.complex = CochainComplex(g.field, dims, diffs)
        self.cl_diffs = cl_diffs


def ce_complex(g, module: LeftModule, n_max, max_nnz=None) -> CochainComplex:
    """CE complex matrix data; see CEData for the embedded version."""
    return CEData(g, module, n_max, max_nnz=max_nnz).complex


def ce_coboundary(g, module: LeftModule, n, max_nnz=None) -> SparseMatrix:
    """Single CE differential in the strictly-increasing-tuple basis."""
    return CEData(g, module, n, max_nnz=max_nnz).complex.diffs[n]


# -- quotient complexes --------------------------------------------------------


def quotient_complex(cx: CochainComplex, subspaces):
    """Quotient of a complex by a degreewise subcomplex.

    Checks D(S_n) <= S_(n+1) and returns (quotient complex, projections).
    """
    if len(subspaces) != len(cx.dims):
        raise LinAlgError("need one subspace per degree")
    f = cx.field
    for n, s in enumerate(subspaces):
        if s.ambient != cx.dims[n]:
            raise LinAlgError(f"subspace at degree {n} has wrong ambient dimension")
    for n in range(len(cx.diffs)):
        tgt = subspaces[n + 1]
        for b in subspaces[n].basis_columns():
            if not tgt.contains_vector(cx.diffs[n].matvec(b)):
                raise ChainMapError(f"subspaces are not a subcomplex at degree {n}")
    projs = [s.quotient_map() for s in subspaces]
    dims = [p.rows for p in projs]
    diffs = []
    for n in range(len(cx.diffs)):
        comp = subspaces[n].complement_rows()
        cols = [projs[n + 1].matvec(cx.diffs[n].col_dict(r)) for r in comp]
        diffs.append(SparseMatrix(f, dims[n + 1], dims[n], cols))
    return CochainComplex(f, dims, diffs), projs


# -- cohomology tables -----------------------------------------------------------


@dataclass
class CohomologyTable:
    variant: str
    dims: list
    algebra: str = ""
    module: str = ""
    meta: dict = dc_field(default_factory=dict)

    @property
    def degrees(self):
        return list(range(len(self.dims)))

    def __getitem__(self, n):
        return self.dims[n]


def cohomology(L, M, n_max, variant="leibniz_bimodule", max_nnz=None) -> CohomologyTable:
    """Per-degree cohomology dimensions for one of the three complexes."""
    if variant == "leibniz_bimodule":
        cx = cl_complex(L, M, n_max, max_nnz=max_nnz)
    elif variant == "leibniz_left":
        cx = cl_left_complex(L, M, n_max, max_nnz=max_nnz)
    elif variant == "chevalley_eilenberg":
        cx = ce_complex(L, M, n_max, max_nnz=max_nnz)
    else:
        raise LinAlgError(f"unknown variant {variant!r}")
    dims = cx.cohomology_dims(n_max)
    return CohomologyTable(variant, dims, algebra=L.name, module=getattr(M, "name", ""))


# -- the three standard short exact triples --------------------------------------


class ComplexMap:
    """A degreewise linear map of complexes; commutation with the
    differentials is asserted at construction."""

    def __init__(self, source: CochainComplex, target: CochainComplex, mats):
        self.source = source
        self.target = target
        self.mats = list(mats)
        for n, m in enumerate(self.mats):
            if m.cols != source.dims[n] or m.rows != target.dims[n]:
                raise LinAlgError(f"complex map has wrong shape at degree {n}")
        for n in range(min(len(self.mats) - 1, len(source.diffs), len(target.diffs))):
            if target.diffs[n].matmul(self.mats[n]) != self.mats[n + 1].matmul(source.diffs[n]):
                raise ChainMapError(f"map does not commute with the differentials at degree {n}")

    def __getitem__(self, n):
        return self.mats[n]


@dataclass
class ComplexTriple:
    """A degreewise short exact sequence 0 -> A -> B -> C -> 0 of complexes."""

    A: CochainComplex
    B: CochainComplex
    C: CochainComplex
    inj: list  # SparseMatrix per degree, A^n -> B^n
    proj: list  # SparseMatrix per degree, B^n -> C^n

    def maps(self):
        """The two sides as validated complex maps."""
        return ComplexMap(self.A, self.B, self.inj), ComplexMap(self.B, self.C, self.proj)


def epi_embedding_matrix(pi, module_dim, n) -> SparseMatrix:
    """Pull-back matrix CL^n(Q, M) -> CL^n(L, M) along an epimorphism."""
    f = pi.source.field
    dl, dq = pi.source.dim, pi.target.dim
    m = module_dim
    rows = [dict() for _ in range(dq)]  # row b of pi as {a: value}
    for a in range(dl):
        for b, v in pi.matrix.col(a):
            rows[b][a] = v
    cols = []
    for B in product(range(dq), repeat=n):
        # partial[t] maps ranks of L-tuples of length t to products of entries
        partial = {0: f.one()}
        for b in B:
            nxt = {}
            for rnk, val in partial.items():
                for a, v in rows[b].items():
                    key = rnk * dl + a
                    w = f.mul(val, v)
                    cur = nxt.get(key)
                    s = w if cur is None else f.add(cur, w)
                    if f.is_zero(s):
                        nxt.pop(key, None)
                    else:
                        nxt[key] = s
            partial = nxt
        for mm in range(m):
            cols.append({rnk * m + mm: v for rnk, v in partial.items()})
    return SparseMatrix(f, dl**n * m, dq**n * m, cols)


def build_epi_triple(pi, M_Q: Bimodule, n_max, max_nnz=None) -> ComplexTriple:
    """0 -> CL(Q, M) -> CL(L, M) -> quotient -> 0 for an epimorphism pi."""
    if not pi.is_surjective():
        raise AxiomError("relative complex needs a surjective morphism")
    if M_Q.algebra is not pi.target:
        raise AxiomError("module must live over the quotient algebra")
    M_L = restrict_along(pi, M_Q)
    top = n_max + 2
    A = cl_complex(pi.target, M_Q, top - 1, max_nnz=max_nnz)
    B = cl_complex(pi.source, M_L, top - 1, max_nnz=max_nnz)
    inj = [epi_embedding_matrix(pi, M_Q.dim, n) for n in range(top + 1)]
    subs = [Subspace.from_matrix_image(inj[n]) for n in range(top + 1)]
    C, projs = quotient_complex(B, subs)
    return ComplexTriple(A, B, C, inj, projs)


def relative_epi_complex(pi, M_Q: Bimodule, n_max, max_nnz=None):
    """Quotient complex of an epimorphism and its cohomology table.

    Degree n classes are represented by (n+1)-cochains of the source, so the
    underlying quotient complex is consumed with a one-step shift.
    """
    triple = build_epi_triple(pi, M_Q, n_max, max_nnz=max_nnz)
    shifted = triple.C.shifted(1)
    dims = shifted.cohomology_dims(n_max)
    table = CohomologyTable(
        "relative_epi", dims, algebra=pi.source.name, module=getattr(M_Q, "name", "")
    )
    return shifted, table


def build_relcoh_triple(g, M: LeftModule, n_max, max_nnz=None) -> ComplexTriple:
    """0 -> CE(g, M) -> CL(g, M_s) -> quotient -> 0 for a Lie algebra g."""
    ce = CEData(g, M, n_max + 1, max_nnz=max_nnz)
    ms = symmetrize(M)
    top = n_max + 2
    B = cl_complex(g, ms, top - 1, max_nnz=max_nnz)
    inj = ce.embeddings[: top + 1]
    A = ce.complex
    subs = [Subspace.from_matrix_image(inj[n]) for n in range(top + 1)]
    C, projs = quotient_complex(B, subs)
    return ComplexTriple(A, B, C, inj, projs)


def rel_complex(g, M: LeftModule, n_max, max_nnz=None):
    """Relative complex comparing alternating and full multilinear cochains.

    Degree n classes are represented by (n+2)-argument cochains; the quotient
    complex is consumed with a two-step shift.
    """
    triple = build_relcoh_triple(g, M, n_max + 1, max_nnz=max_nnz)
    shifted = triple.C.shifted(2)
    dims = shifted.cohomology_dims(n_max)
    return shifted, CohomologyTable("relative", dims, algebra=g.name, module=M.name)


def exterior_dual_matrix(g, n) -> SparseMatrix:
    """Matrix of currying the last argument: C^(n+1)(g, F) -> C^n(g, g*).

    Sends the elementary alternating cochain at the increasing tuple J to the
    signed sum over t of the cochain at J minus its t-th element with values
    in the dual coordinate J[t].
    """
    f = g.field
    d = g.dim
    src_tuples = list(combinations(range(d), n + 1))
    dst_index = {I: i for i, I in enumerate(combinations(range(d), n))}
    cols = []
    for J in src_tuples:
        col = {}
        for t in range(n + 1):
            I = J[:t] + J[t + 1 :]
            sgn = 1 if (n - t) % 2 == 0 else -1
            flat = dst_index[I] * d + J[t]
            col[flat] = f.one() if sgn > 0 else f.neg(f.one())
        cols.append(col)
    return SparseMatrix(f, len(dst_index) * d, len(src_tuples), cols)


def build_coadj_triple(g, n_max, max_nnz=None) -> ComplexTriple:
    """0 -> C(g, F)[shift] -> C(g, g*) -> quotient -> 0.

    The source complex in degree n is the trivial-coefficient CE complex in
    degree n + 1 (the truncation only removes the empty degree -1 part).
    """
    top = n_max + 2
    triv = ce_complex(g, trivial_module(g), top, max_nnz=max_nnz)
    A = triv.shifted(1)
    B = ce_complex(g, dual_module(g), top - 1, max_nnz=max_nnz)
    inj = [exterior_dual_matrix(g, n) for n in range(top + 1)]
    subs = [Subspace.from_matrix_image(inj[n]) for n in range(top + 1)]
    C, projs = quotient_complex(B, subs)
    return ComplexTriple(A, B, C, inj, projs)


def cr_complex(g, n_max, max_nnz=None):
    """Cokernel of the dual exterior-multiplication embedding, with table.

    Degree p classes are represented by (p+1)-argument alternating cochains
    with dual-space values, so they carry p+2 arguments in total.
    """
    triple = build_coadj_triple(g, n_max, max_nnz=max_nnz)
    shifted = triple.C.shifted(1)
    dims = shifted.cohomology_dims(n_max)
    return shifted, CohomologyTable("hr", dims, algebra=g.name, module="F")


# -- long exact sequence verification ---------------------------------------------


@dataclass
class LESDegreeReport:
    degree: int
    dims: tuple  # (dim H^n A, dim H^n B, dim H^n C)
    ranks: tuple  # (rank H(inj), rank H(proj), rank connecting)
    exact_at_B: bool
    exact_at_C: bool
    exact_at_A_next: bool


@dataclass
class LESReport:
    degrees: list
    ok: bool
    failures: list


def les_exactness(triple: ComplexTriple, n_max, check_alternative_lift=False) -> LESReport:
    """Verify the long exact cohomology sequence of a short exact triple.

    First validates the triple at the cochain level (injectivity,
    surjectivity, exactness in the middle, chain-map identities), then builds
    the induced and connecting maps through degree n_max and checks rank
    equals kernel dimension at every node.
    """
    A, B, C = triple.A, triple.B, triple.C
    inj, proj = triple.inj, triple.proj
    failures = []
    for n in range(n_max + 2):
        inj_rank = rank(inj[n])
        proj_rank = rank(proj[n])
        if inj_rank != A.dims[n]:
            raise ChainMapError(f"injection fails at degree {n}")
        if proj_rank != C.dims[n]:
            raise ChainMapError(f"surjection fails at degree {n}")
        if not proj[n].matmul(inj[n]).is_zero():
            raise ChainMapError(f"composite proj o inj is nonzero at degree {n}")
        if inj_rank + proj_rank != B.dims[n]:
            raise ChainMapError(f"triple is not exact at the cochain level at degree {n}")
        if n <= n_max:
            if B.diffs[n].matmul(inj[n]) != inj[n + 1].matmul(A.diffs[n]):
                raise ChainMapError(f"injection is not a chain map at degree {n}")
            if C.diffs[n].matmul(proj[n]) != proj[n + 1].matmul(B.diffs[n]):
                raise ChainMapError(f"projection is not a chain map at degree {n}")

    ha = {n: A.cohomology_space(n) for n in range(n_max + 2)}
    hb = {n: B.cohomology_space(n) for n in range(n_max + 1)}
    hc = {n: C.cohomology_space(n) for n in range(n_max + 1)}
    hi = {n: induced_map(inj[n], ha[n], hb[n]) for n in range(n_max + 1)}
    hi[n_max + 1] = None  # rank needed only via kernel dims below
    hp = {n: induced_map(proj[n], hb[n], hc[n]) for n in range(n_max + 1)}

    # connecting homomorphisms by the zig-zag on chosen lifts
    proj_solvers = {n: Eliminated(proj[n], history=True) for n in range(n_max + 1)}
    inj_solvers = {n: Eliminated(inj[n], history=True) for n in range(1, n_max + 2)}
    delta = {}
    for n in range(n_max + 1):
        cols = []
        for rep in hc[n].representatives():
            b = proj_solvers[n].solve(rep)
            if b is None:
                raise ChainMapError("projection stopped being surjective")
            db = B.diffs[n].matvec(b)
            a = inj_solvers[n + 1].solve(db)
            if a is None:
                raise ChainMapError("zig-zag lift left the injected subcomplex")
            if n + 1 < len(A.diffs) and A.diffs[n + 1].matvec(a):
                raise ChainMapError("connecting representative is not a cocycle")
            coords = ha[n + 1].coords(a)
            if coords is None:
                raise ChainMapError("connecting value is not a cocycle class")
            cols.append(coords)
        delta[n] = SparseMatrix(A.field, ha[n + 1].dim, hc[n].dim, cols)
        if check_alternative_lift:
            alt = _connecting_with_reversed_lift(triple, n, ha, hc, proj_solvers[n])
            if alt != delta[n]:
                raise ChainMapError("connecting map depends on the chosen lift")

    hi_next_rank = {}
    for n in range(n_max + 2):
        if n <= n_max:
            hi_next_rank[n] = rank(hi[n])
        else:
            full = induced_map(inj[n], ha[n], B.cohomology_space(n)) if n < len(B.diffs) else None
            hi_next_rank[n] = rank(full) if full is not None else None

    rows = []
    ok = True
    for n in range(n_max + 1):
        ri = hi_next_rank[n]
        rp = rank(hp[n])
        rd = rank(delta[n])
        at_b = hp[n].matmul(hi[n]).is_zero() and ri == hb[n].dim - rp
        at_c = delta[n].matmul(hp[n]).is_zero() and rp == hc[n].dim - rd
        if hi_next_rank[n + 1] is not None:
            ker_next = ha[n + 1].dim - hi_next_rank[n + 1]
            compose_zero = (
                hi[n + 1].matmul(delta[n]).is_zero() if n + 1 <= n_max else True
            )
            at_a = compose_zero and rd == ker_next
        else:
            at_a = True
        if n == 0 and ri != ha[0].dim:
            failures.append((0, "head injectivity"))
            ok = False
        rows.append(
            LESDegreeReport(
                n, (ha[n].dim, hb[n].dim, hc[n].dim), (ri, rp, rd), at_b, at_c, at_a
            )
        )
        for node, good in (("B", at_b), ("C", at_c), ("A+1", at_a)):
            if not good:
                failures.append((n, node))
                ok = False
    return LESReport(rows, ok, failures)


def _connecting_with_reversed_lift(triple, n, ha, hc, _solver):
    """Recompute the degree-n connecting map using a different lift choice."""
    B = triple.B
    proj = triple.proj[n]
    rev = SparseMatrix(
        proj.field,
        proj.rows,
        proj.cols,
        [proj.col_dict(proj.cols - 1 - j) for j in range(proj.cols)],
    )
    solver = Eliminated(rev, history=True)
    inj_solver = Eliminated(triple.inj[n + 1], history=True)
    cols = []
    for rep in hc[n].representatives():
        x = solver.solve(rep)
        b = {proj.cols - 1 - j: v for j, v in x.items()}
        db = B.diffs[n].matvec(b)
        a = inj_solver.solve(db)
        coords = ha[n + 1].coords(a)
        cols.append(coords)
    return SparseMatrix(proj.field, ha[n + 1].dim, hc[n].dim, cols)


# -- invariant symmetric bilinear forms -----------------------------------------


@dataclass
class BilinearFormsResult:
    dim: int
    cartan_koszul_rank: int


def invariant_bilinear_forms(g, max_nnz=None) -> BilinearFormsResult:
    """Invariant symmetric bilinear forms and the rank of their degree-3 map.

    A form satisfies w(x y, z) = -w(y, x z).  Each basis form induces the
    alternating 3-cochain (x, y, z) -> w(x y, z); the result reports how many
    of these classes survive in third cohomology (zero rank means the map is
    zero).  Characteristic 2 is rejected: the identification of the form
    space with the relevant cohomology fails there.
    """
    if g.field.char == 2:
        raise AxiomError("invariant bilinear forms are not defined in characteristic 2 here")
    if not g.is_lie():
        raise AxiomError("invariant_bilinear_forms needs a Lie algebra")
    f = g.field
    d = g.dim
    keys = [(i, j) for i in range(d) for j in range(i, d)]
    pos = {k: i for i, k in enumerate(keys)}

    def key(i, j):
        return pos[(i, j) if i <= j else (j, i)]

    cols = [dict() for _ in range(len(keys))]
    row = 0
    for a in range(d):
        for b in range(d):
            for c in range(d):
                # sum_k c_abk w(k, c) + sum_k c_ack w(b, k) = 0
                for k, v in g.basis_product(a, b).items():
                    unk = key(k, c)
                    cur = cols[unk].get(row)
                    s = v if cur is None else f.add(cur, v)
                    if f.is_zero(s):
                        cols[unk].pop(row, None)
                    else:
                        cols[unk][row] = s
                for k, v in g.basis_product(a, c).items():
                    unk = key(b, k)
                    cur = cols[unk].get(row)
                    s = v if cur is None else f.add(cur, v)
                    if f.is_zero(s):
                        cols[unk].pop(row, None)
                    else:
                        cols[unk][row] = s
                row += 1
    system = SparseMatrix(f, row, len(keys), cols)
    forms = kernel_basis(system)
    if forms.dim == 0:
        return BilinearFormsResult(0, 0)

    ce = CEData(g, trivial_module(g), 3, max_nnz=max_nnz)
    d2 = ce.complex.diffs[2]
    d3 = ce.complex.diffs[3]
    triples = list(combinations(range(d), 3))
    tri_index = {t: i for i, t in enumerate(triples)}
    classes = []
    for w in forms.basis_columns():
        col = {}
        for (i, j, k), flat in tri_index.items():
            val = f.zero()
            for t, c in g.basis_product(i, j).items():
                val = f.add(val, f.mul(c, w.get(key(t, k), f.zero())))
            if not f.is_zero(val):
                col[flat] = val
        if d3.matvec(col):
            raise AxiomError("induced 3-cochain of an invariant form is not closed")
        classes.append(col)
    boundaries = image_basis(d2)
    total = Subspace.from_columns(f, len(triples), boundaries.basis_columns() + classes)
    return BilinearFormsResult(forms.dim, total.dim - boundaries.dim)


# -- dimension-shift checks -------------------------------------------------------


@dataclass
class ShiftCheckReport:
    rows: list  # (degree, lhs, rhs)
    ok: bool


def antisym_shift_check(L, M: LeftModule, n_max, max_nnz=None) -> ShiftCheckReport:
    """dim HL^n(L, M_a) vs dim HL^(n-1)(L, Hom(L, M)_s), plus the degree-0 value."""
    from .bimodule import antisymmetrize

    lhs = cohomology(L, antisymmetrize(M), n_max, max_nnz=max_nnz).dims
    hom_s = symmetrize(hom_module(L, M))
    rhs = cohomology(L, hom_s, max(n_max - 1, 0), max_nnz=max_nnz).dims
    rows = [(0, lhs[0], M.dim)]
    ok = lhs[0] == M.dim
    for n in range(1, n_max + 1):
        rows.append((n, lhs[n], rhs[n - 1]))
        ok = ok and lhs[n] == rhs[n - 1]
    return ShiftCheckReport(rows, ok)


def coadj_shift_check(L, n_max, max_nnz=None) -> ShiftCheckReport:
    """dim HL^n(L, F) vs dim HL^(n-1)(L, (L*)_s) for n >= 1."""
    from .bimodule import trivial_bimodule

    lhs = cohomology(L, trivial_bimodule(L), n_max, max_nnz=max_nnz).dims
    rhs = cohomology(L, symmetrize(dual_module(L)), max(n_max - 1, 0), max_nnz=max_nnz).dims
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        rows.append((n, lhs[n], rhs[n - 1]))
        ok = ok and lhs[n] == rhs[n - 1]
    return ShiftCheckReport(rows, ok)
