"""Spectral sequences of finite filtered cochain complexes.

Pages are computed from subspace towers, never from successive-quotient
complexes: every E_r dimension is a difference of two subspace dimensions

    Z_r^{p,q} = F^p C^{p+q}  intersect  D^{-1}(F^{p+r} C^{p+q+1})
    B_r^{p,q} = Z_{r-1}^{p+1,q-1} + D(Z_{r-1}^{p-r+1,q+r-2})

and differential ranks are ranks of maps induced on the corresponding
quotients.  Everything is exact and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bimodule import (
    Bimodule,
    LeftModule,
    dual_of_module,
    ideal_as_quotient_module,
    push_down,
    symmetrize,
)
from .cochain import (
    CochainComplex,
    CohomologyTable,
    alt_embedding,
    build_epi_triple,
    cl_complex,
    cohomology,
    cr_complex,
    quotient_complex,
)
from .errors import AxiomError, ChainMapError, LinAlgError
from .linalg import (
    QuotientSpace,
    SparseMatrix,
    Subspace,
    induced_map,
    kernel_basis,
    map_subspace,
    mat_lincomb,
    preimage,
)
from .linalg import rank as _rank


class FilteredComplex:
    """A cochain complex with a decreasing filtration by subspaces.

    filt[n] is the chain [F^0, F^1, ..., F^top(n)] of subspaces of degree n,
    with F^0 the full space; compatibility D(F^p) <= F^p is checked and an
    incompatible input is rejected with the offending (p, degree).
    """

    def __init__(self, cx: CochainComplex, filt):
        self.complex = cx
        self.filt = [list(chain) for chain in filt]
        self._zcache = {}
        if len(self.filt) > len(cx.dims):
            raise LinAlgError("filtration extends beyond the complex")
        for n, chain in enumerate(self.filt):
            if not chain or chain[0].dim != cx.dims[n]:
                raise LinAlgError(f"filtration at degree {n} must start with the full space")
            for p in range(1, len(chain)):
                if not chain[p - 1].contains(chain[p]):
                    raise ChainMapError(f"filtration is not decreasing at (p={p}, degree={n})")
        for n in range(len(self.filt) - 1):
            for p, space in enumerate(self.filt[n]):
                img = map_subspace(cx.diffs[n], space)
                if not self._stage(n + 1, p).contains(img):
                    raise ChainMapError(
                        f"differential does not respect the filtration at (p={p}, degree={n})"
                    )

    def _stage(self, n, p) -> Subspace:
        """F^p in degree n, with F^p = full for p <= 0 and 0 past the chain."""
        chain = self.filt[n]
        if p <= 0:
            return chain[0]
        if p >= len(chain):
            return Subspace.zero(self.complex.field, self.complex.dims[n])
        return chain[p]

    @property
    def top_degree(self):
        return len(self.filt) - 1

    def cycle_space(self, r, p, q) -> Subspace:
        """Z_r^{p,q} = F^p C^n meet D^{-1}(F^{p+r} C^{n+1}); F^p for r <= 0."""
        n = p + q
        key = (max(r, 0), p, n)
        got = self._zcache.get(key)
        if got is not None:
            return got
        base = self._stage(n, p)
        if r <= 0:
            out = base  # compatibility makes the d-condition vacuous
        else:
            target = self._stage(n + 1, p + r)
            if target.dim == self.complex.dims[n + 1]:
                out = base
            else:
                out = base.intersection(preimage(self.complex.diffs[n], target))
        self._zcache[key] = out
        return out

    def boundary_space(self, r, p, q) -> Subspace:
        """B_r^{p,q} = Z_{r-1}^{p+1,q-1} + D(Z_{r-1}^{p-r+1,q+r-2})."""
        n = p + q
        part1 = self.cycle_space(r - 1, p + 1, q - 1)
        if n - 1 >= 0:
            src = self.cycle_space(r - 1, p - r + 1, q + r - 2)
            part2 = map_subspace(self.complex.diffs[n - 1], src)
            return part1.sum(part2)
        return part1


@dataclass
class PageTable:
    r: int
    entries: dict  # (p, q) -> dim E_r^{p,q}
    ranks: dict  # (p, q) -> rank of d_r leaving (p, q)

    def dim(self, p, q):
        return self.entries.get((p, q), 0)

    def rank(self, p, q):
        return self.ranks.get((p, q), 0)

    def total(self, n):
        return sum(v for (p, q), v in self.entries.items() if p + q == n)


def pages(fc: FilteredComplex, r_max, n_max) -> list:
    """Page tables E_0 ... E_r_max for total degree <= n_max."""
    cx = fc.complex
    if n_max + 2 > fc.top_degree:
        raise LinAlgError("filtration not built deep enough for requested n_max")

    out = []
    prev = None
    for r in range(r_max + 1):
        entries = {}
        ranks = {}
        quots = {}
        for n in range(n_max + 2):
            for p in range(0, len(fc.filt[n]) + 1):
                q = n - p
                z = fc.cycle_space(r, p, q)
                b = fc.boundary_space(r, p, q)
                if not z.contains(b):
                    raise AxiomError(f"boundary tower left the cycle tower at (r={r},p={p},q={q})")
                dim = z.dim - b.dim
                if n <= n_max:
                    entries[(p, q)] = dim
                quots[(p, q)] = (z, b)
        for (p, q), (z, b) in quots.items():
            n = p + q
            if n > n_max:
                continue
            tgt = quots.get((p + r, q - r + 1))
            if tgt is None or entries.get((p, q), 0) == 0:
                ranks[(p, q)] = 0
                continue
            tz, tb = tgt
            if tz.dim == tb.dim:
                ranks[(p, q)] = 0
                continue
            mat = induced_map(
                cx.diffs[n], QuotientSpace(z, b), QuotientSpace(tz, tb)
            )
            ranks[(p, q)] = _rank(mat)
        page = PageTable(r, entries, ranks)
        if prev is not None:
            for (p, q), dim in entries.items():
                expect = prev.dim(p, q) - prev.rank(p, q) - prev.rank(p - (r - 1), q + (r - 1) - 1)
                if dim != expect:
                    raise AxiomError(
                        f"page recurrence failed at (r={r},p={p},q={q}): {dim} != {expect}"
                    )
        out.append(page)
        prev = page
    return out


def pages_stabilized(page_list) -> bool:
    """True when the last two pages agree and the last differentials vanish."""
    if len(page_list) < 2:
        return False
    last, before = page_list[-1], page_list[-2]
    if any(last.ranks.values()):
        return False
    return last.entries == before.entries


@dataclass
class ConvergenceReport:
    rows: list  # (n, limit_total, target_dim)
    ok: bool
    stabilized: bool


def convergence_check(page_list, target_dims, n_max) -> ConvergenceReport:
    """Sum of stabilized E_r dims along each anti-diagonal vs target dims."""
    last = page_list[-1]
    rows = []
    ok = True
    for n in range(n_max + 1):
        total = last.total(n)
        rows.append((n, total, target_dims[n]))
        ok = ok and total == target_dims[n]
    return ConvergenceReport(rows, ok, pages_stabilized(page_list))


# -- annihilator subspaces for the two filtrations -------------------------------


def _annihilator_of_tensors(field, d, arity, generators) -> Subspace:
    """Cochains (tuple part only) vanishing on a family of tensors."""
    cols = [dict() for _ in range(d**arity)]
    for row, tensor in enumerate(generators):
        for trank, v in tensor.items():
            cols[trank][row] = v
    mat = SparseMatrix(field, len(generators), d**arity, cols)
    return kernel_basis(mat)


def _tensor_with_module(span: Subspace, m) -> list:
    """Columns of span (tuple space) tensored with the module identity."""
    cols = []
    for b in span.basis_columns():
        for mm in range(m):
            cols.append({t * m + mm: v for t, v in b.items()})
    return cols


def filtration_ideal(L, ideal: Subspace, M: Bimodule, n_max, max_nnz=None):
    """Filtration by how early an argument can sit in a central ideal.

    Requires a two-sided ideal contained in the left center that annihilates
    the bimodule on both sides.  Returns (FilteredComplex, target table): the
    filtered complex is the shifted quotient by the image of the cochains of
    L/ideal, so the pages converge to the relative cohomology of the
    canonical projection.
    """
    f = L.field
    problems = []
    if not L.is_ideal(ideal):
        problems.append("not a two-sided ideal")
    if not L.left_center().contains(ideal):
        problems.append("ideal is not contained in the left center")
    for v in ideal.basis_columns():
        left = mat_lincomb(f, M.dim, M.dim, [(c, M.left[i]) for i, c in v.items()])
        right = mat_lincomb(f, M.dim, M.dim, [(c, M.right[i]) for i, c in v.items()])
        if not left.is_zero():
            problems.append("ideal acts nontrivially on the left of the module")
            break
        if not right.is_zero():
            problems.append("ideal acts nontrivially on the right of the module")
            break
    if problems:
        raise AxiomError("filtration_ideal preconditions failed: " + "; ".join(problems))

    Q, pi = L.quotient_by_ideal(ideal)
    M_Q = push_down(pi, M)
    triple = build_epi_triple(pi, M_Q, n_max + 1, max_nnz=max_nnz)
    shifted = triple.C.shifted(1)
    if triple.C.dims[0] != 0:
        raise AxiomError("quotient complex does not vanish in degree 0")
    table = CohomologyTable(
        "relative_epi", shifted.cohomology_dims(n_max), algebra=L.name, module=M.name
    )

    d, m = L.dim, M.dim
    ideal_cols = ideal.basis_columns()
    filt = []
    for n in range(len(shifted.dims)):
        arity = n + 1
        proj = Subspace.from_matrix_image(triple.inj[arity]).quotient_map()
        chain = [Subspace.full(f, shifted.dims[n])]
        for p in range(1, n + 2):
            gens = []
            for slot in range(p):
                for v in ideal_cols:
                    for T in product(range(d), repeat=arity - 1):
                        tensor = {}
                        for k, val in v.items():
                            Y = T[:slot] + (k,) + T[slot:]
                            rnk = 0
                            for t in Y:
                                rnk = rnk * d + t
                            tensor[rnk] = val
                        gens.append(tensor)
            ann = _annihilator_of_tensors(f, d, arity, gens)
            cols = _tensor_with_module(ann, m)
            if p == n + 1:
                # the deepest stage must be exactly the embedded quotient cochains
                stage_big = Subspace.from_columns(f, d**arity * m, cols)
                if stage_big != Subspace.from_matrix_image(triple.inj[arity]):
                    raise AxiomError(
                        f"deepest filtration stage differs from the quotient cochains at degree {n}"
                    )
                chain.append(Subspace.zero(f, shifted.dims[n]))
            else:
                chain.append(
                    Subspace.from_columns(f, shifted.dims[n], [proj.matvec(c) for c in cols])
                )
        filt.append(chain)
    return FilteredComplex(shifted, filt), table


def filtration_rel(g, M: LeftModule, n_max, max_nnz=None):
    """Filtration of the relative complex by adjacent-equality conditions.

    Stage p consists of classes killed by every tensor with two equal
    adjacent entries among the first p+1 slots; equivalently the annihilator
    of Ker(tensor^{p+1} -> alternating^{p+1}) tensored with the remaining
    arguments.  Returns (FilteredComplex, relative cohomology table).
    """
    if not g.is_lie():
        raise AxiomError("filtration_rel needs a Lie algebra")
    f = g.field
    ms = symmetrize(M)
    depth = n_max + 4
    big = cl_complex(g, ms, depth - 1, max_nnz=max_nnz)
    alts = [Subspace.from_matrix_image(alt_embedding(g, M.dim, n)) for n in range(depth + 1)]
    quo, projs = quotient_complex(big, alts)
    shifted = quo.shifted(2)
    if quo.dims[0] != 0 or quo.dims[1] != 0:
        raise AxiomError("relative complex does not vanish in degrees 0 and 1")
    table = CohomologyTable("relative", shifted.cohomology_dims(n_max), algebra=g.name, module=M.name)

    d, m = g.dim, M.dim
    sym_pairs = []
    for u in range(d):
        sym_pairs.append({(u, u): f.one()})
    for u in range(d):
        for v in range(u + 1, d):
            sym_pairs.append({(u, v): f.one(), (v, u): f.one()})

    filt = []
    for n in range(len(shifted.dims)):
        arity = n + 2
        proj = projs[arity]
        chain = [Subspace.full(f, shifted.dims[n])]
        for p in range(1, n + 2):
            s = p + 1  # adjacent-equality conditions confined to the first s slots
            gens = []
            for a in range(s - 1):
                for pair in sym_pairs:
                    for T in product(range(d), repeat=arity - 2):
                        tensor = {}
                        for (u, v), val in pair.items():
                            Y = T[:a] + (u, v) + T[a:]
                            rnk = 0
                            for t in Y:
                                rnk = rnk * d + t
                            tensor[rnk] = tensor.get(rnk, f.zero())
                            tensor[rnk] = f.add(tensor[rnk], val)
                        gens.append({k: w for k, w in tensor.items() if not f.is_zero(w)})
            ann = _annihilator_of_tensors(f, d, arity, gens)
            cols = _tensor_with_module(ann, m)
            if p == n + 1:
                stage_big = Subspace.from_columns(f, d**arity * m, cols)
                if stage_big != alts[arity]:
                    raise AxiomError(
                        f"deepest filtration stage is not the alternating subspace at degree {n}"
                    )
                chain.append(Subspace.zero(f, shifted.dims[n]))
            else:
                chain.append(
                    Subspace.from_columns(f, shifted.dims[n], [proj.matvec(c) for c in cols])
                )
        filt.append(chain)
    return FilteredComplex(shifted, filt), table


# -- published second-page descriptions -------------------------------------------


@dataclass
class E2Report:
    rows: list  # (p, q, machine, formula)
    ok: bool


def e2_check_rel(g, M: LeftModule, n_max, max_nnz=None) -> E2Report:
    """Machine E_2 of the relative filtration vs HR^p x HL^q(g, M_s)."""
    fc, _ = filtration_rel(g, M, n_max, max_nnz=max_nnz)
    pg = pages(fc, 2, n_max)
    _, hr = cr_complex(g, n_max, max_nnz=max_nnz)
    hl = cohomology(g, symmetrize(M), n_max, max_nnz=max_nnz)
    rows = []
    ok = True
    for p in range(n_max + 1):
        for q in range(n_max + 1 - p):
            machine = pg[2].dim(p, q)
            formula = hr.dims[p] * hl.dims[q]
            rows.append((p, q, machine, formula))
            ok = ok and machine == formula
    return E2Report(rows, ok)


def e2_check_ideal(L, ideal: Subspace, M: Bimodule, n_max, max_nnz=None) -> E2Report:
    """Machine E_2 of the central-ideal filtration vs HL^p(Q,(I*)_s) x HL^q(L,M).

    The published product description assumes a symmetric coefficient
    bimodule; the machine side is computed from the filtration either way.
    """
    if not M.is_symmetric():
        raise AxiomError("the product form of the second page needs a symmetric bimodule")
    fc, _ = filtration_ideal(L, ideal, M, n_max, max_nnz=max_nnz)
    pg = pages(fc, 2, n_max)
    Q, pi = L.quotient_by_ideal(ideal)
    ideal_mod = ideal_as_quotient_module(pi, ideal)
    coeff = symmetrize(dual_of_module(ideal_mod))
    hp = cohomology(Q, coeff, n_max, max_nnz=max_nnz)
    hq = cohomology(L, M, n_max, max_nnz=max_nnz)
    rows = []
    ok = True
    for p in range(n_max + 1):
        for q in range(n_max + 1 - p):
            machine = pg[2].dim(p, q)
            formula = hp.dims[p] * hq.dims[q]
            rows.append((p, q, machine, formula))
            ok = ok and machine == formula
    return E2Report(rows, ok)
