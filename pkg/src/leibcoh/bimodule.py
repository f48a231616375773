"""Left modules and bimodules over left Leibniz algebras.

Actions are stored as one matrix per algebra basis element, acting on
coordinate columns.  Left and right actions are kept separately and never
derived from one another implicitly.  Every constructor validates the module
identities on all basis pairs.
"""

from __future__ import annotations

from .errors import AxiomError, LinAlgError
from .linalg import (
    SparseMatrix,
    Subspace,
    kernel_basis,
    mat_lincomb,
)


def _commutator_defects(algebra, mats):
    """Pairs (i, j) where action(x_i x_j) != [action(x_i), action(x_j)]."""
    bad = []
    d = algebra.dim
    m = mats[0].rows if mats else 0
    f = algebra.field
    for i in range(d):
        for j in range(d):
            terms = [(1, mats[i].matmul(mats[j])), (-1, mats[j].matmul(mats[i]))]
            for k, c in algebra.basis_product(i, j).items():
                terms.append((f.neg(c), mats[k]))
            if not mat_lincomb(f, m, m, terms).is_zero():
                bad.append((i, j))
    return bad


class LeftModule:
    """A left module: matrices A_i with (x_i . m) = A_i m.

    Validated against (x y) . m = x . (y . m) - y . (x . m).
    """

    def __init__(self, algebra, mats, validate=True, name=""):
        self.algebra = algebra
        self.field = algebra.field
        if len(mats) != algebra.dim:
            raise AxiomError("need one action matrix per basis element")
        self.dim = mats[0].rows if mats else 0
        for a in mats:
            if a.rows != a.cols or a.rows != self.dim:
                raise AxiomError("action matrices must be square of equal size")
        self.left = list(mats)
        self.name = name
        if validate:
            bad = _commutator_defects(algebra, self.left)
            if bad:
                raise AxiomError(f"left module identity fails at basis pairs {bad[:4]}", violations=bad)

    def action_matrix(self, i) -> SparseMatrix:
        return self.left[i]

    def act(self, x: dict, m: dict) -> dict:
        out = {}
        f = self.field
        for i, c in x.items():
            img = self.left[i].matvec(m)
            for r, v in img.items():
                cur = out.get(r)
                s = f.mul(c, v) if cur is None else f.add(cur, f.mul(c, v))
                if f.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def __repr__(self):
        return f"LeftModule({self.name or '?'}, dim={self.dim} over {self.algebra!r})"


class Bimodule(LeftModule):
    """A bimodule: left matrices A_i and right matrices B_i with (m . x_i) = B_i m.

    Validated against the two mixed identities
        (x . m) . y = x . (m . y) - m . (x y)
        (m . x) . y = m . (x y) - x . (m . y)
    in addition to the left-module identity.
    """

    def __init__(self, algebra, left_mats, right_mats, validate=True, name=""):
        super().__init__(algebra, left_mats, validate=validate, name=name)
        if len(right_mats) != algebra.dim:
            raise AxiomError("need one right action matrix per basis element")
        for b in right_mats:
            if b.rows != b.cols or b.rows != self.dim:
                raise AxiomError("right action matrices must match the module dimension")
        self.right = list(right_mats)
        if validate:
            bad = self.bimodule_violations()
            if bad:
                raise AxiomError(f"bimodule identities fail at {bad[:4]}", violations=bad)

    def bimodule_violations(self):
        """Labelled basis pairs violating either mixed identity."""
        bad = []
        f = self.field
        d = self.algebra.dim
        m = self.dim
        A, B = self.left, self.right
        for i in range(d):
            for j in range(d):
                prod = self.algebra.basis_product(i, j)
                # (x_i . m) . x_j - x_i . (m . x_j) + m . (x_i x_j) = 0
                terms = [(1, B[j].matmul(A[i])), (-1, A[i].matmul(B[j]))]
                for k, c in prod.items():
                    terms.append((c, B[k]))
                if not mat_lincomb(f, m, m, terms).is_zero():
                    bad.append(("mid", i, j))
                # (m . x_i) . x_j - m . (x_i x_j) + x_i . (m . x_j) = 0
                terms = [(1, B[j].matmul(B[i])), (1, A[i].matmul(B[j]))]
                for k, c in prod.items():
                    terms.append((f.neg(c), B[k]))
                if not mat_lincomb(f, m, m, terms).is_zero():
                    bad.append(("right", i, j))
        return bad

    def right_matrix(self, i) -> SparseMatrix:
        return self.right[i]

    def is_symmetric(self) -> bool:
        return all(b.add(a).is_zero() for a, b in zip(self.left, self.right))

    def is_antisymmetric(self) -> bool:
        return all(b.is_zero() for b in self.right)

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim} over {self.algebra!r})"


def check_bimodule(mod) -> list:
    """All identity violations (empty list means pass)."""
    bad = [("left",) + p for p in _commutator_defects(mod.algebra, mod.left)]
    if isinstance(mod, Bimodule):
        bad += mod.bimodule_violations()
    return bad


# -- constructions ------------------------------------------------------------


def symmetrize(mod: LeftModule) -> Bimodule:
    """The symmetric bimodule M_s with m . x := -x . m."""
    return Bimodule(
        mod.algebra,
        mod.left,
        [a.neg() for a in mod.left],
        name=f"({mod.name})_s" if mod.name else "",
    )


def antisymmetrize(mod: LeftModule) -> Bimodule:
    """The anti-symmetric bimodule M_a with trivial right action."""
    zero = SparseMatrix.zero(mod.field, mod.dim, mod.dim)
    return Bimodule(
        mod.algebra,
        mod.left,
        [zero] * mod.algebra.dim,
        name=f"({mod.name})_a" if mod.name else "",
    )


def trivial_module(algebra, dim=1) -> LeftModule:
    zero = SparseMatrix.zero(algebra.field, dim, dim)
    return LeftModule(algebra, [zero] * algebra.dim, name="F")


def trivial_bimodule(algebra, dim=1) -> Bimodule:
    return antisymmetrize(trivial_module(algebra, dim))


def weight_module(algebra, weights) -> LeftModule:
    """One-dimensional module x_i . m = lambda_i m for a functional lambda.

    The functional must vanish on all basis products (checked via the module
    axiom like everything else).
    """
    f = algebra.field
    mats = []
    names = {nm: i for i, nm in enumerate(algebra.basis_names)}
    lam = [f.zero()] * algebra.dim
    for key, val in weights.items():
        lam[names[key] if isinstance(key, str) else key] = f.canon(val)
    for i in range(algebra.dim):
        mats.append(SparseMatrix(f, 1, 1, [{0: lam[i]}]))
    return LeftModule(algebra, mats, name="F_lambda")


def adjoint_left(algebra) -> LeftModule:
    """The left adjoint module: x acts by left multiplication."""
    mats = [algebra.left_mult_matrix(i) for i in range(algebra.dim)]
    return LeftModule(algebra, mats, name=f"{algebra.name}_adl")


def adjoint_bimodule(algebra) -> Bimodule:
    """Left and right multiplication acting on the algebra itself."""
    left = [algebra.left_mult_matrix(i) for i in range(algebra.dim)]
    right = [algebra.right_mult_matrix(i) for i in range(algebra.dim)]
    return Bimodule(algebra, left, right, name=f"{algebra.name}_ad")


def dual_module(algebra) -> LeftModule:
    """Linear forms with (x . f)(y) = -f(x y)."""
    mats = [algebra.left_mult_matrix(i).transpose().neg() for i in range(algebra.dim)]
    return LeftModule(algebra, mats, name=f"{algebra.name}*")


def ideal_as_left_module(algebra, ideal) -> LeftModule:
    """A left ideal as a left module via left multiplication."""
    f = algebra.field
    basis = ideal.basis_columns()
    mats = []
    for i in range(algebra.dim):
        cols = []
        for v in basis:
            img = algebra.mul({i: f.one()}, v)
            e = ideal.express(img)
            if e is None:
                raise AxiomError("subspace is not invariant under left multiplication")
            cols.append(e)
        mats.append(SparseMatrix(f, ideal.dim, ideal.dim, cols))
    return LeftModule(algebra, mats, name="ideal")


def dual_of_module(mod: LeftModule) -> LeftModule:
    """Dual of a left module: (x . f)(m) = -f(x . m)."""
    mats = [a.transpose().neg() for a in mod.left]
    return LeftModule(mod.algebra, mats, name=f"{mod.name}*")


def ideal_as_quotient_module(morphism, ideal) -> LeftModule:
    """A central ideal as a left module over the canonical quotient.

    The action of a quotient basis element is left multiplication by its
    canonical coordinate section; well-definedness needs the ideal to kill
    the ideal from the left, which holds inside the left center.
    """
    src, tgt = morphism.source, morphism.target
    f = src.field
    if not src.left_center().contains(ideal):
        raise AxiomError("ideal must be contained in the left center")
    comp = ideal.complement_rows()
    basis = ideal.basis_columns()
    mats = []
    for b in range(tgt.dim):
        rep = comp[b]
        cols = []
        for v in basis:
            img = src.mul({rep: f.one()}, v)
            e = ideal.express(img)
            if e is None:
                raise AxiomError("subspace is not a left ideal")
            cols.append(e)
        mats.append(SparseMatrix(f, ideal.dim, ideal.dim, cols))
    return LeftModule(tgt, mats, name="ideal")


def hom_module(algebra, mod: LeftModule) -> LeftModule:
    """Hom(L, M) with (x . f)(y) = x . f(y) - f(x y).

    Basis f_(j, m) sends basis element y_j to module basis vector m; flat
    index j * dim(M) + m.
    """
    f = algebra.field
    d, m = algebra.dim, mod.dim
    dim = d * m
    mats = []
    for i in range(d):
        cols = []
        act = mod.left[i]
        for j in range(d):
            for mm in range(m):
                col = {}
                for r, v in act.col(mm):
                    col[j * m + r] = v
                for jp in range(d):
                    c = algebra.table[i][jp].get(j)
                    if c is not None:
                        key = jp * m + mm
                        cur = col.get(key)
                        s = f.neg(c) if cur is None else f.sub(cur, c)
                        if f.is_zero(s):
                            col.pop(key, None)
                        else:
                            col[key] = s
                cols.append(col)
        mats.append(SparseMatrix(f, dim, dim, cols))
    return LeftModule(algebra, mats, name=f"Hom({algebra.name},{mod.name})")


def tensor_modules(m1: LeftModule, m2: LeftModule) -> LeftModule:
    """M (x) N with x . (m (x) n) = (x . m) (x) n + m (x) (x . n)."""
    if m1.algebra is not m2.algebra:
        raise AxiomError("tensor factors must live over the same algebra")
    f = m1.field
    a, b = m1.dim, m2.dim
    dim = a * b
    mats = []
    for i in range(m1.algebra.dim):
        A, B = m1.left[i], m2.left[i]
        cols = []
        for u in range(a):
            acol = A.col(u)
            for v in range(b):
                col = {}
                for r, w in acol:
                    col[r * b + v] = w
                for r, w in B.col(v):
                    key = u * b + r
                    cur = col.get(key)
                    s = w if cur is None else f.add(cur, w)
                    if f.is_zero(s):
                        col.pop(key, None)
                    else:
                        col[key] = s
                cols.append(col)
        mats.append(SparseMatrix(f, dim, dim, cols))
    return LeftModule(m1.algebra, mats, name=f"{m1.name}(x){m2.name}")


def restrict_along(morphism, mod):
    """Pull a module over the target back to the source along a morphism."""
    pi = morphism.matrix
    f = morphism.source.field
    m = mod.dim

    def pull(mats):
        out = []
        for i in range(morphism.source.dim):
            img = pi.matvec({i: f.one()})
            out.append(mat_lincomb(f, m, m, [(c, mats[b]) for b, c in img.items()]))
        return out

    if isinstance(mod, Bimodule):
        return Bimodule(morphism.source, pull(mod.left), pull(mod.right), name=mod.name)
    return LeftModule(morphism.source, pull(mod.left), name=mod.name)


def push_down(morphism, mod):
    """Move a module over the source to the quotient target.

    Requires ker(pi) to act trivially; actions of quotient basis elements are
    those of any preimage, using the canonical section of the projection.
    """
    src, tgt = morphism.source, morphism.target
    pi = morphism.matrix
    f = src.field
    # section: quotient basis b -> source basis vector with pi(section) = e_b
    sections = []
    for b in range(tgt.dim):
        found = None
        for i in range(src.dim):
            if pi.matvec({i: f.one()}) == {b: f.one()}:
                found = i
                break
        if found is None:
            raise LinAlgError("projection admits no coordinate section; not a canonical quotient")
        sections.append(found)
    kern = kernel_basis(pi)
    for v in kern.basis_columns():
        for mats in ([mod.left, mod.right] if isinstance(mod, Bimodule) else [mod.left]):
            acted = mat_lincomb(f, mod.dim, mod.dim, [(c, mats[i]) for i, c in v.items()])
            if not acted.is_zero():
                raise AxiomError("kernel of the projection does not act trivially")
    left = [mod.left[s] for s in sections]
    if isinstance(mod, Bimodule):
        right = [mod.right[s] for s in sections]
        return Bimodule(tgt, left, right, name=mod.name)
    return LeftModule(tgt, left, name=mod.name)


# -- invariants and friends ----------------------------------------------------


def invariants(mod: Bimodule, ideal=None) -> Subspace:
    """{m : m . x = 0 for all x in I}; I defaults to the whole algebra.

    I must be a left ideal (checked) so the result is a sub-bimodule.
    """
    alg = mod.algebra
    f = mod.field
    if ideal is None:
        actions = list(mod.right)
    else:
        if not alg.is_left_ideal(ideal):
            raise AxiomError("invariants requires a left ideal")
        actions = [
            mat_lincomb(f, mod.dim, mod.dim, [(c, mod.right[i]) for i, c in v.items()])
            for v in ideal.basis_columns()
        ]
    if not actions:
        return Subspace.full(f, mod.dim)
    cols = [dict() for _ in range(mod.dim)]
    for blk, mtx in enumerate(actions):
        off = blk * mod.dim
        for j in range(mod.dim):
            for r, v in mtx.col(j):
                cols[j][off + r] = v
    stacked = SparseMatrix(f, mod.dim * len(actions), mod.dim, cols)
    return kernel_basis(stacked)


def annihilator(mod: Bimodule) -> Subspace:
    """{x : x . m = 0 = m . x for all m} as a subspace of the algebra."""
    alg = mod.algebra
    f = mod.field
    m2 = mod.dim * mod.dim
    cols = []
    for i in range(alg.dim):
        col = {}
        for j in range(mod.dim):
            for r, v in mod.left[i].col(j):
                col[j * mod.dim + r] = v
            for r, v in mod.right[i].col(j):
                col[m2 + j * mod.dim + r] = v
        cols.append(col)
    stacked = SparseMatrix(f, 2 * m2, alg.dim, cols)
    return kernel_basis(stacked)


def sub_bimodule(mod: Bimodule, space: Subspace) -> Bimodule:
    """Restrict the actions to an invariant subspace (checked)."""
    f = mod.field
    basis = space.basis_columns()

    def restrict(mats):
        out = []
        for a in mats:
            cols = []
            for b in basis:
                img = a.matvec(b)
                e = space.express(img)
                if e is None:
                    raise AxiomError("subspace is not invariant under the actions")
                cols.append(e)
            out.append(SparseMatrix(f, space.dim, space.dim, cols))
        return out

    return Bimodule(mod.algebra, restrict(mod.left), restrict(mod.right), name=f"{mod.name}|sub")


def quotient_bimodule(mod: Bimodule, space: Subspace) -> Bimodule:
    """Quotient actions by an invariant subspace (well-definedness checked)."""
    f = mod.field
    proj = space.quotient_map()
    comp = space.complement_rows()

    def descend(mats):
        out = []
        for a in mats:
            for b in space.basis_columns():
                if proj.matvec(a.matvec(b)):
                    raise AxiomError("subspace is not invariant; quotient action undefined")
            cols = [proj.matvec(a.matvec({r: f.one()})) for r in comp]
            out.append(SparseMatrix(f, len(comp), len(comp), cols))
        return out

    return Bimodule(mod.algebra, descend(mod.left), descend(mod.right), name=f"{mod.name}|quo")


def antisym_kernel(mod: Bimodule):
    """(M_0, M_0 as bimodule, M/M_0): span of x.m + m.x, then sub and quotient.

    M_0 is anti-symmetric and M/M_0 symmetric; both facts are re-checked.
    """
    f = mod.field
    gens = []
    for i in range(mod.algebra.dim):
        s = mod.left[i].add(mod.right[i])
        for j in range(mod.dim):
            col = s.col_dict(j)
            if col:
                gens.append(col)
    space = Subspace.from_columns(f, mod.dim, gens)
    msub = sub_bimodule(mod, space)
    mquo = quotient_bimodule(mod, space)
    if not msub.is_antisymmetric():
        raise AxiomError("anti-symmetric kernel is not anti-symmetric")
    if not mquo.is_symmetric():
        raise AxiomError("quotient by the anti-symmetric kernel is not symmetric")
    return space, msub, mquo


def hom_space_dim(m1: LeftModule, m2: LeftModule) -> int:
    """dim of {phi : phi(x . m) = x . phi(m)} via a linear solve."""
    return intertwiner_space(m1, m2).dim


def intertwiner_space(m1: LeftModule, m2: LeftModule) -> Subspace:
    """The full space of module maps, flattened as in hom_space_dim."""
    if m1.algebra is not m2.algebra:
        raise AxiomError("hom space needs modules over the same algebra")
    f = m1.field
    a, b = m1.dim, m2.dim
    d = m1.algebra.dim
    cols = [dict() for _ in range(a * b)]
    for i in range(d):
        A1, A2 = m1.left[i], m2.left[i]
        base = i * a * b
        for c in range(a):
            for r, v in A1.col(c):
                for s in range(b):
                    key = base + s * a + c
                    unk = s * a + r
                    cur = cols[unk].get(key)
                    nv = v if cur is None else f.add(cur, v)
                    if f.is_zero(nv):
                        cols[unk].pop(key, None)
                    else:
                        cols[unk][key] = nv
        for c2 in range(b):
            for s, v in A2.col(c2):
                for r in range(a):
                    key = base + s * a + r
                    unk = c2 * a + r
                    cur = cols[unk].get(key)
                    nv = f.neg(v) if cur is None else f.sub(cur, v)
                    if f.is_zero(nv):
                        cols[unk].pop(key, None)
                    else:
                        cols[unk][key] = nv
    stacked = SparseMatrix(f, d * a * b, a * b, cols)
    return kernel_basis(stacked)


def sl2_irreducible(g, n: int) -> LeftModule:
    """The (n+1)-dimensional weight module of sl2 (basis order e, h, f).

    h . v_j = (n - 2j) v_j, f . v_j = v_{j+1}, e . v_j = j (n - j + 1) v_{j-1}.
    Over F_p the highest weight must satisfy 0 <= n <= p - 1; for n < p the
    module is irreducible, which is certified by generation from every
    weight vector.
    """
    f = g.field
    if g.name != "sl2" or g.dim != 3:
        raise AxiomError("sl2_irreducible expects the catalog sl2 algebra")
    if n < 0:
        raise AxiomError("highest weight must be non-negative")
    if f.kind == "Fp" and not 0 <= n <= f.p - 1:
        raise AxiomError(f"over F_{f.p} the highest weight must lie in [0, {f.p - 1}]")
    dim = n + 1
    e_cols = [dict() for _ in range(dim)]
    h_cols = [dict() for _ in range(dim)]
    f_cols = [dict() for _ in range(dim)]
    for j in range(dim):
        coee = f.from_int(j * (n - j + 1))
        if not f.is_zero(coee) and j >= 1:
            e_cols[j][j - 1] = coee
        ch = f.from_int(n - 2 * j)
        if not f.is_zero(ch):
            h_cols[j][j] = ch
        if j + 1 < dim:
            f_cols[j][j + 1] = f.one()
    mats = [
        SparseMatrix(f, dim, dim, e_cols),
        SparseMatrix(f, dim, dim, h_cols),
        SparseMatrix(f, dim, dim, f_cols),
    ]
    mod = LeftModule(g, mats, name=f"L({n})")
    if f.kind == "Fp" and n < f.p and not is_irreducible_by_generation(mod):
        raise AxiomError("weight module unexpectedly reducible")
    return mod


def is_irreducible_by_generation(mod: LeftModule) -> bool:
    """Certify irreducibility by generating from every standard basis vector.

    Sufficient for weight modules whose basis vectors span the candidate
    invariant subspaces; not a general irreducibility test.
    """
    f = mod.field
    for start in range(mod.dim):
        span = Subspace.from_columns(f, mod.dim, [{start: f.one()}])
        changed = True
        while changed:
            changed = False
            new = []
            for b in span.basis_columns():
                for a in mod.left:
                    img = a.matvec(b)
                    if img and not span.contains_vector(img):
                        new.append(img)
            if new:
                span = Subspace.from_columns(f, mod.dim, span.basis_columns() + new)
                changed = True
        if span.dim != mod.dim:
            return False
    return True
