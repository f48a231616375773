"""Left Leibniz algebras given by structure constants, and a catalog.

An algebra is stored as a table of basis products x_i x_j = sum_k c_ijk x_k.
Construction validates the left Leibniz identity on all basis triples;
invalid tables never reach the cohomology layer.
"""

from __future__ import annotations

from .errors import AxiomError, LinAlgError, ParseError
from .fields import parse_field
from .linalg import SparseMatrix, Subspace, kernel_basis


def _table_mul(table, u: dict, w: dict, field) -> dict:
    """Product of two coordinate vectors under a structure-constant table."""
    out = {}
    for i, a in u.items():
        row = table[i]
        for j, b in w.items():
            prod = row[j]
            if not prod:
                continue
            ab = field.mul(a, b)
            for k, c in prod.items():
                cur = out.get(k)
                s = field.mul(ab, c) if cur is None else field.add(cur, field.mul(ab, c))
                if field.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
    return out


def leibniz_violations(field, dim, table):
    """Triples (i, j, k) where x_i (x_j x_k) != (x_i x_j) x_k + x_j (x_i x_k)."""
    bad = []
    basis = [{i: field.one()} for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = _table_mul(table, basis[i], _table_mul(table, basis[j], basis[k], field), field)
                r1 = _table_mul(table, _table_mul(table, basis[i], basis[j], field), basis[k], field)
                r2 = _table_mul(table, basis[j], _table_mul(table, basis[i], basis[k], field), field)
                for key, v in r2.items():
                    cur = r1.get(key)
                    s = v if cur is None else field.add(cur, v)
                    if field.is_zero(s):
                        r1.pop(key, None)
                    else:
                        r1[key] = s
                if lhs != r1:
                    bad.append((i, j, k))
    return bad


class LeibnizAlgebra:
    """A finite-dimensional left Leibniz algebra over an exact field."""

    def __init__(self, field, basis_names, products, validate=True, name=""):
        """`products` maps (i, j) or (name_i, name_j) to {k or name_k: scalar}."""
        self.field = field
        self.basis_names = list(basis_names)
        if len(set(self.basis_names)) != len(self.basis_names):
            raise AxiomError("basis names must be unique")
        self.dim = len(self.basis_names)
        self.name = name
        index = {nm: i for i, nm in enumerate(self.basis_names)}

        def idx(x):
            if isinstance(x, str):
                if x not in index:
                    raise ParseError(f"unknown basis name {x!r}")
                return index[x]
            if not 0 <= x < self.dim:
                raise ParseError(f"basis index {x} out of range")
            return x

        table = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (a, b), combo in products.items():
            entry = {}
            for k, v in combo.items():
                v = field.canon(field.parse(v) if isinstance(v, str) else v)
                if not field.is_zero(v):
                    entry[idx(k)] = v
            table[idx(a)][idx(b)] = entry
        self.table = table
        # pairs_into[k] = [(i, j, c_ijk)], used by the coboundary assembler
        self.pairs_into = [[] for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in table[i][j].items():
                    self.pairs_into[k].append((i, j, v))
        if validate:
            bad = leibniz_violations(field, self.dim, table)
            if bad:
                raise AxiomError(
                    f"left Leibniz identity fails at {len(bad)} basis triple(s), first {bad[0]}",
                    violations=bad,
                )

    # -- products ---------------------------------------------------------

    def mul(self, u: dict, w: dict) -> dict:
        return _table_mul(self.table, u, w, self.field)

    def basis_product(self, i, j) -> dict:
        return dict(self.table[i][j])

    def left_mult_matrix(self, i) -> SparseMatrix:
        """Matrix of y -> x_i y."""
        cols = [dict(self.table[i][j]) for j in range(self.dim)]
        return SparseMatrix(self.field, self.dim, self.dim, cols)

    def right_mult_matrix(self, j) -> SparseMatrix:
        """Matrix of y -> y x_j."""
        cols = [dict(self.table[i][j]) for i in range(self.dim)]
        return SparseMatrix(self.field, self.dim, self.dim, cols)

    # -- structural invariants ---------------------------------------------

    def leibniz_kernel(self) -> Subspace:
        """Span of all squares v v.

        Polarized: squares of basis vectors together with all pairwise
        products x_i x_j + x_j x_i, so the span is right in characteristic 2
        where cross terms are not recovered from basis squares alone.
        """
        f = self.field
        gens = []
        for i in range(self.dim):
            gens.append(dict(self.table[i][i]))
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                g = dict(self.table[i][j])
                for k, v in self.table[j][i].items():
                    cur = g.get(k)
                    s = v if cur is None else f.add(cur, v)
                    if f.is_zero(s):
                        g.pop(k, None)
                    else:
                        g[k] = s
                gens.append(g)
        return Subspace.from_columns(f, self.dim, gens)

    def left_center(self) -> Subspace:
        """{c : c x = 0 for all x}; contains the Leibniz kernel."""
        mats = [self.right_mult_matrix(j) for j in range(self.dim)]
        cols = [dict() for _ in range(self.dim)]
        for blk, m in enumerate(mats):
            off = blk * self.dim
            for j in range(self.dim):
                for r, v in m.col(j):
                    cols[j][off + r] = v
        stacked = SparseMatrix(self.field, self.dim * self.dim, self.dim, cols)
        return kernel_basis(stacked)

    def is_lie(self) -> bool:
        return self.leibniz_kernel().dim == 0

    def canonical_lie(self):
        """Quotient by the Leibniz kernel with its projection morphism."""
        quo, pi = self.quotient_by_ideal(self.leibniz_kernel(), name=f"{self.name}_Lie" if self.name else "")
        if not quo.is_lie():
            raise AxiomError("quotient by the Leibniz kernel is not Lie; input algebra is corrupt")
        return quo, pi

    def is_ideal(self, space: Subspace, two_sided=True) -> bool:
        if space.ambient != self.dim:
            raise LinAlgError("ideal candidate has wrong ambient dimension")
        for b in space.basis_columns():
            for i in range(self.dim):
                if not space.contains_vector(self.mul({i: self.field.one()}, b)):
                    return False
                if two_sided and not space.contains_vector(self.mul(b, {i: self.field.one()})):
                    return False
        return True

    def is_left_ideal(self, space: Subspace) -> bool:
        return self.is_ideal(space, two_sided=False)

    def quotient_by_ideal(self, ideal: Subspace, name=""):
        """Quotient algebra and projection morphism for a two-sided ideal.

        The quotient basis is the complement of the echelonized ideal basis
        among standard basis vectors, in index order.
        """
        if not self.is_ideal(ideal):
            raise AxiomError("subspace is not a two-sided ideal")
        f = self.field
        proj = ideal.quotient_map()  # (dim - k) x dim
        comp = ideal.complement_rows()
        names = [self.basis_names[r] for r in comp]
        products = {}
        for a, ra in enumerate(comp):
            for b, rb in enumerate(comp):
                prod = self.basis_product(ra, rb)
                img = proj.matvec(prod)
                if img:
                    products[(a, b)] = img
        quo = LeibnizAlgebra(f, names, products, name=name)
        return quo, AlgebraMorphism(self, quo, proj)

    def __repr__(self):
        label = self.name or ",".join(self.basis_names)
        return f"LeibnizAlgebra({label}, dim={self.dim}, {self.field!r})"


class AlgebraMorphism:
    """A linear map between Leibniz algebras that respects products."""

    def __init__(self, source: LeibnizAlgebra, target: LeibnizAlgebra, matrix: SparseMatrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise LinAlgError("morphism matrix has wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        f = source.field
        for i in range(source.dim):
            for j in range(source.dim):
                lhs = matrix.matvec(source.basis_product(i, j))
                rhs = target.mul(matrix.matvec({i: f.one()}), matrix.matvec({j: f.one()}))
                if lhs != rhs:
                    raise AxiomError(f"map is not multiplicative at basis pair ({i}, {j})")

    def is_surjective(self) -> bool:
        from .linalg import rank

        return rank(self.matrix) == self.target.dim

    def __repr__(self):
        return f"AlgebraMorphism({self.source!r} -> {self.target!r})"


def hemi_semidirect(g: LeibnizAlgebra, module) -> LeibnizAlgebra:
    """Left Leibniz algebra on g + M with (x, m)(y, n) = (xy, x.n).

    Requires g Lie and `module` a valid left g-module; the Leibniz kernel of
    the result is g.M.
    """
    if not g.is_lie():
        raise AxiomError("hemi-semidirect product needs a Lie algebra on the left")
    if module.algebra is not g:
        raise AxiomError("module is not over the given algebra")
    f = g.field
    d, m = g.dim, module.dim
    names = list(g.basis_names) + [f"m{k}" if f"m{k}" not in g.basis_names else f"mm{k}" for k in range(m)]
    products = {}
    for i in range(d):
        for j in range(d):
            prod = g.basis_product(i, j)
            if prod:
                products[(i, j)] = prod
        act = module.action_matrix(i)
        for k in range(m):
            col = {d + r: v for r, v in act.col(k)}
            if col:
                products[(i, d + k)] = col
    return LeibnizAlgebra(f, names, products, name=f"{g.name}⋉M" if g.name else "")


# -- catalog -----------------------------------------------------------------


def catalog(name: str, field="Q", **params) -> LeibnizAlgebra:
    """Construct a named algebra from the built-in catalog."""
    f = parse_field(field)
    one = f.one()
    if name == "abelian":
        n = int(params.get("n", params.get("dim", 1)))
        return LeibnizAlgebra(f, [f"x{i}" for i in range(n)], {}, name=f"abelian{n}")
    if name == "a":
        # non-abelian two-dimensional Lie algebra: he = e = -eh
        return LeibnizAlgebra(
            f,
            ["h", "e"],
            {("h", "e"): {"e": one}, ("e", "h"): {"e": f.neg(one)}},
            name="a",
        )
    if name == "heisenberg":
        return LeibnizAlgebra(
            f,
            ["x", "y", "z"],
            {("x", "y"): {"z": one}, ("y", "x"): {"z": f.neg(one)}},
            name="heisenberg",
        )
    if name == "N":
        # two-dimensional nilpotent non-Lie algebra: ff = e
        return LeibnizAlgebra(f, ["e", "f"], {("f", "f"): {"e": one}}, name="N")
    if name == "A":
        # two-dimensional supersolvable non-Lie algebra: he = e
        return LeibnizAlgebra(f, ["h", "e"], {("h", "e"): {"e": one}}, name="A")
    if name == "sl2":
        if f.char == 2:
            raise ParseError("sl2 catalog entry needs characteristic != 2")
        two = f.from_int(2)
        return LeibnizAlgebra(
            f,
            ["e", "h", "f"],
            {
                ("h", "e"): {"e": two},
                ("e", "h"): {"e": f.neg(two)},
                ("h", "f"): {"f": f.neg(two)},
                ("f", "h"): {"f": two},
                ("e", "f"): {"h": one},
                ("f", "e"): {"h": f.neg(one)},
            },
            name="sl2",
        )
    if name == "borel_sl2":
        # span{h, e} inside sl2: he = 2e
        if f.char == 2:
            raise ParseError("borel_sl2 needs characteristic != 2")
        two = f.from_int(2)
        return LeibnizAlgebra(
            f,
            ["h", "e"],
            {("h", "e"): {"e": two}, ("e", "h"): {"e": f.neg(two)}},
            name="borel_sl2",
        )
    if name == "hemi_sl2_L":
        from .bimodule import sl2_irreducible

        n = int(params.get("n", 2))
        g = catalog("sl2", f)
        mod = sl2_irreducible(g, n)
        out = hemi_semidirect(g, mod)
        out.name = f"hemi_sl2_L{n}"
        return out
    raise ParseError(f"unknown catalog algebra {name!r}")


CATALOG_NAMES = ("abelian", "a", "heisenberg", "N", "A", "sl2", "borel_sl2", "hemi_sl2_L")
