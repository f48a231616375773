"""Sparse exact linear algebra: elimination, subspaces, induced maps.

Matrices are column-sparse and immutable.  All ranks, kernels and images are
computed by incremental column echelonization with leading-row pivoting: the
pivot row of a stored column is its smallest nonzero row, so reducing an
incoming column strictly increases its leading row and terminates in a single
pass.  Pivot choice is deterministic, hence so is every result.

A dense fraction-free (Bareiss) elimination is provided as an independent
rank oracle; it shares no code with the sparse path.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

from .errors import ChainMapError, LinAlgError


class SparseMatrix:
    """Column-sparse matrix over an exact field.

    `columns[j]` is a tuple of (row, value) pairs with strictly increasing
    row indices and no stored zeros.  Instances are never mutated.
    """

    __slots__ = ("field", "rows", "cols", "columns")

    def __init__(self, field, rows, cols, columns, _trusted=False):
        if rows < 0 or cols < 0:
            raise LinAlgError("negative dimension")
        self.field = field
        self.rows = rows
        self.cols = cols
        if _trusted:
            self.columns = tuple(columns)
        else:
            cleaned = []
            for col in columns:
                items = col.items() if isinstance(col, dict) else col
                entries = []
                for r, v in items:
                    v = field.canon(v)
                    if field.is_zero(v):
                        continue
                    if not 0 <= r < rows:
                        raise LinAlgError(f"row index {r} out of range")
                    entries.append((r, v))
                entries.sort()
                for k in range(1, len(entries)):
                    if entries[k - 1][0] == entries[k][0]:
                        raise LinAlgError("duplicate row index in column")
                cleaned.append(tuple(entries))
            if len(cleaned) != cols:
                raise LinAlgError("wrong number of columns")
            self.columns = tuple(cleaned)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, [()] * cols, _trusted=True)

    @classmethod
    def identity(cls, field, n):
        one = field.one()
        return cls(field, n, n, [((j, one),) for j in range(n)], _trusted=True)

    @classmethod
    def from_dense(cls, field, entries):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        columns = []
        for j in range(cols):
            columns.append({i: entries[i][j] for i in range(rows)})
        return cls(field, rows, cols, columns)

    @classmethod
    def from_columns(cls, field, rows, cols_iter):
        cols = list(cols_iter)
        return cls(field, rows, len(cols), cols)

    # -- access --------------------------------------------------------

    def col(self, j):
        return self.columns[j]

    def col_dict(self, j):
        return dict(self.columns[j])

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def is_zero(self):
        return all(not c for c in self.columns)

    def to_dense(self):
        zero = self.field.zero()
        out = [[zero] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for r, v in col:
                out[r][j] = v
        return out

    # -- arithmetic ----------------------------------------------------

    def matvec(self, vec: dict) -> dict:
        """Matrix times a sparse coordinate vector (dict column -> value)."""
        f = self.field
        out = {}
        for j, x in vec.items():
            if f.is_zero(x):
                continue
            for r, v in self.columns[j]:
                cur = out.get(r)
                s = f.mul(x, v) if cur is None else f.add(cur, f.mul(x, v))
                if f.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.rows != self.cols:
            raise LinAlgError("matmul dimension mismatch")
        cols = [self.matvec(dict(c)) for c in other.columns]
        return SparseMatrix(self.field, self.rows, other.cols, cols)

    def add(self, other: "SparseMatrix") -> "SparseMatrix":
        return mat_lincomb(self.field, self.rows, self.cols, [(1, self), (1, other)])

    def sub(self, other: "SparseMatrix") -> "SparseMatrix":
        return mat_lincomb(self.field, self.rows, self.cols, [(1, self), (-1, other)])

    def scaled(self, scalar) -> "SparseMatrix":
        f = self.field
        scalar = f.canon(scalar)
        if f.is_zero(scalar):
            return SparseMatrix.zero(f, self.rows, self.cols)
        cols = [tuple((r, f.mul(scalar, v)) for r, v in c) for c in self.columns]
        return SparseMatrix(f, self.rows, self.cols, cols, _trusted=True)

    def neg(self):
        return self.scaled(-1)

    def transpose(self) -> "SparseMatrix":
        cols = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for r, v in col:
                cols[r][j] = v
        return SparseMatrix(self.field, self.cols, self.rows, cols)

    @staticmethod
    def hstack(mats):
        mats = list(mats)
        if not mats:
            raise LinAlgError("hstack of nothing")
        rows = mats[0].rows
        field = mats[0].field
        cols = []
        for m in mats:
            if m.rows != rows:
                raise LinAlgError("hstack row mismatch")
            cols.extend(m.columns)
        return SparseMatrix(field, rows, len(cols), cols, _trusted=True)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.columns))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def mat_lincomb(field, rows, cols, terms) -> SparseMatrix:
    """Sum of coeff * matrix over `terms` = [(coeff, SparseMatrix), ...]."""
    acc = [dict() for _ in range(cols)]
    for coeff, mat in terms:
        coeff = field.canon(coeff)
        if field.is_zero(coeff):
            continue
        if (mat.rows, mat.cols) != (rows, cols):
            raise LinAlgError("mat_lincomb shape mismatch")
        for j, col in enumerate(mat.columns):
            d = acc[j]
            for r, v in col:
                cur = d.get(r)
                s = field.mul(coeff, v) if cur is None else field.add(cur, field.mul(coeff, v))
                if field.is_zero(s):
                    d.pop(r, None)
                else:
                    d[r] = s
    return SparseMatrix(field, rows, cols, acc)


# -- elimination engine ----------------------------------------------------


class Eliminated:
    """Column echelon data of a matrix: rank, kernel, image, solve.

    With `history=True` each pivot column remembers its expression in the
    original columns, which enables kernel vectors and particular solutions.
    """

    def __init__(self, matrix: SparseMatrix, history=False):
        self.matrix = matrix
        self.field = matrix.field
        self.history = history
        self._p = self.field.p if self.field.kind == "Fp" else None
        self.pivots = {}  # row -> column dict, normalized to 1 at the pivot
        self.pivot_hist = {}  # row -> history dict (when tracked)
        self.pivot_order = []  # pivot rows in insertion order
        self.kernel_vectors = []  # history dicts of columns that vanished
        for j in range(matrix.cols):
            col = matrix.col_dict(j)
            hist = {j: self.field.one()} if history else None
            row = self._reduce(col, hist)
            if row is None:
                if history and hist:
                    self.kernel_vectors.append(hist)
            else:
                self._store_pivot(row, col, hist)

    # The reducer never touches stored pivots; storing is separate, so the
    # same routine also serves membership tests and solves.
    def _reduce(self, col, hist):
        """Reduce col (in place) against stored pivots.

        Returns the leading row of the nonzero remainder (not normalized) or
        None if the column vanished.  hist, when given, is updated so that
        original_combination(hist) + col stays constant.
        """
        if not col:
            return None
        pivots = self.pivots
        heap = list(col)
        heapify(heap)
        p = self._p
        if p is None:
            while heap:
                r = heappop(heap)
                factor = col.get(r)
                if factor is None:
                    continue
                piv = pivots.get(r)
                if piv is None:
                    return r
                del col[r]
                for row, v in piv.items():
                    if row == r:
                        continue
                    cur = col.get(row)
                    if cur is None:
                        col[row] = -factor * v
                        heappush(heap, row)
                    else:
                        nv = cur - factor * v
                        if nv:
                            col[row] = nv
                        else:
                            del col[row]
                if hist is not None:
                    for k, v in self.pivot_hist[r].items():
                        cur = hist.get(k)
                        if cur is None:
                            hist[k] = -factor * v
                        else:
                            nv = cur - factor * v
                            if nv:
                                hist[k] = nv
                            else:
                                del hist[k]
        else:
            while heap:
                r = heappop(heap)
                factor = col.get(r)
                if factor is None:
                    continue
                piv = pivots.get(r)
                if piv is None:
                    return r
                del col[r]
                for row, v in piv.items():
                    if row == r:
                        continue
                    nv = (col.get(row, 0) - factor * v) % p
                    if nv:
                        if row not in col:
                            heappush(heap, row)
                        col[row] = nv
                    else:
                        col.pop(row, None)
                if hist is not None:
                    for k, v in self.pivot_hist[r].items():
                        nv = (hist.get(k, 0) - factor * v) % p
                        if nv:
                            hist[k] = nv
                        else:
                            hist.pop(k, None)
        return None

    def _store_pivot(self, row, col, hist):
        p = self._p
        lead = col[row]
        if p is None:
            if lead != self.field.one():
                inv = self.field.inv(lead)
                for k in col:
                    col[k] = col[k] * inv
                if hist is not None:
                    for k in hist:
                        hist[k] = hist[k] * inv
        else:
            if lead != 1:
                inv = pow(lead, -1, p)
                for k in col:
                    col[k] = col[k] * inv % p
                if hist is not None:
                    for k in hist:
                        hist[k] = hist[k] * inv % p
        self.pivots[row] = col
        self.pivot_order.append(row)
        if hist is not None:
            self.pivot_hist[row] = hist

    @property
    def rank(self):
        return len(self.pivots)

    def contains_vector(self, vec: dict) -> bool:
        """Is vec in the column span?"""
        f = self.field
        col = {}
        for r, v in vec.items():
            v = f.canon(v)
            if not f.is_zero(v):
                col[r] = v
        return self._reduce(col, None) is None

    def solve(self, vec: dict):
        """Some x with matrix @ x = vec, or None if vec is not in the image."""
        if not self.history:
            raise LinAlgError("solve requires history tracking")
        f = self.field
        col = {}
        for r, v in vec.items():
            v = f.canon(v)
            if not f.is_zero(v):
                col[r] = v
        hist = {}
        if self._reduce(col, hist) is not None:
            return None
        # combination(hist) + vec reduced to zero, so x = -hist
        return {k: f.neg(v) for k, v in hist.items()}


def rank(matrix: SparseMatrix) -> int:
    """Rank over the matrix's field; deterministic."""
    return Eliminated(matrix).rank


# -- subspaces --------------------------------------------------------------


class Subspace:
    """A subspace of F^ambient in reduced column echelon form.

    The basis matrix has one column per pivot row, columns sorted by pivot
    row, pivot entries equal to 1 and zero at every other pivot row.  This
    form is unique, so equality of subspaces is structural equality.
    """

    __slots__ = ("field", "ambient", "pivots", "mat", "_pivot_pos")

    def __init__(self, field, ambient, pivots, mat):
        self.field = field
        self.ambient = ambient
        self.pivots = pivots  # sorted tuple of pivot rows
        self.mat = mat  # SparseMatrix, column i has pivot row pivots[i]
        self._pivot_pos = {r: i for i, r in enumerate(pivots)}

    # -- constructors --------------------------------------------------

    @classmethod
    def from_columns(cls, field, ambient, cols_iter) -> "Subspace":
        elim = Eliminated(SparseMatrix.from_columns(field, ambient, cols_iter))
        cols = {r: dict(c) for r, c in elim.pivots.items()}
        # back-reduce to the canonical reduced form
        order = sorted(cols)
        for i in range(len(order) - 1, -1, -1):
            r = order[i]
            piv = cols[r]
            for r2 in order[:i]:
                other = cols[r2]
                factor = other.get(r)
                if factor is None:
                    continue
                for row, v in piv.items():
                    nv = field.sub(other.get(row, field.zero()), field.mul(factor, v))
                    if field.is_zero(nv):
                        other.pop(row, None)
                    else:
                        other[row] = nv
        mat = SparseMatrix(field, ambient, len(order), [cols[r] for r in order])
        return cls(field, ambient, tuple(order), mat)

    @classmethod
    def zero(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, (), SparseMatrix.zero(field, ambient, 0))

    @classmethod
    def full(cls, field, ambient) -> "Subspace":
        return cls(
            field,
            ambient,
            tuple(range(ambient)),
            SparseMatrix.identity(field, ambient),
        )

    @classmethod
    def from_matrix_image(cls, matrix: SparseMatrix) -> "Subspace":
        return cls.from_columns(matrix.field, matrix.rows, [dict(c) for c in matrix.columns])

    # -- basics ----------------------------------------------------------

    @property
    def dim(self):
        return len(self.pivots)

    def basis_columns(self):
        return [self.mat.col_dict(j) for j in range(self.dim)]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.ambient, self.pivots, self.mat))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    # -- membership -------------------------------------------------------

    def express(self, vec: dict):
        """Coefficients of vec over the basis columns, or None if outside.

        In reduced echelon form the coefficient of basis column i is the
        coordinate of vec at the i-th pivot row, and subtracting column i
        never disturbs the other pivot coordinates.
        """
        f = self.field
        residual = {}
        for r, v in vec.items():
            v = f.canon(v)
            if not f.is_zero(v):
                residual[r] = v
        coeffs = {}
        for i, p in enumerate(self.pivots):
            c = residual.get(p)
            if c is None:
                continue
            coeffs[i] = c
            for r, v in self.mat.col(i):
                nv = f.sub(residual.get(r, f.zero()), f.mul(c, v))
                if f.is_zero(nv):
                    residual.pop(r, None)
                else:
                    residual[r] = nv
        if residual:
            return None
        return coeffs

    def contains_vector(self, vec: dict) -> bool:
        return self.express(vec) is not None

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise LinAlgError("ambient mismatch")
        return all(self.express(c) is not None for c in other.basis_columns())

    # -- lattice operations ------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_columns(
            self.field, self.ambient, self.basis_columns() + other.basis_columns()
        )

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        f = self.field
        cols = self.basis_columns()
        for c in other.basis_columns():
            cols.append({r: f.neg(v) for r, v in c.items()})
        stacked = SparseMatrix.from_columns(f, self.ambient, cols)
        elim = Eliminated(stacked, history=True)
        vectors = []
        for hist in elim.kernel_vectors:
            vec = {}
            for j, coeff in hist.items():
                if j >= self.dim:
                    continue
                for r, v in self.mat.col(j):
                    cur = vec.get(r)
                    s = f.mul(coeff, v) if cur is None else f.add(cur, f.mul(coeff, v))
                    if f.is_zero(s):
                        vec.pop(r, None)
                    else:
                        vec[r] = s
            if vec:
                vectors.append(vec)
        return Subspace.from_columns(f, self.ambient, vectors)

    def quotient_dim(self, sub: "Subspace") -> int:
        if not self.contains(sub):
            raise LinAlgError("quotient denominator is not contained in the subspace")
        return self.dim - sub.dim

    def _check_ambient(self, other):
        if not isinstance(other, Subspace) or other.ambient != self.ambient:
            raise LinAlgError("ambient mismatch")
        if other.field != self.field:
            raise LinAlgError("field mismatch")

    # -- quotient map -------------------------------------------------------

    def complement_rows(self):
        piv = self._pivot_pos
        return [r for r in range(self.ambient) if r not in piv]

    def quotient_map(self) -> SparseMatrix:
        """Matrix of the projection F^ambient -> F^ambient/self.

        Coordinates on the quotient are the non-pivot rows of the reduction
        modulo the echelon basis; the standard basis vectors at non-pivot
        rows form the corresponding section.
        """
        f = self.field
        comp = self.complement_rows()
        pos = {r: i for i, r in enumerate(comp)}
        cols = []
        for j in range(self.ambient):
            if j in pos:
                cols.append({pos[j]: f.one()})
            else:
                col = {}
                for r, v in self.mat.col(self._pivot_pos[j]):
                    if r in pos:
                        col[pos[r]] = f.neg(v)
                cols.append(col)
        return SparseMatrix(f, len(comp), self.ambient, cols)


def kernel_basis(matrix: SparseMatrix) -> Subspace:
    """Ker(matrix) as a subspace of the column space."""
    elim = Eliminated(matrix, history=True)
    return Subspace.from_columns(matrix.field, matrix.cols, elim.kernel_vectors)


def image_basis(matrix: SparseMatrix) -> Subspace:
    """Column span of matrix as a subspace of the row space."""
    return Subspace.from_matrix_image(matrix)


def preimage(matrix: SparseMatrix, target: Subspace) -> Subspace:
    """{v : matrix @ v lies in target}; always contains Ker(matrix)."""
    if target.ambient != matrix.rows:
        raise LinAlgError("preimage: target ambient must equal the row space")
    if target.dim == target.ambient:
        return Subspace.full(matrix.field, matrix.cols)
    proj = target.quotient_map()
    return kernel_basis(proj.matmul(matrix))


def map_subspace(matrix: SparseMatrix, space: Subspace) -> Subspace:
    """Image of a subspace under a matrix."""
    if space.ambient != matrix.cols:
        raise LinAlgError("map_subspace ambient mismatch")
    return Subspace.from_columns(
        matrix.field, matrix.rows, [matrix.matvec(c) for c in space.basis_columns()]
    )


class QuotientSpace:
    """Coordinates on sub/quot for a pair quot <= sub of subspaces."""

    __slots__ = ("field", "sub", "quot", "dim", "_proj", "_rep_positions")

    def __init__(self, sub: Subspace, quot: Subspace):
        if sub.ambient != quot.ambient:
            raise LinAlgError("quotient pair ambient mismatch")
        self.field = sub.field
        self.sub = sub
        self.quot = quot
        coeffs = []
        for c in quot.basis_columns():
            e = sub.express(c)
            if e is None:
                raise LinAlgError("denominator is not contained in the subspace")
            coeffs.append(e)
        inner = Subspace.from_columns(sub.field, sub.dim, coeffs)
        self.dim = sub.dim - inner.dim
        self._proj = inner.quotient_map()
        self._rep_positions = inner.complement_rows()

    def coords(self, vec: dict):
        """Quotient coordinates of an ambient vector, or None if outside sub."""
        e = self.sub.express(vec)
        if e is None:
            return None
        return self._proj.matvec(e)

    def representatives(self):
        """Ambient vectors projecting to the standard quotient basis."""
        return [self.sub.mat.col_dict(i) for i in self._rep_positions]


def induced_map(matrix: SparseMatrix, src: QuotientSpace, dst: QuotientSpace) -> SparseMatrix:
    """Matrix of the map induced on src.sub/src.quot -> dst.sub/dst.quot.

    Well-definedness (matrix maps src.sub into dst.sub and src.quot into
    dst.quot) is checked, not assumed.
    """
    if src.sub.ambient != matrix.cols or dst.sub.ambient != matrix.rows:
        raise LinAlgError("induced_map shape mismatch")
    for c in src.quot.basis_columns():
        out = dst.coords(matrix.matvec(c))
        if out is None:
            raise ChainMapError("map does not send the source denominator into the target subspace")
        if out:
            raise ChainMapError("map does not send the source denominator into the target denominator")
    cols = []
    for rep in src.representatives():
        out = dst.coords(matrix.matvec(rep))
        if out is None:
            raise ChainMapError("map does not send the source subspace into the target subspace")
        cols.append(out)
    return SparseMatrix(matrix.field, dst.dim, src.dim, cols)


# -- dense fraction-free oracle ---------------------------------------------


def _bareiss_rank_int(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    piv = 0
    for col in range(ncols):
        if piv >= nrows:
            break
        sel = None
        for i in range(piv, nrows):
            if m[i][col]:
                sel = i
                break
        if sel is None:
            continue
        if sel != piv:
            m[piv], m[sel] = m[sel], m[piv]
        pivval = m[piv][col]
        for i in range(piv + 1, nrows):
            cur = m[i][col]
            for j in range(col, ncols):
                num = pivval * m[i][j] - cur * m[piv][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "fraction-free elimination lost integrality"
                m[i][j] = q
        prev = pivval
        piv += 1
    return piv


def _dense_rank_modp(rows, p):
    m = [[v % p for v in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv = 0
    for col in range(ncols):
        if piv >= nrows:
            break
        sel = None
        for i in range(piv, nrows):
            if m[i][col] % p:
                sel = i
                break
        if sel is None:
            continue
        if sel != piv:
            m[piv], m[sel] = m[sel], m[piv]
        inv = pow(m[piv][col], -1, p)
        for i in range(piv + 1, nrows):
            f = m[i][col] * inv % p
            if f:
                for j in range(col, ncols):
                    m[i][j] = (m[i][j] - f * m[piv][j]) % p
        piv += 1
    return piv


def dense_rank(matrix: SparseMatrix) -> int:
    """Independent dense rank: Bareiss over Q, Gaussian elimination mod p."""
    dense = matrix.to_dense()
    if matrix.field.kind == "Fp":
        return _dense_rank_modp([[int(v) for v in r] for r in dense], matrix.field.p)
    introws = []
    for r in dense:
        denom = 1
        for v in r:
            d = v.denominator
            denom = denom * d // _gcd(denom, d)
        introws.append([int(v * denom) for v in r])
    return _bareiss_rank_int(introws)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
