"""Named reproduction cases with embedded golden values.

Each case recomputes a block of reference dimension tables at desk scale and
compares them against the values recorded here.  Golden values are tagged
"table" when they come straight from the reference tables and "derived" when
they were frozen from an independent oracle (intertwiner solves, direct
expansion, brute-force enumeration).  A handful of recorded table values are
inconsistent with the defining coboundary formula (see the project notes);
the affected checks are kept as stated and simply report FAIL.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bimodule as bm
from . import cochain as cc
from . import spectral as sp
from .algebra import catalog
from .linalg import SparseMatrix


@dataclass
class Check:
    name: str
    expected: object
    got: object
    tag: str  # "table" | "derived" | "trivial"

    @property
    def ok(self):
        if isinstance(self.expected, str) and self.expected.startswith(">="):
            return self.got >= int(self.expected[2:])
        return self.expected == self.got


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _f_lambda(L, lam):
    return bm.weight_module(L, {L.basis_names[0]: lam})


def case_exampleA_char0():
    a = catalog("a", "Q")
    checks = [
        Check("HL^n(a,F) n<=8", [1] * 9, cc.cohomology(a, bm.trivial_bimodule(a), 8).dims, "table"),
        Check(
            "HL^n(a,(F_1)_s) n<=8",
            [0] + [1] * 8,
            cc.cohomology(a, bm.symmetrize(_f_lambda(a, 1)), 8).dims,
            "table",
        ),
        Check(
            "HL^n(a,(F_3)_s) = 0",
            [0] * 7,
            cc.cohomology(a, bm.symmetrize(_f_lambda(a, 3)), 6).dims,
            "table",
        ),
    ]
    for lam in (0, 1, 2, 3):
        want = [
            1 if (lam == 0 or (lam == 2 and n >= 2) or n == 0) else 0 for n in range(7)
        ]
        got = cc.cohomology(a, bm.antisymmetrize(_f_lambda(a, lam)), 6).dims
        checks.append(Check(f"HL^n(a,(F_{lam})_a) n<=6", want, got, "table"))
    _, hr = cc.cr_complex(a, 3)
    checks.append(Check("HR(a)", [1, 0, 0, 0], hr.dims, "table"))
    forms = cc.invariant_bilinear_forms(a)
    checks.append(Check("invariant symmetric bilinear forms", 1, forms.dim, "table"))
    return checks


def case_exampleA_char2():
    a = catalog("a", "F2")
    f0 = cc.cohomology(a, bm.symmetrize(_f_lambda(a, 0)), 10).dims
    f1 = cc.cohomology(a, bm.symmetrize(_f_lambda(a, 1)), 10).dims
    checks = [
        Check("HL^n(a,(F_0)_s) = f_{n+1}", [fib(n + 1) for n in range(11)], f0, "table"),
        Check("HL^n(a,(F_1)_s) = f_n", [fib(n) for n in range(11)], f1, "table"),
    ]
    _, hr = cc.cr_complex(a, 3)
    checks.append(Check("HR(a) char 2", [2, 1, 0, 0], hr.dims, "table"))
    anti0 = cc.cohomology(a, bm.antisymmetrize(_f_lambda(a, 0)), 6).dims
    checks.append(Check("HL^n(a,(F_0)_a) = f_{n+1}", [fib(n + 1) for n in range(7)], anti0, "table"))
    return checks


def case_exampleB():
    h = catalog("heisenberg", "Q")
    triv = bm.trivial_module(h)
    checks = [
        Check("H^n(h,F)", [1, 2, 2, 1, 0], cc.cohomology(h, triv, 4, "chevalley_eilenberg").dims, "table"),
        Check("H^n(h,h*)", [2, 5, 4, 1], cc.cohomology(h, bm.dual_module(h), 3, "chevalley_eilenberg").dims, "table"),
    ]
    _, hr = cc.cr_complex(h, 2)
    checks.append(Check("HR(h)", [3, 3, 1], hr.dims, "table"))
    hl = cc.cohomology(h, bm.trivial_bimodule(h), 3)
    checks.append(Check("HL^2(h,F)", 5, hl.dims[2], "table"))
    checks.append(Check("HL^3(h,F)", 10, hl.dims[3], "table"))
    forms = cc.invariant_bilinear_forms(h)
    checks.append(Check("invariant symmetric bilinear forms", 3, forms.dim, "table"))
    checks.append(Check("degree-3 map of forms is zero", 0, forms.cartan_koszul_rank, "table"))
    fc, _ = sp.filtration_rel(h, triv, 2)
    pg = sp.pages(fc, 2, 2)
    checks.append(Check("rank d_2^{0,1}", 0, pg[2].rank(0, 1), "table"))
    return checks


def case_exampleC():
    N = catalog("N", "Q")
    trivN = bm.trivial_bimodule(N)
    q, pi = N.canonical_lie()
    checks = [
        Check(
            "HL^n(N,F) n<=8",
            [1, 1, 1, 2, 4, 8, 16, 32, 64],
            cc.cohomology(N, trivN, 8).dims,
            "table",
        )
    ]
    _, tbl = cc.relative_epi_complex(pi, bm.trivial_bimodule(q), 7)
    checks.append(
        Check("HL^n(N|N_Lie,F) n<=7", [1, 2, 3, 5, 9, 17, 33, 65], tbl.dims, "table")
    )
    fc, target = sp.filtration_ideal(N, N.leibniz_kernel(), trivN, 4)
    pg = sp.pages(fc, 7, 4)
    higher = sum(v for page in pg[2:] for v in page.ranks.values())
    checks.append(Check("all d_{r>=2} ranks vanish", 0, higher, "table"))
    triple = cc.build_epi_triple(pi, bm.trivial_bimodule(q), 6)
    rep = cc.les_exactness(triple, 6)
    checks.append(Check("long exact sequence exact", True, rep.ok, "trivial"))
    conn_surjective = all(
        row.ranks[2] == triple.A.cohomology_space(row.degree + 1).dim
        for row in rep.degrees
        if row.degree >= 1
    )
    checks.append(Check("connecting map surjective, degrees 1..6", True, conn_surjective, "table"))
    return checks


def case_exampleD():
    A = catalog("A", "Q")
    checks = []
    for lam in (0, 1, 2):
        want_s = [1 if lam == 0 else 0] * 7
        got_s = cc.cohomology(A, bm.symmetrize(_f_lambda(A, lam)), 6).dims
        checks.append(Check(f"HL^n(A,(F_{lam})_s)", want_s, got_s, "table"))
        want_a = [1 if (lam in (0, 1) or n == 0) else 0 for n in range(7)]
        got_a = cc.cohomology(A, bm.antisymmetrize(_f_lambda(A, lam)), 6).dims
        checks.append(Check(f"HL^n(A,(F_{lam})_a)", want_a, got_a, "table"))
    q, pi = A.canonical_lie()
    for lam in (0, 1, 2):
        flq = bm.symmetrize(bm.weight_module(q, {0: lam}))
        _, tbl = cc.relative_epi_complex(pi, flq, 4)
        checks.append(Check(f"HL^n(A|A_Lie,(F_{lam})_s) = 0", [0] * 5, tbl.dims, "table"))
    leib = A.leibniz_kernel()
    collapsed = True
    for lam in (0, 1, 2):
        for wrap in (bm.symmetrize, bm.antisymmetrize):
            fc, _ = sp.filtration_ideal(A, leib, wrap(_f_lambda(A, lam)), 3)
            pg = sp.pages(fc, 6, 3)
            collapsed = collapsed and not any(v for page in pg[2:] for v in page.ranks.values())
    checks.append(Check("central-ideal spectral sequence collapses at E_2", True, collapsed, "table"))
    return checks


def _case_exampleE(p):
    sl2 = catalog("sl2", f"F{p}")
    Lp2s = bm.symmetrize(bm.sl2_irreducible(sl2, p - 2))
    t = cc.cohomology(sl2, Lp2s, 2)
    checks = [
        Check(f"HL^1(sl2,L({p-2})_s)", 2, t.dims[1], "table"),
        Check(f"HL^2(sl2,L({p-2})_s)", ">=2", t.dims[2], "table"),
        Check(
            f"H^1(sl2,L({p-2})) CE",
            2,
            cc.cohomology(sl2, bm.sl2_irreducible(sl2, p - 2), 1, "chevalley_eilenberg").dims[1],
            "table",
        ),
    ]
    l2a = cc.cohomology(sl2, bm.antisymmetrize(bm.sl2_irreducible(sl2, 2)), 2)
    checks.append(Check("HL^1(sl2,L(2)_a)", 1, l2a.dims[1], "table"))
    if p == 3:
        checks.append(Check("HL^2(sl2,L(2)_a) p=3", 3, l2a.dims[2], "table"))
    if p == 5:
        l1a = cc.cohomology(sl2, bm.antisymmetrize(bm.sl2_irreducible(sl2, 1)), 2)
        checks.append(Check("HL^2(sl2,L(1)_a) p=5", 2, l1a.dims[2], "table"))
    return checks


def case_exampleE_p3():
    return _case_exampleE(3)


def case_exampleE_p5():
    return _case_exampleE(5)


def case_exampleE_p7():
    return _case_exampleE(7)


def case_theorem_adj():
    L = catalog("hemi_sl2_L", "Q", n=2)
    ad = cc.cohomology(L, bm.adjoint_bimodule(L), 3)
    adl = bm.adjoint_left(L)
    leib = L.leibniz_kernel()
    sub = bm.intertwiner_space(adl, bm.ideal_as_left_module(L, leib))
    checks = [
        Check("HL^0(L,L_ad) = dim Leib", 3, ad.dims[0], "table"),
        Check("HL^1(L,L_ad)", 2, ad.dims[1], "derived"),
        Check("HL^2(L,L_ad)", 0, ad.dims[2], "table"),
        Check("HL^3(L,L_ad)", 0, ad.dims[3], "table"),
        Check("intertwiner oracle Hom_L(L_adl, Leib)", 2, sub.dim, "derived"),
    ]
    la = cc.cohomology(L, bm.antisymmetrize(adl), 1)
    end_dim = bm.hom_space_dim(adl, adl)
    checks.append(Check("HL^1(L,L_a) = dim End_L(L_adl)", end_dim, la.dims[1], "derived"))
    return checks


def case_whitehead_sl2():
    sl2 = catalog("sl2", "Q")
    checks = []
    for M, nm, h0 in (
        (bm.trivial_bimodule(sl2), "F", 1),
        (bm.symmetrize(bm.sl2_irreducible(sl2, 2)), "L(2)_s", 0),
        (bm.symmetrize(bm.sl2_irreducible(sl2, 4)), "L(4)_s", 0),
    ):
        t = cc.cohomology(sl2, M, 4)
        checks.append(Check(f"HL^0(sl2,{nm})", h0, t.dims[0], "table"))
        checks.append(Check(f"HL^n(sl2,{nm}) n=1..4", [0] * 4, t.dims[1:], "table"))
    L = catalog("hemi_sl2_L", "Q", n=2)
    ls = cc.cohomology(L, bm.symmetrize(bm.adjoint_left(L)), 3)
    checks.append(Check("HL^n(L,L_s) n=1..3", [0] * 3, ls.dims[1:], "table"))
    return checks


def case_borel():
    a = catalog("a", "Q")
    t = cc.cohomology(a, bm.adjoint_bimodule(a), 5)
    return [Check("HL^n(a,a_ad) n<=5", [0] * 6, t.dims, "table")]


def case_vannilp_p3():
    h = catalog("heisenberg", "F3")
    f = h.field
    deriv = SparseMatrix.from_dense(f, [[0, 1, 0], [0, 0, 2], [0, 0, 0]])
    tmul = SparseMatrix.from_dense(f, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    W = bm.LeftModule(h, [deriv, tmul, SparseMatrix.identity(f, 3)], name="weyl3")
    checks = [Check("truncated polynomial module is irreducible", True, bm.is_irreducible_by_generation(W), "derived")]
    ws = cc.cohomology(h, bm.symmetrize(W), 4)
    wa = cc.cohomology(h, bm.antisymmetrize(W), 4)
    checks.append(Check("HL^n(h,W_s) n<=4", [0] * 5, ws.dims, "table"))
    checks.append(Check("HL^n(h,W_a) n=1..4", [0] * 4, wa.dims[1:], "table"))
    checks.append(Check("HL^0(h,W_a) = dim W", 3, wa.dims[0], "trivial"))
    return checks


def case_vansupsolv_Q():
    a = catalog("a", "Q")
    f = a.field
    comp = bm.LeftModule(
        a,
        [SparseMatrix.from_dense(f, [[0, 2], [1, 0]]), SparseMatrix.zero(f, 2, 2)],
        name="companion",
    )
    # irreducible over Q: the h-action has irreducible characteristic polynomial
    from .linalg import kernel_basis, mat_lincomb

    has_eigvec = False
    for lam_num in range(-6, 7):
        shifted = mat_lincomb(
            f, 2, 2, [(1, comp.left[0]), (-lam_num, SparseMatrix.identity(f, 2))]
        )
        if kernel_basis(shifted).dim:
            has_eigvec = True
    checks = [Check("no small rational eigenvector for the h-action", False, has_eigvec, "derived")]
    cs = cc.cohomology(a, bm.symmetrize(comp), 5)
    checks.append(Check("HL^n(a,M_s) n<=5", [0] * 6, cs.dims, "table"))
    ca = cc.cohomology(a, bm.antisymmetrize(comp), 4)
    checks.append(Check("HL^n(a,M_a) n=1..4", [0] * 4, ca.dims[1:], "table"))
    return checks


CASES = {
    "exampleA_char0": case_exampleA_char0,
    "exampleA_char2": case_exampleA_char2,
    "exampleB": case_exampleB,
    "exampleC": case_exampleC,
    "exampleD": case_exampleD,
    "exampleE_p3": case_exampleE_p3,
    "exampleE_p5": case_exampleE_p5,
    "exampleE_p7": case_exampleE_p7,
    "theorem_adj": case_theorem_adj,
    "whitehead_sl2": case_whitehead_sl2,
    "borel": case_borel,
    "vannilp_p3": case_vannilp_p3,
    "vansupsolv_Q": case_vansupsolv_Q,
}


def run_case(case_id):
    if case_id not in CASES:
        raise KeyError(f"unknown reproduction case {case_id!r}")
    return CASES[case_id]()
