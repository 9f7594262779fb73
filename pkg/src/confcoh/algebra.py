"""Conformal algebras and conformal modules from structure polynomials.

A conformal algebra is a finite family of generators L^k over the polynomial
ring in ``d`` with a bracket table  [L^i_lam L^j] = sum_k C_ij^k(lam, d) L^k.
Generators are normally free; a generator may instead be torsion, with ``d``
acting by a fixed rational scalar (used by abelian extensions with torsion
coefficients), in which case its table entries are stored with ``d`` already
evaluated.

Coefficient modules are either free over the ring in ``d`` with End(U)-valued
action polynomials, or a finite-dimensional space on which ``d`` acts by a
scalar and the algebra acts by zero.

All axiom checkers decide exact polynomial identities: skew-symmetry reduces
to  C_ij^k(lam, d) = -C_ji^k(-lam-d, d),  and the Jacobi / module / bimodule
identities are expanded sesquilinearly in the two parameters lam1, lam2.
Elements of algebras and modules are plain tuples of polynomials in ``d``
(one per generator / basis vector).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WrongModuleKind
from .liealg import LiePresentation, Rep
from .poly import (
    DEL,
    RatPoly,
    lam,
    mat_apply,
    mat_subst,
    unit_vec,
    vec_add,
    vec_scale,
    vec_subst,
    zero_vec,
)

_L1 = lam(1)
_L2 = lam(2)
_DELP = RatPoly.var(DEL)


class ConformalAlgebra:
    def __init__(self, gen_names, table, del_scalars=None, associative=False):
        self.gen_names = tuple(gen_names)
        n = len(self.gen_names)
        self.del_scalars = (
            tuple(del_scalars) if del_scalars is not None else (None,) * n
        )
        self.associative = associative
        self.table = []
        for i in range(n):
            row = []
            for j in range(n):
                vec = list(table[i][j])
                for k in range(n):
                    if self.del_scalars[k] is not None:
                        vec[k] = vec[k].substitute(DEL, self.del_scalars[k])
                row.append(tuple(vec))
            self.table.append(row)

    @property
    def ngens(self):
        return len(self.gen_names)

    def is_free(self, k):
        return self.del_scalars[k] is None

    def del_poly_for(self, k):
        a = self.del_scalars[k]
        return _DELP if a is None else RatPoly.const(a)

    def bracket(self, i, j):
        return self.table[i][j]

    def gen_element(self, i):
        return unit_vec(self.ngens, i)

    def index_of(self, name):
        return self.gen_names.index(name)

    def __repr__(self):
        kind = "associative conformal" if self.associative else "conformal"
        return f"<{kind} algebra on {', '.join(self.gen_names)}>"


class ConformalModule:
    """kind 'free': C[d] x U with action polynomials; 'scalar': d acts by a."""

    def __init__(self, kind, dim, action=None, del_scalar=None, right_action=None,
                 basis_names=None):
        self.kind = kind
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"v{j}" for j in range(dim)
        )
        if kind == "free":
            self.action = action
            self.right_action = right_action
            self.del_scalar = None
        elif kind == "scalar":
            self.action = None
            self.right_action = None
            self.del_scalar = Fraction(del_scalar if del_scalar is not None else 0)
        else:
            raise ValueError(f"unknown module kind {kind!r}")
        self._act_cache = {}

    def is_free(self):
        return self.kind == "free"

    def del_poly(self):
        return _DELP if self.kind == "free" else RatPoly.const(self.del_scalar)

    def act(self, gen, param, value):
        """Action of the generator at parameter ``param`` on a module value.

        Values may carry d; the sesquilinear shift d -> d + param is applied
        before the action matrix A(param, d).
        """
        if self.kind == "scalar":
            return zero_vec(self.dim)
        key = (gen, param)
        mat = self._act_cache.get(key)
        if mat is None:
            mat = mat_subst(self.action[gen], {_L1: param})
            self._act_cache[key] = mat
        shifted = vec_subst(value, {DEL: _DELP + param})
        return mat_apply(mat, shifted)

    def act_element(self, elem, param, value):
        """Sesquilinear extension to an algebra element (d-polys per generator)."""
        out = zero_vec(self.dim)
        for i, p in enumerate(elem):
            if not p:
                continue
            scal = p.substitute(DEL, -param)
            out = vec_add(out, vec_scale(scal, self.act(i, param, value)))
        return out

    def right_act(self, gen, param, value):
        if self.right_action is None:
            raise WrongModuleKind("module carries no right action")
        key = ("r", gen, param)
        mat = self._act_cache.get(key)
        if mat is None:
            mat = mat_subst(self.right_action[gen], {_L1: param})
            self._act_cache[key] = mat
        shifted = vec_subst(value, {DEL: _DELP + param})
        return mat_apply(mat, shifted)

    def __repr__(self):
        if self.kind == "scalar":
            return f"<scalar module dim {self.dim}, d acts by {self.del_scalar}>"
        return f"<free module of rank {self.dim}>"


# -- builders ----------------------------------------------------------------


def build_vir():
    """One generator L with [L_lam L] = (d + 2 lam) L."""
    table = [[(RatPoly.var(DEL) + 2 * RatPoly.var(_L1),)]]
    return ConformalAlgebra(("L",), table)


def build_current(g: LiePresentation):
    """Current algebra on a Lie presentation: [a_lam b] = [a, b]."""
    n = g.dim
    table = [
        [tuple(RatPoly.const(g.c[i][j][k]) for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return ConformalAlgebra(g.names, table)


def build_assoc_current(names, mult):
    """Associative current algebra of a C-algebra: a_lam b = a.b (constant)."""
    n = len(names)
    table = [
        [tuple(RatPoly.const(mult[i][j][k]) for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return ConformalAlgebra(names, table, associative=True)


def dual_numbers_current():
    """Cur of C[x]/(x^2): the commutative associative d^2 = 0 fixture."""
    one, x = 0, 1
    mult = [[[0, 0], [0, 0]] for _ in range(2)]
    mult[one][one] = [1, 0]
    mult[one][x] = [0, 1]
    mult[x][one] = [0, 1]
    mult[x][x] = [0, 0]
    return build_assoc_current(("one", "x"), mult)


def build_m_delta_alpha(delta, alpha):
    """Rank-one module with L_lam v = (d + alpha + delta*lam) v."""
    act = RatPoly.var(DEL) + RatPoly.const(alpha) + RatPoly.const(delta) * RatPoly.var(_L1)
    return ConformalModule("free", 1, action=[[[act]]], basis_names=("v",))


def build_m_u(g: LiePresentation, rep: Rep):
    """Current module C[d] x U with a_lam u = a u (constant matrices)."""
    if rep.algebra is not g and rep.algebra.names != g.names:
        raise ValueError("representation is over a different presentation")
    action = [
        [[RatPoly.const(rep.mats[i][r][s]) for s in range(rep.dim)]
         for r in range(rep.dim)]
        for i in range(g.dim)
    ]
    return ConformalModule("free", rep.dim, action=action, basis_names=rep.names)


def build_trivial(dim=1, a=0):
    """Torsion coefficients: zero action, d acts by the scalar a."""
    return ConformalModule("scalar", dim, del_scalar=a)


def adjoint_module(algebra: ConformalAlgebra):
    """The algebra as a module over itself through its bracket."""
    if not all(algebra.is_free(k) for k in range(algebra.ngens)):
        raise WrongModuleKind("adjoint module needs a free algebra")
    n = algebra.ngens
    action = [
        [[algebra.table[i][j][k] for j in range(n)] for k in range(n)]
        for i in range(n)
    ]
    return ConformalModule("free", n, action=action, basis_names=algebra.gen_names)


def regular_bimodule(algebra: ConformalAlgebra):
    """The regular bimodule of an associative conformal algebra."""
    n = algebra.ngens
    left = [
        [[algebra.table[i][j][k] for j in range(n)] for k in range(n)]
        for i in range(n)
    ]
    right = [
        [[algebra.table[j][i][k] for j in range(n)] for k in range(n)]
        for i in range(n)
    ]
    return ConformalModule(
        "free", n, action=left, right_action=right, basis_names=algebra.gen_names
    )


# -- evaluation --------------------------------------------------------------


def bracket_eval(algebra, a, b, param=None):
    """[a_param b] for elements a, b (tuples of d-polynomials per generator)."""
    param = RatPoly.var(_L1) if param is None else param
    n = algebra.ngens
    out = []
    for m in range(n):
        delta = algebra.del_poly_for(m)
        total = RatPoly.zero()
        shift = {DEL: param + delta}
        for i, ai in enumerate(a):
            if not ai:
                continue
            ai_s = ai.substitute(DEL, -param)
            for j, bj in enumerate(b):
                if not bj:
                    continue
                cm = algebra.table[i][j][m]
                if not cm:
                    continue
                total = total + ai_s * bj.subst_many(shift) * cm.subst_many({_L1: param})
        out.append(total)
    return tuple(out)


def action_eval(module, a, v, param=None):
    """a_param v for an algebra element a and module element v."""
    param = RatPoly.var(_L1) if param is None else param
    return module.act_element(a, param, v)


# -- axiom checkers ----------------------------------------------------------


def check_skew_symmetry(algebra):
    """C_ij^k(lam, d) = -C_ji^k(-lam - d_k, d) exactly; (ok, witness)."""
    n = algebra.ngens
    lam1 = RatPoly.var(_L1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                delta = algebra.del_poly_for(k)
                flipped = algebra.table[j][i][k].subst_many({_L1: -lam1 - delta})
                residual = algebra.table[i][j][k] + flipped
                if residual:
                    return False, (i, j, k, residual)
    return True, None


def _jacobi_residual(algebra, outer, inner, i, j, k, m):
    """Jacobi expansion with the two bracket layers drawn from two tables.

    outer/inner are bracket tables (possibly different, for first-order
    deformations); returns LHS - RHS1 - RHS2 on output component m, as a
    polynomial in lam1 (= lam), lam2 (= mu), d.
    """
    n = algebra.ngens
    lam1, lam2 = RatPoly.var(_L1), RatPoly.var(_L2)
    delta = algebra.del_poly_for(m)
    lhs = RatPoly.zero()
    rhs1 = RatPoly.zero()
    rhs2 = RatPoly.zero()
    for l in range(n):
        c_in = inner[j][k][l]
        if c_in:
            c_out = outer[i][l][m]
            if c_out:
                lhs = lhs + c_in.subst_many({_L1: lam2, DEL: lam1 + delta}) * c_out
        c_in = inner[i][j][l]
        if c_in:
            c_out = outer[l][k][m]
            if c_out:
                rhs1 = rhs1 + c_in.subst_many({DEL: -lam1 - lam2}) * c_out.subst_many(
                    {_L1: lam1 + lam2}
                )
        c_in = inner[i][k][l]
        if c_in:
            c_out = outer[j][l][m]
            if c_out:
                rhs2 = rhs2 + c_in.subst_many({DEL: lam2 + delta}) * c_out.subst_many(
                    {_L1: lam2}
                )
    return lhs - rhs1 - rhs2


def check_jacobi(algebra):
    """[a_lam [b_mu c]] = [[a_lam b]_(lam+mu) c] + [b_mu [a_lam c]]; (ok, witness)."""
    n = algebra.ngens
    t = algebra.table
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    residual = _jacobi_residual(algebra, t, t, i, j, k, m)
                    if residual:
                        return False, (i, j, k, m, residual)
    return True, None


def check_associativity(algebra):
    """a_lam (b_mu c) = (a_lam b)_(lam+mu) c exactly; (ok, witness)."""
    n = algebra.ngens
    t = algebra.table
    lam1, lam2 = RatPoly.var(_L1), RatPoly.var(_L2)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    delta = algebra.del_poly_for(m)
                    lhs = RatPoly.zero()
                    rhs = RatPoly.zero()
                    for l in range(n):
                        c_in = t[j][k][l]
                        if c_in and t[i][l][m]:
                            lhs = lhs + c_in.subst_many(
                                {_L1: lam2, DEL: lam1 + delta}
                            ) * t[i][l][m]
                        c_in = t[i][j][l]
                        if c_in and t[l][k][m]:
                            rhs = rhs + c_in.subst_many(
                                {DEL: -lam1 - lam2}
                            ) * t[l][k][m].subst_many({_L1: lam1 + lam2})
                    if lhs != rhs:
                        return False, (i, j, k, m, lhs - rhs)
    return True, None


def check_module(algebra, module):
    """a_lam(b_mu v) - b_mu(a_lam v) = [a_lam b]_(lam+mu) v; (ok, witness)."""
    if module.kind == "scalar":
        return True, None
    n = algebra.ngens
    lam1, lam2 = RatPoly.var(_L1), RatPoly.var(_L2)
    act = module.action
    for i in range(n):
        a_i = act[i]
        a_i_shift = mat_subst(a_i, {DEL: lam2 + _DELP})
        for j in range(n):
            a_j = mat_subst(act[j], {_L1: lam2})
            a_j_shift = mat_subst(a_j, {DEL: lam1 + _DELP})
            lhs = _mat_sub(_mat_mul(a_i, a_j_shift), _mat_mul(a_j, a_i_shift))
            rhs = None
            for k in range(n):
                c = algebra.table[i][j][k].subst_many({DEL: -lam1 - lam2})
                if not c:
                    continue
                term = [
                    [c * p.subst_many({_L1: lam1 + lam2}) for p in row]
                    for row in act[k]
                ]
                rhs = term if rhs is None else _mat_add(rhs, term)
            if rhs is None:
                rhs = [[RatPoly.zero()] * module.dim for _ in range(module.dim)]
            diff = _mat_sub(lhs, rhs)
            for r, row in enumerate(diff):
                for s, entry in enumerate(row):
                    if entry:
                        return False, (i, j, (r, s), entry)
    return True, None


def check_bimodule(algebra, module):
    """Left, right, and mixed associativity for a conformal bimodule."""
    ok, witness = check_associativity(algebra)
    if not ok:
        return False, ("algebra", witness)
    if module.kind != "free" or module.right_action is None:
        return False, ("shape", "bimodule needs a free module with a right action")
    n = algebra.ngens
    lam1, lam2 = RatPoly.var(_L1), RatPoly.var(_L2)
    left, right = module.action, module.right_action
    for i in range(n):
        for j in range(n):
            # left: a_lam (b_mu m) = (a_lam b)_(lam+mu) m
            lhs = _mat_mul(left[i], mat_subst(left[j], {_L1: lam2, DEL: lam1 + _DELP}))
            rhs = None
            for k in range(n):
                c = algebra.table[i][j][k].subst_many({DEL: -lam1 - lam2})
                if not c:
                    continue
                term = [
                    [c * p.subst_many({_L1: lam1 + lam2}) for p in row]
                    for row in left[k]
                ]
                rhs = term if rhs is None else _mat_add(rhs, term)
            if rhs is None:
                rhs = [[RatPoly.zero()] * module.dim for _ in range(module.dim)]
            if not _mat_is_zero(_mat_sub(lhs, rhs)):
                return False, ("left", (i, j))
            # right: m_lam (a_mu b) = (m_lam a)_(lam+mu) b
            lhs = None
            for k in range(n):
                c = algebra.table[i][j][k]
                if not c:
                    continue
                term = [
                    [c.subst_many({_L1: lam2, DEL: lam1 + _DELP}) * p for p in row]
                    for row in right[k]
                ]
                lhs = term if lhs is None else _mat_add(lhs, term)
            if lhs is None:
                lhs = [[RatPoly.zero()] * module.dim for _ in range(module.dim)]
            rhs = _mat_mul(
                mat_subst(right[j], {_L1: lam1 + lam2}),
                mat_subst(right[i], {DEL: -lam1 - lam2}),
            )
            if not _mat_is_zero(_mat_sub(lhs, rhs)):
                return False, ("right", (i, j))
            # mixed: a_lam (m_mu b) = (a_lam m)_(lam+mu) b
            lhs = _mat_mul(left[i], mat_subst(right[j], {_L1: lam2, DEL: lam1 + _DELP}))
            rhs = _mat_mul(
                mat_subst(right[j], {_L1: lam1 + lam2}),
                mat_subst(left[i], {DEL: -lam1 - lam2}),
            )
            if not _mat_is_zero(_mat_sub(lhs, rhs)):
                return False, ("mixed", (i, j))
    return True, None


def _mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    return [
        [
            sum((a[r][t] * b[t][s] for t in range(k) if a[r][t] and b[t][s]),
                RatPoly.zero())
            for s in range(m)
        ]
        for r in range(n)
    ]


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_is_zero(a):
    return all(not x for row in a for x in row)
