"""Exterior multiplication, contraction, the conformal-algebra action on
cochains, and the degree-counting homotopy of the rank-one trivial complex.

The contraction and action operators carry one external parameter; it is
stored as the named parameter ``mu`` so their outputs are ordinary cochains
whose values mention that variable (setting it to any rational gives a plain
cochain again).  The Cartan identity

    d . iota(a) + iota(a) . d = theta(a)

holds exactly, and implies that theta commutes with d.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import bracket_eval
from .cochain import Cochain, lam_var, sorted_tuples
from .errors import DegreeZero, WrongContext
from .poly import (
    RatPoly,
    lam,
    param,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from .skew import signed_permutations

EXT = param("mu")
EXT_POLY = RatPoly.var(EXT)


def wedge(u, gamma):
    """Exterior multiplication by a cochain with trivial coefficients.

    The signed sum over all shuffles of the m+n slots, with exact 1/(m! n!)
    weights; over trivial coefficients this is the wedge product.
    """
    if u.module.dim != 1 or u.module.is_free():
        raise WrongContext("wedge multiplier must have trivial coefficients")
    m, n = u.q, gamma.q
    total_q = m + n
    weight = Fraction(1)
    for k in range(2, m + 1):
        weight /= k
    for k in range(2, n + 1):
        weight /= k
    values = {}
    for T in sorted_tuples(gamma.algebra.ngens, total_q):
        acc = None
        for perm, sign in signed_permutations(total_q):
            left = u.value_with_params(
                tuple(T[perm[s]] for s in range(m)),
                [lam_var(perm[s] + 1) for s in range(m)],
            )[0]
            if not left:
                continue
            right = gamma.value_with_params(
                tuple(T[perm[s]] for s in range(m, total_q)),
                [lam_var(perm[s] + 1) for s in range(m, total_q)],
            )
            if vec_is_zero(right):
                continue
            term = vec_scale(sign * left, right)
            acc = term if acc is None else vec_add(acc, term)
        if acc is not None and not vec_is_zero(acc):
            values[T] = vec_scale(weight, acc)
    return Cochain(gamma.algebra, gamma.module, total_q, gamma.variant, values)


def contract_lambda(a, gamma):
    """(iota_mu(a) gamma): slot-one evaluation at the external parameter."""
    n = gamma.q
    if n == 0:
        raise DegreeZero("cannot contract a 0-cochain")
    values = {}
    for T in sorted_tuples(gamma.algebra.ngens, n - 1):
        rest_params = [lam_var(s + 1) for s in range(n - 1)]
        val = gamma.slot_insert(a, EXT_POLY, T, rest_params, pos=0)
        if not vec_is_zero(val):
            values[T] = val
    return Cochain(gamma.algebra, gamma.module, n - 1, gamma.variant, values)


def lie_theta(a, gamma):
    """(theta_mu(a) gamma): the conformal action of a on cochains."""
    n = gamma.q
    A, M = gamma.algebra, gamma.module
    values = {}
    for T in sorted_tuples(A.ngens, n):
        acc = M.act_element(a, EXT_POLY, gamma.value_on(T))
        for i in range(n):
            gen = tuple(
                RatPoly.const(1) if k == T[i] else RatPoly.zero()
                for k in range(A.ngens)
            )
            br = bracket_eval(A, a, gen, param=EXT_POLY)
            if all(not p for p in br):
                continue
            rest = T[:i] + T[i + 1:]
            rest_params = [lam_var(s + 1) for s in range(n) if s != i]
            term = gamma.slot_insert(
                br, EXT_POLY + lam_var(i + 1), rest, rest_params, pos=i
            )
            acc = vec_add(acc, vec_scale(-1, term))
        if not vec_is_zero(acc):
            values[T] = acc
    return Cochain(A, M, n, gamma.variant, values)


def _require_rank_one_trivial(c):
    if c.algebra.ngens != 1 or c.module.is_free() or c.module.dim != 1 \
            or c.module.del_scalar != 0:
        raise WrongContext(
            "homotopy operators live on the one-generator complex with "
            "trivial coefficients"
        )


def homotopy_k(c):
    """The slice homotopy: up to sign, dP/d(lam_q) at lam_q = 0.

    The sign is (-1)^(q-1), the normalization that makes
    (d k + k d) P = (deg P - q) P hold with the two-sum differential; with
    (-1)^q the identity comes out with the opposite sign.
    """
    _require_rank_one_trivial(c)
    q = c.q
    if q == 0:
        return Cochain.zero(c.algebra, c.module, 0, c.variant)
    value = c.value_on((0,) * q)[0]
    dropped = value.derivative(lam(q)).substitute(lam(q), 0)
    if q % 2 == 0:
        dropped = -dropped
    values = {}
    if dropped:
        values[(0,) * (q - 1)] = (dropped,)
    return Cochain(c.algebra, c.module, q - 1, c.variant, values)


def del_multiplier(q):
    total = RatPoly.zero()
    for s in range(q):
        total = total + lam_var(s + 1)
    return total


def homotopy_k1(c):
    """k1 on the image of the d-action: k1((sum lam) P) = (sum lam) k(P)."""
    _require_rank_one_trivial(c)
    q = c.q
    value = c.value_on((0,) * q)[0]
    if q == 0:
        if value:
            raise WrongContext("no nonzero 0-cochain lies in the d-action image")
        return Cochain.zero(c.algebra, c.module, 0, c.variant)
    root = RatPoly.zero()
    for s in range(1, q):
        root = root - lam_var(s + 1)
    quot, rem = value.div_linear(lam(1), root)
    if rem:
        raise WrongContext("cochain is not in the image of the d-action")
    inner = c.copy_with(values={(0,) * q: (quot,)} if quot else {})
    k_inner = homotopy_k(inner)
    mult = del_multiplier(q - 1)
    return k_inner.copy_with(
        values={t: vec_scale(mult, v) for t, v in k_inner.values.items()}
    )
