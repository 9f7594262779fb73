"""The annihilation Lie algebra, its module of levels, and the transport of
cochains to continuous Lie-algebra cochains.

The annihilation algebra is spanned by symbols (generator, level) with level
in Z_+; its bracket is read off the conformal bracket table through the j-th
products (the divided-power coefficients of the lambda expansion):

    [a_m, b_n] = sum_j binom(m, j) (a_(j) b)_(m+n-j),

with (d x)_s = -s x_(s-1) making levels well defined.  The derivation T acts
by T(a_n) = -n a_(n-1).  A free module M = C[d] x U produces the module of
levels U[t] via the same binomial formula.

A basic cochain gamma transports to the functional

    phi(gamma)(a1_(m1), ..., an_(mn)) = (prod m_i!) [lam^m] gamma,

which has finite support because the values are polynomials; the standard
continuous Chevalley-Eilenberg differential, evaluated lazily through this
transport, matches the conformal differential exactly (the headline test of
this module).  All level arithmetic here is derived from the binomial
formulas alone, so the comparison exercises two independent code paths.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import WrongModuleKind
from .poly import DEL, RatPoly, lam, vec_is_zero, zero_vec


def _add_term(out, key, coeff):
    if not coeff:
        return
    prev = out.get(key)
    if prev is None:
        out[key] = coeff
    else:
        prev = prev + coeff
        if prev:
            out[key] = prev
        else:
            del out[key]


def level_image(element, s):
    """Image of an algebra/module element at level s: (d^r x)_s = fall(s,r) (-1)^r x_(s-r)."""
    out = {}
    for comp, p in enumerate(element):
        for mono, coeff in p.terms.items():
            r = 0
            for v, e in mono:
                if v == DEL:
                    r = e
                else:
                    raise ValueError("level image needs a d-polynomial element")
            if r > s:
                continue
            fall = 1
            for k in range(r):
                fall *= s - k
            _add_term(out, (comp, s - r), coeff * ((-1) ** r) * fall)
    return out


def jth_product(algebra, i, j, order):
    """The order-th product a_(order) b: order! times the lam^order coefficient."""
    vec = algebra.table[i][j]
    out = []
    for p in vec:
        out.append(Fraction(factorial(order)) * p.coeff_of_lams((order,)))
    return tuple(out)


def ann_bracket(algebra, x, y):
    """[a_m, b_n] as a dict {(generator, level): coefficient}."""
    (i, m), (j, n) = x, y
    out = {}
    for order in range(m + 1):
        prod = jth_product(algebra, i, j, order)
        if all(not p for p in prod):
            continue
        image = level_image(prod, m + n - order)
        c = comb(m, order)
        for key, coeff in image.items():
            _add_term(out, key, c * coeff)
    return out


def derivation_t(x):
    """T(a_n) = -n a_(n-1)."""
    i, m = x
    if m == 0:
        return {}
    return {(i, m - 1): Fraction(-m)}


def module_jth_product(module, i, j):
    """a_(j) v on the module basis: j! times the lam^j coefficient of the action."""
    mats = module.action[i]
    out = []
    for r in range(module.dim):
        out.append(
            tuple(
                Fraction(factorial(j)) * mats[r][c].coeff_of_lams((j,))
                for c in range(module.dim)
            )
        )
    return out


def v_minus_action(module, x, vec_level):
    """a_m (u t^n) by the binomial formula; {(basis index, level): coeff}."""
    if not module.is_free():
        raise WrongModuleKind("the level module is built from a free module")
    (i, m), (b, n) = x, vec_level
    out = {}
    for order in range(m + 1):
        mats = module_jth_product(module, i, order)
        column = tuple(mats[r][b] for r in range(module.dim))
        if all(not p for p in column):
            continue
        image = level_image(column, m + n - order)
        c = comb(m, order)
        for key, coeff in image.items():
            _add_term(out, key, c * coeff)
    return out


def act_level_on_value(module, i, m, value):
    """Action of a_m on an M-element (tuple of d-polynomials): m! [lam^m] a_lam v."""
    if not module.is_free():
        return zero_vec(module.dim)
    image = module.act(i, RatPoly.var(lam(1)), value)
    fact = Fraction(factorial(m))
    return tuple(fact * p.coeff_of_lams((m,)) for p in image)


def phi_eval(gamma, gens, levels):
    """phi(gamma) at a level tuple: (prod m_i!) [lam^m] of the cochain value."""
    value = gamma.value_on(tuple(gens))
    fact = Fraction(1)
    for m in levels:
        fact *= factorial(m)
    return tuple(fact * p.coeff_of_lams(tuple(levels)) for p in value)


def phi_index(gamma):
    """A fast evaluator with the same contract as phi_eval.

    Pre-splits every value into {lam-exponent tuple: d-polynomial} so each
    level lookup is a dict access instead of a term scan; used by the bulk
    transport suites.
    """
    q = gamma.q
    cache = {}

    def eval_at(gens, levels):
        gens = tuple(gens)
        table = cache.get(gens)
        if table is None:
            value = gamma.value_on(gens)
            table = []
            for p in value:
                split = {}
                for mono, coeff in p.terms.items():
                    exps = [0] * q
                    rest = []
                    for v, e in mono:
                        if v[0] == 0:
                            exps[v[1] - 1] = e
                        else:
                            rest.append((v, e))
                    key = tuple(exps)
                    split.setdefault(key, {})[tuple(rest)] = coeff
                table.append({k: RatPoly(t) for k, t in split.items()})
            cache[gens] = table
        fact = Fraction(1)
        for m in levels:
            fact *= factorial(m)
        key = tuple(levels)
        return tuple(
            fact * comp.get(key, _RAT_ZERO) for comp in table
        )

    return eval_at


_RAT_ZERO = RatPoly.zero()


def ce_differential_eval(gamma, gens, levels, phi=None):
    """The continuous Chevalley-Eilenberg differential of phi(gamma).

    gens/levels have length q+1; the module acts through its level actions
    and the bracket through ann_bracket, so no conformal differential is
    involved.  ``phi`` may be a pre-indexed evaluator (phi_index) for bulk
    runs; the default is the reference phi_eval.
    """
    module = gamma.module
    q1 = len(gens)
    if phi is None:
        phi = lambda g, m: phi_eval(gamma, g, m)
    total = zero_vec(module.dim)
    for i in range(q1):
        rest_g = gens[:i] + gens[i + 1:]
        rest_m = levels[:i] + levels[i + 1:]
        inner = phi(rest_g, rest_m)
        if vec_is_zero(inner):
            continue
        term = act_level_on_value(module, gens[i], levels[i], inner)
        if i % 2:
            term = tuple(-p for p in term)
        total = tuple(a + b for a, b in zip(total, term))
    for i in range(q1):
        for j in range(i + 1, q1):
            bracket = ann_bracket(gamma.algebra, (gens[i], levels[i]),
                                  (gens[j], levels[j]))
            if not bracket:
                continue
            rest_g = tuple(gens[s] for s in range(q1) if s != i and s != j)
            rest_m = tuple(levels[s] for s in range(q1) if s != i and s != j)
            acc = zero_vec(module.dim)
            for (k, lev), coeff in bracket.items():
                val = phi((k,) + rest_g, (lev,) + rest_m)
                if not vec_is_zero(val):
                    acc = tuple(a + coeff * b for a, b in zip(acc, val))
            if (i + j) % 2:
                acc = tuple(-p for p in acc)
            total = tuple(a + b for a, b in zip(total, acc))
    return total


def del_functional_eval(gamma, gens, levels):
    """The d-action on functionals: d_M . beta(x) - sum_i beta(..., T x_i, ...)."""
    module = gamma.module
    base = phi_eval(gamma, gens, levels)
    if module.is_free():
        dpoly = RatPoly.var(DEL)
        total = tuple(dpoly * p for p in base)
    else:
        total = tuple(RatPoly.const(module.del_scalar) * p for p in base)
    for i in range(len(gens)):
        for (gen, lev), coeff in derivation_t((gens[i], levels[i])).items():
            val = phi_eval(
                gamma,
                gens[:i] + (gen,) + gens[i + 1:],
                levels[:i] + (lev,) + levels[i + 1:],
            )
            total = tuple(a - coeff * b for a, b in zip(total, val))
    return total
