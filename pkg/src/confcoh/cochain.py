"""Cochains and the differentials of every complex variant.

A degree-q cochain assigns to generator q-tuples a module-valued polynomial
in lam1..lamq (and d, through a free module).  Conformal antilinearity is
not stored; it is the evaluation rule: feeding d^m L^k into a slot with
parameter p multiplies by (-p)^m.  The Lie variants are skew under
simultaneous permutation of slots and lam indices, so their values are
stored on non-decreasing generator tuples only and recovered elsewhere by
the permutation rule; Hochschild/cyclic/Leibniz values are stored on all
tuples.

Variants:

* ``basic`` / ``reduced``  -- the Lie complexes; ``reduced`` values over a
  free module contain no d (the canonical representative with
  d := -(lam1+...+lamq)); over a scalar module they are plain polynomial
  representatives and the quotient by (a + sum lam_i) is taken by the
  engine.
* ``hochschild`` / ``hochschild_reduced`` -- associative coefficients in a
  conformal bimodule.
* ``cyclic``  -- C-valued, invariant up to the sign (-1)^n under cyclic
  shift of the n+1 arguments.
* ``leibniz`` -- no symmetry constraint.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product

from .errors import WrongModuleKind
from .poly import (
    DEL,
    RatPoly,
    lam,
    mat_apply,
    mat_subst,
    parse_poly,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_subst,
    zero_vec,
)
from .skew import skew_basis, element_tuple, element_value

BASIC = "basic"
REDUCED = "reduced"
HOCHSCHILD = "hochschild"
HOCHSCHILD_REDUCED = "hochschild_reduced"
CYCLIC = "cyclic"
LEIBNIZ = "leibniz"

_SKEW_VARIANTS = (BASIC, REDUCED)
_DELP = RatPoly.var(DEL)

_LAMV = [None]


def lam_var(i):
    while len(_LAMV) <= i:
        _LAMV.append(RatPoly.var(lam(len(_LAMV))))
    return _LAMV[i]


def sorted_tuples(ngens, q):
    return combinations_with_replacement(range(ngens), q)


def all_tuples(ngens, q):
    return product(range(ngens), repeat=q)


def _parity(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class Cochain:
    def __init__(self, algebra, module, q, variant, values):
        self.algebra = algebra
        self.module = module
        self.q = q
        self.variant = variant
        if variant in _SKEW_VARIANTS:
            for t in values:
                if tuple(sorted(t)) != t:
                    raise ValueError("skew cochains store sorted tuples only")
        self.values = {t: v for t, v in values.items() if not vec_is_zero(v)}

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, algebra, module, q, variant=BASIC):
        return cls(algebra, module, q, variant, {})

    @classmethod
    def from_function(cls, algebra, module, q, variant, fn):
        keys = (
            sorted_tuples(algebra.ngens, q)
            if variant in _SKEW_VARIANTS
            else all_tuples(algebra.ngens, q)
        )
        return cls(algebra, module, q, variant, {t: fn(t) for t in keys})

    @classmethod
    def from_basis_element(cls, algebra, module, q, variant, elem, u_index):
        """Cochain u_(u_index) x (antisymmetrized skew-basis element)."""
        poly = element_value(elem, q)
        vec = tuple(
            poly if b == u_index else RatPoly.zero() for b in range(module.dim)
        )
        t = element_tuple(elem) if q else ()
        return cls(algebra, module, q, variant, {t: vec})

    def copy_with(self, values=None, variant=None, q=None):
        return Cochain(
            self.algebra,
            self.module,
            self.q if q is None else q,
            self.variant if variant is None else variant,
            self.values if values is None else values,
        )

    # -- vector space structure ---------------------------------------------

    def __add__(self, other):
        if (
            other.q != self.q
            or other.variant != self.variant
            or other.module is not self.module
        ):
            raise ValueError("cochain mismatch")
        out = dict(self.values)
        for t, v in other.values.items():
            out[t] = vec_add(out[t], v) if t in out else v
        return self.copy_with(values=out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return self.copy_with(
            values={t: vec_scale(c, v) for t, v in self.values.items()}
        )

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.q == other.q
            and self.variant == other.variant
            and self.values == other.values
        )

    # -- evaluation ----------------------------------------------------------

    def value_on(self, t):
        """Value on an arbitrary generator tuple, in canonical lam1..lamq."""
        if self.variant not in _SKEW_VARIANTS:
            return self.values.get(t, zero_vec(self.module.dim))
        st = tuple(sorted(t))
        base = self.values.get(st)
        if base is None:
            return zero_vec(self.module.dim)
        if st == t:
            return base
        perm = sorted(range(self.q), key=lambda s: (t[s], s))
        sign = _parity(perm)
        relabel = {
            lam(s + 1): lam_var(perm[s] + 1)
            for s in range(self.q)
            if perm[s] != s
        }
        out = vec_subst(base, relabel) if relabel else base
        return out if sign == 1 else vec_scale(-1, out)

    def value_with_params(self, t, params):
        """Value with the s-th slot parameter set to params[s] (simultaneous)."""
        base = self.value_on(t)
        mapping = {}
        for s, p in enumerate(params):
            v = lam(s + 1)
            if not (len(p.terms) == 1 and p.terms.get(((v, 1),)) == 1):
                mapping[v] = p
        return vec_subst(base, mapping) if mapping else base

    def slot_insert(self, avec, slot_param, rest_gens, rest_params, pos=0):
        """Feed an algebra-valued polynomial into the slot at ``pos``.

        The argument's d is consumed by conformal antilinearity at the slot
        parameter: d^m L^k contributes (-slot_param)^m gamma(..., L^k, ...).
        """
        total = zero_vec(self.module.dim)
        antilinear = {DEL: -slot_param}
        for k, coeff in enumerate(avec):
            if not coeff:
                continue
            scal = coeff.subst_many(antilinear)
            if not scal:
                continue
            t = rest_gens[:pos] + (k,) + rest_gens[pos:]
            params = rest_params[:pos] + [slot_param] + rest_params[pos:]
            val = self.value_with_params(t, params)
            if not vec_is_zero(val):
                total = vec_add(total, vec_scale(scal, val))
        return total

    def eval_on_elements(self, args):
        """Multilinear, conformally antilinear evaluation on algebra elements."""
        if len(args) != self.q:
            raise ValueError("argument count must equal the cochain degree")
        total = zero_vec(self.module.dim)
        ngens = self.algebra.ngens
        if self.q == 0:
            return self.value_on(())

        def rec(slot, gens, scalar):
            nonlocal total
            if not scalar:
                return
            if slot == self.q:
                val = self.value_on(tuple(gens))
                if not vec_is_zero(val):
                    total = vec_add(total, vec_scale(scalar, val))
                return
            elem = args[slot]
            neg = -lam_var(slot + 1)
            for i in range(ngens):
                p = elem[i]
                if not p:
                    continue
                gens.append(i)
                rec(slot + 1, gens, scalar * p.substitute(DEL, neg))
                gens.pop()

        rec(0, [], RatPoly.const(1))
        return total

    # -- structure ------------------------------------------------------------

    def lam_degree(self):
        best = -1
        for v in self.values.values():
            for p in v:
                d = p.lam_degree()
                if d > best:
                    best = d
        return best

    def has_del(self):
        return any(p.del_degree() > 0 for v in self.values.values() for p in v)

    def validate(self):
        """Check the symmetry constraint of the variant; returns None or witness."""
        if self.variant in _SKEW_VARIANTS:
            if self.variant == REDUCED and self.module.is_free() and self.has_del():
                return "reduced values over a free module must not contain d"
            for t, v in self.values.items():
                for s in range(self.q - 1):
                    if t[s] != t[s + 1]:
                        continue
                    swap = {
                        lam(s + 1): lam_var(s + 2),
                        lam(s + 2): lam_var(s + 1),
                    }
                    if any(
                        p.subst_many(swap) + p for p in v
                    ):  # v must be odd under the swap
                        return (t, s)
            return None
        if self.variant == CYCLIC:
            n = self.q - 1
            sign = 1 if n % 2 == 0 else -1
            for t in all_tuples(self.algebra.ngens, self.q):
                rotated = t[1:] + (t[:1])
                relabel = {lam(self.q): lam_var(1)}
                for s in range(1, self.q):
                    relabel[lam(s)] = lam_var(s + 1)
                shifted = vec_subst(self.value_on(rotated), relabel)
                diff = vec_add(vec_scale(-sign, shifted), self.value_on(t))
                if not vec_is_zero(diff):
                    return t
            return None
        return None


# -- the Lie differential ------------------------------------------------------


def _nonzero_bracket_pairs(algebra):
    """{output generator: [(i, j) with nonzero bracket component]}; cached."""
    cache = getattr(algebra, "_nonzero_pairs", None)
    if cache is None:
        n = algebra.ngens
        cache = {k: [] for k in range(n)}
        for i in range(n):
            for j in range(n):
                vec = algebra.table[i][j]
                for k in range(n):
                    if vec[k]:
                        cache[k].append((i, j))
        algebra._nonzero_pairs = cache
    return cache


def _lie_candidates(c, module_acts):
    """Sorted output tuples that can receive a nonzero term of d(c)."""
    A = c.algebra
    pairs_for = _nonzero_bracket_pairs(A)
    candidates = set()
    for key in c.values:
        if module_acts:
            for g in range(A.ngens):
                candidates.add(tuple(sorted(key + (g,))))
        seen = set()
        for pos, k in enumerate(key):
            rest = key[:pos] + key[pos + 1:]
            if (rest, k) in seen:
                continue
            seen.add((rest, k))
            for (i, j) in pairs_for[k]:
                candidates.add(tuple(sorted(rest + (i, j))))
    return sorted(candidates)


def _d_lie(c):
    """The two-sum differential, on representatives for either Lie variant."""
    A, M, q = c.algebra, c.module, c.q
    out_q = q + 1
    values = {}
    module_acts = M.is_free()
    for T in _lie_candidates(c, module_acts):
        total = zero_vec(M.dim)
        if module_acts:
            for i in range(out_q):
                rest = T[:i] + T[i + 1:]
                inner = c.value_on(rest)
                if vec_is_zero(inner):
                    continue
                relabel = {
                    lam(s + 1): lam_var(s + 2) for s in range(i, q)
                }
                if relabel:
                    inner = vec_subst(inner, relabel)
                term = M.act(T[i], lam_var(i + 1), inner)
                if i % 2:
                    term = vec_scale(-1, term)
                total = vec_add(total, term)
        for i in range(out_q):
            for j in range(i + 1, out_q):
                br = A.table[T[i]][T[j]]
                if all(not p for p in br):
                    continue
                if i > 0:
                    br = tuple(p.subst_many({lam(1): lam_var(i + 1)}) for p in br)
                fparam = lam_var(i + 1) + lam_var(j + 1)
                rest_gens = tuple(T[s] for s in range(out_q) if s != i and s != j)
                rest_params = [
                    lam_var(s + 1) for s in range(out_q) if s != i and s != j
                ]
                term = c.slot_insert(br, fparam, rest_gens, rest_params, pos=0)
                if (i + j) % 2:
                    term = vec_scale(-1, term)
                total = vec_add(total, term)
        if not vec_is_zero(total):
            values[T] = total
    return values


def d_basic(c):
    if c.variant != BASIC:
        raise ValueError("d_basic expects a basic cochain")
    return c.copy_with(values=_d_lie(c), q=c.q + 1)


def d_reduced(c):
    """Lift to the basic complex, differentiate, return to representatives."""
    if c.variant != REDUCED:
        raise ValueError("d_reduced expects a reduced cochain")
    values = _d_lie(c)
    if c.module.is_free():
        cut = {DEL: -sum((lam_var(s + 1) for s in range(c.q + 1)), RatPoly.zero())}
        values = {t: vec_subst(v, cut) for t, v in values.items()}
    return c.copy_with(values=values, q=c.q + 1)


def reduce_cochain(c):
    """The canonical d-free representative: substitute d -> -(lam1+...+lamq)."""
    if c.variant != BASIC:
        raise ValueError("reduce expects a basic cochain")
    if not c.module.is_free():
        raise WrongModuleKind(
            "reduction by substitution needs a free module; scalar-module "
            "classes are taken modulo (a + sum lam_i) by the engine"
        )
    cut = {DEL: -sum((lam_var(s + 1) for s in range(c.q)), RatPoly.zero())}
    values = {t: vec_subst(v, cut) for t, v in c.values.items()}
    return c.copy_with(values=values, variant=REDUCED)


def del_action(c):
    """(d . gamma) = (d_M + lam1 + ... + lamq) gamma on basic-type cochains."""
    if c.variant in (REDUCED, HOCHSCHILD_REDUCED):
        raise ValueError("the d-action lives on the basic complexes")
    factor = c.module.del_poly() + sum(
        (lam_var(s + 1) for s in range(c.q)), RatPoly.zero()
    )
    return c.copy_with(
        values={t: vec_scale(factor, v) for t, v in c.values.items()}
    )


# -- Hochschild, cyclic, Leibniz ------------------------------------------------


def d_hochschild(c):
    A, M, q = c.algebra, c.module, c.q
    if not A.associative:
        raise ValueError("Hochschild differential needs an associative algebra")
    if M.right_action is None:
        raise WrongModuleKind("Hochschild cochains need a bimodule")
    out_q = q + 1
    values = {}
    for T in all_tuples(A.ngens, out_q):
        total = zero_vec(M.dim)
        # a1 acting on the left
        rest = T[1:]
        inner = c.value_on(rest)
        if not vec_is_zero(inner):
            relabel = {lam(s + 1): lam_var(s + 2) for s in range(q)}
            inner = vec_subst(inner, relabel) if relabel else inner
            total = vec_add(total, M.act(T[0], lam_var(1), inner))
        # adjacent products
        for s in range(q):
            prod = A.table[T[s]][T[s + 1]]
            if all(not p for p in prod):
                continue
            if s > 0:
                prod = tuple(p.subst_many({lam(1): lam_var(s + 1)}) for p in prod)
            fparam = lam_var(s + 1) + lam_var(s + 2)
            rest_gens = T[:s] + T[s + 2:]
            rest_params = [lam_var(r + 1) for r in range(s)] + [
                lam_var(r + 1) for r in range(s + 2, out_q)
            ]
            term = c.slot_insert(prod, fparam, rest_gens, rest_params, pos=s)
            if (s + 1) % 2:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        # right action at -d - lam_{q+1}
        val = c.value_on(T[:q])
        if not vec_is_zero(val):
            shifted = vec_subst(val, {DEL: _DELP + lam_var(out_q)})
            mat = mat_subst(
                M.right_action[T[q]], {lam(1): -_DELP - lam_var(out_q)}
            )
            term = mat_apply(mat, shifted)
            if out_q % 2:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        if not vec_is_zero(total):
            values[T] = total
    if c.variant == HOCHSCHILD_REDUCED:
        cut = {DEL: -sum((lam_var(s + 1) for s in range(out_q)), RatPoly.zero())}
        values = {t: vec_subst(v, cut) for t, v in values.items()}
    return c.copy_with(values=values, q=out_q)


def d_cyclic(c):
    """Differential on cyclic cochains; c.q counts arguments (= paper n+1)."""
    A, q = c.algebra, c.q
    if not A.associative:
        raise ValueError("cyclic differential needs an associative algebra")
    n = q - 1
    out_q = q + 1
    values = {}
    for T in all_tuples(A.ngens, out_q):
        total = zero_vec(c.module.dim)
        for s in range(q):
            prod = A.table[T[s]][T[s + 1]]
            if all(not p for p in prod):
                continue
            if s > 0:
                prod = tuple(p.subst_many({lam(1): lam_var(s + 1)}) for p in prod)
            fparam = lam_var(s + 1) + lam_var(s + 2)
            rest_gens = T[:s] + T[s + 2:]
            rest_params = [lam_var(r + 1) for r in range(s)] + [
                lam_var(r + 1) for r in range(s + 2, out_q)
            ]
            term = c.slot_insert(prod, fparam, rest_gens, rest_params, pos=s)
            if s % 2:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        prod = A.table[T[out_q - 1]][T[0]]
        if any(p for p in prod):
            prod = tuple(p.subst_many({lam(1): lam_var(out_q)}) for p in prod)
            fparam = lam_var(out_q) + lam_var(1)
            rest_gens = T[1:out_q - 1]
            rest_params = [lam_var(r + 1) for r in range(1, out_q - 1)]
            term = c.slot_insert(prod, fparam, rest_gens, rest_params, pos=0)
            if (n + 1) % 2:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        if not vec_is_zero(total):
            values[T] = total
    return c.copy_with(values=values, q=out_q)


def _leibniz_candidates(c, module_acts):
    """Ordered output tuples that can receive a nonzero term of d_leibniz(c)."""
    A = c.algebra
    pairs_for = _nonzero_bracket_pairs(A)
    candidates = set()
    for key in c.values:
        q = len(key)
        if module_acts:
            for g in range(A.ngens):
                for i in range(q + 1):
                    candidates.add(key[:i] + (g,) + key[i:])
        for p in range(q):
            for (a, b) in pairs_for[key[p]]:
                rest = key[:p] + (b,) + key[p + 1:]
                for i in range(p + 1):
                    candidates.add(rest[:i] + (a,) + rest[i:])
    return sorted(candidates)


def d_leibniz(c):
    A, M, q = c.algebra, c.module, c.q
    out_q = q + 1
    values = {}
    module_acts = M.is_free()
    for T in _leibniz_candidates(c, module_acts):
        total = zero_vec(M.dim)
        if module_acts:
            for i in range(out_q):
                rest = T[:i] + T[i + 1:]
                inner = c.value_on(rest)
                if vec_is_zero(inner):
                    continue
                relabel = {lam(s + 1): lam_var(s + 2) for s in range(i, q)}
                if relabel:
                    inner = vec_subst(inner, relabel)
                term = M.act(T[i], lam_var(i + 1), inner)
                if i % 2:
                    term = vec_scale(-1, term)
                total = vec_add(total, term)
        for i in range(out_q):
            for j in range(i + 1, out_q):
                br = A.table[T[i]][T[j]]
                if all(not p for p in br):
                    continue
                if i > 0:
                    br = tuple(p.subst_many({lam(1): lam_var(i + 1)}) for p in br)
                fparam = lam_var(i + 1) + lam_var(j + 1)
                rest_gens = tuple(T[s] for s in range(out_q) if s != i and s != j)
                rest_params = [
                    lam_var(s + 1) for s in range(out_q) if s != i and s != j
                ]
                term = c.slot_insert(br, fparam, rest_gens, rest_params, pos=j - 1)
                if (i + 1) % 2:
                    term = vec_scale(-1, term)
                total = vec_add(total, term)
        if not vec_is_zero(total):
            values[T] = total
    return c.copy_with(values=values, q=out_q)


def as_leibniz(c):
    """Forget skew storage: the same cochain with values on all tuples."""
    if c.variant not in _SKEW_VARIANTS:
        raise ValueError("as_leibniz expects a Lie-variant cochain")
    values = {}
    for t in all_tuples(c.algebra.ngens, c.q):
        v = c.value_on(t)
        if not vec_is_zero(v):
            values[t] = v
    return Cochain(c.algebra, c.module, c.q, LEIBNIZ, values)


def differential(c):
    if c.variant == BASIC:
        return d_basic(c)
    if c.variant == REDUCED:
        return d_reduced(c)
    if c.variant in (HOCHSCHILD, HOCHSCHILD_REDUCED):
        return d_hochschild(c)
    if c.variant == CYCLIC:
        return d_cyclic(c)
    if c.variant == LEIBNIZ:
        return d_leibniz(c)
    raise ValueError(f"unknown variant {c.variant}")


# -- randomized cochains (seeded suites) ----------------------------------------


def random_skew_cochain(algebra, module, q, max_deg, rng, variant=BASIC,
                        max_del=0, density=0.6):
    """A random combination of skew-basis elements with small coefficients."""
    values = {}
    for d in range(max_deg + 1):
        for elem in skew_basis(q, d, algebra.ngens).elements:
            for b in range(module.dim):
                if rng.random() > density:
                    continue
                coeff = rng.randint(-3, 3)
                if not coeff:
                    continue
                extra = RatPoly.const(coeff)
                if max_del and module.is_free() and variant == BASIC:
                    extra = extra * _DELP ** rng.randint(0, max_del)
                poly = element_value(elem, q) * extra
                t = element_tuple(elem) if q else ()
                vec = values.setdefault(t, list(zero_vec(module.dim)))
                vec[b] = vec[b] + poly
    return Cochain(
        algebra, module, q, variant, {t: tuple(v) for t, v in values.items()}
    )


def random_plain_cochain(algebra, module, q, max_deg, rng, variant=LEIBNIZ,
                         density=0.4):
    """A random cochain with no symmetry constraint (Leibniz/Hochschild)."""
    values = {}
    for t in all_tuples(algebra.ngens, q):
        if rng.random() > density:
            continue
        vec = list(zero_vec(module.dim))
        for b in range(module.dim):
            exps = tuple(rng.randint(0, max(0, max_deg // max(q, 1))) for _ in range(q))
            coeff = rng.randint(-3, 3)
            if not coeff:
                continue
            mono = tuple(sorted((lam(s + 1), e) for s, e in enumerate(exps) if e))
            vec[b] = vec[b] + RatPoly({mono: coeff})
        if not vec_is_zero(tuple(vec)):
            values[t] = tuple(vec)
    return Cochain(algebra, module, q, variant, values)


def cyclic_symmetrize(c):
    """Project a plain cochain onto the cyclic-invariant part (exact weights)."""
    q = c.q
    n = q - 1
    total = {}
    for t in all_tuples(c.algebra.ngens, q):
        acc = zero_vec(c.module.dim)
        for r in range(q):
            rotated = t[r:] + t[:r]
            relabel = {
                lam(s + 1): lam_var((s + r) % q + 1) for s in range(q)
            }
            val = vec_subst(c.value_on(rotated), relabel)
            sign = 1 if (n * r) % 2 == 0 else -1
            acc = vec_add(acc, vec_scale(RatPoly.const(sign), val))
        if not vec_is_zero(acc):
            total[t] = acc
    from fractions import Fraction

    return Cochain(
        c.algebra, c.module, q, CYCLIC,
        {t: vec_scale(Fraction(1, q), v) for t, v in total.items()},
    )


# -- serialization ----------------------------------------------------------------


def cochain_to_obj(c):
    entries = []
    for t in sorted(c.values):
        vec = c.values[t]
        comps = {}
        for b, p in enumerate(vec):
            if p:
                comps[c.module.basis_names[b]] = str(p)
        entries.append({"args": [c.algebra.gen_names[i] for i in t], "value": comps})
    return {"variant": c.variant, "q": c.q, "entries": entries}


def cochain_from_obj(algebra, module, obj):
    values = {}
    for entry in obj["entries"]:
        t = tuple(algebra.index_of(name) for name in entry["args"])
        vec = list(zero_vec(module.dim))
        for name, text in entry["value"].items():
            vec[module.basis_names.index(name)] = parse_poly(text)
        values[t] = tuple(vec)
    return Cochain(algebra, module, int(obj["q"]), obj["variant"], values)
