"""Bidegree slicing, exact differential matrices, and Betti tables.

A complex is (algebra, module, variant in {basic, reduced}).  Slice bases in
bidegree (q, d) are skew-basis shapes tensored with the module basis; every
value the engine touches is a polynomial in the lam variables alone (reduced
representatives are d-free, scalar coefficients never carry d), so
coordinates are read off monomial-by-monomial.

Two computation modes:

* graded -- every assembled column is homogeneous with one global lam-degree
  shift, and for scalar coefficients the d-action scalar is 0 so the quotient
  by (sum lam_i) is homogeneous too.  Dimensions per bidegree are then exact
  and are summed over d <= D.
* window -- filtered differentials (nonzero module parameters).  Cocycles in
  degrees <= D are exact (membership in the d-action ideal is decided by
  restriction to the hyperplane sum lam_i = -a); the coboundary space is
  approximated by images of the window, and agreement across bounds D, D+1,
  D+2 is reported as the stabilized flag.

The scalar-module reduced complex is the quotient by the image of
multiplication by (a + sum lam_i); the quotient is taken here, on slices,
never by eliminating a variable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cochain import (
    BASIC,
    REDUCED,
    Cochain,
    d_basic,
    d_reduced,
)
from .errors import NotEquivariant, UnstableTruncation, UnsupportedComplex
from .liealg import check_equivariant, sym_power_rep, adjoint_rep
from .poly import RatPoly, lam, vec_is_zero, vec_scale
from .skew import element_tuple, element_value, monomial_coordinates, skew_basis


@dataclass(frozen=True)
class ComplexSpec:
    algebra: object
    module: object
    variant: str = REDUCED
    label: str = ""

    def __post_init__(self):
        if self.variant not in (BASIC, REDUCED):
            raise UnsupportedComplex(
                f"the engine slices basic/reduced Lie complexes, not {self.variant}"
            )
        if self.variant == BASIC and self.module.is_free():
            raise UnsupportedComplex(
                "basic complexes over free modules are infinite in the d "
                "direction; only their H^0 is exposed (invariants_h0)"
            )

    @property
    def scalar_quotient(self):
        return self.variant == REDUCED and not self.module.is_free()


def slice_pairs(spec, q, d):
    """Deterministically ordered basis labels (shape element, module index)."""
    if q == 0:
        if d != 0:
            return []
        return [((), u) for u in range(spec.module.dim)]
    elements = skew_basis(q, d, spec.algebra.ngens).elements
    return [(elem, u) for elem in elements for u in range(spec.module.dim)]


def basis_cochain(spec, q, pair):
    elem, u = pair
    return Cochain.from_basis_element(
        spec.algebra, spec.module, q, spec.variant, elem, u
    )


def cochain_coords(c):
    """Coordinates {(shape, u): coeff} of a lam-only-valued skew cochain."""
    coords = {}
    for t, vec in c.values.items():
        for u, p in enumerate(vec):
            if not p:
                continue
            for elem, coeff in monomial_coordinates(p, t).items():
                key = (elem, u)
                prev = coords.get(key)
                if prev is None:
                    coords[key] = coeff
                elif prev != coeff:
                    raise AssertionError("inconsistent skew decomposition")
    return coords


def coords_to_cochain(spec, q, coords):
    values = {}
    dim = spec.module.dim
    for (elem, u), coeff in coords.items():
        if not coeff:
            continue
        t = element_tuple(elem) if q else ()
        vec = values.setdefault(t, [RatPoly.zero()] * dim)
        vec[u] = vec[u] + coeff * element_value(elem, q)
    return Cochain(
        spec.algebra, spec.module, q, spec.variant,
        {t: tuple(v) for t, v in values.items()},
    )


def pair_degree(pair):
    return sum(e for _, e in pair[0])


def apply_differential(spec, c):
    return d_basic(c) if spec.variant == BASIC else d_reduced(c)


def _mult_factor(spec, q):
    total = RatPoly.const(spec.module.del_scalar if spec.scalar_quotient else 0)
    for s in range(q):
        total = total + RatPoly.var(lam(s + 1))
    return total


def _mult_coords(spec, q, pair):
    """Coordinates of (a + sum lam_i) times a basis cochain."""
    c = basis_cochain(spec, q, pair)
    factor = _mult_factor(spec, q)
    scaled = c.copy_with(
        values={t: vec_scale(factor, v) for t, v in c.values.items()}
    )
    return cochain_coords(scaled)


def _restriction_coords(spec, c):
    """Coordinates of the value after lam1 := -a - lam2 - ... - lamq.

    Vanishing is equivalent to divisibility by (a + sum lam_i); keys are
    (tuple, monomial, u) and need not be skew-decomposed.
    """
    q = c.q
    a = spec.module.del_scalar
    repl = -RatPoly.const(a)
    for s in range(1, q):
        repl = repl - RatPoly.var(lam(s + 1))
    out = {}
    for t, vec in c.values.items():
        for u, p in enumerate(vec):
            if not p:
                continue
            for mono, coeff in p.substitute(lam(1), repl).terms.items():
                key = (t, mono, u)
                out[key] = out.get(key, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


class Assembly:
    """Raw differential columns per bidegree, shared by both modes."""

    def __init__(self, spec, qmax, dmax):
        self.spec = spec
        self.qmax = qmax
        self.dmax = dmax
        self.pairs = {}
        self.columns = {}
        self.images = {}
        # pairs one degree beyond qmax: the codomain quotient needs them
        for q in range(qmax + 2):
            for d in range(dmax + 1):
                self.pairs[(q, d)] = slice_pairs(spec, q, d)
        for q in range(qmax + 1):
            for d in range(dmax + 1):
                cols = []
                imgs = []
                for pair in self.pairs[(q, d)]:
                    image = apply_differential(spec, basis_cochain(spec, q, pair))
                    imgs.append(image)
                    cols.append(cochain_coords(image))
                self.columns[(q, d)] = cols
                self.images[(q, d)] = imgs

    def graded_shift(self):
        """The single lam-degree shift, or None if the complex is filtered."""
        if self.spec.scalar_quotient and self.spec.module.del_scalar != 0:
            return None
        shift = None
        for (q, d), cols in self.columns.items():
            for col in cols:
                for key in col:
                    s = pair_degree(key) - d
                    if shift is None:
                        shift = s
                    elif shift != s:
                        return None
        if shift is None:
            shift = 0
        return shift if shift >= 0 else None


@dataclass
class BettiRow:
    q: int
    dim: int
    bound: int
    stabilized: bool
    mode: str
    representatives: list = field(default_factory=list)


@dataclass
class BettiTable:
    label: str
    variant: str
    rows: list

    def dims(self):
        return [row.dim for row in self.rows]

    def to_text(self):
        lines = [f"complex: {self.label} [{self.variant}]"]
        header = f"{'q':>3} {'dim':>5} {'D':>4} {'stabilized':>11}  representatives"
        lines.append(header)
        for row in self.rows:
            reps = "; ".join(_rep_text(c) for c in row.representatives)
            lines.append(
                f"{row.q:>3} {row.dim:>5} {row.bound:>4} {str(row.stabilized):>11}  {reps}"
            )
        return "\n".join(lines)

    def to_csv(self):
        lines = ["label,variant,q,dim,D,stabilized,mode,representatives"]
        for row in self.rows:
            reps = " | ".join(_rep_text(c) for c in row.representatives)
            lines.append(
                f"{self.label},{self.variant},{row.q},{row.dim},{row.bound},"
                f"{row.stabilized},{row.mode},\"{reps}\""
            )
        return "\n".join(lines)

    def to_json_obj(self):
        return {
            "label": self.label,
            "variant": self.variant,
            "rows": [
                {
                    "q": row.q,
                    "dim": row.dim,
                    "D": row.bound,
                    "stabilized": row.stabilized,
                    "mode": row.mode,
                    "representatives": [_rep_text(c) for c in row.representatives],
                }
                for row in self.rows
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=2)


def _rep_text(c):
    parts = []
    for t in sorted(c.values):
        vec = c.values[t]
        args = ",".join(c.algebra.gen_names[i] for i in t)
        for u, p in enumerate(vec):
            if p:
                name = c.module.basis_names[u]
                parts.append(f"({args})->{name}: {p}")
    return " ; ".join(parts) if parts else "0"


# -- graded mode -----------------------------------------------------------------


class _GradedEngine:
    def __init__(self, assembly, shift):
        self.a = assembly
        self.spec = assembly.spec
        self.shift = shift
        self._quotient = {}

    def quotient(self, q, d):
        """RREF of the (a + sum lam) image inside slice (q, d); scalar reduced only."""
        key = (q, d)
        if key not in self._quotient:
            if not self.spec.scalar_quotient:
                self._quotient[key] = ([], [])
            else:
                rows = []
                if q == 0:
                    if self.spec.module.del_scalar:
                        rows = [
                            dict(_mult_coords(self.spec, q, pair))
                            for pair in self.a.pairs.get((q, d), [])
                        ]
                else:
                    for pair in self.a.pairs.get((q, d - 1), []):
                        rows.append(_mult_coords(self.spec, q, pair))
                self._quotient[key] = linalg.sparse_rref(rows)
        return self._quotient[key]

    def free_keys(self, q, d):
        reduced, pivots = self.quotient(q, d)
        pivot_set = set(pivots)
        return [p for p in self.a.pairs.get((q, d), []) if p not in pivot_set]

    def matrix(self, q, d):
        """Columns of the induced differential on quotient slices."""
        reduced_out, pivots_out = self.quotient(q + 1, d + self.shift)
        _, pivots_in = self.quotient(q, d)
        pivot_in = set(pivots_in)
        cols = []
        for pair, col in zip(self.a.pairs.get((q, d), []), self.a.columns.get((q, d), [])):
            if pair in pivot_in:
                continue
            cols.append(linalg.reduce_mod_span(reduced_out, pivots_out, col))
        return cols

    def dims_and_reps(self, q, bound, want_reps):
        total = 0
        reps = []
        for d in range(bound + 1):
            domain = self.free_keys(q, d)
            if not domain:
                continue
            cols = self.matrix(q, d)
            kernel = linalg.kernel_of_columns(cols)
            prev_cols = (
                self.matrix(q - 1, d - self.shift)
                if q > 0 and d - self.shift >= 0
                else []
            )
            image_rank = linalg.rank(prev_cols)
            h = len(kernel) - image_rank
            total += h
            if want_reps and h > 0:
                image_rref = linalg.sparse_rref(prev_cols)
                remainders = []
                for kvec in kernel:
                    coords = {domain[j]: x for j, x in kvec.items()}
                    rem = linalg.reduce_mod_span(image_rref[0], image_rref[1], coords)
                    if rem:
                        remainders.append(rem)
                normal, _ = linalg.sparse_rref(remainders)
                for row in normal[:h]:
                    reps.append(coords_to_cochain(self.spec, q, row))
        return total, reps


# -- window mode -----------------------------------------------------------------


class _WindowEngine:
    def __init__(self, assembly):
        self.a = assembly
        self.spec = assembly.spec

    def cocycle_vectors(self, q, bound):
        domain = []
        zcols = []
        for d in range(bound + 1):
            for pair, image, col in zip(
                self.a.pairs.get((q, d), []),
                self.a.images.get((q, d), []),
                self.a.columns.get((q, d), []),
            ):
                domain.append(pair)
                if self.spec.scalar_quotient:
                    zcols.append(_restriction_coords(self.spec, image))
                else:
                    zcols.append(col)
        kernel = linalg.kernel_of_columns(zcols)
        return [
            {domain[j]: x for j, x in kvec.items()} for kvec in kernel
        ]

    def boundary_rows(self, q, bound):
        rows = []
        if q > 0:
            for d in range(bound + 1):
                rows.extend(self.a.columns.get((q - 1, d), []))
        if self.spec.scalar_quotient:
            for d in range(bound + 1):
                for pair in self.a.pairs.get((q, d), []):
                    rows.append(_mult_coords(self.spec, q, pair))
        return [r for r in rows if r]

    def dims_and_reps(self, q, bound, want_reps):
        zvecs = self.cocycle_vectors(q, bound)
        brows = self.boundary_rows(q, bound)
        h = len(zvecs) - linalg.intersection_dim(zvecs, brows)
        reps = []
        if want_reps and h > 0:
            reduced, pivots = linalg.sparse_rref(brows)
            remainders = []
            for z in zvecs:
                rem = linalg.reduce_mod_span(reduced, pivots, z)
                if rem:
                    remainders.append(rem)
            normal, _ = linalg.sparse_rref(remainders)
            for row in normal[:h]:
                reps.append(coords_to_cochain(self.spec, q, row))
        return h, reps


# -- public API --------------------------------------------------------------------


def truncation_sweep(spec, qmax, bound=8, representatives=False):
    """Betti rows at bounds D, D+1, D+2; stabilized = all three agree."""
    dmax = bound + 2 + 1  # slack for the shifted codomain at the top bound
    assembly = Assembly(spec, qmax, dmax)
    shift = assembly.graded_shift()
    engine = _GradedEngine(assembly, shift) if shift is not None else _WindowEngine(
        assembly
    )
    mode = "graded" if shift is not None else "window"
    rows = []
    for q in range(qmax + 1):
        dims = []
        reps = []
        for b in (bound, bound + 1, bound + 2):
            h, r = engine.dims_and_reps(q, b, representatives and b == bound + 2)
            dims.append(h)
            if b == bound + 2:
                reps = r
        rows.append(
            BettiRow(
                q=q,
                dim=dims[-1],
                bound=bound,
                stabilized=dims[0] == dims[1] == dims[2],
                mode=mode,
                representatives=reps,
            )
        )
    return BettiTable(label=spec.label or repr(spec.algebra), variant=spec.variant,
                      rows=rows)


def graded_bidegree_dims(spec, qmax, bound):
    """Exact per-bidegree dimensions {(q, d): h} for a graded complex.

    Raises UnsupportedComplex when the differential is filtered (no single
    lam-degree shift): bidegree localization is only meaningful there.
    """
    assembly = Assembly(spec, qmax, bound + 2)
    shift = assembly.graded_shift()
    if shift is None:
        raise UnsupportedComplex("complex is filtered; no bidegree splitting")
    engine = _GradedEngine(assembly, shift)
    out = {}
    for q in range(qmax + 1):
        for d in range(bound + 1):
            domain = engine.free_keys(q, d)
            if not domain:
                continue
            kernel = linalg.kernel_of_columns(engine.matrix(q, d))
            prev = (
                engine.matrix(q - 1, d - shift)
                if q > 0 and d - shift >= 0
                else []
            )
            h = len(kernel) - linalg.rank(prev)
            if h:
                out[(q, d)] = h
    return out


def betti(spec, qmax, bound=8, representatives=False):
    """As truncation_sweep, but an unstable row raises UnstableTruncation."""
    table = truncation_sweep(spec, qmax, bound, representatives)
    for row in table.rows:
        if not row.stabilized:
            raise UnstableTruncation(
                f"H^{row.q} did not stabilize across bounds "
                f"{bound}/{bound + 1}/{bound + 2}"
            )
    return table


def assemble(spec, q, d):
    """The exact differential matrix out of slice (q, d).

    Returns (domain_pairs, columns); the codomain is read off the column
    keys (their own bidegree is implied by the shape element).
    """
    pairs = slice_pairs(spec, q, d)
    cols = []
    for pair in pairs:
        image = apply_differential(spec, basis_cochain(spec, q, pair))
        cols.append(cochain_coords(image))
    return pairs, cols


@dataclass
class VerifyResult:
    is_cocycle: bool
    is_coboundary: bool
    witness: object = None


def verify_cocycle(spec, gamma, slack=2):
    """Exact cocycle test and a window coboundary solve with witness."""
    dv = apply_differential(spec, gamma)
    if spec.scalar_quotient:
        is_cocycle = not _restriction_coords(spec, dv)
    else:
        is_cocycle = dv.is_zero()
    if not is_cocycle:
        return VerifyResult(False, False)
    q = gamma.q
    target = cochain_coords(gamma)
    if not target:
        return VerifyResult(True, True, witness=None)
    deg = max(gamma.lam_degree(), 0)
    bound = deg + slack
    columns = []
    labels = []
    if q > 0:
        for d in range(bound + 1):
            for pair in slice_pairs(spec, q - 1, d):
                image = apply_differential(spec, basis_cochain(spec, q - 1, pair))
                columns.append(cochain_coords(image))
                labels.append(("d", q - 1, pair))
    if spec.scalar_quotient:
        for d in range(bound + 1):
            for pair in slice_pairs(spec, q, d):
                columns.append(_mult_coords(spec, q, pair))
                labels.append(("mult", q, pair))
    sol = linalg.solve_columns(columns, target)
    if sol is None:
        return VerifyResult(True, False)
    witness_coords = {}
    for j, x in sol.items():
        kind, qq, pair = labels[j]
        if kind == "d" and x:
            witness_coords[pair] = witness_coords.get(pair, Fraction(0)) + x
    witness = coords_to_cochain(spec, q - 1, witness_coords) if q > 0 else None
    return VerifyResult(True, True, witness=witness)


# -- the current-sl2 example cocycles ----------------------------------------------


def _pi_poly(slots):
    """lam_{s1} ... lam_{sk} * prod_{r<s} (lam_r - lam_s) over the given slots."""
    out = RatPoly.const(1)
    for s in slots:
        out = out * RatPoly.var(lam(s + 1))
    for a in range(len(slots)):
        for b in range(a + 1, len(slots)):
            out = out * (
                RatPoly.var(lam(slots[a] + 1)) - RatPoly.var(lam(slots[b] + 1))
            )
    return out


def _c3(i, j, k):
    """(x_i ^ x_j ^ x_k) / (e ^ f ^ h) for sl2 basis indices."""
    if len({i, j, k}) < 3:
        return 0
    perm = (i, j, k)
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def sl2_example_cocycle(g, u_rep, n, phi_n=None, phi_n3=None):
    """The reduced n-cochain over Cur sl2 / M_U built from (phi_n, phi_{n-3}).

    phi_n (resp. phi_n3) is a U x dim Sym^n(sl2) (resp. Sym^(n-3)) matrix over
    the monomial multiset basis of the symmetric power of the adjoint module,
    required to be a g-map killing the ideal generated by the quadratic
    invariant of Sym^2; either may be None.
    """
    from .algebra import build_current, build_m_u

    if tuple(g.names) != ("e", "f", "h"):
        raise ValueError("sl2_example_cocycle expects the standard sl2 basis")
    ad = adjoint_rep(g)
    data = []
    for power, phi in ((n, phi_n), (n - 3, phi_n3)):
        if phi is None:
            data.append(None)
            continue
        if power < 0:
            raise ValueError("phi given for a negative symmetric power")
        sym, basis = sym_power_rep(ad, power)
        check_equivariant(sym, u_rep, phi)
        _check_kills_casimir_ideal(phi, basis, power, g)
        index = {b: k for k, b in enumerate(basis)}
        data.append((phi, index))
    phi_n_data, phi_n3_data = data

    cur = build_current(g)
    module = build_m_u(g, u_rep)
    values = {}
    from .cochain import sorted_tuples

    for t in sorted_tuples(3, n):
        vec = [RatPoly.zero()] * u_rep.dim
        if phi_n_data is not None:
            phi, index = phi_n_data
            col = index[tuple(sorted(t))]
            pi = _pi_poly(list(range(n)))
            for r in range(u_rep.dim):
                if phi[r][col]:
                    vec[r] = vec[r] + phi[r][col] * pi
        if phi_n3_data is not None:
            phi, index = phi_n3_data
            from itertools import combinations

            for picks in combinations(range(n), 3):
                sign = _c3(t[picks[0]], t[picks[1]], t[picks[2]])
                if not sign:
                    continue
                rest = [s for s in range(n) if s not in picks]
                col = index[tuple(sorted(t[s] for s in rest))]
                pi = _pi_poly(rest)
                for r in range(u_rep.dim):
                    if phi[r][col]:
                        vec[r] = vec[r] + sign * phi[r][col] * pi
        if not vec_is_zero(tuple(vec)):
            values[t] = tuple(vec)
    return Cochain(cur, module, n, REDUCED, values)


def _check_kills_casimir_ideal(phi, basis, power, g):
    """phi must vanish on (quadratic invariant) * Sym^(power-2).

    The invariant line of Sym^2 of the adjoint module is computed, not
    hardcoded, so the check is independent of basis sign conventions.
    """
    if power < 2:
        return
    from itertools import combinations_with_replacement

    from .liealg import equivariant_maps as _eq, trivial_rep as _triv

    ad = adjoint_rep(g)
    sym2, basis2 = sym_power_rep(ad, 2)
    embed = _eq(_triv(g), sym2)
    if len(embed) != 1:
        raise NotEquivariant("expected a one-dimensional invariant in Sym^2")
    omega = {basis2[r]: embed[0][r][0] for r in range(len(basis2))
             if embed[0][r][0]}
    index = {b: k for k, b in enumerate(basis)}
    rows = len(phi)
    for tail in combinations_with_replacement(range(g.dim), power - 2):
        coords = {}
        for pair, c in omega.items():
            key = index[tuple(sorted(tail + pair))]
            coords[key] = coords.get(key, Fraction(0)) + c
        for r in range(rows):
            total = sum(phi[r][c] * x for c, x in coords.items())
            if total:
                raise NotEquivariant(
                    "phi does not factor through the quotient by the "
                    "quadratic-invariant ideal"
                )


