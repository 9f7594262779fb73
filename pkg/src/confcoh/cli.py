"""Command-line front end.

Subcommands: check, betti, cartan, annih-compare, extend, deform.
Exit codes: 0 ok, 1 computation warning (unstable truncation), 2 spec/axiom
failure (including non-cocycle input), 3 parse failure.  Output is
deterministic byte-for-byte for a fixed seed and spec.

Builtin algebras: vir, cur:sl2, cur:sl3, cur:abelian:<n>.
Builtin modules: trivial, ca:<a>, mda:<Delta>,<alpha>, mu:adjoint,
mu:V<m> / mu:V(<m>) (sl2 irreducibles), mu:trivial, mu:wedge2modg (sl3).

Inline spec files are JSON with the polynomial grammar of the library::

    {
      "algebra": {
        "generators": ["L"],
        "brackets": {"L,L": {"L": "d + 2*lam1"}},
        "associative": false,
        "del_scalars": {}
      },
      "module": {
        "kind": "free",
        "basis": ["v"],
        "actions": {"L": [["d + alpha + lam1"]]},
        "del_scalar": "0"
      }
    }

Bracket keys are "gen,gen"; missing entries are zero.  Free-module actions
give one row-major matrix of polynomials per generator; scalar modules give
"del_scalar" and no actions.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations_with_replacement

from .algebra import (
    ConformalAlgebra,
    ConformalModule,
    adjoint_module,
    build_current,
    build_m_delta_alpha,
    build_m_u,
    build_trivial,
    build_vir,
    check_associativity,
    check_jacobi,
    check_module,
    check_skew_symmetry,
)
from .annihilation import ce_differential_eval, phi_eval
from .calculus import contract_lambda, lie_theta
from .cochain import (
    BASIC,
    REDUCED,
    cochain_from_obj,
    d_basic,
    random_skew_cochain,
)
from .engine import ComplexSpec, truncation_sweep, verify_cocycle
from .errors import ConfcohError, NotACocycle, ParseError
from .extensions import deform, extend_algebra
from .liealg import (
    abelian,
    adjoint_rep,
    equivariant_maps,
    quotient_rep,
    sl2,
    sl2_irrep,
    sl3,
    sym_power_rep,
    trivial_rep,
    wedge2_rep,
)
from .poly import RatPoly, lam, parse_poly

EXIT_OK = 0
EXIT_WARNING = 1
EXIT_AXIOM = 2
EXIT_PARSE = 3


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def parse_algebra(text):
    if text == "vir":
        return build_vir(), "vir"
    if text.startswith("cur:"):
        name = text[4:]
        if name == "sl2":
            return build_current(sl2()), text
        if name == "sl3":
            return build_current(sl3()), text
        if name.startswith("abelian:"):
            return build_current(abelian(int(name.split(":")[1]))), text
    raise ParseError(f"unknown algebra spec {text!r}")


def parse_module(text, algebra, algebra_name):
    if text == "trivial":
        return build_trivial(1, 0)
    if text.startswith("ca:"):
        return build_trivial(1, Fraction(text[3:]))
    if text.startswith("mda:"):
        if algebra_name != "vir":
            raise ParseError("mda modules live over vir")
        delta, alpha = (Fraction(x) for x in text[4:].split(","))
        return build_m_delta_alpha(delta, alpha)
    if text.startswith("mu:"):
        if not algebra_name.startswith("cur:"):
            raise ParseError("mu modules live over current algebras")
        g = sl2() if algebra_name == "cur:sl2" else sl3()
        name = text[3:]
        if name == "adjoint":
            return build_m_u(g, adjoint_rep(g))
        if name == "trivial":
            return build_m_u(g, trivial_rep(g))
        if name.startswith("V"):
            digits = name[1:].strip("()")
            if algebra_name != "cur:sl2":
                raise ParseError("V(m) irreducibles are the sl2 modules")
            return build_m_u(g, sl2_irrep(g, int(digits)))
        if name == "wedge2modg":
            if algebra_name != "cur:sl3":
                raise ParseError("wedge2modg is the sl3 module")
            return build_m_u(g, _wedge2_mod_g(g))
    raise ParseError(f"unknown module spec {text!r}")


def _wedge2_mod_g(g):
    ad = adjoint_rep(g)
    w2, _ = wedge2_rep(ad)
    embed = equivariant_maps(ad, w2)[0]
    sub = [[embed[r][c] for r in range(w2.dim)] for c in range(g.dim)]
    quot, _, _ = quotient_rep(w2, sub)
    return quot


def load_spec_file(path):
    with open(path) as fh:
        obj = json.load(fh)
    algebra = None
    module = None
    if "algebra" in obj:
        spec = obj["algebra"]
        names = tuple(spec["generators"])
        n = len(names)
        zero = RatPoly.zero()
        entries = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for key, comps in spec.get("brackets", {}).items():
            left, right = (s.strip() for s in key.split(","))
            i, j = names.index(left), names.index(right)
            for out_name, text in comps.items():
                entries[i][j][names.index(out_name)] = parse_poly(text)
        scalars = [None] * n
        for name, val in spec.get("del_scalars", {}).items():
            scalars[names.index(name)] = Fraction(val)
        algebra = ConformalAlgebra(
            names,
            [[tuple(entries[i][j]) for j in range(n)] for i in range(n)],
            del_scalars=tuple(scalars),
            associative=bool(spec.get("associative", False)),
        )
    if "module" in obj:
        spec = obj["module"]
        basis = tuple(spec.get("basis", ("v",)))
        if spec.get("kind", "free") == "scalar":
            module = ConformalModule(
                "scalar", len(basis),
                del_scalar=Fraction(spec.get("del_scalar", 0)),
                basis_names=basis,
            )
        else:
            dim = len(basis)
            action = []
            for name in algebra.gen_names:
                rows = spec["actions"].get(name)
                if rows is None:
                    action.append([[RatPoly.zero()] * dim for _ in range(dim)])
                else:
                    action.append([[parse_poly(x) for x in row] for row in rows])
            module = ConformalModule("free", dim, action=action, basis_names=basis)
    return algebra, module


def _resolve(args):
    if getattr(args, "spec_file", None):
        algebra, module = load_spec_file(args.spec_file)
        name = args.spec_file
        if algebra is None:
            raise ParseError("spec file has no algebra section")
        if module is None and getattr(args, "module", None):
            module = parse_module(args.module, algebra, name)
        return algebra, module, name
    algebra, name = parse_algebra(args.algebra)
    module = None
    if getattr(args, "module", None):
        module = parse_module(args.module, algebra, name)
    return algebra, module, name


# -- subcommands -------------------------------------------------------------


def cmd_check(args):
    algebra, module, name = _resolve(args)
    report = {"algebra": name}
    if algebra.associative:
        ok, witness = check_associativity(algebra)
        report["associativity"] = ok
    else:
        ok, witness = check_skew_symmetry(algebra)
        report["skew_symmetry"] = ok
        if ok:
            ok, witness = check_jacobi(algebra)
            report["jacobi"] = ok
    if not ok:
        print(json.dumps(report))
        idx = ", ".join(str(x) for x in witness[:-1])
        print(f"failing identity at ({idx}): residual {witness[-1]}")
        return EXIT_AXIOM
    if module is not None:
        mok, witness = check_module(algebra, module)
        report["module"] = mok
        if not mok:
            print(json.dumps(report))
            print(f"module identity fails at {witness[:-1]}: residual {witness[-1]}")
            return EXIT_AXIOM
    print(json.dumps(report))
    return EXIT_OK


def cmd_betti(args):
    algebra, module, name = _resolve(args)
    if module is None:
        return _fail(EXIT_PARSE, "betti needs --module")
    variant = REDUCED if args.variant == "reduced" else BASIC
    spec = ComplexSpec(algebra, module, variant, label=f"{name}/{args.module}")
    if args.bound is not None:
        bound = args.bound
    elif args.module and args.module.startswith(("trivial", "mu:")):
        bound = 8  # graded cases split by bidegree
    else:
        bound = 10  # filtered cases sweep 10/11/12
    table = truncation_sweep(spec, args.qmax, bound,
                             representatives=args.representatives)
    if args.format == "csv":
        print(table.to_csv())
    elif args.format == "json":
        print(table.to_json())
    else:
        print(table.to_text())
    if any(not row.stabilized for row in table.rows):
        print("warning: at least one row did not stabilize across "
              f"bounds {bound}/{bound + 1}/{bound + 2}", file=sys.stderr)
        return EXIT_WARNING
    return EXIT_OK


def cmd_cartan(args):
    algebra, module, name = _resolve(args)
    if module is None:
        module = build_trivial(1, 0)
    rng = random.Random(args.seed)
    checked = 0
    for q in range(1, args.qmax + 1):
        for _ in range(args.trials):
            gamma = random_skew_cochain(
                algebra, module, q, args.degmax, rng,
                max_del=1 if module.is_free() else 0,
            )
            for i in range(algebra.ngens):
                a = tuple(
                    RatPoly.const(1 if k == i else 0)
                    for k in range(algebra.ngens)
                )
                lhs = d_basic(contract_lambda(a, gamma)) + contract_lambda(
                    a, d_basic(gamma)
                )
                theta = lie_theta(a, gamma)
                if lhs != theta:
                    print(json.dumps({"identity": "cartan", "ok": False,
                                      "q": q, "generator": i}))
                    return EXIT_AXIOM
                if d_basic(theta) != lie_theta(a, d_basic(gamma)):
                    print(json.dumps({"identity": "d-theta", "ok": False,
                                      "q": q, "generator": i}))
                    return EXIT_AXIOM
                checked += 1
    print(json.dumps({"identity": "cartan", "ok": True, "checked": checked,
                      "algebra": name, "seed": args.seed}))
    return EXIT_OK


def cmd_annih_compare(args):
    algebra, module, name = _resolve(args)
    if module is None:
        module = build_trivial(1, 0)
    rng = random.Random(args.seed)
    tuples_checked = 0
    for q in range(0, args.qmax + 1):
        for _ in range(args.trials):
            gamma = random_skew_cochain(
                algebra, module, q, 3, rng,
                max_del=1 if module.is_free() else 0,
            )
            dg = d_basic(gamma)
            pair_pool = [
                (g, m)
                for g in range(algebra.ngens)
                for m in range(args.levels + 1)
            ]
            for pairs in combinations_with_replacement(pair_pool, q + 1):
                gens = tuple(p[0] for p in pairs)
                levels = tuple(p[1] for p in pairs)
                lhs = phi_eval(dg, gens, levels)
                rhs = ce_differential_eval(gamma, gens, levels)
                if lhs != rhs:
                    print(json.dumps({"identity": "annihilation-transport",
                                      "ok": False, "q": q, "gens": gens,
                                      "levels": levels}))
                    return EXIT_AXIOM
                tuples_checked += 1
    print(json.dumps({"identity": "annihilation-transport", "ok": True,
                      "tuples": tuples_checked, "algebra": name,
                      "seed": args.seed}))
    return EXIT_OK


def _remark81_datum(algebra_name, algebra, module):
    """The abelian-extension cocycles of current algebras, as a datum table."""
    from .poly import DEL

    d = RatPoly.var(DEL)
    l1 = RatPoly.var(lam(1))
    if algebra_name == "cur:sl2":
        g = sl2()
        sym2, basis = sym_power_rep(adjoint_rep(g), 2)
        # module was built as M_U; recover U action matrices
        u_mats = [
            [[module.action[i][r][c].const_value() for c in range(module.dim)]
             for r in range(module.dim)]
            for i in range(g.dim)
        ]
        from .liealg import Rep

        u_rep = Rep(g, u_mats, names=module.basis_names)
        maps = equivariant_maps(sym2, u_rep)
        if not maps:
            raise NotACocycle("no equivariant Sym^2 -> U map exists")
        phi = maps[0]
        idx = {b: k for k, b in enumerate(basis)}
        poly = l1 * (d + l1) * (d + 2 * l1)
        return {
            (i, j): tuple(
                poly * phi[r][idx[tuple(sorted((i, j)))]]
                for r in range(module.dim)
            )
            for i in range(3)
            for j in range(3)
        }
    if algebra_name == "cur:sl3":
        g = sl3()
        ad = adjoint_rep(g)
        w2, pairs = wedge2_rep(ad)
        u_mats = [
            [[module.action[i][r][c].const_value() for c in range(module.dim)]
             for r in range(module.dim)]
            for i in range(g.dim)
        ]
        from .liealg import Rep

        u_rep = Rep(g, u_mats, names=module.basis_names)
        maps = equivariant_maps(w2, u_rep)
        if not maps:
            raise NotACocycle("no equivariant wedge^2 g -> U map exists")
        phi = maps[0]
        index = {p: k for k, p in enumerate(pairs)}
        poly = l1 * (d + l1)
        datum = {}
        for i in range(g.dim):
            for j in range(g.dim):
                if i == j:
                    datum[(i, j)] = tuple(RatPoly.zero() for _ in range(module.dim))
                    continue
                a, b = min(i, j), max(i, j)
                sign = 1 if i < j else -1
                col = index[(a, b)]
                datum[(i, j)] = tuple(
                    sign * poly * phi[r][col] for r in range(module.dim)
                )
        return datum
    raise ParseError("remark81 cocycles are defined for cur:sl2 and cur:sl3")


def cmd_extend(args):
    algebra, module, name = _resolve(args)
    if module is None:
        return _fail(EXIT_PARSE, "extend needs --module")
    if args.cocycle == "remark81":
        datum = _remark81_datum(name, algebra, module)
    else:
        with open(args.cocycle) as fh:
            obj = json.load(fh)
        cochain = cochain_from_obj(algebra, module, obj)
        datum = cochain
    try:
        extend_algebra(algebra, module, datum)
    except NotACocycle as exc:
        print(json.dumps({"extension": "invalid", "witness": str(exc.witness)}))
        return EXIT_AXIOM
    print(json.dumps({"extension": "valid", "algebra": name,
                      "module": args.module}))
    return EXIT_OK


def cmd_deform(args):
    algebra, module, name = _resolve(args)
    adjoint = adjoint_module(algebra)
    if args.cocycle:
        with open(args.cocycle) as fh:
            obj = json.load(fh)
        gamma = cochain_from_obj(algebra, adjoint, obj)
        defo = deform(algebra, gamma)
        ok, witness = defo.check_jacobi_mod_eps2()
        print(json.dumps({"deformation": "valid" if ok else "invalid"}))
        return EXIT_OK if ok else EXIT_AXIOM
    rng = random.Random(args.seed)
    spec = ComplexSpec(algebra, adjoint, REDUCED, label=name)
    agreements = 0
    for _ in range(args.trials):
        gamma = random_skew_cochain(algebra, adjoint, 2, args.degmax, rng,
                                    variant=REDUCED)
        is_cocycle = verify_cocycle(spec, gamma).is_cocycle
        defo_ok = deform(algebra, gamma).check_jacobi_mod_eps2()[0]
        if is_cocycle != defo_ok:
            print(json.dumps({"deformation-roundtrip": False}))
            return EXIT_AXIOM
        agreements += 1
    print(json.dumps({"deformation-roundtrip": True, "trials": agreements,
                      "seed": args.seed}))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="confcoh",
        description="Exact cohomology of Lie conformal algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, module_required=False):
        p.add_argument("--algebra", help="vir | cur:sl2 | cur:sl3 | cur:abelian:n")
        p.add_argument("--module", help="trivial | ca:a | mda:D,a | mu:name")
        p.add_argument("--spec-file", help="inline JSON algebra/module spec")

    p = sub.add_parser("check", help="run the axiom checkers")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("betti", help="cohomology dimensions and representatives")
    common(p)
    p.add_argument("--variant", choices=("reduced", "basic"), default="reduced")
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--bound", type=int, default=None,
                   help="sweep bound D (default 8 graded / 10 filtered)")
    p.add_argument("--representatives", action="store_true")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("cartan", help="contraction/action identity suite")
    common(p)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--qmax", type=int, default=2)
    p.add_argument("--degmax", type=int, default=3)
    p.set_defaults(fn=cmd_cartan)

    p = sub.add_parser("annih-compare",
                       help="transport to the annihilation-algebra complex")
    common(p)
    p.add_argument("--qmax", type=int, default=2)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_annih_compare)

    p = sub.add_parser("extend", help="build an abelian extension from a cocycle")
    common(p)
    p.add_argument("--cocycle", required=True,
                   help="'remark81' or a serialized cochain file")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("deform", help="first-order deformation round-trips")
    common(p)
    p.add_argument("--cocycle", help="serialized 2-cochain with adjoint values")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degmax", type=int, default=3)
    p.set_defaults(fn=cmd_deform)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except FileNotFoundError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except ConfcohError as exc:
        return _fail(EXIT_AXIOM, str(exc))


if __name__ == "__main__":
    sys.exit(main())
