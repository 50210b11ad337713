"""Command-line interface.

Polynomials are given with ``--poly`` as c_1,...,c_n in the alternating-sign
convention f = X^n - c_1 X^{n-1} + ... + (-1)^n c_n (a leading ``1`` for the
monic term may be included and is dropped), or with ``--raw`` as the plain
coefficients of X^{n-1},...,X^0 of the monic polynomial.  So X^4+6X^2+4X+2 is
``--poly 0,6,-4,2`` or ``--raw 0,6,4,2``.

Field elements are written as integers, as coordinate lists ``[a0,a1]`` in
the basis 1, pi of a ramified field, or as ``1 + 2*t^3`` (optionally with
``(mod t^N)``) over the Laurent series backend.

Exit codes: 0 success, 1 a certified check failed, 2 bad input, 3 the
precision ceiling was reached.
"""

from __future__ import annotations

import argparse
import json
import sys

from .basefield import BaseFieldConfig, ParseError, PrecisionTooLow, parse_element
from .extension import EisensteinPoly, NotEisenstein, check_eisenstein, format_phi_table, indices, phi_table
from .perturb import (InvalidPerturbation, PerturbationSeries, minpoly_linear_algebra,
                      minpoly_symmetric, root_check, routes_agree)
from .symcomb import TooManyParts, WeightMismatch, d_closed_form, d_coeff, oracle_psi_expansion, psi_expansion
from .theorems import (DEFAULT_CEILING, FIXTURES, HypothesisViolated, PrecisionCeiling, random_cases,
                       run_case, verify_nochange, verify_special)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3


class InputError(ValueError):
    pass


# -- parsing helpers -----------------------------------------------------

def parse_backend(text: str, p: int, precision: int) -> BaseFieldConfig:
    if text == "qp":
        return BaseFieldConfig(p, "char0", 1, precision)
    if text == "laurent":
        return BaseFieldConfig(p, "charp", 1, precision)
    if text.startswith("ramified:"):
        try:
            e = int(text.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad ramification index in {text!r}") from None
        return BaseFieldConfig(p, "char0", e, precision)
    raise InputError(f"unknown backend {text!r} (expected qp, ramified:e or laurent)")


def split_top_level(text: str) -> list[str]:
    """Split on commas outside brackets, so '[1,2],3' gives ['[1,2]', '3']."""
    items, depth, cur = [], 0, []
    for pos, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", text, pos)
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced '['", text, len(text))
    items.append("".join(cur).strip())
    if any(not item for item in items):
        raise ParseError("empty entry in list", text, text.find(",,") if ",," in text else 0)
    return items


def parse_poly(K: BaseFieldConfig, poly: str | None, raw: str | None) -> EisensteinPoly:
    if (poly is None) == (raw is None):
        raise InputError("give exactly one of --poly or --raw")
    items = split_top_level(poly if poly is not None else raw)
    values = [parse_element(K, item) for item in items]
    if len(values) > 1 and values[0] == K.one():
        values = values[1:]  # leading monic coefficient
    f = EisensteinPoly.from_signed(K, values) if poly is not None else EisensteinPoly.from_monic(K, values)
    return check_eisenstein(f)


def parse_phi(K: BaseFieldConfig, text: str) -> PerturbationSeries:
    """``{"1": 1, "2": 1}`` (JSON) or ``1:1,2:1``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            mapping = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, text, exc.pos) from None
    else:
        mapping = {}
        for item in split_top_level(text):
            deg, sep, value = item.partition(":")
            if not sep:
                raise ParseError("expected degree:value", text, text.find(item))
            try:
                mapping[int(deg)] = value.strip()
            except ValueError:
                raise ParseError(f"bad degree {deg!r}", text, text.find(item)) from None
    return PerturbationSeries.from_map(K, mapping)


def parse_partition(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in split_top_level(text))
    except ValueError:
        raise ParseError("partition parts must be integers", text, 0) from None
    if any(x < 1 for x in parts):
        raise ParseError("partition parts must be positive", text, 0)
    return tuple(sorted(parts, reverse=True))


def resolve_poly(args, K: BaseFieldConfig) -> EisensteinPoly:
    if getattr(args, "example", None):
        return FIXTURES[args.example](args.precision)
    return parse_poly(K, args.poly, args.raw)


def emit(data, fmt: str, table: str | None = None) -> None:
    if fmt == "table" and table is not None:
        print(table)
    else:
        print(json.dumps(data, sort_keys=True, indent=2))


def _profile_table(profile) -> str:
    d = profile.to_json()
    lines = [f"n = {d['n']} (u = {d['u']}, nu = {d['nu']}), p = {d['p']}, e_L = {d['e_L']}"]
    for j in range(profile.nu + 1):
        lines.append(f"j={j}: i_raw={d['i_raw'][j]} i={d['i'][j]} A={d['A'][j]} b={d['b'][j]}")
    lines.append("breaks: " + (", ".join(d["breaks"]) or "none"))
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------

def cmd_indices(args, K) -> int:
    f = resolve_poly(args, K)
    profile = indices(f)
    emit(profile.to_json(), args.format, _profile_table(profile))
    return EXIT_OK


def cmd_phi_table(args, K) -> int:
    f = resolve_poly(args, K)
    profile = indices(f)
    nu = profile.nu
    columns = ["ell"] + [f"phi_tilde_{j}" for j in range(nu + 1)] + [f"phi_{j}" for j in range(nu + 1)]
    emit({"columns": columns, "rows": phi_table(profile, args.ell_max)}, args.format,
         format_phi_table(profile, args.ell_max))
    return EXIT_OK


def cmd_dcoeff(args, K) -> int:
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    value = d_coeff(lam, mu, method=args.method)
    closed = d_closed_form(lam, mu)
    emit({"lambda": list(lam), "mu": list(mu), "d": value, "closed_form": closed},
         args.format, str(value))
    return EXIT_OK


def cmd_psi(args, K) -> int:
    mu = parse_partition(args.mu)
    if args.method == "oracle":
        coeffs = oracle_psi_expansion(mu, args.n)
    else:
        coeffs = psi_expansion(mu, args.n, method=args.method)
    rows = [{"lambda": list(lam), "d": d} for lam, d in sorted(coeffs.items(), reverse=True)]
    table = "\n".join(f"{list(lam)}: {d}" for lam, d in sorted(coeffs.items(), reverse=True))
    emit({"mu": list(mu), "n": args.n, "coeffs": rows}, args.format, table)
    return EXIT_OK


def cmd_perturb(args, K) -> int:
    f = resolve_poly(args, K)
    phi = parse_phi(f.base, args.phi)
    N = args.precision
    lin = minpoly_linear_algebra(f, phi, N)
    sym = minpoly_symmetric(f, phi, N)
    agree = routes_agree(lin, sym)
    roots = root_check(f, phi, lin) and root_check(f, phi, sym)
    data = {"f": f.to_json(), "phi": phi.to_json(), "precision": N,
            "linear_algebra": lin.to_json(), "symmetric": sym.to_json(),
            "agree": agree, "root_check": roots}
    table = "\n".join(
        [f"h | linear algebra | symmetric   (mod pi^{N})"] +
        [f"{h} | {a.to_json()} | {b.to_json()}" for h, (a, b) in enumerate(zip(lin.coeffs, sym.coeffs), 1)] +
        [f"agree: {agree}, root check: {roots}"])
    emit(data, args.format, table)
    return EXIT_OK if agree and roots else EXIT_FAIL


def cmd_verify(args, K) -> int:
    if args.random:
        outcomes = [run_case(c, ceiling=args.ceiling) for c in random_cases(args.random, args.seed)]
        failed = [i for i, o in enumerate(outcomes) if not o.passed]
        data = {"seed": args.seed, "cases": len(outcomes), "passed": len(outcomes) - len(failed),
                "failed": failed, "results": [o.to_json() for o in outcomes]}
        table = f"{len(outcomes) - len(failed)}/{len(outcomes)} cases passed (seed {args.seed})"
        emit(data, args.format, table)
        return EXIT_FAIL if failed else EXIT_OK
    f = resolve_poly(args, K)
    r = parse_element(f.base, args.r)
    phi = PerturbationSeries.simple(f.base, r, args.ell)
    nochange = verify_nochange(f, phi, args.ell, routes=("linear", "symmetric"), ceiling=args.ceiling)
    special = verify_special(f, r, args.ell, phi, routes=("linear", "symmetric"), ceiling=args.ceiling)
    ok = nochange.verdict and all(s.verified for s in special)
    data = {"f": f.to_json(), "ell": args.ell, "r": r.to_json(), "profile": indices(f).to_json(),
            "nochange": nochange.to_json(), "special": [s.to_json() for s in special], "verdict": ok}
    lines = [f"ell = {args.ell}, r = {r.to_json()}", "h | rho | kappa | v(c~_h - c_h) | ok"]
    for c in nochange.checks:
        lines.append(f"{c.h} | {c.rho} | {c.kappa} | {c.max_verified} | {c.verified}")
    for s in special:
        lines.append(f"refined j={s.j}: c~_{s.h} == {s.predicted.to_json()} mod pi^{s.k + 1}: {s.verified}")
    lines.append("PASS" if ok else "FAIL")
    emit(data, args.format, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_example(args, K) -> int:
    f = FIXTURES[args.name](args.precision)
    profile = indices(f)
    data = {"name": args.name, "field": f.base.describe(), "f": f.to_json(),
            "profile": profile.to_json(), "phi_table": phi_table(profile, 3)}
    table = "\n".join([f"{args.name} over {f.base.describe()}", str(f), _profile_table(profile),
                       format_phi_table(profile, 3)])
    emit(data, args.format, table)
    return EXIT_OK


# -- argument parser -----------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help="residue characteristic (default 2)")
    common.add_argument("--backend", default=argparse.SUPPRESS,
                        help="qp, ramified:e or laurent (default qp)")
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="working precision in units of v_K (default 20)")
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return common


DEFAULTS = {"p": 2, "backend": "qp", "precision": 20, "format": "json", "seed": 0}


def _poly_args(sub: argparse.ArgumentParser) -> None:
    g = sub.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="c_1,...,c_n in the alternating-sign convention")
    g.add_argument("--raw", help="monic coefficients of X^{n-1},...,X^0")
    g.add_argument("--example", choices=sorted(FIXTURES))


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="uniformizer", parents=[common],
                                     description="Ramification invariants and perturbed uniformizers.")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("indices", parents=[common], help="indices of inseparability")
    _poly_args(s)
    s.set_defaults(func=cmd_indices)

    s = subs.add_parser("phi-table", parents=[common], help="table of phi~_j and phi_j")
    _poly_args(s)
    s.add_argument("--ell-max", type=int, default=3)
    s.set_defaults(func=cmd_phi_table)

    s = subs.add_parser("dcoeff", parents=[common], help="coefficient of e_lambda in m_mu")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--method", choices=["components", "enumerate"], default="components")
    s.set_defaults(func=cmd_dcoeff)

    s = subs.add_parser("psi", parents=[common], help="m_mu in the elementary basis")
    s.add_argument("--mu", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=["components", "enumerate", "oracle"], default="components")
    s.set_defaults(func=cmd_psi)

    s = subs.add_parser("perturb", parents=[common], help="minimal polynomial of phi(pi_L), two ways")
    _poly_args(s)
    s.add_argument("--phi", required=True, help='sparse map, e.g. "1:1,2:1" or \'{"1": 1, "2": 1}\'')
    s.set_defaults(func=cmd_perturb)

    s = subs.add_parser("verify", parents=[common], help="check the congruence theorems")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly")
    g.add_argument("--raw")
    g.add_argument("--example", choices=sorted(FIXTURES))
    g.add_argument("--random", type=int, metavar="N", help="run N seeded random cases")
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--r", default="1", help="r in phi = X + r X^(ell+1)")
    s.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="largest precision tried")
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("example", parents=[common], help="show a built-in fixture")
    s.add_argument("name", choices=sorted(FIXTURES))
    s.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        K = parse_backend(args.backend, args.p, args.precision)
        return args.func(args, K)
    except PrecisionCeiling as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotEisenstein as exc:
        print(f"error: not Eisenstein: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionTooLow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (InputError, InvalidPerturbation, HypothesisViolated, WeightMismatch, TooManyParts,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
