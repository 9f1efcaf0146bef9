"""Command-line front door: every module behind one deterministic binary.

Subcommands: expand, valuation, norm, hensel, sqrt, product-formula,
code {encode,decode,add,sub,mul,div}, pauli {mul,order,basis-check,
normalizer-check}, lattice check, borel, seminorm-check.  ``--json``
switches any of them to structured output whose shape is pinned by the
schemas under ``schemas/v1/``.

Conventions: exact rationals appear in JSON as {"num", "den"} string pairs;
high-precision reals as decimal strings; identical invocations produce
identical bytes.  Exit codes: 0 success, 1 domain error, 2 usage error,
3 resource limit.  Errors go to stderr as one line (JSON mode: an object
with ``error`` and ``error_code``).

Defaults r=8 and tolerance 1e-10 can be overridden per invocation or by the
``PADICLAB_PRECISION`` / ``PADICLAB_TOLERANCE`` environment variables.
Arguments that begin with ``-`` (negative rationals) must follow a ``--``
separator, e.g. ``padiclab norm --archimedean -- -3/4``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from fractions import Fraction

from mpmath import mp

from .errors import DomainError, PadiclabError, ResourceLimitError
from .hensel import hensel_lift, sqrt_padic
from .hensel_codes import HenselCode, code_add, code_div, code_mul, code_sub, decode, encode
from .padic_core import (
    ARCHIMEDEAN,
    PadicNumber,
    RationalPolynomial,
    check_seminorm_axioms,
    gauss_norm,
    norm,
    nu,
    to_expansion_string,
)
from .quantum_logic import (
    GaussianMatrix,
    GaussianRational,
    PauliElement,
    boolean_lattice,
    chain_lattice,
    diamond_lattice,
    is_distributive,
    is_in_normalizer,
    is_modular,
    pauli_basis_check,
    pauli_group_order,
    pauli_mul,
    pentagon_lattice,
    subspace_lattice,
)
from .resurgence import (
    borel_sum,
    euler_series_partial,
    general_solution,
    ode_residual,
    optimal_truncation_index,
)
from .valuations_product import (
    FqPolynomial,
    RationalFunction,
    local_norms,
    local_norms_ff,
    poly_valuation,
    product_formula_check,
    product_formula_check_ff,
)

_RESIDUAL_TOL = "1e-16"
_RESIDUAL_H = "1e-4"


# -- input grammars -----------------------------------------------------------

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(s: str) -> Fraction:
    """Grammar: [-]digits[/digits]."""
    s = s.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise DomainError(f"cannot parse rational {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {s!r}") from None


_TERM_RE = re.compile(r"([+-]?)(?:(\d+)\*?)?(x(?:\^(\d+))?)?")


def parse_polynomial(s: str) -> tuple[int, ...]:
    """Integer polynomials in x: terms like ``3x^2``, ``-x``, ``7``; ``*`` optional."""
    compact = re.sub(r"\s+", "", s)
    if not compact:
        raise DomainError("empty polynomial")
    coeffs: dict[int, int] = {}
    for part in re.findall(r"[+-]?[^+-]+", compact):
        m = _TERM_RE.fullmatch(part)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise DomainError(f"cannot parse polynomial term {part!r}")
        sign, num, xpart, exp = m.groups()
        degree = 0 if xpart is None else (1 if exp is None else int(exp))
        c = 1 if num is None else int(num)
        coeffs[degree] = coeffs.get(degree, 0) + (-c if sign == "-" else c)
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _strip_parens(s: str) -> str:
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def parse_fq_ratio(s: str, p: int) -> RationalFunction:
    """``num`` or ``num/den`` with each side a polynomial, parens optional."""
    compact = re.sub(r"\s+", "", s)
    if "/" in compact:
        num_s, den_s = compact.split("/", 1)
    else:
        num_s, den_s = compact, None
    num = FqPolynomial.of(p, *parse_polynomial(_strip_parens(num_s)))
    if den_s is None:
        den = FqPolynomial.one(p)
    else:
        den = FqPolynomial.of(p, *parse_polynomial(_strip_parens(den_s)))
        if den.is_zero:
            raise DomainError("zero denominator")
    return RationalFunction.of(num, den)


_PAULI_RE = re.compile(r"(\+i|-i|\+|-|i)?([IXYZ]+)")


def parse_pauli(s: str) -> PauliElement:
    """Words like ``X``, ``-iY``, ``XZ``: optional phase prefix, letters per qubit."""
    m = _PAULI_RE.fullmatch(s.strip())
    if not m:
        raise DomainError(f"cannot parse Pauli word {s!r}")
    prefix, word = m.groups()
    phase = {None: 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}[prefix]
    xbits, zbits = [], []
    for letter in word:
        x, z = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}[letter]
        xbits.append(x)
        zbits.append(z)
        if letter == "Y":
            phase += 1
    return PauliElement(phase % 4, tuple(xbits), tuple(zbits))


def parse_gaussian(s: str) -> GaussianRational:
    """Entries like ``2``, ``-1/2``, ``i``, ``3/5+4/5i``."""
    s = re.sub(r"\s+", "", s)
    if not s:
        raise DomainError("empty matrix entry")
    if not s.endswith("i"):
        return GaussianRational(parse_rational(s), Fraction(0))
    body = s[:-1]
    if body in ("", "+"):
        return GaussianRational(Fraction(0), Fraction(1))
    if body == "-":
        return GaussianRational(Fraction(0), Fraction(-1))
    for idx in range(len(body) - 1, 0, -1):
        if body[idx] in "+-" and body[idx - 1] not in "+-/":
            imag = body[idx:]
            if imag in ("+", "-"):
                imag += "1"
            return GaussianRational(parse_rational(body[:idx]), parse_rational(imag))
    return GaussianRational(Fraction(0), parse_rational(body))


def parse_matrix(s: str) -> GaussianMatrix:
    """Rows separated by ``;``, entries by ``,``: e.g. ``1,1;1,-1``."""
    rows = [
        [parse_gaussian(entry) for entry in row.split(",")]
        for row in s.strip().split(";")
    ]
    return GaussianMatrix(tuple(tuple(r) for r in rows))


# -- output helpers -----------------------------------------------------------


def _rat_pair(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _val_json(v):
    return "infinity" if v.is_infinite else int(v)


def _fmt(x, digits: int = 20) -> str:
    with mp.workdps(40):
        return mp.nstr(mp.mpf(x), digits)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- handlers ------------------------------------------------------------------


def _cmd_expand(args):
    a = parse_rational(args.value)
    x = PadicNumber.from_rational(a, args.p, args.r)
    s = to_expansion_string(x)
    return {"input": args.value, "p": args.p, "r": args.r, "expansion": s}, s


def _cmd_valuation(args):
    v = nu(parse_rational(args.value), args.p)
    return (
        {"input": args.value, "p": args.p, "valuation": _val_json(v)},
        str(v),
    )


def _cmd_norm(args):
    a = parse_rational(args.value)
    place = ARCHIMEDEAN if args.archimedean else args.p
    value = norm(a, place)
    return (
        {
            "input": args.value,
            "place": "infinity" if args.archimedean else str(args.p),
            "norm": _rat_pair(value),
        },
        str(value),
    )


def _cmd_hensel(args):
    trace = hensel_lift(parse_polynomial(args.poly), args.x0, args.p, args.k)
    lines = [
        f"x_{i} = {x} (mod {args.p}^{i + 1})" for i, x in enumerate(trace.residues)
    ]
    lines.append(f"x_{trace.k} = {trace.render_sum()}")
    payload = {
        "poly": args.poly,
        "p": args.p,
        "x0": args.x0,
        "k": args.k,
        "digits": list(trace.digits),
        "residues": list(trace.residues),
        "sum": trace.render_sum(),
    }
    return payload, "\n".join(lines)


def _cmd_sqrt(args):
    roots = sqrt_padic(args.a, args.p, args.r)
    expansions = [to_expansion_string(x) for x in roots]
    text = "\n".join(expansions) if expansions else f"no square roots in Z_{args.p}"
    return {"a": args.a, "p": args.p, "r": args.r, "roots": expansions}, text


def _cmd_product_formula(args):
    if args.function_field is not None:
        p = args.function_field
        f = parse_fq_ratio(args.value, p)
        pairs = local_norms_ff(f)
        product = product_formula_check_ff(f)
        rows = [
            {
                "place": str(place),
                "valuation": _val_json(poly_valuation(f, place)),
                "norm_num": str(v.numerator),
                "norm_den": str(v.denominator),
            }
            for place, v in pairs
        ]
        field = f"F_{p}(x)"
    else:
        a = parse_rational(args.value)
        pairs = local_norms(a)
        product = product_formula_check(a)
        rows = []
        for place, v in pairs:
            rows.append(
                {
                    "place": str(place),
                    "valuation": None
                    if place.kind == "archimedean"
                    else _val_json(nu(a, place.prime)),
                    "norm_num": str(v.numerator),
                    "norm_den": str(v.denominator),
                }
            )
        field = "Q"
    lines = [f"place {row['place']}: |a| = {row['norm_num']}/{row['norm_den']}"
             if row["norm_den"] != "1"
             else f"place {row['place']}: |a| = {row['norm_num']}"
             for row in rows]
    lines.append(f"product = {product}")
    payload = {
        "input": args.value,
        "field": field,
        "places": rows,
        "product": _rat_pair(product),
    }
    return payload, "\n".join(lines)


def _code_payload(code: HenselCode):
    return (
        {"p": code.p, "r": code.r, "value": code.value, "digits": list(code.digits)},
        f"{code.value} digits={list(code.digits)}",
    )


def _cmd_code(args):
    p, r = args.p, args.r
    if args.code_op == "encode":
        return _code_payload(encode(parse_rational(args.x), p, r))
    if args.code_op == "decode":
        value = decode(HenselCode(p, r, args.value))
        payload = {"p": p, "r": r, "value": args.value, "rational": _rat_pair(value)}
        return payload, str(value)
    ops = {"add": code_add, "sub": code_sub, "mul": code_mul, "div": code_div}
    x = encode(parse_rational(args.x), p, r)
    y = encode(parse_rational(args.y), p, r)
    return _code_payload(ops[args.code_op](x, y))


def _cmd_pauli(args):
    if args.pauli_op == "mul":
        g = pauli_mul(parse_pauli(args.x), parse_pauli(args.y))
        payload = {
            "word": str(g),
            "n": g.n,
            "phase": g.phase,
            "xbits": list(g.xbits),
            "zbits": list(g.zbits),
        }
        return payload, str(g)
    if args.pauli_op == "order":
        order = pauli_group_order(args.n)
        return {"n": args.n, "order": order}, str(order)
    if args.pauli_op == "basis-check":
        report = pauli_basis_check(args.n)
        payload = {
            "n": args.n,
            "independent": report.independent,
            "spanning": report.spanning,
        }
        return payload, str(report)
    check = is_in_normalizer(parse_matrix(args.matrix))
    payload = {
        "member": check.member,
        "failing_generator": None
        if check.failing_generator is None
        else str(check.failing_generator),
    }
    return payload, str(check)


def _cmd_lattice(args):
    if args.subspace:
        q, d = args.subspace
        lat = subspace_lattice(q, d)
        desc = f"subspace({q},{d})"
    else:
        named = {
            "n5": pentagon_lattice,
            "m3": diamond_lattice,
        }
        if args.named in named:
            lat = named[args.named]()
            desc = args.named
        elif args.named == "boolean":
            lat = boolean_lattice(args.k)
            desc = f"boolean({args.k})"
        else:
            lat = chain_lattice(args.k)
            desc = f"chain({args.k})"
    modular = is_modular(lat)
    distributive = is_distributive(lat)

    def line(check):
        if check.holds:
            return f"{check.law}: holds"
        w = check.witness
        return (
            f"{check.law}: fails witness a={w['a']} b={w['b']} c={w['c']} "
            f"lhs={w['lhs']} rhs={w['rhs']}"
        )

    payload = {
        "lattice": desc,
        "elements": len(lat.elements),
        "modular": modular.as_json(),
        "distributive": distributive.as_json(),
    }
    text = "\n".join(
        [f"lattice {desc}: {len(lat.elements)} elements", line(modular), line(distributive)]
    )
    return payload, text


def _cmd_borel(args):
    t = args.t
    if args.table:
        top = args.order if args.order is not None else optimal_truncation_index(t) + 5
        borel = borel_sum(t, tol=args.tol)
        rows = []
        lines = []
        for n in range(top + 1):
            partial = euler_series_partial(t, n)
            gap = abs(partial.value - borel.value)
            rows.append(
                {"n": n, "partial_sum": _fmt(partial.value), "gap": _fmt(gap, 8)}
            )
            lines.append(f"{n}\t{_fmt(partial.value)}\t{_fmt(gap, 8)}")
        payload = {"t": t, "method": "partial_sums_table", "rows": rows}
        return payload, "\n".join(lines)
    if args.order is not None:
        result = euler_series_partial(t, args.order)

        def y(s):
            return euler_series_partial(s, args.order).value

    elif args.a is not None:
        result = general_solution(t, args.a, tol=args.tol)

        def y(s):
            return general_solution(s, args.a, tol=_RESIDUAL_TOL).value

    else:
        result = borel_sum(t, tol=args.tol)

        def y(s):
            return borel_sum(s, tol=_RESIDUAL_TOL).value

    residual = ode_residual(y, t, h=_RESIDUAL_H)
    payload = {
        "t": t,
        "method": result.method,
        "value": _fmt(result.value),
        "error_estimate": _fmt(result.error_estimate, 8),
        "residual": _fmt(residual, 8),
    }
    text = (
        f"y({t}) = {_fmt(result.value)}  [{result.method}, "
        f"error_estimate {_fmt(result.error_estimate, 8)}, "
        f"ode_residual {_fmt(residual, 8)}]"
    )
    return payload, text


def _cmd_seminorm_check(args):
    rng = random.Random(args.seed)
    samples = []
    for _ in range(args.samples):
        coeffs = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for _ in range(rng.randint(0, args.degree) + 1)
        ]
        samples.append(RationalPolynomial.of(*coeffs))
    report = check_seminorm_axioms(
        lambda f: gauss_norm(f, args.p),
        samples,
        zero=RationalPolynomial.of(),
        one=RationalPolynomial.of(1),
    )
    payload = {
        "p": args.p,
        "samples": args.samples,
        "degree": args.degree,
        "seed": args.seed,
        "all_passed": report.all_passed,
        "axioms": [
            {
                "axiom": r.axiom,
                "passed": r.passed,
                "witness": None if r.witness is None else str([str(w) for w in r.witness]),
            }
            for r in report.results
        ],
    }
    return payload, str(report)


# -- parser --------------------------------------------------------------------


def _env_precision() -> int:
    try:
        return int(os.environ.get("PADICLAB_PRECISION", "8"))
    except ValueError:
        return 8


def _env_tolerance() -> str:
    return os.environ.get("PADICLAB_TOLERANCE", "1e-10")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padiclab",
        description="Exact p-adic arithmetic, product formulas, Hensel codes, "
        "Pauli/lattice quantum logic, and Borel summation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="structured output")
        return p

    p = add("expand", _cmd_expand, help="digit expansion of a rational")
    p.add_argument("value")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=_env_precision())

    p = add("valuation", _cmd_valuation, help="p-adic valuation of a rational")
    p.add_argument("value")
    p.add_argument("--p", type=int, required=True)

    p = add("norm", _cmd_norm, help="exact absolute value at a place")
    p.add_argument("value")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=int)
    group.add_argument("--archimedean", action="store_true")

    p = add("hensel", _cmd_hensel, help="lift a simple root mod p to mod p^(k+1)")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("sqrt", _cmd_sqrt, help="p-adic square roots of an integer")
    p.add_argument("a", type=int)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=_env_precision())

    p = add("product-formula", _cmd_product_formula, help="norms over all places")
    p.add_argument("value")
    p.add_argument(
        "--function-field",
        type=int,
        metavar="P",
        help="treat the input as a rational function over F_P",
    )

    p = add("code", _cmd_code, help="r-digit residue codes for rationals")
    code_sub = p.add_subparsers(dest="code_op", required=True)
    for op in ("encode", "decode", "add", "sub", "mul", "div"):
        sp = code_sub.add_parser(op)
        sp.set_defaults(handler=_cmd_code)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--r", type=int, default=_env_precision())
        if op == "encode":
            sp.add_argument("x")
        elif op == "decode":
            sp.add_argument("value", type=int)
        else:
            sp.add_argument("x")
            sp.add_argument("y")

    p = add("pauli", _cmd_pauli, help="exact Pauli-group algebra")
    pauli_sub = p.add_subparsers(dest="pauli_op", required=True)
    sp = pauli_sub.add_parser("mul")
    sp.set_defaults(handler=_cmd_pauli)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("x")
    sp.add_argument("y")
    sp = pauli_sub.add_parser("order")
    sp.set_defaults(handler=_cmd_pauli)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--n", type=int, default=1)
    sp = pauli_sub.add_parser("basis-check")
    sp.set_defaults(handler=_cmd_pauli)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--n", type=int, default=1)
    sp = pauli_sub.add_parser("normalizer-check")
    sp.set_defaults(handler=_cmd_pauli)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--matrix", required=True, help="rows ';', entries ','")

    p = add("lattice", _cmd_lattice, help="modular/distributive law checks")
    lattice_sub = p.add_subparsers(dest="lattice_op", required=True)
    sp = lattice_sub.add_parser("check")
    sp.set_defaults(handler=_cmd_lattice)
    sp.add_argument("--json", action="store_true")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--subspace", nargs=2, type=int, metavar=("Q", "D"))
    group.add_argument("--named", choices=["n5", "m3", "boolean", "chain"])
    sp.add_argument("--k", type=int, default=3, help="size for boolean/chain")

    p = add("borel", _cmd_borel, help="summation of the Euler series")
    p.add_argument("--t", required=True)
    p.add_argument("--order", type=int, help="evaluate the partial sum S_N instead")
    p.add_argument("--a", help="add a*exp(1/t) (general solution)")
    p.add_argument("--tol", default=_env_tolerance())
    p.add_argument("--table", action="store_true", help="rows (N, S_N, |S_N - y_B|)")

    p = add("seminorm-check", _cmd_seminorm_check, help="Gauss-norm axiom report")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = args.handler(args)
    except PadiclabError as exc:
        if args.json:
            print(
                json.dumps({"error": str(exc), "error_code": exc.code}, sort_keys=True),
                file=sys.stderr,
            )
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 3 if isinstance(exc, ResourceLimitError) else 1
    _emit(args, payload, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
