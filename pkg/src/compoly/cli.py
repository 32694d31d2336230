"""Command-line interface: ``compoly <command> [flags] POLY...``.

Exit status is 0 on success, 1 on a domain error (bad input for the
mathematics) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import render as R
from .bipoly import BivariatePoly
from .compose_bi import composed_mul, composed_product, composed_sum, exact_composed
from .compose_uni import DiamondKind, composed_mul_uni, composed_sum_uni, decompose_uni
from .errors import CompolyError
from .fields import FiniteField, parse_field
from .homog import as_element, coefficient_subfield_degree, homog_compose, homog_decompose, is_associate, membership
from .newton_puiseux import expand_branches
from .parser import parse_bivariate, parse_univariate
from .unipoly import set_default_seed

__all__ = ["main", "run_command", "build_parser"]


def _fraction(text: str) -> Fraction:
    try:
        T = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if T <= 0:
        raise argparse.ArgumentTypeError("truncation must be positive")
    return T


def _common(p: argparse.ArgumentParser, field_default="rational"):
    p.add_argument("--field", default=field_default, help="rational | cyclo:N | finite:p[:e]")
    p.add_argument("--trunc", type=_fraction, default=Fraction(4), help="truncation T (rational, > 0)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (overridden by COMPOLY_SEED)")
    p.add_argument("--format", choices=("text", "json", "factored"), default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")


COMMANDS = {
    "expand": (1, "Newton-Puiseux branches of a monic f(x, y)"),
    "csum": (2, "bivariate composed sum"),
    "cmul": (2, "bivariate composed multiplication"),
    "cprod": (2, "bivariate composed product (substitution)"),
    "uni-csum": (2, "univariate composed sum over a finite field"),
    "uni-cmul": (2, "univariate composed multiplication over a finite field"),
    "uni-decompose": (1, "decompose an irreducible polynomial into indecomposables"),
    "homog-compose": (2, "composed product of homogeneous polynomials"),
    "homog-decompose": (1, "decompose a homogeneous polynomial"),
    "associate-check": (2, "find a with f = (y - a x) (.) g"),
    "membership": (1, "classify a homogeneous polynomial"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="compoly", description="Composed products of polynomials.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (arity, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_)
        _common(p)
        names = ["f", "g"][:arity]
        for n in names:
            p.add_argument(n, metavar=n.upper(), help="polynomial expression")
        if name == "uni-decompose":
            p.add_argument("--kind", choices=("add", "mul"), default="mul")
    return ap


# --------------------------------------------------------------------------
# command bodies: each returns (text, json_obj, factored_text)


def _cmd_expand(a, F):
    f = parse_bivariate(a.f, F)
    bs = expand_branches(f, a.trunc)
    lines = []
    for s, m in bs:
        lines.append(R.render_series(s) + (f"  [multiplicity {m}]" if m > 1 else ""))
    obj = {
        "command": "expand",
        "field": F.spec,
        "truncation": R._frac_text(a.trunc),
        "branches": [{"series": R.series_json(s), "multiplicity": m} for s, m in bs],
    }
    fact = "\n".join(f"(y - ({R.render_series(s)}))" + (f"^{m}" if m > 1 else "") for s, m in bs)
    return "\n".join(lines), obj, fact


def _composed_result_json(name, F, T, res):
    obj = {
        "command": name,
        "field": F.spec,
        "truncation": R._frac_text(T),
        "expanded": R.seriespoly_json(res.expanded),
        "factored": [{"i": i + 1, "j": j + 1, "series": R.series_json(s)} for (i, j), s in zip(res.pairs, res.factored)],
    }
    if res.exact is not None:
        obj["exact"] = R.bipoly_json(res.exact)
    return obj


def _factored_text(res):
    return "\n".join(f"(y - ({R.render_series(s)}))" for s in res.factored)


def _cmd_bivariate(a, F, op):
    f, g = parse_bivariate(a.f, F), parse_bivariate(a.g, F)
    if a.format == "text" and op in ("sum", "mul"):
        ex = exact_composed(f, g, "sum" if op == "sum" else "product")
        if ex is not None:
            return str(ex), None, None
    fn = {"sum": composed_sum, "mul": composed_mul, "product": composed_product}[op]
    res = fn(f, g, a.trunc)
    name = {"sum": "csum", "mul": "cmul", "product": "cprod"}[op]
    text = str(res.exact) if res.exact is not None else R.render_seriespoly(res.expanded)
    return text, _composed_result_json(name, F, a.trunc, res), _factored_text(res)


def _cmd_uni(a, F, kind):
    f, g = parse_univariate(a.f, F), parse_univariate(a.g, F)
    h = composed_sum_uni(f, g) if kind == "sum" else composed_mul_uni(f, g)
    obj = {"command": f"uni-c{kind}", "field": F.spec, "result": R.upoly_json(h)}
    return str(h), obj, str(h)


def _cmd_uni_decompose(a, F):
    f = parse_univariate(a.f, F)
    kind = DiamondKind.parse(a.kind)
    res = decompose_uni(f, kind)
    sym = " (+) " if kind is DiamondKind.ADDITION else " (*) "
    text = sym.join(f"({g})" for g in res.factors)
    obj = {
        "command": "uni-decompose",
        "field": F.spec,
        "kind": kind.value,
        "factors": [R.upoly_json(g) for g in res.factors],
        "certificates": [
            {"factors": [R.upoly_json(g) for g in c.factors], "units": [R.coeff_text(u) for u in c.units]}
            for c in res.certificates
        ],
    }
    lines = [text] + [
        "~ " + sym.join(f"({g})" for g in c.factors) + "  units " + ", ".join(R.coeff_text(u) for u in c.units)
        for c in res.certificates
    ]
    return text, obj, "\n".join(lines)


def _cmd_homog_compose(a, F):
    f, g = parse_bivariate(a.f, F), parse_bivariate(a.g, F)
    h = homog_compose(f, g)
    obj = {"command": "homog-compose", "field": F.spec, "result": R.bipoly_json(h.poly), "associated": R.upoly_json(h.associated)}
    return str(h.poly), obj, str(h.poly)


def _cmd_homog_decompose(a, F):
    f = parse_bivariate(a.f, F)
    d = homog_decompose(f)
    text = " (.) ".join(f"({h.poly})" for h in d.factors)
    obj = {
        "command": "homog-decompose",
        "field": F.spec,
        "factors": [R.bipoly_json(h.poly) for h in d.factors],
        "certificates": [
            {"factors": [R.bipoly_json(h.poly) for h in c["factors"]], "units": [R.coeff_text(u) for u in c["units"]]}
            for c in d.unit_certificates
        ],
    }
    lines = [text] + [
        "~ " + " (.) ".join(f"({h.poly})" for h in c["factors"]) + "  units " + ", ".join(R.coeff_text(u) for u in c["units"])
        for c in d.unit_certificates
    ]
    return text, obj, "\n".join(lines)


def _cmd_associate(a, F):
    f, g = parse_bivariate(a.f, F), parse_bivariate(a.g, F)
    w = is_associate(as_element(f), as_element(g))
    text = "none" if w is None else R.coeff_text(w)
    obj = {"command": "associate-check", "field": F.spec, "witness": None if w is None else R.coeff_text(w)}
    return text, obj, text


def _cmd_membership(a, F):
    f = parse_bivariate(a.f, F, normalize=False)
    try:
        f = BivariatePoly(F, f.terms)
    except CompolyError:
        pass
    m = membership(f, F)
    obj = {"command": "membership", "field": F.spec, "membership": m.value}
    if isinstance(F, FiniteField) and f.terms:
        # irreducibility is judged over the declared field; report when the
        # coefficients already live in a proper subfield
        obj["coefficient_subfield_degree"] = coefficient_subfield_degree(f)
    return m.value, obj, m.value


def _dispatch(a, F):
    c = a.command
    if c == "expand":
        return _cmd_expand(a, F)
    if c in ("csum", "cmul", "cprod"):
        return _cmd_bivariate(a, F, {"csum": "sum", "cmul": "mul", "cprod": "product"}[c])
    if c in ("uni-csum", "uni-cmul"):
        return _cmd_uni(a, F, "sum" if c == "uni-csum" else "mul")
    if c == "uni-decompose":
        return _cmd_uni_decompose(a, F)
    if c == "homog-compose":
        return _cmd_homog_compose(a, F)
    if c == "homog-decompose":
        return _cmd_homog_decompose(a, F)
    if c == "associate-check":
        return _cmd_associate(a, F)
    return _cmd_membership(a, F)


def run_command(argv, stdout=None, stderr=None) -> int:
    """Run one CLI invocation; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    seed = a.seed
    env = os.environ.get("COMPOLY_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            print(f"compoly: COMPOLY_SEED must be an integer, got {env!r}", file=stderr)
            return 2
    set_default_seed(seed)
    try:
        F = parse_field(a.field)
    except (ValueError, CompolyError) as e:
        print(f"compoly: bad --field {a.field!r}: {e}", file=stderr)
        return 2
    try:
        text, obj, fact = _dispatch(a, F)
        out = {"text": text, "json": R.dumps(obj), "factored": fact}[a.format]
    except (CompolyError, ValueError) as e:
        print(f"compoly: {type(e).__name__}: {e}", file=stderr)
        return 1
    out = out + "\n"
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return 0


def main(argv=None) -> int:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
