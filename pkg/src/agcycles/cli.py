"""``agcycles`` command line: ring calculator, strata atlas, masses, bounds, self-check."""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, arith, cycleclasses as cc, weyl
from .ppoly import PPoly
from .tautring import RingMode, TautClass, degree_Ag_tilde, top_degree

DEFAULT_MAX_G = 6


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- expression parser

class ParseError(UsageError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"\s*(?:(\d+)|(l\d+)|(p)|([-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        kind = ("int", "lam", "p", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := '-' unary | power; power := atom ('^' int)?; atom := int | p | l<k> | '(' expr ')'."""

    def __init__(self, text: str, g: int, mode: RingMode):
        self.text, self.g, self.mode = text, g, mode
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> TautClass:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                val = val * rhs
            else:
                scalar = rhs.coeff(()) if set(rhs.terms) <= {()} else None
                if scalar is None or not scalar.is_constant() or not scalar:
                    self.fail("can only divide by a nonzero rational number", op_tok)
                val = val / scalar.constant()
        return val

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return TautClass(self.g, {(): int(val)}, self.mode)
        if kind == "p":
            return TautClass(self.g, {(): PPoly.p()}, self.mode)
        if kind == "lam":
            k = int(val[1:])
            if not 1 <= k <= self.g:
                self.fail(f"{val} is outside l1..l{self.g}", tok)
            return TautClass.lam(self.g, k, self.mode)
        if val == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        self.i -= 1
        self.fail(f"unexpected {val or 'end of input'!r}")


def parse_expression(text: str, g: int, mode: RingMode = RingMode.COMPACT) -> TautClass:
    return _Parser(text, g, RingMode.parse(mode)).parse()


# ---------------------------------------------------------------- serialization

def frac_text(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def ppoly_to_json(c: PPoly) -> dict:
    return {"p_coeffs": [[str(e), frac_text(v)] for e, v in c.items()]}


def ppoly_from_json(obj: dict) -> PPoly:
    return PPoly({int(e): Fraction(v) for e, v in obj["p_coeffs"]})


def class_to_json(c: TautClass) -> list[dict]:
    return [{"monomial": list(s), "coeff": ppoly_to_json(v)} for s, v in c.items()]


def class_from_json(g: int, terms: list[dict], mode: RingMode = RingMode.COMPACT) -> TautClass:
    return TautClass(g, {tuple(t["monomial"]): ppoly_from_json(t["coeff"]) for t in terms}, mode)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- atlas

def build_atlas(g: int, conv: cc.Conventions = cc.FROZEN, with_classes: bool | None = None) -> dict:
    if with_classes is None:
        with_classes = g <= cc.FULTON_MAX_G
    classes = {}
    brackets = {}
    if with_classes:
        for rep in cc.strata_table(g, conv):
            classes[rep.mu.mu] = rep.raw_pushforward
            brackets[rep.mu.mu] = rep.bracket_factor
    rows = []
    for r in weyl.enumerate_strata(g):
        br = brackets.get(r.mu.mu)
        rows.append({
            "mu": list(r.mu.mu),
            "nu": list(r.nu.nu),
            "weyl_bracket": r.weyl.bracket(),
            "word": list(r.word),
            "length": r.length,
            "codim": r.codim,
            "area": r.area,
            "class_terms": class_to_json(classes[r.mu.mu]) if with_classes else None,
            "multiplicity": ppoly_to_json(br) if br is not None else None,
        })
    meta = {"tool_version": __version__, "conventions": conv.as_dict()}
    if not with_classes:
        meta["note"] = f"push-forward classes are computed for g <= {cc.FULTON_MAX_G}"
    return {"g": g, "rows": rows, "metadata": meta}


def atlas_classes(doc: dict) -> dict[tuple[int, ...], TautClass | None]:
    g = doc["g"]
    return {tuple(r["mu"]): (class_from_json(g, r["class_terms"]) if r["class_terms"] is not None else None)
            for r in doc["rows"]}


def _braces(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}" if xs else "∅"


def _md_class(g: int, row: dict) -> str:
    if row["class_terms"] is None:
        return "n/a"
    c = class_from_json(g, row["class_terms"])
    if row["multiplicity"] is None:
        return str(c)
    mult = ppoly_from_json(row["multiplicity"])
    red = cc.divide_class(c, mult)
    inner = f"{{{red}}}" if len(red.terms) > 1 else str(red)
    return f"[{mult}] × {inner}"


def atlas_markdown(doc: dict) -> str:
    g = doc["g"]
    lines = [f"# Ekedahl-Oort strata, g = {g}", "",
             f"| μ | ν | [1,...,{2 * g}] maps to | ℓ | codim | w_μ | π_* class |",
             "|---|---|---|---|---|---|---|"]
    for r in doc["rows"]:
        cls = _md_class(g, r)
        word = weyl.render_word(r["word"])
        lines.append(f"| {_braces(r['mu'])} | {_braces(r['nu'])} | {r['weyl_bracket']} | "
                     f"{r['length']} | {r['codim']} | {word} | {cls} |")
    lines += ["", f"conventions: {cc.Conventions(**doc['metadata']['conventions']).describe()}"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_ring(args) -> str:
    mode = RingMode.parse(args.mode)
    c = parse_expression(args.expression, args.g, mode)
    if args.degree:
        if mode is not RingMode.COMPACT:
            raise UsageError("--degree needs --mode compact")
        if c.degrees() - {top_degree(args.g)}:
            raise UsageError(f"--degree needs a class of degree {top_degree(args.g)}")
        deg = degree_Ag_tilde(c)
        if args.format == "json":
            return dumps({"g": args.g, "mode": mode.value, "class_terms": class_to_json(c),
                          "degree": ppoly_to_json(deg)})
        return f"{deg}\n"
    if args.format == "json":
        return dumps({"g": args.g, "mode": mode.value, "class_terms": class_to_json(c)})
    return f"{c}\n"


def cmd_strata(args) -> str:
    if args.g < 1:
        raise UsageError("--g must be positive")
    if args.g > args.max_g:
        raise UsageError(f"g={args.g} exceeds --max-g {args.max_g}")
    doc = build_atlas(args.g, _conventions(args))
    return atlas_markdown(doc) if args.format == "md" else dumps(doc)


def cmd_masses(args) -> str:
    g = args.g
    if g < 1:
        raise UsageError("--g must be positive")
    if args.p is not None and not cc._is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    sym = cc.superspecial_mass(g)
    report = {"g": g, "superspecial_mass": str(sym)}
    if args.p is not None:
        report["p"] = args.p
        report["value"] = frac_text(Fraction(sym(args.p)))
    if g == 1:
        report["deuring"] = str(cc.deuring_check())
    if args.format == "json":
        return dumps(report)
    lines = [f"superspecial mass (g={g}): {sym}"]
    if args.p is not None:
        lines.append(f"at p={args.p}: {Fraction(sym(args.p))}")
    if g == 1:
        lines.append(f"Deuring: sum 1/#Aut(E) = {report['deuring']}")
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> str:
    g = args.g
    if g < 1:
        raise UsageError("--g must be positive")
    ns = [arith.ng(i) for i in range(1, g + 1)]
    prod_n = 1
    for n in ns:
        prod_n *= n
    rhs = arith.lemma115_rhs(g)
    report = {"g": g, "n": ns, "bound": arith.torsion_bound(g),
              "factorial_product": rhs, "factorial_product_matches": rhs == prod_n}
    if args.format == "json":
        return dumps(report)
    return (f"n_1..n_{g}: {', '.join(map(str, ns))}\n"
            f"bound (g-1)! * prod n_i: {report['bound']}\n"
            f"prod n_i = prod_q (floor(2gq/(q-1))!)_q: {'ok' if report['factorial_product_matches'] else 'MISMATCH'}"
            f" ({rhs})\n")


def cmd_check(args, out) -> int:
    from .checks import run_checks

    conv = _conventions(args)
    status = 0
    for res in run_checks(args.max_g if args.max_g_given else 3, conv):
        if res.ok:
            out.write(f"PASS {res.name}\n")
        else:
            out.write(f"FAIL {res.name}\n")
            out.write(dumps({"check": res.name, "detail": res.detail}))
            status = 1
    return status


def _conventions(args) -> cc.Conventions:
    conv = cc.FROZEN
    for name in getattr(args, "perturb", None) or []:
        conv = conv.flipped(name)
    return conv


# ---------------------------------------------------------------- entry point

class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="agcycles", description=__doc__)
    ap.add_argument("--conventions", action="store_true", help="print the frozen degeneracy-formula conventions")
    ap.add_argument("--version", action="version", version=f"agcycles {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_ArgParser)

    def common(p, g_default=None):
        p.add_argument("--g", type=int, default=g_default, required=g_default is None)
        p.add_argument("--format", choices=("text", "json", "md"), default="text")

    p = sub.add_parser("ring", help="evaluate an expression in the tautological ring")
    common(p)
    p.add_argument("--mode", default="compact", choices=("compact", "open"))
    p.add_argument("--degree", action="store_true", help="print the degree of a top-degree class")
    p.add_argument("expression")

    p = sub.add_parser("strata", help="atlas of Ekedahl-Oort strata")
    common(p)
    p.add_argument("--max-g", type=int, default=DEFAULT_MAX_G)
    p.add_argument("--perturb", action="append", choices=cc.Conventions.switch_names(), help=argparse.SUPPRESS)

    p = sub.add_parser("masses", help="superspecial mass formula")
    common(p)
    p.add_argument("--p", type=int)

    p = sub.add_parser("bounds", help="torsion bound for lambda_g")
    common(p)

    p = sub.add_parser("check", help="run the self-check suite")
    p.add_argument("--max-g", type=int, default=None)
    p.add_argument("--perturb", action="append", choices=cc.Conventions.switch_names(), help=argparse.SUPPRESS)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = sys.stdout
    if args.conventions:
        out.write(dumps({"conventions": cc.FROZEN.as_dict(), "description": cc.FROZEN.describe()}))
        if args.command is None:
            return 0
    if args.command is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        if args.command == "check":
            args.max_g_given = args.max_g is not None
            return cmd_check(args, out)
        if args.command == "strata" and args.format == "text":
            args.format = "json"
        handler = {"ring": cmd_ring, "strata": cmd_strata, "masses": cmd_masses, "bounds": cmd_bounds}[args.command]
        out.write(handler(args))
    except UsageError as exc:
        sys.stderr.write(f"agcycles: error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"agcycles: error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
