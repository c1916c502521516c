"""Command-line front end: a small expression language for quadratic
elements, command dispatch, and deterministic text/JSON reporting.

Grammar:  expr := ['+'|'-'] term (('+'|'-') term)*
          term := [rational '*'] atom
          atom := 'K' | 'b(' int ')' | ':b(' int ')b(' int '):'
                | 'T(' int ')' | 'S(' int ')'
Whitespace is insignificant.  b(0) is rejected: the zero mode is the
central element K.  The printer emits a canonical form (tau terms, then
pair terms, then modes, then K, indices ascending) and parse is a left
inverse of it.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 coinvariant run did not stabilize.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coinv import FPoint, coinvariants_A, coinvariants_X, default_schedule, stabilize
from .fock import FockVector, VoaConfig, apply_quadratic, format_vector, parse_label
from .quadops import QuadraticElement, WittElement, b, bracket, pair, sigma_hat, tau_hat
from .verify import CocycleHandle, central_scalars, verify_all


class ExpressionError(ValueError):
    """Parse failure with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# tokenizer and parser
# ---------------------------------------------------------------------------

_SYMBOLS = set("KbTS():+-*/")

def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    toks.append(("END", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ExpressionError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> QuadraticElement:
        out = QuadraticElement.zero()
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take(self.peek())[0] == "-" else 1
        out = out + self.term().scale(sign)
        while self.peek() != "END":
            op = self.peek()
            if op not in "+-":
                raise ExpressionError(f"expected '+' or '-', found {op!r}",
                                      self.toks[self.i][2])
            self.take(op)
            out = out + self.term().scale(-1 if op == "-" else 1)
        return out

    def term(self) -> QuadraticElement:
        coeff = Fraction(1)
        if self.peek() == "INT":
            num = self.take("INT")[1]
            den = 1
            if self.peek() == "/":
                self.take("/")
                den = self.take("INT")[1]
                if den == 0:
                    raise ExpressionError("zero denominator", self.toks[self.i - 1][2])
            coeff = Fraction(num, den)
            self.take("*")
        return self.atom().scale(coeff)

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        return sign * self.take("INT")[1]

    def _mode_index(self) -> int:
        self.take("b")
        self.take("(")
        pos = self.toks[self.i][2]
        m = self.integer()
        self.take(")")
        if m == 0:
            raise ExpressionError("b(0) is the central element; write K", pos)
        return m

    def atom(self) -> QuadraticElement:
        kind = self.peek()
        if kind == "K":
            self.take("K")
            return QuadraticElement(central=1)
        if kind == "b":
            return b(self._mode_index())
        if kind == ":":
            self.take(":")
            a = self._mode_index()
            bb = self._mode_index()
            self.take(":")
            return pair(a, bb)
        if kind in ("T", "S"):
            self.take(kind)
            self.take("(")
            p = self.integer()
            self.take(")")
            return tau_hat(p) if kind == "T" else sigma_hat(WittElement.L(p))
        raise ExpressionError(f"expected an atom, found {kind!r}",
                              self.toks[self.i][2])


def parse_expression(text: str) -> QuadraticElement:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------

def _term_chunks(A: QuadraticElement):
    chunks = []
    for d in sorted(A.quad):
        series = A.quad[d]
        if not series.poly.is_constant():
            raise ValueError("no canonical expression: diagonal coefficient "
                             "is a non-constant polynomial")
        c = series.poly.constant_value()
        if c:
            chunks.append((c, f"T({d})"))
    for d in sorted(A.quad):
        series = A.quad[d]
        c = series.poly.constant_value()
        for a in sorted(x for x in series.exc if 2 * x <= d):
            v = series.exc[a]
            coeff = (v - c) / 2 if 2 * a == d else v - c
            chunks.append((coeff, f":b({a})b({d - a}):"))
    for m in sorted(A.linear.coeffs):
        chunks.append((A.linear.coeffs[m], f"b({m})"))
    if A.central:
        chunks.append((A.central, "K"))
    return chunks


def format_expression(A: QuadraticElement) -> str:
    chunks = _term_chunks(A)
    if not chunks:
        return "0*K"
    parts = []
    for coeff, atom in chunks:
        mag = abs(coeff)
        body = atom if mag == 1 else f"{mag}*{atom}"
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# reporting helpers
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x

def _dump(data) -> str:
    return json.dumps(_jsonable(data))

def _parse_gaps(text: str):
    text = (text or "").strip()
    if not text:
        return ()
    return tuple(int(g) for g in text.split(","))


# ---------------------------------------------------------------------------
# subcommand bodies: return (exit code, output text)
# ---------------------------------------------------------------------------

def _cmd_bracket(args):
    result = bracket(parse_expression(args.x), parse_expression(args.y))
    text = format_expression(result)
    if args.format == "json":
        return 0, _dump({"command": "bracket", "inputs": [args.x, args.y],
                         "result": text})
    return 0, text

def _cmd_cocycle(args):
    handle = CocycleHandle(args.name)
    value = handle(parse_expression(args.x), parse_expression(args.y))
    if args.format == "json":
        return 0, _dump({"command": "cocycle", "name": args.name,
                         "inputs": [args.x, args.y], "value": value})
    return 0, str(value)

def _cmd_fock_apply(args):
    A = parse_expression(args.expr)
    state = parse_label(args.state)
    result = apply_quadratic(A, FockVector.basis(state))
    if args.format == "json":
        terms = [{"label": _label_text(st), "coeff": c}
                 for st, c in result.terms_sorted()]
        return 0, _dump({"command": "fock-apply", "expr": args.expr,
                         "state": args.state, "result": terms})
    return 0, format_vector(result)

def _label_text(state) -> str:
    from .fock import format_label
    return format_label(state)

def _cmd_coinv(args):
    F = FPoint(_parse_gaps(args.gaps))
    cfg = VoaConfig(args.rank, 1)
    compute = coinvariants_X if args.side == "X" else coinvariants_A
    def run(m, w):
        return compute(cfg, F, args.N, m, w)
    report = stabilize(run, default_schedule(args.N, args.M, args.W))
    if args.format == "text":
        lines = [f"gaps: {report.gaps}", f"rank: {report.rank}",
                 f"N/M/W: {report.N}/{report.M}/{report.W}",
                 f"dims: {report.dims}",
                 f"stabilized: {str(report.stabilized).lower()}",
                 f"generators: {report.generators}"]
        text = "\n".join(lines)
    else:
        text = report.to_json()
    return (0 if report.stabilized else 3), text

def _cmd_verify_all(args):
    verdicts = verify_all(args.probe_bound)
    ok = all(v["pass"] for v in verdicts)
    if args.format == "json":
        return (0 if ok else 1), _dump(verdicts)
    lines = []
    for v in verdicts:
        params = " ".join(f"{k}={v['parameters'][k]}" for k in v["parameters"])
        status = "PASS" if v["pass"] else "FAIL"
        lines.append(f"{status} {v['check']}" + (f" ({params})" if params else ""))
        for w in v["witnesses"]:
            lines.append(f"    witness: {w}")
    return (0 if ok else 1), "\n".join(lines)

def _cmd_central_scalars(args):
    table = central_scalars()
    if args.format == "json":
        return 0, _dump(table)
    lines = [f"mp cocycle: {table['mp_cocycle']} "
             f"(on tau-hat pair at p=2: {table['mp_cocycle_on_tau2']})",
             f"U2 cocycle: {table['u2_cocycle']}",
             f"Lambda fiber scalar: {table['lambda_fiber']}",
             f"Theta fiber scalar: {table['theta_fiber']}"]
    for row in table["atiyah"]:
        lines.append(f"c={row['c']}: A-side {row['A_multiple']}, "
                     f"X-side {row['X_multiple']}")
    return 0, "\n".join(lines)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {"gaps": str, "rank": int, "N": int, "M": int, "W": int,
                "probe_bound": int, "format": str, "side": str}

def _read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _CONFIG_KEYS[key](value)
    return out

def _extract_config(argv):
    """Pull --config PATH out of argv so it may precede the subcommand."""
    argv = list(argv)
    path = None
    i = 0
    while i < len(argv):
        if argv[i] == "--config":
            if i + 1 >= len(argv):
                raise ValueError("--config needs a path")
            path = argv[i + 1]
            del argv[i:i + 2]
        elif argv[i].startswith("--config="):
            path = argv[i].split("=", 1)[1]
            del argv[i]
        else:
            i += 1
    return argv, path

def _add_format(sub, default: str):
    sub.add_argument("--format", choices=("text", "json"), default=default)

def build_parser():
    parser = argparse.ArgumentParser(
        prog="oscalg",
        description="Exact computations in the quadratic Weyl algebra, its "
                    "Fock representations, and coinvariants at semigroup points")
    subs = parser.add_subparsers(dest="command", required=True)
    table = {}

    sub = subs.add_parser("bracket", help="commutator of two expressions")
    sub.add_argument("x")
    sub.add_argument("y")
    _add_format(sub, "text")
    sub.set_defaults(func=_cmd_bracket)
    table["bracket"] = sub

    sub = subs.add_parser("cocycle", help="evaluate a named two-cocycle")
    sub.add_argument("name", choices=("psi", "alpha", "beta", "gamma"))
    sub.add_argument("x")
    sub.add_argument("y")
    _add_format(sub, "text")
    sub.set_defaults(func=_cmd_cocycle)
    table["cocycle"] = sub

    sub = subs.add_parser("fock-apply", help="apply an expression to a basis state")
    sub.add_argument("expr")
    sub.add_argument("state")
    _add_format(sub, "text")
    sub.set_defaults(func=_cmd_fock_apply)
    table["fock-apply"] = sub

    sub = subs.add_parser("coinv", help="stabilized coinvariant dimensions")
    sub.add_argument("--gaps", default="")
    sub.add_argument("--rank", type=int, default=1)
    sub.add_argument("--N", type=int, default=4)
    sub.add_argument("--M", type=int, default=8)
    sub.add_argument("--W", type=int, default=8)
    sub.add_argument("--side", choices=("A", "X"), default="A")
    _add_format(sub, "json")
    sub.set_defaults(func=_cmd_coinv)
    table["coinv"] = sub

    sub = subs.add_parser("verify-all", help="run the identity battery")
    sub.add_argument("--probe-bound", dest="probe_bound", type=int, default=4)
    _add_format(sub, "text")
    sub.set_defaults(func=_cmd_verify_all)
    table["verify-all"] = sub

    sub = subs.add_parser("central-scalars", help="central-scalar table")
    _add_format(sub, "text")
    sub.set_defaults(func=_cmd_central_scalars)
    table["central-scalars"] = sub

    return parser, table

def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        argv, config_path = _extract_config(argv)
        defaults = _read_config(config_path) if config_path else {}
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    parser, table = build_parser()
    if defaults:
        for sub in table.values():
            sub.set_defaults(**defaults)
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except ExpressionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(text)
    return code

if __name__ == "__main__":
    sys.exit(main())
