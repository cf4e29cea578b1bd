"""Command-line interface.

Exit codes: 0 success, 1 user error, 2 computation refused (caps, state
limits, precision), 3 internal invariant breach.
"""

import argparse
import json
import random
import sys

from .algebra.field import FieldCtx
from .algebra import poly as P
from .automaton import (CONVENTIONS, REVERSE, build_forward_dfao, build_reverse_dfao, canonical,
                        dfao_eval, minimize, parse_json, serialize, to_json)
from .complexity import algebraize, bounds_report
from .errors import ComputationRefused, InvariantBreach, UserInputError
from .expr import parse_curve_expr
from .function_field import PlaneCurve
from .kernel import enumerate_kernel, extract_representation, kernel_truncated
from .rational_sweep import from_curve_table, parse_prime_range, prime_sweep
from .series import hensel_expand, parse_series

DEFAULT_PRECISION = 512
MIN_PRECISION = 16
DEFAULT_SEED = 20240101
SPOT_CHECKS = 64

EXIT_OK, EXIT_USER, EXIT_REFUSED, EXIT_BREACH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse would exit with 2, which is reserved for refusals here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="christol",
                     description="Automata for algebraic power series over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, field=True, curve=True):
        if field:
            sp.add_argument("--p", type=int, help="characteristic")
            sp.add_argument("--r", type=int, default=1, help="extension degree, q = p^r")
            sp.add_argument("--modulus",
                            help="F_p coefficients of the field modulus, constant term first")
        if curve:
            sp.add_argument("--curve", help="f(x, T) as an expression in x and T")
            sp.add_argument("--curve-file",
                            help="file with an expression or a JSON list of [x_exp, T_exp, coeff]")
        sp.add_argument("--a0", type=int, help="constant term of the branch (element code)")
        sp.add_argument("--branch-coeffs", help="series coefficients, comma separated")
        sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        sp.add_argument("--format", choices=("dot", "json", "text"))
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", help="write the result to this file")

    sp = sub.add_parser("expand", help="print series coefficients of the branch")
    common(sp)
    sp.add_argument("--terms", type=int, help="number of coefficients (default: precision)")

    sp = sub.add_parser("kernel", help="dump the q-kernel")
    common(sp)

    sp = sub.add_parser("automaton", help="emit the minimal automaton")
    common(sp)
    sp.add_argument("--convention", choices=CONVENTIONS, default=REVERSE)

    sp = sub.add_parser("complexity", help="state counts against the bounds")
    common(sp)
    sp.add_argument("--genus", type=int)

    sp = sub.add_parser("algebraize", help="find an annihilating polynomial")
    common(sp)

    sp = sub.add_parser("sweep", help="N_p of a rational series over Q across primes")
    common(sp, field=False)
    sp.add_argument("--primes", default="2..50", help="range a..b or comma list")

    sp = sub.add_parser("verify", help="re-derive an automaton and compare")
    common(sp)
    sp.add_argument("--automaton", required=True, help="JSON automaton to check")
    return parser


# -- job assembly -----------------------------------------------------------------


def _field(args):
    if args.p is None:
        raise UserInputError("--p is required")
    modulus = None
    if args.modulus:
        try:
            modulus = [int(t) for t in args.modulus.split(",")]
        except ValueError:
            raise UserInputError("--modulus must be a comma-separated coefficient list") from None
    return FieldCtx(args.p, args.r, modulus)


def _read_curve_source(args):
    if args.curve and args.curve_file:
        raise UserInputError("give exactly one of --curve and --curve-file")
    if args.curve:
        return args.curve
    if args.curve_file:
        try:
            with open(args.curve_file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UserInputError(f"cannot read {args.curve_file}: {exc}") from None
    return None


def _table_from_text(text, ctx):
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            table = {}
            for i, j, c in json.loads(stripped):
                table[(int(i), int(j))] = table.get((int(i), int(j)), 0) + int(c)
        except (ValueError, TypeError) as exc:
            raise UserInputError(f"bad coefficient table: {exc}") from None
        if ctx is not None and ctx.r == 1:
            # over a prime field any integer is accepted; extension fields take element codes
            table = {k: v % ctx.p for k, v in table.items()}
        return {k: v for k, v in table.items() if v}
    return parse_curve_expr(stripped, ctx)


def _curve(args, ctx, required=True):
    text = _read_curve_source(args)
    if text is None:
        if required:
            raise UserInputError("a curve is required (--curve or --curve-file)")
        return None
    return PlaneCurve(ctx, _table_from_text(text, ctx))


def _pick_a0(args, curve):
    if args.a0 is not None:
        return args.a0
    ctx = curve.ctx
    f0 = P.trim(tuple(col[0] if col else 0 for col in curve.fT))
    df0 = P.pderiv(ctx, f0)
    roots = [a for a in ctx.elements() if P.peval(ctx, f0, a) == 0 and P.peval(ctx, df0, a)]
    if len(roots) != 1:
        raise UserInputError(
            f"f(0, T) has {len(roots)} simple roots; choose the branch with --a0")
    return roots[0]


def _precision(args):
    if args.precision < MIN_PRECISION:
        raise UserInputError(f"--precision must be at least {MIN_PRECISION}")
    return args.precision


class Job:
    """Resolved inputs shared by the subcommands."""

    def __init__(self, args, need_curve=True):
        self.args = args
        self.ctx = _field(args)
        self.N = _precision(args)
        self.curve = _curve(args, self.ctx, required=need_curve and not args.branch_coeffs)
        self.series = parse_series(self.ctx, args.branch_coeffs) if args.branch_coeffs else None
        self.a0 = None
        if self.curve is not None and self.series is None:
            self.a0 = _pick_a0(args, self.curve)

    def branch(self, n=None):
        n = self.N if n is None else n
        if self.series is not None:
            return self.series.truncate(min(n, len(self.series)))
        return hensel_expand(self.curve, self.a0, n)

    def kernel(self):
        if self.series is not None:
            return kernel_truncated(self.series)
        return enumerate_kernel(self.curve, self.a0)

    def automaton(self, convention):
        kernel = self.kernel()
        if convention == REVERSE:
            return build_reverse_dfao(kernel)
        return build_forward_dfao(extract_representation(kernel))


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_table(ctx, table):
    terms = []
    for j in sorted({j for _, j in table}, reverse=True):
        col = [0] * (max(i for i, jj in table if jj == j) + 1)
        for (i, jj), c in table.items():
            if jj == j:
                col[i] = c
        cs = P.pformat(ctx, P.trim(tuple(col)))
        if j == 0:
            terms.append(cs)
        else:
            mono = "T" if j == 1 else f"T^{j}"
            if cs == "1":
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}" if len(P.trim(tuple(col))) == 1 else f"({cs})*{mono}")
    return " + ".join(terms)


# -- subcommands ----------------------------------------------------------------------


def cmd_expand(args):
    job = Job(args)
    n = args.terms if args.terms is not None else job.N
    if n < 1:
        raise UserInputError("--terms must be positive")
    s = job.branch(n)
    if args.format == "json":
        _emit(args, json.dumps({"q": job.ctx.q, "coefficients": list(s.coeffs)}) + "\n")
    else:
        _emit(args, s.format() + "\n")
    return EXIT_OK


def cmd_kernel(args):
    job = Job(args)
    kernel = job.kernel()
    if args.format == "json":
        obj = {"q": kernel.q, "n_states": len(kernel), "transitions": kernel.transitions,
               "outputs": kernel.outputs}
        _emit(args, json.dumps(obj, indent=2) + "\n")
    else:
        _emit(args, kernel.dump() + "\n")
    return EXIT_OK


def cmd_automaton(args):
    job = Job(args)
    dfao = job.automaton(args.convention)
    _emit(args, serialize(dfao, args.format or "json"))
    return EXIT_OK


def cmd_complexity(args):
    job = Job(args)
    if job.curve is None:
        raise UserInputError("complexity needs the curve (degree and height enter the bounds)")
    kernel = job.kernel()
    fwd = build_forward_dfao(extract_representation(kernel))
    report = bounds_report(job.curve, args.genus, len(kernel), fwd.n_states)
    _emit(args, report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK


def cmd_algebraize(args):
    job = Job(args)
    s = job.branch()
    rel = algebraize(s)
    if args.format == "json":
        obj = {"q": job.ctx.q, "deg_T": rel.degree, "deg_x": rel.height,
               "caps": list(rel.caps), "verified_terms": rel.verified_to,
               "terms": [[i, j, c] for (i, j), c in sorted(rel.table.items())]}
        _emit(args, json.dumps(obj, indent=2) + "\n")
    else:
        _emit(args, _format_table(job.ctx, rel.table) + "\n")
    return EXIT_OK


def cmd_sweep(args):
    text = _read_curve_source(args)
    if text is None:
        raise UserInputError("sweep needs --curve den*T - num over the integers")
    y = from_curve_table(_table_from_text(text, None))
    result = prime_sweep(y, parse_prime_range(args.primes))
    _emit(args, result.to_json() if args.format == "json" else result.to_text())
    return EXIT_OK


def cmd_verify(args):
    job = Job(args)
    try:
        with open(args.automaton, encoding="utf-8") as fh:
            claimed = parse_json(fh.read())
    except OSError as exc:
        raise UserInputError(f"cannot read {args.automaton}: {exc}") from None
    if claimed.q != job.ctx.q:
        print(f"mismatch: automaton has q = {claimed.q}, field has q = {job.ctx.q}")
        return EXIT_USER
    derived = job.automaton(claimed.convention)
    same = to_json(canonical(claimed)) == to_json(canonical(derived))
    # independent spot check of the claimed automaton against the series
    s = job.branch()
    rng = random.Random(args.seed)
    picks = sorted(rng.sample(range(len(s)), min(SPOT_CHECKS, len(s))))
    bad = [n for n in picks if dfao_eval(claimed, n) != s[n]]
    if same and not bad:
        print(f"ok: {claimed.n_states}-state {claimed.convention} automaton verified; "
              f"{len(picks)} spot checks passed")
        return EXIT_OK
    if not same:
        print(f"mismatch: derived automaton has {derived.n_states} states, "
              f"given one has {claimed.n_states}")
        if minimize(claimed).n_states == derived.n_states and not bad:
            print("the given automaton generates the sequence but is not minimal")
    if bad:
        print(f"mismatch: given automaton is wrong at n = {bad[0]}")
    return EXIT_USER


COMMANDS = {
    "expand": cmd_expand,
    "kernel": cmd_kernel,
    "automaton": cmd_automaton,
    "complexity": cmd_complexity,
    "algebraize": cmd_algebraize,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UserInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except ComputationRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InvariantBreach as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_BREACH
