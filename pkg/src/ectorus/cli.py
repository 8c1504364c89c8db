"""Command-line interface: ``ectorus <command> [args] [flags]``.

Every command returns a CommandResult.  Default output is plain text meant
to be stable under diff; ``--json`` prints ``{"status", "payload",
"diagnostics"}``; ``--markdown`` and ``--csv`` render tabular payloads.

Exit codes: 0 ok, 1 domain or verification failure, 2 parse failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from .cfrac import Matrix2, palindrome_check, sqrt_cf
from .errors import EctorusError, ParseError
from .exactnum import QuadraticSurd, format_number, parse_number

__all__ = ["CommandResult", "main", "build_parser", "parse_tau", "parse_theta", "run"]


@dataclass
class CommandResult:
    status: str  # "ok" | "error"
    payload: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    text: str = ""  # human rendering
    rows: Optional[list] = None  # tabular view for --markdown/--csv
    exit_code: Optional[int] = None

    @property
    def code(self) -> int:
        if self.exit_code is not None:
            return self.exit_code
        return 0 if self.status == "ok" else 1

    def to_dict(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": list(self.diagnostics)}


# -- argument grammars -------------------------------------------------------


def _complex_literal(text: str):
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if "," in s:
        re_, im = s.split(",", 1)
        return mpmath.mpc(mpmath.mpf(re_.strip()), mpmath.mpf(im.strip()))
    s = s.replace(" ", "").replace("i", "j")
    return mpmath.mpc(complex(s))


def parse_tau(text: str, precision: int = 100):
    """Exact ``(p+q*sqrt(d))/r`` if possible, else a numeric complex value.

    Numeric forms: ``re,im``, ``[re,im]`` or ``0.1+1.2i``.
    """
    try:
        return parse_number(text)
    except ParseError as exact_error:
        with mpmath.workprec(precision + 20):
            try:
                return _complex_literal(text)
            except (ValueError, TypeError):
                raise exact_error from None


def parse_theta(text: str):
    """Exact real surd or rational; a decimal literal becomes a float."""
    try:
        return parse_number(text)
    except ParseError as exact_error:
        try:
            return float(text)
        except ValueError:
            raise exact_error from None


def _parse_int(text: str, name: str = "D") -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {text!r}", 0) from None


# -- JSON shapes -------------------------------------------------------------


def _cnum(z) -> list:
    z = mpmath.mpc(z) if not isinstance(z, Fraction) else mpmath.mpc(z.numerator) / z.denominator
    return [float(z.real), float(z.imag)]


def _tau_json(tau):
    if isinstance(tau, (QuadraticSurd, int, Fraction)):
        return format_number(tau)
    return _cnum(tau)


def _matrix_json(m: Optional[Matrix2]):
    if m is None:
        return None
    a, b, c, d = m.entries()
    return [[a, b], [c, d]]


def _matrix_text(m: Optional[Matrix2]) -> str:
    if m is None:
        return "none"
    a, b, c, d = m.entries()
    return f"[[{a}, {b}], [{c}, {d}]]"


def _rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _point_json(P):
    from .curves import INFINITY

    if P is INFINITY:
        return "infinity"
    return {"x": _rat(P.x), "y": _rat(P.y)}


def _show(z, digits: int = 20) -> str:
    return mpmath.nstr(z, digits)


# -- commands ----------------------------------------------------------------


def cmd_cf(D: str, **_) -> CommandResult:
    n = _parse_int(D)
    cf = sqrt_cf(n)
    payload = {
        "D": n,
        "cf": str(cf),
        "head": cf.head,
        "period": list(cf.period),
        "period_length": len(cf.period),
        "palindrome": palindrome_check(cf),
    }
    return CommandResult("ok", payload, text=str(cf))


def cmd_reduce(tau: str, precision: int = 100, **_) -> CommandResult:
    from .curves import reduce_modulus

    t = parse_tau(tau, precision)
    r, g = reduce_modulus(t, precision)
    payload = {"tau": _tau_json(t), "reduced": _tau_json(r.tau), "matrix": _matrix_json(g)}
    shown = format_number(r.tau) if r.is_exact else _show(r.tau)
    return CommandResult("ok", payload, text=f"tau' = {shown}\ng = {_matrix_text(g)}")


def cmd_j(tau: Optional[str] = None, lam: Optional[str] = None, shells: int = 60,
          precision: int = 100, **_) -> CommandResult:
    from .curves import LegendreCurve, eisenstein_g2_g3, j_invariant, legendre_to_weierstrass

    if (tau is None) == (lam is None):
        raise ParseError("give exactly one of TAU or --lambda", 0)
    with mpmath.workprec(precision + 20):
        if lam is not None:
            value = parse_tau(lam, precision)
            wc = legendre_to_weierstrass(LegendreCurve(value), precision)
            source = {"lambda": _cnum(value)}
        else:
            t = parse_tau(tau, precision)
            wc = eisenstein_g2_g3(t, shells=shells, precision=precision)
            source = {"tau": _tau_json(t)}
        j = j_invariant(wc)
        payload = dict(source)
        payload.update({"g2": _cnum(wc.g2), "g3": _cnum(wc.g3), "j": _cnum(j), "error": float(wc.error)})
        return CommandResult("ok", payload, text=f"j = {_show(j)}")


def cmd_cm(tau: str, precision: int = 100, **_) -> CommandResult:
    from .curves import cm_discriminant

    t = parse_tau(tau, precision)
    D = cm_discriminant(t)
    diag = [] if D is not None else ["no CM decision for an inexact modulus"]
    return CommandResult("ok", {"tau": _tau_json(t), "D": D}, diag, text=f"D = {D}" if D else "unknown")


def cmd_rm(theta: str, **_) -> CommandResult:
    from .nctori import rm_discriminant

    t = parse_theta(theta)
    D = rm_discriminant(t)
    diag = [] if D is not None else ["no RM decision for a float theta"]
    shown = format_number(t) if not isinstance(t, float) else repr(t)
    return CommandResult("ok", {"theta": shown, "D": D}, diag, text=f"D = {D}" if D else "unknown")


def cmd_morita(theta1: str, theta2: str, **_) -> CommandResult:
    from .nctori import morita_equivalent

    v = morita_equivalent(parse_theta(theta1), parse_theta(theta2))
    payload = {"equivalent": v.holds, "witness": _matrix_json(v.witness)}
    text = "equivalent" if v.holds else "not equivalent"
    if v.witness is not None:
        text += f"\nwitness = {_matrix_text(v.witness)}"
    return CommandResult("ok", payload, text=text)


def cmd_complexity(D: str, evaluator: str = "period-length-class", **_) -> CommandResult:
    from .nctori import arithmetic_complexity

    rep = arithmetic_complexity(_parse_int(D), evaluator)
    text = f"c = {rep.complexity}  (period length {rep.period_length}, evaluator {rep.evaluator_name})"
    text += "".join(f"\nnote: {n}" for n in rep.notes)
    return CommandResult("ok", rep.to_dict(), list(rep.notes), text=text)


def cmd_rank(D: str, evaluator: str = "period-length-class", **_) -> CommandResult:
    from .nctori import rank_from_complexity

    n = _parse_int(D)
    r = rank_from_complexity(n, evaluator)
    return CommandResult("ok", {"D": n, "rank": r}, text=str(r))


_TABLE_HEADER = ["D", "rank", "continued fraction", "c"]


def cmd_table(table_file: Optional[str] = None, **_) -> CommandResult:
    from .nctori import golden_table

    recs = golden_table(table_file)
    rows = [[r.D, r.rank, str(r.cf), r.complexity] for r in recs]
    payload = {"rows": [dict(zip(["D", "rank", "cf", "c"], row)) for row in rows]}
    return CommandResult("ok", payload, text=_aligned([_TABLE_HEADER] + rows), rows=[_TABLE_HEADER] + rows)


def cmd_verify_table(table_file: Optional[str] = None, evaluator: str = "period-length-class",
                     **_) -> CommandResult:
    from .nctori import golden_table, verify_reconciliation

    rep = verify_reconciliation(golden_table(table_file), evaluator)
    diag = []
    for r in rep.rows:
        if not r.ok:
            diag.append(
                f"D={r.D}: cf {r.computed_cf} vs {r.stored_cf}, c {r.computed_c} vs {r.stored_c}, "
                f"rank {r.rank}"
            )
    header = ["D", "rank", "continued fraction", "c", "check"]
    rows = [[r.D, r.rank, r.stored_cf, r.stored_c, "pass" if r.ok else "FAIL"] for r in rep.rows]
    text = "\n".join(diag + [rep.summary()])
    return CommandResult("ok" if rep.ok else "error", rep.to_dict(), diag, text=text, rows=[header] + rows)


def cmd_verify_lemma(**_) -> CommandResult:
    from .starrew import lemma1_check

    rep = lemma1_check()
    return CommandResult("ok" if rep.ok else "error", rep.to_dict(), text=rep.to_text())


# sample points as lattice coordinates (s, t) with z = s + t tau
_WP_SAMPLES = ((0.17, 0.29), (0.41, 0.13), (0.23, 0.71), (0.62, 0.38))


def cmd_wp_check(tau: str, shells: int = 60, precision: int = 100, **_) -> CommandResult:
    """Differential equation, evenness and periodicity of p at fixed points.

    Passes when each residual is below 1e-6 (1 + |p|^3).
    """
    from .curves import eisenstein_g2_g3, wp_eval
    from .curves.modulus import as_modulus

    t = parse_tau(tau, precision)
    with mpmath.workprec(precision + 20):
        tn = as_modulus(t).to_mpc(precision + 20)
        wc = eisenstein_g2_g3(t, shells=shells, precision=precision)
        checks, worst = [], 0.0
        for s, u in _WP_SAMPLES:
            z = s + u * tn
            w = wp_eval(z, t, shells, precision)
            scale = 1 + abs(w.value) ** 3
            ode = abs(w.derivative**2 - (4 * w.value**3 - wc.g2 * w.value - wc.g3)) / scale
            even = abs(wp_eval(-z, t, shells, precision).value - w.value) / scale
            per1 = abs(wp_eval(z + 1, t, shells, precision).value - w.value) / scale
            pert = abs(wp_eval(z + tn, t, shells, precision).value - w.value) / scale
            row = {
                "z": _cnum(z),
                "wp": _cnum(w.value),
                "ode": float(ode),
                "even": float(even),
                "period_1": float(per1),
                "period_tau": float(pert),
                "error_estimate": float(w.error),
            }
            worst = max(worst, row["ode"], row["even"], row["period_1"], row["period_tau"])
            checks.append(row)
    tol = 1e-6
    ok = worst < tol
    payload = {"tau": _tau_json(t), "shells": shells, "precision": precision, "tolerance": tol,
               "worst": worst, "samples": checks}
    diag = [] if ok else [f"worst scaled residual {worst:.3e} exceeds {tol:g}"]
    text = f"{'pass' if ok else 'FAIL'}: worst scaled residual {worst:.3e} (tolerance {tol:g})"
    return CommandResult("ok" if ok else "error", payload, diag, text=text)


def _parse_curve(text: str):
    from .curves import Cubic

    parts = text.strip().strip("()").split(",")
    if len(parts) != 3:
        raise ParseError(f"curve must be 'a,b,c' for y^2 = x^3 + a x^2 + b x + c, got {text!r}", 0)
    coeffs, offset = [], 0
    for part in parts:
        try:
            coeffs.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {part.strip()!r}", offset) from None
        offset += len(part) + 1
    return Cubic(*coeffs)


def cmd_group_law(curve: str, P: str, Q: str, **_) -> CommandResult:
    from .curves.group_law import parse_point, point_add

    cubic = _parse_curve(curve)
    p, q = parse_point(P), parse_point(Q)
    R = point_add(p, q, cubic)
    payload = {"curve": [_rat(cubic.a), _rat(cubic.b), _rat(cubic.c)], "P": _point_json(p),
               "Q": _point_json(q), "sum": _point_json(R)}
    s = payload["sum"]
    text = s if isinstance(s, str) else f"{s['x']},{s['y']}"
    return CommandResult("ok", payload, text=text)


# -- rendering ---------------------------------------------------------------


def _aligned(rows: list) -> str:
    cells = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _table_rows(result: CommandResult) -> list:
    if result.rows is not None:
        return result.rows
    rows = [["key", "value"]]
    for k, v in result.payload.items():
        rows.append([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return rows


def _markdown(rows: list) -> str:
    out = ["| " + " | ".join(str(c) for c in rows[0]) + " |", "|" + "---|" * len(rows[0])]
    out += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows[1:]]
    return "\n".join(out)


def _csv(rows: list) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def render(result: CommandResult, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.to_dict(), indent=2, sort_keys=True)
    if fmt == "markdown":
        body = _markdown(_table_rows(result))
        extra = [d for d in result.diagnostics]
        if "summary" in result.payload:
            extra.append(result.payload["summary"])
        return "\n\n".join([body] + (["\n".join(extra)] if extra else []))
    if fmt == "csv":
        return _csv(_table_rows(result))
    return result.text


# -- entry point -------------------------------------------------------------

COMMANDS: dict[str, Callable[..., CommandResult]] = {
    "cf": cmd_cf,
    "reduce": cmd_reduce,
    "j": cmd_j,
    "cm": cmd_cm,
    "rm": cmd_rm,
    "morita": cmd_morita,
    "complexity": cmd_complexity,
    "rank": cmd_rank,
    "table": cmd_table,
    "verify-table": cmd_verify_table,
    "verify-lemma": cmd_verify_lemma,
    "wp-check": cmd_wp_check,
    "group-law": cmd_group_law,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--markdown", dest="fmt", action="store_const", const="markdown")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    common.add_argument("--shells", type=int, default=60, help="lattice truncation N (default 60)")
    common.add_argument("--precision", type=int, default=100, help="working precision in bits (default 100)")
    common.add_argument("--evaluator", default="period-length-class", help="complexity evaluator name")
    common.add_argument("--table-file", default=None, help="override the shipped rank table")

    parser = argparse.ArgumentParser(prog="ectorus", description="Elliptic curves and noncommutative tori.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *positionals):
        p = sub.add_parser(name, help=help_, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
        return p

    add("cf", "continued fraction of sqrt(D)", "D")
    add("reduce", "reduce tau to the fundamental domain", "tau")
    pj = add("j", "j-invariant from tau or from a Legendre lambda")
    pj.add_argument("tau", nargs="?")
    pj.add_argument("--lambda", dest="lam", default=None)
    add("cm", "CM discriminant of tau", "tau")
    add("rm", "RM discriminant of theta", "theta")
    add("morita", "Morita equivalence of two tori", "theta1", "theta2")
    add("complexity", "arithmetic complexity of A_sqrt(D)", "D")
    add("rank", "rank predicted by c - 1", "D")
    add("table", "print the rank/complexity table")
    add("verify-table", "recompute every table row")
    add("verify-lemma", "derive REL2 from EASY and check the converse")
    add("wp-check", "numeric identities of p for tau", "tau")
    add("group-law", "P + Q on y^2 = x^3 + a x^2 + b x + c", "curve", "P", "Q")
    return parser


def run(argv=None) -> CommandResult:
    """Parse ``argv`` and execute; errors become CommandResults."""
    parser = build_parser()
    args = parser.parse_args(argv)
    kwargs = {k: v for k, v in vars(args).items() if k not in ("command", "fmt")}
    try:
        return COMMANDS[args.command](**kwargs)
    except ParseError as exc:
        return CommandResult("error", {"error": type(exc).__name__, "position": exc.position},
                             [f"{type(exc).__name__}: {exc}"], text=f"{type(exc).__name__}: {exc}",
                             exit_code=2)
    except EctorusError as exc:
        return CommandResult("error", {"error": type(exc).__name__}, [f"{type(exc).__name__}: {exc}"],
                             text=f"{type(exc).__name__}: {exc}", exit_code=1)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = build_parser().parse_args(argv).fmt or "text"
    result = run(argv)
    out = render(result, fmt)
    stream = sys.stdout if result.code == 0 or fmt == "json" else sys.stderr
    if out:
        print(out, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
