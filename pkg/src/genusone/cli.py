"""Command-line interface: ``genusone <subcommand> ...``.

Every command builds a :class:`CommandResult`; ``main`` prints it as one
JSON object (or plain text with ``--plain``) and returns the exit code:
0 for success, 1 for a domain error, 2 for a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .exact_arith import RationalFormatError, format_rational, is_prime
from .invariants import invariants_of_model
from .jacobian import check_invariant_relations, jacobian_of_model
from .modforms import discriminant_series, eisenstein_series, format_qseries, hasse_congruence_check
from .models import ModelError, PfaffianModel, ReductionError, load_model, pfaffian_quadrics
from .multipoly import format_polynomial
from .reduction import singular_points_mod_p

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    @classmethod
    def ok(cls, payload):
        return cls("ok", payload)

    @classmethod
    def error(cls, message, exit_code=EXIT_DOMAIN):
        return cls("error", {}, [message], exit_code)

    def to_json(self) -> str:
        obj = {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}
        return json.dumps(obj, indent=2, sort_keys=False) + "\n"

    def to_plain(self) -> str:
        if self.status == "error":
            return "".join(f"error: {d}\n" for d in self.diagnostics)
        lines = []
        for k, v in self.payload.items():
            if isinstance(v, list):
                lines.append(f"{k}:")
                lines.extend(f"  {item}" for item in v)
            else:
                lines.append(f"{k}: {str(v).lower() if isinstance(v, bool) else v}")
        return "\n".join(lines) + "\n"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def _form(text):
    if text in ("E4", "E6", "D"):
        return text
    if text.startswith("E2k:"):
        try:
            return int(text[4:])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"unknown form {text!r}; expected E4, E6, E2k:<w> or D")


def build_parser():
    parser = _Parser(prog="genusone", description="Invariants and Jacobians of genus one models.")
    parser.add_argument("--plain", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in [
        ("invariants", "c4, c6 and the discriminant"),
        ("jacobian", "Jacobian as y^2 = 4x^3 - g2 x - g3"),
        ("check", "scaling relations between a model and its Jacobian"),
        ("pfaffians", "the five quadrics of a degree-5 model"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
    sp = sub.add_parser("singular", help="singular points of the reduction mod p")
    sp.add_argument("file")
    sp.add_argument("--mod", type=_prime, required=True, dest="p")
    sp = sub.add_parser("qexp", help="q-expansion of E4, E6, E_2k or D")
    sp.add_argument("--form", type=_form, required=True)
    sp.add_argument("--terms", type=_positive, required=True)
    sp.add_argument("--mod", type=_prime, dest="p")
    sp = sub.add_parser("hasse", help="check E_{p-1} = 1 mod p")
    sp.add_argument("--prime", type=_prime, required=True, dest="p")
    sp.add_argument("--terms", type=_positive, required=True)
    for sp in sub.choices.values():
        sp.add_argument("--plain", action="store_true", default=argparse.SUPPRESS)
    return parser


def _fmt(r):
    return format_rational(r)


def _cmd_invariants(args):
    inv = invariants_of_model(load_model(args.file))
    return {"c4": _fmt(inv.c4), "c6": _fmt(inv.c6), "delta": _fmt(inv.delta)}


def _cmd_jacobian(args):
    W = jacobian_of_model(load_model(args.file))
    return {"g2": _fmt(W.g2), "g3": _fmt(W.g3)}


def _cmd_check(args):
    rep = check_invariant_relations(load_model(args.file))
    payload = {"degree": rep.degree, "alpha": _fmt(rep.alpha)}
    for name, lhs, rhs in rep.sides():
        payload[f"{name}_model"] = _fmt(lhs)
        payload[f"{name}_scaled_jacobian"] = _fmt(rhs)
    payload["c4_ok"] = rep.c4_ok
    payload["c6_ok"] = rep.c6_ok
    payload["delta_ok"] = rep.delta_ok
    payload["delta_jacobian"] = _fmt(rep.jacobian.delta)
    return payload


def _cmd_singular(args):
    pts = singular_points_mod_p(load_model(args.file), args.p)
    return {"p": args.p, "count": len(pts), "points": [str(P) for P in pts]}


def _cmd_pfaffians(args):
    m = load_model(args.file)
    if not isinstance(m, PfaffianModel):
        raise ValueError(f"pfaffians needs a degree-5 model, got degree {m.degree}")
    return {"quadrics": [format_polynomial(f) for f in pfaffian_quadrics(m)]}


def _cmd_qexp(args):
    N = args.terms
    if args.form == "D":
        s = discriminant_series(N)
    else:
        weight = {"E4": 4, "E6": 6}.get(args.form, args.form)
        s = eisenstein_series(weight, N)
    payload = {"form": args.form if isinstance(args.form, str) else f"E2k:{args.form}", "terms": N}
    if args.p is None:
        payload["series"] = format_qseries(s)
    else:
        payload["p"] = args.p
        payload["series"] = format_qseries(s, s.reduce_mod(args.p))
    return payload


def _cmd_hasse(args):
    return {"p": args.p, "terms": args.terms, "congruent": hasse_congruence_check(args.p, args.terms)}


COMMANDS = {
    "invariants": _cmd_invariants,
    "jacobian": _cmd_jacobian,
    "check": _cmd_check,
    "singular": _cmd_singular,
    "qexp": _cmd_qexp,
    "hasse": _cmd_hasse,
    "pfaffians": _cmd_pfaffians,
}


def _parse(argv):
    return build_parser().parse_args(argv)


def run_command(argv) -> CommandResult:
    try:
        args = _parse(list(argv))
    except UsageError as exc:
        return CommandResult.error(f"usage: {exc}", EXIT_USAGE)
    try:
        return CommandResult.ok(COMMANDS[args.command](args))
    except OSError as exc:
        return CommandResult.error(f"{getattr(exc, 'filename', None) or args.file}: {exc.strerror or exc}")
    except (ModelError, ReductionError, RationalFormatError) as exc:
        return CommandResult.error(f"{args.file}: {exc}")
    except (ValueError, ArithmeticError, TypeError) as exc:
        where = f"{args.file}: " if hasattr(args, "file") else ""
        return CommandResult.error(f"{where}{exc}")


def _wants_plain(argv):
    return "--plain" in argv


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        result = run_command(argv)
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    if _wants_plain(argv):
        stream = sys.stdout if result.status == "ok" else sys.stderr
        stream.write(result.to_plain())
    else:
        sys.stdout.write(result.to_json())
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
