"""Command line front end: ``gk check | rep | qcalc | spin``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a parse or
usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from gk.blades import format_blade, mask_indices
from gk.clifford import Signature
from gk.errors import DomainError
from gk.expr import EvalContext, check, parse_identity
from gk.matrices import (
    build_clifford_generators,
    build_fermion_rep,
    matrices_to_json,
    matrix_to_json,
)
from gk.qcalc import q_table
from gk.spin import rotor, rotor_to_rotation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- check -------------------------------------------------------------------


@dataclass(frozen=True)
class Settings:
    sig: Signature | None = None
    backend: str = "blades"
    modes: int | None = None
    tol: float = 1e-9

    def context(self) -> EvalContext:
        if self.backend == "matrix":
            if self.modes is None and self.sig is None:
                raise UsageError("matrix backend needs --modes or --sig")
            sig = self.sig or Signature(2 * self.modes, 0)
            return EvalContext(sig, "matrix", self.modes)
        if self.sig is None:
            raise UsageError("blade backend needs --sig p,q")
        return EvalContext(self.sig, "blades")

    def update(self, assignments: list[str]) -> Settings:
        out = self
        for item in assignments:
            key, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"directive item {item!r} is not key=value")
            try:
                if key == "sig":
                    out = replace(out, sig=Signature.parse(value))
                elif key == "backend":
                    if value not in ("blades", "matrix"):
                        raise UsageError(f"unknown backend {value!r}")
                    out = replace(out, backend=value)
                elif key == "modes":
                    out = replace(out, modes=int(value))
                elif key == "tol":
                    out = replace(out, tol=float(value))
                else:
                    raise UsageError(f"unknown setting {key!r}")
            except (ValueError, DomainError) as exc:
                if isinstance(exc, UsageError):
                    raise
                raise UsageError(f"bad value for {key}: {value!r}") from None
        return out


def read_suite(path: str) -> list[tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    lines = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((no, line))
    return lines


def run_checks(items: list[tuple[str, str]], settings: Settings, out=None) -> int:
    """Run ``(label, line)`` items; ``@set k=v ...`` lines change the settings."""
    out = out or sys.stdout
    passed = total = 0
    errors = 0
    for label, line in items:
        if line.startswith("@set"):
            try:
                settings = settings.update(line.split()[1:])
            except UsageError as exc:
                print(f"ERROR {label}: {exc}", file=out)
                errors += 1
            continue
        total += 1
        try:
            lhs, rhs = parse_identity(line)
            verdict = check(lhs, rhs, settings.context(), settings.tol)
        except (DomainError, UsageError) as exc:
            print(f"ERROR {label}: {exc}  [{line}]", file=out)
            errors += 1
            continue
        status = "PASS" if verdict.passed else "FAIL"
        passed += verdict.passed
        print(f"{status} {label}: residual={verdict.residual:.3g}  [{line}]", file=out)
    print(f"PASSED {passed}/{total}", file=out)
    if errors:
        return EXIT_USAGE
    return EXIT_OK if passed == total else EXIT_FAIL


def cmd_check(args) -> int:
    settings = Settings(
        sig=Signature.parse(args.sig) if args.sig else None,
        backend=args.backend,
        modes=args.modes,
        tol=args.tol,
    )
    items = [(f"arg {n}", s) for n, s in enumerate(args.identities, start=1)]
    if args.suite:
        items += [(f"{args.suite}:{no}", line) for no, line in read_suite(args.suite)]
    if not items:
        raise UsageError("nothing to check: pass an identity or --suite FILE")
    return run_checks(items, settings)


# -- rep ---------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_rep(args) -> int:
    rep = build_fermion_rep(args.modes)
    if args.kind == "fermion":
        named = {f"theta{i + 1}": m for i, m in enumerate(rep.theta)}
        named.update({f"del{i + 1}": m for i, m in enumerate(rep.dels)})
    else:
        sig = Signature.parse(args.sig) if args.sig else None
        gens = build_clifford_generators(rep, sig)
        named = {f"e{i + 1}": m for i, m in enumerate(gens)}
    _emit(matrices_to_json(named), args.out)
    return EXIT_OK


# -- qcalc -------------------------------------------------------------------


def _g12(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def cmd_qcalc(args) -> int:
    for n, value in q_table(args.k):
        # components below the 12-digit resolution of |value| are rounding residue
        floor = 1e-12 * abs(value)
        re_, im_ = (0.0 if abs(x) < floor else x for x in (value.real, value.imag))
        print(f"{n} ({_g12(re_)}, {_g12(im_)})")
    return EXIT_OK


# -- spin --------------------------------------------------------------------

_PI_ANGLE = re.compile(r"(-?)(\d*\.?\d*)\*?pi(?:/(\d+\.?\d*))?")


def parse_angle(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/2``, ``-3*pi/4`` or ``2pi``."""
    text = text.strip().replace(" ", "")
    m = _PI_ANGLE.fullmatch(text)
    if m:
        sign, mult, div = m.groups()
        value = (float(mult) if mult else 1.0) * math.pi / (float(div) if div else 1.0)
        return -value if sign else value
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot read angle {text!r}") from None


def _pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like 'i,j', got {text!r}") from None
    return a, b


def cmd_spin(args) -> int:
    sig = Signature.parse(args.sig)
    i, j = _pair(args.plane, "--plane")
    angle = parse_angle(args.angle)
    r = rotor(i, j, angle, sig)
    terms = {
        (format_blade(m) or "1"): [c.real, c.imag]
        for m, c in sorted(r.elem.terms.items(), key=lambda kv: (len(mask_indices(kv[0])), kv[0]))
    }
    head = json.dumps(
        {
            "signature": [sig.p, sig.q],
            "plane": [i, j],
            "angle": angle,
            "rotor": {"text": str(r.elem), "terms": terms},
        }
    )
    rotation = matrix_to_json(rotor_to_rotation(r))
    print(head[:-1] + f', "rotation": {rotation}}}')
    return EXIT_OK


# -- entry -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gk", description="Grassmann/Clifford algebra identity checker")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="verify identities of the form 'lhs == rhs'")
    c.add_argument("identities", nargs="*", help="identities to check")
    c.add_argument("--suite", help="file with one identity per line ('#' comments, '@set k=v' directives)")
    c.add_argument("--sig", help="signature p,q")
    c.add_argument("--backend", choices=("blades", "matrix"), default="blades")
    c.add_argument("--modes", type=int, help="fermionic modes for the matrix backend")
    c.add_argument("--tol", type=float, default=1e-9)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("rep", help="export matrix representations as JSON")
    r.add_argument("kind", choices=("fermion", "clifford"))
    r.add_argument("--modes", type=int, required=True)
    r.add_argument("--sig", help="signature p,q with p+q = 2*modes (clifford only)")
    r.add_argument("--out", help="output file (default stdout)")
    r.set_defaults(func=cmd_rep)

    q = sub.add_parser("qcalc", help="q-number tables")
    q.add_argument("action", choices=("table",))
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(func=cmd_qcalc)

    s = sub.add_parser("spin", help="rotors and their rotation matrices")
    s.add_argument("action", choices=("rotor",))
    s.add_argument("--plane", required=True, help="i,j")
    s.add_argument("--angle", required=True, help="radians, or a multiple of pi like pi/2")
    s.add_argument("--sig", required=True, help="p,q")
    s.set_defaults(func=cmd_spin)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, OSError) as exc:
        print(f"gk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
