"""Command-line driver.

Exit status: 0 success, 1 malformed input, 2 validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .cover import build_double_cover
from .errors import NumericalError, RoydenError, ValidationError
from .homology import DEFAULT_CLEARANCE, build_path_system
from .norm import royden_norm
from .oracle import DEFAULT_ORACLE_TOL, direct_norm
from .periods import DEFAULT_TOL
from .plot import derivatives_svg, polar_svg
from .polyfield import Poly, roots
from .quaddiff import from_json, validate
from .sphere import finite_difference_derivatives, read_csv, sweep, write_csv

EXIT_OK, EXIT_MALFORMED, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3
COEFF_FLAGS = ("--g", "--h", "--p")


class MalformedInput(ValueError):
    pass


@dataclass
class Config:
    quad_tol: float = DEFAULT_TOL
    oracle_tol: float = DEFAULT_ORACLE_TOL
    root_tol: float = 1e-10
    clearance: float = DEFAULT_CLEARANCE
    samples: int = 1000
    output_format: str = "json"

    def check(self, sweeping: bool = False) -> None:
        for name in ("quad_tol", "oracle_tol", "root_tol", "clearance"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValidationError(f"{name} must lie in (0, 1), got {v}")
        if sweeping and self.samples < 8:
            raise ValidationError(f"samples must be at least 8, got {self.samples}")
        if self.output_format not in ("json", "csv", "svg"):
            raise ValidationError(f"unknown output format {self.output_format!r}")


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``imi`` (``j`` also accepted)."""
    t = text.strip().replace(" ", "").replace("i", "j")
    if not t:
        raise MalformedInput("empty coefficient")
    try:
        return complex(t)
    except ValueError:
        raise MalformedInput(f"cannot parse {text!r} as a complex number") from None


def parse_coeffs(text: str) -> Poly:
    """Comma-separated coefficients, lowest degree first."""
    return Poly([parse_complex(c) for c in text.split(",")])


def _fix_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--h -1,0,0,0,1" as two options; glue the value on
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in COEFF_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _add_tolerances(p: argparse.ArgumentParser) -> None:
    p.add_argument("--quad-tol", type=float, default=DEFAULT_TOL, help="edge quadrature tolerance")
    p.add_argument("--oracle-tol", type=float, default=DEFAULT_ORACLE_TOL, help="relative tolerance of the area oracle")
    p.add_argument("--root-tol", type=float, default=1e-10, help="root residual tolerance")
    p.add_argument("--clearance", type=float, default=DEFAULT_CLEARANCE, help="path clearance around branch points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="royden", description="Royden norms of quadratic differentials g/h dx^2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norm of one differential")
    p.add_argument("--g", help="numerator coefficients, low to high (e.g. 1,0.5+2i)")
    p.add_argument("--h", help="denominator coefficients, low to high")
    p.add_argument("--input", help="JSON file {'g': [[re, im], ...], 'h': ...}")
    p.add_argument("--method", choices=("periods", "direct"), default="periods")
    p.add_argument("--dump-paths", metavar="FILE", help="write the branch-cut path system as JSON")
    _add_tolerances(p)

    p = sub.add_parser("sphere", help="sample the unit sphere for a degree-5 h")
    p.add_argument("--h", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--output", "-o", help="CSV path (default stdout)")
    p.add_argument("--no-derivatives", action="store_true", help="leave d1..d3 empty")
    p.add_argument("--verify", action="store_true", help="recheck ||r q|| = 1 at each sample")
    p.add_argument("--workers", type=int, help="worker processes (capped by ROYDEN_THREADS)")
    _add_tolerances(p)

    p = sub.add_parser("derivatives", help="fill finite-difference derivatives of a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--output", "-o")

    p = sub.add_parser("plot", help="SVG figure from a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--kind", choices=("polar", "derivatives"), default="polar")
    p.add_argument("--output", "-o", required=True)

    p = sub.add_parser("roots", help="roots with multiplicities (debugging aid)")
    p.add_argument("--p", required=True)
    p.add_argument("--root-tol", type=float, default=1e-10)
    p.add_argument("--cluster-tol", type=float, default=1e-8)
    return parser


def _config(args, fmt: str) -> Config:
    return Config(
        quad_tol=getattr(args, "quad_tol", DEFAULT_TOL),
        oracle_tol=getattr(args, "oracle_tol", DEFAULT_ORACLE_TOL),
        root_tol=getattr(args, "root_tol", 1e-10),
        clearance=getattr(args, "clearance", DEFAULT_CLEARANCE),
        samples=getattr(args, "samples", 1000),
        output_format=fmt,
    )


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def cmd_norm(args, out) -> int:
    cfg = _config(args, "json")
    cfg.check()
    if args.input:
        if args.g or args.h:
            raise MalformedInput("give either --input or --g/--h, not both")
        try:
            q = from_json(_read_text(args.input))
        except RoydenError:
            raise
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
    else:
        if not (args.g and args.h):
            raise MalformedInput("need --g and --h (or --input)")
        q = validate(parse_coeffs(args.g), parse_coeffs(args.h))
    if args.dump_paths:
        ps = build_path_system(build_double_cover(q), cfg.clearance)
        with open(args.dump_paths, "w", encoding="utf-8") as fh:
            fh.write(ps.to_json() + "\n")
    if args.method == "direct":
        res = direct_norm(q, tol=cfg.oracle_tol)
    else:
        res = royden_norm(q, tol=cfg.quad_tol, clearance=cfg.clearance)
    out.write(res.to_json() + "\n")
    return EXIT_OK


def cmd_sphere(args, out) -> int:
    cfg = _config(args, "csv")
    cfg.check(sweeping=True)
    h = parse_coeffs(args.h)
    res = sweep(h, cfg.samples, tol=cfg.quad_tol, clearance=cfg.clearance, verify=args.verify, workers=args.workers)
    samples = res.samples
    if res.complete and not args.no_derivatives:
        samples = finite_difference_derivatives(samples)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(samples, fh, res.failures)
    else:
        write_csv(samples, out, res.failures)
    if res.failures:
        print(f"royden: {len(res.failures)} of {res.n_grid} samples failed", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _load_csv(path):
    import io

    try:
        return read_csv(io.StringIO(_read_text(path)))
    except MalformedInput:
        raise
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from None


def cmd_derivatives(args, out) -> int:
    samples, comments = _load_csv(args.csv)
    try:
        samples = finite_difference_derivatives(samples)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(samples, fh)
    else:
        write_csv(samples, out)
    return EXIT_OK


def cmd_plot(args, out) -> int:
    samples, _ = _load_csv(args.csv)
    try:
        svg = polar_svg(samples) if args.kind == "polar" else derivatives_svg(samples)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def cmd_roots(args, out) -> int:
    p = parse_coeffs(args.p)
    rs = roots(p, tol=args.root_tol, cluster_tol=args.cluster_tol)
    data = [{"re": float(r.real), "im": float(r.imag), "multiplicity": m} for r, m in rs]
    out.write(json.dumps({"degree": p.degree, "roots": data}) + "\n")
    return EXIT_OK


COMMANDS = {
    "norm": cmd_norm,
    "sphere": cmd_sphere,
    "derivatives": cmd_derivatives,
    "plot": cmd_plot,
    "roots": cmd_roots,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = _fix_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    try:
        return COMMANDS[args.command](args, out)
    except ValidationError as exc:
        print(f"royden: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"royden: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except RoydenError as exc:
        print(f"royden: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except MalformedInput as exc:
        print(f"royden: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
