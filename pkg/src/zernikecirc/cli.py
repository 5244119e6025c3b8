"""Command-line front end.

Examples
--------
::

    zernikecirc noll --n 4 --m 2
    zernikecirc eval --n 1 --m 1 --r 0.5 --phi 0
    zernikecirc product a.txt b.txt --out ab.txt
    zernikecirc z2p expansion.txt
    zernikecirc fit samples.txt --max-order 4 --zernike
    zernikecirc selftest
"""

from __future__ import annotations

import argparse
import sys

from . import selftest
from .errors import ZernikeError
from .fitting import fit, load_samples
from .geometry import PointDisk
from .polynomials import format_polynomial, parse_polynomial
from .textio import format_real, open_text
from .zernike import (
    ZernikeTerm,
    expansion_product,
    format_expansion,
    is_valid,
    noll_index,
    noll_inverse,
    parse_expansion,
    polynomial_to_zernike,
    zernike_to_polynomial,
)


class CliError(Exception):
    pass


def _read(path, parser):
    with open_text(path) as fh:
        return parser(fh, name="<stdin>" if path == "-" else path)


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open_text(out, "w") as fh:
            fh.write(text)


def _check_nm(n, m):
    if not is_valid(n, m):
        raise CliError(f"invalid (n, m) = ({n}, {m}): need |m| <= n and n - m even")


def cmd_noll(args) -> None:
    if args.j is not None:
        if args.n is not None or args.m is not None:
            raise CliError("give either --j or both --n and --m")
        n, m = noll_inverse(args.j)
        print(f"{n} {m}")
        return
    if args.n is None or args.m is None:
        raise CliError("give either --j or both --n and --m")
    _check_nm(args.n, args.m)
    print(noll_index(args.n, args.m))


def cmd_eval(args) -> None:
    _check_nm(args.n, args.m)
    term = ZernikeTerm(args.n, args.m)
    cart = (args.x, args.y)
    pol = (args.r, args.phi)
    if None not in cart and all(v is None for v in pol):
        value = term.at(PointDisk(args.x, args.y))
    elif None not in pol and all(v is None for v in cart):
        value = term.at_polar(args.r, args.phi)
    else:
        raise CliError("give exactly one complete coordinate pair: --x/--y or --r/--phi")
    print(format_real(value))


def cmd_product(args) -> None:
    a = _read(args.fileA, parse_expansion)
    b = _read(args.fileB, parse_expansion)
    _write(format_expansion(expansion_product(a, b)), args.out)


def cmd_z2p(args) -> None:
    e = _read(args.file, parse_expansion)
    _write(format_polynomial(zernike_to_polynomial(e)), args.out)


def cmd_p2z(args) -> None:
    p = _read(args.file, parse_polynomial)
    _write(format_expansion(polynomial_to_zernike(p)), args.out)


def cmd_fit(args) -> None:
    if args.max_order < 0:
        raise CliError("--max-order must be non-negative")
    data = _read(args.input, load_samples)
    result = fit(data, args.max_order)
    if args.zernike:
        body = format_expansion(polynomial_to_zernike(result.polynomial))
    else:
        body = format_polynomial(result.polynomial)
    footer = (
        f"# residualNorm {format_real(result.residual_norm)} "
        f"samples {result.sample_count}\n"
    )
    _write(body + footer, args.out)


def cmd_selftest(args) -> int:
    return 0 if selftest.run(sys.stdout) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zernikecirc",
        description="Zernike circle functions: Noll indices, evaluation, products, "
        "conversions and least-squares fits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("noll", help="map (n, m) to Noll's j or back")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_noll)

    p = sub.add_parser("eval", help="evaluate Z_n^(m) at one point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    for name in ("x", "y", "r", "phi"):
        p.add_argument(f"--{name}", type=float)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("product", help="linearise the product of two expansions")
    p.add_argument("fileA", help='expansion file ("n m coeff"), "-" for stdin')
    p.add_argument("fileB", help='expansion file ("n m coeff"), "-" for stdin')
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("z2p", help="Zernike expansion to Cartesian polynomial")
    p.add_argument("file", help='expansion file ("n m coeff"), "-" for stdin')
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_z2p)

    p = sub.add_parser("p2z", help="Cartesian polynomial to Zernike expansion")
    p.add_argument("file", help='polynomial file ("p q coeff"), "-" for stdin')
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_p2z)

    p = sub.add_parser("fit", help="least-squares fit of scattered samples")
    p.add_argument("input", help='sample file ("x y f"), "-" for stdin')
    p.add_argument("--max-order", "--maxOrder", "-K", dest="max_order", type=int, required=True)
    p.add_argument("--zernike", action="store_true", help="print Zernike coefficients")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("selftest", help="run the built-in consistency checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status = args.func(args)
    except (CliError, ZernikeError, OSError) as exc:
        print(f"zernikecirc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
