"""Command-line frontend.

Subcommands: ``matrix`` (dump the parity-check columns), ``embed`` and
``extract`` (message I/O through PGM or raw covers), ``rates`` (CSV
report plus a rendered figure), ``simulate`` (Monte Carlo distortion
with the closed-form reference), and ``verify`` (code self-checks).

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 capacity exceeded, 4 unresolvable saturation, 5 I/O or format error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import codec, media, rates
from .construction import build_code, matrix_dump, verify_code

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_SATURATION = 4
EXIT_IO = 5


def _add_code_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-m", type=int, default=4, help="code size exponent (default 4)")
    parser.add_argument("-d", "--delta", type=int, default=2,
                        help="number of quaternary checks (default 2)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="z2z4stego",
        description="±1 steganography with perfect Z2Z4-additive codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="print the parity-check matrix")
    _add_code_args(p)

    p = sub.add_parser("embed", help="embed a message file into a cover")
    _add_code_args(p)
    p.add_argument("--cover", required=True, help="cover media file")
    p.add_argument("--message", required=True, help="message file to hide")
    p.add_argument("--out", required=True, help="output media file")
    p.add_argument("--format", choices=("auto", "pgm", "raw"), default="auto")
    p.add_argument("--depth", type=int, choices=(8, 16), default=8,
                   help="bits per symbol for raw covers")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of searching when saturation cannot be "
                        "resolved by the complementary change")

    p = sub.add_parser("extract", help="extract a message from a stego file")
    _add_code_args(p)
    p.add_argument("--stego", required=True, help="stego media file")
    p.add_argument("--out", required=True, help="output message file")
    p.add_argument("--format", choices=("auto", "pgm", "raw"), default="auto")
    p.add_argument("--depth", type=int, choices=(8, 16), default=8)

    p = sub.add_parser("rates", help="emit the rate/distortion table (CSV)")
    p.add_argument("--B", type=int, default=8, help="symbol depth for saturation terms")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--schemes", help="comma-separated subset of: "
                   + ",".join(rates._ALL_SCHEMES))
    p.add_argument("--plot", help="figure output path (default: next to --out)")
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")

    p = sub.add_parser("simulate", help="Monte Carlo distortion estimate")
    _add_code_args(p)
    p.add_argument("--B", type=int, default=8)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interior", action="store_true",
                   help="draw covers without extreme values")
    p.add_argument("--scheme", choices=("z2z4", "ternary"), default="z2z4")
    p.add_argument("--mu", type=int, default=2, help="checks for the ternary baseline")

    p = sub.add_parser("verify", help="run code self-checks for (m, delta)")
    _add_code_args(p)

    return parser


def _load_cover(path: str, fmt: str, depth: int) -> media.MediaDocument:
    data = Path(path).read_bytes()
    if fmt == "auto":
        fmt = "pgm" if data.startswith(b"P5") else "raw"
    if fmt == "pgm":
        return media.parse_pgm(data)
    return media.parse_raw(data, depth)


def _write_cover(doc: media.MediaDocument, path: str) -> None:
    data = media.write_pgm(doc) if doc.kind == "pgm" else media.write_raw(doc)
    Path(path).write_bytes(data)


def _cmd_matrix(args) -> int:
    print(matrix_dump(build_code(args.m, args.delta)))
    return EXIT_OK


def _cmd_embed(args) -> int:
    spec = build_code(args.m, args.delta)
    doc = _load_cover(args.cover, args.format, args.depth)
    message = Path(args.message).read_bytes()
    stego = codec.embed_stream(doc.symbols, message, spec,
                               depth=doc.depth, strict=args.strict)
    _write_cover(doc.with_symbols(stego), args.out)
    blocks = (codec.HEADER_BITS + 8 * len(message) + spec.params.m - 1) // spec.params.m
    print(f"embedded {len(message)} bytes into {blocks} blocks "
          f"({blocks * spec.params.N} of {len(doc.symbols)} symbols)")
    return EXIT_OK


def _cmd_extract(args) -> int:
    spec = build_code(args.m, args.delta)
    doc = _load_cover(args.stego, args.format, args.depth)
    message = codec.extract_stream(doc.symbols, spec)
    Path(args.out).write_bytes(message)
    print(f"extracted {len(message)} bytes")
    return EXIT_OK


def _cmd_rates(args) -> int:
    schemes = args.schemes.split(",") if args.schemes else None
    if args.out:
        with open(args.out, "w", newline="") as sink:
            count = rates.emit_rates_csv(schemes, args.B, sink)
        print(f"wrote {count} rows to {args.out}")
        if not args.no_plot:
            from .plots import render_rate_curves

            plot_path = args.plot or str(Path(args.out).with_suffix(".png"))
            render_rate_curves(plot_path, B=args.B)
            print(f"wrote figure to {plot_path}")
    else:
        count = rates.emit_rates_csv(schemes, args.B, sys.stdout)
        if args.plot and not args.no_plot:
            from .plots import render_rate_curves

            render_rate_curves(args.plot, B=args.B)
            print(f"wrote figure to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.scheme == "ternary":
        d_hat = rates.ternary_baseline_distortion(
            args.mu, args.B, args.trials, args.seed, interior_only=args.interior
        )
        ref = rates.ternary_rate(args.mu, saturating=not args.interior, B=args.B)
        print(f"scheme        ternary Hamming (mu={args.mu}, B={args.B})")
        print(f"trials        {args.trials} (seed {args.seed}, PCG64 batches)")
        print(f"D estimate    {d_hat:.9f}")
        print(f"closed form   {ref.D:.9f}")
        return EXIT_OK

    spec = build_code(args.m, args.delta)
    result = rates.monte_carlo_distortion(
        spec, args.B, args.trials, args.seed, interior_only=args.interior
    )
    if args.interior:
        ref = rates.z2z4_rate(args.m)
    else:
        ref = rates.z2z4_rate_saturating(args.m, args.B)
    print(f"scheme        Z2Z4 codec (m={args.m}, delta={args.delta}, B={args.B})")
    print(f"trials        {result.trials} (seed {args.seed}, PCG64 batches)")
    print(f"D estimate    {result.d_hat:.9f}")
    print(f"std error     {result.std_error:.3e}")
    print(f"closed form   {ref.D:.9f}")
    print(f"saturation fallbacks   {result.saturation_fallbacks}")
    print(f"double saturations     {result.double_saturations}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = build_code(args.m, args.delta)
    problems = verify_code(spec)
    label = f"(m={args.m}, delta={args.delta})"
    if problems:
        for issue in problems:
            print(f"FAIL {label}: {issue}")
        return EXIT_VERIFY_FAILED
    print(f"PASS {label}: perfectness, pairing, complement, and symbol checks")
    return EXIT_OK


_COMMANDS = {
    "matrix": _cmd_matrix,
    "embed": _cmd_embed,
    "extract": _cmd_extract,
    "rates": _cmd_rates,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except codec.CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except codec.DoubleSaturationUnresolvable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SATURATION
    except (media.MediaFormatError, codec.MalformedHeader, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
