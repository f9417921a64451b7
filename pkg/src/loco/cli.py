"""Command-line front end.

Exit codes: 0 success, 1 frame or constraint errors found while decoding or
verifying, 2 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import generic, tdmr
from .alphabet import format_levels
from .families import FAMILY_NAMES, FamilyCodec, make_family

EXIT_OK, EXIT_FRAME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _family(args: argparse.Namespace) -> FamilyCodec:
    if args.family is None:
        raise UsageError("--family is required")
    return make_family(args.family, d=args.d, x=args.x)


def _automaton(args: argparse.Namespace) -> generic.ConstraintAutomaton:
    if args.config is not None and args.family is not None:
        raise UsageError("--family and --config are mutually exclusive")
    if args.config is not None:
        return generic.build_automaton(generic.load_config(Path(args.config)))
    return _family(args).automaton


def _single_m(args: argparse.Namespace) -> int:
    if args.m is None:
        raise UsageError("--m is required")
    try:
        m = int(args.m)
    except ValueError:
        raise UsageError(f"--m expects one integer, got {args.m!r}") from None
    if m < 1:
        raise UsageError("--m must be >= 1")
    return m


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text)


def bytes_to_bits(data: bytes) -> str:
    return "".join(format(b, "08b") for b in data)


def bits_to_bytes(bits: str) -> bytes:
    if len(bits) % 8:
        raise ValueError(f"{len(bits)} bits do not form whole bytes")
    return bytes(int(bits[k : k + 8], 2) for k in range(0, len(bits), 8))


# ----- subcommands -------------------------------------------------------------


def cmd_capacity(args: argparse.Namespace) -> int:
    if args.config is not None and args.family is None:
        c, cn = generic.capacity(_automaton(args))
    else:
        if args.config is not None:
            raise UsageError("--family and --config are mutually exclusive")
        c, cn = _family(args).capacity()
    print(f"C={c:.4f} Cn={cn:.4f}")
    return EXIT_OK


def cmd_cardinality(args: argparse.Namespace) -> int:
    m = _single_m(args)
    if args.config is not None:
        print(generic.count(_automaton(args), m))
    else:
        print(_family(args).cardinality(m))
    return EXIT_OK


def cmd_rate_table(args: argparse.Namespace) -> int:
    f = _family(args)
    if args.m is None:
        raise UsageError("--m is required (comma-separated lengths)")
    try:
        ms = [int(v) for v in str(args.m).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad length list {args.m!r}") from None
    print(f"{'m':>4} {'R':>8} {'Rn':>8} {'s':>5}")
    for m in ms:
        r, rn = f.rate(m)
        print(f"{m:>4} {r:>8.4f} {rn:>8.4f} {f.adder_size(m):>5}")
    return EXIT_OK


def _read_input_bits(args: argparse.Namespace) -> str:
    if args.bits is not None and args.inp is not None:
        raise UsageError("--bits and --in are mutually exclusive")
    if args.bits is not None:
        bits = "".join(args.bits.split())
        if set(bits) - {"0", "1"}:
            raise UsageError("--bits must contain only 0 and 1")
        return bits
    if args.inp is None:
        raise UsageError("give the message with --in FILE or --bits STRING")
    return bytes_to_bits(Path(args.inp).read_bytes())


def cmd_encode(args: argparse.Namespace) -> int:
    f = _family(args)
    m = _single_m(args)
    bits = _read_input_bits(args)
    n = tdmr.chunk_length(f, m)
    if len(bits) % n:
        raise UsageError(f"input has {len(bits)} bits, not a multiple of the {n}-bit chunk")
    symbols = tdmr.assemble_symbols(f, m, bits)
    if args.format == "grid":
        if f.q == 2:
            raise UsageError("grid output needs a GF(8)-written family (os, op, ns, np)")
        _emit(tdmr.Grid.from_symbols(symbols).to_text(), args.out)
    else:
        _emit(format_levels(symbols), args.out)
    return EXIT_OK


def _read_stream(args: argparse.Namespace, f: FamilyCodec) -> list[int | None]:
    if args.inp is None:
        raise UsageError("--in is required")
    text = Path(args.inp).read_text()
    if args.format == "grid":
        if f.q == 2:
            raise UsageError("grid input needs a GF(8)-written family (os, op, ns, np)")
        return tdmr.Grid.from_text(text).to_symbols()
    return tdmr.symbols_from_text(text)


def cmd_decode(args: argparse.Namespace) -> int:
    f = _family(args)
    m = _single_m(args)
    frames = tdmr.parse_symbols(f, m, _read_stream(args, f))
    bad = [k for k, fr in enumerate(frames) if not fr.ok]
    for k in bad:
        print(f"frame {k}: {frames[k].status}", file=sys.stderr)
    if bad:
        return EXIT_FRAME
    bits = "".join(fr.bits or "" for fr in frames)
    if args.out is None:
        print(bits)
    else:
        try:
            Path(args.out).write_bytes(bits_to_bytes(bits))
        except ValueError as exc:
            print(f"cannot write bytes: {exc}", file=sys.stderr)
            return EXIT_FRAME
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    f = _family(args)
    m = _single_m(args)
    symbols = _read_stream(args, f)
    frames = tdmr.parse_symbols(f, m, symbols)
    failures = sum(not fr.ok for fr in frames)
    violations = tdmr.stream_violations(f, symbols)
    print(f"frames={len(frames)} frame_errors={failures} pattern_violations={violations}")
    ok = failures == 0 and violations == 0
    if f.q > 2:
        grid = tdmr.Grid.from_symbols(symbols)
        sis, pis = len(tdmr.scan_sis(grid)), len(tdmr.scan_pis(grid))
        run = tdmr.max_no_transition_run(grid)
        print(f"sis={sis} pis={pis} max_run={run}")
        isolated = pis if f.name in ("op", "np") else sis
        ok = ok and isolated == 0
    return EXIT_OK if ok else EXIT_FRAME


def cmd_enumerate(args: argparse.Namespace) -> int:
    m = _single_m(args)
    automaton = _automaton(args)
    for k, w in enumerate(generic.enumerate_words(automaton, m)):
        print(f"{k}\t{w}")
    return EXIT_OK


def selftest_family(f: FamilyCodec, max_m: int) -> bool:
    """Closed-form codec against the automaton engine at small lengths."""
    for m in range(1, max_m + 1):
        words = generic.enumerate_words(f.automaton, m)
        if f.cardinality(m) != len(words):
            return False
        for k, w in enumerate(words):
            if f.index(w) != k or generic.rank(f.automaton, w) != k:
                return False
        try:
            s = f.message_length(m)
        except ValueError:
            continue  # too short to carry a message once clocking words are removed
        for g in range(1 << s):
            bits = format(g, f"0{s}b")
            if f.decode(f.encode(bits, m)) != bits:
                return False
    return True


def cmd_selftest(args: argparse.Namespace) -> int:
    scale = {2: 10, 4: 6, 8: 4}
    names = [args.family] if args.family else list(FAMILY_NAMES)
    all_ok = True
    for name in names:
        f = make_family(name, d=args.d, x=args.x)
        ok = selftest_family(f, scale[f.q])
        all_ok &= ok
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_FRAME


COMMANDS = {
    "capacity": cmd_capacity,
    "cardinality": cmd_cardinality,
    "rate-table": cmd_rate_table,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILY_NAMES)
    common.add_argument("--d", type=int, default=None, help="LO-RLL minimum zero run")
    common.add_argument("--x", type=int, default=None, help="S-LOCO isolation parameter")
    common.add_argument("--m", default=None, help="codeword length (comma list for rate-table)")
    common.add_argument("--config", default=None, help="JSON constraint file with q and patterns")
    common.add_argument("--in", dest="inp", default=None, help="input file")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("symbols", "grid"), default="symbols")
    common.add_argument("--bits", default=None, help="message bits given inline instead of --in")

    parser = argparse.ArgumentParser(prog="loco", description="LOCO constrained codes")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"loco {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"loco {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
