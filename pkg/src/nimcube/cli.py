"""Command-line entry point.

Exit status: 0 on success, 1 for verification failures or runtime errors,
2 for usage errors (argparse's convention).  Errors go to stderr; regular
output is plain text stable enough for scripting.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO, Sequence

from . import export
from .core import MAX_COORD, Move, classify, nim_sum, optimal_move
from .engine import simulate
from .errors import NimcubeError
from .fractal import (
    DEFAULT_BUDGET_EXPONENT,
    IterationSpec,
    generate_filtered,
    iterate_recursive,
    stream_points,
)
from .geometry import shadow
from .verify import DEFAULT_SWEEP_EXPONENT, sweep_theorem


def _coord(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"pile sizes must be nonnegative: {value}")
    if value > MAX_COORD:
        raise argparse.ArgumentTypeError(f"pile size {value} does not fit in 64 bits")
    return value


def _pile_list(text: str) -> tuple[int, ...]:
    # Accepts "3,4,5" as well as "3 4 5" (quoted).
    parts = [p for chunk in text.split(",") for p in chunk.split()]
    if not parts:
        raise argparse.ArgumentTypeError("expected at least one pile size")
    return tuple(_coord(p) for p in parts)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _format_move(move: Move) -> str:
    return f"pile {move.pile_index} -> {move.new_size}"


def _cmd_nimsum(args: argparse.Namespace) -> int:
    print(nim_sum(args.values))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    print(classify(args.values).value)
    return 0


def _cmd_move(args: argparse.Namespace) -> int:
    move = optimal_move(args.values)
    print(_format_move(move) if move is not None else "none (P-position)")
    return 0


def _open_sink(path: str | None) -> tuple[IO[bytes], bool]:
    if path is None or path == "-":
        return sys.stdout.buffer, False
    return open(path, "wb"), True


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = IterationSpec(args.d, args.n)
    export.check_pointset_format(args.format, spec.d)
    sink, owned = _open_sink(args.out)
    try:
        if args.method == "recursive":
            points = iterate_recursive(spec, args.budget).points
        elif args.method == "filtered":
            points = generate_filtered(spec, args.budget).points
        else:
            points = stream_points(spec)
        export.write_points(sink, spec.d, spec.n, points, args.format)
    finally:
        sink.flush()
        if owned:
            sink.close()
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = sweep_theorem(args.max_d, args.max_n, args.budget)
    print(f"{'d':>3} {'n':>3} {'points':>10} {'expected':>10} {'equal':>6} {'seconds':>8}")
    failures = 0
    for report in reports:
        ok = (report.equal
              and report.cardinality_recursive == report.expected_cardinality)
        failures += not ok
        print(f"{report.d:>3} {report.n:>3} {report.cardinality_recursive:>10}"
              f" {report.expected_cardinality:>10} {'yes' if ok else 'NO':>6}"
              f" {report.elapsed_seconds:>8.3f}")
        if report.first_discrepancy is not None:
            left, right = report.first_discrepancy
            print(f"    first discrepancy: recursive={left} filtered={right}",
                  file=sys.stderr)
    if failures:
        print(f"{failures} cell(s) differ", file=sys.stderr)
        return 1
    return 0


def _cmd_shadow(args: argparse.Namespace) -> int:
    grid = shadow(IterationSpec(args.d, args.n), args.axis, args.budget)
    sink, owned = _open_sink(args.out)
    try:
        export.write_shadow(grid, args.format, sink)
    finally:
        sink.flush()
        if owned:
            sink.close()
    return 0


def _prompt_move(position: tuple[int, ...]) -> Move:
    """Read "pile new_size" pairs until one is legal; reprompt otherwise."""
    while True:
        raw = input("your move (pile index and new size)> ").split()
        if len(raw) != 2:
            print("enter two numbers: a pile index and the new pile size")
            continue
        try:
            index, new_size = int(raw[0]), int(raw[1])
        except ValueError:
            print("enter two numbers: a pile index and the new pile size")
            continue
        if not 0 <= index < len(position):
            print(f"pile index must be between 0 and {len(position) - 1}")
            continue
        if not 0 <= new_size < position[index]:
            print(f"new size must be below the current size {position[index]}")
            continue
        return Move(index, new_size)


def _cmd_play(args: argparse.Namespace) -> int:
    from .core import apply_move, is_terminal
    from .engine import choose_engine_move
    from .errors import BadRequestError

    position = args.piles
    if is_terminal(position):
        raise BadRequestError("cannot start from all-zero piles: no legal first move")
    human_to_move = not args.engine_first
    print(f"piles: {list(position)}")
    while True:
        if human_to_move:
            try:
                move = _prompt_move(position)
            except EOFError:
                print("input closed before the game ended", file=sys.stderr)
                return 1
        else:
            move = choose_engine_move(position)
            print(f"engine: {_format_move(move)}")
        position = apply_move(position, move)
        print(f"piles: {list(position)}")
        if is_terminal(position):
            print("you win!" if human_to_move else "engine wins.")
            return 0
        human_to_move = not human_to_move


def _cmd_simulate(args: argparse.Namespace) -> int:
    result = simulate(args.piles, opponent=args.opponent, trials=args.trials,
                      seed=args.seed)
    print(f"engine wins: {result.engine_wins}, engine losses: {result.engine_losses}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from . import server

    server.run(port=args.port, host=args.host, budget_exponent=args.budget,
               ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nimcube",
        description="Nim strategy tools and discrete Sierpinski demihypercube"
                    " generators")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nimsum", help="print the nim-sum of the given values")
    p.add_argument("values", type=_coord, nargs="+")
    p.set_defaults(func=_cmd_nimsum)

    p = sub.add_parser("classify", help="print P or N for the given piles")
    p.add_argument("values", type=_coord, nargs="+")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("move", help="print the optimal move for the given piles")
    p.add_argument("values", type=_coord, nargs="+")
    p.set_defaults(func=_cmd_move)

    p = sub.add_parser("generate", help="write a demihypercube iteration")
    p.add_argument("--d", type=_positive, required=True, help="dimension")
    p.add_argument("--n", type=_positive, required=True, help="iteration index")
    p.add_argument("--method", choices=("recursive", "filtered", "stream"),
                   default="recursive")
    p.add_argument("--format", choices=export.POINTSET_FORMATS, default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET_EXPONENT,
                   help="max base-2 exponent of materialized points")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify",
                       help="check both generators agree over a (d, n) sweep")
    p.add_argument("--max-d", type=_positive, default=5)
    p.add_argument("--max-n", type=_positive, default=4)
    p.add_argument("--budget", type=int, default=DEFAULT_SWEEP_EXPONENT,
                   help="max base-2 exponent of points per cell")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("shadow", help="write an axis-perpendicular shadow grid")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--axis", type=int, required=True)
    p.add_argument("--format", choices=export.SHADOW_FORMATS, default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET_EXPONENT)
    p.set_defaults(func=_cmd_shadow)

    p = sub.add_parser("play", help="play Nim against the engine in the terminal")
    p.add_argument("--piles", type=_pile_list, required=True,
                   help="comma- or space-separated pile sizes, e.g. 3,4,5")
    p.add_argument("--engine-first", action="store_true")
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("simulate", help="play many engine games and print the tally")
    p.add_argument("--piles", type=_pile_list, required=True)
    p.add_argument("--opponent", choices=("random", "perfect"), default="random")
    p.add_argument("--trials", type=_positive, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="start the local JSON API (and optional UI)")
    p.add_argument("--port", type=int, default=8715)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None,
                   help="directory of built UI assets to serve at /")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET_EXPONENT)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NimcubeError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1


if __name__ == "__main__":
    sys.exit(main())
