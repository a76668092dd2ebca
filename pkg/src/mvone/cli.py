"""Command line front end: JSON files in, JSON (or a short line) out.

Exit codes: 0 success, 2 mathematically detected negative (mixed volume 0
or not 1, non-generic coefficients), 1 I/O or format error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from . import jsonio
from .certifier import (
    certify_unit,
    count_unit_simplices_containing_axes,
    cayley_count,
    decompose_theorem1,
    uniqueness_check,
    verify_certificate,
)
from .errors import MathematicalNegative, NotMixedVolumeOne
from .essentiality import is_essential, is_linearly_independent, minimal_deficient_subtuple
from .mixed_volume import mixed_volume, mixed_volume_oracle

log = logging.getLogger("mvone")

COMMANDS = ("mv", "essential", "certify", "decompose", "solve", "count-simplices", "selftest")

EXIT_OK, EXIT_IO, EXIT_NEGATIVE = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    seed: int = 0
    verbose: bool = False
    n: Optional[int] = None
    rounds: int = 20


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.chunks: List[str] = []

    def write(self, text: str):
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def json(self, obj):
        self.write(jsonio.dumps(obj))

    def flush(self):
        text = "".join(self.chunks)
        if self.path in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)


def _read_json(path: Optional[str]):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return jsonio.loads(text)


def _cmd_mv(cfg: CliConfig, out: _Output) -> int:
    tup = jsonio.tuple_from_json(_read_json(cfg.input_path))
    value = mixed_volume(tup)
    out.write(str(value))
    return EXIT_NEGATIVE if value == 0 else EXIT_OK


def _cmd_essential(cfg: CliConfig, out: _Output) -> int:
    tup = jsonio.tuple_from_json(_read_json(cfg.input_path))
    report = minimal_deficient_subtuple(tup)
    out.json({
        "essential": is_essential(tup),
        "linearly_independent": is_linearly_independent(tup),
        "minimal_deficient_subtuple": None if report is None else {
            "indices": list(report.indices),
            "sum_dim": report.sum_dim,
        },
    })
    return EXIT_OK


def _cmd_certify(cfg: CliConfig, out: _Output) -> int:
    tup = jsonio.tuple_from_json(_read_json(cfg.input_path))
    try:
        cert = certify_unit(tup)
    except NotMixedVolumeOne as exc:
        out.json({"certified": False, "stage": exc.stage, "detail": exc.detail})
        raise
    except MathematicalNegative as exc:
        out.json({"certified": False, "stage": type(exc).__name__, "detail": str(exc)})
        raise
    out.json(jsonio.certificate_to_json(cert))
    return EXIT_OK


def _cmd_decompose(cfg: CliConfig, out: _Output) -> int:
    tup = jsonio.tuple_from_json(_read_json(cfg.input_path))
    out.json(jsonio.decomposition_to_json(decompose_theorem1(tup)))
    return EXIT_OK


def _cmd_solve(cfg: CliConfig, out: _Output) -> int:
    from .solver import solve_unique

    system = jsonio.system_from_json(_read_json(cfg.input_path))
    point, plan = solve_unique(system)
    obj = jsonio.point_to_json(point)
    obj["plan"] = jsonio.plan_to_json(plan)
    out.json(obj)
    return EXIT_OK


def _cmd_count(cfg: CliConfig, out: _Output) -> int:
    if cfg.n is None:
        raise ValueError("count-simplices needs n")
    found = count_unit_simplices_containing_axes(cfg.n)
    formula = cayley_count(cfg.n)
    out.write(f"enumerated {found}, formula {formula}")
    return EXIT_OK if found == formula else EXIT_IO


def selftest(seed: int, rounds: int = 20) -> List[tuple]:
    """Randomized property checks; returns (name, passed, total) per suite."""
    from .generators import (
        random_face_tuple,
        random_mv1_system,
        random_mv2_dilated,
        random_tuple,
    )
    from .solver import solve_unique, verify_solution

    rng = random.Random(seed)
    results = []

    def suite(name: str, check: Callable[[], bool]):
        ok = 0
        for _ in range(rounds):
            try:
                ok += bool(check())
            except Exception:  # a crash counts as a failed instance
                log.exception("selftest %s crashed", name)
        results.append((name, ok, rounds))

    def oracle():
        tup = random_tuple(rng.randint(2, 4), rng)
        mv = mixed_volume(tup)
        return mv == mixed_volume_oracle(tup) and (mv == 0) == (not is_linearly_independent(tup))

    def round_trip():
        tup = random_face_tuple(rng.randint(1, 5), rng)
        c1 = certify_unit(tup)
        ok = verify_certificate(tup, c1) and mixed_volume(tup) == 1
        if len(tup[0].vertices) > 2:
            ok = ok and uniqueness_check(tup, c1, certify_unit(tup, edge=(1, 2)))
        return ok

    def solver():
        system = random_mv1_system(rng.randint(1, 5), rng)
        point, _ = solve_unique(system)
        return verify_solution(system, point)

    def negative():
        tup = random_mv2_dilated(rng.randint(2, 4), rng)
        try:
            certify_unit(tup)
        except NotMixedVolumeOne:
            return True
        return False

    suite("oracle", oracle)
    suite("certify", round_trip)
    suite("solve", solver)
    suite("mv2-negative", negative)
    return results


def _cmd_selftest(cfg: CliConfig, out: _Output) -> int:
    log.info("selftest seed %d", cfg.seed)
    results = selftest(cfg.seed, cfg.rounds)
    for name, ok, total in results:
        out.write(f"{'PASS' if ok == total else 'FAIL'} {name} {ok}/{total}")
    return EXIT_OK if all(ok == total for _, ok, total in results) else EXIT_IO


_HANDLERS = {
    "mv": _cmd_mv,
    "essential": _cmd_essential,
    "certify": _cmd_certify,
    "decompose": _cmd_decompose,
    "solve": _cmd_solve,
    "count-simplices": _cmd_count,
    "selftest": _cmd_selftest,
}


def run(cfg: CliConfig) -> int:
    out = _Output(cfg.output_path)
    code = EXIT_OK
    try:
        code = _HANDLERS[cfg.command](cfg, out)
    except MathematicalNegative as exc:
        print(f"negative: {exc}", file=sys.stderr)
        code = EXIT_NEGATIVE
    except jsonio.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        out.flush()
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


class _Parser(argparse.ArgumentParser):
    # usage errors are format errors (exit 1); 2 is reserved for negatives
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mvone", description="Mixed volume 1 toolkit.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("n", nargs="?", type=int, help="dimension for count-simplices")
    parser.add_argument("--input", "-i", help="input JSON file (default stdin)")
    parser.add_argument("--output", "-o", help="output file (default stdout)")
    parser.add_argument("--seed", type=int, default=0, help="seed for selftest")
    parser.add_argument("--rounds", type=int, default=20, help="instances per selftest suite")
    parser.add_argument("--verbose", "-v", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = CliConfig(args.command, args.input, args.output, args.seed, args.verbose, args.n, args.rounds)
    start = time.perf_counter()
    code = run(cfg)
    log.info("%s finished in %.2fs with exit code %d", cfg.command, time.perf_counter() - start, code)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
