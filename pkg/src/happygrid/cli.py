"""Command-line front end: orbits, atlases, certification, grid sorting.

Exit codes: 0 success, 1 verification or certification failure, 2 usage
or parse error.  Numbers cross the boundary as decimal strings so inputs
of hundreds of digits work; `--json` emits one canonical record per
invocation (sorted keys, fixed layout) so outputs are byte-stable.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path

from . import __version__
from .certify import (
    AttractorAtlas,
    CertificationError,
    DescentCertificate,
    brute_bound,
    default_step_budget,
    digit_reduction_threshold,
    enumerate_attractors,
    forward_invariance_scan,
    three_digit_identity_check,
    threshold_inequality_check,
    validate_atlas,
    verify_range,
)
from .digitmap import DigitSystem
from .dynamics import BudgetExceededError, Cycle, classify, step_until_repeat
from .gridsort import (
    Grid,
    GridParseError,
    bubble_column_sort,
    column_maxima,
    format_grid,
    is_cols_sorted,
    is_rows_sorted,
    parse_grid,
    sort_cols,
    sort_rows,
    trace_bubble,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

DEFAULT_CACHE_DIR = Path.home() / ".cache" / "happygrid"


# ----------------------------- argument types ------------------------------

def natural_arg(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"not a nonnegative decimal integer: {text!r}")
    return int(text)


def base_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = -1
    if value < 2:
        raise argparse.ArgumentTypeError(f"base must be an integer >= 2, got {text!r}")
    return value


def exponent_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"exponent must be an integer >= 1, got {text!r}")
    return value


def positive_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


# --------------------------- canonical structured output -------------------

def dumps_canonical(record: dict) -> str:
    """One canonical JSON record: sorted keys, two-space indent, newline."""
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def cycle_record(cycle: Cycle) -> dict:
    return {
        "kind": "fixed_point" if cycle.is_fixed_point else "cycle",
        "length": cycle.length,
        "members": [str(m) for m in cycle.members],
    }


def atlas_record(atlas: AttractorAtlas) -> dict:
    """The atlas cache schema; also the `attractors --json` output."""
    return {
        "base": atlas.system.base,
        "exponent": atlas.system.exponent,
        "p0": atlas.certificate.p0,
        "brute_bound": str(atlas.certificate.brute_bound),
        "max_transient": atlas.certificate.max_transient,
        "fixed_points": [str(x) for x in sorted(atlas.fixed_points)],
        "cycles": [
            [str(m) for m in c.members]
            for c in sorted(atlas.cycles, key=lambda c: c.members[0])
        ],
        "created_by": f"happygrid {__version__}",
    }


def record_to_atlas(record: dict) -> AttractorAtlas:
    """Rebuild an atlas from its cache record and re-check its invariants.

    The classification table is not serialized; rebuilt atlases carry
    None there, which every consumer accepts.
    """
    system = DigitSystem(record["base"], record["exponent"])
    atlas = AttractorAtlas(
        system=system,
        certificate=DescentCertificate(
            system=system,
            p0=int(record["p0"]),
            brute_bound=int(record["brute_bound"]),
            max_transient=int(record["max_transient"]),
        ),
        fixed_points=frozenset(int(x) for x in record["fixed_points"]),
        cycles=frozenset(
            Cycle(tuple(int(m) for m in members)) for members in record["cycles"]
        ),
        classification_table=None,
    )
    validate_atlas(atlas)
    return atlas


# ------------------------------- atlas cache -------------------------------

def cache_path(cache_dir: Path, system: DigitSystem) -> Path:
    return Path(cache_dir) / f"atlas-b{system.base}-e{system.exponent}.json"


def load_cached_atlas(path: Path, system: DigitSystem) -> AttractorAtlas | None:
    """Load and validate a cached atlas; None (with a warning) if unusable."""
    try:
        record = json.loads(path.read_text(encoding="utf-8"))
        if record["base"] != system.base or record["exponent"] != system.exponent:
            raise ValueError("cache is for a different digit system")
        return record_to_atlas(record)
    except FileNotFoundError:
        return None
    except (OSError, ValueError, KeyError, TypeError, CertificationError) as exc:
        print(f"warning: ignoring corrupt atlas cache {path}: {exc}", file=sys.stderr)
        return None


def save_atlas(path: Path, atlas: AttractorAtlas) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps_canonical(atlas_record(atlas)), encoding="utf-8")
    except OSError as exc:
        print(f"warning: could not write atlas cache {path}: {exc}", file=sys.stderr)


def load_or_build_atlas(system: DigitSystem, cache_dir: Path) -> AttractorAtlas:
    path = cache_path(cache_dir, system)
    cached = load_cached_atlas(path, system)
    if cached is not None:
        return cached
    atlas = enumerate_attractors(system)
    save_atlas(path, atlas)
    return atlas


# -------------------------------- commands ---------------------------------

def cmd_traj(args) -> int:
    system = DigitSystem(args.base, args.exp)
    budget = args.max_steps or default_step_budget(args.n, system)
    try:
        traj = step_until_repeat(args.n, system, budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}; raise --max-steps", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(dumps_canonical({
            "base": system.base,
            "exponent": system.exponent,
            "start": str(traj.start),
            "steps": [str(v) for v in traj.steps],
            "entry_index": traj.entry_index,
            "transient_length": traj.transient_length,
            "terminal_cycle": [str(m) for m in traj.terminal.members],
            "cycle_length": traj.terminal.length,
        }), end="")
        return EXIT_OK
    print(f"base {system.base} exponent {system.exponent}")
    print("orbit:", " ".join(str(v) for v in traj.steps))
    print(f"transient length: {traj.transient_length}")
    kind = "fixed point" if traj.terminal.is_fixed_point else f"cycle of length {traj.terminal.length}"
    print(f"terminal {kind}:", " ".join(str(m) for m in traj.terminal.members))
    return EXIT_OK


def cmd_classify(args) -> int:
    system = DigitSystem(args.base, args.exp)
    atlas = load_or_build_atlas(system, args.cache_dir)
    try:
        attractor = classify(args.n, system, atlas)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    happy = attractor.members == (1,)
    if args.json:
        print(dumps_canonical({
            "base": system.base,
            "exponent": system.exponent,
            "start": str(args.n),
            "attractor": cycle_record(attractor),
            "happy": happy,
        }), end="")
        return EXIT_OK
    kind = "fixed point" if attractor.is_fixed_point else f"cycle of length {attractor.length}"
    print(f"{args.n} reaches {kind}:", " ".join(str(m) for m in attractor.members))
    print(f"happy: {'yes' if happy else 'no'}")
    return EXIT_OK


def cmd_happy(args) -> int:
    system = DigitSystem(args.base, args.exp)
    atlas = load_or_build_atlas(system, args.cache_dir)
    try:
        happy = classify(args.n, system, atlas).members == (1,)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    if args.json:
        print(dumps_canonical({
            "base": system.base,
            "exponent": system.exponent,
            "start": str(args.n),
            "happy": happy,
        }), end="")
    else:
        print("yes" if happy else "no")
    return EXIT_OK


def cmd_attractors(args) -> int:
    system = DigitSystem(args.base, args.exp)
    atlas = load_or_build_atlas(system, args.cache_dir)
    if args.json:
        print(dumps_canonical(atlas_record(atlas)), end="")
        return EXIT_OK
    cert = atlas.certificate
    print(f"base {system.base} exponent {system.exponent}")
    print(f"p0 {cert.p0}  brute bound {cert.brute_bound}  max transient {cert.max_transient}")
    print("fixed points:", " ".join(str(x) for x in sorted(atlas.fixed_points)))
    for cycle in sorted(atlas.cycles, key=lambda c: c.members[0]):
        print(f"cycle of length {cycle.length}:", " ".join(str(m) for m in cycle.members))
    return EXIT_OK


def _drop_attractor(atlas: AttractorAtlas, identifier: int) -> AttractorAtlas:
    # Test hook: deliberately truncate the atlas so verification must fail.
    return AttractorAtlas(
        system=atlas.system,
        certificate=atlas.certificate,
        fixed_points=frozenset(x for x in atlas.fixed_points if x != identifier),
        cycles=frozenset(c for c in atlas.cycles if c.identifier != identifier),
        classification_table=None,
    )


def cmd_certify(args) -> int:
    system = DigitSystem(args.base, args.exp)
    stages: list[dict] = []

    p0 = digit_reduction_threshold(system)
    bound = brute_bound(system, p0)
    p_max = max(args.p_max, p0)

    threshold = threshold_inequality_check(system, p_max)
    stages.append({
        "name": "threshold-inequality",
        "ok": threshold.ok,
        "p0": threshold.p0,
        "p_max": threshold.p_max,
        "minimal": threshold.minimal,
        "failing": threshold.failing_p,
    })

    invariance = forward_invariance_scan(system, bound)
    stages.append({
        "name": "forward-invariance",
        "ok": invariance.ok,
        "bound": str(bound),
        "checked": invariance.checked,
        "max_image": str(invariance.max_image),
        "failing": invariance.escaping,
    })

    atlas = enumerate_attractors(system)
    stages.append({
        "name": "attractor-enumeration",
        "ok": True,
        "fixed_points": len(atlas.fixed_points),
        "cycles": len(atlas.cycles),
        "max_transient": atlas.certificate.max_transient,
        "failing": None,
    })
    if args.drop_attractor is not None:
        atlas = _drop_attractor(atlas, args.drop_attractor)

    lo = args.lo if args.lo is not None else 0
    hi = args.hi if args.hi is not None else bound
    if lo > hi:
        print(f"error: empty verification range [{lo}, {hi}]", file=sys.stderr)
        return EXIT_USAGE
    whole = verify_range(system, atlas, lo, hi, max_steps=args.max_steps)
    stages.append({
        "name": "range-verification",
        "ok": whole.ok,
        "lo": str(lo),
        "hi": str(hi),
        "checked": whole.checked,
        "max_transient": whole.max_transient,
        "failing": None if whole.failing is None else str(whole.failing),
    })

    if system == DigitSystem(10, 2):
        identity = three_digit_identity_check()
        stages.append({
            "name": "three-digit-identity",
            "ok": identity.ok,
            "checked": identity.checked,
            "min_descent": identity.min_descent,
            "failing": identity.failing,
        })
        low = verify_range(system, atlas, 0, 99, max_steps=args.max_steps)
        stages.append({
            "name": "two-digit-brute-force",
            "ok": low.ok,
            "lo": "0",
            "hi": "99",
            "checked": low.checked,
            "max_transient": low.max_transient,
            "failing": None if low.failing is None else str(low.failing),
        })

    ok = all(stage["ok"] for stage in stages)
    if args.json:
        print(dumps_canonical({
            "base": system.base,
            "exponent": system.exponent,
            "ok": ok,
            "stages": stages,
        }), end="")
    else:
        print(f"base {system.base} exponent {system.exponent}")
        for stage in stages:
            details = "  ".join(
                f"{key}={value}" for key, value in stage.items()
                if key not in ("name", "ok", "failing") and value is not None
            )
            verdict = "ok" if stage["ok"] else f"FAIL at {stage['failing']}"
            print(f"{stage['name']}: {verdict}  {details}")
        print("certified" if ok else "CERTIFICATION FAILED")
    if not ok:
        first = next(stage for stage in stages if not stage["ok"])
        print(
            f"error: stage {first['name']} failed at {first['failing']}",
            file=sys.stderr,
        )
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def _read_grid_text(path_text: str) -> str:
    if path_text == "-":
        return sys.stdin.read()
    return Path(path_text).read_text(encoding="utf-8")


def cmd_grid_sort(args) -> int:
    try:
        text = _read_grid_text(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        grid = parse_grid(text)
    except GridParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    record: dict = {"mode": args.mode, "input": [list(r) for r in grid.entries]}
    outputs: list[Grid] = []
    merges: list = []
    if args.mode == "rows":
        outputs.append(sort_rows(grid))
        record["output"] = [list(r) for r in outputs[-1].entries]
    elif args.mode == "cols":
        outputs.append(sort_cols(grid))
        record["output"] = [list(r) for r in outputs[-1].entries]
    elif args.mode == "both":
        rows_sorted = sort_rows(grid)
        both = sort_cols(rows_sorted)
        outputs += [rows_sorted, both]
        record["rows_sorted"] = [list(r) for r in rows_sorted.entries]
        record["output"] = [list(r) for r in both.entries]
    else:  # bubble
        if args.trace:
            merges = list(trace_bubble(grid))
        sorted_grid, passes = bubble_column_sort(grid)
        outputs.append(sorted_grid)
        record["output"] = [list(r) for r in sorted_grid.entries]
        record["pass_count"] = passes
        if args.trace:
            record["trace"] = [{
                "pass": step.pass_no,
                "top_row": step.top_row,
                "grid": [list(r) for r in step.grid.entries],
            } for step in merges]

    if args.json:
        print(dumps_canonical(record), end="")
        return EXIT_OK
    for step in merges:
        print(f"# pass {step.pass_no} merged rows {step.top_row + 1},{step.top_row + 2}")
        print(format_grid(step.grid))
        print()
    print("\n\n".join(format_grid(g) for g in outputs))
    return EXIT_OK


def _random_grid(rng: random.Random, rows: int, cols: int, lo: int, hi: int) -> Grid:
    values = rng.choices(range(lo, hi + 1), k=rows * cols)
    return Grid.from_rows(values[i * cols:(i + 1) * cols] for i in range(rows))


def _check_grid(grid: Grid) -> str | None:
    """One grid against the theorem and the bubble contract; None if clean."""
    final = sort_cols(sort_rows(grid))
    if not is_rows_sorted(final):
        return "rows unsorted after row+column sort"
    if not is_cols_sorted(final):
        return "columns unsorted after column sort"
    bubbled, passes = bubble_column_sort(grid)
    if bubbled != sort_cols(grid):
        return "bubble pass result differs from column sort"
    if passes != grid.rows - 1:
        return f"expected {grid.rows - 1} passes, ran {passes}"
    return None


def cmd_grid_verify(args) -> int:
    if args.exhaustive:
        cells = args.rows * args.cols
        alphabet = range(args.alphabet)
        checked = 0
        for combo in itertools.product(alphabet, repeat=cells):
            grid = Grid.from_rows(
                combo[i * args.cols:(i + 1) * args.cols] for i in range(args.rows)
            )
            problem = _check_grid(grid)
            if problem is not None:
                return _grid_counterexample(args, grid, checked, problem)
            checked += 1
        return _grid_verified(args, checked)

    rng = random.Random(args.seed)
    if args.min > args.max:
        print(f"error: empty value range [{args.min}, {args.max}]", file=sys.stderr)
        return EXIT_USAGE
    for trial in range(args.trials):
        grid = _random_grid(rng, args.rows, args.cols, args.min, args.max)
        problem = _check_grid(grid)
        if problem is not None:
            return _grid_counterexample(args, grid, trial, problem)
    return _grid_verified(args, args.trials)


def _grid_verified(args, checked: int) -> int:
    if args.json:
        print(dumps_canonical({
            "ok": True,
            "checked": checked,
            "rows": args.rows,
            "cols": args.cols,
            "mode": "exhaustive" if args.exhaustive else "random",
            "seed": None if args.exhaustive else args.seed,
            "counterexample": None,
        }), end="")
    else:
        shape = f"{args.rows}x{args.cols}"
        print(f"verified {checked} grids of shape {shape}: ok")
    return EXIT_OK


def _grid_counterexample(args, grid: Grid, index: int, problem: str) -> int:
    # A counterexample would disprove the theorem; dump a reproducer.
    if args.json:
        print(dumps_canonical({
            "ok": False,
            "checked": index,
            "rows": args.rows,
            "cols": args.cols,
            "mode": "exhaustive" if args.exhaustive else "random",
            "seed": None if args.exhaustive else args.seed,
            "counterexample": {
                "index": index,
                "problem": problem,
                "grid": [list(r) for r in grid.entries],
            },
        }), end="")
    else:
        seed_note = "" if args.exhaustive else f" (seed {args.seed})"
        print(f"counterexample at trial {index}{seed_note}: {problem}", file=sys.stderr)
        print(format_grid(grid), file=sys.stderr)
    return EXIT_VERIFICATION_FAILED


# --------------------------------- parser ----------------------------------

def _add_system_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--base", type=base_arg, default=10,
                        help="digit base, >= 2 (default 10)")
    parser.add_argument("--exp", type=exponent_arg, default=2,
                        help="digit exponent, >= 1 (default 2)")
    parser.add_argument("--json", action="store_true",
                        help="emit one canonical JSON record")


def _add_cache_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cache-dir", type=Path, default=DEFAULT_CACHE_DIR,
                        help=f"atlas cache directory (default {DEFAULT_CACHE_DIR})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="happygrid",
        description="Digit-power-sum orbits with certified attractor atlases, "
                    "and the sorted-rows-stay-sorted grid theorem.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    traj = commands.add_parser("traj", help="iterate the map from N until a repeat")
    traj.add_argument("n", type=natural_arg, metavar="N",
                      help="start value, any number of decimal digits")
    traj.add_argument("--max-steps", type=positive_arg, default=None,
                      help="step budget (default: certified bound)")
    _add_system_flags(traj)
    traj.set_defaults(handler=cmd_traj)

    cls = commands.add_parser("classify", help="name the attractor N reaches")
    cls.add_argument("n", type=natural_arg, metavar="N")
    _add_system_flags(cls)
    _add_cache_flag(cls)
    cls.set_defaults(handler=cmd_classify)

    happy = commands.add_parser("happy", help="does the orbit of N reach 1?")
    happy.add_argument("n", type=natural_arg, metavar="N")
    _add_system_flags(happy)
    _add_cache_flag(happy)
    happy.set_defaults(handler=cmd_happy)

    attractors = commands.add_parser(
        "attractors", help="the certified attractor atlas of a digit system")
    _add_system_flags(attractors)
    _add_cache_flag(attractors)
    attractors.set_defaults(handler=cmd_attractors)

    certify = commands.add_parser(
        "certify", help="run every certification stage for a digit system")
    _add_system_flags(certify)
    certify.add_argument("--p-max", type=positive_arg, default=100,
                         help="top of the threshold inequality scan (default 100)")
    certify.add_argument("--lo", type=natural_arg, default=None,
                         help="range verification start (default 0)")
    certify.add_argument("--hi", type=natural_arg, default=None,
                         help="range verification end (default brute bound)")
    certify.add_argument("--max-steps", type=positive_arg, default=None,
                         help="per-value step budget for range verification")
    certify.add_argument("--drop-attractor", type=natural_arg, default=None,
                         help=argparse.SUPPRESS)  # test hook: truncate the atlas
    certify.set_defaults(handler=cmd_certify)

    grid = commands.add_parser("grid", help="integer grid sorting")
    grid_commands = grid.add_subparsers(dest="grid_command", required=True)

    gsort = grid_commands.add_parser("sort", help="sort a grid from a file or stdin")
    gsort.add_argument("file", nargs="?", default="-",
                       help="grid file; '-' or omitted reads stdin")
    gsort.add_argument("--mode", choices=("rows", "cols", "both", "bubble"),
                       default="both",
                       help="rows, cols, rows-then-cols, or bubble passes")
    gsort.add_argument("--trace", action="store_true",
                       help="with --mode bubble, print every merge snapshot")
    gsort.add_argument("--json", action="store_true",
                       help="emit one canonical JSON record")
    gsort.set_defaults(handler=cmd_grid_sort)

    gverify = grid_commands.add_parser(
        "verify", help="check the sorting theorem on generated grids")
    gverify.add_argument("--rows", type=positive_arg, default=3)
    gverify.add_argument("--cols", type=positive_arg, default=3)
    gverify.add_argument("--trials", type=positive_arg, default=1000,
                         help="number of random grids (default 1000)")
    gverify.add_argument("--seed", type=int, default=0,
                         help="random seed; reproducers quote it")
    gverify.add_argument("--min", type=int, default=-1000,
                         help="smallest entry value (default -1000)")
    gverify.add_argument("--max", type=int, default=1000,
                         help="largest entry value (default 1000)")
    gverify.add_argument("--exhaustive", action="store_true",
                         help="enumerate every grid over --alphabet instead")
    gverify.add_argument("--alphabet", type=positive_arg, default=3,
                         help="exhaustive mode uses entries 0..K-1 (default 3)")
    gverify.add_argument("--json", action="store_true",
                         help="emit one canonical JSON record")
    gverify.set_defaults(handler=cmd_grid_verify)

    return parser


def main(argv=None) -> int:
    # Decimal strings of thousands of digits are a supported input, so lift
    # the int<->str conversion guard well above any practical orbit start.
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 2_000_000))
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
