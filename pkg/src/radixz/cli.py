"""``radixz`` command line.

Exit codes: 0 success, 2 input error, 3 domain violation (singular or
non-dilation matrix, map not preserving the lattice), 4 internal
inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize as ser
from .criteria import BETA_MAX, Threshold, check_conditions, cross_validate, find_power
from .digits import digit_set
from .errors import (
    DigitNotInSetError,
    DigitSetError,
    InconsistencyError,
    NonIntegralTransportError,
    NotDilationError,
    PowerSearchError,
    SingularMatrixError,
    StepBudgetExceeded,
)
from .lattice import GaussianRational, transport
from .norms import bounds_report
from .representation import atlas, evaluate, pseudodigits, represent

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_INCONSISTENT = 0, 2, 3, 4

_THRESHOLDS = {
    "MuGt2": Threshold.MU_GT_2,
    "mu-gt-2": Threshold.MU_GT_2,
    "MuGt2SqrtN": Threshold.MU_GT_2_SQRT_N,
    "mu-gt-2sqrtn": Threshold.MU_GT_2_SQRT_N,
}


def _matrix(source):
    doc = ser.load_matrix(source)
    return doc.int_matrix(), doc.name


def _convention(args):
    return args.convention.upper()


def _emit(obj):
    sys.stdout.write(ser.dump(obj))


def cmd_digits(args):
    A, name = _matrix(args.matrix)
    ds = digit_set(A, _convention(args))
    _emit({"matrix": ser.matrix_to_dict(A, name), **ser.digit_set_to_dict(ds)})


def cmd_pseudodigits(args):
    A, name = _matrix(args.matrix)
    ds = digit_set(A, _convention(args))
    br = bounds_report(A)
    table = pseudodigits(ds, br, method=args.search)
    _emit({
        "matrix": ser.matrix_to_dict(A, name),
        "digits": [list(d) for d in ds.digits],
        "table": ser.table_to_dict(table),
        "bounds": ser.bounds_to_dict(br),
    })


def _read_representation(text):
    path = Path(text)
    raw = path.read_text() if path.is_file() else text
    try:
        return ser.representation_from_dict(json.loads(raw))
    except (json.JSONDecodeError, AttributeError):
        raise ser.DocumentError(f"cannot parse representation {text!r}") from None


def cmd_represent(args):
    A, _ = _matrix(args.matrix)
    if args.decode is not None:
        rep = _read_representation(args.decode)
        if any(len(d) != A.n for d in rep.digits) or (rep.pseudodigit is not None and len(rep.pseudodigit) != A.n):
            raise ser.DocumentError(f"representation does not have dimension {A.n}")
        _emit({"x": list(evaluate(A, rep))})
        return
    if args.vector is None:
        raise ser.DocumentError("a vector is required unless --decode is given")
    x = ser.parse_vector(args.vector, A.n)
    ds = digit_set(A, _convention(args))
    rep = represent(ds, pseudodigits(ds), x)
    _emit({"x": list(x), **ser.representation_to_dict(rep)})


def cmd_check(args):
    A, name = _matrix(args.matrix)
    report = check_conditions(A)
    cv = cross_validate(A, _convention(args))
    _emit({
        "matrix": ser.matrix_to_dict(A, name),
        "conditions": ser.conditions_to_dict(report),
        "cross_validation": {
            "yields_radix": cv.yields_radix,
            "S": [list(s) for s in cv.S],
            "consistent": cv.consistent,
        },
    })


def cmd_power(args):
    A, name = _matrix(args.matrix)
    res = find_power(A, _THRESHOLDS[args.threshold], args.beta_max)
    _emit({
        "matrix": ser.matrix_to_dict(A, name),
        "beta": res.beta,
        "threshold": res.threshold.value,
        "certificate": ser.cert_to_dict(res.certificate),
    })


def cmd_atlas(args):
    A, _ = _matrix(args.matrix)
    if args.n_max < 0:
        raise ser.DocumentError("--n-max must be >= 0")
    ds = digit_set(A, _convention(args))
    radix, pseudo = atlas(ds, pseudodigits(ds), args.n_max)
    text = ser.atlas_csv(radix, pseudo, A.n)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_report(args):
    A, name = _matrix(args.matrix)
    _emit(ser.run_report(A, _convention(args), name).to_dict())


def _gauss(c):
    if isinstance(c, GaussianRational):
        return [ser.rat(c.re), ser.rat(c.im)]
    return ser.rat(c)


def cmd_lattice(args):
    M = ser.load_matrix(args.basis)
    A = ser.load_matrix(args.matrix)
    if M.n != A.n:
        raise ser.DocumentError(f"basis is {M.n}x{M.n} but map is {A.n}x{A.n}")
    ctx = transport(M.rows, A.rows)
    conv = _convention(args)
    table = ctx.pseudodigits(conv)
    vec = lambda v: [_gauss(c) for c in v]  # noqa: E731
    _emit({
        "B": ser.matrix_to_dict(ctx.B),
        "fundamental_domain": ctx.fundamental_domain,
        "digits": [vec(d) for d in ctx.lattice_digits(conv)],
        "pseudodigits": [vec(ctx.to_lattice(s)) for s in table.S],
        "yields_radix": not table.S,
        "mu_prime_gt_2": ctx.mu_prime_exceeds(4),
    })


def cmd_reproduce(args):
    """Digits, cycles and sample encodings for the bundled examples."""
    samples = {"two": [(-5,), (1,), (7,), (-7,)], "minus_two": [(1,)], "twin_dragon": [(0, 1), (1, 0)],
               "diag_two": [(1, 1)], "three_i": [(5, -4)], "lagarias_wang": [(0, 1, 0, 0), (-1, 0, 0, 0)]}
    out = {}
    for name in ser.fixture_names():
        A = ser.load_matrix(name).int_matrix()
        ds = digit_set(A, _convention(args))
        table = pseudodigits(ds)
        out[name] = {
            "matrix": ser.matrix_to_dict(A),
            "digits": [list(d) for d in ds.digits],
            "cycles": [[list(x) for x in c] for c in table.cycles],
            "S": [list(s) for s in table.S],
            "verdict": check_conditions(A).verdict.value,
            "examples": [
                {"x": list(x), **ser.representation_to_dict(represent(ds, table, x))}
                for x in samples.get(name, [])
            ],
        }
    _emit(out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--convention", choices=("f", "u", "F", "U"), default="f",
                        help="half-open cube [-1/2,1/2)^n (f) or (-1/2,1/2]^n (u)")

    p = argparse.ArgumentParser(prog="radixz", description=__doc__.splitlines()[0].rstrip("."))
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    matrix_help = "matrix JSON file, or the name of a bundled fixture"
    add("digits", cmd_digits, "list the canonical digit set").add_argument("matrix", help=matrix_help)

    sp = add("pseudodigits", cmd_pseudodigits, "find all cycles and pseudodigits")
    sp.add_argument("matrix", help=matrix_help)
    sp.add_argument("--search", choices=("auto", "ball", "attractor"), default="auto")

    sp = add("represent", cmd_represent, "encode a vector, or decode with --decode")
    sp.add_argument("matrix", help=matrix_help)
    sp.add_argument("vector", nargs="?", help='"1,-2" or "[1, -2]"')
    sp.add_argument("--decode", metavar="REP", help="representation JSON (text or file) to evaluate")

    add("check", cmd_check, "sufficient conditions and cross-validation").add_argument("matrix", help=matrix_help)

    sp = add("power", cmd_power, "smallest power passing a singular value test")
    sp.add_argument("matrix", help=matrix_help)
    sp.add_argument("--threshold", choices=sorted(_THRESHOLDS), default="MuGt2")
    sp.add_argument("--beta-max", type=int, default=BETA_MAX)

    sp = add("atlas", cmd_atlas, "CSV of radix and pseudo points with N <= n-max")
    sp.add_argument("matrix", help=matrix_help)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", help="write CSV here instead of stdout")

    add("report", cmd_report, "full run report as JSON").add_argument("matrix", help=matrix_help)

    sp = add("lattice", cmd_lattice, "number system on the lattice spanned by a basis")
    sp.add_argument("basis", help="basis matrix file (columns are basis vectors)")
    sp.add_argument("matrix", help="map on the ambient space")

    add("reproduce", cmd_reproduce, "run the bundled examples")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (SingularMatrixError, NotDilationError, NonIntegralTransportError, PowerSearchError) as exc:
        print(f"radixz: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InconsistencyError, DigitSetError, StepBudgetExceeded) as exc:
        print(f"radixz: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ser.DocumentError, DigitNotInSetError, ValueError, OSError) as exc:
        print(f"radixz: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
