"""Command-line front end.

    sylvester-cy hodge --weights 42,28,12,1,1 --degree 84
    sylvester-cy family loop --dim 4
    sylvester-cy verify counting --trials 200 --seed 7
    sylvester-cy sweep weights.txt out.jsonl --parallelism 4

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 domain or
internal error (pole in the Hodge sum, failed construction).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import families, hodge
from .exceptions import ConstructionError, InputError, PoleError, UnsupportedInputError
from .potential import charges
from .wps import WeightSystem, is_calabi_yau, read_weight_systems, well_formed

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3

THREADS_ENV = "SYLVESTER_CY_THREADS"


def _int_list(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty weight list")
    return out


def _emit(obj, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=False) + "\n")
    else:
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                v = json.dumps(v)
            out.write(f"{k}: {v}\n")


# -- hodge ----------------------------------------------------------------------------


def _checked_ws(weights, degree) -> WeightSystem:
    ws = WeightSystem(tuple(weights), degree)
    if not well_formed(ws):
        raise InputError(f"{ws} is not well-formed")
    if not is_calabi_yau(ws):
        raise InputError(f"{ws} is not Calabi-Yau (weights sum to {sum(ws.weights)})")
    return ws


def cmd_hodge(args) -> int:
    ws = _checked_ws(args.weights, args.degree)
    D = hodge.diamond(ws, args.orientation, max_series=args.budget)
    if args.format == "json":
        obj = D.to_json()
        obj["weights"] = [str(a) for a in ws.weights]
        obj["degree"] = str(ws.degree)
        print(json.dumps(obj))
    else:
        print(f"# {ws}  ({D.orientation})")
        print(D.render())
    return EXIT_OK


# -- family ---------------------------------------------------------------------------


def _hypersurface_record(k: int, n: int) -> dict:
    ws, pot = families.family_x(k, n)
    q = charges(pot)
    rec = {
        "family": f"x{k}",
        "dimension": n,
        "degree": str(ws.degree),
        "weights": [str(a) for a in ws.weights],
        "monomials": [[str(e) for e in row] for row in pot.monomials()],
        "calabi_yau": is_calabi_yau(ws),
        "well_formed": well_formed(ws),
        "charges_match_weights": list(q) == [Fraction(a, ws.degree) for a in ws.weights],
        "betti_sum": str(families.betti_sum_closed_form(n)),
        "euler": str(families.euler_closed_form(k, n)),
    }
    if n % 2 == 1:
        rec["middle_dim"] = str(families.middle_dim_closed_form(k, n))
    return rec


def cmd_family(args) -> int:
    name, n = args.family, args.dim
    if name in ("x1", "x2", "x3"):
        rec = _hypersurface_record(int(name[1]), n)
    elif name == "klt-pair":
        rec = families.klt_pair_large_index(n).to_json()
    elif name == "mld-pair":
        rec = families.mld_pair(n).to_json()
    elif name == "terminal-index":
        rec = {"dimension": n, "index": str(families.terminal_index(n)),
               "conjecture": families.CONJECTURES["terminal"]}
    else:
        rec = families.loop_family(n).to_json()
    _emit(rec, args.format)
    ok = all(v for k, v in rec.items() if k in ("calabi_yau", "well_formed", "charges_match_weights"))
    if name == "loop":
        ok = all(rec["checks"].values())
    return EXIT_OK if ok else EXIT_FAIL


# -- verify ---------------------------------------------------------------------------

#: (family, n) -> (h^{1,1}, h^{n-1,1}, h^{2,2}) of X, as displayed in the reference tables.
FIGURE_GOLDENS = {
    (1, 3): (11, 491, None),
    (2, 3): (251, 251, None),
    (3, 3): (491, 11, None),
    (1, 4): (252, 303148, 1213644),
    (2, 4): (151700, 151700, 1213644),
    (3, 4): (303148, 252, 1213644),
}


def check_figure(k: int, n: int, budget: int = hodge.DEFAULT_MAX_SERIES) -> tuple[bool, str]:
    """Compare a computed family diamond with the reference values."""
    ws, _ = families.family_x(k, n)
    D = hodge.diamond(ws, "of-X", max_series=budget)
    h11, hn1, h22 = FIGURE_GOLDENS[(k, n)]
    got = (D[1, 1], D[n - 1, 1], D[2, 2] if h22 is not None else None)
    want = (h11, hn1, h22)
    ok = got == want and not D.symmetry_violations() and not D.off_cross()
    ok = ok and D[0, 0] == D[n, 0] == 1 and all(D[p, 0] == 0 for p in range(1, n))
    ok = ok and D.total() == families.betti_sum_closed_form(n)
    return ok, f"X_{k}^({n}): h11={got[0]} h{n - 1}1={got[1]}" + (f" h22={got[2]}" if n == 4 else "")


_COUNTING_MAX_D = 5000


def counting_trial(rng: random.Random) -> tuple[list[int], int]:
    """A random nonempty pairwise coprime set C of integers >= 2 and a multiple d of its lcm."""
    while True:
        primes = [2, 3, 5, 7, 11, 13, 17, 19, 23]
        rng.shuffle(primes)
        size = rng.randint(1, 4)
        C = [p ** rng.randint(1, 2) for p in primes[:size]]
        # merge two elements into one, keeping pairwise coprimality
        if len(C) > 1 and rng.random() < 0.3:
            C = [C[0] * C[1]] + C[2:]
        L = math.lcm(*C)
        if L <= _COUNTING_MAX_D:
            break
    d = L * rng.randint(1, _COUNTING_MAX_D // L)
    return sorted(C), d


def _brute_counting(C, d) -> int:
    return sum(math.prod(hodge.f_c(c, j) for c in C) for j in range(d))


def cmd_verify(args) -> int:
    failures = []
    if args.suite == "faithfulness":
        def report(n, ok, m):
            line = f"n={n} {'PASS' if ok else 'FAIL'} (m has {m.bit_length()} bits)"
            print(line, flush=True)
            if not ok:
                failures.append(line)

        families.verify_faithfulness_range(args.max_dim, progress=report, keep_m=False)
    elif args.suite == "counting":
        rng = random.Random(args.seed)
        for t in range(args.trials):
            C, d = counting_trial(rng)
            fast, brute = hodge.counting_sum(C, d), _brute_counting(C, d)
            if fast != 0 or brute != 0:
                failures.append(f"trial {t}: C={C} d={d} closed={fast} brute={brute}")
        print(f"counting: {args.trials - len(failures)}/{args.trials} trials gave 0")
    else:
        for (k, n) in FIGURE_GOLDENS:
            ok, msg = check_figure(k, n, args.budget)
            print(f"{'PASS' if ok else 'FAIL'} {msg}", flush=True)
            if not ok:
                failures.append(msg)
    for f in failures:
        print(f"FAIL {f}", file=sys.stderr)
    print("PASS" if not failures else f"FAIL ({len(failures)} failures)")
    return EXIT_OK if not failures else EXIT_FAIL


# -- sweep ----------------------------------------------------------------------------


def sweep_record(item) -> dict:
    """One output row for (line number, WeightSystem or InputError, options)."""
    lineno, ws, budget, with_diamond = item
    rec = {"line": lineno}
    if isinstance(ws, InputError):
        rec.update(status="error", message=str(ws))
        return rec
    rec["weights"] = [str(a) for a in ws.weights]
    rec["degree"] = str(ws.degree)
    if not is_calabi_yau(ws):
        rec["status"] = "not-CY"
        return rec
    if not well_formed(ws):
        rec["status"] = "not-well-formed"
        return rec
    try:
        D = hodge.diamond(ws, "of-X", max_series=budget)
    except UnsupportedInputError as e:
        rec.update(status="unsupported", message=str(e))
        return rec
    except (PoleError, InputError, ArithmeticError) as e:
        rec.update(status="error", message=str(e))
        return rec
    rec.update(status="ok", betti_sum=str(D.total()), euler=str(D.euler()))
    if with_diamond:
        rec["diamond"] = D.to_json()
    return rec


def _summary(rows: list[dict]) -> dict:
    counts = {}
    for r in rows:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    ok = [r for r in rows if r["status"] == "ok"]

    def pick(key, fn):
        if not ok:
            return None
        r = fn(ok, key=lambda r: int(r[key]))
        return {"line": r["line"], "weights": r["weights"], "degree": r["degree"], key: r[key]}

    return {
        "summary": {
            "records": len(rows),
            "statuses": counts,
            "max_betti_sum": pick("betti_sum", max),
            "min_euler": pick("euler", min),
            "max_euler": pick("euler", max),
        }
    }


def default_parallelism() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
    return 1


def run_sweep(lines, parallelism: int = 1, budget: int = hodge.DEFAULT_MAX_SERIES,
              with_diamond: bool = False) -> list[dict]:
    items = [(lineno, ws, budget, with_diamond) for lineno, ws in read_weight_systems(lines)]
    if parallelism <= 1 or len(items) <= 1:
        rows = [sweep_record(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            # map preserves input order
            rows = list(pool.map(sweep_record, items, chunksize=1))
    return rows


def cmd_sweep(args) -> int:
    try:
        with open(args.input) as fh:
            lines = fh.readlines()
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e}")
    par = args.parallelism if args.parallelism is not None else default_parallelism()
    rows = run_sweep(lines, par, args.budget, args.diamonds)
    out = sys.stdout if args.output == "-" else open(args.output, "w")
    try:
        for r in rows:
            out.write(json.dumps(r) + "\n")
        if rows:
            out.write(json.dumps(_summary(rows)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sylvester-cy", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hodge", help="orbifold Hodge diamond of a CY weighted hypersurface")
    h.add_argument("--weights", type=_int_list, required=True)
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--orientation", choices=hodge.ORIENTATIONS, default="of-X")
    h.add_argument("--format", choices=("text", "json"), default="text")
    h.add_argument("--budget", type=int, default=hodge.DEFAULT_MAX_SERIES,
                   help="largest dense series (coefficients) to allocate")
    h.set_defaults(func=cmd_hodge)

    f = sub.add_parser("family", help="construct and check a named family member")
    f.add_argument("family", choices=("x1", "x2", "x3", "klt-pair", "mld-pair", "terminal-index", "loop"))
    f.add_argument("--dim", type=int, required=True)
    f.add_argument("--format", choices=("text", "json"), default="json")
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("faithfulness", "counting", "figures"))
    v.add_argument("--max-dim", type=int, default=20)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=int, default=hodge.DEFAULT_MAX_SERIES)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="Hodge data for every weight system in a file, as JSON lines")
    s.add_argument("input")
    s.add_argument("output", nargs="?", default="-")
    s.add_argument("--parallelism", type=int, default=None,
                   help=f"worker processes (default ${THREADS_ENV} or 1)")
    s.add_argument("--budget", type=int, default=hodge.DEFAULT_MAX_SERIES,
                   help="records needing a longer series are reported as unsupported")
    s.add_argument("--diamonds", action="store_true", help="include full diamonds in each row")
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (PoleError, ConstructionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
