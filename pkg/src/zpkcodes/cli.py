"""Command-line front end.

Exit codes: 0 success (and, for ``verify``, no counterexample); 1 internal
failure or selftest failure; 2 usage, config or input errors; 3 ``verify``
emitted a counterexample candidate; 4 a guard stopped the run (partial
report saved).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import report as R
from .codes import Code, GuardExceeded, default_guard
from .graph import DEFAULT_VERTEX_GUARD, ZeroColumnError, srg_report
from .matrixio import MatrixParseError, load_matrix
from .ring import RingSpec
from .search import (
    DEFAULT_WORK_GUARD,
    SearchConfigError,
    SearchSpace,
    sweep,
    verify_nonexistence,
)

log = logging.getLogger("zpkcodes")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_COUNTEREXAMPLE, EXIT_GUARD = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


def _write(out: str | None, json_text: str, tsv_text: str, as_json: bool) -> None:
    if out:
        Path(out + ".json").write_text(json_text)
        Path(out + ".tsv").write_text(tsv_text)
    sys.stdout.write(json_text if as_json else tsv_text)


def _load_code(path: str, guard: int) -> tuple[Code, list[str]]:
    mf = load_matrix(path)
    return Code(mf.matrix, mf.spec, guard=guard), mf.warnings


def cmd_analyze(args) -> int:
    C, warnings = _load_code(args.matrix, args.guard)
    rep = R.code_report(C, warnings)
    _write(args.out, R.dumps(rep), R.key_value_tsv(rep), args.json)
    return EXIT_OK


def cmd_graph(args) -> int:
    C, warnings = _load_code(args.matrix, args.guard)
    D = C.dual() if args.of_dual else C
    srg = srg_report(D, vertex_guard=args.vertex_guard)
    rep = {
        "code": R.code_report(C, warnings),
        "graph_of": "dual" if args.of_dual else "code",
        "srg": R.srg_dict(srg),
    }
    if srg.closed_form_residual >= args.tolerance:
        rep["srg"]["notes"].append(f"closed-form residual exceeds tolerance {args.tolerance}")
    _write(args.out, R.dumps(rep), R.key_value_tsv(rep), args.json)
    return EXIT_OK


# -- search configuration ----------------------------------------------------------

SPACE_KEYS = {
    "p": int, "k": int, "ell_max": int, "n_min": int, "n_max": int,
    "regular": bool, "projective": bool, "dual_distance_min": int,
    "two_weight_only": bool, "work_guard": int, "workers": int,
    "vertex_guard": int, "guard": int, "resume": int,
}


def _parse_bool(s: str) -> bool:
    low = s.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {s!r}")


def read_config(path: str) -> dict:
    out = {}
    for no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in SPACE_KEYS:
            raise ConfigError(f"{path}:{no}: unknown key {key!r}")
        try:
            out[key] = _parse_bool(val) if SPACE_KEYS[key] is bool else int(val)
        except ValueError:
            raise ConfigError(f"{path}:{no}: bad value {val!r} for {key}") from None
    return out


def _space_settings(args, defaults: dict) -> dict:
    settings = dict(defaults)
    if args.config:
        settings.update(read_config(args.config))
    for key in SPACE_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    missing = [k for k in ("p", "k", "ell_max", "n_max") if k not in settings]
    if missing:
        raise ConfigError(f"missing search settings: {', '.join(missing)}")
    return settings


def _build_space(s: dict) -> SearchSpace:
    try:
        spec = RingSpec(s["p"], s["k"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SearchSpace(
        spec,
        ell_max=s["ell_max"],
        n_max=s["n_max"],
        n_min=s.get("n_min", 1),
        require_regular=s.get("regular", False),
        require_projective=s.get("projective", False),
        dual_distance_min=s.get("dual_distance_min", 0),
        two_weight_only=s.get("two_weight_only", False),
        work_guard=s.get("work_guard", DEFAULT_WORK_GUARD),
    )


def _search_tsv(rep: dict) -> str:
    header = ["two_weight", "regular", f"dual_distance>={rep['space']['dual_distance_min']}", "candidates", "hits"]
    rows = [[row[h] for h in header] for row in rep["combinations"]]
    return R.table_tsv(header, rows)


def _run_sweep(args, verify: bool) -> int:
    # collisions are recorded per hit in the report; one log line per candidate is noise
    logging.getLogger("zpkcodes.graph").setLevel(logging.ERROR)
    defaults = {"dual_distance_min": 4} if verify else {}
    s = _space_settings(args, defaults)
    space = _build_space(s)
    kw = dict(start=s.get("resume", 0), workers=s.get("workers", 1),
              guard=s.get("guard", args.guard), vertex_guard=s.get("vertex_guard", DEFAULT_VERTEX_GUARD))
    if verify:
        rep = verify_nonexistence(space, **kw)
    else:
        rep = sweep(space, keep_two_weight=space.spec.p == 2, **kw)
    _write(args.out, R.dumps(rep), _search_tsv(rep), args.json)
    if not rep["complete"]:
        log.error("partial run: resume token %s", rep["resume_token"])
        return EXIT_GUARD
    if verify and rep["hit_count"]:
        log.error("%d counterexample candidate(s) emitted", rep["hit_count"])
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_search(args) -> int:
    return _run_sweep(args, verify=False)


def cmd_verify(args) -> int:
    return _run_sweep(args, verify=True)


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest()
    for name, ok, detail in results:
        sys.stdout.write(f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


def _add_output(p):
    p.add_argument("--out", help="write PREFIX.json and PREFIX.tsv")
    p.add_argument("--json", action="store_true", help="print JSON instead of TSV")


def _add_space(p):
    p.add_argument("--config", help="key=value search config file")
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ell-max", dest="ell_max", type=int)
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--regular", action="store_true", default=None)
    p.add_argument("--projective", action="store_true", default=None)
    p.add_argument("--dual-distance-min", dest="dual_distance_min", type=int)
    p.add_argument("--two-weight-only", dest="two_weight_only", action="store_true", default=None)
    p.add_argument("--work-guard", dest="work_guard", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--vertex-guard", dest="vertex_guard", type=int)
    p.add_argument("--resume", type=int, help="resume token from a partial run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zpk", description="Two-weight codes over Z_{p^k} and their coset graphs")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--guard", type=int, default=None, help="codeword enumeration guard")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="weights, dual distance and predicates of a code")
    p.add_argument("matrix")
    _add_output(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="coset graph SRG report")
    p.add_argument("matrix")
    p.add_argument("--of-dual", action="store_true", help="build the coset graph of the dual code")
    p.add_argument("--vertex-guard", type=int, default=DEFAULT_VERTEX_GUARD)
    p.add_argument("--tolerance", type=float, default=1e-6)
    _add_output(p)
    p.set_defaults(func=cmd_graph)

    for name, func, help_ in (("search", cmd_search, "exhaustive sweep"),
                              ("verify", cmd_verify, "nonexistence check for odd p, k >= 2")):
        p = sub.add_parser(name, help=help_)
        _add_space(p)
        _add_output(p)
        p.set_defaults(func=func)

    p = sub.add_parser("selftest", help="run the built-in invariant checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.guard is None:
        try:
            args.guard = default_guard()
        except ValueError as exc:
            log.error("%s", exc)
            return EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, SearchConfigError, MatrixParseError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except ZeroColumnError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except GuardExceeded as exc:
        log.error("%s", exc)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
