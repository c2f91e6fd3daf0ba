"""Command-line front end.

Every subcommand loads a presentation (``--input`` JSON or ``--builtin kind:n``),
runs one computation and prints a JSON (or plain table) report.  Reports are
deterministic: same arguments and seed, same bytes.

Exit codes: 0 success, 2 malformed input, 3 unsupported grading,
4 precondition violation (a twist or class that is not a cocycle).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import List, Optional

from .arith import RingMismatchError
from .cochain import (Cochain, NotCocycleError, class_equal, cohomology_window, is_cocycle,
                      random_cocycle)
from .conn import (Connection, c1, chern_character, curvature, matrix_to_json,
                   random_connection, trace_curvature)
from .env import RewriteSystem, diamond_check, word_from_json
from .kledger import k_c1, kernel_eta, kernel_omega
from .lralg import (InvalidPresentationError, LieRinehart, UnsupportedGradingError,
                    make_standard_algebra)
from .vki import build_vki, curvature_report, line_class, psi_formal, rank_check, rank_formula

EXIT_OK, EXIT_INPUT, EXIT_GRADING, EXIT_PRECONDITION = 0, 2, 3, 4

COMMANDS = ("cohomology", "axioms", "confluence", "normal-form", "vki", "chern", "psi",
            "kernel-demo")


class InputError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    input: Optional[str] = None
    builtin: Optional[str] = None
    output: str = "json"
    seed: int = 0
    window: int = 4
    p: Optional[int] = None
    k: Optional[str] = None
    i: Optional[str] = None
    d: Optional[int] = None
    mode: str = "twisted"
    strategy: str = "window"
    cochain: List[str] = field(default_factory=list)
    connection: Optional[str] = None
    rank: Optional[int] = None
    word: Optional[str] = None
    random: int = 0
    samples: int = 3
    rank_table: bool = False
    describe: bool = False

    @classmethod
    def from_mapping(cls, data) -> "JobConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        if data.get("command") not in COMMANDS:
            raise InputError(f"unknown command {data.get('command')!r}")
        cfg = cls(**data)
        if cfg.output not in ("json", "table"):
            raise InputError("output must be json or table")
        if isinstance(cfg.cochain, str):
            cfg.cochain = [cfg.cochain]
        return cfg

    def params(self):
        out = {k: v for k, v in asdict(self).items() if v not in (None, [], False)}
        out.pop("output", None)
        return out


# -- loading -----------------------------------------------------------------------

def _load_json(source: str):
    """``source`` is inline JSON or a path to a JSON file."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source[:40]!r}: {exc.msg}") from exc


def load_presentation(cfg: JobConfig) -> LieRinehart:
    if cfg.input and cfg.builtin:
        raise InputError("give either --input or --builtin, not both")
    if cfg.builtin:
        kind, _, n = cfg.builtin.partition(":")
        try:
            return make_standard_algebra(kind, int(n or 2))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if not cfg.input:
        raise InputError("a presentation is required (--input PATH or --builtin kind:n)")
    data = _load_json(cfg.input)
    if not isinstance(data, dict):
        raise InputError("a presentation is a JSON object")
    return LieRinehart.from_json(data, name=Path(cfg.input).stem)


def _ints(text, what) -> List[int]:
    if text is None:
        raise InputError(f"--{what} is required")
    try:
        vals = [int(t) for t in str(text).split(",")]
    except ValueError as exc:
        raise InputError(f"--{what} expects integers") from exc
    if any(v < 1 for v in vals):
        raise InputError(f"--{what} values must be >= 1")
    return vals


def _one_int(text, what) -> int:
    vals = _ints(text, what)
    if len(vals) != 1:
        raise InputError(f"--{what} expects a single integer here")
    return vals[0]


def _cochains(P, cfg) -> List[Cochain]:
    out = []
    for source in cfg.cochain:
        data = _load_json(source)
        if isinstance(data, list):
            out.extend(Cochain.from_json(P, item) for item in data)
        else:
            out.append(Cochain.from_json(P, data))
    return out


def _twist(P, cfg) -> Cochain:
    cs = _cochains(P, cfg)
    if len(cs) > 1:
        raise InputError("expected a single --cochain")
    f = cs[0] if cs else Cochain.zero(P, 2)
    if f.degree != 2:
        raise InputError("the twist must be a 2-cochain")
    return f


# -- commands ----------------------------------------------------------------------

def cmd_cohomology(P, cfg):
    degrees = [cfg.p] if cfg.p is not None else list(range(P.rank + 1))
    reports = [cohomology_window(P, p, cfg.window) for p in degrees]
    out = {"betti": [r.dimension for r in reports], "degrees": degrees,
           "reports": [r.to_json() for r in reports]}
    if cfg.p is not None:
        out["dimension"] = reports[0].dimension
    return out


def cmd_axioms(P, cfg):
    return P.check_axioms(seed=cfg.seed, samples=cfg.samples).to_json()


def cmd_confluence(P, cfg):
    f = _twist(P, cfg)
    S = RewriteSystem(P, f, cfg.mode)
    report = diamond_check(S)
    out = report.to_json()
    out["f_is_cocycle"] = is_cocycle(f)
    return out


def cmd_normal_form(P, cfg):
    if cfg.word is None:
        raise InputError("--word is required")
    S = RewriteSystem(P, _twist(P, cfg), cfg.mode)
    word = word_from_json(P, _load_json(cfg.word))
    u = S.normal_form(word)
    return {"mode": cfg.mode, "normal_form": u.to_json(), "text": str(u), "degree": u.degree()}


def cmd_vki(P, cfg):
    if cfg.rank_table:
        rows = [rank_check(k, i, l).to_json()
                for l in range(1, 5) for k in range(1, 5) for i in range(1, 5)]
        return {"cases": rows, "all_ok": all(r["ok"] for r in rows)}
    k, i = _one_int(cfg.k, "k"), _one_int(cfg.i, "i")
    f = _twist(P, cfg)
    if not is_cocycle(f):
        raise NotCocycleError("the twist f is not a cocycle")
    V = build_vki(RewriteSystem(P, f, "twisted"), k, i)
    report = curvature_report(V)
    out = V.to_json(report)
    out["rank_formula"] = rank_formula(k, i, P.rank)
    out["notes"] = report.notes
    return out


def cmd_chern(P, cfg):
    if cfg.connection is not None:
        conn = Connection.from_json(P, _load_json(cfg.connection))
    elif cfg.rank is not None:
        conn = random_connection(P, cfg.rank, random.Random(cfg.seed))
    else:
        raise InputError("--connection or --rank is required")
    tr = trace_curvature(conn)
    cls = c1(conn, cfg.window)
    return {"connection": conn.to_json(),
            "curvature": {f"{a + 1},{b + 1}": matrix_to_json(m)
                          for (a, b), m in sorted(curvature(conn).items())},
            "trace": tr.to_json(), "c1": tr.to_json(), "c1_is_zero": cls.is_zero(),
            "ch": chern_character(conn).to_json()}


def cmd_psi(P, cfg):
    cs = _cochains(P, cfg)
    if len(cs) != 1:
        raise InputError("psi needs exactly one --cochain class")
    c = cs[0]
    if not is_cocycle(c):
        raise NotCocycleError("the class representative is not a cocycle")
    k, i = _one_int(cfg.k, "k"), _one_int(cfg.i, "i")
    r = rank_formula(k, i, P.rank)
    d = cfg.d if cfg.d is not None else r
    if not 1 <= d <= r:
        raise InputError(f"--d must lie in 1..{r}")
    psi = psi_formal(c, k, i)
    line = line_class(c, k, i, d)
    zero = Cochain.zero(P, 2)
    line_c1_zero = class_equal(k_c1(line), zero, cfg.window)
    return {"rank": r,
            "psi": psi.to_json(), "psi_c1_matches": class_equal(k_c1(psi), c, cfg.window),
            "line": line.to_json(), "line_rank": line.rank(),
            "line_c1_zero": line_c1_zero,
            "flat_connection_possible": line_c1_zero,
            "verdict": ("flat connection not excluded" if line_c1_zero
                        else "no flat connection possible")}


def cmd_kernel_demo(P, cfg):
    F = _cochains(P, cfg)
    rng = random.Random(cfg.seed)
    F += [random_cocycle(P, rng) for _ in range(cfg.random)]
    if not F:
        raise InputError("kernel-demo needs --cochain classes or --random N")
    n = len(F)
    ks = _ints(cfg.k, "k") if cfg.k is not None else [1] * n
    is_ = _ints(cfg.i, "i") if cfg.i is not None else [1] * n
    if len(ks) == 1:
        ks = ks * n
    if len(is_) == 1:
        is_ = is_ * n
    if len(ks) != n or len(is_) != n:
        raise InputError("--k and --i lists must match the number of classes")
    eta = kernel_eta(F, ks, is_, window=cfg.window)
    omega = kernel_omega(F, ks, is_, window=cfg.window)
    return {"classes": [x.to_json() for x in F], "k": ks, "i": is_,
            "eta": eta.to_json(), "omega": omega.to_json()}


HANDLERS = {"cohomology": cmd_cohomology, "axioms": cmd_axioms, "confluence": cmd_confluence,
            "normal-form": cmd_normal_form, "vki": cmd_vki, "chern": cmd_chern,
            "psi": cmd_psi, "kernel-demo": cmd_kernel_demo}


# -- output ------------------------------------------------------------------------

def render(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    lines = []
    for key in sorted(report):
        val = report[key]
        if not isinstance(val, (str, int, float, bool)) and val is not None:
            val = json.dumps(val, sort_keys=True, ensure_ascii=False)
        lines.append(f"{key:<28} {val}")
    return "\n".join(lines) + "\n"


def run_job(cfg: JobConfig) -> dict:
    P = load_presentation(cfg)
    if cfg.describe:
        return {"command": "describe", "presentation": P.to_json(), "seed": cfg.seed}
    if cfg.mode not in ("twisted", "central"):
        raise InputError("--mode must be twisted or central")
    report = HANDLERS[cfg.command](P, cfg)
    report["command"] = cfg.command
    report["seed"] = cfg.seed
    report["config"] = cfg.params()
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lierinehart",
                                     description="Lie-Rinehart cohomology and connection workbench")
    parser.add_argument("--config", help="JSON job file; its keys replace the command line")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="presentation JSON file")
        p.add_argument("--builtin", help="standard algebra, e.g. torus:2, affine:1, point-abelian:3")
        p.add_argument("--describe", action="store_true", help="print the presentation and exit")
        p.add_argument("--output", choices=("json", "table"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--window", type=int, default=4, help="multidegree window D")
        p.add_argument("--mode", default="twisted", help="twisted or central")
        p.add_argument("--cochain", action="append", default=[],
                       help="cochain JSON (inline or file); repeatable")
        if name == "cohomology":
            p.add_argument("--p", type=int)
        if name == "axioms":
            p.add_argument("--samples", type=int, default=3)
        if name == "normal-form":
            p.add_argument("--word", help="word JSON (inline or file)")
        if name in ("vki", "psi", "kernel-demo"):
            p.add_argument("--k")
            p.add_argument("--i")
        if name == "vki":
            p.add_argument("--rank-table", action="store_true",
                           help="rank formula check for 1 <= l, k, i <= 4")
        if name == "psi":
            p.add_argument("--d", type=int)
        if name == "chern":
            p.add_argument("--connection", help="connection JSON (inline or file)")
            p.add_argument("--rank", type=int, help="use a seeded random connection of this rank")
        if name == "kernel-demo":
            p.add_argument("--random", type=int, default=0, help="add N seeded random cocycles")
    return parser


def _config_from_args(args) -> JobConfig:
    if args.config:
        data = _load_json(args.config)
        if not isinstance(data, dict):
            raise InputError("a job file is a JSON object")
        return JobConfig.from_mapping(data)
    if args.command is None:
        raise InputError("a subcommand is required")
    data = {k: v for k, v in vars(args).items() if k != "config"}
    return JobConfig.from_mapping(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        report = run_job(cfg)
    except NotCocycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except UnsupportedGradingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRADING
    except (InputError, InvalidPresentationError, RingMismatchError, ValueError,
            IndexError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render(report, cfg.output))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
