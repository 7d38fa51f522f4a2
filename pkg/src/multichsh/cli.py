"""Command-line interface: ``multichsh {sweep,threshold,optimize,verify}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Qubit numbers on the command line are 1-based, as in graph files.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import acceptance, bell, content, families, optimize, qstate
from .channels import PauliChannel

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SWEEP_COLUMNS = ["p", "m_chsh", "prob", "content_bound_paired", "content_bound_weighted",
                 "closed_form", "abs_diff"]


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.12g}"


def _round(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(f"{x:.12g}")


DEFAULTS = {
    "family": "ghz", "graph": None, "n": None, "channel": "dephasing-z",
    "p_min": 0.0, "p_max": 1.0, "steps": 101, "pair": None, "seed": 0,
    "output": None, "format": "csv", "workers": 1, "method": "chsh",
    "inequality": None, "restarts": 32, "max_evals": 2000,
}


def _merge(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        loaded.pop("command", None)
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        cfg.update(loaded)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    return cfg


def _validate(cfg: dict) -> None:
    if not 0 <= cfg["p_min"] <= cfg["p_max"] <= 1:
        raise ConfigError("need 0 <= p_min <= p_max <= 1")
    if int(cfg["steps"]) < 2:
        raise ConfigError("steps must be at least 2")
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if int(cfg["workers"]) < 1:
        raise ConfigError("workers must be positive")
    n = cfg["n"]
    if n is not None and not 1 <= int(n) <= qstate.max_qubits():
        raise ConfigError(f"n={n} outside 1..{qstate.max_qubits()} (set NONLOCAL_MAX_QUBITS to raise the cap)")


def _family(cfg: dict) -> families.Family:
    graph = None
    if cfg["family"] == "graph" and cfg["graph"]:
        graph = qstate.read_graph(cfg["graph"])
    elif cfg["family"] != "graph" and cfg["n"] is None:
        raise ConfigError("--n is required for the ghz and w families")
    pair = None
    if cfg["pair"] is not None:
        pair = tuple(int(i) - 1 for i in cfg["pair"])
        if len(pair) != 2:
            raise ConfigError("pair needs two qubit numbers")
    if cfg["family"] != "graph" and pair is not None:
        raise ConfigError("--pair only applies to the graph family")
    return families.make_family(cfg["family"], None if cfg["n"] is None else int(cfg["n"]),
                                graph, pair)


def _channel(cfg: dict) -> PauliChannel:
    spec = cfg["channel"]
    return PauliChannel.from_config(spec if isinstance(spec, (dict, str)) else str(spec))


def _grid(cfg: dict) -> np.ndarray:
    return np.linspace(cfg["p_min"], cfg["p_max"], int(cfg["steps"]))


def _write(cfg: dict, rows: list[dict], columns: list[str], meta: dict) -> None:
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in columns])
        text = buf.getvalue()
    else:
        text = json.dumps({"config": meta,
                           "rows": [{c: _round(r[c]) for c in columns} for r in rows]},
                          indent=2) + "\n"
    if cfg["output"]:
        Path(cfg["output"]).write_text(text)
    else:
        sys.stdout.write(text)


def _meta(cfg: dict, fam: families.Family, ch: PauliChannel) -> dict:
    return {"family": fam.name, "n": fam.n, "pair": [q + 1 for q in fam.pair],
            "channel": {"kind": ch.kind, "alpha": list(ch.alpha)},
            "p_min": cfg["p_min"], "p_max": cfg["p_max"], "steps": int(cfg["steps"]),
            "seed": cfg["seed"], "method": fam.method}


def cmd_sweep(cfg: dict) -> int:
    fam, ch = _family(cfg), _channel(cfg)
    curve = content.content_curve(fam, ch, _grid(cfg), workers=int(cfg["workers"]),
                                  check_closed_form=None)
    rows = []
    for b in curve:
        closed = b.closed_form
        rows.append({
            "p": b.p, "m_chsh": b.m, "prob": b.prob,
            "content_bound_paired": content.chsh_paired_bound(b.m),
            "content_bound_weighted": content.chsh_weighted_bound(b.m, b.prob),
            "closed_form": closed,
            "abs_diff": None if closed is None else abs(b.m - closed),
        })
    _write(cfg, rows, SWEEP_COLUMNS, _meta(cfg, fam, ch))
    bad = [r for r in rows if r["abs_diff"] is not None and r["abs_diff"] > 1e-9]
    if bad:
        print(f"error: numeric and closed-form values differ at p={bad[0]['p']}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def cmd_threshold(cfg: dict) -> int:
    if cfg["method"] == "mk":
        if cfg["n"] is None:
            raise ConfigError("--n is required for the MK threshold")
        pc = bell.mk_threshold_z(int(cfg["n"]))
        print(f"p_c={pc!r} method=mk-closed-form n={cfg['n']} channel=dephasing-z")
        return 0
    if cfg["method"] != "chsh":
        raise ConfigError("method must be chsh or mk")
    fam, ch = _family(cfg), _channel(cfg)
    pc = families.noise_threshold(fam, ch, steps=int(cfg["steps"]))
    print(f"p_c={pc!r} method=conditioned-chsh family={fam.name} n={fam.n} channel={ch.kind}")
    return 0


def cmd_optimize(cfg: dict) -> int:
    fam, ch = _family(cfg), _channel(cfg)
    ocfg = optimize.OptimizerConfig(restarts=int(cfg["restarts"]), max_evals=int(cfg["max_evals"]),
                                    seed=int(cfg["seed"]), workers=int(cfg["workers"]))
    ineq = None
    if cfg["inequality"]:
        ineqs = bell.load_inequalities(cfg["inequality"])
        if len(ineqs) != 1:
            raise ConfigError(f"{cfg['inequality']}: expected exactly one inequality, found {len(ineqs)}")
        ineq = ineqs[0]
        if ineq.n_parties != fam.n:
            raise ConfigError(f"inequality has {ineq.n_parties} parties but the state has {fam.n} qubits")
    columns = ["p", "value", "local_bound"]
    if ineq is not None and ineq.ns_bound is not None:
        columns += ["ns_bound", "content_bound"]
    rows = []
    for p in _grid(cfg):
        rho = fam.state(ch.with_p(float(p)))
        if ineq is None:
            _, v = optimize.optimize_mk(rho, ocfg)
            local = 1.0
        else:
            _, v = optimize.optimize_inequality(rho, ineq, ocfg)
            local = ineq.local_bound
        row = {"p": float(p), "value": v, "local_bound": local}
        if "content_bound" in columns:
            row["ns_bound"] = ineq.ns_bound
            row["content_bound"] = content.epr2_bound(v, local, ineq.ns_bound)
        rows.append(row)
    _write(cfg, rows, columns, _meta(cfg, fam, ch))
    return 0


def cmd_verify(cfg: dict) -> int:
    results = acceptance.run_all()
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multichsh",
                                     description="Conditioned-CHSH nonlocality of noisy multipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, optimizer=False):
        p.add_argument("--config", help="JSON file with any of the options below")
        p.add_argument("--family", choices=families.FAMILIES)
        p.add_argument("--graph", help="graph file (family=graph)")
        p.add_argument("--n", type=int, help="number of qubits")
        p.add_argument("--channel", help='kind name or JSON, e.g. \'{"alpha": [0.2, 0.3, 0.5]}\'')
        p.add_argument("--p-min", dest="p_min", type=float)
        p.add_argument("--p-max", dest="p_max", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"),
                       help="1-based qubits kept for the CHSH test (family=graph)")
        p.add_argument("--seed", type=int)
        p.add_argument("--output", "-o")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--workers", type=int)

    s = sub.add_parser("sweep", help="conditioned CHSH value and content bounds over a p grid")
    common(s)
    t = sub.add_parser("threshold", help="noise threshold p_c")
    common(t)
    t.add_argument("--method", choices=("chsh", "mk"))
    o = sub.add_parser("optimize", help="numerically optimized MK (or file) inequality per p")
    common(o)
    o.add_argument("--inequality", help="inequality file with a single inequality")
    o.add_argument("--restarts", type=int)
    o.add_argument("--max-evals", dest="max_evals", type=int)
    sub.add_parser("verify", help="run the acceptance suite")
    return parser


COMMANDS = {"sweep": cmd_sweep, "threshold": cmd_threshold,
            "optimize": cmd_optimize, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge(args)
        _validate(cfg)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError, families.NonMonotoneError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
