"""Command line entry point: ``erglab <command> [flags]``.

Every command writes one CSV (``--out``, default stdout).  A JSON config
file may supply any flag by its long name; explicit flags win.  Exit codes:
0 pass, 1 verdict failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from . import regvar as rv
from .csvio import write_csv
from .experiments import STATISTICS, exact_resampler, reference_tail, statistic_sampler
from .limits import AlphaLaw, cdf, pdf
from .processes import laplace_product, sample_Zn, kac_values
from .rng import stream
from .stats import convergence_sweep
from . import transfer as tr


class ConfigError(Exception):
    pass


def _int(text) -> int:
    v = float(text)
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
    return int(v)


def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(t) for t in text]
    return [float(t) for t in str(text).strip("[]").split(",") if t.strip()]


def _ints(text):
    return [_int(v) for v in _floats(text)]


def _interval(text):
    vals = _floats(text)  # also accepts a JSON list
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("interval needs two numbers lo,hi")
    return tuple(vals)


def _seed(text) -> int:
    v = _int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    if str(text).lower() in ("1", "true", "yes"):
        return True
    if str(text).lower() in ("0", "false", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text}")


# name: (type, default, help)
COMMON = {
    "seed": (_seed, None, "master seed (unsigned 64-bit)"),
    "out": (str, "-", "output CSV path, '-' for stdout"),
    "threads": (_int, 1, "worker threads"),
}
MODEL = {
    "model": (str, "renewal", "renewal | thaler | lasota_yorke"),
    "tail": (str, "power:0.5", "renewal tail: power:ALPHA | harmonic | invlog"),
    "delay": (_int, 0, "renewal delay cap m (0: start at a renewal)"),
    "A": (_interval, (0.5, 1.0), "reference interval lo,hi for interval maps"),
    "init": (str, "uniform_on_a", "uniform_on_a | lebesgue | lebesgue:lo,hi"),
    "tail_samples": (_int, 10**6, "induced returns used to estimate interval-map tails"),
}
COMMANDS = {
    "simulate": {**MODEL, "n": (_int, 1000, "horizon"), "samples": (_int, 1000, "paths")},
    "tail": {**MODEL, "K": (_int, 1000, "largest k")},
    "limitcheck": {
        **MODEL,
        "stat": (str, "zn_over_n", "|".join(STATISTICS)),
        "law": (str, "xi:0.5", "xi:A | kacx:A | kacy:A | uniform"),
        "nlist": (_ints, [100, 1000, 10000], "increasing horizons"),
        "samples": (_int, 10**4, "paths per horizon"),
        "threshold": (float, 0.05, "final KS gate"),
        "exact": (_bool, False, "resample Z_n from the exact renewal pmf"),
    },
    "ulam": {
        "map": (str, "lasota_yorke", "lasota_yorke | thaler | doubling"),
        "M": (_int, 4096, "number of cells"),
        "A": (_interval, (0.5, 1.0), "reference interval"),
        "nlist": (_ints, [250, 500, 1000, 2000], "checkpoints"),
        "beta": (float, 0.0, "regular-variation exponent of W"),
        "alpha": (float, 1.0, "exponent in a_n W_n ~ n/(Gamma(1+alpha)Gamma(2-alpha))"),
        "burn_in": (_int, 4000, "Cesaro burn-in for the density shape"),
        "n_cesaro": (_int, 8000, "Cesaro length for the density shape"),
        "cut": (float, 0.05, "density shape kept on [cut, 1]"),
        "samples_per_cell": (_int, 0, "0: exact Ulam entries, else Monte-Carlo"),
        "tail_samples": (_int, 10**6, "induced returns for the wandering rate"),
    },
    "regvar": {
        "F": (str, "powerlog:0,1", "powerlog:BETA,GAMMA | loglog"),
        "check": (str, "variation", "variation | inverse | erickson | tauberian | lemma"),
        "lam": (float, 2.0, "scale for the variation check"),
        "x": (float, 0.5, "Erickson level in (0,1)"),
        "grid": (_floats, [1e2, 1e3, 1e4, 1e5, 1e6], "n or x grid"),
        "sgrid": (_floats, [1e-1, 1e-2, 1e-3], "s grid for the Tauberian check"),
        "seq": (float, 0.0, "exponent q of the sequence (k+1)^q (tauberian) or k^q (lemma)"),
        "p": (float, 0.0, "Karamata lemma power"),
        "rho": (float, 1.0, "index rho"),
    },
    "dist": {
        "law": (str, "xi", "xi | kacx | kacy | uniform"),
        "alpha": (float, 0.5, "law parameter"),
        "grid": (_int, 1001, "grid points on [0, 1]"),
    },
    "laplace": {
        "tail": (str, "power:0.5", "renewal tail"),
        "s": (_floats, [1e-1, 1e-2, 1e-3], "Laplace arguments"),
    },
}
STOCHASTIC = {"simulate", "limitcheck", "ulam"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erglab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, opts in COMMANDS.items():
        sp = sub.add_parser(name, argument_default=argparse.SUPPRESS)
        sp.add_argument("--config", type=str, help="JSON file with defaults for any flag")
        for key, (typ, _, help_) in {**COMMON, **opts}.items():
            sp.add_argument(f"--{key}", dest=key, type=typ, help=help_)
    return parser


def resolve(command: str, flags: dict) -> dict:
    """Merge defaults < config file < flags, validating config keys."""
    spec = {**COMMON, **COMMANDS[command]}
    cfg = {}
    if "config" in flags:
        try:
            cfg = json.loads(Path(flags["config"]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        cfg = dict(cfg)
        if cfg.pop("command", command) != command:
            raise ConfigError("config command does not match")
        unknown = sorted(set(cfg) - set(spec))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            cfg = {k: spec[k][0](v) for k, v in cfg.items()}
        except (argparse.ArgumentTypeError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad config value: {exc}") from None
    merged = {k: v[1] for k, v in spec.items()}
    merged.update(cfg)
    merged.update({k: v for k, v in flags.items() if k not in ("command", "config")})
    if command in STOCHASTIC and merged["seed"] is None:
        raise ConfigError(f"{command} needs --seed")
    return merged


def _model(cfg):
    name = cfg["model"]
    if name == "renewal":
        delay = dyn.DelayTail(cfg["delay"]) if cfg["delay"] else dyn.AtRenewal()
        return dyn.RenewalShift(dyn.parse_tail(cfg["tail"]), delay)
    return dyn.make_map(name)


def _init(text):
    name, _, arg = text.partition(":")
    if name == "uniform_on_a":
        return dyn.UniformOnA()
    if name == "lebesgue":
        return dyn.LebesgueOn(*_interval(arg)) if arg else dyn.LebesgueOn()
    raise ValueError(f"unknown initial law {text!r}")


def cmd_simulate(cfg):
    model = _model(cfg)
    n = cfg["n"]
    tail = reference_tail(model, cfg["A"], n, cfg["seed"], cfg["tail_samples"])
    z, entered, _ = sample_Zn(model, cfg["A"], _init(cfg["init"]), n, cfg["samples"], cfg["seed"], threads=cfg["threads"])
    phi, psi = kac_values(z, n, tail)
    rows = [(n, int(a), float(b), float(c)) for a, b, c in zip(z, phi, psi)]
    write_csv(cfg["out"], "simulate", ["n", "Z_n", "phi_n", "psi_n"], rows)
    return 0


def cmd_tail(cfg):
    model = _model(cfg)
    if not isinstance(model, dyn.RenewalShift) and cfg["seed"] is None:
        raise ConfigError("tail estimation for interval maps needs --seed")
    tail = reference_tail(model, cfg["A"], cfg["K"], cfg["seed"] or 0, cfg["tail_samples"])
    write_csv(cfg["out"], "tail", ["k", "t_k", "W_k"], list(tail.rows()))
    return 0


def cmd_limitcheck(cfg):
    model = _model(cfg)
    law = AlphaLaw.parse(cfg["law"])
    stat = cfg["stat"]
    nlist = cfg["nlist"]
    tail = None
    if stat in ("phi", "psi"):
        tail = reference_tail(model, cfg["A"], max(nlist), cfg["seed"], cfg["tail_samples"])
    if cfg["exact"]:
        if not isinstance(model, dyn.RenewalShift):
            raise ConfigError("--exact needs the renewal model")
        gen = exact_resampler(model.tail, stat, tail)
    else:
        gen = statistic_sampler(model, stat, A=cfg["A"], init=_init(cfg["init"]), tail=tail, threads=cfg["threads"])
    verdict = convergence_sweep(gen, law, nlist, cfg["samples"], cfg["threshold"], cfg["seed"])
    write_csv(cfg["out"], "limitcheck", ["n", "samples", "ks", "dkw95", "pass_trend", "pass_gate"], list(verdict.rows()))
    return 0 if verdict.passed else 1


def cmd_ulam(cfg):
    m = dyn.make_map(cfg["map"])
    A = cfg["A"]
    part = tr.Partition.geometric(cfg["M"])
    if cfg["samples_per_cell"]:
        op = tr.build_ulam(m, part, cfg["samples_per_cell"], stream(cfg["seed"], 1))
    else:
        op = tr.build_ulam(m, part)
    nlist = cfg["nlist"]
    K = max(max(nlist), cfg["n_cesaro"] + cfg["burn_in"])
    if m.code == dyn.DOUBLING:
        tail = None
        W = np.arange(1, K + 2, dtype=float)
        A_mass = A[1] - A[0]
    else:
        tail = reference_tail(m, A, K, cfg["seed"], cfg["tail_samples"])
        W, A_mass = tail.W, tail.A_mass
    a = tr.aaronson_scale(W, cfg["alpha"])
    h = tr.estimate_density_shape(op, a, cfg["n_cesaro"], cut=cfg["cut"], A=A, burn_in=cfg["burn_in"])
    ur = tr.check_uniformly_returning(op, A, None, W, nlist, h=h, beta=cfg["beta"], A_mass=A_mass)
    un = tr.check_uniform(op, A, None, a, nlist, h=h, A_mass=A_mass)
    cols = ["n", "sup_ratio", "inf_ratio", "median_ratio"]
    out = cfg["out"]
    write_csv(out, "ulam", cols, [r[:4] for r in ur.rows()])
    if out != "-":
        stem = Path(out)
        write_csv(stem.with_suffix(".uniform.csv"), "ulam", cols, [r[:4] for r in un.rows()])
        keep = ~np.isnan(h)
        write_csv(stem.with_suffix(".density.csv"), "ulam", ["cell_midpoint", "h_value"],
                  list(zip(part.midpoints[keep], h[keep])))
    return 0 if ur.flattening() and un.flattening() else 1


def _regvar_spec(text):
    name, _, arg = text.partition(":")
    if name == "powerlog":
        vals = _floats(arg)
        return rv.power_log(*vals)
    if name == "loglog":
        return rv.log_loglog()
    raise ValueError(f"unknown function {text!r}")


def cmd_regvar(cfg):
    F = _regvar_spec(cfg["F"])
    check = cfg["check"]
    grid = cfg["grid"]
    q = cfg["seq"]
    if check == "variation":
        rows = [(x, float(r)) for x, r in zip(grid, rv.variation_ratio(F, cfg["lam"], grid))]
    elif check == "inverse":
        rows = [(x, rv.asymptotic_inverse(F, rv.evaluate(F, x)) / x) for x in grid]
    elif check == "erickson":
        rows = [(x, rv.erickson_scale(F, x, cfg["x"]) / x) for x in grid]
    elif check == "tauberian":
        partial, laplace = rv.karamata_tauberian_ratio(lambda k: (k + 1.0) ** q, cfg["rho"], None, grid, cfg["sgrid"])
        rows = partial + laplace
    elif check == "lemma":
        rows = rv.karamata_lemma_ratio(lambda k: k.astype(float) ** q, cfg["p"], cfg["rho"], grid)
    else:
        raise ConfigError(f"unknown regvar check {check!r}")
    write_csv(cfg["out"], "regvar", ["n_or_s", "ratio"], rows)
    return 0


def cmd_dist(cfg):
    kind = cfg["law"]
    law = AlphaLaw.uniform() if kind == "uniform" else AlphaLaw.parse(f"{kind}:{cfg['alpha']}")
    x = np.linspace(0.0, 1.0, cfg["grid"])
    write_csv(cfg["out"], "dist", ["x", "pdf", "cdf"], list(zip(x, np.atleast_1d(pdf(law, x)), np.atleast_1d(cdf(law, x)))))
    return 0


def cmd_laplace(cfg):
    tail = dyn.parse_tail(cfg["tail"])
    rows = [(s, laplace_product(tail, s)) for s in cfg["s"]]
    write_csv(cfg["out"], "laplace", ["s", "product"], rows)
    return 0


HANDLERS = {
    "simulate": cmd_simulate,
    "tail": cmd_tail,
    "limitcheck": cmd_limitcheck,
    "ulam": cmd_ulam,
    "regvar": cmd_regvar,
    "dist": cmd_dist,
    "laplace": cmd_laplace,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    flags = vars(ns)
    command = flags["command"]
    try:
        cfg = resolve(command, flags)
        return HANDLERS[command](cfg)
    except ConfigError as exc:
        print(f"erglab: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"erglab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
