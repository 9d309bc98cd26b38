"""``qbio`` command-line interface.

Subcommands::

    qbio bounds {clock,folding,metabolic,energy,motor,debroglie,decoherence,tunneling,all}
    qbio grover [--N N] [--Q Q] [--simulate]
    qbio lindblad {dephase,doublewell,zeno,dfs}
    qbio search {classical,grover,mcfadden}

Exit codes: 0 success, 2 bad usage or invalid values, 3 numerical failure.
Physical flags accept unit suffixes (``1e-19g``, ``0.4nm``, ``10pN``).
``--config FILE`` reads flat ``key = value`` lines; flags on the command
line win. ``QBIO_SEED`` supplies the seed when ``--seed`` is absent.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, bounds, grover, lindblad, replicator
from .errors import IntegrationError, QbioError
from .report import Report, header_lines
from .units import (
    ENERGY,
    FORCE,
    LENGTH,
    MASS,
    RATE,
    RATE_PER_FORCE,
    TEMPERATURE,
    VELOCITY,
    Quantity,
    parse_quantity,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    """Invalid user input; reported with exit code 2."""


# ---------------------------------------------------------------------------
# argument types

def qty(dims, positive=True, allow_zero=False):
    def parse(text):
        try:
            value = parse_quantity(text, expect=dims)
        except (ValueError, QbioError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        if positive and not (value.value > 0 or (allow_zero and value.value == 0)):
            raise argparse.ArgumentTypeError(f"must be {'nonnegative' if allow_zero else 'positive'}, got {text!r}")
        return value

    parse.__name__ = "quantity"
    return parse


def positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return v


def nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v >= 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return v


def positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text!r}")
    return v


def nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return v


def float_list(text):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not vals or any(v < 0 or not math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"need nonnegative numbers, got {text!r}")
    return vals


def marked_arg(text):
    if text == "all":
        return "all"
    return positive_int(text)


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser, fmt_default="table"):
    p.add_argument("--format", choices=("table", "csv", "json"), default=fmt_default)
    p.add_argument("--output", "-o", metavar="PATH", help="write data (CSV) or the report here")
    p.add_argument("--plot", metavar="PATH", help="also render a static SVG/PNG plot")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", metavar="PATH", help="flat key = value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbio", description="Quantum bounds and simulations for biophysics.")
    parser.add_argument("--version", action="version", version=f"qbio {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    # bounds ---------------------------------------------------------------
    pb = sub.add_parser("bounds", help="closed-form quantum bounds")
    bsub = pb.add_subparsers(dest="which", required=True)

    p = bsub.add_parser("clock", help="quantum clock run-time limit m·l²/ħ")
    p.add_argument("--mass", type=qty(MASS), default=parse_quantity("1e-22kg"))
    p.add_argument("--size", type=qty(LENGTH), default=parse_quantity("1e-5m"))
    _common(p)

    p = bsub.add_parser("folding", help="protein folding-time limit m₀a²N³/ħ")
    p.add_argument("--N", type=positive_int, default=100)
    p.add_argument("--residue-mass", type=qty(MASS), default=bounds.DEFAULT_RESIDUE_MASS)
    p.add_argument("--residue-length", type=qty(LENGTH), default=bounds.DEFAULT_RESIDUE_LENGTH)
    p.add_argument("--regime", choices=sorted(bounds.FOLDING_EXPONENTS), default="extended")
    _common(p)

    p = bsub.add_parser("metabolic", help="allometric metabolic rate a·W^β")
    p.add_argument("--W", type=qty(MASS), default=parse_quantity("1kg"))
    p.add_argument("--a", type=positive_float, default=1.0)
    p.add_argument("--beta", type=float, default=0.75)
    _common(p)

    p = bsub.add_parser("energy", help="quantized energy nħω")
    p.add_argument("--n", type=nonneg_int, default=1)
    p.add_argument("--omega", type=qty(RATE), default=parse_quantity("1e13", RATE))
    _common(p)

    p = bsub.add_parser("motor", help="molecular motor velocity bound and load response")
    p.add_argument("--mass", type=qty(MASS), default=parse_quantity("1e-19g"))
    p.add_argument("--length", type=qty(LENGTH), default=parse_quantity("1e-3cm"))
    p.add_argument("--v0", type=qty(RATE), default=parse_quantity("100bp/s"))
    p.add_argument("--slope", type=qty(RATE_PER_FORCE), default=parse_quantity("3bp/s/pN"))
    p.add_argument("--tension", type=qty(FORCE, allow_zero=True), default=parse_quantity("0pN"))
    _common(p)

    p = bsub.add_parser("debroglie", help="de Broglie wavelength h/(mv)")
    p.add_argument("--mass", type=qty(MASS), default=parse_quantity("1.47e-18kg"))
    p.add_argument("--velocity", type=qty(VELOCITY), default=parse_quantity("1e-7m/s"))
    _common(p)

    p = bsub.add_parser("decoherence", help="thermal decoherence time of a spatial superposition")
    p.add_argument("--mass", type=qty(MASS), default=parse_quantity("500Da"))
    p.add_argument("--temperature", type=qty(TEMPERATURE), default=parse_quantity("300K"))
    p.add_argument("--dx", type=qty(LENGTH), default=parse_quantity("1nm"))
    p.add_argument("--gamma", type=qty(RATE), default=bounds.DEFAULT_DAMPING_RATE)
    _common(p)

    p = bsub.add_parser("tunneling", help="rectangular-barrier transmission probability")
    p.add_argument("--energy", type=qty(ENERGY), default=parse_quantity("0.25eV"))
    p.add_argument("--barrier", type=qty(ENERGY), default=parse_quantity("0.5eV"))
    p.add_argument("--width", type=qty(LENGTH), default=parse_quantity("0.5Å"))
    p.add_argument("--mass", type=qty(MASS), default=parse_quantity("1Da"))
    _common(p)

    p = bsub.add_parser("all", help="every bound at its default inputs")
    _common(p)

    # grover ---------------------------------------------------------------
    p = sub.add_parser("grover", help="Grover iteration condition and simulation")
    p.add_argument("--N", type=float, default=None, help="database size")
    p.add_argument("--Q", type=nonneg_int, default=None, help="number of queries")
    p.add_argument("--marked", type=positive_int, default=1)
    p.add_argument("--simulate", action="store_true")
    _common(p)

    # lindblad -------------------------------------------------------------
    pl = sub.add_parser("lindblad", help="open-system scenarios")
    lsub = pl.add_subparsers(dest="scenario", required=True)

    p = lsub.add_parser("dephase", help="qubit pure dephasing from |+⟩")
    p.add_argument("--gamma", type=nonneg_float, default=0.5)
    p.add_argument("--omega", type=float, default=0.0)
    p.add_argument("--t", type=positive_float, default=4.0)
    p.add_argument("--dt", type=positive_float, default=None)
    _common(p)

    for name, help_ in (("doublewell", "double-well synchrony"), ("zeno", "Zeno survival in the left well")):
        p = lsub.add_parser(name, help=help_)
        p.add_argument("--omega1", type=positive_float, default=1.0)
        p.add_argument("--omega2", type=positive_float, default=1.5)
        p.add_argument("--gap", type=float, default=5.0)
        p.add_argument("--gamma", type=nonneg_float, default=0.0)
        p.add_argument("--t", type=positive_float, default=None)
        p.add_argument("--dt", type=positive_float, default=None)
        if name == "zeno":
            p.add_argument("--gamma-grid", type=float_list, default=None, help="comma list; sweep in parallel")
            p.add_argument("--workers", type=positive_int, default=1)
        _common(p)

    p = lsub.add_parser("dfs", help="entanglement under collective or independent dephasing")
    p.add_argument("--gamma", type=nonneg_float, default=1.0)
    p.add_argument("--omega", type=nonneg_float, default=0.0)
    p.add_argument("--t", type=positive_float, default=10.0)
    p.add_argument("--dt", type=positive_float, default=None)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--collective", dest="collective", action="store_true", default=True)
    g.add_argument("--independent", dest="collective", action="store_false")
    p.add_argument("--gamma-grid", type=float_list, default=None, help="comma list; sweep in parallel")
    p.add_argument("--workers", type=positive_int, default=1)
    _common(p)

    # search ---------------------------------------------------------------
    ps = sub.add_parser("search", help="replicator search models")
    ssub = ps.add_subparsers(dest="model", required=True)
    for name in ("classical", "grover", "mcfadden"):
        p = ssub.add_parser(name)
        p.add_argument("--b", type=positive_int, default=2, help="alphabet size")
        p.add_argument("--n", type=positive_int, default=10, help="sequence length")
        p.add_argument("--marked", type=marked_arg, default=1, help="replicator count or 'all'")
        if name == "classical":
            p.add_argument("--trials", type=positive_int, default=10000)
            p.add_argument("--max-draws", type=positive_int, default=None)
            p.add_argument("--workers", type=positive_int, default=1)
            p.add_argument("--bins", type=positive_int, default=50)
        if name == "mcfadden":
            p.add_argument("--J", type=positive_float, default=1.0)
            p.add_argument("--kappa", type=positive_float, default=1.0)
            p.add_argument("--t-max", type=positive_float, default=50.0)
            p.add_argument("--dt", type=positive_float, default=None)
        _common(p)
    return parser


# ---------------------------------------------------------------------------
# config handling

def read_config(path: str) -> list[tuple[str, str]]:
    items = []
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config {path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise UsageError(f"--config {path}:{lineno}: empty key")
        items.append((key.replace("_", "-"), value))
    return items


def expand_config(argv: list[str]) -> list[str]:
    """Splice config-file entries in front of the command-line flags."""
    argv = list(argv)
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            del argv[i : i + 2]
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            del argv[i]
            break
    if path is None:
        return argv
    n_pos = 0
    while n_pos < len(argv) and not argv[n_pos].startswith("-") and n_pos < 2:
        n_pos += 1
    tokens = []
    for key, value in read_config(path):
        if value.lower() in ("true", "yes", "on"):
            tokens.append(f"--{key}")
        elif value.lower() in ("false", "no", "off"):
            continue
        else:
            tokens.append(f"--{key}={value}")
    return argv[:n_pos] + tokens + argv[n_pos:]


def resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("QBIO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"QBIO_SEED must be an integer, got {env!r}") from None
    return 0


def echo(args, skip=("format", "output", "plot", "config", "command", "which", "scenario", "model")) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in skip or v is None:
            continue
        if isinstance(v, Quantity):
            v = f"{v.value!r} SI"
        elif isinstance(v, list):
            v = ",".join(repr(x) for x in v)
        out[k] = str(v)
    return out


# ---------------------------------------------------------------------------
# bounds

def _bounds_rows(which: str, a, rep: Report):
    if which == "clock":
        t = bounds.wigner_clock_limit(bounds.ClockSpec(a.mass, a.size))
        rep.add("T_max", t.value, "s", "m*l^2/hbar", "clock-bound")
    elif which == "folding":
        spec = bounds.ProteinSpec(a.N, a.residue_mass, a.residue_length)
        t = bounds.folding_time_limit(spec)
        sc = bounds.folding_scaling(a.N, a.regime)
        rep.add("T_max", t.value, "s", "m0*a^2*N^3/hbar", "folding-bound")
        rep.add("scaling_exponent", str(sc.exponent), "", f"T ~ N^p ({a.regime})", "folding-scaling")
        rep.add("relative_time", sc.relative_time, "", "N^p / 1^p", "folding-scaling")
    elif which == "metabolic":
        p = bounds.metabolic_rate(a.W, a.a, a.beta)
        rep.add("P", p.value, "W", "a*W^beta", "allometric")
    elif which == "energy":
        e = bounds.quantized_energy(a.n, a.omega)
        rep.add("E", e.value, "J", "n*hbar*omega", "quantized-energy")
    elif which == "motor":
        spec = bounds.MotorSpec(a.mass, a.length, a.v0, a.slope)
        v = bounds.motor_velocity_bound(spec)
        rep.add("v_char", v.to("cm/s"), "cm/s", "hbar/(m*L)", "motor-bound")
        rep.add("v_char_si", v.value, "m/s", "hbar/(m*L)", "motor-bound")
        rep.add("v_zero_load", bounds.bp_rate_to_velocity(spec.zero_load_speed).to("cm/s"), "cm/s",
                "v0 * 0.34 nm/bp", "motor-data")
        resp = bounds.motor_speed_under_tension(a.tension, spec)
        rep.add("speed_at_tension", resp.speed.value, "bp/s", "max(0, v0 - k*F)", "motor-load")
        rep.add("stall_force", resp.stall_force.to("pN"), "pN", "v0/k", "motor-load")
        rep.add("stall_ratio_vs_40pN", bounds.stall_residual(spec), "", "stall/40 pN", "motor-load")
        rep.note("v > hbar/(m*L) is read as a characteristic (maximum) speed; inequality direction left to the reader")
        rep.note("linear load model stall force differs from the reported ~40 pN; see stall_ratio_vs_40pN")
    elif which == "debroglie":
        lam = bounds.de_broglie(a.mass, a.velocity)
        rep.add("wavelength", lam.to("nm"), "nm", "h/(m*v)", "de-broglie")
    elif which == "decoherence":
        tau = bounds.thermal_decoherence_time(a.mass, a.temperature, a.dx, a.gamma)
        rep.add("tau_D", tau.value, "s", "hbar^2/(2*m*gamma*kB*T*dx^2)", "decoherence-time")
    elif which == "tunneling":
        tr = bounds.barrier_transmission(a.energy, a.barrier, a.width, a.mass)
        rep.add("transmission", tr, "", "rectangular barrier", "tunneling")
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown bound {which!r}")


BOUND_NAMES = ("clock", "folding", "metabolic", "energy", "motor", "debroglie", "decoherence", "tunneling")


def cmd_bounds(args) -> tuple[Report, object]:
    rep = Report(f"bounds {args.which}", echo(args))
    if args.which == "all":
        parser = build_parser()
        for name in BOUND_NAMES:
            sub = parser.parse_args(["bounds", name])
            part = Report(name)
            _bounds_rows(name, sub, part)
            for r in part.rows:
                r.name = f"{name}.{r.name}"
                rep.rows.append(r)
            rep.notes.extend(part.notes)
    else:
        _bounds_rows(args.which, args, rep)
    return rep, None


# ---------------------------------------------------------------------------
# grover

def cmd_grover(args) -> tuple[Report, object]:
    rep = Report("grover", echo(args))
    if args.N is None and args.Q is None:
        for Q in (1, 2, 3):
            rep.add(f"N(Q={Q})", grover.items_for_iterations(Q), "", "1/sin^2(pi/(2(2Q+1)))", "grover-condition")
        return rep, None
    Q = args.Q
    if args.Q is not None and args.N is None:
        N = grover.items_for_iterations(args.Q)
        rep.add("N", N, "", "1/sin^2(pi/(2(2Q+1)))", "grover-condition")
        rep.add("N_floor", math.floor(N))
        rep.add("N_ceil", math.ceil(N))
    if args.N is not None:
        if args.N < 1:
            raise UsageError(f"--N must be at least 1, got {args.N!r}")
        it = grover.optimal_iterations(args.N)
        rep.add("Q_real", it.q_real, "", "pi/(4*asin(1/sqrt(N))) - 1/2", "grover-condition")
        rep.add("Q_int", it.q_int, "", "round half away from zero", "grover-condition")
        if Q is None:
            Q = it.q_int
        if args.N >= 2 and float(args.N).is_integer():
            eff = grover.sampling_efficiency(int(args.N))
            rep.add("classical_expected_trials", eff.classical_expected_trials, "", "N", "sampling")
            rep.add("quantum_queries", eff.quantum_queries, "", "Q_int", "sampling")
            rep.add("sqrt_N_factor", eff.speedup_factor, "", "sqrt(N)", "sampling")
            rep.add("trials_per_query", eff.trials_per_query, "", "N/Q_int", "sampling")
    if args.simulate:
        if args.N is None or not float(args.N).is_integer():
            raise UsageError("--simulate needs an integer --N")
        M = int(args.N)
        if args.marked > M:
            raise UsageError(f"--marked {args.marked} exceeds --N {M}")
        prob = grover.GroverProblem(M, range(args.marked), Q)
        rep.add("success_probability", grover.run_grover(prob), "", "statevector simulation", "grover-sim")
        rep.add("closed_form", grover.predict(prob).success_probability, "", "sin^2((2Q+1)theta)", "grover-sim")
    return rep, None


# ---------------------------------------------------------------------------
# lindblad

def _sweep(fn, grid, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, grid))
    return [fn(g) for g in grid]


def cmd_lindblad(args) -> tuple[Report, object]:
    rep = Report(f"lindblad {args.scenario}", echo(args))
    sc = args.scenario
    if sc == "dephase":
        traj = lindblad.dephasing_run(args.gamma, args.t, args.omega, args.dt)
        c = traj.diagnostics["coherence"][-1]
        rep.add("final_coherence", float(c), "", "|rho01(t)|", "dephasing")
        rep.add("analytic_coherence", 0.5 * math.exp(-2 * args.gamma * args.t), "", "0.5*exp(-2*gamma*t)", "dephasing")
    elif sc in ("doublewell", "zeno"):
        spec = lindblad.DoubleWellSpec(args.omega1, args.omega2, args.gap, args.gamma)
        t_end = args.t or (20.0 / args.omega1 if sc == "doublewell" else 10.0 / args.omega1)
        if sc == "doublewell":
            traj = lindblad.double_well_run(spec, t_end, args.dt)
            rep.add("synchrony_index", lindblad.synchrony_index(traj, spec), "", "time-avg 2|rho_L0L1+rho_R0R1|", "synchrony")
            rep.add("final_band_coherence", float(traj.diagnostics["band_coherence"][-1]), "", "2|rho_L0L1+rho_R0R1|", "synchrony")
            rep.add("final_pointer_coherence", float(traj.diagnostics["pointer_coherence"][-1]), "", "2(|rho_L0R0|+|rho_L1R1|)", "synchrony")
            rep.note(lindblad.SYNCHRONY_LABEL)
        else:
            if args.gamma_grid:
                vals = _sweep(lambda g: lindblad.zeno_survival(g, spec, t_end, args.dt), args.gamma_grid, args.workers)
                for g, v in zip(args.gamma_grid, vals):
                    rep.add(f"survival(gamma={g:g})", v, "", "<L0|rho(t)|L0>", "zeno")
            traj = lindblad.zeno_run(args.gamma, spec, t_end, args.dt)
            rep.add("survival", float(traj.diagnostics["survival"][-1]), "", "<L0|rho(t)|L0>", "zeno")
    else:
        if args.gamma_grid:
            vals = _sweep(
                lambda g: lindblad.dfs_entanglement_demo(g, args.omega, args.t, args.collective, args.dt).concurrence[-1],
                args.gamma_grid,
                args.workers,
            )
            for g, v in zip(args.gamma_grid, vals):
                rep.add(f"concurrence(gamma={g:g})", float(v), "", "Wootters", "dfs")
        res = lindblad.dfs_entanglement_demo(args.gamma, args.omega, args.t, args.collective, args.dt)
        traj = res.trajectory
        rep.add("final_concurrence", float(res.concurrence[-1]), "", "Wootters", "dfs")
        rep.add("final_singlet_fidelity", float(traj.diagnostics["singlet_fidelity"][-1]), "", "<S|rho|S>", "dfs")
    d = traj.diagnostics
    rep.add("final_trace", float(d["trace"][-1]), "", "Tr rho", "diagnostic")
    rep.add("final_purity", float(d["purity"][-1]), "", "Tr rho^2", "diagnostic")
    rep.add("min_eigenvalue", float(np.min(d["min_eig"])), "", "min over run", "diagnostic")
    return rep, traj


# ---------------------------------------------------------------------------
# search

def _space_and_marked(args):
    space = replicator.SequenceSpace(args.b, args.n)
    if args.marked == "all":
        R = replicator.ReplicatorSet.everything(space)
    else:
        if args.marked > space.size:
            raise UsageError(f"--marked {args.marked} exceeds M = {space.size}")
        R = replicator.ReplicatorSet.lowest(space, args.marked)
    return space, R


class Table:
    """Column data exported as CSV with a config header."""

    def __init__(self, columns: dict):
        self.columns = columns

    def to_csv(self, target=None, header=()):
        buf = io.StringIO()
        for line in header:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(self.columns))
        for row in zip(*self.columns.values()):
            w.writerow([lindblad.format_number(v) for v in row])
        text = buf.getvalue()
        if target is not None:
            with open(target, "w", newline="") as fh:
                fh.write(text)
        return text


def cmd_search(args) -> tuple[Report, object]:
    seed = resolve_seed(args)
    args.seed = seed
    space, R = _space_and_marked(args)
    rep = Report(f"search {args.model}", echo(args))
    rep.add("M", space.size)
    rep.add("replicators", len(R))
    data = None
    if args.model == "classical":
        res = replicator.classical_search(space, R, args.trials, seed, max_draws=args.max_draws, workers=args.workers)
        expected = space.size / len(R)
        rep.add("hit_count", res.hit_count, "", "trials reaching a replicator", "classical")
        rep.add("mean_hitting_time", res.mean_hitting_time, "draws", "sample mean", "classical")
        rep.add("std_error", res.std_error, "draws", "s/sqrt(n)", "classical")
        rep.add("expected_M_over_R", expected, "draws", "M/|R|", "classical")
        if res.std_error > 0:
            rep.add("z_score", (res.mean_hitting_time - expected) / res.std_error, "", "(mean - M/|R|)/SE", "classical")
        hits = res.hitting_times[res.hitting_times > 0]
        counts, edges = np.histogram(hits, bins=args.bins)
        data = Table({"bin_left": edges[:-1], "bin_right": edges[1:], "count": counts})
    elif args.model == "grover":
        res = replicator.grover_search(space, R)
        rep.add("queries", res.queries, "", "round(pi/(4 asin(sqrt(|R|/M))) - 1/2)", "grover")
        rep.add("success_probability", res.success_probability, "", "statevector simulation", "grover")
    else:
        params = replicator.McFaddenParams(args.J, args.kappa, args.t_max, seed, args.dt)
        res = replicator.mcfadden_search(space, R, params)
        rep.add("mean_detection_time", res.mean_detection_time, "", "integral of (1-D) to t_max", "mcfadden")
        rep.add("D_t_max", float(res.detection_cdf[-1]), "", "1-|psi(t_max)|^2", "mcfadden")
        rep.add("tail_truncated", res.tail_truncated, "", "D(t_max) < 0.99", "mcfadden")
        rep.add("norm_accounting_error", res.norm_accounting_error, "", "max | |psi|^2 + D_flux - 1 |", "mcfadden")
        rep.add("replicator_amplified", res.replicator_amplified, "", "share > |R|/M at some t", "mcfadden")
        for w in res.warnings():
            rep.note(w)
        rep.note("linear model only; amplification reported, not interpreted")
        data = Table({
            "t": res.times,
            "detection_cdf": res.detection_cdf,
            "norm_sq": res.norm_sq,
            "flux_detection": res.flux_detection,
            "replicator_share": res.replicator_share,
        })
    return rep, data


# ---------------------------------------------------------------------------
# output

def _plot(data, path, title):
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        if data is None:
            raise ValueError("this command has no series to plot")
        if isinstance(data, lindblad.Trajectory):
            x, series = data.times, dict(data.diagnostics)
        else:
            cols = dict(data.columns)
            first = next(iter(cols))
            x = cols.pop(first)
            series = cols
        fig, ax = plt.subplots(figsize=(6, 4))
        for name, y in series.items():
            ax.plot(x, y, label=name)
        ax.set_title(title)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)
    except Exception as exc:  # plotting must never fail the run
        warnings.warn(f"plot not written: {exc}", RuntimeWarning, stacklevel=2)
        print(f"warning: plot not written: {exc}", file=sys.stderr)


COMMANDS = {"bounds": cmd_bounds, "grover": cmd_grover, "lindblad": cmd_lindblad, "search": cmd_search}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = expand_config(argv)
    except UsageError as exc:
        print(f"qbio: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, data = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qbio: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"qbio: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QbioError, ValueError) as exc:
        print(f"qbio: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    header = header_lines(report.command, report.params)
    if data is not None and args.format == "csv" and not args.output:
        stdout.write(data.to_csv(header=header))
    else:
        if data is not None and args.output:
            data.to_csv(args.output, header=header)
        elif args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(report.render(args.format))
        stdout.write(report.render(args.format))
    if args.plot:
        _plot(data, args.plot, report.command)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
