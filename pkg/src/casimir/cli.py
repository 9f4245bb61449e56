"""Command-line front end for the Casimir engine.

Every subcommand produces one table: a block of ``# key=value`` metadata
lines, a header whose numeric column names carry their SI unit, and rows
in a fixed order. ``--format json`` emits the same content as a JSON
object. Floats are written with Python's shortest round-trip ``repr``, so
identical inputs give byte-identical output.

Usage::

    casimir pressure --m1 ideal --m2 ideal --gap 1um --temp 0K
    casimir sweep --m1 gold --m2 gold --gap-range 0.5um 40um 30 --temp 300K --thermal-correction
    casimir diagnose --material gold --temp 300K
    casimir map --m1 gold --m2 gold --gap 150nm --out map.csv

Exit status is 0 on success, 2 for invalid input and 3 when a numerical
result misses its tolerance; errors go to stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CasimirError, ConvergenceError, InputError, PoleError, RootNotFoundError
from .lifshitz import (
    PlateSystem,
    QuadratureConfig,
    Regime,
    asymptote,
    compare_models,
    entropy_area,
    free_energy_and_pressure,
    with_tau_scaled,
)
from .materials import (
    Drude,
    PerfectConductor,
    Plasma,
    Vacuum,
    dc_conductivity,
    gold_drude,
    gold_plasma,
    load_material,
    magnetic_diffusivity,
    material_to_dict,
    plasma_wavelength,
)
from .relaxation import relaxation_report
from .scales import CODATA_2018, EPS0, HBAR, E_CHARGE, thermal_frequency, thermal_wavelength
from .spectral import pressure_real_axis, pressure_spectrum, spectral_map

__all__ = ["main", "parse_quantity", "quantity", "resolve_material", "Table", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

Quantity = namedtuple("Quantity", "value dimension")

# unit -> (dimension, decimal exponent, extra factor to SI)
_UNITS = {
    "m": ("length", 0, 1.0),
    "mm": ("length", -3, 1.0),
    "um": ("length", -6, 1.0),
    "µm": ("length", -6, 1.0),
    "nm": ("length", -9, 1.0),
    "K": ("temperature", 0, 1.0),
    "eV": ("energy", 0, E_CHARGE),
    "meV": ("energy", -3, E_CHARGE),
    "s": ("time", 0, 1.0),
    "fs": ("time", -15, 1.0),
    "Hz": ("frequency", 0, 1.0),
    "THz": ("frequency", 12, 1.0),
    "rad/s": ("angular_frequency", 0, 1.0),
}
_NUMBER_UNIT = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-zµ/]+)\s*$")


def parse_quantity(text: str) -> Quantity:
    """Parse ``"150nm"``, ``"300K"``, ``"9eV"`` ... into an SI value and dimension.

    Bare numbers are rejected: every quantity needs a unit.
    """
    m = _NUMBER_UNIT.match(str(text))
    if not m:
        raise InputError(f"cannot parse quantity {text!r}: expected a number followed by a unit")
    number, unit = m.groups()
    if unit not in _UNITS:
        raise InputError(f"unknown unit {unit!r} in {text!r}; known units: {', '.join(_UNITS)}")
    dimension, exponent, factor = _UNITS[unit]
    # shift the decimal exponent in the text so "150nm" is exactly 1.5e-07
    mantissa, _, exp = number.lower().partition("e")
    value = float(f"{mantissa}e{int(exp or 0) + exponent}") * factor
    if not math.isfinite(value):
        raise InputError(f"quantity {text!r} is not finite")
    return Quantity(value, dimension)


def quantity(text: str, kind: str) -> float:
    """SI value of ``text`` for a parameter of the given kind.

    ``kind`` is a dimension name, ``"omega_p"`` (energy or angular frequency,
    energies converted with omega = E / hbar) or ``"omega"`` (angular
    frequency; Hz and THz are multiplied by 2 pi).
    """
    q = parse_quantity(text)
    if kind == "omega_p":
        if q.dimension == "energy":
            return q.value / HBAR
        if q.dimension == "angular_frequency":
            return q.value
    elif kind == "omega":
        if q.dimension == "angular_frequency":
            return q.value
        if q.dimension == "frequency":
            return 2.0 * math.pi * q.value
    elif q.dimension == kind:
        return q.value
    raise InputError(f"{text!r} is a {q.dimension}, expected a {kind.replace('_', ' ')}")


_ALIASES = {
    "ideal": PerfectConductor,
    "perfect": PerfectConductor,
    "vacuum": Vacuum,
    "gold": gold_drude,
    "gold-drude": gold_drude,
    "gold-plasma": gold_plasma,
}


def resolve_material(name: str):
    """Built-in alias (ideal, vacuum, gold, gold-plasma) or path to a material JSON file."""
    if name in _ALIASES:
        return _ALIASES[name]()
    if Path(name).suffix == ".json" or Path(name).exists():
        return load_material(name)
    raise InputError(f"unknown material {name!r}: use ideal, vacuum, gold, gold-plasma or a JSON file")


# Output documents


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value) + 0.0)
    return str(value)


def _json_value(value):
    if isinstance(value, (np.floating, float)):
        v = float(value) + 0.0
        return v if math.isfinite(v) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


class Table:
    """Metadata plus rows under fixed columns; renders to CSV or JSON."""

    def __init__(self, meta: dict, columns: list[str], rows=None, extra: dict | None = None):
        self.meta = dict(meta)
        self.columns = list(columns)
        self.rows = [list(r) for r in (rows or [])]
        self.extra = extra or {}

    def to_csv(self) -> str:
        lines = [f"# {k}={_fmt(v)}" for k, v in self.meta.items()]
        lines.append(",".join(self.columns))
        lines += [",".join(_fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "meta": {k: _json_value(v) for k, v in self.meta.items()},
            "columns": self.columns,
            "rows": [{c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows],
        }
        doc.update(self.extra)
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _base_meta(args, **inputs) -> dict:
    meta = {"command": args.command}
    meta.update(inputs)
    meta["constants"] = CODATA_2018.version
    meta["engine_version"] = __version__
    return meta


def _config(args) -> QuadratureConfig:
    kwargs = {}
    if getattr(args, "k_nodes", None) is not None:
        kwargs["k_nodes"] = args.k_nodes
    if getattr(args, "rel_tol", None) is not None:
        kwargs["rel_tol"] = args.rel_tol
    if getattr(args, "matsubara_max", None) is not None:
        kwargs["matsubara_max"] = args.matsubara_max
    return QuadratureConfig(**kwargs)


def _cfg_meta(cfg: QuadratureConfig) -> dict:
    return {"k_nodes": cfg.k_nodes, "rel_tol": cfg.rel_tol, "matsubara_max": cfg.matsubara_max}


def _increasing(values, what):
    if not values:
        raise InputError(f"{what} list is empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InputError(f"{what} values must be strictly increasing")
    return values


def _list_of(texts, kind, what):
    values = []
    for t in texts or []:
        values += [quantity(p, kind) for p in str(t).split(",") if p.strip()]
    return _increasing(values, what)


def _range(spec, kind, what):
    start, stop, count = spec
    a, b = quantity(start, kind), quantity(stop, kind)
    try:
        n = int(count)
    except ValueError:
        raise InputError(f"{what} range count must be an integer, got {count!r}") from None
    if n < 1 or not 0 < a <= b or (n > 1 and a == b):
        raise InputError(f"invalid {what} range {start} .. {stop} with {n} points")
    if n == 1:
        return [a]
    values = [float(v) for v in np.geomspace(a, b, n)]
    values[0], values[-1] = a, b
    return _increasing(values, what)


def _gaps(args):
    if getattr(args, "gap_range", None):
        return _range(args.gap_range, "length", "gap")
    gaps = _list_of(args.gap, "length", "gap")
    if any(g <= 0 for g in gaps):
        raise InputError("gaps must be > 0")
    return gaps


def _temps(args, positive=False):
    temps = _list_of(args.temp, "temperature", "temperature")
    if any(t < 0 for t in temps):
        raise InputError("temperatures must be >= 0 K")
    if positive and any(t == 0 for t in temps):
        raise InputError("this command needs T > 0 K")
    return temps


def _single(values, what):
    if len(values) != 1:
        raise InputError(f"exactly one {what} is required here")
    return values[0]


def _system(args, gap):
    return PlateSystem(resolve_material(args.m1), resolve_material(args.m2), gap)


def _fan_out(func, items, workers):
    """Apply ``func`` to ``items`` keeping their order, optionally on threads."""
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


# Subcommands


def cmd_scales(args):
    temps = _temps(args, positive=True)
    rows = []
    for T in temps:
        wT = thermal_frequency(T)
        rows.append([T, wT, wT / (2 * math.pi), thermal_wavelength(T)])
    meta = _base_meta(args, temperatures_K=";".join(_fmt(t) for t in temps))
    return Table(meta, ["T_K", "omega_T_rad_s", "omega_T_over_2pi_Hz", "lambda_T_m"], rows)


def cmd_material(args):
    model = resolve_material(args.material)
    omega_p = getattr(model, "omega_p", None)
    tau = getattr(model, "tau", None)
    row = [
        type(model).__name__,
        omega_p,
        None if omega_p is None else omega_p * HBAR / E_CHARGE,
        tau,
        plasma_wavelength(model) if omega_p else None,
        dc_conductivity(model) if isinstance(model, Drude) else None,
        magnetic_diffusivity(model) if isinstance(model, Drude) else None,
        EPS0 / dc_conductivity(model) if isinstance(model, Drude) else None,
        1.0 / (2 * math.pi * tau) if tau else None,
        omega_p * tau if tau else None,
    ]
    columns = [
        "model",
        "omega_p_rad_s",
        "hbar_omega_p_eV",
        "tau_s",
        "lambda_p_m",
        "sigma_dc_S_m",
        "D_m2_s",
        "eps0_over_sigma_s",
        "inv_2pi_tau_Hz",
        "omega_p_tau",
    ]
    meta = _base_meta(args, material=json.dumps(material_to_dict(model), sort_keys=True))
    return Table(meta, columns, [row])


_P_COLUMNS = ["d_m", "T_K", "P_total_Pa", "P_TE_Pa", "P_TM_Pa", "P_n0_Pa", "err_Pa"]
_F_COLUMNS = ["d_m", "T_K", "F_total_J_m2", "F_TE_J_m2", "F_TM_J_m2", "F_n0_J_m2", "err_J_m2"]


def _point(args, cfg, d, T, with_correction=False):
    sys_ = _system(args, d)
    if getattr(args, "engine", "matsubara") == "real-axis":
        p = pressure_real_axis(sys_, T, cfg).as_breakdown()
        f = None
    else:
        f, p = free_energy_and_pressure(sys_, T, cfg)
    row_p = [d, T, p.total, p.te, p.tm, p.n0, p.estimated_error]
    if with_correction:
        p0 = p if T == 0 else free_energy_and_pressure(sys_, 0.0, cfg)[1]
        row_p += [p0.total, p.total - p0.total, p.estimated_error + p0.estimated_error]
    row_f = None if f is None else [d, T, f.value, f.te, f.tm, f.n0, f.estimated_error]
    return row_p, row_f


def _grid(args, cfg, with_correction=False):
    gaps, temps = _gaps(args), _temps(args)
    points = [(d, T) for d in gaps for T in temps]
    results = _fan_out(lambda dt: _point(args, cfg, dt[0], dt[1], with_correction), points, args.workers)
    return gaps, temps, results


def _plate_meta(args, cfg, gaps, temps, **more):
    return _base_meta(
        args,
        material_1=json.dumps(material_to_dict(resolve_material(args.m1)), sort_keys=True),
        material_2=json.dumps(material_to_dict(resolve_material(args.m2)), sort_keys=True),
        gaps_m=";".join(_fmt(g) for g in gaps),
        temperatures_K=";".join(_fmt(t) for t in temps),
        **_cfg_meta(cfg),
        **more,
    )


def cmd_pressure(args):
    cfg = _config(args)
    gaps, temps, results = _grid(args, cfg)
    meta = _plate_meta(args, cfg, gaps, temps, engine=args.engine)
    return Table(meta, _P_COLUMNS, [r[0] for r in results])


def cmd_free_energy(args):
    cfg = _config(args)
    gaps, temps, results = _grid(args, cfg)
    return Table(_plate_meta(args, cfg, gaps, temps), _F_COLUMNS, [r[1] for r in results])


def cmd_sweep(args):
    cfg = _config(args)
    gaps, temps, results = _grid(args, cfg, with_correction=args.thermal_correction)
    columns = list(_P_COLUMNS)
    if args.thermal_correction:
        columns += ["P_T0_Pa", "dP_thermal_Pa", "err_dP_Pa"]
    meta = _plate_meta(args, cfg, gaps, temps, thermal_correction=args.thermal_correction)
    return Table(meta, columns, [r[0] for r in results])


def cmd_entropy(args):
    cfg = _config(args)
    gaps, temps = _gaps(args), _temps(args, positive=True)
    if args.temp_step is not None:
        cfg = QuadratureConfig(
            k_nodes=cfg.k_nodes,
            rel_tol=cfg.rel_tol,
            matsubara_max=cfg.matsubara_max,
            temp_step_fraction=args.temp_step,
        )
    points = [(d, T) for d in gaps for T in temps]

    def one(dt):
        s = entropy_area(_system(args, dt[0]), dt[1], cfg)
        return [dt[0], dt[1], s.value, s.estimated_error, s.step]

    rows = _fan_out(one, points, args.workers)
    meta = _plate_meta(args, cfg, gaps, temps, temp_step_fraction=cfg.temp_step_fraction)
    return Table(meta, ["d_m", "T_K", "S_J_K_m2", "err_J_K_m2", "step_K"], rows)


def _omegas(args):
    if args.omega_range:
        return _range(args.omega_range, "omega", "omega")
    return _list_of(args.omega, "omega", "omega")


def cmd_spectrum(args):
    cfg = _config(args)
    d = _single(_gaps(args), "gap")
    T = _single(_temps(args), "temperature")
    sys_ = _system(args, d)
    omegas = _omegas(args)
    records = _fan_out(lambda w: pressure_spectrum(sys_, T, w, cfg), omegas, args.workers)
    rows = []
    for rec in records:
        for part, pol, sector, value in rec.rows():
            rows.append([rec.omega, part, pol, sector, value, rec.errors[(pol, sector)]])
    meta = _plate_meta(args, cfg, [d], [T])
    return Table(meta, ["omega_rad_s", "part", "pol", "sector", "dP_domega_Pa_s", "err_Pa_s"], rows)


def cmd_map(args):
    d = _single(_gaps(args), "gap")
    sys_ = _system(args, d)
    omega_grid = None if not args.omega_range else _range(args.omega_range, "omega", "omega")
    kappa_grid = None
    if args.kappa_range:
        lo, hi, n = args.kappa_range
        kappa_grid = list(np.geomspace(1.0 / quantity(hi, "length"), 1.0 / quantity(lo, "length"), int(n)))
    smap = spectral_map(sys_, omega_grid, kappa_grid)
    meta = _base_meta(
        args,
        material_1=json.dumps(material_to_dict(sys_.material_1), sort_keys=True),
        material_2=json.dumps(material_to_dict(sys_.material_2), sort_keys=True),
        gap_m=d,
        n_omega=len(smap.omega_grid),
        n_kappa=len(smap.kappa_grid),
    )
    table = Table(meta, ["omega_rad_s", "kappa_per_m", "pol", "value_si"], smap.csv_rows())
    table.sidecar = smap.sidecar()
    if args.format == "json":
        table.extra = {"sidecar": table.sidecar}
    return table


def cmd_compare(args):
    cfg = _config(args)
    model = resolve_material(args.material)
    if not isinstance(model, Drude):
        raise InputError("compare needs a Drude material")
    if args.tau_scale != 1.0:
        model = with_tau_scaled(model, args.tau_scale)
    gaps, temps = _gaps(args), _temps(args)
    points = [(d, T) for d in gaps for T in temps]

    def one(dt):
        cmp = compare_models(dt[0], dt[1], model, cfg)
        return [
            dt[0],
            dt[1],
            cmp.p_drude.total,
            cmp.p_plasma.total,
            cmp.difference,
            cmp.plasma_n0_te,
            cmp.f_drude.value,
            cmp.f_plasma.value,
            cmp.free_energy_ratio,
        ]

    rows = _fan_out(one, points, args.workers)
    meta = _base_meta(
        args,
        material=json.dumps(material_to_dict(model), sort_keys=True),
        tau_scale=args.tau_scale,
        gaps_m=";".join(_fmt(g) for g in gaps),
        temperatures_K=";".join(_fmt(t) for t in temps),
        **_cfg_meta(cfg),
    )
    columns = [
        "d_m",
        "T_K",
        "P_drude_Pa",
        "P_plasma_Pa",
        "dP_drude_minus_plasma_Pa",
        "P_plasma_n0_TE_Pa",
        "F_drude_J_m2",
        "F_plasma_J_m2",
        "F_ratio_drude_plasma",
    ]
    return Table(meta, columns, rows)


def cmd_diagnose(args):
    model = resolve_material(args.material)
    T = _single(_temps(args, positive=True), "temperature")
    rep = relaxation_report(model, T)
    (s1, s2), (w1, w2) = rep.telegraphist_roots, rep.telegraphist_frequencies
    columns = [
        "T_K",
        "naive_rate_1_s",
        "root1_re_1_s",
        "root1_im_1_s",
        "root2_re_1_s",
        "root2_im_1_s",
        "freq1_re_rad_s",
        "freq1_im_rad_s",
        "freq2_re_rad_s",
        "freq2_im_rad_s",
        "decay_rate_1_s",
        "oscillation_rad_s",
        "D_m2_s",
        "inv_2pi_tau_Hz",
        "omega_T_over_2pi_Hz",
    ]
    row = [
        T,
        rep.naive_rate,
        s1.real,
        s1.imag,
        s2.real,
        s2.imag,
        w1.real,
        w1.imag,
        w2.real,
        w2.imag,
        rep.decay_rate,
        rep.oscillation,
        rep.diffusivity,
        rep.inv_2pi_tau,
        rep.omega_T_over_2pi,
    ]
    meta = _base_meta(args, material=json.dumps(material_to_dict(model), sort_keys=True))
    return Table(meta, columns, [row])


def cmd_asymptotes(args):
    gaps, temps = _gaps(args), _temps(args)
    rows = []
    for d in gaps:
        sys_ = _system(args, d)
        for T in temps:
            for regime in Regime:
                if regime is Regime.THERMAL and T == 0:
                    continue
                try:
                    a = asymptote(regime, sys_, T)
                except InputError:
                    continue
                rows.append([d, T, regime.value, a.free_energy, a.pressure, a.note])
    meta = _plate_meta(args, QuadratureConfig(), gaps, temps)
    return Table(meta, ["d_m", "T_K", "regime", "F_J_m2", "P_Pa", "note"], rows)


# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _add_plates(p):
    p.add_argument("--m1", default="gold", help="first plate: alias or material JSON (default gold)")
    p.add_argument("--m2", default="gold", help="second plate (default gold)")


def _add_gaps(p, allow_range=True):
    p.add_argument("--gap", action="append", help="gap with unit, e.g. 150nm; repeat or comma-separate")
    if allow_range:
        p.add_argument("--gap-range", nargs=3, metavar=("START", "STOP", "N"), help="N log-spaced gaps")


def _add_temps(p):
    p.add_argument("--temp", action="append", required=True, help="temperature with unit, e.g. 300K")


def _add_numerics(p):
    p.add_argument("--k-nodes", type=int, help="Gauss-Legendre nodes per panel")
    p.add_argument("--rel-tol", type=float, help="relative tolerance")
    p.add_argument("--matsubara-max", type=int, help="fixed number of Matsubara terms")
    p.add_argument("--workers", type=int, default=1, help="worker threads for multi-point runs")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="casimir", description="Casimir pressure, free energy and low-frequency diagnostics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    output = _Parser(add_help=False)
    output.add_argument("--format", choices=("csv", "json"), default="csv")
    output.add_argument("--out", help="output path (default stdout); map also writes <out>.json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser

    def sub_add(name, **kw):
        return add(name, parents=[output], **kw)

    sub.add_parser = sub_add

    p = sub.add_parser("scales", help="thermal frequency and wavelength")
    _add_temps(p)
    p.set_defaults(func=cmd_scales)

    p = sub.add_parser("material", help="derived material scales")
    p.add_argument("--material", required=True)
    p.set_defaults(func=cmd_material)

    for name, func, doc in (
        ("pressure", cmd_pressure, "Casimir pressure"),
        ("free-energy", cmd_free_energy, "free energy per area"),
        ("sweep", cmd_sweep, "pressure over a gap/temperature grid"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_plates(p)
        _add_gaps(p)
        _add_temps(p)
        _add_numerics(p)
        if name == "pressure":
            p.add_argument("--engine", choices=("matsubara", "real-axis"), default="matsubara")
        if name == "sweep":
            p.add_argument("--thermal-correction", action="store_true", help="add P(T=0) and P(T) - P(0)")
        p.set_defaults(func=func)

    p = sub.add_parser("entropy", help="entropy per area, -dF/dT")
    _add_plates(p)
    _add_gaps(p)
    _add_temps(p)
    _add_numerics(p)
    p.add_argument("--temp-step", type=float, help="base finite-difference step as a fraction of T")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("spectrum", help="real-frequency pressure density")
    _add_plates(p)
    _add_gaps(p, allow_range=False)
    _add_temps(p)
    _add_numerics(p)
    p.add_argument("--omega", action="append", help="angular frequency (rad/s, Hz, THz)")
    p.add_argument("--omega-range", nargs=3, metavar=("START", "STOP", "N"))
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("map", help="evanescent mode-density map")
    _add_plates(p)
    _add_gaps(p, allow_range=False)
    p.add_argument("--omega-range", nargs=3, metavar=("START", "STOP", "N"))
    p.add_argument(
        "--kappa-range", nargs=3, metavar=("LMIN", "LMAX", "N"), help="decay lengths 1/kappa, e.g. 1.5nm 15um 200"
    )
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("compare", help="Drude against plasma plates")
    p.add_argument("--material", default="gold")
    p.add_argument("--tau-scale", type=float, default=1.0)
    _add_gaps(p)
    _add_temps(p)
    _add_numerics(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("diagnose", help="relaxation report")
    p.add_argument("--material", default="gold")
    _add_temps(p)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("asymptotes", help="closed-form regime asymptotes")
    _add_plates(p)
    _add_gaps(p)
    _add_temps(p)
    p.set_defaults(func=cmd_asymptotes)
    return parser


def _emit_error(code: int, message: str):
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise InputError("--workers must be >= 1")
        table = args.func(args)
        text = table.to_json() if args.format == "json" else table.to_csv()
        if args.out:
            out = Path(args.out)
            out.write_text(text)
            sidecar = getattr(table, "sidecar", None)
            if sidecar is not None and args.format == "csv":
                out.with_suffix(out.suffix + ".json").write_text(json.dumps(sidecar, indent=2) + "\n")
        else:
            stdout.write(text)
    except InputError as exc:
        _emit_error(EXIT_INPUT, str(exc))
        return EXIT_INPUT
    except (ConvergenceError, PoleError, RootNotFoundError) as exc:
        _emit_error(EXIT_NUMERIC, str(exc))
        return EXIT_NUMERIC
    except CasimirError as exc:
        _emit_error(EXIT_NUMERIC, str(exc))
        return EXIT_NUMERIC
    except OSError as exc:
        _emit_error(EXIT_INPUT, f"cannot write output: {exc}")
        return EXIT_INPUT
    return EXIT_OK


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
