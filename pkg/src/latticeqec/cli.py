"""Command-line entry point.

Subcommands: code-info, classify, decode, threshold, diag, meanfield, ising,
bifurcation.  Every randomized subcommand requires --seed, and any subcommand
that writes an output file also writes ``<output>.manifest.json`` recording
the full parameter map; re-running with the same parameters reproduces the
output byte for byte.

Flags may also be supplied through ``--config file.json`` (a JSON object of
flag names to values, or a previously written manifest); explicit flags win.

Exit codes: 0 success, 2 usage error, 3 infeasible instance size.

Error operators are written either as a full per-site letter string in
row-major site order (e.g. ``IZIIXIIII``) or as clauses ``P at (coords)``
with 1-based coordinates, separated by semicolons (e.g. ``Z at (2,2); X at
(1,3)``).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import __version__
from .codes import CodeLayout, LogicalClass
from .decoder import adjudicate, decode_syndrome, measure_syndrome
from .hamiltonian import (
    InfeasibleSizeError,
    MeanFieldParams,
    build_hamiltonian,
    diagonalize_small,
    mean_field_delta_e,
)
from .noise import scan_records_to_csv, threshold_scan
from .pauli import PauliFormatError, PauliOperator
from .thermal import (
    bifurcation_records_to_csv,
    bifurcation_scan,
    ising_series_to_csv,
    simulate_ising_memory,
)

_CLAUSE_RE = re.compile(r"^\s*([IXYZ])\s+at\s+\(([^)]*)\)\s*$")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


def _int_list(text):
    if isinstance(text, list):
        return [int(v) for v in text]
    return [int(part) for part in str(text).split(",") if part.strip()]


def _float_list(text):
    if isinstance(text, list):
        return [float(v) for v in text]
    return [float(part) for part in str(text).split(",") if part.strip()]


def parse_error_text(layout: CodeLayout, text: str) -> PauliOperator:
    """Parse the error mini-syntax against a layout."""
    stripped = text.strip()
    if "at" in stripped:
        op = PauliOperator.identity(layout.num_sites)
        for clause in stripped.split(";"):
            match = _CLAUSE_RE.match(clause)
            if match is None:
                raise UsageError(f"cannot parse error clause {clause.strip()!r}")
            letter, coord_text = match.groups()
            try:
                coords = tuple(int(c) for c in coord_text.split(","))
            except ValueError:
                raise UsageError(f"bad coordinates in {clause.strip()!r}") from None
            if len(coords) != layout.dimension:
                raise UsageError(
                    f"expected {layout.dimension} coordinates in {clause.strip()!r}"
                )
            if not all(1 <= c <= layout.n for c in coords):
                raise UsageError(f"coordinates out of range in {clause.strip()!r}")
            site = layout.site_index(*(c - 1 for c in coords))
            if letter != "I":
                op = op * PauliOperator.single(layout.num_sites, site, letter)
        return op
    try:
        return PauliOperator.from_string(stripped, layout.num_sites)
    except PauliFormatError as exc:
        raise UsageError(str(exc)) from None


def _format_sites(layout: CodeLayout, op: PauliOperator) -> str:
    """Site-list rendering, e.g. ``Z(2,1) X(1,3)`` with 1-based coordinates."""
    parts = []
    for site in range(layout.num_sites):
        bits = ((op.a >> site) & 1, (op.b >> site) & 1)
        if bits == (0, 0):
            continue
        letter = {(1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[bits]
        coords = ",".join(str(c + 1) for c in layout.site_coords(site))
        parts.append(f"{letter}({coords})")
    return " ".join(parts) if parts else "I"


def _bits_string(mask: int, length: int) -> str:
    return "".join(str((mask >> i) & 1) for i in range(length))


def _write_output(path: Path, content: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)


def _write_manifest(out_path: Path, subcommand: str, params: dict, seed, started: float):
    manifest = {
        "subcommand": subcommand,
        "parameters": params,
        "seed": seed,
        "version": __version__,
        "outputs": [out_path.name],
        "duration_seconds": time.perf_counter() - started,
    }
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolve_out(raw_out, subcommand: str, default_name: str, filename: str) -> Path:
    """Apply the results/<subcommand>/<name>/ convention when --out is absent
    or names a directory."""
    if raw_out is None:
        return Path("results") / subcommand / default_name / filename
    path = Path(raw_out)
    if str(raw_out).endswith(("/", "\\")) or path.is_dir():
        return path / filename
    return path


# -- option plumbing --------------------------------------------------------

_OPTION_TYPES = {}


def _add_option(parser, flag, *, type=str, required=False, default=None, help=None, choices=None):
    """Register an option with deferred defaults so --config can fill gaps."""
    dest = flag.lstrip("-").replace("-", "_")
    parser.add_argument(flag, dest=dest, type=type, default=None, help=help, choices=choices)
    meta = parser.get_default("_option_meta") or {}
    meta[dest] = (flag.lstrip("-"), type, required, default)
    parser.set_defaults(_option_meta=meta)


def _merge_config(parser, args):
    meta = args._option_meta
    config = {}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if isinstance(loaded, dict) and "parameters" in loaded:
            loaded = loaded["parameters"]  # accept a manifest
        if not isinstance(loaded, dict):
            raise UsageError("config must be a JSON object")
        config = loaded
    for dest, (key, type_fn, required, default) in meta.items():
        if getattr(args, dest) is not None:
            continue
        if key in config:
            value = config[key]
            if type_fn in (_int_list, _float_list):
                value = type_fn(value)
            elif isinstance(value, str):
                value = type_fn(value)
            elif isinstance(value, (list, dict)):
                raise UsageError(f"config value for {key!r} must be a scalar")
            setattr(args, dest, value)
        elif default is not None:
            setattr(args, dest, default)
        elif required:
            parser.error(f"missing required option --{key}")
    return args


def _params_dict(args, meta_keys) -> dict:
    return {key: getattr(args, key.replace("-", "_")) for key in meta_keys}


# -- subcommand implementations ---------------------------------------------


def _cmd_code_info(args):
    layout = CodeLayout(args.dim, args.n)
    logical_x, logical_z, logical_y = layout.logical_operators
    lines = [
        f"dimension: {layout.dimension}",
        f"n: {layout.n}",
        f"sites: {layout.num_sites}",
        f"code parameters: [[{layout.num_sites},1,{layout.n}]]",
        f"stabilizer generators: {len(layout.stabilizer_generators)}",
        f"gauge generators: {len(layout.gauge_generators)}",
        f"logical X: {_format_sites(layout, logical_x)}",
        f"logical Z: {_format_sites(layout, logical_z)}",
        f"logical Y: {_format_sites(layout, logical_y)}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def _cmd_classify(args):
    layout = CodeLayout(args.dim, args.n)
    op = parse_error_text(layout, args.error)
    result = layout.classify(op)
    payload = {"operator": op.to_string(), "class": result.kind.value}
    if result.kind is LogicalClass.DETECTABLE:
        payload["syndrome"] = {
            "sX": _bits_string(result.sx, layout.n - 1),
            "sZ": _bits_string(result.sz, layout.n - 1),
        }
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"operator: {payload['operator']}")
        print(f"class: {payload['class']}")
        if "syndrome" in payload:
            print(f"syndrome: sX={payload['syndrome']['sX']} sZ={payload['syndrome']['sZ']}")
    return EXIT_OK


def _cmd_decode(args):
    layout = CodeLayout(args.dim, args.n)
    error = parse_error_text(layout, args.error)
    syndrome = measure_syndrome(layout, error)
    outcome = decode_syndrome(layout, syndrome)
    residual = adjudicate(layout, error, outcome)
    payload = {
        "error": error.to_string(),
        "syndrome": {
            "sX": _bits_string(syndrome.sx, layout.n - 1),
            "sZ": _bits_string(syndrome.sz, layout.n - 1),
        },
        "inferred_e": _bits_string(outcome.inferred_e, layout.n),
        "inferred_f": _bits_string(outcome.inferred_f, layout.n),
        "correction": _format_sites(layout, outcome.correction),
        "residual": residual.kind.value,
    }
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"error: {payload['error']}")
        print(f"syndrome: sX={payload['syndrome']['sX']} sZ={payload['syndrome']['sZ']}")
        print(f"inferred: e={payload['inferred_e']} f={payload['inferred_f']}")
        print(f"correction: {payload['correction']}")
        print(f"residual: {payload['residual']}")
    return EXIT_OK


def _cmd_threshold(args):
    started = time.perf_counter()
    records = threshold_scan(args.dim, args.n, args.p, args.trials, args.seed, noise=args.noise)
    name = f"dim{args.dim}_n{'-'.join(map(str, args.n))}_seed{args.seed}"
    out = _resolve_out(args.out, "threshold", name, "scan.csv")
    _write_output(out, scan_records_to_csv(records))
    params = {
        "dim": args.dim, "n": args.n, "p": args.p, "trials": args.trials,
        "seed": args.seed, "noise": args.noise, "out": str(out),
    }
    _write_manifest(out, "threshold", params, args.seed, started)
    print(f"wrote {out} ({len(records)} rows)")
    return EXIT_OK


def _cmd_diag(args):
    layout = CodeLayout(args.dim, args.n)
    spec = build_hamiltonian(layout, args.lam)
    report = diagonalize_small(spec)
    text = json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    started = time.perf_counter()
    out = _resolve_out(args.out, "diag", f"dim{args.dim}_n{args.n}", "spectrum.json")
    _write_output(out, text)
    params = {"dim": args.dim, "n": args.n, "lambda": args.lam, "out": str(out)}
    _write_manifest(out, "diag", params, None, started)
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_meanfield(args):
    layout = CodeLayout(3, args.n)
    spec = build_hamiltonian(layout, args.lam)
    params = MeanFieldParams(args.c_xx, args.c_xy, args.c_zy, args.c_zz)
    error = parse_error_text(layout, args.error)
    delta = mean_field_delta_e(spec, error, params)
    if args.json:
        print(json.dumps({"error": error.to_string(), "delta_e": delta}, sort_keys=True))
    else:
        print(f"error: {_format_sites(layout, error)}")
        print(f"delta_e: {delta!r}")
    return EXIT_OK


def _cmd_ising(args):
    started = time.perf_counter()
    series = simulate_ising_memory(args.dim, args.L, args.J, args.T, args.sweeps, args.seed)
    name = f"dim{args.dim}_L{args.L}_T{args.T}_seed{args.seed}"
    out = _resolve_out(args.out, "ising", name, "magnetization.csv")
    _write_output(out, ising_series_to_csv(args.dim, args.L, args.J, args.T, series))
    params = {
        "dim": args.dim, "L": args.L, "J": args.J, "T": args.T,
        "sweeps": args.sweeps, "seed": args.seed, "out": str(out),
    }
    _write_manifest(out, "ising", params, args.seed, started)
    print(f"wrote {out} ({len(series)} sweeps)")
    return EXIT_OK


def _cmd_bifurcation(args):
    started = time.perf_counter()
    params = MeanFieldParams(c_zy=args.c_zy, c_zz=args.c_zz)
    records = bifurcation_scan(
        args.n, params, args.lam, args.T, args.sweeps, args.seed,
        sample_every=args.sample_every, equilibration=args.equilibration,
    )
    name = f"n{args.n}_seed{args.seed}"
    out = _resolve_out(args.out, "bifurcation", name, "order_parameter.csv")
    _write_output(out, bifurcation_records_to_csv(records))
    manifest_params = {
        "n": args.n, "lambda": args.lam, "c-zy": args.c_zy, "c-zz": args.c_zz,
        "T": args.T, "sweeps": args.sweeps, "sample-every": args.sample_every,
        "equilibration": args.equilibration, "seed": args.seed, "out": str(out),
    }
    _write_manifest(out, "bifurcation", manifest_params, args.seed, started)
    print(f"wrote {out} ({len(records)} rows)")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeqec",
        description="Lattice subsystem codes: decoding, Monte-Carlo scans, "
        "spectra, and thermal memory simulations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def new(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(_func=func, _option_meta={})
        p.add_argument("--config", default=None, help="JSON file of flag values (or a manifest); flags win")
        return p

    p = new("code-info", _cmd_code_info, "lattice and operator family summary")
    _add_option(p, "--dim", type=int, required=True)
    _add_option(p, "--n", type=int, required=True)

    p = new("classify", _cmd_classify, "logical class of a Pauli operator")
    _add_option(p, "--dim", type=int, required=True)
    _add_option(p, "--n", type=int, required=True)
    _add_option(p, "--error", required=True, help="letter string or 'P at (coords)' clauses")
    p.add_argument("--json", action="store_true")

    p = new("decode", _cmd_decode, "syndrome, correction, and residual class of an error")
    _add_option(p, "--dim", type=int, required=True)
    _add_option(p, "--n", type=int, required=True)
    _add_option(p, "--error", required=True)
    p.add_argument("--json", action="store_true")

    p = new("threshold", _cmd_threshold, "Monte-Carlo failure-rate scan to CSV")
    _add_option(p, "--dim", type=int, required=True)
    _add_option(p, "--n", type=_int_list, required=True, help="comma list, e.g. 3,5")
    _add_option(p, "--p", type=_float_list, required=True, help="comma list, e.g. 0.05,0.1")
    _add_option(p, "--trials", type=int, required=True)
    _add_option(p, "--seed", type=int, required=True)
    _add_option(p, "--noise", default="z", choices=["z", "x", "xz", "depolarizing"])
    _add_option(p, "--out")

    p = new("diag", _cmd_diag, "exact spectrum and sector report as JSON")
    _add_option(p, "--dim", type=int, required=True)
    _add_option(p, "--n", type=int, required=True)
    _add_option(p, "--lambda", type=float, default=1.0)
    _add_option(p, "--out")

    p = new("meanfield", _cmd_meanfield, "mean-field energy cost of an error pattern (3D)")
    _add_option(p, "--n", type=int, required=True)
    _add_option(p, "--error", required=True)
    _add_option(p, "--c-xx", type=float, default=1.0)
    _add_option(p, "--c-xy", type=float, default=1.0)
    _add_option(p, "--c-zy", type=float, default=1.0)
    _add_option(p, "--c-zz", type=float, default=1.0)
    _add_option(p, "--lambda", type=float, default=1.0)
    p.add_argument("--json", action="store_true")

    p = new("ising", _cmd_ising, "Ising memory magnetization time series to CSV")
    _add_option(p, "--dim", type=int, required=True, help="1 or 2")
    _add_option(p, "--L", type=int, required=True)
    _add_option(p, "--J", type=float, default=1.0)
    _add_option(p, "--T", type=float, required=True)
    _add_option(p, "--sweeps", type=int, required=True)
    _add_option(p, "--seed", type=int, required=True)
    _add_option(p, "--out")

    p = new("bifurcation", _cmd_bifurcation, "order-parameter bifurcation scan to CSV")
    _add_option(p, "--n", type=int, required=True)
    _add_option(p, "--lambda", type=float, default=1.0)
    _add_option(p, "--c-zy", type=float, default=1.0)
    _add_option(p, "--c-zz", type=float, default=1.0)
    _add_option(p, "--T", type=_float_list, required=True, help="comma list of temperatures")
    _add_option(p, "--sweeps", type=int, required=True)
    _add_option(p, "--sample-every", type=int, default=1)
    _add_option(p, "--equilibration", type=int, default=0)
    _add_option(p, "--seed", type=int, required=True)
    _add_option(p, "--out")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    # argparse stores --lambda under 'lambda'; rebind to a usable name.
    if hasattr(args, "lambda"):
        setattr(args, "lam", getattr(args, "lambda"))
        if "lambda" in args._option_meta:
            args._option_meta["lam"] = args._option_meta.pop("lambda")
    try:
        _merge_config(parser, args)
        if hasattr(args, "lam") and args.lam is not None:
            args.lam = float(args.lam)
        return args._func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
