"""Command-line front end.

Every subcommand is a thin wrapper over one library entry point and emits
either CSV (tables) or JSON (reports).  Output is deterministic: rerunning a
command with the same flags produces byte-identical bytes, twelve significant
digits, LF line endings.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .bound_states import bound_state, remove_particle, scan_conditions, verify_eigenstate
from .cobosons import coboson_report, depleted_norm
from .fidelity import fidelity_sweep
from .lattice import LatticeConfig, as_coin, make_basis_state, phase_grid, phase_radians, state_json_entries
from .evolution import projected_step, step
from .spectral import spectrum_norms, survival_probability

_PHASE_PATTERN = re.compile(r"^(\d+)?pi(?:/(\d+))?$")


def parse_phase(text: str) -> Fraction | float:
    """Read a phase flag.

    Strings shaped like '2pi/3' are kept as exact rational multiples of pi so
    the resonant cases stay resonant; anything else is read as radians.
    """
    cleaned = text.strip().lower().replace(" ", "")
    match = _PHASE_PATTERN.match(cleaned)
    if match:
        numerator = int(match.group(1) or 1)
        denominator = int(match.group(2) or 1)
        if denominator == 0:
            raise ValueError(f"cannot parse phase {text!r}")
        return Fraction(numerator, denominator)
    try:
        return float(cleaned)
    except ValueError:
        raise ValueError(f"cannot parse phase {text!r}") from None


def _significant(value) -> str:
    return f"{float(value):.12g}"


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"cannot parse integer list {text!r}") from None


def _parse_coin_list(text: str) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text)
    return tuple(as_coin(part) for part in parts)


def _emit(lines: list[str], path: str | None) -> None:
    payload = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(payload)
    else:
        with open(path, "w", newline="") as handle:
            handle.write(payload)


def _emit_json(obj, path: str | None) -> None:
    _emit([json.dumps(obj, indent=2)], path)


def _require_json(args) -> None:
    if args.format != "json":
        raise ValueError(f"{args.subcommand} emits JSON only")


def _config(args, particles: int) -> LatticeConfig:
    return LatticeConfig(
        particle_count=particles,
        site_count=args.d,
        interaction_phase=args.phi,
        free_coin=args.coin,
    )


def _cmd_evolve(args) -> None:
    _require_json(args)
    config = _config(args, args.n)
    positions = _parse_int_list(args.positions) if args.positions else [0] * args.n
    coins = _parse_coin_list(args.coins) if args.coins else (1,) * args.n
    state = make_basis_state(config, positions, coins)
    advance = projected_step if args.projected else step
    snapshots = []
    for t in range(args.steps + 1):
        snapshots.append(
            {
                "t": t,
                "norm": float(state.norm()),
                "amplitudes": state_json_entries(state),
            }
        )
        if t < args.steps:
            state = advance(state)
    _emit_json(snapshots, args.output)


def _eigen_entry(config: LatticeConfig, arity: int, r: int, tol: float) -> dict:
    report = verify_eigenstate(bound_state(config, arity, r), tol=tol)
    return {
        "n": arity,
        "r": r,
        "is_eigenvector": report.is_eigenvector,
        "eigenvalue_re": report.eigenvalue.real,
        "eigenvalue_im": report.eigenvalue.imag,
        "residual": report.residual,
    }


def _cmd_check_eigen(args) -> None:
    _require_json(args)
    if args.all:
        entries = []
        r_values = (0, 1) if args.d % 2 == 0 else (0,)
        for arity in (2, 3, 4):
            config = _config(args, arity)
            for r in r_values:
                entries.append(_eigen_entry(config, arity, r, args.tol))
        _emit_json(entries, args.output)
        return
    config = _config(args, args.n)
    _emit_json(_eigen_entry(config, args.n, args.r, args.tol), args.output)


def _cmd_ghz_scan(args) -> None:
    arities = _parse_int_list(args.n_values)
    phases = phase_grid(args.phi_grid)
    k_values = (0, args.d // 2) if args.d % 2 == 0 else (0,)
    points = scan_conditions(arities, phases, k_values=k_values, d=args.d, threshold=args.threshold)
    rows = []
    for point in points:
        sign = "antisymmetric" if point.ghz.gamma.real < 0 else "symmetric"
        rows.append(
            (
                point.arity,
                phase_radians(point.phase),
                point.momentum_index,
                sign,
                point.value,
                point.closed_form_value,
            )
        )
    if args.format == "json":
        _emit_json(
            [
                {
                    "n": n,
                    "phi": phi,
                    "k": k,
                    "sign": sign,
                    "value": value,
                    "closed_value": closed,
                }
                for n, phi, k, sign, value, closed in rows
            ],
            args.output,
        )
        return
    lines = ["n,phi,k,sign,value,closed_value"]
    for n, phi, k, sign, value, closed in rows:
        lines.append(f"{n},{_significant(phi)},{k},{sign},{_significant(value)},{_significant(closed)}")
    _emit(lines, args.output)


def _cmd_spectrum(args) -> None:
    rows = spectrum_norms(args.d, args.phi)
    if args.format == "json":
        _emit_json(
            [
                {"k_over_d": k, "abs_lambda_plus": plus, "abs_lambda_minus": minus}
                for k, plus, minus in rows
            ],
            args.output,
        )
        return
    lines = ["k_over_d,abs_lambda_plus,abs_lambda_minus"]
    for k, plus, minus in rows:
        lines.append(f"{_significant(k)},{_significant(plus)},{_significant(minus)}")
    _emit(lines, args.output)


def _cmd_survival(args) -> None:
    if args.n not in (2, 3):
        raise ValueError("survival tracks the 2-particle or 3-particle remainder")
    parent_config = _config(args, args.n + 1)
    ensemble = remove_particle(bound_state(parent_config, args.n + 1))
    series = survival_probability(ensemble, args.t_max, method=args.method)
    if args.format == "json":
        _emit_json([{"t": t, "p_B": p} for t, p in series.values], args.output)
        return
    lines = ["t,p_B"]
    for t, p in series.values:
        lines.append(f"{t},{_significant(p)}")
    _emit(lines, args.output)


def _cmd_fidelity(args) -> None:
    t_values = _parse_int_list(args.t)
    phases = [args.phi] if args.phi is not None else phase_grid(args.phi_grid)
    rows = fidelity_sweep(phases, t_values)
    if args.format == "json":
        _emit_json([{"phi": phi, "t": t, "p": p} for phi, t, p in rows], args.output)
        return
    lines = ["phi,t,p"]
    for phi, t, p in rows:
        lines.append(f"{_significant(phi)},{t},{_significant(p)}")
    _emit(lines, args.output)


def _cmd_coboson(args) -> None:
    _require_json(args)
    report = coboson_report(args.n, args.d, args.constituents)
    payload = {
        "N": report.composite_count,
        "d": args.d,
        "B_N": str(report.norm_constant),
        "ratio": str(report.ratio_to_previous),
        "approx_ratio": str(report.approx_ratio),
    }
    if args.constituents == 3:
        payload["B_tilde_2"] = str(depleted_norm(args.d))
    _emit_json(payload, args.output)


def _add_common(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default=default_format)


def _add_lattice_flags(parser: argparse.ArgumentParser, default_phi: str = "2pi/3") -> None:
    parser.add_argument("--d", type=int, default=8, help="ring size")
    parser.add_argument("--phi", type=parse_phase, default=parse_phase(default_phi))
    parser.add_argument("--coin", choices=("identity", "hadamard"), default="identity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borrowalk",
        description="Interacting discrete-time quantum walks with collectively bound multiplets.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("evolve", help="dump a state trajectory as JSON snapshots")
    _add_lattice_flags(p)
    p.add_argument("--n", type=int, default=3, help="particle count")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--positions", default=None, help="comma-separated start sites")
    p.add_argument("--coins", default=None, help="start coins, e.g. R,R,L or RRL")
    p.add_argument("--projected", action="store_true", help="keep only the co-located aligned sector")
    _add_common(p, "json")
    p.set_defaults(handler=_cmd_evolve)

    p = sub.add_parser("check-eigen", help="verify the bound multiplets against the step operator")
    _add_lattice_flags(p)
    p.add_argument("--n", type=int, default=3, help="multiplet size (2, 3 or 4)")
    p.add_argument("--r", type=int, default=0, choices=(0, 1), help="uniform (0) or alternating (1) wave")
    p.add_argument("--all", action="store_true", help="report every multiplet the ring admits")
    p.add_argument("--tol", type=float, default=1e-12)
    _add_common(p, "json")
    p.set_defaults(handler=_cmd_check_eigen)

    p = sub.add_parser("ghz-scan", help="grid-scan the collective alignment condition")
    p.add_argument("--n-values", default="2,3,4,5,6")
    p.add_argument("--phi-grid", type=int, default=720, help="phase grid subdivisions of the full circle")
    p.add_argument("--d", type=int, default=2, help="ring size fixing the momentum set")
    p.add_argument("--threshold", type=float, default=1.0 - 1e-9)
    _add_common(p, "csv")
    p.set_defaults(handler=_cmd_ghz_scan)

    p = sub.add_parser("spectrum", help="moduli of the momentum-block eigenvalues")
    p.add_argument("--d", type=int, default=100)
    p.add_argument("--phi", type=parse_phase, default=parse_phase("2pi/3"))
    _add_common(p, "csv")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("survival", help="bound-sector survival after removing one particle")
    _add_lattice_flags(p)
    p.add_argument("--n", type=int, default=2, help="particles remaining after removal (2 or 3)")
    p.add_argument("--t-max", type=int, default=200)
    p.add_argument("--method", choices=("direct", "momentum"), default="direct")
    _add_common(p, "csv")
    p.set_defaults(handler=_cmd_survival)

    p = sub.add_parser("fidelity", help="trimer persistence over phase and time")
    p.add_argument("--t", default="1,10,100,1000", help="comma-separated step counts")
    p.add_argument("--phi", type=parse_phase, default=None, help="single phase instead of a grid")
    p.add_argument("--phi-grid", type=int, default=720)
    _add_common(p, "csv")
    p.set_defaults(handler=_cmd_fidelity)

    p = sub.add_parser("coboson", help="composite-boson normalization report")
    p.add_argument("--n", type=int, default=2, help="number of compounds")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--constituents", type=int, default=3)
    _add_common(p, "json")
    p.set_defaults(handler=_cmd_coboson)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
