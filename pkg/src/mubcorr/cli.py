"""Command-line front end: measure, sweep, verify, mubs.

Exit codes: 0 success, 1 usage or domain error, 2 numerical failure
(optimizer non-convergence after retry, or verification failures).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from mubcorr.closed_form import (
    MeasureKind,
    discord_isotropic,
    entanglement_of_formation_isotropic,
    entanglement_of_formation_two_qubit,
    entanglement_of_formation_werner,
    pair_correlation_bell_diagonal_sorted,
    pair_correlation_isotropic,
    pair_correlation_werner,
    residual_correlation_bell_diagonal,
    triple_correlation_bell_diagonal,
)
from mubcorr.linalg import DensityMatrix, InvalidStateError
from mubcorr.measures import (
    OptimizerConfig,
    OptimizerResult,
    classical_correlation,
    mub_pair_correlation,
    mub_tuple_correlation,
    mutual_information,
    residual_correlation,
)
from mubcorr.mub import mub_set_to_json, wootters_fields_mubs
from mubcorr.states import (
    BlochTriple,
    bell_diagonal_rho1,
    bell_diagonal_rho2,
    isotropic_state,
    load_state,
    werner_state,
)
from mubcorr.verify import report_to_json, verify_nullity_theorem

FAMILIES = ("werner", "isotropic", "bell-diagonal-rho1", "bell-diagonal-rho2")

# Discord for the d=3 exchange-symmetric family is flat in the basis, so
# sweeps cap its restarts to keep full grids fast; see --help for sweep.
_WERNER_D3_DISCORD_RESTARTS = 8


class _UsageError(Exception):
    pass


class _NumericalFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def _parse_measures(text: str) -> list[MeasureKind]:
    kinds = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            kinds.append(MeasureKind(tok))
        except ValueError:
            valid = ",".join(k.value for k in MeasureKind)
            raise _UsageError(f"unknown measure {tok!r}; valid: {valid}") from None
    if not kinds:
        raise _UsageError("empty measure list")
    return kinds


def _family_state(args: argparse.Namespace, param: float | None = None):
    """Build (state, triple-or-None, param value) for a family request."""
    family = args.family
    d = args.d
    if family in ("bell-diagonal-rho1", "bell-diagonal-rho2") and d != 2:
        raise _UsageError(f"{family} is a two-qubit family; --d must be 2")
    if family == "werner":
        value = args.alpha if param is None else param
        if value is None:
            raise _UsageError("werner needs --alpha")
        return werner_state(d, value), None, value
    if family == "isotropic":
        value = args.beta if param is None else param
        if value is None:
            raise _UsageError("isotropic needs --beta")
        return isotropic_state(d, value), None, value
    value = args.p if param is None else param
    if value is None:
        raise _UsageError(f"{family} needs --p")
    maker = bell_diagonal_rho1 if family == "bell-diagonal-rho1" else bell_diagonal_rho2
    rho, triple = maker(value)
    return rho, triple, value


def _retrying(fn, rho: DensityMatrix, cfg: OptimizerConfig, what: str, **kw) -> OptimizerResult:
    """Run an optimizer-backed measure, retrying once with a larger budget."""
    res = fn(rho, cfg=cfg, **kw)
    if res.restarts_converged > 0:
        return res
    retry_cfg = OptimizerConfig(
        restarts=cfg.restarts,
        max_iters=cfg.max_iters * 4,
        simplex_tol=cfg.simplex_tol,
        value_tol=cfg.value_tol,
        seed=cfg.seed,
        chi_basis_slack=cfg.chi_basis_slack,
    )
    res = fn(rho, cfg=retry_cfg, **kw)
    if res.restarts_converged == 0:
        raise _NumericalFailure(f"{what}: no restart converged even with 4x iteration budget")
    return res


def _numeric_value(kind: MeasureKind, rho: DensityMatrix, cfg: OptimizerConfig) -> float:
    if kind is MeasureKind.C:
        return _retrying(mub_pair_correlation, rho, cfg, "C").value
    if kind is MeasureKind.C3:
        return _retrying(mub_tuple_correlation, rho, cfg, "C3", m=3).value
    if kind is MeasureKind.Q2:
        return _retrying(residual_correlation, rho, cfg, "Q2").value
    if kind is MeasureKind.C1:
        return _retrying(classical_correlation, rho, cfg, "C1").value
    if kind is MeasureKind.D:
        c1 = _retrying(classical_correlation, rho, cfg, "D").value
        d = mutual_information(rho) - c1
        return 0.0 if -1e-6 <= d < 0.0 else d
    # entanglement of formation: analytic everywhere it is defined
    if (rho.dim_a, rho.dim_b) == (2, 2):
        return entanglement_of_formation_two_qubit(rho)
    raise _UsageError("Ef for d > 2 is only available through a family formula (werner/isotropic)")


def _closed_form_value(kind: MeasureKind, family: str, d: int, param: float,
                       triple: BlochTriple | None) -> float | None:
    """Family formula value, or None when the family has none for this measure."""
    if family == "werner":
        if kind is MeasureKind.C:
            return pair_correlation_werner(d, param)
        if kind is MeasureKind.Ef:
            return entanglement_of_formation_werner(d, param)
        return None
    if family == "isotropic":
        if kind is MeasureKind.C:
            return pair_correlation_isotropic(d, param)
        if kind is MeasureKind.Ef:
            return entanglement_of_formation_isotropic(d, param)
        if kind is MeasureKind.D:
            return discord_isotropic(d, param)
        return None
    assert triple is not None
    if kind is MeasureKind.C:
        return pair_correlation_bell_diagonal_sorted(triple)
    if kind is MeasureKind.C3:
        return triple_correlation_bell_diagonal(triple)
    if kind is MeasureKind.Q2:
        return residual_correlation_bell_diagonal(triple)
    return None


def _numeric_ef_fallback(kind: MeasureKind, rho: DensityMatrix, family: str | None,
                         d: int, param: float | None, triple: BlochTriple | None) -> float:
    """Numeric-mode Ef: concurrence for two qubits, family formula otherwise."""
    if (rho.dim_a, rho.dim_b) == (2, 2):
        return entanglement_of_formation_two_qubit(rho)
    if family is not None and param is not None:
        cf = _closed_form_value(kind, family, d, param, triple)
        if cf is not None:
            return cf
    raise _UsageError("Ef needs a two-qubit state or a werner/isotropic family")


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _make_cfg(args: argparse.Namespace, seed: int | None = None) -> OptimizerConfig:
    kw = {"seed": args.seed if seed is None else seed}
    if args.restarts is not None:
        if args.restarts < 1:
            raise _UsageError("--restarts must be >= 1")
        kw["restarts"] = args.restarts
    return OptimizerConfig(**kw)


def cmd_measure(args: argparse.Namespace) -> int:
    if (args.state is None) == (args.family is None):
        raise _UsageError("need exactly one of --state or --family")
    triple = None
    param = None
    if args.state is not None:
        rho = load_state(args.state)
        if args.mode != "numeric":
            raise _UsageError("closed-form values need --family")
    else:
        if args.family not in FAMILIES:
            raise _UsageError(f"unknown family {args.family!r}; valid: {', '.join(FAMILIES)}")
        rho, triple, param = _family_state(args)
    kinds = _parse_measures(args.measures)
    cfg = _make_cfg(args)

    results: dict[str, object] = {}
    for kind in kinds:
        if args.mode == "numeric":
            if kind is MeasureKind.Ef:
                value = _numeric_ef_fallback(kind, rho, args.family, args.d, param, triple)
            else:
                value = _numeric_value(kind, rho, cfg)
            results[kind.value] = value
        elif args.mode == "closed-form":
            cf = _closed_form_value(kind, args.family, args.d, param, triple)
            if cf is None and kind is MeasureKind.Ef and triple is not None:
                cf = entanglement_of_formation_two_qubit(rho)
            if cf is None:
                raise _UsageError(f"no closed form for {kind.value} on {args.family}")
            results[kind.value] = cf
        else:  # both
            entry: dict[str, float] = {}
            cf = _closed_form_value(kind, args.family, args.d, param, triple)
            if cf is not None:
                entry["closed_form"] = cf
            if kind is MeasureKind.Ef:
                if (rho.dim_a, rho.dim_b) == (2, 2):
                    entry["numeric"] = entanglement_of_formation_two_qubit(rho)
            else:
                entry["numeric"] = _numeric_value(kind, rho, cfg)
            if not entry:
                raise _UsageError(f"no evaluation path for {kind.value} on {args.family}")
            results[kind.value] = entry

    if args.json:
        payload = {"measures": results}
        if args.family:
            payload["family"] = args.family
            payload["d"] = args.d
            payload["param"] = param
        print(json.dumps(payload, indent=2))
    else:
        for name, value in results.items():
            if isinstance(value, dict):
                parts = ", ".join(f"{side}={_fmt(v)}" for side, v in value.items())
                print(f"{name}: {parts}")
            else:
                print(f"{name} = {_fmt(value)}")
    return 0


def _sweep_columns(kinds: list[MeasureKind], mode: str, family: str, d: int) -> list[tuple[str, MeasureKind, str]]:
    """Column plan: (header, measure, side) with side in {cf, num}."""
    probe_param = {"werner": 0.0, "isotropic": 0.5}.get(family, 0.5)
    probe_triple = None
    if family.startswith("bell-diagonal"):
        probe_triple = BlochTriple(0.0, 0.0, 0.0)
    cols: list[tuple[str, MeasureKind, str]] = []
    for kind in kinds:
        has_cf = _closed_form_value(kind, family, d, probe_param, probe_triple) is not None
        if mode == "closed-form":
            if not has_cf:
                raise _UsageError(f"no closed form for {kind.value} on {family}")
            cols.append((kind.value, kind, "cf"))
        elif mode == "numeric":
            cols.append((kind.value, kind, "num"))
        else:
            if has_cf:
                cols.append((f"{kind.value}_cf", kind, "cf"))
            if kind is not MeasureKind.Ef or d == 2:
                cols.append((f"{kind.value}_num", kind, "num"))
    return cols


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise _UsageError(f"unknown family {args.family!r}; valid: {', '.join(FAMILIES)}")
    kinds = _parse_measures(args.measures)
    is_bell = args.family.startswith("bell-diagonal")
    lo = args.param_from if args.param_from is not None else (0.0 if is_bell or args.family == "isotropic" else -1.0)
    hi = args.param_to if args.param_to is not None else 1.0
    steps = args.steps if args.steps is not None else (101 if is_bell else 81)
    if steps < 2:
        raise _UsageError("--steps must be >= 2")
    grid = np.linspace(lo, hi, steps)
    cols = _sweep_columns(kinds, args.mode, args.family, args.d)

    tmp_path = args.out + ".tmp"
    try:
        with open(tmp_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("param," + ",".join(c[0] for c in cols) + "\n")
            for idx, param in enumerate(grid):
                param = float(param)
                rho, triple, _ = _family_state(args, param=param)
                point_seed = int(np.random.SeedSequence((args.seed, idx)).generate_state(1)[0])
                cfg = _make_cfg(args, seed=point_seed)
                row = [_fmt(param)]
                for _, kind, side in cols:
                    if side == "cf":
                        value = _closed_form_value(kind, args.family, args.d, param, triple)
                        assert value is not None
                    elif kind is MeasureKind.Ef:
                        value = _numeric_ef_fallback(kind, rho, args.family, args.d, param, triple)
                    else:
                        point_cfg = cfg
                        if (kind is MeasureKind.D and args.family == "werner" and args.d == 3
                                and args.restarts is None):
                            point_cfg = OptimizerConfig(
                                restarts=_WERNER_D3_DISCORD_RESTARTS, seed=point_seed
                            )
                        value = _numeric_value(kind, rho, point_cfg)
                    row.append(_fmt(value))
                fh.write(",".join(row) + "\n")
        os.replace(tmp_path, args.out)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    print(f"wrote {len(grid)} rows to {args.out}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise _UsageError("--samples must be >= 1")
    cfg = _make_cfg(args)
    report = verify_nullity_theorem(args.samples, args.da, args.db, args.seed, cfg)
    text = report_to_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(
        f"samples={report.samples} products={report.products_detected} "
        f"witnesses={report.witnesses_found} failures={len(report.failures)} "
        f"min_chi={report.min_chi_over_witnesses:.3e}"
    )
    if args.json:
        print(text)
    return 0 if not report.failures else 2


def cmd_mubs(args: argparse.Namespace) -> int:
    mubs = wootters_fields_mubs(args.d)
    text = mub_set_to_json(mubs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for i, basis in enumerate(mubs.bases):
            print(f"basis {i}:")
            for row in np.round(basis.columns, 6):
                print("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
        print(f"{len(mubs)} pairwise mutually unbiased bases, validation PASS")
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for all stochastic parts (default 0)")
    p.add_argument("--restarts", type=int, default=None, help="optimizer restarts (default 24)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mubcorr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="compute measures on one state")
    p.add_argument("--state", help="state JSON file")
    p.add_argument("--family", help=f"one of: {', '.join(FAMILIES)}")
    p.add_argument("--d", type=int, default=2, help="local dimension for family states")
    p.add_argument("--alpha", type=float, help="werner parameter")
    p.add_argument("--beta", type=float, help="isotropic parameter")
    p.add_argument("--p", type=float, help="bell-diagonal family parameter")
    p.add_argument("--measures", required=True, help="comma list: C,C3,Q2,C1,D,Ef")
    p.add_argument("--mode", choices=("numeric", "closed-form", "both"), default="numeric")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="sweep a family parameter to CSV")
    p.add_argument("--family", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--from", dest="param_from", type=float, default=None)
    p.add_argument("--to", dest="param_to", type=float, default=None)
    p.add_argument("--steps", type=int, default=None, help="grid points (default 81, bell families 101)")
    p.add_argument("--measures", required=True)
    p.add_argument("--mode", choices=("numeric", "closed-form", "both"), default="numeric")
    p.add_argument("--out", required=True, help="output CSV path")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="batch-verify the nullity theorem on random states")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--da", type=int, default=2)
    p.add_argument("--db", type=int, default=2)
    p.add_argument("--out", help="write the report JSON here")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mubs", help="construct and export a full MUB set")
    p.add_argument("--d", type=int, required=True, help="prime dimension in [2, 13]")
    p.add_argument("--out", help="write the MUB set JSON here")
    _add_common(p)
    p.set_defaults(func=cmd_mubs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, InvalidStateError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
