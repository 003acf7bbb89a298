"""Command-line front end.

Subcommands mirror the library pipelines: ``purify``, ``amplify``,
``concat``, ``sweep`` and ``verify``. Parameters come from an optional
JSON config file (a flat object) with command-line flags taking
precedence; angles accept radians or the literals ``0``, ``pi`` and
``pi/2``, and ``--k optimal`` resolves the outcome that cancels the
superposition phase. Exit codes: 0 success, 1 failed verification,
2 invalid input, 3 physically ill-posed request.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable

from . import analytic, sweeps
from ._version import __version__
from .errors import ConfigError, PhysicsError
from .states import ChannelSetting, CssParams, MixedCss, TapSetting
from .verify import DEFAULT_SEED, run_suite

_ANGLE_LITERALS = {"0": 0.0, "pi": math.pi, "pi/2": math.pi / 2.0}
_FORMATS = ("plain", "json", "csv")


def _to_float(value: Any) -> float:
    if isinstance(value, bool):
        raise ValueError("expected a number")
    if isinstance(value, (int, float)):
        return float(value)
    return float(str(value).strip())


def _to_angle(value: Any) -> float:
    if isinstance(value, str) and value.strip() in _ANGLE_LITERALS:
        return _ANGLE_LITERALS[value.strip()]
    return _to_float(value)


def _to_outcome(value: Any) -> Any:
    if isinstance(value, str) and value.strip() == "optimal":
        return "optimal"
    return _to_float(value)


def _to_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return int(str(value).strip())


def _to_str(value: Any) -> str:
    if not isinstance(value, str):
        raise ValueError("expected a string")
    return value


_CONVERTERS: dict[str, Callable[[Any], Any]] = {
    "alpha": _to_float,
    "phi": _to_angle,
    "p_in": _to_float,
    "T": _to_float,
    "eta": _to_float,
    "eta_H": _to_float,
    "k": _to_outcome,
    "figure_id": _to_str,
    "output": _to_str,
    "draws": _to_int,
    "amp_draws": _to_int,
    "seed": _to_int,
}

_SCHEMAS: dict[str, tuple[frozenset[str], frozenset[str]]] = {
    # command -> (required keys, optional keys)
    "purify": (
        frozenset({"alpha", "phi", "p_in", "T", "k"}),
        frozenset({"eta", "eta_H"}),
    ),
    "amplify": (frozenset({"alpha", "phi", "p_in"}), frozenset()),
    "concat": (frozenset({"alpha", "p_in"}), frozenset()),
    "sweep": (
        frozenset({"figure_id"}),
        frozenset({"alpha", "phi", "T", "p_in", "output"}),
    ),
    "verify": (frozenset(), frozenset({"draws", "amp_draws", "seed"})),
}


def resolve_params(command: str, config_file: str | None, flags: dict[str, Any]) -> dict[str, Any]:
    """Merge file and flag parameters for a command, flags winning, and
    convert every value. All offending keys are reported in one message."""
    required, optional = _SCHEMAS[command]
    allowed = required | optional
    raw: dict[str, Any] = {}
    problems: list[str] = []
    if config_file is not None:
        try:
            with open(config_file, "r", encoding="utf-8") as handle:
                loaded = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a single JSON object")
        unknown = sorted(set(loaded) - allowed - {"format"})
        if unknown:
            problems.append(f"unknown parameter(s): {', '.join(unknown)}")
        raw.update({k: v for k, v in loaded.items() if k in allowed})
        if "format" in loaded:
            raw["format"] = loaded["format"]
    raw.update({k: v for k, v in flags.items() if v is not None})

    params: dict[str, Any] = {}
    for key, value in raw.items():
        if key == "format":
            if value not in _FORMATS:
                problems.append(f"invalid value for format: {value!r}")
            else:
                params[key] = value
            continue
        try:
            params[key] = _CONVERTERS[key](value)
        except (ValueError, TypeError):
            problems.append(f"invalid value for {key}: {value!r}")
    missing = sorted(required - set(params))
    if missing:
        problems.append(f"missing required parameter(s): {', '.join(missing)}")
    if problems:
        raise ConfigError(f"{command}: " + "; ".join(problems))
    return params


def _fmt_plain(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _render(result: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2)
    if fmt == "csv":
        header = ",".join(result)
        cells = ",".join(
            format(v, ".12g") if isinstance(v, float) else str(v)
            for v in result.values()
        )
        return header + "\n" + cells
    return "\n".join(f"{key} = {_fmt_plain(v)}" for key, v in result.items())


def _cmd_purify(params: dict[str, Any]) -> dict[str, Any]:
    state = MixedCss(CssParams(params["alpha"], params["phi"]), params["p_in"])
    if "eta" in params:
        state = analytic.apply_loss(state, ChannelSetting(params["eta"]))
    T = params["T"]
    k = params["k"]
    if k == "optimal":
        k = analytic.optimal_k(state.params, 1.0 - T)
    tap = TapSetting(T, k, params.get("eta_H", 1.0))
    result: dict[str, Any] = {"k": k}
    if tap.eta_H == 1.0:
        out, density_css, density_mix = analytic.purify(state, tap)
        result.update(
            p_out=out.p,
            out_alpha=out.params.alpha,
            out_phi=out.params.phi,
            density_css=density_css,
            density_mix=density_mix,
            density_joint=state.p * density_css + (1.0 - state.p) * density_mix,
        )
    else:
        out = analytic.purify_with_inefficiency(state, tap)
        result.update(p_out=out.p, out_alpha=out.params.alpha, out_phi=out.params.phi)
    return result


def _cmd_amplify(params: dict[str, Any]) -> dict[str, Any]:
    state = MixedCss(CssParams(params["alpha"], params["phi"]), params["p_in"])
    out = analytic.amplify(state)
    return {"p_out": out.p, "out_alpha": out.params.alpha, "out_phi": out.params.phi}


def _cmd_concat(params: dict[str, Any]) -> dict[str, Any]:
    p_in = params["p_in"]
    p_mid, p_final = analytic.concat_stages(p_in, params["alpha"])
    result: dict[str, Any] = {
        "p_in": p_in,
        "p_mid": p_mid,
        "p_final": p_final,
        "net_change": p_final - p_in,
    }
    if p_final < p_in:
        result["note"] = "no net purification"
    return result


def _cmd_sweep(params: dict[str, Any], reproducible: bool) -> dict[str, Any]:
    spec = sweeps.default_spec(params["figure_id"])
    fixed = dict(spec.fixed_params)
    rejected = []
    for key in ("alpha", "phi", "T", "p_in"):
        if key in params:
            if key in fixed:
                fixed[key] = params[key]
            else:
                rejected.append(key)
    if rejected:
        raise ConfigError(
            f"{spec.figure_id} does not take parameter(s): {', '.join(sorted(rejected))}"
        )
    table = sweeps.run_sweep(sweeps.SweepSpec(spec.figure_id, fixed, spec.grid))
    path = params.get("output", sweeps.csv_name(spec.figure_id))
    sweeps.emit_csv(table, path, reproducible=reproducible)
    return {"path": path, "rows": len(table.rows), "columns": len(table.columns)}


def _run_verify(params: dict[str, Any], fmt: str) -> int:
    results = run_suite(
        params.get("draws", 200),
        params.get("amp_draws", 50),
        params.get("seed", DEFAULT_SEED),
    )
    if fmt == "json":
        payload = [
            {
                "name": r.name,
                "draws": r.draws,
                "max_error": r.max_error,
                "tolerance": r.tolerance,
                "passed": r.passed,
            }
            for r in results
        ]
        print(json.dumps(payload, indent=2))
    else:
        for r in results:
            print(r.describe())
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catpurify",
        description="Cat-state decoherence, conditional purification and amplification.",
    )
    parser.add_argument("--version", action="version", version=f"catpurify {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", metavar="PATH", help="JSON file with parameters; flags override it")
        p.add_argument("--format", choices=_FORMATS, default=None, help="output format (default plain)")

    p = sub.add_parser("purify", help="condition a mixture on a homodyne outcome behind a tap")
    add_common(p)
    p.add_argument("--alpha", help="input amplitude")
    p.add_argument("--phi", help="input phase (radians, or 0, pi, pi/2)")
    p.add_argument("--p-in", dest="p_in", help="input cat fraction")
    p.add_argument("--T", dest="T", help="tap transmittance")
    p.add_argument("--k", help="homodyne outcome, or 'optimal'")
    p.add_argument("--eta", help="optional line transmittance applied before the tap")
    p.add_argument("--eta-H", dest="eta_H", help="detector efficiency (default 1)")

    p = sub.add_parser("amplify", help="two-copy coincidence amplification (phi 0 or pi)")
    add_common(p)
    p.add_argument("--alpha", help="input amplitude")
    p.add_argument("--phi", help="input phase (0 or pi)")
    p.add_argument("--p-in", dest="p_in", help="input cat fraction")

    p = sub.add_parser("concat", help="purify two copies then amplify back to the input amplitude")
    add_common(p)
    p.add_argument("--alpha", help="input amplitude")
    p.add_argument("--p-in", dest="p_in", help="input cat fraction")

    p = sub.add_parser("sweep", help="regenerate a figure dataset as CSV")
    add_common(p)
    p.add_argument("--figure-id", dest="figure_id", help=f"one of: {', '.join(sweeps.FIGURE_IDS)}")
    p.add_argument("--alpha", help="override the figure's fixed alpha")
    p.add_argument("--phi", help="override the figure's fixed phi")
    p.add_argument("--T", dest="T", help="override the figure's fixed T")
    p.add_argument("--p-in", dest="p_in", help="override the figure's fixed p_in")
    p.add_argument("--output", help="output path (default <figure_id>.csv)")
    p.add_argument(
        "--reproducible",
        action="store_true",
        help="omit the timestamp comment so identical specs give identical bytes",
    )

    p = sub.add_parser("verify", help="randomized analytic-vs-oracle cross-checks")
    add_common(p)
    p.add_argument("--draws", help="draws per check (default 200)")
    p.add_argument("--amp-draws", dest="amp_draws", help="amplifier draws (default 50)")
    p.add_argument("--seed", help=f"RNG seed (default {DEFAULT_SEED})")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    command = args.command
    flag_keys = (_SCHEMAS[command][0] | _SCHEMAS[command][1]) | {"format"}
    flags = {key: getattr(args, key, None) for key in flag_keys}
    try:
        params = resolve_params(command, args.config, flags)
        fmt = params.pop("format", "plain")
        if command == "verify":
            return _run_verify(params, fmt)
        if command == "purify":
            result = _cmd_purify(params)
        elif command == "amplify":
            result = _cmd_amplify(params)
        elif command == "concat":
            result = _cmd_concat(params)
        else:
            result = _cmd_sweep(params, args.reproducible)
        print(_render(result, fmt))
        return 0
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
