"""Command-line interface.

Subcommands: ``circuit``, ``features``, ``training``, ``demo``,
``report``. All commands write a metric report (JSON by default,
markdown on request); undefined or unreached metric outcomes are
reported values, not failures.

Exit codes: 0 success, 2 usage error, 3 malformed input file,
4 compute or resource error.

The sampling seed comes from ``--seed``, falling back to the
QMETRIC_SEED environment variable, then 42. Given identical inputs,
flags, and seed, every command produces byte-identical output; file
output is written atomically (temp file, then rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from .circuit_metrics import SamplingConfig, compute_circuit_metrics
from .demo import demo_report, make_cluster_dataset
from .errors import (
    DegenerateDataError,
    InvalidArgumentError,
    ParseError,
    QMetricError,
    ResourceLimitError,
)
from .feature_metrics import (
    GENERIC,
    PROBABILITY,
    CircuitEvaluator,
    FeatureMatrix,
    QosConfig,
    edqfs,
    extract_quantum_features,
    fmcr,
    qlad,
    qos,
)
from .io.circuit_io import parse_circuit
from .io.report import (
    MetricReport,
    circuit_block,
    features_block,
    make_meta,
    merge_reports,
    parse_report,
    render_report,
    training_block,
)
from .io.tabular import parse_feature_csv, parse_gradient_log, parse_training_log
from .qsim.builders import (
    build_case_study,
    build_real_amplitudes,
    build_zz_feature_map,
)
from .qsim.circuit import compose
from .qsim.simulate import NoiseModel
from .training_metrics import compute_training_metrics, rqlsi, rqtei

DEFAULT_SEED = 42
SEED_ENV_VAR = "QMETRIC_SEED"


def parse_noise_spec(spec: str) -> NoiseModel:
    """Parse ``none`` or ``depolarizing:p1=<f>,p2=<f>[,gamma=<f>]``."""
    spec = spec.strip()
    if spec == "none":
        return NoiseModel()
    if not spec.startswith("depolarizing:"):
        raise InvalidArgumentError(
            f"unknown noise spec {spec!r}; expected 'none' or "
            "'depolarizing:p1=<f>,p2=<f>[,gamma=<f>]'"
        )
    fields = {}
    for item in spec[len("depolarizing:") :].split(","):
        if "=" not in item:
            raise InvalidArgumentError(f"malformed noise field {item!r}")
        key, _, raw = item.partition("=")
        key = key.strip()
        if key not in ("p1", "p2", "gamma"):
            raise InvalidArgumentError(f"unknown noise field {key!r}")
        if key in fields:
            raise InvalidArgumentError(f"duplicate noise field {key!r}")
        try:
            fields[key] = float(raw)
        except ValueError:
            raise InvalidArgumentError(f"noise field {key} is not a number: {raw!r}") from None
    if "p1" not in fields or "p2" not in fields:
        raise InvalidArgumentError("noise spec requires both p1 and p2")
    return NoiseModel(
        depolarizing_1q=fields["p1"],
        depolarizing_2q=fields["p2"],
        amplitude_damping=fields.get("gamma", 0.0),
    )


def _parse_index_list(spec: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in spec.split(","))
    except ValueError:
        raise InvalidArgumentError(f"{flag} expects comma-separated integers, got {spec!r}") from None


def _parse_float_list(spec: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in spec.split(","))
    except ValueError:
        raise InvalidArgumentError(f"{flag} expects comma-separated numbers, got {spec!r}") from None


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidArgumentError(
                f"{SEED_ENV_VAR} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SEED


def _timestamp(args: argparse.Namespace) -> str | None:
    if getattr(args, "timestamp", False):
        return datetime.now(timezone.utc).isoformat(timespec="seconds")
    return None


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as err:
        raise InvalidArgumentError(f"cannot read {path}: {err.strerror}") from err


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    _write_atomic(text, out)


def _write_atomic(text: str, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qmetric-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- subcommands ---


def cmd_circuit(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    if (args.circuit is None) == (args.builtin is None):
        raise InvalidArgumentError("provide exactly one of --circuit or --builtin")
    if args.builtin is not None:
        circuit = _builtin_circuit(args.builtin)
    else:
        circuit = parse_circuit(_read_file(args.circuit))
    noise = parse_noise_spec(args.noise)
    if args.range:
        bounds = _parse_float_list(args.range, "--range")
        if len(bounds) != 2:
            raise InvalidArgumentError(f"--range expects LO,HI, got {args.range!r}")
        lo, hi = bounds
    else:
        lo, hi = 0.0, 2.0 * np.pi
    sampling = SamplingConfig(
        num_samples=args.samples, ranges=(lo, hi), seed=seed, allow_parameterless=True
    )
    subsystem = _parse_index_list(args.subsystem, "--subsystem")
    bound = _parse_float_list(args.bind, "--bind") if args.bind else None
    metrics = compute_circuit_metrics(circuit, sampling, noise, subsystem, bound)
    report = MetricReport(
        meta=make_meta(seed, _timestamp(args)), circuit=circuit_block(metrics)
    )
    _emit(render_report(report, args.format), args.out)
    return 0


def _builtin_circuit(name: str):
    if name == "case-study":
        return build_case_study()
    raise InvalidArgumentError(f"unknown builtin circuit {name!r}")


def cmd_features(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    if (args.matrix is None) == (args.feature_map is None):
        raise InvalidArgumentError("provide exactly one of --matrix or --feature-map")
    inputs: FeatureMatrix | None = None
    if args.inputs is not None:
        inputs = parse_feature_csv(_read_file(args.inputs))

    if args.matrix is not None:
        semantics = PROBABILITY if args.probability else GENERIC
        matrix = parse_feature_csv(_read_file(args.matrix), semantics=semantics)
        d_in = args.d_in
    else:
        if inputs is None:
            raise InvalidArgumentError("--feature-map requires --inputs")
        feature_map = _resolve_feature_map(args.feature_map, inputs.num_dims)
        matrix = extract_quantum_features(feature_map, inputs)
        d_in = args.d_in if args.d_in is not None else inputs.num_dims

    qos_value = None
    config: dict = {"variance_threshold": args.threshold, "seed": seed}
    if args.evaluator is not None:
        if inputs is None:
            raise InvalidArgumentError("--evaluator requires --inputs")
        model = _resolve_evaluator(args.evaluator, inputs.num_dims, seed)
        qos_config = QosConfig(sigma=args.qos_sigma, num_perturbations=args.qos_k, seed=seed)
        qos_value = qos(model, inputs, qos_config)
        config["qos_sigma"] = qos_config.sigma
        config["qos_num_perturbations"] = qos_config.num_perturbations
    if d_in is not None:
        config["d_in"] = d_in

    block = features_block(
        fmcr=None if d_in is None else fmcr(matrix, d_in, args.threshold),
        edqfs=edqfs(matrix),
        qlad=qlad(matrix) if matrix.semantics == PROBABILITY else None,
        qos=qos_value,
        config=config,
    )
    report = MetricReport(meta=make_meta(seed, _timestamp(args)), features=block)
    _emit(render_report(report, args.format), args.out)
    return 0


def _resolve_feature_map(spec: str, num_dims: int):
    if spec == "builtin-zz":
        return build_zz_feature_map(num_dims, reps=1)
    return parse_circuit(_read_file(spec))


def _resolve_evaluator(spec: str, num_dims: int, seed: int) -> CircuitEvaluator:
    if spec != "builtin-qnn":
        raise InvalidArgumentError(f"unknown evaluator {spec!r}; expected 'builtin-qnn'")
    circuit = compose(
        build_zz_feature_map(num_dims, reps=1),
        build_real_amplitudes(num_dims, reps=3, entanglement="reverse_linear"),
    )
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xA245,)))
    ansatz = rng.uniform(0.0, 2.0 * np.pi, circuit.num_params - num_dims)
    return CircuitEvaluator(
        circuit,
        fixed_params=tuple(float(v) for v in ansatz),
        observables=("Z" * num_dims,),
    )


def cmd_training(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    log = parse_training_log(_read_file(args.log), args.num_params)
    grads = None
    if args.grads is not None:
        grads = parse_gradient_log(_read_file(args.grads))
    primary = compute_training_metrics(
        log, grads, args.tail, args.acc_threshold, args.epoch
    )
    compare = None
    relative_stability = None
    relative_efficiency = None
    if args.compare is not None:
        if args.compare_num_params is None:
            raise InvalidArgumentError("--compare requires --compare-num-params")
        compare_log = parse_training_log(_read_file(args.compare), args.compare_num_params)
        compare = compute_training_metrics(
            compare_log, None, args.tail, args.acc_threshold
        )
        relative_stability = rqlsi(log, compare_log, args.tail)
        relative_efficiency = rqtei(log, compare_log, args.acc_threshold)
    elif args.compare_num_params is not None:
        raise InvalidArgumentError("--compare-num-params requires --compare")
    block = training_block(
        primary,
        compare,
        rqlsi=relative_stability,
        rqtei=relative_efficiency,
        tail_fraction=args.tail,
        accuracy_threshold=args.acc_threshold,
    )
    report = MetricReport(meta=make_meta(seed, _timestamp(args)), training=block)
    _emit(render_report(report, args.format), args.out)
    return 0


def cmd_demo(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    noise = parse_noise_spec(args.noise)
    report = demo_report(seed, noise, _timestamp(args))
    if args.out is not None:
        # file output carries the report in both formats
        _write_atomic(render_report(report, "json"), args.out + ".json")
        _write_atomic(render_report(report, "markdown"), args.out + ".md")
    else:
        sys.stdout.write(render_report(report, args.format))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    reports = [parse_report(_read_file(path)) for path in args.files]
    merged = merge_reports(reports)
    _emit(render_report(merged, args.format), args.out)
    return 0


# --- parser ---


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="sampling seed (default: $QMETRIC_SEED or 42)")
    parser.add_argument("--format", choices=("json", "markdown"), default="json", help="output format")
    parser.add_argument("--out", "-o", default=None, help="output path (default: stdout)")
    parser.add_argument("--timestamp", action="store_true", help="stamp the report with the current UTC time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmetric",
        description="Diagnostics for hybrid quantum-classical models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_circuit = sub.add_parser("circuit", help="circuit metrics from a circuit description")
    p_circuit.add_argument("--circuit", help="circuit JSON file")
    p_circuit.add_argument("--builtin", choices=("case-study",), default=None, help="use a built-in circuit")
    p_circuit.add_argument("--samples", type=int, default=50, help="parameter draws for expressibility")
    p_circuit.add_argument("--range", default=None, help="sampling range LO,HI for every slot (default 0,2pi)")
    p_circuit.add_argument("--noise", default="none", help="noise spec: none or depolarizing:p1=F,p2=F[,gamma=F]")
    p_circuit.add_argument("--subsystem", default="0", help="comma-separated qubit indices for entropy metrics")
    p_circuit.add_argument("--bind", default=None, help="comma-separated parameter values for the bound metrics")
    _add_common(p_circuit)
    p_circuit.set_defaults(func=cmd_circuit)

    p_features = sub.add_parser("features", help="feature-space metrics from a matrix or feature map")
    p_features.add_argument("--matrix", help="feature matrix CSV (f0,f1,... header)")
    p_features.add_argument("--probability", action="store_true", help="rows are probability vectors")
    p_features.add_argument("--feature-map", help="circuit JSON file or 'builtin-zz'")
    p_features.add_argument("--inputs", help="raw input CSV to encode and/or perturb")
    p_features.add_argument("--d-in", type=int, default=None, help="input dimension for the compression ratio")
    p_features.add_argument("--threshold", type=float, default=0.95, help="cumulative variance threshold")
    p_features.add_argument("--evaluator", default=None, help="sensitivity model: 'builtin-qnn'")
    p_features.add_argument("--qos-sigma", type=float, default=0.01, help="perturbation scale")
    p_features.add_argument("--qos-k", type=int, default=10, help="perturbations per sample")
    _add_common(p_features)
    p_features.set_defaults(func=cmd_features)

    p_training = sub.add_parser("training", help="training-dynamics metrics from epoch logs")
    p_training.add_argument("--log", required=True, help="training log CSV")
    p_training.add_argument("--num-params", type=int, required=True, help="trainable parameter count")
    p_training.add_argument("--grads", default=None, help="gradient trace JSONL")
    p_training.add_argument("--epoch", type=int, default=None, help="epoch for the gradient norm (default: last)")
    p_training.add_argument("--compare", default=None, help="second training log CSV (treated as the classical side)")
    p_training.add_argument("--compare-num-params", type=int, default=None, help="parameter count for --compare")
    p_training.add_argument("--tail", type=float, default=0.10, help="tail fraction for the stability window")
    p_training.add_argument("--acc-threshold", type=float, default=0.90, help="accuracy threshold for efficiency")
    _add_common(p_training)
    p_training.set_defaults(func=cmd_training)

    p_demo = sub.add_parser("demo", help="end-to-end report on built-in data")
    p_demo.add_argument("--noise", default="none", help="noise spec for the circuit metrics")
    _add_common(p_demo)
    p_demo.set_defaults(func=cmd_demo)

    p_report = sub.add_parser("report", help="merge and render existing report JSON files")
    p_report.add_argument("files", nargs="+", help="report JSON files (later blocks override earlier)")
    _add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ParseError as err:
        print(f"qmetric: parse error: {err}", file=sys.stderr)
        return 3
    except InvalidArgumentError as err:
        print(f"qmetric: usage error: {err}", file=sys.stderr)
        return 2
    except (ResourceLimitError, DegenerateDataError) as err:
        print(f"qmetric: compute error: {err}", file=sys.stderr)
        return 4
    except QMetricError as err:
        print(f"qmetric: error: {err}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
