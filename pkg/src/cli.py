"""
Command-line front end for circle-rep

Structured artifacts go to stdout (or --output), logs to stderr. Exit codes:
0 success, 2 mathematical failure, 1 usage or IO failure.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Sequence

import yaml
from pydantic import TypeAdapter, ValidationError

from config import current_config
from src.circle_geometry import uniform_grid
from src.engines import CreutzEmbedding, RepresentationEngine
from src.exceptions import CircleRepError, InvalidInput, SchemaError
from src.models import (
    DiscreteProbability,
    HemispherePoint,
    NonnegRepresentation,
    PLFunction,
    ProbabilityMeasure,
    Report,
    Representation,
    SignedMeasure,
)
from src.tools import FunctionAnalyzer, WassersteinSolver, make_fixture

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; exit code 2 is reserved for mathematical failures"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class CommandResult:
    """Either a structured JSON payload or CSV text"""

    def __init__(self, outputs: Optional[Dict[str, Any]] = None, csv_text: Optional[str] = None,
                 inputs: Any = None) -> None:
        self.outputs = outputs or {}
        self.csv_text = csv_text
        self.inputs = inputs


# ---------- input loading ----------

def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {source}: {exc.strerror}", {"path": source}) from None


def _load_json(source: str) -> Any:
    text = _read_text(source)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}",
            {"path": source, "line": exc.lineno, "column": exc.colno},
        ) from None
    # unwrap a report envelope written by another command
    if isinstance(payload, dict) and "schema_version" in payload and "outputs" in payload:
        payload = payload["outputs"]
    return payload


def _validate(model: Any, payload: Any, source: str) -> Any:
    try:
        return TypeAdapter(model).validate_python(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = "/".join(str(p) for p in first.get("loc", ())) or "<root>"
        raise SchemaError(
            f"{source}: {first.get('msg', 'invalid value')} at {where}",
            {"path": source, "location": where, "errors": exc.error_count()},
        ) from None


def load_function(source: str) -> PLFunction:
    payload = _load_json(source)
    if isinstance(payload, dict) and "function" in payload:
        payload = payload["function"]
    return _validate(PLFunction, payload, source)


def load_measure(source: str) -> SignedMeasure:
    """A measure, a representation (λ̄ is taken) or a non-negative representation (mubar)"""
    payload = _load_json(source)
    if isinstance(payload, dict):
        if "representation" in payload:
            payload = payload["representation"]
        elif "measure" in payload:
            payload = payload["measure"]
    if isinstance(payload, dict) and "mubar" in payload:
        return _validate(NonnegRepresentation, payload, source).mubar
    if isinstance(payload, dict) and "lambda" in payload:
        return _validate(Representation, payload, source).lambda_bar
    return _validate(SignedMeasure, payload, source)


def load_probability(source: str, solver: WassersteinSolver, n: int) -> DiscreteProbability:
    payload = _load_json(source)
    if isinstance(payload, dict) and "support" in payload:
        return _validate(DiscreteProbability, payload, source)
    measure = load_measure(source)
    probability = _validate(ProbabilityMeasure, {"measure": measure.model_dump()}, source)
    return solver.quantize(probability, n)


def load_points(source: str) -> List[HemispherePoint]:
    text = _read_text(source)
    try:
        payload = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"{source}: malformed points file: {exc}", {"path": source}) from None
    if isinstance(payload, dict):
        payload = payload.get("points", payload)
    return _validate(List[HemispherePoint], payload, source)


# ---------- commands ----------

def cmd_check(args: argparse.Namespace) -> CommandResult:
    f = load_function(args.function)
    report = FunctionAnalyzer().check_conditions(f)
    return CommandResult({"check": report.model_dump(mode="json", by_alias=True)}, inputs=f.model_dump())


def cmd_represent(args: argparse.Namespace) -> CommandResult:
    f = load_function(args.function)
    engine = RepresentationEngine()
    if args.nonneg:
        rep = engine.represent_nonneg(f, args.tol)
    else:
        rep = engine.represent_signed(f, args.tol)
    return CommandResult(
        {"representation": rep.model_dump(mode="json", by_alias=True)},
        inputs={"function": f.model_dump(), "nonneg": args.nonneg, "tol": args.tol},
    )


def cmd_reconstruct(args: argparse.Namespace) -> CommandResult:
    if args.samples < 1:
        raise InvalidInput(f"--samples must be positive, got {args.samples}")
    measure = load_measure(args.measure)
    ts = uniform_grid(args.samples)
    values = measure.integrate_distance(ts)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "f"])
    for t, v in zip(ts, values):
        writer.writerow([f"{t:.17g}", f"{v:.17g}"])
    return CommandResult(csv_text=buffer.getvalue())


def cmd_w1(args: argparse.Namespace) -> CommandResult:
    solver = WassersteinSolver()
    mu = load_probability(args.mu, solver, args.n)
    nu = load_probability(args.nu, solver, args.n)
    outputs: Dict[str, Any] = {"method": args.method, "n": args.n}
    if args.method == "lp":
        value, coupling = solver.w1_bruteforce(mu, nu)
        outputs["coupling"] = coupling.model_dump()
    else:
        value = solver.w1_circle(mu, nu)
    outputs["w1"] = value
    return CommandResult(outputs, inputs={"mu": mu.model_dump(), "nu": nu.model_dump(), "method": args.method})


def cmd_embed(args: argparse.Namespace) -> CommandResult:
    p = HemispherePoint(theta=args.theta, alpha=args.alpha)
    phi = CreutzEmbedding(bins=args.n).embed(p, args.n)
    return CommandResult(
        {"point": p.model_dump(), "measure": phi.measure.model_dump(), "mass": phi.measure.total_mass()},
        inputs={"point": p.model_dump(), "n": args.n},
    )


def cmd_isometry(args: argparse.Namespace) -> CommandResult:
    points = load_points(args.points)
    report = CreutzEmbedding(bins=args.n).isometry_report(points, args.n)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["point"] + [str(j) for j in range(len(points))])
    for i, row in enumerate(report.residuals):
        writer.writerow([str(i)] + [f"{r:.6e}" for r in row])
    logger.info(
        f"Max W1 residual {report.max_residual:.3e}, max sup-norm residual {report.max_supnorm_residual:.3e}"
    )
    return CommandResult(csv_text=buffer.getvalue())


def cmd_demo(args: argparse.Namespace) -> CommandResult:
    f = make_fixture(args.fixture, seed=args.seed)
    summary = FunctionAnalyzer().check_conditions(f)
    return CommandResult(
        {"function": f.model_dump(), "summary": summary.model_dump(mode="json", by_alias=True)},
        inputs={"fixture": args.fixture, "seed": args.seed},
    )


def cmd_schema(args: argparse.Namespace) -> CommandResult:
    return CommandResult({
        "function": PLFunction.model_json_schema(),
        "measure": SignedMeasure.model_json_schema(),
        "discrete_probability": DiscreteProbability.model_json_schema(),
        "hemisphere_point": HemispherePoint.model_json_schema(),
    })


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circle-rep", description="Integral representations of functions on the circle")
    parser.add_argument("--seed", type=int, default=None, help="seed for random fixtures (default 0)")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        default=current_config.LOG_LEVEL.upper(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="logging level (stderr)",
    )
    parser.add_argument("--output", "-o", default=None, help="write the artifact here instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("check", help="conditions (A) and (B) for a PL function JSON")
    p.add_argument("function", help="function JSON file, or - for stdin")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("represent", help="representing measure of a PL function")
    p.add_argument("function", help="function JSON file, or - for stdin")
    p.add_argument("--nonneg", action="store_true", help="require a non-negative measure")
    p.add_argument("--tol", type=float, default=None, help="condition (A) tolerance")
    p.set_defaults(handler=cmd_represent)

    p = sub.add_parser("reconstruct", help="CSV of t, f(t) for a measure or representation")
    p.add_argument("measure", help="measure JSON file, or - for stdin")
    p.add_argument("--samples", type=int, default=current_config.GRID_SIZE)
    p.set_defaults(handler=cmd_reconstruct)

    p = sub.add_parser("w1", help="Wasserstein-1 distance of two probability measures")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--method", choices=["cdf", "lp"], default="cdf")
    p.add_argument("--n", type=int, default=current_config.GRID_SIZE, help="quantization bins")
    p.set_defaults(handler=cmd_w1)

    p = sub.add_parser("embed", help="Φ(p) for a hemisphere point")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--n", type=int, default=current_config.GRID_SIZE)
    p.set_defaults(handler=cmd_embed)

    p = sub.add_parser("isometry", help="CSV residual matrix of the embedding against d_{S^2}")
    p.add_argument("--points", required=True, help="YAML or JSON list of {theta, alpha}")
    p.add_argument("--n", type=int, default=current_config.GRID_SIZE)
    p.set_defaults(handler=cmd_isometry)

    p = sub.add_parser("demo", help="fixture function JSON with a summary report")
    p.add_argument("fixture", help="e.g. tripod, dp, constant(1.5), random_pl(3, 12)")
    p.set_defaults(handler=cmd_demo)

    p = sub.add_parser("schema", help="JSON schemas of the input formats")
    p.set_defaults(handler=cmd_schema)
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=False) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch and write the artifact; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr, force=True)

    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    started = time.perf_counter()
    try:
        result = handler(args)
    except CircleRepError as exc:
        logger.error(f"{args.command} failed: [{exc.code.value}] {exc.message}")
        report = Report(
            command=args.command,
            error=exc.to_dict(),
            timing_seconds=time.perf_counter() - started,
        )
        try:
            _emit(_render(report), args.output)
        except OSError:
            pass
        return exc.exit_code
    except ValueError as exc:
        # pydantic validation of CLI-supplied values
        logger.error(f"{args.command} failed: {exc}")
        report = Report(command=args.command, error={"code": "InvalidInput", "message": str(exc), "details": {}})
        _emit(_render(report), args.output)
        return 1

    try:
        if result.csv_text is not None:
            _emit(result.csv_text, args.output)
        else:
            report = Report(
                command=args.command,
                inputs_digest=Report.digest(result.inputs) if result.inputs is not None else "",
                outputs=result.outputs,
                timing_seconds=time.perf_counter() - started,
            )
            _emit(_render(report), args.output)
    except OSError as exc:
        logger.error(f"cannot write {args.output}: {exc.strerror}")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
