"""
Command-line front end.

Example:
  metricext det --input problem.yaml
  metricext verify --dimension 3 --seed 42 --json

Problem files are YAML (JSON is accepted too) with keys ``dimension`` and
optionally ``matrix``, ``basis`` (row i = coordinates of e_i), ``metric``, ``seed``.

Exit codes: 0 pass, 1 input/schema error, 2 degenerate input,
3 identity-residual failure or internal-consistency error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import jsonschema
import numpy as np
import yaml

from . import __version__
from . import sampling as S
from .dual import canonical_basis, make_basis
from .errors import DegenerateError, MetricExtError, SchemaError
from .exterior import check_dim
from .extensor import (
    Tensor2,
    det,
    from_tensor,
    inverse_components,
    is_skew,
    is_symmetric,
    to_tensor,
)
from .metric import (
    MetricTensor,
    contravariant_metric,
    factorization_residuals,
    inverse_metric_extensor,
    metric_extensor_from_tensor,
    metric_iso,
)
from .verify import DEFAULT_ATOL, DEFAULT_RTOL, DEFAULT_SAMPLES, DEFAULT_SEED, Check, Tolerance, classical_det, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_RESIDUAL = 3

_EXIT_FOR_CATEGORY = {
    "schema": EXIT_INPUT,
    "cap": EXIT_INPUT,
    "degenerate": EXIT_DEGENERATE,
    "internal-consistency": EXIT_RESIDUAL,
}

_MATRIX = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "minItems": 1, "items": {"type": "number"}},
}

PROBLEM_SCHEMA = {
    "type": "object",
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "matrix": _MATRIX,
        "basis": _MATRIX,
        "metric": _MATRIX,
        "seed": {"type": "integer", "minimum": 0},
    },
    "required": ["dimension"],
    "additionalProperties": False,
}


def load_problem(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read input file: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"input is not valid YAML/JSON: {exc}") from exc
    return validate_problem(data)


def validate_problem(data) -> dict:
    try:
        jsonschema.validate(data, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"schema violation at {where}: {exc.message}") from exc
    n = check_dim(data["dimension"])
    for key in ("matrix", "basis", "metric"):
        block = data.get(key)
        if block is None:
            continue
        if len(block) != n or any(len(row) != n for row in block):
            raise SchemaError(f"'{key}' must be {n}x{n} to match dimension {n}")
        if not all(math.isfinite(x) for row in block for x in row):
            raise SchemaError(f"'{key}' entries must be finite")
    return data


def _basis(problem):
    if problem.get("basis") is None:
        return canonical_basis(problem["dimension"])
    return make_basis(np.array(problem["basis"], dtype=float))


def _require(problem, key, command):
    if problem.get(key) is None:
        raise SchemaError(f"'{command}' needs a '{key}' block in the input")
    return np.array(problem[key], dtype=float)


def _clean(x):
    """Plain JSON-able values; negative zero is printed as zero."""
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isfinite(x):
            return x + 0.0
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def cmd_det(problem, tol: Tolerance, **_):
    T = Tensor2(_require(problem, "matrix", "det"), _basis(problem))
    classical = classical_det(T.components)
    t = from_tensor(T)
    ext_det = det(t)
    factor = T.basis.pseudoscalar_norm()
    rebuilt = ext_det * factor
    results = {
        "classical_det": classical,
        "extensor_det": ext_det,
        "pseudoscalar_norm": factor,
        "extensor_det_times_norm": rebuilt,
        "extensor_matrix": t.matrix,
    }
    checks = [tol.check("eq-3.2.1", "det[T_jk] = det[t] (e_1^..^e_n).(e_1^..^e_n)",
                        abs(classical - rebuilt), abs(classical))]
    return results, checks


def cmd_reciprocal(problem, tol: Tolerance, **_):
    _require(problem, "basis", "reciprocal")
    b = _basis(problem)
    n = b.dim
    eye = np.eye(n)
    E, R = b.matrix, b.reciprocal_matrix
    Fd, Fr = b.dual_matrix, b.reciprocal_form_matrix
    results = {
        "reciprocal_vectors": R,
        "dual_forms": Fd,
        "reciprocal_forms": Fr,
    }
    checks = [
        tol.check("eq-3.1.5", "e_k . e^l = delta_k^l", np.abs(E @ R.T - eye).max()),
        tol.check("eq-3.1.6", "eps^k . eps_l = delta_l^k", np.abs(Fd @ Fr.T - eye).max()),
        tol.check("eq-3.1.7", "eps_k(e^j) = delta_k^j", np.abs(Fr @ R.T - eye).max()),
    ]
    return results, checks


def cmd_metric(problem, tol: Tolerance, seed: int, samples: int, **_):
    G = MetricTensor(_require(problem, "metric", "metric"), _basis(problem))
    g = metric_extensor_from_tensor(G)
    gi = inverse_metric_extensor(g)
    Gstar = contravariant_metric(G)
    rng = S.rng_for(seed)
    n = G.dim
    vectors = [S.random_vector(rng, n) for _ in range(samples)]
    forms = [S.random_form(rng, n) for _ in range(samples)]
    rep = factorization_residuals(g, vectors, forms, G.basis)
    defining = 0.0
    for v, w in zip(vectors, vectors[1:] + vectors[:1]):
        gvw = G(v, w)
        defining = max(defining, abs(metric_iso(g, v)(w) - gvw) / max(1.0, abs(gvw)))
    upper = inverse_components(g, G.basis)
    results = {
        "g": g.matrix,
        "g_inverse": gi.matrix,
        "det_g": g.det,
        "contravariant_components": Gstar.components,
    }
    scale = float(np.abs(Gstar.components).max())
    checks = [
        tol.check("eq-3.3a", "iota_G(v)(w) = G(v,w), relative", defining),
        tol.check("eq-3.3.1", "G_jk eps^j(v) eps^k = iota(g(v)), relative", rep.forward_relative),
        tol.check("eq-3.3.2", "G^jk w(e_j) e_k = g^-1(iota^-1(w)), relative", rep.inverse_relative),
        tol.check("eq-3.2.2", "G^jk = g^-1(e^j) . e^k",
                  np.abs(upper - Gstar.components).max(), scale),
    ]
    return results, checks


def cmd_tensor_to_extensor(problem, tol: Tolerance, **_):
    T = Tensor2(_require(problem, "matrix", "tensor-to-extensor"), _basis(problem))
    t = from_tensor(T)
    t_alt = from_tensor(T, via="basis")
    back = to_tensor(t, T.basis).components
    comps = T.components
    tensor_sym = bool(np.array_equal(comps, comps.T))
    tensor_skew = bool(np.array_equal(comps, -comps.T))
    ext_sym = is_symmetric(t, tol.rtol, tol.atol)
    ext_skew = is_skew(t, tol.rtol, tol.atol)
    results = {
        "extensor_matrix": t.matrix,
        "adjoint_matrix": t.matrix.T,
        "tensor_symmetric": tensor_sym,
        "tensor_skew": tensor_skew,
        "extensor_adjoint_symmetric": ext_sym,
        "extensor_adjoint_skew": ext_skew,
    }
    scale = float(np.abs(comps).max())
    checks = [
        tol.check("eq-3.2", "T_jk = t(e_j) . e_k", np.abs(back - comps).max(), scale),
        tol.check("eq-3.2-variants", "T(v,e_k) e^k = T(v,e^k) e_k",
                  np.abs(t.matrix - t_alt.matrix).max(), float(np.abs(t.matrix).max())),
    ]
    if tensor_sym:
        checks.append(Check("eq-3.2.0a", "T symmetric => t = t^dagger", 0.0 if ext_sym else 1.0, 0.0, ext_sym))
    if tensor_skew:
        checks.append(Check("eq-3.2.0b", "T skew => t = -t^dagger", 0.0 if ext_skew else 1.0, 0.0, ext_skew))
    return results, checks


def cmd_verify(problem, tol: Tolerance, seed: int, samples: int, **_):
    checks = run_suite(problem["dimension"], seed=seed, samples=samples, rtol=tol.rtol, atol=tol.atol)
    return {"dimension": problem["dimension"], "samples": samples}, checks


COMMANDS = {
    "det": cmd_det,
    "reciprocal": cmd_reciprocal,
    "metric": cmd_metric,
    "tensor-to-extensor": cmd_tensor_to_extensor,
    "verify": cmd_verify,
}


def build_report(command: str, problem: dict, rtol: float, atol: float,
                 seed: int, samples: int) -> dict:
    tol = Tolerance(rtol, atol)
    results, checks = COMMANDS[command](problem, tol, seed=seed, samples=samples)
    digest = hashlib.sha256(json.dumps(problem, sort_keys=True).encode()).hexdigest()
    return _clean({
        "command": {"name": command, "seed": seed, "samples": samples, "version": __version__},
        "input_sha256": digest,
        "tolerances": {"rtol": rtol, "atol": atol},
        "results": results,
        "checks": [c.as_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    })


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = [
        f"command: {cmd['name']}",
        f"seed: {cmd['seed']}",
        f"input_sha256: {report['input_sha256']}",
        f"rtol: {_fmt(report['tolerances']['rtol'])}",
        f"atol: {_fmt(report['tolerances']['atol'])}",
        "results:",
    ]
    for key, value in report["results"].items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"  {key}:")
            lines.extend(f"    {_fmt(row)}" for row in value)
        else:
            lines.append(f"  {key}: {_fmt(value)}")
    lines.append("checks:")
    width = max((len(c["identity"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        lines.append(
            f"  {status} {c['identity']:<{width}}  residual={_fmt(c['residual'])}  "
            f"tol={_fmt(c['tolerance'])}  {c['description']}"
        )
    lines.append(f"passed: {str(report['passed']).lower()}")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="metricext", description=__doc__.split("\n\n")[0].strip())
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="problem file (YAML or JSON)")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default: file seed or {DEFAULT_SEED})")
    common.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    common.add_argument("--atol", type=float, default=DEFAULT_ATOL)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random samples per identity")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("--dimension", "-n", type=int, default=None,
                           help="dimension to verify when no input file is given")
    return ap


def _fail(exc: MetricExtError, as_json: bool) -> int:
    category = exc.category
    print(f"error: {category}: {exc}", file=sys.stderr)
    if as_json:
        payload = {"error": {"category": category, "message": str(exc)}}
        if isinstance(exc, DegenerateError) and exc.value is not None:
            payload["error"]["value"] = _clean(exc.value)
        print(json.dumps(payload, indent=2))
    return _EXIT_FOR_CATEGORY.get(category, EXIT_RESIDUAL)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.input is not None:
            problem = load_problem(args.input)
        elif args.command == "verify" and args.dimension is not None:
            problem = validate_problem({"dimension": args.dimension})
        else:
            raise SchemaError("--input is required" + (" (or --dimension)" if args.command == "verify" else ""))
        if args.command == "verify" and args.dimension is not None and args.input is not None:
            raise SchemaError("give either --input or --dimension, not both")
        if args.rtol < 0 or args.atol < 0:
            raise SchemaError("--rtol and --atol must be non-negative")
        if args.samples < 1:
            raise SchemaError("--samples must be >= 1")
        seed = args.seed if args.seed is not None else problem.get("seed", DEFAULT_SEED)
        report = build_report(args.command, problem, args.rtol, args.atol, seed, args.samples)
    except MetricExtError as exc:
        return _fail(exc, args.json)
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK if report["passed"] else EXIT_RESIDUAL


if __name__ == "__main__":
    raise SystemExit(main())
