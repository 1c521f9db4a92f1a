"""
Command-line entry point.

Subcommands: verify-algebra, isotropic, bounds, montecarlo, ensemble-check.
Each writes one JSON document (to ``--out`` or stdout). Exit codes: 0 pass,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import geometry, multi_qutrit, su3, two_qutrit
from .report import SCHEMA, rational, to_jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ALGEBRA_TOL = 1e-12
ENSEMBLE_TOL = 1e-12
VOLUME_RTOL = 1e-3
SIGMAS = 3.0


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 100_000
    tolerance: float = 1e-10
    out: str | None = None

    def __post_init__(self):
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")


class UsageError(Exception):
    pass


def _document(command: str, config: RunConfig, results, residuals, passed: bool) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": asdict(config),
        "results": results,
        "residuals": residuals,
        "pass": bool(passed),
    }


def verify_algebra(lam: np.ndarray | None = None, tol: float = ALGEBRA_TOL) -> dict[str, Any]:
    """Check the operator-basis identities on ``lam`` (default: the standard basis)."""
    lam = su3.build_basis() if lam is None else np.asarray(lam, dtype=np.complex128)
    gen = lam[1:]
    sc = su3.compute_structure_constants(lam)

    gram = np.einsum("aij,bji->ab", lam, lam)
    ortho = [
        {"pair": [a, b], "residual": float(abs(gram[a, b] - 2.0 * (a == b)))}
        for a in range(9)
        for b in range(9)
    ]
    traceless = np.abs(np.einsum("jii->j", gen))

    prod = np.einsum("jab,kbc->jkac", gen, gen)
    rebuilt = (
        (2.0 / 3.0) * np.einsum("jk,ab->jkab", np.eye(8), np.eye(3))
        + np.einsum("jkl,lab->jkab", sc.d + 1j * sc.f, gen)
    )
    genprod = np.max(np.abs(prod - rebuilt), axis=(2, 3))

    f_anti = max(
        np.max(np.abs(sc.f + sc.f.transpose(axes))) for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0))
    )
    d_sym = max(
        np.max(np.abs(sc.d - sc.d.transpose(axes))) for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0))
    )

    transitions = {}
    pairs = {(1, 2): (1, 2), (1, 3): (4, 5), (2, 3): (6, 7)}
    for (a, b), (j, k) in pairs.items():
        for sign, (x, y) in ((1, (a, b)), (-1, (b, a))):
            expected = 0.5 * (lam[j] + sign * 1j * lam[k])
            transitions[f"|{x}><{y}|"] = float(np.max(np.abs(su3.transition_operator(x, y) - expected)))
    s3 = np.sqrt(3.0)
    projectors = {
        "|1><1|": (np.eye(3) + s3 * (s3 / 2 * lam[3] + 0.5 * lam[8])) / 3,
        "|2><2|": (np.eye(3) + s3 * (-s3 / 2 * lam[3] + 0.5 * lam[8])) / 3,
        "|3><3|": (np.eye(3) - s3 * lam[8]) / 3,
    }
    for name, op in projectors.items():
        a = int(name[1])
        transitions[name] = float(np.max(np.abs(su3.transition_operator(a, a) - op)))

    residuals = {
        "orthogonality": float(max(r["residual"] for r in ortho)),
        "traceless": float(np.max(traceless)),
        "genprod": float(np.max(genprod)),
        "f_antisymmetry": float(f_anti),
        "d_symmetry": float(d_sym),
        "transition_operators": float(max(transitions.values())),
    }
    failed = [name for name, r in residuals.items() if not r < tol]
    return {
        "orthogonality_pairs": ortho,
        "genprod_pairs": [
            {"pair": [j + 1, k + 1], "residual": float(genprod[j, k])}
            for j in range(8)
            for k in range(8)
        ],
        "transition_operators": transitions,
        "residuals": residuals,
        "failed": failed,
        "pass": not failed,
    }


def cmd_verify_algebra(config: RunConfig, lam: np.ndarray | None = None) -> tuple[int, dict]:
    res = verify_algebra(lam)
    results = {k: res[k] for k in ("orthogonality_pairs", "genprod_pairs", "transition_operators", "failed")}
    doc = _document("verify-algebra", config, results, res["residuals"], res["pass"])
    return (EXIT_OK if res["pass"] else EXIT_FAIL), doc


def cmd_isotropic(epsilon: float, config: RunConfig) -> tuple[int, dict]:
    if not 0.0 <= epsilon <= 1.0:
        raise UsageError(f"--epsilon must lie in [0, 1], got {epsilon}")
    report = two_qutrit.separability_verdict(
        epsilon, samples=config.samples, cfg=geometry.SamplerConfig(seed=config.seed)
    )
    ppt = report.witnesses["ppt_min_eig"]
    residuals = {
        "ppt_vs_analytic": abs(ppt - two_qutrit.ppt_min_eig_analytic(epsilon)),
        "necessity_vs_4eps": abs(report.witnesses["necessity_bound"] - 4.0 * epsilon),
    }
    consistent = (ppt < -config.tolerance) == (not report.separable) or report.boundary
    passed = consistent and all(r < config.tolerance for r in residuals.values())
    results = report.to_dict()
    results["threshold_exact"] = rational(Fraction(1, 4))
    return (EXIT_OK if passed else EXIT_FAIL), _document("isotropic", config, results, residuals, passed)


def cmd_bounds(n_qutrits: int, config: RunConfig) -> tuple[int, dict]:
    if not 1 <= n_qutrits <= multi_qutrit.N_MAX:
        raise UsageError(f"--n-qutrits must lie in [1, {multi_qutrit.N_MAX}], got {n_qutrits}")
    lower = multi_qutrit.lower_threshold_exact(n_qutrits)
    results: dict[str, Any] = {
        "n_qutrits": n_qutrits,
        "lower_threshold": rational(lower),
        "w_lower_bound": multi_qutrit.w_lower_bound(n_qutrits),
        "w_uniform": multi_qutrit.w_prefactor(n_qutrits),
        "product_operator_min_eig": -(3.0 ** (2 * n_qutrits - 1)),
    }
    if n_qutrits % 2 == 0:
        upper = multi_qutrit.upper_threshold_exact(n_qutrits)
        results["upper_threshold"] = rational(upper)
        results["gap"] = rational(upper - lower)
    else:
        results["upper_threshold"] = "n/a (odd N)"
        results["gap"] = None
    return EXIT_OK, _document("bounds", config, results, {}, True)


def cmd_montecarlo(config: RunConfig, grid: int = 64) -> tuple[int, dict]:
    if config.samples < 1000:
        raise UsageError("--samples must be at least 1000")
    cfg = geometry.SamplerConfig(seed=config.seed)
    m1 = geometry.first_moments(cfg, config.samples)
    m2 = geometry.second_moments(cfg, config.samples)
    z1 = np.abs(m1.mean) / m1.stderr
    z2 = np.abs(m2.mean - np.eye(8) / 8.0) / m2.stderr
    volume = geometry.total_volume_quadrature((grid,) * 4)
    vol_rel = abs(volume / geometry.TOTAL_VOLUME - 1.0)
    results = {
        "first_moments": {"mean": m1.mean, "stderr": m1.stderr},
        "second_moments": {"mean": m2.mean, "stderr": m2.stderr, "expected_diagonal": 0.125},
        "max_z_first": float(np.max(z1)),
        "max_z_second": float(np.max(z2)),
        "volume": {
            "quadrature": volume,
            "grid": grid,
            "analytic": geometry.TOTAL_VOLUME,
            "fubini_study": volume / 9.0,
        },
    }
    residuals = {"volume_relative": vol_rel, "max_z": float(max(np.max(z1), np.max(z2)))}
    passed = np.max(z1) <= SIGMAS and np.max(z2) <= SIGMAS and vol_rel <= VOLUME_RTOL
    return (EXIT_OK if passed else EXIT_FAIL), _document("montecarlo", config, results, residuals, passed)


def cmd_ensemble_check(config: RunConfig) -> tuple[int, dict]:
    members = two_qutrit.ensemble_members()
    norms = [float(np.linalg.norm(m.ket())) for m in members]
    residual = float(np.max(np.abs(two_qutrit.ensemble_mixture() - two_qutrit.isotropic_density(0.25))))
    passed = residual < ENSEMBLE_TOL and all(abs(n - 1.0) < ENSEMBLE_TOL for n in norms)
    results = {
        "members": [dict(m.to_dict(), norm=n) for m, n in zip(members, norms)],
        "target": "3/4 M9 + 1/4 |Psi><Psi|",
    }
    doc = _document("ensemble-check", config, results, {"max_elementwise": residual}, passed)
    return (EXIT_OK if passed else EXIT_FAIL), doc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="qutritlab", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-algebra", parents=[common])
    p = sub.add_parser("isotropic", parents=[common])
    p.add_argument("--epsilon", type=float, required=True)
    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("--n-qutrits", type=int, required=True)
    p = sub.add_parser("montecarlo", parents=[common])
    p.add_argument("--grid", type=int, default=64, help="quadrature points per axis")
    sub.add_parser("ensemble-check", parents=[common])
    return parser


def dumps(doc: dict) -> str:
    return json.dumps(to_jsonable(doc), indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(seed=args.seed, samples=args.samples, tolerance=args.tol, out=args.out)
        if args.command == "verify-algebra":
            code, doc = cmd_verify_algebra(config)
        elif args.command == "isotropic":
            code, doc = cmd_isotropic(args.epsilon, config)
        elif args.command == "bounds":
            code, doc = cmd_bounds(args.n_qutrits, config)
        elif args.command == "montecarlo":
            code, doc = cmd_montecarlo(config, args.grid)
        else:
            code, doc = cmd_ensemble_check(config)
    except (UsageError, ValueError) as exc:
        print(f"qutritlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = dumps(doc)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL and doc["results"].get("failed"):
        print("failed: " + ", ".join(doc["results"]["failed"]), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
