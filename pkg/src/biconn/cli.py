"""Command-line entry point.

Exit codes: 0 all checks pass, 1 usage error (including a BI parameter that
no splitting admits), 2 invariant failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, decomposition, fields, frames, holonomy, lie, splitting

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3
TOL_ENV = "BICONN_TOL"
DEFAULT_TOL = 1e-12


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    beta: str | None = None
    input: Path | None = None
    output: Path | None = None
    seed: int = 0
    tol: float = DEFAULT_TOL
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")

    def tolerances(self) -> dict:
        return {"numeric": self.tol, "su2": holonomy.su2.UNITARITY_TOL,
                "frame_duality": frames.DUALITY_TOL, "frame_degeneracy": frames.DEGENERACY_TOL}

    def envelope(self, result: dict, passed: bool) -> dict:
        return {"tool": "biconn", "version": __version__, "command": self.command, "seed": self.seed,
                "tolerances": self.tolerances(), "passed": passed, "result": result}


def _parse_beta(text: str | None) -> Fraction:
    if text is None:
        return Fraction(0)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid beta '{text}'") from exc


def _emit(cfg: RunConfig, report: dict, lines: list[str]):
    print("\n".join(lines))
    if cfg.output is not None:
        fields.write_json(cfg.output, report)


# -- subcommands ------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    n = cfg.n
    if n is None or n < 3:
        raise UsageError("verify needs --n >= 3")
    beta = _parse_beta(cfg.beta)
    try:
        split = splitting.build_splitting(n, beta)
    except splitting.RigidSplittingError as exc:
        print(f"n={n}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    space = splitting.solve_intertwiners(n)
    red = splitting.verify_reductive(split)
    table = splitting.schur_dimension_table(max(n, cfg.extra.get("max") or n))
    stab = lie.stabilizer_check(n)
    rng = np.random.default_rng(cfg.seed)
    worst, min_t = 0.0, np.inf
    for _ in range(cfg.extra.get("draws", 100)):
        pt = lie.orbit_map(n, rng.uniform(-3, 3, len(lie.basis_pairs(n))))
        worst, min_t = max(worst, abs(pt.residual)), min(min_t, pt.t)
    expected = 1 if n == 3 else 0
    checks = {
        "intertwiner_dimension": space.dim == expected,
        "intertwiners_equivariant": all(splitting.check_intertwiner(n, psi) for psi in space.basis),
        "reductive": red.passed,
        "direct_sum": red.direct_sum,
        "stabilizer": stab.passed,
        "orbit_on_hyperboloid": worst <= cfg.tol and min_t >= 1.0,
    }
    passed = all(checks.values())
    result = {"n": n, "beta": str(beta), "intertwiner_dimension": space.dim,
              "family_dimension": space.dim, "checks": checks,
              "dimension_table": [list(r) for r in table],
              "orbit": {"max_residual": worst, "min_t": float(min_t)},
              "reductive": red.to_dict()}
    lines = [f"n={n} beta={beta}",
             f"intertwiner space dimension {space.dim}: " +
             ("family dimension 1 (one-parameter family of splittings)" if space.dim == 1
              else "psi = 0 (unique splitting m_0)")]
    lines += [f"  {name}: {'PASS' if ok else 'FAIL'}" for name, ok in checks.items()]
    lines.append(_format_table(table))
    _emit(cfg, cfg.envelope(result, passed), lines)
    return EXIT_OK if passed else EXIT_INVARIANT


def _format_table(rows) -> str:
    out = ["   n  dim(intertwiners)  family dim"]
    out += [f"{n:4d}  {d:17d}  {f:10d}" for n, d, f in rows]
    return "\n".join(out)


def cmd_dimension_table(cfg: RunConfig) -> int:
    n_max = cfg.extra.get("max")
    if n_max is None or n_max < 3:
        raise UsageError("dimension-table needs --max >= 3")
    rows = splitting.schur_dimension_table(n_max)
    passed = all(d == (1 if n == 3 else 0) for n, d, _ in rows)
    _emit(cfg, cfg.envelope({"rows": [list(r) for r in rows]}, passed), [_format_table(rows)])
    return EXIT_OK if passed else EXIT_INVARIANT


def cmd_tables(cfg: RunConfig) -> int:
    n = cfg.n or 3
    if n < 2:
        raise UsageError("tables needs --n >= 2")
    outdir = cfg.output or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"bracket_table_n{n}.csv"
    csv_path.write_text(lie.bracket_table_csv(n))
    iso = lie.clifford_matrix_iso_check(n)
    fields.write_json(outdir / f"iso_check_n{n}.json", cfg.envelope(iso.to_dict(), iso.passed))
    rows = sum(1 for _ in lie.bracket_table_rows(n))
    lines = [f"bracket table: {rows} rows -> {csv_path}",
             f"clifford/matrix isomorphism: {'PASS' if iso.passed else 'FAIL'} (alpha = {iso.alpha})"]
    passed = iso.passed
    if n == 3:
        pauli = lie.pauli_structure_check()
        su2_report = decomposition.su2_basis_report(_parse_beta(cfg.beta), seed=cfg.seed)
        fields.write_json(outdir / "pauli_check.json", cfg.envelope(pauli.to_dict(), pauli.passed))
        fields.write_json(outdir / "su2_basis.json", cfg.envelope(su2_report.to_dict(), su2_report.passed))
        lines.append(f"pauli check: {'PASS' if pauli.passed else 'FAIL'} "
                     f"(orientation {pauli.orientation}, {pauli.pairs_checked} pairs)")
        lines.append(f"su(2) basis identity: {'PASS' if su2_report.passed else 'FAIL'}")
        passed = passed and pauli.passed and su2_report.passed
    print("\n".join(lines))
    return EXIT_OK if passed else EXIT_INVARIANT


def _require(path: Path | None, flag: str) -> Path:
    if path is None:
        raise UsageError(f"missing {flag}")
    return path


def cmd_decompose(cfg: RunConfig) -> int:
    omega = fields.connection_from_json(fields.read_json(_require(cfg.input, "--input")))
    beta = float(_parse_beta(cfg.beta))
    try:
        pair = decomposition.decompose(omega, beta)
    except splitting.RigidSplittingError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    fields.write_json(_require(cfg.output, "--output"), fields.bi_to_json(pair))
    print(f"wrote BI pair (n={pair.n}, beta={beta}) to {cfg.output}")
    return EXIT_OK


def cmd_recompose(cfg: RunConfig) -> int:
    pair = fields.bi_from_json(fields.read_json(_require(cfg.input, "--input")))
    omega = decomposition.recompose(pair)
    fields.write_json(_require(cfg.output, "--output"), fields.connection_to_json(omega))
    print(f"wrote spin connection (n={omega.n}) to {cfg.output}")
    return EXIT_OK


def _sweep(omega, spec: str, loop: holonomy.LoopPath) -> holonomy.HolonomySweep:
    try:
        betas = holonomy.parse_sweep(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return holonomy.compare_holonomies(omega, betas, loop)


def _su2_ok(mats, tol: float) -> bool:
    return all(holonomy.su2.unitarity_defect(u) <= max(tol, holonomy.su2.UNITARITY_TOL) for u in mats)


def cmd_pipeline(cfg: RunConfig) -> int:
    frame_path = _require(cfg.input, "--frame")
    out = _require(cfg.output, "--out")
    try:
        frame = frames.frame_from_json(fields.read_json(frame_path))
    except ValueError as exc:
        print(f"[frame_geometry] {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    beta = float(_parse_beta(cfg.beta))
    metric = frames.metric_from_frame(frame)
    if not metric.has_lorentzian_signature():
        print("[frame_geometry] metric is not of signature (n,1) everywhere", file=sys.stderr)
        return EXIT_INVARIANT
    try:
        omega = frames.spin_connection_from_frame(frame)
        pair = decomposition.decompose(omega, beta)
    except splitting.RigidSplittingError as exc:
        print(f"[connection_decomposition] {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"[frame_geometry] {exc}", file=sys.stderr)
        return EXIT_USAGE
    stem = out.with_suffix("")
    fields.write_json(stem.with_suffix(".metric.json"), frames.metric_to_json(metric))
    fields.write_json(stem.with_suffix(".omega.json"), fields.connection_to_json(omega))
    fields.write_json(out, fields.bi_to_json(pair))
    lines = [f"metric -> {stem.with_suffix('.metric.json')}",
             f"spin connection -> {stem.with_suffix('.omega.json')}",
             f"BI pair (beta={beta}) -> {out}",
             f"max |A| = {np.abs(pair.A).max():.6g}, max |K| = {np.abs(pair.K).max():.6g}"]
    loop_path = cfg.extra.get("loop")
    sweep_spec = cfg.extra.get("beta_sweep")
    passed = True
    if loop_path is not None:
        loop = holonomy.LoopPath.read(loop_path)
        try:
            if sweep_spec:
                sweep = _sweep(omega, sweep_spec, loop)
                mats = sweep.matrices
                stem.with_suffix(".holonomy.csv").write_text(sweep.to_csv())
                lines.append(f"holonomy traces ({len(mats)} beta values) -> {stem.with_suffix('.holonomy.csv')}")
            else:
                mats = [holonomy.holonomy(pair, loop)]
                fields.write_json(stem.with_suffix(".holonomy.json"),
                                  cfg.envelope(holonomy.holonomy_to_json(mats[0]), True))
                lines.append(f"holonomy -> {stem.with_suffix('.holonomy.json')}")
        except ValueError as exc:
            print(f"[holonomy] {exc}", file=sys.stderr)
            return EXIT_USAGE
        passed = _su2_ok(mats, cfg.tol)
    print("\n".join(lines))
    return EXIT_OK if passed else EXIT_INVARIANT


def cmd_holonomy(cfg: RunConfig) -> int:
    pair = fields.bi_from_json(fields.read_json(_require(cfg.input, "--bi")))
    loop = holonomy.LoopPath.read(_require(cfg.extra.get("loop"), "--loop"))
    try:
        if cfg.extra.get("beta_sweep"):
            sweep = _sweep(decomposition.recompose(pair), cfg.extra["beta_sweep"], loop)
            result, mats = sweep.to_dict(), sweep.matrices
            lines = [f"beta={b:.6g}  tr={t.real:.12g}{t.imag:+.3g}i" for b, t in zip(sweep.betas, sweep.traces)]
        else:
            u = holonomy.holonomy(pair, loop)
            result, mats = holonomy.holonomy_to_json(u), [u]
            lines = [f"trace = {np.trace(u).real:.12g}{np.trace(u).imag:+.3g}i"]
    except ValueError as exc:
        print(f"[holonomy] {exc}", file=sys.stderr)
        return EXIT_USAGE
    passed = _su2_ok(mats, cfg.tol)
    _emit(cfg, cfg.envelope(result, passed), lines)
    return EXIT_OK if passed else EXIT_INVARIANT


COMMANDS = {
    "verify": cmd_verify,
    "verify-splitting": cmd_verify,
    "dimension-table": cmd_dimension_table,
    "tables": cmd_tables,
    "decompose": cmd_decompose,
    "recompose": cmd_recompose,
    "pipeline": cmd_pipeline,
    "holonomy": cmd_holonomy,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    env_tol = os.environ.get(TOL_ENV)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=float(env_tol) if env_tol else DEFAULT_TOL,
                        help=f"numeric tolerance (env {TOL_ENV})")
    common.add_argument("--output", "--out", type=Path, dest="output")

    parser = _Parser(prog="biconn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("verify", "verify-splitting"):
        p = sub.add_parser(name, parents=[common], help="classify reductive splittings for one n")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--beta")
        p.add_argument("--max", type=int)
    p = sub.add_parser("dimension-table", parents=[common], help="intertwiner dimensions for n = 3..max")
    p.add_argument("--max", type=int, required=True)
    p = sub.add_parser("tables", parents=[common], help="bracket table, Clifford and Pauli checks")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--beta")
    p = sub.add_parser("decompose", parents=[common], help="spin connection -> (A, K)")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--beta")
    p = sub.add_parser("recompose", parents=[common], help="(A, K) -> spin connection")
    p.add_argument("--input", type=Path, required=True)
    p = sub.add_parser("pipeline", parents=[common], help="frame -> metric, connection, (A, K)")
    p.add_argument("--frame", "--input", type=Path, dest="input", required=True)
    p.add_argument("--beta")
    p.add_argument("--loop", type=Path)
    p.add_argument("--beta-sweep")
    p = sub.add_parser("holonomy", parents=[common], help="SU(2) holonomy of a BI connection")
    p.add_argument("--bi", "--input", type=Path, dest="input", required=True)
    p.add_argument("--loop", type=Path, required=True)
    p.add_argument("--beta-sweep")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help, --version and usage errors
        return exc.code
    extra = {k: getattr(args, k) for k in ("max", "loop", "beta_sweep") if getattr(args, k, None) is not None}
    try:
        cfg = RunConfig(args.command, n=getattr(args, "n", None), beta=getattr(args, "beta", None),
                        input=getattr(args, "input", None), output=args.output, seed=args.seed,
                        tol=args.tol, extra=extra)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"biconn {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"biconn {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
