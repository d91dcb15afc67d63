"""Command-line front end: queries and verification sweeps.

Exit codes: 0 all checks passed, 1 a mathematical check failed (the report
carries a minimal counterexample), 2 usage or configuration error.  Reports
are deterministic given the command, configuration and seed; the JSON shape
is published in ``schemas/report.schema.json``.  The environment variable
``HECKEZETA_WORKERS`` caps process fan-out for the independent sweeps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import crucial, oracle, zeta
from .characters import admissible_character, generic_character
from .hecke import PrincipalSeriesVector
from .intertwine import a_word, gk_coefficient, subset_expansion, value_at_identity
from .weyl import Composition, WeylElement, all_elements, compositions


@dataclass
class RunConfig:
    n: int | None = None
    composition: tuple[int, ...] | None = None
    primes: tuple[int, ...] = (2, 3)
    eps: float = 0.01
    grid_points: int = 1000
    kmax: int = 2
    max_subsets: int = 2**20
    format: str = "text"
    seed: int = 0
    workers: int = 1
    max_total_valuation: int = 4

    def as_dict(self):
        d = asdict(self)
        d["composition"] = list(self.composition) if self.composition else None
        d["primes"] = list(self.primes)
        return d


class UsageError(ValueError):
    pass


def _require_n(cfg: RunConfig, cap: int | None = None) -> int:
    if cfg.n is None:
        raise UsageError("--n is required for this command")
    if cfg.n < 2:
        raise UsageError("--n must be at least 2")
    if cap is not None and cfg.n > cap:
        raise UsageError(f"--n capped at {cap} for this command")
    return cfg.n


def _compositions_for(cfg: RunConfig) -> list[Composition]:
    if cfg.composition:
        return [Composition(cfg.composition)]
    return list(compositions(_require_n(cfg)))


def cmd_gk(cfg: RunConfig):
    """Spherical eigenvalue identity for every Weyl element."""
    n = _require_n(cfg, cap=6)
    chi = generic_character(n)
    results, failures = [], []
    for w in sorted(all_elements(n), key=lambda x: (x.length(), x.perm)):
        phi_plus = PrincipalSeriesVector.spherical(chi)
        image = a_word(w, phi_plus)
        c = gk_coefficient(w, chi)
        ok = all(coeff == c for coeff in image.coeffs.values()) \
            and len(image.coeffs) == len(phi_plus.coeffs)
        row = {"perm": [i + 1 for i in w.perm], "length": w.length(), "ok": ok}
        results.append(row)
        if not ok:
            failures.append({"perm": row["perm"],
                             "reason": "eigenvalue identity failed"})
    return results, failures


def cmd_apply(cfg: RunConfig):
    """Intertwiner applied to the identity basis vector, symbolically."""
    results, failures = [], []
    for d in _compositions_for(cfg):
        chi = generic_character(d.n)
        vec = PrincipalSeriesVector.basis_vector(
            chi, WeylElement.identity(d.n))
        image = a_word(d.weyl_element(), vec)
        results.append({
            "composition": list(d.parts),
            "identity_value": repr(value_at_identity(image)),
            "support": sorted([i + 1 for i in u.perm] for u in image.coeffs),
        })
    return results, failures


def cmd_expand(cfg: RunConfig):
    """Subset expansion cross-checked against the recursion."""
    results, failures = [], []
    for d in _compositions_for(cfg):
        chi = generic_character(d.n)
        terms, ident = subset_expansion(d, chi, max_subsets=cfg.max_subsets)
        vec = PrincipalSeriesVector.basis_vector(
            chi, WeylElement.identity(d.n))
        rec = value_at_identity(a_word(d.weyl_element(), vec))
        ok = ident == rec
        results.append({"composition": list(d.parts), "terms": len(terms),
                        "identity_terms": sum(1 for t in terms
                                              if t.target.is_identity()),
                        "matches_recursion": ok})
        if not ok:
            failures.append({"composition": list(d.parts),
                             "reason": "expansion disagrees with recursion"})
    return results, failures


def cmd_inequality(cfg: RunConfig):
    results, failures = [], []
    for d in _compositions_for(cfg):
        rep = crucial.verify_exponent_inequality(d)
        results.append(rep.as_dict())
        if not rep.holds:
            failures.append({"composition": list(d.parts),
                             "lhs": rep.lhs, "rhs": rep.rhs})
    return results, failures


def _sup_task(args):
    parts, ell, eps, points, seed = args
    return crucial.numeric_sup(Composition(parts), ell, eps,
                               points_per_variable=points,
                               seed=seed).as_dict()


def cmd_sup(cfg: RunConfig):
    tasks = [(d.parts, ell, cfg.eps, cfg.grid_points, cfg.seed)
             for d in _compositions_for(cfg) for ell in cfg.primes]
    rows = _fan_out(_sup_task, tasks, cfg.workers)
    results = sorted(rows, key=lambda r: (r["composition"], r["ell"]))
    failures = [{"composition": r["composition"], "ell": r["ell"],
                 "ratio": r["ratio"]} for r in results if r["ratio"] > 2.0]
    return results, failures


def _nopole_task(args):
    parts, ell, eps, points, seed = args
    return crucial.no_pole_check(Composition(parts), ell, eps=eps,
                                 points_per_variable=points,
                                 seed=seed).as_dict()


def cmd_nopole(cfg: RunConfig):
    tasks = [(d.parts, ell, cfg.eps, min(cfg.grid_points, 301), cfg.seed)
             for d in _compositions_for(cfg) for ell in cfg.primes]
    rows = _fan_out(_nopole_task, tasks, cfg.workers)
    results = sorted(rows, key=lambda r: (r["composition"], r["ell"]))
    failures = [{"composition": r["composition"], "ell": r["ell"],
                 "min_abs": r["min_abs"], "bound": r["bound"]}
                for r in results if not r["ok"]]
    return results, failures


def cmd_zeta_coeffs(cfg: RunConfig):
    results, failures = [], []
    for d in _compositions_for(cfg):
        table = zeta.series_coefficients(d, cfg.kmax)
        for p in cfg.primes:
            results.append(json.loads(table.to_json(p)))
    return results, failures


def cmd_oracle(cfg: RunConfig):
    n = _require_n(cfg, cap=3)
    results, failures = [], []
    for p in cfg.primes:
        try:
            rep = oracle.oracle_vs_zeta(
                n, p, cfg.kmax,
                max_total_valuation=cfg.max_total_valuation, strict=False)
        except oracle.DepthError as exc:
            failures.append({"p": p, "reason": str(exc)})
            continue
        results.append({"p": p, "checked": rep.checked,
                        "mismatches": rep.mismatches})
        failures.extend(rep.mismatches)
    return results, failures


def cmd_verify_all(cfg: RunConfig):
    """Composite sweep: every check bounded by the configuration."""
    results, failures = [], []
    for name, fn in (("gk", cmd_gk), ("expand", cmd_expand),
                     ("inequality", cmd_inequality), ("sup", cmd_sup),
                     ("nopole", cmd_nopole), ("oracle", cmd_oracle)):
        sub_cfg = cfg
        if name == "gk" and (cfg.n or 0) > 5:
            sub_cfg = RunConfig(**{**cfg.as_dict(), "n": 5,
                                   "composition": None,
                                   "primes": tuple(cfg.primes)})
        res, fails = fn(sub_cfg)
        results.append({"check": name,
                        "cases": len(res), "failures": len(fails)})
        for f in fails:
            failures.append({"check": name, **f})
    return results, failures


COMMANDS = {
    "gk": cmd_gk,
    "apply": cmd_apply,
    "expand": cmd_expand,
    "inequality": cmd_inequality,
    "sup": cmd_sup,
    "nopole": cmd_nopole,
    "zeta-coeffs": cmd_zeta_coeffs,
    "oracle": cmd_oracle,
    "verify-all": cmd_verify_all,
}


def _fan_out(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heckezeta",
        description="Exact Iwahori-Hecke / intertwining-operator toolkit")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--n", type=int, default=None)
    ap.add_argument("--composition", type=str, default=None,
                    help="comma-separated parts, e.g. 1,2,1")
    ap.add_argument("--primes", type=str, default="2,3")
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--grid", type=int, default=1000, dest="grid_points",
                    help="sample points per s-variable")
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--max-subsets", type=int, default=2**20)
    ap.add_argument("--max-total-valuation", type=int, default=4)
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def parse_config(argv) -> tuple[str, RunConfig]:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        primes = tuple(int(x) for x in ns.primes.split(",") if x)
        comp = tuple(int(x) for x in ns.composition.split(",")) \
            if ns.composition else None
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if any(p < 2 for p in primes):
        raise UsageError("primes must be at least 2")
    if ns.grid_points < 1 or ns.max_subsets < 1:
        raise UsageError("grid and caps must be positive")
    workers = int(os.environ.get("HECKEZETA_WORKERS", "1") or "1")
    cfg = RunConfig(n=ns.n, composition=comp, primes=primes, eps=ns.eps,
                    grid_points=ns.grid_points, kmax=ns.kmax,
                    max_subsets=ns.max_subsets, format=ns.format,
                    seed=ns.seed, workers=max(1, workers),
                    max_total_valuation=ns.max_total_valuation)
    if cfg.composition and cfg.n is None:
        cfg.n = sum(cfg.composition)
    return ns.command, cfg


def render(command: str, cfg: RunConfig, results, failures,
           elapsed_ms: float) -> str:
    report = {"command": command, "config": cfg.as_dict(),
              "results": results, "failures": failures,
              "timings_ms": elapsed_ms}
    if cfg.format == "json":
        return json.dumps(report, indent=2, default=str)
    lines = [f"# {command}"]
    for r in results:
        lines.append(json.dumps(r, default=str))
    if failures:
        lines.append("FAILURES:")
        for f in failures:
            lines.append(json.dumps(f, default=str))
    else:
        lines.append("all checks passed")
    lines.append(f"elapsed: {elapsed_ms:.1f} ms")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        command, cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        return 2
    start = time.perf_counter()
    try:
        results, failures = COMMANDS[command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    print(render(command, cfg, results, failures, elapsed_ms))
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
