"""Batch verification driver.

Runs named check suites against the exact computations, collects pass/fail
results with witnesses, and emits text, markdown, or JSON reports.  Exit
status: 0 when every check passes, 1 when any check fails, 2 for usage
errors.

JSON schema: {"config": {...}, "checks": [{"suite", "check", "status",
"witness", "elapsed_ms"}, ...], "summary": {"total", "passed", "failed",
"skipped", "suites": {suite: {"passed", "failed", "skipped"}}}}.  Reports are
deterministic for a fixed config except for the elapsed_ms fields.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import basis, koszul, localform, matrixmodel, qchar, ring
from .poly import MultiPoly, format_poly
from .scalars import Rational
from .schur import degenerate_sigma, schur_poly

SUITES = (
    "schur",
    "character",
    "addition",
    "pole-orders",
    "weights",
    "leading-terms",
    "basis",
    "koszul",
    "matrix",
    "localform",
)

DEFAULTS = {
    "nq": 64,
    "nrank": 12,
    "koszul_window": 20,
    "localform_order": 12,
    "jobs": 1,
    "format": "text",
}


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    status: str  # "pass" | "fail" | "skipped"
    witness: str
    elapsed_ms: float


@dataclass(frozen=True)
class RunConfig:
    suites: tuple = SUITES
    nq: int = DEFAULTS["nq"]
    nrank: int = DEFAULTS["nrank"]
    koszul_window: int = DEFAULTS["koszul_window"]
    localform_order: int = DEFAULTS["localform_order"]
    jobs: int = DEFAULTS["jobs"]
    fmt: str = DEFAULTS["format"]
    out: str | None = None

    def __post_init__(self):
        for name in ("nq", "nrank", "koszul_window", "localform_order", "jobs"):
            if getattr(self, name) < 0 or (name == "jobs" and self.jobs < 1):
                raise ValueError(f"{name} must be positive")
        for s in self.suites:
            if s not in SUITES:
                raise ValueError(f"unknown suite {s!r}")


def _run_check(suite: str, name: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, witness = fn()
        status = "pass" if ok else "fail"
        if not ok and not witness:
            witness = "check returned false"
    except Exception as exc:  # noqa: BLE001 - any failure is a finding
        status = "fail"
        witness = f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - t0) * 1000.0
    return CheckResult(suite=suite, check=name, status=status, witness=witness, elapsed_ms=elapsed)


def _run_many(cfg: RunConfig, jobs_list) -> list:
    if cfg.jobs > 1 and len(jobs_list) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_run_check, s, n, f) for s, n, f in jobs_list]
            return [f.result() for f in futures]
    return [_run_check(s, n, f) for s, n, f in jobs_list]


# -- suites -----------------------------------------------------------------------


def suite_schur(cfg: RunConfig) -> list:
    golden = ring.load_golden()["schur"]

    def fixture(name, compute):
        def fn():
            got = format_poly(compute())
            want = golden[name]
            return got == want, f"computed {got!r}" + ("" if got == want else f" != recorded {want!r}")
        return fn

    jobs = [
        ("schur", "staircase-1", fixture("s_1", lambda: schur_poly((1,)))),
        ("schur", "staircase-21", fixture("s_21", lambda: schur_poly((2, 1)))),
        ("schur", "staircase-321", fixture("s_321", lambda: schur_poly((3, 2, 1)))),
        ("schur", "sigma-polynomial", fixture("sigma", degenerate_sigma)),
    ]
    return _run_many(cfg, jobs)


def suite_character(cfg: RunConfig) -> list:
    def identity():
        ch = qchar.character_series(cfg.nq)
        fam = qchar.family_count_series(cfg.nq)
        table = qchar.coefficient_table(ch)
        ok = ch == fam
        witness = "coefficients " + json.dumps(table)
        if not ok:
            diffs = [n for n in range(cfg.nq + 1) if ch[n] != fam[n]]
            witness = f"mismatch at q^{diffs[:8]}"
        return ok, witness

    def head():
        want = ring.load_golden()["character_head"]
        got = qchar.character_series(max(cfg.nq, 8)).integer_coefficients()[: len(want)]
        return got == want, f"q^0..q^{len(want)-1} = {got}"

    def nonneg():
        coeffs = qchar.character_series(cfg.nq).integer_coefficients()
        bad = [n for n, c in enumerate(coeffs) if c < 0]
        return not bad, f"negative at {bad}" if bad else "all coefficients are nonnegative integers"

    def counting():
        bad = [n for n in range(4, 201) if not qchar.gr_dimension_identity(n)]
        return not bad, f"fails at {bad}" if bad else "holds for 4 <= n <= 200"

    jobs = [
        ("character", "closed-form-vs-family-count", identity),
        ("character", "head-coefficients", head),
        ("character", "nonnegative-integer-coefficients", nonneg),
        ("character", "cube-difference-counting-identity", counting),
    ]
    return _run_many(cfg, jobs)


def suite_addition(cfg: RunConfig) -> list:
    def residual():
        r = ring.baker_addition_residual()
        if r.is_zero():
            return True, "cleared two-point identity is identically zero in u1..u3, v1..v3"
        return False, f"nonzero residual with {len(r.terms)} terms: {format_poly(r)[:400]}"

    def symmetry():
        ok = ring.baker_sides_swap_invariant()
        return ok, "both cleared sides are invariant under u <-> v"

    def at_v_zero():
        r = ring.baker_addition_residual()
        zero = MultiPoly.zero(ring.UV_VARS)
        bindings = {f"v{i}": zero for i in (1, 2, 3)}
        bindings.update({f"u{i}": MultiPoly.variable(ring.UV_VARS, f"u{i}") for i in (1, 2, 3)})
        rv = r.substitute(bindings, ring.UV_VARS)
        return rv.is_zero(), "residual specialised at v = 0 vanishes"

    jobs = [
        ("addition", "cleared-residual-zero", residual),
        ("addition", "sides-symmetric-under-swap", symmetry),
        ("addition", "residual-at-v-zero", at_v_zero),
    ]
    return _run_many(cfg, jobs)


def suite_pole_orders(cfg: RunConfig) -> list:
    def zeta_orders():
        got = {f"{i}{j}": ring.zeta(i, j).pole_order() for i in (1, 2, 3) for j in range(i, 4)}
        ok = all(v == 2 for v in got.values())
        return ok, f"orders {got}"

    def minor2_orders():
        got = {}
        for I, J in basis.MINOR2_PAIRS:
            got["".join(map(str, I)) + ";" + "".join(map(str, J))] = ring.minor(I, J).pole_order()
        ok = all(v <= 3 for v in got.values())
        return ok, f"orders {got}"

    def minor3_order():
        k = ring.minor((1, 2, 3), (1, 2, 3)).pole_order()
        return k <= 4, f"order {k}"

    def v0_order():
        k = ring.v_element(0).pole_order()
        return k == 2, f"order {k}"

    jobs = [
        ("pole-orders", "zeta-pairs-order-2", zeta_orders),
        ("pole-orders", "minors-2x2-order-le-3", minor2_orders),
        ("pole-orders", "minor-3x3-order-le-4", minor3_order),
        ("pole-orders", "difference-minor-order-2", v0_order),
    ]
    return _run_many(cfg, jobs)


def suite_weights(cfg: RunConfig) -> list:
    def v_weights():
        want = ring.load_golden()["weights"]
        got = {f"v{j}": ring.v_element(j).weight() for j in range(6)}
        ok = all(got[k] == want[k] for k in want)
        return ok, f"weights {got}"

    def zeta_weights():
        bad = []
        for a1 in range(5):
            for a2 in range(5 - a1):
                for a3 in range(5 - a1 - a2):
                    if 1 <= a1 + a2 + a3 <= 4:
                        want = a1 + 3 * a2 + 5 * a3
                        if ring.zeta_counts((a1, a2, a3)).weight() != want:
                            bad.append((a1, a2, a3))
        return not bad, f"mismatches {bad}" if bad else "all words of length <= 4 match"

    jobs = [
        ("weights", "pole-generator-weights", v_weights),
        ("weights", "zeta-word-weights", zeta_weights),
    ]
    return _run_many(cfg, jobs)


def suite_leading_terms(cfg: RunConfig) -> list:
    def make(check: ring.LeadingTermCheck):
        def fn():
            if check.advisory:
                witness = (
                    f"advisory: computed {check.computed!r}; recorded display {check.expected!r}; "
                    f"weight-homogeneous of weight {check.weight}"
                )
                return check.ok, witness
            witness = f"computed {check.computed!r}"
            if not check.matches:
                witness += f" != recorded {check.expected!r}"
            return check.ok, witness
        return fn

    return [_run_check("leading-terms", f"sigma4-{c.name}", make(c)) for c in ring.leading_term_checks()]


def suite_basis(cfg: RunConfig) -> list:
    def rank_at(n):
        def fn():
            r = basis.rank_check(n)
            return r.passed, f"count={r.count} rank={r.rank} expected={r.expected}"
        return fn

    def counts_match():
        coeffs = qchar.character_series(cfg.nq).integer_coefficients()
        bad = [n for n in range(cfg.nq + 1) if len(basis.enumerate_kp_basis(n)) != coeffs[n]]
        return not bad, f"family count != character at {bad}" if bad else f"family counts match character through q^{cfg.nq}"

    def a2_rank():
        r = ring.a2_span_rank()
        return r == 8, f"rank {r} of the 8 low-pole-order spanning elements"

    jobs = [("basis", f"rank-degree-{n:02d}", rank_at(n)) for n in range(cfg.nrank + 1)]
    jobs.append(("basis", "family-counts-vs-character", counts_match))
    jobs.append(("basis", "low-order-span-rank-8", a2_rank))
    return _run_many(cfg, jobs)


def suite_koszul(cfg: RunConfig) -> list:
    w = cfg.koszul_window

    def dims():
        got = [koszul.w_basis(k).dim() for k in range(4)]
        return got == [1, 6, 14, 14], f"dims {got}"

    def d_squared():
        bad = [(k, n) for k in (0, 1) for n in range(-w, w + 1) if not koszul.compose_is_zero(k, n)]
        return not bad, f"d o d != 0 at {bad}" if bad else f"d o d == 0 for |n| <= {w}"

    def exact_at(k):
        def fn():
            bad = [n for n in range(-w, w + 1) if not koszul.check_exactness(k, n)]
            return not bad, f"fails at degrees {bad}" if bad else f"exact at level {k} for |n| <= {w}"
        return fn

    def ev_quotient():
        return koszul.ev_respects_quotient(), "evaluation vanishes on the quotiented subspace"

    def ev_d():
        ops = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
        return koszul.ev_after_d_vanishes(ops), "ev o d == 0 on all level-2 representatives"

    def euler():
        bad = [n for n in range(-w, w + 1) if not koszul.euler_characteristic_matches(n)]
        return not bad, f"fails at {bad}" if bad else f"alternating dimension sum matches character for |n| <= {w}"

    def evgr_at(n):
        def fn():
            r = koszul.ev_gr_surjective(n)
            return r.passed, f"image-rank={r.rank} joined-rank={r.count} expected={r.expected}"
        return fn

    jobs = [
        ("koszul", "w-dimensions", dims),
        ("koszul", "d-squared-zero", d_squared),
        ("koszul", "exactness-level-0", exact_at(0)),
        ("koszul", "exactness-level-1", exact_at(1)),
        ("koszul", "exactness-level-2", exact_at(2)),
        ("koszul", "ev-well-defined", ev_quotient),
        ("koszul", "ev-after-d-zero", ev_d),
        ("koszul", "euler-characteristic", euler),
    ]
    jobs.extend(
        ("koszul", f"ev-surjective-degree-{n:+03d}", evgr_at(n))
        for n in range(-9, cfg.nrank - 9 + 1)
    )
    return _run_many(cfg, jobs)


def suite_matrix(cfg: RunConfig) -> list:
    def division():
        L = matrixmodel.full_L()  # raises RemainderError on failure
        c_top = matrixmodel.generator(L, "c2")
        return True, f"remainder zero; c2 = {str(c_top)[:120]}"

    def det():
        ok = matrixmodel.minus_det_is_4x7()
        return ok, "-det L(x) == 4 x^7 coefficientwise"

    def fields_for(l):
        def fn():
            L = matrixmodel.full_L()
            bad = [g for g in matrixmodel.GENERATOR_NAMES if not matrixmodel.vector_field_matches(l, g, L)]
            return not bad, f"mismatch on {bad}" if bad else f"D_{l} == -1/2 d_{l} on all {len(matrixmodel.GENERATOR_NAMES)} generators"
        return fn

    jobs = [
        ("matrix", "c-by-exact-division", division),
        ("matrix", "minus-det-is-4x7", det),
        ("matrix", "vector-field-1", fields_for(1)),
        ("matrix", "vector-field-2", fields_for(2)),
        ("matrix", "vector-field-3", fields_for(3)),
    ]
    return _run_many(cfg, jobs)


def _perturbations(seed: int = 20260810, count: int = 5) -> list:
    """Seeded degree >= 3 perturbations of the sigma polynomial that keep the
    quadratic part intact."""
    import random

    rng = random.Random(seed)
    monos = [
        (a1, a2, a3)
        for a1 in range(7)
        for a2 in range(4)
        for a3 in range(3)
        if a1 + a2 + a3 >= 3 and a1 + 3 * a2 + 5 * a3 >= 7 and a1 + a2 + a3 <= 6
    ]
    out = []
    for _ in range(count):
        picks = rng.sample(monos, 4)
        terms = [(e, Rational(rng.randint(-5, 5), rng.randint(1, 4))) for e in picks]
        p = degenerate_sigma() + MultiPoly.from_terms(("u1", "u2", "u3"), [t for t in terms if t[1]])
        out.append(p)
    return out


def suite_localform(cfg: RunConfig) -> list:
    order = cfg.localform_order

    def sigma_normal():
        cc = localform.normalize(degenerate_sigma(), order)
        ok = cc.residual.is_zero()
        return ok, (
            f"residual zero through degree {order}"
            if ok
            else f"residual: {str(cc.residual)[:200]}"
        )

    def perturbed(idx, p):
        def fn():
            cc = localform.normalize(p, order)
            return cc.residual.is_zero(), f"seeded perturbation {idx}: residual zero through degree {order}"
        return fn

    def degenerate():
        try:
            localform.normalize(
                MultiPoly.from_terms(("u1", "u2", "u3"), [((1, 0, 1), Rational(1))]), order
            )
        except localform.DegenerateQuadraticPart as exc:
            return True, f"raised as documented: {exc}"
        return False, "degenerate quadratic input did not raise"

    jobs = [("localform", "sigma-to-sum-of-squares", sigma_normal)]
    jobs.extend(
        ("localform", f"perturbation-{i}", perturbed(i, p))
        for i, p in enumerate(_perturbations())
    )
    jobs.append(("localform", "degenerate-input-raises", degenerate))
    return _run_many(cfg, jobs)


_SUITE_FUNCS = {
    "schur": suite_schur,
    "character": suite_character,
    "addition": suite_addition,
    "pole-orders": suite_pole_orders,
    "weights": suite_weights,
    "leading-terms": suite_leading_terms,
    "basis": suite_basis,
    "koszul": suite_koszul,
    "matrix": suite_matrix,
    "localform": suite_localform,
}


def run(config: RunConfig) -> dict:
    """Run the configured suites and assemble the report."""
    checks = []
    for s in config.suites:
        checks.extend(_SUITE_FUNCS[s](config))
    checks.sort(key=lambda c: (config.suites.index(c.suite), c.check))
    by_suite: dict = {}
    for c in checks:
        d = by_suite.setdefault(c.suite, {"passed": 0, "failed": 0, "skipped": 0})
        d["passed" if c.status == "pass" else "failed" if c.status == "fail" else "skipped"] += 1
    summary = {
        "total": len(checks),
        "passed": sum(1 for c in checks if c.status == "pass"),
        "failed": sum(1 for c in checks if c.status == "fail"),
        "skipped": sum(1 for c in checks if c.status == "skipped"),
        "suites": by_suite,
    }
    return {
        "config": {
            "suites": list(config.suites),
            "nq": config.nq,
            "nrank": config.nrank,
            "koszul_window": config.koszul_window,
            "localform_order": config.localform_order,
            "jobs": config.jobs,
        },
        "checks": [c.__dict__ for c in checks],
        "summary": summary,
    }


def emit(report: dict, fmt: str) -> str:
    """Render a report as json, text, or markdown."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    rows = [(c["suite"], c["check"], c["status"], f"{c['elapsed_ms']:.1f}", c["witness"]) for c in report["checks"]]
    header = ("suite", "check", "status", "ms", "witness")
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        for r in rows:
            lines.append("| " + " | ".join(str(x).replace("|", "\\|") for x in r) + " |")
    elif fmt == "text":
        widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(4)]
        lines = ["  ".join(str(h).ljust(w) for h, w in zip(header[:4], widths)) + "  witness"]
        lines.append("-" * (sum(widths) + 8 + 9))
        for r in rows:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(r[:4], widths)) + "  " + str(r[4]))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    s = report["summary"]
    lines.append("")
    lines.append(
        f"total {s['total']}  passed {s['passed']}  failed {s['failed']}  skipped {s['skipped']}"
    )
    return "\n".join(lines)


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(f"SIGMARING_{name}")
    if raw is None:
        return fallback
    return cast(raw)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sigmaring",
        description="Exact verification suites for the degenerate genus-3 sigma ring.",
    )
    p.add_argument(
        "--suite",
        action="append",
        help="suite to run (repeatable, comma separated, or 'all'); "
        f"known: {', '.join(SUITES)}; default all",
    )
    p.add_argument("--nq", type=int, default=None, help="q-series truncation order (default 64)")
    p.add_argument("--nrank", type=int, default=None, help="largest certified basis degree (default 12)")
    p.add_argument("--koszul-window", type=int, default=None, help="graded degree window |n| bound (default 20)")
    p.add_argument("--localform-order", type=int, default=None, help="normal-form truncation order (default 12)")
    p.add_argument("--jobs", type=int, default=None, help="worker pool size (default 1)")
    p.add_argument("--format", choices=("text", "json", "markdown"), default=None, help="report format")
    p.add_argument("--out", default=None, help="write the report to FILE instead of stdout")
    return p


def config_from_args(args) -> RunConfig:
    suites = args.suite or _env_default("SUITE", lambda s: [s], None)
    if suites:
        flat = []
        for s in suites:
            flat.extend(x.strip() for x in s.split(",") if x.strip())
        suites = tuple(SUITES) if "all" in flat else tuple(flat)
    else:
        suites = tuple(SUITES)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    return RunConfig(
        suites=suites,
        nq=args.nq if args.nq is not None else _env_default("NQ", int, DEFAULTS["nq"]),
        nrank=args.nrank if args.nrank is not None else _env_default("NRANK", int, DEFAULTS["nrank"]),
        koszul_window=args.koszul_window
        if args.koszul_window is not None
        else _env_default("KOSZUL_WINDOW", int, DEFAULTS["koszul_window"]),
        localform_order=args.localform_order
        if args.localform_order is not None
        else _env_default("LOCALFORM_ORDER", int, DEFAULTS["localform_order"]),
        jobs=args.jobs if args.jobs is not None else _env_default("JOBS", int, DEFAULTS["jobs"]),
        fmt=args.format if args.format is not None else _env_default("FORMAT", str, DEFAULTS["format"]),
        out=args.out if args.out is not None else os.environ.get("SIGMARING_OUT"),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))  # exits with status 2
    report = run(config)
    document = emit(report, config.fmt)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(document + "\n")
        s = report["summary"]
        print(f"wrote {config.out}: {s['passed']}/{s['total']} passed")
    else:
        print(document)
    return 0 if report["summary"]["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
