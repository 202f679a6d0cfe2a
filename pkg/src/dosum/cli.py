"""Command-line harness: parameter echo, table computation and the verification battery.

Exit codes: 0 tables match (or nothing failed), 1 mismatch, 2 invalid
parameters, 3 skipped (case not covered or budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import __version__
from .budget import budget_limit, check_budget
from .codes import (
    C1,
    C2,
    WeightTable,
    build_code,
    codeword_weight,
    normalize_message_counts,
    punctured_gcd,
    theorem_c1_weights,
    theorem_c2_weights,
    weight_distribution_enum,
    weight_distribution_from_sums,
    weight_from_sums,
)
from .cyclo import CycInt, gauss_sum, pstar
from .errors import BudgetExceeded, InapplicableCase, ValidationError
from .expsum import (
    FAST,
    ORACLE,
    PAIR_SWEEP,
    STRUCTURAL,
    DistTable,
    _dd_counts,
    _phi_linear,
    artin_count,
    artin_fibre_criterion,
    count_gamma_all,
    count_gamma_theorem,
    dd_value,
    moment_system_counts,
    moments,
    s_distribution,
    s_fast,
    s_oracle_many,
    s_tally_by_gamma,
    s_zero_count_from_classes,
    t_class,
    t_distribution,
    t_fast,
    t_oracle,
    theorem_s_distribution,
    theorem_t_distribution,
)
from .gf_core import DD, ParamSet, build_ctx, derive_params
from .quadform import (
    build_A,
    build_H,
    diagonalize,
    kernel_dim,
    make_basis,
    solve_coordinate_shift,
    solve_shift,
)
from .seqcorr import (
    correlation,
    gamma_coverage,
    mix,
    sample_correlations,
    theorem_correlation_distribution,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_SKIPPED = 0, 1, 2, 3
SCHEMA = 1

PROFILES = {
    "smoke": {"p": 3, "n": 3, "k": 1, "t": [1], "samples": {"corr": 100_000}},
    "p5": {"p": 5, "n": 3, "k": 1, "t": [1]},
    "n5": {"p": 3, "n": 5, "k": 1, "t": [1], "samples": {"gamma_pairs_per_class": 100}},
    "dd-even": {"p": 3, "n": 6, "k": 2, "t": [1, 2]},
    "dd2": {"p": 3, "n": 8, "k": 1, "t": [1], "samples": {"triples": 10_000, "artin": 100}},
    "mu-neg": {"p": 3, "n": 10, "k": 1, "t": [1], "samples": {"pairs": 100_000, "oracle_pairs": 100, "artin": 20}},
    "k-sixth": {"p": 3, "n": 6, "k": 1, "t": [1]},
}

DEFAULT_SAMPLES = {
    "pairs": 2000,
    "oracle_pairs": 100,
    "triples": 2000,
    "artin": 50,
    "gamma_pairs_per_class": 10,
    "messages": 200,
    "corr": 20_000,
    "structure": 40,
}


# ----------------------------------------------------------------------
# sharded sweeps
# ----------------------------------------------------------------------
def _shard_job(job):
    kind, (p, n, k, t), method, alphas = job
    params = derive_params(p, n, k, t)
    ctx = build_ctx(p, n)
    if kind == "t":
        return t_distribution(ctx, params, method, alphas).to_json()
    if kind == "s":
        return s_distribution(ctx, params, method, alphas).to_json()
    return dict(weight_distribution_from_sums(ctx, params, kind, alphas))


def _shards(alphas, workers: int):
    parts = max(1, workers * 4)
    return [a.tolist() for a in np.array_split(np.asarray(alphas), parts) if a.size]


def sharded_sweep(kind: str, params: ParamSet, method: Optional[str], workers: int, alphas=None):
    """Run a sweep over ``alpha`` shards, in-process or on a process pool, and merge.

    ``alphas=None`` means every ``alpha`` in F_q; weight sweeps are then
    normalized to codeword counts.
    """
    key = (params.p, params.n, params.k, params.t)
    ctx = build_ctx(params.p, params.n)
    full = alphas is None
    if workers <= 1:
        if kind == "t":
            return t_distribution(ctx, params, method, alphas)
        if kind == "s":
            return s_distribution(ctx, params, method, alphas)
        return weight_distribution_from_sums(ctx, params, kind, alphas)
    alphas = np.arange(params.q) if full else alphas
    jobs = [(kind, key, method, sh) for sh in _shards(alphas, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_shard_job, jobs))
    if kind in ("t", "s"):
        return DistTable.merged(DistTable.from_json(x) for x in parts)
    merged = WeightTable.merged(WeightTable(x) for x in parts)
    return normalize_message_counts(ctx, params, kind, merged) if full else merged


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------
@dataclass
class CheckResult:
    name: str
    status: str  # PASS / FAIL / SKIPPED / INFO
    mode: str = "EXHAUSTIVE"  # EXHAUSTIVE / SAMPLED
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        extra = f" [{self.mode.lower()}]" if self.status in ("PASS", "FAIL") else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.name}: {self.status}{extra}{tail} ({self.seconds:.1f}s)"


def environment() -> dict:
    return {
        "dosum": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "platform": platform.platform(),
        "budget": budget_limit(),
    }


def _table_json(table) -> list:
    return table.to_json()


def _diff_json(a, b) -> list:
    keys = sorted(set(a) | set(b))
    out = []
    for k in keys:
        x, y = a.get(k, 0), b.get(k, 0)
        if x != y:
            label = k.to_json() if isinstance(k, CycInt) else k
            out.append({"value": label, "expected": str(x), "actual": str(y)})
    return out


def write_output(path: Optional[str], fmt: str, payload: dict, table=None):
    if not path:
        return
    if fmt == "csv":
        if table is None:
            raise ValueError("nothing to write as CSV")
        text = table.to_csv()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def print_table(title: str, table):
    print(f"{title} (mass {table.mass()})")
    if isinstance(table, WeightTable):
        for w, c in sorted(table.items()):
            print(f"  {w}\t{c}")
    else:
        for v, c in table.sorted_items():
            print(f"  {v}\t{c}")


# ----------------------------------------------------------------------
# verification battery
# ----------------------------------------------------------------------
class Battery:
    """All checks for one parameter set; results accumulate in ``self.results``."""

    def __init__(self, params: ParamSet, samples: dict, seed: int, workers: int):
        self.params = params
        self.ctx = build_ctx(params.p, params.n)
        self.samples = {**DEFAULT_SAMPLES, **samples}
        self.rng = np.random.default_rng(seed)
        self.seed = seed
        self.workers = workers
        self.results: list = []
        self.t_tally: Optional[DistTable] = None
        self.s_tally: Optional[DistTable] = None

    # -- plumbing -----------------------------------------------------------
    def run(self, name: str, fn: Callable[[], CheckResult]):
        t0 = time.time()
        try:
            res = fn()
        except (InapplicableCase, BudgetExceeded) as exc:
            res = CheckResult(name, "SKIPPED", detail=f"{type(exc).__name__}: {exc}")
        except AssertionError as exc:
            res = CheckResult(name, "FAIL", detail=f"assertion: {exc}")
        res.name = name
        res.seconds = time.time() - t0
        self.results.append(res)
        print(f"  {res.line()}", flush=True)
        return res

    def _pairs(self, count: int) -> np.ndarray:
        q = self.params.q
        pr = self.rng.integers(0, q, size=(count, 2))
        zero = (pr[:, 0] == 0) & (pr[:, 1] == 0)
        pr[zero, 1] = 1
        return pr

    def _ok(self, cond: bool, mode: str = "EXHAUSTIVE", detail: str = "", **data) -> CheckResult:
        return CheckResult("", "PASS" if cond else "FAIL", mode, detail, data=data)

    # -- checks ---------------------------------------------------------------
    def check_params(self):
        P = self.params
        g = punctured_gcd(P)
        cases = ", ".join(f"{k}: {v or 'n/a'}" for k, v in P.cases().items())
        return CheckResult("", "PASS", detail=f"case {P.case_tag}; gcd(q-1, p^k+1) = {g}; {cases}")

    def check_gauss(self):
        p = self.params.p
        return self._ok(gauss_sum(p, 1) ** 2 == pstar(p), detail=f"G^2 = {pstar(p)}")

    def check_t_distribution(self):
        P, q = self.params, self.params.q
        theorem = theorem_t_distribution(P)
        try:
            check_budget(q * q, "T fast sweep")
        except BudgetExceeded:
            return self._t_sampled(theorem)
        tally = sharded_sweep("t", P, FAST, self.workers)
        self.t_tally = tally
        ok = tally == theorem
        detail = f"{len(tally)} values over {tally.mass()} pairs"
        if q <= 243:
            ok = ok and sharded_sweep("t", P, ORACLE, self.workers) == tally
            detail += "; oracle agrees"
        return self._ok(ok, detail=detail, diff=_diff_json(theorem, tally))

    def _t_sampled(self, theorem):
        P, ctx = self.params, self.ctx
        pairs = self._pairs(self.samples["pairs"])
        support = set(theorem)
        if P.case_tag == DD:
            pl = _phi_linear(P)
            w = np.concatenate([pl.kernel_dims(b[:, 0], b[:, 1]) for b in np.array_split(pairs, max(1, len(pairs) // 20000))])
            ranks_ok = set(np.unique(w).tolist()) <= {0, 2, 4, 6}
            vals = [dd_value(P, int(x)) for x in np.unique(w)]
        else:
            ranks_ok = True
            vals = [t_fast(ctx, P, int(a), int(b)) for a, b in pairs]
        in_support = set(vals) <= support
        k = min(self.samples["oracle_pairs"], len(pairs))
        agree = all(t_fast(ctx, P, int(a), int(b)) == t_oracle(ctx, P, int(a), int(b)) for a, b in pairs[:k])
        cong = P.case_tag != DD or all(v.to_int() % (P.q0 + 1) == 1 for v in vals)
        return self._ok(
            ranks_ok and in_support and agree and cong,
            "SAMPLED",
            f"{len(pairs)} pairs: ranks ok {ranks_ok}, in support {in_support}, congruence {cong}; fast = oracle on {k}: {agree}",
        )

    def check_moments(self):
        if self.t_tally is None:
            raise BudgetExceeded("moments need the full T tally")
        rep = moments(self.params, self.t_tally)
        detail = f"first {rep.ok_first}, second {rep.ok_second}" + (f", third {rep.ok_third}" if rep.third is not None else "")
        return self._ok(rep.ok, detail=detail)

    def check_congruence(self):
        P = self.params
        if P.case_tag != DD:
            raise InapplicableCase("congruence mod p^d + 1 is stated for d' = 2d")
        if self.t_tally is None:
            raise BudgetExceeded("covered by the sampled T check")
        ok = all(v.to_int() % (P.q0 + 1) == 1 for v in self.t_tally)
        return self._ok(ok, detail=f"T = 1 mod {P.q0 + 1} on all pairs")

    def check_moment_system(self):
        P = self.params
        if P.case_tag != DD:
            raise InapplicableCase("closed forms given for d' = 2d only")
        c = moment_system_counts(self.ctx, P)
        m3 = P.p ** (P.n + 3 * P.d) + P.p**P.n - P.p ** (3 * P.d)
        ok = c["M2"] == c["M2_expected"] and c["Tprime"] == c["Tprime_expected"] and c["M3_relation"] and c["M3"] == m3
        return self._ok(ok, detail=f"M2 = {c['M2']}, T' = {c['Tprime']}, M3 = {c['M3']}")

    def check_artin(self):
        P, ctx = self.params, self.ctx
        if P.case_tag != DD:
            raise InapplicableCase("point count identity needs d' = 2d")
        pairs = self._pairs(self.samples["artin"])
        for a, b in pairs:
            artin_count(ctx, P, int(a), int(b))
        fib = artin_fibre_criterion(ctx, P.d)
        return self._ok(fib, "SAMPLED", f"identity on {len(pairs)} pairs; fibre criterion {fib}")

    def check_s_distribution(self):
        P, q = self.params, self.params.q
        theorem = theorem_s_distribution(P)
        try:
            check_budget(q**3, "S pair sweep")
        except BudgetExceeded:
            return self._s_sampled(theorem)
        tally = sharded_sweep("s", P, PAIR_SWEEP, self.workers)
        self.s_tally = tally
        ok = tally == theorem
        detail = f"{len(tally)} values over {tally.mass()} triples"
        try:
            check_budget(q**4, "S oracle sweep")
            ok = ok and sharded_sweep("s", P, ORACLE, self.workers) == tally
            detail += "; oracle agrees"
        except BudgetExceeded:
            pass
        return self._ok(ok, detail=detail, diff=_diff_json(theorem, tally))

    def _s_sampled(self, theorem):
        P, ctx = self.params, self.ctx
        N = self.samples["triples"]
        trip = self.rng.integers(0, P.q, size=(N, 3))
        oracle = s_oracle_many(ctx, P, trip)
        fast = [s_fast(ctx, P, int(a), int(b), int(g)) for a, b, g in trip]
        agree = oracle == fast
        in_support = set(fast) <= set(theorem)
        mass_ok = theorem.mass() == P.q**3
        if P.case_tag == DD:
            counts = [int(x) for x in _dd_counts(P)]
            zero_ok = theorem[CycInt.from_int(P.p, 0)] == s_zero_count_from_classes(P, dict(zip((0, 2, 4, 6), counts)))
        else:
            zero_ok = True
        return self._ok(
            agree and in_support and mass_ok and zero_ok,
            "SAMPLED",
            f"{N} triples: fast = oracle {agree}, in support {in_support}; table mass {mass_ok}, zero row {zero_ok}",
        )

    def check_s_fast(self):
        P, ctx = self.params, self.ctx
        N = min(self.samples["triples"], 500)
        trip = self.rng.integers(0, P.q, size=(N, 3))
        oracle = s_oracle_many(ctx, P, trip)
        ok = all(s_fast(ctx, P, int(a), int(b), int(g)) == o for (a, b, g), o in zip(trip, oracle))
        return self._ok(ok, "SAMPLED", f"{N} triples")

    def check_gamma_independence(self):
        P, q = self.params, self.params.q
        if q > 243:
            raise BudgetExceeded("exhaustive per-gamma tallies run for q <= 243")
        try:
            check_budget(q**4, "S oracle sweep")
            method = ORACLE
        except BudgetExceeded:
            method = STRUCTURAL
        tallies = s_tally_by_gamma(self.ctx, P, method)
        ok = all(tallies[g] == tallies[1] for g in range(1, q))
        return self._ok(ok, detail=f"{q - 1} nonzero gamma, {method.lower()} tallies")

    def check_gamma_counts(self):
        P, ctx = self.params, self.ctx
        per = self.samples["gamma_pairs_per_class"]
        seen: dict = {}
        bad = 0
        for a, b in self._pairs(per * 40):
            a, b = int(a), int(b)
            cls = t_class(P, t_fast(ctx, P, a, b))
            if seen.get(cls, 0) >= per:
                continue
            seen[cls] = seen.get(cls, 0) + 1
            for av, cnt in count_gamma_all(ctx, P, a, b).items():
                ac = 0 if av == 0 else ctx.quad_char(av, P.t)
                bad += cnt != count_gamma_theorem(P, cls[1], cls[0], ac)
        detail = ", ".join(f"(eps={e:+d}, i={i}): {c}" for (e, i), c in sorted(seen.items()))
        return self._ok(bad == 0, "SAMPLED", f"pairs per class {detail}")

    def _structure_pairs(self):
        return self._pairs(self.samples["structure"])

    def check_basis_invariance(self):
        P, ctx = self.params, self.ctx
        B0, B1 = make_basis(ctx, P.d, 0), make_basis(ctx, P.d, 1)
        ok = True
        for a, b in self._structure_pairs():
            a, b = int(a), int(b)
            p0 = diagonalize(build_H(ctx, P, B0, a, b))
            p1 = diagonalize(build_H(ctx, P, B1, a, b))
            ok = ok and p0 == p1 and p0.rank == P.s - kernel_dim(ctx, P, a, b)
        return self._ok(ok, "SAMPLED", "two bases, rank = s - kernel dimension")

    def check_solvability(self):
        P, ctx = self.params, self.ctx
        B = make_basis(ctx, P.d)
        exhaustive = P.q <= 27
        if exhaustive:
            trip = [(a, b, g) for a in range(P.q) for b in range(P.q) for g in range(P.q)]
        else:
            n = 20 if P.q <= 6561 else 4
            trip = [tuple(int(x) for x in r) for r in self.rng.integers(0, P.q, size=(n, 3))]
        ok = all(
            (solve_shift(ctx, P, a, b, g) is not None) == solve_coordinate_shift(build_H(ctx, P, B, a, b), build_A(ctx, P, B, g))
            for a, b, g in trip
        )
        return self._ok(ok, "EXHAUSTIVE" if exhaustive else "SAMPLED", f"{len(trip)} triples")

    def check_scaling(self):
        P, ctx = self.params, self.ctx
        B = make_basis(ctx, P.d)
        omegas = ctx.subfield(P.d)[1:].tolist()
        ok = True
        for a, b in self._structure_pairs()[:10]:
            a, b = int(a), int(b)
            T = t_fast(ctx, P, a, b)
            r = diagonalize(build_H(ctx, P, B, a, b)).rank
            for w in omegas:
                wa, wb = ctx.mul(w, a), ctx.mul(w, b)
                ok = ok and t_fast(ctx, P, wa, wb) == T.scale(ctx.quad_char(w, P.d) ** r)
                ok = ok and diagonalize(build_H(ctx, P, B, wa, wb)).rank == r
        sub_ok = all(ctx.quad_char(a, P.d) == ctx.quad_char(a, P.t) ** (P.d // P.t) for a in ctx.subfield(P.t)[1:].tolist())
        return self._ok(ok and sub_ok, "SAMPLED", f"{len(omegas)} scalars per pair; character restriction {sub_ok}")

    def _weights(self, which: str):
        P, ctx = self.params, self.ctx
        spec = build_code(ctx, P, which)
        theorem = (theorem_c1_weights if which == C1 else theorem_c2_weights)(P)
        size = (P.p**P.t) ** spec.dimension
        assert theorem.mass() == size, "theorem table mass differs from code size"
        try:
            table = weight_distribution_enum(ctx, P, which)
            how = "enumeration"
        except BudgetExceeded:
            try:
                check_budget(P.q ** (2 if which == C1 else 3), "message sweep")
                table = sharded_sweep(which, P, None, self.workers)
                how = "character sums over all messages"
            except BudgetExceeded:
                return self._weights_sampled(which, theorem)
        return self._ok(table == theorem, detail=f"dimension {spec.dimension}; {how}", diff=_diff_json(theorem, table))

    def _weights_sampled(self, which, theorem):
        P, ctx = self.params, self.ctx
        N = self.samples["messages"]
        msgs = self.rng.integers(0, P.q, size=(N, 3))
        ok = True
        for a, b, g in msgs:
            w = codeword_weight(ctx, P, which, int(a), int(b), int(g))
            ok = ok and w == weight_from_sums(ctx, P, which, int(a), int(b), int(g)) and w in theorem
        return self._ok(ok, "SAMPLED", f"{N} messages: direct weight = sum formula, in support")

    def check_c1(self):
        return self._weights(C1)

    def check_c2(self):
        return self._weights(C2)

    def check_weight_formula(self):
        P, ctx = self.params, self.ctx
        N = min(self.samples["messages"], 100)
        msgs = self.rng.integers(0, P.q, size=(N, 3))
        ok = True
        for which in (C1, C2):
            for a, b, g in msgs:
                ok = ok and codeword_weight(ctx, P, which, int(a), int(b), int(g)) == weight_from_sums(
                    ctx, P, which, int(a), int(b), int(g)
                )
        return self._ok(ok, "SAMPLED", f"{N} messages per code")

    def check_correlation(self):
        P, ctx = self.params, self.ctx
        theorem = theorem_correlation_distribution(P)
        consistent = mix(P, theorem_s_distribution(P), theorem_t_distribution(P)) == theorem
        if self.t_tally is not None and self.s_tally is not None:
            enum = mix(P, self.s_tally, self.t_tally)
            mode, ok = "EXHAUSTIVE", enum == theorem
        else:
            mode, ok = "SAMPLED", True
        N = self.samples["corr"] if P.q <= 729 else min(self.samples["corr"], 10_000)
        lit = sample_correlations(ctx, P, N, seed=self.seed)
        in_support = set(lit) <= set(theorem)
        red = True
        for row in self.rng.integers(0, P.q, size=(5, 5)):
            a1, b1, a2, b2, tau = (int(x) for x in row)
            correlation(ctx, P, (a1, b1), (a2, b2), tau % ctx.order)
        detail = f"mixing of the S and T tables {consistent}; {N} literal samples in support {in_support}"
        return self._ok(ok and consistent and in_support and red, mode, detail)

    def check_coverage(self):
        P = self.params
        if P.q > 243:
            raise BudgetExceeded("exhaustive bookkeeping runs for q <= 243")
        ids = [(0, 0), (1, 2 % P.q), (P.q - 1, 5 % P.q)]
        ok = all(gamma_coverage(self.ctx, P, i) for i in ids)
        return self._ok(ok, detail=f"{len(ids)} fixed second sequences")

    def check_determinism(self):
        P = self.params
        if P.q <= 729:
            alphas, mode = None, "EXHAUSTIVE"
        else:
            alphas, mode = list(range(32)), "SAMPLED"
        one = json.dumps(sharded_sweep("t", P, FAST, 1, alphas).to_json())
        two = json.dumps(sharded_sweep("t", P, FAST, 2, alphas).to_json())
        scope = "all pairs" if alphas is None else f"{len(alphas)} alpha rows"
        return self._ok(one == two, mode, f"T tally JSON identical for 1 and 2 workers over {scope}")

    def check_published(self):
        """Compare the tables as originally printed with the corrected ones (informational)."""
        P = self.params
        makers = {
            "s_distribution": theorem_s_distribution,
            "c1_weights": theorem_c1_weights,
            "c2_weights": theorem_c2_weights,
            "correlation": theorem_correlation_distribution,
        }
        notes = []
        for name, fn in makers.items():
            try:
                fixed = fn(P)
            except InapplicableCase:
                continue
            try:
                printed = fn(P, as_printed=True)
            except (ArithmeticError, ValueError) as exc:
                notes.append(f"{name}: printed form not evaluable ({exc})")
                continue
            rows = _diff_json(fixed, printed)
            if rows:
                notes.append(f"{name}: printed form differs in {len(rows)} rows")
        return CheckResult("", "INFO", detail="; ".join(notes) or "printed forms agree")

    def all_checks(self):
        checks = [
            ("params", self.check_params),
            ("gauss_square", self.check_gauss),
            ("t_distribution", self.check_t_distribution),
            ("moments", self.check_moments),
            ("congruence", self.check_congruence),
            ("moment_system", self.check_moment_system),
            ("artin_count", self.check_artin),
            ("s_distribution", self.check_s_distribution),
            ("s_fast_vs_oracle", self.check_s_fast),
            ("gamma_independence", self.check_gamma_independence),
            ("gamma_counts", self.check_gamma_counts),
            ("basis_invariance", self.check_basis_invariance),
            ("solvability", self.check_solvability),
            ("scaling", self.check_scaling),
            ("c1_weights", self.check_c1),
            ("c2_weights", self.check_c2),
            ("weight_formula", self.check_weight_formula),
            ("correlation", self.check_correlation),
            ("coverage", self.check_coverage),
            ("determinism", self.check_determinism),
            ("published_tables", self.check_published),
        ]
        for name, fn in checks:
            self.run(name, fn)
        return self.results


def resolve_profile(name: str) -> dict:
    if name in PROFILES:
        prof = dict(PROFILES[name])
        prof["name"] = name
        return prof
    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            prof = json.load(fh)
        prof.setdefault("name", os.path.basename(name))
        t = prof.get("t", [1])
        prof["t"] = t if isinstance(t, list) else [t]
        return prof
    raise ValidationError(f"unknown profile {name!r} (known: {', '.join(PROFILES)})")


def run_profile(prof: dict, seed: int, workers: int) -> dict:
    runs = []
    for t in prof["t"]:
        params = derive_params(prof["p"], prof["n"], prof["k"], t)
        ctx = build_ctx(params.p, params.n)
        print(f"profile {prof['name']}: p={params.p} n={params.n} k={params.k} t={t}", flush=True)
        bat = Battery(params, prof.get("samples", {}), prof.get("seed", seed), workers)
        results = bat.all_checks()
        runs.append(
            {
                "params": params.to_dict(),
                "modulus": [int(c) for c in ctx.modulus],
                "checks": [asdict(r) for r in results],
            }
        )
    statuses = [c["status"] for r in runs for c in r["checks"]]
    return {
        "schema": SCHEMA,
        "profile": prof["name"],
        "seed": seed,
        "status": "FAIL" if "FAIL" in statuses else "PASS",
        "runs": runs,
        "environment": environment(),
    }


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def _params_from(args) -> ParamSet:
    pos = list(args.values or [])
    vals = {}
    for name, default in (("p", None), ("n", None), ("k", None), ("t", 1)):
        flag = getattr(args, name, None)
        if flag is not None:
            vals[name] = flag
        elif pos:
            vals[name] = int(pos.pop(0))
        else:
            vals[name] = default
    if None in (vals["p"], vals["n"], vals["k"]):
        raise ValidationError("p, n and k are required")
    return derive_params(vals["p"], vals["n"], vals["k"], vals["t"])


def cmd_params(args) -> int:
    P = _params_from(args)
    info = P.to_dict()
    print(f"p={P.p} n={P.n} k={P.k} t={P.t}")
    for key, val in info["derived"].items():
        print(f"{key}: {val}")
    print(f"k_quarter: {P.k_quarter}")
    for key, val in P.cases().items():
        print(f"{key}: {val or 'n/a'}")
    write_output(args.out, "json", {"schema": SCHEMA, "params": info, "cases": P.cases()})
    return EXIT_OK


def _compare(name: str, args, P: ParamSet, theorem_fn, compute_fn) -> int:
    ctx = build_ctx(P.p, P.n)
    method = args.method
    theorem = computed = None
    payload = {"schema": SCHEMA, "command": name, "params": P.to_dict(), "modulus": [int(c) for c in ctx.modulus], "method": method}
    t0 = time.time()
    if method in ("theorem", "both"):
        theorem = theorem_fn()
        payload["theorem"] = _table_json(theorem)
        print_table(f"{name} closed form", theorem)
    if method in ("oracle", "fast", "both"):
        computed, how = compute_fn("oracle" if method == "oracle" else "fast")
        payload["computed"] = _table_json(computed)
        payload["computed_by"] = how
        print_table(f"{name} computed ({how})", computed)
    status = EXIT_OK
    if theorem is not None and computed is not None:
        diff = _diff_json(theorem, computed)
        payload["diff"] = diff
        payload["status"] = "PASS" if not diff else "FAIL"
        print(f"{name}: {payload['status']}")
        status = EXIT_OK if not diff else EXIT_MISMATCH
    payload["seconds"] = round(time.time() - t0, 3)
    payload["environment"] = environment()
    write_output(args.out, args.format, payload, computed if computed is not None else theorem)
    return status


def cmd_tdist(args) -> int:
    P = _params_from(args)
    return _compare(
        "t_distribution",
        args,
        P,
        lambda: theorem_t_distribution(P),
        lambda m: (sharded_sweep("t", P, ORACLE if m == "oracle" else FAST, args.workers), m),
    )


def cmd_sdist(args) -> int:
    P = _params_from(args)
    return _compare(
        "s_distribution",
        args,
        P,
        lambda: theorem_s_distribution(P),
        lambda m: (sharded_sweep("s", P, ORACLE if m == "oracle" else PAIR_SWEEP, args.workers), m),
    )


def cmd_weights(args) -> int:
    P = _params_from(args)
    which = C1 if args.code == "c1" else C2
    ctx = build_ctx(P.p, P.n)

    def compute(m):
        if m == "oracle":
            return weight_distribution_enum(ctx, P, which), "enumeration"
        if args.method == "both":
            try:
                return weight_distribution_enum(ctx, P, which), "enumeration"
            except BudgetExceeded:
                pass
        return sharded_sweep(which, P, None, args.workers), "character sums"

    theorem_fn = (lambda: theorem_c1_weights(P)) if which == C1 else (lambda: theorem_c2_weights(P))
    return _compare(f"{args.code}_weights", args, P, theorem_fn, compute)


def cmd_corr(args) -> int:
    P = _params_from(args)

    def compute(m):
        if m == "oracle":
            s = sharded_sweep("s", P, ORACLE, args.workers)
            t = sharded_sweep("t", P, ORACLE, args.workers)
        else:
            s = sharded_sweep("s", P, PAIR_SWEEP, args.workers)
            t = sharded_sweep("t", P, FAST, args.workers)
        return mix(P, s, t), f"{m} sweeps mixed over shifts"

    return _compare("correlation", args, P, lambda: theorem_correlation_distribution(P), compute)


def cmd_verify(args) -> int:
    prof = resolve_profile(args.profile)
    t0 = time.time()
    report = run_profile(prof, args.seed, args.workers)
    report["seconds"] = round(time.time() - t0, 3)
    counts = {}
    for r in report["runs"]:
        for c in r["checks"]:
            counts[c["status"]] = counts.get(c["status"], 0) + 1
    print(f"verify {prof['name']}: {report['status']} " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    write_output(args.out, "json", report)
    return EXIT_OK if report["status"] == "PASS" else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dosum", description="Exact exponential-sum, code-weight and correlation tables.")
    parser.add_argument("--version", action="version", version=f"dosum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_method=True):
        sp.add_argument("values", nargs="*", type=int, help="p n k [t]")
        for name in ("p", "n", "k", "t"):
            sp.add_argument(f"--{name}", type=int)
        sp.add_argument("--out", help="output path")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--seed", type=int, default=0)
        if with_method:
            sp.add_argument("--method", choices=("oracle", "fast", "theorem", "both"), default="both")

    sp = sub.add_parser("params", help="print derived parameters and the applicable table cases")
    common(sp, with_method=False)
    sp.set_defaults(func=cmd_params)
    for name, fn, help_ in (
        ("tdist", cmd_tdist, "value distribution of T over all pairs"),
        ("sdist", cmd_sdist, "value distribution of S over all triples"),
        ("corr", cmd_corr, "correlation distribution of the sequence family"),
    ):
        sp = sub.add_parser(name, help=help_)
        common(sp)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("weights", help="weight distribution of C1 or C2")
    common(sp)
    sp.add_argument("--code", choices=("c1", "c2"), default="c1")
    sp.set_defaults(func=cmd_weights)
    sp = sub.add_parser("verify", help="run the verification battery for a profile")
    sp.add_argument("profile", help=f"profile name ({', '.join(PROFILES)}) or JSON file")
    sp.add_argument("--out", help="JSON report path")
    sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InapplicableCase, BudgetExceeded) as exc:
        print(f"skipped: {type(exc).__name__}: {exc}", file=sys.stderr)
        if getattr(args, "out", None):
            write_output(args.out, "json", {"schema": SCHEMA, "status": "SKIPPED", "reason": str(exc)})
        return EXIT_SKIPPED


if __name__ == "__main__":
    sys.exit(main())
