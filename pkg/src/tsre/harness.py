"""Monte-Carlo scenario runner, table replication targets, and the
real-data estimation pipeline.

A replication target is a named list of scenario rows; each row is run for a
number of replicates and every requested (method, selection) pair is
aggregated into mean / Monte-Carlo sd / mean reported se / bias / MSE.
Replicates are seeded independently of execution order and of the method
subset, so reruns and thread counts never change the emitted CSVs.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable

import numpy as np

from .engine import tsre_estimate
from .errors import ConfigError, DataError, EstimationError, TsreError
from .estimators import egger, ivw, simple_median, tsls, weighted_median
from .genotype import (
    GenotypeMatrix,
    Grm,
    StandardizedGenotypes,
    compute_grm,
    filter_related,
    load_genotypes,
    load_grm,
    simulate_genotypes,
    standardize,
)
from .simulate import ScenarioConfig, sample_effects, generate_phenotypes
from .sumstats import (
    VariantSummary,
    per_variant_regression,
    select_by_pvalue,
    select_top_k,
)

__all__ = [
    "ReplicationSpec",
    "ReplicateResult",
    "RealDataResult",
    "METHOD_TAGS",
    "TARGETS",
    "parse_selection",
    "apply_selection",
    "run_scenario",
    "reproduce_table",
    "estimate_real",
    "save_phenotype",
    "load_phenotype",
    "builtin_rows",
]

RESULT_HEADER = "target,row_id,method,selection,mean,sd_mc,mean_se,bias,mse,reps,reps_failed"
LONG_HEADER = "target,row_id,method,selection,rep,estimate,se"

# Default comparator set for the builtin tables; 2SLS is available through
# the CLI and custom targets but is not part of the table layouts.
DEFAULT_METHODS = ("sm", "wm", "ivw", "egger", "tsre")
METHOD_TAGS = ("sm", "wm", "ivw", "ivw_fe", "egger", "tsre", "tsls")

# Fixed slots so that per-method bootstrap streams do not depend on the
# order or subset of requested methods.
_METHOD_SLOTS = {tag: i for i, tag in enumerate(METHOD_TAGS)}

# Methods that consume randomness (bootstrap standard errors).
_NEEDS_RNG = {"sm", "wm"}

_OMITTED_NOTE = "# omitted methods: divw, raps, lasso (not implemented)"


@dataclass
class ReplicationSpec:
    """What to run: replicate count, base seed, methods, and selection.

    selection None applies the per-method convention (tsre uses all
    variants, everything else the top 20 by p-value); an explicit selection
    string applies to every method.
    """

    target: str = "custom"
    reps: int = 100
    seed: int = 0
    methods: tuple[str, ...] = DEFAULT_METHODS
    selection: str | None = None
    overrides: dict | None = None

    def validate(self) -> None:
        if self.reps < 1:
            raise ConfigError("reps must be at least 1")
        if not self.methods:
            raise ConfigError("at least one method is required")
        for tag in self.methods:
            if tag not in METHOD_TAGS:
                raise ConfigError(
                    f"unknown method {tag!r}; choose from {', '.join(METHOD_TAGS)}"
                )
        if self.selection is not None:
            parse_selection(self.selection)


@dataclass
class ReplicateResult:
    """Aggregated Monte-Carlo outcome for one (row, method, selection)."""

    row_id: str
    method: str
    selection: str
    mean: float
    sd_mc: float
    mean_se: float
    bias: float
    mse: float
    reps: int
    reps_failed: int
    config: ScenarioConfig
    estimates: np.ndarray
    ses: np.ndarray
    rep_index: np.ndarray

    def csv_row(self, target: str) -> str:
        cells = [
            target,
            self.row_id,
            self.method,
            self.selection,
            repr(self.mean),
            repr(self.sd_mc),
            repr(self.mean_se),
            repr(self.bias),
            repr(self.mse),
            str(self.reps),
            str(self.reps_failed),
        ]
        return ",".join(cells)


def parse_selection(text: str) -> tuple[str, int | float | None]:
    """Parse a selection spec: 'all', 'top:K', or 'pval:A'."""
    if text == "all":
        return "all", None
    kind, sep, value = text.partition(":")
    if sep and kind == "top":
        try:
            k = int(value)
        except ValueError:
            raise ConfigError(f"invalid top-K selection {text!r}") from None
        if k < 1:
            raise ConfigError("top-K selection needs K >= 1")
        return "top", k
    if sep and kind == "pval":
        try:
            alpha = float(value)
        except ValueError:
            raise ConfigError(f"invalid p-value selection {text!r}") from None
        if not 0.0 < alpha <= 1.0:
            raise ConfigError("p-value selection needs 0 < alpha <= 1")
        return "pval", alpha
    raise ConfigError(
        f"unknown selection {text!r}; expected 'all', 'top:K', or 'pval:A'"
    )


def apply_selection(
    summaries: list[VariantSummary], selection: str
) -> list[VariantSummary]:
    kind, value = parse_selection(selection)
    if kind == "all":
        return summaries
    if kind == "top":
        picked = select_top_k(summaries, int(value))
    else:
        picked = select_by_pvalue(summaries, float(value))
    return [summaries[i] for i in picked]


def default_selection(tag: str) -> str:
    return "all" if tag == "tsre" else "top:20"


def _columns_for(summaries: list[VariantSummary], std: StandardizedGenotypes):
    index = {vid: i for i, vid in enumerate(std.variant_ids)}
    return np.array([index[s.variant_id] for s in summaries], dtype=np.intp)


def _run_method(tag, selection, std, grm_cache, summaries, x, y, rng_for):
    """Run one (method, selection) pair on a simulated replicate."""
    selected = apply_selection(summaries, selection)
    if tag == "tsre":
        if selection == "all":
            if grm_cache.get("all") is None:
                grm_cache["all"] = compute_grm(std)
            grm = grm_cache["all"]
        else:
            cols = _columns_for(selected, std)
            sub = StandardizedGenotypes(
                values=np.ascontiguousarray(std.values[:, cols]),
                variant_ids=[std.variant_ids[c] for c in cols],
                dropped_variants=[],
            )
            grm = compute_grm(sub)
        fit = tsre_estimate(grm, x, y)
        return fit.theta_hat, fit.se
    if tag == "tsls":
        cols = _columns_for(selected, std)
        est = tsls(std.values[:, cols], x, y)
        return est.theta_hat, est.se
    if tag == "ivw":
        est = ivw(selected, mode="random")
    elif tag == "ivw_fe":
        est = ivw(selected, mode="fixed")
    elif tag == "egger":
        est = egger(selected)
    elif tag == "sm":
        est = simple_median(selected, rng=rng_for(tag))
    elif tag == "wm":
        est = weighted_median(selected, rng=rng_for(tag))
    else:
        raise ConfigError(f"unknown method {tag!r}")
    return est.theta_hat, est.se


def _replicate_outcomes(args):
    """Worker: simulate one replicate and run every method on it.

    Returns a list aligned with the (method, selection) jobs; entries are
    (theta_hat, se) or None for a failed estimator.
    """
    cfg, jobs, seed, row_key, rep = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(row_key, rep)))
    gm = simulate_genotypes(cfg.n, cfg.m_total, cfg.maf_low, cfg.maf_high, rng)
    try:
        std = standardize(gm)
        pheno = generate_phenotypes(std, sample_effects(cfg, rng), cfg, rng)
        summaries = per_variant_regression(std, pheno.x, pheno.y)
    except TsreError:
        return [None] * len(jobs)

    def rng_for(tag):
        key = (row_key, rep, 1000 + _METHOD_SLOTS[tag])
        return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))

    grm_cache: dict[str, Grm | None] = {"all": None}
    out = []
    for tag, selection in jobs:
        try:
            out.append(
                _run_method(tag, selection, std, grm_cache, summaries, pheno.x, pheno.y, rng_for)
            )
        except TsreError:
            out.append(None)
    return out


def _aggregate(row_id, cfg, tag, selection, outcomes, reps) -> ReplicateResult:
    kept = [(i, o) for i, o in enumerate(outcomes) if o is not None]
    rep_index = np.array([i for i, _ in kept], dtype=np.int64)
    est = np.array([o[0] for _, o in kept])
    ses = np.array([o[1] for _, o in kept])
    failed = reps - est.size
    if est.size == 0:
        mean = sd = mean_se = bias = mse = float("nan")
    else:
        mean = float(np.mean(est))
        sd = float(np.std(est, ddof=1)) if est.size > 1 else float("nan")
        mean_se = float(np.mean(ses))
        bias = mean - cfg.theta
        mse = float(np.mean((est - cfg.theta) ** 2))
    return ReplicateResult(
        row_id=row_id,
        method=tag,
        selection=selection,
        mean=mean,
        sd_mc=sd,
        mean_se=mean_se,
        bias=bias,
        mse=mse,
        reps=reps,
        reps_failed=failed,
        config=cfg,
        estimates=est,
        ses=ses,
        rep_index=rep_index,
    )


def run_scenario(
    cfg: ScenarioConfig,
    spec: ReplicationSpec,
    row_key: int = 0,
    row_id: str = "custom",
    jobs: list[tuple[str, str]] | None = None,
    threads: int = 1,
) -> list[ReplicateResult]:
    """Run one scenario row for all requested (method, selection) pairs.

    jobs overrides the spec's methods/selection resolution when a target
    needs the same method under several selections.  Per-replicate seeds
    depend only on (spec.seed, row_key, replicate index), so any thread
    count and any method subset reproduce identical numbers.
    """
    cfg.validate()
    spec.validate()
    if threads < 1:
        raise ConfigError("threads must be at least 1")
    if jobs is None:
        jobs = [
            (tag, spec.selection or default_selection(tag)) for tag in spec.methods
        ]
    for tag, selection in jobs:
        if tag not in METHOD_TAGS:
            raise ConfigError(f"unknown method {tag!r}")
        parse_selection(selection)
    args = [(cfg, jobs, spec.seed, row_key, rep) for rep in range(spec.reps)]
    if threads == 1:
        per_rep = [_replicate_outcomes(a) for a in args]
    else:
        chunk = max(1, spec.reps // (4 * threads))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_rep = list(pool.map(_replicate_outcomes, args, chunksize=chunk))
    results = []
    for j, (tag, selection) in enumerate(jobs):
        outcomes = [per_rep[rep][j] for rep in range(spec.reps)]
        results.append(_aggregate(row_id, cfg, tag, selection, outcomes, spec.reps))
    return results


# ---------------------------------------------------------------------------
# Built-in replication targets
# ---------------------------------------------------------------------------

_RHO_E = 0.35  # shared-confounder correlation used by all built-in rows


def _scenario(**kw) -> ScenarioConfig:
    base = dict(
        n=1000,
        theta=0.3,
        sigma2_ex=2.0,
        sigma2_ey=2.0,
        rho_e=_RHO_E,
        maf_low=0.2,
        maf_high=0.3,
    )
    base.update(kw)
    return ScenarioConfig(**base)


def _both_selections(methods=DEFAULT_METHODS):
    return [(tag, "all") for tag in methods] + [(tag, "top:20") for tag in methods]


def _default_jobs(methods=DEFAULT_METHODS):
    return [(tag, default_selection(tag)) for tag in methods]


def _rows_table2():
    rows = []
    cells = [
        ("balanced", 0.0, "rho00", 0.0),
        ("directional", 0.1, "rho00", 0.0),
        ("balanced", 0.0, "rho08", 0.8),
        ("directional", 0.1, "rho08", 0.8),
    ]
    for pleio, mu_y, rho_tag, rho in cells:
        for weak_tag, p_strong in (("weak80", 0.2), ("weak100", 0.0)):
            cfg = _scenario(
                m_b=100,
                m_c=100,
                sigma_gb=0.045,
                sigma_gc_x=0.045,
                sigma_gc_y=0.045,
                mu_gc_y=mu_y,
                rho_gc=rho,
                p_strong=p_strong,
                mu_strong=0.2,
                sigma_strong=0.05,
                strong_groups="c",
            )
            rows.append((f"{pleio}_{rho_tag}_{weak_tag}", cfg, _default_jobs()))
    return rows


def _rows_table3():
    rows = []
    for m in (100, 200, 500):
        cfg = _scenario(
            m_a=m,
            m_b=m,
            m_c=m,
            m_d=m,
            sigma_gb=0.03,
            sigma_gc_x=0.03,
            sigma_gc_y=0.03,
            sigma_gd=0.03,
        )
        rows.append((f"per_group_{m}", cfg, _both_selections()))
    return rows


def _rows_table4():
    rows = []
    for m_a in (1000, 2000, 5000, 10000, 20000, 50000):
        cfg = _scenario(
            m_a=m_a,
            m_b=1000,
            m_c=1000,
            m_d=1000,
            sigma_gb=0.03,
            sigma_gc_x=0.03,
            sigma_gc_y=0.03,
            sigma_gd=0.03,
            p_strong=0.2,
            mu_strong=0.2,
            sigma_strong=0.03,
            strong_groups="c",
        )
        rows.append((f"null_{m_a}", cfg, [("tsre", "all")]))
    return rows


def _rows_fig3(both=False):
    rows = []
    for m_b in (100, 1000, 5000):
        for sg_tag, sigma in (("sg003", 0.03), ("sg005", 0.05)):
            cfg = _scenario(m_b=m_b, sigma_gb=sigma)
            jobs = _both_selections() if both else _default_jobs()
            rows.append((f"mb{m_b}_{sg_tag}", cfg, jobs))
    return rows


def _rows_s1():
    rows = _rows_fig3(both=True)
    # Extra low-heritability cell: same genetics as mb5000_sg005 but with
    # residual variances inflated to bring Var(X) explained down to 0.42.
    cfg = _scenario(m_b=5000, sigma_gb=0.05, sigma2_ex=17.26, sigma2_ey=17.26)
    rows.append(("mb5000_sg005_her042", cfg, _both_selections()))
    return rows


def _rows_fig4(both=False):
    rows = []
    for m_b in (100, 1000, 5000):
        for weak_tag, p_strong in (("weak80", 0.2), ("weak100", 0.0)):
            cfg = _scenario(
                m_b=m_b,
                sigma_gb=0.05,
                p_strong=p_strong,
                mu_strong=0.2,
                sigma_strong=0.05,
                strong_groups="b",
            )
            jobs = _both_selections() if both else _default_jobs()
            rows.append((f"mb{m_b}_{weak_tag}", cfg, jobs))
    return rows


def _rows_s3():
    rows = []
    for n in (1000, 3000, 5000, 10000):
        for weak_tag, p_strong in (("weak80", 0.2), ("weak100", 0.0)):
            cfg = _scenario(
                n=n,
                m_b=1000,
                sigma_gb=0.03,
                p_strong=p_strong,
                mu_strong=0.2,
                sigma_strong=0.03,
                strong_groups="b",
            )
            rows.append((f"n{n}_{weak_tag}", cfg, _both_selections()))
    return rows


def _rows_s4():
    rows = []
    for pleio, mu_y in (("balanced", 0.0), ("directional", 0.1)):
        for m_b in range(0, 1001, 100):
            cfg = _scenario(
                m_b=m_b,
                m_c=1000 - m_b,
                sigma_gb=0.03,
                sigma_gc_x=0.03,
                sigma_gc_y=0.03,
                mu_gc_y=mu_y,
            )
            rows.append((f"mb{m_b}_{pleio}", cfg, _both_selections()))
    return rows


TARGETS: dict[str, Callable[[], list]] = {
    "table2": _rows_table2,
    "table3": _rows_table3,
    "table4": _rows_table4,
    "fig3": _rows_fig3,
    "fig4": _rows_fig4,
    "s1": _rows_s1,
    "s2": lambda: _rows_fig4(both=True),
    "s3": _rows_s3,
    "s4": _rows_s4,
}

_LONG_TARGETS = {"fig3", "fig4"}


def builtin_rows(target: str, config: ScenarioConfig | None = None):
    """Row definitions (row_id, config, jobs) for a replication target."""
    if target == "custom":
        if config is None:
            raise ConfigError("the custom target requires a scenario config")
        return [("custom", config, None)]
    if target not in TARGETS:
        raise ConfigError(
            f"unknown target {target!r}; choose from "
            f"{', '.join(sorted(TARGETS))}, custom"
        )
    return TARGETS[target]()


def _format_config_row(row_id: str, cfg: ScenarioConfig) -> str:
    cells = [row_id]
    for f in fields(ScenarioConfig):
        value = getattr(cfg, f.name)
        cells.append(repr(value) if isinstance(value, float) else str(value))
    return ",".join(cells)


def reproduce_table(
    target: str,
    out_dir,
    reps: int = 100,
    seed: int = 0,
    threads: int = 1,
    config: ScenarioConfig | None = None,
) -> list[str]:
    """Run a replication target and write its CSV outputs.

    Writes <target>_results.csv (aggregates) and <target>_scenarios.csv
    (flattened per-row configs); distribution targets also write
    <target>_estimates_long.csv with every per-replicate estimate.  Returns
    the list of written paths.
    """
    rows = builtin_rows(target, config)
    os.makedirs(out_dir, exist_ok=True)
    spec = ReplicationSpec(target=target, reps=reps, seed=seed)
    spec.validate()

    results_path = os.path.join(out_dir, f"{target}_results.csv")
    scen_path = os.path.join(out_dir, f"{target}_scenarios.csv")
    long_path = os.path.join(out_dir, f"{target}_estimates_long.csv")
    written = [results_path, scen_path]

    all_results: list[tuple[str, list[ReplicateResult]]] = []
    for row_key, (row_id, cfg, jobs) in enumerate(rows):
        row_results = run_scenario(
            cfg, spec, row_key=row_key, row_id=row_id, jobs=jobs, threads=threads
        )
        all_results.append((row_id, row_results))

    with open(results_path, "w") as fh:
        if target != "custom":
            fh.write(_OMITTED_NOTE + "\n")
        fh.write(RESULT_HEADER + "\n")
        for _, row_results in all_results:
            for res in row_results:
                fh.write(res.csv_row(target) + "\n")

    with open(scen_path, "w") as fh:
        names = ",".join(f.name for f in fields(ScenarioConfig))
        fh.write(f"row_id,{names}\n")
        for row_key, (row_id, cfg, _) in enumerate(rows):
            fh.write(_format_config_row(row_id, cfg) + "\n")

    if target in _LONG_TARGETS:
        with open(long_path, "w") as fh:
            fh.write(LONG_HEADER + "\n")
            for _, row_results in all_results:
                for res in row_results:
                    for i in range(res.estimates.size):
                        fh.write(
                            f"{target},{res.row_id},{res.method},{res.selection},"
                            f"{res.rep_index[i]},{res.estimates[i]!r},{res.ses[i]!r}\n"
                        )
        written.append(long_path)
    return written


# ---------------------------------------------------------------------------
# Real-data pipeline
# ---------------------------------------------------------------------------


@dataclass
class RealDataResult:
    method: str
    theta_hat: float
    se: float
    n: int
    m_used: int

    def csv(self) -> str:
        return (
            "method,theta_hat,se,n,m_used\n"
            f"{self.method},{self.theta_hat!r},{self.se!r},{self.n},{self.m_used}\n"
        )


def save_phenotype(path, ids, values) -> None:
    values = np.asarray(values, dtype=np.float64)
    if len(ids) != values.size:
        raise DataError("phenotype ids and values disagree in length")
    with open(path, "w") as fh:
        fh.write("id,value\n")
        for i, v in zip(ids, values):
            fh.write(f"{i},{float(v)!r}\n")


def load_phenotype(path) -> tuple[list[str], np.ndarray]:
    """Read an `id,value` CSV; duplicate ids and bad floats are errors."""
    ids: list[str] = []
    values: list[float] = []
    seen: set[str] = set()
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "id,value":
            raise DataError(f"{path}: expected header 'id,value', got {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            ident, sep, text = line.partition(",")
            if not sep:
                raise DataError(f"{path}: line {lineno}: expected 'id,value'")
            if ident in seen:
                raise DataError(f"{path}: line {lineno}: duplicate id {ident!r}")
            seen.add(ident)
            try:
                value = float(text)
            except ValueError:
                raise DataError(
                    f"{path}: line {lineno}: cannot parse value {text!r}"
                ) from None
            ids.append(ident)
            values.append(value)
    if not ids:
        raise DataError(f"{path}: no phenotype rows")
    return ids, np.array(values, dtype=np.float64)


def _align(gm: GenotypeMatrix, exposure, outcome):
    """Match phenotype rows to genotype rows by individual id."""
    exp_ids, exp_vals = exposure
    out_ids, out_vals = outcome
    if gm.individual_ids is None:
        raise DataError("genotype matrix has no individual ids to align on")
    geno_index = {ident: i for i, ident in enumerate(gm.individual_ids)}
    missing = [i for i in exp_ids if i not in geno_index]
    missing += [i for i in out_ids if i not in geno_index]
    if missing:
        shown = ", ".join(sorted(set(missing))[:10])
        raise DataError(
            f"{len(set(missing))} phenotype ids are absent from the genotypes: {shown}"
        )
    exp_map = dict(zip(exp_ids, exp_vals))
    out_map = dict(zip(out_ids, out_vals))
    keep = [i for i in gm.individual_ids if i in exp_map and i in out_map]
    if len(keep) < 3:
        raise DataError(
            f"only {len(keep)} individuals have genotypes and both phenotypes"
        )
    rows = np.array([geno_index[i] for i in keep], dtype=np.intp)
    x = np.array([exp_map[i] for i in keep], dtype=np.float64)
    y = np.array([out_map[i] for i in keep], dtype=np.float64)
    return rows, keep, x, y


def _subset_genotypes(gm: GenotypeMatrix, rows, ids) -> GenotypeMatrix:
    return GenotypeMatrix(
        dosages=np.ascontiguousarray(gm.dosages[rows]),
        variant_ids=list(gm.variant_ids),
        maf=None if gm.maf is None else gm.maf,
        individual_ids=list(ids),
    )


def estimate_real(
    genotypes,
    exposure,
    outcome,
    method: str = "tsre",
    selection: str | None = None,
    grm_cutoff: float | None = None,
    grm_path=None,
) -> RealDataResult:
    """File-based estimation: load, align, filter, standardize, estimate.

    grm_cutoff removes one member of every pair more related than the
    cutoff before estimation; grm_path supplies a precomputed GRM for that
    filtering step and for the pair regression (it must match the aligned
    sample).  Genotypes are re-standardized after any filtering.
    """
    if method not in METHOD_TAGS:
        raise ConfigError(
            f"unknown method {method!r}; choose from {', '.join(METHOD_TAGS)}"
        )
    selection = selection or default_selection(method)
    parse_selection(selection)

    gm = load_genotypes(genotypes)
    rows, ids, x, y = _align(gm, load_phenotype(exposure), load_phenotype(outcome))
    gm = _subset_genotypes(gm, rows, ids)

    std = standardize(gm)
    grm = None
    if grm_path is not None:
        grm = load_grm(grm_path)
        if grm.n != gm.n:
            raise DataError(
                f"precomputed GRM has n={grm.n} but {gm.n} individuals remain "
                "after alignment"
            )
    if grm_cutoff is not None:
        if grm is None:
            grm = compute_grm(std)
        kept = filter_related(grm, grm_cutoff)
        if kept.size < gm.n:
            gm = _subset_genotypes(gm, kept, [ids[k] for k in kept])
            x = x[kept]
            y = y[kept]
            std = standardize(gm)
            grm = None  # stale after subsetting; recomputed below if needed
    if gm.n < 3:
        raise EstimationError(f"only {gm.n} individuals remain after filtering")

    summaries = per_variant_regression(std, x, y)
    selected = apply_selection(summaries, selection)

    if method == "tsre":
        if selection != "all":
            cols = _columns_for(selected, std)
            std = StandardizedGenotypes(
                values=np.ascontiguousarray(std.values[:, cols]),
                variant_ids=[std.variant_ids[c] for c in cols],
                dropped_variants=list(std.dropped_variants),
            )
            grm = None  # a full-variant GRM does not apply to the subset
        if grm is None:
            grm = compute_grm(std)
        fit = tsre_estimate(grm, x, y)
        return RealDataResult("tsre", fit.theta_hat, fit.se, fit.n, fit.m)
    if method == "tsls":
        cols = _columns_for(selected, std)
        est = tsls(std.values[:, cols], x, y)
        return RealDataResult("tsls", est.theta_hat, est.se, gm.n, est.n_iv)

    rng = np.random.default_rng(0)
    if method == "ivw":
        est = ivw(selected, mode="random")
    elif method == "ivw_fe":
        est = ivw(selected, mode="fixed")
    elif method == "egger":
        est = egger(selected)
    elif method == "sm":
        est = simple_median(selected, rng=rng)
    else:
        est = weighted_median(selected, rng=rng)
    return RealDataResult(method, est.theta_hat, est.se, gm.n, est.n_iv)
