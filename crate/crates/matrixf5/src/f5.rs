//! The matrix-F5 engine: signature-indexed matrices built degree by
//! degree, the signature criterion that skips predictably-dependent rows,
//! and valid Gaussian elimination in top- or full-reduction mode.
//!
//! Rows are processed in strictly increasing signature order. The first
//! row to claim a leading monomial becomes that column's pivot; later
//! rows only ever reduce against earlier (smaller-signature) pivots, so
//! every elementary operation is valid by construction. New degree-d rows
//! are built by multiplying the stored (reduced) degree-(d-1) row of the
//! same generator by one variable, each multiplier arising from exactly
//! one parent.
//!
//! Every scalar multiplication performed in an axpy is counted; pivot
//! normalisations are tallied separately so the headline count stays
//! comparable across reduction conventions.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

/// Row signature: generator index (1-based) and monomial multiplier.
///
/// The order is index-first, then grevlex on the multiplier; the engine
/// never reduces a row by a row of larger signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    pub index: usize,
    pub multiplier: Monomial,
}

impl Signature {
    pub fn new(index: usize, multiplier: Monomial) -> Self {
        Signature { index, multiplier }
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.multiplier.grevlex_cmp(&other.multiplier))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.index, self.multiplier)
    }
}

/// Valid elimination flavour: clear only leading monomials, or every
/// pivot monomial of smaller-signature rows.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionMode {
    Top,
    Full,
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionMode::Top => write!(f, "top"),
            ReductionMode::Full => write!(f, "full"),
        }
    }
}

impl std::str::FromStr for ReductionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" => Ok(ReductionMode::Top),
            "full" => Ok(ReductionMode::Full),
            other => Err(Error::InvalidInput(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub mode: ReductionMode,
    /// Record per-step matrix snapshots (signatures, leading terms and
    /// full rows). Only sensible for small instances.
    pub trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: ReductionMode::Top,
            trace: false,
        }
    }
}

/// One basis element as produced by the run: the signature of the row it
/// came from and the (monic) polynomial.
#[derive(Clone, Debug)]
pub struct GBasisElement {
    pub signature: Signature,
    pub polynomial: Polynomial,
}

/// Per-(d, i) instrumentation.
#[derive(Clone, Debug, Serialize)]
pub struct StepStats {
    pub d: u32,
    pub i: usize,
    /// New rows constructed at this step (including any that reduce to 0).
    pub rows: u64,
    /// Rows skipped by the signature criterion.
    pub excluded: u64,
    /// Scalar multiplications spent in axpy updates.
    pub mults: u64,
    /// Scalar multiplications spent scaling pivots monic.
    pub norms: u64,
    pub zero_reductions: u64,
    /// Rows whose leading monomial moved during reduction: polynomials
    /// that had to be computed rather than copied. Mode-independent,
    /// since tail cleanup never moves a leading term.
    #[serde(skip)]
    pub rows_reduced: u64,
    /// Elements added to G_i at this step (instrumentation only).
    #[serde(skip)]
    pub basis_added: u64,
    /// Of those, rows whose signature index equals i.
    #[serde(skip)]
    pub basis_added_own: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatTotals {
    pub rows: u64,
    pub excluded: u64,
    pub mults: u64,
    pub norms: u64,
    pub zero_reductions: u64,
    /// Polynomials the run computed: rows that underwent at least one
    /// reduction. Bounded by (delta^m - 1)/(delta - 1) for uniform
    /// degrees, and in practice close to it.
    pub polys_computed: u64,
    /// Basis insertions with signature index equal to the step index.
    pub basis_insertions: u64,
}

/// Run instrumentation, serialisable as a single JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct RunStats {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<u32>,
    #[serde(rename = "D")]
    pub d_max: u32,
    pub mode: ReductionMode,
    pub per_step: Vec<StepStats>,
    pub totals: StatTotals,
}

impl RunStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialise")
    }
}

/// Snapshot of one matrix row for tracing.
#[derive(Clone, Debug)]
pub struct TraceRow {
    pub signature: Signature,
    pub leading_monomial: Monomial,
    pub terms: Vec<(Monomial, u64)>,
}

/// Snapshot of the state after one (d, i) step.
#[derive(Clone, Debug)]
pub struct StepTrace {
    pub d: u32,
    pub i: usize,
    pub columns: Vec<Monomial>,
    /// All rows of the reduced matrix, in storage (signature) order.
    pub rows: Vec<TraceRow>,
    /// Signatures skipped by the criterion at this step.
    pub excluded: Vec<Signature>,
    /// Basis elements inserted at this step (signature, leading monomial).
    pub added_to_basis: Vec<(Signature, Monomial)>,
}

#[derive(Clone, Debug, Default)]
pub struct RunTrace {
    pub steps: Vec<StepTrace>,
}

impl RunTrace {
    pub fn step(&self, d: u32, i: usize) -> Option<&StepTrace> {
        self.steps.iter().find(|s| s.d == d && s.i == i)
    }
}

/// Output of a run: the bases `G_1..G_m` (raw, with signatures, possibly
/// containing redundant elements), the instrumentation, and an optional
/// trace.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub bases: Vec<Vec<GBasisElement>>,
    pub stats: RunStats,
    pub trace: Option<RunTrace>,
}

/// The signature criterion: row (i, t) is skipped iff t is a leading
/// term of the reduced step matrix of the previous generator prefix at
/// degree `d - d_i`; such a row is a combination of smaller-index rows.
pub fn f5_criterion(crit: &HashSet<Monomial>, t: &Monomial) -> bool {
    crit.contains(t)
}

struct EngineRow {
    index: usize,
    multiplier: Monomial,
    lm: u32,
    /// Sorted by column; first entry is (lm, 1).
    entries: Vec<(u32, u32)>,
}

struct DegreeState {
    cols: Vec<Monomial>,
    col_of: HashMap<Monomial, u32>,
    rows: Vec<EngineRow>,
    pivot: Vec<Option<u32>>,
}

impl DegreeState {
    fn new(n: usize, d: u32) -> Self {
        let cols = crate::monomial::enumerate(n, d, n);
        let col_of = cols
            .iter()
            .enumerate()
            .map(|(j, m)| (m.clone(), j as u32))
            .collect();
        let pivot = vec![None; cols.len()];
        DegreeState {
            cols,
            col_of,
            rows: Vec::new(),
            pivot,
        }
    }
}

/// Slimmed-down record of a finished degree, kept for criterion lookups.
struct SlimDegree {
    /// Per column: signature index of the pivot-owning row, if any.
    pivot_owner: Vec<Option<u32>>,
    cols: Vec<Monomial>,
}

/// Runs matrix-F5 on a homogeneous system with ascending degrees,
/// computing the degree-truncated bases of every prefix up to `d_max`.
pub fn run(
    field: &PrimeField,
    system: &[Polynomial],
    d_max: u32,
    options: RunOptions,
) -> Result<RunOutput> {
    let n = validate(system)?;
    let m = system.len();
    let degrees: Vec<u32> = system.iter().map(|f| f.degree().unwrap()).collect();
    if d_max < degrees[0] {
        return Err(Error::InvalidInput(format!(
            "degree bound {d_max} is below the smallest input degree {}",
            degrees[0]
        )));
    }

    let mut bases: Vec<Vec<GBasisElement>> = vec![Vec::new(); m];
    let mut basis_lts: Vec<Vec<Monomial>> = vec![Vec::new(); m];
    let mut history: HashMap<u32, SlimDegree> = HashMap::new();
    let mut prev: Option<DegreeState> = None;
    let mut per_step: Vec<StepStats> = Vec::new();
    let mut trace = options.trace.then(RunTrace::default);

    for d in degrees[0]..=d_max {
        let mut state = DegreeState::new(n, d);
        let cols_len = state.cols.len();
        let mut scratch = vec![0u64; cols_len];
        let mut touched: Vec<u32> = Vec::new();
        // column maps for multiplying a degree-(d-1) row by each variable
        let mul_map: Vec<Vec<u32>> = match &prev {
            Some(p) => (1..=n)
                .map(|j| {
                    p.cols
                        .iter()
                        .map(|mo| state.col_of[&mo.mul_var(j)])
                        .collect()
                })
                .collect(),
            None => Vec::new(),
        };

        for i in 1..=m {
            let di = degrees[i - 1];
            let mut step = StepStats {
                d,
                i,
                rows: 0,
                excluded: 0,
                mults: 0,
                norms: 0,
                zero_reductions: 0,
                rows_reduced: 0,
                basis_added: 0,
                basis_added_own: 0,
            };
            let mut excluded_sigs: Vec<Signature> = Vec::new();

            if d == di {
                // the generator itself enters with signature (i, 1)
                let mut entries: Vec<(u32, u32)> = system[i - 1]
                    .terms()
                    .map(|(mo, &c)| (state.col_of[mo], c as u32))
                    .collect();
                entries.sort_unstable_by_key(|&(c, _)| c);
                insert_row(
                    field,
                    &mut state,
                    &mut scratch,
                    &mut touched,
                    i,
                    Monomial::one(n),
                    entries,
                    options.mode,
                    &mut step,
                );
            } else if d > di {
                let crit = criterion_set(&history, d - di, i);
                let prev_state = prev.as_ref().expect("previous degree exists");
                let mut candidates: Vec<(Monomial, usize, usize)> = Vec::new();
                for (pos, row) in prev_state.rows.iter().enumerate() {
                    if row.index != i {
                        continue;
                    }
                    let start = row.multiplier.max_var().max(1);
                    for j in start..=n {
                        let u = row.multiplier.mul_var(j);
                        if f5_criterion(&crit, &u) {
                            step.excluded += 1;
                            if options.trace {
                                excluded_sigs.push(Signature::new(i, u));
                            }
                        } else {
                            candidates.push((u, pos, j));
                        }
                    }
                }
                // insertion must follow the signature order
                candidates.sort_by(|a, b| a.0.grevlex_cmp(&b.0));
                for (u, pos, j) in candidates {
                    let parent = &prev_state.rows[pos];
                    let map = &mul_map[j - 1];
                    let entries: Vec<(u32, u32)> = parent
                        .entries
                        .iter()
                        .map(|&(c, v)| (map[c as usize], v))
                        .collect();
                    insert_row(
                        field,
                        &mut state,
                        &mut scratch,
                        &mut touched,
                        i,
                        u,
                        entries,
                        options.mode,
                        &mut step,
                    );
                }
            }

            // collect new basis elements: every row whose leading monomial
            // is not top-reducible by the current basis of prefix i
            let mut added: Vec<(Signature, Monomial)> = Vec::new();
            for row in &state.rows {
                let lm = &state.cols[row.lm as usize];
                if !basis_lts[i - 1].iter().any(|t| t.divides(lm)) {
                    let poly = Polynomial::from_terms(
                        n,
                        row.entries
                            .iter()
                            .map(|&(c, v)| (state.cols[c as usize].clone(), v as u64)),
                        field,
                    );
                    let sig = Signature::new(row.index, row.multiplier.clone());
                    basis_lts[i - 1].push(lm.clone());
                    bases[i - 1].push(GBasisElement {
                        signature: sig.clone(),
                        polynomial: poly,
                    });
                    step.basis_added += 1;
                    if row.index == i {
                        step.basis_added_own += 1;
                    }
                    added.push((sig, lm.clone()));
                }
            }

            if let Some(tr) = trace.as_mut() {
                tr.steps.push(StepTrace {
                    d,
                    i,
                    columns: state.cols.clone(),
                    rows: state
                        .rows
                        .iter()
                        .map(|r| TraceRow {
                            signature: Signature::new(r.index, r.multiplier.clone()),
                            leading_monomial: state.cols[r.lm as usize].clone(),
                            terms: r
                                .entries
                                .iter()
                                .map(|&(c, v)| (state.cols[c as usize].clone(), v as u64))
                                .collect(),
                        })
                        .collect(),
                    excluded: excluded_sigs,
                    added_to_basis: added,
                });
            }
            per_step.push(step);
        }

        history.insert(
            d,
            SlimDegree {
                pivot_owner: state
                    .pivot
                    .iter()
                    .map(|o| o.map(|r| state.rows[r as usize].index as u32))
                    .collect(),
                cols: state.cols.clone(),
            },
        );
        prev = Some(state);
    }

    let totals = StatTotals {
        rows: per_step.iter().map(|s| s.rows).sum(),
        excluded: per_step.iter().map(|s| s.excluded).sum(),
        mults: per_step.iter().map(|s| s.mults).sum(),
        norms: per_step.iter().map(|s| s.norms).sum(),
        zero_reductions: per_step.iter().map(|s| s.zero_reductions).sum(),
        polys_computed: per_step.iter().map(|s| s.rows_reduced).sum(),
        basis_insertions: per_step.iter().map(|s| s.basis_added_own).sum(),
    };
    let stats = RunStats {
        p: field.modulus(),
        n,
        m,
        degrees,
        d_max,
        mode: options.mode,
        per_step,
        totals,
    };
    Ok(RunOutput {
        bases,
        stats,
        trace,
    })
}

/// Convenience: run with the Macaulay bound as the degree cap.
pub fn run_to_macaulay_bound(
    field: &PrimeField,
    system: &[Polynomial],
    options: RunOptions,
) -> Result<RunOutput> {
    let degrees: Vec<u32> = system
        .iter()
        .map(|f| {
            f.degree()
                .ok_or_else(|| Error::InvalidInput("zero polynomial in system".into()))
        })
        .collect::<Result<_>>()?;
    let bound = crate::bounds::macaulay_bound(&degrees);
    run(field, system, bound, options)
}

fn validate(system: &[Polynomial]) -> Result<usize> {
    let n = system
        .first()
        .map(|f| f.n_vars())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    let mut last = 0;
    for f in system {
        if f.n_vars() != n {
            return Err(Error::InvalidInput("mixed variable counts".into()));
        }
        let Some(deg) = f.degree() else {
            return Err(Error::InvalidInput("zero polynomial in system".into()));
        };
        if !f.is_homogeneous() {
            return Err(Error::InvalidInput(
                "system is not homogeneous".into(),
            ));
        }
        if deg < last {
            return Err(Error::InvalidInput(
                "input degrees must be sorted ascending".into(),
            ));
        }
        last = deg;
    }
    Ok(n)
}

fn criterion_set(history: &HashMap<u32, SlimDegree>, d: u32, i: usize) -> HashSet<Monomial> {
    let mut crit = HashSet::new();
    if let Some(rec) = history.get(&d) {
        for (col, owner) in rec.pivot_owner.iter().enumerate() {
            if let Some(idx) = owner {
                if (*idx as usize) < i {
                    crit.insert(rec.cols[col].clone());
                }
            }
        }
    }
    crit
}

/// Valid elimination of one incoming row against all existing pivots,
/// then registration as a pivot if it survives. Scratch holds reduced
/// residues; `touched` records every column written so the buffer can be
/// wiped in O(work).
#[allow(clippy::too_many_arguments)]
fn insert_row(
    field: &PrimeField,
    state: &mut DegreeState,
    scratch: &mut [u64],
    touched: &mut Vec<u32>,
    index: usize,
    multiplier: Monomial,
    entries: Vec<(u32, u32)>,
    mode: ReductionMode,
    step: &mut StepStats,
) {
    let p = field.modulus();
    step.rows += 1;
    for &(c, v) in &entries {
        scratch[c as usize] = v as u64;
        touched.push(c);
    }
    let initial_lm = entries.first().map(|&(c, _)| c);
    let mut lm: Option<u32> = None;
    let mut pos = entries.first().map(|&(c, _)| c as usize).unwrap_or(scratch.len());
    while pos < scratch.len() {
        let v = scratch[pos];
        if v == 0 {
            pos += 1;
            continue;
        }
        match state.pivot[pos] {
            Some(r) => {
                let reducer = &state.rows[r as usize];
                // every elementary operation adds a strictly smaller
                // signature into a larger one
                debug_assert!(
                    reducer.index < index
                        || (reducer.index == index
                            && reducer.multiplier.grevlex_cmp(&multiplier)
                                == std::cmp::Ordering::Less)
                );
                let c_neg = p - v;
                for &(col, w) in &reducer.entries {
                    let cell = &mut scratch[col as usize];
                    *cell = (*cell + c_neg * w as u64) % p;
                    touched.push(col);
                }
                step.mults += reducer.entries.len() as u64;
                debug_assert_eq!(scratch[pos], 0);
            }
            None => {
                if mode == ReductionMode::Top {
                    lm = Some(pos as u32);
                    break;
                }
                if lm.is_none() {
                    lm = Some(pos as u32);
                }
                pos += 1;
            }
        }
    }

    if lm != initial_lm {
        step.rows_reduced += 1;
    }
    let Some(lm) = lm else {
        step.zero_reductions += 1;
        wipe(scratch, touched);
        return;
    };

    // compress the surviving row, scaling it monic
    touched.sort_unstable();
    touched.dedup();
    let lead = scratch[lm as usize];
    let inv = field.inv(lead).expect("leading entry nonzero");
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &c in touched.iter() {
        if c < lm {
            debug_assert_eq!(scratch[c as usize], 0);
            continue;
        }
        let v = scratch[c as usize];
        if v != 0 {
            out.push((c, field.mul(v, inv) as u32));
        }
    }
    if lead != 1 {
        step.norms += out.len() as u64 - 1;
    }
    debug_assert_eq!(out[0], (lm, 1));
    wipe(scratch, touched);
    state.pivot[lm as usize] = Some(state.rows.len() as u32);
    state.rows.push(EngineRow {
        index,
        multiplier,
        lm,
        entries: out,
    });
}

fn wipe(scratch: &mut [u64], touched: &mut Vec<u32>) {
    for &c in touched.iter() {
        scratch[c as usize] = 0;
    }
    touched.clear();
}

/// Structure report for bases computed from systems in simultaneous
/// Noether position: every element ((j, t), g) of G_i must satisfy
/// j <= i, max_var(LT(g)) <= j and max_var(t) <= j - 1.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub violations: Vec<String>,
    /// Largest basis element degree seen across all G_i.
    pub max_degree: u32,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn structure_check(bases: &[Vec<GBasisElement>]) -> StructureReport {
    let mut violations = Vec::new();
    let mut max_degree = 0;
    for (idx, basis) in bases.iter().enumerate() {
        let i = idx + 1;
        for el in basis {
            let j = el.signature.index;
            let lm = el
                .polynomial
                .leading_monomial()
                .expect("basis elements are nonzero");
            max_degree = max_degree.max(lm.degree());
            if j > i {
                violations.push(format!(
                    "G_{i}: signature {} has index above {i}",
                    el.signature
                ));
            }
            if lm.max_var() > j {
                violations.push(format!(
                    "G_{i}: element {} has LT {} outside T^{j}",
                    el.signature, lm
                ));
            }
            if el.signature.multiplier.max_var() > j.saturating_sub(1) {
                violations.push(format!(
                    "G_{i}: multiplier of {} lies outside T^{}",
                    el.signature,
                    j - 1
                ));
            }
        }
    }
    StructureReport {
        violations,
        max_degree,
    }
}

/// Minimal, fully interreduced, monic basis from a raw element list.
///
/// Leading terms that are multiples of another element's leading term
/// are dropped, then every survivor is put in normal form with respect
/// to the others. The result is sorted by increasing leading monomial.
pub fn reduce_basis(field: &PrimeField, elements: &[Polynomial]) -> Vec<Polynomial> {
    let mut nonzero: Vec<&Polynomial> = elements.iter().filter(|f| !f.is_zero()).collect();
    nonzero.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .grevlex_cmp(b.leading_monomial().unwrap())
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for f in nonzero {
        let lm = f.leading_monomial().unwrap();
        if !kept
            .iter()
            .any(|g| g.leading_monomial().unwrap().divides(lm))
        {
            kept.push(f.monic(field));
        }
    }
    let snapshot = kept.clone();
    for (k, g) in kept.iter_mut().enumerate() {
        let others: Vec<Polynomial> = snapshot
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, other)| other.clone())
            .collect();
        *g = g.normal_form(&others, field).monic(field);
    }
    kept
}
