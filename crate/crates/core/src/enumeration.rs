//! Exhaustive and sampled iteration over symmetric grids, and the
//! experiments built on it.
//!
//! A symmetric grid is determined by which squares of its fundamental
//! region are void, so grids are handled as bit masks over that region.
//! Exhaustive runs split the mask range into fixed chunks, process them in
//! parallel on the current rayon pool, and merge the partial results in
//! chunk order, so reports do not depend on the number of threads.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitgraph::{crossword_multigraph, equivalent, reconstruct_grid};
use crate::conditions::{check_all, ConditionId, ConditionReport};
use crate::grid::{
    fundamental_region, fundamental_region_size, rotate180, serialize_grid, validate, Coord, Grid, StructureReport,
};
use crate::network::{build_licn, fundamental_graph};
use crate::voiding::{places_full_grid_halved, places_fundamental_lines, voided_from_grid};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 3;

/// Largest half-size whose fundamental region fits in a `u128`.
pub const MAX_N: usize = 7;

/// Masks per parallel work unit.
const CHUNK: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("exhaustive enumeration at n = {n} exceeds the limit n <= {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("n = {0} is too large; masks support n <= {MAX_N}")]
    TooLarge(usize),
    #[error("mask {bits:#x} has bits beyond the {len} squares of the fundamental region")]
    BitsOutOfRange { bits: u128, len: usize },
    #[error("grid is not 180 degree symmetric at {0}")]
    AsymmetricGrid(Coord),
}

/// Void squares of the fundamental region; bit `k` is the `k`-th square in
/// [`fundamental_region`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoidMask {
    n: usize,
    bits: u128,
}

impl VoidMask {
    pub fn new(n: usize, bits: u128) -> Result<Self, EnumerationError> {
        if n > MAX_N {
            return Err(EnumerationError::TooLarge(n));
        }
        let len = fundamental_region_size(n);
        if len < 128 && bits >> len != 0 {
            return Err(EnumerationError::BitsOutOfRange { bits, len });
        }
        Ok(VoidMask { n, bits })
    }

    pub fn from_grid(g: &Grid) -> Result<Self, EnumerationError> {
        if g.n() > MAX_N {
            return Err(EnumerationError::TooLarge(g.n()));
        }
        if let Some(c) = g.coords().find(|&c| g.get(c) != g.get(rotate180(c))) {
            return Err(EnumerationError::AsymmetricGrid(c));
        }
        let bits = fundamental_region(g.n())
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| g.is_void(c))
            .fold(0u128, |acc, (k, _)| acc | 1 << k);
        Ok(VoidMask { n: g.n(), bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        fundamental_region_size(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Void squares of the fundamental region, in canonical order.
    pub fn voids(&self) -> Vec<Coord> {
        fundamental_region(self.n)
            .into_iter()
            .enumerate()
            .filter(|&(k, _)| self.bits >> k & 1 == 1)
            .map(|(_, c)| c)
            .collect()
    }

    pub fn to_grid(&self) -> Grid {
        let mut g = Grid::all_cells(self.n);
        for c in self.voids() {
            g.set(c, crate::grid::Square::Void);
            g.set(rotate180(c), crate::grid::Square::Void);
        }
        g
    }
}

impl fmt::Display for VoidMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:{:#x}", self.n, self.bits)
    }
}

impl Serialize for VoidMask {
    /// Bits as a hex string: JSON numbers lose precision past 2^53.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            bits: String,
        }
        Repr {
            n: self.n,
            bits: format!("{:#x}", self.bits),
        }
        .serialize(s)
    }
}

/// Cells of the expanded grid as row bitboards: bit `x` of entry `y` is the
/// square `x` columns from the left and `y` rows from the top.
fn rows_of(mask: VoidMask) -> [u32; 2 * MAX_N + 1] {
    let n = mask.n;
    let side = 2 * n + 1;
    let mut rows = [0u32; 2 * MAX_N + 1];
    for row in rows.iter_mut().take(side) {
        *row = (1 << side) - 1;
    }
    let mut bits = mask.bits;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (x, y) = if k < n * side {
            (k % side, k / side)
        } else {
            (n + k - n * side, n)
        };
        rows[y] &= !(1 << x);
        rows[side - 1 - y] &= !(1 << (side - 1 - x));
    }
    rows
}

fn runs_at_least_three(mut line: u32) -> bool {
    while line != 0 {
        let start = line.trailing_zeros();
        let run = (!(line >> start)).trailing_zeros();
        if run < 3 {
            return false;
        }
        line &= !(((1u64 << run) - 1) as u32) << start;
    }
    true
}

/// [`crate::grid::is_valid`] on the expanded grid, computed on bitboards.
pub fn mask_is_valid(mask: VoidMask) -> bool {
    let side = 2 * mask.n + 1;
    let rows = rows_of(mask);
    let rows = &rows[..side];
    let mut cols = [0u32; 2 * MAX_N + 1];
    for (y, &r) in rows.iter().enumerate() {
        for (x, col) in cols.iter_mut().enumerate().take(side) {
            *col |= (r >> x & 1) << y;
        }
    }
    let cols = &cols[..side];
    if rows[0] == 0 || rows[side - 1] == 0 || cols[0] == 0 || cols[side - 1] == 0 {
        return false;
    }
    if !rows.iter().chain(cols).all(|&l| runs_at_least_three(l)) {
        return false;
    }
    let Some(first) = rows.iter().position(|&r| r != 0) else {
        return false;
    };
    let mut reach = [0u32; 2 * MAX_N + 1];
    reach[first] = rows[first] & rows[first].wrapping_neg();
    loop {
        let mut changed = false;
        for y in 0..side {
            let mut r = reach[y];
            if y > 0 {
                r |= reach[y - 1];
            }
            if y + 1 < side {
                r |= reach[y + 1];
            }
            r &= rows[y];
            loop {
                let wider = (r | r << 1 | r >> 1) & rows[y];
                if wider == r {
                    break;
                }
                r = wider;
            }
            if r != reach[y] {
                reach[y] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reach[..side] == *rows
}

fn mask_count(n: usize, limit: usize) -> Result<u128, EnumerationError> {
    if n > limit {
        return Err(EnumerationError::LimitExceeded { n, limit });
    }
    if n > MAX_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let len = fundamental_region_size(n);
    if len >= 128 {
        return Err(EnumerationError::TooLarge(n));
    }
    Ok(1u128 << len)
}

/// All masks of half-size `n` in ascending bit order.
pub fn enumerate_masks(n: usize, limit: usize) -> Result<impl Iterator<Item = VoidMask>, EnumerationError> {
    let total = mask_count(n, limit)?;
    Ok((0..total).map(move |bits| VoidMask { n, bits }))
}

/// Fold `f` over all masks in parallel chunks, merging in mask order.
fn fold_masks<P, F>(n: usize, limit: usize, f: F) -> Result<P, EnumerationError>
where
    P: Partial,
    F: Fn(&mut P, VoidMask) + Sync,
{
    let total = mask_count(n, limit)?;
    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<P> = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut p = P::default();
            for bits in start..end {
                f(&mut p, VoidMask { n, bits });
            }
            p
        })
        .collect();
    Ok(partials.into_iter().fold(P::default(), |mut acc, p| {
        acc.merge(p);
        acc
    }))
}

trait Partial: Default + Send {
    fn merge(&mut self, other: Self);
}

/// Seeded generator for sample `index`: one ChaCha stream per sample, so
/// samples do not depend on how the work is scheduled.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniformly random mask: every fundamental-region square void with
/// probability 1/2.
pub fn uniform_mask(n: usize, seed: u64, index: u64) -> Result<VoidMask, EnumerationError> {
    if n > MAX_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let mut rng = sample_rng(seed, index);
    let len = fundamental_region_size(n);
    let bits = rng.random::<u128>() & ((1u128 << len) - 1);
    Ok(VoidMask { n, bits })
}

/// Chain length used by the experiments: twenty proposals per square of
/// the fundamental region.
pub fn default_chain_steps(n: usize) -> u64 {
    20 * fundamental_region_size(n) as u64
}

/// A random valid grid from a Metropolis chain.
///
/// The chain starts at the all-white grid; each step toggles one square of
/// the fundamental region (with its rotated image) chosen uniformly, and
/// keeps the change only if the grid stays valid. The proposal is
/// symmetric, so the chain's stationary distribution is uniform over the
/// valid grids reachable from the all-white grid by such toggles.
/// Returns the mask and the number of accepted moves, or `None` when the
/// all-white grid is itself invalid (n = 0).
pub fn sample_valid_mask(
    n: usize,
    seed: u64,
    index: u64,
    steps: u64,
) -> Result<Option<(VoidMask, u64)>, EnumerationError> {
    if n > MAX_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let mut mask = VoidMask { n, bits: 0 };
    if !mask_is_valid(mask) {
        return Ok(None);
    }
    let mut rng = sample_rng(seed, index);
    let len = fundamental_region_size(n);
    let mut accepted = 0;
    for _ in 0..steps {
        let k = rng.random_range(0..len);
        let next = VoidMask {
            n,
            bits: mask.bits ^ 1 << k,
        };
        if mask_is_valid(next) {
            mask = next;
            accepted += 1;
        }
    }
    Ok(Some((mask, accepted)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Necessity,
    Sufficiency,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Sampling {
    Exhaustive,
    Sampled { sample: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchKind {
    /// A valid grid whose graph fails a condition.
    ValidButFailsConditions,
    /// An invalid grid whose graph passes every condition.
    PassesConditionsButInvalid,
    /// Voiding and the direct construction disagree beyond isolated vertices.
    NotEquivalent,
    /// Reconstruction does not give back the grid.
    RoundtripFailed,
    /// The voiding procedure itself reported an error.
    VoidingFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub mask: VoidMask,
    pub grid: String,
    pub kind: MismatchKind,
    pub structure: StructureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Mismatch {
    fn new(mask: VoidMask, g: &Grid, kind: MismatchKind) -> Self {
        Mismatch {
            mask,
            grid: serialize_grid(g),
            kind,
            structure: validate(g),
            conditions: None,
            detail: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthRow {
    pub mask: VoidMask,
    pub grid: String,
    pub valid: bool,
    pub conditions_pass: bool,
    pub failed: Vec<ConditionId>,
}

/// How often each way of counting side-sharing places agrees with the
/// number of isolated vertices left by voiding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IsolatedCountAgreement {
    pub examined: u64,
    pub fundamental_lines: u64,
    pub full_grid_halved: u64,
    /// `full_grid_halved` plus two when the center square is void.
    pub full_grid_halved_center_corrected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentResult {
    pub kind: ExperimentKind,
    pub n: usize,
    pub sampling: Sampling,
    pub total_examined: u64,
    pub valid_grids: u64,
    pub condition_pass: u64,
    pub valid_not_pass: u64,
    pub pass_not_valid: u64,
    pub not_equivalent: u64,
    pub voiding_failures: u64,
    /// Moves accepted by the sampling chains; zero for exhaustive runs.
    pub accepted_moves: u64,
    /// Samples for which no chain could start (no valid all-white grid).
    pub sampling_failures: u64,
    /// Different grids among the samples; absent for exhaustive runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_grids: Option<u64>,
    /// Failures of each non-primary reading, keyed `condition/reading`,
    /// counted over the grids whose conditions were checked.
    pub alternate_failures: BTreeMap<String, u64>,
    pub isolated_counts: IsolatedCountAgreement,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_table: Option<Vec<TruthRow>>,
    /// Wall time; left out of the JSON so reports compare byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ExperimentResult {
    pub fn mismatches_of(&self, kind: MismatchKind) -> impl Iterator<Item = &Mismatch> {
        self.mismatches.iter().filter(move |m| m.kind == kind)
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{:?} n={} {}\nexamined {}, valid {}, conditions pass {}\nvalid but failing {}, passing but invalid {}, not equivalent {}, voiding errors {}\n",
            self.kind,
            self.n,
            match self.sampling {
                Sampling::Exhaustive => "exhaustive".to_string(),
                Sampling::Sampled { sample, seed } => format!("sampled {sample} (seed {seed})"),
            },
            self.total_examined,
            self.valid_grids,
            self.condition_pass,
            self.valid_not_pass,
            self.pass_not_valid,
            self.not_equivalent,
            self.voiding_failures,
        );
        if let Some(d) = self.distinct_grids {
            out.push_str(&format!(
                "accepted chain moves {}, distinct grids {d}, samples without a valid grid {}\n",
                self.accepted_moves, self.sampling_failures
            ));
        }
        let iso = &self.isolated_counts;
        if iso.examined > 0 {
            out.push_str(&format!(
                "isolated vertices = line count {}/{}, = full-grid count {}/{}, = corrected full-grid count {}/{}\n",
                iso.fundamental_lines,
                iso.examined,
                iso.full_grid_halved,
                iso.examined,
                iso.full_grid_halved_center_corrected,
                iso.examined
            ));
        }
        for (k, v) in &self.alternate_failures {
            out.push_str(&format!("alternate {k}: {v} failures\n"));
        }
        for m in &self.mismatches {
            out.push_str(&format!("{:?} {}\n{}\n", m.kind, m.mask, m.grid));
        }
        out.push_str(&format!("elapsed {:.2?}\n", self.elapsed));
        out
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    valid: u64,
    pass: u64,
    valid_not_pass: u64,
    pass_not_valid: u64,
    not_equivalent: u64,
    voiding_failures: u64,
    attempts: u64,
    sampling_failures: u64,
    alternates: BTreeMap<String, u64>,
    isolated: IsolatedCountAgreement,
    mismatches: Vec<Mismatch>,
    truth: Vec<TruthRow>,
    sampled: Vec<u128>,
}

impl Partial for Tally {
    fn merge(&mut self, o: Self) {
        self.examined += o.examined;
        self.valid += o.valid;
        self.pass += o.pass;
        self.valid_not_pass += o.valid_not_pass;
        self.pass_not_valid += o.pass_not_valid;
        self.not_equivalent += o.not_equivalent;
        self.voiding_failures += o.voiding_failures;
        self.attempts += o.attempts;
        self.sampling_failures += o.sampling_failures;
        for (k, v) in o.alternates {
            *self.alternates.entry(k).or_default() += v;
        }
        self.isolated.examined += o.isolated.examined;
        self.isolated.fundamental_lines += o.isolated.fundamental_lines;
        self.isolated.full_grid_halved += o.isolated.full_grid_halved;
        self.isolated.full_grid_halved_center_corrected += o.isolated.full_grid_halved_center_corrected;
        self.mismatches.extend(o.mismatches);
        self.truth.extend(o.truth);
        self.sampled.extend(o.sampled);
    }
}

impl Tally {
    fn record_alternates(&mut self, r: &ConditionReport) {
        for a in &r.alternates {
            if a.verdict.failed() {
                *self
                    .alternates
                    .entry(format!("{}/{}", a.condition, a.reading))
                    .or_default() += 1;
            }
        }
    }

    fn distinct(&self, sampling: Sampling) -> Option<u64> {
        match sampling {
            Sampling::Exhaustive => None,
            Sampling::Sampled { .. } => {
                Some(self.sampled.iter().collect::<std::collections::BTreeSet<_>>().len() as u64)
            }
        }
    }

    fn finish(
        self,
        kind: ExperimentKind,
        n: usize,
        sampling: Sampling,
        truth: bool,
        started: Instant,
    ) -> ExperimentResult {
        ExperimentResult {
            distinct_grids: self.distinct(sampling),
            kind,
            n,
            sampling,
            total_examined: self.examined,
            valid_grids: self.valid,
            condition_pass: self.pass,
            valid_not_pass: self.valid_not_pass,
            pass_not_valid: self.pass_not_valid,
            not_equivalent: self.not_equivalent,
            voiding_failures: self.voiding_failures,
            accepted_moves: self.attempts,
            sampling_failures: self.sampling_failures,
            alternate_failures: self.alternates,
            isolated_counts: self.isolated,
            mismatches: self.mismatches,
            truth_table: truth.then_some(self.truth),
            elapsed: started.elapsed(),
        }
    }

    /// Both pipelines and all conditions on a grid known to be valid.
    fn necessity_step(&mut self, mask: VoidMask) {
        let g = mask.to_grid();
        self.valid += 1;
        let voided = match voided_from_grid(&g) {
            Ok(v) => v,
            Err(e) => {
                self.voiding_failures += 1;
                let mut m = Mismatch::new(mask, &g, MismatchKind::VoidingFailed);
                m.detail = Some(e.to_string());
                self.mismatches.push(m);
                return;
            }
        };
        let direct = crossword_multigraph(&fundamental_graph(&build_licn(&g).expect("mask grids are symmetric")));
        if !equivalent(&voided, &direct, true) {
            self.not_equivalent += 1;
            self.mismatches
                .push(Mismatch::new(mask, &g, MismatchKind::NotEquivalent));
        }
        self.record_isolated(&g, voided.isolated_count());
        let report = check_all(&voided);
        self.record_alternates(&report);
        if report.passed() {
            self.pass += 1;
        } else {
            self.valid_not_pass += 1;
            let mut m = Mismatch::new(mask, &g, MismatchKind::ValidButFailsConditions);
            m.conditions = Some(report);
            self.mismatches.push(m);
        }
    }

    fn record_isolated(&mut self, g: &Grid, isolated: usize) {
        let full = places_full_grid_halved(g);
        let center = if g.is_void(Coord::CENTER) { 2 } else { 0 };
        self.isolated.examined += 1;
        self.isolated.fundamental_lines += u64::from(places_fundamental_lines(g) == isolated);
        self.isolated.full_grid_halved += u64::from(full == isolated);
        self.isolated.full_grid_halved_center_corrected += u64::from(full + center == isolated);
    }
}

/// Valid grids must give graphs that pass every condition, and both
/// pipelines must agree. Exhaustive when `sample` is `None`; otherwise
/// `sample` valid grids drawn by [`sample_valid_mask`] with
/// [`default_chain_steps`].
pub fn necessity_experiment(
    n: usize,
    sample: Option<u64>,
    seed: u64,
    limit: usize,
) -> Result<ExperimentResult, EnumerationError> {
    let started = Instant::now();
    let (tally, sampling) = match sample {
        None => {
            let t = fold_masks(n, limit, |t: &mut Tally, mask| {
                t.examined += 1;
                if mask_is_valid(mask) {
                    t.necessity_step(mask);
                }
            })?;
            (t, Sampling::Exhaustive)
        }
        Some(count) => {
            let t = fold_samples(n, count, seed, |t: &mut Tally, mask| t.necessity_step(mask))?;
            (t, Sampling::Sampled { sample: count, seed })
        }
    };
    Ok(tally.finish(ExperimentKind::Necessity, n, sampling, false, started))
}

fn fold_samples<F>(n: usize, count: u64, seed: u64, f: F) -> Result<Tally, EnumerationError>
where
    F: Fn(&mut Tally, VoidMask) + Sync,
{
    if n > MAX_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let chunk = 256u64;
    let partials: Vec<Tally> = (0..count.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            for index in c * chunk..((c + 1) * chunk).min(count) {
                t.examined += 1;
                match sample_valid_mask(n, seed, index, default_chain_steps(n)).expect("n checked above") {
                    Some((mask, accepted)) => {
                        t.attempts += accepted;
                        t.sampled.push(mask.bits());
                        f(&mut t, mask);
                    }
                    None => {
                        t.sampling_failures += 1;
                    }
                }
            }
            t
        })
        .collect();
    Ok(partials.into_iter().fold(Tally::default(), |mut acc, p| {
        acc.merge(p);
        acc
    }))
}

/// Compare grid validity with condition-pass over every mask, valid or not.
/// For `n <= 1` the full truth table is included.
pub fn sufficiency_experiment(n: usize, limit: usize) -> Result<ExperimentResult, EnumerationError> {
    let started = Instant::now();
    let tally = fold_masks(n, limit, |t: &mut Tally, mask| {
        t.examined += 1;
        let g = mask.to_grid();
        let valid = mask_is_valid(mask);
        t.valid += u64::from(valid);
        let voided = match voided_from_grid(&g) {
            Ok(v) => v,
            Err(e) => {
                t.voiding_failures += 1;
                let mut m = Mismatch::new(mask, &g, MismatchKind::VoidingFailed);
                m.detail = Some(e.to_string());
                t.mismatches.push(m);
                return;
            }
        };
        let report = check_all(&voided);
        t.record_alternates(&report);
        let pass = report.passed();
        t.pass += u64::from(pass);
        if n <= 1 {
            t.truth.push(TruthRow {
                mask,
                grid: serialize_grid(&g),
                valid,
                conditions_pass: pass,
                failed: report.failures(),
            });
        }
        let kind = match (valid, pass) {
            (true, false) => {
                t.valid_not_pass += 1;
                MismatchKind::ValidButFailsConditions
            }
            (false, true) => {
                t.pass_not_valid += 1;
                MismatchKind::PassesConditionsButInvalid
            }
            _ => return,
        };
        let mut m = Mismatch::new(mask, &g, kind);
        m.conditions = Some(report);
        t.mismatches.push(m);
    })?;
    Ok(tally.finish(ExperimentKind::Sufficiency, n, Sampling::Exhaustive, n <= 1, started))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub n: usize,
    pub sampling: Sampling,
    pub total_examined: u64,
    pub valid_grids: u64,
    pub exact: u64,
    pub sampling_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_grids: Option<u64>,
    pub failures: Vec<Mismatch>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RoundtripReport {
    pub fn summary(&self) -> String {
        format!(
            "Roundtrip n={} examined {}, valid {}, exact {}, failures {}, distinct grids {}, samples without a valid grid {}\nelapsed {:.2?}\n",
            self.n,
            self.total_examined,
            self.valid_grids,
            self.exact,
            self.failures.len(),
            self.distinct_grids.map_or("-".to_string(), |d| d.to_string()),
            self.sampling_failures,
            self.elapsed
        )
    }
}

fn roundtrip_step(t: &mut Tally, mask: VoidMask) {
    let g = mask.to_grid();
    t.valid += 1;
    let m = crossword_multigraph(&fundamental_graph(&build_licn(&g).expect("mask grids are symmetric")));
    match reconstruct_grid(&m) {
        Ok(back) if back == g => t.pass += 1,
        Ok(back) => {
            let mut mm = Mismatch::new(mask, &g, MismatchKind::RoundtripFailed);
            mm.detail = Some(serialize_grid(&back));
            t.mismatches.push(mm);
        }
        Err(e) => {
            let mut mm = Mismatch::new(mask, &g, MismatchKind::RoundtripFailed);
            mm.detail = Some(e.to_string());
            t.mismatches.push(mm);
        }
    }
}

/// Grid to multigraph and back must be the identity on valid grids.
pub fn reconstruct_roundtrip_experiment(
    n: usize,
    sample: Option<u64>,
    seed: u64,
    limit: usize,
) -> Result<RoundtripReport, EnumerationError> {
    let started = Instant::now();
    let (t, sampling) = match sample {
        None => (
            fold_masks(n, limit, |t: &mut Tally, mask| {
                t.examined += 1;
                if mask_is_valid(mask) {
                    roundtrip_step(t, mask);
                }
            })?,
            Sampling::Exhaustive,
        ),
        Some(count) => (
            fold_samples(n, count, seed, roundtrip_step)?,
            Sampling::Sampled { sample: count, seed },
        ),
    };
    Ok(RoundtripReport {
        n,
        sampling,
        total_examined: t.examined,
        valid_grids: t.valid,
        exact: t.pass,
        sampling_failures: t.sampling_failures,
        distinct_grids: t.distinct(sampling),
        failures: t.mismatches,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountResult {
    pub n: usize,
    pub examined: u64,
    pub valid: u64,
    pub exhaustive: bool,
    /// Valid fraction of the uniform sample times the number of masks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
}

#[derive(Default)]
struct Count(u64, u64);

impl Partial for Count {
    fn merge(&mut self, o: Self) {
        self.0 += o.0;
        self.1 += o.1;
    }
}

/// Number of masks whose grid satisfies every structure rule.
pub fn count_valid_grids(n: usize, limit: usize) -> Result<CountResult, EnumerationError> {
    let c = fold_masks(n, limit, |c: &mut Count, mask| {
        c.0 += 1;
        c.1 += u64::from(mask_is_valid(mask));
    })?;
    Ok(CountResult {
        n,
        examined: c.0,
        valid: c.1,
        exhaustive: true,
        estimate: None,
    })
}

/// Estimate the count from `sample` uniformly random masks.
pub fn estimate_valid_grids(n: usize, sample: u64, seed: u64) -> Result<CountResult, EnumerationError> {
    if n > MAX_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let valid: u64 = (0..sample)
        .into_par_iter()
        .map(|i| {
            let m = uniform_mask(n, seed, i).expect("n checked above");
            u64::from(mask_is_valid(m))
        })
        .sum();
    let total = 2f64.powi(fundamental_region_size(n) as i32);
    Ok(CountResult {
        n,
        examined: sample,
        valid,
        exhaustive: false,
        estimate: (sample > 0).then(|| valid as f64 / sample as f64 * total),
    })
}

/// Run `f` on a dedicated pool of `jobs` threads.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
