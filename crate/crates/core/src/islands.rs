//! Decorrelated islands: detection, boundary bookkeeping and empirical drifts.
//!
//! Positions are unwrapped integers; cell `k` of the ring is `k mod width`.
//! The successor of the island `[i, j]` is the maximal `?`-free run at the
//! next time that contains cell `j - (n - 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drift::{kernel_n2_00, kernel_n2_general, kernel_n3_0000, kernel_n3_1000, kernel_n3_s1};
use crate::drift::{BoundaryClass, Drift};
use crate::error::{Error, Result};
use crate::pca::{envelope_step, PcaSpec, StepContext, Trajectory};
use crate::rng::SeedSpec;
use crate::state::{EnvRow, EnvState, HalfPos};
use crate::symbolic::Q;

/// Maximal `?`-free run. `i` lies in `[0, width)`; `j` is taken mod width,
/// so `j < i` for a run that wraps.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Island {
    pub i: usize,
    pub j: usize,
    pub alive: bool,
}

impl Island {
    pub fn len(&self, width: usize) -> usize {
        (self.j + width - self.i) % width + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Maximal runs of binary cells on the ring, ordered by left end.
pub fn find_islands(row: &EnvRow) -> Result<Vec<Island>> {
    let w = row.width();
    let start = (0..w)
        .find(|&k| row.get(k as i64) == EnvState::Question)
        .ok_or(Error::AllBinaryRow)?;
    let mut out = Vec::new();
    let mut run: Option<usize> = None;
    for step in 1..=w {
        let k = (start + step) % w;
        let binary = row.get(k as i64) != EnvState::Question;
        match (binary, run) {
            (true, None) => run = Some(k),
            (false, Some(a)) => {
                out.push(Island {
                    i: a,
                    j: (k + w - 1) % w,
                    alive: true,
                });
                run = None;
            }
            _ => {}
        }
    }
    out.sort_by_key(|isl| isl.i);
    Ok(out)
}

/// Cells needed by the modified positions and the boundary classes.
pub fn context_len(n: usize) -> Result<usize> {
    match n {
        2 => Ok(2),
        3 => Ok(3),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Length `m` of the boundary tuple.
pub fn boundary_arity(n: usize) -> Result<usize> {
    match n {
        2 => Ok(2),
        3 => Ok(4),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Minimum `j - i` for records that enter conditional estimates.
pub fn gap_threshold(n: usize) -> Result<i64> {
    match n {
        2 => Ok(5),
        3 => Ok(9),
        _ => Err(Error::UnsupportedN(n)),
    }
}

fn check_bits(cells: &[u8]) -> Result<()> {
    match cells.iter().find(|&&c| c > 1) {
        Some(&c) => Err(Error::BadCell((b'0' + c) as char)),
        None => Ok(()),
    }
}

/// Offset `j_mod - j` from the cells ending at `X_j` (left to right).
pub fn modified_right(cells: &[u8], n: usize) -> Result<HalfPos> {
    let need = context_len(n)?;
    if cells.len() < need {
        return Err(Error::InsufficientContext {
            need,
            got: cells.len(),
        });
    }
    check_bits(cells)?;
    let t = &cells[cells.len() - need..];
    let doubled = match n {
        2 => match (t[0], t[1]) {
            (_, 1) => 0,
            (0, 0) => -1,
            _ => -2,
        },
        _ => match (t[0], t[1], t[2]) {
            (_, _, 1) => 0,
            (1, 0, 0) => -4,
            _ => -2,
        },
    };
    Ok(HalfPos::from_doubled(doubled))
}

/// Offset `i_mod - i` from the cells starting at `X_i` (left to right).
pub fn modified_left(cells: &[u8], n: usize) -> Result<HalfPos> {
    let rev: Vec<u8> = cells.iter().rev().copied().collect();
    Ok(-modified_right(&rev, n)?)
}

/// Boundary class of the rightmost `m` island cells.
pub fn classify_right(f: &[u8], n: usize) -> Result<BoundaryClass> {
    let m = boundary_arity(n)?;
    if f.len() != m {
        return Err(Error::BadArity {
            got: f.len(),
            expected: m,
        });
    }
    check_bits(f)?;
    Ok(match (n, f) {
        (2, [0, 0]) => BoundaryClass::Pair00,
        (2, [0, 1]) => BoundaryClass::Pair01,
        (2, [1, 0]) => BoundaryClass::Pair10,
        (2, _) => BoundaryClass::Pair11,
        (_, [0, 0, 0, 0]) => BoundaryClass::C0000,
        (_, [1, 0, 0, 0]) => BoundaryClass::C1000,
        _ => BoundaryClass::S1,
    })
}

/// Boundary classes that a raw tuple can fall in.
pub fn observable_classes(n: usize) -> Result<Vec<BoundaryClass>> {
    match n {
        2 => Ok(vec![
            BoundaryClass::Pair00,
            BoundaryClass::Pair01,
            BoundaryClass::Pair10,
            BoundaryClass::Pair11,
        ]),
        3 => Ok(vec![BoundaryClass::C0000, BoundaryClass::C1000, BoundaryClass::S1]),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Exact one-step drift of a raw class, or its lower bound.
pub fn exact_drift1(n: usize, class: BoundaryClass) -> Result<Drift> {
    let k = match (n, class) {
        (2, BoundaryClass::Pair00) => kernel_n2_00(),
        (2, BoundaryClass::Pair01 | BoundaryClass::Pair10 | BoundaryClass::Pair11) => kernel_n2_general(),
        (3, BoundaryClass::S1) => kernel_n3_s1(),
        (3, BoundaryClass::C1000) => kernel_n3_1000(),
        (3, BoundaryClass::C0000) => kernel_n3_0000(),
        (2 | 3, c) => return Err(Error::EmptySample(format!("no raw kernel for {c}"))),
        _ => return Err(Error::UnsupportedN(n)),
    };
    Ok(k.drift1())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub t: u64,
    /// Restart counter; increments are only taken within one episode.
    pub episode: u64,
    pub i: i64,
    pub j: i64,
    pub i_mod: HalfPos,
    pub j_mod: HalfPos,
    pub f_left: Vec<u8>,
    pub f_right: Vec<u8>,
    /// `None` when the island is shorter than the boundary tuple.
    pub class_right: Option<BoundaryClass>,
    pub gap_ok: bool,
    /// The island has a successor at `t + 1`.
    pub alive: bool,
}

fn cell_bit(row: &EnvRow, k: i64) -> u8 {
    match row.get(k) {
        EnvState::One => 1,
        _ => 0,
    }
}

fn make_record(row: &EnvRow, n: usize, t: u64, episode: u64, i: i64, j: i64) -> Result<BoundaryRecord> {
    let m = boundary_arity(n)? as i64;
    let len = j - i + 1;
    let take = m.min(len);
    let f_left: Vec<u8> = (i..i + take).map(|k| cell_bit(row, k)).collect();
    let f_right: Vec<u8> = (j - take + 1..=j).map(|k| cell_bit(row, k)).collect();
    let j_mod = match modified_right(&f_right, n) {
        Ok(o) => HalfPos::from_int(j) + o,
        Err(_) => HalfPos::from_int(j),
    };
    let i_mod = match modified_left(&f_left, n) {
        Ok(o) => HalfPos::from_int(i) + o,
        Err(_) => HalfPos::from_int(i),
    };
    let class_right = if take == m { Some(classify_right(&f_right, n)?) } else { None };
    Ok(BoundaryRecord {
        t,
        episode,
        i,
        j,
        i_mod,
        j_mod,
        f_left,
        f_right,
        class_right,
        gap_ok: j - i >= gap_threshold(n)?,
        alive: false,
    })
}

/// Run `[a, b]` at `next` that contains the binary block `[lo, hi]`.
/// `None` when the run closes around the ring.
fn grow_run(next: &EnvRow, lo: i64, hi: i64) -> Option<(i64, i64)> {
    let w = next.width() as i64;
    let (mut a, mut b) = (lo, hi);
    while next.get(a - 1) != EnvState::Question {
        a -= 1;
        if b - a + 1 >= w {
            return None;
        }
    }
    while next.get(b + 1) != EnvState::Question {
        b += 1;
        if b - a + 1 >= w {
            return None;
        }
    }
    Some((a, b))
}

/// Successor of `[i, j]` in `next`, if the anchor cell is binary.
fn successor(next: &EnvRow, n: usize, i: i64, j: i64) -> Option<(i64, i64)> {
    let anchor = j - (n as i64 - 1);
    if anchor < i {
        if next.get(anchor) == EnvState::Question {
            return None;
        }
        return grow_run(next, anchor, anchor);
    }
    if (i..=anchor).any(|k| next.get(k) == EnvState::Question) {
        return None;
    }
    grow_run(next, i, anchor)
}

fn longest_island(row: &EnvRow) -> Option<(i64, i64)> {
    let w = row.width();
    let isl = find_islands(row).ok()?;
    let best = isl.iter().max_by_key(|s| (s.len(w), std::cmp::Reverse(s.i)))?;
    let i = best.i as i64;
    Some((i, i + best.len(w) as i64 - 1))
}

/// Follows one focal island through a stored trajectory. On death the longest
/// island of the next row becomes the new focus; tracking stops once the ring
/// has no `?`.
pub fn track(traj: &Trajectory, n: usize) -> Result<Vec<BoundaryRecord>> {
    gap_threshold(n)?;
    let mut out: Vec<BoundaryRecord> = Vec::new();
    let mut focus: Option<(i64, i64)> = None;
    let mut episode = 0u64;
    for (t, row) in traj.rows.iter().enumerate() {
        if !row.has_question() {
            break;
        }
        let cur = match focus {
            Some(f) => f,
            None => match longest_island(row) {
                Some(f) => {
                    episode += 1;
                    f
                }
                None => continue,
            },
        };
        let mut rec = make_record(row, n, t as u64, episode, cur.0, cur.1)?;
        focus = traj
            .rows
            .get(t + 1)
            .filter(|r| r.has_question())
            .and_then(|next| successor(next, n, cur.0, cur.1));
        rec.alive = focus.is_some();
        out.push(rec);
    }
    Ok(out)
}

/// Settings for a run in which everything outside the focal island is reset
/// to `?` after every step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedConfig {
    pub width: usize,
    /// Number of records to produce.
    pub records: usize,
    /// Length of a freshly planted island.
    pub plant_len: usize,
    /// Unrecorded steps after each planting.
    pub burn_in: u64,
    /// Restart once fewer `?` cells than this remain.
    pub min_sea: usize,
}

impl IsolatedConfig {
    pub fn for_n(n: usize, records: usize) -> Result<Self> {
        Ok(IsolatedConfig {
            width: 4096,
            records,
            plant_len: 2 * gap_threshold(n)? as usize,
            burn_in: 20,
            min_sea: 64,
        })
    }
}

fn isolate(row: &mut EnvRow, a: i64, b: i64) {
    let w = row.width();
    let mut keep = vec![0u64; w.div_ceil(64)];
    for k in a..=b {
        let c = k.rem_euclid(w as i64) as usize;
        keep[c / 64] |= 1 << (c % 64);
    }
    row.retain_mask(&keep);
}

fn plant(width: usize, len: usize, seed: &SeedSpec, trial: u64, episode: u64) -> EnvRow {
    let mut row = EnvRow::all_question(width);
    for k in 0..len {
        let b = seed.bits(trial, episode, k as u64) & 1 == 1;
        row.set(k, EnvState::from_bit(b));
    }
    row
}

/// Island records from one isolated run. Draws for the dynamics come from
/// `ctx`; planted islands use a derived stream.
pub fn isolated_records(spec: &PcaSpec, cfg: &IsolatedConfig, ctx: StepContext) -> Result<Vec<BoundaryRecord>> {
    let n = spec.n;
    gap_threshold(n)?;
    if cfg.plant_len < n || cfg.width < cfg.plant_len + cfg.min_sea.max(1) {
        return Err(Error::WidthTooSmall {
            width: cfg.width,
            min: cfg.plant_len + cfg.min_sea.max(1),
        });
    }
    let plant_seed = ctx.seed.derive(0x6973_6c61_6e64);
    let mut out = Vec::with_capacity(cfg.records);
    let mut t = 0u64;
    let mut episode = 0u64;
    while out.len() < cfg.records {
        episode += 1;
        let mut row = plant(cfg.width, cfg.plant_len, &plant_seed, ctx.trial, episode);
        let (mut i, mut j) = (0i64, cfg.plant_len as i64 - 1);
        let mut age = 0u64;
        loop {
            let recording = age >= cfg.burn_in;
            let mut rec = if recording {
                Some(make_record(&row, n, t, episode, i, j)?)
            } else {
                None
            };
            t += 1;
            age += 1;
            let mut next = envelope_step(&row, spec, &ctx, t);
            let succ = successor(&next, n, i, j)
                .filter(|&(a, b)| cfg.width as i64 - (b - a + 1) >= cfg.min_sea as i64);
            if let Some(r) = rec.as_mut() {
                r.alive = succ.is_some();
            }
            if let Some(r) = rec {
                out.push(r);
                if out.len() >= cfg.records {
                    break;
                }
            }
            match succ {
                Some((a, b)) => {
                    isolate(&mut next, a, b);
                    row = next;
                    i = a;
                    j = b;
                }
                None => break,
            }
        }
    }
    Ok(out)
}

/// Streaming sums for a sample mean.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub sum: f64,
    pub sumsq: f64,
}

impl Moments {
    pub fn push(&mut self, v: f64) {
        self.count += 1;
        self.sum += v;
        self.sumsq += v * v;
    }

    pub fn merge(&mut self, o: &Moments) {
        self.count += o.count;
        self.sum += o.sum;
        self.sumsq += o.sumsq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Sample standard deviation over `sqrt(count)`.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let c = self.count as f64;
        let var = ((self.sumsq - self.sum * self.sum / c) / (c - 1.0)).max(0.0);
        (var / c).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftEstimate {
    pub condition: Vec<BoundaryClass>,
    pub k_steps: u8,
    pub mean: f64,
    pub stderr: f64,
    pub count: u64,
}

impl DriftEstimate {
    pub fn from_moments(condition: &[BoundaryClass], k_steps: u8, m: &Moments) -> Result<Self> {
        if m.count == 0 {
            return Err(Error::EmptySample(condition_label(condition)));
        }
        Ok(DriftEstimate {
            condition: condition.to_vec(),
            k_steps,
            mean: m.mean(),
            stderr: m.stderr(),
            count: m.count,
        })
    }

    pub fn label(&self) -> String {
        condition_label(&self.condition)
    }
}

pub fn condition_label(c: &[BoundaryClass]) -> String {
    c.iter().map(|c| c.name()).collect::<Vec<_>>().join("|")
}

fn follows(a: &BoundaryRecord, b: &BoundaryRecord) -> bool {
    a.alive && b.episode == a.episode && b.t == a.t + 1
}

/// Sums of `k_steps`-step modified increments of the right boundary from
/// gap-ok records whose class is in `condition`. Two-step samples do not
/// overlap.
pub fn drift_moments(records: &[BoundaryRecord], condition: &[BoundaryClass], k_steps: u8) -> Result<Moments> {
    if !(1..=2).contains(&k_steps) {
        return Err(Error::BadArity {
            got: k_steps as usize,
            expected: 2,
        });
    }
    let k = k_steps as usize;
    let mut m = Moments::default();
    let mut p = 0;
    while p + k < records.len() {
        let r = &records[p];
        let hit = r.gap_ok && r.class_right.is_some_and(|c| condition.contains(&c));
        if hit && (0..k).all(|s| follows(&records[p + s], &records[p + s + 1])) {
            m.push((records[p + k].j_mod - r.j_mod).as_f64());
            p += k;
        } else {
            p += 1;
        }
    }
    Ok(m)
}

pub fn empirical_drifts(records: &[BoundaryRecord], condition: &[BoundaryClass], k_steps: u8) -> Result<DriftEstimate> {
    let m = drift_moments(records, condition, k_steps)?;
    DriftEstimate::from_moments(condition, k_steps, &m)
}

/// Empirical drift next to the exact value (or lower bound) at the run's noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftComparison {
    pub estimate: DriftEstimate,
    pub exact: f64,
    pub exact_text: String,
    pub lower_bound: bool,
    pub z: f64,
}

impl DriftComparison {
    /// `|z| < 3` for exact values, `mean >= bound - 3 stderr` for bounds.
    pub fn passes(&self) -> bool {
        if self.lower_bound {
            self.estimate.mean >= self.exact - 3.0 * self.estimate.stderr
        } else {
            self.z.abs() < 3.0
        }
    }
}

fn z_score(mean: f64, exact: f64, stderr: f64) -> f64 {
    let d = mean - exact;
    if d == 0.0 {
        0.0
    } else {
        d / stderr
    }
}

/// Compares the pooled estimate for `condition` (classes sharing one kernel)
/// with the exact drift at `(x0, x1)`.
pub fn compare(n: usize, condition: &[BoundaryClass], m: &Moments, x0: &Q, x1: &Q) -> Result<DriftComparison> {
    let first = *condition.first().ok_or_else(|| Error::EmptySample("empty condition".into()))?;
    let d = exact_drift1(n, first)?;
    for c in &condition[1..] {
        if exact_drift1(n, *c)? != d {
            return Err(Error::EmptySample(format!("{} mixes kernels", condition_label(condition))));
        }
    }
    let est = DriftEstimate::from_moments(condition, 1, m)?;
    let v = d
        .value
        .eval_at(x0, x1)
        .ok_or_else(|| Error::BadProbability("r = 0".into()))?;
    let exact = num_traits::ToPrimitive::to_f64(&v).unwrap_or(f64::NAN);
    Ok(DriftComparison {
        z: z_score(est.mean, exact, est.stderr),
        exact_text: crate::symbolic::fmt_q(&v),
        exact,
        lower_bound: d.lower_bound,
        estimate: est,
    })
}

/// Left/right consistency of the island growth rate: samples
/// `-(I + J) - (n - 1)` over one-step increments, where `I` and `J` are the
/// increments of the modified left and right ends. The mean estimates
/// `D - (2R + (n - 1))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub n: usize,
    pub count: u64,
    pub r_hat: f64,
    pub l_hat: f64,
    pub d_hat: f64,
    /// `D - (2R + (n - 1))`.
    pub gap: f64,
    /// Batch-means standard error of `gap`.
    pub stderr: f64,
}

impl GrowthCheck {
    pub fn passes(&self) -> bool {
        self.gap == 0.0 || self.gap.abs() < 3.0 * self.stderr
    }
}

pub fn growth_check(runs: &[Vec<BoundaryRecord>], n: usize, batch: usize) -> Result<GrowthCheck> {
    let batch = batch.max(1);
    let (mut sj, mut si, mut count) = (0.0, 0.0, 0u64);
    let mut batches: Vec<f64> = Vec::new();
    for recs in runs {
        let (mut acc, mut k) = (0.0, 0usize);
        for w in recs.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if !(a.gap_ok && follows(a, b) && b.class_right.is_some()) {
                continue;
            }
            let (ii, jj) = ((b.i_mod - a.i_mod).as_f64(), (b.j_mod - a.j_mod).as_f64());
            sj += jj;
            si += ii;
            count += 1;
            acc += -(ii + jj) - (n as f64 - 1.0);
            k += 1;
            if k == batch {
                batches.push(acc / batch as f64);
                acc = 0.0;
                k = 0;
            }
        }
    }
    if count == 0 || batches.is_empty() {
        return Err(Error::EmptySample("growth".into()));
    }
    let c = count as f64;
    let (r_hat, l_hat) = (sj / c, si / c);
    let d_hat = r_hat - l_hat;
    let nb = batches.len() as f64;
    let bm = batches.iter().sum::<f64>() / nb;
    let var = if batches.len() > 1 {
        batches.iter().map(|b| (b - bm).powi(2)).sum::<f64>() / (nb - 1.0)
    } else {
        0.0
    };
    Ok(GrowthCheck {
        n,
        count,
        r_hat,
        l_hat,
        d_hat,
        gap: d_hat - (2.0 * r_hat + n as f64 - 1.0),
        stderr: (var / nb).sqrt(),
    })
}

/// Per-class comparison table and growth check pooled over trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftStudy {
    pub n: usize,
    pub eps0: String,
    pub eps1: String,
    pub samples: u64,
    pub rows: Vec<DriftComparison>,
    pub growth: GrowthCheck,
}

impl DriftStudy {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(DriftComparison::passes)
    }
}

/// Runs `trials` isolated runs in parallel and compares every observable
/// class, plus the pooled exact group when `n = 2`.
pub fn drift_study(spec: &PcaSpec, cfg: &IsolatedConfig, seed: SeedSpec, trials: u64) -> Result<DriftStudy> {
    let n = spec.n;
    let (x0, x1) = spec.params.exact_or_approx();
    let runs: Vec<Vec<BoundaryRecord>> = (0..trials)
        .into_par_iter()
        .map(|trial| isolated_records(spec, cfg, StepContext::new(seed, trial)))
        .collect::<Result<_>>()?;
    let mut groups: Vec<Vec<BoundaryClass>> = observable_classes(n)?.into_iter().map(|c| vec![c]).collect();
    if n == 2 {
        groups.push(vec![BoundaryClass::Pair01, BoundaryClass::Pair10, BoundaryClass::Pair11]);
    }
    let mut rows = Vec::new();
    let mut samples = 0;
    for g in &groups {
        let mut m = Moments::default();
        for r in &runs {
            m.merge(&drift_moments(r, g, 1)?);
        }
        if g.len() == 1 {
            samples += m.count;
        }
        if m.count > 0 {
            rows.push(compare(n, g, &m, &x0, &x1)?);
        }
    }
    Ok(DriftStudy {
        n,
        eps0: crate::symbolic::fmt_q(&x0),
        eps1: crate::symbolic::fmt_q(&x1),
        samples,
        rows,
        growth: growth_check(&runs, n, 1000)?,
    })
}

fn bits_string(f: &[u8]) -> String {
    f.iter().map(|b| (b'0' + b) as char).collect()
}

/// CSV with columns `t,i,j,i_mod_doubled,j_mod_doubled,f_right,class_right,gap_ok`.
pub fn records_csv(records: &[BoundaryRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "i", "j", "i_mod_doubled", "j_mod_doubled", "f_right", "class_right", "gap_ok"])
        .expect("in-memory write");
    for r in records {
        w.write_record([
            r.t.to_string(),
            r.i.to_string(),
            r.j.to_string(),
            r.i_mod.doubled.to_string(),
            r.j_mod.doubled.to_string(),
            bits_string(&r.f_right),
            r.class_right.map(|c| c.name().to_string()).unwrap_or_default(),
            r.gap_ok.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// CSV with columns `condition,k_steps,mean,stderr,count,exact,lower_bound,z`.
pub fn comparisons_csv(rows: &[DriftComparison]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["condition", "k_steps", "mean", "stderr", "count", "exact", "lower_bound", "z"])
        .expect("in-memory write");
    for r in rows {
        let e = &r.estimate;
        w.write_record([
            e.label(),
            e.k_steps.to_string(),
            e.mean.to_string(),
            e.stderr.to_string(),
            e.count.to_string(),
            r.exact_text.clone(),
            r.lower_bound.to_string(),
            r.z.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
