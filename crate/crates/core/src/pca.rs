//! Hard-core PCA `H_n` and its envelope `E_n` on a periodic ring.
//!
//! Cell `i` at time `t + 1` reads the window `i..i+n-1` at time `t` and one
//! uniform draw keyed by `(trial, t + 1, i)`. The draw is turned into a site
//! label (trap / target / open); traps emit 1, targets emit 0 and open sites
//! apply the deterministic rule (1 on an all-zero window, 0 when the window
//! holds a 1, `?` otherwise).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{site_label, NoiseParams, SiteLabel};
use crate::rng::SeedSpec;
use crate::state::{words_for, BinRow, EnvRow, EnvState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaSpec {
    pub n: usize,
    pub params: NoiseParams,
}

impl PcaSpec {
    pub fn new(n: usize, params: NoiseParams) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadNeighbourhood(n));
        }
        Ok(PcaSpec { n, params })
    }
}

/// Identifies the random stream of one trajectory.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepContext {
    pub seed: SeedSpec,
    pub trial: u64,
}

impl StepContext {
    pub fn new(seed: SeedSpec, trial: u64) -> Self {
        StepContext { seed, trial }
    }

    pub fn label(&self, params: &NoiseParams, time: u64, cell: usize) -> SiteLabel {
        site_label(params, self.seed.uniform(self.trial, time, cell as u64))
    }
}

/// Label masks for the row produced at `time`.
pub(crate) fn label_planes(
    width: usize,
    params: &NoiseParams,
    ctx: &StepContext,
    time: u64,
    words: std::ops::Range<usize>,
) -> (Vec<u64>, Vec<u64>) {
    let nw = words_for(width);
    let mut trap = vec![0u64; nw];
    let mut target = vec![0u64; nw];
    if params.eps0 == 0.0 && params.eps1 == 0.0 {
        return (trap, target);
    }
    for w in words {
        let hi = (64 * (w + 1)).min(width);
        let (mut tw, mut gw) = (0u64, 0u64);
        for i in 64 * w..hi {
            match ctx.label(params, time, i) {
                SiteLabel::Trap => tw |= 1 << (i % 64),
                SiteLabel::Target => gw |= 1 << (i % 64),
                SiteLabel::Open => {}
            }
        }
        trap[w] = tw;
        target[w] = gw;
    }
    (trap, target)
}

/// Bits `i + k` (mod width) gathered at position `i`.
fn shifted(plane: &[u64], width: usize, k: usize) -> Vec<u64> {
    let nw = plane.len();
    let k = k % width;
    if width % 64 == 0 {
        let (q, s) = (k / 64, k % 64);
        (0..nw)
            .map(|w| {
                let a = plane[(w + q) % nw];
                if s == 0 {
                    a
                } else {
                    (a >> s) | (plane[(w + q + 1) % nw] << (64 - s))
                }
            })
            .collect()
    } else {
        let mut out = vec![0u64; nw];
        for i in 0..width {
            let j = (i + k) % width;
            if plane[j / 64] >> (j % 64) & 1 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }
}

fn tail_mask(width: usize, w: usize) -> u64 {
    let hi = 64 * (w + 1);
    if hi <= width {
        u64::MAX
    } else {
        (1u64 << (width - 64 * w)) - 1
    }
}

/// Window summaries: `any1` (some cell of the window is 1) and `all0`.
fn window_planes(row: &EnvRow, n: usize) -> (Vec<u64>, Vec<u64>) {
    let width = row.width();
    let nw = row.known.len();
    let zeros: Vec<u64> = (0..nw)
        .map(|w| row.known[w] & !row.ones[w] & tail_mask(width, w))
        .collect();
    let mut any1 = row.ones.clone();
    let mut all0 = zeros.clone();
    for k in 1..n {
        let o = shifted(&row.ones, width, k);
        let z = shifted(&zeros, width, k);
        for w in 0..nw {
            any1[w] |= o[w];
            all0[w] &= z[w];
        }
    }
    (any1, all0)
}

/// One step of `E_n`; the produced row has time index `time`.
pub fn envelope_step(row: &EnvRow, spec: &PcaSpec, ctx: &StepContext, time: u64) -> EnvRow {
    let width = row.width();
    let nw = words_for(width);
    let (trap, target) = label_planes(width, &spec.params, ctx, time, 0..nw);
    step_with_labels(row, spec.n, &trap, &target)
}

pub(crate) fn step_with_labels(row: &EnvRow, n: usize, trap: &[u64], target: &[u64]) -> EnvRow {
    let width = row.width();
    let (any1, all0) = window_planes(row, n);
    let nw = any1.len();
    let mut known = vec![0u64; nw];
    let mut ones = vec![0u64; nw];
    for w in 0..nw {
        let open = !(trap[w] | target[w]);
        known[w] = trap[w] | target[w] | any1[w] | all0[w];
        ones[w] = trap[w] | (open & all0[w]);
    }
    EnvRow::from_planes(width, known, ones)
}

/// One step of `H_n` on a binary row, computed cell by cell.
pub fn hardcore_step(row: &BinRow, spec: &PcaSpec, ctx: &StepContext, time: u64) -> BinRow {
    let width = row.width();
    let bits: Vec<bool> = (0..width)
        .map(|i| {
            let all_zero = (0..spec.n).all(|k| !row.bit((i + k) as i64));
            match ctx.label(&spec.params, time, i) {
                SiteLabel::Trap => true,
                SiteLabel::Target => false,
                SiteLabel::Open => all_zero,
            }
        })
        .collect();
    BinRow::from_bits(&bits)
}

/// Checked version of [`hardcore_step`] taking an envelope row.
pub fn hardcore_step_env(row: &EnvRow, spec: &PcaSpec, ctx: &StepContext, time: u64) -> Result<BinRow> {
    let b = BinRow::new(row.clone())?;
    Ok(hardcore_step(&b, spec, ctx, time))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub spec: PcaSpec,
    pub ctx: StepContext,
    pub rows: Vec<EnvRow>,
}

impl Trajectory {
    pub fn width(&self) -> usize {
        self.rows[0].width()
    }

    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }
}

pub fn min_run_width(n: usize) -> usize {
    n.max(64)
}

/// Runs `steps` envelope steps from `init`. Row `t` uses draws keyed by time `t`.
pub fn run(spec: &PcaSpec, init: EnvRow, steps: usize, ctx: StepContext) -> Result<Trajectory> {
    let width = init.width();
    if width < min_run_width(spec.n) {
        return Err(Error::WidthTooSmall {
            width,
            min: min_run_width(spec.n),
        });
    }
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(init);
    for t in 1..=steps {
        let next = envelope_step(&rows[t - 1], spec, &ctx, t as u64);
        rows.push(next);
    }
    Ok(Trajectory {
        spec: spec.clone(),
        ctx,
        rows,
    })
}

/// Like [`run`] but keeps only the per-step densities `(question, one)`.
pub fn run_densities(
    spec: &PcaSpec,
    init: EnvRow,
    steps: usize,
    ctx: StepContext,
) -> Result<Vec<(f64, f64)>> {
    let width = init.width();
    if width < min_run_width(spec.n) {
        return Err(Error::WidthTooSmall {
            width,
            min: min_run_width(spec.n),
        });
    }
    let dens = |r: &EnvRow| {
        (
            r.count_question() as f64 / width as f64,
            r.count_one() as f64 / width as f64,
        )
    };
    let mut out = Vec::with_capacity(steps + 1);
    out.push(dens(&init));
    let mut row = init;
    for t in 1..=steps {
        row = envelope_step(&row, spec, &ctx, t as u64);
        out.push(dens(&row));
    }
    Ok(out)
}

pub fn question_density(traj: &Trajectory) -> Vec<f64> {
    let w = traj.width() as f64;
    traj.rows.iter().map(|r| r.count_question() as f64 / w).collect()
}

pub fn one_density(traj: &Trajectory) -> Vec<f64> {
    let w = traj.width() as f64;
    traj.rows.iter().map(|r| r.count_one() as f64 / w).collect()
}

/// CSV with columns `t,density_question,density_one`.
pub fn densities_csv(dens: &[(f64, f64)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "density_question", "density_one"])
        .expect("in-memory write");
    for (t, (q, o)) in dens.iter().enumerate() {
        w.write_record([t.to_string(), q.to_string(), o.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let d: Vec<(f64, f64)> = question_density(traj)
        .into_iter()
        .zip(one_density(traj))
        .collect();
    densities_csv(&d)
}

/// Text dump, one row per line over `{0, 1, ?}`.
pub fn trajectory_dump(traj: &Trajectory) -> String {
    traj.rows.iter().map(|r| format!("{r}\n")).collect()
}

/// Deterministic rule applied by an open site to a window.
pub fn open_rule(window: &[EnvState]) -> EnvState {
    if window.contains(&EnvState::One) {
        EnvState::Zero
    } else if window.iter().all(|s| *s == EnvState::Zero) {
        EnvState::One
    } else {
        EnvState::Question
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_noise;

    fn spec(n: usize, e0: f64, e1: f64) -> PcaSpec {
        PcaSpec::new(n, validate_noise(e0, e1).unwrap()).unwrap()
    }

    #[test]
    fn noise_free_nor() {
        let s = spec(2, 0.0, 0.0);
        let ctx = StepContext::default();
        // Windows i..i+1: cells 1 and 2 see the 1.
        let row = BinRow::parse("00100").unwrap();
        assert_eq!(hardcore_step(&row, &s, &ctx, 1).to_string(), "10011");
        let z = BinRow::parse(&"0".repeat(70)).unwrap();
        assert_eq!(hardcore_step(&z, &s, &ctx, 1).to_string(), "1".repeat(70));
        let q = EnvRow::all_question(128);
        assert_eq!(envelope_step(&q, &s, &ctx, 1), q);
    }

    #[test]
    fn envelope_matches_cellwise_rule() {
        let s = spec(3, 0.2, 0.15);
        let ctx = StepContext::new(SeedSpec::new(9), 4);
        for width in [5usize, 64, 100, 128] {
            let states: Vec<EnvState> = (0..width)
                .map(|i| match ctx.seed.bits(99, 0, i as u64) % 3 {
                    0 => EnvState::Zero,
                    1 => EnvState::One,
                    _ => EnvState::Question,
                })
                .collect();
            let row = EnvRow::from_states(&states);
            let out = envelope_step(&row, &s, &ctx, 3);
            for i in 0..width {
                let win: Vec<EnvState> = (0..3).map(|k| row.get((i + k) as i64)).collect();
                let want = match ctx.label(&s.params, 3, i) {
                    SiteLabel::Trap => EnvState::One,
                    SiteLabel::Target => EnvState::Zero,
                    SiteLabel::Open => open_rule(&win),
                };
                assert_eq!(out.get(i as i64), want, "width {width} cell {i}");
            }
        }
    }

    #[test]
    fn run_checks_width() {
        let s = spec(2, 0.1, 0.1);
        assert!(matches!(
            run(&s, EnvRow::all_question(32), 1, StepContext::default()),
            Err(Error::WidthTooSmall { .. })
        ));
        let t = run(&s, EnvRow::all_question(64), 0, StepContext::default()).unwrap();
        assert_eq!(t.rows.len(), 1);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = spec(2, 0.1, 0.1);
        let t = run(&s, EnvRow::all_question(64), 3, StepContext::default()).unwrap();
        let csv = trajectory_csv(&t);
        assert!(csv.starts_with("t,density_question,density_one\n0,1,0\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
