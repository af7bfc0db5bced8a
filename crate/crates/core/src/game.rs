//! Percolation game boards and their outcomes.
//!
//! Row `j = 0` is the bottom (start) row, moves go from `(i, j)` to
//! `(i + k, j + 1)` for `0 <= k < n`, columns wrap. Board row `j` draws its
//! labels from PCA time `height - 1 - j`, so solving a board replays the
//! envelope PCA started from an all-`?` row.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{NoiseParams, SiteLabel};
use crate::pca::StepContext;
use crate::rng::SeedSpec;
use crate::state::{EnvRow, EnvState};

#[derive(Clone, Debug, PartialEq)]
pub struct Board {
    pub width: usize,
    pub height: usize,
    pub n: usize,
    labels: Vec<SiteLabel>,
}

impl Board {
    pub fn from_labels(width: usize, height: usize, n: usize, labels: Vec<SiteLabel>) -> Result<Self> {
        if width < n || height < 1 || n < 2 || labels.len() != width * height {
            return Err(Error::BadBoard { width, height, n });
        }
        Ok(Board {
            width,
            height,
            n,
            labels,
        })
    }

    pub fn label(&self, i: usize, j: usize) -> SiteLabel {
        self.labels[j * self.width + i % self.width]
    }

    /// Text grid over `{T, G, .}`, top row first.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity((self.width + 1) * self.height);
        for j in (0..self.height).rev() {
            for i in 0..self.width {
                s.push(self.label(i, j).to_char());
            }
            s.push('\n');
        }
        s
    }
}

pub fn generate_board(
    width: usize,
    height: usize,
    params: &NoiseParams,
    n: usize,
    ctx: &StepContext,
) -> Result<Board> {
    if width < n || height < 1 || n < 2 {
        return Err(Error::BadBoard { width, height, n });
    }
    let mut labels = Vec::with_capacity(width * height);
    for j in 0..height {
        let time = (height - 1 - j) as u64;
        for i in 0..width {
            labels.push(ctx.label(params, time, i));
        }
    }
    Board::from_labels(width, height, n, labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeGrid {
    pub width: usize,
    pub height: usize,
    cells: Vec<EnvState>,
}

impl OutcomeGrid {
    pub fn get(&self, i: usize, j: usize) -> EnvState {
        self.cells[j * self.width + i % self.width]
    }

    pub fn row(&self, j: usize) -> EnvRow {
        EnvRow::from_states(&self.cells[j * self.width..(j + 1) * self.width])
    }
}

/// Backward induction from the all-`?` top row.
pub fn solve_board(board: &Board) -> OutcomeGrid {
    let (w, h, n) = (board.width, board.height, board.n);
    let mut cells = vec![EnvState::Question; w * h];
    for j in (0..h - 1).rev() {
        for i in 0..w {
            let state = match board.label(i, j) {
                SiteLabel::Trap => EnvState::One,
                SiteLabel::Target => EnvState::Zero,
                SiteLabel::Open => {
                    let succ = (0..n).map(|k| cells[(j + 1) * w + (i + k) % w]);
                    let mut any_one = false;
                    let mut all_zero = true;
                    for s in succ {
                        any_one |= s == EnvState::One;
                        all_zero &= s == EnvState::Zero;
                    }
                    if any_one {
                        EnvState::Zero
                    } else if all_zero {
                        EnvState::One
                    } else {
                        EnvState::Question
                    }
                }
            };
            cells[j * w + i] = state;
        }
    }
    OutcomeGrid {
        width: w,
        height: h,
        cells,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawEstimate {
    pub height: usize,
    pub trials: usize,
    pub draws: usize,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Fraction of boards whose bottom-centre cell stays `?` after `height`
/// rounds of play (boards of `height + 1` rows, the top one undetermined).
pub fn draw_probability(
    width: usize,
    height: usize,
    params: &NoiseParams,
    n: usize,
    trials: usize,
    seed: SeedSpec,
) -> Result<DrawEstimate> {
    if width < n || height < 1 || n < 2 || trials == 0 {
        return Err(Error::BadBoard { width, height, n });
    }
    let origin = width / 2;
    let draws: usize = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let ctx = StepContext::new(seed, t);
            let board = generate_board(width, height + 1, params, n, &ctx).expect("dims checked");
            usize::from(solve_board(&board).get(origin, 0) == EnvState::Question)
        })
        .sum();
    let (ci_low, ci_high) = wilson_interval(draws, trials);
    Ok(DrawEstimate {
        height,
        trials,
        draws,
        estimate: draws as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}

pub fn draw_csv(rows: &[DrawEstimate]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["height", "trials", "draw_estimate", "ci_low", "ci_high"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.height.to_string(),
            r.trials.to_string(),
            r.estimate.to_string(),
            r.ci_low.to_string(),
            r.ci_high.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// First site `(i, j)` where the solved board and the envelope run started
/// from an all-`?` row disagree; board row `j` is compared with time
/// `height - 1 - j`.
pub fn first_mismatch(board: &Board, params: &NoiseParams, ctx: &StepContext) -> Result<Option<(usize, usize)>> {
    let spec = crate::pca::PcaSpec::new(board.n, params.clone())?;
    let grid = solve_board(board);
    let mut row = EnvRow::all_question(board.width);
    for t in 0..board.height {
        if t > 0 {
            row = crate::pca::envelope_step(&row, &spec, ctx, t as u64);
        }
        let j = board.height - 1 - t;
        if let Some(i) = (0..board.width).find(|&i| grid.get(i, j) != row.get(i as i64)) {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub boards: usize,
    pub sites: usize,
    pub mismatched_boards: usize,
}

impl EquivalenceReport {
    pub fn identical(&self) -> bool {
        self.mismatched_boards == 0
    }
}

/// Compares `boards` square boards, cycling through `params`.
pub fn equivalence_check(
    boards: usize,
    size: usize,
    n: usize,
    params: &[NoiseParams],
    seed: SeedSpec,
) -> Result<EquivalenceReport> {
    if params.is_empty() {
        return Err(Error::BadBoard { width: size, height: size, n });
    }
    let bad: Vec<bool> = (0..boards)
        .into_par_iter()
        .map(|b| {
            let p = &params[b % params.len()];
            let ctx = StepContext::new(seed, b as u64);
            let board = generate_board(size, size, p, n, &ctx)?;
            Ok(first_mismatch(&board, p, &ctx)?.is_some())
        })
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport {
        boards,
        sites: boards * size * size,
        mismatched_boards: bad.iter().filter(|b| **b).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_noise;

    #[test]
    fn forced_boards() {
        let b = Board::from_labels(4, 3, 2, vec![SiteLabel::Target; 12]).unwrap();
        let g = solve_board(&b);
        assert!((0..4).all(|i| g.get(i, 0) == EnvState::Zero && g.get(i, 1) == EnvState::Zero));
        assert!((0..4).all(|i| g.get(i, 2) == EnvState::Question));
        let b = Board::from_labels(4, 3, 2, vec![SiteLabel::Trap; 12]).unwrap();
        assert_eq!(solve_board(&b).get(1, 0), EnvState::One);
    }

    #[test]
    fn extreme_params() {
        let ctx = StepContext::default();
        let b = generate_board(8, 5, &validate_noise(0.0, 0.0).unwrap(), 2, &ctx).unwrap();
        assert!(b.dump().chars().all(|c| c == '.' || c == '\n'));
        let b = generate_board(8, 5, &validate_noise(0.0, 1.0).unwrap(), 2, &ctx).unwrap();
        assert!(b.dump().chars().all(|c| c == 'T' || c == '\n'));
        assert!(generate_board(1, 5, &validate_noise(0.0, 1.0).unwrap(), 2, &ctx).is_err());
    }

    #[test]
    fn no_noise_means_draw() {
        let p = validate_noise(0.0, 0.0).unwrap();
        let e = draw_probability(64, 10, &p, 2, 20, SeedSpec::new(1)).unwrap();
        assert_eq!(e.estimate, 1.0);
    }

    #[test]
    fn solved_board_replays_envelope() {
        let ps: Vec<NoiseParams> = [(0.1, 0.1), (0.3, 0.05), (0.0, 0.2)]
            .iter()
            .map(|(a, b)| validate_noise(*a, *b).unwrap())
            .collect();
        let rep = equivalence_check(6, 16, 2, &ps, SeedSpec::new(4)).unwrap();
        assert!(rep.identical());
        let ctx = StepContext::new(SeedSpec::new(4), 0);
        let board = generate_board(16, 16, &ps[0], 2, &ctx).unwrap();
        let other = StepContext::new(SeedSpec::new(5), 0);
        assert!(first_mismatch(&board, &ps[0], &other).unwrap().is_some());
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
    }
}
