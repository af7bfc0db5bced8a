//! Min-max drift bound for a finite boundary chain and the auxiliary
//! waiting chain behind it.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use crate::symbolic::{fmt_q, q, Q};

/// Finite Markov chain on boundary states with a jump attached to every
/// transition.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub states: Vec<String>,
    pub transition: Vec<Vec<Q>>,
    /// `jumps[f][g]`: increment of `j` on the transition `f -> g`.
    pub jumps: Vec<Vec<Q>>,
}

impl ChainSpec {
    pub fn new(states: Vec<String>, transition: Vec<Vec<Q>>, jumps: Vec<Vec<Q>>) -> Result<Self> {
        let n = states.len();
        if n == 0 || transition.len() != n || jumps.len() != n {
            return Err(Error::BadChain("dimension mismatch".into()));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.len() != n || jumps[i].len() != n {
                return Err(Error::BadChain(format!("row {i} has wrong length")));
            }
            if row.iter().any(|p| p < &Q::zero()) {
                return Err(Error::BadChain(format!("row {i} has a negative entry")));
            }
            let s: Q = row.iter().sum();
            if s != q(1, 1) {
                return Err(Error::BadChain(format!("row {i} sums to {}", fmt_q(&s))));
            }
        }
        Ok(ChainSpec {
            states,
            transition,
            jumps,
        })
    }

    /// Single state with constant increment `c`.
    pub fn constant(c: Q) -> Self {
        ChainSpec::new(vec!["f".into()], vec![vec![q(1, 1)]], vec![vec![c]]).expect("valid")
    }

    /// Two states visited alternately with increments `a` then `b`.
    pub fn alternating(a: Q, b: Q) -> Self {
        ChainSpec::new(
            vec!["a".into(), "b".into()],
            vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]],
            vec![vec![a.clone(), a], vec![b.clone(), b]],
        )
        .expect("valid")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `E[J | f]`.
    pub fn drift1(&self, f: usize) -> Q {
        self.transition[f].iter().zip(&self.jumps[f]).map(|(p, j)| p * j).sum()
    }

    /// `E[J + J' | f]`.
    pub fn drift2(&self, f: usize) -> Q {
        let mut s = self.drift1(f);
        for g in 0..self.len() {
            s += &self.transition[f][g] * self.drift1(g);
        }
        s
    }

    /// States with `drift1 >= drift2 / 2`.
    pub fn in_f1(&self, f: usize) -> bool {
        self.drift1(f) * q(2, 1) >= self.drift2(f)
    }
}

/// `min_f max(drift1(f), drift2(f) / 2)`.
pub fn minmax_bound(spec: &ChainSpec) -> Q {
    (0..spec.len())
        .map(|f| {
            let a = spec.drift1(f);
            let b = spec.drift2(f) * q(1, 2);
            if a >= b {
                a
            } else {
                b
            }
        })
        .min()
        .expect("nonempty chain")
}

/// Pass iff the bound beats the island-shrinking threshold `-(n-1)/2`.
pub fn goal_check(bound: &Q, n: usize) -> bool {
    *bound > q(-(n as i64 - 1), 2)
}

/// Exact stationary distribution by Gaussian elimination on
/// `pi (P - I) = 0`, `sum pi = 1`. Requires a unique solution.
pub fn stationary(spec: &ChainSpec) -> Result<Vec<Q>> {
    let n = spec.len();
    // Rows: equations; columns: pi_0..pi_{n-1} | rhs.
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|g| {
            let mut row: Vec<Q> = (0..n).map(|f| spec.transition[f][g].clone()).collect();
            row[g] -= q(1, 1);
            row.push(Q::zero());
            row
        })
        .collect();
    a[n - 1] = vec![q(1, 1); n + 1];
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::BadChain("stationary law is not unique".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for c in col..=n {
                    let t = &k * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Long-run drift `sum_f pi(f) drift1(f)`.
pub fn stationary_drift(spec: &ChainSpec) -> Result<Q> {
    let pi = stationary(spec)?;
    Ok(pi.iter().enumerate().map(|(f, p)| p * spec.drift1(f)).sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxStats {
    pub steps: u64,
    pub r: f64,
    pub r_hat: f64,
    /// Batch-means standard error of `r_hat - r`.
    pub stderr_diff: f64,
    /// Visit frequencies `tau(f, 0)` and `tau(f, 1)`.
    pub tau: Vec<(f64, f64)>,
    pub in_f2: Vec<bool>,
}

impl AuxStats {
    pub fn r_hat_matches(&self) -> bool {
        (self.r_hat - self.r).abs() <= 3.0 * self.stderr_diff + 1e-12
    }

    /// `|tau(f,0) - tau(f,1)| <= 3 sigma` for every state in `F2`.
    pub fn tau_balanced(&self) -> bool {
        self.tau.iter().zip(&self.in_f2).filter(|(_, f2)| **f2).all(|((t0, t1), _)| {
            let sigma = ((t0 + t1) / self.steps as f64).sqrt();
            (t0 - t1).abs() <= 3.0 * sigma + 1.0 / self.steps as f64
        })
    }
}

fn sample_next(row: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (g, p) in row.iter().enumerate() {
        acc += p;
        if u < acc {
            return g;
        }
    }
    row.len() - 1
}

/// Runs the raw chain for `steps` transitions from state `start` and the
/// waiting chain built from the same path.
pub fn aux_chain_simulate(spec: &ChainSpec, start: usize, steps: u64, seed: SeedSpec) -> AuxStats {
    const BATCH: u64 = 1000;
    let n = spec.len();
    let probs: Vec<Vec<f64>> = spec
        .transition
        .iter()
        .map(|r| r.iter().map(|p| p.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let jumps: Vec<Vec<f64>> = spec
        .jumps
        .iter()
        .map(|r| r.iter().map(|p| p.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let in_f2: Vec<bool> = (0..n).map(|f| !spec.in_f1(f)).collect();

    let mut f = start;
    let mut f_hat = start;
    let (mut j, mut j_hat) = (0.0f64, 0.0f64);
    let mut w = in_f2[f];
    let mut tau = vec![(0.0f64, 0.0f64); n];
    let mut batch_diffs = Vec::new();
    let mut batch_start = 0.0;
    for t in 0..steps {
        if w {
            tau[f_hat].1 += 1.0;
        } else {
            tau[f_hat].0 += 1.0;
        }
        let g = sample_next(&probs[f], seed.uniform(0, t, 0));
        j += jumps[f][g];
        if w {
            w = false;
        } else {
            j_hat = j;
            f_hat = g;
            w = in_f2[g];
        }
        f = g;
        if (t + 1) % BATCH == 0 {
            let d = (j_hat - j) - batch_start;
            batch_diffs.push(d / BATCH as f64);
            batch_start = j_hat - j;
        }
    }
    let tf = steps as f64;
    let stderr_diff = if batch_diffs.len() > 1 {
        let m = batch_diffs.iter().sum::<f64>() / batch_diffs.len() as f64;
        let v = batch_diffs.iter().map(|d| (d - m).powi(2)).sum::<f64>() / (batch_diffs.len() - 1) as f64;
        (v / batch_diffs.len() as f64).sqrt()
    } else {
        0.0
    };
    AuxStats {
        steps,
        r: j / tf,
        r_hat: j_hat / tf,
        stderr_diff,
        tau: tau.into_iter().map(|(a, b)| (a / tf, b / tf)).collect(),
        in_f2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_chain() {
        let c = ChainSpec::constant(q(3, 4));
        assert_eq!(minmax_bound(&c), q(3, 4));
        assert_eq!(stationary_drift(&c).unwrap(), q(3, 4));
    }

    #[test]
    fn alternating_chain() {
        let c = ChainSpec::alternating(q(-1, 1), q(2, 1));
        assert_eq!(minmax_bound(&c), q(1, 2));
        assert_eq!(stationary_drift(&c).unwrap(), q(1, 2));
        assert!(!c.in_f1(0) && c.in_f1(1));
        let s = aux_chain_simulate(&c, 0, 10_000, SeedSpec::new(3));
        assert!(s.r_hat_matches() && s.tau_balanced());
        assert!((s.r - 0.5).abs() < 1e-3);
    }

    #[test]
    fn all_f1_chain_tracks_raw() {
        let c = ChainSpec::constant(q(1, 1));
        let s = aux_chain_simulate(&c, 0, 1000, SeedSpec::new(1));
        assert_eq!(s.r, s.r_hat);
    }

    #[test]
    fn goal_threshold() {
        assert!(goal_check(&q(-2, 5), 2));
        assert!(!goal_check(&q(-1, 2), 2));
        assert!(goal_check(&q(-9, 10), 3));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(ChainSpec::new(vec!["a".into()], vec![vec![q(1, 2)]], vec![vec![q(0, 1)]]).is_err());
    }
}
