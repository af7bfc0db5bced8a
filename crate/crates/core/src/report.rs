//! Symbolic verification report: closed-form matches, kernel masses,
//! certificate replays, grid scans and the min-max fixture.

use serde::{Deserialize, Serialize};

use crate::drift::certificate::{check, fixtures, Certificate};
use crate::drift::lemma::{minmax_bound, stationary_drift, ChainSpec};
use crate::drift::{self, reference, grid_scan, ClassBound};
use crate::error::Result;
use crate::symbolic::{fmt_q, parse_poly, q, qi, PolyQ, Q, RatFnQ};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub group: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn group(&self, g: &str) -> impl Iterator<Item = &CheckResult> {
        let g = g.to_string();
        self.checks.iter().filter(move |c| c.group == g)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// One line per check: `group name PASS|FAIL detail`.
    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{:<12} {:<28} {} {}\n",
                    c.group,
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.detail
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn push(&mut self, group: &str, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            group: group.into(),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub grid_step: Q,
    /// `(name, certificate text)`; defaults to the shipped fixtures.
    pub certificates: Option<Vec<(String, String)>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            grid_step: q(1, 50),
            certificates: None,
        }
    }
}

fn poly(s: &str) -> PolyQ {
    parse_poly(s).expect("reference polynomial")
}

fn tail(d: i64, p: u32) -> RatFnQ {
    RatFnQ::one_minus_r_pow_over_r(p).scale(&qi(d))
}

/// `f + shift - d (1-r)^p / r` as a polynomial.
fn shifted(f: &RatFnQ, shift: i64, d: i64, p: u32) -> Option<PolyQ> {
    (&(f + &RatFnQ::constant(qi(shift))) - &tail(d, p)).into_poly()
}

fn compare(got: Option<PolyQ>, want: &PolyQ) -> (bool, String) {
    match got {
        None => (false, "not a polynomial".into()),
        Some(g) if &g == want => (true, format!("{} terms match", want.len())),
        Some(g) => {
            let diff = &g - want;
            (false, format!("differs by {}", diff.canonical_string()))
        }
    }
}

/// Closed forms recomputed from the tables against the published expansions.
pub fn expansions(rep: &mut VerifyReport) {
    let g = "expansion";
    let (ok, d) = compare(shifted(&drift::drift1_n2_general(), 0, 1, 2).map(|p| &p + &PolyQ::constant(q(1, 2))), &poly(reference::STEP_N2_GENERAL));
    rep.push(g, "n2_general_one_step", ok, d);

    let (ok, d) = compare(shifted(&drift::drift1_n3_s1(), 0, 1, 3), &poly(reference::DRIFT_S1));
    let cas = poly(reference::DRIFT_S1) == poly(reference::DRIFT_S1_CAS);
    rep.push(g, "n3_s1_one_step", ok && cas, format!("{d}; CAS output agrees after the typo fix: {cas}"));

    let (ok, d) = compare(shifted(&drift::drift1_n3_1000(), 0, 1, 3), &poly(reference::DRIFT_1000));
    let cas = poly(reference::DRIFT_1000) == poly(reference::DRIFT_1000_CAS);
    rep.push(g, "n3_1000_one_step", ok && cas, format!("{d}; CAS output agrees: {cas}"));

    let (ok, d) = compare(shifted(&drift::i0(), 0, 1, 3), &poly(reference::I0));
    let cas = poly(reference::I0) == poly(reference::I0_CAS);
    rep.push(g, "n3_0000_one_step", ok && cas, format!("{d}; CAS output agrees: {cas}"));

    let got = shifted(&drift::drift2_n2_00(), 1, 2, 2);
    let want = &poly(reference::N2_00_PRINTED) - &poly(reference::N2_00_PRINTED_OFFSET);
    let (ok, d) = compare(got, &want);
    rep.push(
        g,
        "n2_00_two_step",
        ok,
        format!("{d} (printed form minus {})", reference::N2_00_PRINTED_OFFSET),
    );

    let (ok, d) = compare(shifted(&drift::drift2_n3_1000(), 2, 2, 3), &poly(reference::N3_1000));
    rep.push(g, "n3_1000_two_step", ok, d);
    let (d0, d1) = drift::drift2_n3_0000();
    let (ok, d) = compare(shifted(&d0, 2, 2, 3), &poly(reference::N3_D0));
    rep.push(g, "n3_0000_two_step_d0", ok, d);
    let (ok, d) = compare(shifted(&d1, 2, 2, 3), &poly(reference::N3_D1));
    rep.push(g, "n3_0000_two_step_d1", ok, d);
}

pub fn masses(rep: &mut VerifyReport) {
    for (name, k) in drift::all_kernels() {
        let m = k.mass();
        let ok = m == RatFnQ::one();
        rep.push("mass", name, ok, format!("sum = {}", m.canonical_string()));
    }
}

pub fn certificates(rep: &mut VerifyReport, opts: &VerifyOptions) {
    let list: Vec<(String, String)> = match &opts.certificates {
        Some(l) => l.clone(),
        None => fixtures().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    };
    for (name, text) in list {
        let res = Certificate::parse(&text).and_then(|c| check(&c));
        match res {
            Ok(replay) => rep.push("certificate", &name, true, format!("residual {}", replay.display())),
            Err(e) => rep.push("certificate", &name, false, e.to_string()),
        }
    }
}

/// Functions scanned on the grid, with the floor each must beat.
fn scan_targets() -> Vec<(&'static str, Box<dyn Fn(&Q, &Q) -> Option<Q> + Sync>, Q)> {
    let g = drift::drift1_n2_general();
    let t00 = drift::drift2_n2_00();
    let s1 = drift::drift1_n3_s1();
    let t10 = drift::drift2_n3_1000();
    let (d0, d1) = drift::drift2_n3_0000();
    let dd = (d0.clone(), d1.clone());
    vec![
        ("n2_general_one_step", Box::new(move |a: &Q, b: &Q| g.eval_at(a, b)), q(-1, 2)),
        ("n2_00_two_step", Box::new(move |a: &Q, b: &Q| t00.eval_at(a, b)), qi(-1)),
        ("n3_s1_one_step", Box::new(move |a: &Q, b: &Q| s1.eval_at(a, b)), qi(-1)),
        ("n3_1000_two_step", Box::new(move |a: &Q, b: &Q| t10.eval_at(a, b)), qi(-2)),
        ("n3_0000_two_step_d0", Box::new(move |a: &Q, b: &Q| d0.eval_at(a, b)), qi(-2)),
        ("n3_0000_two_step_d1", Box::new(move |a: &Q, b: &Q| d1.eval_at(a, b)), qi(-2)),
        (
            "n3_0000_two_step_min",
            Box::new(move |a: &Q, b: &Q| drift::min_d0_d1_at(&dd, a, b)),
            qi(-2),
        ),
    ]
}

pub fn grids(rep: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    for (name, f, floor) in scan_targets() {
        let m = grid_scan(f, &floor, &opts.grid_step)?;
        rep.push(
            "grid",
            name,
            m.min > Q::from_integer(0.into()),
            format!(
                "min {} at ({}, {}) over {} points",
                fmt_q(&m.min),
                fmt_q(&m.argmin.0),
                fmt_q(&m.argmin.1),
                m.points
            ),
        );
    }
    for n in [2usize, 3] {
        let cb = ClassBound::new(n)?;
        let floor = cb.threshold();
        let m = grid_scan(|a, b| cb.at(a, b), &floor, &opts.grid_step)?;
        rep.push(
            "grid",
            &format!("class_bound_n{n}"),
            m.min > Q::from_integer(0.into()),
            format!(
                "min over classes of max(one step, half two step) exceeds {} by {} at ({}, {})",
                fmt_q(&floor),
                fmt_q(&m.min),
                fmt_q(&m.argmin.0),
                fmt_q(&m.argmin.1)
            ),
        );
    }
    Ok(())
}

/// Two-state chain with increments `-1` and `2` visited alternately.
pub fn lemma_fixture() -> ChainSpec {
    ChainSpec::alternating(qi(-1), qi(2))
}

pub fn lemma(rep: &mut VerifyReport) -> Result<()> {
    let c = lemma_fixture();
    let b = minmax_bound(&c);
    let r = stationary_drift(&c)?;
    rep.push(
        "lemma",
        "two_state_minmax",
        b == r && b == q(1, 2),
        format!("min-max bound {} and stationary drift {}", fmt_q(&b), fmt_q(&r)),
    );
    Ok(())
}

pub fn verify_all(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    expansions(&mut rep);
    masses(&mut rep);
    certificates(&mut rep, opts);
    grids(&mut rep, opts)?;
    lemma(&mut rep)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_report_passes() {
        let rep = verify_all(&VerifyOptions {
            grid_step: q(1, 10),
            certificates: None,
        })
        .unwrap();
        assert!(rep.passes(), "{}", rep.to_text());
        assert_eq!(rep.group("certificate").count(), 6);
        assert_eq!(rep.group("mass").count(), 5);
    }

    #[test]
    fn sign_flip_fails() {
        let (name, text) = fixtures()[0];
        let bad = text.replacen("group ", "group -", 1);
        let rep = verify_all(&VerifyOptions {
            grid_step: q(1, 2),
            certificates: Some(vec![(name.to_string(), bad)]),
        })
        .unwrap();
        let f = rep.first_failure().unwrap();
        assert_eq!(f.group, "certificate");
    }
}
