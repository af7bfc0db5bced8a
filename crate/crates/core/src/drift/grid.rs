use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbolic::{fmt_q, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct GridMin {
    pub min: Q,
    pub argmin: (Q, Q),
    pub points: usize,
}

#[derive(Serialize)]
struct GridMinJson {
    min: String,
    min_f64: f64,
    argmin: (String, String),
    points: usize,
}

impl GridMin {
    pub fn to_json(&self) -> serde_json::Value {
        use num_traits::ToPrimitive;
        serde_json::to_value(GridMinJson {
            min: fmt_q(&self.min),
            min_f64: self.min.to_f64().unwrap_or(f64::NAN),
            argmin: (fmt_q(&self.argmin.0), fmt_q(&self.argmin.1)),
            points: self.points,
        })
        .expect("serializable")
    }
}

/// Exact minimum of `f - floor` over `{(a s, b s) : 0 <= a, b <= 1/(2s)}`
/// without the origin and without points where `f` is undefined.
pub fn grid_scan<F>(f: F, floor: &Q, step: &Q) -> Result<GridMin>
where
    F: Fn(&Q, &Q) -> Option<Q> + Sync,
{
    let half = Q::new(1.into(), 2.into());
    if *step <= Q::zero() || !(&half / step).is_integer() {
        return Err(Error::BadProbability(format!("grid step {} must divide 1/2", fmt_q(step))));
    }
    let m: i64 = (&half / step).to_integer().try_into().map_err(|_| Error::BadProbability("grid too fine".into()))?;
    let best = (0..=m)
        .into_par_iter()
        .flat_map_iter(|a| (0..=m).map(move |b| (a, b)))
        .filter(|&(a, b)| a != 0 || b != 0)
        .filter_map(|(a, b)| {
            let x0 = step * Q::from_integer(a.into());
            let x1 = step * Q::from_integer(b.into());
            if &x0 + &x1 >= Q::one() {
                return None;
            }
            f(&x0, &x1).map(|v| (v - floor, (x0, x1)))
        })
        .map(|(v, pt)| (v, pt, 1usize))
        .reduce_with(|a, b| {
            let n = a.2 + b.2;
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                (b.0, b.1, n)
            } else {
                (a.0, a.1, n)
            }
        });
    let (min, argmin, points) = best.ok_or_else(|| Error::EmptySample("grid".into()))?;
    Ok(GridMin { min, argmin, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::q;

    #[test]
    fn linear_min_next_to_origin() {
        let g = grid_scan(|a, b| Some(a + b), &q(0, 1), &q(1, 10)).unwrap();
        assert_eq!(g.min, q(1, 10));
        assert_eq!(g.points, 34);
        assert!(grid_scan(|a, _| Some(a.clone()), &q(0, 1), &q(1, 3)).is_err());
    }
}
