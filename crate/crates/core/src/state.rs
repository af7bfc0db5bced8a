use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnvState {
    Zero,
    One,
    Question,
}

impl EnvState {
    pub fn to_char(self) -> char {
        match self {
            EnvState::Zero => '0',
            EnvState::One => '1',
            EnvState::Question => '?',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(EnvState::Zero),
            '1' => Ok(EnvState::One),
            '?' => Ok(EnvState::Question),
            other => Err(Error::BadCell(other)),
        }
    }

    pub fn from_bit(b: bool) -> Self {
        if b {
            EnvState::One
        } else {
            EnvState::Zero
        }
    }
}

/// Periodic row over `{0, 1, ?}` stored as two bit planes.
///
/// `known` has bit `i` set iff cell `i` is not `?`; `ones` has bit `i` set iff
/// cell `i` is 1 (always a subset of `known`). Bits past `width` are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EnvRow {
    width: usize,
    pub(crate) known: Vec<u64>,
    pub(crate) ones: Vec<u64>,
}

pub(crate) fn words_for(width: usize) -> usize {
    width.div_ceil(64)
}

impl EnvRow {
    pub fn all_question(width: usize) -> Self {
        EnvRow {
            width,
            known: vec![0; words_for(width)],
            ones: vec![0; words_for(width)],
        }
    }

    pub fn all_zero(width: usize) -> Self {
        let mut r = EnvRow::all_question(width);
        for i in 0..width {
            r.set(i, EnvState::Zero);
        }
        r
    }

    pub fn from_states(states: &[EnvState]) -> Self {
        let mut r = EnvRow::all_question(states.len());
        for (i, s) in states.iter().enumerate() {
            r.set(i, *s);
        }
        r
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut r = EnvRow::all_question(bits.len());
        for (i, b) in bits.iter().enumerate() {
            r.set(i, EnvState::from_bit(*b));
        }
        r
    }

    pub fn parse(s: &str) -> Result<Self> {
        let states = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(EnvState::from_char)
            .collect::<Result<Vec<_>>>()?;
        Ok(EnvRow::from_states(&states))
    }

    pub(crate) fn from_planes(width: usize, known: Vec<u64>, ones: Vec<u64>) -> Self {
        let mut r = EnvRow { width, known, ones };
        r.mask_tail();
        r
    }

    fn mask_tail(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            let m = (1u64 << rem) - 1;
            if let Some(w) = self.known.last_mut() {
                *w &= m;
            }
            if let Some(w) = self.ones.last_mut() {
                *w &= m;
            }
        }
        for (o, k) in self.ones.iter_mut().zip(&self.known) {
            *o &= *k;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Cell at `i mod width`.
    pub fn get(&self, i: i64) -> EnvState {
        let i = i.rem_euclid(self.width as i64) as usize;
        let (w, b) = (i / 64, i % 64);
        if self.known[w] >> b & 1 == 0 {
            EnvState::Question
        } else if self.ones[w] >> b & 1 == 1 {
            EnvState::One
        } else {
            EnvState::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: EnvState) {
        let (w, b) = (i / 64, i % 64);
        let m = 1u64 << b;
        match s {
            EnvState::Question => {
                self.known[w] &= !m;
                self.ones[w] &= !m;
            }
            EnvState::Zero => {
                self.known[w] |= m;
                self.ones[w] &= !m;
            }
            EnvState::One => {
                self.known[w] |= m;
                self.ones[w] |= m;
            }
        }
    }

    pub fn states(&self) -> Vec<EnvState> {
        (0..self.width).map(|i| self.get(i as i64)).collect()
    }

    pub fn count_question(&self) -> usize {
        self.width - self.known.iter().map(|w| w.count_ones() as usize).sum::<usize>()
    }

    pub fn count_one(&self) -> usize {
        self.ones.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn has_question(&self) -> bool {
        self.count_question() > 0
    }

    /// Keeps only the cells selected by `keep`; all others become `?`.
    pub fn retain_mask(&mut self, keep: &[u64]) {
        for ((k, o), m) in self.known.iter_mut().zip(self.ones.iter_mut()).zip(keep) {
            *k &= *m;
            *o &= *m;
        }
    }
}

impl fmt::Display for EnvRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            write!(f, "{}", self.get(i as i64).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for EnvRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvRow({self})")
    }
}

/// A row with no `?` cell.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinRow(EnvRow);

impl BinRow {
    pub fn new(row: EnvRow) -> Result<Self> {
        if let Some(i) = (0..row.width()).find(|&i| row.get(i as i64) == EnvState::Question) {
            return Err(Error::QuestionInBinary(i));
        }
        Ok(BinRow(row))
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        BinRow(EnvRow::from_bits(bits))
    }

    pub fn parse(s: &str) -> Result<Self> {
        BinRow::new(EnvRow::parse(s)?)
    }

    pub fn bit(&self, i: i64) -> bool {
        self.0.get(i) == EnvState::One
    }

    pub fn width(&self) -> usize {
        self.0.width()
    }

    pub fn as_env(&self) -> &EnvRow {
        &self.0
    }

    pub fn into_env(self) -> EnvRow {
        self.0
    }
}

impl fmt::Display for BinRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Position in half-cell units, stored doubled so that comparisons are exact.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfPos {
    pub doubled: i64,
}

impl HalfPos {
    pub const ZERO: HalfPos = HalfPos { doubled: 0 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfPos { doubled }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfPos { doubled: 2 * v }
    }

    pub fn is_integer(&self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

impl Add for HalfPos {
    type Output = HalfPos;
    fn add(self, o: HalfPos) -> HalfPos {
        HalfPos::from_doubled(self.doubled + o.doubled)
    }
}

impl AddAssign for HalfPos {
    fn add_assign(&mut self, o: HalfPos) {
        self.doubled += o.doubled;
    }
}

impl Sub for HalfPos {
    type Output = HalfPos;
    fn sub(self, o: HalfPos) -> HalfPos {
        HalfPos::from_doubled(self.doubled - o.doubled)
    }
}

impl Neg for HalfPos {
    type Output = HalfPos;
    fn neg(self) -> HalfPos {
        HalfPos::from_doubled(-self.doubled)
    }
}

impl fmt::Display for HalfPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_roundtrip_and_counts() {
        let r = EnvRow::parse("?0110?").unwrap();
        assert_eq!(r.to_string(), "?0110?");
        assert_eq!(r.count_question(), 2);
        assert_eq!(r.count_one(), 2);
        assert_eq!(r.get(-1), EnvState::Question);
        assert_eq!(r.get(7), EnvState::Zero);
        assert!(EnvRow::parse("01x").is_err());
    }

    #[test]
    fn binrow_rejects_question() {
        assert!(matches!(BinRow::parse("01?0"), Err(Error::QuestionInBinary(2))));
        assert!(BinRow::parse("0110").is_ok());
    }

    #[test]
    fn halfpos_arith() {
        let a = HalfPos::from_doubled(-1);
        let b = HalfPos::from_int(2);
        assert_eq!((a + b).doubled, 3);
        assert_eq!((b - a).to_string(), "5/2");
        assert!(a < b);
        assert!(b.is_integer() && !a.is_integer());
    }
}
