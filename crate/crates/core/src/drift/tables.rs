//! Boundary transition tables for `n = 2` and `n = 3`.
//!
//! Probabilities are written as expressions in `x = e0`, `y = e1` and `r`.
//! Families list the `k = 0` probability; term `k` carries an extra factor
//! `(x + y)^k` and increment `+k`.

use super::kernel::{BoundaryClass as C, Kernel, TableBuilder};
use crate::symbolic::{parse_poly, PolyQ};

fn p(s: &str) -> PolyQ {
    parse_poly(s).expect("table expression")
}

/// Shared law of the `n = 2` states `(0,1)`, `(1,0)` and `(1,1)`.
pub fn kernel_n2_general() -> Kernel {
    let mut b = TableBuilder::new();
    b.line(-2, C::Pair10, p("y(1-y)r"));
    b.line(-1, C::Pair00, p("(1-y)^2 r"));
    b.line(0, C::Pair01, p("(1-y)y r"));
    b.line(0, C::Pair11, p("y^2 r"));
    b.line(0, C::Pair10, p("y x r"));
    b.line(1, C::Pair00, p("(1-y)x r"));
    b.line(2, C::Pair01, p("(1-y)y r"));
    b.line(2, C::Pair11, p("y^2 r"));
    b.family(2, C::Pair10, p("y x r"));
    b.family(3, C::Pair00, p("x^2 r"));
    b.family(4, C::Pair01, p("x y r"));
    b.family(4, C::Pair11, p("y^2 r"));
    b.build(2, &[C::Pair01, C::Pair10, C::Pair11])
}

pub fn kernel_n2_00() -> Kernel {
    let mut b = TableBuilder::new();
    b.bound_line(-3, C::StarZero, p("x r^2"));
    b.line(-3, C::Pair10, p("y x r"));
    b.line(-2, C::Pair00, p("x^2 r"));
    b.line(-1, C::Pair01, p("x(1-x)r"));
    b.line(-1, C::Pair11, p("y(1-x)r"));
    b.line(-1, C::StarOne, p("r(1-x)r"));
    b.line(-1, C::Pair10, p("(1-x)x r"));
    b.line(0, C::Pair00, p("x^2 r"));
    b.line(1, C::Pair01, p("x y r"));
    b.line(1, C::Pair11, p("(1-x)y r"));
    b.family(1, C::Pair10, p("y x r"));
    b.family(2, C::Pair00, p("x^2 r"));
    b.family(3, C::Pair01, p("x y r"));
    b.family(3, C::Pair11, p("y^2 r"));
    b.build(2, &[C::Pair00])
}

/// Law of every state in `S1`. The onward state keeps three cells, so
/// `(0,0,0)` lands in `(*,0,0,0)`.
pub fn kernel_n3_s1() -> Kernel {
    let mut b = TableBuilder::new();
    for k in 0..3 {
        b.line(2 * (k - 1), C::Star000, p(&format!("(1-y)^{} x^{k} r", 3 - k)));
    }
    b.family(4, C::Star000, p("x^3 r"));
    for l in 0..3i64 {
        for k in 0..=l {
            b.line(2 * (k - l), C::S1, p(&format!("y(1-y)^{} x^{k} r", l - k)));
        }
    }
    for l in 0..2i64 {
        for k in l + 1..3 {
            b.line(2 * (k - l), C::S1, p(&format!("(x+y)^{} y x^{l} r", k - l - 1)));
        }
    }
    for l in 0..3i64 {
        b.family(2 * (3 - l), C::S1, p(&format!("(x+y)^{} y x^{l} r", 2 - l)));
    }
    b.build(3, &[C::S1])
}

pub fn kernel_n3_1000() -> Kernel {
    let mut b = TableBuilder::new();
    for k in 0..4 {
        b.line(2 * (k - 2), C::C0000, p(&format!("(1-y)^{} x^{} r", 3 - k, 1 + k)));
    }
    for k in 0..3 {
        b.line(2 * (k - 2), C::C1000, p(&format!("y(1-y)^{} x^{} r", 2 - k, 1 + k)));
    }
    b.line(2, C::C1000, p("(1-x)x^3 r"));
    for l in 1..3i64 {
        for k in 0..l {
            b.line(2 * (k - 1 - l), C::S1, p(&format!("x^{} y (1-y)^{} r", k + 1, l - k - 1)));
        }
    }
    for l in 0..3 {
        b.line(-2, C::S1, p(&format!("(1-x)x^{l} r")));
    }
    for l in 0..3i64 {
        for k in l + 1..4 {
            b.line(2 * (k - 1 - l), C::S1, p(&format!("(x+y)^{} y x^{l} r", k - l - 1)));
        }
    }
    b.family(4, C::C0000, p("x^4 r"));
    b.family(4, C::C1000, p("y x^3 r"));
    for l in 0..3i64 {
        b.family(2 * (3 - l), C::S1, p(&format!("(x+y)^{} y x^{l} r", 3 - l)));
    }
    b.build(3, &[C::C1000])
}

pub fn kernel_n3_0000() -> Kernel {
    let mut b = TableBuilder::new();
    b.bound_line(-6, C::OneStar00, p("y r x^2 r"));
    b.bound_line(-6, C::EStar, p("(1-y) r x^2 r"));
    for k in 0..2 {
        b.line(2 * (k - 2), C::Star000, p("r x^3 r"));
    }
    b.line(-6, C::S1, p("y x^2 r"));
    b.line(-4, C::S1, p("(1-x)x^2 r"));
    for k in 0..4 {
        b.line(2 * (k - 2), C::C0000, p("x^4 r"));
    }
    for k in 0..2 {
        b.line(2 * (k - 2), C::C1000, p("y x^3 r"));
    }
    for k in 2..4 {
        b.line(2 * (k - 2), C::C1000, p("(1-x)x^3 r"));
    }
    b.line(-2, C::S1, p("(1-x)r"));
    b.line(0, C::S1, p("y r"));
    b.line(-4, C::S1, p("(1-x)x r"));
    b.line(-2, C::S1, p("(1-x)x r"));
    for k in 0..2 {
        b.line(2 * (1 + k), C::S1, p(&format!("(x+y)^{} y r", k + 1)));
    }
    for k in 0..2 {
        b.line(2 * k, C::S1, p(&format!("(x+y)^{k} y x r")));
    }
    b.line(-2, C::S1, p("(1-x)x^2 r"));
    b.line(0, C::S1, p("y x^2 r"));
    b.family(4, C::C0000, p("x^4 r"));
    b.family(4, C::C1000, p("y x^3 r"));
    for l in 0..3i64 {
        b.family(2 * (3 - l), C::S1, p(&format!("(x+y)^{} y x^{l} r", 3 - l)));
    }
    b.build(3, &[C::C0000])
}

pub fn all_kernels() -> Vec<(&'static str, Kernel)> {
    vec![
        ("n2 general", kernel_n2_general()),
        ("n2 (0,0)", kernel_n2_00()),
        ("n3 S1", kernel_n3_s1()),
        ("n3 (1,0,0,0)", kernel_n3_1000()),
        ("n3 (0,0,0,0)", kernel_n3_0000()),
    ]
}
