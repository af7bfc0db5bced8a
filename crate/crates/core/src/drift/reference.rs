//! Published closed forms, kept as text in the CAS style (`x = e0`, `y = e1`).
//!
//! Each constant is parsed with [`crate::symbolic::parse_poly`]; the tests and
//! the `verify` report compare them against the values computed from the
//! transition tables.

/// `drift1(n=2 general) + 1/2 - (1-r)^2/r`.
pub const STEP_N2_GENERAL: &str = "1/2x + 1/2y + y r + 1/2x(1-y)r + 1/2y^2 r + 1/2(1-r)^2 + 1/2y^2";

/// `drift1(n=2 general) - inf00`.
pub const DIFF_10: &str = "1/2(1-r)^2 + 1/2y r + 1/2y^2 r + 1/2x(1-y)r + x(3/2-x)r";

/// Mass sent to `(0,0)` from `(0,0)`.
pub const MARGINAL_00_TO_00: &str = "2x^2 r + x^2";
pub const MARGINAL_00_TO_STAR0: &str = "x r^2";

/// `drift2_n2_00 + 1 - 2(1-r)^2/r` as printed. Differs from the assembled
/// bound by `r(x^2 - 1/2y^2)`.
pub const N2_00_PRINTED: &str = "x^6 + 3/2x^5y + 7/2x^4 + 6x^3y^2 + 5/2x^2y^3 + 4x^2y + 3/2x^2 + 1/2x y^5 \
     + x y^3 + x y^2 + 5/2y \
     - (7/2x^5 + x^4y^2 + 3/2x^4y + 2x^3y^3 + 4x^3y + 3/2x^3 + 13/2x^2y^2 + 3/2x y^4 + 1/2x y)";
pub const N2_00_PRINTED_OFFSET: &str = "r(x^2 - 1/2y^2)";

/// `drift1(S1) - (1-r)^3/r`.
pub const DRIFT_S1: &str = "-1 + x + 2y + x^2 + 3y^2(1-y) + x y(1-x) + y^4 + x^3y";
/// CAS printout of the same quantity, with its one garbled monomial.
pub const DRIFT_S1_CAS_RAW: &str = "-1+x+x^2+2y+xy-x^2 x^1+x^3y+3y^2-3y^3+y^4";
pub const DRIFT_S1_CAS: &str = "-1+x+x^2+2y+xy-x^2y+x^3y+3y^2-3y^3+y^4";

/// `drift1(1000) - (1-r)^3/r`.
pub const DRIFT_1000: &str = "-1 - x + y + x^2 + y^2 + 2x y + 2x^3 + 2x y^2 - x^4 - x y^3";
pub const DRIFT_1000_CAS: &str = "-1-x+x^2+2x^3-x^4+y+2xy+y^2+2xy^2-xy^3";

/// `I0 - (1-r)^3/r`.
pub const I0: &str = "-1 - x + y - x^2 + y^2 + 3x y + 6x^3 + 2x^2y - 3x^4 - 3x^3y";
pub const I0_CAS: &str = "-1-x-x^2+6x^3-3x^4+y+3xy+2x^2y-3x^3y+y^2";

/// `drift2_n3_1000 + 2 - 2(1-r)^3/r`.
pub const N3_1000: &str = "3y + 4y^2 + y^4 + 2x y + 3x y^2 + 5x y^3 + 14x y^5 + x y^7 + 7x^2y + 13x^2y^3 \
     + 10x^2y^5 + x^2y^7 + 11x^3y + 26x^3y^3 + 2x^3y^5 + 3x^4 + 49x^4y^2 + 18x^4y^4 \
     + 12x^5y + 11x^5y^3 + 2x^6y^2 + 3x^7 + 3x^8y + 2x^9 \
     - (3y^3 + 15x y^4 + 6x y^6 + 13x^2y^2 + 12x^2y^4 + 5x^2y^6 + 25x^3y^2 + 12x^3y^4 \
     + 24x^4y + 43x^4y^3 + 3x^4y^5 + x^5 + 19x^5y^2 + 2x^5y^4 + x^6y + x^6y^3 + 4x^7y + 5x^8)";
/// CAS printout of `drift2_n3_1000 - 2(1-r)^3/r`; its last monomial is
/// printed as `x2y^7`.
pub const N3_1000_CAS: &str = "-2+3x^4-x^5+3x^7-5x^8+2x^9+3y+2xy+7x^2y+11x^3y-24x^4y+12x^5y-x^6y-4x^7y\
     +3x^8y+4y^2+3xy^2-13x^2y^2-25x^3y^2+49x^4y^2-19x^5y^2+2x^6y^2-3y^3+5xy^3\
     +13x^2y^3+26x^3y^3-43x^4y^3+11x^5y^3-x^6y^3+y^4-15xy^4-12x^2y^4-12x^3y^4\
     +18x^4y^4-2x^5y^4+14xy^5+10x^2y^5+2x^3y^5-3x^4y^5-6xy^6-5x^2y^6+xy^7+x^2y^7";

/// `D0 + 2 - 2(1-r)^3/r`.
pub const N3_D0: &str = "3y + 4y^2 + y^4 + 4x y + 6x^2y^3 + 5x^2y^5 + 4x^3 + 2x^3y + 14x^3y^3 + 5x^3y^5 \
     + 15x^4y + x^4y^4 + 10x^5 + 15x^5y^2 + 2x^5y^4 + 6x^6y + 6x^7 + 3x^7y^2 + 8x^8y + 4x^9 \
     - (3y^3 + 9x^2y^4 + x^2y^6 + 10x^3y^2 + 11x^3y^4 + x^3y^6 + 9x^4 + 7x^4y^2 + x^4y^3 \
     + 18x^5y + 8x^5y^3 + 3x^6 + 4x^6y^2 + 11x^7y + 10x^8)";
pub const N3_D0_CAS: &str = "-2+4x^3-9x^4+10x^5-3x^6+6x^7-10x^8+4x^9+3y+4xy+2x^3y+15x^4y-18x^5y+6x^6y\
     -11x^7y+8x^8y+4y^2-10x^3y^2-7x^4y^2+15x^5y^2-4x^6y^2+3x^7y^2-3y^3+6x^2y^3\
     +14x^3y^3-x^4y^3-8x^5y^3+y^4-9x^2y^4-11x^3y^4+x^4y^4+2x^5y^4+5x^2y^5\
     +5x^3y^5-x^2y^6-x^3y^6";

/// `D1 + 2 - 2(1-r)^3/r`.
pub const N3_D1: &str = "3y + 4y^2 + y^4 + 4x y + 6x^2y^3 + 5x^2y^5 + 4x^3 + x^3y + 4x^3y^3 + 7x^4y \
     + 5x^4y^2 + 3x^4y^4 + 6x^5 + 14x^5y^3 + 10x^6y + 22x^7 + 12x^7y^2 + 20x^8y + 8x^9 \
     - (3y^3 + 9x^2y^4 + x^2y^6 + 5x^3y^2 + x^3y^4 + 7x^4 + 9x^4y^3 + 15x^5y^2 + 4x^5y^4 \
     + 7x^6 + 4x^6y^3 + 36x^7y + 24x^8)";
pub const N3_D1_CAS: &str = "-2+4x^3-7x^4+6x^5-7x^6+22x^7-24x^8+8x^9+3y+4xy+x^3y+7x^4y+10x^6y-36x^7y\
     +20x^8y+4y^2-5x^3y^2+5x^4y^2-15x^5y^2+12x^7y^2-3y^3+6x^2y^3+4x^3y^3\
     -9x^4y^3+14x^5y^3-4x^6y^3+y^4-9x^2y^4-x^3y^4+3x^4y^4-4x^5y^4+5x^2y^5\
     -x^2y^6";

/// `drift1(S1) - I0` before and after the bounding steps.
pub const S1_MINUS_I0: &str = "2x + y + 2x^2 + 2y^2 + y^4 + 4x^3y + 3x^4 - (3y^3 + 2x y + 3x^2y + 6x^3)";
pub const S1_MINUS_I0_RESIDUAL: &str = "1/4x + 1/4y + y^2 + (x-y)^2 + y^4 + 4x^3y + 3x^4";

/// `drift1(S1) - drift1(1000)` before and after the bounding steps.
pub const S1_MINUS_1000: &str =
    "2x + y + 2y^2 + y^4 + x^3y + x^4 + x y^3 - (3y^3 + x y + x^2y + 2x^3 + 2x y^2)";
pub const S1_MINUS_1000_RESIDUAL: &str = "1/2x + 2y^2 + y^4 + x^3y + x^4 + x y^3";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drift::bounds::*;
    use crate::drift::kernel_n2_00;
    use crate::drift::BoundaryClass;
    use crate::symbolic::{parse_poly, PolyQ, RatFnQ};

    fn p(s: &str) -> PolyQ {
        parse_poly(s).unwrap()
    }

    fn poly_part(f: RatFnQ) -> PolyQ {
        f.into_poly().expect("polynomial")
    }

    fn tail(d: i64, pw: u32) -> RatFnQ {
        RatFnQ::one_minus_r_pow_over_r(pw).scale(&crate::symbolic::qi(d))
    }

    #[test]
    fn n2_general_drift() {
        let got = &(&drift1_n2_general() + &RatFnQ::constant(crate::symbolic::q(1, 2))) - &tail(1, 2);
        assert_eq!(poly_part(got), p(STEP_N2_GENERAL));
        assert_eq!(poly_part(&drift1_n2_general() - &inf00()), p(DIFF_10));
    }

    #[test]
    fn n2_00_marginals() {
        let k = kernel_n2_00();
        assert_eq!(k.marginal(BoundaryClass::Pair00), p(MARGINAL_00_TO_00).into());
        assert_eq!(k.marginal(BoundaryClass::StarZero), p(MARGINAL_00_TO_STAR0).into());
    }

    #[test]
    fn n2_00_printed_offset() {
        let got = poly_part(&(&drift2_n2_00() + &RatFnQ::one()) - &tail(2, 2));
        assert_eq!(&p(N2_00_PRINTED) - &got, p(N2_00_PRINTED_OFFSET));
    }

    #[test]
    fn n3_one_step() {
        assert_eq!(poly_part(&drift1_n3_s1() - &tail(1, 3)), p(DRIFT_S1));
        assert_eq!(p(DRIFT_S1), p(DRIFT_S1_CAS));
        assert_ne!(p(DRIFT_S1), p(DRIFT_S1_CAS_RAW));
        assert_eq!(poly_part(&drift1_n3_1000() - &tail(1, 3)), p(DRIFT_1000));
        assert_eq!(p(DRIFT_1000), p(DRIFT_1000_CAS));
        assert_eq!(p(DRIFT_1000).len(), 10);
        assert_eq!(poly_part(&i0() - &tail(1, 3)), p(I0));
        assert_eq!(p(I0), p(I0_CAS));
    }

    #[test]
    fn n3_two_step() {
        let two = RatFnQ::constant(crate::symbolic::qi(2));
        let shift = |f: RatFnQ| poly_part(&(&f + &two) - &tail(2, 3));
        let d1000 = shift(drift2_n3_1000());
        assert_eq!(d1000, p(N3_1000));
        assert_eq!(&d1000 - &PolyQ::int(2), p(N3_1000_CAS));
        let (d0, d1) = drift2_n3_0000();
        let (d0, d1) = (shift(d0), shift(d1));
        assert_eq!(d0, p(N3_D0));
        assert_eq!(&d0 - &PolyQ::int(2), p(N3_D0_CAS));
        assert_eq!(d1, p(N3_D1));
        assert_eq!(&d1 - &PolyQ::int(2), p(N3_D1_CAS));
    }

    #[test]
    fn n3_differences() {
        assert_eq!(poly_part(&drift1_n3_s1() - &i0()), p(S1_MINUS_I0));
        assert_eq!(poly_part(&drift1_n3_s1() - &drift1_n3_1000()), p(S1_MINUS_1000));
    }
}
