//! Exact coefficients in ℚ[i].

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Coeff = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n/d`.
pub fn real(n: i64, d: i64) -> Coeff {
    Complex::new(rat(n, d), Rat::zero())
}

/// `i·n/d`.
pub fn imag(n: i64, d: i64) -> Coeff {
    Complex::new(Rat::zero(), rat(n, d))
}

pub fn from_rat(r: Rat) -> Coeff {
    Complex::new(r, Rat::zero())
}

pub fn zero() -> Coeff {
    Coeff::zero()
}

pub fn one() -> Coeff {
    Coeff::one()
}

pub fn i() -> Coeff {
    imag(1, 1)
}

pub fn is_zero(c: &Coeff) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

pub fn to_f64(r: &Rat) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Compact text form: `1`, `-i`, `3/2`, `(1/2 - 2i)`.
pub fn fmt_coeff(c: &Coeff) -> String {
    let imag_part = |v: &Rat| {
        if v.abs().is_one() {
            if v.is_negative() {
                "-i".to_string()
            } else {
                "i".to_string()
            }
        } else {
            format!("{}i", fmt_rat(v))
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => fmt_rat(&c.re),
        (true, false) => imag_part(&c.im),
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            let mag = imag_part(&c.im.abs());
            format!("({} {} {})", fmt_rat(&c.re), sign, mag)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_coeff(&i()), "i");
        assert_eq!(fmt_coeff(&-i()), "-i");
        assert_eq!(fmt_coeff(&real(3, 6)), "1/2");
        assert_eq!(fmt_coeff(&(real(1, 2) + imag(-2, 1))), "(1/2 - 2i)");
        assert_eq!(fmt_coeff(&zero()), "0");
    }

    #[test]
    fn exact_arithmetic() {
        assert_eq!(i() * i(), -one());
        assert_eq!(one() / i(), -i());
        assert_eq!(real(1, 3) + real(2, 3), one());
    }
}
