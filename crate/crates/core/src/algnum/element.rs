use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::NumberField;
use super::poly;
use crate::error::{Error, Result};

/// Exact element of `Q(β)`: `(Σ num[i] β^i) / den` with `den > 0` and the
/// coefficients reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub(crate) fn from_parts(field: NumberField, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        FieldElement { field, num, den }
    }

    /// Reduces an integer polynomial of any degree modulo the monic minpoly.
    fn reduce_int(field: &NumberField, mut r: Vec<BigInt>, den: BigInt) -> Self {
        let dgr = field.degree();
        let reducer = &field.inner.reducer;
        if r.len() > dgr {
            for k in (dgr..r.len()).rev() {
                let c = std::mem::take(&mut r[k]);
                if c.is_zero() {
                    continue;
                }
                for (i, a) in reducer.iter().enumerate() {
                    if !a.is_zero() {
                        r[k - dgr + i] -= &c * a;
                    }
                }
            }
            r.truncate(dgr);
        }
        r.resize(dgr, BigInt::zero());
        Self::from_parts(field.clone(), r, den)
    }

    pub(crate) fn from_rational_poly(field: NumberField, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::reduce_int(&field, ints, den)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Coefficients in the power basis `1, β, …, β^(D-1)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Coefficients rendered as `p/q` strings (plain integers when `q = 1`).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    /// Integer value when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// True iff the element denotes the real number zero.
    pub fn is_zero(&self) -> bool {
        if self.num.iter().all(Zero::is_zero) {
            return true;
        }
        if self.is_rational() {
            return false;
        }
        let h: Vec<BigRational> = self.num.iter().cloned().map(BigRational::from_integer).collect();
        self.field.vanishes_at_root(&h)
    }

    pub fn sign(&self) -> i8 {
        if self.num.iter().all(Zero::is_zero) {
            return 0;
        }
        if self.is_rational() {
            return poly::sign_of(&self.num[0]);
        }
        let mut zero_checked = false;
        loop {
            let b = self.field.bracket();
            let (low, high) = b.scaled_bounds(&self.num);
            if low.is_positive() {
                return 1;
            }
            if high.is_negative() {
                return -1;
            }
            if !zero_checked {
                if self.is_zero() {
                    return 0;
                }
                zero_checked = true;
            }
            self.field.refine_from(b.exp);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn compare(&self, other: &FieldElement) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    pub fn abs(&self) -> FieldElement {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.num[0].div_floor(&self.den);
        }
        loop {
            let b = self.field.bracket();
            let (low, high) = b.scaled_bounds(&self.num);
            let scale = &self.den << b.scale_exp();
            let fl = low.div_floor(&scale);
            let fh = high.div_floor(&scale);
            if fl == fh {
                return fl;
            }
            if &fh - &fl == BigInt::one() {
                let diff = self - &self.field.from_bigint(fh.clone());
                return if diff.sign() >= 0 { fh } else { fl };
            }
            self.field.refine_from(b.exp);
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn add_int(&self, n: i64) -> FieldElement {
        self + &self.field.from_int(n)
    }

    pub fn mul_int(&self, n: i64) -> FieldElement {
        self.mul_bigint(&BigInt::from(n))
    }

    pub fn mul_bigint(&self, n: &BigInt) -> FieldElement {
        let num = self.num.iter().map(|c| c * n).collect();
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn mul_rational(&self, q: &BigRational) -> FieldElement {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.num.iter().all(Zero::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> = self.num.iter().cloned().map(BigRational::from_integer).collect();
        let (g, s) = poly::ext_gcd_coeff(&a, self.field.rational_minpoly());
        if poly::degree(&g) != Some(0) {
            return Err(if self.field.vanishes_at_root(&a) {
                Error::DivisionByZero
            } else {
                Error::NotInvertible
            });
        }
        let den = BigRational::from_integer(self.den.clone());
        let scaled: Vec<BigRational> = s.iter().map(|c| c * &den).collect();
        Ok(Self::from_rational_poly(self.field.clone(), &scaled))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Decimal rendering with `places` fractional digits, rounded half to even.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = self.mul_bigint(&scale);
        let fl = scaled.floor();
        let frac2 = (&scaled - &self.field.from_bigint(fl.clone())).mul_int(2).add_int(-1);
        let rounded = match frac2.sign() {
            1 => &fl + 1,
            -1 => fl,
            _ => {
                if fl.is_even() {
                    fl
                } else {
                    &fl + 1
                }
            }
        };
        let neg = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let body = if places == 0 {
            digits
        } else {
            let padded = format!("{:0>width$}", digits, width = places + 1);
            let (int, frac) = padded.split_at(padded.len() - places);
            format!("{int}.{frac}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// `{"exact": "...", "coeffs": [...], "decimal": "..."}` with 12 places.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "exact": self.to_string(),
            "coeffs": self.coeff_strings(),
            "decimal": self.to_decimal(12),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let shift = 60usize;
        let fl = self.mul_bigint(&(BigInt::one() << shift)).floor();
        fl.to_f64().unwrap_or(f64::NAN) / (2f64).powi(shift as i32)
    }

    fn combine(&self, other: &FieldElement, sign: i8) -> FieldElement {
        debug_assert!(self.field == other.field, "elements of different fields");
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if sign > 0 { a * &fa + b * &fb } else { a * &fa - b * &fb })
            .collect();
        Self::from_parts(self.field.clone(), num, den)
    }

    fn product(&self, other: &FieldElement) -> FieldElement {
        debug_assert!(self.field == other.field, "elements of different fields");
        let d = self.num.len();
        let mut r = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        Self::reduce_int(&self.field, r, &self.den * &other.den)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Renders as a polynomial in `b`, e.g. `b^2 - 3/2*b + 1`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "b".to_string(),
                _ => format!("b^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                $body(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                $body(&self, &rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                $body(&self, rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.combine(b, 1));
binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.combine(b, -1));
binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.product(b));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
