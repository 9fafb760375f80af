//! Univariate polynomial helpers over Z and Q, constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial with coefficients stored constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn to_rational(&self) -> QPoly {
        self.coeffs.iter().cloned().map(BigRational::from_integer).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
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
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[BigRational]) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let mut q: QPoly = Vec::new();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        if q.len() <= shift {
            q.resize(shift + 1, BigRational::zero());
        }
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn make_monic(p: &mut QPoly) {
    if let Some(d) = degree(p) {
        let lead = p[d].clone();
        for c in p.iter_mut() {
            *c = &*c / &lead;
        }
    }
}

/// Monic greatest common divisor (zero polynomial if both inputs vanish).
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

/// Returns `(g, s)` with `s * a ≡ g (mod m)` and `g = gcd(a, m)` monic.
pub fn ext_gcd_coeff(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let mut r0: QPoly = m.to_vec();
    let mut r1: QPoly = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![BigRational::one()];
    while degree(&r1).is_some() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c = &*c / &lead;
        }
    }
    (r0, s0)
}

pub fn squarefree(p: &[BigRational]) -> QPoly {
    let g = gcd(p, &derivative(p));
    div_rem(p, &g).0
}

/// Scales a rational polynomial by a positive factor so all coefficients are
/// coprime integers. Signs of values are unchanged.
pub fn primitive_int(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sign of `p(num / 2^exp)` for an integer polynomial.
pub fn sign_at_dyadic(p: &[BigInt], num: &BigInt, exp: u32) -> i8 {
    let Some(d) = p.iter().rposition(|c| !c.is_zero()) else {
        return 0;
    };
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * num + (&p[i] << (exp as usize * (d - i)));
    }
    sign_of(&acc)
}

pub fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm sequence of a squarefree polynomial, each entry scaled to integers.
pub fn sturm_sequence(p: &[BigRational]) -> Vec<Vec<BigInt>> {
    let mut seq: Vec<QPoly> = vec![p.to_vec(), derivative(p)];
    loop {
        let n = seq.len();
        if degree(&seq[n - 1]).is_none() {
            seq.pop();
            break;
        }
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.iter().map(|q| primitive_int(q)).collect()
}

fn sign_variations(seq: &[Vec<BigInt>], num: &BigInt, exp: u32) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = sign_at_dyadic(p, num, exp);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign of `p(x)` at a rational point.
pub fn sign_at_rational(p: &[BigInt], x: &BigRational) -> i8 {
    let Some(d) = p.iter().rposition(|c| !c.is_zero()) else {
        return 0;
    };
    let (num, den) = (x.numer(), x.denom());
    let mut acc = p[d].clone();
    let mut den_pow = BigInt::one();
    for i in (0..d).rev() {
        den_pow *= den;
        acc = acc * num + &p[i] * &den_pow;
    }
    sign_of(&acc)
}

fn sign_variations_rational(seq: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = sign_at_rational(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in `(a, b]` for rational endpoints.
pub fn count_roots_rational(seq: &[Vec<BigInt>], a: &BigRational, b: &BigRational) -> usize {
    sign_variations_rational(seq, a).saturating_sub(sign_variations_rational(seq, b))
}

/// Number of distinct real roots in `(a, b]`, both endpoints `x / 2^exp`.
pub fn count_roots(seq: &[Vec<BigInt>], a: &BigInt, b: &BigInt, exp: u32) -> usize {
    sign_variations(seq, a, exp).saturating_sub(sign_variations(seq, b, exp))
}
