use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::element::FieldElement;
use super::poly::{self, IntPolynomial, QPoly};
use crate::error::{Error, Result};

/// Dyadic isolating interval `(lo, hi) / 2^exp` together with the scaled
/// endpoint powers used for interval evaluation of field elements.
#[derive(Debug)]
pub(crate) struct Bracket {
    pub lo: BigInt,
    pub hi: BigInt,
    pub exp: u32,
    /// `lo^i * 2^(exp * (D - 1 - i))` for `i < D`.
    pub lo_terms: Vec<BigInt>,
    pub hi_terms: Vec<BigInt>,
    /// Sign of the squarefree part at `lo`.
    sf_sign_lo: i8,
}

impl Bracket {
    fn new(lo: BigInt, hi: BigInt, exp: u32, degree: usize, sf_sign_lo: i8) -> Self {
        let mut lo_terms = Vec::with_capacity(degree);
        let mut hi_terms = Vec::with_capacity(degree);
        let mut lp = BigInt::one();
        let mut hp = BigInt::one();
        for i in 0..degree {
            let shift = exp as usize * (degree - 1 - i);
            lo_terms.push(&lp << shift);
            hi_terms.push(&hp << shift);
            lp *= &lo;
            hp *= &hi;
        }
        Bracket { lo, hi, exp, lo_terms, hi_terms, sf_sign_lo }
    }

    /// Power-of-two exponent of the common denominator of the scaled bounds.
    pub fn scale_exp(&self) -> usize {
        self.exp as usize * (self.lo_terms.len().saturating_sub(1))
    }

    /// Integer bounds `(low, high)` on `value * den * 2^scale_exp` for an
    /// element with integer numerator coefficients. Valid because `lo >= 1`.
    pub fn scaled_bounds(&self, num: &[BigInt]) -> (BigInt, BigInt) {
        let mut low = BigInt::zero();
        let mut high = BigInt::zero();
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                low += c * &self.lo_terms[i];
                high += c * &self.hi_terms[i];
            } else {
                low += c * &self.hi_terms[i];
                high += c * &self.lo_terms[i];
            }
        }
        (low, high)
    }
}

pub(crate) struct FieldInner {
    minpoly: IntPolynomial,
    /// Coefficients `a_0 .. a_{D-1}` of the monic minimal polynomial.
    pub reducer: Vec<BigInt>,
    rational_minpoly: QPoly,
    squarefree: Vec<BigInt>,
    bracket: RwLock<Arc<Bracket>>,
}

/// `Q(β)` for a designated real root `β > 1` of a monic integer polynomial.
///
/// Cloning is cheap; clones share the refinement cache.
#[derive(Clone)]
pub struct NumberField {
    pub(crate) inner: Arc<FieldInner>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.root_interval();
        f.debug_struct("NumberField")
            .field("minpoly", &self.inner.minpoly.to_string())
            .field("root_interval", &(lo.to_string(), hi.to_string()))
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly
    }
}

fn cauchy_bound(p: &QPoly) -> BigInt {
    let d = poly::degree(p).unwrap_or(0);
    let lead = p[d].abs();
    let mut max = BigRational::zero();
    for c in &p[..d] {
        let r = c.abs() / &lead;
        if r > max {
            max = r;
        }
    }
    max.ceil().to_integer() + 2
}

/// Smallest-denominator dyadic point of the form `lo + w t / 2^j` that is not
/// a root of `sf`, searching outward from the midpoint. Returns the point at
/// exponent `exp + j` together with `j`.
fn split_point(sf: &[BigInt], lo: &BigInt, hi: &BigInt, exp: u32) -> (BigInt, u32) {
    let w = hi - lo;
    for j in 1u32.. {
        let denom = 1u64 << j;
        let mut ts: Vec<u64> = (1..denom).step_by(2).collect();
        ts.sort_by_key(|&t| (2 * t).abs_diff(denom));
        for t in ts {
            let s = (lo << j) + &w * BigInt::from(t);
            if poly::sign_at_dyadic(sf, &s, exp + j) != 0 {
                return (s, j);
            }
        }
    }
    unreachable!()
}

impl NumberField {
    /// Builds `Q(β)` where `β` is the largest real root `> 1` of `p`, or the
    /// unique root `> 1` inside `hint` when one is given.
    pub fn new(p: IntPolynomial, hint: Option<(BigRational, BigRational)>) -> Result<Self> {
        if !p.is_monic() || p.degree() < 1 {
            return Err(Error::NotMonic);
        }
        let degree = p.degree();
        let rational_minpoly = p.to_rational();
        let sf_q = poly::squarefree(&rational_minpoly);
        let squarefree = poly::primitive_int(&sf_q);
        let sturm = poly::sturm_sequence(&sf_q);

        let (mut lo, mut hi, mut exp) = match hint {
            None => {
                let bound = cauchy_bound(&rational_minpoly);
                if poly::count_roots(&sturm, &BigInt::one(), &bound, 0) == 0 {
                    return Err(Error::NoRootAboveOne);
                }
                (BigInt::one(), bound, 0u32)
            }
            Some((a, b)) => dyadic_hint(&sturm, &squarefree, a, b)?,
        };

        // Narrow to the largest root in (lo, hi] with both endpoints non-roots.
        loop {
            let count = poly::count_roots(&sturm, &lo, &hi, exp);
            let lo_ok = poly::sign_at_dyadic(&squarefree, &lo, exp) != 0;
            let hi_ok = poly::sign_at_dyadic(&squarefree, &hi, exp) != 0;
            if count == 1 && lo_ok && hi_ok {
                break;
            }
            let (s, j) = split_point(&squarefree, &lo, &hi, exp);
            lo <<= j;
            hi <<= j;
            exp += j;
            if poly::count_roots(&sturm, &s, &hi, exp) >= 1 {
                lo = s;
            } else {
                hi = s;
            }
        }
        let sf_sign_lo = poly::sign_at_dyadic(&squarefree, &lo, exp);
        let bracket = Bracket::new(lo, hi, exp, degree, sf_sign_lo);
        let reducer = p.coeffs()[..degree].to_vec();
        Ok(NumberField {
            inner: Arc::new(FieldInner {
                minpoly: p,
                reducer,
                rational_minpoly,
                squarefree,
                bracket: RwLock::new(Arc::new(bracket)),
            }),
        })
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<Self> {
        Self::new(IntPolynomial::from_i64(coeffs), None)
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.inner.minpoly
    }

    pub(crate) fn rational_minpoly(&self) -> &QPoly {
        &self.inner.rational_minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.degree()
    }

    pub(crate) fn bracket(&self) -> Arc<Bracket> {
        self.inner.bracket.read().expect("bracket lock poisoned").clone()
    }

    /// Current isolating interval `(lo, hi)` for `β`.
    pub fn root_interval(&self) -> (BigRational, BigRational) {
        let b = self.bracket();
        let den = BigInt::one() << b.exp as usize;
        (
            BigRational::new(b.lo.clone(), den.clone()),
            BigRational::new(b.hi.clone(), den),
        )
    }

    /// Halves the isolating interval (up to the dyadic split offset).
    pub fn refine(&self) {
        let seen = self.bracket().exp;
        self.refine_from(seen);
    }

    /// Refines unless another thread already moved past exponent `seen`.
    pub(crate) fn refine_from(&self, seen: u32) {
        let mut guard = self.inner.bracket.write().expect("bracket lock poisoned");
        if guard.exp != seen {
            return;
        }
        let cur = guard.clone();
        let sf = &self.inner.squarefree;
        let degree = self.degree();
        let (s, j) = split_point(sf, &cur.lo, &cur.hi, cur.exp);
        let exp = cur.exp + j;
        let sign_s = poly::sign_at_dyadic(sf, &s, exp);
        let next = if sign_s == 0 {
            // β is this rational point exactly; keep a small interval around it.
            let s2 = &s << 1usize;
            Bracket::new(&s2 - 1, &s2 + 1, exp + 1, degree, cur.sf_sign_lo)
        } else if sign_s == cur.sf_sign_lo {
            Bracket::new(s, &cur.hi << j as usize, exp, degree, cur.sf_sign_lo)
        } else {
            Bracket::new(&cur.lo << j as usize, s, exp, degree, cur.sf_sign_lo)
        };
        *guard = Arc::new(next);
    }

    /// Whether the polynomial `h` vanishes at `β`.
    pub(crate) fn vanishes_at_root(&self, h: &[BigRational]) -> bool {
        let g = poly::gcd(&self.inner.rational_minpoly, h);
        if poly::degree(&g).unwrap_or(0) == 0 {
            return false;
        }
        let sf = poly::squarefree(&g);
        let seq = poly::sturm_sequence(&sf);
        let b = self.bracket();
        poly::count_roots(&seq, &b.lo, &b.hi, b.exp) > 0
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_parts(self.clone(), vec![BigInt::zero(); self.degree()], BigInt::one())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = n;
        FieldElement::from_parts(self.clone(), num, BigInt::one())
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        FieldElement::from_parts(self.clone(), num, q.denom().clone())
    }

    /// The designated root `β`.
    pub fn beta(&self) -> FieldElement {
        self.from_poly(&[BigRational::zero(), BigRational::one()])
    }

    /// Evaluates a rational polynomial at `β`.
    pub fn from_poly(&self, coeffs: &[BigRational]) -> FieldElement {
        FieldElement::from_rational_poly(self.clone(), coeffs)
    }

    /// Elements with the given rational coefficients in the power basis.
    pub fn element(&self, coeffs: &[BigRational]) -> FieldElement {
        self.from_poly(coeffs)
    }

    /// Midpoint approximation of `β`.
    pub fn beta_f64(&self) -> f64 {
        let (lo, hi) = self.root_interval();
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

fn dyadic_hint(
    sturm: &[Vec<BigInt>],
    squarefree: &[BigInt],
    a: BigRational,
    b: BigRational,
) -> Result<(BigInt, BigInt, u32)> {
    let one = BigRational::one();
    let a = if a < one { one } else { a };
    if a >= b {
        return Err(Error::AmbiguousHint(0));
    }
    let mut count = poly::count_roots_rational(sturm, &a, &b);
    if poly::sign_at_rational(squarefree, &b) == 0 {
        count -= 1;
    }
    if count != 1 {
        return Err(Error::AmbiguousHint(count));
    }
    for exp in 1u32.. {
        let scale = BigRational::from_integer(BigInt::one() << exp as usize);
        let lo = (&a * &scale).ceil().to_integer();
        let hi = (&b * &scale).floor().to_integer();
        if lo < hi
            && poly::count_roots(sturm, &lo, &hi, exp) == 1
            && poly::sign_at_dyadic(squarefree, &lo, exp) != 0
        {
            return Ok((lo, hi, exp));
        }
    }
    unreachable!()
}
