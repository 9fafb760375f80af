//! Property checks shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::OnceLock;

use betanum::expansion::WordOrder;
use betanum::words::{fixed_point_biword, Substitution};
use betanum::{Base, Digit, FieldElement};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = std::result::Result<(), TestCaseError>;

const PREFIX: usize = 24;

pub fn bases() -> &'static [Base] {
    static B: OnceLock<Vec<Base>> = OnceLock::new();
    B.get_or_init(|| {
        [
            &[-1, -1, 1][..],     // golden ratio
            &[-1, -1, -1, 1],     // Tribonacci
            &[-1, -2, -2, 1],     // (3,2,1)
            &[-1, -2, 1],         // 1 + √2
            &[-1, -1, -1, -1, 1], // (4,1,1)
            &[-1, -1, 0, 1],      // smallest Pisot number
        ]
        .iter()
        .map(|c| Base::from_coeffs(c).unwrap())
        .collect()
    })
}

pub type Raw = (usize, [i64; 3], i64);

pub fn raw() -> impl Strategy<Value = Raw> {
    (0..6usize, prop::array::uniform3(-12i64..=12), 1i64..=7)
}

pub fn raw_pair() -> impl Strategy<Value = (Raw, ([i64; 3], i64))> {
    (raw(), (prop::array::uniform3(-12i64..=12), 1i64..=7))
}

pub fn digit_seed() -> impl Strategy<Value = (usize, Vec<Digit>)> {
    (0..6usize, prop::collection::vec(0u32..=9, 0..10))
}

/// `(a + bβ + cβ²) / q`.
pub fn element(base: &Base, c: &[i64; 3], q: i64) -> FieldElement {
    let b = base.beta();
    let v = &(&base.field().from_int(c[0]) + &b.mul_int(c[1])) + &(b * b).mul_int(c[2]);
    v.checked_div(&base.field().from_int(q)).unwrap()
}

fn frac(x: &FieldElement) -> FieldElement {
    x - &x.field().from_bigint(x.floor())
}

/// Representative of `x` modulo one in `[ℓ, ℓ+1)`.
fn into_ell(base: &Base, x: &FieldElement) -> FieldElement {
    base.ell() + &frac(&(x - base.ell()))
}

type Step<'a> = &'a dyn Fn(&FieldElement) -> betanum::Result<(Digit, FieldElement)>;

fn prefix(x: &FieldElement, n: usize, step: Step) -> Vec<Digit> {
    let mut cur = x.clone();
    (0..n)
        .map(|_| {
            let (d, next) = step(&cur).unwrap();
            cur = next;
            d
        })
        .collect()
}

fn first_difference(order: WordOrder, u: &[Digit], v: &[Digit]) -> Ordering {
    match u.iter().zip(v).position(|(a, b)| a != b) {
        Some(k) => order.decide(k + 1, u[k], v[k]),
        None => Ordering::Equal,
    }
}

/// The digit map started at `y` emits `w` and then lands on zero.
fn reproduces(y: &FieldElement, w: &[Digit], step: Step) -> bool {
    let mut cur = y.clone();
    for &d in w {
        let (e, next) = step(&cur).unwrap();
        if e != d {
            return false;
        }
        cur = next;
    }
    cur.is_zero()
}

pub fn orbit_containment((i, c, q): Raw) -> Check {
    let base = &bases()[i];
    let mut x = frac(&element(base, &c, q));
    let mut y = into_ell(base, &element(base, &c, q));
    let one = base.field().one();
    for _ in 0..8 {
        let (dx, nx) = base.t_beta_step(&x).unwrap();
        prop_assert!(dx <= base.digit_max_pos());
        prop_assert!(nx.sign() >= 0 && nx.compare(&one).is_lt());
        let (dy, ny) = base.t_minus_beta_step(&y).unwrap();
        prop_assert!(dy <= base.digit_max_neg());
        prop_assert!(ny.compare(base.ell()).is_ge() && ny.compare(base.ell_plus_one()).is_lt());
        x = nx;
        y = ny;
    }
    Ok(())
}

pub fn order_correspondence(((i, c, q), (c2, q2)): (Raw, ([i64; 3], i64))) -> Check {
    let base = &bases()[i];
    let (a, b) = (element(base, &c, q), element(base, &c2, q2));
    let pos: Step = &|v| base.t_beta_step(v);
    let neg: Step = &|v| base.t_minus_beta_step(v);
    let (x, y) = (frac(&a), frac(&b));
    let digits = first_difference(WordOrder::Lex, &prefix(&x, PREFIX, pos), &prefix(&y, PREFIX, pos));
    prop_assert!(digits == x.compare(&y) || digits == Ordering::Equal);
    let (x, y) = (into_ell(base, &a), into_ell(base, &b));
    let digits = first_difference(WordOrder::Alt, &prefix(&x, PREFIX, neg), &prefix(&y, PREFIX, neg));
    prop_assert!(digits == x.compare(&y) || digits == Ordering::Equal);
    Ok(())
}

pub fn admissibility_consistency((i, seed): (usize, Vec<Digit>)) -> Check {
    let base = &bases()[i];
    let pos: Vec<Digit> = seed.iter().map(|d| d % (base.digit_max_pos() + 1)).collect();
    let y = base.gamma_pos(&pos).checked_div(&base.beta().pow(pos.len() as i64).unwrap()).unwrap();
    let reproduced = y.compare(&base.field().one()).is_lt() && reproduces(&y, &pos, &|v| base.t_beta_step(v));
    prop_assert_eq!(base.is_admissible_pos_digits(&pos).unwrap(), reproduced, "{:?}", pos);
    let neg: Vec<Digit> = seed.iter().map(|d| d % (base.digit_max_neg() + 1)).collect();
    let y = base.gamma(&neg).checked_div(&(-base.beta()).pow(neg.len() as i64).unwrap()).unwrap();
    let reproduced = y.compare(base.ell()).is_ge()
        && y.compare(base.ell_plus_one()).is_lt()
        && reproduces(&y, &neg, &|v| base.t_minus_beta_step(v));
    prop_assert_eq!(base.is_admissible_neg_digits(&neg).unwrap(), reproduced, "{:?}", neg);
    Ok(())
}

pub fn round_trip((i, c, q): Raw) -> Check {
    let base = &bases()[i];
    let x = element(base, &c, q);
    let e = base.expand_real_pos(&x, 4096).unwrap();
    prop_assert_eq!(base.positioned_value_pos(&e).unwrap(), Some(x.clone()));
    if let Some(w) = e.fractional.periodic() {
        prop_assert!(base.is_admissible_pos(w).unwrap());
    }
    let e = base.expand_real_neg(&x, 4096).unwrap();
    if let Some(w) = e.fractional.periodic() {
        prop_assert!(base.is_admissible_neg(w).unwrap());
    }
    prop_assert_eq!(base.positioned_value_neg(&e).unwrap(), Some(x));
    Ok(())
}

pub fn field_arithmetic(((i, c, q), (c2, q2)): (Raw, ([i64; 3], i64))) -> Check {
    let base = &bases()[i];
    let field = base.field();
    let (a, b) = (element(base, &c, q), element(base, &c2, q2));
    prop_assert_eq!((-&a).sign(), -a.sign());
    prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
    let f = field.from_bigint(a.floor());
    prop_assert!(f.compare(&a).is_le() && a.compare(&f.add_int(1)).is_lt());
    let approx = a.to_f64();
    let fl = a.floor().to_string().parse::<f64>().unwrap();
    prop_assert!(fl - 1e-9 <= approx && approx < fl + 1.0 + 1e-9);
    let (lo, hi) = field.root_interval();
    prop_assert!(field.from_rational(&lo).compare(base.beta()).is_le());
    prop_assert!(base.beta().compare(&field.from_rational(&hi)).is_le());
    if !b.is_zero() {
        prop_assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
    }
    Ok(())
}

pub fn substitution_images() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (2usize..=4).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(0..k, 1..4), k))
}

pub fn antimorphism_square((images, u, v): (Vec<Vec<usize>>, Vec<usize>, Vec<usize>)) -> Check {
    let psi = Substitution::antimorphism(images).unwrap();
    let sq = psi.square();
    let uv = [u.clone(), v.clone()].concat();
    prop_assert_eq!(sq.apply(&uv), [sq.apply(&u), sq.apply(&v)].concat());
    prop_assert_eq!(psi.apply(&uv), [psi.apply(&v), psi.apply(&u)].concat());
    Ok(())
}

pub fn fixed_point_extension(radius: usize) -> Check {
    let psi = Substitution::antimorphism(vec![vec![0, 1], vec![0, 0, 1], vec![0, 2]]).unwrap();
    let small = fixed_point_biword(&psi, None, radius).unwrap();
    let big = fixed_point_biword(&psi, None, radius * 2).unwrap();
    prop_assert_eq!(big.truncate(radius), small);
    Ok(())
}
