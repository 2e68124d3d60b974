//! Exact arithmetic in the imaginary quadratic field `E_d = Q(i√d)`, in the
//! real subline `Q + Q√d`, and membership in the ring of integers `O_d`.
//!
//! Every value carries its `d`. Mixing values with different `d` is a hard
//! error in the checked API and a panic in the operator overloads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("d = {0} is not a positive squarefree integer")]
    NotSquarefree(u64),
    #[error("mismatched fields: d = {left} vs d = {right}")]
    MismatchedD { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Build a rational from an integer numerator and denominator.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub(crate) fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// A positive squarefree integer `d`, naming the field `Q(i√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquarefreeD(u64);

impl SquarefreeD {
    pub fn new(d: u64) -> Result<Self, RingError> {
        if is_squarefree(d) {
            Ok(SquarefreeD(d))
        } else {
            Err(RingError::NotSquarefree(d))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `d mod 4`, which decides the shape of `O_d`.
    pub fn residue_mod4(self) -> u64 {
        self.0 % 4
    }

    /// All squarefree `d` with `1 <= d <= max`.
    pub fn up_to(max: u64) -> impl Iterator<Item = SquarefreeD> {
        (1..=max).filter_map(|d| SquarefreeD::new(d).ok())
    }

    fn rat(self) -> Rat {
        Rat::from_integer(BigInt::from(self.0))
    }

    fn check_same(self, other: SquarefreeD) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::MismatchedD {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for SquarefreeD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The element `a + b·i√d` of `E_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImagQuad {
    d: SquarefreeD,
    a: Rat,
    b: Rat,
}

impl ImagQuad {
    pub fn new(d: SquarefreeD, a: Rat, b: Rat) -> Self {
        ImagQuad { d, a, b }
    }

    /// `a/a_den + (b/b_den)·i√d` from machine integers, for tests and tables.
    pub fn from_ints(d: SquarefreeD, a: i64, b: i64) -> Self {
        ImagQuad::new(d, int(a), int(b))
    }

    pub fn from_rat(d: SquarefreeD, a: Rat) -> Self {
        ImagQuad::new(d, a, Rat::zero())
    }

    pub fn zero(d: SquarefreeD) -> Self {
        ImagQuad::new(d, Rat::zero(), Rat::zero())
    }

    pub fn one(d: SquarefreeD) -> Self {
        ImagQuad::new(d, Rat::one(), Rat::zero())
    }

    /// The generator `i√d` itself.
    pub fn i_sqrt_d(d: SquarefreeD) -> Self {
        ImagQuad::new(d, Rat::zero(), Rat::one())
    }

    pub fn d(&self) -> SquarefreeD {
        self.d
    }

    /// Rational part `a`.
    pub fn re(&self) -> &Rat {
        &self.a
    }

    /// Coefficient `b` of `i√d`.
    pub fn im_coeff(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    pub fn arith(&self, other: &ImagQuad, op: ArithOp) -> Result<ImagQuad, RingError> {
        self.d.check_same(other.d)?;
        match op {
            ArithOp::Add => Ok(self.add_same(other)),
            ArithOp::Sub => Ok(self.sub_same(other)),
            ArithOp::Mul => Ok(self.mul_same(other)),
            ArithOp::Div => Ok(self.mul_same(&other.inv()?)),
        }
    }

    pub fn checked_add(&self, other: &ImagQuad) -> Result<ImagQuad, RingError> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &ImagQuad) -> Result<ImagQuad, RingError> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &ImagQuad) -> Result<ImagQuad, RingError> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &ImagQuad) -> Result<ImagQuad, RingError> {
        self.arith(other, ArithOp::Div)
    }

    fn add_same(&self, o: &ImagQuad) -> ImagQuad {
        ImagQuad::new(self.d, &self.a + &o.a, &self.b + &o.b)
    }

    fn sub_same(&self, o: &ImagQuad) -> ImagQuad {
        ImagQuad::new(self.d, &self.a - &o.a, &self.b - &o.b)
    }

    // (i√d)² = −d
    fn mul_same(&self, o: &ImagQuad) -> ImagQuad {
        let d = self.d.rat();
        ImagQuad::new(
            self.d,
            &self.a * &o.a - d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    pub fn inv(&self) -> Result<ImagQuad, RingError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(ImagQuad::new(self.d, &self.a / &n, -&self.b / &n))
    }

    pub fn conj(&self) -> ImagQuad {
        ImagQuad::new(self.d, self.a.clone(), -&self.b)
    }

    /// `|x|² = a² + b²d`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a + &self.b * &self.b * self.d.rat()
    }

    /// `Im(a + b·i√d) = b√d`.
    pub fn im_part(&self) -> RealQuad {
        RealQuad::new(self.d, Rat::zero(), self.b.clone())
    }

    /// `Re(a + b·i√d) = a`.
    pub fn re_part(&self) -> RealQuad {
        RealQuad::new(self.d, self.a.clone(), Rat::zero())
    }

    pub fn scale(&self, r: &Rat) -> ImagQuad {
        ImagQuad::new(self.d, &self.a * r, &self.b * r)
    }

    pub fn pow(&self, n: u32) -> ImagQuad {
        let mut acc = ImagQuad::one(self.d);
        for _ in 0..n {
            acc = acc.mul_same(self);
        }
        acc
    }

    /// Membership in `O_d = Z[τ]`, with `τ = i√d` for `d ≡ 1,2 (mod 4)` and
    /// `τ = (1 + i√d)/2` for `d ≡ 3 (mod 4)`.
    pub fn in_od(&self) -> bool {
        if self.d.residue_mod4() == 3 {
            let two_b = &self.b * int(2);
            is_integer(&two_b) && is_integer(&(&self.a - &self.b))
        } else {
            is_integer(&self.a) && is_integer(&self.b)
        }
    }
}

impl Add for &ImagQuad {
    type Output = ImagQuad;
    fn add(self, rhs: &ImagQuad) -> ImagQuad {
        self.checked_add(rhs).expect("ImagQuad add")
    }
}

impl Sub for &ImagQuad {
    type Output = ImagQuad;
    fn sub(self, rhs: &ImagQuad) -> ImagQuad {
        self.checked_sub(rhs).expect("ImagQuad sub")
    }
}

impl Mul for &ImagQuad {
    type Output = ImagQuad;
    fn mul(self, rhs: &ImagQuad) -> ImagQuad {
        self.checked_mul(rhs).expect("ImagQuad mul")
    }
}

impl Neg for &ImagQuad {
    type Output = ImagQuad;
    fn neg(self) -> ImagQuad {
        ImagQuad::new(self.d, -&self.a, -&self.b)
    }
}

impl Neg for ImagQuad {
    type Output = ImagQuad;
    fn neg(self) -> ImagQuad {
        -&self
    }
}

/// The real number `p + q·√d`.
///
/// For `d = 1` the two components describe the same line, so the value is
/// kept entirely in `p` (with `q = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealQuad {
    d: SquarefreeD,
    p: Rat,
    q: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealOp {
    Add,
    Sub,
    Neg,
    Scale(Rat),
}

impl RealQuad {
    pub fn new(d: SquarefreeD, p: Rat, q: Rat) -> Self {
        if d.get() == 1 {
            RealQuad {
                d,
                p: p + q,
                q: Rat::zero(),
            }
        } else {
            RealQuad { d, p, q }
        }
    }

    pub fn zero(d: SquarefreeD) -> Self {
        RealQuad::new(d, Rat::zero(), Rat::zero())
    }

    pub fn from_rat(d: SquarefreeD, p: Rat) -> Self {
        RealQuad::new(d, p, Rat::zero())
    }

    /// `q·√d`.
    pub fn sqrt_d_multiple(d: SquarefreeD, q: Rat) -> Self {
        RealQuad::new(d, Rat::zero(), q)
    }

    pub fn d(&self) -> SquarefreeD {
        self.d
    }

    pub fn rational_part(&self) -> &Rat {
        &self.p
    }

    pub fn sqrt_d_coeff(&self) -> &Rat {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn arith(&self, other: &RealQuad, op: RealOp) -> Result<RealQuad, RingError> {
        self.d.check_same(other.d)?;
        Ok(match op {
            RealOp::Add => RealQuad::new(self.d, &self.p + &other.p, &self.q + &other.q),
            RealOp::Sub => RealQuad::new(self.d, &self.p - &other.p, &self.q - &other.q),
            RealOp::Neg => self.neg_ref(),
            RealOp::Scale(r) => self.scale(&r),
        })
    }

    pub fn checked_add(&self, other: &RealQuad) -> Result<RealQuad, RingError> {
        self.arith(other, RealOp::Add)
    }

    pub fn checked_sub(&self, other: &RealQuad) -> Result<RealQuad, RingError> {
        self.arith(other, RealOp::Sub)
    }

    fn neg_ref(&self) -> RealQuad {
        RealQuad::new(self.d, -&self.p, -&self.q)
    }

    pub fn scale(&self, r: &Rat) -> RealQuad {
        RealQuad::new(self.d, &self.p * r, &self.q * r)
    }

    /// `i·(p + q√d)` as an element of `E_d`, when it is one.
    ///
    /// `i·q√d = q·(i√d)` always lies in `E_d`; `i·p` does only when `d = 1`.
    pub fn times_i(&self) -> Option<ImagQuad> {
        if self.d.get() == 1 {
            Some(ImagQuad::new(self.d, Rat::zero(), self.p.clone()))
        } else if self.p.is_zero() {
            Some(ImagQuad::new(self.d, Rat::zero(), self.q.clone()))
        } else {
            None
        }
    }

    /// Exact sign, using `sign(p + q√d)` without approximating `√d`.
    pub fn signum(&self) -> i8 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        // opposite signs: compare p² with q²d
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * self.d.rat();
        match p2.cmp(&q2d) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &RealQuad {
    type Output = RealQuad;
    fn add(self, rhs: &RealQuad) -> RealQuad {
        self.checked_add(rhs).expect("RealQuad add")
    }
}

impl Sub for &RealQuad {
    type Output = RealQuad;
    fn sub(self, rhs: &RealQuad) -> RealQuad {
        self.checked_sub(rhs).expect("RealQuad sub")
    }
}

impl Neg for &RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        self.neg_ref()
    }
}

impl Neg for RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        self.neg_ref()
    }
}

// Canonical text: "a/b + c/e*i*sqrt(d)", dropping zero parts and unit
// coefficients.

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_two_part(real: &Rat, irr: &Rat, unit: &str) -> String {
    if irr.is_zero() {
        return fmt_rat(real);
    }
    let mag = irr.abs();
    let irr_text = if mag.is_one() {
        unit.to_string()
    } else {
        format!("{}*{}", fmt_rat(&mag), unit)
    };
    match (real.is_zero(), irr.is_negative()) {
        (true, false) => irr_text,
        (true, true) => format!("-{irr_text}"),
        (false, false) => format!("{} + {irr_text}", fmt_rat(real)),
        (false, true) => format!("{} - {irr_text}", fmt_rat(real)),
    }
}

impl fmt::Display for ImagQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = if self.d.get() == 1 {
            "i".to_string()
        } else {
            format!("i*sqrt({})", self.d)
        };
        f.write_str(&fmt_two_part(&self.a, &self.b, &unit))
    }
}

impl fmt::Display for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = format!("sqrt({})", self.d);
        f.write_str(&fmt_two_part(&self.p, &self.q, &unit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u64) -> SquarefreeD {
        SquarefreeD::new(n).unwrap()
    }

    #[test]
    fn squarefree_validation() {
        assert!(SquarefreeD::new(0).is_err());
        assert!(SquarefreeD::new(4).is_err());
        assert!(SquarefreeD::new(18).is_err());
        assert!(SquarefreeD::new(30).is_ok());
        assert_eq!(SquarefreeD::up_to(10).count(), 7);
    }

    #[test]
    fn conjugate_pair_product() {
        let x = ImagQuad::from_ints(d(3), 1, 1);
        assert_eq!(&x * &x.conj(), ImagQuad::from_ints(d(3), 4, 0));
    }

    #[test]
    fn i_squared() {
        let i = ImagQuad::i_sqrt_d(d(1));
        assert_eq!(&i * &i, ImagQuad::from_ints(d(1), -1, 0));
    }

    #[test]
    fn zeta3_cubed() {
        let z = ImagQuad::new(d(3), rat(-1, 2), rat(1, 2));
        let z3 = &(&z * &z) * &z;
        assert!(z3.is_one());
        assert!(!z.is_one());
    }

    #[test]
    fn mismatched_d_is_an_error() {
        let x = ImagQuad::one(d(2));
        let y = ImagQuad::one(d(3));
        assert_eq!(
            x.checked_add(&y),
            Err(RingError::MismatchedD { left: 2, right: 3 })
        );
        let t = RealQuad::zero(d(2));
        assert!(t.checked_add(&RealQuad::zero(d(5))).is_err());
    }

    #[test]
    fn division() {
        let x = ImagQuad::from_ints(d(5), 2, 3);
        assert_eq!(
            x.checked_div(&ImagQuad::zero(d(5))),
            Err(RingError::DivisionByZero)
        );
        let q = x.checked_div(&x).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn conj_and_norm() {
        assert_eq!(
            ImagQuad::from_ints(d(5), 2, 3).conj(),
            ImagQuad::from_ints(d(5), 2, -3)
        );
        let seven = ImagQuad::from_ints(d(2), 7, 0);
        assert_eq!(seven.conj(), seven);
        assert_eq!(ImagQuad::from_ints(d(3), 1, 1).norm(), int(4));
        assert_eq!(ImagQuad::zero(d(3)).norm(), int(0));
    }

    #[test]
    fn im_part_values() {
        assert_eq!(
            ImagQuad::from_ints(d(7), 5, 2).im_part(),
            RealQuad::sqrt_d_multiple(d(7), int(2))
        );
        assert!(ImagQuad::from_ints(d(7), 5, 0).im_part().is_zero());
        // Im(z1 conj(z2)) with z1 = 2k i√d, z2 = 2k is 4k²√d
        for k in 1..6i64 {
            let z1 = ImagQuad::from_ints(d(11), 0, 2 * k);
            let z2 = ImagQuad::from_ints(d(11), 2 * k, 0);
            assert_eq!(
                (&z1 * &z2.conj()).im_part(),
                RealQuad::sqrt_d_multiple(d(11), int(4 * k * k))
            );
        }
    }

    #[test]
    fn real_quad_ops() {
        let two = RealQuad::sqrt_d_multiple(d(5), int(2));
        assert_eq!(&two + &two, RealQuad::sqrt_d_multiple(d(5), int(4)));
        let x = RealQuad::new(d(5), int(3), int(-2));
        assert_eq!(-&x, RealQuad::new(d(5), int(-3), int(2)));
        for k in 1..6i64 {
            let r = int(2 * k);
            assert_eq!(
                two.arith(&two, RealOp::Scale(&r * &r)).unwrap(),
                RealQuad::sqrt_d_multiple(d(5), int(8 * k * k))
            );
        }
    }

    #[test]
    fn d_equals_one_folds_the_real_line() {
        let a = RealQuad::new(d(1), int(2), int(3));
        assert_eq!(a, RealQuad::from_rat(d(1), int(5)));
        assert_eq!(
            a.times_i(),
            Some(ImagQuad::from_ints(d(1), 0, 5))
        );
        assert_eq!(RealQuad::from_rat(d(2), int(1)).times_i(), None);
    }

    #[test]
    fn exact_sign() {
        assert_eq!(RealQuad::new(d(2), int(1), int(-1)).signum(), -1);
        assert_eq!(RealQuad::new(d(2), int(2), int(-1)).signum(), 1);
        assert_eq!(RealQuad::zero(d(2)).signum(), 0);
        assert_eq!(RealQuad::new(d(3), int(-2), int(1)).signum(), -1);
    }

    #[test]
    fn tau_membership() {
        assert!(ImagQuad::new(d(3), rat(1, 2), rat(1, 2)).in_od());
        for n in SquarefreeD::up_to(60) {
            assert!(!ImagQuad::new(n, int(0), rat(1, 2)).in_od(), "d = {n}");
            let half_tau = ImagQuad::new(n, rat(1, 2), rat(1, 2));
            assert_eq!(half_tau.in_od(), n.residue_mod4() == 3, "d = {n}");
        }
    }

    // Enumerate m + n·τ and compare with every (a, b) of denominator <= 2.
    #[test]
    fn in_od_matches_enumeration() {
        for n in [1u64, 2, 3, 5, 6, 7, 11, 15] {
            let dd = d(n);
            let tau = if n % 4 == 3 {
                ImagQuad::new(dd, rat(1, 2), rat(1, 2))
            } else {
                ImagQuad::i_sqrt_d(dd)
            };
            let mut lattice = std::collections::HashSet::new();
            for m in -10..=10i64 {
                for k in -10..=10i64 {
                    let x = &ImagQuad::from_ints(dd, m, 0) + &tau.scale(&int(k));
                    lattice.insert(x);
                }
            }
            for an in -8..=8i64 {
                for bn in -8..=8i64 {
                    let x = ImagQuad::new(dd, rat(an, 2), rat(bn, 2));
                    assert_eq!(x.in_od(), lattice.contains(&x), "d = {n}, x = {x}");
                }
            }
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(ImagQuad::new(d(3), rat(1, 2), rat(-3, 4)).to_string(), "1/2 - 3/4*i*sqrt(3)");
        assert_eq!(ImagQuad::from_ints(d(5), 0, 1).to_string(), "i*sqrt(5)");
        assert_eq!(ImagQuad::from_ints(d(5), 0, -2).to_string(), "-2*i*sqrt(5)");
        assert_eq!(ImagQuad::from_ints(d(5), -7, 0).to_string(), "-7");
        assert_eq!(RealQuad::sqrt_d_multiple(d(3), int(2)).to_string(), "2*sqrt(3)");
        assert_eq!(RealQuad::zero(d(3)).to_string(), "0");
    }
}
