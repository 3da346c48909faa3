//! Exact arithmetic in ℚ and real quadratic fields ℚ(√d).
//!
//! Every value carries its field tag `d`; values from different fields never
//! combine. The checked operations return [`ScalarError::MixedFields`], while
//! the operator impls panic on a mismatch because a mixed expression is a
//! programming error rather than bad input.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("operands live in different fields: sqrt({left}) vs sqrt({right})")]
    MixedFields { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} has no square root in Q(sqrt({field}))")]
    NoSquareRootInField { value: String, field: u32 },
    #[error("field tag {0} is not a square-free integer >= 1")]
    NotSquareFree(i64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The field ℚ(√d); `d = 1` is ℚ itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field(u32);

impl Field {
    pub const RATIONALS: Field = Field(1);

    pub fn new(d: i64) -> Result<Self, ScalarError> {
        if d < 1 || d > u32::MAX as i64 || !is_square_free(d as u64) {
            return Err(ScalarError::NotSquareFree(d));
        }
        Ok(Field(d as u32))
    }

    pub fn tag(self) -> u32 {
        self.0
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_parts(BigRational::zero(), BigRational::zero(), self)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        Scalar::from_parts(BigRational::from_integer(n.into()), BigRational::zero(), self)
    }

    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::from_parts(BigRational::new(num.into(), den.into()), BigRational::zero(), self)
    }

    pub fn rational(self, q: BigRational) -> Scalar {
        Scalar::from_parts(q, BigRational::zero(), self)
    }

    /// `√d` itself.
    pub fn root(self) -> Scalar {
        Scalar::from_parts(BigRational::zero(), BigRational::one(), self)
    }

    /// `a + b√d` with rational coefficients.
    pub fn element(self, a: BigRational, b: BigRational) -> Scalar {
        Scalar::from_parts(a, b, self)
    }
}

impl TryFrom<u32> for Field {
    type Error = ScalarError;
    fn try_from(d: u32) -> Result<Self, ScalarError> {
        Field::new(d as i64)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.0
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(sqrt({}))", self.0)
        }
    }
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An element `a + b√d` of ℚ(√d). For `d = 1`, `b` is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    field: Field,
}

/// Name used at the public boundary for a tagged field element.
pub type NumberFieldElement = Scalar;

impl Scalar {
    fn from_parts(a: BigRational, b: BigRational, field: Field) -> Self {
        let mut s = Scalar { a, b, field };
        s.normalize();
        s
    }

    /// Folds the irrational part into the rational one when `d = 1`.
    /// `BigRational` keeps itself reduced, so this is the whole canonical form.
    fn normalize(&mut self) {
        if self.field.0 == 1 && !self.b.is_zero() {
            let b = std::mem::replace(&mut self.b, BigRational::zero());
            self.a += b;
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Same value re-tagged into `field`. Only rational values can move.
    pub fn lift(&self, field: Field) -> Result<Scalar, ScalarError> {
        if self.field == field {
            return Ok(self.clone());
        }
        if !self.is_rational() {
            return Err(ScalarError::MixedFields { left: self.field.0, right: field.0 });
        }
        Ok(field.rational(self.a.clone()))
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::MixedFields { left: self.field.0, right: other.field.0 });
        }
        Ok(())
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.field.0))
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(Scalar::from_parts(&self.a + &other.a, &self.b + &other.b, self.field))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(Scalar::from_parts(&self.a - &other.a, &self.b - &other.b, self.field))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(Scalar::from_parts(&self.a * &other.a, BigRational::zero(), self.field));
        }
        let a = &self.a * &other.a + self.d() * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Scalar::from_parts(a, b, self.field))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.d() * &self.b * &self.b
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Scalar {
        Scalar::from_parts(self.a.clone(), -self.b.clone(), self.field)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::from_parts(self.a.recip(), BigRational::zero(), self.field));
        }
        let n = self.norm();
        Ok(Scalar::from_parts(&self.a / &n, -(&self.b / &n), self.field))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Sign under the real embedding with `√d > 0`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        let lhs = &self.a * &self.a;
        let rhs = self.d() * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Approximate real value, for diagnostics and numeric root candidates only.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * (self.field.0 as f64).sqrt()
    }

    /// The nonnegative square root, if it lies in the same field.
    pub fn sqrt(&self) -> Result<Scalar, ScalarError> {
        let none = || ScalarError::NoSquareRootInField { value: self.to_string(), field: self.field.0 };
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_negative() {
            return Err(none());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Ok(self.field.rational(r));
            }
            if self.field.0 > 1 {
                if let Some(q) = rational_sqrt(&(&self.a / self.d())) {
                    return Ok(Scalar::from_parts(BigRational::zero(), q, self.field));
                }
            }
            return Err(none());
        }
        // (p + q√d)² = a + b√d  ⇒  p² = (a ± √norm)/2, q = b/(2p)
        let s = rational_sqrt(&self.norm()).ok_or_else(none)?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(p) = rational_sqrt(&cand) {
                let q = &self.b / (&two * &p);
                let mut r = Scalar::from_parts(p, q, self.field);
                if r.is_negative() {
                    r = -r;
                }
                if &r * &r == *self {
                    return Ok(r);
                }
            }
        }
        Err(none())
    }

    /// Common-denominator form `(A + B√d)/den` with integer `A`, `B`, `den > 0`.
    pub fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.a.denom().lcm(self.b.denom());
        let ai = (&self.a * BigRational::from_integer(den.clone())).to_integer();
        let bi = (&self.b * BigRational::from_integer(den.clone())).to_integer();
        (ai, bi, den)
    }

    /// Human-oriented rendering such as `(5-√5)/10`.
    pub fn pretty(&self) -> String {
        if self.b.is_zero() {
            return fmt_rational(&self.a);
        }
        let (ai, bi, den) = self.integer_form();
        let d = self.field.0;
        let root = |c: &BigInt| -> String {
            let m = c.abs();
            if m.is_one() {
                format!("√{d}")
            } else {
                format!("{m}√{d}")
            }
        };
        let mut body = String::new();
        if !ai.is_zero() {
            body.push_str(&ai.to_string());
            body.push(if bi.is_negative() { '-' } else { '+' });
        } else if bi.is_negative() {
            body.push('-');
        }
        body.push_str(&root(&bi));
        if den.is_one() {
            body
        } else if ai.is_zero() {
            format!("{body}/{den}")
        } else {
            format!("({body})/{den}")
        }
    }

    /// Parses the canonical text form and tags a rational literal with `field`.
    pub fn parse_in(text: &str, field: Field) -> Result<Scalar, ScalarError> {
        let s: Scalar = text.parse()?;
        if s.field == field {
            return Ok(s);
        }
        s.lift(field)
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact `x op y`, refusing mixed fields.
pub fn field_arith(x: &Scalar, y: &Scalar, op: FieldOp) -> Result<Scalar, ScalarError> {
    match op {
        FieldOp::Add => x.checked_add(y),
        FieldOp::Sub => x.checked_sub(y),
        FieldOp::Mul => x.checked_mul(y),
        FieldOp::Div => x.checked_div(y),
    }
}

/// Nonnegative square root within the tagged field.
pub fn sqrt_in_field(x: &Scalar) -> Result<Scalar, ScalarError> {
    x.sqrt()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let d = self.field.0;
        if self.a.is_zero() {
            write!(f, "{}*sqrt({d})", fmt_rational(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({d})", fmt_rational(&self.a), fmt_rational(&-self.b.clone()))
        } else {
            write!(f, "{}+{}*sqrt({d})", fmt_rational(&self.a), fmt_rational(&self.b))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `a`, `a/b`, `c*sqrt(d)`, `a/b+c/e*sqrt(d)` and `a/b-c/e*sqrt(d)`.
    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(root_at) = s.find("sqrt(") else {
            return parse_rational(&s).map(|q| Field::RATIONALS.rational(q)).ok_or_else(err);
        };
        let close = s[root_at..].find(')').ok_or_else(err)? + root_at;
        if close + 1 != s.len() {
            return Err(err());
        }
        let d: i64 = s[root_at + 5..close].parse().map_err(|_| err())?;
        let field = Field::new(d)?;
        let head = &s[..root_at];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split the rational part from the coefficient at the last sign not in front
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (rat, coeff) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
        let b = match coeff {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c).ok_or_else(err)?,
        };
        let a = parse_rational(rat).ok_or_else(err)?;
        Ok(field.element(a, b))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, field: self.field }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl std::iter::Sum for Scalar {
    /// Panics on an empty iterator, which has no field tag; use `fold` with
    /// `field.zero()` when the input may be empty.
    fn sum<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        let first = iter.next().expect("sum of an empty scalar sequence has no field");
        iter.fold(first, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q5() -> Field {
        Field::new(5).unwrap()
    }

    fn phi() -> Scalar {
        "1/2+1/2*sqrt(5)".parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        let q = Field::RATIONALS;
        assert_eq!(q.ratio(1, 2) + q.ratio(1, 3), q.ratio(5, 6));
    }

    #[test]
    fn golden_ratio_squares_to_successor() {
        let p = phi();
        assert_eq!(&p * &p, &p + q5().one());
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let dim: Scalar = "5/2+1/2*sqrt(5)".parse().unwrap();
        let five_plus_root: Scalar = "5+1*sqrt(5)".parse().unwrap();
        let inv = q5().int(2) / &five_plus_root;
        assert!((&dim * &inv).is_one());
        assert_eq!(inv.to_string(), "1/2-1/10*sqrt(5)");
        assert_eq!(inv.pretty(), "(5-√5)/10");
    }

    #[test]
    fn square_roots() {
        assert_eq!(Field::RATIONALS.int(4).sqrt().unwrap(), Field::RATIONALS.int(2));
        assert_eq!(q5().int(5).sqrt().unwrap(), q5().root());
        assert!(matches!(Field::RATIONALS.int(2).sqrt(), Err(ScalarError::NoSquareRootInField { .. })));
        // φ² = φ + 1 so √(φ + 1) = φ
        assert_eq!((phi() + q5().one()).sqrt().unwrap(), phi());
        assert!(q5().int(-1).sqrt().is_err());
        assert!(q5().root().sqrt().is_err());
    }

    #[test]
    fn mixed_fields_are_refused() {
        let x = Field::RATIONALS.one();
        let y = q5().one();
        assert_eq!(field_arith(&x, &y, FieldOp::Add), Err(ScalarError::MixedFields { left: 1, right: 5 }));
        assert_eq!(field_arith(&y, &q5().zero(), FieldOp::Div), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn sign_under_embedding() {
        let x: Scalar = "3-1*sqrt(5)".parse().unwrap();
        assert_eq!(x.signum(), Ordering::Greater);
        let y: Scalar = "2-1*sqrt(5)".parse().unwrap();
        assert_eq!(y.signum(), Ordering::Less);
    }

    #[test]
    fn text_forms_parse() {
        for t in ["7", "-3/4", "sqrt(5)", "-sqrt(5)", "1/2-1/10*sqrt(5)", "-2+3*sqrt(2)"] {
            let s: Scalar = t.parse().unwrap();
            let back: Scalar = s.to_string().parse().unwrap();
            assert_eq!(s, back, "{t}");
        }
        assert!("sqrt(4)".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    fn arb_q5() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
            .prop_map(|(a, b, c, e)| q5().element(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), e.into())))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_q5(), y in arb_q5(), z in arb_q5()) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        }

        #[test]
        fn sqrt_of_square(x in arb_q5()) {
            let sq = &x * &x;
            let r = sq.sqrt().unwrap();
            prop_assert_eq!(&r * &r, sq);
            prop_assert!(!r.is_negative());
        }

        #[test]
        fn canonical_form_is_stable(x in arb_q5()) {
            let again: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(again.to_string(), x.to_string());
        }
    }
}
