//! Exact arithmetic in a real quadratic field `Q(sqrt(D))`.
//!
//! A [`QExt`] is `rat + irr * sqrt(disc)` with arbitrary-precision rational
//! `rat`, `irr` and a square-free discriminant `disc`. Values with `irr == 0`
//! are stored with `disc == 0` so that pure rationals mix freely with any
//! field. Sign determination never consults floating point: `a + b*sqrt(D)`
//! is compared against zero by comparing `a^2` with `b^2 * D` and reading the
//! signs of `a` and `b`.
//!
//! Norm-like quantities are kept squared throughout the crate: `|x|` of a
//! vector with `QExt` coordinates generally leaves the field, but `|x|^2`
//! never does.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Errors from checked scalar operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Two operands carry different nonzero discriminants.
    #[error("discriminant mismatch: sqrt({0}) vs sqrt({1})")]
    DiscriminantMismatch(u64, u64),
    /// Division by the zero element.
    #[error("division by zero")]
    DivisionByZero,
    /// A declared discriminant has a square factor.
    #[error("discriminant {0} is not square-free")]
    NotSquareFree(u64),
    /// Malformed textual rendering.
    #[error("cannot parse {0:?} as a quadratic field element")]
    Parse(String),
}

/// The four field operations, for the checked entry point [`QExt::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element `rat + irr * sqrt(disc)` of a real quadratic field.
///
/// Invariants: `disc` is square-free; `irr == 0` implies `disc == 0`
/// (canonical pure-rational form, so equality and hashing are structural).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QExt {
    rat: BigRational,
    irr: BigRational,
    disc: u64,
}

fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return true; // disc 0 is the rational marker, not a radicand
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl QExt {
    /// The rational `p/q` as a field element.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        QExt {
            rat: BigRational::new(BigInt::from(p), BigInt::from(q)),
            irr: BigRational::zero(),
            disc: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_big(rat: BigRational) -> Self {
        QExt {
            rat,
            irr: BigRational::zero(),
            disc: 0,
        }
    }

    /// Build `rat + irr * sqrt(disc)`, normalizing the pure-rational cases.
    pub fn with_sqrt(rat: BigRational, irr: BigRational, disc: u64) -> Result<Self, ScalarError> {
        if !is_square_free(disc) {
            return Err(ScalarError::NotSquareFree(disc));
        }
        Ok(Self::normalized(rat, irr, disc))
    }

    /// `(p/q) * sqrt(disc)` convenience constructor.
    pub fn sqrt_term(p: i64, q: i64, disc: u64) -> Self {
        assert!(q != 0, "zero denominator");
        assert!(is_square_free(disc), "disc must be square-free");
        Self::normalized(
            BigRational::zero(),
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            disc,
        )
    }

    fn normalized(rat: BigRational, irr: BigRational, disc: u64) -> Self {
        // sqrt(0) = 0 and sqrt(1) = 1 fold into the rational part.
        if irr.is_zero() || disc == 0 {
            QExt {
                rat,
                irr: BigRational::zero(),
                disc: 0,
            }
        } else if disc == 1 {
            QExt {
                rat: rat + irr,
                irr: BigRational::zero(),
                disc: 0,
            }
        } else {
            QExt { rat, irr, disc }
        }
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr_part(&self) -> &BigRational {
        &self.irr
    }

    /// The discriminant carried by this value (0 for pure rationals).
    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Exact rational value, or `None` if the surd part is nonzero.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.irr.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    fn compatible(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.disc, other.disc) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ScalarError::DiscriminantMismatch(a, b)),
        }
    }

    /// Checked field arithmetic: the one entry point that surfaces
    /// discriminant mismatches and division by zero as errors.
    pub fn arith(a: &Self, b: &Self, kind: ArithKind) -> Result<Self, ScalarError> {
        let disc = a.compatible(b)?;
        match kind {
            ArithKind::Add => Ok(Self::normalized(&a.rat + &b.rat, &a.irr + &b.irr, disc)),
            ArithKind::Sub => Ok(Self::normalized(&a.rat - &b.rat, &a.irr - &b.irr, disc)),
            ArithKind::Mul => {
                let d = BigRational::from_integer(BigInt::from(disc));
                Ok(Self::normalized(
                    &a.rat * &b.rat + &a.irr * &b.irr * &d,
                    &a.rat * &b.irr + &a.irr * &b.rat,
                    disc,
                ))
            }
            ArithKind::Div => {
                if b.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                // Multiply by the conjugate; the field norm b.rat^2 - b.irr^2 D
                // vanishes only at zero because D is not a perfect square.
                let d = BigRational::from_integer(BigInt::from(disc));
                let norm = &b.rat * &b.rat - &b.irr * &b.irr * &d;
                debug_assert!(!norm.is_zero());
                let num_rat = &a.rat * &b.rat - &a.irr * &b.irr * &d;
                let num_irr = &a.irr * &b.rat - &a.rat * &b.irr;
                Ok(Self::normalized(num_rat / &norm, num_irr / &norm, disc))
            }
        }
    }

    /// Exact sign: -1, 0, or +1. Decided by rational comparisons only.
    pub fn sign(&self) -> i32 {
        let sr = rational_sign(&self.rat);
        let si = rational_sign(&self.irr);
        if si == 0 {
            return sr;
        }
        if sr == 0 {
            return si;
        }
        if sr == si {
            return sr;
        }
        // Opposite signs: |rat| vs |irr|*sqrt(D) via squares.
        let d = BigRational::from_integer(BigInt::from(self.disc));
        let lhs = &self.rat * &self.rat;
        let rhs = &self.irr * &self.irr * d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => si,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Conjugate `rat - irr*sqrt(disc)`.
    pub fn conj(&self) -> Self {
        Self::normalized(self.rat.clone(), -self.irr.clone(), self.disc)
    }

    pub fn recip(&self) -> Self {
        Self::arith(&Self::one(), self, ArithKind::Div).expect("reciprocal of zero")
    }

    /// `round(value * 2^bits)` as an exact integer, error at most 2 units in
    /// the last place (one from the surd's integer square root, one from the
    /// final rounding).
    pub fn fixed_bits(&self, bits: u32) -> BigInt {
        let scale = BigInt::one() << bits;
        let scaled_rat = &self.rat * BigRational::from_integer(scale.clone());
        let mut total = scaled_rat.round().to_integer();
        if !self.irr.is_zero() {
            // |irr| * sqrt(D) * 2^bits = sqrt(irr^2 * D * 4^bits)
            let d = BigRational::from_integer(BigInt::from(self.disc));
            let sq = &self.irr * &self.irr * d * BigRational::from_integer(&scale * &scale);
            let root = sq.floor().to_integer().sqrt();
            if self.irr.is_positive() {
                total += root;
            } else {
                total -= root;
            }
        }
        total
    }

    /// Float rendering via 192 fractional bits.
    pub fn to_f64(&self) -> f64 {
        const BITS: u32 = 192;
        bigint_to_f64_scaled(&self.fixed_bits(BITS), -(BITS as i64))
    }

    /// Total numeric order (pure rationals compare into any field).
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let diff = Self::arith(self, other, ArithKind::Sub)
            .expect("cannot order values from different fields");
        match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn bigint_to_f64_scaled(b: &BigInt, scale_pow2: i64) -> f64 {
    if b.is_zero() {
        return 0.0;
    }
    let bits = b.bits();
    let (val, shift) = if bits <= 63 {
        (b.to_i64().unwrap().unsigned_abs(), 0i64)
    } else {
        let shift = bits as i64 - 63;
        let top = (b.magnitude() >> (shift as u64)).to_u64().unwrap();
        (top, shift)
    };
    let mut x = val as f64 * 2f64.powi((shift + scale_pow2) as i32);
    if b.is_negative() {
        x = -x;
    }
    x
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $kind:expr) => {
        impl $trait for QExt {
            type Output = QExt;
            fn $method(self, rhs: QExt) -> QExt {
                QExt::arith(&self, &rhs, $kind).unwrap()
            }
        }
        impl<'a> $trait<&'a QExt> for &QExt {
            type Output = QExt;
            fn $method(self, rhs: &'a QExt) -> QExt {
                QExt::arith(self, rhs, $kind).unwrap()
            }
        }
        impl $trait<&QExt> for QExt {
            type Output = QExt;
            fn $method(self, rhs: &QExt) -> QExt {
                QExt::arith(&self, rhs, $kind).unwrap()
            }
        }
        impl $trait<QExt> for &QExt {
            type Output = QExt;
            fn $method(self, rhs: QExt) -> QExt {
                QExt::arith(self, &rhs, $kind).unwrap()
            }
        }
    };
}

forward_binop!(Add, add, ArithKind::Add);
forward_binop!(Sub, sub, ArithKind::Sub);
forward_binop!(Mul, mul, ArithKind::Mul);
forward_binop!(Div, div, ArithKind::Div);

impl Neg for QExt {
    type Output = QExt;
    fn neg(self) -> QExt {
        QExt::normalized(-self.rat, -self.irr, self.disc)
    }
}

impl Neg for &QExt {
    type Output = QExt;
    fn neg(self) -> QExt {
        QExt::normalized(-self.rat.clone(), -self.irr.clone(), self.disc)
    }
}

impl PartialOrd for QExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.compatible(other).is_err() {
            return None;
        }
        Some(self.cmp_exact(other))
    }
}

impl From<i64> for QExt {
    fn from(n: i64) -> Self {
        QExt::from_int(n)
    }
}

/// Renders `p/q + r/s*sqrt(D)`, omitting zero parts ("0" for zero).
impl fmt::Display for QExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            first = false;
        }
        if !self.irr.is_zero() {
            if !first {
                if self.irr.is_negative() {
                    write!(f, " - {}*sqrt({})", -self.irr.clone(), self.disc)?;
                } else {
                    write!(f, " + {}*sqrt({})", self.irr, self.disc)?;
                }
            } else {
                write!(f, "{}*sqrt({})", self.irr, self.disc)?;
            }
        }
        Ok(())
    }
}

impl FromStr for QExt {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        // Split into at most two signed terms.
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0usize;
        let mut i = 0usize;
        let mut neg = false;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && i > start {
                terms.push((neg, &compact[start..i]));
                neg = c == '-';
                start = i + 1;
            } else if (c == '+' || c == '-') && i == start {
                if c == '-' {
                    neg = !neg;
                }
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &compact[start..]));
        if terms.len() > 2 {
            return Err(ScalarError::Parse(s.to_string()));
        }

        let mut out = QExt::zero();
        for (negated, term) in terms {
            let parsed = parse_term(term).ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            let parsed = if negated { -parsed } else { parsed };
            out = QExt::arith(&out, &parsed, ArithKind::Add)?;
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.parse().ok()?;
        let den: BigInt = q.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(num))
    }
}

fn parse_term(term: &str) -> Option<QExt> {
    if let Some(idx) = term.find("sqrt(") {
        let disc_str = term[idx + 5..].strip_suffix(')')?;
        let disc: u64 = disc_str.parse().ok()?;
        if !is_square_free(disc) {
            return None;
        }
        let coeff = term[..idx].strip_suffix('*').unwrap_or(&term[..idx]);
        let coeff = if coeff.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coeff)?
        };
        Some(QExt::normalized(BigRational::zero(), coeff, disc))
    } else {
        Some(QExt::from_big(parse_rational(term)?))
    }
}

impl serde::Serialize for QExt {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QExt {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2_term(p: i64, q: i64) -> QExt {
        QExt::sqrt_term(p, q, 2)
    }

    #[test]
    fn inv_sqrt2_squared_is_half() {
        let x = sqrt2_term(1, 2); // 1/sqrt(2) = (1/2) sqrt(2)
        let sq = &x * &x;
        assert_eq!(sq, QExt::from_ratio(1, 2));
        assert!(sq.is_rational());
    }

    #[test]
    fn difference_of_squares() {
        let one = QExt::one();
        let r3 = QExt::sqrt_term(1, 1, 3);
        let prod = (&one + &r3) * (&one - &r3);
        assert_eq!(prod, QExt::from_int(-2));
    }

    #[test]
    fn reciprocal_of_three_plus_sqrt2() {
        let x = QExt::from_int(3) + sqrt2_term(1, 1);
        let inv = QExt::arith(&QExt::one(), &x, ArithKind::Div).unwrap();
        let expected = QExt::from_ratio(3, 7) + sqrt2_term(-1, 7);
        assert_eq!(inv, expected);
        // oracle: the product must be exactly 1
        assert_eq!(&inv * &x, QExt::one());
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QExt::zero().sign(), 0);
        // 3 - 2 sqrt(2): 9 > 8
        let a = QExt::from_int(3) + sqrt2_term(-2, 1);
        assert_eq!(a.sign(), 1);
        // 2 - (3/2) sqrt(3): 4 < 27/4
        let b = QExt::from_int(2) + QExt::sqrt_term(-3, 2, 3);
        assert_eq!(b.sign(), -1);
        // exact zero from opposite parts: sqrt(4) would fold, use 0 directly
        let c = sqrt2_term(1, 1) - sqrt2_term(1, 1);
        assert_eq!(c.sign(), 0);
    }

    #[test]
    fn discriminant_mismatch_rejected() {
        let a = sqrt2_term(1, 1);
        let b = QExt::sqrt_term(1, 1, 3);
        assert!(matches!(
            QExt::arith(&a, &b, ArithKind::Add),
            Err(ScalarError::DiscriminantMismatch(2, 3))
        ));
        // but rationals promote into any field
        let r = QExt::from_ratio(5, 3);
        assert!(QExt::arith(&a, &r, ArithKind::Mul).is_ok());
    }

    #[test]
    fn disc_one_folds_to_rational() {
        let x = QExt::with_sqrt(
            BigRational::from_i64(2).unwrap(),
            BigRational::from_i64(3).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(x, QExt::from_int(5));
        assert_eq!(x.disc(), 0);
    }

    #[test]
    fn square_factor_rejected() {
        assert!(QExt::with_sqrt(BigRational::zero(), BigRational::one(), 12).is_err());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(matches!(
            QExt::arith(&QExt::one(), &QExt::zero(), ArithKind::Div),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let x = QExt::from_ratio(3, 7) + sqrt2_term(-1, 7);
        let s = x.to_string();
        assert_eq!(s, "3/7 - 1/7*sqrt(2)");
        let back: QExt = s.parse().unwrap();
        assert_eq!(back, x);
        let y: QExt = "1/2*sqrt(3)".parse().unwrap();
        assert_eq!(y, QExt::sqrt_term(1, 2, 3));
        let z: QExt = "-5/4".parse().unwrap();
        assert_eq!(z, QExt::from_ratio(-5, 4));
    }

    #[test]
    fn to_f64_matches() {
        let x = QExt::from_int(3) + sqrt2_term(-2, 1);
        let expect = 3.0 - 2.0 * 2f64.sqrt();
        assert!((x.to_f64() - expect).abs() < 1e-14);
    }

    #[test]
    fn ordering_is_numeric() {
        let a = sqrt2_term(1, 1); // 1.414
        let b = QExt::from_ratio(3, 2); // 1.5
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_qext(disc: u64) -> impl Strategy<Value = QExt> {
            (-20i64..20, 1i64..12, -20i64..20, 1i64..12).prop_map(move |(a, b, c, d)| {
                QExt::from_ratio(a, b)
                    + QExt::with_sqrt(
                        BigRational::zero(),
                        BigRational::new(BigInt::from(c), BigInt::from(d)),
                        disc,
                    )
                    .unwrap()
            })
        }

        proptest! {
            #[test]
            fn field_axioms(a in small_qext(2), b in small_qext(2), c in small_qext(2)) {
                // associativity
                prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
                // distributivity
                prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
                // multiplicative inverse
                if !a.is_zero() {
                    let inv = QExt::arith(&QExt::one(), &a, ArithKind::Div).unwrap();
                    prop_assert_eq!(&a * &inv, QExt::one());
                }
            }

            #[test]
            fn sign_agrees_with_high_precision_float(a in small_qext(3)) {
                let bits = a.fixed_bits(200);
                // skip values too close to zero for the 200-bit rendering
                if bits.magnitude().bits() > 100 {
                    let float_sign = if bits.is_negative() { -1 } else { 1 };
                    prop_assert_eq!(a.sign(), float_sign);
                }
            }

            #[test]
            fn float_addition_within_4_ulp(a in small_qext(2), b in small_qext(2)) {
                let fa = a.to_f64();
                let fb = b.to_f64();
                let sum = (&a + &b).to_f64();
                let parts = fa + fb;
                // ulp at operand scale: cancellation makes a bound relative
                // to the sum alone unattainable for independently rounded
                // operands
                let scale = fa.abs().max(fb.abs()).max(sum.abs()).max(f64::MIN_POSITIVE);
                let ulp = scale * f64::EPSILON;
                prop_assert!((sum - parts).abs() <= 4.0 * ulp,
                    "sum={sum} parts={parts}");
            }
        }
    }
}
