//! Cyclotomic fields `Q(ζ_N) = Q[X]/Φ_N` and their elements.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::rational::Rational;
use super::ArithError;

/// Returns the coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial, computed as `(X^n - 1) / ∏_{d | n, d < n} Φ_d` by exact
/// division.
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let big = cyclotomic_polynomial_big(n, &mut HashMap::new());
    big.iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn cyclotomic_polynomial_big(n: usize, memo: &mut HashMap<usize, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // X^n - 1
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::from(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial_big(d, memo);
            let (q, r) = divide_monic(&num, &div);
            debug_assert!(r.iter().all(Zero::is_zero), "inexact cyclotomic division");
            num = q;
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Long division by a monic integer polynomial. Returns (quotient, remainder).
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    if num.len() <= dn {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dn] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k - dn + j] -= &c * dj;
        }
    }
    rem.truncate(dn);
    (quot, rem)
}

struct FieldData {
    order: usize,
    degree: usize,
    modulus: Vec<i64>,
    /// Nonzero terms of Φ_N below the leading one, as (degree, coefficient).
    tail: Vec<(usize, i64)>,
    /// Reduced coefficient vectors of ζ^k for k in 0..N.
    zeta_powers: Vec<Vec<Rational>>,
}

/// The cyclotomic field `Q(ζ_N)`. Cheap to clone; fields of equal order are
/// interchangeable.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl CycField {
    /// Returns the (cached) field of order `n`. Panics if `n == 0`.
    pub fn new(n: usize) -> CycField {
        static CACHE: OnceLock<Mutex<HashMap<usize, CycField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return f.clone();
        }
        let field = CycField::build(n);
        cache.lock().unwrap().entry(n).or_insert(field).clone()
    }

    fn build(n: usize) -> CycField {
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let tail: Vec<(usize, i64)> = modulus[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| (j, *c))
            .collect();
        let mut zeta_powers = Vec::with_capacity(n);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..n {
            zeta_powers.push(cur.clone());
            // multiply by X and reduce the single overflow term
            let top = cur[degree - 1].clone();
            let mut next = vec![Rational::zero(); degree];
            next[1..degree].clone_from_slice(&cur[..(degree - 1)]);
            if !top.is_zero() {
                for &(j, a) in &tail {
                    next[j] = &next[j] - &(&top * &Rational::from_int(a));
                }
            }
            cur = next;
        }
        CycField(Arc::new(FieldData {
            order: n,
            degree,
            modulus,
            tail,
            zeta_powers,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Degree φ(N) of the field over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> CycNum {
        CycNum {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycNum {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> CycNum {
        self.from_rational(Rational::from_int(n))
    }

    pub fn from_rational(&self, r: Rational) -> CycNum {
        let mut z = self.zero();
        z.coeffs[0] = r;
        z
    }

    /// ζ_N^e for any integer e.
    pub fn zeta_pow(&self, e: i64) -> CycNum {
        let n = self.order() as i64;
        let k = e.rem_euclid(n) as usize;
        CycNum {
            field: self.clone(),
            coeffs: self.0.zeta_powers[k].clone(),
        }
    }

    /// Builds an element from a coefficient vector in powers of ζ of any
    /// length, reducing modulo Φ_N.
    pub fn from_poly(&self, coeffs: Vec<Rational>) -> CycNum {
        CycNum {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if poly.len() > d {
            for k in (d..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[k]);
                for &(j, a) in &self.0.tail {
                    let idx = k - d + j;
                    poly[idx] = &poly[idx] - &(&c * &Rational::from_int(a));
                }
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
}

impl Eq for CycField {}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta{})", self.order())
    }
}

/// Which field operation [`CycNum::arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An element of `Q(ζ_N)` in canonical form: a polynomial in ζ of degree
/// below φ(N).
#[derive(Clone)]
pub struct CycNum {
    field: CycField,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Builds from canonical coefficients; errors if the length is not φ(N).
    pub fn from_coeffs(field: &CycField, coeffs: Vec<Rational>) -> Result<CycNum, ArithError> {
        if coeffs.len() != field.degree() {
            return Err(ArithError::BadLength {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        Ok(CycNum {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &CycNum) -> Result<(), ArithError> {
        if self.field != other.field {
            return Err(ArithError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        Ok(())
    }

    /// Checked field operation; the operator impls panic on mismatched
    /// fields instead.
    pub fn arith(&self, other: &CycNum, op: ArithOp) -> Result<CycNum, ArithError> {
        self.check_field(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        if r.is_one() {
            return self.clone();
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (a, Φ_N) over Q.
    pub fn invert(&self) -> Result<CycNum, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        // c·ζ^k has inverse c⁻¹·ζ^{N-k}.
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if nonzero.len() == 1 {
            let k = nonzero[0] as i64;
            return Ok(self.field.zeta_pow(-k).scale(&self.coeffs[nonzero[0]].recip()));
        }

        let modulus: Vec<Rational> = self
            .field
            .modulus()
            .iter()
            .map(|&c| Rational::from_int(c))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv = s0.iter().map(|x| x * &c).collect();
        Ok(self.field.from_poly(inv))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, ArithError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.field.one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// If `self = c·ζ^k` for a rational `c`, returns `(c, k)` with the
    /// smallest `k`, preferring `c = 1`.
    pub fn as_root_of_unity_multiple(&self) -> Option<(Rational, usize)> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.order();
        let mut first = None;
        for k in 0..n {
            let t = self * &self.field.zeta_pow(-(k as i64));
            if let Some(c) = t.as_rational() {
                if c.is_one() {
                    return Some((c.clone(), k));
                }
                if first.is_none() {
                    first = Some((c.clone(), k));
                }
            }
        }
        first
    }

    /// Exponent `k` with `self = ζ^k`, if `self` is a power of ζ.
    pub fn zeta_exponent(&self) -> Option<usize> {
        match self.as_root_of_unity_multiple() {
            Some((c, k)) if c.is_one() => Some(k),
            _ => None,
        }
    }

    /// Multiplicative order if `self` is a root of unity in the field.
    pub fn multiplicative_order(&self) -> Option<usize> {
        let n = self.field.order();
        // roots of unity in Q(ζ_N) have order dividing lcm(N, 2)
        let bound = if n.is_multiple_of(2) { n } else { 2 * n };
        let one = self.field.one();
        let mut cur = self.clone();
        for k in 1..=bound {
            if cur == one {
                return Some(k);
            }
            cur = &cur * self;
        }
        None
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = &rem[k] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            let idx = k - db + j;
            rem[idx] = &rem[idx] - &(&c * bj);
        }
        quot[k - db] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                assert!(
                    self.field == rhs.field,
                    "cyclotomic field mismatch: {} vs {}",
                    self.field.order(),
                    rhs.field.order()
                );
                self.$imp(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn zeta_name(n: usize, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => format!("zeta{n}"),
        _ => format!("zeta{n}^{k}"),
    }
}

/// Renders rationals as `p/q`, scalar multiples of roots of unity as
/// `c*zetaN^k`, and everything else as `a0 + a1*zetaN + ...`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let n = self.field.order();
        if let Some((c, k)) = self.as_root_of_unity_multiple() {
            let z = zeta_name(n, k);
            return if c.is_one() {
                write!(f, "{z}")
            } else if c == -Rational::one() {
                write!(f, "-{z}")
            } else {
                write!(f, "{c}*{z}")
            };
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", zeta_name(n, k))?;
            } else {
                write!(f, "{mag}*{}", zeta_name(n, k))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.field.order(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent check: multiply out ∏_{d|N} Φ_d with plain integer
    /// convolution and compare against X^N - 1.
    fn product_of_divisor_polys(n: usize) -> Vec<i64> {
        let mut acc = vec![1i64];
        for d in 1..=n {
            if n.is_multiple_of(d) {
                let p = cyclotomic_polynomial(d);
                let mut out = vec![0i64; acc.len() + p.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                acc = out;
            }
        }
        acc
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        let mut p27 = vec![0i64; 19];
        p27[0] = 1;
        p27[9] = 1;
        p27[18] = 1;
        assert_eq!(cyclotomic_polynomial(27), p27);
    }

    #[test]
    fn divisor_product_is_x_n_minus_one() {
        for n in 1..=64 {
            let prod = product_of_divisor_polys(n);
            let mut expect = vec![0i64; n + 1];
            expect[0] = -1;
            expect[n] = 1;
            assert_eq!(prod, expect, "N = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() - 1, (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count());
        }
    }

    #[test]
    fn named_identities() {
        let f4 = CycField::new(4);
        let z4 = f4.zeta_pow(1);
        assert_eq!(&z4 * &z4, f4.from_int(-1));

        let f3 = CycField::new(3);
        let z3 = f3.zeta_pow(1);
        assert_eq!(&z3 + &f3.zeta_pow(2), f3.from_int(-1));
        let one_plus = &f3.one() + &z3;
        assert_eq!(&one_plus * &(-&z3), f3.one());
        assert_eq!(one_plus.invert().unwrap(), -&z3);
        assert_eq!(f3.one().invert().unwrap(), f3.one());

        let f2 = CycField::new(2);
        assert_eq!(f2.zeta_pow(1), f2.from_int(-1));

        let f27 = CycField::new(27);
        assert_eq!(f27.zeta_pow(0), f27.one());
        assert_eq!(f27.zeta_pow(-3), f27.zeta_pow(24));
        for n in [5usize, 7, 12, 27] {
            let f = CycField::new(n);
            let z = f.zeta_pow(1);
            assert_eq!(z.invert().unwrap(), f.zeta_pow(n as i64 - 1));
        }
    }

    #[test]
    fn field_mismatch_and_zero_division() {
        let a = CycField::new(3).one();
        let b = CycField::new(5).one();
        assert!(matches!(
            a.arith(&b, ArithOp::Add),
            Err(ArithError::FieldMismatch { left: 3, right: 5 })
        ));
        assert!(matches!(
            CycField::new(7).zero().invert(),
            Err(ArithError::DivisionByZero)
        ));
    }

    #[test]
    fn zeta_power_orders() {
        for n in [1usize, 2, 3, 4, 6, 9, 10, 27] {
            let f = CycField::new(n);
            for e in 1..n as i64 {
                let g = num_integer::gcd(n, e as usize);
                assert_eq!(f.zeta_pow(e).multiplicative_order(), Some(n / g), "N={n} e={e}");
            }
        }
    }

    #[test]
    fn rendering() {
        let f = CycField::new(27);
        assert_eq!(f.zeta_pow(24).to_string(), "zeta27^24");
        assert_eq!(f.zeta_pow(1).to_string(), "zeta27");
        assert_eq!(f.from_int(702).to_string(), "702");
        let g = CycField::new(3);
        assert_eq!((&g.one() + &g.zeta_pow(1)).to_string(), "-zeta3^2");
        let h = CycField::new(5);
        let v = &h.from_int(2) + &h.zeta_pow(1);
        assert_eq!(v.to_string(), "2 + zeta5");
        assert_eq!(h.from_rational(Rational::new(-3, 4)).to_string(), "-3/4");
    }

    fn elem(n: usize) -> impl Strategy<Value = CycNum> {
        let f = CycField::new(n);
        let d = f.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d)
            .prop_map(move |cs| f.from_poly(cs.into_iter().map(|(a, b)| Rational::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn field_axioms_q9((a, b, c) in (elem(9), elem(9), elem(9))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.invert().unwrap(), a.field().one());
            }
        }

        #[test]
        fn inverse_q27(a in elem(27)) {
            if !a.is_zero() {
                prop_assert!((&a * &a.invert().unwrap()).is_one());
            }
        }
    }
}
