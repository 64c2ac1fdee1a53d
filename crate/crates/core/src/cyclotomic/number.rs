use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (ascending) of the N-th cyclotomic polynomial, computed by
/// dividing `x^N - 1` by the lower-order cyclotomic polynomials. Cached.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut quotient = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                quotient = exact_poly_div(&quotient, &phi_d);
            }
        }
        quotient
    };
    phi_cache().lock().unwrap().insert(n, result.clone());
    result
}

/// Exact division of integer polynomials with monic divisor.
fn exact_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dd] = c.clone();
        for j in 0..=dd {
            let s = &den[j] * &c;
            rem[i - dd + j] -= s;
        }
    }
    assert!(rem.iter().all(|x| x.is_zero()), "inexact poly division");
    q
}

/// An element of `Q(ζ_N)` in the power basis `1, ζ, ..., ζ^(φ(N)-1)`,
/// always reduced modulo the N-th cyclotomic polynomial. Equality is
/// coefficient equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Cyclotomic::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        let mut c = Cyclotomic::zero(order);
        c.coeffs[0] = q;
        c
    }

    pub fn from_integer(order: u32, x: i64) -> Self {
        Cyclotomic::from_rational(order, BigRational::from_integer(BigInt::from(x)))
    }

    /// The primitive root `ζ_N` itself (reduced when φ(N) = 1).
    pub fn zeta(order: u32) -> Self {
        let mut poly = vec![BigRational::zero(); 2];
        poly[1] = BigRational::one();
        Cyclotomic::from_poly(order, poly)
    }

    /// `ζ_N^k`
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclotomic::from_poly(order, poly)
    }

    /// Builds from arbitrary-length power-basis coefficients, reducing
    /// modulo the cyclotomic polynomial.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Self {
        let phi = euler_phi(order) as usize;
        let modulus = cyclotomic_polynomial(order);
        let mut rem = poly;
        // reduce: for degrees >= phi, subtract multiples of the modulus
        while rem.len() > phi {
            let i = rem.len() - 1;
            let c = rem[i].clone();
            rem.pop();
            if c.is_zero() {
                continue;
            }
            // x^i = x^(i-phi) * (x^phi - modulus_tail)
            for j in 0..phi {
                let s = BigRational::from_integer(modulus[j].clone()) * &c;
                rem[i - phi + j] -= s;
            }
        }
        rem.resize(phi, BigRational::zero());
        Cyclotomic {
            order,
            coeffs: rem,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the number is rational, else `None`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_order(&self, other: &Cyclotomic) -> Result<()> {
        if self.order != other.order {
            return Err(Error::MixedOrders {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_order(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let s = a * b;
                prod[i + j] += s;
            }
        }
        Ok(Cyclotomic::from_poly(self.order, prod))
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // extended gcd of self (as a polynomial) and the modulus
        let (mut r0, mut r1) = (trim(self.coeffs.clone()), trim(modulus));
        let (mut s0, mut s1) = (
            vec![BigRational::one()],
            vec![BigRational::zero()],
        );
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd is a nonzero constant: the modulus is irreducible
        assert_eq!(r0.len(), 1, "cyclotomic polynomial is irreducible over Q");
        let c = r0[0].clone();
        let inv_poly: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
        Ok(Cyclotomic::from_poly(self.order, inv_poly))
    }

    pub fn pow(&self, e: u32) -> Result<Cyclotomic> {
        let mut out = Cyclotomic::one(self.order);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Lift into `Q(ζ_M)` for `order | M`, substituting `ζ_N = ζ_M^(M/N)`.
    pub fn lift(&self, m: u32) -> Result<Cyclotomic> {
        if m % self.order != 0 {
            return Err(Error::MixedOrders {
                left: self.order,
                right: m,
            });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len() * step];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Ok(Cyclotomic::from_poly(m, poly))
    }

    /// Deterministic serialization, used for hashing group elements.
    pub fn canonical_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let s = x * y;
            out[i + j] += s;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / lead;
        if c.is_zero() {
            continue;
        }
        q[i - db] = c.clone();
        for j in 0..=db {
            let s = &b[j] * &c;
            rem[i - db + j] -= s;
        }
    }
    (trim(q), trim(rem))
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}
