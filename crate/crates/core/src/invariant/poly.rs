use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use num::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lex order: higher total degree wins, ties by
/// the first differing exponent (earlier variables are bigger).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of one degree, graded-lex descending (pivoting order).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == current.len() {
            current[i] = remaining;
            out.push(Monomial(current.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            current[i] = e;
            rec(i + 1, remaining - e, current, out);
        }
        current[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, d, &mut current, &mut out);
    out
}

/// Sparse multivariate polynomial with cyclotomic coefficients; no zero
/// coefficients stored, terms ordered graded-lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Poly {
    pub fn zero(order: u32, nvars: usize) -> Self {
        Poly {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: u32, nvars: usize, c: Cyclotomic) -> Self {
        let mut p = Poly::zero(order, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(order: u32, nvars: usize) -> Self {
        Poly::constant(order, nvars, Cyclotomic::one(order))
    }

    pub fn variable(order: u32, nvars: usize, i: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        Poly::from_term(order, nvars, Monomial(e), Cyclotomic::one(order))
    }

    pub fn from_term(order: u32, nvars: usize, m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Poly::zero(order, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            match out.terms.get_mut(m) {
                Some(existing) => {
                    let s = existing.add(c)?;
                    if s.is_zero() {
                        out.terms.remove(m);
                    } else {
                        *existing = s;
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Poly> {
        if c.is_zero() {
            return Ok(Poly::zero(self.order, self.nvars));
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let v = a.mul(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Poly {
            nvars: self.nvars,
            order: self.order,
            terms,
        })
    }

    pub fn scale_rational(&self, q: &BigRational) -> Poly {
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(q)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(self.order, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2)?;
                match out.terms.get_mut(&m) {
                    Some(existing) => {
                        let s = existing.add(&c)?;
                        if s.is_zero() {
                            out.terms.remove(&m);
                        } else {
                            *existing = s;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.terms.insert(m, c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut out = Poly::one(self.order, self.nvars);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Substitutes `x_i -> subs[i]` (each a polynomial in the same
    /// variables). Powers are cached per variable.
    pub fn substitute_linear(&self, subs: &[Poly]) -> Result<Poly> {
        let mut max_pow = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_pow[i] = max_pow[i].max(e);
            }
        }
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let mut p = vec![Poly::one(self.order, self.nvars)];
            for e in 1..=max_pow[i] {
                let next = p[(e - 1) as usize].mul(&subs[i])?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Poly::zero(self.order, self.nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(self.order, self.nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Lift all coefficients into `Q(ζ_M)`.
    pub fn lift(&self, m: u32) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            terms.insert(mono.clone(), c.lift(m)?);
        }
        Ok(Poly {
            nvars: self.nvars,
            order: m,
            terms,
        })
    }

    /// Coefficient row over an indexed monomial list.
    pub fn to_row(&self, index: &BTreeMap<Monomial, usize>, width: usize) -> Vec<Cyclotomic> {
        let mut row = vec![Cyclotomic::zero(self.order); width];
        for (m, c) in &self.terms {
            row[index[m]] = c.clone();
        }
        row
    }

    pub fn from_row(
        order: u32,
        nvars: usize,
        monomials: &[Monomial],
        row: &[Cyclotomic],
    ) -> Poly {
        let mut terms = BTreeMap::new();
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(monomials[i].clone(), c.clone());
            }
        }
        Poly {
            nvars,
            order,
            terms,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut vars = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    vars.push_str(&format!("*x{i}"));
                } else if e > 1 {
                    vars.push_str(&format!("*x{i}^{e}"));
                }
            }
            let coeff = if c.to_rational().is_some() {
                format!("{c}")
            } else {
                format!("({c})")
            };
            parts.push(format!("{coeff}{vars}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::variable(1, 2, i)
    }

    #[test]
    fn grlex_order() {
        let m = |v: &[u32]| Monomial(v.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 3]) > m(&[2, 0]));
    }

    #[test]
    fn monomial_enumeration_is_grlex_descending() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].0, vec![2, 0, 0]);
        assert_eq!(ms[5].0, vec![0, 0, 2]);
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn arithmetic_and_substitution() {
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x(0).add(&x(1)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.terms().len(), 3);
        // substitute x -> x, y -> -x: (x - x)^2 = 0
        let subs = vec![x(0), x(0).neg()];
        assert!(sq.substitute_linear(&subs).unwrap().is_zero());
    }
}
