use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::PolyError;
use crate::linalg::Rational;

/// Named, ordered variables together with a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Arc<Ring>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::BadVariableName(n.clone()));
            }
            if !seen.insert(n.clone()) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > names.len() {
                return Err(PolyError::BadBlock(split));
            }
        }
        Ok(Arc::new(Ring { names, order }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

/// A polynomial with rational coefficients. Terms are kept sorted by
/// decreasing monomial in the ring's order, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(i), Rational::one())],
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Sorts, merges equal monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusted constructor: terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    fn check_ring(&self, o: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "polynomials from different rings"
        );
    }

    fn merge(&self, o: &Polynomial, negate: bool) -> Polynomial {
        self.check_ring(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                self.ring.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|(m, d)| (*m, d * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point has the wrong dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Replaces variable `i` by `value`.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Polynomial {
        self.check_ring(value);
        let mut powers: HashMap<u16, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(&self.ring);
        let mut rest = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                rest.push((*m, c.clone()));
                continue;
            }
            let p = powers.entry(e).or_insert_with(|| value.pow(e as u32)).clone();
            out = &out + &p.mul_monomial(&m.without(i), c);
        }
        &out + &Polynomial::from_terms(&self.ring, rest)
    }

    /// Moves variable `i` of this ring to variable `map[i]` of `target`.
    pub fn to_ring(&self, target: &Arc<Ring>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars(), "variable map has the wrong length");
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect())
    }

    /// Same variables, different order.
    pub fn reorder(&self, target: &Arc<Ring>) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.to_ring(target, &map)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, o: &Polynomial) -> Polynomial {
        self.merge(o, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, o: &Polynomial) -> Polynomial {
        self.merge(o, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = &acc + &large.mul_monomial(m, c);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, name) in self.ring.names.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
