//! Buchberger's algorithm over the integers.
//!
//! Polynomials are kept primitive with integer coefficients; reduction is
//! fraction free (`p <- a*p - b*m*g`). Pairs are pruned with the
//! Gebauer-Möller criteria and selected by sugar degree.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::int::Int;
use super::monomial::{Monomial, MonomialOrder};
use super::ring::{Polynomial, Ring};
use super::PolyError;
use crate::linalg::Rational;

/// Wall-clock and step ceilings for one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_steps: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            max_steps: None,
        }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs)),
            max_steps: None,
        }
    }

    pub fn steps(max_steps: u64) -> Self {
        Budget {
            deadline: None,
            max_steps: Some(max_steps),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

pub(crate) struct Meter {
    budget: Budget,
    steps: u64,
}

pub(crate) struct OutOfBudget;

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter { budget, steps: 0 }
    }

    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.steps += 1;
        if self.budget.max_steps.is_some_and(|m| self.steps > m) {
            return Err(OutOfBudget);
        }
        if self.steps.is_multiple_of(64) && self.budget.expired() {
            return Err(OutOfBudget);
        }
        Ok(())
    }
}

type Terms = Vec<(Monomial, Int)>;

#[derive(Clone, Debug)]
struct IntPoly {
    terms: Terms,
    sugar: u32,
}

impl IntPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Divides by the content and makes the leading coefficient positive.
/// Returns the divisor (signed).
fn make_primitive(terms: &mut Terms) -> Int {
    if terms.is_empty() {
        return Int::one();
    }
    let mut g = Int::zero();
    for (_, c) in terms.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if terms[0].1.is_negative() {
        g = g.neg();
    }
    if !g.is_one() {
        for (_, c) in terms.iter_mut() {
            *c = c.div_exact(&g);
        }
    }
    g
}

/// Integer multiple of `p`, primitive, and the factor used.
fn to_integer_terms(p: &Polynomial) -> (Terms, Rational) {
    let lcm = p
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut terms: Terms = p
        .terms()
        .iter()
        .map(|(m, c)| (*m, Int::from_big(c.numer() * (&lcm / c.denom()))))
        .collect();
    let g = make_primitive(&mut terms);
    (terms, Rational::new(lcm, g.to_big()))
}

fn to_monic(ring: &Arc<Ring>, terms: &Terms) -> Polynomial {
    let lc = terms[0].1.to_big();
    Polynomial::from_sorted(
        ring,
        terms
            .iter()
            .map(|(m, c)| (*m, Rational::new(c.to_big(), lc.clone())))
            .collect(),
    )
}

struct Reducer<'a> {
    order: MonomialOrder,
    polys: &'a [IntPoly],
    active: &'a [usize],
}

impl Reducer<'_> {
    /// Among active polynomials whose leading monomial divides `m`, the
    /// shortest one.
    fn find(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &i in self.active {
            if Some(i) == skip {
                continue;
            }
            let g = &self.polys[i];
            if g.lm().divides(m) && best.is_none_or(|b| g.terms.len() < self.polys[b].terms.len()) {
                best = Some(i);
            }
        }
        best
    }

    /// Full reduction starting at term `start`. `scale`, when given, is
    /// multiplied by every factor applied to `p`.
    fn reduce(
        &self,
        mut p: Terms,
        start: usize,
        skip: Option<usize>,
        meter: &mut Meter,
        mut scale: Option<&mut Rational>,
    ) -> Result<Terms, OutOfBudget> {
        let mut pos = start;
        let mut dirty = 0u32;
        while pos < p.len() {
            let Some(j) = self.find(&p[pos].0, skip) else {
                pos += 1;
                continue;
            };
            meter.tick()?;
            let g = &self.polys[j].terms;
            let (gm, gc) = (&g[0].0, &g[0].1);
            let q = gm.quotient_of(&p[pos].0);
            let c = &p[pos].1;
            let d = c.gcd(gc);
            let a = gc.div_exact(&d);
            let b = c.div_exact(&d);
            let mut out: Terms = Vec::with_capacity(p.len() + g.len());
            if a.is_one() {
                out.extend_from_slice(&p[..pos]);
            } else {
                out.extend(p[..pos].iter().map(|(m, c)| (*m, c.mul(&a))));
            }
            let (mut i, mut k) = (pos + 1, 1);
            while i < p.len() || k < g.len() {
                let ord = if i == p.len() {
                    Ordering::Less
                } else if k == g.len() {
                    Ordering::Greater
                } else {
                    self.order.cmp(&p[i].0, &g[k].0.mul(&q))
                };
                match ord {
                    Ordering::Greater => {
                        out.push((p[i].0, p[i].1.mul(&a)));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((g[k].0.mul(&q), g[k].1.mul(&b).neg()));
                        k += 1;
                    }
                    Ordering::Equal => {
                        let v = p[i].1.mul_sub(&a, &g[k].1, &b);
                        if !v.is_zero() {
                            out.push((p[i].0, v));
                        }
                        i += 1;
                        k += 1;
                    }
                }
            }
            p = out;
            if let Some(s) = scale.as_deref_mut() {
                *s *= Rational::from_integer(a.to_big());
            }
            if !a.is_one() {
                dirty += 1;
            }
            if dirty >= 8 || (dirty > 0 && p.get(pos).is_some_and(|t| t.1.is_big())) {
                dirty = 0;
                let g = make_primitive(&mut p);
                if let Some(s) = scale.as_deref_mut() {
                    *s /= Rational::from_integer(g.to_big());
                }
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<IntPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    meter: Meter,
}

impl Engine {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        (a.sugar + lcm.degree() - a.lm().degree()).max(b.sugar + lcm.degree() - b.lm().degree())
    }

    /// Gebauer-Möller installation of the new polynomial `h`.
    fn update(&mut self, h: usize) {
        let hm = *self.polys[h].lm();
        let candidates: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, hm.lcm(self.polys[g].lm()))).collect();
        let mut keep = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            let (g, lcm) = &candidates[a];
            if hm.is_coprime(self.polys[*g].lm()) {
                continue;
            }
            // drop if another surviving pair with h has an lcm dividing ours
            let dominated = candidates.iter().enumerate().any(|(b, (_, other))| {
                b != a && keep[b] && other.divides(lcm)
            });
            if dominated {
                keep[a] = false;
            }
        }
        self.pairs.retain(|p| {
            !hm.divides(&p.lcm)
                || hm.lcm(self.polys[p.i].lm()) == p.lcm
                || hm.lcm(self.polys[p.j].lm()) == p.lcm
        });
        for (a, (g, lcm)) in candidates.iter().enumerate() {
            if keep[a] && !hm.is_coprime(self.polys[*g].lm()) {
                let sugar = self.pair_sugar(*g, h, lcm);
                self.pairs.push(Pair {
                    i: *g,
                    j: h,
                    lcm: *lcm,
                    sugar,
                });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !hm.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                if order == MonomialOrder::GRevLex {
                    a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm))
                } else {
                    order.cmp(&a.lcm, &b.lcm)
                }
            })?
            .0;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i].terms, &self.polys[p.j].terms);
        let qf = f[0].0.quotient_of(&p.lcm);
        let qg = g[0].0.quotient_of(&p.lcm);
        let d = f[0].1.gcd(&g[0].1);
        let a = g[0].1.div_exact(&d);
        let b = f[0].1.div_exact(&d);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut k) = (1, 1);
        while i < f.len() || k < g.len() {
            let ord = if i == f.len() {
                Ordering::Less
            } else if k == g.len() {
                Ordering::Greater
            } else {
                self.order.cmp(&f[i].0.mul(&qf), &g[k].0.mul(&qg))
            };
            match ord {
                Ordering::Greater => {
                    out.push((f[i].0.mul(&qf), f[i].1.mul(&a)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((g[k].0.mul(&qg), g[k].1.mul(&b).neg()));
                    k += 1;
                }
                Ordering::Equal => {
                    let v = f[i].1.mul_sub(&a, &g[k].1, &b);
                    if !v.is_zero() {
                        out.push((f[i].0.mul(&qf), v));
                    }
                    i += 1;
                    k += 1;
                }
            }
        }
        out
    }

    fn reduce(&mut self, p: Terms) -> Result<Terms, OutOfBudget> {
        let reducer = Reducer {
            order: self.order,
            polys: &self.polys,
            active: &self.active,
        };
        reducer.reduce(p, 0, None, &mut self.meter, None)
    }

    /// Returns `false` when a nonzero constant appeared.
    fn insert(&mut self, mut terms: Terms, sugar: u32) -> bool {
        make_primitive(&mut terms);
        let constant = terms[0].0.is_one();
        self.polys.push(IntPoly { terms, sugar });
        let h = self.polys.len() - 1;
        if constant {
            self.active = vec![h];
            self.pairs.clear();
            return false;
        }
        self.update(h);
        true
    }

    fn partial(&self, ring: &Arc<Ring>) -> Vec<Polynomial> {
        self.active.iter().map(|&i| to_monic(ring, &self.polys[i].terms)).collect()
    }

    fn run(&mut self, gens: Vec<IntPoly>) -> Result<(), OutOfBudget> {
        for g in gens {
            let r = self.reduce(g.terms)?;
            if !r.is_empty() && !self.insert(r, g.sugar) {
                return Ok(());
            }
        }
        while let Some(pair) = self.select() {
            self.meter.tick()?;
            let s = self.spoly(&pair);
            let r = self.reduce(s)?;
            if !r.is_empty() && !self.insert(r, pair.sugar) {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Tail-reduces the minimal basis into the reduced one.
    fn interreduce(&mut self) -> Result<(), OutOfBudget> {
        let active = self.active.clone();
        for &i in &active {
            let terms = self.polys[i].terms.clone();
            let reducer = Reducer {
                order: self.order,
                polys: &self.polys,
                active: &active,
            };
            let mut r = reducer.reduce(terms, 1, Some(i), &mut self.meter, None)?;
            make_primitive(&mut r);
            self.polys[i].terms = r;
        }
        Ok(())
    }
}

/// The reduced Gröbner basis of an ideal with respect to its ring's order.
/// Elements are monic and sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `1` lies in the ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(Polynomial::is_nonzero_constant)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial().copied()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of the quotient; `-1` for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let supports: Vec<u32> = self.leading_monomials().iter().map(Monomial::support).collect();
        self.ring.nvars() as i64 - min_hitting_set(&supports) as i64
    }

    /// Builds a basis from polynomials already known to form the reduced
    /// Gröbner basis (e.g. the t-free part of an elimination basis).
    pub(crate) fn from_reduced(ring: &Arc<Ring>, mut polys: Vec<Polynomial>) -> Self {
        polys.sort_by(|a, b| {
            ring.cmp(
                a.leading_monomial().expect("nonzero"),
                b.leading_monomial().expect("nonzero"),
            )
        });
        GroebnerBasis {
            ring: ring.clone(),
            polys,
        }
    }
}

/// Smallest set of variables meeting every support (branch and bound).
pub(crate) fn min_hitting_set(supports: &[u32]) -> u32 {
    // keep only inclusion-minimal supports
    let mut sets: Vec<u32> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut minimal: Vec<u32> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&m| m & !s == 0) {
            minimal.push(s);
        }
    }
    fn go(sets: &[u32], chosen: u32, size: u32, best: &mut u32) {
        if size >= *best {
            return;
        }
        let unhit = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        match unhit {
            None => *best = size,
            Some(&s) => {
                let mut rest = s;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    go(sets, chosen | v, size + 1, best);
                }
            }
        }
    }
    let mut best = u32::MAX;
    go(&minimal, 0, 0, &mut best);
    best
}

fn check_same_ring(polys: &[Polynomial]) -> Result<Option<Arc<Ring>>, PolyError> {
    let Some(first) = polys.first() else {
        return Ok(None);
    };
    let ring = first.ring().clone();
    if polys.iter().any(|p| !(Arc::ptr_eq(p.ring(), &ring) || **p.ring() == *ring)) {
        return Err(PolyError::RingMismatch);
    }
    Ok(Some(ring))
}

/// Reduced Gröbner basis of `gens` in `ring` (all generators must live in
/// `ring`).
pub fn buchberger(ring: &Arc<Ring>, gens: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    if let Some(r) = check_same_ring(gens)? {
        if *r != **ring {
            return Err(PolyError::RingMismatch);
        }
    }
    let order = ring.order();
    let mut input: Vec<IntPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| IntPoly {
            terms: to_integer_terms(p).0,
            sugar: p.total_degree().unwrap_or(0),
        })
        .collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut engine = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        meter: Meter::new(*budget),
    };
    let timeout = |engine: &Engine| PolyError::Timeout {
        steps: engine.meter.steps,
        partial: engine.partial(ring),
    };
    if engine.run(input).is_err() {
        return Err(timeout(&engine));
    }
    if engine.interreduce().is_err() {
        return Err(timeout(&engine));
    }
    let polys: Vec<Polynomial> = engine.active.iter().map(|&i| to_monic(ring, &engine.polys[i].terms)).collect();
    Ok(GroebnerBasis::from_reduced(ring, polys))
}

/// Remainder of full division of `f` by `divisors`: no term is divisible by
/// a leading monomial of a divisor, and `f - remainder` lies in their ideal.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let ring = f.ring().clone();
    let polys: Vec<IntPoly> = divisors
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| IntPoly {
            terms: to_integer_terms(p).0,
            sugar: 0,
        })
        .collect();
    let active: Vec<usize> = (0..polys.len()).collect();
    let reducer = Reducer {
        order: ring.order(),
        polys: &polys,
        active: &active,
    };
    let (terms, mut scale) = to_integer_terms(f);
    let mut meter = Meter::new(Budget::unlimited());
    let r = match reducer.reduce(terms, 0, None, &mut meter, Some(&mut scale)) {
        Ok(r) => r,
        Err(OutOfBudget) => unreachable!("unlimited budget"),
    };
    let inv = scale.recip();
    Polynomial::from_sorted(
        &ring,
        r.into_iter()
            .map(|(m, c)| (m, Rational::from_integer(c.to_big()) * &inv))
            .collect(),
    )
}

/// Every S-polynomial reduces to zero modulo `polys` (no criteria applied).
pub fn is_groebner_basis(polys: &[Polynomial]) -> bool {
    let polys: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (f, g) = (&polys[i], &polys[j]);
            let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let lcm = fm.lcm(gm);
            let s = &f.mul_monomial(&fm.quotient_of(&lcm), &f.leading_coefficient().unwrap().recip())
                - &g.mul_monomial(&gm.quotient_of(&lcm), &g.leading_coefficient().unwrap().recip());
            if !normal_form(&s, &polys).is_zero() {
                return false;
            }
        }
    }
    true
}
