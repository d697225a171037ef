use std::cmp::Ordering;

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 32;

/// A power product `x_0^e_0 * .. * x_{m-1}^e_{m-1}`.
///
/// Exponents beyond the ring's variable count stay zero. `mask` has bit `i`
/// set when `x_i` occurs, which rejects most non-divisors with one test.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
    mask: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            mask: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.exps[i] = e;
            m.deg = e as u32;
            m.mask = 1 << i;
        }
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
            m.deg += e as u32;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn support(&self) -> u32 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e = e.checked_add(*f).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.mask & !o.mask == 0 && self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`; `self` must divide `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut exps = o.exps;
        let mut mask = 0;
        for (i, (e, f)) in exps.iter_mut().zip(self.exps.iter()).enumerate() {
            *e -= f;
            if *e > 0 {
                mask |= 1 << i;
            }
        }
        Monomial {
            exps,
            deg: o.deg - self.deg,
            mask,
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut deg = 0;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e = (*e).max(*f);
            deg += *e as u32;
        }
        Monomial {
            exps,
            deg,
            mask: self.mask | o.mask,
        }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.mask & o.mask == 0
    }

    /// Sets the exponent of `x_i` to zero.
    pub fn without(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.deg -= m.exps[i] as u32;
        m.exps[i] = 0;
        m.mask &= !(1 << i);
        m
    }

    /// Moves exponent of variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &e) in self.exps.iter().enumerate().take(map.len()) {
            if e > 0 {
                m.exps[map[i]] = e;
                m.mask |= 1 << map[i];
            }
        }
        m.deg = self.deg;
        debug_assert_eq!(m.exps.iter().map(|&e| e as u32).sum::<u32>(), m.deg, "remap dropped a variable");
        m
    }
}

/// Term orders on monomials. `Block { split }` compares the variables
/// `0..split` by graded reverse lex first and breaks ties with graded
/// reverse lex on the rest; it eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GRevLex,
    Lex,
    Block { split: usize },
}

fn grevlex_range(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block { split } => {
                let s = *split;
                grevlex_range(&a.exps[..s], &b.exps[..s]).then_with(|| grevlex_range(&a.exps[s..], &b.exps[s..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GRevLex;
        // x^2 > xy > y^2 > xz > yz > z^2 in degree 2
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_block() {
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let block = MonomialOrder::Block { split: 1 };
        assert_eq!(block.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(block.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 1, 1])));
        assert_eq!(a.mul(&b).degree(), 8);
        assert_eq!(a.remap(&[2, 0, 1]), m(&[2, 0, 1]));
    }
}
