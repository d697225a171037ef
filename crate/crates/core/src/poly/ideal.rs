//! Elimination and saturation through auxiliary block orders.

use std::sync::Arc;

use super::groebner::{buchberger, Budget, GroebnerBasis};
use super::monomial::{Monomial, MonomialOrder};
use super::ring::{Polynomial, Ring};
use super::PolyError;
use crate::linalg::Rational;

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Re-expresses a Gröbner basis for the inner block in `ring`. The inner
/// block uses graded reverse lex, so the basis carries over unchanged when
/// `ring` does too.
fn settle(ring: &Arc<Ring>, polys: Vec<Polynomial>, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    if ring.order() == MonomialOrder::GRevLex {
        Ok(GroebnerBasis::from_reduced(ring, polys))
    } else {
        buchberger(ring, &polys, budget)
    }
}

/// Generators of `<gens>` intersected with the subring without the
/// variables `elim`, as a Gröbner basis in `ring`.
pub fn eliminate(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    elim: &[usize],
    budget: &Budget,
) -> Result<GroebnerBasis, PolyError> {
    if elim.is_empty() {
        return buchberger(ring, gens, budget);
    }
    let n = ring.nvars();
    let mut new_pos = vec![usize::MAX; n];
    let mut names = Vec::with_capacity(n);
    for (p, &v) in elim.iter().enumerate() {
        new_pos[v] = p;
        names.push(ring.names()[v].clone());
    }
    for v in 0..n {
        if new_pos[v] == usize::MAX {
            new_pos[v] = names.len();
            names.push(ring.names()[v].clone());
        }
    }
    let block = Ring::new(names, MonomialOrder::Block { split: elim.len() })?;
    let mapped: Vec<Polynomial> = gens.iter().map(|g| g.to_ring(&block, &new_pos)).collect();
    let gb = buchberger(&block, &mapped, budget)?;
    let low = (1u32 << elim.len()) - 1;
    let mut back = vec![0; n];
    for v in 0..n {
        back[new_pos[v]] = v;
    }
    let kept: Vec<Polynomial> = gb
        .into_polys()
        .into_iter()
        .filter(|p| p.support() & low == 0)
        .map(|p| p.to_ring(ring, &back))
        .collect();
    settle(ring, kept, budget)
}

fn saturate_one(gb: &GroebnerBasis, h: &Polynomial, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    let ring = gb.ring();
    let n = ring.nvars();
    let t = fresh_name(ring, "t");
    let names = std::iter::once(t).chain(ring.names().iter().cloned());
    let ext = Ring::new(names, MonomialOrder::Block { split: 1 })?;
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Polynomial> = gb.polys().iter().map(|p| p.to_ring(&ext, &shift)).collect();
    let th = h.to_ring(&ext, &shift).mul_monomial(&Monomial::var(0), &Rational::from_integer(1.into()));
    gens.push(&th - &Polynomial::one(&ext));
    let ext_gb = buchberger(&ext, &gens, budget)?;
    let mut back = vec![0; n + 1];
    for v in 0..n {
        back[v + 1] = v;
    }
    let kept: Vec<Polynomial> = ext_gb
        .into_polys()
        .into_iter()
        .filter(|p| p.support() & 1 == 0)
        .map(|p| p.to_ring(ring, &back))
        .collect();
    settle(ring, kept, budget)
}

/// `(I : x_v^oo)`. The ideal is homogenized by a new variable `h` (the
/// homogenized basis generates the homogenization since the order is
/// graded); a graded reverse lex basis with `x_v` last then yields the
/// saturation of the homogenization by dividing out powers of `x_v`, and
/// setting `h = 1` gives back the saturation of `I`.
fn saturate_variable(gb: &GroebnerBasis, v: usize, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    let ring = gb.ring();
    let n = ring.nvars();
    let h = fresh_name(ring, "h");
    // old variable u sits at position to_last[u]; h at n - 1, x_v at n
    let mut to_last: Vec<usize> = (0..n).map(|u| if u < v { u } else { u.saturating_sub(1) }).collect();
    to_last[v] = n;
    let names = (0..n)
        .filter(|&u| u != v)
        .map(|u| ring.names()[u].clone())
        .chain([h, ring.names()[v].clone()]);
    let permuted = Ring::new(names, MonomialOrder::GRevLex)?;
    let homogenized: Vec<Polynomial> = gb
        .polys()
        .iter()
        .map(|p| {
            let d = p.total_degree().unwrap_or(0);
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let moved = m.remap(&to_last);
                    (moved.mul(&Monomial::var_pow(n - 1, (d - m.degree()) as u16)), c.clone())
                })
                .collect();
            Polynomial::from_terms(&permuted, terms)
        })
        .collect();
    let pgb = buchberger(&permuted, &homogenized, budget)?;
    let mut back = vec![0; n + 1];
    for u in 0..n {
        back[to_last[u]] = u;
    }
    let divided: Vec<Polynomial> = pgb
        .polys()
        .iter()
        .map(|p| {
            let e = p.terms().iter().map(|(m, _)| m.exponent(n)).min().unwrap_or(0);
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exponents()[..=n].to_vec();
                    exps[n] -= e;
                    exps[n - 1] = 0;
                    (Monomial::from_exponents(&exps).remap(&back), c.clone())
                })
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    buchberger(ring, &divided, budget)
}

/// Splits off the monomial content: the variables dividing every term, and
/// the cofactor (dropped when constant).
fn factor_monomial_content(f: &Polynomial) -> Vec<Polynomial> {
    let ring = f.ring();
    let n = ring.nvars();
    let mut common = vec![u16::MAX; n];
    for (m, _) in f.terms() {
        for (v, c) in common.iter_mut().enumerate() {
            *c = (*c).min(m.exponent(v));
        }
    }
    let mut factors = Vec::new();
    for (v, &e) in common.iter().enumerate() {
        if e > 0 {
            factors.push(Polynomial::var(ring, v));
        }
    }
    let content = Monomial::from_exponents(&common);
    let rest = Polynomial::from_terms(
        ring,
        f.terms().iter().map(|(m, c)| (content.quotient_of(m), c.clone())).collect(),
    );
    if !rest.is_constant() {
        factors.push(rest);
    }
    factors
}

/// `(I : f^oo)` for the ideal with Gröbner basis `gb`. Monomial factors of
/// `f` are split off and saturated one at a time.
pub fn saturate(gb: &GroebnerBasis, f: &Polynomial, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroSaturator);
    }
    let mut current = gb.clone();
    for h in factor_monomial_content(f) {
        if current.is_unit() {
            break;
        }
        let nf = current.normal_form(&h);
        if nf.is_zero() {
            // h^1 * 1 lies in I
            return buchberger(gb.ring(), &[Polynomial::one(gb.ring())], budget);
        }
        if nf.is_constant() {
            continue;
        }
        if h.len() == 1 && h.total_degree() == Some(1) && gb.ring().order() == MonomialOrder::GRevLex {
            let v = h.support().trailing_zeros() as usize;
            current = saturate_variable(&current, v, budget)?;
            continue;
        }
        let h = if nf.len() < h.len() { nf } else { h };
        current = saturate_one(&current, &h, budget)?;
    }
    Ok(current)
}

/// Saturates by each polynomial in turn (equal to saturating by their
/// product), smallest degree first, skipping duplicates.
pub fn saturate_by_each(gb: &GroebnerBasis, fs: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    let mut fs: Vec<Polynomial> = fs.iter().map(Polynomial::monic).collect();
    fs.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then(a.len().cmp(&b.len()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    fs.dedup();
    let mut current = gb.clone();
    for f in &fs {
        if current.is_unit() {
            break;
        }
        current = saturate(&current, f, budget)?;
    }
    Ok(current)
}

/// `g` vanishes on the variety of the ideal (Rabinowitsch trick).
pub fn radical_contains(gb: &GroebnerBasis, g: &Polynomial, budget: &Budget) -> Result<bool, PolyError> {
    if g.is_zero() || gb.contains(g) {
        return Ok(true);
    }
    Ok(saturate(gb, g, budget)?.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{is_groebner_basis, parse_polynomial};

    fn setup(names: &[&str]) -> Arc<Ring> {
        Ring::new(names.iter().copied(), MonomialOrder::GRevLex).unwrap()
    }

    fn gb(r: &Arc<Ring>, texts: &[&str]) -> GroebnerBasis {
        let gens: Vec<Polynomial> = texts.iter().map(|t| parse_polynomial(r, t).unwrap()).collect();
        buchberger(r, &gens, &Budget::unlimited()).unwrap()
    }

    fn p(r: &Arc<Ring>, t: &str) -> Polynomial {
        parse_polynomial(r, t).unwrap()
    }

    fn strings(g: &GroebnerBasis) -> Vec<String> {
        g.polys().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn elimination_examples() {
        let r = setup(&["t", "x"]);
        let gens = [p(&r, "t*x-1")];
        assert!(eliminate(&r, &gens, &[0], &Budget::unlimited()).unwrap().is_zero_ideal());

        let r = setup(&["x", "y", "z"]);
        let gens = [p(&r, "y-x^2"), p(&r, "z-x^3")];
        let e = eliminate(&r, &gens, &[0], &Budget::unlimited()).unwrap();
        assert_eq!(strings(&e), ["y^3-z^2"]);

        let r = setup(&["x", "y"]);
        let gens = [p(&r, "x+y"), p(&r, "x-y")];
        assert_eq!(strings(&eliminate(&r, &gens, &[0], &Budget::unlimited()).unwrap()), ["y"]);
    }

    #[test]
    fn saturation_examples() {
        let r = setup(&["x", "y"]);
        let b = Budget::unlimited();
        assert_eq!(strings(&saturate(&gb(&r, &["x*y"]), &p(&r, "x"), &b).unwrap()), ["y"]);
        assert!(saturate(&gb(&r, &["x^2"]), &p(&r, "x"), &b).unwrap().is_unit());
        assert_eq!(strings(&saturate(&gb(&r, &["x^2-x"]), &p(&r, "x"), &b).unwrap()), ["x-1"]);
        // non-monomial saturator
        let s = saturate(&gb(&r, &["x^2*y-x*y", "y^2-y"]), &p(&r, "x-1"), &b).unwrap();
        assert!(is_groebner_basis(s.polys()));
        assert!(s.contains(&p(&r, "x*y")));
        assert!(saturate(&gb(&r, &["x"]), &p(&r, "0"), &b).is_err());
    }

    #[test]
    fn saturation_is_idempotent_and_sound() {
        let r = setup(&["x", "y", "z"]);
        let b = Budget::unlimited();
        let i = gb(&r, &["x*y*z-x*z", "x^2*y-y^2*x", "z^2*x-z*x"]);
        let f = p(&r, "x*z+y");
        let once = saturate(&i, &f, &b).unwrap();
        let twice = saturate(&once, &f, &b).unwrap();
        assert_eq!(once, twice);
        for g in i.polys() {
            assert!(once.contains(g));
        }
    }

    #[test]
    fn radical_membership() {
        let r = setup(&["x", "y"]);
        let b = Budget::unlimited();
        let i = gb(&r, &["x^2", "y"]);
        assert!(!i.contains(&p(&r, "x")));
        assert!(radical_contains(&i, &p(&r, "x"), &b).unwrap());
        assert!(!radical_contains(&i, &p(&r, "x+1"), &b).unwrap());
    }
}
