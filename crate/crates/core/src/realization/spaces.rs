use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use super::{coordinatize, find_frame_relabeling, poly_det, CoordinatizedMatroid, Entry, RealizationError};
use crate::linalg::{QMatrix, Rational};
use crate::matroid::Matroid;
use crate::subsets;
use crate::poly::{
    buchberger, eliminate, radical_contains, saturate, saturate_by_each, Budget, GroebnerBasis, MonomialOrder, PolyError,
    Polynomial, Ring,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    R,
    S,
}

/// How the isotropy conditions enter the self-projecting computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SpMode {
    /// Solves the diagonal conditions for the identity-column multipliers and
    /// fixes the last multiplier to 1 (isotropy is homogeneous in lambda).
    #[default]
    Substituted,
    /// One multiplier per column, all `k(k+1)/2` entries of `X L X^t`.
    Literal,
}

#[derive(Clone, Copy, Debug)]
pub struct RealizationOptions {
    pub seconds: Option<f64>,
    pub max_steps: Option<u64>,
    pub frame: bool,
    pub mode: SpMode,
    /// Try the generic-kernel certificate before eliminating multipliers.
    pub shortcut: bool,
}

impl Default for RealizationOptions {
    fn default() -> Self {
        RealizationOptions {
            seconds: Some(360.0),
            max_steps: None,
            frame: false,
            mode: SpMode::Substituted,
            shortcut: true,
        }
    }
}

impl RealizationOptions {
    pub fn unlimited() -> Self {
        RealizationOptions {
            seconds: None,
            ..Self::default()
        }
    }

    fn budget(&self) -> Budget {
        let mut b = match self.seconds {
            Some(s) => Budget::seconds(s),
            None => Budget::unlimited(),
        };
        b.max_steps = self.max_steps;
        b
    }
}

/// A realization ideal in the coordinates of `coordinates`, localized at
/// `inverted` (the ideal is already saturated by them).
#[derive(Clone, Debug)]
pub struct RealizationSpace {
    pub kind: SpaceKind,
    pub coordinates: Arc<CoordinatizedMatroid>,
    /// Reduced Gröbner basis; `None` after a timeout.
    pub ideal: Option<GroebnerBasis>,
    /// Last known generators when the computation timed out.
    pub partial: Vec<Polynomial>,
    pub inverted: Vec<Polynomial>,
    pub dimension: Option<i64>,
    pub elapsed: Duration,
    /// The self-projecting space was certified dense in the realization
    /// space without elimination.
    pub shortcut: bool,
}

impl RealizationSpace {
    pub fn timed_out(&self) -> bool {
        self.ideal.is_none()
    }

    pub fn is_empty(&self) -> Option<bool> {
        self.dimension.map(|d| d < 0)
    }

    pub fn generators(&self) -> &[Polynomial] {
        match &self.ideal {
            Some(gb) => gb.polys(),
            None => &self.partial,
        }
    }

    fn finish(
        kind: SpaceKind,
        coordinates: Arc<CoordinatizedMatroid>,
        inverted: Vec<Polynomial>,
        result: Result<GroebnerBasis, PolyError>,
        start: Instant,
    ) -> Result<Self, RealizationError> {
        let (ideal, partial) = match result {
            Ok(gb) => (Some(gb), Vec::new()),
            Err(PolyError::Timeout { partial, .. }) => (None, partial),
            Err(e) => return Err(e.into()),
        };
        Ok(RealizationSpace {
            kind,
            coordinates,
            dimension: ideal.as_ref().map(GroebnerBasis::dimension),
            ideal,
            partial,
            inverted,
            elapsed: start.elapsed(),
            shortcut: false,
        })
    }
}

fn unit_basis(ring: &Arc<Ring>) -> GroebnerBasis {
    buchberger(ring, &[Polynomial::one(ring)], &Budget::unlimited()).expect("trivial basis")
}

/// Distinct non-constant basis minors (made monic), or `None` when some
/// basis minor vanishes identically.
fn localization_set(c: &CoordinatizedMatroid) -> Option<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for m in c.basis_minors() {
        if m.is_zero() {
            return None;
        }
        if m.is_constant() {
            continue;
        }
        let m = m.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Some(out)
}

fn coordinates_for(m: &Matroid, opts: &RealizationOptions) -> CoordinatizedMatroid {
    if opts.frame {
        if let Some(c) = find_frame_relabeling(m) {
            return c;
        }
    }
    coordinatize(m)
}

/// Realization space: nonbasis minors vanish, basis minors are inverted.
pub fn realization_space(m: &Matroid, opts: &RealizationOptions) -> Result<RealizationSpace, RealizationError> {
    realization_space_in(Arc::new(coordinates_for(m, opts)), opts)
}

pub(crate) fn realization_space_in(
    c: Arc<CoordinatizedMatroid>,
    opts: &RealizationOptions,
) -> Result<RealizationSpace, RealizationError> {
    let start = Instant::now();
    let budget = opts.budget();
    let ring = c.ring().clone();
    let Some(inverted) = localization_set(&c) else {
        return RealizationSpace::finish(SpaceKind::R, c, Vec::new(), Ok(unit_basis(&ring)), start);
    };
    let gens: Vec<Polynomial> = c.nonbasis_minors().into_iter().filter(|p| !p.is_zero()).collect();
    let result = buchberger(&ring, &gens, &budget).and_then(|gb| {
        if gb.is_zero_ideal() || gb.is_unit() {
            Ok(gb)
        } else {
            saturate_by_each(&gb, &inverted, &budget)
        }
    });
    RealizationSpace::finish(SpaceKind::R, c, inverted, result, start)
}

/// Self-projecting part of the realization space, computed from scratch
/// (including the realization ideal).
pub fn sp_realization_space(m: &Matroid, opts: &RealizationOptions) -> Result<RealizationSpace, RealizationError> {
    let r = realization_space(m, opts)?;
    sp_realization_space_from(&r, opts)
}

/// Self-projecting part of an already computed realization space.
pub fn sp_realization_space_from(
    r: &RealizationSpace,
    opts: &RealizationOptions,
) -> Result<RealizationSpace, RealizationError> {
    let start = Instant::now();
    let c = r.coordinates.clone();
    let budget = opts.budget();
    let Some(rgb) = &r.ideal else {
        return RealizationSpace::finish(
            SpaceKind::S,
            c,
            r.inverted.clone(),
            Err(PolyError::Timeout {
                steps: 0,
                partial: r.partial.clone(),
            }),
            start,
        );
    };
    if rgb.is_unit() {
        return RealizationSpace::finish(SpaceKind::S, c, r.inverted.clone(), Ok(rgb.clone()), start);
    }
    if opts.shortcut {
        match generically_isotropic(&c, rgb, &budget) {
            Ok(true) => {
                let mut space = RealizationSpace::finish(SpaceKind::S, c, r.inverted.clone(), Ok(rgb.clone()), start)?;
                space.shortcut = true;
                return Ok(space);
            }
            Ok(false) => {}
            Err(e) if e.is_timeout() => {}
            Err(e) => return Err(e.into()),
        }
    }
    let result = match opts.mode {
        SpMode::Substituted => substituted(&c, rgb, &budget),
        SpMode::Literal => literal(&c, rgb, &budget),
    }
    .and_then(|gb| {
        if gb.is_unit() || gb.is_zero_ideal() {
            Ok(gb)
        } else {
            saturate_by_each(&gb, &r.inverted, &budget)
        }
    });
    RealizationSpace::finish(SpaceKind::S, c, r.inverted.clone(), result, start)
}

/// Ring with `lambdas` multiplier variables in front of the matrix
/// variables, and the symbolic matrix embedded in it.
fn extended(c: &CoordinatizedMatroid, lambdas: &[String]) -> Result<(Arc<Ring>, Vec<Vec<Polynomial>>), PolyError> {
    let mut names: Vec<String> = lambdas.to_vec();
    names.extend(c.ring().names().iter().cloned());
    let ring = Ring::new(names, MonomialOrder::GRevLex)?;
    let shift = lambdas.len();
    let matrix = c
        .entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Entry::Zero => Polynomial::zero(&ring),
                    Entry::One => Polynomial::one(&ring),
                    Entry::Var(v) => Polynomial::var(&ring, v + shift),
                })
                .collect()
        })
        .collect();
    Ok((ring, matrix))
}

fn lambda_names(c: &CoordinatizedMatroid, cols: impl Iterator<Item = usize>) -> Vec<String> {
    cols.map(|j| {
        let mut name = format!("l{}", j + 1);
        while c.ring().index_of(&name).is_some() {
            name.push('_');
        }
        name
    })
    .collect()
}

fn embed(polys: &[Polynomial], ring: &Arc<Ring>, shift: usize) -> Vec<Polynomial> {
    polys
        .iter()
        .map(|p| {
            let map: Vec<usize> = (0..p.ring().nvars()).map(|v| v + shift).collect();
            p.to_ring(ring, &map)
        })
        .collect()
}

/// Saturates by the multipliers and the extra polynomials, eliminates the
/// multipliers and returns the result in the matrix ring.
fn finish_elimination(
    c: &CoordinatizedMatroid,
    ring: &Arc<Ring>,
    gens: Vec<Polynomial>,
    nlambda: usize,
    extra: Vec<Polynomial>,
    budget: &Budget,
) -> Result<GroebnerBasis, PolyError> {
    let gb = buchberger(ring, &gens, budget)?;
    let mut sat: Vec<Polynomial> = (0..nlambda).map(|i| Polynomial::var(ring, i)).collect();
    sat.extend(extra);
    let gb = saturate_by_each(&gb, &sat, budget)?;
    if gb.is_unit() {
        return Ok(unit_basis(c.ring()));
    }
    let elim: Vec<usize> = (0..nlambda).collect();
    let e = eliminate(ring, gb.polys(), &elim, budget)?;
    let back: Vec<usize> = (0..ring.nvars()).map(|v| v.saturating_sub(nlambda)).collect();
    let polys: Vec<Polynomial> = e.polys().iter().map(|p| p.to_ring(c.ring(), &back)).collect();
    buchberger(c.ring(), &polys, budget)
}

/// Fixed pseudo-random coefficients for generic linear combinations.
fn coefficients() -> impl Iterator<Item = Rational> {
    (1u64..).map(|j| Rational::from_integer(((j * 7919 + 13) % 101 + 1).into()))
}

fn combination(ring: &Arc<Ring>, polys: impl Iterator<Item = Polynomial>) -> Polynomial {
    polys
        .zip(coefficients())
        .fold(Polynomial::zero(ring), |acc, (p, a)| &acc + &p.scale(&a))
}

/// `f` vanishes on no component of the variety of `gb`.
fn nonzerodivisor_mod_radical(gb: &GroebnerBasis, f: &Polynomial, budget: &Budget) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Ok(false);
    }
    let sat = saturate(gb, f, budget)?;
    for g in sat.polys() {
        if !gb.contains(g) && !radical_contains(gb, g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certificate that isotropic multipliers exist on a dense subset of every
/// component of the realization space, in which case the two spaces agree.
///
/// The off-diagonal conditions read `A(x) mu = 0` for the multipliers `mu` of
/// the non-identity columns. Where `A` has full row rank `r`, its kernel is
/// spanned by the Cramer vectors of the `(r+1)`-column submatrices, and a
/// kernel vector avoiding finitely many hyperplanes exists iff each
/// hyperplane misses one of them. Both conditions are tested on generic
/// combinations; `Ok(false)` means inconclusive.
fn generically_isotropic(c: &CoordinatizedMatroid, rgb: &GroebnerBasis, budget: &Budget) -> Result<bool, PolyError> {
    let (k, n) = (c.k(), c.n());
    let ring = c.ring();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let r = pairs.len();
    let m = n - k;
    if r >= m {
        return Ok(false);
    }
    let y = |i: usize, col: usize| c.entry_poly(i, k + col);
    let a: Vec<Vec<Polynomial>> = pairs
        .iter()
        .map(|&(i, j)| (0..m).map(|col| &y(i, col) * &y(j, col)).collect())
        .collect();
    let minor = |cols: &[usize]| -> Polynomial {
        let sub: Vec<Vec<Polynomial>> = a.iter().map(|row| cols.iter().map(|&col| row[col].clone()).collect()).collect();
        poly_det(ring, &sub)
    };
    let full_rank = combination(
        ring,
        subsets::k_subsets_revlex(m, r)
            .into_iter()
            .map(|s| minor(&subsets::elements(s).collect::<Vec<_>>())),
    );
    if !nonzerodivisor_mod_radical(rgb, &full_rank, budget)? {
        return Ok(false);
    }
    let cramer: Vec<Vec<Polynomial>> = subsets::k_subsets_revlex(m, r + 1)
        .into_iter()
        .map(|t| {
            let cols: Vec<usize> = subsets::elements(t).collect();
            let mut v = vec![Polynomial::zero(ring); m];
            for (pos, &col) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != col).collect();
                let d = minor(&rest);
                v[col] = if pos % 2 == 0 { d } else { -&d };
            }
            v
        })
        .collect();
    // the forms lambda_col and q_i = sum_col y_{i,col}^2 lambda_col
    let mut forms: Vec<Vec<Polynomial>> = (0..m)
        .map(|col| {
            (0..m)
                .map(|d| if d == col { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                .collect()
        })
        .collect();
    forms.extend((0..k).map(|i| (0..m).map(|col| &y(i, col) * &y(i, col)).collect()));
    for form in &forms {
        let values = cramer.iter().map(|v| {
            v.iter()
                .zip(form)
                .fold(Polynomial::zero(ring), |acc, (a, b)| &acc + &(a * b))
        });
        if !nonzerodivisor_mod_radical(rgb, &combination(ring, values), budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn literal(c: &CoordinatizedMatroid, rgb: &GroebnerBasis, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    let (k, n) = (c.k(), c.n());
    let names = lambda_names(c, 0..n);
    let (ring, x) = extended(c, &names)?;
    let mut gens = embed(rgb.polys(), &ring, n);
    for i in 0..k {
        for j in i..k {
            let mut entry = Polynomial::zero(&ring);
            for col in 0..n {
                let term = &(&x[i][col] * &x[j][col]) * &Polynomial::var(&ring, col);
                entry = &entry + &term;
            }
            gens.push(entry);
        }
    }
    finish_elimination(c, &ring, gens, n, Vec::new(), budget)
}

fn substituted(c: &CoordinatizedMatroid, rgb: &GroebnerBasis, budget: &Budget) -> Result<GroebnerBasis, PolyError> {
    let (k, n) = (c.k(), c.n());
    if n <= k {
        // no columns outside the identity: lambda_i = 0 is forced
        return Ok(unit_basis(c.ring()));
    }
    // multipliers of columns k..n-2; the last one is fixed to 1
    let names = lambda_names(c, k..n - 1);
    let nl = names.len();
    let (ring, x) = extended(c, &names)?;
    let lambda = |col: usize| -> Polynomial {
        if col == n - 1 {
            Polynomial::one(&ring)
        } else {
            Polynomial::var(&ring, col - k)
        }
    };
    let bilinear = |i: usize, j: usize| -> Polynomial {
        let mut acc = Polynomial::zero(&ring);
        for col in k..n {
            acc = &acc + &(&(&x[i][col] * &x[j][col]) * &lambda(col));
        }
        acc
    };
    let mut gens = embed(rgb.polys(), &ring, nl);
    for i in 0..k {
        for j in i + 1..k {
            gens.push(bilinear(i, j));
        }
    }
    // lambda_i = -q_i for the identity columns must be nonzero
    let diagonal: Vec<Polynomial> = (0..k).map(|i| bilinear(i, i)).collect();
    if diagonal.iter().any(Polynomial::is_zero) {
        return Ok(unit_basis(c.ring()));
    }
    finish_elimination(c, &ring, gens, nl, diagonal, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// `certificate` vanishes on the self-projecting space but not on the
    /// whole realization space.
    SStrictlySmaller { certificate: Polynomial },
    SEmptyRNonempty,
    BothEmpty,
    Undetermined,
}

impl Comparison {
    pub fn label(&self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::SStrictlySmaller { .. } => "S-strictly-smaller",
            Comparison::SEmptyRNonempty => "S-empty-R-nonempty",
            Comparison::BothEmpty => "both-empty",
            Comparison::Undetermined => "undetermined",
        }
    }
}

/// Compares the realization space with its self-projecting part, up to
/// radical: equal when every generator of the latter vanishes on the former.
pub fn compare_spaces(
    r: &RealizationSpace,
    s: &RealizationSpace,
    budget: &Budget,
) -> Result<Comparison, RealizationError> {
    if r.coordinates != s.coordinates {
        return Err(RealizationError::CoordinateMismatch);
    }
    let (Some(rgb), Some(sgb)) = (&r.ideal, &s.ideal) else {
        return Ok(Comparison::Undetermined);
    };
    for g in rgb.polys() {
        if !sgb.contains(g) {
            return Err(RealizationError::Inconsistent(format!(
                "realization generator {g} missing from the self-projecting ideal"
            )));
        }
    }
    match (rgb.is_unit(), sgb.is_unit()) {
        (true, _) => return Ok(Comparison::BothEmpty),
        (false, true) => return Ok(Comparison::SEmptyRNonempty),
        _ => {}
    }
    for g in sgb.polys() {
        if rgb.contains(g) {
            continue;
        }
        match radical_contains(rgb, g, budget) {
            Ok(true) => {}
            Ok(false) => return Ok(Comparison::SStrictlySmaller { certificate: g.clone() }),
            Err(e) if e.is_timeout() => return Ok(Comparison::Undetermined),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Comparison::Equal)
}

/// The unique point of a space cut out by linear equations, as a matrix in
/// the relabeled coordinates.
pub fn rational_point(space: &RealizationSpace) -> Option<QMatrix> {
    let gb = space.ideal.as_ref()?;
    let ring = space.coordinates.ring();
    let nv = ring.nvars();
    if gb.is_unit() || gb.dimension() != 0 || gb.polys().iter().any(|p| p.total_degree() != Some(1)) {
        return None;
    }
    // reduced and zero-dimensional with linear generators: each is x_v - c
    let mut values = vec![Rational::zero(); nv];
    for p in gb.polys() {
        let lm = p.leading_monomial()?;
        let v = (0..nv).find(|&v| lm.exponent(v) == 1)?;
        let constant = p
            .terms()
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero);
        if p.len() > 2 || (p.len() == 2 && constant.is_zero()) {
            return None;
        }
        values[v] = -constant;
    }
    let c = &space.coordinates;
    let mut m = QMatrix::zeros(c.k(), c.n());
    for i in 0..c.k() {
        for j in 0..c.n() {
            let v = match c.entries()[i][j] {
                Entry::Zero => Rational::zero(),
                Entry::One => Rational::one(),
                Entry::Var(v) => values[v].clone(),
            };
            m.set(i, j, v);
        }
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::from_elements;

    fn opts() -> RealizationOptions {
        RealizationOptions::unlimited()
    }

    #[test]
    fn uniform_two_four_spaces() {
        let m = Matroid::uniform(2, 4);
        let r = realization_space(&m, &opts()).unwrap();
        assert_eq!(r.dimension, Some(1));
        let s = sp_realization_space_from(&r, &opts()).unwrap();
        assert_eq!(s.dimension, Some(1));
        assert_eq!(compare_spaces(&r, &s, &Budget::unlimited()).unwrap(), Comparison::Equal);
    }

    #[test]
    fn literal_and_substituted_agree() {
        for m in [
            Matroid::uniform(2, 4),
            Matroid::uniform(2, 5),
            Matroid::from_nonbases(6, 3, &[from_elements([0, 1, 2]), from_elements([3, 4, 5])]).unwrap(),
        ] {
            let r = realization_space(&m, &opts()).unwrap();
            let full = RealizationOptions {
                shortcut: false,
                ..opts()
            };
            let a = sp_realization_space_from(&r, &full).unwrap();
            let lit = RealizationOptions {
                mode: SpMode::Literal,
                ..full
            };
            let b = sp_realization_space_from(&r, &lit).unwrap();
            assert_eq!(a.ideal, b.ideal, "{m:?}");
        }
    }

    #[test]
    fn half_coloop_kills_self_projecting_space() {
        // rank 2: classes {1,2},{3}: 3 is a half-coloop
        let m = Matroid::from_bases(3, 2, [from_elements([0, 2]), from_elements([1, 2])]).unwrap();
        let r = realization_space(&m, &opts()).unwrap();
        assert_eq!(r.is_empty(), Some(false));
        let s = sp_realization_space_from(&r, &opts()).unwrap();
        assert_eq!(s.is_empty(), Some(true));
    }

    #[test]
    fn timeout_is_reported() {
        let m = Matroid::uniform(3, 7);
        let o = RealizationOptions {
            max_steps: Some(3),
            shortcut: false,
            ..opts()
        };
        let r = realization_space(&m, &opts()).unwrap();
        let s = sp_realization_space_from(&r, &o).unwrap();
        assert!(s.timed_out());
        assert_eq!(s.dimension, None);
        assert_eq!(compare_spaces(&r, &s, &Budget::unlimited()).unwrap(), Comparison::Undetermined);
    }

    #[test]
    fn shortcut_agrees_with_elimination() {
        let full = RealizationOptions {
            shortcut: false,
            ..opts()
        };
        for m in crate::catalog::enumerate_simple_rank3(7) {
            if !m.is_self_projecting() {
                continue;
            }
            let r = realization_space(&m, &opts()).unwrap();
            let fast = sp_realization_space_from(&r, &opts()).unwrap();
            let slow = sp_realization_space_from(&r, &full).unwrap();
            assert_eq!(fast.dimension, slow.dimension);
            let b = Budget::unlimited();
            assert_eq!(
                compare_spaces(&r, &fast, &b).unwrap().label(),
                compare_spaces(&r, &slow, &b).unwrap().label()
            );
        }
    }
}
