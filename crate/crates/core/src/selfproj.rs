//! Self-projectivity of explicit rational point configurations.
//!
//! A full-rank `k x n` matrix `X` is self-projecting when some `lambda` with
//! all coordinates nonzero makes `X diag(lambda) X^t` vanish. Since that
//! expression is linear in `lambda`, the question is whether the right kernel
//! of the multi-Veronese matrix meets the torus.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    cocircuit_matrix, multi_veronese, pluecker, primitive_integer_vector, shuffle_sign, LinalgError, PlueckerVector,
    QMatrix, Rational,
};
use crate::subsets::{self, Set};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfProjError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("lambda has length {got}, expected {expected}")]
    LambdaLength { expected: usize, got: usize },
    #[error("witness coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("sign vector entries must be +1 or -1, found {0}")]
    BadSign(i64),
    #[error("the self-dual relation needs n = 2k, got k = {k}, n = {n}")]
    NotHalf { k: usize, n: usize },
}

/// A torus vector certifying isotropy. No coordinate is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness(Vec<Rational>);

impl Witness {
    pub fn new(lambda: Vec<Rational>) -> Result<Self, SelfProjError> {
        if let Some(i) = lambda.iter().position(Zero::is_zero) {
            return Err(SelfProjError::ZeroCoordinate(i + 1));
        }
        Ok(Witness(lambda))
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A vector of signs `+1`/`-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self, SelfProjError> {
        if let Some(&bad) = entries.iter().find(|&&s| s != 1 && s != -1) {
            return Err(SelfProjError::BadSign(bad as i64));
        }
        Ok(SignVector(entries))
    }

    /// Bit `i` of `positive` set means `+1` at position `i`.
    pub fn from_mask(n: usize, positive: Set) -> Self {
        SignVector((0..n).map(|i| if subsets::contains(positive, i) { 1 } else { -1 }).collect())
    }

    pub fn positive_mask(&self) -> Set {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .fold(0, |acc, (i, _)| acc | subsets::singleton(i))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }

    /// `min(#positive, #negative)`.
    pub fn signature(&self) -> usize {
        let pos = self.0.iter().filter(|&&s| s > 0).count();
        pos.min(self.0.len() - pos)
    }

    pub fn sign_changes(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&s| Rational::from_integer((s as i64).into())).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// `nu(X)` has trivial right kernel.
    KernelTrivial,
    /// 0-based coordinates vanishing on the whole kernel.
    VanishingCoordinates(Vec<usize>),
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::KernelTrivial => write!(f, "kernel trivial"),
            Refusal::VanishingCoordinates(c) => {
                let list: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "coordinates {} vanish on the kernel", list.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SelfProjecting(Witness),
    Refused(Refusal),
}

impl Certificate {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Certificate::SelfProjecting(w) => Some(w),
            Certificate::Refused(_) => None,
        }
    }
}

/// Decides self-projectivity of the row space of `x` and produces a witness.
pub fn certify_self_projecting(x: &QMatrix) -> Result<Certificate, SelfProjError> {
    let (k, n) = (x.rows(), x.cols());
    let rank = x.rank();
    if rank < k {
        return Err(LinalgError::NotAPoint { k, n, rank }.into());
    }
    let kernel = multi_veronese(x).kernel_basis();
    if kernel.is_empty() {
        return Ok(Certificate::Refused(Refusal::KernelTrivial));
    }
    let vanishing: Vec<usize> = (0..n).filter(|&i| kernel.iter().all(|v| v[i].is_zero())).collect();
    if !vanishing.is_empty() {
        return Ok(Certificate::Refused(Refusal::VanishingCoordinates(vanishing)));
    }
    // each coordinate of sum_j t^j v_j is a nonzero polynomial in t, so some
    // integer t avoids all their roots
    let mut t: i64 = 1;
    loop {
        let tq = Rational::from_integer(t.into());
        let mut combo = vec![Rational::zero(); n];
        let mut power = Rational::one();
        for v in &kernel {
            for (c, vi) in combo.iter_mut().zip(v) {
                *c += &power * vi;
            }
            power *= &tq;
        }
        if combo.iter().all(|c| !c.is_zero()) {
            let lambda = primitive_integer_vector(&combo);
            return Ok(Certificate::SelfProjecting(Witness::new(lambda)?));
        }
        t += 1;
    }
}

fn check_len(lambda: &[Rational], n: usize) -> Result<(), SelfProjError> {
    if lambda.len() != n {
        return Err(SelfProjError::LambdaLength { expected: n, got: lambda.len() });
    }
    Ok(())
}

/// `X diag(lambda) X^t`.
pub fn stiefel_residual(x: &QMatrix, lambda: &[Rational]) -> Result<QMatrix, SelfProjError> {
    check_len(lambda, x.cols())?;
    Ok(x.scale_columns(lambda)?.mul(&x.transpose())?)
}

/// `D diag(lambda) D^t` for the cocircuit matrix `D` of `q`.
pub fn cocircuit_residual(q: &PlueckerVector, lambda: &[Rational]) -> Result<QMatrix, SelfProjError> {
    check_len(lambda, q.n())?;
    let d = cocircuit_matrix(q);
    Ok(d.scale_columns(lambda)?.mul(&d.transpose())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfDualCheck {
    /// `q_{I^c} = c * sign(I, I^c) * lambda_I * q_I` for every `I`, with
    /// `c^2 * prod(lambda) = 1`.
    Holds { c: Rational },
    /// The product of the `lambda_i` is not a rational square; the squared
    /// relation and sign consistency hold.
    HoldsOverExtension,
    /// `first_failing` is the first k-subset (revlex) violating the relation,
    /// when there is one.
    Fails { first_failing: Option<Set> },
}

impl SelfDualCheck {
    pub fn holds(&self) -> bool {
        !matches!(self, SelfDualCheck::Fails { .. })
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (num, den) = (r.numer().sqrt(), r.denom().sqrt());
    (&num * &num == *r.numer() && &den * &den == *r.denom()).then(|| Rational::new(num, den))
}

/// Checks the Plücker form of isotropy for `n = 2k`: complementary
/// coordinates agree up to `lambda` and one global constant.
pub fn check_selfdual_relation(x: &QMatrix, lambda: &[Rational]) -> Result<SelfDualCheck, SelfProjError> {
    let (k, n) = (x.rows(), x.cols());
    if n != 2 * k {
        return Err(SelfProjError::NotHalf { k, n });
    }
    check_len(lambda, n)?;
    let q = pluecker(x)?;
    let isotropic = stiefel_residual(x, lambda)?.is_zero();
    let product: Rational = lambda.iter().product();
    let ground = subsets::full(n);
    let lambda_of = |s: Set| -> Rational { subsets::elements(s).map(|i| lambda[i].clone()).product() };

    // ratio q_{I^c} / (sign * lambda_I * q_I), whenever defined
    let mut constant: Option<Rational> = None;
    let mut first_bad: Option<Set> = None;
    for set in subsets::k_subsets_revlex(n, k) {
        let comp = ground & !set;
        let lhs = q.get(comp);
        let mut rhs = lambda_of(set) * q.get(set);
        if shuffle_sign(set, comp) < 0 {
            rhs = -rhs;
        }
        let consistent = if rhs.is_zero() {
            lhs.is_zero()
        } else {
            let r = lhs / rhs;
            match &constant {
                None => {
                    constant = Some(r);
                    true
                }
                Some(c) => *c == r,
            }
        };
        if !consistent {
            first_bad = Some(set);
            break;
        }
    }
    if !isotropic || first_bad.is_some() {
        return Ok(SelfDualCheck::Fails { first_failing: first_bad });
    }
    let c = constant.expect("a full-rank matrix has a nonzero Plücker coordinate");
    if rational_sqrt(&product).is_none() {
        // squared form: c^2 * prod(lambda) = 1 is impossible over Q, so the
        // relation lives over Q(sqrt(prod))
        return Ok(if &c * &c * &product == Rational::one() {
            SelfDualCheck::HoldsOverExtension
        } else {
            SelfDualCheck::Fails { first_failing: None }
        });
    }
    if &c * &c * &product == Rational::one() {
        Ok(SelfDualCheck::Holds { c })
    } else {
        Ok(SelfDualCheck::Fails { first_failing: None })
    }
}

/// The real orthogonal Grassmannian of the form `diag(sv)` has `k`-dimensional
/// isotropic points iff the signature is at least `k`.
pub fn ogr_nonempty(sv: &SignVector, k: usize) -> bool {
    sv.signature() >= k
}

/// Some `2k` positions carry alternating signs.
pub fn positive_lambda_filter(sv: &SignVector, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    sv.len() >= 2 * k && sv.sign_changes() + 1 >= 2 * k
}

/// `(I - S)(I + S)^{-1}` for a skew-symmetric `S`; orthogonal and rational.
pub fn cayley_transform(skew: &QMatrix) -> Result<QMatrix, LinalgError> {
    let k = skew.rows();
    if k != skew.cols() {
        return Err(LinalgError::NotSquare(k, skew.cols()));
    }
    for i in 0..k {
        for j in 0..k {
            if *skew.get(i, j) != -skew.get(j, i).clone() {
                return Err(LinalgError::DimensionMismatch("matrix is not skew-symmetric".into()));
            }
        }
    }
    let id = QMatrix::identity(k);
    let mut minus = id.clone();
    let mut plus = id;
    for i in 0..k {
        for j in 0..k {
            minus.set(i, j, minus.get(i, j) - skew.get(i, j));
            plus.set(i, j, plus.get(i, j) + skew.get(i, j));
        }
    }
    let inv = plus.inverse().expect("I + S is invertible for real skew S");
    minus.mul(&inv)
}

/// Skew-symmetric matrix with the given strictly-upper entries, row by row.
pub fn skew_from_upper(k: usize, upper: &[Rational]) -> QMatrix {
    assert_eq!(upper.len(), k * (k - 1) / 2, "wrong number of entries");
    let mut s = QMatrix::zeros(k, k);
    let mut it = upper.iter();
    for i in 0..k {
        for j in i + 1..k {
            let v = it.next().expect("counted").clone();
            s.set(j, i, -v.clone());
            s.set(i, j, v);
        }
    }
    s
}

/// `(Id_k | R)` with `R` orthogonal, isotropic for `(1^k, (-1)^k)`.
pub fn cayley_point(k: usize, upper: &[Rational]) -> QMatrix {
    let r = cayley_transform(&skew_from_upper(k, upper)).expect("skew by construction");
    QMatrix::identity(k).hcat(&r).expect("same row count")
}

/// `(1^k, (-1)^k)`.
pub fn split_signature_lambda(k: usize) -> Vec<Rational> {
    (0..2 * k)
        .map(|i| Rational::from_integer(if i < k { 1.into() } else { (-1).into() }))
        .collect()
}
