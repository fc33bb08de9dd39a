use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{FieldSpec, MultiPoly, RatFunc, Scalar};
use crate::dconst::{coefficient_matrix, forms_matrix, DConstant};
use crate::exterior::{PolyForm, RatForm};
use crate::linalg::ff_kernel;

use super::certificate::{integral_residual, tangency_residual};
use super::{build_logform, cofactor, Certificate, Cofactor, DarbouxError, LogForm, Witness};

#[derive(Clone, Debug, PartialEq)]
pub enum FirstIntegral {
    Rational(RatFunc),
    /// `G = Π F_i^{δ_i}`.
    Multiplicative(Vec<(MultiPoly, BigInt)>),
}

impl FirstIntegral {
    pub fn kind(&self) -> &'static str {
        match self {
            FirstIntegral::Rational(_) => "rational",
            FirstIntegral::Multiplicative(_) => "multiplicative",
        }
    }

    /// The integral as a rational function; `None` if an exponent does not fit in `u32`.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self {
            FirstIntegral::Rational(f) => Some(f.clone()),
            FirstIntegral::Multiplicative(factors) => {
                let (field, nvars) = factors.first().map(|(f, _)| (f.field(), f.nvars()))?;
                let mut num = MultiPoly::one(field, nvars);
                let mut den = MultiPoly::one(field, nvars);
                for (f, e) in factors {
                    let k = e.abs().to_u32()?;
                    if e.is_negative() {
                        den = &den * &f.pow(k);
                    } else {
                        num = &num * &f.pow(k);
                    }
                }
                RatFunc::new(num, den).ok()
            }
        }
    }
}

/// Checks `df ≠ 0` and `ω ∧ df = 0` after clearing denominators.
pub fn first_integral_check(omega: &PolyForm, f: &RatFunc) -> Certificate {
    let (_, residual) = integral_residual(omega, f);
    Certificate::new(Witness::RationalIntegral { omega: omega.clone(), function: f.clone(), residual, ratio: None })
}

fn cofactors(omega: &PolyForm, fs: &[MultiPoly]) -> Result<Vec<Cofactor>, DarbouxError> {
    fs.iter().map(|f| cofactor(omega, f)).collect()
}

/// Integer representative of a constant kernel vector.
///
/// Characteristic 0: clear denominators, divide by the gcd, make the first
/// nonzero entry positive. Characteristic `p`: among the nonzero multiples,
/// with entries taken in `[0, p-1]`, pick the one minimizing the largest
/// entry, then the entry sum, then lexicographically.
pub fn normalize_exponents(v: &[Scalar], field: FieldSpec) -> Vec<BigInt> {
    let p = field.characteristic();
    if p == 0 {
        let rats: Vec<BigRational> = v.iter().map(|s| s.as_rational().expect("rational").clone()).collect();
        let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -g } else { g };
        return ints.iter().map(|x| x / &sign).collect();
    }
    let base: Vec<u64> = v.iter().map(|s| s.residue().expect("residue")).collect();
    type Key = (u64, u64, Vec<u64>);
    let mut best: Option<(Key, Vec<u64>)> = None;
    for c in 1..p {
        let cand: Vec<u64> = base.iter().map(|&x| ((x as u128 * c as u128) % p as u128) as u64).collect();
        let key = (*cand.iter().max().unwrap_or(&0), cand.iter().sum::<u64>(), cand.clone());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, cand));
        }
    }
    best.map(|(_, c)| c.into_iter().map(BigInt::from).collect()).unwrap_or_default()
}

#[derive(Clone, Debug)]
pub struct MultiplicativeResult {
    pub integral: FirstIntegral,
    pub exponents: Vec<BigInt>,
    pub logform: LogForm,
    pub certificate: Certificate,
}

/// `G = Π F_i^{δ_i}` from a relation `Σ δ_i Θ_i = 0` with `δ_i` in the prime field.
pub fn multiplicative_integral(omega: &PolyForm, fs: &[MultiPoly]) -> Result<MultiplicativeResult, DarbouxError> {
    if fs.is_empty() {
        return Err(DarbouxError::TooFewInvariants(1));
    }
    let cofs = cofactors(omega, fs)?;
    let forms: Vec<PolyForm> = cofs.iter().map(|c| c.form.clone()).collect();
    if ff_kernel(&forms_matrix(&forms)?.matrix).is_empty() {
        return Err(DarbouxError::NoDependence);
    }
    let constant = ff_kernel(&coefficient_matrix(&forms)?.matrix);
    let Some(v) = constant.first() else { return Err(DarbouxError::NoConstantDependence) };
    let field = omega.field();
    let nvars = omega.nvars();
    let scalars: Vec<Scalar> = v.iter().map(MultiPoly::constant_term).collect();
    let exponents = normalize_exponents(&scalars, field);
    let lambda: Vec<DConstant> =
        exponents.iter().map(|e| DConstant::scalar(field, nvars, field.from_bigint(e))).collect();
    let logform = build_logform(&lambda, fs)?;
    let residual = tangency_residual(omega, &logform);
    let certificate =
        Certificate::new(Witness::MultiplicativeIntegral { omega: omega.clone(), logform: logform.clone(), residual });
    if !certificate.verified {
        return Err(DarbouxError::NotTangent);
    }
    let integral = FirstIntegral::Multiplicative(fs.iter().cloned().zip(exponents.iter().cloned()).collect());
    Ok(MultiplicativeResult { integral, exponents, logform, certificate })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsetStrategy {
    /// Only the two subsets obtained by dropping the last and the first invariant.
    Literal,
    /// Falls back to the remaining subsets and to combinations of the full kernel.
    #[default]
    Exhaustive,
}

impl std::str::FromStr for SubsetStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(SubsetStrategy::Literal),
            "exhaustive" => Ok(SubsetStrategy::Exhaustive),
            other => Err(format!("unknown subset strategy `{other}`")),
        }
    }
}

/// Why candidate pairs were rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairDiagnostics {
    pub candidates: usize,
    pub pairs_tried: usize,
    pub identical_support: usize,
    pub not_proportional: usize,
    pub degenerate: usize,
}

#[derive(Clone, Debug)]
pub struct RationalResult {
    pub function: RatFunc,
    pub eta1: LogForm,
    pub eta2: LogForm,
    pub certificate: Certificate,
    pub diagnostics: PairDiagnostics,
}

impl RationalResult {
    pub fn integral(&self) -> FirstIntegral {
        FirstIntegral::Rational(self.function.clone())
    }
}

struct Candidate {
    stage: usize,
    eta: LogForm,
}

/// Tangent logarithmic forms supported on `subset`, padded with zeros.
fn subset_logforms(
    cofs: &[Cofactor],
    fs: &[MultiPoly],
    subset: &[usize],
) -> Result<Vec<LogForm>, DarbouxError> {
    let picked: Vec<Cofactor> = subset.iter().map(|&i| cofs[i].clone()).collect();
    let field = fs[0].field();
    let nvars = fs[0].nvars();
    let mut out = Vec::new();
    for v in super::cofactor_dependence(&picked)? {
        let mut lambda = vec![DConstant::zero(field, nvars); fs.len()];
        for (k, &i) in subset.iter().enumerate() {
            lambda[i] = v[k].clone();
        }
        out.push(build_logform(&lambda, fs)?);
    }
    Ok(out)
}

fn add_vectors(a: &LogForm, b: &LogForm) -> Result<Vec<DConstant>, DarbouxError> {
    a.terms()
        .iter()
        .zip(b.terms())
        .map(|((ca, _), (cb, _))| Ok(DConstant::from_surrogate(ca.surrogate() + cb.surrogate())?))
        .collect()
}

/// A rational first integral `f` with `η₁ = f η₂` for two tangent logarithmic
/// forms with different polar supports.
pub fn rational_first_integral(
    omega: &PolyForm,
    fs: &[MultiPoly],
    strategy: SubsetStrategy,
) -> Result<RationalResult, DarbouxError> {
    let m = fs.len();
    if m < 2 {
        return Err(DarbouxError::TooFewInvariants(2));
    }
    let cofs = cofactors(omega, fs)?;

    let drop = |k: usize| -> Vec<usize> { (0..m).filter(|&i| i != k).collect() };
    let mut subsets = vec![drop(m - 1), drop(0)];
    if strategy == SubsetStrategy::Exhaustive {
        subsets.extend((1..m - 1).map(drop));
        subsets.push((0..m).collect());
    }

    let mut candidates: Vec<Candidate> = Vec::new();
    for (stage, subset) in subsets.iter().enumerate() {
        let forms = subset_logforms(&cofs, fs, subset)?;
        if stage < 2 && forms.is_empty() && strategy == SubsetStrategy::Literal {
            return Err(DarbouxError::NoDependence);
        }
        if stage == subsets.len() - 1 && strategy == SubsetStrategy::Exhaustive {
            for a in 0..forms.len() {
                for b in a + 1..forms.len() {
                    let sum = add_vectors(&forms[a], &forms[b])?;
                    if let Ok(eta) = build_logform(&sum, fs) {
                        candidates.push(Candidate { stage: stage + 1, eta });
                    }
                }
            }
        }
        candidates.extend(forms.into_iter().map(|eta| Candidate { stage, eta }));
    }
    candidates.sort_by_key(|c| c.stage);

    for c in &candidates {
        if !tangency_check(omega, &c.eta) {
            return Err(DarbouxError::NotTangent);
        }
    }
    let mut diag = PairDiagnostics { candidates: candidates.len(), ..Default::default() };
    if candidates.len() < 2 {
        return Err(DarbouxError::NoDependence);
    }

    // drop-last × drop-first first, then every remaining pair in index order
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..candidates.len() {
        for j in 0..candidates.len() {
            if candidates[i].stage == 0 && candidates[j].stage == 1 {
                pairs.push((i, j));
            }
        }
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if !(candidates[i].stage == 0 && candidates[j].stage == 1) {
                pairs.push((i, j));
            }
        }
    }

    for (i, j) in pairs {
        diag.pairs_tried += 1;
        let (eta1, eta2) = (&candidates[i].eta, &candidates[j].eta);
        if eta1.polar_support() == eta2.polar_support() {
            diag.identical_support += 1;
            continue;
        }
        let Some(f) = ratio(&eta1.expansion(), &eta2.expansion()) else {
            diag.not_proportional += 1;
            continue;
        };
        if RatForm::exact(&f).is_zero() {
            diag.degenerate += 1;
            continue;
        }
        let (_, residual) = integral_residual(omega, &f);
        let certificate = Certificate::new(Witness::RationalIntegral {
            omega: omega.clone(),
            function: f.clone(),
            residual,
            ratio: Some((eta1.clone(), eta2.clone())),
        });
        if !certificate.verified {
            return Err(DarbouxError::NotTangent);
        }
        return Ok(RationalResult { function: f, eta1: eta1.clone(), eta2: eta2.clone(), certificate, diagnostics: diag });
    }
    Err(if diag.identical_support == diag.pairs_tried {
        DarbouxError::IdenticalPolarSupport
    } else if diag.degenerate > 0 {
        DarbouxError::DegenerateRatio
    } else {
        DarbouxError::NoProportionalPair
    })
}

fn tangency_check(omega: &PolyForm, eta: &LogForm) -> bool {
    tangency_residual(omega, eta).is_zero()
}

/// `f` with `e1 = f e2`, read off the first nonzero coefficient of `e1` and
/// checked on every coefficient.
fn ratio(e1: &RatForm, e2: &RatForm) -> Option<RatFunc> {
    let (idx, c1) = e1.terms().next()?;
    let c2 = e2.coeff(idx);
    if c2.is_zero() {
        return None;
    }
    let f = c1.checked_div(&c2).ok()?;
    (*e1 == e2.mul_fn(&f)).then_some(f)
}
