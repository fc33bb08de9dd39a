use crate::algebra::{poly_gcd, FieldSpec, MultiPoly, RatFunc};
use crate::dconst::DConstant;
use crate::exterior::{Coefficient, PolyForm, RatForm};

/// `η = Σ λ_i dF_i / F_i` with `λ_i ∈ K(z^p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogForm {
    field: FieldSpec,
    nvars: usize,
    terms: Vec<(DConstant, MultiPoly)>,
}

impl LogForm {
    pub(crate) fn new(field: FieldSpec, nvars: usize, terms: Vec<(DConstant, MultiPoly)>) -> Self {
        LogForm { field, nvars, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(DConstant, MultiPoly)] {
        &self.terms
    }

    pub fn coefficients(&self) -> Vec<DConstant> {
        self.terms.iter().map(|(c, _)| c.clone()).collect()
    }

    /// Indices of the terms with a nonzero coefficient.
    pub fn polar_support(&self) -> Vec<usize> {
        self.terms.iter().enumerate().filter(|(_, (c, _))| !c.is_zero()).map(|(i, _)| i).collect()
    }

    /// The rational 1-form `Σ λ_i dF_i / F_i`.
    pub fn expansion(&self) -> RatForm {
        let mut acc = RatForm::zero(self.field, self.nvars, 1);
        for (c, f) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let scale = &c.embed() * &RatFunc::new(MultiPoly::one(self.field, self.nvars), f.clone()).expect("nonzero");
            let term = PolyForm::exact(f).to_rat().mul_fn(&scale);
            acc = acc.add(&term).expect("same shape");
        }
        acc
    }

    /// `(N, D)` with `η = N / D`, where `D` is the product of the polar `F_i`
    /// times the lcm of the coefficient denominators.
    pub fn cleared(&self) -> (PolyForm, MultiPoly) {
        let one = MultiPoly::one(self.field, self.nvars);
        let live: Vec<(RatFunc, &MultiPoly)> =
            self.terms.iter().filter(|(c, _)| !c.is_zero()).map(|(c, f)| (c.embed(), f)).collect();
        let mut lcm = one.clone();
        for (c, _) in &live {
            if !c.denom().is_one() {
                let g = poly_gcd(&lcm, c.denom()).expect("nonzero");
                lcm = &lcm * &c.denom().exact_div(&g).expect("gcd divides");
            }
        }
        let product = live.iter().fold(one, |acc, (_, f)| &acc * *f);
        let mut num = PolyForm::zero(self.field, self.nvars, 1);
        for (c, f) in &live {
            let factor = &(c.numer() * &lcm.exact_div(c.denom()).expect("lcm")) * &product.exact_div(f).expect("factor");
            num = num.add(&PolyForm::exact(f).mul_fn(&factor)).expect("same shape");
        }
        (num, &lcm * &product)
    }

    /// `dη = 0`, checked on the cleared form `N / D` as `D dN - dD ∧ N = 0`.
    pub fn is_closed(&self) -> bool {
        let (num, den) = self.cleared();
        let lhs = num.d().mul_fn(&den);
        let rhs = PolyForm::exact(&den).wedge(&num).expect("same shape");
        lhs == rhs
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, f) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let fs = f.to_string_with(vars);
            let atom = f.num_terms() == 1 && f.total_degree() == Some(1) && f.leading_coeff().is_some_and(|s| s.is_one());
            let frac = if atom { format!("d{fs}/{fs}") } else { format!("d({fs})/({fs})") };
            let cv = c.embed();
            let cs = if cv.is_one() {
                frac
            } else if cv.is_compound() || cv.to_string_with(vars).starts_with('-') {
                format!("({})*{frac}", cv.to_string_with(vars))
            } else {
                format!("{}*{frac}", cv.to_string_with(vars))
            };
            parts.push(cs);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
