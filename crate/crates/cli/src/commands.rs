use darboux_core::darboux::{
    build_logform, cofactor_dependence, dependence_certificate, first_integral_check, form_invariant,
    multiplicative_integral, rational_first_integral, tangency_check, Cofactor, DarbouxError, FirstIntegral, LogForm,
    SubsetStrategy, Witness,
};
use darboux_core::algebra::{is_irreducible, Irreducibility};
use darboux_core::dconst::{dim_forms_exact, nk_paper, DConstant};
use darboux_core::parse::{parse_field, parse_form, parse_poly, parse_ratfunc, parse_vars};
use darboux_core::residue::{laurent_of, log_residue, order_at_zero, residue_lemma_table, valuation_of};
use darboux_core::search::{search_invariants, SearchBudget, SearchError};
use darboux_core::{FieldSpec, MultiPoly, PolyForm, RatFunc};
use serde_json::Value;

use crate::args::{Common, CountArgs, FirstIntegralArgs, ParseArgs, ResidueArgs, SearchArgs};
use crate::problem::ProblemFile;
use crate::report::Report;
use crate::CliError;

/// Parsed inputs of the form-based subcommands.
struct Inputs {
    field: FieldSpec,
    vars: Vec<String>,
    omega: Option<PolyForm>,
    poly: Option<MultiPoly>,
    invariants: Vec<MultiPoly>,
    lambda: Option<Vec<DConstant>>,
    max_degree: Option<u32>,
    strategy: SubsetStrategy,
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl Inputs {
    fn load(common: &Common, default_vars: &str) -> Result<Self, CliError> {
        let mut c = common.clone();
        if let Some(path) = &common.problem {
            ProblemFile::load(path)?.apply(&mut c);
        }
        let field = parse_field(c.field.as_deref().unwrap_or("q")).map_err(input_err)?;
        let vars = parse_vars(c.vars.as_deref().unwrap_or(default_vars)).map_err(input_err)?;
        let omega = match &c.form {
            Some(t) => {
                let w = parse_form(t, &vars, field).map_err(|e| CliError::Input(format!("--form: {e}")))?;
                if w.is_zero() {
                    return Err(CliError::Input("--form: the 1-form is zero".into()));
                }
                Some(w)
            }
            None => None,
        };
        let poly = c
            .poly
            .as_deref()
            .map(|t| parse_poly(t, &vars, field).map_err(|e| CliError::Input(format!("--poly: {e}"))))
            .transpose()?;
        let mut invariants = Vec::new();
        if let Some(list) = &c.invariants {
            for (i, t) in split_list(list).enumerate() {
                let f = parse_poly(t, &vars, field).map_err(|e| CliError::Input(format!("invariant {i}: {e}")))?;
                if f.is_constant() {
                    return Err(CliError::Input(format!("invariant {i} (`{t}`) is constant")));
                }
                if let Some(j) = invariants.iter().position(|g: &MultiPoly| g.monic() == f.monic()) {
                    return Err(CliError::Input(format!("invariants {j} and {i} differ by a constant factor")));
                }
                invariants.push(f);
            }
        }
        let lambda = match &c.lambda {
            Some(list) => {
                let mut out = Vec::new();
                for (i, t) in split_list(list).enumerate() {
                    let f =
                        parse_ratfunc(t, &vars, field).map_err(|e| CliError::Input(format!("lambda {i}: {e}")))?;
                    out.push(DConstant::from_function(&f).ok_or_else(|| {
                        CliError::Input(format!("lambda {i} (`{t}`) is not a differential constant"))
                    })?);
                }
                Some(out)
            }
            None => None,
        };
        let strategy = match &c.strategy {
            Some(s) => s.parse().map_err(CliError::Input)?,
            None => SubsetStrategy::default(),
        };
        Ok(Inputs { field, vars, omega, poly, invariants, lambda, max_degree: c.max_degree, strategy })
    }

    fn omega(&self) -> Result<&PolyForm, CliError> {
        self.omega.as_ref().ok_or_else(|| CliError::Input("--form is required".into()))
    }

    fn poly(&self) -> Result<&MultiPoly, CliError> {
        self.poly.as_ref().ok_or_else(|| CliError::Input("--poly is required".into()))
    }

    fn invariants(&self) -> Result<&[MultiPoly], CliError> {
        if self.invariants.is_empty() {
            return Err(CliError::Input("--invariants is required".into()));
        }
        Ok(&self.invariants)
    }

    fn echo(&self, r: &mut Report) {
        r.put("input.field", self.field.to_string());
        r.put("input.vars", self.vars.join(","));
        if let Some(w) = &self.omega {
            r.put("input.form", w.to_string_with(&self.vars));
        }
        if let Some(f) = &self.poly {
            r.put("input.poly", f.to_string_with(&self.vars));
        }
        if !self.invariants.is_empty() {
            r.polys("input.invariants", &self.invariants, &self.vars);
        }
        if let Some(l) = &self.lambda {
            r.put_list("input.lambda", l.iter().map(|c| c.to_string_with(&self.vars)));
        }
    }

    /// More invariants than either count guarantees a cofactor relation.
    fn thresholds(&self, r: &mut Report) -> Result<(), CliError> {
        let Some(omega) = &self.omega else { return Ok(()) };
        let n = self.vars.len() as i64;
        let d = omega.degree().unwrap_or(0) as i64;
        let (nk, exact) = if d == 0 {
            (1, 1)
        } else {
            (
                nk_paper(n, d - 1, 2, self.field).map_err(input_err)? + 1,
                dim_forms_exact(n, d - 1, 2, self.field).map_err(input_err)? + 1,
            )
        };
        r.put("thresholds.form_degree", d);
        r.put("thresholds.nk_paper", nk.to_string());
        r.put("thresholds.dim_forms_exact", exact.to_string());
        r.put("thresholds.agree", nk == exact);
        Ok(())
    }

    fn logform(&self, r: &mut Report, key: &str, eta: &LogForm) {
        r.logform(key, eta, &self.vars);
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

/// Injectivity of the logarithmic map only holds for irreducible invariants,
/// so a vanishing expansion is an input problem unless all of them are.
fn expanded_to_zero(inp: &Inputs) -> CliError {
    let e = DarbouxError::ExpandedToZero;
    if inp.invariants.iter().all(|f| is_irreducible(f) == Ok(Irreducibility::Irreducible)) {
        CliError::Internal(e.to_string())
    } else {
        CliError::Input(format!("{e}; the invariants are not all irreducible"))
    }
}

/// Library errors: negative outcomes go into the report, the rest propagate.
fn darboux_failure(inp: &Inputs, r: &mut Report, e: DarbouxError) -> Result<(), CliError> {
    use DarbouxError::*;
    match e {
        NotInvariant | NoDependence | NoConstantDependence | IdenticalPolarSupport | DegenerateRatio
        | NoProportionalPair => {
            r.negative(e.to_string());
            Ok(())
        }
        ExpandedToZero => Err(expanded_to_zero(inp)),
        NotTangent => Err(CliError::Internal(e.to_string())),
        other => Err(CliError::Input(other.to_string())),
    }
}

fn start(name: &str, common: &Common, default_vars: &str) -> Result<(Inputs, Report), CliError> {
    let inputs = Inputs::load(common, default_vars)?;
    let mut r = Report::new(name);
    inputs.echo(&mut r);
    inputs.thresholds(&mut r)?;
    Ok((inputs, r))
}

/// Invariance certificates for every invariant; `None` after marking the report negative.
fn invariance_section(inp: &Inputs, r: &mut Report) -> Result<Option<Vec<Cofactor>>, CliError> {
    let omega = inp.omega()?;
    let mut cofs = Vec::new();
    let mut failed = None;
    for (i, f) in inp.invariants()?.iter().enumerate() {
        let cert = form_invariant(omega, f).map_err(|e| CliError::Input(format!("invariant {i}: {e}")))?;
        let idx = r.certificate(&cert, &inp.vars);
        r.put(format!("invariants.{i}.certificate"), idx);
        match cert.witness {
            Witness::Invariance { quotient: Some(form), .. } if cert.verified => {
                cofs.push(Cofactor { form, source: f.clone() })
            }
            _ => {
                failed.get_or_insert(i);
            }
        }
    }
    for (i, c) in cofs.iter().enumerate() {
        r.two_form(&format!("cofactors.{i}"), &c.form, &inp.vars);
    }
    if let Some(i) = failed {
        r.negative(format!("invariant {i} is not invariant"));
        return Ok(None);
    }
    Ok(Some(cofs))
}

pub fn check_invariant(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("check-invariant", common, "x,y")?;
    let cert = form_invariant(inp.omega()?, inp.poly()?).map_err(input_err)?;
    r.put("invariant", cert.verified);
    r.certificate(&cert, &inp.vars);
    if !cert.verified {
        r.negative(DarbouxError::NotInvariant.to_string());
    }
    Ok(r)
}

pub fn cofactor(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("cofactor", common, "x,y")?;
    let cert = form_invariant(inp.omega()?, inp.poly()?).map_err(input_err)?;
    r.certificate(&cert, &inp.vars);
    match &cert.witness {
        Witness::Invariance { quotient: Some(q), .. } if cert.verified => {
            r.put("cofactor.display", q.to_string_with(&inp.vars));
            r.two_form("cofactor", q, &inp.vars);
        }
        _ => r.negative(DarbouxError::NotInvariant.to_string()),
    }
    Ok(r)
}

fn dependence_vectors(inp: &Inputs, r: &mut Report, cofs: &[Cofactor]) -> Result<Vec<Vec<DConstant>>, CliError> {
    let vectors = match cofactor_dependence(cofs) {
        Ok(v) => v,
        Err(e) => {
            darboux_failure(inp, r, e)?;
            return Ok(Vec::new());
        }
    };
    r.put("vectors.count", vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        r.put_list(&format!("vectors.{k}"), v.iter().map(|c| c.to_string_with(&inp.vars)));
        let idx = r.certificate(&dependence_certificate(cofs, v), &inp.vars);
        r.put(format!("vectors.{k}.certificate"), idx);
    }
    if vectors.is_empty() {
        r.negative(DarbouxError::NoDependence.to_string());
    }
    Ok(vectors)
}

pub fn dependence(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("dependence", common, "x,y")?;
    if let Some(cofs) = invariance_section(&inp, &mut r)? {
        dependence_vectors(&inp, &mut r, &cofs)?;
    }
    Ok(r)
}

fn tangency_entry(inp: &Inputs, r: &mut Report, key: &str, eta: &LogForm) -> Result<bool, CliError> {
    inp.logform(r, key, eta);
    let cert = tangency_check(inp.omega()?, eta);
    let idx = r.certificate(&cert, &inp.vars);
    r.put(format!("{key}.tangent"), cert.verified);
    r.put(format!("{key}.closed"), eta.is_closed());
    r.put(format!("{key}.certificate"), idx);
    Ok(cert.verified)
}

fn explicit_logform(inp: &Inputs, r: &mut Report, lambda: &[DConstant]) -> Result<(), CliError> {
    let eta = match build_logform(lambda, inp.invariants()?) {
        Ok(eta) => eta,
        Err(DarbouxError::ExpandedToZero) => return Err(expanded_to_zero(inp)),
        Err(e) => return Err(input_err(e)),
    };
    if !tangency_entry(inp, r, "logforms.0", &eta)? {
        r.negative(DarbouxError::NotTangent.to_string().replace("internal certificate failure: ", ""));
    }
    r.put("logforms.count", 1);
    Ok(())
}

pub fn logform(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("logform", common, "x,y")?;
    if let Some(lambda) = &inp.lambda {
        explicit_logform(&inp, &mut r, lambda)?;
        return Ok(r);
    }
    let Some(cofs) = invariance_section(&inp, &mut r)? else { return Ok(r) };
    let vectors = dependence_vectors(&inp, &mut r, &cofs)?;
    r.put("logforms.count", vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        let eta = build_logform(v, &inp.invariants).map_err(|e| match e {
            DarbouxError::ExpandedToZero => expanded_to_zero(&inp),
            other => CliError::Internal(other.to_string()),
        })?;
        if !tangency_entry(&inp, &mut r, &format!("logforms.{k}"), &eta)? {
            return Err(CliError::Internal(DarbouxError::NotTangent.to_string()));
        }
    }
    Ok(r)
}

pub fn tangency(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("tangency", common, "x,y")?;
    let lambda = inp.lambda.clone().ok_or_else(|| CliError::Input("--lambda is required".into()))?;
    explicit_logform(&inp, &mut r, &lambda)?;
    Ok(r)
}

pub fn first_integral(a: &FirstIntegralArgs) -> Result<Report, CliError> {
    let (inp, mut r) = start("first-integral", &a.common, "x,y")?;
    let omega = inp.omega()?;
    if let Some(text) = &a.function {
        let f = parse_ratfunc(text, &inp.vars, inp.field).map_err(|e| CliError::Input(format!("--function: {e}")))?;
        r.put("input.function", f.to_string_with(&inp.vars));
        let cert = first_integral_check(omega, &f);
        r.put("first_integral.kind", "rational");
        r.put("first_integral.function", f.to_string_with(&inp.vars));
        r.put("first_integral.certificate", r.certificate_count());
        r.certificate(&cert, &inp.vars);
        if !cert.verified {
            r.negative("not a first integral");
        }
        return Ok(r);
    }
    r.put("input.strategy", format!("{:?}", inp.strategy).to_lowercase());
    if invariance_section(&inp, &mut r)?.is_none() {
        return Ok(r);
    }
    match rational_first_integral(omega, &inp.invariants, inp.strategy) {
        Ok(res) => {
            r.put("first_integral.kind", res.integral().kind());
            r.put("first_integral.function", res.function.to_string_with(&inp.vars));
            inp.logform(&mut r, "first_integral.eta1", &res.eta1);
            inp.logform(&mut r, "first_integral.eta2", &res.eta2);
            let idx = r.certificate(&res.certificate, &inp.vars);
            r.put("first_integral.certificate", idx);
            let d = &res.diagnostics;
            r.put("diagnostics.candidates", d.candidates);
            r.put("diagnostics.pairs_tried", d.pairs_tried);
            r.put("diagnostics.identical_support", d.identical_support);
            r.put("diagnostics.not_proportional", d.not_proportional);
            r.put("diagnostics.degenerate", d.degenerate);
        }
        Err(e) => darboux_failure(&inp, &mut r, e)?,
    }
    Ok(r)
}

fn product_string(integral: &FirstIntegral, vars: &[String]) -> String {
    match integral {
        FirstIntegral::Rational(f) => f.to_string_with(vars),
        FirstIntegral::Multiplicative(factors) => {
            let parts: Vec<String> = factors
                .iter()
                .map(|(f, e)| (f, e.to_string()))
                .filter(|(_, e)| e != "0")
                .map(|(f, e)| {
                    let base = if f.num_terms() == 1 && f.total_degree() == Some(1) {
                        f.to_string_with(vars)
                    } else {
                        format!("({})", f.to_string_with(vars))
                    };
                    if e == "1" {
                        base
                    } else if e.starts_with('-') {
                        format!("{base}^({e})")
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        }
    }
}

pub fn multiplicative(common: &Common) -> Result<Report, CliError> {
    let (inp, mut r) = start("multiplicative-integral", common, "x,y")?;
    if invariance_section(&inp, &mut r)?.is_none() {
        return Ok(r);
    }
    match multiplicative_integral(inp.omega()?, &inp.invariants) {
        Ok(res) => {
            r.put("first_integral.kind", res.integral.kind());
            r.put_list("first_integral.exponents", res.exponents.iter().map(|e| e.to_string()));
            r.put("first_integral.product", product_string(&res.integral, &inp.vars));
            if let Some(f) = res.integral.as_ratfunc() {
                r.put("first_integral.function", f.to_string_with(&inp.vars));
            }
            inp.logform(&mut r, "first_integral.logform", &res.logform);
            let idx = r.certificate(&res.certificate, &inp.vars);
            r.put("first_integral.certificate", idx);
        }
        Err(e) => darboux_failure(&inp, &mut r, e)?,
    }
    Ok(r)
}

fn counts(name: &str, a: &CountArgs, primary_is_nk: bool) -> Result<Report, CliError> {
    let field = FieldSpec::from_characteristic(a.characteristic).map_err(input_err)?;
    let mut r = Report::new(name);
    r.put("input.n", a.n);
    r.put("input.d", a.d);
    r.put("input.r", a.r);
    r.put("input.char", a.characteristic);
    let nk = nk_paper(a.n, a.d, a.r, field).map_err(input_err)?;
    let exact = dim_forms_exact(a.n, a.d, a.r, field).map_err(input_err)?;
    r.put("value", if primary_is_nk { nk } else { exact }.to_string());
    r.put("nk_paper", nk.to_string());
    r.put("dim_forms_exact", exact.to_string());
    r.put("agree", nk == exact);
    if nk != exact {
        r.put("flag", format!("nk_paper = {nk} differs from dim_forms_exact = {exact}"));
    }
    Ok(r)
}

pub fn nk(a: &CountArgs) -> Result<Report, CliError> {
    counts("nk", a, true)
}

pub fn dim_exact(a: &CountArgs) -> Result<Report, CliError> {
    counts("dim-exact", a, false)
}

pub fn search(a: &SearchArgs) -> Result<Report, CliError> {
    let (inp, mut r) = start("search", &a.common, "x,y")?;
    let omega = inp.omega()?;
    let mut budget = SearchBudget::new(inp.field, inp.max_degree.unwrap_or(1));
    if let Some(cap) = a.max_candidates {
        budget.max_candidates = cap;
    }
    r.put("input.max_degree", budget.max_degree);
    r.put("input.max_candidates", budget.max_candidates.to_string());
    let report = match search_invariants(omega, &budget) {
        Ok(rep) => rep,
        Err(e @ (SearchError::BudgetExceeded { .. } | SearchError::NotPrimeField | SearchError::BadForm)) => {
            return Err(input_err(e))
        }
    };
    r.put("examined", report.examined);
    r.put("zero_differential", report.zero_differential);
    r.put("reducible", report.reducible);
    r.put("undecided", report.undecided);
    r.polys("invariants", &report.invariants, &inp.vars);
    for (i, f) in report.invariants.iter().enumerate() {
        let cert = form_invariant(omega, f).map_err(|e| CliError::Internal(e.to_string()))?;
        if !cert.verified {
            return Err(CliError::Internal(format!("search returned non-invariant {f}")));
        }
        let idx = r.certificate(&cert, &inp.vars);
        r.put(format!("invariants.{i}.certificate"), idx);
    }
    if report.invariants.is_empty() {
        r.negative("no irreducible invariant hypersurface within the degree bound");
    }
    Ok(r)
}

pub fn residue(a: &ResidueArgs) -> Result<Report, CliError> {
    let inp = Inputs::load(&a.common, "x")?;
    let mut r = Report::new("residue");
    inp.echo(&mut r);
    if inp.vars.len() != 1 {
        return Err(CliError::Input("residue needs exactly one variable".into()));
    }
    let vars = &inp.vars;
    if a.table {
        let rows = residue_lemma_table(inp.field);
        r.put("table.count", rows.len());
        for (i, row) in rows.iter().enumerate() {
            r.put(format!("table.{i}.alpha"), row.alpha.to_string_with(vars));
            r.put(format!("table.{i}.g"), row.g.to_string_with(vars));
            r.put(format!("table.{i}.residue"), row.residue.to_string());
            r.put(format!("table.{i}.vanishes"), row.vanishes);
        }
        r.put("table.nonvanishing", rows.iter().filter(|row| !row.vanishes).count());
        return Ok(r);
    }
    let g = inp.poly()?;
    let alpha = match &a.alpha {
        Some(t) => parse_ratfunc(t, vars, inp.field).map_err(|e| CliError::Input(format!("--alpha: {e}")))?,
        None => RatFunc::one(inp.field, 1),
    };
    r.put("input.alpha", alpha.to_string_with(vars));
    let res = log_residue(&alpha, g).map_err(input_err)?;
    let h = &alpha * &RatFunc::new(g.diff(0).map_err(input_err)?, g.clone()).map_err(input_err)?;
    r.put("order_of_g", order_at_zero(g));
    r.put("residue", res.to_string());
    if let Some(v) = valuation_of(&h) {
        let series = laurent_of(&h, (-v).max(0) + 2).map_err(input_err)?;
        r.put("expansion", series.to_string_with(&vars[0]));
    } else {
        r.put("expansion", "0");
    }
    Ok(r)
}

pub fn parse(a: &ParseArgs) -> Result<Report, CliError> {
    let inp_common = Common { form: None, poly: None, ..a.common.clone() };
    let inp = Inputs::load(&inp_common, "x,y")?;
    let mut r = Report::new("parse");
    inp.echo(&mut r);
    let (field, vars) = (inp.field, &inp.vars);
    let mut any = false;
    if let Some(t) = &a.common.poly {
        let f = parse_poly(t, vars, field).map_err(|e| CliError::Input(format!("--poly: {e}")))?;
        let printed = f.to_string_with(vars);
        let again = parse_poly(&printed, vars, field).map_err(|e| CliError::Internal(e.to_string()))?;
        r.put("poly.printed", printed);
        r.put("poly.round_trip", again == f);
        any = true;
    }
    if let Some(t) = &a.common.form {
        let w = parse_form(t, vars, field).map_err(|e| CliError::Input(format!("--form: {e}")))?;
        let printed = w.to_string_with(vars);
        let again = parse_form(&printed, vars, field).map_err(|e| CliError::Internal(e.to_string()))?;
        r.put("form.printed", printed);
        r.put("form.round_trip", again == w);
        any = true;
    }
    if let Some(t) = &a.ratfunc {
        let f = parse_ratfunc(t, vars, field).map_err(|e| CliError::Input(format!("--ratfunc: {e}")))?;
        let printed = f.to_string_with(vars);
        let again = parse_ratfunc(&printed, vars, field).map_err(|e| CliError::Internal(e.to_string()))?;
        r.put("ratfunc.printed", printed);
        r.put("ratfunc.round_trip", again == f);
        any = true;
    }
    if !any {
        return Err(CliError::Input("nothing to parse: give --poly, --form or --ratfunc".into()));
    }
    if r.records().iter().any(|(k, v)| k.ends_with(".round_trip") && v == &Value::Bool(false)) {
        return Err(CliError::Internal("print/parse round trip changed the value".into()));
    }
    Ok(r)
}
