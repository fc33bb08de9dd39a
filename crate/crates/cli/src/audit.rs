//! Re-verification of the certificates embedded in a report, working only
//! from the serialized strings.

use darboux_core::darboux::{build_logform, Certificate, LogForm, Witness};
use darboux_core::dconst::DConstant;
use darboux_core::parse::{parse_field, parse_form, parse_poly, parse_ratfunc, parse_vars};
use darboux_core::{FieldSpec, MultiPoly, PolyForm};
use serde_json::Value;

use crate::report::{two_form_basis, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AuditResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx<'a> {
    report: &'a Report,
    field: FieldSpec,
    vars: Vec<String>,
}

impl Ctx<'_> {
    fn text(&self, key: &str) -> Result<&str, String> {
        self.report.get_str(key).ok_or_else(|| format!("missing `{key}`"))
    }

    fn count(&self, key: &str) -> Result<usize, String> {
        self.report
            .get(key)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| format!("missing `{key}`"))
    }

    fn poly(&self, key: &str) -> Result<MultiPoly, String> {
        parse_poly(self.text(key)?, &self.vars, self.field).map_err(|e| format!("{key}: {e}"))
    }

    fn one_form(&self, key: &str) -> Result<PolyForm, String> {
        parse_form(self.text(key)?, &self.vars, self.field).map_err(|e| format!("{key}: {e}"))
    }

    fn two_form(&self, key: &str) -> Result<PolyForm, String> {
        let mut terms = Vec::new();
        for (name, idx) in two_form_basis(&self.vars) {
            terms.push((idx, self.poly(&format!("{key}.{name}"))?));
        }
        PolyForm::from_terms(self.field, self.vars.len(), 2, terms).map_err(|e| e.to_string())
    }

    fn dconstant(&self, key: &str) -> Result<DConstant, String> {
        let f = parse_ratfunc(self.text(key)?, &self.vars, self.field).map_err(|e| format!("{key}: {e}"))?;
        DConstant::from_function(&f).ok_or_else(|| format!("{key}: not a differential constant"))
    }

    fn logform(&self, key: &str) -> Result<LogForm, String> {
        let n = self.count(&format!("{key}.terms.count"))?;
        let mut lambda = Vec::with_capacity(n);
        let mut fs = Vec::with_capacity(n);
        for k in 0..n {
            lambda.push(self.dconstant(&format!("{key}.terms.{k}.coefficient"))?);
            fs.push(self.poly(&format!("{key}.terms.{k}.poly"))?);
        }
        build_logform(&lambda, &fs).map_err(|e| format!("{key}: {e}"))
    }

    fn witness(&self, pre: &str) -> Result<Witness, String> {
        let w = format!("{pre}.witness");
        let kind = self.text(&format!("{w}.kind"))?;
        Ok(match kind {
            "invariance" => Witness::Invariance {
                omega: self.one_form(&format!("{w}.omega"))?,
                poly: self.poly(&format!("{w}.poly"))?,
                quotient: match self.report.get(&format!("{w}.quotient")) {
                    Some(Value::Null) => None,
                    _ => Some(self.two_form(&format!("{w}.quotient"))?),
                },
            },
            "dependence" => {
                let m = self.count(&format!("{w}.cofactors.count"))?;
                let cofactors =
                    (0..m).map(|k| self.two_form(&format!("{w}.cofactors.{k}"))).collect::<Result<Vec<_>, _>>()?;
                let len = self.count(&format!("{w}.vector.count"))?;
                let vector =
                    (0..len).map(|k| self.dconstant(&format!("{w}.vector.{k}"))).collect::<Result<Vec<_>, _>>()?;
                Witness::Dependence { cofactors, vector }
            }
            "tangency" => Witness::Tangency {
                omega: self.one_form(&format!("{w}.omega"))?,
                logform: self.logform(&format!("{w}.logform"))?,
                residual: self.two_form(&format!("{w}.residual"))?,
            },
            "rational_integral" => Witness::RationalIntegral {
                omega: self.one_form(&format!("{w}.omega"))?,
                function: parse_ratfunc(self.text(&format!("{w}.function"))?, &self.vars, self.field)
                    .map_err(|e| e.to_string())?,
                residual: self.two_form(&format!("{w}.residual"))?,
                ratio: match self.report.get(&format!("{w}.eta1")) {
                    Some(Value::Null) => None,
                    _ => Some((self.logform(&format!("{w}.eta1"))?, self.logform(&format!("{w}.eta2"))?)),
                },
            },
            "multiplicative_integral" => Witness::MultiplicativeIntegral {
                omega: self.one_form(&format!("{w}.omega"))?,
                logform: self.logform(&format!("{w}.logform"))?,
                residual: self.two_form(&format!("{w}.residual"))?,
            },
            other => return Err(format!("unknown witness kind `{other}`")),
        })
    }

    /// The stored `verified` flag must match a fresh check of the rebuilt witness.
    fn check(&self, i: usize) -> Result<(), String> {
        let pre = format!("certificates.{i}");
        let claimed = self
            .report
            .get(&format!("{pre}.verified"))
            .and_then(Value::as_bool)
            .ok_or_else(|| format!("missing `{pre}.verified`"))?;
        let fresh = Certificate::new(self.witness(&pre)?);
        if fresh.verified != claimed {
            return Err(format!("{pre}: recorded verified={claimed}, recheck gives {}", fresh.verified));
        }
        Ok(())
    }
}

/// Rebuilds and rechecks every certificate. A report whose status is
/// `verified` must also have every certificate verified.
pub fn audit(report: &Report) -> AuditResult {
    let n = report.certificate_count();
    let mut failures = Vec::new();
    if n > 0 {
        let field = report.get_str("input.field").ok_or("missing `input.field`").and_then(|f| parse_field(f).map_err(|_| "bad `input.field`"));
        let vars = report.get_str("input.vars").ok_or("missing `input.vars`").and_then(|v| parse_vars(v).map_err(|_| "bad `input.vars`"));
        match (field, vars) {
            (Ok(field), Ok(vars)) => {
                let ctx = Ctx { report, field, vars };
                for i in 0..n {
                    if let Err(e) = ctx.check(i) {
                        failures.push(e);
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    if report.get_str("status") == Some("verified") {
        for i in 0..n {
            if report.get(&format!("certificates.{i}.verified")) != Some(&Value::Bool(true)) {
                failures.push(format!("certificates.{i}: unverified certificate in a verified report"));
            }
        }
    }
    AuditResult { checked: n, failures }
}
