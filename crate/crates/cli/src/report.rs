//! Flat key/value report documents.
//!
//! Keys are dotted paths (`certificates.0.witness.kind`); list entries use
//! their index as a path segment. The machine format is a JSON object with
//! exactly these keys, the text format prints one `key: value` line each.

use darboux_core::darboux::{Certificate, LogForm, Witness};
use darboux_core::{MultiPoly, PolyForm};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Negative,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Negative => "negative",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    records: Map<String, Value>,
    certificates: usize,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut records = Map::new();
        records.insert("schema_version".into(), SCHEMA_VERSION.into());
        records.insert("command".into(), command.into());
        records.insert("status".into(), Status::Verified.as_str().into());
        Report { records, certificates: 0 }
    }

    pub fn from_records(records: Map<String, Value>) -> Self {
        let certificates = records.keys().filter(|k| k.starts_with("certificates.") && k.ends_with(".claim")).count();
        Report { records, certificates }
    }

    pub fn records(&self) -> &Map<String, Value> {
        &self.records
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.records.get(key)
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.records.get(key).and_then(Value::as_str)
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.records.insert(key.into(), value.into());
    }

    pub fn put_list<S: Into<Value>>(&mut self, key: &str, items: impl IntoIterator<Item = S>) {
        let mut n = 0;
        for (i, v) in items.into_iter().enumerate() {
            self.put(format!("{key}.{i}"), v);
            n = i + 1;
        }
        self.put(format!("{key}.count"), n);
    }

    pub fn status(&self) -> Status {
        match self.get_str("status") {
            Some("negative") => Status::Negative,
            Some("error") => Status::Error,
            _ => Status::Verified,
        }
    }

    pub fn set_status(&mut self, status: Status) {
        self.put("status", status.as_str());
    }

    pub fn negative(&mut self, reason: impl Into<String>) {
        self.set_status(Status::Negative);
        self.put("reason", reason.into());
    }

    pub fn certificate_count(&self) -> usize {
        self.certificates
    }

    /// Appends a certificate with its full witness; returns its index.
    pub fn certificate(&mut self, cert: &Certificate, vars: &[String]) -> usize {
        let i = self.certificates;
        self.certificates += 1;
        let pre = format!("certificates.{i}");
        self.put(format!("{pre}.claim"), cert.claim().as_str());
        self.put(format!("{pre}.verified"), cert.verified);
        self.put_list(&format!("{pre}.notes"), cert.notes.iter().cloned());
        let w = format!("{pre}.witness");
        match &cert.witness {
            Witness::Invariance { omega, poly, quotient } => {
                self.put(format!("{w}.kind"), "invariance");
                self.put(format!("{w}.omega"), omega.to_string_with(vars));
                self.put(format!("{w}.poly"), poly.to_string_with(vars));
                match quotient {
                    Some(q) => self.two_form(&format!("{w}.quotient"), q, vars),
                    None => self.put(format!("{w}.quotient"), Value::Null),
                }
            }
            Witness::Dependence { cofactors, vector } => {
                self.put(format!("{w}.kind"), "dependence");
                self.put(format!("{w}.cofactors.count"), cofactors.len());
                for (k, c) in cofactors.iter().enumerate() {
                    self.two_form(&format!("{w}.cofactors.{k}"), c, vars);
                }
                self.put_list(&format!("{w}.vector"), vector.iter().map(|c| c.to_string_with(vars)));
            }
            Witness::Tangency { omega, logform, residual } => {
                self.put(format!("{w}.kind"), "tangency");
                self.put(format!("{w}.omega"), omega.to_string_with(vars));
                self.logform(&format!("{w}.logform"), logform, vars);
                self.two_form(&format!("{w}.residual"), residual, vars);
            }
            Witness::RationalIntegral { omega, function, residual, ratio } => {
                self.put(format!("{w}.kind"), "rational_integral");
                self.put(format!("{w}.omega"), omega.to_string_with(vars));
                self.put(format!("{w}.function"), function.to_string_with(vars));
                self.two_form(&format!("{w}.residual"), residual, vars);
                match ratio {
                    Some((e1, e2)) => {
                        self.logform(&format!("{w}.eta1"), e1, vars);
                        self.logform(&format!("{w}.eta2"), e2, vars);
                    }
                    None => self.put(format!("{w}.eta1"), Value::Null),
                }
            }
            Witness::MultiplicativeIntegral { omega, logform, residual } => {
                self.put(format!("{w}.kind"), "multiplicative_integral");
                self.put(format!("{w}.omega"), omega.to_string_with(vars));
                self.logform(&format!("{w}.logform"), logform, vars);
                self.two_form(&format!("{w}.residual"), residual, vars);
            }
        }
        i
    }

    /// Every basis component of a 2-form, zeros included.
    pub fn two_form(&mut self, key: &str, w: &PolyForm, vars: &[String]) {
        for (name, idx) in two_form_basis(vars) {
            self.put(format!("{key}.{name}"), w.coeff(&idx).to_string_with(vars));
        }
    }

    pub fn logform(&mut self, key: &str, eta: &LogForm, vars: &[String]) {
        self.put(format!("{key}.display"), eta.to_string_with(vars));
        self.put(format!("{key}.terms.count"), eta.terms().len());
        for (k, (c, f)) in eta.terms().iter().enumerate() {
            self.put(format!("{key}.terms.{k}.coefficient"), c.to_string_with(vars));
            self.put(format!("{key}.terms.{k}.poly"), f.to_string_with(vars));
        }
    }

    pub fn polys(&mut self, key: &str, polys: &[MultiPoly], vars: &[String]) {
        self.put_list(key, polys.iter().map(|f| f.to_string_with(vars)));
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.records).expect("string keys");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.records {
            let rendered = match v {
                Value::String(s) => s.clone(),
                Value::Null => "none".into(),
                other => other.to_string(),
            };
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&rendered);
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<Self, serde_json::Error> {
        Ok(Report::from_records(serde_json::from_str(text)?))
    }
}

/// `("dx∧dy", [0, 1])` for every increasing pair.
pub fn two_form_basis(vars: &[String]) -> Vec<(String, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            out.push((format!("d{}∧d{}", vars[i], vars[j]), vec![i, j]));
        }
    }
    out
}
