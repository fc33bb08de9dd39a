//! Multilinear functions in the coordinate basis, with the symmetrizing and
//! alternating operators. Only used to cross-check the wedge product.

use std::collections::BTreeMap;

use crate::algebra::{FieldSpec, RatFunc};

use super::form::{Coefficient, DiffForm};
use super::ExteriorError;

pub const MAX_OPERATOR_ARITY: usize = 3;

/// An `r`-linear function given by its values on tuples of coordinate vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiTensor {
    field: FieldSpec,
    nvars: usize,
    arity: usize,
    entries: BTreeMap<Vec<usize>, RatFunc>,
}

/// All permutations of `0..r` with their sign (`true` = odd).
fn permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    if r == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(r - 1) {
        // insert r-1 at position k: passes over (r-1-k) larger-position elements
        for k in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(k, r - 1);
            let moved = (r - 1 - k) % 2 == 1;
            out.push((p, odd ^ moved));
        }
    }
    out
}

impl MultiTensor {
    pub fn zero(field: FieldSpec, nvars: usize, arity: usize) -> Self {
        MultiTensor { field, nvars, arity, entries: BTreeMap::new() }
    }

    fn add_entry(&mut self, idx: Vec<usize>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let next = match self.entries.get(&idx) {
            Some(old) => old + &c,
            None => c,
        };
        if next.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, next);
        }
    }

    /// The multilinear function represented by a differential form: the basis
    /// form `dz_I` takes value `sgn σ` on `(e_{I_σ(1)}, ..., e_{I_σ(r)})`.
    pub fn from_form<C: Coefficient>(form: &DiffForm<C>) -> Self {
        let mut out = Self::zero(form.field(), form.nvars(), form.grade());
        let perms = permutations(form.grade());
        for (idx, c) in form.terms() {
            let c = c.to_ratfunc();
            for (perm, odd) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
                out.add_entry(permuted, if *odd { -&c } else { c.clone() });
            }
        }
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, idx: &[usize]) -> RatFunc {
        self.entries.get(idx).cloned().unwrap_or_else(|| RatFunc::zero(self.field, self.nvars))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &crate::algebra::Scalar) -> Self {
        let mut out = Self::zero(self.field, self.nvars, self.arity);
        for (idx, v) in &self.entries {
            out.add_entry(idx.clone(), v.scale(c));
        }
        out
    }

    /// `(f ⊗ g)(v_1..v_{r+s}) = f(v_1..v_r) g(v_{r+1}..v_{r+s})`.
    pub fn tensor(&self, other: &MultiTensor) -> Result<MultiTensor, ExteriorError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(ExteriorError::FieldMismatch);
        }
        let mut out = Self::zero(self.field, self.nvars, self.arity + other.arity);
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                let idx: Vec<usize> = i.iter().chain(j).copied().collect();
                out.add_entry(idx, a * b);
            }
        }
        Ok(out)
    }

    fn permuted_sum(&self, signed: bool) -> Result<MultiTensor, ExteriorError> {
        if self.arity > MAX_OPERATOR_ARITY {
            return Err(ExteriorError::ArityTooLarge(self.arity));
        }
        let mut out = Self::zero(self.field, self.nvars, self.arity);
        let perms = permutations(self.arity);
        // (Tf)(v_1..v_r) = sum_σ ± f(v_σ(1)..v_σ(r)); on basis tuples the entry
        // at idx collects f(idx∘σ).
        for (idx, v) in &self.entries {
            for (perm, odd) in &perms {
                // f(idx) contributes to every target t with t∘σ = idx
                let mut target = vec![0; self.arity];
                for (k, &s) in perm.iter().enumerate() {
                    target[s] = idx[k];
                }
                let val = if signed && *odd { -v } else { v.clone() };
                out.add_entry(target, val);
            }
        }
        Ok(out)
    }

    /// Alternating operator `(Af)(v) = sum_σ sgn(σ) f(v_σ)`.
    pub fn alt(&self) -> Result<MultiTensor, ExteriorError> {
        self.permuted_sum(true)
    }

    /// Symmetrizing operator `(Sf)(v) = sum_σ f(v_σ)`.
    pub fn sym(&self) -> Result<MultiTensor, ExteriorError> {
        self.permuted_sum(false)
    }

    /// Whether swapping any two arguments negates the value and repeated
    /// arguments give zero.
    pub fn is_alternating(&self) -> bool {
        self.entries.iter().all(|(idx, v)| {
            let distinct = idx.iter().enumerate().all(|(a, x)| idx[..a].iter().all(|y| y != x));
            if !distinct {
                return false;
            }
            (0..idx.len()).all(|a| {
                (a + 1..idx.len()).all(|b| {
                    let mut sw = idx.clone();
                    sw.swap(a, b);
                    self.entry(&sw) == -v
                })
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(idx, v)| {
            (0..idx.len()).all(|a| {
                (a + 1..idx.len()).all(|b| {
                    let mut sw = idx.clone();
                    sw.swap(a, b);
                    &self.entry(&sw) == v
                })
            })
        })
    }
}
