//! Worked values recomputed with a small dense bivariate oracle on machine
//! integers (`Rational64` over `Q`, residues mod `p` otherwise) and compared
//! against the library.

use std::collections::BTreeMap;

use darboux_core::algebra::{is_irreducible, FieldSpec, Irreducibility, Monomial, MultiPoly, RatFunc};
use darboux_core::darboux::{
    build_logform, cofactor, cofactor_dependence, first_integral_check, form_invariant, multiplicative_integral,
    rational_first_integral, tangency_check, DarbouxError, SubsetStrategy,
};
use darboux_core::dconst::{dim_forms_exact, forms_matrix, is_dconstant, nk_paper, p_decompose, DConstant};
use darboux_core::exterior::{pair, PolyForm, VectorField};
use darboux_core::residue::{log_residue, monomial_ratfunc};
use darboux_core::search::{enumerate_invariants, SearchBudget};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Dense polynomial in (x, y) keyed by exponent pairs; `p = 0` means `Q`.
#[derive(Clone, Debug, PartialEq)]
struct Dense {
    p: i64,
    c: BTreeMap<(u32, u32), Rational64>,
}

impl Dense {
    fn new(p: i64, terms: &[((u32, u32), i64)]) -> Dense {
        let mut d = Dense { p, c: BTreeMap::new() };
        for &(e, v) in terms {
            d.push(e, Rational64::from_integer(v));
        }
        d
    }

    fn reduce(&self, v: Rational64) -> Rational64 {
        if self.p == 0 {
            return v;
        }
        let p = self.p;
        let num = v.numer().rem_euclid(p);
        let den = v.denom().rem_euclid(p);
        // den^(p-2) mod p
        let mut inv = 1;
        for _ in 0..p - 2 {
            inv = inv * den % p;
        }
        Rational64::from_integer(num * inv % p)
    }

    fn push(&mut self, e: (u32, u32), v: Rational64) {
        let cur = *self.c.get(&e).unwrap_or(&Rational64::zero());
        let s = self.reduce(cur + v);
        if s.is_zero() {
            self.c.remove(&e);
        } else {
            self.c.insert(e, s);
        }
    }

    fn add(&self, o: &Dense) -> Dense {
        let mut out = self.clone();
        for (&e, &v) in &o.c {
            out.push(e, v);
        }
        out
    }

    fn neg(&self) -> Dense {
        let mut out = Dense { p: self.p, c: BTreeMap::new() };
        for (&e, &v) in &self.c {
            out.push(e, -v);
        }
        out
    }

    fn mul(&self, o: &Dense) -> Dense {
        let mut out = Dense { p: self.p, c: BTreeMap::new() };
        for (&(a, b), &u) in &self.c {
            for (&(c, d), &v) in &o.c {
                out.push((a + c, b + d), u * v);
            }
        }
        out
    }

    fn diff(&self, var: usize) -> Dense {
        let mut out = Dense { p: self.p, c: BTreeMap::new() };
        for (&(a, b), &v) in &self.c {
            let k = if var == 0 { a } else { b };
            if k > 0 {
                let e = if var == 0 { (a - 1, b) } else { (a, b - 1) };
                out.push(e, v * Rational64::from_integer(k as i64));
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn field(&self) -> FieldSpec {
        if self.p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(self.p as u64) }
    }

    fn to_lib(&self, nvars: usize) -> MultiPoly {
        let field = self.field();
        let terms = self.c.iter().map(|(&(a, b), v)| {
            let exps = if nvars == 1 { vec![a] } else { vec![a, b] };
            let s = &field.from_i64(*v.numer()) * &field.from_i64(*v.denom()).inverse().unwrap();
            (Monomial::new(exps), s)
        });
        MultiPoly::from_terms(field, nvars, terms)
    }
}

fn from_lib(f: &MultiPoly, p: i64) -> Dense {
    let mut d = Dense { p, c: BTreeMap::new() };
    for (m, c) in f.terms() {
        let e = m.exponents();
        let v = match c.as_rational() {
            Some(r) => Rational64::new(r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap()),
            None => Rational64::from_integer(c.residue().unwrap() as i64),
        };
        d.push((e[0], *e.get(1).unwrap_or(&0)), v);
    }
    d
}

/// `(a dx + b dy) ∧ (c dx + e dy) = (a e - b c) dx∧dy`.
fn wedge11(a: &Dense, b: &Dense, c: &Dense, e: &Dense) -> Dense {
    a.mul(e).add(&b.mul(c).neg())
}

fn x(p: i64) -> Dense {
    Dense::new(p, &[((1, 0), 1)])
}

fn y(p: i64) -> Dense {
    Dense::new(p, &[((0, 1), 1)])
}

fn one_form(a: &Dense, b: &Dense) -> PolyForm {
    PolyForm::one_form(a.field(), vec![a.to_lib(2), b.to_lib(2)])
}

fn dxdy_coeff(w: &PolyForm) -> MultiPoly {
    w.coeff(&[0, 1])
}

#[test]
fn exact_division_in_characteristic_two() {
    let x1 = Dense::new(2, &[((1, 0), 1), ((0, 0), 1)]);
    let square = x1.mul(&x1);
    assert_eq!(square, Dense::new(2, &[((2, 0), 1), ((0, 0), 1)]));
    let q = square.to_lib(1).exact_div(&x1.to_lib(1)).unwrap();
    assert_eq!(from_lib(&q, 2), x1);
}

#[test]
fn quadratic_irreducibility_over_f2() {
    // trial division by the two linear polynomials: a root test
    let roots = |c: [i64; 3]| (0..2).filter(|t| (c[0] + c[1] * t + c[2] * t * t) % 2 == 0).count();
    assert_eq!(roots([1, 1, 1]), 0);
    assert_eq!(roots([1, 0, 1]), 1);
    let f = Dense::new(2, &[((2, 0), 1), ((1, 0), 1), ((0, 0), 1)]).to_lib(1);
    let g = Dense::new(2, &[((2, 0), 1), ((0, 0), 1)]).to_lib(1);
    assert_eq!(is_irreducible(&f), Ok(Irreducibility::Irreducible));
    assert_eq!(is_irreducible(&g), Ok(Irreducibility::Reducible));
}

#[test]
fn rotation_field_and_pairing() {
    let p = 0;
    let f = x(p).mul(&x(p)).add(&y(p).mul(&y(p)));
    // X = y ∂x - x ∂y
    let xf = y(p).mul(&f.diff(0)).add(&x(p).neg().mul(&f.diff(1)));
    assert!(xf.is_zero());
    let field = FieldSpec::Rationals;
    let rot = VectorField::polynomial(field, vec![y(p).to_lib(2), x(p).neg().to_lib(2)]).unwrap();
    assert!(rot.apply(&f.to_lib(2)).unwrap().is_zero());
    // (y dx + x dy)(x ∂x - y ∂y) = xy - xy
    let paired = y(p).mul(&x(p)).add(&x(p).mul(&y(p).neg()));
    assert!(paired.is_zero());
    let hyp = VectorField::polynomial(field, vec![x(p).to_lib(2), y(p).neg().to_lib(2)]).unwrap();
    assert!(pair(&one_form(&y(p), &x(p)), &hyp).unwrap().is_zero());
}

#[test]
fn reduced_decomposition_of_a_cubic() {
    let a = Dense::new(2, &[((3, 0), 1), ((2, 0), 1), ((0, 0), 1)]);
    let dec = p_decompose(&a.to_lib(1));
    assert_eq!(from_lib(&dec.part(&[0]), 2), Dense::new(2, &[((1, 0), 1), ((0, 0), 1)]));
    assert_eq!(from_lib(&dec.part(&[1]), 2), Dense::new(2, &[((1, 0), 1)]));
    // (y + 1)|_{y = x^2} + y|_{y = x^2} x
    let back = Dense::new(2, &[((2, 0), 1), ((0, 0), 1)]).add(&Dense::new(2, &[((2, 0), 1)]).mul(&x(2)));
    assert_eq!(back, a);
}

#[test]
fn quotient_rule_kills_squares_in_characteristic_two() {
    let n = Dense::new(2, &[((2, 0), 1)]);
    let d = Dense::new(2, &[((2, 0), 1), ((0, 0), 1)]);
    let numer = n.diff(0).mul(&d).add(&n.mul(&d.diff(0)).neg());
    assert!(numer.is_zero());
    assert!(is_dconstant(&RatFunc::new(n.to_lib(1), d.to_lib(1)).unwrap()));
}

#[test]
fn dimension_counts() {
    let binom = |n: u128, k: u128| -> u128 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    assert_eq!(nk_paper(2, 0, 2, FieldSpec::Rationals).unwrap(), binom(2, 2) * binom(2, 2));
    assert_eq!(nk_paper(2, 3, 2, FieldSpec::Prime(2)).unwrap(), binom(2, 2) * binom(3, 2));
    let reduced = (0..2u32).flat_map(|a| (0..2u32).map(move |b| a + b)).filter(|&s| s <= 3).count() as u128;
    assert_eq!(dim_forms_exact(2, 3, 2, FieldSpec::Prime(2)).unwrap(), binom(2, 2) * reduced);
}

#[test]
fn forms_matrix_reduces_coefficients() {
    let f = FieldSpec::Prime(5);
    let forms: Vec<PolyForm> = [-3i64, 2]
        .iter()
        .map(|&c| PolyForm::from_terms(f, 2, 2, [(vec![0, 1], MultiPoly::from_i64(f, 2, c))]).unwrap())
        .collect();
    let m = forms_matrix(&forms).unwrap().matrix;
    assert_eq!((m.rows(), m.cols()), (1, 2));
    assert_eq!(from_lib(m.get(0, 0), 5), Dense::new(5, &[((0, 0), (-3i64).rem_euclid(5))]));
    assert_eq!(m.get(0, 0), m.get(0, 1));
}

#[test]
fn invariance_and_cofactors_by_expansion() {
    let p = 0;
    let one = Dense::new(p, &[((0, 0), 1)]);
    let zero = Dense::new(p, &[]);
    let (a, b) = (y(p), x(p).neg());
    let omega = one_form(&a, &b);
    // F = x + y: ω ∧ dF = (y + x) dx∧dy
    let w = wedge11(&a, &b, &one, &one);
    assert_eq!(w, x(p).add(&y(p)));
    assert!(form_invariant(&omega, &x(p).add(&y(p)).to_lib(2)).unwrap().verified);
    // F = x: ω ∧ dx = x dx∧dy, cofactor 1
    let w = wedge11(&a, &b, &one, &zero);
    assert_eq!(w, x(p));
    assert_eq!(from_lib(&dxdy_coeff(&cofactor(&omega, &x(p).to_lib(2)).unwrap().form), p), one);

    // y dx + x dy over F_2, F = x + 1: ω ∧ dF = -x dx∧dy, not divisible by x + 1
    let p2 = 2;
    let w = wedge11(&y(p2), &x(p2), &Dense::new(p2, &[((0, 0), 1)]), &Dense::new(p2, &[]));
    assert_eq!(w, x(p2).neg());
    let f = Dense::new(p2, &[((1, 0), 1), ((0, 0), 1)]).to_lib(2);
    assert!(!form_invariant(&one_form(&y(p2), &x(p2)), &f).unwrap().verified);
}

#[test]
fn equal_cofactors_give_a_two_dimensional_kernel() {
    let p = 0;
    let omega = one_form(&y(p), &x(p).neg());
    let fs = [x(p), y(p), x(p).add(&y(p))];
    let cofs: Vec<_> = fs.iter().map(|f| cofactor(&omega, &f.to_lib(2)).unwrap()).collect();
    for c in &cofs {
        assert_eq!(from_lib(&dxdy_coeff(&c.form), p), Dense::new(p, &[((0, 0), 1)]));
    }
    let kernel = cofactor_dependence(&cofs).unwrap();
    assert_eq!(kernel.len(), 2);
    for v in &kernel {
        let s: Rational64 = v
            .iter()
            .map(|l| {
                let r = l.as_scalar().unwrap();
                let r = r.as_rational().unwrap();
                Rational64::new(r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap())
            })
            .sum();
        assert!(s.is_zero());
    }
}

#[test]
fn logarithmic_form_over_common_denominator() {
    let p = 0;
    let q = FieldSpec::Rationals;
    let lambda = [DConstant::scalar(q, 2, q.from_i64(1)), DConstant::scalar(q, 2, q.from_i64(-1))];
    let eta = build_logform(&lambda, &[x(p).to_lib(2), y(p).to_lib(2)]).unwrap();
    let (num, den) = eta.cleared();
    // (y dx - x dy) / (x y)
    assert_eq!(from_lib(&den, p), x(p).mul(&y(p)));
    assert_eq!(from_lib(&num.component(0), p), y(p));
    assert_eq!(from_lib(&num.component(1), p), x(p).neg());
    assert!(tangency_check(&one_form(&y(p), &x(p).neg()), &eta).verified);
}

#[test]
fn multiplicative_integrals_by_differentiation() {
    // G = x^2 y^3 over F_5: dG = x y^2 (2 y dx + 3 x dy)
    let p = 5;
    let g = x(p).mul(&x(p)).mul(&y(p).mul(&y(p)).mul(&y(p)));
    let factor = x(p).mul(&y(p)).mul(&y(p));
    let a = y(p).mul(&Dense::new(p, &[((0, 0), 2)]));
    let b = x(p).mul(&Dense::new(p, &[((0, 0), 3)]));
    assert_eq!(g.diff(0), factor.mul(&a));
    assert_eq!(g.diff(1), factor.mul(&b));
    let res = multiplicative_integral(&one_form(&a, &b), &[x(p).to_lib(2), y(p).to_lib(2)]).unwrap();
    assert_eq!(res.exponents, vec![2.into(), 3.into()]);

    // x / y over Q: y^2 d(x/y) = y dx - x dy
    let p = 0;
    let res = multiplicative_integral(&one_form(&y(p), &x(p).neg()), &[x(p).to_lib(2), y(p).to_lib(2)]).unwrap();
    assert_eq!(res.exponents, vec![1.into(), (-1).into()]);
    let num = x(p).diff(0).mul(&y(p)).add(&x(p).mul(&y(p).diff(0)).neg());
    assert_eq!(num, y(p));
}

#[test]
fn rational_integral_of_the_radial_form() {
    let p = 0;
    let omega = one_form(&y(p), &x(p).neg());
    let fs: Vec<MultiPoly> = [x(p), y(p), x(p).add(&y(p))].iter().map(|f| f.to_lib(2)).collect();
    let res = rational_first_integral(&omega, &fs, SubsetStrategy::Exhaustive).unwrap();
    // f = -(x + y)/x
    let expected = RatFunc::new(x(p).add(&y(p)).neg().to_lib(2), x(p).to_lib(2)).unwrap();
    assert_eq!(res.function, expected);
    // df = (y dx - x dy)/x^2: numerator of d(-(x+y)/x) over x^2
    let n = x(p).add(&y(p)).neg();
    let d = x(p);
    let dfx = n.diff(0).mul(&d).add(&n.mul(&d.diff(0)).neg());
    let dfy = n.diff(1).mul(&d).add(&n.mul(&d.diff(1)).neg());
    assert_eq!((dfx, dfy), (y(p), x(p).neg()));
    assert!(first_integral_check(&omega, &res.function).verified);
    assert_eq!(
        rational_first_integral(&omega, &fs[..2], SubsetStrategy::Exhaustive).unwrap_err(),
        DarbouxError::NoDependence
    );
}

#[test]
fn zero_cofactor_in_characteristic_two() {
    let p = 2;
    let f = x(p).mul(&y(p)).add(&Dense::new(p, &[((0, 0), 1)]));
    // ω = d(xy) = y dx + x dy; ω ∧ d(xy + 1) = (y x - x y) = 0
    assert!(wedge11(&y(p), &x(p), &f.diff(0), &f.diff(1)).is_zero());
    let omega = one_form(&y(p), &x(p));
    assert!(cofactor(&omega, &f.to_lib(2)).unwrap().form.is_zero());
    let fs: Vec<MultiPoly> = [x(p), y(p), f].iter().map(|g| g.to_lib(2)).collect();
    let res = rational_first_integral(&omega, &fs, SubsetStrategy::Exhaustive).unwrap();
    assert!(first_integral_check(&omega, &res.function).verified);
}

#[test]
fn first_integral_of_the_radial_form() {
    let p = 0;
    let omega = one_form(&y(p), &x(p).neg());
    assert!(first_integral_check(&omega, &RatFunc::new(x(p).to_lib(2), y(p).to_lib(2)).unwrap()).verified);
}

/// Coefficient of `x^-1` in `x^s g'/g` with `g(0) != 0` or `g = x^k h`, by
/// power-series division mod `p`.
fn residue_oracle(p: i64, s: i64, g: &[i64]) -> i64 {
    let k = g.iter().take_while(|&&c| c == 0).count() as i64;
    let h: Vec<i64> = g[k as usize..].to_vec();
    // g'/g = k/x + h'/h
    let dh: Vec<i64> = (1..h.len()).map(|i| (i as i64 * h[i]).rem_euclid(p)).collect();
    let inv0 = (1..p).find(|t| (t * h[0]).rem_euclid(p) == 1).unwrap();
    let need = (-s).max(0) as usize + 1;
    let mut q = vec![0i64; need];
    for i in 0..need {
        let mut acc = *dh.get(i).unwrap_or(&0);
        for j in 1..=i.min(h.len() - 1) {
            acc -= h[j] * q[i - j];
        }
        q[i] = (acc * inv0).rem_euclid(p);
    }
    // x^s (k/x + Σ q_i x^i): residue from k when s = 0, and from q_{-s-1}
    let mut res = if s == 0 { k } else { 0 };
    if s <= -1 {
        res += q[(-s - 1) as usize];
    }
    res.rem_euclid(p)
}

#[test]
fn logarithmic_residues() {
    let f3 = FieldSpec::Prime(3);
    let g = Dense::new(3, &[((2, 0), 1), ((3, 0), 1)]).to_lib(1);
    assert_eq!(residue_oracle(3, 0, &[0, 0, 1, 1]), 2);
    assert_eq!(log_residue(&RatFunc::one(f3, 1), &g).unwrap(), f3.from_i64(2));
    let f2 = FieldSpec::Prime(2);
    let g = Dense::new(2, &[((0, 0), 1), ((1, 0), 1)]).to_lib(1);
    assert_eq!(residue_oracle(2, -2, &[1, 1]), 1);
    assert_eq!(log_residue(&monomial_ratfunc(f2, -2), &g).unwrap(), f2.from_i64(1));
    for p in [2i64, 3, 5, 7] {
        // α = x^{-p}, g = 1 + x gives (-1)^{p-1} = 1
        assert_eq!(residue_oracle(p, -p, &[1, 1]), 1);
        let f = FieldSpec::Prime(p as u64);
        let g = Dense::new(p, &[((0, 0), 1), ((1, 0), 1)]).to_lib(1);
        assert_eq!(log_residue(&monomial_ratfunc(f, -p), &g).unwrap(), f.from_i64(1));
    }
}

#[test]
fn small_searches() {
    let f2 = FieldSpec::Prime(2);
    let omega = PolyForm::dz(f2, 2, 0);
    // F | ∂F/∂y: among degree-1 F only those without y
    let found = enumerate_invariants(&omega, &SearchBudget::new(f2, 1)).unwrap();
    let expected = [x(2), x(2).add(&Dense::new(2, &[((0, 0), 1)]))];
    assert_eq!(found.iter().map(|f| from_lib(f, 2)).collect::<Vec<_>>(), expected);

    let omega = one_form(&y(3), &x(3).neg());
    let found: Vec<Dense> = enumerate_invariants(&omega, &SearchBudget::new(FieldSpec::Prime(3), 1))
        .unwrap()
        .iter()
        .map(|f| from_lib(f, 3))
        .collect();
    for g in [x(3), y(3), x(3).add(&y(3)), x(3).add(&y(3).neg())] {
        let lead = from_lib(&g.to_lib(2).monic(), 3);
        assert!(found.contains(&lead), "{lead:?}");
    }
}
