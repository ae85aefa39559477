//! Multiplicative characters, Gauss sums and Jacobi-type sums, evaluated in
//! double precision by direct summation.
//!
//! Characters are indexed by an exponent `j` in `[0, q-1)`:
//! chi_j(g^t) = exp(2 pi i j t / (q - 1)). At zero the trivial character
//! takes the value 1 and every other character takes the value 0.
//!
//! Nothing here feeds the exact counting path; these sums exist to check
//! the classical identities numerically.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

#[derive(Clone, Copy)]
pub struct Character<'f> {
    field: &'f FiniteField,
    j: u32,
}

impl std::fmt::Debug for Character<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi_{} (q = {})", self.j, self.field.q())
    }
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.j == other.j
    }
}

impl<'f> Character<'f> {
    pub fn new(field: &'f FiniteField, j: u64) -> Self {
        let j = (j % field.order() as u64) as u32;
        Character { field, j }
    }

    pub fn trivial(field: &'f FiniteField) -> Self {
        Character { field, j: 0 }
    }

    pub fn field(&self) -> &'f FiniteField {
        self.field
    }

    pub fn index(&self) -> u32 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// (q - 1) / gcd(j, q - 1).
    pub fn order(&self) -> u32 {
        let n = self.field.order();
        n / self.j.gcd(&n)
    }

    pub fn product(&self, other: &Character<'f>) -> Character<'f> {
        Character::new(self.field, self.j as u64 + other.j as u64)
    }

    pub fn inverse(&self) -> Character<'f> {
        Character::new(self.field, (self.field.order() - self.j) as u64)
    }

    pub fn pow(&self, e: u64) -> Character<'f> {
        let n = self.field.order() as u64;
        Character::new(self.field, (self.j as u64 * (e % n)) % n)
    }

    pub fn eval(&self, x: FieldElement) -> Complex64 {
        eval_char(self, x)
    }

    /// Values at every field element, indexed by encoding.
    pub fn values(&self) -> Vec<Complex64> {
        self.field.elements().map(|x| self.eval(x)).collect()
    }
}

fn root_of_unity(k: u64, n: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % n) as f64 / n as f64)
}

pub fn eval_char(chi: &Character<'_>, x: FieldElement) -> Complex64 {
    if x.is_zero() {
        return if chi.is_trivial() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let n = chi.field.order() as u64;
    let t = chi.field.discrete_log(x).expect("nonzero") as u64;
    root_of_unity(chi.j as u64 * t % n, n)
}

/// Every character whose d-th power is trivial.
pub fn characters_of_order_dividing(field: &FiniteField, d: u32) -> Vec<Character<'_>> {
    let n = field.order();
    let count = d.gcd(&n);
    let step = n / count;
    (0..count)
        .map(|i| Character::new(field, (i * step) as u64))
        .collect()
}

/// g_a(chi) = sum_t chi(t) zeta^{Tr(a t)} with zeta = exp(2 pi i / p).
pub fn gauss_sum(field: &FiniteField, a: FieldElement, chi: &Character<'_>) -> Complex64 {
    let p = field.p() as u64;
    let zeta: Vec<Complex64> = (0..p).map(|k| root_of_unity(k, p)).collect();
    field
        .elements()
        .map(|t| chi.eval(t) * zeta[field.trace(field.mul(a, t)) as usize])
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum JacobiKind {
    /// y_1 + ... + y_n = 1.
    J,
    /// y_1 + ... + y_n = 0.
    J0,
    /// y_1 + ... + y_n = 1 with every y_i nonzero.
    JStar,
    /// y_1 + ... + y_n = 0 with every y_i nonzero.
    J0Star,
}

impl JacobiKind {
    fn target(self) -> FieldElement {
        match self {
            JacobiKind::J | JacobiKind::JStar => FieldElement::ONE,
            JacobiKind::J0 | JacobiKind::J0Star => FieldElement::ZERO,
        }
    }

    fn excludes_zero(self) -> bool {
        matches!(self, JacobiKind::JStar | JacobiKind::J0Star)
    }
}

/// Jacobi-type sum by direct summation over the hyperplane; costs q^{n-1} terms.
pub fn jacobi(kind: JacobiKind, chis: &[Character<'_>], budget: &Budget) -> Result<Complex64> {
    let first = chis
        .first()
        .ok_or_else(|| Error::Precondition("a Jacobi sum needs at least one character".into()))?;
    let field = first.field;
    let n = chis.len();
    let q = field.q() as f64;
    Budget::check("jacobi direct sum", q.powi(n as i32 - 1), budget.direct_sum)?;
    let tables: Vec<Vec<Complex64>> = chis.iter().map(Character::values).collect();
    let mut total = Complex64::new(0.0, 0.0);
    hyperplane_sum(
        field,
        &tables,
        kind.excludes_zero(),
        kind.target(),
        FieldElement::ZERO,
        Complex64::new(1.0, 0.0),
        &mut total,
    );
    Ok(total)
}

fn hyperplane_sum(
    field: &FiniteField,
    tables: &[Vec<Complex64>],
    nonzero: bool,
    target: FieldElement,
    partial: FieldElement,
    weight: Complex64,
    total: &mut Complex64,
) {
    let (last, rest) = tables.split_last().expect("nonempty");
    if rest.is_empty() {
        let y = field.sub(target, partial);
        if !(nonzero && y.is_zero()) {
            *total += weight * last[y.index()];
        }
        return;
    }
    let head = &tables[0];
    for y in field.elements().skip(usize::from(nonzero)) {
        let v = head[y.index()];
        if v.norm_sqr() == 0.0 {
            continue;
        }
        hyperplane_sum(
            field,
            &tables[1..],
            nonzero,
            target,
            field.add(partial, y),
            weight * v,
            total,
        );
    }
}

/// Deviation summary for one family of identities.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FamilyReport {
    pub family: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl FamilyReport {
    fn new(family: &'static str, tolerance: f64) -> Self {
        FamilyReport {
            family,
            checked: 0,
            failures: 0,
            max_deviation: 0.0,
            tolerance,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.checked += 1;
        if !(deviation < self.tolerance) {
            self.failures += 1;
        }
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IdentityReport {
    pub q: u32,
    pub d: u32,
    pub n: usize,
    pub tuples: u64,
    pub families: Vec<FamilyReport>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn max_deviation(&self) -> f64 {
        self.families
            .iter()
            .map(|f| f.max_deviation)
            .fold(0.0, f64::max)
    }
}

pub const FAMILY_CASES: &str = "jacobi_case_table";
pub const FAMILY_FACTORIZATION: &str = "gauss_jacobi_factorization";
pub const FAMILY_TRIVIAL_PRODUCT: &str = "trivial_product_reduction";
pub const FAMILY_MAGNITUDE: &str = "jacobi_magnitude";

/// Memoized Jacobi and Gauss sums over one field. J, J0 and their starred
/// variants are symmetric in their arguments, so keys are sorted exponents.
pub struct SumCache<'f> {
    field: &'f FiniteField,
    budget: Budget,
    jacobi: HashMap<(JacobiKind, Vec<u32>), Complex64>,
    gauss: HashMap<u32, Complex64>,
}

impl<'f> SumCache<'f> {
    pub fn new(field: &'f FiniteField, budget: Budget) -> Self {
        SumCache {
            field,
            budget,
            jacobi: HashMap::new(),
            gauss: HashMap::new(),
        }
    }

    pub fn jacobi(&mut self, kind: JacobiKind, js: &[u32]) -> Result<Complex64> {
        let mut key = js.to_vec();
        key.sort_unstable();
        if let Some(v) = self.jacobi.get(&(kind, key.clone())) {
            return Ok(*v);
        }
        let chis: Vec<_> = key
            .iter()
            .map(|&j| Character::new(self.field, j as u64))
            .collect();
        let v = jacobi(kind, &chis, &self.budget)?;
        self.jacobi.insert((kind, key), v);
        Ok(v)
    }

    pub fn gauss(&mut self, j: u32) -> Complex64 {
        let field = self.field;
        *self.gauss.entry(j).or_insert_with(|| {
            gauss_sum(field, FieldElement::ONE, &Character::new(field, j as u64))
        })
    }
}

/// Checks the case table of the four Jacobi-type sums, the Gauss/Jacobi
/// factorization, the reductions for tuples with trivial product, and the
/// magnitude formulas, for every ordered n-tuple of characters whose d-th
/// power is trivial. Tolerance is 1e-9 * q^{n-1}.
pub fn verify_charsum_identities(
    field: &FiniteField,
    d: u32,
    n: usize,
    budget: &Budget,
) -> Result<IdentityReport> {
    let mut cache = SumCache::new(field, *budget);
    verify_with_cache(&mut cache, d, n)
}

pub fn verify_with_cache(cache: &mut SumCache<'_>, d: u32, n: usize) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Precondition("arity must be at least 1".into()));
    }
    let field = cache.field;
    let qf = field.q() as f64;
    let order = field.order();
    Budget::check(
        "jacobi direct sum",
        qf.powi(n as i32 - 1),
        cache.budget.direct_sum,
    )?;
    let tol = 1e-9 * qf.powi(n as i32 - 1);
    let mut cases = FamilyReport::new(FAMILY_CASES, tol);
    let mut factor = FamilyReport::new(FAMILY_FACTORIZATION, tol);
    let mut reduce = FamilyReport::new(FAMILY_TRIVIAL_PRODUCT, tol);
    let mut magnitude = FamilyReport::new(FAMILY_MAGNITUDE, tol);

    let chars: Vec<u32> = characters_of_order_dividing(field, d)
        .iter()
        .map(Character::index)
        .collect();
    let minus_one = field.neg(FieldElement::ONE);
    let chi_at = |j: u32, x: FieldElement| Character::new(field, j as u64).eval(x);

    let mut tuples = 0;
    let mut tuple = vec![0usize; n];
    loop {
        tuples += 1;
        let js: Vec<u32> = tuple.iter().map(|&i| chars[i]).collect();
        let e = js.iter().filter(|&&j| j == 0).count();
        let nontrivial: Vec<u32> = js.iter().copied().filter(|&j| j != 0).collect();
        let prod = (js.iter().map(|&j| j as u64).sum::<u64>() % order as u64) as u32;
        let nn = n as i32;

        let j_val = cache.jacobi(JacobiKind::J, &js)?;
        let j0_val = cache.jacobi(JacobiKind::J0, &js)?;
        let js_val = cache.jacobi(JacobiKind::JStar, &js)?;
        let j0s_val = cache.jacobi(JacobiKind::J0Star, &js)?;
        let real = |x: f64| Complex64::new(x, 0.0);

        // Case table.
        if e == n {
            let full = real(qf.powi(nn - 1));
            cases.record((j_val - full).norm());
            cases.record((j0_val - full).norm());
            let star = ((qf - 1.0).powi(nn) - (-1f64).powi(nn)) / qf;
            cases.record((js_val - real(star)).norm());
            let star0 = ((qf - 1.0).powi(nn) - (qf - 1.0) * (-1f64).powi(nn - 1)) / qf;
            cases.record((j0s_val - real(star0)).norm());
        } else {
            if e >= 1 {
                cases.record(j_val.norm());
                cases.record(j0_val.norm());
            } else if prod != 0 {
                cases.record(j0_val.norm());
            } else {
                let head = cache.jacobi(JacobiKind::J, &js[..n - 1])?;
                let expect = chi_at(js[n - 1], minus_one) * (qf - 1.0) * head;
                cases.record((j0_val - expect).norm());
            }
            let sign = if e % 2 == 0 { 1.0 } else { -1.0 };
            let sub_j = cache.jacobi(JacobiKind::J, &nontrivial)?;
            let sub_j0 = cache.jacobi(JacobiKind::J0, &nontrivial)?;
            cases.record((js_val - sign * sub_j).norm());
            cases.record((j0s_val - sign * sub_j0).norm());
        }

        if e == 0 {
            let gauss_product: Complex64 = js.iter().map(|&j| cache.gauss(j)).product();
            if prod != 0 {
                let rhs = j_val * cache.gauss(prod);
                factor.record((gauss_product - rhs).norm());
                magnitude.record((j_val.norm() - qf.powf((nn - 1) as f64 / 2.0)).abs());
            } else {
                // n >= 2 here: a single nontrivial character has nontrivial product.
                let sign_n = chi_at(js[n - 1], minus_one);
                let head = cache.jacobi(JacobiKind::J, &js[..n - 1])?;
                reduce.record((gauss_product - sign_n * qf * head).norm());
                reduce.record((j_val + sign_n * head).norm());
                magnitude.record((j0_val.norm() - (qf - 1.0) * qf.powf(nn as f64 / 2.0 - 1.0)).abs());
                magnitude.record((j_val.norm() - qf.powf(nn as f64 / 2.0 - 1.0)).abs());
            }
            // |J| <= q^{(n-1)/2}: record the excess, zero when within the bound.
            let excess = (j_val.norm() - qf.powf((nn - 1) as f64 / 2.0)).max(0.0);
            magnitude.record(excess);
        }

        // Next tuple, odometer style.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(IdentityReport {
                    q: field.q(),
                    d,
                    n,
                    tuples,
                    families: vec![cases, factor, reduce, magnitude],
                });
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < chars.len() {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Max |g(chi)| - sqrt(q) over all nontrivial characters; `None` when q = 2.
pub fn gauss_magnitude_deviation(field: &FiniteField) -> Option<f64> {
    let root = (field.q() as f64).sqrt();
    (1..field.order())
        .map(|j| {
            let g = gauss_sum(field, FieldElement::ONE, &Character::new(field, j as u64));
            (g.norm() - root).abs()
        })
        .reduce(f64::max)
}

/// Max deviation of #{x in F_q : x^d = a} from sum_{chi^d = 1} chi(a), over all a.
pub fn power_count_deviation(field: &FiniteField, d: u32) -> f64 {
    let mut roots = vec![0u32; field.q() as usize];
    for x in field.elements() {
        roots[field.pow(x, d as u64).index()] += 1;
    }
    let chars = characters_of_order_dividing(field, d);
    field
        .elements()
        .map(|a| {
            let s: Complex64 = chars.iter().map(|c| c.eval(a)).sum();
            (s - Complex64::new(roots[a.index()] as f64, 0.0)).norm()
        })
        .fold(0.0, f64::max)
}

/// Max |chi(ab) - chi(a) chi(b)| over every character and all nonzero a, b.
pub fn multiplicativity_deviation(field: &FiniteField) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..field.order() {
        let chi = Character::new(field, j as u64);
        let vals = chi.values();
        for a in field.nonzero_elements() {
            for b in field.nonzero_elements() {
                let dev = (vals[field.mul(a, b).index()] - vals[a.index()] * vals[b.index()]).norm();
                worst = worst.max(dev);
            }
        }
    }
    worst
}

/// Max deviation of sum_{x != 0} chi_j(x) from (q - 1)[j = 0].
pub fn orthogonality_deviation(field: &FiniteField) -> f64 {
    (0..field.order())
        .map(|j| {
            let chi = Character::new(field, j as u64);
            let s: Complex64 = field.nonzero_elements().map(|x| chi.eval(x)).sum();
            let expect = if j == 0 { field.order() as f64 } else { 0.0 };
            (s - Complex64::new(expect, 0.0)).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-9
    }

    #[test]
    fn zero_convention() {
        let f = make_field(7, 1).unwrap();
        assert!(close(Character::trivial(&f).eval(FieldElement::ZERO), 1.0, 0.0));
        for j in 1..6 {
            assert!(close(Character::new(&f, j).eval(FieldElement::ZERO), 0.0, 0.0));
        }
    }

    #[test]
    fn quadratic_character_at_non_residue() {
        let f = make_field(7, 1).unwrap();
        let chi = Character::new(&f, 3);
        assert_eq!(chi.order(), 2);
        assert!(close(chi.eval(f.element(3).unwrap()), -1.0, 0.0));
        assert!(close(chi.eval(f.element(2).unwrap()), 1.0, 0.0));
    }

    #[test]
    fn gauss_sum_examples() {
        let f = make_field(7, 1).unwrap();
        let triv = Character::trivial(&f);
        assert!(close(gauss_sum(&f, FieldElement::ONE, &triv), 0.0, 0.0));
        assert!(close(gauss_sum(&f, FieldElement::ZERO, &triv), 7.0, 0.0));
        for j in 1..6 {
            let g = gauss_sum(&f, FieldElement::ONE, &Character::new(&f, j));
            assert!((g.norm() - 7f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_examples() {
        let f = make_field(7, 1).unwrap();
        let b = Budget::default();
        let triv = Character::trivial(&f);
        assert!(close(jacobi(JacobiKind::J, &[triv, triv], &b).unwrap(), 7.0, 0.0));
        assert!(close(jacobi(JacobiKind::JStar, &[triv, triv], &b).unwrap(), 5.0, 0.0));
        let quad = Character::new(&f, 3);
        let conj = quad.inverse();
        assert!(close(jacobi(JacobiKind::J0, &[quad, conj], &b).unwrap(), -6.0, 0.0));
        assert!(jacobi(JacobiKind::J, &[], &b).is_err());
    }

    #[test]
    fn jacobi_budget() {
        let f = make_field(7, 1).unwrap();
        let tiny = Budget {
            direct_sum: 10,
            ..Budget::default()
        };
        let triv = Character::trivial(&f);
        assert!(matches!(
            jacobi(JacobiKind::J, &[triv, triv, triv], &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn identity_examples() {
        let b = Budget::default();
        let f7 = make_field(7, 1).unwrap();
        let r = verify_charsum_identities(&f7, 2, 2, &b).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.max_deviation() < 1e-9 * 7.0);

        let f5 = make_field(5, 1).unwrap();
        let r = verify_charsum_identities(&f5, 1, 2, &b).unwrap();
        assert!(r.passed());
        assert_eq!(r.tuples, 1);
        let j = jacobi(JacobiKind::J, &[Character::trivial(&f5); 2], &b).unwrap();
        assert!(close(j, 5.0, 0.0));
    }

    #[test]
    fn nine_element_magnitudes() {
        let b = Budget::default();
        let f9 = make_field(3, 2).unwrap();
        let r = verify_charsum_identities(&f9, 4, 3, &b).unwrap();
        assert!(r.passed(), "{r:?}");
        // Nontrivial triple with trivial product: |J| = q^{1/2} = 3.
        let c2 = Character::new(&f9, 2);
        let c4 = Character::new(&f9, 4);
        let j = jacobi(JacobiKind::J, &[c2, c2, c4], &b).unwrap();
        assert!((j.norm() - 3.0).abs() < 1e-9);
        // Nontrivial triple with nontrivial product: |J| = q = 9.
        let j = jacobi(JacobiKind::J, &[c2, c2, c2], &b).unwrap();
        assert!((j.norm() - 9.0).abs() < 1e-9);
    }
}
