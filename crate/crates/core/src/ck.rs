//! The Cauchy-Kowalewski extension engine: symbolic Clifford polynomials
//! with the explicit extension formula, Fueter series with the CK product,
//! the monogenic exponential E(x) with its Cosh/Sinh parts, and the
//! derivative-moment identity.

use std::collections::{BTreeMap, HashMap};


use crate::clifford::{Coeff, Multivector, Paravector};
use crate::combin::{EPrimeTable, MultiIndex};
use crate::error::{Error, Result};
use crate::fueter::FueterEvaluator;

/// Degree cap for the symbolic CK extension.
pub const MAX_CK_DEGREE: u32 = 20;

/// Finitely supported polynomial in the real variables x_0 ... x_n with
/// Multivector coefficients on the right of the monomials; the workspace for
/// the explicit CK formula.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordPolynomial<T> {
    n: usize,
    terms: BTreeMap<Vec<u32>, Multivector<T>>,
}

impl<T: Coeff> CliffordPolynomial<T> {
    pub fn zero(n: usize) -> Self {
        CliffordPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Multivector<T>) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n + 1], c);
        p
    }

    /// Monomial x_0^{e_0} x_1^{e_1} ... x_n^{e_n} times a coefficient;
    /// the exponent vector has n+1 entries led by the x_0 power.
    pub fn monomial(n: usize, exponents: Vec<u32>, c: Multivector<T>) -> Self {
        assert_eq!(exponents.len(), n + 1);
        let mut p = Self::zero(n);
        p.add_term(exponents, c);
        p
    }

    /// Monomial in the imaginary variables only: x_1^{m_1} ... x_n^{m_n}.
    pub fn vec_monomial(m: &MultiIndex, c: Multivector<T>) -> Self {
        let n = m.n();
        let mut exp = vec![0u32; n + 1];
        exp[1..].copy_from_slice(&m.0);
        Self::monomial(n, exp, c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Multivector<T>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: Multivector<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CliffordPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(s));
        }
        out
    }

    /// Product; the real monomials commute while the Clifford coefficients
    /// multiply in order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    /// Left multiplication of every coefficient by a fixed multivector.
    pub fn mul_coeff_left(&self, w: &Multivector<T>) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), w * c);
        }
        out
    }

    /// d/dx_var, with var = 0 for x_0 and var = i for x_i.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var <= self.n);
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[var] -= 1;
            out.add_term(exp, c.scale(&T::from_u32(e[var]).expect("small integer")));
        }
        out
    }

    /// Laplacian in the imaginary variables x_1 ... x_n.
    pub fn laplacian_vec(&self) -> Self {
        let mut acc = Self::zero(self.n);
        for i in 1..=self.n {
            acc = acc.add(&self.partial(i).partial(i));
        }
        acc
    }

    /// Conjugated Cauchy-Riemann operator on polynomials:
    /// Dbar p = d/dx_0 p - sum_i e_i d/dx_i p (units on the left).
    pub fn dbar(&self) -> Self {
        let mut acc = self.partial(0);
        for i in 1..=self.n {
            let ei = Multivector::basis(self.n, i);
            acc = acc.add(&self.partial(i).mul_coeff_left(&ei).neg());
        }
        acc
    }

    /// Multiply by x_0^power / scale.
    fn shift_x0(&self, power: u32, inv_scale: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[0] += power;
            out.add_term(exp, c.scale(inv_scale));
        }
        out
    }

    /// Restriction to the hyperplane x_0 = 0.
    pub fn restrict_x0(&self) -> Self {
        CliffordPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when no term involves x_0.
    pub fn is_vec_only(&self) -> bool {
        self.terms.keys().all(|e| e[0] == 0)
    }

    pub fn eval(&self, x: &Paravector<T>) -> Multivector<T> {
        assert_eq!(x.n(), self.n);
        let mut acc = Multivector::zero(self.n);
        for (e, c) in &self.terms {
            let mut factor = pow_t(&x.x0, e[0]);
            for i in 1..=self.n {
                factor = factor * pow_t(&x.xv[i - 1], e[i]);
            }
            acc = &acc + &c.scale(&factor);
        }
        acc
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> CliffordPolynomial<U> {
        CliffordPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.map_coeffs(&f)))
                .collect(),
        }
    }
}

fn pow_t<T: Coeff>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

fn factorial_t<T: Coeff>(k: u32) -> T {
    let mut acc = T::one();
    for i in 1..=k {
        acc = acc * T::from_u32(i).expect("small integer");
    }
    acc
}

/// The unique left monogenic extension of a polynomial in x_1 ... x_n:
/// f* = sum_k (-1)^k Dbar[ x_0^{2k+1}/(2k+1)! Laplacian^k p ]. The sum is
/// finite because the Laplacian eventually kills p; the restriction of the
/// result to x_0 = 0 reproduces p exactly.
pub fn ck_extend<T: Coeff>(p: &CliffordPolynomial<T>) -> Result<CliffordPolynomial<T>> {
    if !p.is_vec_only() {
        return Err(Error::Domain(
            "CK extension input must not involve x_0".into(),
        ));
    }
    if p.total_degree() > MAX_CK_DEGREE {
        return Err(Error::Budget(format!(
            "degree {} exceeds CK budget {}",
            p.total_degree(),
            MAX_CK_DEGREE
        )));
    }
    let mut out = CliffordPolynomial::zero(p.n());
    let mut lap = p.clone();
    let mut k = 0u32;
    while !lap.is_zero() {
        let inv = T::one() / factorial_t::<T>(2 * k + 1);
        let shifted = lap.shift_x0(2 * k + 1, &inv);
        let term = shifted.dbar();
        out = if k % 2 == 0 {
            out.add(&term)
        } else {
            out.add(&term.neg())
        };
        lap = lap.laplacian_vec();
        k += 1;
    }
    Ok(out)
}

/// Symbolic Fueter polynomial P_k as a CliffordPolynomial, by the same
/// recursion the point evaluator uses with z_i = x_i - x_0 e_i.
pub fn fueter_polynomial_sym<T: Coeff>(n: usize, k: &MultiIndex) -> CliffordPolynomial<T> {
    let mut memo: HashMap<MultiIndex, CliffordPolynomial<T>> = HashMap::new();
    fueter_sym_rec(n, k, &mut memo)
}

fn fueter_sym_rec<T: Coeff>(
    n: usize,
    k: &MultiIndex,
    memo: &mut HashMap<MultiIndex, CliffordPolynomial<T>>,
) -> CliffordPolynomial<T> {
    if k.is_zero() {
        return CliffordPolynomial::constant(n, Multivector::one(n));
    }
    if let Some(hit) = memo.get(k) {
        return hit.clone();
    }
    let mut acc = CliffordPolynomial::zero(n);
    for i in 1..=n {
        if let Some(prev) = k.sub_unit(i) {
            let zi = fueter_variable_sym::<T>(n, i);
            let prev_poly = fueter_sym_rec(n, &prev, memo);
            let ki = T::from_u32(k.0[i - 1]).expect("small integer");
            acc = acc.add(&prev_poly.mul(&zi).scale(&ki));
        }
    }
    let inv = T::one() / T::from_u32(k.total()).expect("small integer");
    let out = acc.scale(&inv);
    memo.insert(k.clone(), out.clone());
    out
}

/// z_i = x_i - x_0 e_i as a symbolic polynomial.
pub fn fueter_variable_sym<T: Coeff>(n: usize, i: usize) -> CliffordPolynomial<T> {
    let mut p = CliffordPolynomial::zero(n);
    let mut exp = vec![0u32; n + 1];
    exp[i] = 1;
    p.add_term(exp, Multivector::one(n));
    let mut exp = vec![0u32; n + 1];
    exp[0] = 1;
    p.add_term(exp, -&Multivector::basis(n, i));
    p
}

/// Truncated monogenic series sum_{|m| <= K} P_m(x) a_m with right Clifford
/// coefficients, keyed by multi-index in graded lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct FueterSeries<T> {
    n: usize,
    trunc: u32,
    coeffs: BTreeMap<MultiIndex, Multivector<T>>,
}

impl<T: Coeff> FueterSeries<T> {
    pub fn new(n: usize, trunc: u32) -> Self {
        FueterSeries {
            n,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc_degree(&self) -> u32 {
        self.trunc
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Multivector<T>> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &MultiIndex) -> Multivector<T> {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.n))
    }

    pub fn set_coeff(&mut self, m: MultiIndex, c: Multivector<T>) {
        assert_eq!(m.n(), self.n);
        assert!(m.total() <= self.trunc, "index beyond truncation degree");
        if c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    pub fn add_coeff(&mut self, m: MultiIndex, c: Multivector<T>) {
        let sum = &self.coeff(&m) + &c;
        self.set_coeff(m, sum);
    }

    pub fn scale(&self, s: &T) -> Self {
        FueterSeries {
            n: self.n,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(s)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        out.trunc = self.trunc.max(other.trunc);
        for (m, c) in &other.coeffs {
            out.add_coeff(m.clone(), c.clone());
        }
        out
    }

    /// Right multiplication of every coefficient by a fixed multivector.
    pub fn mul_coeff_right(&self, w: &Multivector<T>) -> Self {
        let mut out = FueterSeries::new(self.n, self.trunc);
        for (m, c) in &self.coeffs {
            out.set_coeff(m.clone(), c * w);
        }
        out
    }

    /// CK product: restrictions to x_0 = 0 multiply as monomial series, so
    /// the coefficient at p is sum_{m+m'=p} a_m b_{m'}, truncated at
    /// min(K_f + K_g, cap).
    pub fn ck_product_capped(&self, other: &Self, cap: u32) -> Self {
        assert_eq!(self.n, other.n);
        let trunc = (self.trunc + other.trunc).min(cap);
        let mut out = FueterSeries::new(self.n, trunc);
        for (ma, a) in &self.coeffs {
            if ma.total() > trunc {
                continue;
            }
            for (mb, b) in &other.coeffs {
                if ma.total() + mb.total() > trunc {
                    continue;
                }
                out.add_coeff(ma.add(mb), a * b);
            }
        }
        out
    }

    pub fn ck_product(&self, other: &Self) -> Self {
        self.ck_product_capped(other, self.trunc + other.trunc)
    }

    /// Node scaling: sum P_m(h x) a_m = sum P_m(x) h^{|m|} a_m.
    pub fn scale_argument(&self, h: &T) -> Self {
        let mut out = FueterSeries::new(self.n, self.trunc);
        for (m, c) in &self.coeffs {
            out.set_coeff(m.clone(), c.scale(&pow_t(h, m.total())));
        }
        out
    }

    /// sum_{|m| = k} a_m, the coefficient-extraction form of
    /// sum_{|m|=k} (1/m!) d^m/dx^m F at 0 (see `derivative_moment`).
    pub fn moment(&self, k: u32) -> Multivector<T> {
        let mut acc = Multivector::zero(self.n);
        for (m, c) in &self.coeffs {
            if m.total() == k {
                acc = &acc + &c.clone();
            }
        }
        acc
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> FueterSeries<U> {
        FueterSeries {
            n: self.n,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), c.map_coeffs(&f)))
                .collect(),
        }
    }

    /// Expand sum P_m(x) a_m symbolically (uniqueness cross-check path).
    pub fn to_polynomial(&self) -> CliffordPolynomial<T> {
        let mut memo: HashMap<MultiIndex, CliffordPolynomial<T>> = HashMap::new();
        let mut acc = CliffordPolynomial::zero(self.n);
        for (m, c) in &self.coeffs {
            let pm = fueter_sym_rec(self.n, m, &mut memo);
            acc = acc.add(&pm.mul(&CliffordPolynomial::constant(self.n, c.clone())));
        }
        acc
    }
}

impl FueterSeries<f64> {
    /// Evaluate at a paravector, Fueter polynomials through the shared
    /// memoized evaluator, terms summed in graded lexicographic order.
    pub fn eval_with(&self, ev: &mut FueterEvaluator<f64>) -> Result<Multivector<f64>> {
        let mut acc = Multivector::zero(self.n);
        for (m, c) in &self.coeffs {
            let pm = ev.eval(m)?;
            acc = &acc + &(&pm * c);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Paravector<f64>) -> Result<Multivector<f64>> {
        self.eval_with(&mut FueterEvaluator::new(x))
    }
}

/// Evaluate a Fueter series at a paravector (spec-level free function).
pub fn fueter_series_eval(series: &FueterSeries<f64>, x: &Paravector<f64>) -> Result<Multivector<f64>> {
    series.eval(x)
}

/// Parity selection for the CK extensions of e, cosh, sinh of the
/// imaginary variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperKind {
    Exp,
    Cosh,
    Sinh,
}

/// E(alpha x), Cosh(alpha x) or Sinh(alpha x) as a Fueter series truncated
/// at total degree K: coefficients a_m = alpha^{|m|} e'_m / |m|!, with only
/// even (Cosh) or odd (Sinh) degrees kept.
pub fn monogenic_hyper(n: usize, alpha: f64, trunc: u32, kind: HyperKind) -> Result<FueterSeries<f64>> {
    if trunc > 40 {
        return Err(Error::Budget(format!("K = {trunc} exceeds series budget 40")));
    }
    let mut table = EPrimeTable::new(n);
    let mut out = FueterSeries::new(n, trunc);
    for k in 0..=trunc {
        match kind {
            HyperKind::Cosh if k % 2 == 1 => continue,
            HyperKind::Sinh if k % 2 == 0 => continue,
            _ => {}
        }
        let scale = alpha.powi(k as i32) / crate::combin::factorial_f64(k);
        if scale == 0.0 && k > 0 {
            continue;
        }
        for m in MultiIndex::of_degree(n, k) {
            let e = table.get_f64(&m)?;
            if e.is_zero() {
                continue;
            }
            out.set_coeff(m, e.scale(&scale));
        }
    }
    Ok(out)
}

/// The monogenic exponential E(alpha x).
pub fn monogenic_exp(n: usize, alpha: f64, trunc: u32) -> Result<FueterSeries<f64>> {
    monogenic_hyper(n, alpha, trunc, HyperKind::Exp)
}

/// (z_1 e_1 + ... + z_n e_n)^{CK k}: homogeneous of degree k with
/// coefficients e'_m, scaled by alpha^k.
pub fn ck_power_series(n: usize, k: u32, alpha: f64) -> Result<FueterSeries<f64>> {
    let mut table = EPrimeTable::new(n);
    let mut out = FueterSeries::new(n, k);
    let scale = alpha.powi(k as i32);
    for m in MultiIndex::of_degree(n, k) {
        let e = table.get_f64(&m)?;
        if e.is_zero() {
            continue;
        }
        out.set_coeff(m, e.scale(&scale));
    }
    Ok(out)
}

/// sum_{|m|=k} (1/m!) d^m/dx^m F at 0, by coefficient extraction: the
/// partials of P_{m'} collapse to m! delta_{m,m'}, so the moment is just
/// sum_{|m|=k} a_m.
///
/// Normalization (settled by the symbolic-derivative oracle in the tests):
/// for the CK power (alpha z_1 e_1 + ... + alpha z_n e_n)^{CK k} the
/// quotient (1/c_k) moment equals alpha^k exactly, while for E(alpha x) the
/// degree-k part carries 1/k!, so the quotient equals alpha^k / k!.
pub fn derivative_moment(series: &FueterSeries<f64>, k: u32) -> Multivector<f64> {
    series.moment(k)
}

/// Tail bound for the evaluation of E past degree K at radius r:
/// sum_{k > K} (n |alpha| r)^k / k!.
pub fn monogenic_exp_tail(n: usize, alpha: f64, r: f64, trunc: u32) -> f64 {
    let base = n as f64 * alpha.abs() * r;
    let mut lead = 1.0;
    for i in 1..=(trunc + 1) {
        lead *= base / i as f64;
    }
    lead * base.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fueter::{fueter_eval, monogenic_residual};
    use crate::slice::exp_paravector;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    type RatPoly = CliffordPolynomial<BigRational>;

    #[test]
    fn ck_extend_linear_and_constant() {
        let n = 2;
        // p = x1 -> z1 = x1 - x0 e1
        let p = RatPoly::vec_monomial(&MultiIndex(vec![1, 0]), Multivector::one(n));
        let ext = ck_extend(&p).unwrap();
        assert_eq!(ext, fueter_variable_sym::<BigRational>(n, 1));

        // p = 1 -> 1
        let p = RatPoly::constant(n, Multivector::one(n));
        assert_eq!(ck_extend(&p).unwrap(), p);
    }

    #[test]
    fn ck_extend_bilinear_is_fueter() {
        let n = 2;
        // p = x1 x2 -> P_(1,1)
        let p = RatPoly::vec_monomial(&MultiIndex(vec![1, 1]), Multivector::one(n));
        let ext = ck_extend(&p).unwrap();
        let fueter = fueter_polynomial_sym::<BigRational>(n, &MultiIndex(vec![1, 1]));
        assert_eq!(ext, fueter);
    }

    #[test]
    fn ck_extend_restriction_is_identity() {
        let n = 3;
        let mut p = RatPoly::zero(n);
        for (m, v) in [
            (MultiIndex(vec![2, 0, 1]), 3i64),
            (MultiIndex(vec![0, 4, 0]), -2),
            (MultiIndex(vec![1, 1, 1]), 5),
        ] {
            p = p.add(&RatPoly::vec_monomial(&m, Multivector::scalar(n, rat(v))));
        }
        let ext = ck_extend(&p).unwrap();
        assert_eq!(ext.restrict_x0(), p);
    }

    #[test]
    fn ck_extension_uniqueness_cross_check() {
        // the identity-theorem shortcut: extending sum x^m lambda_m equals
        // sum P_m(x) lambda_m, exactly in rationals, degree <= 6
        let n = 2;
        let coeff_data = [
            (MultiIndex(vec![0, 0]), 0usize, 2i64),
            (MultiIndex(vec![1, 0]), 0b10, -1),
            (MultiIndex(vec![2, 1]), 0b01, 3),
            (MultiIndex(vec![1, 2]), 0b11, 1),
            (MultiIndex(vec![3, 3]), 0, -4),
        ];
        let mut p = RatPoly::zero(n);
        let mut series = FueterSeries::<BigRational>::new(n, 6);
        for (m, blade, v) in coeff_data {
            let lam = Multivector::blade(n, blade, rat(v));
            p = p.add(&RatPoly::vec_monomial(&m, lam.clone()));
            series.add_coeff(m, lam);
        }
        let ext = ck_extend(&p).unwrap();
        assert_eq!(ext, series.to_polynomial());
    }

    #[test]
    fn ck_extension_is_monogenic() {
        let n = 2;
        let p = RatPoly::vec_monomial(&MultiIndex(vec![3, 1]), Multivector::basis(n, 2));
        let ext = ck_extend(&p).unwrap().map_coeffs(|c| {
            use num_traits::ToPrimitive;
            c.to_f64().unwrap()
        });
        let x = Paravector::new(0.4, vec![0.8, -0.3]);
        let res = monogenic_residual(&move |q: &Paravector<f64>| ext.eval(q), &x, 1e-2);
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn ck_extend_rejects_x0_terms() {
        let n = 2;
        let p = RatPoly::monomial(n, vec![1, 0, 0], Multivector::one(n));
        assert!(matches!(ck_extend(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn fueter_sym_matches_point_eval() {
        let n = 2;
        let x = Paravector::new(0.7, vec![-0.4, 1.1]);
        for k in MultiIndex::up_to_degree(n, 4) {
            let sym = fueter_polynomial_sym::<f64>(n, &k);
            let direct = fueter_eval(&k, &x).unwrap();
            assert!(
                (&sym.eval(&x) - &direct).norm() < 1e-12,
                "k={k:?}"
            );
        }
    }

    #[test]
    fn ck_product_commutes_on_fueter_variables() {
        // z1 CK z2 = z2 CK z1 = P_(1,1)
        let n = 2;
        let mut z1 = FueterSeries::<f64>::new(n, 1);
        z1.set_coeff(MultiIndex(vec![1, 0]), Multivector::one(n));
        let mut z2 = FueterSeries::<f64>::new(n, 1);
        z2.set_coeff(MultiIndex(vec![0, 1]), Multivector::one(n));
        let p12 = z1.ck_product(&z2);
        let p21 = z2.ck_product(&z1);
        assert_eq!(p12, p21);
        assert_eq!(p12.coeff(&MultiIndex(vec![1, 1])), Multivector::one(n));

        // f CK 1 = f
        let one = {
            let mut s = FueterSeries::<f64>::new(n, 0);
            s.set_coeff(MultiIndex::zero(n), Multivector::one(n));
            s
        };
        assert_eq!(z1.ck_product_capped(&one, 1), z1);
    }

    #[test]
    fn exp_adds_frequencies_under_ck_product() {
        // E(a.) CK E(b.) = E((a+b).) on coefficients up to shared truncation
        let n = 3;
        let k = 10;
        let ea = monogenic_exp(n, 1.5, k).unwrap();
        let eb = monogenic_exp(n, -0.5, k).unwrap();
        let prod = ea.ck_product_capped(&eb, k);
        let expect = monogenic_exp(n, 1.0, k).unwrap();
        for m in MultiIndex::up_to_degree(n, k) {
            let d = (&prod.coeff(&m) - &expect.coeff(&m)).norm();
            assert!(d < 1e-12, "m={m:?} diff {d}");
        }
        // commutation
        let ba = eb.ck_product_capped(&ea, k);
        for m in MultiIndex::up_to_degree(n, k) {
            assert!((&prod.coeff(&m) - &ba.coeff(&m)).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_restriction_is_euler_closed_form() {
        let n = 3;
        let series = monogenic_exp(n, 1.0, 40).unwrap();
        for x in [
            Paravector::new(0.0, vec![0.5, -0.7, 0.3]),
            Paravector::new(0.0, vec![1.2, 0.4, -0.2]),
        ] {
            let got = series.eval(&x).unwrap();
            let want = exp_paravector(&x).embed();
            assert!(
                (&got - &want).norm() < 1e-10,
                "diff {}",
                (&got - &want).norm()
            );
        }
    }

    #[test]
    fn exp_is_monogenic_by_residual() {
        let n = 2;
        let series = monogenic_exp(n, 1.0, 30).unwrap();
        let x = Paravector::new(0.3, vec![0.5, -0.4]);
        let res = monogenic_residual(&move |q: &Paravector<f64>| series.eval(q).unwrap(), &x, 1e-2);
        assert!(res < 1e-6, "residual {res}");
    }

    #[test]
    fn exp_zero_is_one() {
        let n = 2;
        let series = monogenic_exp(n, 0.0, 8).unwrap();
        assert_eq!(series.coeffs().len(), 1);
        assert_eq!(series.coeff(&MultiIndex::zero(n)), Multivector::one(n));
    }

    #[test]
    fn cosh_sinh_split_exp() {
        let n = 2;
        let k = 12;
        let e = monogenic_exp(n, 1.0, k).unwrap();
        let c = monogenic_hyper(n, 1.0, k, HyperKind::Cosh).unwrap();
        let s = monogenic_hyper(n, 1.0, k, HyperKind::Sinh).unwrap();
        let sum = c.add(&s);
        for m in MultiIndex::up_to_degree(n, k) {
            assert!((&sum.coeff(&m) - &e.coeff(&m)).norm() < 1e-14);
        }
    }

    #[test]
    fn cosh_difference_identity_sign() {
        // Cosh(a.) - Cosh(b.) = 2 Sinh((a-b)/2 .) CK Sinh((a+b)/2 .);
        // the minus sign (not the paper's plus) is what the truncated
        // series verifies
        let n = 2;
        let k = 14;
        let (a, b) = (1.0, 2.0);
        let lhs = monogenic_hyper(n, a, k, HyperKind::Cosh)
            .unwrap()
            .add(&monogenic_hyper(n, b, k, HyperKind::Cosh).unwrap().scale(&-1.0));
        let s1 = monogenic_hyper(n, (a - b) / 2.0, k, HyperKind::Sinh).unwrap();
        let s2 = monogenic_hyper(n, (a + b) / 2.0, k, HyperKind::Sinh).unwrap();
        let rhs = s1.ck_product_capped(&s2, k).scale(&2.0);
        for m in MultiIndex::up_to_degree(n, k) {
            let d = (&lhs.coeff(&m) - &rhs.coeff(&m)).norm();
            assert!(d < 1e-12, "m={m:?} diff {d}");
        }
    }

    #[test]
    fn ck_power_matches_repeated_product() {
        let n = 2;
        // W_1 = z_1 e_1 + z_2 e_2
        let mut w1 = FueterSeries::<f64>::new(n, 1);
        for i in 1..=n {
            w1.set_coeff(MultiIndex::unit(n, i), Multivector::basis(n, i));
        }
        let mut wk = {
            let mut s = FueterSeries::<f64>::new(n, 0);
            s.set_coeff(MultiIndex::zero(n), Multivector::one(n));
            s
        };
        for k in 1..=4u32 {
            wk = wk.ck_product(&w1);
            let expect = ck_power_series(n, k, 1.0).unwrap();
            for m in MultiIndex::of_degree(n, k) {
                assert!(
                    (&wk.coeff(&m) - &expect.coeff(&m)).norm() < 1e-12,
                    "k={k} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn derivative_moment_normalization() {
        use crate::combin::{c_k_constant, c_k_inverse};
        let n = 2;
        let alpha = 2.0;
        for k in 0..=4u32 {
            // CK power: (1/c_k) moment = alpha^k exactly
            let wk = ck_power_series(n, k, alpha).unwrap();
            let moment = derivative_moment(&wk, k);
            let ck = c_k_constant(n, k).map_coeffs(|c| *c as f64);
            let quotient = &c_k_inverse(n, k) * &moment;
            assert!(
                quotient.approx_eq(&Multivector::scalar(n, alpha.powi(k as i32)), 1e-10),
                "k={k} quotient {quotient:?}"
            );
            // sanity: c_k_inverse really inverts c_k
            let id = &c_k_inverse(n, k) * &ck;
            assert!(id.approx_eq(&Multivector::one(n), 1e-12));

            // E(alpha x): the same quotient picks up 1/k!
            let e = monogenic_exp(n, alpha, 6).unwrap();
            let me = derivative_moment(&e, k);
            let qe = &c_k_inverse(n, k) * &me;
            let expect = alpha.powi(k as i32) / crate::combin::factorial_f64(k);
            assert!(
                qe.approx_eq(&Multivector::scalar(n, expect), 1e-10),
                "k={k} E-quotient {qe:?}"
            );
            // and off-degree moments of the homogeneous power vanish
            if k >= 1 {
                assert!(derivative_moment(&wk, k - 1).is_zero());
            }
        }
    }

    #[test]
    fn derivative_moment_against_symbolic_partials() {
        // brute-force oracle: expand the CK power symbolically, take the
        // m-th partials in the imaginary variables, evaluate at 0
        let n = 2;
        let alpha = 1.5;
        for k in 1..=3u32 {
            let wk = ck_power_series(n, k, alpha).unwrap();
            let poly = wk.to_polynomial();
            let mut acc = Multivector::zero(n);
            for m in MultiIndex::of_degree(n, k) {
                let mut d = poly.clone();
                for i in 1..=n {
                    for _ in 0..m.0[i - 1] {
                        d = d.partial(i);
                    }
                }
                let at0 = d.eval(&Paravector::zero(n));
                acc = &acc + &at0.scale(&(1.0 / m.factorial_f64()));
            }
            let expect = derivative_moment(&wk, k);
            assert!(
                acc.approx_eq(&expect, 1e-10),
                "k={k}: {acc:?} vs {expect:?}"
            );
        }
    }

    #[test]
    fn hyper_e1_truncation_bound() {
        // |sum_{|m|=k} P_m(x) e'_m| <= (|z_1| + ... + |z_n|)^k
        let n = 3;
        let x = Paravector::new(0.4, vec![0.6, -0.8, 0.2]);
        let mut ev = FueterEvaluator::new(&x);
        let zsum: f64 = (1..=n)
            .map(|i| crate::fueter::fueter_variable(i, &x).norm())
            .sum();
        for k in 0..=6u32 {
            let wk = ck_power_series(n, k, 1.0).unwrap();
            let val = wk.eval_with(&mut ev).unwrap();
            assert!(
                val.norm() <= zsum.powi(k as i32) * (1.0 + 1e-12),
                "k={k}: {} vs {}",
                val.norm(),
                zsum.powi(k as i32)
            );
        }
    }

    #[test]
    fn ck_magnitude_shortcut_for_positive_coefficients() {
        // |F CK G| <= F~ G~ for Cosh/Sinh/E pairs (positive real Taylor
        // coefficients)
        let n = 2;
        let k = 10;
        let x = Paravector::new(0.3, vec![0.4, -0.5]);
        let zsum: f64 = (1..=n)
            .map(|i| crate::fueter::fueter_variable(i, &x).norm())
            .sum();
        let tilde = |kind: HyperKind, alpha: f64| -> f64 {
            // sum_j (|z_1|+...+|z_n|)^j |a_j| with a_j = alpha^j/j! by parity
            let mut acc = 0.0;
            let mut term = 1.0;
            for j in 0..=k {
                if j > 0 {
                    term *= alpha.abs() * zsum / j as f64;
                }
                let keep = match kind {
                    HyperKind::Exp => true,
                    HyperKind::Cosh => j % 2 == 0,
                    HyperKind::Sinh => j % 2 == 1,
                };
                if keep {
                    acc += term;
                }
            }
            acc
        };
        for (ka, kb) in [
            (HyperKind::Cosh, HyperKind::Sinh),
            (HyperKind::Exp, HyperKind::Cosh),
            (HyperKind::Sinh, HyperKind::Sinh),
        ] {
            let f = monogenic_hyper(n, 1.0, k, ka).unwrap();
            let g = monogenic_hyper(n, 1.0, k, kb).unwrap();
            let prod = f.ck_product_capped(&g, k);
            let val = prod.eval(&x).unwrap().norm();
            let bound = tilde(ka, 1.0) * tilde(kb, 1.0);
            assert!(val <= bound * (1.0 + 1e-10), "{ka:?} {kb:?}: {val} vs {bound}");
        }
    }
}
