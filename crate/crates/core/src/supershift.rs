//! Supershift evaluators for entire target functions G in both settings,
//! the truncated infinite-order operators behind them as cross-check paths,
//! and the several-frequency constructions.

use crate::ck::{derivative_moment, monogenic_hyper, FueterSeries, HyperKind};
use crate::clifford::{Multivector, Paravector};
use crate::combin::{c_k_inverse, factorial_f64, EPrimeTable, MultiIndex};
use crate::error::{Error, Result};
use crate::fueter::FueterEvaluator;
use crate::slice::{
    coeff_growth_fit, exp_paravector, growth_tail_bound, paravector_pow, GrowthFit, SliceSeries,
};
use crate::superosc::SuperoscSpec;

/// Entire left slice hyperholomorphic target G(lambda) = sum lambda^s G_s,
/// held as a truncated Taylor series with a growth certificate. The `exp`
/// constructor tags the function so evaluation can use the closed form.
#[derive(Clone, Debug)]
pub struct EntireSliceFn {
    series: SliceSeries<f64>,
    fit: GrowthFit,
    closed_exp: bool,
    /// Polynomial targets carry no truncation tail.
    exact: bool,
}

impl EntireSliceFn {
    pub fn from_series(series: SliceSeries<f64>) -> Self {
        let fit = coeff_growth_fit(&series);
        EntireSliceFn {
            series,
            fit,
            closed_exp: false,
            exact: false,
        }
    }

    /// The stored coefficients are the whole function (a polynomial), so
    /// evaluation never truncates.
    pub fn from_polynomial(series: SliceSeries<f64>) -> Self {
        let mut f = Self::from_series(series);
        f.exact = true;
        f
    }

    /// G = exp, with closed-form evaluation.
    pub fn exp(dim: usize) -> Self {
        let mut f = Self::from_series(SliceSeries::exp_series(dim, 1.0, 48));
        f.closed_exp = true;
        f
    }

    /// G(lambda) = sum lambda^s / (s!)^2, an entire function of order 1/2.
    pub fn recip_sq_factorial(dim: usize) -> Self {
        let mut c = 1.0;
        let series = SliceSeries::from_fn(dim, 40, |s| {
            if s > 0 {
                c /= (s * s) as f64;
            }
            Multivector::scalar(dim, c)
        });
        Self::from_series(series)
    }

    /// G(lambda) = lambda.
    pub fn identity(dim: usize) -> Self {
        Self::from_polynomial(SliceSeries::from_fn(dim, 1, |s| {
            if s == 1 {
                Multivector::one(dim)
            } else {
                Multivector::zero(dim)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.series.dim()
    }

    pub fn series(&self) -> &SliceSeries<f64> {
        &self.series
    }

    pub fn fit(&self) -> &GrowthFit {
        &self.fit
    }

    /// Evaluate at a paravector argument; errors when the certified series
    /// tail at |x| exceeds the tolerance.
    pub fn eval(&self, x: &Paravector<f64>, tol: f64) -> Result<Multivector<f64>> {
        if self.closed_exp {
            return Ok(exp_paravector(x).embed());
        }
        if !self.exact {
            let tail = growth_tail_bound(&self.fit, x.norm(), self.series.trunc_degree());
            if tail > tol {
                return Err(Error::Truncation { tail, tol });
            }
        }
        Ok(self.series.eval(x))
    }
}

/// Entire left monogenic target G(x) = sum P_m(x) G_m.
#[derive(Clone, Debug)]
pub struct EntireMonogenicFn {
    series: FueterSeries<f64>,
}

impl EntireMonogenicFn {
    pub fn from_series(series: FueterSeries<f64>) -> Self {
        EntireMonogenicFn { series }
    }

    /// G = E, the monogenic exponential.
    pub fn exp(n: usize, trunc: u32) -> Result<Self> {
        Ok(Self::from_series(monogenic_hyper(
            n,
            1.0,
            trunc,
            HyperKind::Exp,
        )?))
    }

    /// The monogenic counterpart of a slice target G(lambda) = sum l^s G_s:
    /// the CK extension of its restriction. Powers of the imaginary
    /// variable expand as (vec x)^s = sum_{|m|=s} x^m e'_m, so the Fueter
    /// coefficient at m is e'_m G_{|m|}.
    pub fn from_slice_coeffs(n: usize, slice_coeffs: &[Multivector<f64>]) -> Result<Self> {
        let trunc = slice_coeffs.len().saturating_sub(1) as u32;
        let mut table = EPrimeTable::new(n);
        let mut series = FueterSeries::new(n, trunc);
        for (k, gs) in slice_coeffs.iter().enumerate() {
            if gs.is_zero() {
                continue;
            }
            for m in MultiIndex::of_degree(n, k as u32) {
                let e = table.get_f64(&m)?;
                if !e.is_zero() {
                    series.set_coeff(m, &e * gs);
                }
            }
        }
        Ok(Self::from_series(series))
    }

    /// Monogenic counterpart of sum lambda^s/(s!)^2: the CK extension of
    /// its restriction, with coefficients e'_m / (|m|!)^2.
    pub fn recip_sq_factorial(n: usize, trunc: u32) -> Result<Self> {
        let mut table = EPrimeTable::new(n);
        let mut series = FueterSeries::new(n, trunc);
        for k in 0..=trunc {
            let scale = 1.0 / (factorial_f64(k) * factorial_f64(k));
            for m in MultiIndex::of_degree(n, k) {
                let e = table.get_f64(&m)?;
                if !e.is_zero() {
                    series.set_coeff(m, e.scale(&scale));
                }
            }
        }
        Ok(Self::from_series(series))
    }

    /// G = P_m * w, a single Fueter monomial.
    pub fn monomial(n: usize, m: MultiIndex, w: Multivector<f64>) -> Self {
        let mut series = FueterSeries::new(n, m.total());
        series.set_coeff(m, w);
        Self::from_series(series)
    }

    pub fn n(&self) -> usize {
        self.series.n()
    }

    pub fn series(&self) -> &FueterSeries<f64> {
        &self.series
    }

    /// G(h x) for scalar h, at a point with a shared Fueter table:
    /// P_m(h x) = h^{|m|} P_m(x).
    pub fn eval_scaled(&self, h: f64, ev: &mut FueterEvaluator<f64>) -> Result<Multivector<f64>> {
        let mut acc = Multivector::zero(self.series.n());
        for (m, c) in self.series.coeffs() {
            let pm = ev.eval(m)?;
            acc = &acc + &(&pm * c).scale(&h.powi(m.total() as i32));
        }
        Ok(acc)
    }

    /// Pointwise evaluation of the series at an arbitrary paravector.
    pub fn eval_at(&self, w: &Paravector<f64>) -> Result<Multivector<f64>> {
        self.series.eval(w)
    }
}

/// n+1 real entire frequency profiles g_0 ... g_n as Taylor coefficient
/// rows g_{k,l} up to a common degree.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyProfile {
    comps: Vec<Vec<f64>>,
}

impl FrequencyProfile {
    pub fn new(comps: Vec<Vec<f64>>) -> Self {
        assert!(!comps.is_empty());
        FrequencyProfile { comps }
    }

    /// g_k(lambda) = lambda for every component.
    pub fn identity(n: usize) -> Self {
        FrequencyProfile {
            comps: vec![vec![0.0, 1.0]; n + 1],
        }
    }

    /// g_k(lambda) = lambda^p for every component.
    pub fn monomial(n: usize, p: usize) -> Self {
        let mut row = vec![0.0; p + 1];
        row[p] = 1.0;
        FrequencyProfile {
            comps: vec![row; n + 1],
        }
    }

    /// Number of vector components n (the profile has n+1 rows).
    pub fn n(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.comps.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize, l: usize) -> f64 {
        self.comps[k].get(l).copied().unwrap_or(0.0)
    }

    /// Horner evaluation of g_k at lambda.
    pub fn eval_comp(&self, k: usize, lambda: f64) -> f64 {
        self.comps[k]
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lambda + c)
    }

    /// Check |g_k(a)| <= 1 on [-1,1] by sampling (the band-limit condition
    /// of the several-frequency construction).
    pub fn is_band_limited(&self, samples: usize, tol: f64) -> bool {
        (0..=samples).all(|i| {
            let a = -1.0 + 2.0 * i as f64 / samples as f64;
            (0..self.comps.len()).all(|k| self.eval_comp(k, a).abs() <= 1.0 + tol)
        })
    }

    /// Some(p) when every component is the single monomial lambda^p; these
    /// profiles admit the stable moment-path evaluation.
    pub fn uniform_monomial_power(&self) -> Option<usize> {
        let first = &self.comps[0];
        if !self.comps.iter().all(|c| c == first) {
            return None;
        }
        let mut power = None;
        for (l, c) in first.iter().enumerate() {
            if *c == 1.0 {
                if power.is_some() {
                    return None;
                }
                power = Some(l);
            } else if *c != 0.0 {
                return None;
            }
        }
        power
    }
}

/// The several-frequency exponent x_0 g_0(h) + sum_k e_k x_k g_k(h)
/// as a paravector.
pub fn multifreq_exponent(
    profile: &FrequencyProfile,
    h: f64,
    x: &Paravector<f64>,
) -> Paravector<f64> {
    assert_eq!(profile.n(), x.n());
    Paravector::new(
        x.x0 * profile.eval_comp(0, h),
        (1..=x.n())
            .map(|k| x.xv[k - 1] * profile.eval_comp(k, h))
            .collect(),
    )
}

fn real_coeff_multivectors(spec: &SuperoscSpec) -> Result<Vec<Multivector<f64>>> {
    Ok(spec
        .coeffs()?
        .into_iter()
        .map(|c| Multivector::scalar(spec.n, c))
        .collect())
}

/// Default evaluation tolerance for supershift targets.
const TARGET_TOL: f64 = 1e-9;

/// F_N(x,a) = sum_j Z_j G(x h_j) with Clifford Z_j acting on the left.
pub fn supershift_slice_with(
    g: &EntireSliceFn,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    assert_eq!(nodes.len(), zs.len());
    let mut acc = Multivector::zero(x.n());
    for (z, h) in zs.iter().zip(nodes) {
        let val = g.eval(&x.scale(h), TARGET_TOL)?;
        acc = &acc + &(z * &val);
    }
    Ok(acc)
}

/// Spec-driven slice supershift with the rule's real coefficients.
pub fn supershift_slice(
    g: &EntireSliceFn,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    supershift_slice_with(g, &spec.nodes()?, &real_coeff_multivectors(spec)?, x)
}

/// The supershift limit G(x a).
pub fn supershift_slice_limit(
    g: &EntireSliceFn,
    a: f64,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    g.eval(&x.scale(&a), TARGET_TOL)
}

/// Truncation of the infinite-order operator
/// V(x, d_{y_0}) f = sum_s (d^s f)(0) x^s G_s: with f given as a slice
/// series the s-th derivative at 0 is s! a_s.
pub fn operator_v_slice(
    g: &EntireSliceFn,
    x: &Paravector<f64>,
    f: &SliceSeries<f64>,
    order: usize,
) -> Multivector<f64> {
    let mut acc = Multivector::zero(x.n());
    for s in 0..=order.min(f.trunc_degree()).min(g.series().trunc_degree()) {
        let deriv = f.coeff(s).scale(&factorial_f64(s as u32));
        let xs = paravector_pow(x, s as u32).embed();
        let term = &(&deriv * &xs) * &g.series().coeff(s);
        acc = &acc + &term;
    }
    acc
}

/// Several-frequency slice supershift:
/// sum_j Z_j G(x_0 g_0(h_j) + sum e_k x_k g_k(h_j)).
pub fn supershift_multifreq_slice_with(
    g: &EntireSliceFn,
    profile: &FrequencyProfile,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    let mut acc = Multivector::zero(x.n());
    for (z, h) in zs.iter().zip(nodes) {
        let arg = multifreq_exponent(profile, *h, x);
        let val = g.eval(&arg, TARGET_TOL)?;
        acc = &acc + &(z * &val);
    }
    Ok(acc)
}

pub fn supershift_multifreq_slice(
    g: &EntireSliceFn,
    profile: &FrequencyProfile,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    supershift_multifreq_slice_with(g, profile, &spec.nodes()?, &real_coeff_multivectors(spec)?, x)
}

/// Limit of the several-frequency slice supershift: G at the a-profile
/// argument.
pub fn supershift_multifreq_slice_limit(
    g: &EntireSliceFn,
    profile: &FrequencyProfile,
    a: f64,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    g.eval(&multifreq_exponent(profile, a, x), TARGET_TOL)
}

/// Monogenic supershift sum_j Z_j G(h_j x), reusing one Fueter table at x
/// across nodes via P_m(h x) = h^{|m|} P_m(x).
pub fn supershift_monogenic_with(
    g: &EntireMonogenicFn,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    let mut ev = FueterEvaluator::new(x);
    let mut acc = Multivector::zero(x.n());
    for (z, h) in zs.iter().zip(nodes) {
        let val = g.eval_scaled(*h, &mut ev)?;
        acc = &acc + &(z * &val);
    }
    Ok(acc)
}

pub fn supershift_monogenic(
    g: &EntireMonogenicFn,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    supershift_monogenic_with(g, &spec.nodes()?, &real_coeff_multivectors(spec)?, x)
}

pub fn supershift_monogenic_limit(
    g: &EntireMonogenicFn,
    a: f64,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    g.eval_scaled(a, &mut FueterEvaluator::new(x))
}

/// Operator-form cross-check for the monogenic supershift: with
/// f_N = sum_j E(h_j y) Z_j as a Fueter series, the degree-s node moments
/// sum_j h_j^s Z_j are recovered as s! c_s^{-1} (sum_{|t|=s} a_t) and
/// contracted against the degree-s part of G at x. Equals the direct sum
/// up to the shared truncation.
pub fn operator_v_monogenic_check(
    g: &EntireMonogenicFn,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
    order: u32,
) -> Result<Multivector<f64>> {
    let n = x.n();
    let trunc = g.series().trunc_degree().min(order);
    // f_N = sum_j E(h_j .) Z_j with right-multiplied coefficients
    let mut f_n = FueterSeries::new(n, trunc);
    for (z, h) in zs.iter().zip(nodes) {
        let e = monogenic_hyper(n, *h, trunc, HyperKind::Exp)?;
        f_n = f_n.add(&e.mul_coeff_right(z));
    }
    let mut ev = FueterEvaluator::new(x);
    let mut acc = Multivector::zero(n);
    for s in 0..=trunc {
        let moment = derivative_moment(&f_n, s);
        let node_weights = (&c_k_inverse(n, s) * &moment).scale(&factorial_f64(s));
        // degree-s part of G at x
        let mut gs = Multivector::zero(n);
        for (m, c) in g.series().coeffs() {
            if m.total() == s {
                gs = &gs + &(&ev.eval(m)? * c);
            }
        }
        acc = &acc + &(&node_weights * &gs);
    }
    Ok(acc)
}

/// Several-frequency monogenic supershift:
/// sum_j Z_j G(w_j) with w_j = x_0 g_0(h_j) + sum e_k x_k g_k(h_j), the
/// series of G evaluated pointwise at the assembled paravector.
pub fn supershift_multifreq_monogenic_with(
    g: &EntireMonogenicFn,
    profile: &FrequencyProfile,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    let mut acc = Multivector::zero(x.n());
    for (z, h) in zs.iter().zip(nodes) {
        let w = multifreq_exponent(profile, *h, x);
        let val = g.eval_at(&w)?;
        acc = &acc + &(z * &val);
    }
    Ok(acc)
}

pub fn supershift_multifreq_monogenic(
    g: &EntireMonogenicFn,
    profile: &FrequencyProfile,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    supershift_multifreq_monogenic_with(
        g,
        profile,
        &spec.nodes()?,
        &real_coeff_multivectors(spec)?,
        x,
    )
}

pub fn supershift_multifreq_monogenic_limit(
    g: &EntireMonogenicFn,
    profile: &FrequencyProfile,
    a: f64,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    g.eval_at(&multifreq_exponent(profile, a, x))
}

/// Low-order cross-check of the several-frequency infinite-order operator
/// in the monogenic setting, for G = E. Every E-series term P_t(w_j) is
/// expanded through the binomial formula into powers of the component
/// profiles, powers of h_j collect into node moments sum_j h_j^s Z_j, and
/// the result must equal the direct sum with E truncated at the same total
/// degree. Exact (up to rounding) when s_max >= degree(profile) * k_max.
pub fn operator_u_multifreq_check(
    profile: &FrequencyProfile,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
    k_max: u32,
    s_max: usize,
) -> Result<Multivector<f64>> {
    let n = x.n();
    let mut table = EPrimeTable::new(n);
    // A_v(h) = x_v g_v(h) as polynomial rows in h
    let comp_poly: Vec<Vec<f64>> = (0..=n)
        .map(|v| {
            let xv = if v == 0 { x.x0 } else { x.xv[v - 1] };
            (0..=profile.degree())
                .map(|l| xv * profile.coeff(v, l))
                .collect()
        })
        .collect();
    // node moments M_s = sum_j h_j^s Z_j
    let moments: Vec<Multivector<f64>> = (0..=s_max)
        .map(|s| {
            let mut acc = Multivector::zero(n);
            for (z, h) in zs.iter().zip(nodes) {
                acc = &acc + &z.scale(&h.powi(s as i32));
            }
            acc
        })
        .collect();

    let mut acc = Multivector::zero(n);
    for k in 0..=k_max {
        let inv_kfact = 1.0 / factorial_f64(k);
        for t in MultiIndex::of_degree(n, k) {
            let e_t = table.get_f64(&t)?;
            if e_t.is_zero() {
                continue;
            }
            // P_t(w) = sum_{i+r=t} t!/(i! r!) P_i(w_0) P_r(vec w), with
            // P_i(w_0) = w_0^{|i|} e_i / |i|! and P_r(vec w) = prod w_v^{r_v}
            for i in enumerate_sub_indices(&t) {
                let r = t.checked_sub(&i).unwrap();
                let multinomial = t.factorial_f64() / (i.factorial_f64() * r.factorial_f64());
                let e_i = table.get_f64(&i)?.scale(&i.factorial_f64()); // e_i = i! e'_i
                // h-polynomial A_0^{|i|} prod_v A_v^{r_v}, truncated at s_max
                let mut hpoly = vec![0.0; s_max + 1];
                hpoly[0] = 1.0;
                for _ in 0..i.total() {
                    hpoly = poly_mul_trunc(&hpoly, &comp_poly[0], s_max);
                }
                for v in 1..=n {
                    for _ in 0..r.0[v - 1] {
                        hpoly = poly_mul_trunc(&hpoly, &comp_poly[v], s_max);
                    }
                }
                // P_i at the real point w_0 is (-w_0)^{|i|} e_i / |i|!
                // (each Fueter variable degenerates to -w_0 e_v there)
                let sign = if i.total() % 2 == 0 { 1.0 } else { -1.0 };
                let scalar = sign * inv_kfact * multinomial / factorial_f64(i.total());
                // sum_s beta_s M_s, then the unit factors on the right
                let mut weighted = Multivector::zero(n);
                for (s, beta) in hpoly.iter().enumerate() {
                    if *beta != 0.0 {
                        weighted = &weighted + &moments[s].scale(beta);
                    }
                }
                let term = &(&weighted * &e_i) * &e_t;
                acc = &acc + &term.scale(&scalar);
            }
        }
    }
    Ok(acc)
}

/// The supershift sum rearranged through node moments:
/// sum_j Z_j G((h_j^p) x) = sum_s mu_{ps} x^s G_s with mu_t = sum_j Z_j h_j^t.
/// With stably computed moments this is how the band-limited sums stay
/// evaluable at large N (the direct sum loses eps * sum|Z_j|). freq_pow = 1
/// is the single-frequency case; p > 1 covers the uniform monomial profile
/// g_k(lambda) = lambda^p.
pub fn moment_slice_series(
    g: &EntireSliceFn,
    moments: &[f64],
    freq_pow: usize,
) -> SliceSeries<f64> {
    let trunc = g.series().trunc_degree().min((moments.len() - 1) / freq_pow.max(1));
    SliceSeries::from_fn(g.dim(), trunc, |s| {
        g.series().coeff(s).scale(&moments[freq_pow * s])
    })
}

/// Monogenic counterpart: sum_j Z_j G((h_j^p) x) = sum_m mu_{p|m|} P_m(x) G_m.
pub fn moment_fueter_series(
    g: &EntireMonogenicFn,
    moments: &[f64],
    freq_pow: usize,
) -> FueterSeries<f64> {
    let mut out = FueterSeries::new(g.n(), g.series().trunc_degree());
    for (m, c) in g.series().coeffs() {
        let t = freq_pow * m.total() as usize;
        if t < moments.len() {
            out.set_coeff(m.clone(), c.scale(&moments[t]));
        }
    }
    out
}

/// Stable slice supershift for a real-coefficient rule (single frequency).
pub fn supershift_slice_stable(
    g: &EntireSliceFn,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    let moments = crate::superosc::node_moments(spec, g.series().trunc_degree())?;
    Ok(moment_slice_series(g, &moments, 1).eval(x))
}

/// Stable monogenic supershift for a real-coefficient rule.
pub fn supershift_monogenic_stable(
    g: &EntireMonogenicFn,
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
) -> Result<Multivector<f64>> {
    let moments =
        crate::superosc::node_moments(spec, g.series().trunc_degree() as usize)?;
    moment_fueter_series(g, &moments, 1).eval(x)
}

/// Direct counterpart for the operator check: sum_j Z_j E_{<=k_max}(w_j).
pub fn multifreq_direct_truncated(
    profile: &FrequencyProfile,
    nodes: &[f64],
    zs: &[Multivector<f64>],
    x: &Paravector<f64>,
    k_max: u32,
) -> Result<Multivector<f64>> {
    let n = x.n();
    let e = monogenic_hyper(n, 1.0, k_max, HyperKind::Exp)?;
    let mut acc = Multivector::zero(n);
    for (z, h) in zs.iter().zip(nodes) {
        let w = multifreq_exponent(profile, *h, x);
        let val = e.eval(&w)?;
        acc = &acc + &(z * &val);
    }
    Ok(acc)
}

fn enumerate_sub_indices(t: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; t.n()];
    fn rec(t: &[u32], pos: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == t.len() {
            out.push(MultiIndex(current.clone()));
            return;
        }
        for v in 0..=t[pos] {
            current[pos] = v;
            rec(t, pos + 1, current, out);
        }
        current[pos] = 0;
    }
    rec(&t.0, 0, &mut current, &mut out);
    out
}

fn poly_mul_trunc(a: &[f64], b: &[f64], cap: usize) -> Vec<f64> {
    let mut out = vec![0.0; cap + 1];
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0.0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > cap {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superosc::{eval_fn_slice, CoeffRule, NodeRule, Setting};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn proto(n: usize, big_n: usize, a: f64) -> SuperoscSpec {
        SuperoscSpec::prototype(n, big_n, a, Setting::Slice)
    }

    #[test]
    fn supershift_exp_reduces_to_fn_slice() {
        let n = 2;
        let spec = proto(n, 6, 2.0);
        let g = EntireSliceFn::exp(n);
        let x = Paravector::new(0.3, vec![0.5, -0.2]);
        let got = supershift_slice(&g, &spec, &x).unwrap();
        let want = eval_fn_slice(&spec, &x).unwrap();
        assert!((&got - &want).norm() < 1e-12);
    }

    #[test]
    fn supershift_identity_target_is_exact_moment() {
        // G(lambda) = lambda with the Lagrange rule: sum Z_j h_j x = a x
        let n = 2;
        let spec = SuperoscSpec {
            big_n: 3,
            a: 2.0,
            node_rule: NodeRule::Custom(vec![-1.0, -0.25, 0.5, 1.0]),
            coeff_rule: CoeffRule::Lagrange,
            setting: Setting::Slice,
            n,
        };
        let g = EntireSliceFn::identity(n);
        let x = Paravector::new(0.7, vec![-0.4, 0.9]);
        let got = supershift_slice(&g, &spec, &x).unwrap();
        let want = x.scale(&2.0).embed();
        assert!((&got - &want).norm() < 1e-12);
    }

    #[test]
    fn supershift_at_zero_is_g0() {
        let n = 2;
        let spec = proto(n, 8, 2.0);
        let g = EntireSliceFn::recip_sq_factorial(n);
        let got = supershift_slice(&g, &spec, &Paravector::zero(n)).unwrap();
        assert!(got.approx_eq(&Multivector::one(n), 1e-10));
    }

    #[test]
    fn operator_v_matches_direct_on_exponentials() {
        let n = 2;
        let g = EntireSliceFn::exp(n);
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let h: f64 = rng.gen_range(-1.0..1.0);
            let x = Paravector::new(
                rng.gen_range(-1.0..1.0),
                vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            );
            if h.abs() * x.norm() > 2.0 {
                continue;
            }
            let f = SliceSeries::exp_series(n, h, 40);
            let got = operator_v_slice(&g, &x, &f, 40);
            let want = exp_paravector(&x.scale(&h)).embed();
            assert!(
                (&got - &want).norm() < 1e-10,
                "h={h} diff {}",
                (&got - &want).norm()
            );
        }
    }

    #[test]
    fn operator_v_simple_cases() {
        let n = 2;
        let x = Paravector::new(0.4, vec![0.3, -0.6]);
        // G = lambda, f = e^{hy}: h x
        let g = EntireSliceFn::identity(n);
        let f = SliceSeries::exp_series(n, 0.7, 10);
        let got = operator_v_slice(&g, &x, &f, 10);
        assert!((&got - &x.scale(&0.7).embed()).norm() < 1e-14);
        // f = 0
        let z = SliceSeries::zero(n, 5);
        assert!(operator_v_slice(&g, &x, &z, 5).is_zero());
    }

    #[test]
    fn left_coefficient_convention() {
        // Z_j = w C_j for a fixed multivector w: F_N = w F_N^{(C)} exactly
        let n = 2;
        let spec = proto(n, 5, 2.0);
        let g = EntireSliceFn::exp(n);
        let nodes = spec.nodes().unwrap();
        let cs = spec.coeffs().unwrap();
        let mut w = Multivector::one(n);
        w.set_coeff(0b11, 1.0); // 1 + e1 e2
        let zs: Vec<_> = cs.iter().map(|c| w.scale(c)).collect();
        let x = Paravector::new(0.2, vec![0.4, -0.1]);
        let with_w = supershift_slice_with(&g, &nodes, &zs, &x).unwrap();
        let plain = supershift_slice(&g, &spec, &x).unwrap();
        assert!((&with_w - &(&w * &plain)).norm() < 1e-12);
    }

    #[test]
    fn multifreq_exponent_cases() {
        let n = 2;
        let x = Paravector::new(0.5, vec![-1.0, 2.0]);
        // identity profile: h x
        let p = FrequencyProfile::identity(n);
        let got = multifreq_exponent(&p, 0.3, &x);
        assert!(got.approx_eq(&x.scale(&0.3), 1e-15));
        // cubic profile at h = 1/2: x/8
        let p3 = FrequencyProfile::monomial(n, 3);
        let got = multifreq_exponent(&p3, 0.5, &x);
        assert!(got.approx_eq(&x.scale(&0.125), 1e-15));
        // h = 0 with g(0) = 0
        let got = multifreq_exponent(&p3, 0.0, &x);
        assert!(got.approx_eq(&Paravector::zero(n), 1e-15));
        assert!(p3.is_band_limited(64, 1e-12));
    }

    #[test]
    fn multifreq_identity_profile_reduces() {
        let n = 2;
        let spec = proto(n, 6, 2.0);
        let g = EntireSliceFn::exp(n);
        let p = FrequencyProfile::identity(n);
        let x = Paravector::new(0.2, vec![0.3, -0.5]);
        let a = supershift_multifreq_slice(&g, &p, &spec, &x).unwrap();
        let b = eval_fn_slice(&spec, &x).unwrap();
        assert!((&a - &b).norm() < 1e-12);
    }

    #[test]
    fn multifreq_constant_profile_collapses_to_node_map() {
        // g_k = g for all k: the multifrequency sum equals the single
        // frequency sum with nodes g(h_j)
        let n = 2;
        let spec = proto(n, 5, 2.0);
        let g = EntireSliceFn::exp(n);
        let cubic = FrequencyProfile::monomial(n, 3);
        let nodes = spec.nodes().unwrap();
        let zs: Vec<_> = spec
            .coeffs()
            .unwrap()
            .iter()
            .map(|c| Multivector::scalar(n, *c))
            .collect();
        let mapped: Vec<f64> = nodes.iter().map(|h| h.powi(3)).collect();
        let x = Paravector::new(0.4, vec![0.1, -0.3]);
        let a = supershift_multifreq_slice_with(&g, &cubic, &nodes, &zs, &x).unwrap();
        let b = supershift_slice_with(&g, &mapped, &zs, &x).unwrap();
        assert!((&a - &b).norm() < 1e-12);
    }

    #[test]
    fn multifreq_cubic_limit_is_exp_8x() {
        let n = 2;
        let g = EntireSliceFn::exp(n);
        let p3 = FrequencyProfile::monomial(n, 3);
        let x = Paravector::new(0.1, vec![0.2, -0.1]);
        let lim = supershift_multifreq_slice_limit(&g, &p3, 2.0, &x).unwrap();
        assert!((&lim - &exp_paravector(&x.scale(&8.0)).embed()).norm() < 1e-13);
    }

    #[test]
    fn supershift_monogenic_reductions() {
        let n = 2;
        let spec = SuperoscSpec::prototype(n, 4, 2.0, Setting::Monogenic);
        // G = E reduces to the monogenic F_N
        let g = EntireMonogenicFn::exp(n, 16).unwrap();
        let x = Paravector::new(0.2, vec![0.3, -0.1]);
        let got = supershift_monogenic(&g, &spec, &x).unwrap();
        let f = crate::superosc::MonogenicFn::build(&spec, 16).unwrap();
        let want = f.eval(&x).unwrap();
        assert!((&got - &want).norm() < 1e-10);
        // x = 0 -> G_0
        let at0 = supershift_monogenic(&g, &spec, &Paravector::zero(n)).unwrap();
        assert!(at0.approx_eq(&Multivector::one(n), 1e-12));
    }

    #[test]
    fn supershift_monogenic_monomial_moment() {
        // G = P_m: sum_j Z_j h_j^{|m|} P_m(x) -> a^{|m|} P_m(x) for the
        // Lagrange rule when |m| <= node count - 1
        let n = 2;
        let m = MultiIndex(vec![1, 1]);
        let g = EntireMonogenicFn::monomial(n, m.clone(), Multivector::one(n));
        let spec = SuperoscSpec {
            big_n: 3,
            a: 2.0,
            node_rule: NodeRule::Custom(vec![-1.0, -0.3, 0.4, 1.0]),
            coeff_rule: CoeffRule::Lagrange,
            setting: Setting::Monogenic,
            n,
        };
        let x = Paravector::new(0.5, vec![0.7, -0.2]);
        let got = supershift_monogenic(&g, &spec, &x).unwrap();
        let pm = crate::fueter::fueter_eval(&m, &x).unwrap();
        let want = pm.scale(&4.0); // a^2
        assert!((&got - &want).norm() < 1e-12);
    }

    #[test]
    fn operator_v_monogenic_agrees_with_direct() {
        let n = 2;
        let trunc = 8;
        let g = EntireMonogenicFn::exp(n, trunc).unwrap();
        let spec = SuperoscSpec::prototype(n, 4, 2.0, Setting::Monogenic);
        let nodes = spec.nodes().unwrap();
        let zs: Vec<_> = spec
            .coeffs()
            .unwrap()
            .iter()
            .map(|c| Multivector::scalar(n, *c))
            .collect();
        let x = Paravector::new(0.3, vec![0.2, -0.4]);
        let direct = supershift_monogenic(&g, &spec, &x).unwrap();
        let op = operator_v_monogenic_check(&g, &nodes, &zs, &x, trunc).unwrap();
        assert!(
            (&direct - &op).norm() < 1e-9,
            "diff {}",
            (&direct - &op).norm()
        );
    }

    #[test]
    fn operator_u_multifreq_agrees_with_direct() {
        let n = 2;
        let x = Paravector::new(0.3, vec![0.4, -0.2]);
        let spec = proto(n, 4, 2.0);
        let nodes = spec.nodes().unwrap();
        let zs: Vec<_> = spec
            .coeffs()
            .unwrap()
            .iter()
            .map(|c| Multivector::scalar(n, *c))
            .collect();
        // quadratic profile, k <= 3, s_max = 6 makes the h-expansion exact
        let p2 = FrequencyProfile::monomial(n, 2);
        let op = operator_u_multifreq_check(&p2, &nodes, &zs, &x, 3, 6).unwrap();
        let direct = multifreq_direct_truncated(&p2, &nodes, &zs, &x, 3).unwrap();
        assert!(
            (&op - &direct).norm() < 1e-10,
            "diff {}",
            (&op - &direct).norm()
        );
        // identity profile, s_max = 3
        let p1 = FrequencyProfile::identity(n);
        let op = operator_u_multifreq_check(&p1, &nodes, &zs, &x, 3, 3).unwrap();
        let direct = multifreq_direct_truncated(&p1, &nodes, &zs, &x, 3).unwrap();
        assert!((&op - &direct).norm() < 1e-10);
    }

    #[test]
    fn multifreq_monogenic_restriction_euler() {
        // n=2, g_k = lambda^2, a=2, purely imaginary x: limit e^{4 vec x}
        let n = 2;
        let g = EntireMonogenicFn::exp(n, 24).unwrap();
        let p2 = FrequencyProfile::monomial(n, 2);
        let x = Paravector::new(0.0, vec![0.2, -0.3]);
        let lim = supershift_multifreq_monogenic_limit(&g, &p2, 2.0, &x).unwrap();
        let want = exp_paravector(&x.scale(&4.0)).embed();
        assert!(
            (&lim - &want).norm() < 1e-10,
            "diff {}",
            (&lim - &want).norm()
        );
    }

    #[test]
    fn multifreq_monogenic_identity_reduces() {
        let n = 2;
        let g = EntireMonogenicFn::exp(n, 16).unwrap();
        let p = FrequencyProfile::identity(n);
        let spec = SuperoscSpec::prototype(n, 4, 2.0, Setting::Monogenic);
        let x = Paravector::new(0.2, vec![0.1, -0.2]);
        let a = supershift_multifreq_monogenic(&g, &p, &spec, &x).unwrap();
        let b = supershift_monogenic(&g, &spec, &x).unwrap();
        assert!((&a - &b).norm() < 1e-11);
        // x = 0 -> G(0)
        let at0 = supershift_multifreq_monogenic(&g, &p, &spec, &Paravector::zero(n)).unwrap();
        assert!(at0.approx_eq(&Multivector::one(n), 1e-12));
    }

    #[test]
    fn moment_path_matches_direct_sums() {
        // both rules, both settings, small N where the direct sums are
        // well conditioned
        let n = 2;
        let a = 2.0;
        let x = Paravector::new(0.3, vec![0.4, -0.2]);
        let g_slice = EntireSliceFn::exp(n);
        let g_mono = EntireMonogenicFn::exp(n, 14).unwrap();
        let specs = [
            SuperoscSpec::prototype(n, 6, a, Setting::Slice),
            SuperoscSpec {
                big_n: 6,
                a,
                node_rule: NodeRule::Custom(crate::superosc::chebyshev_nodes(7)),
                coeff_rule: CoeffRule::Lagrange,
                setting: Setting::Slice,
                n,
            },
        ];
        for spec in specs {
            let direct = supershift_slice(&g_slice, &spec, &x).unwrap();
            let stable = supershift_slice_stable(&g_slice, &spec, &x).unwrap();
            assert!(
                (&direct - &stable).norm() < 1e-9,
                "slice {:?}: diff {}",
                spec.coeff_rule,
                (&direct - &stable).norm()
            );
            let direct = supershift_monogenic(&g_mono, &spec, &x).unwrap();
            let stable = supershift_monogenic_stable(&g_mono, &spec, &x).unwrap();
            assert!(
                (&direct - &stable).norm() < 1e-9,
                "monogenic {:?}: diff {}",
                spec.coeff_rule,
                (&direct - &stable).norm()
            );
        }
    }

    #[test]
    fn moment_path_matches_direct_multifreq_monomial() {
        let n = 2;
        let a = 2.0;
        let x = Paravector::new(0.1, vec![0.15, -0.1]);
        let spec = SuperoscSpec::prototype(n, 6, a, Setting::Slice);
        let cubic = FrequencyProfile::monomial(n, 3);
        assert_eq!(cubic.uniform_monomial_power(), Some(3));
        assert_eq!(FrequencyProfile::identity(n).uniform_monomial_power(), Some(1));

        let g = EntireSliceFn::exp(n);
        let direct = supershift_multifreq_slice(&g, &cubic, &spec, &x).unwrap();
        let moments = crate::superosc::node_moments(&spec, 3 * g.series().trunc_degree()).unwrap();
        let stable = moment_slice_series(&g, &moments, 3).eval(&x);
        assert!(
            (&direct - &stable).norm() < 1e-9,
            "diff {}",
            (&direct - &stable).norm()
        );

        let gm = EntireMonogenicFn::exp(n, 12).unwrap();
        let direct = supershift_multifreq_monogenic(&gm, &cubic, &spec, &x).unwrap();
        let moments = crate::superosc::node_moments(&spec, 3 * 12).unwrap();
        let stable = moment_fueter_series(&gm, &moments, 3).eval(&x).unwrap();
        assert!(
            (&direct - &stable).norm() < 1e-9,
            "monogenic diff {}",
            (&direct - &stable).norm()
        );
    }

    #[test]
    fn binomial_moments_match_brute_force_small_n() {
        use crate::superosc::binomial_node_moments;
        let (big_n, a) = (6usize, 2.0);
        let mus = binomial_node_moments(big_n, a, 10);
        let cs = crate::superosc::binomial_coeffs(big_n, a);
        for (s, mu) in mus.iter().enumerate() {
            let brute: f64 = cs
                .iter()
                .enumerate()
                .map(|(j, c)| c * (1.0 - 2.0 * j as f64 / big_n as f64).powi(s as i32))
                .sum();
            assert!(
                (mu - brute).abs() < 1e-10 * brute.abs().max(1.0),
                "s={s}: {mu} vs {brute}"
            );
        }
        assert!((mus[0] - 1.0).abs() < 1e-14);
        assert!((mus[1] - a).abs() < 1e-13);
    }

    #[test]
    fn slice_coeff_lift_reproduces_exp() {
        // G_s = 1/s! lifts to E
        let n = 2;
        let trunc = 10u32;
        let mut c = 1.0;
        let coeffs: Vec<Multivector<f64>> = (0..=trunc)
            .map(|s| {
                if s > 0 {
                    c /= s as f64;
                }
                Multivector::scalar(n, c)
            })
            .collect();
        let lifted = EntireMonogenicFn::from_slice_coeffs(n, &coeffs).unwrap();
        let e = EntireMonogenicFn::exp(n, trunc).unwrap();
        for (m, cm) in e.series().coeffs() {
            assert!((&lifted.series().coeff(m) - cm).norm() < 1e-13, "m={m:?}");
        }
    }

    #[test]
    fn growth_tail_guard_rejects_far_points() {
        let n = 2;
        // polynomial-free series with b_f ~ 1 truncated low: far evaluation
        // must error rather than return garbage
        let series = SliceSeries::exp_series(n, 1.0, 6);
        let g = EntireSliceFn::from_series(series);
        let far = Paravector::real(n, 30.0);
        assert!(matches!(
            g.eval(&far, 1e-9),
            Err(Error::Truncation { .. })
        ));
    }
}
