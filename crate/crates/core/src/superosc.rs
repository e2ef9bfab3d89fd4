//! Superoscillating sequence generators in both settings: the binomial and
//! Lagrange coefficient rules, the F_N evaluators (coefficient-sum and
//! closed-power forms, cross-asserted against each other), the explicit
//! convergence bound, and the weighted-sup-norm estimator for A_1
//! convergence experiments.

use num_complex::Complex64;

use crate::ck::{monogenic_hyper, HyperKind, FueterSeries};
use crate::clifford::{Multivector, Paravector};
use crate::error::{Error, Result};
use crate::fueter::FueterEvaluator;
use crate::grid::{halton_ball, structured_points};
use crate::slice::{exp_paravector, from_slice_complex, to_slice_complex};

/// Node placement rule for the frequencies h_j(N) in [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub enum NodeRule {
    /// h_j = 1 - 2j/N.
    Uniform,
    /// Arbitrary distinct nodes in [-1, 1].
    Custom(Vec<f64>),
}

/// Coefficient rule: the binomial weights C_j(N,a) of the prototype
/// sequence, or the Lagrange interpolation weights X_j(N,a).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffRule {
    Binomial,
    Lagrange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    Slice,
    Monogenic,
}

/// A fully specified superoscillating sequence F_N(., a).
#[derive(Clone, Debug, PartialEq)]
pub struct SuperoscSpec {
    /// Number of exponentials minus one.
    pub big_n: usize,
    /// Target frequency; the sequence is superoscillating when |a| > 1.
    pub a: f64,
    pub node_rule: NodeRule,
    pub coeff_rule: CoeffRule,
    pub setting: Setting,
    /// Clifford algebra dimension n.
    pub n: usize,
}

impl SuperoscSpec {
    pub fn prototype(n: usize, big_n: usize, a: f64, setting: Setting) -> Self {
        SuperoscSpec {
            big_n,
            a,
            node_rule: NodeRule::Uniform,
            coeff_rule: CoeffRule::Binomial,
            setting,
            n,
        }
    }

    /// The nodes h_j(N), j = 0..=N.
    pub fn nodes(&self) -> Result<Vec<f64>> {
        let nodes = match &self.node_rule {
            NodeRule::Uniform => (0..=self.big_n)
                .map(|j| 1.0 - 2.0 * j as f64 / self.big_n as f64)
                .collect(),
            NodeRule::Custom(nodes) => nodes.clone(),
        };
        if nodes.iter().any(|h| h.abs() > 1.0 + 1e-12) {
            return Err(Error::Domain("nodes must lie in [-1, 1]".into()));
        }
        Ok(nodes)
    }

    /// The real coefficients Z_j(N, a) for the chosen rule.
    pub fn coeffs(&self) -> Result<Vec<f64>> {
        match self.coeff_rule {
            CoeffRule::Binomial => {
                if !matches!(self.node_rule, NodeRule::Uniform) {
                    return Err(Error::Domain(
                        "binomial coefficients require uniform nodes".into(),
                    ));
                }
                Ok(binomial_coeffs(self.big_n, self.a))
            }
            CoeffRule::Lagrange => lagrange_coeffs(&self.nodes()?, self.a),
        }
    }

    /// |g(a)| = |a| > 1 is what makes the limit frequency exceed the band.
    pub fn is_superoscillating(&self) -> bool {
        self.a.abs() > 1.0
    }
}

/// C_j(N,a) = binom(N,j) ((1+a)/2)^{N-j} ((1-a)/2)^j. The terms are built
/// multiplicatively, so sum C_j = 1 and sum C_j h_j = a hold to rounding.
pub fn binomial_coeffs(big_n: usize, a: f64) -> Vec<f64> {
    let p = (1.0 + a) / 2.0;
    let q = (1.0 - a) / 2.0;
    let mut out = Vec::with_capacity(big_n + 1);
    let mut term = p.powi(big_n as i32);
    for j in 0..=big_n {
        out.push(term);
        if j < big_n {
            term *= (big_n - j) as f64 / (j + 1) as f64;
            term *= q / p;
        }
    }
    out
}

/// Lagrange weights X_j = prod_{k != j} (h_k - a)/(h_k - h_j): the unique
/// coefficients reproducing the moments sum X_j h_j^p = a^p for p <= N.
pub fn lagrange_coeffs(nodes: &[f64], a: f64) -> Result<Vec<f64>> {
    if nodes.len() > 17 {
        return Err(Error::Budget(format!(
            "{} nodes exceed the Lagrange budget of 17",
            nodes.len()
        )));
    }
    for (j, hj) in nodes.iter().enumerate() {
        for hk in nodes.iter().skip(j + 1) {
            if hj == hk {
                return Err(Error::RepeatedNode(j));
            }
        }
    }
    Ok((0..nodes.len())
        .map(|j| {
            let mut prod = 1.0;
            for (k, hk) in nodes.iter().enumerate() {
                if k != j {
                    prod *= (hk - a) / (hk - nodes[j]);
                }
            }
            prod
        })
        .collect())
}

/// Chebyshev-Lobatto nodes cos(j pi / (m-1)), j = 0..m-1, in [-1, 1].
pub fn chebyshev_nodes(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    (0..m)
        .map(|j| (std::f64::consts::PI * j as f64 / (m - 1) as f64).cos())
        .collect()
}

/// Node moments mu_s = sum_j Z_j h_j^s for s = 0..=order.
///
/// The band-limited weights carry summation condition numbers like |a|^N
/// (binomial) or (|a|+sqrt(a^2-1))^N (Lagrange extrapolation), so the naive
/// sums are useless in f64 at large N. These moments are the stable route:
/// every supershift sum rearranges exactly into sum_s mu_s x^s G_s.
pub fn node_moments(spec: &SuperoscSpec, order: usize) -> Result<Vec<f64>> {
    match spec.coeff_rule {
        CoeffRule::Binomial => Ok(binomial_node_moments(spec.big_n, spec.a, order)),
        CoeffRule::Lagrange => {
            let nodes = spec.nodes()?;
            let weights = lagrange_coeffs(&nodes, spec.a)?;
            Ok(lagrange_node_moments(&nodes, &weights, spec.a, order))
        }
    }
}

/// mu_s for the binomial rule, computed as s! times the Taylor coefficients
/// of (cosh(y/N) + a sinh(y/N))^N. The base series has one-signed
/// coefficients for a >= 0, so the truncated convolutions (binary
/// exponentiation) run without cancellation; the direct sum over nodes
/// would instead lose eps |a|^N.
pub fn binomial_node_moments(big_n: usize, a: f64, order: usize) -> Vec<f64> {
    let mut base = vec![0.0; order + 1];
    let mut fact = 1.0;
    let inv_n = 1.0 / big_n as f64;
    for (s, b) in base.iter_mut().enumerate() {
        if s > 0 {
            fact *= s as f64;
        }
        *b = if s % 2 == 0 { 1.0 } else { a } * inv_n.powi(s as i32) / fact;
    }
    let conv = |u: &[f64], v: &[f64]| {
        let mut out = vec![0.0; order + 1];
        for (i, ui) in u.iter().enumerate() {
            if *ui == 0.0 {
                continue;
            }
            for (k, vk) in v.iter().take(order + 1 - i).enumerate() {
                out[i + k] += ui * vk;
            }
        }
        out
    };
    let mut result = vec![0.0; order + 1];
    result[0] = 1.0;
    let mut sq = base;
    let mut e = big_n;
    while e > 0 {
        if e & 1 == 1 {
            result = conv(&result, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = conv(&sq, &sq);
        }
    }
    let mut fact = 1.0;
    result
        .into_iter()
        .enumerate()
        .map(|(s, b)| {
            if s > 0 {
                fact *= s as f64;
            }
            b * fact
        })
        .collect()
}

/// mu_s for a Lagrange rule. For s below the node count the weights
/// reproduce polynomials exactly, so mu_s = a^s identically; beyond that
/// the direct sum is used, with absolute noise up to eps * sum |X_j| that
/// the factorial decay of any entire target's coefficients suppresses.
pub fn lagrange_node_moments(nodes: &[f64], weights: &[f64], a: f64, order: usize) -> Vec<f64> {
    (0..=order)
        .map(|s| {
            if s < nodes.len() {
                a.powi(s as i32)
            } else {
                weights
                    .iter()
                    .zip(nodes)
                    .map(|(w, h)| w * h.powi(s as i32))
                    .sum()
            }
        })
        .collect()
}

/// F_N in the slice setting. Both representations are computed for the
/// uniform/binomial prototype: the coefficient sum sum_j Z_j e^{h_j x} and
/// the closed power form (cosh(x/N) + a sinh(x/N))^N, asserted to agree to
/// 1e-11 relative to the summation scale sum_j |Z_j| |e^{h_j x}| (the
/// band-limited representation has coefficients of size ~|a|^N, so that
/// scale, not the value, is what f64 can resolve). The returned value is
/// the well-conditioned power form when it exists, the sum otherwise.
pub fn eval_fn_slice(spec: &SuperoscSpec, x: &Paravector<f64>) -> Result<Multivector<f64>> {
    assert_eq!(spec.n, x.n());
    let nodes = spec.nodes()?;
    let zs = spec.coeffs()?;
    let mut acc = Multivector::zero(spec.n);
    let mut cond = 0.0_f64;
    for (z, h) in zs.iter().zip(&nodes) {
        let e = exp_paravector(&x.scale(h)).embed();
        cond += z.abs() * e.norm();
        acc = &acc + &e.scale(z);
    }
    if spec.coeff_rule == CoeffRule::Binomial && matches!(spec.node_rule, NodeRule::Uniform) {
        let power = fn_slice_power_form(spec.big_n, spec.a, x);
        let diff = (&acc - &power).norm();
        let scale = cond.max(power.norm()).max(1.0);
        assert!(
            diff <= 1e-11 * scale,
            "sum/power forms disagree: {diff:.3e} at scale {scale:.3e}"
        );
        return Ok(power);
    }
    Ok(acc)
}

/// The coefficient-sum representation alone (no stabilization); used to
/// exhibit the sum/power identity at moderate N where the summation is
/// well conditioned.
pub fn fn_slice_sum_form(spec: &SuperoscSpec, x: &Paravector<f64>) -> Result<Multivector<f64>> {
    let nodes = spec.nodes()?;
    let zs = spec.coeffs()?;
    let mut acc = Multivector::zero(spec.n);
    for (z, h) in zs.iter().zip(&nodes) {
        acc = &acc + &exp_paravector(&x.scale(h)).embed().scale(z);
    }
    Ok(acc)
}

/// (cosh(x/N) + a sinh(x/N))^N through complex arithmetic on the slice of x.
pub fn fn_slice_power_form(big_n: usize, a: f64, x: &Paravector<f64>) -> Multivector<f64> {
    let (c, j) = to_slice_complex(x);
    let w = c / big_n as f64;
    let base = w.cosh() + Complex64::new(a, 0.0) * w.sinh();
    let val = base.powu(big_n as u32);
    from_slice_complex(x.n(), val, j.as_ref()).embed()
}

/// Magnitude bound exp((|a|+1)|x|) on F_N in the slice setting.
pub fn magnitude_bound_slice(a: f64, x: &Paravector<f64>) -> f64 {
    ((a.abs() + 1.0) * x.norm()).exp()
}

/// The explicit convergence bound
/// |F_N(x,a) - e^{ax}| <= (2/3) |a^2-1|/N |x|^2 exp((alpha+1)|x|)
/// with alpha = max(1, |a|).
pub fn error_bound_slice(big_n: usize, a: f64, x: &Paravector<f64>) -> f64 {
    let alpha = a.abs().max(1.0);
    let r = x.norm();
    (2.0 / 3.0) * (a * a - 1.0).abs() / big_n as f64 * r * r * ((alpha + 1.0) * r).exp()
}

/// Reusable monogenic F_N evaluator. Both coefficient maps are built once:
/// the coefficient-sum form keeps the N+1 exponential series separate (the
/// Z_j act by left multiplication on values), while the power form is
/// (Cosh + a Sinh)^{CK N} truncated at the same degree.
pub struct MonogenicFn {
    spec: SuperoscSpec,
    trunc: u32,
    exp_series: Vec<FueterSeries<f64>>,
    power_series: FueterSeries<f64>,
    coeffs: Vec<f64>,
}

impl MonogenicFn {
    pub fn build(spec: &SuperoscSpec, trunc: u32) -> Result<Self> {
        if trunc > 30 {
            return Err(Error::Budget(format!(
                "monogenic truncation {trunc} exceeds 30"
            )));
        }
        let nodes = spec.nodes()?;
        let coeffs = spec.coeffs()?;
        let exp_series = nodes
            .iter()
            .map(|h| monogenic_hyper(spec.n, *h, trunc, HyperKind::Exp))
            .collect::<Result<Vec<_>>>()?;
        let inv_n = 1.0 / spec.big_n as f64;
        let cosh = monogenic_hyper(spec.n, inv_n, trunc, HyperKind::Cosh)?;
        let sinh = monogenic_hyper(spec.n, inv_n, trunc, HyperKind::Sinh)?;
        let base = cosh.add(&sinh.scale(&spec.a));
        let mut power_series = FueterSeries::new(spec.n, 0);
        power_series.set_coeff(crate::combin::MultiIndex::zero(spec.n), Multivector::one(spec.n));
        for _ in 0..spec.big_n {
            power_series = power_series.ck_product_capped(&base, trunc);
        }
        Ok(MonogenicFn {
            spec: spec.clone(),
            trunc,
            exp_series,
            power_series,
            coeffs,
        })
    }

    pub fn trunc_degree(&self) -> u32 {
        self.trunc
    }

    /// Evaluate both representations and assert they agree to 1e-8 relative
    /// to the summation scale (truncation-matched; same conditioning caveat
    /// as the slice evaluator). Returns the CK-power value.
    pub fn eval(&self, x: &Paravector<f64>) -> Result<Multivector<f64>> {
        let (sum, power) = self.eval_both(x)?;
        let mut cond = 1.0_f64;
        for z in &self.coeffs {
            cond += z.abs();
        }
        // each |E(h_j x)| is at most e^{n |x|} for |h_j| <= 1
        let scale = power
            .norm()
            .max(cond * (self.spec.n as f64 * x.norm()).exp());
        let diff = (&sum - &power).norm();
        assert!(
            diff <= 1e-8 * scale,
            "monogenic sum/power forms disagree: {diff:.3e} at scale {scale:.3e}"
        );
        Ok(power)
    }

    /// The coefficient-sum and CK-power values side by side.
    pub fn eval_both(&self, x: &Paravector<f64>) -> Result<(Multivector<f64>, Multivector<f64>)> {
        let mut ev = FueterEvaluator::new(x);
        let mut acc = Multivector::zero(self.spec.n);
        for (z, series) in self.coeffs.iter().zip(&self.exp_series) {
            let val = series.eval_with(&mut ev)?;
            acc = &acc + &val.scale(z);
        }
        let power = self.power_series.eval_with(&mut ev)?;
        Ok((acc, power))
    }
}

/// One-off monogenic F_N evaluation (builds the series, then evaluates).
pub fn eval_fn_monogenic(
    spec: &SuperoscSpec,
    x: &Paravector<f64>,
    trunc: u32,
) -> Result<Multivector<f64>> {
    MonogenicFn::build(spec, trunc)?.eval(x)
}

/// Magnitude bound exp((alpha+1) n |x|) on the monogenic F_N.
pub fn magnitude_bound_monogenic(n: usize, a: f64, x: &Paravector<f64>) -> f64 {
    let alpha = a.abs().max(1.0);
    ((alpha + 1.0) * n as f64 * x.norm()).exp()
}

/// Weighted-sup-norm estimate max |f(x)| e^{-sigma |x|} over a deterministic
/// grid of the ball |x| <= R.
#[derive(Clone, Debug)]
pub struct A1NormEstimate {
    pub sigma: f64,
    pub value: f64,
    /// Point attaining the maximum.
    pub argmax: Paravector<f64>,
    pub grid_size: usize,
}

/// Estimate ||f||_{1,sigma} on `samples` low-discrepancy points of the ball
/// |x| <= R plus the structured axis/diagonal points, seeded sampling.
pub fn a1_norm_estimate(
    f: &dyn Fn(&Paravector<f64>) -> Multivector<f64>,
    n: usize,
    sigma: f64,
    radius: f64,
    samples: usize,
    seed: u64,
) -> A1NormEstimate {
    assert!(sigma > 0.0 && radius > 0.0);
    let mut pts = halton_ball(n, radius, samples, seed);
    pts.extend(structured_points(n, radius));
    let grid_size = pts.len();
    let mut best = f64::NEG_INFINITY;
    let mut argmax = Paravector::zero(n);
    for p in pts {
        let w = f(&p).norm() * (-sigma * p.norm()).exp();
        if w > best {
            best = w;
            argmax = p;
        }
    }
    A1NormEstimate {
        sigma,
        value: best,
        argmax,
        grid_size,
    }
}

/// sigma for slice-setting A_1 experiments: the bound exponent alpha + 1
/// plus a 10% margin.
pub fn sigma_slice(a: f64) -> f64 {
    1.1 * (a.abs().max(1.0) + 1.0)
}

/// sigma for monogenic-setting A_1 experiments: n (alpha + 1) plus margin.
pub fn sigma_monogenic(n: usize, a: f64) -> f64 {
    1.1 * n as f64 * (a.abs().max(1.0) + 1.0)
}
