//! Fueter homogeneous polynomials P_k(x) built from the variables
//! z_i = x_i - x_0 e_i, their recursion, partial derivatives and a
//! finite-difference residual for the generalized Cauchy-Riemann operator
//! D = d/dx_0 + sum_i e_i d/dx_i.

use std::collections::HashMap;


use crate::clifford::{Coeff, Multivector, Paravector};
use crate::combin::MultiIndex;
use crate::error::{Error, Result};

/// Degree cap for the recursive evaluator.
pub const MAX_FUETER_DEGREE: u32 = 40;
/// Degree cap for the factorial-cost direct oracle.
pub const MAX_DIRECT_DEGREE: u32 = 7;

/// The Fueter variable z_i = x_i - x_0 e_i evaluated at a paravector.
pub fn fueter_variable<T: Coeff>(i: usize, x: &Paravector<T>) -> Multivector<T> {
    let mut mv = Multivector::zero(x.n());
    mv.set_coeff(0, x.xv[i - 1].clone());
    mv.set_coeff(1 << (i - 1), -x.x0.clone());
    mv
}

/// Memoized evaluation of all P_k at one fixed point. The recursion
/// |k| P_k = sum_i k_i P_{k - eps_i} z_i (right-multiplication form) is the
/// primary path; the scalar factor on the left-hand side is the total
/// degree |k|, which the direct-definition oracle confirms.
pub struct FueterEvaluator<T: Coeff> {
    x: Paravector<T>,
    z: Vec<Multivector<T>>,
    memo: HashMap<MultiIndex, Multivector<T>>,
}

impl<T: Coeff> FueterEvaluator<T> {
    pub fn new(x: &Paravector<T>) -> Self {
        let z = (1..=x.n()).map(|i| fueter_variable(i, x)).collect();
        FueterEvaluator {
            x: x.clone(),
            z,
            memo: HashMap::new(),
        }
    }

    pub fn point(&self) -> &Paravector<T> {
        &self.x
    }

    pub fn eval(&mut self, k: &MultiIndex) -> Result<Multivector<T>> {
        let n = self.x.n();
        assert_eq!(k.n(), n, "multi-index length must match paravector");
        if k.total() > MAX_FUETER_DEGREE {
            return Err(Error::Budget(format!(
                "|k| = {} exceeds Fueter degree budget {}",
                k.total(),
                MAX_FUETER_DEGREE
            )));
        }
        if k.is_zero() {
            return Ok(Multivector::one(n));
        }
        if let Some(hit) = self.memo.get(k) {
            return Ok(hit.clone());
        }
        let mut acc = Multivector::<T>::zero(n);
        for i in 1..=n {
            let ki = k.0[i - 1];
            if ki == 0 {
                continue;
            }
            let prev = self.eval(&k.sub_unit(i).expect("k_i >= 1"))?;
            let term = (&prev * &self.z[i - 1]).scale(&T::from_u32(ki).expect("small integer"));
            acc = &acc + &term;
        }
        let inv_total = T::one() / T::from_u32(k.total()).expect("small integer");
        let out = acc.scale(&inv_total);
        self.memo.insert(k.clone(), out.clone());
        Ok(out)
    }
}

/// P_k(x) through the memoized recursion.
pub fn fueter_eval<T: Coeff>(k: &MultiIndex, x: &Paravector<T>) -> Result<Multivector<T>> {
    FueterEvaluator::new(x).eval(k)
}

/// P_k(x) straight from the symmetrized-product definition
/// (1/|k|!) sum over all |k|! permutations of z_{j_1} ... z_{j_{|k|}}.
/// Factorial cost; oracle only.
pub fn fueter_eval_direct<T: Coeff>(k: &MultiIndex, x: &Paravector<T>) -> Result<Multivector<T>> {
    let n = x.n();
    if k.total() > MAX_DIRECT_DEGREE {
        return Err(Error::Budget(format!(
            "|k| = {} exceeds direct-oracle budget {}",
            k.total(),
            MAX_DIRECT_DEGREE
        )));
    }
    if k.is_zero() {
        return Ok(Multivector::one(n));
    }
    let z: Vec<Multivector<T>> = (1..=n).map(|i| fueter_variable(i, x)).collect();
    let letters = k.letters();
    let mut order: Vec<usize> = (0..letters.len()).collect();
    let mut acc = Multivector::<T>::zero(n);
    let mut count = 0u64;
    loop {
        let mut prod = Multivector::<T>::one(n);
        for &p in &order {
            prod = &prod * &z[letters[p] - 1];
        }
        acc = &acc + &prod;
        count += 1;
        if !next_index_permutation(&mut order) {
            break;
        }
    }
    debug_assert_eq!(count, (1..=letters.len() as u64).product::<u64>());
    let inv = T::one() / T::from_u64(count).expect("|k|! fits");
    Ok(acc.scale(&inv))
}

fn next_index_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// d/dx_j P_k = k_j P_{k - eps_j}.
pub fn fueter_partial<T: Coeff>(
    k: &MultiIndex,
    j: usize,
    x: &Paravector<T>,
) -> Result<Multivector<T>> {
    assert!(j >= 1 && j <= x.n(), "variable index out of range");
    match k.sub_unit(j) {
        None => Ok(Multivector::zero(x.n())),
        Some(prev) => {
            let kj = T::from_u32(k.0[j - 1]).expect("small integer");
            Ok(fueter_eval(&prev, x)?.scale(&kj))
        }
    }
}

/// Fourth-order central difference of f along coordinate `var`
/// (0 = x_0, i >= 1 = x_i).
pub fn partial_fd(
    f: &dyn Fn(&Paravector<f64>) -> Multivector<f64>,
    x: &Paravector<f64>,
    var: usize,
    h: f64,
) -> Multivector<f64> {
    let shift = |delta: f64| {
        let mut p = x.clone();
        if var == 0 {
            p.x0 += delta;
        } else {
            p.xv[var - 1] += delta;
        }
        f(&p)
    };
    let num = &(&shift(-2.0 * h) - &shift(2.0 * h)) + &(&shift(h) - &shift(-h)).scale(&8.0);
    num.scale(&(1.0 / (12.0 * h)))
}

/// |D f(x)| with D = d/dx_0 + sum_i e_i d/dx_i, all partials by 4th-order
/// central differences at step h combined with one Richardson refinement.
/// O(h^6) truncation for smooth f; left-monogenic f gives residuals at
/// rounding level.
pub fn monogenic_residual(
    f: &dyn Fn(&Paravector<f64>) -> Multivector<f64>,
    x: &Paravector<f64>,
    h: f64,
) -> f64 {
    let n = x.n();
    let apply_d = |step: f64| {
        let mut acc = partial_fd(f, x, 0, step);
        for i in 1..=n {
            let di = partial_fd(f, x, i, step);
            acc = &acc + &(&Multivector::basis(n, i) * &di);
        }
        acc
    };
    let coarse = apply_d(h);
    let fine = apply_d(h / 2.0);
    // Richardson on the O(h^4) stencil: (16 D(h/2) - D(h)) / 15
    let combined = (&fine.scale(&16.0) - &coarse).scale(&(1.0 / 15.0));
    combined.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn rp(x0: i64, xv: &[i64]) -> Paravector<BigRational> {
        Paravector::new(rat(x0), xv.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn single_letter_is_fueter_variable() {
        let x = Paravector::new(0.7, vec![1.3, -0.4]);
        let p = fueter_eval(&MultiIndex(vec![1, 0]), &x).unwrap();
        assert!(p.approx_eq(&fueter_variable(1, &x), 1e-15));
    }

    #[test]
    fn degree_one_one_explicit() {
        // P_(1,1) = x1 x2 - x0 x2 e1 - x0 x1 e2
        let x = rp(2, &[3, 5]);
        let p = fueter_eval(&MultiIndex(vec![1, 1]), &x).unwrap();
        let mut expect = Multivector::zero(2);
        expect.set_coeff(0, rat(15));
        expect.set_coeff(0b01, rat(-10));
        expect.set_coeff(0b10, rat(-6));
        assert_eq!(p, expect);
    }

    #[test]
    fn purely_imaginary_reduces_to_monomial() {
        let x = Paravector::new(0.0, vec![1.5, -2.0, 0.5]);
        let k = MultiIndex(vec![2, 1, 3]);
        let p = fueter_eval(&k, &x).unwrap();
        let expect = 1.5f64.powi(2) * (-2.0) * 0.5f64.powi(3);
        assert!(p.is_scalar());
        assert!((p.coeff(0) - expect).abs() < 1e-12);
    }

    #[test]
    fn direct_matches_recursion_exactly() {
        let x = rp(1, &[2, -1]);
        for k in MultiIndex::up_to_degree(2, 5) {
            let direct = fueter_eval_direct(&k, &x).unwrap();
            let rec = fueter_eval(&k, &x).unwrap();
            assert_eq!(direct, rec, "k={k:?}");
        }
    }

    #[test]
    fn direct_zero_and_squared_cases() {
        let x = rp(0, &[0, 0]);
        assert_eq!(
            fueter_eval_direct(&MultiIndex::zero(2), &x).unwrap(),
            Multivector::one(2)
        );
        // k=(2,0) at x = 1 + e1: z1 = 1 - e1, z1^2 = -2 e1
        let x = rp(1, &[1, 0]);
        let p = fueter_eval_direct(&MultiIndex(vec![2, 0]), &x).unwrap();
        let mut expect = Multivector::zero(2);
        expect.set_coeff(0b01, rat(-2));
        assert_eq!(p, expect);
    }

    #[test]
    fn result_is_paravector() {
        let x = Paravector::new(0.3, vec![1.0, -0.7, 0.2]);
        for k in MultiIndex::up_to_degree(3, 4) {
            let p = fueter_eval(&k, &x).unwrap();
            let higher: f64 = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(mask, _)| mask.count_ones() > 1)
                .map(|(_, c)| c * c)
                .sum();
            assert!(higher.sqrt() < 1e-14, "k={k:?} grade>1 residual");
        }
    }

    #[test]
    fn left_form_of_recursion_agrees() {
        // |k| P_k = sum k_i z_i P_{k-eps_i} as well
        let x = Paravector::new(0.4, vec![-0.9, 0.6]);
        for k in MultiIndex::up_to_degree(2, 6) {
            if k.is_zero() {
                continue;
            }
            let mut ev = FueterEvaluator::new(&x);
            let direct = ev.eval(&k).unwrap().scale(&(k.total() as f64));
            let mut left = Multivector::zero(2);
            for i in 1..=2 {
                if let Some(prev) = k.sub_unit(i) {
                    let term =
                        (&fueter_variable(i, &x) * &ev.eval(&prev).unwrap()).scale(&(k.0[i - 1] as f64));
                    left = &left + &term;
                }
            }
            let scale = direct.norm().max(1.0);
            assert!(
                (&left - &direct).norm() <= 1e-12 * scale,
                "k={k:?} residual {}",
                (&left - &direct).norm()
            );
        }
    }

    #[test]
    fn partial_derivative_formula() {
        let x = Paravector::new(0.2, vec![0.8, -1.1]);
        // k=eps_1, j=1 -> 1
        let d = fueter_partial(&MultiIndex(vec![1, 0]), 1, &x).unwrap();
        assert!(d.approx_eq(&Multivector::one(2), 1e-15));
        // k=(1,1), j=2 -> z1
        let d = fueter_partial(&MultiIndex(vec![1, 1]), 2, &x).unwrap();
        assert!(d.approx_eq(&fueter_variable(1, &x), 1e-15));
        // k=(2,0), j=2 -> 0
        let d = fueter_partial(&MultiIndex(vec![2, 0]), 2, &x).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn partial_matches_finite_differences() {
        let x = Paravector::new(0.5, vec![0.7, -0.3, 0.9]);
        for k in [MultiIndex(vec![2, 1, 0]), MultiIndex(vec![1, 1, 2])] {
            for j in 1..=3 {
                let exact = fueter_partial(&k, j, &x).unwrap();
                let k2 = k.clone();
                let fd = partial_fd(
                    &move |p: &Paravector<f64>| fueter_eval(&k2, p).unwrap(),
                    &x,
                    j,
                    1e-2,
                );
                assert!(
                    (&exact - &fd).norm() < 1e-7,
                    "k={k:?} j={j} diff {}",
                    (&exact - &fd).norm()
                );
            }
        }
    }

    #[test]
    fn fueter_polynomials_are_monogenic() {
        let x = Paravector::new(0.3, vec![0.4, -0.2]);
        let res = monogenic_residual(
            &|p| fueter_eval(&MultiIndex(vec![1, 1]), p).unwrap(),
            &x,
            1e-2,
        );
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn identity_map_residual_is_one_minus_n() {
        for n in 2..=4 {
            let x = Paravector::new(0.1, vec![0.5; n]);
            let res = monogenic_residual(&|p: &Paravector<f64>| p.embed(), &x, 1e-2);
            assert!(
                (res - (n as f64 - 1.0)).abs() < 1e-9,
                "n={n} residual {res}"
            );
        }
    }

    #[test]
    fn real_axis_value_is_scaled_perm_constant() {
        // P_k(x_0) = (-x_0)^{|k|} e_k / |k|!; each z_i degenerates to
        // -x_0 e_i on the real axis, so the direct definition forces the
        // (-1)^{|k|} that the even-degree cases hide
        use crate::combin::{factorial_f64, perm_sum_e_all};
        let x0: f64 = 0.7;
        for n in 2..=3usize {
            let x = Paravector::real(n, x0);
            for k in MultiIndex::up_to_degree(n, 4) {
                let p = fueter_eval(&k, &x).unwrap();
                let ek = perm_sum_e_all(&k).unwrap().map_coeffs(|c| *c as f64);
                let scale = (-x0).powi(k.total() as i32) / factorial_f64(k.total());
                assert!(
                    p.approx_eq(&ek.scale(&scale), 1e-12),
                    "n={n} k={k:?}: {p:?} vs {:?}",
                    ek.scale(&scale)
                );
            }
        }
    }

    #[test]
    fn norm_bounded_by_point_norm_power() {
        // |P_k(x)| <= |x|^{|k|}
        use crate::grid::halton_ball;
        for (i, x) in halton_ball(3, 2.0, 200, 11).into_iter().enumerate() {
            let k = match i % 3 {
                0 => MultiIndex(vec![2, 1, 0]),
                1 => MultiIndex(vec![1, 1, 1]),
                _ => MultiIndex(vec![0, 3, 2]),
            };
            let p = fueter_eval(&k, &x).unwrap();
            let bound = x.norm().powi(k.total() as i32);
            assert!(p.norm() <= bound * (1.0 + 1e-12), "i={i}");
        }
    }

    #[test]
    fn binomial_formula() {
        // P_k(x+y) = sum_{i+j=k} k!/(i! j!) P_i(x) P_j(y)
        let x = Paravector::new(0.4, vec![0.7, -0.2]);
        let y = Paravector::new(-0.3, vec![0.1, 0.6]);
        let xy = x.add(&y);
        for k in [MultiIndex(vec![2, 1]), MultiIndex(vec![1, 3]), MultiIndex(vec![2, 2])] {
            let lhs = fueter_eval(&k, &xy).unwrap();
            let mut rhs = Multivector::zero(2);
            for i1 in 0..=k.0[0] {
                for i2 in 0..=k.0[1] {
                    let i = MultiIndex(vec![i1, i2]);
                    let j = k.checked_sub(&i).unwrap();
                    let w = k.factorial_f64() / (i.factorial_f64() * j.factorial_f64());
                    let term =
                        (&fueter_eval(&i, &x).unwrap() * &fueter_eval(&j, &y).unwrap()).scale(&w);
                    rhs = &rhs + &term;
                }
            }
            let scale = lhs.norm().max(1.0);
            assert!(
                (&lhs - &rhs).norm() <= 1e-11 * scale,
                "k={k:?} diff {}",
                (&lhs - &rhs).norm()
            );
        }
    }

    #[test]
    fn higher_partials_shift_the_index() {
        // d^m P_k = k!/(k-m)! P_{k-m}, checked on the symbolic expansion
        use crate::ck::fueter_polynomial_sym;
        let n = 2;
        let k = MultiIndex(vec![3, 2]);
        for m in [MultiIndex(vec![1, 2]), MultiIndex(vec![2, 0]), MultiIndex(vec![3, 2])] {
            let mut d = fueter_polynomial_sym::<f64>(n, &k);
            for i in 1..=n {
                for _ in 0..m.0[i - 1] {
                    d = d.partial(i);
                }
            }
            let km = k.checked_sub(&m).unwrap();
            let w = k.factorial_f64() / km.factorial_f64();
            let expect = fueter_polynomial_sym::<f64>(n, &km);
            let x = Paravector::new(0.5, vec![-0.6, 0.9]);
            let diff = (&d.eval(&x) - &expect.eval(&x).scale(&w)).norm();
            assert!(diff < 1e-12, "m={m:?} diff {diff}");
        }
    }

    #[test]
    fn degree_budget() {
        let x = Paravector::new(0.0, vec![1.0]);
        assert!(matches!(
            fueter_eval(&MultiIndex(vec![41]), &x),
            Err(Error::Budget(_))
        ));
        assert!(matches!(
            fueter_eval_direct(&MultiIndex(vec![8]), &x),
            Err(Error::Budget(_))
        ));
    }
}
