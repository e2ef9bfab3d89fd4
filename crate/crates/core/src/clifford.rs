//! Dense multivectors of the real Clifford algebra R_n with signature
//! e_i^2 = -1, e_i e_j = -e_j e_i, and paravector calculus on top of them.
//!
//! Blades are indexed by bitmask: bit i-1 of the index selects the unit e_i,
//! so index 0 is the scalar blade, index 0b101 is e_1 e_3, and so on.
//! Coefficients are generic so the same arithmetic runs exactly over
//! rationals/integers and fast over f64.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Maximum algebra dimension: 2^8 = 256 blades keeps dense storage cheap.
pub const MAX_DIM: usize = 8;

/// Scalar kinds a multivector can carry: f64 for experiments, i64 and
/// BigRational for the exact identity suites.
pub trait Coeff:
    Clone + PartialEq + Num + Signed + FromPrimitive + ToPrimitive + fmt::Debug
{
}
impl<T> Coeff for T where
    T: Clone + PartialEq + Num + Signed + FromPrimitive + ToPrimitive + fmt::Debug
{
}

/// Reordering sign of the blade product e_A e_B together with the metric
/// signs from repeated units (each e_i^2 = -1).
///
/// Returns -1 if the total number of transpositions plus repeated indices is
/// odd. The resulting blade is `a ^ b`.
#[inline]
pub fn blade_product_sign(a: usize, b: usize) -> i32 {
    let mut shifted = a >> 1;
    let mut swaps = 0u32;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // negative-definite signature: one sign flip per repeated index
    let flips = swaps + (a & b).count_ones();
    if flips % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of R_n stored as 2^n blade coefficients.
#[derive(Clone, PartialEq)]
pub struct Multivector<T> {
    dim: usize,
    coeffs: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}, {:?})", self.dim, self.coeffs)
    }
}

impl<T: Coeff> Multivector<T> {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dim {dim} outside 1..=8");
        Multivector {
            dim,
            coeffs: vec![T::zero(); 1 << dim],
        }
    }

    pub fn scalar(dim: usize, value: T) -> Self {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = value;
        mv
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, T::one())
    }

    /// The unit e_i, 1-based.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "basis index {i} outside 1..={dim}");
        Self::blade(dim, 1 << (i - 1), T::one())
    }

    pub fn blade(dim: usize, mask: usize, value: T) -> Self {
        let mut mv = Self::zero(dim);
        assert!(mask < (1 << dim));
        mv.coeffs[mask] = value;
        mv
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), 1 << dim, "need 2^dim blade coefficients");
        Multivector { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &T {
        &self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: T) {
        self.coeffs[mask] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when only the scalar blade is populated.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when only blades of grade <= 1 are populated.
    pub fn is_paravector(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| mask.count_ones() <= 1 || c.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Geometric product. Exact when the coefficients are exact.
    pub fn geo_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = Self::zero(self.dim);
        for (a_mask, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_mask, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.clone() * b.clone();
                let target = &mut out.coeffs[a_mask ^ b_mask];
                if blade_product_sign(a_mask, b_mask) > 0 {
                    *target = target.clone() + term;
                } else {
                    *target = target.clone() - term;
                }
            }
        }
        Ok(out)
    }

    /// Euclidean norm over blades as f64.
    pub fn norm(&self) -> f64 {
        self.norm_sq_f64().sqrt()
    }

    pub fn norm_sq_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c.to_f64().expect("coefficient convertible to f64");
                v * v
            })
            .sum()
    }

    /// Exact |y|^2 in the coefficient ring.
    pub fn norm_sq(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }
}

impl Multivector<f64> {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl<T: Coeff> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Geometric product; panics on dimension mismatch (use `geo_mul` to get a
/// Result instead).
impl<T: Coeff> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.geo_mul(rhs).expect("dimension mismatch in product")
    }
}

/// Paravector x = x_0 + x_1 e_1 + ... + x_n e_n, identified with a point of
/// R^{n+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct Paravector<T> {
    pub x0: T,
    pub xv: Vec<T>,
}

impl<T: Coeff> Paravector<T> {
    pub fn new(x0: T, xv: Vec<T>) -> Self {
        assert!((1..=MAX_DIM).contains(&xv.len()), "vector part outside 1..=8");
        Paravector { x0, xv }
    }

    pub fn zero(n: usize) -> Self {
        Paravector::new(T::zero(), vec![T::zero(); n])
    }

    pub fn real(n: usize, x0: T) -> Self {
        Paravector::new(x0, vec![T::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.xv.len()
    }

    /// x mapped into the full algebra: x_0 at the scalar blade, x_i at e_i.
    pub fn embed(&self) -> Multivector<T> {
        let mut mv = Multivector::zero(self.n());
        mv.set_coeff(0, self.x0.clone());
        for (i, v) in self.xv.iter().enumerate() {
            mv.set_coeff(1 << i, v.clone());
        }
        mv
    }

    /// Left inverse of `embed` on paravector-supported multivectors.
    pub fn project(mv: &Multivector<T>) -> Option<Self> {
        if !mv.is_paravector() {
            return None;
        }
        let n = mv.dim();
        Some(Paravector::new(
            mv.coeff(0).clone(),
            (0..n).map(|i| mv.coeff(1 << i).clone()).collect(),
        ))
    }

    /// Conjugate x0 - underline(x); satisfies x * conj(x) = |x|^2.
    pub fn conj(&self) -> Self {
        Paravector {
            x0: self.x0.clone(),
            xv: self.xv.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn norm_sq(&self) -> T {
        self.xv
            .iter()
            .fold(self.x0.clone() * self.x0.clone(), |acc, v| {
                acc + v.clone() * v.clone()
            })
    }

    /// Squared norm of the imaginary part alone.
    pub fn vec_norm_sq(&self) -> T {
        self.xv
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    pub fn is_real(&self) -> bool {
        self.xv.iter().all(|v| v.is_zero())
    }

    /// conj(x) / |x|^2; errors when |x| = 0.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2.is_zero() {
            return Err(Error::Singular("paravector inverse of zero".into()));
        }
        let c = self.conj();
        Ok(Paravector {
            x0: c.x0 / n2.clone(),
            xv: c.xv.into_iter().map(|v| v / n2.clone()).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n(), rhs.n());
        Paravector {
            x0: self.x0.clone() + rhs.x0.clone(),
            xv: self
                .xv
                .iter()
                .zip(&rhs.xv)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n(), rhs.n());
        Paravector {
            x0: self.x0.clone() - rhs.x0.clone(),
            xv: self
                .xv
                .iter()
                .zip(&rhs.xv)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Paravector {
            x0: self.x0.clone() * s.clone(),
            xv: self.xv.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Paravector<U> {
        Paravector {
            x0: f(&self.x0),
            xv: self.xv.iter().map(|v| f(v)).collect(),
        }
    }
}

impl Paravector<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn vec_norm(&self) -> f64 {
        self.vec_norm_sq().sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n() == other.n()
            && (self.x0 - other.x0).abs() <= tol
            && self
                .xv
                .iter()
                .zip(&other.xv)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Slice decomposition x = u + j v with u = x_0, v = |underline(x)| >= 0 and
/// j the unit imaginary direction of x; j is None on the real axis.
pub fn slice_split(x: &Paravector<f64>) -> (f64, f64, Option<Paravector<f64>>) {
    let v = x.vec_norm();
    if v == 0.0 {
        return (x.x0, 0.0, None);
    }
    let j = Paravector::new(0.0, x.xv.iter().map(|c| c / v).collect());
    (x.x0, v, Some(j))
}

/// Reassemble u + j v; with j = None the point is real.
pub fn slice_join(n: usize, u: f64, v: f64, j: Option<&Paravector<f64>>) -> Paravector<f64> {
    match j {
        None => Paravector::real(n, u),
        Some(j) => {
            let mut p = j.scale(&v);
            p.x0 = u;
            p
        }
    }
}
