//! Multi-index arithmetic and the permutation-sum Clifford constants e'_m,
//! e_k and c_k that normalize the Fueter/monogenic series, plus the
//! combinatorial weight c(n,m) = (n+|m|-1)!/((n-1)! m!).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::clifford::{blade_product_sign, Multivector};
use crate::error::{Error, Result};

/// Total degree above which factorials and enumeration are refused.
pub const MAX_TOTAL_DEGREE: u32 = 64;

/// Enumeration budget for the multiset-permutation sum: beyond this the
/// recursive table must be used instead.
pub const PERM_ENUM_BUDGET: u32 = 12;

/// n-tuple of nonnegative integers (k_1 ... k_n).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// epsilon_i: 1 in position i (1-based), 0 elsewhere.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut parts = vec![0; n];
        parts[i - 1] = 1;
        MultiIndex(parts)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// |k| = sum of the parts.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// k - epsilon_i (1-based); None when k_i = 0.
    pub fn sub_unit(&self, i: usize) -> Option<Self> {
        if self.0[i - 1] == 0 {
            return None;
        }
        let mut parts = self.0.clone();
        parts[i - 1] -= 1;
        Some(MultiIndex(parts))
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// k - m componentwise; None when any component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// k! = prod k_i!, exactly.
    pub fn factorial(&self) -> BigUint {
        self.0.iter().map(|&p| factorial_big(p)).product()
    }

    pub fn factorial_f64(&self) -> f64 {
        self.0.iter().map(|&p| factorial_f64(p)).product()
    }

    /// The multiset letter sequence (1 repeated k_1 times, ...), ascending.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (i, &count) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i + 1).take(count as usize));
        }
        out
    }

    /// All multi-indices of length n with given total degree, lexicographic.
    pub fn of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill_degree(&mut out, &mut current, 0, degree);
        out
    }

    /// All multi-indices of length n with total degree <= max, graded lex.
    pub fn up_to_degree(n: usize, max: u32) -> Vec<MultiIndex> {
        (0..=max).flat_map(|d| Self::of_degree(n, d)).collect()
    }

    /// Graded lexicographic comparison (total degree first).
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_cmp(other)
    }
}

fn fill_degree(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill_degree(out, current, pos + 1, remaining - v);
    }
    current[pos] = 0;
}

pub fn factorial_big(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn factorial_f64(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// c(n,m) = (n+|m|-1)! / ((n-1)! m!), exactly.
pub fn c_binom(n: usize, m: &MultiIndex) -> BigRational {
    assert_eq!(n, m.n(), "c_binom needs n = length of m");
    let num = factorial_big(n as u32 + m.total() - 1);
    let den = factorial_big(n as u32 - 1) * m.factorial();
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Multiply an integer multivector by the unit e_i on the right, with
/// overflow checks so exactness failures surface as errors.
fn mul_unit_right(mv: &Multivector<i64>, i: usize) -> Result<Multivector<i64>> {
    let b = 1usize << (i - 1);
    let mut out = Multivector::zero(mv.dim());
    for (mask, c) in mv.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let target = mask ^ b;
        let signed = if blade_product_sign(mask, b) > 0 { *c } else { -*c };
        let cur: i64 = *out.coeff(target);
        let sum = cur
            .checked_add(signed)
            .ok_or_else(|| Error::Budget("integer overflow in permutation sum".into()))?;
        out.set_coeff(target, sum);
    }
    Ok(out)
}

/// e'_m: sum over the |m|!/m! distinguishable orderings of the multiset
/// {1^{m_1}, ..., n^{m_n}} of the unit products e_{l_1} ... e_{l_{|m|}},
/// by direct lexicographic enumeration. Budget |m| <= 12.
pub fn perm_sum_e(m: &MultiIndex) -> Result<Multivector<i64>> {
    if m.total() > PERM_ENUM_BUDGET {
        return Err(Error::Budget(format!(
            "|m| = {} exceeds enumeration budget {}",
            m.total(),
            PERM_ENUM_BUDGET
        )));
    }
    static MEMO: OnceLock<Mutex<HashMap<MultiIndex, Multivector<i64>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(m) {
        return Ok(hit.clone());
    }
    let n = m.n();
    let mut letters = m.letters();
    let mut acc = Multivector::<i64>::zero(n);
    loop {
        let mut prod = Multivector::<i64>::one(n);
        for &l in &letters {
            prod = mul_unit_right(&prod, l)?;
        }
        acc = &acc + &prod;
        if !next_permutation(&mut letters) {
            break;
        }
    }
    memo.lock().unwrap().insert(m.clone(), acc.clone());
    Ok(acc)
}

/// e_k = m! * e'_m: the sum over all |m|! orderings counting repeats of
/// identical letters (the enumeration confirms the m! ratio; see tests).
pub fn perm_sum_e_all(m: &MultiIndex) -> Result<Multivector<i64>> {
    let base = perm_sum_e(m)?;
    let fact = m
        .factorial()
        .try_into()
        .map_err(|_| Error::Budget("m! exceeds i64 in e_k".into()))?;
    let fact: u64 = fact;
    let mut out = Multivector::zero(base.dim());
    for (mask, c) in base.coeffs().iter().enumerate() {
        let scaled = c
            .checked_mul(fact as i64)
            .ok_or_else(|| Error::Budget("integer overflow in e_k".into()))?;
        out.set_coeff(mask, scaled);
    }
    Ok(out)
}

/// e'_m for arbitrary degrees via the last-letter recursion
/// e'_m = sum_i e'_{m - eps_i} e_i, computed as a graded table up to a
/// degree bound. Agrees with the enumeration on the shared range.
pub struct EPrimeTable {
    n: usize,
    table: HashMap<MultiIndex, Multivector<i64>>,
}

impl EPrimeTable {
    pub fn new(n: usize) -> Self {
        let mut table = HashMap::new();
        table.insert(MultiIndex::zero(n), Multivector::one(n));
        EPrimeTable { n, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&mut self, m: &MultiIndex) -> Result<Multivector<i64>> {
        if let Some(hit) = self.table.get(m) {
            return Ok(hit.clone());
        }
        if m.total() > MAX_TOTAL_DEGREE {
            return Err(Error::Budget(format!(
                "|m| = {} exceeds degree budget {}",
                m.total(),
                MAX_TOTAL_DEGREE
            )));
        }
        let mut acc = Multivector::<i64>::zero(self.n);
        for i in 1..=self.n {
            if let Some(prev) = m.sub_unit(i) {
                let sub = self.get(&prev)?;
                acc = &acc + &mul_unit_right(&sub, i)?;
            }
        }
        self.table.insert(m.clone(), acc.clone());
        Ok(acc)
    }

    pub fn get_f64(&mut self, m: &MultiIndex) -> Result<Multivector<f64>> {
        Ok(self.get(m)?.map_coeffs(|c| *c as f64))
    }
}

/// c_k = (-n)^q for k = 2q, and (-n)^q (e_1 + ... + e_n) for k = 2q + 1.
pub fn c_k_constant(n: usize, k: u32) -> Multivector<i64> {
    let q = k / 2;
    let scale = (-(n as i64)).pow(q);
    if k % 2 == 0 {
        Multivector::scalar(n, scale)
    } else {
        let mut mv = Multivector::zero(n);
        for i in 1..=n {
            mv.set_coeff(1 << (i - 1), scale);
        }
        mv
    }
}

/// Inverse of c_k in R_n: scalar reciprocal for even k; for odd k the unit
/// sum squares to -n, so (e_1+...+e_n)^{-1} = -(e_1+...+e_n)/n.
pub fn c_k_inverse(n: usize, k: u32) -> Multivector<f64> {
    let q = k / 2;
    let scale = 1.0 / (-(n as f64)).powi(q as i32);
    if k % 2 == 0 {
        Multivector::scalar(n, scale)
    } else {
        let mut mv = Multivector::zero(n);
        for i in 1..=n {
            mv.set_coeff(1 << (i - 1), -scale / n as f64);
        }
        mv
    }
}

/// In-place next lexicographic permutation; false when the sequence was the
/// last one. Steps through each distinguishable multiset ordering once.
fn next_permutation(seq: &mut [usize]) -> bool {
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

/// Number of distinguishable permutations |m|!/m! as exact big integer.
pub fn distinguishable_count(m: &MultiIndex) -> BigUint {
    factorial_big(m.total()) / m.factorial()
}
