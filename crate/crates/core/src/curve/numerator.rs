//! Numerator `P(t) = prod (1 - ω_i t)` of the zeta function of a smooth curve,
//! recovered from point counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CurveError, PointCountTable};
use crate::arith::exact_sqrt;
use crate::poly::IntPolynomial;

/// `P(t) = a_0 + a_1 t + ... + a_{2g} t^{2g}` with `a_0 = 1`, `a_{2g} = q^g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaNumerator {
    pub q: u64,
    pub genus: u32,
    pub poly: IntPolynomial,
}

impl ZetaNumerator {
    /// Checks `a_{2g-i} = q^{g-i} a_i` for `0 <= i <= g` and `deg = 2g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus as usize;
        let q = BigInt::from(self.q);
        self.poly.degree() == Some(2 * g)
            && (0..=g).all(|i| self.poly.coeff(2 * g - i) == q.pow((g - i) as u32) * self.poly.coeff(i))
    }
}

/// Recover `P(t)` from `N_1..N_g` via Newton's identities on the power sums
/// `s_n = q^n + 1 - N_n`, complete it with the functional equation, and
/// check that it reproduces every count in the table.
pub fn zeta_numerator_from_counts(
    tbl: &PointCountTable,
    genus: u32,
) -> Result<ZetaNumerator, CurveError> {
    let g = genus as usize;
    if tbl.n_max() < genus {
        return Err(CurveError::MissingCounts {
            needed: genus,
            have: tbl.n_max(),
        });
    }
    let q = BigInt::from(tbl.q);
    let s: Vec<BigInt> = (1..=genus)
        .map(|n| q.pow(n) + 1 - BigInt::from(tbl.get(n).expect("checked above")))
        .collect();
    // k a_k = -sum_{i=1}^{k} a_{k-i} s_i
    let mut a = vec![BigInt::one()];
    for k in 1..=g {
        let acc: BigInt = (1..=k).map(|i| &a[k - i] * &s[i - 1]).sum();
        let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(CurveError::InconsistentCounts(format!(
                "coefficient a_{k} is not an integer"
            )));
        }
        a.push(quot);
    }
    for i in (0..g).rev() {
        let c = q.pow((g - i) as u32) * &a[i];
        a.push(c);
    }
    let z = ZetaNumerator {
        q: tbl.q,
        genus,
        poly: IntPolynomial::from_coeffs(a),
    };
    let back = counts_from_numerator(&z, tbl.n_max());
    for (i, got) in back.into_iter().enumerate() {
        let expected = tbl.counts[i];
        if got != BigInt::from(expected) {
            return Err(CurveError::RoundTrip {
                i: i as u32 + 1,
                expected,
                got,
            });
        }
    }
    Ok(z)
}

/// `N_1..N_{n_max}` from `Z(t) = P(t) / ((1 - t)(1 - q t))`, using
/// `t Z'(t) / Z(t) = sum N_n t^n` on the truncated power series.
pub fn counts_from_numerator(z: &ZetaNumerator, n_max: u32) -> Vec<BigInt> {
    let n = n_max as usize;
    let q = BigInt::from(z.q);
    // 1/((1-t)(1-qt)) = sum_k (1 + q + ... + q^k) t^k
    let mut h = Vec::with_capacity(n + 1);
    let mut acc = BigInt::zero();
    let mut qk = BigInt::one();
    for _ in 0..=n {
        acc += &qk;
        h.push(acc.clone());
        qk *= &q;
    }
    let series: Vec<BigInt> = (0..=n)
        .map(|k| (0..=k).map(|j| z.poly.coeff(j) * &h[k - j]).sum())
        .collect();
    let mut counts: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut v = BigInt::from(k) * &series[k];
        for m in 1..k {
            v -= &counts[m - 1] * &series[k - m];
        }
        counts.push(v);
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremality {
    Maximal,
    Minimal,
    Neither,
    /// Genus 0, or `q` not a square.
    NotApplicable,
}

/// Compare `P(t)` with `(1 + √q t)^{2g}` (maximal) and `(1 - √q t)^{2g}`
/// (minimal) coefficient by coefficient.
pub fn extremality_of_c(z: &ZetaNumerator, q: u64) -> Extremality {
    if z.genus == 0 {
        return Extremality::NotApplicable;
    }
    let Some(r) = exact_sqrt(q) else {
        return Extremality::NotApplicable;
    };
    let two_g = 2 * z.genus as usize;
    let r = BigInt::from(r);
    if z.poly == IntPolynomial::binomial_power(&r, two_g) {
        Extremality::Maximal
    } else if z.poly == IntPolynomial::binomial_power(&(-r), two_g) {
        Extremality::Minimal
    } else {
        Extremality::Neither
    }
}
