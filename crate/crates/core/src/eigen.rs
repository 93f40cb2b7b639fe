//! Eigenstructure of the banded transfer matrix: M(p) = R * diag(a_j) * L
//! with L*R = I. R is the upper-triangular Pascal matrix of alternating sign,
//! R_ij = (-1)^(i+j) C(j-1, i-1); L is the plain upper-triangular Pascal
//! matrix, L_ij = C(j-1, i-1). The eigenvectors do not depend on p, so powers
//! of the matrix over a prime range diagonalize with eigenvalue products
//! a_j^k = prod (p-j-1)/(p-2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primes::primes_in;

/// The Pascal eigenvector pair at a fixed dimension.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    dim: usize,
    /// binomial triangle: binom[n][k] = C(n, k), n < dim
    binom: Vec<Vec<BigInt>>,
}

pub fn eigen_basis(dim: usize) -> EigenSystem {
    let dim = dim.max(1);
    let mut binom: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &binom[n - 1][k - 1] + &binom[n - 1][k];
        }
        binom.push(row);
    }
    EigenSystem { dim, binom }
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// R_ij, 1-based indices.
    pub fn r(&self, i: usize, j: usize) -> BigInt {
        if i > j || i == 0 || j > self.dim {
            return BigInt::zero();
        }
        let c = self.binom[j - 1][i - 1].clone();
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// L_ij, 1-based indices.
    pub fn l(&self, i: usize, j: usize) -> BigInt {
        if i > j || i == 0 || j > self.dim {
            return BigInt::zero();
        }
        self.binom[j - 1][i - 1].clone()
    }

    /// L_i . w, the i-th left-eigenvector functional (1-based).
    pub fn l_dot(&self, i: usize, w: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (jm1, wj) in w.iter().enumerate().skip(i - 1) {
            acc += BigRational::from(self.l(i, jm1 + 1)) * wj;
        }
        acc
    }

    /// Exact check that L * R is the identity.
    pub fn l_r_is_identity(&self) -> bool {
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let mut acc = BigInt::zero();
                for k in i..=j.max(i) {
                    if k > self.dim {
                        break;
                    }
                    acc += self.l(i, k) * self.r(k, j);
                }
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// R * diag(a_1(p)..a_J(p)) * L in exact rationals.
    pub fn reconstruct(&self, p: u64) -> Vec<Vec<BigRational>> {
        let dim = self.dim;
        let den = BigInt::from(p - 2);
        let mut out = vec![vec![BigRational::zero(); dim]; dim];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut num = BigInt::zero();
                for k in (i + 1).max(1)..=(j + 1) {
                    // a_k(p) = (p - k - 1)/(p - 2)
                    let a_num = BigInt::from(p as i64 - k as i64 - 1);
                    num += self.r(i + 1, k) * a_num * self.l(k, j + 1);
                }
                *cell = BigRational::new(num, den.clone());
            }
        }
        out
    }
}

/// Exact eigenvalue products a_j^k = prod_{p in (p0, pk]} (p-j-1)/(p-2)
/// for j = 1..=dim.
pub fn eigenvalue_products(p0: u64, p_k: u64, dim: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::one(); dim];
    for p in primes_in(p0, p_k) {
        let den = BigInt::from(p - 2);
        for (jm1, a) in out.iter_mut().enumerate() {
            let num = BigInt::from(p as i64 - jm1 as i64 - 2);
            *a *= BigRational::new(num, den.clone());
        }
    }
    out
}

/// The exact expansion of the first ratio after k steps:
/// w_{g,1}(pk#) = sum_i (-1)^(i+1) a_i^k (L_i . w0), with a_1^k = 1.
pub fn closed_form_w1(w0: &[BigRational], products: &[BigRational]) -> Result<BigRational> {
    if w0.len() != products.len() {
        return Err(Error::DimensionMismatch {
            left: w0.len(),
            right: products.len(),
        });
    }
    let sys = eigen_basis(w0.len());
    let mut acc = BigRational::zero();
    for i in 1..=w0.len() {
        let term = &products[i - 1] * sys.l_dot(i, w0);
        if i % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Truncated polynomial in lambda = a_2^k, using the approximation
/// a_j^k ~ lambda^(j-1): w_{g,1} ~ l_1 - l_2 lambda + l_3 lambda^2 - ...
/// with exact coefficients l_i = L_i . w0.
#[derive(Debug, Clone)]
pub struct PolynomialModel {
    pub gap: u64,
    pub base_prime: u64,
    pub coefficients: Vec<BigRational>,
}

pub fn poly_model(
    gap: u64,
    base_prime: u64,
    w0: &[BigRational],
    degree: usize,
) -> Result<PolynomialModel> {
    if degree + 1 > w0.len() {
        return Err(Error::DegreeTooLarge {
            degree,
            need: degree + 1,
            have: w0.len(),
        });
    }
    let sys = eigen_basis(w0.len());
    let coefficients = (1..=degree + 1).map(|i| sys.l_dot(i, w0)).collect();
    Ok(PolynomialModel {
        gap,
        base_prime,
        coefficients,
    })
}

impl PolynomialModel {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// l_1: the asymptotic ratio the model converges to as lambda -> 0.
    pub fn asymptotic(&self) -> &BigRational {
        &self.coefficients[0]
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        let mut acc = 0.0;
        let mut pow = 1.0;
        for (i, l) in self.coefficients.iter().enumerate() {
            let term = rational_to_f64(l) * pow;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            pow *= lambda;
        }
        acc
    }

    pub fn eval_exact(&self, lambda: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        for (i, l) in self.coefficients.iter().enumerate() {
            let term = l * &pow;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            pow *= lambda;
        }
        acc
    }
}

/// f64 rendering that survives numerators far beyond f64 range by going
/// through a quotient-with-remainder first.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (q, rem) = num_integer::Integer::div_rem(r.numer(), r.denom());
    let qf = bigint_to_f64(&q);
    let frac = bigint_to_f64(&rem) / bigint_to_f64(r.denom());
    qf + frac
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // BigInt::to_f64 exists but saturates oddly on some versions; this keeps
    // control in one place.
    let neg = x.is_negative();
    let mag = x.magnitude();
    let bits = mag.bits();
    let val = if bits <= 53 {
        u64::try_from(mag.clone()).map(|v| v as f64).unwrap_or(0.0)
    } else {
        let shift = bits - 53;
        let top: u64 = u64::try_from(mag >> shift).unwrap_or(u64::MAX);
        top as f64 * 2f64.powi(shift as i32)
    };
    if neg {
        -val
    } else {
        val
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dimension_one_is_identity() {
        let sys = eigen_basis(1);
        assert_eq!(sys.r(1, 1), BigInt::one());
        assert_eq!(sys.l(1, 1), BigInt::one());
        assert!(sys.l_r_is_identity());
    }

    #[test]
    fn dimension_three_matrices() {
        let sys = eigen_basis(3);
        let r: Vec<i64> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| i64::try_from(sys.r(i, j)).unwrap())
            .collect();
        assert_eq!(r, vec![1, -1, 1, 0, 1, -2, 0, 0, 1]);
        let l: Vec<i64> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| i64::try_from(sys.l(i, j)).unwrap())
            .collect();
        assert_eq!(l, vec![1, 1, 1, 0, 1, 2, 0, 0, 1]);
        assert!(sys.l_r_is_identity());
    }

    #[test]
    fn reconstruction_is_banded() {
        // J=5, p=11: diagonal (9..5)/9, superdiagonal (1..4)/9
        let sys = eigen_basis(5);
        let m = sys.reconstruct(11);
        for (i, row) in m.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let expect = if i == j {
                    rat(11 - i as i64 - 2, 9)
                } else if j == i + 1 {
                    rat(i as i64 + 1, 9)
                } else {
                    BigRational::zero()
                };
                assert_eq!(*cell, expect, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn empty_range_telescopes_to_identity() {
        // k=0: all a_j^k = 1 and the alternating Pascal sum returns w0[0]
        let w0 = vec![rat(2, 3), rat(4, 3), rat(1, 7)];
        let products = vec![BigRational::one(); 3];
        let got = closed_form_w1(&w0, &products).unwrap();
        assert_eq!(got, rat(2, 3));
    }

    #[test]
    fn single_step_matches_matrix_row() {
        // g=6 from G(5#): w0 = (2/3, 4/3), one step to p=7:
        // row 1 of M(7) gives w1 + w2/5 = 2/3 + 4/15 = 14/15
        let w0 = vec![rat(2, 3), rat(4, 3)];
        let products = eigenvalue_products(5, 7, 2);
        assert_eq!(products[0], BigRational::one());
        assert_eq!(products[1], rat(4, 5));
        let got = closed_form_w1(&w0, &products).unwrap();
        assert_eq!(got, rat(14, 15));
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let w0 = vec![rat(1, 1)];
        let products = vec![BigRational::one(); 2];
        assert!(closed_form_w1(&w0, &products).is_err());
    }

    #[test]
    fn poly_identity_at_lambda_one() {
        // full-degree evaluation at lambda=1 recovers w0[0] exactly
        let w0 = vec![rat(2, 3), rat(4, 3), rat(5, 7), rat(1, 9)];
        let model = poly_model(6, 5, &w0, 3).unwrap();
        assert_eq!(model.eval_exact(&BigRational::one()), rat(2, 3));
    }

    #[test]
    fn poly_at_zero_is_asymptotic_sum() {
        let w0 = vec![rat(2, 3), rat(4, 3)];
        let model = poly_model(6, 5, &w0, 1).unwrap();
        assert_eq!(*model.asymptotic(), rat(2, 1));
        assert_eq!(model.eval(0.0), 2.0);
    }

    #[test]
    fn degree_too_large() {
        let w0 = vec![rat(1, 1); 3];
        assert!(poly_model(2, 5, &w0, 3).is_err());
    }

    #[test]
    fn big_rational_to_f64() {
        assert_eq!(rational_to_f64(&rat(3, 4)), 0.75);
        let huge = BigRational::new(BigInt::from(10).pow(40u32), BigInt::from(2));
        let f = rational_to_f64(&huge);
        assert!((f - 5e39).abs() / 5e39 < 1e-12);
    }
}
