//! Residue classes of gaps for a base B: a pair (a, b) of last digits of
//! consecutive primes pins the gap between them to h = (b - a) mod B, so the
//! asymptotic share of each class follows from the per-gap ratios
//! w_g(infinity) = prod_{q > 2, q | g} (q-1)/(q-2).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eigen::rational_to_f64;
use crate::error::{Error, Result};

/// Asymptotic ratio of the gap g to the gap 2: the product of (q-1)/(q-2)
/// over the distinct odd prime divisors of g. Powers of 2 give 1.
pub fn w_infinity(g: u64) -> Result<BigRational> {
    if g == 0 || g % 2 != 0 {
        return Err(Error::InvalidGap(g));
    }
    let mut m = g;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut acc = BigRational::one();
    let mut q = 3u64;
    while q * q <= m {
        if m % q == 0 {
            acc *= BigRational::new(BigInt::from(q - 1), BigInt::from(q - 2));
            while m % q == 0 {
                m /= q;
            }
        }
        q += 2;
    }
    if m > 1 {
        acc *= BigRational::new(BigInt::from(m - 1), BigInt::from(m - 2));
    }
    Ok(acc)
}

/// Unit digit pairs of a base, grouped by the class h = (b - a) mod B.
#[derive(Debug, Clone)]
pub struct ResidueScheme {
    pub base: u64,
    /// residues coprime to the base, ascending
    pub digits: Vec<u64>,
    /// class -> ordered pairs (a, b), ascending a then b
    pub classes: BTreeMap<u64, Vec<(u64, u64)>>,
}

pub fn digit_pair_classes(base: u64) -> Result<ResidueScheme> {
    if base < 3 {
        return Err(Error::BaseTooSmall(base));
    }
    let digits: Vec<u64> = (1..base).filter(|&r| gcd(r, base) == 1).collect();
    let mut classes: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for &a in &digits {
        for &b in &digits {
            let h = (b + base - a) % base;
            classes.entry(h).or_default().push((a, b));
        }
    }
    Ok(ResidueScheme {
        base,
        digits,
        classes,
    })
}

impl ResidueScheme {
    /// The class an even gap falls in, if it is a gap class of this base.
    pub fn class_of_gap(&self, g: u64) -> Option<u64> {
        let h = g % self.base;
        self.classes.contains_key(&h).then_some(h)
    }

    /// The class holding the gap 2, used for normalization throughout.
    pub fn normalizing_class(&self) -> u64 {
        2 % self.base
    }

    /// Ascending gaps of a class: step B for even bases, 2B for odd bases
    /// (only every other residue hit is even). Class 0 starts at g = B or 2B.
    pub fn class_gaps(&self, h: u64) -> Result<impl Iterator<Item = u64>> {
        if !self.classes.contains_key(&h) || (self.base % 2 == 0 && h % 2 != 0) {
            return Err(Error::NotAGapClass { base: self.base, h });
        }
        let step = if self.base % 2 == 0 {
            self.base
        } else {
            2 * self.base
        };
        let first = if h == 0 {
            step
        } else if h % 2 == 0 {
            h
        } else {
            h + self.base
        };
        Ok((0u64..).map(move |k| first + k * step))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Mean of w_infinity over the first n gaps of a class, exact.
pub fn class_mean_asymptotic(base: u64, h: u64, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::NotAGapClass { base, h });
    }
    let scheme = digit_pair_classes(base)?;
    let mut acc = BigRational::zero();
    for g in scheme.class_gaps(h)?.take(n as usize) {
        acc += w_infinity(g)?;
    }
    Ok(acc / BigRational::from(BigInt::from(n)))
}

/// Per-class totals of w_{g,1} over a sampled set of gaps, normalized by the
/// class holding the gap 2.
#[derive(Debug, Clone)]
pub struct ClassAggregate {
    pub base: u64,
    pub normalizing_class: u64,
    pub sums: BTreeMap<u64, f64>,
    pub ratios: BTreeMap<u64, f64>,
}

pub fn class_ratios(values: &BTreeMap<u64, f64>, base: u64) -> Result<ClassAggregate> {
    let scheme = digit_pair_classes(base)?;
    let mut sums: BTreeMap<u64, f64> = BTreeMap::new();
    for (&g, &w) in values {
        if g == 0 || g % 2 != 0 {
            return Err(Error::InvalidGap(g));
        }
        let h = scheme
            .class_of_gap(g)
            .ok_or(Error::NotAGapClass { base, h: g % base })?;
        *sums.entry(h).or_insert(0.0) += w;
    }
    let norm_class = scheme.normalizing_class();
    let norm = *sums.get(&norm_class).unwrap_or(&0.0);
    if norm <= 0.0 {
        return Err(Error::EmptyNormalizingClass {
            base,
            class: norm_class,
        });
    }
    let ratios = sums.iter().map(|(&h, &s)| (h, s / norm)).collect();
    Ok(ClassAggregate {
        base,
        normalizing_class: norm_class,
        sums,
        ratios,
    })
}

/// Exact-rational variant; sums are reduced before the final float rendering.
pub fn class_ratios_exact(
    values: &BTreeMap<u64, BigRational>,
    base: u64,
) -> Result<ClassAggregate> {
    let scheme = digit_pair_classes(base)?;
    let mut exact_sums: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (&g, w) in values {
        if g == 0 || g % 2 != 0 {
            return Err(Error::InvalidGap(g));
        }
        let h = scheme
            .class_of_gap(g)
            .ok_or(Error::NotAGapClass { base, h: g % base })?;
        *exact_sums.entry(h).or_insert_with(BigRational::zero) += w;
    }
    let norm_class = scheme.normalizing_class();
    let norm = exact_sums
        .get(&norm_class)
        .cloned()
        .unwrap_or_else(BigRational::zero);
    if norm <= BigRational::zero() {
        return Err(Error::EmptyNormalizingClass {
            base,
            class: norm_class,
        });
    }
    let ratios = exact_sums
        .iter()
        .map(|(&h, s)| (h, rational_to_f64(&(s / &norm))))
        .collect();
    let sums = exact_sums
        .iter()
        .map(|(&h, s)| (h, rational_to_f64(s)))
        .collect();
    Ok(ClassAggregate {
        base,
        normalizing_class: norm_class,
        sums,
        ratios,
    })
}

/// w_infinity for every even gap 2..=g_max, the usual sample for class
/// aggregates.
pub fn w_infinity_table(g_max: u64) -> Result<BTreeMap<u64, BigRational>> {
    (1..=g_max / 2)
        .map(|k| Ok((2 * k, w_infinity(2 * k)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn asymptotic_ratios() {
        assert_eq!(w_infinity(2).unwrap(), rat(1, 1));
        assert_eq!(w_infinity(8).unwrap(), rat(1, 1));
        assert_eq!(w_infinity(6).unwrap(), rat(2, 1));
        assert_eq!(w_infinity(30).unwrap(), rat(8, 3));
        assert_eq!(w_infinity(210).unwrap(), rat(48, 15));
        assert_eq!(w_infinity(66).unwrap(), rat(20, 9));
        assert!(w_infinity(7).is_err());
        assert!(w_infinity(0).is_err());
    }

    #[test]
    fn base_three_classes() {
        let s = digit_pair_classes(3).unwrap();
        assert_eq!(s.digits, vec![1, 2]);
        assert_eq!(s.classes[&2], vec![(2, 1)]);
        assert_eq!(s.classes[&1], vec![(1, 2)]);
        assert_eq!(s.classes[&0], vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn base_ten_classes() {
        let s = digit_pair_classes(10).unwrap();
        assert_eq!(s.digits, vec![1, 3, 7, 9]);
        assert_eq!(s.classes[&0], vec![(1, 1), (3, 3), (7, 7), (9, 9)]);
        assert_eq!(s.classes[&2].len(), 3);
        assert_eq!(s.classes[&4].len(), 3);
        assert_eq!(s.classes[&6].len(), 3);
        assert_eq!(s.classes[&8].len(), 3);
        assert!(s.classes[&2].contains(&(9, 1)));
    }

    #[test]
    fn base_thirty_diagonal_class() {
        let s = digit_pair_classes(30).unwrap();
        let h0 = &s.classes[&0];
        assert_eq!(h0.len(), 8);
        assert_eq!(
            h0.iter().map(|&(a, _)| a).collect::<Vec<_>>(),
            vec![1, 7, 11, 13, 17, 19, 23, 29]
        );
        assert!(h0.iter().all(|&(a, b)| a == b));
    }

    #[test]
    fn every_pair_in_exactly_one_class() {
        for base in [3u64, 8, 10, 30] {
            let s = digit_pair_classes(base).unwrap();
            let total: usize = s.classes.values().map(|v| v.len()).sum();
            assert_eq!(total, s.digits.len() * s.digits.len());
        }
    }

    #[test]
    fn class_gap_sequences() {
        let s10 = digit_pair_classes(10).unwrap();
        let g0: Vec<u64> = s10.class_gaps(0).unwrap().take(3).collect();
        assert_eq!(g0, vec![10, 20, 30]);
        let s3 = digit_pair_classes(3).unwrap();
        let g1: Vec<u64> = s3.class_gaps(1).unwrap().take(3).collect();
        assert_eq!(g1, vec![4, 10, 16]);
        let g2: Vec<u64> = s3.class_gaps(2).unwrap().take(3).collect();
        assert_eq!(g2, vec![2, 8, 14]);
        let g0: Vec<u64> = s3.class_gaps(0).unwrap().take(3).collect();
        assert_eq!(g0, vec![6, 12, 18]);
        assert!(s10.class_gaps(3).is_err());
    }

    #[test]
    fn class_means() {
        assert_eq!(class_mean_asymptotic(10, 0, 3).unwrap(), rat(16, 9));
        assert_eq!(class_mean_asymptotic(10, 6, 1).unwrap(), rat(2, 1));
        let mu4 = rational_to_f64(&class_mean_asymptotic(10, 4, 10).unwrap());
        assert!((mu4 - 1.382).abs() < 1e-3, "mu_4(94) = {mu4}");
    }

    #[test]
    fn uniform_values_give_size_ratios() {
        let values: BTreeMap<u64, f64> = (1..=21).map(|k| (2 * k, 1.0)).collect();
        let agg = class_ratios(&values, 10).unwrap();
        // 42 gaps fall 8-9 per class; with g_max=42 a multiple of... classes
        // 2..=0 hold {2..42 step 2} -> sizes h2:5, h4:5, h6:5, h8:4, h0:2+2
        // easier: every ratio is size_h / size_2
        let sizes: BTreeMap<u64, f64> = values.keys().fold(BTreeMap::new(), |mut m, &g| {
            *m.entry(g % 10).or_insert(0.0) += 1.0;
            m
        });
        for (h, r) in &agg.ratios {
            assert!((r - sizes[h] / sizes[&2]).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_normalizing_class_rejected() {
        let mut values = BTreeMap::new();
        values.insert(10u64, 1.0);
        assert!(matches!(
            class_ratios(&values, 10),
            Err(Error::EmptyNormalizingClass { .. })
        ));
    }

    #[test]
    fn doubled_base_translates() {
        // for odd B the class structure maps one-to-one onto base 2B
        let vals = w_infinity_table(420).unwrap();
        for (b, b2) in [(3u64, 6u64), (5, 10)] {
            let a = class_ratios_exact(&vals, b).unwrap();
            let a2 = class_ratios_exact(&vals, b2).unwrap();
            for (&h, &r) in &a.ratios {
                let h2 = if h % 2 == 0 { h } else { h + b };
                let r2 = a2.ratios[&h2];
                assert!((r - r2).abs() < 1e-12, "B={b} h={h}: {r} vs {r2}");
            }
        }
    }

    proptest! {
        // multiplicative over the odd part, blind to powers of two
        #[test]
        fn powers_of_two_invisible(m in 1u64..2000, a in 1u32..6) {
            let odd = 2 * m - 1;
            let g1 = 2 * odd;
            let g2 = 2u64.pow(a) * odd;
            prop_assert_eq!(w_infinity(g1).unwrap(), w_infinity(g2).unwrap());
        }
    }
}
