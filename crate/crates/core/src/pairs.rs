//! Empirical last-digit pair counts over consecutive primes, the observation
//! the population model is compared against.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::primes::{first_n_primes_with_ceiling, DEFAULT_PRIME_COUNT_CEILING};
use crate::residue::{class_ratios, digit_pair_classes, ClassAggregate};

/// Counts of ordered last-digit pairs (a, b) over consecutive primes
/// p_k = a, p_{k+1} = b (mod base), both digits units of the base. Pairs in
/// which either prime divides the base have no unit digit and land in
/// `skipped`, keeping the grand total auditable: sum + skipped = N - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCensus {
    pub base: u64,
    pub prime_count: u64,
    pub counts: BTreeMap<(u64, u64), u64>,
    pub skipped: u64,
}

pub fn pair_census(n: u64, base: u64) -> Result<PairCensus> {
    pair_census_skipping(n, base, 0)
}

/// Tally pairs (p_k, p_{k+1}) for skip < k < n. A nonzero skip drops the
/// leading primes from the tally, which is how the published base-10 table
/// counts: its grand total is exactly 10^8 because it starts at the pair
/// (11, 13), past the single-digit primes.
pub fn pair_census_skipping(n: u64, base: u64, skip: u64) -> Result<PairCensus> {
    pair_census_with_ceiling(n, base, skip, DEFAULT_PRIME_COUNT_CEILING)
}

pub fn pair_census_with_ceiling(n: u64, base: u64, skip: u64, ceiling: u64) -> Result<PairCensus> {
    if base < 3 {
        return Err(Error::BaseTooSmall(base));
    }
    let mut unit = vec![false; base as usize];
    for r in 1..base {
        unit[r as usize] = gcd(r, base) == 1;
    }
    let mut counts: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut skipped = 0u64;
    let mut prev: Option<u64> = None;
    for (k, p) in first_n_primes_with_ceiling(n, ceiling)?.enumerate() {
        let b = p % base;
        if k as u64 >= skip {
            if let Some(a) = prev {
                if unit[a as usize] && unit[b as usize] {
                    *counts.entry((a, b)).or_insert(0) += 1;
                } else {
                    skipped += 1;
                }
            }
            prev = Some(b);
        }
    }
    Ok(PairCensus {
        base,
        prime_count: n,
        counts,
        skipped,
    })
}

impl PairCensus {
    pub fn count(&self, a: u64, b: u64) -> u64 {
        self.counts.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn total_unit_pairs(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Pair counts grouped by the class h = (b - a) mod base.
    pub fn class_sums(&self) -> BTreeMap<u64, u64> {
        let mut sums = BTreeMap::new();
        for (&(a, b), &c) in &self.counts {
            let h = (b + self.base - a) % self.base;
            *sums.entry(h).or_insert(0) += c;
        }
        sums
    }

    /// CSV rendering: `a,b,count` rows ascending, then a `#skipped=` footer.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,count\n");
        for (&(a, b), &c) in &self.counts {
            let _ = writeln!(s, "{a},{b},{c}");
        }
        let _ = writeln!(s, "#skipped={}", self.skipped);
        s
    }

    pub fn parse_csv(text: &str) -> Result<PairCensus> {
        let mut counts = BTreeMap::new();
        let mut skipped = 0u64;
        let mut max_digit = 0u64;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line == "a,b,count" {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#skipped=") {
                skipped = rest
                    .parse()
                    .map_err(|_| Error::CensusFormat(format!("bad footer `{line}`")))?;
                continue;
            }
            let mut f = line.split(',');
            let a: u64 = field(&mut f, line)?;
            let b: u64 = field(&mut f, line)?;
            let c: u64 = field(&mut f, line)?;
            max_digit = max_digit.max(a).max(b);
            counts.insert((a, b), c);
        }
        let total: u64 = counts.values().sum();
        Ok(PairCensus {
            base: max_digit + 1, // informational only when parsed back
            prime_count: total + skipped + 1,
            counts,
            skipped,
        })
    }
}

fn field<T: std::str::FromStr>(f: &mut std::str::Split<'_, char>, line: &str) -> Result<T> {
    f.next()
        .ok_or_else(|| Error::CensusFormat(format!("short CSV line `{line}`")))?
        .parse()
        .map_err(|_| Error::CensusFormat(format!("bad CSV field in `{line}`")))
}

/// Observed W_h: class sums of the pair census normalized by the class of
/// the gap 2.
pub fn observed_class_ratios(census: &PairCensus) -> Result<ClassAggregate> {
    let scheme = digit_pair_classes(census.base)?;
    let sums = census.class_sums();
    // feed class sums through the shared ratio machinery keyed by a
    // representative gap of each class
    let mut values: BTreeMap<u64, f64> = BTreeMap::new();
    for (&h, &c) in &sums {
        let g = representative_gap(&scheme, h);
        values.insert(g, c as f64);
    }
    class_ratios(&values, census.base)
}

fn representative_gap(scheme: &crate::residue::ResidueScheme, h: u64) -> u64 {
    scheme
        .class_gaps(h)
        .ok()
        .and_then(|mut it| it.next())
        .unwrap_or(h)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
