//! Stage-to-stage propagation of driving-term populations.
//!
//! One sieve stage maps raw counts by the banded recurrence
//! n_{g,j}(p#) = (p-j-1) n_{g,j} + j n_{g,j+1}, i.e. the integer form of the
//! transfer matrix with diagonal a_j(p) = (p-j-1)/(p-2) and superdiagonal
//! b_j(p) = j/(p-2). Exact mode carries arbitrary-precision integers;
//! normalized mode divides by the twin count each step and carries f64.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::census::Census;
use crate::eigen::rational_to_f64;
use crate::error::{Error, Result};
use crate::primes::{is_prime, next_prime_after, primes_in};

/// Default cap on exact propagation steps; counts reach thousands of digits
/// well before this bites.
pub const DEFAULT_EXACT_STEP_LIMIT: usize = 5_000;

/// Raw driving-term counts for one gap at one stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationVector {
    pub gap: u64,
    pub stage_prime: u64,
    pub entries: Vec<BigUint>,
}

/// Counts normalized by the stage's twin count, w_{g,j} = n_{g,j}/n_{2,1},
/// as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioVector {
    pub gap: u64,
    pub stage_prime: u64,
    pub entries: Vec<BigRational>,
}

impl Census {
    pub fn population_vector(&self, gap: u64) -> Option<PopulationVector> {
        self.row(gap).map(|row| PopulationVector {
            gap,
            stage_prime: self.stage_prime,
            entries: row.to_vec(),
        })
    }

    pub fn ratio_vector(&self, gap: u64) -> Option<RatioVector> {
        let twin = self.twin_count();
        if twin.is_zero() {
            return None;
        }
        let den = num_bigint::BigInt::from(twin);
        self.row(gap).map(|row| RatioVector {
            gap,
            stage_prime: self.stage_prime,
            entries: row
                .iter()
                .map(|n| BigRational::new(num_bigint::BigInt::from(n.clone()), den.clone()))
                .collect(),
        })
    }
}

/// The banded system matrix at one prime, exposed in both integer and
/// rational form.
#[derive(Debug, Clone, Copy)]
pub struct TransferMatrix {
    pub p: u64,
    pub dim: usize,
}

impl TransferMatrix {
    pub fn new(p: u64, dim: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(TransferMatrix { p, dim })
    }

    /// Diagonal a_j(p) = (p-j-1)/(p-2), 1-based j.
    pub fn diagonal(&self, j: usize) -> BigRational {
        BigRational::new(
            (self.p as i64 - j as i64 - 1).into(),
            (self.p as i64 - 2).into(),
        )
    }

    /// Superdiagonal b_j(p) = j/(p-2), 1-based j.
    pub fn superdiagonal(&self, j: usize) -> BigRational {
        BigRational::new((j as i64).into(), (self.p as i64 - 2).into())
    }

    /// Integer form: (p-2) times the rational matrix.
    pub fn integer_entry(&self, i: usize, j: usize) -> i64 {
        if j == i {
            self.p as i64 - i as i64 - 1
        } else if j == i + 1 {
            i as i64
        } else {
            0
        }
    }

    pub fn rational(&self) -> Vec<Vec<BigRational>> {
        (1..=self.dim)
            .map(|i| {
                (1..=self.dim)
                    .map(|j| {
                        if j == i {
                            self.diagonal(i)
                        } else if j == i + 1 {
                            self.superdiagonal(i)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// One exact stage step for a single gap. The sieve recurrence only holds
/// stage by stage, so the next prime is enforced.
pub fn transfer_step(pop: &PopulationVector, p_next: u64) -> Result<PopulationVector> {
    if !is_prime(p_next) {
        return Err(Error::NotPrime(p_next));
    }
    let expected = next_prime_after(pop.stage_prime);
    if p_next != expected {
        return Err(Error::NotNextPrime {
            after: pop.stage_prime,
            expected,
            got: p_next,
        });
    }
    let entries = step_row(&pop.entries, p_next, pop.gap)?;
    Ok(PopulationVector {
        gap: pop.gap,
        stage_prime: p_next,
        entries,
    })
}

fn step_row(entries: &[BigUint], p: u64, gap: u64) -> Result<Vec<BigUint>> {
    let j_len = trimmed_len(entries);
    if j_len as u64 + 1 > p {
        return Err(Error::RowUnderflow {
            p,
            gap,
            row: j_len,
        });
    }
    let mut out = Vec::with_capacity(j_len);
    for j in 1..=j_len {
        let mut v = &entries[j - 1] * (p - j as u64 - 1);
        if j < j_len {
            v += &entries[j] * (j as u64);
        }
        out.push(v);
    }
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    Ok(out)
}

fn trimmed_len(entries: &[BigUint]) -> usize {
    let mut n = entries.len();
    while n > 0 && entries[n - 1].is_zero() {
        n -= 1;
    }
    n
}

/// Exact propagation of a whole census through every prime in
/// (census.stage_prime, p_target].
pub fn propagate_exact(census: &Census, p_target: u64, step_limit: usize) -> Result<Census> {
    if !is_prime(p_target) {
        return Err(Error::NotPrime(p_target));
    }
    let steps: Vec<u64> = primes_in(census.stage_prime, p_target).collect();
    if steps.len() > step_limit {
        return Err(Error::StepLimit {
            steps: steps.len(),
            limit: step_limit,
        });
    }
    let mut rows: BTreeMap<u64, Vec<BigUint>> = census
        .gaps()
        .map(|g| (g, census.row(g).unwrap().to_vec()))
        .collect();
    for &p in &steps {
        for (&g, row) in rows.iter_mut() {
            *row = step_row(row, p, g)?;
        }
    }
    Ok(Census::from_counts(
        p_target,
        census.g_max,
        census.j_max,
        census.truncated,
        rows,
    ))
}

/// Ratios w_{g,j} carried as floats, renormalized by the twin count at every
/// stage so magnitudes stay near 1.
#[derive(Debug, Clone)]
pub struct NormalizedCensus {
    pub stage_prime: u64,
    pub g_max: u64,
    pub j_max: usize,
    pub values: BTreeMap<u64, Vec<f64>>,
}

impl NormalizedCensus {
    pub fn from_census(census: &Census) -> Result<NormalizedCensus> {
        Self::from_census_capped(census, None)
    }

    /// Like `from_census` but rows are capped at `j_cap` entries, with the
    /// dropped tail mass folded into the last kept entry. Rows longer than
    /// p_next - 2 cannot pass through the banded recurrence at all, so a cap
    /// of next_prime(stage) - 2 admits every gap. Folding keeps the
    /// conserved per-gap total (and with it the asymptotic ratio) intact;
    /// the folded mass arrives as gaps slightly earlier than the true long
    /// runs would deliver it, which only matters for gaps already outside
    /// the recurrence's exactness domain.
    pub fn from_census_capped(census: &Census, j_cap: Option<usize>) -> Result<NormalizedCensus> {
        let twin = census.twin_count();
        if twin.is_zero() {
            return Err(Error::EmptyNormalizingClass { base: 0, class: 2 });
        }
        let mut values: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
        for g in census.gaps() {
            let rv = census.ratio_vector(g).expect("gap key exists");
            let mut row: Vec<f64> = rv.entries.iter().map(rational_to_f64).collect();
            if let Some(cap) = j_cap {
                let cap = cap.max(1);
                if row.len() > cap {
                    let tail: f64 = row[cap..].iter().sum();
                    row.truncate(cap);
                    row[cap - 1] += tail;
                }
            }
            values.insert(g, row);
        }
        Ok(NormalizedCensus {
            stage_prime: census.stage_prime,
            g_max: census.g_max,
            j_max: census.j_max,
            values,
        })
    }

    /// The largest row length the recurrence admits from this stage onward.
    pub fn admissible_cap(stage_prime: u64) -> usize {
        (next_prime_after(stage_prime) - 2) as usize
    }

    fn step(&mut self, p: u64) -> Result<()> {
        for (&g, row) in self.values.iter_mut() {
            let j_len = row.len();
            if j_len as u64 + 1 > p {
                return Err(Error::RowUnderflow { p, gap: g, row: j_len });
            }
            let den = (p - 2) as f64;
            // entry j reads only the not-yet-updated entry j+1, so the
            // update can run forward in place
            for j in 1..=j_len {
                let fed = if j < j_len { row[j] } else { 0.0 };
                row[j - 1] = ((p - j as u64 - 1) as f64 * row[j - 1] + j as f64 * fed) / den;
            }
        }
        Ok(())
    }

    /// Single stage step, exposed for scan-style consumers.
    pub fn step_public(&mut self, p: u64) -> Result<()> {
        self.step(p)?;
        self.stage_prime = p;
        Ok(())
    }

    /// w_{g,1} at the current stage.
    pub fn first_ratio(&self, g: u64) -> f64 {
        self.values.get(&g).and_then(|r| r.first()).copied().unwrap_or(0.0)
    }
}

/// Normalized propagation to p_target.
pub fn propagate_normalized(census: &Census, p_target: u64) -> Result<NormalizedCensus> {
    propagate_normalized_capped(census, p_target, None)
}

pub fn propagate_normalized_capped(
    census: &Census,
    p_target: u64,
    j_cap: Option<usize>,
) -> Result<NormalizedCensus> {
    if !is_prime(p_target) {
        return Err(Error::NotPrime(p_target));
    }
    let mut state = NormalizedCensus::from_census_capped(census, j_cap)?;
    for p in primes_in(census.stage_prime, p_target) {
        state.step(p)?;
        state.stage_prime = p;
    }
    Ok(state)
}

/// First prime stage at which w_{gap,1} exceeds w_{reference,1}, scanning
/// normalized propagation up to p_limit. Returns None if no crossover occurs
/// in range.
pub fn find_population_crossover(
    census: &Census,
    gap: u64,
    reference: u64,
    p_limit: u64,
) -> Result<Option<u64>> {
    let mut state = NormalizedCensus::from_census(census)?;
    state
        .values
        .retain(|&g, _| g == gap || g == reference);
    if state.values.len() != 2 {
        return Err(Error::CensusMismatch(format!(
            "census lacks gap {gap} or reference {reference}"
        )));
    }
    if state.first_ratio(gap) > state.first_ratio(reference) {
        return Ok(Some(state.stage_prime));
    }
    for p in primes_in(census.stage_prime, p_limit) {
        state.step(p)?;
        state.stage_prime = p;
        if state.first_ratio(gap) > state.first_ratio(reference) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
