//! The cycle of gaps G(p#): differences between consecutive units of Z mod p#.
//!
//! Two independent constructors are provided. The scalable one sieves
//! [1, p#+1] for residues coprime to p# and streams the differences in
//! segments. The recursive one concatenates p copies of the previous cycle
//! and fuses the gaps adjacent to each eliminated candidate; it is kept
//! materialized and capped at small stages, serving as a cross-check oracle
//! for the sieve construction.

use crate::error::{Error, Result};
use crate::primes::{is_prime, next_prime_after, phi_primorial, primes_up_to, primorial};

/// Largest stage prime the streaming enumerator accepts by default.
pub const ENUMERATION_CEILING: u64 = 29;

/// Largest stage prime for which full cycles may be held in memory.
pub const MATERIALIZE_CEILING: u64 = 19;

/// Default candidates per sieve segment.
pub const DEFAULT_SEGMENT_CANDIDATES: usize = 1 << 24;

/// A fully materialized cycle of gaps at one sieve stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCycle {
    stage_prime: u64,
    gaps: Vec<u64>,
}

impl GapCycle {
    pub fn new(stage_prime: u64, gaps: Vec<u64>) -> Self {
        GapCycle { stage_prime, gaps }
    }

    pub fn stage_prime(&self) -> u64 {
        self.stage_prime
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.gaps.iter().sum()
    }

    /// The units of Z mod p# in [1, p#), recovered from the gaps.
    pub fn generators(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.gaps.len());
        let mut c = 1u64;
        out.push(c);
        for &g in &self.gaps[..self.gaps.len() - 1] {
            c += g;
            out.push(c);
        }
        out
    }
}

/// Streaming enumeration of G(p#) by sieving coprimality to p# directly.
pub struct GapStream {
    stage_prime: u64,
    primorial: u64,
    basis: Vec<u64>, // odd primes <= p
    segment_candidates: usize,
    low: u64,       // next odd value to sieve
    prev: u64,      // previous surviving candidate
    buf: Vec<u64>,  // gaps ready to yield
    idx: usize,
    done: bool,
}

impl GapStream {
    pub fn stage_prime(&self) -> u64 {
        self.stage_prime
    }

    /// phi(p#), the number of gaps this stream will yield.
    pub fn expected_len(&self) -> u64 {
        phi_primorial(self.stage_prime).expect("stage prime validated at construction")
    }

    fn refill(&mut self) {
        let lo = self.low;
        let end = self.primorial + 2; // sieve odds in [lo, end)
        if lo >= end {
            self.done = true;
            return;
        }
        // lo is always odd; count the odds in [lo, end)
        let span = ((end - lo).div_ceil(2)).min(self.segment_candidates as u64) as usize;
        let hi = lo + 2 * span as u64;
        let mut composite = vec![0u64; span.div_ceil(64)];
        for &q in &self.basis {
            // every odd multiple of q is eliminated, q itself included
            let mut m = lo.div_ceil(q) * q;
            if m % 2 == 0 {
                m += q;
            }
            if m < q {
                m = q;
            }
            while m < hi {
                let idx = ((m - lo) / 2) as usize;
                composite[idx / 64] |= 1 << (idx % 64);
                m += 2 * q;
            }
        }
        self.buf.clear();
        for w in 0..composite.len() {
            let mut free = !composite[w];
            if w == composite.len() - 1 {
                let used = span - w * 64;
                if used < 64 {
                    free &= (1u64 << used) - 1;
                }
            }
            while free != 0 {
                let b = free.trailing_zeros() as u64;
                let candidate = lo + 2 * (w as u64 * 64 + b);
                free &= free - 1;
                if candidate == 1 {
                    continue; // cycle starts at 1; no gap yet
                }
                self.buf.push(candidate - self.prev);
                self.prev = candidate;
            }
        }
        self.low = hi;
        self.idx = 0;
    }
}

impl Iterator for GapStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.idx >= self.buf.len() {
            if self.done {
                return None;
            }
            self.refill();
        }
        let g = self.buf[self.idx];
        self.idx += 1;
        Some(g)
    }
}

/// Stream the gaps of G(p#) in order, starting from candidate 1 and closing
/// cyclically with the gap to p#+1.
pub fn enumerate_gap_cycle(p: u64, segment_candidates: usize) -> Result<GapStream> {
    enumerate_with_ceiling(p, segment_candidates, ENUMERATION_CEILING)
}

pub fn enumerate_with_ceiling(
    p: u64,
    segment_candidates: usize,
    ceiling: u64,
) -> Result<GapStream> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 || p > ceiling {
        let detail = if p < 3 {
            "the cycle of gaps is defined here for p >= 3".to_string()
        } else {
            // one bit per odd number across the whole primorial span
            let next = primorial_f64(p);
            format!(
                "G({p}#) spans ~{next:.2e} candidates (~{:.1} GiB of sieve bits in one pass); \
                 raise the ceiling explicitly if that cost is intended",
                next / 2.0 / 8.0 / 1024.0 / 1024.0 / 1024.0
            )
        };
        return Err(Error::Capacity {
            what: "gap-cycle stage",
            value: p,
            ceiling,
            detail,
        });
    }
    let primorial = primorial(p)?;
    Ok(GapStream {
        stage_prime: p,
        primorial,
        basis: primes_up_to(p).into_iter().filter(|&q| q > 2).collect(),
        segment_candidates: segment_candidates.max(1 << 10),
        low: 1,
        prev: 1,
        buf: Vec::new(),
        idx: 0,
        done: false,
    })
}

fn primorial_f64(p: u64) -> f64 {
    primes_up_to(p).iter().map(|&q| q as f64).product()
}

/// Materialize G(p#) via the sieve constructor. Capped so that full cycles
/// never get stored for stages past 19#.
pub fn materialize_cycle(p: u64) -> Result<GapCycle> {
    if is_prime(p) && p > MATERIALIZE_CEILING {
        return Err(Error::Capacity {
            what: "materialized cycle stage",
            value: p,
            ceiling: MATERIALIZE_CEILING,
            detail: format!(
                "G({p}#) has {} gaps; stream it instead of materializing",
                phi_primorial(p)?
            ),
        });
    }
    let stream = enumerate_gap_cycle(p, DEFAULT_SEGMENT_CANDIDATES)?;
    let stage = stream.stage_prime();
    let gaps: Vec<u64> = stream.collect();
    Ok(GapCycle::new(stage, gaps))
}

/// Recursive construction: concatenate p_next copies of the previous cycle
/// and fuse the two gaps adjacent to each eliminated candidate p_next * c,
/// where c runs over the generators of the previous stage.
pub fn fuse_cycle(prev: &GapCycle, p_next: u64) -> Result<GapCycle> {
    if !is_prime(p_next) {
        return Err(Error::NotPrime(p_next));
    }
    let expected = next_prime_after(prev.stage_prime());
    if p_next != expected {
        return Err(Error::NotNextPrime {
            after: prev.stage_prime(),
            expected,
            got: p_next,
        });
    }
    if p_next > MATERIALIZE_CEILING {
        return Err(Error::Capacity {
            what: "fusion stage",
            value: p_next,
            ceiling: MATERIALIZE_CEILING,
            detail: format!(
                "fusing to G({p_next}#) would materialize {} gaps",
                phi_primorial(p_next)?
            ),
        });
    }
    let out_len = (p_next as usize - 1) * prev.len();
    let mut out = Vec::with_capacity(out_len);
    let generators = prev.generators();
    let mut removals = generators.iter().map(|&c| c * p_next).peekable();
    let mut value = 1u64;
    let mut acc = 0u64;
    for _ in 0..p_next {
        for &g in prev.gaps() {
            value += g;
            acc += g;
            if removals.peek() == Some(&value) {
                removals.next(); // candidate eliminated; gaps fuse
            } else {
                out.push(acc);
                acc = 0;
            }
        }
    }
    debug_assert_eq!(out.len(), out_len);
    debug_assert_eq!(value, primorial(p_next)? + 1);
    Ok(GapCycle::new(p_next, out))
}
