//! Prime enumeration: small utilities plus a bit-packed segmented sieve that
//! streams primes in order with memory bounded by the segment size.

use crate::error::{Error, Result};

/// Default number of sieve bits per segment (odd numbers per segment).
pub const DEFAULT_SEGMENT_BITS: usize = 1 << 22;

/// Default ceiling on `first_n_primes`.
pub const DEFAULT_PRIME_COUNT_CEILING: u64 = 200_000_000;

/// Deterministic Miller-Rabin for u64 (base set valid for all 64-bit inputs).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn next_prime_after(n: u64) -> u64 {
    let mut c = n + 1;
    if c <= 2 {
        return 2;
    }
    if c % 2 == 0 {
        c += 1;
    }
    while !is_prime(c) {
        c += 2;
    }
    c
}

/// All primes up to `limit` inclusive, by a plain odd-only sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut primes = vec![2u64];
    if limit < 3 {
        return primes;
    }
    // bit i represents 2i + 3
    let n_bits = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![0u64; n_bits.div_ceil(64)];
    let mut i = 0usize;
    while {
        let p = 2 * i as u64 + 3;
        p * p <= limit
    } {
        if composite[i / 64] & (1 << (i % 64)) == 0 {
            let p = 2 * i as u64 + 3;
            let mut m = p * p;
            while m <= limit {
                let idx = ((m - 3) / 2) as usize;
                composite[idx / 64] |= 1 << (idx % 64);
                m += 2 * p;
            }
        }
        i += 1;
    }
    for idx in 0..n_bits {
        if composite[idx / 64] & (1 << (idx % 64)) == 0 {
            primes.push(2 * idx as u64 + 3);
        }
    }
    primes
}

/// Primes from 2 through p inclusive; p itself must be prime.
pub fn primes_through(p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(primes_up_to(p))
}

/// p# = product of primes through p. Overflows u64 past 47#.
pub fn primorial(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut acc: u64 = 1;
    for q in primes_up_to(p) {
        acc = acc.checked_mul(q).ok_or(Error::Capacity {
            what: "primorial",
            value: p,
            ceiling: 47,
            detail: format!("{p}# does not fit in 64 bits"),
        })?;
    }
    Ok(acc)
}

/// phi(p#) = product of (q - 1) over primes q <= p.
pub fn phi_primorial(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut acc: u64 = 1;
    for q in primes_up_to(p) {
        acc = acc.checked_mul(q - 1).ok_or(Error::Capacity {
            what: "phi(primorial)",
            value: p,
            ceiling: 53,
            detail: format!("phi({p}#) does not fit in 64 bits"),
        })?;
    }
    Ok(acc)
}

/// Unbounded stream of primes 2, 3, 5, ... backed by a segmented sieve.
/// Basis primes are extended lazily; memory stays at one segment bitset.
pub struct PrimeStream {
    segment_bits: usize,
    /// start of the next segment (odd)
    low: u64,
    basis: Vec<u64>,
    basis_limit: u64,
    buf: Vec<u64>,
    idx: usize,
    emitted_two: bool,
}

impl PrimeStream {
    pub fn new() -> Self {
        Self::with_segment_bits(DEFAULT_SEGMENT_BITS)
    }

    pub fn with_segment_bits(segment_bits: usize) -> Self {
        PrimeStream {
            segment_bits: segment_bits.max(64),
            low: 3,
            basis: Vec::new(),
            basis_limit: 1,
            buf: Vec::new(),
            idx: 0,
            emitted_two: false,
        }
    }

    fn refill(&mut self) {
        let lo = self.low;
        let hi = lo + 2 * self.segment_bits as u64; // exclusive, odd span
        if self.basis_limit * self.basis_limit < hi {
            let need = (hi as f64).sqrt() as u64 + 2;
            self.basis = primes_up_to(need)
                .into_iter()
                .filter(|&p| p > 2)
                .collect();
            self.basis_limit = need;
        }
        let n_bits = self.segment_bits;
        let mut composite = vec![0u64; n_bits.div_ceil(64)];
        for &p in &self.basis {
            if p * p >= hi {
                break;
            }
            let mut m = p * p;
            if m < lo {
                m = lo.div_ceil(p) * p;
                if m % 2 == 0 {
                    m += p;
                }
            }
            while m < hi {
                let idx = ((m - lo) / 2) as usize;
                composite[idx / 64] |= 1 << (idx % 64);
                m += 2 * p;
            }
        }
        self.buf.clear();
        for w in 0..composite.len() {
            let mut free = !composite[w];
            if w == composite.len() - 1 {
                let used = n_bits - w * 64;
                if used < 64 {
                    free &= (1u64 << used) - 1;
                }
            }
            while free != 0 {
                let b = free.trailing_zeros() as u64;
                self.buf.push(lo + 2 * (w as u64 * 64 + b));
                free &= free - 1;
            }
        }
        self.low = hi;
        self.idx = 0;
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            return Some(2);
        }
        while self.idx >= self.buf.len() {
            self.refill();
        }
        let p = self.buf[self.idx];
        self.idx += 1;
        Some(p)
    }
}

/// The first `n` primes in order. Memory is bounded by the segment size.
pub fn first_n_primes(n: u64) -> Result<impl Iterator<Item = u64>> {
    first_n_primes_with_ceiling(n, DEFAULT_PRIME_COUNT_CEILING)
}

pub fn first_n_primes_with_ceiling(n: u64, ceiling: u64) -> Result<impl Iterator<Item = u64>> {
    if n > ceiling {
        return Err(Error::Capacity {
            what: "prime count",
            value: n,
            ceiling,
            detail: format!(
                "enumerating {n} primes needs a sieve past ~{:.1e}; raise the ceiling explicitly if intended",
                n as f64 * ((n as f64).ln() + (n as f64).ln().ln().max(0.0))
            ),
        });
    }
    Ok(PrimeStream::new().take(n as usize))
}

/// Primes in the half-open interval (lo, hi].
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    PrimeStream::new()
        .skip_while(move |&p| p <= lo)
        .take_while(move |&p| p <= hi)
}
