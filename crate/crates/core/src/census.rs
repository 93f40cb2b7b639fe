//! Exact censuses of gaps and driving terms: n_{g,j}(p#) counts the cyclic
//! positions at which j consecutive gaps of G(p#) sum to exactly g.
//!
//! Counting streams through the gap sequence with a carry buffer so windowed
//! sums cross segment boundaries, and the saved head of the cycle closes runs
//! across the wrap point. Every position of the cycle starts exactly one
//! window.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cycle::{GapCycle, GapStream};
use crate::error::{Error, Result};

/// Default cap on tracked driving-term lengths.
pub const DEFAULT_J_MAX: usize = 128;

/// Exact driving-term counts at one sieve stage. Entries absent from the map
/// are zero; each row is trimmed of trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub stage_prime: u64,
    pub g_max: u64,
    pub j_max: usize,
    pub truncated: bool,
    counts: BTreeMap<u64, Vec<BigUint>>,
}

impl Census {
    pub fn from_counts(
        stage_prime: u64,
        g_max: u64,
        j_max: usize,
        truncated: bool,
        counts: BTreeMap<u64, Vec<BigUint>>,
    ) -> Self {
        let mut counts = counts;
        counts.retain(|_, row| {
            while row.last().map(|c| c.is_zero()).unwrap_or(false) {
                row.pop();
            }
            !row.is_empty()
        });
        Census {
            stage_prime,
            g_max,
            j_max,
            truncated,
            counts,
        }
    }

    /// n_{g,j}; zero when untracked.
    pub fn count(&self, g: u64, j: usize) -> BigUint {
        self.counts
            .get(&g)
            .and_then(|row| row.get(j - 1))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// The row (n_{g,1}, n_{g,2}, ...) with trailing zeros trimmed.
    pub fn row(&self, g: u64) -> Option<&[BigUint]> {
        self.counts.get(&g).map(|v| v.as_slice())
    }

    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    /// Sum over j of n_{g,j}.
    pub fn gap_total(&self, g: u64) -> BigUint {
        self.counts
            .get(&g)
            .map(|row| row.iter().sum())
            .unwrap_or_else(BigUint::zero)
    }

    /// n_{2,1}, the stage's twin-gap count.
    pub fn twin_count(&self) -> BigUint {
        self.count(2, 1)
    }

    /// Pointwise sum; the merge is associative and commutative.
    pub fn merge(&self, other: &Census) -> Result<Census> {
        if self.stage_prime != other.stage_prime
            || self.g_max != other.g_max
            || self.j_max != other.j_max
        {
            return Err(Error::CensusMismatch(format!(
                "(p={}, gmax={}, jmax={}) vs (p={}, gmax={}, jmax={})",
                self.stage_prime, self.g_max, self.j_max,
                other.stage_prime, other.g_max, other.j_max
            )));
        }
        let mut counts = self.counts.clone();
        for (&g, row) in &other.counts {
            let dst = counts.entry(g).or_default();
            if dst.len() < row.len() {
                dst.resize(row.len(), BigUint::zero());
            }
            for (j, c) in row.iter().enumerate() {
                dst[j] += c;
            }
        }
        Ok(Census::from_counts(
            self.stage_prime,
            self.g_max,
            self.j_max,
            self.truncated || other.truncated,
            counts,
        ))
    }

    /// Line-oriented text format:
    /// `CENSUS v1 p=<prime> gmax=<int> jmax=<int> truncated=<0|1>`
    /// then one `<g> <j> <count>` line per nonzero entry, ascending g then j.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "CENSUS v1 p={} gmax={} jmax={} truncated={}",
            self.stage_prime,
            self.g_max,
            self.j_max,
            u8::from(self.truncated)
        );
        for (g, row) in &self.counts {
            for (idx, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let _ = writeln!(s, "{} {} {}", g, idx + 1, c);
                }
            }
        }
        s
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Census> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CensusFormat("empty input".into()))??;
        let (stage_prime, g_max, j_max, truncated) = parse_header(&header)?;
        let mut counts: BTreeMap<u64, Vec<BigUint>> = BTreeMap::new();
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with("PROPAGATED") {
                continue;
            }
            let mut parts = line.split_whitespace();
            let g: u64 = next_field(&mut parts, line)?;
            let j: usize = next_field(&mut parts, line)?;
            let c: BigUint = next_field(&mut parts, line)?;
            if j == 0 {
                return Err(Error::CensusFormat(format!("j must be >= 1 in `{line}`")));
            }
            let row = counts.entry(g).or_default();
            if row.len() < j {
                row.resize(j, BigUint::zero());
            }
            row[j - 1] = c;
        }
        Ok(Census::from_counts(
            stage_prime, g_max, j_max, truncated, counts,
        ))
    }

    pub fn parse(text: &str) -> Result<Census> {
        Census::read_from(text.as_bytes())
    }
}

fn parse_header(header: &str) -> Result<(u64, u64, usize, bool)> {
    let mut parts = header.split_whitespace();
    if parts.next() != Some("CENSUS") || parts.next() != Some("v1") {
        return Err(Error::CensusFormat(format!(
            "expected `CENSUS v1` header, got `{header}`"
        )));
    }
    let mut p = None;
    let mut gmax = None;
    let mut jmax = None;
    let mut truncated = None;
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::CensusFormat(format!("bad header field `{kv}`")))?;
        match k {
            "p" => p = Some(parse_num(v, kv)?),
            "gmax" => gmax = Some(parse_num(v, kv)?),
            "jmax" => jmax = Some(parse_num::<usize>(v, kv)?),
            "truncated" => truncated = Some(v != "0"),
            _ => return Err(Error::CensusFormat(format!("unknown header field `{k}`"))),
        }
    }
    match (p, gmax, jmax, truncated) {
        (Some(p), Some(g), Some(j), Some(t)) => Ok((p, g, j, t)),
        _ => Err(Error::CensusFormat(format!(
            "header is missing a field: `{header}`"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(v: &str, ctx: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::CensusFormat(format!("bad number in `{ctx}`")))
}

fn next_field<T: std::str::FromStr>(
    parts: &mut std::str::SplitWhitespace<'_>,
    line: &str,
) -> Result<T> {
    parts
        .next()
        .ok_or_else(|| Error::CensusFormat(format!("short line `{line}`")))?
        .parse()
        .map_err(|_| Error::CensusFormat(format!("bad field in `{line}`")))
}

/// Incremental window counter. Push gaps in cycle order, then `finish()`;
/// runs crossing segment boundaries and the wrap point are both handled by
/// the carry buffer.
pub struct CensusBuilder {
    stage_prime: u64,
    g_max: u64,
    j_max: usize,
    /// longest window the inner loop can touch, plus one lookahead slot
    margin: usize,
    flush_at: usize,
    flat: Vec<u64>,
    buf: Vec<u64>,
    head: Vec<u64>,
    pushed: u64,
    processed: u64,
    truncated: bool,
}

impl CensusBuilder {
    pub fn new(stage_prime: u64, g_max: u64, j_max: usize) -> Self {
        let g_max = g_max.max(2);
        let j_max = j_max.max(1);
        let margin = j_max.min((g_max / 2) as usize) + 1;
        CensusBuilder {
            stage_prime,
            g_max,
            j_max,
            margin,
            flush_at: (margin * 4).max(1 << 16),
            flat: vec![0u64; (g_max / 2) as usize * j_max],
            buf: Vec::new(),
            head: Vec::new(),
            pushed: 0,
            processed: 0,
            truncated: false,
        }
    }

    pub fn push(&mut self, gap: u64) {
        debug_assert!(gap >= 2 && gap % 2 == 0, "gap {gap} must be even positive");
        if (self.head.len() as u64) < self.margin as u64 {
            self.head.push(gap);
        }
        self.buf.push(gap);
        self.pushed += 1;
        if self.buf.len() >= self.flush_at {
            let n = self.buf.len().saturating_sub(self.margin - 1);
            if n > 0 {
                self.process_starts(n);
                self.buf.drain(..n);
            }
        }
    }

    pub fn extend<I: IntoIterator<Item = u64>>(&mut self, gaps: I) {
        for g in gaps {
            self.push(g);
        }
    }

    fn process_starts(&mut self, n: usize) {
        let j_cap = self.j_max;
        for i in 0..n {
            let mut sum = 0u64;
            for (k, &g) in self.buf[i..].iter().enumerate() {
                sum += g;
                if sum > self.g_max {
                    break;
                }
                if k >= j_cap {
                    self.truncated = true;
                    break;
                }
                self.flat[(sum / 2 - 1) as usize * j_cap + k] += 1;
            }
        }
        self.processed += n as u64;
    }

    pub fn finish(mut self) -> Census {
        if self.pushed == 0 {
            return Census::from_counts(
                self.stage_prime,
                self.g_max,
                self.j_max,
                false,
                BTreeMap::new(),
            );
        }
        // close the cycle: windows from the tail wrap into the head,
        // lapping repeatedly if the cycle is shorter than the margin
        let head = std::mem::take(&mut self.head);
        for k in 0..self.margin - 1 {
            self.buf.push(head[k % head.len()]);
        }
        let n = self.buf.len() - (self.margin - 1);
        self.process_starts(n);
        debug_assert_eq!(self.processed, self.pushed);

        let j_max = self.j_max;
        let mut counts: BTreeMap<u64, Vec<BigUint>> = BTreeMap::new();
        for gi in 0..(self.g_max / 2) as usize {
            let row = &self.flat[gi * j_max..(gi + 1) * j_max];
            if row.iter().any(|&c| c != 0) {
                counts.insert(
                    (gi as u64 + 1) * 2,
                    row.iter().map(|&c| BigUint::from(c)).collect(),
                );
            }
        }
        Census::from_counts(
            self.stage_prime,
            self.g_max,
            self.j_max,
            self.truncated,
            counts,
        )
    }
}

/// Census of a streamed cycle. One full pass, wraparound runs included.
pub fn census_driving_terms(stream: GapStream, g_max: u64, j_max: usize) -> Census {
    let stage = stream.stage_prime();
    let mut builder = CensusBuilder::new(stage, g_max, j_max);
    builder.extend(stream);
    builder.finish()
}

/// Census of a materialized cycle.
pub fn census_of_cycle(cycle: &GapCycle, g_max: u64, j_max: usize) -> Census {
    let mut builder = CensusBuilder::new(cycle.stage_prime(), g_max, j_max);
    builder.extend(cycle.gaps().iter().copied());
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::materialize_cycle;
    use proptest::prelude::*;

    fn census_of(gaps: &[u64], g_max: u64, j_max: usize) -> Census {
        let mut b = CensusBuilder::new(5, g_max, j_max);
        b.extend(gaps.iter().copied());
        b.finish()
    }

    #[test]
    fn census_of_g5() {
        let c = census_of(&[6, 4, 2, 4, 2, 4, 6, 2], 6, 8);
        assert_eq!(c.count(2, 1), BigUint::from(3u32));
        assert_eq!(c.count(4, 1), BigUint::from(3u32));
        assert_eq!(c.count(6, 1), BigUint::from(2u32));
        assert_eq!(c.count(6, 2), BigUint::from(4u32));
        // the ratio forced by the asymptotic product: (2 + 4) / 3 = 2
        assert_eq!(c.gap_total(6), BigUint::from(6u32));
    }

    #[test]
    fn conservation_of_length_one_counts() {
        for p in [5u64, 7, 11, 13] {
            let cycle = materialize_cycle(p).unwrap();
            let g_max = *cycle.gaps().iter().max().unwrap();
            let c = census_of_cycle(&cycle, g_max, 4);
            let total: BigUint = cycle.gaps().iter().map(|&g| c.count(g, 1)).sum::<BigUint>();
            // each gap counted once per distinct value; sum n_{g,1} over distinct g
            let sum: BigUint = c.gaps().map(|g| c.count(g, 1)).sum();
            assert_eq!(sum, BigUint::from(cycle.len()));
            let _ = total;
        }
    }

    #[test]
    fn twin_quad_equality() {
        for p in [5u64, 7, 11, 13] {
            let cycle = materialize_cycle(p).unwrap();
            let c = census_of_cycle(&cycle, 6, 2);
            assert_eq!(c.count(2, 1), c.count(4, 1), "p={p}");
        }
    }

    #[test]
    fn truncation_flag() {
        // j_max=1 cannot hold the length-2 runs summing to <= 10
        let c = census_of(&[6, 4, 2, 4, 2, 4, 6, 2], 10, 1);
        assert!(c.truncated);
        let full = census_of(&[6, 4, 2, 4, 2, 4, 6, 2], 10, 8);
        assert!(!full.truncated);
    }

    #[test]
    fn wraparound_runs_counted() {
        // all windows of [4, 2]: starts at 0: 4, 4+2=6; at 1: 2, 2+4=6
        let c = census_of(&[4, 2], 6, 4);
        assert_eq!(c.count(6, 2), BigUint::from(2u32));
        assert_eq!(c.count(4, 1), BigUint::from(1u32));
        assert_eq!(c.count(2, 1), BigUint::from(1u32));
    }

    #[test]
    fn segment_boundaries_do_not_matter() {
        let cycle = materialize_cycle(7).unwrap();
        let big = census_of_cycle(&cycle, 20, 8);
        let mut b = CensusBuilder::new(7, 20, 8);
        b.flush_at = 7; // force many tiny flushes
        b.extend(cycle.gaps().iter().copied());
        assert_eq!(b.finish(), big);
    }

    #[test]
    fn merge_is_pointwise() {
        let a = census_of(&[6, 4, 2, 4, 2, 4, 6, 2], 6, 4);
        let m = a.merge(&a).unwrap();
        assert_eq!(m.count(6, 2), BigUint::from(8u32));
        let b = CensusBuilder::new(7, 6, 4).finish();
        assert!(a.merge(&b).is_err());
    }

    #[test]
    fn text_round_trip_is_stable() {
        let cycle = materialize_cycle(7).unwrap();
        let c = census_of_cycle(&cycle, 20, 8);
        let text = c.to_text();
        let back = Census::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(Census::parse("nope").is_err());
        assert!(Census::parse("CENSUS v1 p=5 gmax=6 jmax=2").is_err());
        assert!(Census::parse("CENSUS v1 p=5 gmax=6 jmax=2 truncated=0\n2 0 5\n").is_err());
    }

    proptest! {
        // rotating the cycle's starting point never changes a census
        #[test]
        fn rotation_invariance(rot in 0usize..48) {
            let cycle = materialize_cycle(7).unwrap();
            let mut gaps = cycle.gaps().to_vec();
            let n = gaps.len();
            gaps.rotate_left(rot % n);
            let a = census_of_cycle(&cycle, 24, 10);
            let b = census_of(&gaps, 24, 10);
            prop_assert_eq!(a.counts, b.counts);
        }
    }
}
