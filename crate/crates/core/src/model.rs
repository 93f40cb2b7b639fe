//! Aggregate polynomial model for residue classes: one truncated polynomial
//! per gap, summed per class and normalized by the class of the gap 2. This
//! is the machinery behind the class-evolution curves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::census::Census;
use crate::eigen::{poly_model, PolynomialModel};
use crate::error::{Error, Result};
use crate::residue::{class_ratios, digit_pair_classes, ResidueScheme};

/// Per-gap polynomial models over a sample of gaps, ready to evaluate at any
/// lambda and aggregate into class ratios.
#[derive(Debug, Clone)]
pub struct ClassModel {
    pub base: u64,
    pub base_prime: u64,
    pub degree: usize,
    pub ic_correction: bool,
    /// gaps whose tracked driving terms forced a lower polynomial degree
    pub clamped: Vec<u64>,
    models: BTreeMap<u64, PolynomialModel>,
    /// per gap: the provable trajectory envelope [w_{g,1}(p0#), l_1]; the
    /// first ratio is nondecreasing stage to stage and never passes the sum
    /// of its driving-term ratios, so polynomial values outside the envelope
    /// are truncation artifacts and get projected back onto it
    envelope: BTreeMap<u64, (f64, f64)>,
    scheme: ResidueScheme,
}

/// Build per-gap models for every even gap 2..=g_max present in the census.
///
/// With `ic_correction` on, the initial ratio vector of a gap carrying prime
/// factors above the census stage is scaled by (q-1)/(q-2) per such factor,
/// so the model's asymptote agrees with the full product; populations of
/// those gaps are otherwise systematically low at early stages.
pub fn build_class_model(
    census: &Census,
    base: u64,
    g_max: u64,
    degree: usize,
    ic_correction: bool,
) -> Result<ClassModel> {
    let scheme = digit_pair_classes(base)?;
    let mut models = BTreeMap::new();
    let mut envelope = BTreeMap::new();
    let mut clamped = Vec::new();
    for g in census.gaps().filter(|&g| g <= g_max) {
        let mut rv = match census.ratio_vector(g) {
            Some(rv) => rv,
            None => continue,
        };
        if ic_correction {
            let boost = large_factor_boost(g, census.stage_prime);
            if let Some(b) = boost {
                for e in rv.entries.iter_mut() {
                    *e *= &b;
                }
            }
        }
        let d = if degree + 1 > rv.entries.len() {
            clamped.push(g);
            rv.entries.len() - 1
        } else {
            degree
        };
        let model = poly_model(g, census.stage_prime, &rv.entries, d)?;
        let lo = crate::eigen::rational_to_f64(&rv.entries[0]);
        let hi = crate::eigen::rational_to_f64(model.asymptotic());
        envelope.insert(g, (lo, hi));
        models.insert(g, model);
    }
    if models.is_empty() {
        return Err(Error::CensusMismatch(
            "census holds no gaps within g_max".into(),
        ));
    }
    Ok(ClassModel {
        base,
        base_prime: census.stage_prime,
        degree,
        ic_correction,
        clamped,
        models,
        envelope,
        scheme,
    })
}

/// prod (q-1)/(q-2) over prime factors q of g above the stage prime, or
/// None when there are none.
fn large_factor_boost(g: u64, stage_prime: u64) -> Option<BigRational> {
    let mut m = g;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut boost: Option<BigRational> = None;
    let mut q = 3u64;
    while q * q <= m {
        if m % q == 0 {
            if q > stage_prime {
                let f = BigRational::new(BigInt::from(q - 1), BigInt::from(q - 2));
                boost = Some(boost.map_or(f.clone(), |b| b * f));
            }
            while m % q == 0 {
                m /= q;
            }
        }
        q += 2;
    }
    if m > 1 && m > stage_prime {
        let f = BigRational::new(BigInt::from(m - 1), BigInt::from(m - 2));
        boost = Some(boost.map_or(f.clone(), |b| b * f));
    }
    boost
}

impl ClassModel {
    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.models.keys().copied()
    }

    pub fn model(&self, g: u64) -> Option<&PolynomialModel> {
        self.models.get(&g)
    }

    /// Polynomial value projected onto the gap's trajectory envelope.
    pub fn eval_gap(&self, g: u64, lambda: f64) -> Option<f64> {
        let m = self.models.get(&g)?;
        let &(lo, hi) = self.envelope.get(&g)?;
        Some(m.eval(lambda).clamp(lo, hi))
    }

    /// Evaluate every gap at lambda and fold into class ratios.
    pub fn ratios_at(&self, lambda: f64) -> Result<crate::residue::ClassAggregate> {
        let values: BTreeMap<u64, f64> = self
            .models
            .keys()
            .map(|&g| (g, self.eval_gap(g, lambda).unwrap()))
            .collect();
        class_ratios(&values, self.base)
    }

    pub fn scheme(&self) -> &ResidueScheme {
        &self.scheme
    }
}

/// The class-evolution curve instrument.
///
/// The truncated polynomial in lambda mirrors the expansion the figures are
/// drawn from, but it diverges once lambda times the driving-term length is
/// no longer small, which already happens at moderate primes for gaps with
/// long runs. This evaluator instead rides the exact recurrence to a staging
/// prime, where the transients have decayed and every left-functional is
/// tame, and extrapolates the closed form from that state:
///
///   w_{g,1}(lambda) = sum_i (-1)^(i+1) r^(i-1) (L_i . w*),  r = lambda/lambda*
///
/// using a_i over the remaining range ~ (a_2)^(i-1), which converges like
/// 1 + O(i^2 / p*) once past the staging prime.
#[derive(Debug, Clone)]
pub struct CurveEvaluator {
    pub base: u64,
    pub base_prime: u64,
    pub staging_prime: u64,
    /// lambda accumulated from the census stage to the staging prime
    pub staging_lambda: f64,
    pub degree: usize,
    pub ic_correction: bool,
    /// per gap: left-functionals L_i . w* of the staged state, i = 1..
    functionals: BTreeMap<u64, Vec<f64>>,
    /// per gap: [w*_1, L_1 . w*], the provable envelope from the stage on
    envelope: BTreeMap<u64, (f64, f64)>,
    scheme: ResidueScheme,
}

/// Stage the census at `staging_prime` and build the extrapolation state.
pub fn build_curve_evaluator(
    census: &Census,
    base: u64,
    g_max: u64,
    degree: usize,
    staging_prime: u64,
    ic_correction: bool,
) -> Result<CurveEvaluator> {
    use crate::dynamics::NormalizedCensus;
    use crate::primes::primes_in;

    let cap = NormalizedCensus::admissible_cap(census.stage_prime);
    let mut state = NormalizedCensus::from_census_capped(census, Some(cap))?;
    state.values.retain(|&g, _| g <= g_max);
    if state.values.is_empty() {
        return Err(Error::CensusMismatch(
            "census holds no gaps within g_max".into(),
        ));
    }
    if ic_correction {
        for (&g, row) in state.values.iter_mut() {
            if let Some(b) = large_factor_boost(g, census.stage_prime) {
                let f = crate::eigen::rational_to_f64(&b);
                for e in row.iter_mut() {
                    *e *= f;
                }
            }
        }
    }
    let mut staging_lambda = 1.0f64;
    for p in primes_in(census.stage_prime, staging_prime) {
        state.step_public(p)?;
        staging_lambda *= (p - 3) as f64 / (p - 2) as f64;
    }
    finish_evaluator(
        state,
        staging_lambda,
        census.stage_prime,
        base,
        degree,
        ic_correction,
    )
}

fn f64_binomials(n: usize) -> Vec<Vec<f64>> {
    let mut b: Vec<Vec<f64>> = Vec::with_capacity(n);
    for row in 0..n {
        let mut r = vec![1.0f64; row + 1];
        for k in 1..row {
            r[k] = b[row - 1][k - 1] + b[row - 1][k];
        }
        b.push(r);
    }
    b
}

impl CurveEvaluator {
    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.functionals.keys().copied()
    }

    pub fn scheme(&self) -> &ResidueScheme {
        &self.scheme
    }

    /// w_{g,1} at a lambda measured from the census stage. Only lambdas at
    /// or below the staging value are meaningful here.
    pub fn eval_gap(&self, g: u64, lambda: f64) -> Option<f64> {
        let l = self.functionals.get(&g)?;
        let &(lo, hi) = self.envelope.get(&g)?;
        let r = lambda / self.staging_lambda;
        let mut acc = 0.0;
        let mut pow = 1.0;
        for (i, li) in l.iter().enumerate() {
            if i % 2 == 0 {
                acc += li * pow;
            } else {
                acc -= li * pow;
            }
            pow *= r;
        }
        Some(acc.clamp(lo, hi))
    }

    pub fn ratios_at(&self, lambda: f64) -> Result<crate::residue::ClassAggregate> {
        let values: BTreeMap<u64, f64> = self
            .functionals
            .keys()
            .map(|&g| (g, self.eval_gap(g, lambda).unwrap()))
            .collect();
        class_ratios(&values, self.base)
    }
}

/// One row of curve data: the class aggregate at a lambda of the grid.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub lambda: f64,
    pub aggregate: crate::residue::ClassAggregate,
}

/// Class-ratio curves over a lambda grid. Grid points with lambda at or
/// above the staging value are read off the exact trajectory as it passes;
/// the rest extrapolate from the staged state.
pub fn class_curves(
    census: &Census,
    base: u64,
    g_max: u64,
    degree: usize,
    staging_prime: u64,
    ic_correction: bool,
    lambdas: &[f64],
) -> Result<Vec<CurvePoint>> {
    use crate::dynamics::NormalizedCensus;
    use crate::primes::primes_in;

    let mut grid: Vec<f64> = lambdas.to_vec();
    grid.sort_by(|a, b| b.partial_cmp(a).expect("lambda grid must not hold NaN"));
    for &l in &grid {
        if !(l > 0.0 && l <= 1.0) {
            return Err(Error::LambdaOutOfRange(l));
        }
    }

    let cap = NormalizedCensus::admissible_cap(census.stage_prime);
    let mut state = NormalizedCensus::from_census_capped(census, Some(cap))?;
    state.values.retain(|&g, _| g <= g_max);
    if ic_correction {
        for (&g, row) in state.values.iter_mut() {
            if let Some(b) = large_factor_boost(g, census.stage_prime) {
                let f = crate::eigen::rational_to_f64(&b);
                for e in row.iter_mut() {
                    *e *= f;
                }
            }
        }
    }

    let snapshot = |state: &NormalizedCensus, lambda: f64| -> Result<CurvePoint> {
        let values: BTreeMap<u64, f64> = state
            .values
            .iter()
            .map(|(&g, row)| (g, row[0]))
            .collect();
        Ok(CurvePoint {
            lambda,
            aggregate: class_ratios(&values, base)?,
        })
    };

    let mut out: Vec<CurvePoint> = Vec::with_capacity(grid.len());
    let mut pending = grid.into_iter().peekable();
    let mut lam = 1.0f64;
    while pending.peek().is_some_and(|&l| l >= lam) {
        out.push(snapshot(&state, pending.next().unwrap())?);
    }
    for p in primes_in(census.stage_prime, staging_prime) {
        if pending.peek().is_none() {
            break;
        }
        state.step_public(p)?;
        lam *= (p - 3) as f64 / (p - 2) as f64;
        while pending.peek().is_some_and(|&l| l >= lam) {
            out.push(snapshot(&state, pending.next().unwrap())?);
        }
    }
    let rest: Vec<f64> = pending.collect();
    if !rest.is_empty() {
        // rebuild the evaluator machinery on the staged state
        let ev = finish_evaluator(
            state,
            lam,
            census.stage_prime,
            base,
            degree,
            ic_correction,
        )?;
        for l in rest {
            out.push(CurvePoint {
                lambda: l,
                aggregate: ev.ratios_at(l)?,
            });
        }
    }
    Ok(out)
}

fn finish_evaluator(
    state: crate::dynamics::NormalizedCensus,
    staging_lambda: f64,
    base_prime: u64,
    base: u64,
    degree: usize,
    ic_correction: bool,
) -> Result<CurveEvaluator> {
    let scheme = digit_pair_classes(base)?;
    let max_len = state.values.values().map(|r| r.len()).max().unwrap_or(1);
    let binom = f64_binomials(max_len);
    let mut functionals = BTreeMap::new();
    let mut envelope = BTreeMap::new();
    for (&g, row) in &state.values {
        let keep = row.len().min(degree + 1);
        let mut l = vec![0.0f64; keep];
        for (i, li) in l.iter_mut().enumerate() {
            for (jm1, w) in row.iter().enumerate().skip(i) {
                *li += binom[jm1][i] * w;
            }
        }
        let total: f64 = row.iter().sum();
        envelope.insert(g, (row[0], total));
        functionals.insert(g, l);
    }
    Ok(CurveEvaluator {
        base,
        base_prime,
        staging_prime: state.stage_prime,
        staging_lambda,
        degree,
        ic_correction,
        functionals,
        envelope,
        scheme,
    })
}
