//! Regenerate each reference table from scratch and diff it row by row.
//! Every run goes enumerate -> census -> propagate/evaluate -> compare with
//! no hidden state, so a pass means the whole pipeline reproduces the data.

use std::fmt;

use num_rational::BigRational;

use sievegaps::{
    build_curve_evaluator, census_driving_terms, class_mean_asymptotic, class_ratios_exact,
    digit_pair_classes, enumerate_gap_cycle, lambda_exact, pair_census_skipping, propagate_exact,
    rational_to_f64, w_infinity, w_infinity_table, Census,
};

use crate::tables;

pub const DEFAULT_SEGMENT: usize = 1 << 24;
pub const DEFAULT_JMAX: usize = 128;

/// One checked row of a comparison table.
pub struct ComparisonRow {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub deviation: String,
    /// None marks an informational row that carries no gate
    pub pass: Option<bool>,
}

pub struct ComparisonReport {
    pub table: String,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    fn new(table: &str) -> Self {
        ComparisonReport {
            table: table.to_string(),
            rows: Vec::new(),
        }
    }

    pub fn overall_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
            && self.rows.iter().any(|r| r.pass == Some(true))
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }

    fn exact_u64(&mut self, label: String, expected: u64, computed: u64) {
        self.rows.push(ComparisonRow {
            label,
            expected: expected.to_string(),
            computed: computed.to_string(),
            deviation: (computed as i128 - expected as i128).to_string(),
            pass: Some(expected == computed),
        });
    }

    fn exact_rational(&mut self, label: String, expected: &BigRational, computed: &BigRational) {
        self.rows.push(ComparisonRow {
            label,
            expected: expected.to_string(),
            computed: computed.to_string(),
            deviation: if expected == computed { "0".into() } else { "exact mismatch".into() },
            pass: Some(expected == computed),
        });
    }

    fn approx(&mut self, label: String, expected: f64, computed: f64, tol: f64) {
        let dev = computed - expected;
        self.rows.push(ComparisonRow {
            label,
            expected: format!("{expected}"),
            computed: format!("{computed:.6}"),
            deviation: format!("{dev:+.2e} (tol {tol:.0e})"),
            pass: Some(dev.abs() <= tol),
        });
    }

    fn info(&mut self, label: String, expected: String, computed: String, deviation: String) {
        self.rows.push(ComparisonRow {
            label,
            expected,
            computed,
            deviation,
            pass: None,
        });
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}", self.table)?;
        let w_label = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(8).max(8);
        let w_exp = self.rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
        let w_got = self.rows.iter().map(|r| r.computed.len()).max().unwrap_or(8).max(8);
        writeln!(
            f,
            "{:w_label$}  {:>w_exp$}  {:>w_got$}  {:>6}  deviation",
            "row", "expected", "computed", "status"
        )?;
        for r in &self.rows {
            let status = match r.pass {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "info",
            };
            writeln!(
                f,
                "{:w_label$}  {:>w_exp$}  {:>w_got$}  {:>6}  {}",
                r.label, r.expected, r.computed, status, r.deviation
            )?;
        }
        let gated = self.rows.iter().filter(|r| r.pass.is_some()).count();
        let failed = self.rows.iter().filter(|r| r.pass == Some(false)).count();
        writeln!(
            f,
            "{} rows, {} gated, {} failed -> {}",
            self.rows.len(),
            gated,
            failed,
            if self.overall_pass() { "PASS" } else { "FAIL" }
        )
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn build_census(p: u64, g_max: u64, j_max: usize) -> anyhow::Result<Census> {
    let stream = enumerate_gap_cycle(p, DEFAULT_SEGMENT)?;
    Ok(census_driving_terms(stream, g_max, j_max))
}

/// Table of pair counts over the first 10^8 unit pairs of consecutive primes.
pub fn run_t1() -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new("t1 (observed last-digit pairs, base 10)");
    let census = pair_census_skipping(tables::PAIR_PRIME_COUNT, 10, tables::PAIR_SKIP)?;
    for ((a, b), expected) in tables::PAIR_COUNTS_BASE_10 {
        report.exact_u64(format!("({a},{b})"), expected, census.count(a, b));
    }
    report.exact_u64("grand total".into(), 100_000_000, census.total_unit_pairs());
    Ok(report)
}

/// Observed class sums and ratios from the same tally.
pub fn run_os_ratios() -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new("os-ratios (observed class ratios, base 10)");
    let census = pair_census_skipping(tables::PAIR_PRIME_COUNT, 10, tables::PAIR_SKIP)?;
    let sums = census.class_sums();
    let agg = sievegaps::observed_class_ratios(&census)?;
    for (h, sum, ratio) in tables::OBSERVED_CLASS_SUMS {
        report.exact_u64(format!("class {h} sum"), sum, *sums.get(&h).unwrap_or(&0));
        report.approx(format!("W_{h}"), ratio, agg.ratios[&h], 5e-7);
    }
    Ok(report)
}

/// Driving-term counts at stage 37, propagated exactly from a stage-19
/// census. Counts are gated where the recurrence provably reproduces the
/// enumerated cycle (all prime factors within the census stage and the gap
/// below twice every traversed prime); larger gaps are reported.
pub fn run_t2() -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new("t2 (driving terms at stage 37)");
    let c19 = build_census(19, 66, 32)?;
    let c37 = propagate_exact(&c19, 37, 100)?;
    let twin = c37.twin_count();
    for row in &tables::STAGE_37_TABLE {
        let gated = row.gap <= tables::STAGE_37_EXACT_FROM_19;
        for (idx, &expected) in row.counts.iter().enumerate() {
            if expected == 0 {
                continue;
            }
            let j = idx + 1;
            let computed = c37.count(row.gap, j);
            let label = format!("n_{{{},{}}}", row.gap, j);
            if gated {
                let comp_u64 = u64::try_from(&computed).unwrap_or(u64::MAX);
                report.exact_u64(label, expected, comp_u64);
            } else {
                let comp = computed.to_string();
                let dev = if comp == expected.to_string() { "0".into() } else { "differs (outside exact domain)".into() };
                report.info(label, expected.to_string(), comp, dev);
            }
        }
        // first-ratio column, published to six decimals
        let w = c37
            .population_vector(row.gap)
            .map(|p| {
                let n = BigRational::from_integer(p.entries[0].clone().into());
                let d = BigRational::from_integer(twin.clone().into());
                rational_to_f64(&(n / d))
            })
            .unwrap_or(0.0);
        if gated {
            report.approx(format!("w_{{{},1}}", row.gap), row.w1, w, 5e-7);
        } else {
            report.info(
                format!("w_{{{},1}}", row.gap),
                format!("{}", row.w1),
                format!("{w:.9}"),
                format!("{:+.1e}", w - row.w1),
            );
        }
        // asymptotic column, exact rationals
        let expected_winf = rat(row.w_inf.0, row.w_inf.1);
        report.exact_rational(
            format!("w_{}(inf)", row.gap),
            &expected_winf,
            &w_infinity(row.gap)?,
        );
    }
    for (gap, j, published, repaired) in tables::REPAIRED_CELLS {
        report.info(
            format!("repaired n_{{{gap},{j}}}"),
            format!("published {published}"),
            format!("repaired {repaired}"),
            "publication inconsistent with its own ratio column and totals".into(),
        );
    }
    Ok(report)
}

/// Asymptotic ratios and cumulative class means for gaps below 100, base 10.
pub fn run_t3() -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new("t3 (class means, base 10)");
    for (class, rows) in tables::CLASS_MEANS_BASE_10 {
        for (n, row) in rows.iter().enumerate() {
            let expected_winf = rat(row.w_inf.0, row.w_inf.1);
            report.exact_rational(
                format!("w_{}(inf)", row.gap),
                &expected_winf,
                &w_infinity(row.gap)?,
            );
            let mu = rational_to_f64(&class_mean_asymptotic(10, class, n as u64 + 1)?);
            report.approx(format!("mu_{class} at g={}", row.gap), row.mu, mu, 1e-3);
        }
    }
    Ok(report)
}

fn class_table_report(
    name: &str,
    base: u64,
    rows: &[tables::ClassTableRow],
) -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new(name);
    let scheme = digit_pair_classes(base)?;
    let vals = w_infinity_table(420)?;
    let winf = class_ratios_exact(&vals, base)?;
    // finite-stage model column, reported for context
    let c19 = build_census(19, 420, DEFAULT_JMAX)?;
    let ev = build_curve_evaluator(&c19, base, 420, 11, tables::FINITE_STAGE, false)?;
    let finite = ev.ratios_at(ev.staging_lambda)?;
    for row in rows {
        let got_pairs = scheme
            .classes
            .get(&row.class)
            .cloned()
            .unwrap_or_default();
        let mut expected_pairs: Vec<(u64, u64)> = row.pairs.to_vec();
        expected_pairs.sort_unstable();
        report.rows.push(ComparisonRow {
            label: format!("pairs of class {}", row.class),
            expected: format!("{expected_pairs:?}"),
            computed: format!("{got_pairs:?}"),
            deviation: if expected_pairs == got_pairs { "0".into() } else { "set mismatch".into() },
            pass: Some(expected_pairs == got_pairs),
        });
        report.approx(
            format!("W_{}(inf)", row.class),
            row.w_inf,
            winf.ratios[&row.class],
            5e-4,
        );
        let f = finite.ratios[&row.class];
        report.info(
            format!("W_{}({}#)", row.class, tables::FINITE_STAGE),
            format!("{}", row.w_finite),
            format!("{f:.4}"),
            format!(
                "{:+.3} rel (published finite columns are not reproducible from the recurrence)",
                (f - row.w_finite) / row.w_finite
            ),
        );
    }
    Ok(report)
}

pub fn run_base3() -> anyhow::Result<ComparisonReport> {
    class_table_report("base3 (classes mod 3)", 3, &tables::CLASS_TABLE_BASE_3)
}

pub fn run_base8() -> anyhow::Result<ComparisonReport> {
    class_table_report("base8 (classes mod 8)", 8, &tables::CLASS_TABLE_BASE_8)
}

/// The base-30 class table.
pub fn run_t4() -> anyhow::Result<ComparisonReport> {
    class_table_report("t4 (classes mod 30)", 30, &tables::CLASS_TABLE_BASE_30)
}

/// Base-10 asymptotic class ratios over the same sample, plus the
/// lambda-decay checks against the exact product.
pub fn run_base10_asymptotics() -> anyhow::Result<ComparisonReport> {
    let mut report = ComparisonReport::new("base10 asymptotic class ratios");
    let vals = w_infinity_table(420)?;
    let winf = class_ratios_exact(&vals, 10)?;
    for (h, expected) in tables::W_INF_BASE_10 {
        report.approx(format!("W_{h}(inf)"), expected, winf.ratios[&h], 5e-4);
    }
    let lam = lambda_exact(37, 1_000_000)?;
    let bounds = sievegaps::lambda_bounds(37, 1e6)?;
    report.rows.push(ComparisonRow {
        label: "bounds bracket exact at 1e6".into(),
        expected: format!("({:.6}, {:.6})", bounds.lower, bounds.upper),
        computed: format!("{:.6}", lam.value),
        deviation: "".into(),
        pass: Some(bounds.lower < lam.value && lam.value < bounds.upper),
    });
    Ok(report)
}
