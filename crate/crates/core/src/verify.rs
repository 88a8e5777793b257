//! Row-by-row verification of the Iano-Fletcher table: Riemann-Roch against the
//! Hilbert series, plus the plurigenus patterns and basis counts the
//! hypersurface structure of `X_{6d}` rests on.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::basket::{rr_main_term, to_plurigenus};
use crate::error::{Error, Result};
use crate::hypersurface::{denumerant_table, hilbert_coeffs, AbFamily};
use crate::par::{self, Execution};
use crate::rational::Rational;
use crate::table::{builtin_table, TableRow};

pub const DEFAULT_TRUNCATION: u64 = 400;

pub const VOLUME_FORMULA: &str = "volume-formula";
pub const RR_EQUALS_HILBERT: &str = "rr-equals-hilbert";
pub const POSITIVITY: &str = "positivity";
pub const PATTERN: &str = "pattern";
pub const BASIS_COUNTS: &str = "basis-counts";
pub const DEGREE_BOUND: &str = "degree-bound";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// First failure, or for a passing `pattern` check the branch that applied.
    pub detail: Option<String>,
    /// Degree `m` of the first failure, when the check is indexed by degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

impl CheckResult {
    fn passed(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            detail: None,
            m: None,
        }
    }

    fn failed(name: &str, m: Option<u64>, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            pass: false,
            detail: Some(detail),
            m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub row_no: u32,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First degree at which Riemann-Roch and the Hilbert series disagree.
    pub fn first_mismatch(&self) -> Option<u64> {
        self.check(RR_EQUALS_HILBERT).and_then(|c| c.m)
    }
}

/// Which case of the low-degree plurigenus pattern a family falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternBranch {
    /// `a = b = 1`
    AllOnes,
    /// `a = 1 < b`
    UnitA,
    /// `a > 1`
    LargeA,
}

impl PatternBranch {
    pub fn of(f: &AbFamily) -> Self {
        match (f.a(), f.b()) {
            (1, 1) => PatternBranch::AllOnes,
            (1, _) => PatternBranch::UnitA,
            _ => PatternBranch::LargeA,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PatternBranch::AllOnes => "b=1",
            PatternBranch::UnitA => "a=1<b",
            PatternBranch::LargeA => "a>1",
        }
    }

    /// Expected `(k, h0(-kK))` pairs for `1 <= k <= b`.
    pub fn expected(self, f: &AbFamily) -> Vec<(u64, u64)> {
        let (a, b) = (f.a(), f.b());
        match self {
            PatternBranch::AllOnes => vec![(1, 3)],
            PatternBranch::UnitA => (1..b).map(|k| (k, k + 1)).chain([(b, b + 2)]).collect(),
            PatternBranch::LargeA => (1..b)
                .map(|k| (k, if k < a { 1 } else { k / a + 1 }))
                .chain([(b, b / a + 2)])
                .collect(),
        }
    }
}

/// Riemann-Roch values up to the first degree where they stop being plurigenera.
struct RrPrefix {
    values: Vec<BigUint>,
    stop: Option<Error>,
}

impl RrPrefix {
    fn compute(row: &TableRow, n: u64) -> Self {
        let data = match row.numerical_data() {
            Ok(d) => d,
            Err(e) => return RrPrefix { values: Vec::new(), stop: Some(e) },
        };
        let mut values = Vec::with_capacity(n as usize + 1);
        for (m, l) in (0..).zip(data.basket().correction_sequence(n)) {
            match to_plurigenus(rr_main_term(data.volume(), m) - l, m) {
                Ok(v) => values.push(v),
                Err(e) => return RrPrefix { values, stop: Some(e) },
            }
        }
        RrPrefix { values, stop: None }
    }

    fn at(&self, k: u64) -> std::result::Result<&BigUint, String> {
        self.values.get(k as usize).ok_or_else(|| match &self.stop {
            Some(e) => format!("h0 unavailable at k={k}: {e}"),
            None => format!("h0 not computed at k={k}"),
        })
    }
}

/// Compares `h0(-kK)` with an expected value; `Err` carries `(k, detail)`.
fn expect_h0(rr: &RrPrefix, k: u64, expected: &BigUint, what: &str) -> std::result::Result<(), (u64, String)> {
    let got = rr.at(k).map_err(|e| (k, e))?;
    if got == expected {
        Ok(())
    } else {
        Err((k, format!("k={k}: h0={got}, expected {what}={expected}")))
    }
}

fn collect_check(name: &str, outcome: std::result::Result<(), (u64, String)>) -> CheckResult {
    match outcome {
        Ok(()) => CheckResult::passed(name),
        Err((k, detail)) => CheckResult::failed(name, Some(k), detail),
    }
}

fn check_volume(row: &TableRow) -> CheckResult {
    let f = &row.family;
    let expected = Rational::new(1, f.a() * f.b() * f.d()).expect("nonzero");
    if row.volume == expected {
        CheckResult::passed(VOLUME_FORMULA)
    } else {
        CheckResult::failed(
            VOLUME_FORMULA,
            None,
            format!("volume {} but 1/(abd) = {expected}", row.volume),
        )
    }
}

fn check_rr_hilbert(row: &TableRow, rr: &RrPrefix, n: u64) -> CheckResult {
    let hilbert = match hilbert_coeffs(&row.family.weighted(), n) {
        Ok(h) => h,
        Err(e) => return CheckResult::failed(RR_EQUALS_HILBERT, None, e.to_string()),
    };
    for (m, h) in (0..).zip(&hilbert) {
        match rr.values.get(m as usize) {
            Some(v) if v == h => continue,
            Some(v) => {
                let diff = BigInt::from(v.clone()) - BigInt::from(h.clone());
                return CheckResult::failed(
                    RR_EQUALS_HILBERT,
                    Some(m),
                    format!("m={m}: rr={v} hilbert={h} diff={diff}"),
                );
            }
            None => {
                let reason = rr.stop.as_ref().map_or_else(String::new, |e| e.to_string());
                return CheckResult::failed(
                    RR_EQUALS_HILBERT,
                    Some(m),
                    format!("m={m}: rr unavailable ({reason}) hilbert={h}"),
                );
            }
        }
    }
    CheckResult::passed(RR_EQUALS_HILBERT)
}

fn check_positivity(row: &TableRow, rr: &RrPrefix, n: u64) -> CheckResult {
    let one = BigUint::from(1u32);
    let outcome = (|| {
        for k in 1..=n {
            let v = rr.at(k).map_err(|e| (k, e))?;
            if *v < one {
                return Err((k, format!("k={k}: h0={v} < 1")));
            }
        }
        let a = row.family.a();
        let v = rr.at(a).map_err(|e| (a, e))?;
        if *v < BigUint::from(2u32) {
            return Err((a, format!("k=a={a}: h0={v} < 2")));
        }
        Ok(())
    })();
    collect_check(POSITIVITY, outcome)
}

fn check_pattern(row: &TableRow, rr: &RrPrefix) -> CheckResult {
    let branch = PatternBranch::of(&row.family);
    let outcome = branch
        .expected(&row.family)
        .into_iter()
        .try_for_each(|(k, want)| expect_h0(rr, k, &BigUint::from(want), branch.label()));
    let mut result = collect_check(PATTERN, outcome);
    if result.pass {
        result.detail = Some(format!("branch {}", branch.label()));
    }
    result
}

fn check_basis_counts(row: &TableRow, rr: &RrPrefix) -> CheckResult {
    let f = &row.family;
    let d = f.d();
    let s = denumerant_table(&[1, f.a(), f.b(), 2 * d], 6 * d);
    let s_prime = denumerant_table(&[1, f.a(), f.b()], 2 * d);
    let at = |k: u64| &s[k as usize];
    let one = BigUint::from(1u32);
    let outcome = (|| {
        for k in 1..3 * d {
            expect_h0(rr, k, at(k), "|S_k|")?;
        }
        expect_h0(rr, 2 * d, &(&s_prime[2 * d as usize] + &one), "|S'_2d|+1")?;
        expect_h0(rr, 3 * d, &(at(3 * d) + &one), "|S_3d|+1")?;
        expect_h0(rr, 6 * d, &(at(6 * d) + at(3 * d)), "|S_6d|+|S_3d|")
    })();
    collect_check(BASIS_COUNTS, outcome)
}

fn check_degree_bound(row: &TableRow) -> CheckResult {
    let f = &row.family;
    let value = Rational::from(2 * f.a() * f.b() * f.d()) * &row.volume;
    if value == 2 {
        CheckResult::passed(DEGREE_BOUND)
    } else {
        CheckResult::failed(DEGREE_BOUND, None, format!("2abd * volume = {value}, expected 2"))
    }
}

/// Runs every named check on one row, comparing degrees `0..=n`.
pub fn verify_row(row: &TableRow, n: u64) -> Result<VerificationReport> {
    let needed = 6 * row.family.d();
    if n < needed {
        return Err(Error::TruncationTooSmall { needed, given: n });
    }
    let rr = RrPrefix::compute(row, n);
    let checks = vec![
        check_volume(row),
        check_rr_hilbert(row, &rr, n),
        check_positivity(row, &rr, n),
        check_pattern(row, &rr),
        check_basis_counts(row, &rr),
        check_degree_bound(row),
    ];
    let overall = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        row_no: row.row_no,
        checks,
        overall,
    })
}

/// Verifies `rows` in row-number order. Fails up front if `n` is below `6d` for any row.
pub fn verify_rows(rows: &[TableRow], n: u64, exec: Execution) -> Result<Vec<VerificationReport>> {
    if let Some(needed) = rows.iter().map(|r| 6 * r.family.d()).max() {
        if n < needed {
            return Err(Error::TruncationTooSmall { needed, given: n });
        }
    }
    let mut rows = rows.to_vec();
    rows.sort_by_key(|r| r.row_no);
    par::map(exec, &rows, |row| verify_row(row, n)).into_iter().collect()
}

pub fn verify_all(n: u64) -> Result<Vec<VerificationReport>> {
    verify_rows(&builtin_table(), n, Execution::default())
}

pub fn verify_all_with(n: u64, exec: Execution) -> Result<Vec<VerificationReport>> {
    verify_rows(&builtin_table(), n, exec)
}

/// One line per check: row, check name, PASS/FAIL, detail.
pub fn render_plain(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<5} {:<18} {:<6} detail", "row", "check", "result");
    for r in reports {
        for c in &r.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let detail = c.detail.as_deref().unwrap_or("");
            let _ = writeln!(out, "{:<5} {:<18} {:<6} {}", r.row_no, c.name, verdict, detail);
        }
    }
    let passed = reports.iter().filter(|r| r.overall).count();
    let _ = writeln!(out, "{passed}/{} rows pass", reports.len());
    out
}
