//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary under
//! `cargo test` and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use plurigenus::infer::infer_basket;
use plurigenus::par::{self, Execution};
use plurigenus::table::builtin_row;
use plurigenus::verify::verify_row;
use plurigenus::{
    builtin_table, certify, denumerant, epsilon, family_thresholds, hilbert_coeffs,
    point_correction, reid_h0, s_count, s_prime_count, volume_from_weights, Basket,
    OrbifoldPoint, Rational, SetupParams, TableRow,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn h0(row: &TableRow, k: u64) -> Result<BigUint, String> {
    let data = row.numerical_data().map_err(|e| e.to_string())?;
    reid_h0(&data, k).map_err(|e| format!("row {}: {e}", row.row_no))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

// Transcribed volumes, row -> (-K)^3.
const TABLE_VOLUMES: [(u32, &str); 12] = [
    (14, "1/2"),
    (34, "1/6"),
    (53, "1/12"),
    (70, "1/20"),
    (72, "1/30"),
    (82, "1/30"),
    (88, "1/42"),
    (89, "1/70"),
    (90, "1/84"),
    (92, "1/120"),
    (94, "1/180"),
    (95, "1/330"),
];

fn c1_volumes() -> Outcome {
    within(Duration::from_millis(100), || {
        let rows = builtin_table();
        ensure(rows.len() == 12, || format!("{} rows", rows.len()))?;
        for (row, (no, vol)) in rows.iter().zip(TABLE_VOLUMES) {
            ensure(row.row_no == no, || format!("row order {} vs {no}", row.row_no))?;
            let got = volume_from_weights(&row.family.weighted());
            let want: Rational = vol.parse().unwrap();
            ensure(got == want, || format!("row {no}: {got} != {want}"))?;
            ensure(row.volume == want, || format!("row {no}: table volume {}", row.volume))?;
        }
        Ok("12 volumes exact".into())
    })
}

fn c2_rr_equals_hilbert() -> Outcome {
    within(Duration::from_secs(5), || {
        let rows = builtin_table();
        let per_row = par::map(Execution::Parallel, &rows, |row| -> Result<usize, String> {
            let series = hilbert_coeffs(&row.family.weighted(), 400).map_err(|e| e.to_string())?;
            for m in 0..=400u64 {
                let rr = h0(row, m)?;
                ensure(rr == series[m as usize], || {
                    format!("row {} m={m}: rr={rr} hilbert={}", row.row_no, series[m as usize])
                })?;
            }
            Ok(series.len())
        });
        let total: usize = per_row.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
        ensure(total == 4812, || format!("{total} comparisons"))?;
        Ok(format!("{total} exact comparisons"))
    })
}

fn c3_patterns() -> Outcome {
    let mut counts = [0; 3];
    for row in builtin_table() {
        let (a, b) = (row.family.a(), row.family.b());
        if b == 1 {
            ensure(h0(&row, 1)? == big(3), || format!("row {}: h0(-K) != 3", row.row_no))?;
            counts[0] += 1;
        } else if a == 1 {
            for k in 1..b {
                ensure(h0(&row, k)? == big(k + 1), || format!("row {} k={k}", row.row_no))?;
            }
            ensure(h0(&row, b)? == big(b + 2), || format!("row {} k=b", row.row_no))?;
            counts[1] += 1;
        } else {
            for k in 1..a {
                ensure(h0(&row, k)? == big(1), || format!("row {} k={k}", row.row_no))?;
            }
            for k in a..b {
                ensure(h0(&row, k)? == big(k / a + 1), || format!("row {} k={k}", row.row_no))?;
            }
            ensure(h0(&row, b)? == big(b / a + 2), || format!("row {} k=b", row.row_no))?;
            counts[2] += 1;
        }
    }
    Ok(format!(
        "branches b=1: {}, a=1<b: {}, a>1: {}",
        counts[0], counts[1], counts[2]
    ))
}

fn c4_basis_counts() -> Outcome {
    let mut checks = 0;
    for row in builtin_table() {
        let f = row.family;
        let d = f.d() as i64;
        let no = row.row_no;
        for k in 1..3 * d {
            ensure(h0(&row, k as u64)? == s_count(&f, k), || format!("row {no} k={k}"))?;
            checks += 1;
        }
        ensure(h0(&row, 2 * d as u64)? == s_prime_count(&f, 2 * d) + 1u32, || format!("row {no} 2d"))?;
        ensure(h0(&row, 3 * d as u64)? == s_count(&f, 3 * d) + 1u32, || format!("row {no} 3d"))?;
        ensure(h0(&row, 6 * d as u64)? == s_count(&f, 6 * d) + s_count(&f, 3 * d), || format!("row {no} 6d"))?;
        checks += 3;
    }
    Ok(format!("{checks} identities"))
}

fn c5_degree_bound() -> Outcome {
    for row in builtin_table() {
        let f = row.family;
        let value = Rational::from(2 * f.a() * f.b() * f.d()) * &row.volume;
        ensure(value == 2, || format!("row {}: {value}", row.row_no))?;
    }
    Ok("2abd(-K)^3 = 2 for 12 rows".into())
}

fn c6_thresholds() -> Outcome {
    for row in builtin_table() {
        let f = row.family;
        let w = f.weights();
        let (g, bir) = family_thresholds(&f);
        ensure((g, bir) == (w[3], w[4]), || format!("row {}: ({g},{bir})", row.row_no))?;
        let params = SetupParams::bare(f.a(), f.b()).map_err(|e| e.to_string())?;
        ensure(certify(&params, g).gen_finite.is_certified(), || {
            format!("row {}: m=2d not generically finite", row.row_no)
        })?;
        ensure(certify(&params, bir).birational.is_certified(), || {
            format!("row {}: m=3d not birational", row.row_no)
        })?;
    }
    Ok("(2d, 3d) certified for 12 rows".into())
}

fn brute_denumerant(weights: &[u64], k: u64) -> u64 {
    match weights.split_first() {
        None => u64::from(k == 0),
        Some((&w, rest)) => (0..=k / w).map(|s| brute_denumerant(rest, k - s * w)).sum(),
    }
}

fn c7_properties() -> Outcome {
    let mut points = 0;
    for p in OrbifoldPoint::all_up_to(50) {
        let (b, r) = (p.b(), p.r());
        let brute: Rational = (1..r)
            .map(|j| {
                let res = j * b % r;
                Rational::new(res * (r - res), 2 * r).unwrap()
            })
            .sum();
        let want = Rational::new(r * r - 1, 12u64).unwrap();
        ensure(brute == want && point_correction(&p, r - 1) == want, || format!("period sum {p}"))?;
        points += 1;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0330);
    for _ in 0..200 {
        let len = rng.random_range(1..=4);
        let weights: Vec<u64> = (0..len).map(|_| rng.random_range(1..=40)).collect();
        let k = rng.random_range(0..=200u64);
        let dp = denumerant(&weights, k as i64);
        let brute = brute_denumerant(&weights, k);
        ensure(dp == big(brute), || format!("denumerant {weights:?} k={k}: {dp} vs {brute}"))?;
    }

    for _ in 0..200 {
        let m0 = rng.random_range(1..=20u64);
        let m1 = m0 + rng.random_range(0..=20u64);
        let mu0 = Rational::new(rng.random_range(1..=2 * m0 as i64), 2).unwrap();
        let zeta = Rational::new(rng.random_range(1..=60i64), rng.random_range(1..=30i64)).unwrap();
        let p = SetupParams::new(m0, m1, Some(mu0), Some(zeta.clone()), None).unwrap();
        let m = rng.random_range(1..=300u64);
        let step = epsilon(&p, m + 1).unwrap() - epsilon(&p, m).unwrap();
        ensure(step == zeta, || format!("epsilon step {step} != {zeta}"))?;
    }

    let mut certified = 0;
    for _ in 0..2000 {
        let m0 = rng.random_range(1..=15u64);
        let m1 = m0 + rng.random_range(0..=15u64);
        let mu0 = rng
            .random_bool(0.6)
            .then(|| Rational::new(rng.random_range(1..=2 * m0 as i64), 2).unwrap());
        let zeta = rng
            .random_bool(0.6)
            .then(|| Rational::new(rng.random_range(1..=40i64), rng.random_range(1..=20i64)).unwrap());
        let genus = rng.random_bool(0.6).then(|| rng.random_range(0..=4u64));
        let p = SetupParams::new(m0, m1, mu0, zeta, genus).unwrap();
        let c = certify(&p, rng.random_range(1..=120));
        ensure(!c.birational.is_certified() || c.gen_finite.is_certified(), || {
            format!("birational without generic finiteness: {p:?}")
        })?;
        certified += usize::from(c.birational.is_certified());
    }
    Ok(format!(
        "{points} period sums, 200 denumerants, 200 epsilon steps, 2000 certificates ({certified} birational)"
    ))
}

fn c8_infer() -> Outcome {
    let mut parts = Vec::new();
    for no in [14, 34, 95] {
        let row = builtin_row(no).unwrap();
        let r_max = row.basket.max_index().unwrap();
        let max_points = row.basket.len() + 2;
        let n = 6 * row.family.d();
        let detail = within(Duration::from_secs(30), || {
            let out = infer_basket(&row.family, r_max, max_points, n).map_err(|e| e.to_string())?;
            ensure(out.matches.contains(&row.basket), || {
                format!("row {no}: basket not recovered ({} matches)", out.matches.len())
            })?;
            Ok(format!("row {no}: {} match(es)", out.matches.len()))
        })?;
        parts.push(detail);
    }
    Ok(parts.join("; "))
}

fn c9_negative_controls() -> Outcome {
    let original = builtin_row(95).unwrap();
    let bound = 2 * original.basket.max_index().unwrap();
    let mut tampered = Vec::new();
    let points: Vec<OrbifoldPoint> = original.basket.points().collect();
    for (i, old) in points.iter().enumerate() {
        for new in OrbifoldPoint::all_up_to(bound) {
            if new == *old {
                continue;
            }
            let mut pts = points.clone();
            pts[i] = new;
            let mut row = original.clone();
            row.basket = Basket::from_points(pts);
            tampered.push((format!("{old}->{new}"), row));
        }
    }
    for vol in ["1/329", "1/331", "1/165", "1/660", "2/330", "7/2310"] {
        let mut row = original.clone();
        row.volume = vol.parse().unwrap();
        if row.volume != original.volume {
            tampered.push((format!("volume {vol}"), row));
        }
    }
    let mut worst = 0;
    for (label, row) in &tampered {
        let report = verify_row(row, 400).map_err(|e| e.to_string())?;
        ensure(!report.overall, || format!("{label}: verification passed"))?;
        let m = report
            .first_mismatch()
            .ok_or_else(|| format!("{label}: no mismatch reported"))?;
        ensure(m <= bound, || format!("{label}: first mismatch at m={m} > {bound}"))?;
        worst = worst.max(m);
    }
    Ok(format!(
        "{} tamperings all fail; latest first mismatch m={worst} (bound {bound})",
        tampered.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 table volumes", c1_volumes),
        ("2 RR equals Hilbert series, m=0..400", c2_rr_equals_hilbert),
        ("3 plurigenus patterns", c3_patterns),
        ("4 basis-count identities", c4_basis_counts),
        ("5 degree bound", c5_degree_bound),
        ("6 threshold calculus", c6_thresholds),
        ("7 property suite", c7_properties),
        ("8 basket inference", c8_infer),
        ("9 negative controls", c9_negative_controls),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
