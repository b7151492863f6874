//! Acceptance suite: one test per criterion, each printing a PASS line
//! once its assertions hold. Run with `--nocapture` to see the lines.

use hatgame::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::LazyLock;

fn shape33() -> GameShape {
    GameShape::new(3, 3).unwrap()
}

static SETS_12: LazyLock<Vec<AdequateSet>> =
    LazyLock::new(|| enumerate_adequate_sets(&shape33(), 12).unwrap());

/// Uniform point of the descending-sorted probability simplex.
fn sorted_triple(rng: &mut impl Rng) -> [f64; 3] {
    let mut v = [0.0; 3];
    for x in &mut v {
        *x = -(1.0 - rng.gen::<f64>()).ln();
    }
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn exact(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

const OPTIMAL_SETS_A: [[Code; 12]; 3] = [
    [4, 5, 7, 8, 9, 13, 14, 16, 17, 18, 20, 24],
    [1, 2, 8, 12, 13, 15, 16, 20, 21, 22, 24, 25],
    [3, 6, 8, 10, 11, 13, 14, 19, 20, 22, 23, 24],
];

const OPTIMAL_SETS_B: [[Code; 12]; 3] = [
    [4, 5, 7, 8, 9, 11, 15, 18, 22, 23, 25, 26],
    [1, 2, 7, 12, 14, 15, 17, 19, 21, 23, 24, 26],
    [3, 5, 6, 10, 11, 16, 17, 19, 20, 21, 25, 26],
];

#[test]
fn c01_enumeration_count() {
    assert_eq!(SETS_12.len(), 324);
    println!("criterion 01: PASS - das=12 enumeration yields exactly 324 adequate sets");
}

#[test]
fn c02_optimal_sets_at_region_a_anchor() {
    let probs = ProbabilityVector::from_slice(&[0.7, 0.2, 0.1]).unwrap();
    let solution = solve(&probs, SolveMode::Exhaustive).unwrap();
    assert!((solution.value - 0.758).abs() <= 1e-12);
    assert_eq!(solution.optimal.len(), 3);
    let mut found: Vec<&[Code]> = solution.optimal.iter().map(|o| o.set.codes()).collect();
    found.sort();
    let mut expected: Vec<&[Code]> = OPTIMAL_SETS_A.iter().map(|s| &s[..]).collect();
    expected.sort();
    assert_eq!(found, expected);
    for o in &solution.optimal {
        assert!((o.phi - 0.242).abs() <= 1e-12);
    }
    println!(
        "criterion 02: PASS - 3 minimal-mass sets at (0.7,0.2,0.1), value 0.758, mass 0.242 each"
    );
}

#[test]
fn c03_pattern_census() {
    // Grouping the 324 sets by probability at the (7/10, 2/10, 1/10)
    // anchor yields exactly 72 classes. The coefficient vectors behind
    // them number 75: three pattern pairs collide in value at this point
    // (32/125, 279/1000, 151/250), so the value census is coarser than
    // the coefficient census.
    let anchor = ProbabilityVector::new(vec![exact(7, 10), exact(2, 10), exact(1, 10)]).unwrap();
    let classes = phi_value_classes(&SETS_12, &anchor).unwrap();
    assert_eq!(classes.len(), 72);

    let census = pattern_census(&SETS_12);
    assert_eq!(census.len(), 75);
    assert_eq!(census.iter().map(|(_, c)| c).sum::<usize>(), 324);

    let first = AdequateSet::new(shape33(), OPTIMAL_SETS_A[0].to_vec()).unwrap();
    assert_eq!(pattern_of(&first).coeffs(), &[0, 1, 2, 1, 3, 2, 1, 1, 1, 0]);
    println!(
        "criterion 03: PASS - 72 probability classes at the anchor \
         (75 distinct coefficient vectors), first optimal pattern 0 1 2 1 3 2 1 1 1 0"
    );
}

#[test]
fn c04_dominant_patterns() {
    let census = pattern_census(&SETS_12);
    let patterns: Vec<Pattern> = census.into_iter().map(|(p, _)| p).collect();
    // errors (rather than guessing) on any Unknown, so success means none
    let analysis = dominant_patterns(&patterns).unwrap();
    assert_eq!(analysis.minimal.len(), 3);
    let mut minimal: Vec<&[u32]> = analysis
        .minimal
        .iter()
        .map(|&i| patterns[i].coeffs())
        .collect();
    minimal.sort();
    assert_eq!(
        minimal,
        vec![
            &[0, 1, 2, 1, 3, 2, 1, 1, 1, 0][..],
            &[1, 2, 1, 0, 1, 4, 1, 1, 1, 0],
            &[1, 3, 3, 1, 0, 0, 0, 3, 0, 1],
        ]
    );
    assert_eq!(analysis.dominator.len(), patterns.len());
    for &d in &analysis.dominator {
        assert!(analysis.minimal.contains(&d));
    }
    println!(
        "criterion 04: PASS - exactly 3 minimal patterns, certified dominators for all {} \
         patterns, no unknowns",
        patterns.len()
    );
}

#[test]
fn c05_region_anchors_and_alpha() {
    let a = classify(&ProbabilityVector::from_slice(&[0.7, 0.2, 0.1]).unwrap()).unwrap();
    assert_eq!(a.label.region, Region::A);
    let b = classify(&ProbabilityVector::new(vec![exact(1, 2), exact(1, 3), exact(1, 6)]).unwrap())
        .unwrap();
    assert_eq!(b.label.region, Region::B);
    let c = classify(&ProbabilityVector::from_slice(&[0.35, 0.33, 0.32]).unwrap()).unwrap();
    assert_eq!(c.label.region, Region::C);
    assert!((alpha() - (3.0 - 5.0_f64.sqrt()) / 2.0).abs() <= 1e-15);
    println!("criterion 05: PASS - anchors map to A, B, C; alpha = (3-sqrt 5)/2");
}

#[test]
fn c06_closed_form_matches_exhaustive_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    for _ in 0..1000 {
        let t = sorted_triple(&mut rng);
        let probs = ProbabilityVector::from_slice(&t).unwrap();
        let best = classify(&probs).unwrap().value;
        let min_phi = SETS_12
            .iter()
            .map(|s| s.phi(&probs).unwrap())
            .min_by(|x, y| x.partial_cmp(y).unwrap())
            .unwrap();
        assert!(
            (best - (1.0 - min_phi)).abs() <= 1e-12,
            "disagreement at {t:?}"
        );
    }
    println!(
        "criterion 06: PASS - max(psi1,psi2,psi3) = 1 - min mass over 324 sets on 1000 samples"
    );
}

#[test]
fn c07_psi_factorization_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC7);
    let mut checked = 0;
    while checked < 10_000 {
        let p: f64 = rng.gen_range(1.0 / 3.0..1.0);
        let lo = (1.0 - 2.0 * p).max(0.0);
        let hi = (1.0 - p) / 2.0;
        if hi <= lo {
            continue;
        }
        let r = rng.gen_range(lo..=hi);
        let q = 1.0 - p - r;
        let psi1 = psi(1, &p, &r).unwrap();
        let psi2 = psi(2, &p, &r).unwrap();
        let psi3 = psi(3, &p, &r).unwrap();
        let id12 = (p + 2.0 * r - 1.0) * ((1.0 - p) * (1.0 - p) - 2.0 * p * r);
        let id32 = (q - p) * (2.0 * p * r + 2.0 * p - 1.0);
        let id13 = -2.0 * p * r * r + (4.0 * p * p - 2.0 * p + 1.0) * r + p * (p * p + p - 1.0);
        assert!((psi1 - psi2 - id12).abs() <= 1e-12, "p={p} r={r}");
        assert!((psi3 - psi2 - id32).abs() <= 1e-12, "p={p} r={r}");
        assert!((psi1 - psi3 - id13).abs() <= 1e-12, "p={p} r={r}");
        checked += 1;
    }
    println!("criterion 07: PASS - psi difference factorizations hold on 10000 samples");
}

#[test]
fn c08_strategy_exactness_all_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC8);
    let probs: Vec<ProbabilityVector<f64>> = (0..20)
        .map(|_| ProbabilityVector::from_slice(&sorted_triple(&mut rng)).unwrap())
        .collect();
    for set in SETS_12.iter() {
        let matrix = build_decision_matrix(set).unwrap();
        for pv in &probs {
            let report = evaluate_exact(&matrix, pv).unwrap();
            let phi = set.phi(pv).unwrap();
            assert!((report.win_probability - (1.0 - phi)).abs() <= 1e-12);
            assert_eq!(report.losing, set.codes());
        }
    }
    println!(
        "criterion 08: PASS - win probability is 1 - mass and the loss set is the adequate set, \
         324 sets x 20 distributions"
    );
}

#[test]
fn c09_published_decision_matrices() {
    let expected: [(&[Code; 12], &str); 7] = [
        (
            &OPTIMAL_SETS_A[0],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t0\t\t\t\t2\t2\t\t2\t2\n\
             2\t\t0\t0\t\t0\t0\t1\t\t\n\
             3\t\t0\t0\t\t0\t0\t1\t\t",
        ),
        (
            &OPTIMAL_SETS_A[1],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t\t\t1\t0\t0\t\t0\t0\t\n\
             2\t\t\t1\t0\t0\t\t0\t0\t\n\
             3\t0\t\t\t\t2\t2\t\t2\t2",
        ),
        (
            &OPTIMAL_SETS_A[2],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t\t0\t0\t\t0\t0\t1\t\t\n\
             2\t0\t\t\t\t2\t2\t\t2\t2\n\
             3\t\t\t1\t0\t0\t\t0\t0\t",
        ),
        (
            &OPTIMAL_SETS_B[0],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t0\t\t\t\t1\t1\t\t1\t1\n\
             2\t\t0\t0\t1\t\t\t\t0\t0\n\
             3\t\t0\t0\t1\t\t\t\t0\t0",
        ),
        (
            &OPTIMAL_SETS_B[1],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t\t1\t\t0\t\t0\t0\t\t0\n\
             2\t\t1\t\t0\t\t0\t0\t\t0\n\
             3\t0\t\t\t\t1\t1\t\t1\t1",
        ),
        (
            &OPTIMAL_SETS_B[2],
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t\t0\t0\t1\t\t\t\t0\t0\n\
             2\t0\t\t\t\t1\t1\t\t1\t1\n\
             3\t\t1\t\t0\t\t0\t0\t\t0",
        ),
        (
            &representative_set(Region::C),
            "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
             1\t1\t\t\t\t0\t0\t\t0\t0\n\
             2\t1\t\t\t\t0\t0\t\t0\t0\n\
             3\t1\t\t\t\t0\t0\t\t0\t0",
        ),
    ];
    for (codes, grid) in expected {
        let set = AdequateSet::new(shape33(), codes.to_vec()).unwrap();
        let matrix = build_decision_matrix(&set).unwrap();
        assert_eq!(matrix.render_grid(), grid, "grid mismatch for {codes:?}");
    }
    println!("criterion 09: PASS - all seven published decision matrices render byte-for-byte");
}

#[test]
fn c10_symmetric_case_exact() {
    let uniform: ProbabilityVector<Rational> = ProbabilityVector::uniform(3);
    for set in SETS_12.iter() {
        assert_eq!(set.phi(&uniform).unwrap(), exact(12, 27));
    }
    let solution = solve(&uniform, SolveMode::Exhaustive).unwrap();
    assert_eq!(solution.value, exact(5, 9));
    assert_eq!(solution.optimal.len(), 324);
    println!("criterion 10: PASS - all 324 sets tie at 12/27; solved value exactly 5/9");
}

#[test]
fn c11_no_size_11_set_and_min_das() {
    assert!(enumerate_adequate_sets(&shape33(), 11).unwrap().is_empty());
    let (das, witness) = find_min_das(&shape33()).unwrap();
    assert_eq!(das, 12);
    assert!(is_adequate(&shape33(), witness.codes()).unwrap());
    println!("criterion 11: PASS - exhaustive scan finds no size-11 set; minimal size is 12");
}

#[test]
fn c12_two_color_covering_numbers() {
    let expected: [(usize, usize, Rational); 4] = [
        (2, 2, exact(1, 2)),
        (3, 2, exact(3, 4)),
        (4, 4, exact(3, 4)),
        (5, 7, exact(25, 32)),
    ];
    for (players, want_das, want_value) in expected {
        let shape = GameShape::new(players, 2).unwrap();
        let (das, witness) = find_min_das(&shape).unwrap();
        assert_eq!(das, want_das, "N={players}");
        let uniform: ProbabilityVector<Rational> = ProbabilityVector::uniform(2);
        let value = Rational::ratio(1, 1) - witness.phi(&uniform).unwrap();
        assert_eq!(value, want_value, "N={players}");
    }
    println!("criterion 12: PASS - covering numbers 2,2,4,7 and winning probabilities 1/2, 3/4, 3/4, 25/32");
}

#[test]
fn c13_complexity_report() {
    let report = complexity_report(3, 3, 12).unwrap();
    assert_eq!(report.brute_force.to_string(), "18014398509481984");
    assert_eq!(report.reduced.to_string(), "281474976710656");
    assert_eq!(report.adequate.to_string(), "17383860");
    assert_eq!(format_scientific_6(&report.brute_force), "1.80144E+16");
    assert_eq!(format_scientific_6(&report.reduced), "2.81475E+14");
    println!("criterion 13: PASS - 4^27 = 1.80144E+16, 4^24 = 2.81475E+14, C(27,12) = 17383860");
}

#[test]
fn c14_monte_carlo_within_four_sigma() {
    let anchors: [(Region, [f64; 3], u64); 3] = [
        (Region::A, [0.7, 0.2, 0.1], 1401),
        (Region::B, [0.5, 1.0 / 3.0, 1.0 / 6.0], 1402),
        (Region::C, [0.35, 0.33, 0.32], 1403),
    ];
    for (region, probs, seed) in anchors {
        let set = AdequateSet::new(shape33(), representative_set(region).to_vec()).unwrap();
        let matrix = build_decision_matrix(&set).unwrap();
        let pv = ProbabilityVector::from_slice(&probs).unwrap();
        let exact_value = evaluate_exact(&matrix, &pv).unwrap().win_probability;
        let sim = simulate(&matrix, &pv, 1_000_000, seed).unwrap();
        assert!(
            (sim.estimate - exact_value).abs() <= 4.0 * sim.std_error,
            "region {region}: estimate {} vs exact {exact_value} (stderr {})",
            sim.estimate,
            sim.std_error
        );
    }
    println!("criterion 14: PASS - million-trial simulations land within 4 standard errors");
}
