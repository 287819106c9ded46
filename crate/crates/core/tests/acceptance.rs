//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every tolerance here is exact integer equality; nothing is calibrated
//! at runtime.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use anosovcert::centralizer::{
    half_order_is_minus_identity, power_to_minus_identity,
};
use anosovcert::certifier::{reproduce_paper, CertifyOptions};
use anosovcert::intmat::IntMatrix;
use anosovcert::numfield::quadratic::quadratic_fundamental_unit;
use anosovcert::periodic::{
    affine_fixed_points, involution_orbit_check, per_count, threshold, AffineFixedPoints,
    FinitePermutation, InvolutionVerdict,
};
use anosovcert::polyalg::{self, IntPoly};

/// Criterion 1: the nine built-in example rows reproduce with exact integer
/// equality, via the reproduce-paper harness.
#[test]
fn criterion_1_example_table_reproduces() {
    let rows = reproduce_paper(&CertifyOptions::default(), false);
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert!(
            row.pass,
            "row {} failed: {:?}",
            row.label,
            row.checks
                .iter()
                .filter(|c| !c.pass)
                .collect::<Vec<_>>()
        );
    }
    println!(
        "criterion 1 PASS: {}/9 example rows reproduce exactly",
        rows.iter().filter(|r| r.pass).count()
    );
}

/// Criterion 2: |Per^k(A)| agrees with the resultant route and with a
/// brute-force kernel count mod |det(A^k - I)| on >= 200 random hyperbolic
/// instances (n <= 3, k <= 7, |det(A^k - I)| <= 10^4).
#[test]
fn criterion_2_per_count_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE55);
    let mut tested = 0u32;
    let mut attempts = 0u32;
    while tested < 200 && attempts < 100_000 {
        attempts += 1;
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let a = random_unimodular(&mut rng, n);
        let p = a.char_poly();
        if p.has_zero_constant_term() {
            continue;
        }
        if polyalg::has_unimodular_root(&p).unwrap_or(true) {
            continue;
        }
        let k = rng.gen_range(1..=7u64);
        let count = match per_count(&a, k) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let d = match count.to_u64() {
            Some(d) if d >= 1 && d <= 10_000 => d,
            _ => continue,
        };
        // keep the exhaustive enumeration affordable
        let work = (d as u128).pow(n as u32);
        if work > 100_000_000 {
            continue;
        }
        // resultant route
        let res = polyalg::resultant(&p, &IntPoly::x_pow_minus_one(k as usize))
            .unwrap()
            .abs();
        assert_eq!(res, count, "resultant mismatch for {} k={}", a.to_inline(), k);
        // brute-force kernel count: x in (Z/D)^n with (A^k - I)x = 0 mod D
        let m = a
            .pow(k as i64)
            .unwrap()
            .sub(&IntMatrix::identity(n));
        let mm: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = m.get(i, j) % BigInt::from(d);
                        let e = e.to_i64().unwrap();
                        e.rem_euclid(d as i64)
                    })
                    .collect()
            })
            .collect();
        let kernel = kernel_count(&mm, d as i64, n);
        assert_eq!(
            BigInt::from(kernel),
            count,
            "kernel count mismatch for {} k={}",
            a.to_inline(),
            k
        );
        tested += 1;
    }
    assert!(tested >= 200, "only {} instances generated", tested);
    println!(
        "criterion 2 PASS: {} instances agree across determinant, resultant, and kernel count",
        tested
    );
}

fn kernel_count(m: &[Vec<i64>], d: i64, n: usize) -> u64 {
    let mut count = 0u64;
    let mut x = vec![0i64; n];
    loop {
        let mut ok = true;
        for row in m {
            let mut acc = 0i64;
            for (j, &c) in row.iter().enumerate() {
                acc = (acc + c * x[j]) % d;
            }
            if acc != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            x[i] += 1;
            if x[i] < d {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    // product of elementary transvections and swaps
    let mut m = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(3..=8) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-2i64..=2);
        let mut entries: Vec<BigInt> = IntMatrix::identity(n).entries().to_vec();
        entries[i * n + j] = BigInt::from(c);
        let e = IntMatrix::new(n, entries).unwrap();
        m = m.mul(&e);
    }
    m
}

/// Criterion 3: 500 random matrices (n <= 5, entries |.| <= 20) satisfy
/// every Smith-normal-form invariant.
#[test]
fn criterion_3_snf_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5011D);
    for iter in 0..500 {
        let n = rng.gen_range(1..=5);
        let mut entries: Vec<BigInt> = (0..n * n)
            .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
            .collect();
        if iter % 7 == 0 && n >= 2 {
            // duplicate a row: singular cases must hold too
            for j in 0..n {
                entries[(n - 1) * n + j] = entries[j].clone();
            }
        }
        let m = IntMatrix::new(n, entries).unwrap();
        let snf = m.smith_normal_form();
        for i in 0..n {
            assert!(!snf.d[i].is_negative(), "negative invariant factor");
            if i + 1 < n && !snf.d[i].is_zero() {
                assert!(
                    (&snf.d[i + 1] % &snf.d[i]).is_zero(),
                    "divisibility chain broken"
                );
            }
            if snf.d[i].is_zero() && i + 1 < n {
                assert!(snf.d[i + 1].is_zero(), "zero must trail");
            }
        }
        assert!(snf.u.det().abs().is_one(), "U not unimodular");
        assert!(snf.v.det().abs().is_one(), "V not unimodular");
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.diagonal_matrix());
        let prod: BigInt = snf.d.iter().product();
        assert_eq!(prod, m.det().abs(), "product of invariant factors");
    }
    println!("criterion 3 PASS: 500 random matrices satisfy all SNF invariants");
}

/// Criterion 4: explicit rotation models. For orders 2, 4, 8, 16 every
/// power reaches -I; for orders 6, 10, 12 the power l = 2^d never does;
/// the half-order power equals -I whenever -I lies in the group.
#[test]
fn criterion_4_cyclic_group_lemma_suite() {
    let model = |m: u32| -> IntMatrix {
        if m == 2 {
            IntMatrix::minus_identity(2)
        } else {
            IntMatrix::companion(&cyclotomic_for_test(m)).unwrap()
        }
    };
    for m in [2u64, 4, 8, 16] {
        let j = model(m as u32);
        assert!(half_order_is_minus_identity(&j).unwrap(), "order {}", m);
        for l in 1..m {
            assert!(
                power_to_minus_identity(&j, l).unwrap().is_some(),
                "order {} power {} must reach -I",
                m,
                l
            );
        }
    }
    for (m, l) in [(6u32, 2u64), (10, 2), (12, 4)] {
        let j = model(m);
        assert!(half_order_is_minus_identity(&j).unwrap(), "order {}", m);
        assert_eq!(
            power_to_minus_identity(&j, l).unwrap(),
            None,
            "order {} power {} must not reach -I",
            m,
            l
        );
    }
    println!("criterion 4 PASS: rotation models of orders 2,4,8,16 and 6,10,12 behave as stated");
}

// The public API restricts cyclotomic orders to φ(m) <= 4; Φ_16 (degree 8)
// is reconstructed here by dividing x^16 - 1 by the lower factors.
fn cyclotomic_for_test(m: u32) -> IntPoly {
    if m != 16 {
        return polyalg::cyclotomic(m).unwrap();
    }
    let mut num = IntPoly::x_pow_minus_one(16);
    for d in [1u32, 2, 4, 8] {
        num = num.div_exact(&polyalg::cyclotomic(d).unwrap()).unwrap();
    }
    num
}

/// Criterion 5: exhaustive check over all commuting pairs (f, g) with
/// g² = id on ground sets of size <= 10 and p in {3, 5}: no counterexample
/// to the involution-orbit conclusion.
#[test]
fn criterion_5_involution_orbit_exhaustive() {
    let mut pairs: u64 = 0;
    for n in 1..=10usize {
        enumerate_involutions(n, &mut |g_map| {
            let g = FinitePermutation::new(g_map.to_vec()).unwrap();
            let fixed: Vec<usize> = (0..n).filter(|&i| g_map[i] == i).collect();
            let pairs_list: Vec<(usize, usize)> = (0..n)
                .filter(|&i| g_map[i] > i)
                .map(|i| (i, g_map[i]))
                .collect();
            enumerate_commuting(n, &fixed, &pairs_list, &mut |f_map| {
                let f = FinitePermutation::new(f_map.to_vec()).unwrap();
                debug_assert!(f.commutes_with(&g));
                for p in [3u64, 5] {
                    let verdict = involution_orbit_check(&f, &g, p).unwrap();
                    assert!(
                        !matches!(verdict, InvolutionVerdict::CounterexampleFound { .. }),
                        "counterexample at n={} p={} f={:?} g={:?}",
                        n,
                        p,
                        f_map,
                        g_map
                    );
                }
                pairs += 2;
            });
        });
    }
    println!(
        "criterion 5 PASS: {} (pair, prime) checks, no counterexample",
        pairs
    );
}

/// All involutions (including the identity) of {0..n-1}.
fn enumerate_involutions(n: usize, cb: &mut impl FnMut(&[usize])) {
    let mut g: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(i: usize, n: usize, used: &mut Vec<bool>, g: &mut Vec<usize>, cb: &mut impl FnMut(&[usize])) {
        let mut i = i;
        while i < n && used[i] {
            i += 1;
        }
        if i == n {
            cb(g);
            return;
        }
        // i fixed
        used[i] = true;
        g[i] = i;
        rec(i + 1, n, used, g, cb);
        used[i] = false;
        // i paired with a later unused j
        for j in i + 1..n {
            if used[j] {
                continue;
            }
            used[i] = true;
            used[j] = true;
            g[i] = j;
            g[j] = i;
            rec(i + 1, n, used, g, cb);
            used[i] = false;
            used[j] = false;
        }
        g[i] = i;
    }
    rec(0, n, &mut used, &mut g, cb);
}

/// All permutations commuting with the involution described by its fixed
/// points and 2-cycles: a permutation of the fixed points, a permutation of
/// the cycles, and an orientation bit per cycle.
fn enumerate_commuting(
    n: usize,
    fixed: &[usize],
    pairs: &[(usize, usize)],
    cb: &mut impl FnMut(&[usize]),
) {
    let a = fixed.len();
    let b = pairs.len();
    let mut sigma: Vec<usize> = (0..a).collect();
    let mut f = vec![0usize; n];
    heap_permutations(&mut sigma, &mut |sigma| {
        let mut pi: Vec<usize> = (0..b).collect();
        heap_permutations(&mut pi, &mut |pi| {
            for mask in 0u32..(1 << b) {
                for (i, &fx) in fixed.iter().enumerate() {
                    f[fx] = fixed[sigma[i]];
                }
                for (i, &(x, y)) in pairs.iter().enumerate() {
                    let (tx, ty) = pairs[pi[i]];
                    if mask & (1 << i) == 0 {
                        f[x] = tx;
                        f[y] = ty;
                    } else {
                        f[x] = ty;
                        f[y] = tx;
                    }
                }
                cb(&f);
            }
        });
    });
}

fn heap_permutations(items: &mut Vec<usize>, cb: &mut impl FnMut(&Vec<usize>)) {
    let n = items.len();
    fn rec(k: usize, items: &mut Vec<usize>, cb: &mut impl FnMut(&Vec<usize>)) {
        if k <= 1 {
            cb(items);
            return;
        }
        for i in 0..k {
            rec(k - 1, items, cb);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    rec(n, items, cb);
}

/// Criterion 6: the continued-fraction unit engine reproduces the expected
/// fundamental units for D = 29, 5, 17, 13, 8, each certified fundamental
/// by bounded enumeration.
#[test]
fn criterion_6_quadratic_unit_engine() {
    // (t, u) with ε = (t + u√D)/2
    let cases: &[(i64, i64, i64)] = &[
        (29, 5, 1),  // (5+sqrt 29)/2
        (5, 1, 1),   // (1+sqrt 5)/2
        (17, 8, 2),  // 4+sqrt 17
        (13, 3, 1),  // (3+sqrt 13)/2
        (8, 2, 1),   // 1+sqrt 2
    ];
    for &(d, t, u) in cases {
        let unit = quadratic_fundamental_unit(&BigInt::from(d)).unwrap();
        assert_eq!(
            unit.half_coords(),
            (BigInt::from(t), BigInt::from(u)),
            "unit for disc {}",
            d
        );
        // norm ±1 and u > 1
        let norm = unit.norm();
        assert!(norm.abs() == BigRational::one(), "norm for disc {}", d);
        assert_eq!(
            unit.cmp_rational(&BigRational::one()),
            std::cmp::Ordering::Greater
        );
        // bounded-enumeration fundamentality: no unit strictly between 1 and ε
        fundamentality_oracle(d, &unit);
    }
    println!("criterion 6 PASS: fundamental units for D = 29, 5, 17, 13, 8 verified");
}

fn fundamentality_oracle(d: i64, eps: &anosovcert::numfield::quadratic::QuadUnit) {
    let dd = BigInt::from(d);
    let (t, u) = eps.half_coords();
    let y_cap: BigInt =
        (&t + BigInt::from(2) + &u * (dd.sqrt() + BigInt::one())) / (dd.sqrt() * 2) + 2;
    let mut y = -y_cap.clone();
    while y <= y_cap {
        for x in -300i64..=300 {
            let cand = anosovcert::numfield::quadratic::QuadUnit {
                a: BigInt::from(x),
                b: y.clone(),
                disc: dd.clone(),
            };
            if cand.norm().abs() != BigRational::one() {
                continue;
            }
            if cand.cmp_rational(&BigRational::one()) != std::cmp::Ordering::Greater {
                continue;
            }
            // cand > 1 must not be strictly smaller than ε
            let (ct, cu) = cand.half_coords();
            let diff_t = BigRational::from_integer(&t - &ct);
            let diff_u = BigRational::from_integer(&u - &cu);
            let sign = anosovcert::numfield::quadratic::sign_a_plus_b_sqrt_d(
                &diff_t, &diff_u, &dd,
            );
            assert!(sign <= 0, "unit below fundamental unit for disc {}", d);
        }
        y += 1;
    }
}

/// Criterion 7: affine_fixed_points(-I, c) = 2^n for 100 random rational c
/// in each of n = 2, 3, 4 — equality in the shifted-involution bound.
#[test]
fn criterion_7_affine_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAFF1);
    for n in 2..=4usize {
        let minus_i = IntMatrix::minus_identity(n);
        for _ in 0..100 {
            let c: Vec<BigRational> = (0..n)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-50i64..=50)),
                        BigInt::from(rng.gen_range(1i64..=50)),
                    )
                })
                .collect();
            assert_eq!(
                affine_fixed_points(&minus_i, &c),
                AffineFixedPoints::Count(threshold(n))
            );
        }
    }
    println!("criterion 7 PASS: |fixed points of -I + c| = 2^n for 300 random shifts");
}

/// Criterion 8: the headline conclusion lives in diffeomorphism space and
/// is not measured here; the certificate records the implication (the open
/// set names) and the certification level instead. This test pins that
/// recording down.
#[test]
fn criterion_8_scope_note_recorded() {
    use anosovcert::certifier::{certify, render_report, ReportFormat, Verdict};
    let a = IntMatrix::from_i64(&[&[0, 1], &[1, 5]]);
    let cert = certify(&a, None, &CertifyOptions::default()).unwrap();
    assert!(matches!(cert.verdict, Verdict::Applicable { .. }));
    let human = render_report(&cert, ReportFormat::Human);
    assert!(human.contains("U_1"));
    assert!(human.contains("trivial centralizer"));
    assert!(human.contains("certification level"));
    // inapplicable outputs claim nothing beyond ruling the approaches out
    let b = IntMatrix::from_i64(&[&[2, 5], &[5, 12]]);
    let cert_b = certify(&b, None, &CertifyOptions::default()).unwrap();
    let human_b = render_report(&cert_b, ReportFormat::Human);
    assert!(human_b.contains("no claim is made"));
    println!(
        "criterion 8 PASS: certificates record the open-set implication and certification level"
    );
}
