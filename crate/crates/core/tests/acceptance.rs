//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p hermlcd --test acceptance`. Set `HERMLCD_LONG=1`
//! to add the exact distance of the length-129 code (hours).

#![allow(clippy::manual_is_multiple_of)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hermlcd::constructions::{all_hlcd_length_predicate, construct_g1, construct_g2, construct_hop, enumerate_hlcd};
use hermlcd::cosets::{
    claimed_leader_exceptions_third, is_leader_in_range, j_intersection_size_formula, j_sets, leader_exceptions_third,
    leader_window, CosetTable, IntersectionKind,
};
use hermlcd::cyclic::{Divisors, DistanceMethod, DEFAULT_BUDGET};
use hermlcd::gf::Elem;
use hermlcd::poly::factor_split;
use hermlcd::{BigFieldContext, CyclicCode, Field, Matrix, OdsmInstance};

struct Fail(String);

impl From<hermlcd::Error> for Fail {
    fn from(e: hermlcd::Error) -> Self {
        Fail(format!("error {}: {e}", e.code()))
    }
}

type Outcome = Result<String, Fail>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Fail> {
    if ok {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, Fail> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {:.2} s, limit {:.0} s", t.as_secs_f64(), limit.as_secs_f64()))?;
    Ok(t)
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// 1 ------------------------------------------------------------------

fn hop_family() -> Outcome {
    let t = Instant::now();
    let r = construct_hop(1)?.with_distance(DistanceMethod::MessageEnum, DEFAULT_BUDGET)?;
    ensure((r.n(), r.k_actual, r.d_exact, r.hlcd) == (9, 2, Some(6), true), || {
        format!("t=1 gave [{}, {}, {:?}], hlcd {}", r.n(), r.k_actual, r.d_exact, r.hlcd)
    })?;
    let t1 = within(t, secs(1), "[9,2,6]")?;

    let t = Instant::now();
    let r = construct_hop(2)?.with_distance(DistanceMethod::MacWilliams, DEFAULT_BUDGET)?;
    ensure((r.n(), r.k_actual, r.d_exact, r.hlcd) == (33, 22, Some(6), true), || {
        format!("t=2 gave [{}, {}, {:?}], hlcd {}", r.n(), r.k_actual, r.d_exact, r.hlcd)
    })?;
    let t2 = within(t, secs(120), "[33,22,6]")?;

    let t = Instant::now();
    let r = construct_hop(3)?;
    ensure((r.n(), r.k_actual, r.hlcd) == (129, 114, true) && r.d_bound_actual >= 6, || {
        format!("t=3 gave [{}, {}], bound {}, hlcd {}", r.n(), r.k_actual, r.d_bound_actual, r.hlcd)
    })?;
    let t3 = within(t, secs(1), "[129,114]")?;

    let mut long = String::from("exact d of [129,114] skipped (set HERMLCD_LONG)");
    if std::env::var_os("HERMLCD_LONG").is_some() {
        let r = r.with_distance(DistanceMethod::MacWilliams, 1 << 31)?;
        ensure(r.d_exact == Some(6), || format!("[129,114] exact d = {:?}", r.d_exact))?;
        long = "[129,114,6] exact".into();
    }
    Ok(format!(
        "[9,2,6] {:.2}s, [33,22,6] via MacWilliams {:.2}s, [129,114] bound >= 6 HLCD {:.2}s; {long}",
        t1.as_secs_f64(),
        t2.as_secs_f64(),
        t3.as_secs_f64()
    ))
}

// 2 ------------------------------------------------------------------

fn hlcd_count() -> Outcome {
    let mut lengths = 0;
    for (q, max_n) in [(2u64, 33usize), (3, 20)] {
        for n in (1..=max_n).filter(|&n| n as u64 % q != 0) {
            let ctx = BigFieldContext::for_q(q, n)?;
            let split = factor_split(&ctx)?;
            let expected = 1u64 << (split.u() + split.v());
            let mut found = 0u64;
            for code in Divisors::new(ctx)? {
                let g = code?.generator().clone();
                if g.conj_reciprocal()? == g {
                    found += 1;
                }
            }
            ensure(found == expected, || format!("Q={} n={n}: {found} self-conjugate-reciprocal divisors, 2^(u+v) = {expected}", q * q))?;
            lengths += 1;
        }
    }
    Ok(format!("count = 2^(u+v) at {lengths} lengths (Q=4, n<=33; Q=9, n<=20)"))
}

// 3 ------------------------------------------------------------------

fn criteria_agree() -> Outcome {
    let (mut checked, mut lcd) = (0, 0);
    for n in [7usize, 9, 15, 21, 31] {
        let ctx = BigFieldContext::for_q(2, n)?;
        for code in Divisors::new(ctx)? {
            let code = code?;
            let (a, b) = (code.lcd_by_polynomial()?, code.lcd_by_defining_set()?);
            ensure(a == b, || format!("n={n} g={:?}: polynomial {a}, defining set {b}", code.generator().coeffs()))?;
            checked += 1;
            lcd += a as usize;
        }
    }
    Ok(format!("{checked} divisors agree ({lcd} Hermitian LCD)"))
}

// 4 ------------------------------------------------------------------

fn non_hlcd_divisors(n: usize) -> Result<(u64, u64, Option<Vec<usize>>), Fail> {
    let ctx = BigFieldContext::for_q(2, n)?;
    let (mut total, mut bad, mut witness) = (0, 0, None);
    for code in Divisors::new(ctx.clone())? {
        let code = code?;
        total += 1;
        if !code.is_hermitian_lcd()? {
            bad += 1;
            witness.get_or_insert_with(|| code.defining_set().leaders(ctx.table()));
        }
    }
    Ok((total, bad, witness))
}

fn length_predicate() -> Outcome {
    let mut parts = Vec::new();
    let mut wrong = Vec::new();
    for n in [3usize, 9, 33, 65] {
        let pred = all_hlcd_length_predicate(n as u64, 2)?;
        let (total, bad, _) = non_hlcd_divisors(n)?;
        ensure(pred == (bad == 0), || format!("n={n}: predicate {pred} but {bad} of {total} divisors non-HLCD"))?;
        if pred {
            parts.push(format!("n={n}: predicate true, all {total} HLCD"));
        } else {
            wrong.push(format!("n={n}: predicate false (2 has even-power -1 only), {bad} of {total} divisors non-HLCD"));
        }
    }
    for n in [5usize, 17] {
        ensure(!all_hlcd_length_predicate(n as u64, 2)?, || format!("predicate true at n={n}"))?;
        let (_, _, witness) = non_hlcd_divisors(n)?;
        let w = witness.ok_or_else(|| Fail(format!("n={n}: every divisor is HLCD")))?;
        parts.push(format!("n={n}: predicate false, non-HLCD leaders {w:?}"));
    }
    // Next length of the form 2^odd + 1; too many divisors to list, but with
    // no conjugate pairs every divisor is its own conjugate reciprocal.
    let ctx = BigFieldContext::for_q(2, 129)?;
    let split = factor_split(&ctx)?;
    ensure(all_hlcd_length_predicate(129, 2)? && split.v() == 0, || format!("n=129: v = {}", split.v()))?;
    parts.push(format!("n=129: predicate true, u = {}, v = 0", split.u()));
    if wrong.is_empty() {
        Ok(parts.join("; "))
    } else {
        Err(Fail(format!("{}; listed as all-HLCD but {}", parts.join("; "), wrong.join("; "))))
    }
}

// 5 ------------------------------------------------------------------

fn g1_dimensions() -> Outcome {
    let mut checked = 0;
    let runs: [(u64, u32, &[u64]); 5] = [(2, 2, &[1, 3]), (2, 3, &[1, 3]), (3, 2, &[1, 2, 4]), (3, 3, &[1, 2, 4]), (3, 4, &[1, 2, 4])];
    for (q, m, es) in runs {
        let cap = (q * q).pow(m.div_ceil(2)) as usize + 1;
        for &e in es {
            for delta in 2..=cap {
                let r = construct_g1(q, m, delta, e)?;
                ensure(r.k_formula == Some(r.k_actual as i64), || {
                    format!("q={q} m={m} e={e} delta={delta}: formula {:?}, actual {}", r.k_formula, r.k_actual)
                })?;
                ensure(r.hlcd, || format!("q={q} m={m} e={e} delta={delta}: not HLCD"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (q, m, e, delta) points, k_formula = k_actual, all HLCD"))
}

// 6 ------------------------------------------------------------------

fn g2_dimensions() -> Outcome {
    let mut mismatches = BTreeSet::new();
    let mut checked = 0;
    for m in [2u32, 4, 5] {
        for delta in 2..=1usize << m {
            let r = construct_g2(m, delta)?;
            ensure(r.hlcd, || format!("m={m} delta={delta}: not HLCD"))?;
            if r.k_formula != Some(r.k_actual as i64) {
                mismatches.insert((m, delta, r.k_formula, r.k_actual));
            }
            checked += 1;
        }
    }
    let keys: BTreeSet<(u32, usize)> = mismatches.iter().map(|&(m, d, _, _)| (m, d)).collect();
    ensure(keys == BTreeSet::from([(2, 4)]), || format!("mismatch set {mismatches:?}"))?;
    let (_, _, kf, ka) = mismatches.first().copied().expect("one mismatch");
    Ok(format!(
        "{checked} points; only deviation m=2 delta=4 (formula {}, actual {ka}), as recorded",
        kf.map_or("-".into(), |k| k.to_string())
    ))
}

// 7 ------------------------------------------------------------------

fn intersection_formulas() -> Outcome {
    let mut checked = 0;
    for (q, m) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let big_q = q * q;
        let n = big_q.pow(m) as usize - 1;
        let table = CosetTable::new(n, big_q)?;
        let cap = big_q.pow(m.div_ceil(2)) as usize + 1;
        for e in (1..=q + 1).filter(|e| (q + 1) % e == 0) {
            let nh = n / e as usize;
            for delta in 2..=cap {
                let formula = j_intersection_size_formula(IntersectionKind::Primitive, q, m, delta as u64)?;
                let (p, mi) = j_sets(&table, nh, q, delta)?;
                let actual = p.intersection(&mi).len() as u64;
                ensure(formula == actual, || format!("primitive q={q} m={m} e={e} delta={delta}: formula {formula}, sets {actual}"))?;
                checked += 1;
            }
        }
    }
    for (m, kind) in [(4u32, IntersectionKind::ThirdEven), (5, IntersectionKind::ThirdOdd)] {
        let n = ((1usize << (2 * m)) - 1) / 3;
        let table = CosetTable::new(n, 4)?;
        for delta in 2..=1usize << m {
            let formula = j_intersection_size_formula(kind, 2, m, delta as u64)?;
            let (p, mi) = j_sets(&table, 0, 2, delta)?;
            let actual = p.intersection(&mi).len() as u64;
            ensure(formula == actual, || format!("quaternary m={m} delta={delta}: formula {formula}, sets {actual}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (kind, q, m, offset, delta) points agree"))
}

// 8 ------------------------------------------------------------------

fn leader_checks() -> Outcome {
    let mut window_checks = 0;
    for n in [9usize, 33, 63, 255] {
        let table = CosetTable::new(n, 4)?;
        let hi = leader_window(n as u64, 4)?.ok_or_else(|| Fail(format!("n={n} outside the window hypothesis")))?;
        for s in 1..=hi as usize {
            let c = is_leader_in_range(&table, s)?;
            let pred = c.prediction.clone().ok_or_else(|| Fail(format!("n={n} s={s}: no prediction")))?;
            ensure(pred.is_leader.is_none_or(|l| l == c.is_leader) && pred.coset_size == c.coset_size, || {
                format!("n={n} s={s}: predicted {pred:?}, scan gives leader {} size {}", c.is_leader, c.coset_size)
            })?;
            window_checks += 1;
        }
    }
    let mut seconds = Vec::new();
    for m in [2u32, 4, 6, 8, 5, 7, 9] {
        let found = leader_exceptions_third(m)?;
        let claimed = claimed_leader_exceptions_third(m)?;
        ensure(found == claimed, || format!("m={m}: scan {found:?}, claimed {claimed:?}"))?;
        if m % 2 == 1 {
            seconds.push(format!("m={m}: {}", found[1]));
        }
    }
    Ok(format!(
        "{window_checks} window positions; exceptions match for m in 2,4,6,8,5,7,9; second odd exception (2^(m+1)+2^(m-1)+1)/3 = {}",
        seconds.join(", ")
    ))
}

// 9 ------------------------------------------------------------------

/// Renders GF(4) vectors with the printed symbols.
fn symbols(f: &Field, v: &[Elem]) -> String {
    let w = f.generator();
    let w2 = f.mul(w, w);
    let name = |a: Elem| match a {
        0 => "0",
        1 => "1",
        a if a == w => "w",
        a if a == w2 => "w^2",
        _ => "?",
    };
    format!("({})", v.iter().map(|&a| name(a)).collect::<Vec<_>>().join(","))
}

fn matrix_symbols(f: &Field, m: &Matrix) -> String {
    m.to_rows().iter().map(|r| symbols(f, r)).collect::<Vec<_>>().join("\n")
}

fn parse_symbols(f: &Field, s: &str) -> Vec<Elem> {
    let w = f.generator();
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|t| match t {
            "0" => 0,
            "1" => 1,
            "w" => w,
            "w^2" => f.mul(w, w),
            other => panic!("bad symbol {other}"),
        })
        .collect()
}

const PRINTED_G: &str = "(1,1,0,1,1,0,1,1,0)\n(0,1,1,0,1,1,0,1,1)";
const PRINTED_H: &str = "(1,1,1,0,0,0,0,0,0)\n(0,1,1,1,0,0,0,0,0)\n(0,0,1,1,1,0,0,0,0)\n(0,0,0,1,1,1,0,0,0)\n\
                         (0,0,0,0,1,1,1,0,0)\n(0,0,0,0,0,1,1,1,0)\n(0,0,0,0,0,0,1,1,1)";
const PRINTED_Z: &str = "(0,w^2,w^2,0,w,w^2,0,w^2,w^2)";
const PRINTED_E1: &str = "(w,0,w,w,0,w,w,0,w)";
const PRINTED_E2: &str = "(0,1,0,0,1,0,0,0,0)";
const PRINTED_Y2: &str = "(1,0,0,1,1,1,1)";
const PRINTED_GEN: &str = "X^7 + X^6 + X^4 + X^3 + X + 1";

fn poly_text(coeffs: &[Elem]) -> String {
    let terms: Vec<String> = (0..coeffs.len())
        .rev()
        .filter(|&i| coeffs[i] != 0)
        .map(|i| match (i, coeffs[i]) {
            (0, _) => "1".to_string(),
            (1, 1) => "X".to_string(),
            (i, 1) => format!("X^{i}"),
            (i, c) => format!("{c}X^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn odsm_golden() -> Outcome {
    let code = construct_hop(1)?.code;
    let f = code.field().clone();
    let w = f.generator();
    ensure(f.add(f.add(f.mul(w, w), w), 1) == 0, || "w is not a root of X^2+X+1".into())?;
    ensure(poly_text(code.generator().coeffs()) == PRINTED_GEN, || format!("g = {}", poly_text(code.generator().coeffs())))?;
    let inst = OdsmInstance::setup(code)?;
    ensure(matrix_symbols(&f, inst.g()) == PRINTED_G, || format!("G =\n{}", matrix_symbols(&f, inst.g())))?;
    ensure(matrix_symbols(&f, inst.h()) == PRINTED_H, || format!("H =\n{}", matrix_symbols(&f, inst.h())))?;
    ensure(inst.g().mul(&inst.h().conj_transpose()?)?.is_zero(), || "G H^dagger != 0".into())?;

    // The printed y has six entries; n - k = 7 and only all-ones of length 7 reproduces z.
    let x = vec![1, w];
    let y = vec![1; 7];
    let z = inst.mask(&x, &y)?;
    ensure(symbols(&f, &z) == PRINTED_Z, || format!("z = {}", symbols(&f, &z)))?;
    ensure(inst.recover_x(&z)? == x && inst.recover_y(&z)? == y, || "recovery of (x, y) failed".into())?;

    let c1 = inst.inject_and_check(&z, &parse_symbols(&f, PRINTED_E1), &y)?;
    ensure(!c1.detected && c1.recovered_y == y, || format!("e1: {c1:?}"))?;
    let c2 = inst.inject_and_check(&z, &parse_symbols(&f, PRINTED_E2), &y)?;
    ensure(c2.detected && symbols(&f, &c2.recovered_y) == PRINTED_Y2, || format!("e2: {c2:?}"))?;
    Ok(format!("G, H, g, z reproduced; e1 undetected; e2 detected with y' = {PRINTED_Y2}"))
}

// 10 -----------------------------------------------------------------

const SWEEP_SEED: u64 = 0x0d5_2025;

fn fault_sweeps() -> Outcome {
    let r = construct_hop(1)?;
    let low = r.code.low_weight_search(DEFAULT_BUDGET)?;
    let d = low.distance.ok_or_else(|| Fail("[9,2]: no distance".into()))?;
    ensure(d == 6, || format!("[9,2] distance {d}"))?;
    let inst = OdsmInstance::setup(r.code.clone())?;
    let sweep = inst.detection_sweep(1..=5, d, DEFAULT_BUDGET, 0, SWEEP_SEED)?;
    let expected: u64 = (1..=5).map(|w| binom(9, w) * 3u64.pow(w as u32)).sum();
    ensure(sweep.rows.iter().all(|r| r.exhaustive), || "[9,2] sweep was not exhaustive".into())?;
    ensure(sweep.total() == expected && sweep.undetected() == 0, || {
        format!("[9,2] weights 1..5: {} faults, {} undetected, expected {expected}", sweep.total(), sweep.undetected())
    })?;
    let six = inst.detection_sweep(6..=6, d, DEFAULT_BUDGET, 0, SWEEP_SEED)?;
    let witness = low.witness.ok_or_else(|| Fail("[9,2]: no witness".into()))?;
    let z = inst.mask(&[1, 2], &[1; 7])?;
    let check = inst.inject_and_check(&z, &witness, &[1; 7])?;
    ensure(six.undetected() > 0 && !check.detected, || "[9,2]: no undetected weight-6 fault".into())?;

    let r = construct_hop(2)?;
    let bound = r.d_bound_actual;
    ensure(bound >= 6, || format!("[33,22] bound {bound}"))?;
    let inst = OdsmInstance::setup(r.code)?;
    let sweep = inst.detection_sweep(1..=2, bound, DEFAULT_BUDGET, 0, SWEEP_SEED)?;
    let totals: Vec<u64> = sweep.rows.iter().map(|r| r.total).collect();
    ensure(totals == [33 * 3, binom(33, 2) * 9] && sweep.undetected() == 0 && !sweep.sampled, || format!("[33,22] weights 1..2: {sweep:?}"))?;
    let missed = inst.sample_faults(3..=5, 1_000_000, SWEEP_SEED)?;
    ensure(missed == 0, || format!("[33,22]: {missed} of 10^6 sampled faults undetected"))?;
    Ok(format!(
        "[9,2]: {expected} faults of weight <= 5 all detected, {} undetected of weight 6; [33,22]: {} + {} exhaustive and 10^6 sampled (weights 3-5) all detected",
        six.undetected(),
        totals[0],
        totals[1]
    ))
}

// 11 -----------------------------------------------------------------

fn engines_agree() -> Outcome {
    let limit = 1u128 << 16;
    let mut compared = 0;
    for (q, max_n) in [(2u64, 21usize), (3, 21)] {
        for n in (2..=max_n).filter(|&n| n as u64 % q != 0) {
            let ctx = BigFieldContext::for_q(q, n)?;
            let big_q = (q * q) as u128;
            for code in enumerate_hlcd(ctx)? {
                let code: CyclicCode = code?;
                let (k, r) = (code.k() as u32, (n - code.k()) as u32);
                if code.is_degenerate() || big_q.pow(k) > limit || big_q.pow(r) > limit {
                    continue;
                }
                let direct = code.weight_enumerator(DEFAULT_BUDGET)?;
                let dual = code.weight_enumerator_via_dual(DEFAULT_BUDGET)?;
                ensure(direct == dual, || format!("Q={big_q} n={n} k={k}: enumerators differ"))?;
                let d = direct.min_distance();
                let a = code.min_distance(DistanceMethod::MessageEnum, DEFAULT_BUDGET)?.exact;
                let b = code.min_distance(DistanceMethod::MacWilliams, DEFAULT_BUDGET)?.exact;
                let low = code.low_weight_search(DEFAULT_BUDGET)?;
                let w = low.witness.as_ref().map(|w| w.iter().filter(|&&x| x != 0).count());
                let confirmed = match &low.witness {
                    Some(wit) => code.contains(wit)?,
                    None => false,
                };
                ensure(a == d && b == d && low.distance == d && w == d && confirmed, || {
                    format!("Q={big_q} n={n} k={k}: enum {a:?}, macwilliams {b:?}, low-weight {:?}, witness weight {w:?}", low.distance)
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} Hermitian LCD codes: message-enum = MacWilliams = low-weight (witness in code)"))
}

// --------------------------------------------------------------------

/// Criteria whose stated expectation is wrong. They still print FAIL with
/// the evidence, but do not set the exit status.
const KNOWN_FAILURES: &[(u32, &str)] = &[(4, "65 = 2^6 + 1 is not 2^odd + 1; see notes")];

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "hop family parameters", limit: secs(122), run: hop_family },
        Criterion { id: 2, name: "HLCD count 2^(u+v)", limit: secs(60), run: hlcd_count },
        Criterion { id: 3, name: "polynomial vs defining-set criterion", limit: secs(60), run: criteria_agree },
        Criterion { id: 4, name: "all-HLCD length predicate", limit: secs(60), run: length_predicate },
        Criterion { id: 5, name: "primitive family dimensions", limit: secs(300), run: g1_dimensions },
        Criterion { id: 6, name: "quaternary family dimensions", limit: secs(300), run: g2_dimensions },
        Criterion { id: 7, name: "J+ / J- intersection sizes", limit: secs(600), run: intersection_formulas },
        Criterion { id: 8, name: "coset leader window and exceptions", limit: secs(600), run: leader_checks },
        Criterion { id: 9, name: "ODSM golden example", limit: secs(1), run: odsm_golden },
        Criterion { id: 10, name: "fault detection sweeps", limit: secs(600), run: fault_sweeps },
        Criterion { id: 11, name: "cross-engine distance agreement", limit: secs(600), run: engines_agree },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (mut failed, mut known) = (0, 0);
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(Fail(format!("panic: {}", msg.unwrap_or_default())))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > c.limit => Err(Fail(format!("over time limit {:.0} s", c.limit.as_secs_f64()))),
            r => r,
        };
        let expected = KNOWN_FAILURES.iter().find(|(id, _)| *id == c.id);
        let (tag, detail) = match (result, expected) {
            (Ok(d), _) => ("PASS", d),
            (Err(Fail(d)), Some((_, why))) => {
                known += 1;
                ("FAIL", format!("{d} [known deviation: {why}]"))
            }
            (Err(Fail(d)), None) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {:>2} {}: {detail} ({:.2} s / limit {:.0} s)", c.id, c.name, elapsed.as_secs_f64(), c.limit.as_secs_f64());
    }
    if known > 0 {
        println!("{known} criteria failed as recorded in the known-deviation list");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
