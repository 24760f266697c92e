//! The acceptance gate: one test per release criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them). Criteria that
//! assert claims the underlying mathematics contradicts fail honestly with
//! the counterexamples in the message rather than being weakened to pass.

use std::collections::BTreeMap;
use std::time::Instant;

use zeroapn::ccz::{canonical_rep, coset_leader, doubling_coset};
use zeroapn::diffanalysis::{
    is_apn, is_x0_apn, is_zero_apn, spectrum, uniformity,
};
use zeroapn::exponents::{
    inequivalence_report, reproduction_rows, solve_linear_congruence, table1_report,
    thm41_predicate, thm43_case, thm43_predicate,
};
use zeroapn::gf2n::FieldCtx;
use zeroapn::gf2poly::BitPoly;
use zeroapn::multivar::builtin_system;
use zeroapn::resultant::{res_product_formula_check, res_scalar};

fn report(criterion: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status} — {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

/// Catalogue reproduction, 6 <= n <= 11, zero diffs.
#[test]
fn criterion_1_table1_reproduction() {
    let reports = table1_report(&reproduction_rows(), 6, 11).expect("report builds");
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.ok)
        .map(|r| format!("row {} n={} missing={:?} unexpected={:?}", r.row_id, r.n, r.missing, r.unexpected))
        .collect();
    let skipped: Vec<String> = reports
        .iter()
        .filter(|r| !r.skipped_errata.is_empty())
        .map(|r| format!("row {} n={} skipped={:?}", r.row_id, r.n, r.skipped_errata))
        .collect();
    report(
        1,
        bad.is_empty(),
        &format!(
            "{} (row, n) cells reconciled, diffs: {:?}, catalogued-but-unreachable pairs skipped as errata: {:?}",
            reports.len(),
            bad,
            skipped
        ),
    );
}

/// The gcd characterization as an if-and-only-if, swept exhaustively.
/// The "if" direction holds everywhere; the "only if" direction is false,
/// and this criterion fails honestly with the counterexample count.
#[test]
fn criterion_2_gcd_characterization_iff() {
    let mut counterexamples: Vec<(u32, u32, u32, u64)> = Vec::new();
    let mut forward_violations = 0u64;
    let mut only_if_failures = 0u64;
    let mut checked = 0u64;
    for n in 2u32..=14 {
        let ctx = FieldCtx::new(n).unwrap();
        let modulus = (1u64 << n) - 1;
        let mut zero_apn_cache: BTreeMap<u64, bool> = BTreeMap::new();
        for m in 1..n {
            for k in 1..n {
                let pred = thm41_predicate(n, m, k);
                let a = ((1u64 << k) - 1) % modulus;
                let b = ((1u64 << m) - 1) % modulus;
                for d in solve_linear_congruence(a, b, modulus) {
                    if d == 0 {
                        continue;
                    }
                    let zap = *zero_apn_cache
                        .entry(d)
                        .or_insert_with(|| is_zero_apn(&ctx, d));
                    checked += 1;
                    if pred && !zap {
                        forward_violations += 1;
                    }
                    if zap && !pred {
                        only_if_failures += 1;
                        if counterexamples.len() < 5 {
                            counterexamples.push((n, m, k, d));
                        }
                    }
                }
            }
        }
    }
    report(
        2,
        forward_violations == 0 && only_if_failures == 0,
        &format!(
            "{checked} (n, m, k, d) tuples swept; sound direction (gcd conditions ⇒ 0-APN) holds with {forward_violations} violations; \
             converse fails {only_if_failures} times (0-APN solutions the gcd conditions reject), first: {counterexamples:?} — \
             the characterization is one-directional, not an iff",
        ),
    );
}

/// The two-case characterization as an iff, same sweep; also one-directional.
#[test]
fn criterion_3_two_case_characterization_iff() {
    // spot anchor demanded by the criterion: (n=6, d=27) certified via case ii
    let anchor = thm43_case(6, 3, 5, 27).expect("congruence holds") == Some(2);
    let mut forward_violations = 0u64;
    let mut only_if_failures = 0u64;
    let mut first: Vec<(u32, u32, u32, u64)> = Vec::new();
    let mut checked = 0u64;
    for n in 2u32..=14 {
        let ctx = FieldCtx::new(n).unwrap();
        let modulus = (1u64 << n) - 1;
        let mut cache: BTreeMap<u64, bool> = BTreeMap::new();
        for m in 1..n {
            for k in 1..n {
                let a = ((1u64 << k) + 1) % modulus;
                let b = ((1u64 << m) + 1) % modulus;
                for d in solve_linear_congruence(a, b, modulus) {
                    if d == 0 {
                        continue;
                    }
                    let pred = thm43_predicate(n, m, k, d).expect("d solves the congruence");
                    let zap = *cache.entry(d).or_insert_with(|| is_zero_apn(&ctx, d));
                    checked += 1;
                    if pred && !zap {
                        forward_violations += 1;
                    }
                    if zap && !pred {
                        only_if_failures += 1;
                        if first.len() < 5 {
                            first.push((n, m, k, d));
                        }
                    }
                }
            }
        }
    }
    report(
        3,
        anchor && forward_violations == 0 && only_if_failures == 0,
        &format!(
            "(6, 27) case-ii anchor: {anchor}; {checked} tuples swept; sound direction holds with {forward_violations} violations; \
             converse fails {only_if_failures} times, first: {first:?} — one-directional, not an iff",
        ),
    );
}

/// Light symbolic golden suite: all twelve fast chains, bit-exact.
#[test]
fn criterion_4_symbolic_golden_suite() {
    let ids = [
        "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9", "3.11", "3.12", "3.13", "3.14",
    ];
    let mut bad = Vec::new();
    let mut expectations = 0usize;
    for id in ids {
        match builtin_system(id).and_then(|s| s.eliminate()) {
            Ok(r) if r.matches_golden => expectations += r.expectations_checked,
            Ok(r) => bad.push(format!("{id}: got {}", r.factorization)),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    report(
        4,
        bad.is_empty(),
        &format!(
            "12 chains, {expectations} displayed intermediates verified, finals bit-exact; failures: {bad:?}"
        ),
    );
}

/// Heavy symbolic stretch: the two long chains, bit-exact, within budget.
#[test]
fn criterion_5_heavy_symbolic() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for id in ["3.1", "3.10"] {
        match builtin_system(id).and_then(|s| s.eliminate()) {
            Ok(r) if r.matches_golden => {}
            Ok(r) => bad.push(format!("{id}: got {} want {}", r.factorization, r.golden)),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    report(
        5,
        bad.is_empty() && elapsed.as_secs() <= 30 * 60,
        &format!("both heavy chains bit-exact in {elapsed:?} (budget 30 min); failures: {bad:?}"),
    );
}

/// Resultant self-consistency: dual determinant strategies (exercised inside
/// every golden chain via checked_det), the product formula on 10^3 random
/// pairs, and the gcd criterion exhaustively for deg <= 5.
#[test]
fn criterion_6_resultant_self_consistency() {
    // dual-path agreement on golden cases: rerun one representative chain —
    // every bivariate elimination there goes through both strategies
    let dual = builtin_system("3.2")
        .and_then(|s| s.eliminate())
        .map(|r| r.matches_golden)
        .unwrap_or(false);

    let mut state = 0x243F6A8885A308D3u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut product_ok = 0u32;
    let mut tried = 0u32;
    while tried < 1000 {
        let f = BitPoly::from_bits(next() & 0x7F);
        let g = BitPoly::from_bits(next() & 0x7F);
        if f.degree().map_or(true, |d| d == 0) || g.is_zero() {
            continue;
        }
        tried += 1;
        if res_product_formula_check(&f, &g, 60).unwrap_or(false) {
            product_ok += 1;
        }
    }

    let mut gcd_ok = true;
    for fb in 1u64..64 {
        for gb in 1u64..64 {
            let f = BitPoly::from_bits(fb);
            let g = BitPoly::from_bits(gb);
            if f.degree() == Some(0) && g.degree() == Some(0) {
                continue;
            }
            let r = res_scalar(&f, &g).unwrap();
            gcd_ok &= r == (f.gcd(&g).unwrap().degree() == Some(0));
        }
    }
    report(
        6,
        dual && product_ok == 1000 && gcd_ok,
        &format!(
            "dual strategies agree on goldens: {dual}; product formula: {product_ok}/1000; \
             res = 0 ⇔ nonconstant gcd over all deg ≤ 5 pairs: {gcd_ok}"
        ),
    );
}

/// Differential-analysis property suite. Every structural property passes;
/// the criterion's literal anchor "uniformity(9, 81) = 2" is a false citation
/// (x^81 is APN over F_2^7, being in the Kasami-13 doubling coset mod 127;
/// over F_2^9 its uniformity is 26), so this criterion fails honestly.
#[test]
fn criterion_7_diffanalysis_properties() {
    let mut apn_implies = true;
    for n in 2u32..=10 {
        let ctx = FieldCtx::new(n).unwrap();
        for d in 1..(1u64 << n) - 1 {
            if is_apn(&ctx, d) {
                apn_implies &= is_zero_apn(&ctx, d);
            }
        }
    }

    let mut triple_equiv = true;
    for n in 2u32..=8 {
        let ctx = FieldCtx::new(n).unwrap();
        for d in 1..(1u64 << n) - 1 {
            triple_equiv &= is_zero_apn(&ctx, d) == is_x0_apn(&ctx, d, 0);
        }
    }

    let mut rows_ok = true;
    for n in 2u32..=8 {
        let ctx = FieldCtx::new(n).unwrap();
        for d in 1..(1u64 << n) - 1 {
            let s = spectrum(&ctx, d);
            rows_ok &= s.counts.iter().sum::<u32>() == 1u32 << n;
            rows_ok &= s.counts.iter().all(|&c| c % 2 == 0);
        }
    }

    let mut ccz_invariance = true;
    for n in 2u32..=10 {
        let ctx = FieldCtx::new(n).unwrap();
        let order = (1u64 << n) - 1;
        for d in 1..order {
            if coset_leader(n, d) != d {
                continue;
            }
            let u = uniformity(&ctx, d);
            for e in doubling_coset(n, d) {
                ccz_invariance &= uniformity(&ctx, e) == u;
            }
            if let Ok(c) = canonical_rep(n, d) {
                ccz_invariance &= uniformity(&ctx, c) == u;
            }
        }
    }

    let mut modulus_independent = true;
    // n = 3 up: degree 2 has a single irreducible, so no second modulus exists
    for n in 3u32..=8 {
        let ctx_a = FieldCtx::new(n).unwrap();
        let ctx_b = FieldCtx::with_modulus(n, second_irreducible(n)).unwrap();
        for d in 1..(1u64 << n) - 1 {
            let mut a = spectrum(&ctx_a, d).counts;
            let mut b = spectrum(&ctx_b, d).counts;
            a.sort_unstable();
            b.sort_unstable();
            modulus_independent &= a == b;
        }
    }

    let ctx7 = FieldCtx::new(7).unwrap();
    let ctx9 = FieldCtx::new(9).unwrap();
    let anchor_75 = uniformity(&ctx7, 5) == 2;
    let anchor_981 = uniformity(&ctx9, 81); // the criterion demands 2

    report(
        7,
        apn_implies && triple_equiv && rows_ok && ccz_invariance && modulus_independent
            && anchor_75 && anchor_981 == 2,
        &format!(
            "APN⇒0-APN: {apn_implies}; fast path ⇔ triple test: {triple_equiv}; row sums/evenness: {rows_ok}; \
             CCZ invariance: {ccz_invariance}; modulus independence: {modulus_independent}; \
             uniformity(7,5)=2: {anchor_75}; uniformity(9,81)={anchor_981} (demanded 2 — false citation: \
             81 lies in the Kasami-13 doubling coset mod 127, so x^81 is APN over F_2^7, verified \
             uniformity(7,81)={}; over F_2^9 the APN example is x^5, verified uniformity(9,5)={})",
            uniformity(&ctx7, 81),
            uniformity(&ctx9, 5),
        ),
    );
}

/// CCZ inequivalence report for the new families, 6 <= n <= 11, stable.
#[test]
fn criterion_8_ccz_inequivalence_report() {
    let fixture: BTreeMap<String, serde_json::Value> =
        serde_json::from_str(include_str!("data/ccz_report.json")).unwrap();
    let mut stable = true;
    let mut summary = Vec::new();
    for n in 6u32..=11 {
        let a = inequivalence_report(n).unwrap();
        let b = inequivalence_report(n).unwrap();
        stable &= a == b;
        let want = &fixture[&n.to_string()];
        let classes: Vec<u64> = serde_json::from_value(want["classes"].clone()).unwrap();
        let pairs: Vec<(u64, u64)> =
            serde_json::from_value(want["inverse_pairs"].clone()).unwrap();
        stable &= a.classes == classes && a.inverse_pairs == pairs;
        summary.push(format!(
            "n={n}: {} cosets, {} inverse-merged pairs",
            a.classes.len(),
            a.inverse_pairs.len()
        ));
    }
    report(
        8,
        stable,
        &format!(
            "reports reproducible and equal to the frozen fixture; distinctness holds up to the \
             inverse merges the equivalence itself imposes ({})",
            summary.join("; ")
        ),
    );
}

/// Second-smallest irreducible of the given degree (for the modulus
/// independence check).
fn second_irreducible(n: u32) -> BitPoly {
    let mut found = 0;
    for bits in (1u64 << n) + 1..1u64 << (n + 1) {
        let p = BitPoly::from_bits(bits);
        if p.is_irreducible().unwrap_or(false) {
            found += 1;
            if found == 2 {
                return p;
            }
        }
    }
    unreachable!("F_2 has at least two irreducibles of every degree n >= 3");
}
