//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hcm_core::homalg::{reduced_homology, GF2, QQ};
use hcm_core::sposet::{glued_simplices, is_poset_cm, is_poset_l_cm, restrict_poset};
use hcm_core::sqfree::{from_complex, is_2cm_via_canonical};
use hcm_core::topocm::{is_cohen_macaulay, is_l_cm, max_l};
use hcm_core::verify::{self, boundary_simplex, rp2, SweepReport, SweepScope};
use hcm_core::{Face, FieldSpec, SimplicialComplex};

const FIELDS: [FieldSpec; 2] = [GF2, QQ];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[&SweepReport], limit: Option<Duration>, elapsed: Duration) -> Outcome {
    let mut passed = reports.iter().all(|r| r.passed());
    let mut detail: Vec<String> = reports
        .iter()
        .map(|r| format!("{}: {} instances, {} failures", r.theorem_id, r.instances_checked, r.failures.len()))
        .collect();
    for r in reports.iter().filter(|r| !r.passed()) {
        for f in r.failures.iter().take(5) {
            detail.push(format!("[{}] {} {} lhs={} rhs={}", f.theorem, f.instance, f.params, f.lhs, f.rhs));
        }
    }
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
        }
        detail.push(format!("{:.1}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()));
    } else {
        detail.push(format!("{:.1}s", elapsed.as_secs_f64()));
    }
    Outcome {
        passed,
        detail: detail.join("; "),
    }
}

fn checks(items: Vec<(&str, bool)>) -> Outcome {
    let failed: Vec<&str> = items.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", items.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn complex_scope() -> SweepScope {
    SweepScope {
        max_n: 5,
        standard: true,
        random_complexes: 0,
        random_posets: 50,
        ..SweepScope::default()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_thm25(&complex_scope(), &FIELDS);
    from_reports(&[&r], Some(Duration::from_secs(120)), start.elapsed())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_oracle(&complex_scope(), &FIELDS);
    from_reports(&[&r], None, start.elapsed())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let scope = complex_scope();
    let thm12 = verify::sweep_thm12(&scope, &FIELDS);
    let thm27 = verify::sweep_thm27(&scope, &FIELDS);
    let sphere = boundary_simplex(3);
    let k4 = sphere.skeleton(1);
    let anchors = [GF2, QQ].iter().all(|&k| {
        max_l(&sphere, k) == Ok(2) && is_l_cm(&k4, 3, k) == Ok(true) && max_l(&k4, k) == Ok(3)
    });
    let mut out = from_reports(&[&thm12, &thm27], None, start.elapsed());
    out.passed &= anchors;
    out.detail.push_str(&format!("; anchor boundary-simplex-3 2-CM, K4 3-CM: {anchors}"));
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_thm44(&complex_scope(), &FIELDS);
    let random = complex_scope().posets().iter().filter(|(n, _)| n.starts_with("random-poset")).count();
    let mut out = from_reports(&[&r], Some(Duration::from_secs(300)), start.elapsed());
    out.passed &= random == 50;
    out.detail.push_str(&format!("; random posets: {random}"));
    out
}

fn criterion_5() -> Outcome {
    let mut items = Vec::new();
    for d in 1..=3 {
        let p = glued_simplices(d, 2).unwrap();
        let full = Face::full(p.vertex_count());
        for k in FIELDS {
            items.push(("cm", is_poset_cm(&p, k) == Ok(true)));
            items.push(("not 2-cm", is_poset_l_cm(&p, 2, k) == Ok(false)));
            items.push((
                "rank drop on every atom deletion",
                full.vertices().all(|v| restrict_poset(&p, full.without(v)).rank() < p.rank()),
            ));
            let oc = p.order_complex().unwrap();
            items.push(("order complex 2-cm", is_l_cm(&oc, 2, k) == Ok(true)));
        }
    }
    let sweep = verify::sweep_remark45(&FIELDS);
    items.push(("remark45 sweep", sweep.passed()));
    checks(items)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_route(&complex_scope(), &FIELDS);
    from_reports(&[&r], None, start.elapsed())
}

fn criterion_7() -> Outcome {
    let rp = rp2();
    let h2 = reduced_homology(&rp, GF2).unwrap();
    let hq = reduced_homology(&rp, QQ).unwrap();
    checks(vec![
        ("10 facets on 6 vertices", rp.facets().len() == 10 && rp.vertex_count() == 6),
        ("CM over Q", is_cohen_macaulay(&rp, QQ) == Ok(true)),
        ("not CM over GF(2)", is_cohen_macaulay(&rp, GF2) == Ok(false)),
        ("GF(2) homology", (-1..=2).map(|i| h2.get(i)).eq([0, 0, 1, 1])),
        ("Q homology", (-1..=2).map(|i| hq.get(i)).eq([0, 0, 0, 0])),
    ])
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_cor26(&complex_scope(), &FIELDS);
    let c4 = verify::cycle_graph(4);
    let path = SimplicialComplex::from_facets(3, &[&[1, 2], &[2, 3]]).unwrap();
    let anchors = FIELDS.iter().all(|&k| {
        is_2cm_via_canonical(&from_complex(&c4), k) == Ok(true)
            && is_2cm_via_canonical(&from_complex(&path), k) == Ok(false)
    });
    let mut out = from_reports(&[&r], None, start.elapsed());
    out.passed &= anchors;
    out.detail.push_str(&format!("; C4 true, path false: {anchors}"));
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let r = verify::sweep_omega(5, &FIELDS);
    let mut out = from_reports(&[&r], None, start.elapsed());
    // 2^0 + 2^1 + ... + 2^5 modules
    out.passed &= r.instances_checked == 63;
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("l-CM vs Betti vanishing vs canonical table", criterion_1),
        ("Koszul/Hochster agreement", criterion_2),
        ("skeleta of l-CM complexes and modules", criterion_3),
        ("rank skeleta of l-CM posets", criterion_4),
        ("two simplices glued along their boundary", criterion_5),
        ("poset route agreement", criterion_6),
        ("field sensitivity of RP2", criterion_7),
        ("2-CM via degree-0 generation of the canonical module", criterion_8),
        ("omega_F is l-CM for all l", criterion_9),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        all &= out.passed;
        println!(
            "criterion {}: {} - {name} ({})",
            i + 1,
            if out.passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
