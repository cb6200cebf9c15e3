//! Equivalence sweeps over generated instances.
//!
//! Each sweep checks one statement on every instance in scope and returns a
//! [`SweepReport`] listing the disagreements. Instances are processed in
//! parallel and merged back in instance order, so reports are reproducible.

mod instances;

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use instances::{
    boundary_simplex, cycle_graph, enumerate_complexes, poset_instances, random_complex, random_posets, rp2,
    standard_instances,
};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homalg::FieldSpec;
use crate::sposet::{
    face_ring_module, glued_simplices, is_poset_cm, is_poset_l_cm, poset_cm_level, poset_max_l, poset_skeleton,
    restrict_poset, SimplicialPoset,
};
use crate::sqfree::{
    canonical_betti, from_complex, is_2cm_via_canonical, is_module_l_cm, koszul_betti, module_cm_level,
    module_dim, module_skeleton, omega_module, thm25_condition_ii, thm25_condition_iii, SquarefreeModule,
};
use crate::topocm::{cm_level, hochster_betti, is_cohen_macaulay, is_l_cm, table_is_cm};

/// Names accepted by [`run_sweep`].
pub const SWEEPS: &[&str] = &["thm12", "thm25", "thm27", "thm44", "remark45", "oracle", "route", "cor26", "omega"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub theorem: String,
    pub instance: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub theorem_id: String,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One tab-separated line per failure, then a summary line. Timing is
    /// left out so the text depends only on the inputs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.failures {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", f.theorem, f.instance, f.params, f.lhs, f.rhs);
        }
        let _ = writeln!(
            s,
            "summary\t{}\tinstances={}\tfailures={}\t{}",
            self.theorem_id,
            self.instances_checked,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        s
    }

    /// Concatenates reports under a new id.
    pub fn merge(theorem_id: &str, parts: Vec<SweepReport>) -> SweepReport {
        let mut out = SweepReport {
            theorem_id: theorem_id.to_string(),
            instances_checked: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        };
        for p in parts {
            out.instances_checked += p.instances_checked;
            out.failures.extend(p.failures);
            out.elapsed += p.elapsed;
        }
        out
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Which instances a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepScope {
    /// Exhaustive enumeration of complexes on exactly `1..=max_n` vertices
    /// (capped at 5).
    pub max_n: usize,
    pub standard: bool,
    /// Seeded random complexes on 6 or 7 vertices.
    pub random_complexes: usize,
    pub random_posets: usize,
    pub seed: u64,
}

impl Default for SweepScope {
    fn default() -> Self {
        SweepScope {
            max_n: 5,
            standard: true,
            random_complexes: 20,
            random_posets: 50,
            seed: 20_100_517,
        }
    }
}

impl SweepScope {
    pub fn complexes(&self) -> Vec<(String, SimplicialComplex)> {
        let mut out = Vec::new();
        for n in 1..=self.max_n.min(5) {
            for c in enumerate_complexes(n).expect("n within range") {
                out.push((complex_label(&c), c));
            }
        }
        if self.standard {
            for (name, c) in standard_instances() {
                let label = format!("{name}={}", complex_label(&c));
                out.push((label, c));
            }
        }
        for r in 0..self.random_complexes {
            let n = 6 + r % 2;
            let seed = self.seed.wrapping_add(r as u64);
            let c = random_complex(n, 0.6, seed);
            out.push((format!("random-n{n}-s{seed}={}", complex_label(&c)), c));
        }
        out
    }

    pub fn posets(&self) -> Vec<(String, SimplicialPoset)> {
        poset_instances(self.random_posets, self.seed)
    }
}

/// `n4:1,2|2,3|3,4|1,4`; `-` stands for the facet list of `{∅}`.
pub fn complex_label(c: &SimplicialComplex) -> String {
    if c.is_void() {
        return format!("n{}:void", c.vertex_count());
    }
    if c.facets().is_empty() {
        return format!("n{}:-", c.vertex_count());
    }
    let parts: Vec<String> = c.facets().iter().map(|f| f.to_string()).collect();
    format!("n{}:{}", c.vertex_count(), parts.join("|"))
}

struct Collector<'a> {
    instance: &'a str,
    field: FieldSpec,
    failures: Vec<Failure>,
}

impl<'a> Collector<'a> {
    fn new(instance: &'a str, field: FieldSpec) -> Self {
        Collector {
            instance,
            field,
            failures: Vec::new(),
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, theorem: &str, params: String, lhs: T, rhs: T) {
        if lhs != rhs {
            self.failures.push(Failure {
                theorem: theorem.to_string(),
                instance: self.instance.to_string(),
                params: format!("field={};{params}", self.field),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }

    fn expect(&mut self, theorem: &str, params: String, holds: bool) {
        self.expect_eq(theorem, params, holds, true);
    }

    fn error(&mut self, theorem: &str, e: Error) {
        self.failures.push(Failure {
            theorem: theorem.to_string(),
            instance: self.instance.to_string(),
            params: format!("field={}", self.field),
            lhs: "error".into(),
            rhs: e.to_string(),
        });
    }
}

fn run<T, F>(theorem_id: &str, items: &[(String, T)], fields: &[FieldSpec], check: F) -> SweepReport
where
    T: Sync,
    F: Fn(&mut Collector<'_>, &T) -> Result<()> + Sync,
{
    let start = Instant::now();
    let per_instance: Vec<Vec<Failure>> = items
        .par_iter()
        .map(|(label, item)| {
            let mut all = Vec::new();
            for &k in fields {
                let mut c = Collector::new(label, k);
                if let Err(e) = check(&mut c, item) {
                    c.error(theorem_id, e);
                }
                all.extend(c.failures);
            }
            all
        })
        .collect();
    SweepReport {
        theorem_id: theorem_id.to_string(),
        instances_checked: items.len(),
        failures: per_instance.into_iter().flatten().collect(),
        elapsed: start.elapsed(),
    }
}

fn check_thm25_table(
    c: &mut Collector<'_>,
    t: &crate::topocm::BettiTable,
    n: usize,
    d: usize,
    level: usize,
) -> Result<()> {
    let u = canonical_betti(t, n, d)?;
    for l in 2..=n + 1 {
        let lhs = level >= l;
        let ii = thm25_condition_ii(t, n, d, l);
        let iii = thm25_condition_iii(&u, l);
        c.expect_eq("thm25:i-ii", format!("l={l}"), lhs, ii);
        c.expect_eq("thm25:ii-iii", format!("l={l}"), ii, iii);
    }
    Ok(())
}

/// For every CM instance and every `l` in `2..=n+1`: l-CM by deletion, the
/// Betti vanishing condition, and the canonical-module condition agree. Also
/// checks that the Reisner criterion agrees with the projective dimension
/// read off the Betti table. Covers complexes and face rings of posets.
pub fn sweep_thm25(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    let complexes = run("thm25", &scope.complexes(), fields, |c, cx| {
        let k = c.field;
        let n = cx.vertex_count();
        let t = hochster_betti(cx, k)?;
        let d = crate::topocm::krull_dimension(cx)?;
        let cm = is_cohen_macaulay(cx, k)?;
        c.expect_eq("reisner-vs-betti", String::new(), cm, table_is_cm(&t, d));
        if cm {
            check_thm25_table(c, &t, n, d, cm_level(cx, k, n + 1))?;
        }
        Ok(())
    });
    let modules = run("thm25", &poset_modules(scope), fields, |c, m| {
        let k = c.field;
        let n = m.n();
        let t = koszul_betti(m, k)?;
        let d = module_dim(m)?;
        if table_is_cm(&t, d) {
            check_thm25_table(c, &t, n, d, module_cm_level(m, k, n + 1)?)?;
        }
        Ok(())
    });
    SweepReport::merge("thm25", vec![complexes, modules])
}

fn poset_modules(scope: &SweepScope) -> Vec<(String, SquarefreeModule)> {
    scope
        .posets()
        .into_iter()
        .map(|(name, p)| (format!("face-ring-{name}"), face_ring_module(&p).expect("valid poset")))
        .collect()
}

/// Koszul homology of `k[Δ]` against Hochster's formula, entrywise.
pub fn sweep_oracle(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    run("oracle", &scope.complexes(), fields, |c, cx| {
        let koszul = koszul_betti(&from_complex(cx), c.field)?;
        let hochster = hochster_betti(cx, c.field)?;
        if koszul != hochster {
            c.expect_eq("oracle", String::new(), koszul.to_tsv(), hochster.to_tsv());
        }
        Ok(())
    })
}

/// If `Δ` is l-CM with `l = max_l(Δ) ≥ 1`, its codimension-1 skeleton is
/// (l+1)-CM.
pub fn sweep_thm12(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    run("thm12", &scope.complexes(), fields, |c, cx| {
        let k = c.field;
        let l = cm_level(cx, k, cx.vertex_count().max(1));
        let dim = cx.dimension()?;
        if l >= 1 && dim >= 0 {
            let skel = cx.skeleton(dim - 1);
            c.expect("thm12", format!("l={l};skeleton={}", dim - 1), is_l_cm(&skel, l + 1, k)?);
        }
        Ok(())
    })
}

/// If `M` is l-CM of dimension `d` then `M^{<i>}` is (l+d-i)-CM for
/// `0 ≤ i < d` unless it vanishes. Checked on `k[Δ]` through the complex
/// skeleta `Δ^{(i-1)}`, and directly on module skeleta of `k[Δ]` for
/// standard complexes and of the face rings of poset instances.
pub fn sweep_thm27(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    let complexes = run("thm27", &scope.complexes(), fields, |c, cx| {
        let k = c.field;
        let l = cm_level(cx, k, cx.vertex_count().max(1));
        let d = crate::topocm::krull_dimension(cx)?;
        if l == 0 {
            return Ok(());
        }
        for i in 0..d {
            let skel = cx.skeleton(i as isize - 1);
            let target = l + d - i;
            c.expect("thm27", format!("l={l};d={d};i={i};target={target}"), is_l_cm(&skel, target, k)?);
        }
        Ok(())
    });
    let mut modules: Vec<(String, SquarefreeModule)> = Vec::new();
    if scope.standard {
        modules.extend(
            standard_instances()
                .into_iter()
                .map(|(name, cx)| (format!("ring-{name}"), from_complex(&cx))),
        );
    }
    modules.extend(poset_modules(scope));
    let modules = run("thm27", &modules, fields, |c, m| {
        let k = c.field;
        let l = module_cm_level(m, k, m.n() + 1)?;
        if l == 0 {
            return Ok(());
        }
        let d = module_dim(m)?;
        for i in 0..d {
            let s = module_skeleton(m, i);
            if s.is_zero() {
                continue;
            }
            let target = l + d - i;
            c.expect(
                "thm27:module",
                format!("l={l};d={d};i={i};target={target}"),
                is_module_l_cm(&s, target, k)?,
            );
        }
        Ok(())
    });
    SweepReport::merge("thm27", vec![complexes, modules])
}

/// If a simplicial poset `P` of rank `d` is l-CM then `P^{<i>}` is
/// (l+d-i)-CM for `1 ≤ i < d`.
pub fn sweep_thm44(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    run("thm44", &scope.posets(), fields, |c, p| {
        let k = c.field;
        let l = poset_max_l(p, k)?;
        let d = p.rank();
        if l == 0 {
            return Ok(());
        }
        for i in 1..d {
            let target = l + d - i;
            c.expect(
                "thm44",
                format!("l={l};d={d};i={i};target={target}"),
                is_poset_l_cm(&poset_skeleton(p, i), target, k)?,
            );
        }
        Ok(())
    })
}

/// The three skeleton sweeps merged into one report.
pub fn sweep_skeleton(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    SweepReport::merge(
        "skeleton",
        vec![sweep_thm12(scope, fields), sweep_thm27(scope, fields), sweep_thm44(scope, fields)],
    )
}

/// Two d-simplices glued along their boundaries, `d = 1, 2, 3`: CM, every
/// single-atom deletion drops the rank, not 2-CM, and the order complex is
/// 2-CM.
pub fn sweep_remark45(fields: &[FieldSpec]) -> SweepReport {
    let items: Vec<(String, SimplicialPoset)> = (1..=3)
        .map(|d| (format!("glued-{d}-2"), glued_simplices(d, 2).expect("valid parameters")))
        .collect();
    run("remark45", &items, fields, |c, p| {
        let k = c.field;
        c.expect("remark45:cm", String::new(), is_poset_cm(p, k)?);
        let full = Face::full(p.vertex_count());
        for v in full.vertices() {
            let rest = restrict_poset(p, full.without(v));
            c.expect("remark45:rank-drop", format!("deleted={v}"), rest.rank() < p.rank());
        }
        c.expect("remark45:not-2cm", String::new(), !is_poset_l_cm(p, 2, k)?);
        let oc = p.order_complex()?;
        c.expect("remark45:order-complex-2cm", String::new(), is_l_cm(&oc, 2, k)?);
        Ok(())
    })
}

/// Poset l-CM decided on the order complex agrees with l-CM of the face ring
/// as a squarefree module, for every `l ≤ #V + 1`. When the face ring is
/// 2-CM the order complex is checked to be 2-CM as well.
pub fn sweep_route(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    run("route", &scope.posets(), fields, |c, p| {
        let k = c.field;
        let cap = p.vertex_count() + 1;
        let topological = poset_cm_level(p, k, cap)?;
        let algebraic = module_cm_level(&face_ring_module(p)?, k, cap)?;
        for l in 1..=cap {
            c.expect_eq("route", format!("l={l}"), topological >= l, algebraic >= l);
        }
        if algebraic >= 2 {
            c.expect("prop43", String::new(), is_l_cm(&p.order_complex()?, 2, k)?);
        }
        Ok(())
    })
}

/// 2-CM by deletion against degree-0 generation of the canonical module, on
/// every CM complex and poset face ring in scope.
pub fn sweep_cor26(scope: &SweepScope, fields: &[FieldSpec]) -> SweepReport {
    let complexes = run("cor26", &scope.complexes(), fields, |c, cx| {
        let k = c.field;
        if is_cohen_macaulay(cx, k)? {
            let m = from_complex(cx);
            c.expect_eq("cor26", String::new(), cm_level(cx, k, 2) >= 2, is_2cm_via_canonical(&m, k)?);
        }
        Ok(())
    });
    let modules = run("cor26", &poset_modules(scope), fields, |c, m| {
        let k = c.field;
        let level = module_cm_level(m, k, 2)?;
        if level >= 1 {
            c.expect_eq("cor26", String::new(), level >= 2, is_2cm_via_canonical(m, k)?);
        }
        Ok(())
    });
    SweepReport::merge("cor26", vec![complexes, modules])
}

/// `ω_F = k[F](-F)` is l-CM for every `l ≤ n + 1`, all `F ⊆ [n]`, `n ≤ max_n`.
pub fn sweep_omega(max_n: usize, fields: &[FieldSpec]) -> SweepReport {
    let items: Vec<(String, SquarefreeModule)> = (0..=max_n)
        .flat_map(|n| {
            Face::full(n)
                .subsets()
                .map(move |f| (format!("omega-n{n}-F{f}"), omega_module(n, f)))
        })
        .collect();
    run("omega", &items, fields, |c, m| {
        let cap = m.n() + 1;
        let level = module_cm_level(m, c.field, cap)?;
        c.expect_eq("omega", format!("cap={cap}"), level >= cap, true);
        Ok(())
    })
}

/// Runs the sweep called `name` (see [`SWEEPS`]).
pub fn run_sweep(name: &str, scope: &SweepScope, fields: &[FieldSpec]) -> Option<SweepReport> {
    Some(match name {
        "thm12" => sweep_thm12(scope, fields),
        "thm25" => sweep_thm25(scope, fields),
        "thm27" => sweep_thm27(scope, fields),
        "thm44" => sweep_thm44(scope, fields),
        "remark45" => sweep_remark45(fields),
        "oracle" => sweep_oracle(scope, fields),
        "route" => sweep_route(scope, fields),
        "cor26" => sweep_cor26(scope, fields),
        "omega" => sweep_omega(scope.max_n.min(5), fields),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{GF2, QQ};

    fn small() -> SweepScope {
        SweepScope {
            max_n: 3,
            standard: false,
            random_complexes: 2,
            random_posets: 3,
            seed: 7,
        }
    }

    #[test]
    fn labels() {
        let c = cycle_graph(4);
        assert_eq!(complex_label(&c), "n4:1,2|1,4|2,3|3,4");
        assert_eq!(complex_label(&SimplicialComplex::empty(2)), "n2:-");
        assert_eq!(complex_label(&SimplicialComplex::void(2)), "n2:void");
    }

    #[test]
    fn report_text() {
        let r = SweepReport {
            theorem_id: "x".into(),
            instances_checked: 2,
            failures: vec![Failure {
                theorem: "x".into(),
                instance: "n1:1".into(),
                params: "l=2".into(),
                lhs: "true".into(),
                rhs: "false".into(),
            }],
            elapsed: Duration::from_millis(5),
        };
        assert_eq!(r.to_text(), "x\tn1:1\tl=2\ttrue\tfalse\nsummary\tx\tinstances=2\tfailures=1\tFAIL\n");
        assert!(!r.passed());
    }

    #[test]
    fn small_sweeps_pass_and_are_deterministic() {
        let scope = small();
        for name in SWEEPS {
            let a = run_sweep(name, &scope, &[GF2, QQ]).unwrap();
            assert!(a.passed(), "{}", a.to_text());
            let b = run_sweep(name, &scope, &[GF2, QQ]).unwrap();
            assert_eq!(a.to_text(), b.to_text());
        }
        assert!(run_sweep("nope", &scope, &[QQ]).is_none());
    }

    #[test]
    fn scope_sizes() {
        let s = small();
        assert_eq!(s.complexes().len(), 1 + 2 + 9 + 2);
        assert!(s.posets().len() > 3);
    }
}
