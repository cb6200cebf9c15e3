use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{maximal_sets, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::sposet::{face_poset, glued_simplices, random_simplicial_poset, SimplicialPoset};

/// Every simplicial complex on exactly `n` labeled vertices (each vertex is a
/// face), for `1 ≤ n ≤ 5`.
pub fn enumerate_complexes(n: usize) -> Result<Vec<SimplicialComplex>> {
    if !(1..=5).contains(&n) {
        return Err(Error::TooLargeForExhaustive(n));
    }
    let mut candidates: Vec<Face> = Face::full(n).subsets().filter(|f| f.len() >= 2).collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    // membership bitset over subset bit patterns (at most 32 of them)
    let mut present: u64 = 1;
    for v in 1..=n as u32 {
        present |= 1 << Face::singleton(v).bits();
    }
    let mut out = Vec::new();
    extend_downsets(n, &candidates, 0, present, &mut out);
    Ok(out)
}

fn extend_downsets(n: usize, candidates: &[Face], next: usize, present: u64, out: &mut Vec<SimplicialComplex>) {
    if next == candidates.len() {
        let faces = (0..1u64 << n)
            .filter(|bits| present & (1 << bits) != 0)
            .map(Face::from_bits);
        out.push(SimplicialComplex::from_maximal_unchecked(n, maximal_sets(faces)));
        return;
    }
    let f = candidates[next];
    extend_downsets(n, candidates, next + 1, present, out);
    if f.vertices().all(|v| present & (1 << f.without(v).bits()) != 0) {
        extend_downsets(n, candidates, next + 1, present | (1 << f.bits()), out);
    }
}

/// Complex on `[n]` generated by all vertices plus each subset `S` with
/// `#S ≥ 2` kept independently with probability `density^(#S - 1)`.
/// Deterministic in `seed`; intended for `n ≤ 12`.
pub fn random_complex(n: usize, density: f64, seed: u64) -> SimplicialComplex {
    assert!(n <= 20, "random_complex enumerates 2^n subsets; n = {n} is too large");
    let density = density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Face> = (1..=n as u32).map(Face::singleton).collect();
    let mut subsets: Vec<Face> = Face::full(n).subsets().filter(|f| f.len() >= 2).collect();
    subsets.sort();
    for s in subsets {
        let p = density.powi(s.len() as i32 - 1);
        if rng.random::<f64>() < p {
            gens.push(s);
        }
    }
    SimplicialComplex::from_maximal_unchecked(n, maximal_sets(gens))
}

fn sphere(d: usize) -> SimplicialComplex {
    let full = Face::full(d + 1);
    SimplicialComplex::new(d + 1, full.vertices().map(|v| full.without(v))).expect("in range")
}

fn cycle(m: usize) -> SimplicialComplex {
    let m32 = m as u32;
    SimplicialComplex::new(m, (1..=m32).map(|v| Face::from_vertices([v, v % m32 + 1]))).expect("in range")
}

fn path(m: usize) -> SimplicialComplex {
    SimplicialComplex::new(m, (1..m as u32).map(|v| Face::from_vertices([v, v + 1]))).expect("in range")
}

/// The 6-vertex, 10-triangle triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    )
    .expect("in range")
}

pub fn boundary_simplex(d: usize) -> SimplicialComplex {
    sphere(d)
}

pub fn cycle_graph(m: usize) -> SimplicialComplex {
    cycle(m)
}

/// Named fixtures: cycles, simplex boundaries, `K_4`, paths, `RP²`, two
/// disjoint edges, full simplices and a few more.
pub fn standard_instances() -> Vec<(String, SimplicialComplex)> {
    let mut v: Vec<(String, SimplicialComplex)> = Vec::new();
    for m in 3..=6 {
        v.push((format!("C{m}"), cycle(m)));
    }
    for d in 1..=4 {
        v.push((format!("boundary-simplex-{d}"), sphere(d)));
    }
    v.push(("K4".into(), sphere(3).skeleton(1)));
    for m in 2..=4 {
        v.push((format!("path-{m}"), path(m)));
    }
    v.push(("rp2".into(), rp2()));
    v.push((
        "two-disjoint-edges".into(),
        SimplicialComplex::from_facets(4, &[&[1, 2], &[3, 4]]).expect("in range"),
    ));
    v.push((
        "two-points".into(),
        SimplicialComplex::from_facets(2, &[&[1], &[2]]).expect("in range"),
    ));
    for n in 1..=5 {
        v.push((format!("simplex-{n}"), SimplicialComplex::simplex(n)));
    }
    v.push((
        "bowtie".into(),
        SimplicialComplex::from_facets(5, &[&[1, 2, 3], &[3, 4, 5]]).expect("in range"),
    ));
    v.push((
        "octahedron".into(),
        SimplicialComplex::from_facets(
            6,
            &[
                &[1, 3, 5],
                &[1, 3, 6],
                &[1, 4, 5],
                &[1, 4, 6],
                &[2, 3, 5],
                &[2, 3, 6],
                &[2, 4, 5],
                &[2, 4, 6],
            ],
        )
        .expect("in range"),
    ));
    v.push(("empty".into(), SimplicialComplex::empty(0)));
    v
}

/// Face posets of the nonempty standard complexes with at most 31 nonempty
/// faces, `glued_simplices(d, m)` for `d, m ≤ 3`, and `random` seeded
/// random posets with 2 to 6 atoms.
pub fn poset_instances(random: usize, seed: u64) -> Vec<(String, SimplicialPoset)> {
    let mut v = Vec::new();
    for (name, c) in standard_instances() {
        if c.dimension().is_ok_and(|d| d >= 0) && c.all_faces().len() <= 32 {
            v.push((format!("face-poset-{name}"), face_poset(&c)));
        }
    }
    for d in 1..=3 {
        for m in 1..=3 {
            v.push((format!("glued-{d}-{m}"), glued_simplices(d, m).expect("valid parameters")));
        }
    }
    v.extend(random_posets(random, seed));
    v
}

/// `count` seeded random simplicial posets with `#V ≤ 6` and at most 40
/// non-bottom elements.
pub fn random_posets(count: usize, seed: u64) -> Vec<(String, SimplicialPoset)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=6usize);
        let rank = rng.random_range(2..=n.min(3));
        let s: u64 = rng.random();
        let p = random_simplicial_poset(n, rank, s).expect("n within range");
        if p.element_count() <= 41 {
            out.push((format!("random-poset-n{n}-r{rank}-s{s}"), p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_complexes(1).unwrap().len(), 1);
        let two = enumerate_complexes(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(enumerate_complexes(3).unwrap().len(), 9);
        assert_eq!(enumerate_complexes(6), Err(Error::TooLargeForExhaustive(6)));
        assert_eq!(enumerate_complexes(0), Err(Error::TooLargeForExhaustive(0)));
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = enumerate_complexes(4).unwrap();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|c| c.vertices() == Face::full(4)));
    }

    #[test]
    fn random_complex_contract() {
        assert_eq!(random_complex(7, 0.5, 11), random_complex(7, 0.5, 11));
        assert_eq!(random_complex(5, 1.0, 3), SimplicialComplex::simplex(5));
        let sparse = random_complex(5, 0.0, 3);
        assert_eq!(sparse.dimension(), Ok(0));
    }

    #[test]
    fn standard_fixtures() {
        let all = standard_instances();
        let rp = &all.iter().find(|(n, _)| n == "rp2").unwrap().1;
        assert_eq!(rp.facets().len(), 10);
        // every edge of K_6 lies in exactly two triangles
        for e in crate::face::subsets_of_size(Face::full(6), 2) {
            assert_eq!(rp.facets().iter().filter(|t| e.is_subset(**t)).count(), 2);
        }
        for name in ["C3", "C6", "boundary-simplex-4", "K4", "two-disjoint-edges", "simplex-5"] {
            assert!(all.iter().any(|(n, _)| n == name), "{name}");
        }
    }

    #[test]
    fn random_poset_fixtures() {
        let a = random_posets(8, 5);
        assert_eq!(a, random_posets(8, 5));
        assert!(a.iter().all(|(_, p)| p.vertex_count() <= 6 && p.element_count() <= 41));
    }
}
