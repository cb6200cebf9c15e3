//! Simplicial posets: finite posets with a least element whose lower
//! intervals are boolean algebras.
//!
//! Rank-one elements are the vertices `V`, numbered `1..=#V` in the order the
//! atoms appear in the element list. Every element `x` carries its atom
//! support `supp(x) ⊆ V`, and `ρ(x) = #supp(x)`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Error, PosetError, Result};
use crate::face::{subsets_of_size, Face, MAX_VERTICES};
use crate::homalg::{FieldSpec, SparseMatrix};
use crate::sqfree::SquarefreeModule;
use crate::topocm::ReisnerChecker;

/// Unvalidated poset description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPoset {
    pub elements: Vec<String>,
    pub bottom: String,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPoset {
    ids: Vec<String>,
    bottom: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    rank: Vec<usize>,
    support: Vec<Face>,
    atoms: Vec<usize>,
    // le[y][x] iff x <= y
    le: Vec<Vec<bool>>,
}

fn invalid(e: PosetError) -> Error {
    Error::InvalidPoset(e)
}

/// Checks every simplicial-poset invariant and returns the first violation.
pub fn validate(raw: &RawPoset) -> Result<SimplicialPoset> {
    let count = raw.elements.len();
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(count);
    for (i, id) in raw.elements.iter().enumerate() {
        if index.insert(id.as_str(), i).is_some() {
            return Err(invalid(PosetError::DuplicateElement(id.clone())));
        }
    }
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| invalid(PosetError::UnknownElement(id.to_string())))
    };
    let bottom = lookup(&raw.bottom)?;
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (a, b) in &raw.covers {
        let (a, b) = (lookup(a)?, lookup(b)?);
        if a == b {
            return Err(invalid(PosetError::Cyclic));
        }
        if !lower[b].contains(&a) {
            lower[b].push(a);
            upper[a].push(b);
        }
    }
    for v in lower.iter_mut().chain(upper.iter_mut()) {
        v.sort_unstable();
    }

    // Kahn's algorithm, smallest index first for determinism
    let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
    let minimal: Vec<usize> = (0..count).filter(|&x| indegree[x] == 0).collect();
    let mut order = Vec::with_capacity(count);
    let mut ready = std::collections::BTreeSet::from_iter(minimal.iter().copied());
    while let Some(x) = ready.pop_first() {
        order.push(x);
        for &y in &upper[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if order.len() != count {
        return Err(invalid(PosetError::Cyclic));
    }
    if minimal.len() > 1 {
        return Err(invalid(PosetError::MultipleMinimal(
            minimal.iter().map(|&x| raw.elements[x].clone()).collect(),
        )));
    }
    if minimal != [bottom] {
        return Err(invalid(PosetError::BottomNotMinimal(raw.bottom.clone())));
    }

    let mut rank = vec![0usize; count];
    for &x in &order {
        if x == bottom {
            continue;
        }
        let r = rank[lower[x][0]];
        if lower[x].iter().any(|&y| rank[y] != r) {
            return Err(invalid(PosetError::RankMismatch(raw.elements[x].clone())));
        }
        rank[x] = r + 1;
    }

    let atoms: Vec<usize> = (0..count).filter(|&x| rank[x] == 1).collect();
    if atoms.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(atoms.len()));
    }
    let mut support = vec![Face::EMPTY; count];
    for (v, &a) in atoms.iter().enumerate() {
        support[a] = Face::singleton(v as u32 + 1);
    }
    let mut le = vec![vec![false; count]; count];
    for &x in &order {
        le[x][x] = true;
        if rank[x] >= 2 {
            support[x] = lower[x].iter().fold(Face::EMPTY, |acc, &y| acc.union(support[y]));
        }
        if support[x].len() != rank[x] {
            return Err(invalid(PosetError::RankMismatch(raw.elements[x].clone())));
        }
        for &y in &lower[x] {
            for z in 0..count {
                if le[y][z] {
                    le[x][z] = true;
                }
            }
        }
    }

    for x in 0..count {
        let down: Vec<usize> = (0..count).filter(|&y| le[x][y]).collect();
        let non_boolean = || invalid(PosetError::NonBooleanInterval(raw.elements[x].clone()));
        if down.len() != 1usize << rank[x] {
            return Err(non_boolean());
        }
        let mut seen = std::collections::HashSet::new();
        if !down.iter().all(|&y| seen.insert(support[y])) {
            return Err(non_boolean());
        }
        for &y in &down {
            for &z in &down {
                if support[y].is_subset(support[z]) && !le[z][y] {
                    return Err(non_boolean());
                }
            }
        }
    }

    Ok(SimplicialPoset {
        ids: raw.elements.clone(),
        bottom,
        lower,
        upper,
        rank,
        support,
        atoms,
        le,
    })
}

impl SimplicialPoset {
    pub fn element_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// `ρ(x)`.
    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// `rank P = max ρ`.
    pub fn rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// `#V`.
    pub fn vertex_count(&self) -> usize {
        self.atoms.len()
    }

    /// The atom corresponding to vertex `v`.
    pub fn atom(&self, v: u32) -> usize {
        self.atoms[v as usize - 1]
    }

    pub fn support(&self, x: usize) -> Face {
        self.support[x]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[y][x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Cover pairs `(lower, upper)` in element order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn to_raw(&self) -> RawPoset {
        RawPoset {
            elements: self.ids.clone(),
            bottom: self.ids[self.bottom].clone(),
            covers: self
                .covers()
                .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
                .collect(),
        }
    }

    /// Minimal elements among the common upper bounds of `xs`.
    pub fn join_of(&self, xs: &[usize]) -> Vec<usize> {
        let n = self.element_count();
        let bounds: Vec<usize> = (0..n).filter(|&z| xs.iter().all(|&x| self.le(x, z))).collect();
        bounds
            .iter()
            .copied()
            .filter(|&z| !bounds.iter().any(|&w| w != z && self.le(w, z)))
            .collect()
    }

    /// `[x ∨ y]`.
    pub fn join_set(&self, x: usize, y: usize) -> Vec<usize> {
        self.join_of(&[x, y])
    }

    /// `[U]`: the elements whose atom support is exactly `U`.
    pub fn elements_with_support(&self, u: Face) -> Vec<usize> {
        (0..self.element_count()).filter(|&x| self.support[x] == u).collect()
    }

    fn induced(&self, keep: impl Fn(usize) -> bool) -> SimplicialPoset {
        let raw = RawPoset {
            elements: (0..self.element_count())
                .filter(|&x| keep(x))
                .map(|x| self.ids[x].clone())
                .collect(),
            bottom: self.ids[self.bottom].clone(),
            covers: self
                .covers()
                .filter(|&(a, b)| keep(a) && keep(b))
                .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
                .collect(),
        };
        validate(&raw).expect("induced subposets of order ideals stay simplicial")
    }

    /// `P|_W`: elements supported in `W`. Vertices are re-indexed in order.
    pub fn restrict(&self, w: Face) -> SimplicialPoset {
        self.induced(|x| self.support[x].is_subset(w))
    }

    /// `P^{<i>}`: elements of rank at most `i`.
    pub fn skeleton(&self, i: usize) -> SimplicialPoset {
        self.induced(|x| self.rank[x] <= i)
    }

    /// Vertex number of each non-bottom element in the order complex.
    fn chain_vertices(&self) -> Vec<Option<u32>> {
        let mut next = 0u32;
        (0..self.element_count())
            .map(|x| {
                (x != self.bottom).then(|| {
                    next += 1;
                    next
                })
            })
            .collect()
    }

    /// Order complex of `P ∖ {0̂}` (the barycentric subdivision of `Γ(P)`).
    /// Vertex `k` is the `k`-th non-bottom element.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        let m = self.element_count() - 1;
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices(m));
        }
        let label = self.chain_vertices();
        let mut facets = Vec::new();
        let mut stack: Vec<(usize, Face)> = self
            .upper_covers(self.bottom)
            .iter()
            .map(|&a| (a, Face::singleton(label[a].unwrap())))
            .collect();
        while let Some((x, chain)) = stack.pop() {
            if self.upper[x].is_empty() {
                facets.push(chain);
            }
            for &y in &self.upper[x] {
                stack.push((y, chain.with(label[y].unwrap())));
            }
        }
        SimplicialComplex::new(m, facets)
    }

    /// Per-element summary used to compare posets up to relabeling of ids:
    /// each element's support together with the supports of its lower covers.
    pub fn signature(&self) -> Vec<(Face, Vec<Face>)> {
        let mut sig: Vec<(Face, Vec<Face>)> = (0..self.element_count())
            .map(|x| {
                let mut below: Vec<Face> = self.lower[x].iter().map(|&y| self.support[y]).collect();
                below.sort();
                (self.support[x], below)
            })
            .collect();
        sig.sort();
        sig
    }
}

/// `P|_W`.
pub fn restrict_poset(p: &SimplicialPoset, w: Face) -> SimplicialPoset {
    p.restrict(w)
}

/// `P^{<i>}`.
pub fn poset_skeleton(p: &SimplicialPoset, i: usize) -> SimplicialPoset {
    p.skeleton(i)
}

/// CM-ness of `Γ(P)`, decided on its barycentric subdivision.
pub fn is_poset_cm(p: &SimplicialPoset, k: FieldSpec) -> Result<bool> {
    let oc = p.order_complex()?;
    Ok(ReisnerChecker::new(k).is_cm(&oc))
}

/// Largest `l ≤ cap` with `P` l-CM, or 0 if `P` is not CM.
pub(crate) fn poset_cm_level(p: &SimplicialPoset, k: FieldSpec, cap: usize) -> Result<usize> {
    let oc = p.order_complex()?;
    let mut checker = ReisnerChecker::new(k);
    if !checker.is_cm(&oc) {
        return Ok(0);
    }
    let n = p.vertex_count();
    let full = Face::full(n);
    let label = p.chain_vertices();
    let top = p.rank();
    let mut level = 1;
    while level < cap && level <= n {
        for w in subsets_of_size(full, level) {
            // order complex of P|_{-W} is the induced subcomplex on elements avoiding W
            let kept: Vec<usize> = (0..p.element_count())
                .filter(|&x| x != p.bottom && p.support(x).is_disjoint(w))
                .collect();
            let rank = kept.iter().map(|&x| p.rank_of(x)).max().unwrap_or(0);
            let mask = Face::from_vertices(kept.iter().map(|&x| label[x].unwrap()));
            if rank != top || !checker.is_cm(&oc.restrict_keep_labels(mask)) {
                return Ok(level);
            }
        }
        level += 1;
    }
    Ok(if level > n { cap.max(level) } else { level })
}

/// For all `W ⊆ V` with `#W < l`: `P|_{-W}` is CM and has rank `rank P`.
pub fn is_poset_l_cm(p: &SimplicialPoset, l: usize, k: FieldSpec) -> Result<bool> {
    let l = l.max(1);
    Ok(poset_cm_level(p, k, l)? >= l)
}

/// Largest `l ∈ [1, #V]` with `P` l-CM, or 0 if `P` is not CM.
pub fn poset_max_l(p: &SimplicialPoset, k: FieldSpec) -> Result<usize> {
    poset_cm_level(p, k, p.vertex_count().max(1))
}

/// The face ring `A_P` as a squarefree module over `k[t_1, .., t_n]`:
/// `(A_P)_F` has basis `{t_x : supp x = F}` and `t_j` sends `t_x` to the sum
/// of `t_z` over the elements `z` covering `x` with support `F ∪ {j}`.
pub fn face_ring_module(p: &SimplicialPoset) -> Result<SquarefreeModule> {
    let n = p.vertex_count();
    let mut basis: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    for x in 0..p.element_count() {
        basis.entry(p.support(x)).or_default().push(x);
    }
    let position = |x: usize| basis[&p.support(x)].iter().position(|&y| y == x).unwrap();
    let dims: BTreeMap<Face, usize> = basis.iter().map(|(f, v)| (*f, v.len())).collect();
    let mut maps: BTreeMap<(Face, u32), SparseMatrix> = BTreeMap::new();
    for (&f, elems) in &basis {
        for j in Face::full(n).difference(f).vertices() {
            let target = f.with(j);
            let Some(&rows) = dims.get(&target) else {
                continue;
            };
            let mut m = SparseMatrix::zeros(rows, elems.len());
            for (col, &x) in elems.iter().enumerate() {
                for &z in p.upper_covers(x) {
                    if p.support(z) == target {
                        m.add_to(position(z), col, 1);
                    }
                }
            }
            maps.insert((f, j), m);
        }
    }
    let module = SquarefreeModule::new(n, dims, maps)?;
    module
        .check_commutativity(FieldSpec::Rationals)
        .map_err(|e| Error::Internal(format!("face ring module: {e}")))?;
    Ok(module)
}

fn face_id(f: Face) -> String {
    f.to_string()
}

/// Face poset of `Δ` (faces ordered by inclusion); ids are the rendered faces.
pub fn face_poset(complex: &SimplicialComplex) -> SimplicialPoset {
    let faces = complex.all_faces();
    let covers = faces
        .iter()
        .flat_map(|g| g.vertices().map(move |v| (face_id(g.without(v)), face_id(*g))))
        .collect();
    let raw = RawPoset {
        elements: faces.iter().map(|f| face_id(*f)).collect(),
        bottom: face_id(Face::EMPTY),
        covers,
    };
    validate(&raw).expect("face posets are simplicial")
}

/// All proper subsets of `[d+1]` plus `m` top elements `t1..tm`, each covering
/// every `d`-subset: `m` copies of a `d`-simplex glued along their boundary.
pub fn glued_simplices(d: usize, m: usize) -> Result<SimplicialPoset> {
    if d == 0 || m == 0 || d + 1 > MAX_VERTICES {
        return Err(Error::InvalidPoset(PosetError::RankMismatch(format!(
            "glued_simplices needs d >= 1 and m >= 1, got d={d}, m={m}"
        ))));
    }
    let full = Face::full(d + 1);
    let mut faces: Vec<Face> = full.subsets().filter(|f| *f != full).collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let mut elements: Vec<String> = faces.iter().map(|f| face_id(*f)).collect();
    let mut covers: Vec<(String, String)> = faces
        .iter()
        .flat_map(|g| g.vertices().map(move |v| (face_id(g.without(v)), face_id(*g))))
        .collect();
    for t in 1..=m {
        let top = format!("t{t}");
        for v in full.vertices() {
            covers.push((face_id(full.without(v)), top.clone()));
        }
        elements.push(top);
    }
    validate(&RawPoset {
        elements,
        bottom: face_id(Face::EMPTY),
        covers,
    })
}

/// Seeded random simplicial poset with `n` atoms, built rank by rank.
///
/// For every support `U` of size `r ≥ 2` the generator collects the frames
/// (one element below for each `U ∖ {v}`) whose pieces pairwise share a lower
/// cover, and adds 0, 1 or 2 elements above each frame. Attempts that do not
/// reach `rank` are retried with the same stream.
pub fn random_simplicial_poset(n: usize, rank: usize, seed: u64) -> Result<SimplicialPoset> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let rank = rank.clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..100 {
        let p = random_attempt(n, rank, &mut rng)?;
        if p.rank() == rank {
            return Ok(p);
        }
        last = Some(p);
    }
    Ok(last.expect("at least one attempt"))
}

const FRAME_SAMPLE_LIMIT: usize = 64;

fn random_attempt(n: usize, rank: usize, rng: &mut ChaCha8Rng) -> Result<SimplicialPoset> {
    // element 0 is the bottom; lower[x] lists lower covers
    let mut support: Vec<Face> = vec![Face::EMPTY];
    let mut lower: Vec<Vec<usize>> = vec![Vec::new()];
    let mut by_support: HashMap<Face, Vec<usize>> = HashMap::new();
    by_support.insert(Face::EMPTY, vec![0]);
    for v in 1..=n as u32 {
        support.push(Face::singleton(v));
        lower.push(vec![0]);
        by_support.insert(Face::singleton(v), vec![support.len() - 1]);
    }
    for r in 2..=rank {
        for u in subsets_of_size(Face::full(n), r) {
            let sides: Vec<u32> = u.vertices().collect();
            let options: Vec<&Vec<usize>> = match sides
                .iter()
                .map(|&v| by_support.get(&u.without(v)))
                .collect::<Option<Vec<_>>>()
            {
                Some(o) => o,
                None => continue,
            };
            let total: usize = options.iter().map(|o| o.len()).product();
            let frames: Vec<Vec<usize>> = if total <= FRAME_SAMPLE_LIMIT {
                let mut all = vec![Vec::new()];
                for o in &options {
                    all = all
                        .into_iter()
                        .flat_map(|prefix: Vec<usize>| {
                            o.iter().map(move |&x| {
                                let mut p = prefix.clone();
                                p.push(x);
                                p
                            })
                        })
                        .collect();
                }
                all
            } else {
                (0..FRAME_SAMPLE_LIMIT)
                    .map(|_| options.iter().map(|o| o[rng.random_range(0..o.len())]).collect())
                    .collect()
            };
            let mut seen = std::collections::HashSet::new();
            for frame in frames {
                if !seen.insert(frame.clone()) {
                    continue;
                }
                let consistent = frame.iter().enumerate().all(|(a, &x)| {
                    frame[a + 1..]
                        .iter()
                        .all(|&y| lower[x].iter().any(|c| lower[y].contains(c)))
                });
                if !consistent {
                    continue;
                }
                let roll: f64 = rng.random();
                let copies = if roll < 0.35 {
                    0
                } else if roll < 0.8 {
                    1
                } else {
                    2
                };
                for _ in 0..copies {
                    support.push(u);
                    lower.push(frame.clone());
                    by_support.entry(u).or_default().push(support.len() - 1);
                }
            }
        }
    }
    let ids: Vec<String> = (0..support.len())
        .map(|x| match x {
            0 => "b".to_string(),
            x if x <= n => format!("a{x}"),
            x => format!("x{x}"),
        })
        .collect();
    let covers = lower
        .iter()
        .enumerate()
        .flat_map(|(x, ls)| ls.iter().map(move |&y| (y, x)))
        .map(|(y, x)| (ids[y].clone(), ids[x].clone()))
        .collect();
    validate(&RawPoset {
        elements: ids.clone(),
        bottom: ids[0].clone(),
        covers,
    })
}
