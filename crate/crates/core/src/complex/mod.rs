//! Abstract simplicial complexes stored by their maximal simplices.
//!
//! A [`Complex`] is immutable after construction and cheap to clone (the
//! payload sits behind an `Arc`). Face tables, f-vectors, and vertex
//! incidence are memoized on first use; the caches are thread-safe.
//!
//! Two degenerate complexes are distinguished: the void complex (no faces at
//! all, empty f-vector, Euler characteristic 0) and the complex whose only
//! face is the empty simplex (dimension -1), which arises as the link of a
//! maximal simplex. For every nonempty complex, the empty simplex is a face.

pub mod generators;
mod io;
mod iso;
mod simplex;
mod subdivision;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

pub(crate) use io::{complex_with_warnings, simplex_of_line};
pub use io::{parse_complex, write_complex, FormatError};
pub use iso::{are_isomorphic, isomorphism, IsoBudgetExhausted, DEFAULT_ISO_BUDGET};
pub use simplex::{Simplex, Vertex};
pub use subdivision::{barycentric_subdivision, dual_cone, Subdivision};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex {0} is not a face of the complex")]
    MissingSimplex(Simplex),
    #[error("operation requires a pure complex")]
    NotPure,
    #[error("relabeling map must be injective and cover every vertex")]
    BadRelabeling,
    #[error("{param} must be at least {min}, got {got}")]
    ParameterTooSmall {
        param: &'static str,
        min: u32,
        got: u32,
    },
    #[error("the empty simplex must be nonempty here")]
    EmptySimplex,
}

struct Inner {
    /// Sorted lexicographically; an antichain under inclusion.
    maximal: Vec<Simplex>,
    /// Sorted, distinct.
    vertices: Vec<Vertex>,
    /// `faces_by_size[s]` holds the faces with `s` vertices, sorted;
    /// index 0 is the empty simplex (present in every nonvoid complex).
    faces: OnceLock<Vec<Vec<Simplex>>>,
    f_vector: OnceLock<Vec<u64>>,
    /// vertex -> indices into `maximal`.
    incidence: OnceLock<HashMap<Vertex, Vec<u32>>>,
}

/// An abstract simplicial complex.
#[derive(Clone)]
pub struct Complex {
    inner: Arc<Inner>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.inner.maximal == other.inner.maximal
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.maximal.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(dim={}, maximal=[", self.dim())?;
        for (i, s) in self.maximal_simplices().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if i >= 24 {
                write!(f, "... {} total", self.maximal_simplices().len())?;
                break;
            }
            write!(f, "{s}")?;
        }
        write!(f, "])")
    }
}

impl Complex {
    /// The complex with no faces at all.
    pub fn void() -> Complex {
        Complex::build(Vec::new())
    }

    /// A single vertex.
    pub fn point(v: Vertex) -> Complex {
        Complex::build(vec![Simplex::vertex(v)])
    }

    /// The complex whose only face is the empty simplex.
    pub fn empty_simplex_only() -> Complex {
        Complex::build(vec![Simplex::empty()])
    }

    /// The full simplex on the given vertices (all subsets are faces).
    pub fn simplex(vs: impl IntoIterator<Item = Vertex>) -> Complex {
        Complex::build(vec![Simplex::new(vs)])
    }

    /// Builds a complex generated by the given simplices. Duplicates and
    /// simplices contained in others are dropped.
    pub fn from_maximal(sims: impl IntoIterator<Item = Simplex>) -> Complex {
        Complex::build(sims.into_iter().collect())
    }

    /// Convenience constructor for tests and generators.
    pub fn from_maximal_vertices<I, J>(lists: I) -> Complex
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = Vertex>,
    {
        Complex::build(lists.into_iter().map(Simplex::new).collect())
    }

    fn build(mut sims: Vec<Simplex>) -> Complex {
        // Sort by size descending, then lexicographically, so duplicates are
        // adjacent and potential supersets precede their subsets.
        sims.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sims.dedup();

        let same_size = sims
            .first()
            .map(|f| f.len() == sims.last().unwrap().len())
            .unwrap_or(true);
        let mut kept: Vec<Simplex> = if same_size {
            sims
        } else {
            let mut kept: Vec<Simplex> = Vec::with_capacity(sims.len());
            let mut incidence: HashMap<Vertex, Vec<u32>> = HashMap::new();
            for s in sims {
                if s.is_empty() {
                    if kept.is_empty() {
                        kept.push(s);
                    }
                    continue;
                }
                if !subsumed(&s, &kept, &incidence) {
                    let idx = kept.len() as u32;
                    for &v in s.vertices() {
                        incidence.entry(v).or_default().push(idx);
                    }
                    kept.push(s);
                }
            }
            kept
        };

        kept.sort_unstable();
        let mut vertices: Vec<Vertex> = kept
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();

        Complex {
            inner: Arc::new(Inner {
                maximal: kept,
                vertices,
                faces: OnceLock::new(),
                f_vector: OnceLock::new(),
                incidence: OnceLock::new(),
            }),
        }
    }

    /// True when the complex has no faces whatsoever.
    pub fn is_void(&self) -> bool {
        self.inner.maximal.is_empty()
    }

    /// Dimension of the largest simplex; -1 for the void complex and for the
    /// empty-simplex-only complex.
    pub fn dim(&self) -> i32 {
        self.inner
            .maximal
            .iter()
            .map(|s| s.dim())
            .max()
            .unwrap_or(-1)
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.inner.maximal
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.inner.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.vertices.len()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.inner.vertices.last().copied()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.inner.vertices.binary_search(&v).is_ok()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.inner.maximal.iter().all(|s| s.dim() == d)
    }

    fn incidence(&self) -> &HashMap<Vertex, Vec<u32>> {
        self.inner.incidence.get_or_init(|| {
            let mut map: HashMap<Vertex, Vec<u32>> = HashMap::new();
            for (i, s) in self.inner.maximal.iter().enumerate() {
                for &v in s.vertices() {
                    map.entry(v).or_default().push(i as u32);
                }
            }
            map
        })
    }

    /// Indices into `maximal_simplices` of the maximal simplices containing
    /// `s`. The empty simplex is contained in all of them.
    pub fn maximal_cofaces(&self, s: &Simplex) -> Vec<u32> {
        if s.is_empty() {
            return (0..self.inner.maximal.len() as u32).collect();
        }
        let inc = self.incidence();
        let mut lists: Vec<&Vec<u32>> = Vec::with_capacity(s.len());
        for &v in s.vertices() {
            match inc.get(&v) {
                Some(l) => lists.push(l),
                None => return Vec::new(),
            }
        }
        lists.sort_by_key(|l| l.len());
        lists[0]
            .iter()
            .copied()
            .filter(|&i| s.is_face_of(&self.inner.maximal[i as usize]))
            .collect()
    }

    /// Face membership test.
    pub fn contains(&self, s: &Simplex) -> bool {
        if s.is_empty() {
            return !self.is_void();
        }
        let inc = self.incidence();
        let mut best: Option<&Vec<u32>> = None;
        for &v in s.vertices() {
            match inc.get(&v) {
                Some(l) => {
                    if best.map(|b| l.len() < b.len()).unwrap_or(true) {
                        best = Some(l);
                    }
                }
                None => return false,
            }
        }
        best.unwrap()
            .iter()
            .any(|&i| s.is_face_of(&self.inner.maximal[i as usize]))
    }

    fn faces_by_size(&self) -> &Vec<Vec<Simplex>> {
        self.inner.faces.get_or_init(|| {
            if self.is_void() {
                return Vec::new();
            }
            let cap = self
                .inner
                .maximal
                .iter()
                .map(|s| s.len())
                .max()
                .unwrap_or(0);
            let mut by_size: Vec<Vec<Simplex>> = vec![Vec::new(); cap + 1];
            by_size[0].push(Simplex::empty());
            for m in &self.inner.maximal {
                for (size, bucket) in by_size.iter_mut().enumerate().skip(1).take(m.len()) {
                    m.for_each_subset(size, |sub| {
                        bucket.push(Simplex::from_sorted(sub));
                    });
                }
            }
            for bucket in by_size.iter_mut().skip(1) {
                bucket.sort_unstable();
                bucket.dedup();
            }
            by_size
        })
    }

    /// The faces of dimension `d`, sorted lexicographically. `d = -1` gives
    /// the empty simplex for any nonvoid complex; out-of-range dimensions
    /// give an empty slice.
    pub fn faces(&self, d: i32) -> &[Simplex] {
        if d < -1 {
            return &[];
        }
        let by_size = self.faces_by_size();
        let idx = (d + 1) as usize;
        if idx < by_size.len() {
            &by_size[idx]
        } else {
            &[]
        }
    }

    /// Iterates over every face, the empty simplex included.
    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces_by_size().iter().flatten()
    }

    /// `(f_-1, f_0, ..., f_d)`; empty for the void complex. Computed by
    /// streaming one dimension at a time so large complexes never hold their
    /// whole face table in memory.
    pub fn f_vector(&self) -> &[u64] {
        self.inner.f_vector.get_or_init(|| {
            if self.is_void() {
                return Vec::new();
            }
            if let Some(by_size) = self.inner.faces.get() {
                return by_size.iter().map(|b| b.len() as u64).collect();
            }
            let cap = self
                .inner
                .maximal
                .iter()
                .map(|s| s.len())
                .max()
                .unwrap_or(0);
            let mut f = vec![1u64];
            for size in 1..=cap {
                f.push(self.count_faces_of_size(size));
            }
            f
        })
    }

    fn count_faces_of_size(&self, size: usize) -> u64 {
        let cap = self
            .inner
            .maximal
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0);
        if size == 1 {
            return self.inner.vertices.len() as u64;
        }
        if cap <= 4 {
            // Pack each subset into a u128 so the per-dimension buffer is a
            // flat sortable vector.
            let mut buf: Vec<u128> = Vec::new();
            for m in &self.inner.maximal {
                m.for_each_subset(size, |sub| buf.push(pack(sub)));
            }
            buf.sort_unstable();
            buf.dedup();
            buf.len() as u64
        } else {
            let mut buf: Vec<Simplex> = Vec::new();
            for m in &self.inner.maximal {
                m.for_each_subset(size, |sub| buf.push(Simplex::from_sorted(sub)));
            }
            buf.sort_unstable();
            buf.dedup();
            buf.len() as u64
        }
    }

    /// Unreduced Euler characteristic: the alternating sum of face counts in
    /// dimensions 0 and up. Zero for the void complex and for the
    /// empty-simplex-only complex.
    pub fn euler_characteristic(&self) -> i64 {
        let f = self.f_vector();
        let mut chi = 0i64;
        for (size, &count) in f.iter().enumerate().skip(1) {
            let term = count as i64;
            if size % 2 == 1 {
                chi += term;
            } else {
                chi -= term;
            }
        }
        chi
    }

    /// The link of `s`: faces disjoint from `s` whose union with `s` is a
    /// face. The link of the empty simplex is the complex itself; the link
    /// of a maximal simplex is the empty-simplex-only complex.
    pub fn link(&self, s: &Simplex) -> Result<Complex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::MissingSimplex(s.clone()));
        }
        let gens: Vec<Simplex> = self
            .maximal_cofaces(s)
            .into_iter()
            .map(|i| self.inner.maximal[i as usize].difference(s))
            .collect();
        Ok(Complex::from_maximal(gens))
    }

    /// The closed star of `s`: the complex generated by the maximal
    /// simplices containing `s`.
    pub fn star(&self, s: &Simplex) -> Result<Complex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::MissingSimplex(s.clone()));
        }
        let gens: Vec<Simplex> = self
            .maximal_cofaces(s)
            .into_iter()
            .map(|i| self.inner.maximal[i as usize].clone())
            .collect();
        Ok(Complex::from_maximal(gens))
    }

    /// The simplicial join. The second factor is relabeled out of the way:
    /// every label of `other` is shifted by `max label of self + 1`.
    pub fn join(&self, other: &Complex) -> Complex {
        if self.is_void() || other.is_void() {
            return Complex::void();
        }
        let offset = self.max_vertex().map(|v| v + 1).unwrap_or(0);
        let mut gens = Vec::with_capacity(self.inner.maximal.len() * other.inner.maximal.len());
        for a in &self.inner.maximal {
            for b in &other.inner.maximal {
                let shifted = Simplex::from_sorted(
                    b.vertices().iter().map(|&v| v + offset).collect::<Vec<_>>(),
                );
                gens.push(a.union(&shifted));
            }
        }
        Complex::from_maximal(gens)
    }

    /// The cone: join with a fresh apex labeled `max label + 1`. The cone
    /// over the void complex is a single point.
    pub fn cone(&self) -> Complex {
        if self.is_void() {
            return Complex::point(0);
        }
        self.join(&Complex::point(0))
    }

    pub fn union_with(&self, other: &Complex) -> Complex {
        Complex::from_maximal(
            self.inner
                .maximal
                .iter()
                .chain(other.inner.maximal.iter())
                .cloned(),
        )
    }

    /// The full subcomplex spanned by a vertex set: all faces whose vertices
    /// lie in `keep`.
    pub fn full_subcomplex(&self, keep: &HashSet<Vertex>) -> Complex {
        let gens: Vec<Simplex> = self
            .inner
            .maximal
            .iter()
            .map(|m| {
                Simplex::from_sorted(
                    m.vertices()
                        .iter()
                        .copied()
                        .filter(|v| keep.contains(v))
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|s| !s.is_empty())
            .collect();
        Complex::from_maximal(gens)
    }

    /// True when `sub` (assumed a subcomplex) is full: every face of `self`
    /// spanned by vertices of `sub` already lies in `sub`.
    pub fn is_full_subcomplex(&self, sub: &Complex) -> bool {
        let keep: HashSet<Vertex> = sub.vertices().iter().copied().collect();
        for m in &self.inner.maximal {
            let restricted = Simplex::from_sorted(
                m.vertices()
                    .iter()
                    .copied()
                    .filter(|v| keep.contains(v))
                    .collect::<Vec<_>>(),
            );
            if !restricted.is_empty() && !sub.contains(&restricted) {
                return false;
            }
        }
        true
    }

    /// Occurrence counts of the codimension-one faces of the maximal
    /// simplices. Requires a pure complex of dimension >= 1.
    pub(crate) fn codim1_counts(&self) -> Vec<(Simplex, u32)> {
        let cap = self.inner.maximal.first().map(|s| s.len()).unwrap_or(0);
        if cap <= 4 {
            let mut buf: Vec<u128> = Vec::with_capacity(self.inner.maximal.len() * cap);
            for m in &self.inner.maximal {
                m.for_each_subset(cap - 1, |sub| buf.push(pack(sub)));
            }
            buf.sort_unstable();
            let mut out = Vec::new();
            let mut i = 0;
            while i < buf.len() {
                let mut j = i + 1;
                while j < buf.len() && buf[j] == buf[i] {
                    j += 1;
                }
                out.push((unpack(buf[i], cap - 1), (j - i) as u32));
                i = j;
            }
            out
        } else {
            let mut buf: Vec<Simplex> = Vec::with_capacity(self.inner.maximal.len() * cap);
            for m in &self.inner.maximal {
                m.for_each_subset(cap - 1, |sub| buf.push(Simplex::from_sorted(sub)));
            }
            buf.sort_unstable();
            let mut out = Vec::new();
            let mut i = 0;
            while i < buf.len() {
                let mut j = i + 1;
                while j < buf.len() && buf[j] == buf[i] {
                    j += 1;
                }
                out.push((buf[i].clone(), (j - i) as u32));
                i = j;
            }
            out
        }
    }

    /// The boundary subcomplex of a pure complex: the closure of the
    /// codimension-one faces lying in exactly one maximal simplex. For a
    /// pure 0-dimensional complex the boundary is void.
    pub fn boundary_subcomplex(&self) -> Result<Complex, ComplexError> {
        if self.is_void() {
            return Ok(Complex::void());
        }
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        if self.dim() <= 0 {
            return Ok(Complex::void());
        }
        let gens: Vec<Simplex> = self
            .codim1_counts()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(s, _)| s)
            .collect();
        Ok(Complex::from_maximal(gens))
    }

    /// True when the complex is pure, connected, and every codimension-one
    /// face lies in exactly two maximal simplices (for dimension 0: exactly
    /// two vertices).
    pub fn is_closed_pseudomanifold(&self) -> bool {
        if self.is_void() || !self.is_pure() {
            return false;
        }
        let n = self.dim();
        if n <= 0 {
            return n == 0 && self.vertex_count() == 2;
        }
        if !self.is_connected() {
            return false;
        }
        self.codim1_counts().iter().all(|&(_, c)| c == 2)
    }

    fn vertex_component_roots(&self) -> Option<(UnionFind, HashMap<Vertex, usize>)> {
        if self.inner.vertices.is_empty() {
            return None;
        }
        let index: HashMap<Vertex, usize> = self
            .inner
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut uf = UnionFind::new(self.inner.vertices.len());
        for m in &self.inner.maximal {
            let vs = m.vertices();
            for w in vs.windows(2) {
                uf.union(index[&w[0]], index[&w[1]]);
            }
        }
        Some((uf, index))
    }

    /// Connected components, each as a complex. The void complex has none;
    /// a complex whose only face is the empty simplex is its own single
    /// component.
    pub fn connected_components(&self) -> Vec<Complex> {
        let Some((mut uf, index)) = self.vertex_component_roots() else {
            return if self.is_void() {
                Vec::new()
            } else {
                vec![self.clone()]
            };
        };
        let mut groups: HashMap<usize, Vec<Simplex>> = HashMap::new();
        for m in &self.inner.maximal {
            let root = uf.find(index[&m.vertices()[0]]);
            groups.entry(root).or_default().push(m.clone());
        }
        let mut out: Vec<(Vertex, Complex)> = groups
            .into_values()
            .map(|g| {
                let c = Complex::from_maximal(g);
                (c.vertices()[0], c)
            })
            .collect();
        out.sort_by_key(|(v, _)| *v);
        out.into_iter().map(|(_, c)| c).collect()
    }

    pub fn is_connected(&self) -> bool {
        let Some((mut uf, _)) = self.vertex_component_roots() else {
            return !self.is_void();
        };
        let roots: HashSet<usize> = (0..self.inner.vertices.len()).map(|i| uf.find(i)).collect();
        roots.len() <= 1
    }

    /// Applies a vertex relabeling. The map must cover every vertex and be
    /// injective on the vertex set.
    pub fn relabel(&self, map: &HashMap<Vertex, Vertex>) -> Result<Complex, ComplexError> {
        let mut seen = HashSet::with_capacity(self.vertex_count());
        for v in self.vertices() {
            match map.get(v) {
                Some(&w) => {
                    if !seen.insert(w) {
                        return Err(ComplexError::BadRelabeling);
                    }
                }
                None => return Err(ComplexError::BadRelabeling),
            }
        }
        let gens: Vec<Simplex> = self
            .inner
            .maximal
            .iter()
            .map(|m| Simplex::new(m.vertices().iter().map(|v| map[v])))
            .collect();
        Ok(Complex::from_maximal(gens))
    }
}

fn subsumed(s: &Simplex, kept: &[Simplex], incidence: &HashMap<Vertex, Vec<u32>>) -> bool {
    let mut best: Option<&Vec<u32>> = None;
    for &v in s.vertices() {
        match incidence.get(&v) {
            Some(l) => {
                if best.map(|b| l.len() < b.len()).unwrap_or(true) {
                    best = Some(l);
                }
            }
            None => return false,
        }
    }
    match best {
        Some(list) => list.iter().any(|&i| s.is_face_of(&kept[i as usize])),
        None => false,
    }
}

pub(crate) fn pack(vs: &[Vertex]) -> u128 {
    debug_assert!(vs.len() <= 4);
    let mut x: u128 = 0;
    for (i, &v) in vs.iter().enumerate() {
        x |= (v as u128 + 1) << (32 * i);
    }
    x
}

pub(crate) fn unpack(mut x: u128, len: usize) -> Simplex {
    let mut vs: Vec<Vertex> = Vec::with_capacity(len);
    for _ in 0..len {
        vs.push((x & 0xffff_ffff) as u32 - 1);
        x >>= 32;
    }
    Simplex::from_sorted(vs)
}

/// Union-find with path halving, used for component computations.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
