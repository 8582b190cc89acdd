use std::fmt;

use smallvec::SmallVec;

/// Vertex labels are arbitrary; nothing assumes contiguity.
pub type Vertex = u32;

/// An abstract simplex: a strictly increasing list of vertex labels.
///
/// The empty simplex (dimension -1) is a valid value and is a face of every
/// nonempty complex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(SmallVec<[Vertex; 6]>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(SmallVec::from_slice(&[v]))
    }

    /// Builds a simplex from arbitrary labels; sorts and deduplicates.
    pub fn new(vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: SmallVec<[Vertex; 6]> = vs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    /// Wraps a list that is already strictly increasing.
    pub fn from_sorted(vs: impl Into<SmallVec<[Vertex; 6]>>) -> Self {
        let v = vs.into();
        debug_assert!(
            v.windows(2).all(|w| w[0] < w[1]),
            "labels must be strictly increasing"
        );
        Simplex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension: one less than the number of vertices, so -1 for the empty
    /// simplex.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for &v in &self.0 {
            for &w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Simplex(out)
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Simplex(out)
    }

    /// Vertices of `self` that are not in `other`.
    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn insert(&self, v: Vertex) -> Simplex {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Simplex(out)
    }

    pub fn remove(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// The codimension-one faces, in drop-one order.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Calls `f` on every subset of the given size, in lexicographic order.
    pub fn for_each_subset(&self, size: usize, mut f: impl FnMut(&[Vertex])) {
        for_each_combination(&self.0, size, &mut f);
    }
}

/// Iterates over all `k`-element combinations of `items` in lexicographic
/// order, reusing one buffer (no per-item allocation).
pub(crate) fn for_each_combination(items: &[Vertex], k: usize, f: &mut impl FnMut(&[Vertex])) {
    let n = items.len();
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<Vertex> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                for j in i..k {
                    buf[j] = items[idx[j]];
                }
                break;
            }
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Vertex> for Simplex {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        Simplex::new(iter)
    }
}
