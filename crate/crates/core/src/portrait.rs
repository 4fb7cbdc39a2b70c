//! Automorphisms of the p-adic tree truncated at a finite level.
//!
//! An automorphism of `T_n` is stored as its *portrait*: one residue mod `p`
//! per internal vertex (depth `< n`), listed breadth-first with the children of
//! every vertex ordered `1..=p`. The residue `l` at a vertex `u` means that `u`
//! sends its child `u x` to `u^f (x + l)`, letters taken cyclically. Two
//! portraits are equal as automorphisms iff their label vectors are equal, so
//! the label vector doubles as the canonical encoding.
//!
//! Elements act on the right: `v^(fg) = (v^f)^g`.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound on the number of internal vertices of a shape.
const MAX_INTERNAL: u64 = 1 << 24;

thread_local! {
    static IMAGE_SCRATCH: RefCell<Vec<u32>> = const { RefCell::new(Vec::new()) };
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The truncated tree `T_n` over the alphabet `{1, ..., p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeShape {
    p: u8,
    depth: u8,
    internal: u32,
}

impl TreeShape {
    pub fn new(p: u32, depth: u32) -> Result<Self> {
        if !(3..=255).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if depth == 0 {
            return Err(Error::InvalidDepth);
        }
        let too_large = Error::ShapeTooLarge {
            p: p as u8,
            depth: depth.min(255) as u8,
        };
        if depth > 255 {
            return Err(too_large);
        }
        let mut internal: u64 = 0;
        let mut level: u64 = 1;
        for _ in 0..depth {
            internal += level;
            if internal > MAX_INTERNAL {
                return Err(too_large);
            }
            level *= p as u64;
        }
        Ok(Self {
            p: p as u8,
            depth: depth as u8,
            internal: internal as u32,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    /// Number of vertices of depth `< n`, i.e. `(p^n - 1)/(p - 1)`.
    pub fn internal_count(&self) -> usize {
        self.internal as usize
    }

    /// Number of vertices on level `n`, `p^n`.
    pub fn leaf_count(&self) -> u64 {
        self.level_size(self.depth as usize) as u64
    }

    /// Index of the first vertex of level `d` in breadth-first order.
    pub fn level_offset(&self, d: usize) -> usize {
        let p = self.p as usize;
        let mut off = 0;
        let mut size = 1;
        for _ in 0..d {
            off += size;
            size *= p;
        }
        off
    }

    pub fn level_size(&self, d: usize) -> usize {
        (self.p as usize).pow(d as u32)
    }

    /// The same alphabet with a different depth.
    pub fn with_depth(&self, depth: u32) -> Result<Self> {
        Self::new(self.p as u32, depth)
    }

    fn check_same(&self, other: &TreeShape) -> Result<()> {
        if self != other {
            return Err(Error::ShapeMismatch {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }

    /// Writes the labels of `fg` into `out`.
    ///
    /// `label_fg(u) = label_f(u) + label_g(u^f)`; the positions of `u^f` are
    /// tracked level by level in a thread-local buffer.
    pub fn compose_labels(&self, f: &[u8], g: &[u8], out: &mut [u8]) {
        let p = self.p as usize;
        let n = self.depth as usize;
        debug_assert_eq!(f.len(), self.internal_count());
        debug_assert_eq!(g.len(), self.internal_count());
        debug_assert_eq!(out.len(), self.internal_count());
        IMAGE_SCRATCH.with(|cell| {
            let mut img = cell.borrow_mut();
            img.clear();
            img.resize(self.internal_count(), 0);
            let (mut off, mut size) = (0usize, 1usize);
            for d in 0..n {
                let next = off + size;
                let last = d + 1 == n;
                for j in 0..size {
                    let v = off + j;
                    let iv = img[v] as usize;
                    let fl = f[v] as usize;
                    out[v] = ((fl + g[off + iv] as usize) % p) as u8;
                    if !last {
                        let base = next + j * p;
                        let ibase = iv * p;
                        for c in 0..p {
                            let t = c + fl;
                            img[base + c] = (ibase + if t >= p { t - p } else { t }) as u32;
                        }
                    }
                }
                off = next;
                size *= p;
            }
        });
    }

    /// Writes the labels of `f^{-1}` into `out`.
    pub fn invert_labels(&self, f: &[u8], out: &mut [u8]) {
        let p = self.p as usize;
        let n = self.depth as usize;
        IMAGE_SCRATCH.with(|cell| {
            let mut img = cell.borrow_mut();
            img.clear();
            img.resize(self.internal_count(), 0);
            let (mut off, mut size) = (0usize, 1usize);
            for d in 0..n {
                let next = off + size;
                let last = d + 1 == n;
                for j in 0..size {
                    let v = off + j;
                    let iv = img[v] as usize;
                    let fl = f[v] as usize;
                    out[off + iv] = ((p - fl) % p) as u8;
                    if !last {
                        for c in 0..p {
                            img[next + j * p + c] = (iv * p + (c + fl) % p) as u32;
                        }
                    }
                }
                off = next;
                size *= p;
            }
        });
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{} over p = {}", self.depth, self.p)
    }
}

/// An automorphism of a truncated tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    shape: TreeShape,
    labels: Box<[u8]>,
}

/// Root label plus the `p` sections at the first-level vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiDecomposition {
    pub root_label: u8,
    pub sections: Vec<Portrait>,
}

impl Portrait {
    pub fn identity(shape: TreeShape) -> Self {
        Self {
            shape,
            labels: vec![0; shape.internal_count()].into_boxed_slice(),
        }
    }

    /// Rooted automorphism whose only label is `k` at the root.
    pub fn rooted(shape: TreeShape, k: i64) -> Self {
        let mut id = Self::identity(shape);
        id.labels[0] = k.rem_euclid(shape.p as i64) as u8;
        id
    }

    pub fn from_labels(shape: TreeShape, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != shape.internal_count() {
            return Err(Error::LabelCount {
                expected: shape.internal_count(),
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= shape.p) {
            return Err(Error::InvalidLabel {
                label: bad as u32,
                p: shape.p,
            });
        }
        Ok(Self {
            shape,
            labels: labels.into_boxed_slice(),
        })
    }

    /// Caller guarantees the labels are valid for `shape`.
    pub(crate) fn from_slice_unchecked(shape: TreeShape, labels: &[u8]) -> Self {
        Self {
            shape,
            labels: labels.into(),
        }
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        self.shape.check_same(&other.shape)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Portrait) -> Portrait {
        let mut out = vec![0; self.labels.len()].into_boxed_slice();
        self.shape.compose_labels(&self.labels, &other.labels, &mut out);
        Portrait {
            shape: self.shape,
            labels: out,
        }
    }

    pub fn inverse(&self) -> Portrait {
        let mut out = vec![0; self.labels.len()].into_boxed_slice();
        self.shape.invert_labels(&self.labels, &mut out);
        Portrait {
            shape: self.shape,
            labels: out,
        }
    }

    /// `self^k` for any integer `k`, by square-and-multiply.
    pub fn pow(&self, k: i64) -> Portrait {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Portrait::identity(self.shape);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose_unchecked(&base);
            }
        }
        acc
    }

    /// `g^{-1} self g`.
    pub fn conjugate_by(&self, g: &Portrait) -> Result<Portrait> {
        self.shape.check_same(&g.shape)?;
        Ok(g.inverse().compose_unchecked(self).compose_unchecked(g))
    }

    /// `[self, g] = self^{-1} g^{-1} self g`.
    pub fn commutator(&self, g: &Portrait) -> Result<Portrait> {
        self.shape.check_same(&g.shape)?;
        Ok(self
            .inverse()
            .compose_unchecked(&g.inverse())
            .compose_unchecked(self)
            .compose_unchecked(g))
    }

    /// Least `m >= 1` with `self^m = 1`. Always a power of `p`, found by
    /// repeated `p`-th powering.
    pub fn order(&self) -> u64 {
        let p = self.shape.p as i64;
        let mut m = 1u64;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.pow(p);
            m *= p as u64;
        }
        m
    }

    /// Image of a vertex given as letters in `1..=p`.
    pub fn apply(&self, vertex: &[u8]) -> Result<Vec<u8>> {
        let p = self.shape.p as usize;
        if vertex.len() > self.shape.depth as usize {
            return Err(Error::VertexTooLong {
                len: vertex.len(),
                depth: self.shape.depth,
            });
        }
        let mut image = Vec::with_capacity(vertex.len());
        let (mut off, mut size, mut pos) = (0usize, 1usize, 0usize);
        for &letter in vertex {
            if letter == 0 || letter as usize > p {
                return Err(Error::InvalidLetter {
                    letter,
                    p: self.shape.p,
                });
            }
            let c = letter as usize - 1;
            let l = self.labels[off + pos] as usize;
            image.push(((c + l) % p) as u8 + 1);
            pos = pos * p + c;
            off += size;
            size *= p;
        }
        Ok(image)
    }

    /// True iff every label above level `k` vanishes, i.e. `self` fixes every
    /// vertex of length `<= k`.
    pub fn stabilizes_level(&self, k: usize) -> Result<bool> {
        if k > self.shape.depth as usize {
            return Err(Error::LevelOutOfRange {
                k,
                depth: self.shape.depth,
            });
        }
        let end = self.shape.level_offset(k);
        Ok(self.labels[..end].iter().all(|&l| l == 0))
    }

    /// Image under the restriction to `T_k`, `1 <= k <= n`.
    pub fn truncate(&self, k: usize) -> Result<Portrait> {
        if k == 0 || k > self.shape.depth as usize {
            return Err(Error::LevelOutOfRange {
                k,
                depth: self.shape.depth,
            });
        }
        let shape = self.shape.with_depth(k as u32)?;
        Ok(Portrait {
            shape,
            labels: self.labels[..shape.internal_count()].into(),
        })
    }

    pub fn psi(&self) -> Result<PsiDecomposition> {
        let n = self.shape.depth as usize;
        if n < 2 {
            return Err(Error::DepthOneDecomposition);
        }
        let p = self.shape.p as usize;
        let sub = self.shape.with_depth(n as u32 - 1)?;
        let sections = (0..p)
            .map(|c| {
                let mut labels = Vec::with_capacity(sub.internal_count());
                for d in 0..n - 1 {
                    let width = sub.level_size(d);
                    let start = self.shape.level_offset(d + 1) + c * width;
                    labels.extend_from_slice(&self.labels[start..start + width]);
                }
                Portrait {
                    shape: sub,
                    labels: labels.into_boxed_slice(),
                }
            })
            .collect();
        Ok(PsiDecomposition {
            root_label: self.labels[0],
            sections,
        })
    }

    /// Inverse of [`Portrait::psi`]: builds the automorphism with the given
    /// root label and sections.
    pub fn assemble(d: &PsiDecomposition) -> Result<Portrait> {
        let first = d
            .sections
            .first()
            .ok_or_else(|| Error::InconsistentSections("no sections".into()))?;
        let sub = first.shape;
        let p = sub.p as usize;
        if d.sections.len() != p {
            return Err(Error::InconsistentSections(format!(
                "expected {p} sections, got {}",
                d.sections.len()
            )));
        }
        if let Some(bad) = d.sections.iter().find(|s| s.shape != sub) {
            return Err(Error::InconsistentSections(format!(
                "{} differs from {}",
                bad.shape, sub
            )));
        }
        if d.root_label >= sub.p {
            return Err(Error::InvalidLabel {
                label: d.root_label as u32,
                p: sub.p,
            });
        }
        let shape = sub.with_depth(sub.depth as u32 + 1)?;
        let mut labels = Vec::with_capacity(shape.internal_count());
        labels.push(d.root_label);
        for depth in 0..sub.depth as usize {
            let off = sub.level_offset(depth);
            let width = sub.level_size(depth);
            for s in &d.sections {
                labels.extend_from_slice(&s.labels[off..off + width]);
            }
        }
        Ok(Portrait {
            shape,
            labels: labels.into_boxed_slice(),
        })
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Portrait({self})")
    }
}

/// Canonical text form `p,n:l0,l1,...`.
impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}:", self.shape.p, self.shape.depth)?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Portrait {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Encoding(s.to_string());
        let (head, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let (p, n) = head.split_once(',').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let shape = TreeShape::new(p, n)?;
        let labels = body
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Portrait::from_labels(shape, labels)
    }
}

/// Parses a vertex such as `"3 1"`, `"3,1"` or `"31"` into letters.
pub fn parse_vertex(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parse = |t: &str, pos: usize| {
        t.parse::<u8>().map_err(|_| Error::Parse {
            pos,
            msg: format!("bad letter {t:?}"),
        })
    };
    if s.contains([' ', ',']) {
        s.split([' ', ','])
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(i, t)| parse(t, i))
            .collect()
    } else {
        s.char_indices()
            .map(|(i, c)| parse(&c.to_string(), i))
            .collect()
    }
}
