//! Σ-sets, Beauville pairs, and the search for them on an enumerated `G_n`.
//!
//! For a generating pair `(x, y)` of `G`,
//! `Σ(x, y)` is the union of all conjugates of `⟨x⟩`, `⟨y⟩` and `⟨xy⟩`. Two
//! pairs form a Beauville structure when their Σ-sets meet only in the
//! identity.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::portrait::Portrait;
use crate::quotient::{line_of, QuotientGroup, SubgroupHandle};

pub mod verify;

/// Groups above this order are refused by [`brute_force_search`].
pub const BRUTE_FORCE_LIMIT: usize = 1000;

pub fn cyclic_subgroup(g: &QuotientGroup, x: u32) -> SubgroupHandle {
    g.generate([x])
}

/// Smallest index among the generators of `⟨x⟩`; names the subgroup.
pub fn cyclic_id(g: &QuotientGroup, x: u32) -> u32 {
    let o = g.element_order(x);
    if o == 1 {
        return 0;
    }
    let p = g.p() as u64;
    let mut best = x;
    let mut y = x;
    for k in 2..o {
        y = g.mul(y, x);
        if k % p != 0 {
            best = best.min(y);
        }
    }
    best
}

fn powers(g: &QuotientGroup, x: u32) -> Vec<u32> {
    let mut out = vec![0u32];
    let mut y = x;
    while y != 0 {
        out.push(y);
        y = g.mul(y, x);
    }
    out
}

/// `(x, y, xy)` with `⟨x, y⟩ = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingTriple {
    x: u32,
    y: u32,
    xy: u32,
}

impl GeneratingTriple {
    /// Fails with [`Error::NonGenerating`] unless the closure of `{x, y}` is
    /// all of `G`.
    pub fn new(g: &QuotientGroup, x: u32, y: u32) -> Result<Self> {
        let closure = g.generate([x, y]);
        if closure.order() != g.order() {
            return Err(Error::NonGenerating(format!(
                "⟨{}, {}⟩ has order {} < {}",
                g.portrait(x),
                g.portrait(y),
                closure.order(),
                g.order()
            )));
        }
        Ok(Self {
            x,
            y,
            xy: g.mul(x, y),
        })
    }

    pub fn from_portraits(g: &QuotientGroup, x: &Portrait, y: &Portrait) -> Result<Self> {
        Self::new(g, g.require(x)?, g.require(y)?)
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn y(&self) -> u32 {
        self.y
    }

    pub fn xy(&self) -> u32 {
        self.xy
    }

    pub fn elements(&self) -> [u32; 3] {
        [self.x, self.y, self.xy]
    }
}

#[derive(Clone, Debug)]
pub struct SigmaSet {
    members: FixedBitSet,
    size: usize,
    source: (u32, u32),
}

impl SigmaSet {
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|i| i as u32)
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    /// The `(x, y)` the set was built from.
    pub fn source(&self) -> (u32, u32) {
        self.source
    }
}

/// Union of the conjugacy orbits of `⟨x⟩` for each `x` in `seeds`: a BFS on
/// cyclic subgroups (named by [`cyclic_id`]) under conjugation by `a` and `b`.
pub fn orbit_union(g: &QuotientGroup, seeds: &[u32]) -> FixedBitSet {
    let mut members = FixedBitSet::with_capacity(g.order());
    members.insert(0);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for &s in seeds {
        let id = cyclic_id(g, s);
        if seen.insert(id) {
            queue.push_back(id);
        }
    }
    while let Some(z) = queue.pop_front() {
        for y in powers(g, z) {
            members.insert(y as usize);
        }
        for c in [g.a(), g.b()] {
            let id = cyclic_id(g, g.conj(z, c));
            if seen.insert(id) {
                queue.push_back(id);
            }
        }
    }
    members
}

pub fn sigma_set(t: &GeneratingTriple, g: &QuotientGroup) -> SigmaSet {
    let members = orbit_union(g, &t.elements());
    SigmaSet {
        size: members.count_ones(..),
        members,
        source: (t.x, t.y),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub beauville: bool,
    pub sigma1: usize,
    pub sigma2: usize,
    /// Least nontrivial element of `Σ_1 ∩ Σ_2`, if any.
    pub common: Option<u32>,
}

/// Literal check of `Σ(t1) ∩ Σ(t2) = 1`.
pub fn is_beauville_pair(
    t1: &GeneratingTriple,
    t2: &GeneratingTriple,
    g: &QuotientGroup,
) -> PairCheck {
    let (s1, s2) = rayon::join(|| sigma_set(t1, g), || sigma_set(t2, g));
    let mut meet = s1.members.clone();
    meet.intersect_with(&s2.members);
    let common = meet.ones().find(|&i| i != 0).map(|i| i as u32);
    PairCheck {
        beauville: common.is_none(),
        sigma1: s1.size,
        sigma2: s2.size,
        common,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Skips candidate pairs in which some element of the first triple and
    /// some element of the second lie in a common maximal subgroup. Can
    /// find structures but can never rule them out.
    Pruned,
    /// Every pair of generating triples.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Lexicographically least `(x1, y1, x2, y2)` in the searched space.
    Found { pair: [u32; 4], candidates: u64 },
    /// No structure in the searched space.
    NotFound { strategy: Strategy, candidates: u64 },
    /// `G` is cyclic, so it has no generating pair of the required kind.
    Cyclic,
}

/// Per-element data used by the search: the conjugacy class of the unique
/// subgroup of order `p` in `⟨x⟩`, and the maximal-subgroup line of `x`.
///
/// In a `p`-group two cyclic subgroups meet nontrivially iff they share
/// their subgroup of order `p`, so `Σ(x1, y1) ∩ Σ(x2, y2) = 1` iff the two
/// triples have no such class in common.
pub struct SearchIndex {
    bottom: Vec<u32>,
    line: Vec<u8>,
    classes: usize,
}

const NO_LINE: u8 = u8::MAX;

impl SearchIndex {
    pub fn new(g: &QuotientGroup) -> Result<Self> {
        let coords = g.abelian_coordinates().ok_or_else(|| {
            Error::Precondition("G/G' is not C_p x C_p with a, b as basis".into())
        })?;
        let p = g.p();
        let line: Vec<u8> = coords
            .iter()
            .map(|&c| line_of(c, p).map_or(NO_LINE, |l| l as u8))
            .collect();
        let bottom_id: Vec<u32> = g
            .elements()
            .into_par_iter()
            .map(|x| {
                let o = g.element_order(x);
                if o == 1 {
                    u32::MAX
                } else {
                    cyclic_id(g, g.pow(x, (o / p as u64) as i64))
                }
            })
            .collect();
        // Conjugacy classes of subgroups of order p, numbered in order of
        // their least member.
        let mut class_of = vec![u32::MAX; g.order()];
        let mut reps: Vec<u32> = bottom_id.iter().copied().filter(|&z| z != u32::MAX).collect();
        reps.sort_unstable();
        reps.dedup();
        let mut classes = 0u32;
        for &r in &reps {
            if class_of[r as usize] != u32::MAX {
                continue;
            }
            class_of[r as usize] = classes;
            let mut queue = VecDeque::from([r]);
            while let Some(z) = queue.pop_front() {
                for c in [g.a(), g.b()] {
                    let w = cyclic_id(g, g.conj(z, c));
                    if class_of[w as usize] == u32::MAX {
                        class_of[w as usize] = classes;
                        queue.push_back(w);
                    }
                }
            }
            classes += 1;
        }
        let bottom = bottom_id
            .iter()
            .map(|&z| if z == u32::MAX { u32::MAX } else { class_of[z as usize] })
            .collect();
        Ok(Self {
            bottom,
            line,
            classes: classes as usize,
        })
    }

    pub fn bottom_class(&self, x: u32) -> Option<u32> {
        let c = self.bottom[x as usize];
        (c != u32::MAX).then_some(c)
    }

    pub fn line(&self, x: u32) -> Option<usize> {
        let l = self.line[x as usize];
        (l != NO_LINE).then_some(l as usize)
    }

    /// Number of conjugacy classes of subgroups of order `p`.
    pub fn class_count(&self) -> usize {
        self.classes
    }
}

fn is_cyclic(g: &QuotientGroup) -> bool {
    g.elements().any(|x| g.element_order(x) as usize == g.order())
}

/// Searches for a Beauville structure. Candidates are generating pairs in
/// lexicographic order of `(x1, y1)`, and for the first `(x1, y1)` that
/// admits a partner, the least partner `(x2, y2)`; the witness is therefore
/// the least successful `(x1, y1, x2, y2)`.
pub fn search_beauville(g: &QuotientGroup, strategy: Strategy) -> Result<SearchOutcome> {
    if is_cyclic(g) {
        return Ok(SearchOutcome::Cyclic);
    }
    let p = g.p() as usize;
    if g.order() / g.frattini().order() != p * p {
        return Err(Error::Precondition("G is not 2-generated with |G : Φ(G)| = p^2".into()));
    }
    let idx = SearchIndex::new(g)?;
    let outside_phi: Vec<u32> = g.elements().filter(|&x| idx.line(x).is_some()).collect();
    let pruned = strategy == Strategy::Pruned;
    let mut failed: HashSet<([u32; 3], [u8; 3])> = HashSet::new();
    let mut candidates = 0u64;

    for &x1 in &outside_phi {
        let l1 = idx.line(x1).unwrap();
        for &y1 in &outside_phi {
            let m1 = idx.line(y1).unwrap();
            if m1 == l1 {
                continue;
            }
            let xy1 = g.mul(x1, y1);
            let k1 = [x1, y1, xy1].map(|z| idx.bottom[z as usize]);
            let lines1 = [x1, y1, xy1].map(|z| idx.line[z as usize]);
            let mut key = k1;
            key.sort_unstable();
            let mut line_key = if pruned { lines1 } else { [0; 3] };
            line_key.sort_unstable();
            let memo = (key, line_key);
            candidates += 1;
            if failed.contains(&memo) {
                continue;
            }
            let allowed = |z: u32| {
                !k1.contains(&idx.bottom[z as usize])
                    && (!pruned || !lines1.contains(&idx.line[z as usize]))
            };
            let partner = outside_phi.par_iter().find_map_first(|&x2| {
                if !allowed(x2) {
                    return None;
                }
                let l2 = idx.line[x2 as usize];
                outside_phi.iter().find_map(|&y2| {
                    if idx.line[y2 as usize] == l2 || !allowed(y2) {
                        return None;
                    }
                    allowed(g.mul(x2, y2)).then_some((x2, y2))
                })
            });
            match partner {
                Some((x2, y2)) => {
                    return Ok(SearchOutcome::Found {
                        pair: [x1, y1, x2, y2],
                        candidates,
                    })
                }
                None => {
                    failed.insert(memo);
                }
            }
        }
    }
    Ok(SearchOutcome::NotFound {
        strategy,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub pair: Option<[u32; 4]>,
    pub generating_pairs: usize,
    pub distinct_sigma: usize,
}

/// Independent oracle: generation by closure, Σ as the union of the
/// conjugacy classes of every power of `x`, `y`, `xy`, and a pairwise scan
/// of the distinct Σ-sets. No pruning; refuses groups above
/// [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_search(g: &QuotientGroup) -> Result<BruteForceOutcome> {
    let n = g.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Precondition(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} elements, G has {n}"
        )));
    }
    // conjugacy classes of elements
    let mut class = vec![u32::MAX; n];
    let mut members: Vec<Vec<u32>> = Vec::new();
    for x in g.elements() {
        if class[x as usize] != u32::MAX {
            continue;
        }
        let id = members.len() as u32;
        let mut orbit = Vec::new();
        for h in g.elements() {
            let y = g.conj(x, h);
            if class[y as usize] == u32::MAX {
                class[y as usize] = id;
                orbit.push(y);
            }
        }
        members.push(orbit);
    }
    let sigma = |x: u32, y: u32| {
        let mut set = FixedBitSet::with_capacity(n);
        let xy = g.mul(x, y);
        for z in [x, y, xy] {
            let mut w = 0u32;
            loop {
                for &c in &members[class[w as usize] as usize] {
                    set.insert(c as usize);
                }
                w = g.mul(w, z);
                if w == 0 {
                    break;
                }
            }
        }
        set
    };
    let mut distinct: Vec<(FixedBitSet, [u32; 2])> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut generating_pairs = 0;
    for x in g.elements() {
        for y in g.elements() {
            if g.generate([x, y]).order() != n {
                continue;
            }
            generating_pairs += 1;
            let s = sigma(x, y);
            let key: Vec<usize> = s.ones().collect();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(distinct.len());
                distinct.push((s, [x, y]));
            }
        }
    }
    let mut pair = None;
    'outer: for (s1, [x1, y1]) in &distinct {
        for (s2, [x2, y2]) in &distinct {
            if s1.intersection(s2).count() == 1 {
                pair = Some([*x1, *y1, *x2, *y2]);
                break 'outer;
            }
        }
    }
    Ok(BruteForceOutcome {
        pair,
        generating_pairs,
        distinct_sigma: distinct.len(),
    })
}
