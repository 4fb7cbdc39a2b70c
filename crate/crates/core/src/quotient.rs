//! The finite quotient `G_n = G / st_G(n)` as a concrete group of depth-`n`
//! portraits, enumerated by breadth-first closure, plus the subgroup
//! machinery the verifiers need (derived subgroup, centre, Frattini
//! subgroup, level stabilisers, commutator subgroups, maximal subgroups).
//!
//! Elements are addressed by `u32` indices. After enumeration the elements
//! are sorted by label vector, so index order is the lexicographic order of
//! canonical encodings and index 0 is the identity.

use std::cell::RefCell;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::hash::BuildHasher;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use hashbrown::HashTable;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::ggs::{classify, inv_mod, make_a, make_b, DefiningVector};
use crate::portrait::{Portrait, TreeShape};

pub const DEFAULT_BUDGET: usize = 10_000_000;

thread_local! {
    static PRODUCT: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

/// A subgroup of an enumerated [`QuotientGroup`], stored by its members.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    members: FixedBitSet,
    order: usize,
    generators: Vec<u32>,
    normal: bool,
}

/// Two handles are equal when they have the same members, whatever their
/// generators.
impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupHandle {}

impl SubgroupHandle {
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|i| i as u32)
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

#[derive(Default)]
struct Caches {
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u64>>,
    derived: OnceLock<SubgroupHandle>,
    center: OnceLock<SubgroupHandle>,
    frattini: OnceLock<SubgroupHandle>,
    coordinates: OnceLock<Option<Vec<[u8; 2]>>>,
}

/// The enumerated group `G_n`.
pub struct QuotientGroup {
    vector: DefiningVector,
    shape: TreeShape,
    stride: usize,
    labels: Vec<u8>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
    a: u32,
    b: u32,
    cache: Caches,
}

impl std::fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientGroup")
            .field("vector", &self.vector)
            .field("depth", &self.shape.depth())
            .field("order", &self.order())
            .finish()
    }
}

/// `Some(|G_n|)` when a closed formula predicts it; `Some(u128::MAX)` when
/// the prediction overflows.
fn predicted_size(v: &DefiningVector, n: u32) -> Option<u128> {
    let c = classify(v);
    let log = c.predicted_log_order(n)?;
    Some(c.predicted_order(n).unwrap_or(if log > 0 { u128::MAX } else { 1 }))
}

impl QuotientGroup {
    /// Closes `{a, b}` under right multiplication by `a, b, a^{-1}, b^{-1}`.
    ///
    /// Fails with [`Error::BudgetExceeded`] as soon as the element count
    /// passes `budget`, or up front when the order formula already predicts
    /// more than `budget` elements.
    pub fn enumerate(v: &DefiningVector, n: u32, budget: usize) -> Result<Self> {
        let shape = TreeShape::new(v.p() as u32, n)?;
        if let Some(predicted) = predicted_size(v, n) {
            if predicted > budget as u128 {
                return Err(Error::BudgetExceeded {
                    budget,
                    reached: predicted,
                });
            }
        }
        let stride = shape.internal_count();
        let a = make_a(shape);
        let b = make_b(v, shape)?;
        let gens: Vec<Vec<u8>> = [a.clone(), b.clone(), a.inverse(), b.inverse()]
            .iter()
            .map(|g| g.labels().to_vec())
            .collect();

        let hasher = FxBuildHasher;
        let mut labels = vec![0u8; stride];
        let mut table = HashTable::new();
        table.insert_unique(hasher.hash_one(&labels[..]), 0u32, |_| 0);
        let mut count = 1usize;
        let mut frontier = vec![0u32];
        while !frontier.is_empty() {
            let arena = &labels;
            let products: Vec<Vec<u8>> = frontier
                .par_iter()
                .flat_map_iter(|&x| {
                    let row = &arena[x as usize * stride..(x as usize + 1) * stride];
                    gens.iter().map(move |g| {
                        let mut out = vec![0u8; stride];
                        shape.compose_labels(row, g, &mut out);
                        out
                    })
                })
                .collect();
            let mut next = Vec::new();
            for prod in products {
                let h = hasher.hash_one(&prod[..]);
                let found = table
                    .find(h, |&i| {
                        labels[i as usize * stride..(i as usize + 1) * stride] == prod[..]
                    })
                    .is_some();
                if found {
                    continue;
                }
                let idx = count as u32;
                labels.extend_from_slice(&prod);
                let arena = &labels;
                table.insert_unique(h, idx, |&i| {
                    hasher.hash_one(&arena[i as usize * stride..(i as usize + 1) * stride])
                });
                count += 1;
                if count > budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        reached: count as u128,
                    });
                }
                next.push(idx);
            }
            frontier = next;
        }

        // Re-index in lexicographic order of label vectors.
        let mut order: Vec<u32> = (0..count as u32).collect();
        order.par_sort_unstable_by(|&i, &j| {
            let (i, j) = (i as usize, j as usize);
            labels[i * stride..(i + 1) * stride].cmp(&labels[j * stride..(j + 1) * stride])
        });
        let mut sorted = Vec::with_capacity(labels.len());
        for &i in &order {
            let i = i as usize;
            sorted.extend_from_slice(&labels[i * stride..(i + 1) * stride]);
        }
        let mut table = HashTable::with_capacity(count);
        for i in 0..count {
            let h = hasher.hash_one(&sorted[i * stride..(i + 1) * stride]);
            table.insert_unique(h, i as u32, |&j| {
                hasher.hash_one(&sorted[j as usize * stride..(j as usize + 1) * stride])
            });
        }
        let mut group = Self {
            vector: v.clone(),
            shape,
            stride,
            labels: sorted,
            table,
            hasher,
            a: 0,
            b: 0,
            cache: Caches::default(),
        };
        group.a = group.index_of(a.labels()).expect("a is in G_n");
        group.b = group.index_of(b.labels()).expect("b is in G_n");
        Ok(group)
    }

    pub fn vector(&self) -> &DefiningVector {
        &self.vector
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn p(&self) -> u8 {
        self.shape.p()
    }

    pub fn depth(&self) -> u8 {
        self.shape.depth()
    }

    pub fn order(&self) -> usize {
        self.labels.len() / self.stride
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }

    pub fn labels_of(&self, x: u32) -> &[u8] {
        let i = x as usize;
        &self.labels[i * self.stride..(i + 1) * self.stride]
    }

    pub fn portrait(&self, x: u32) -> Portrait {
        Portrait::from_slice_unchecked(self.shape, self.labels_of(x))
    }

    pub fn index_of(&self, labels: &[u8]) -> Option<u32> {
        if labels.len() != self.stride {
            return None;
        }
        let h = self.hasher.hash_one(labels);
        self.table
            .find(h, |&i| self.labels_of(i) == labels)
            .copied()
    }

    pub fn index_of_portrait(&self, x: &Portrait) -> Option<u32> {
        if x.shape() != self.shape {
            return None;
        }
        self.index_of(x.labels())
    }

    /// Like [`QuotientGroup::index_of_portrait`] but reports a missing
    /// element as an error.
    pub fn require(&self, x: &Portrait) -> Result<u32> {
        self.index_of_portrait(x)
            .ok_or_else(|| Error::NotInGroup(x.to_string()))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        PRODUCT.with(|cell| {
            let mut out = cell.borrow_mut();
            out.clear();
            out.resize(self.stride, 0);
            self.shape
                .compose_labels(self.labels_of(x), self.labels_of(y), &mut out);
            self.index_of(&out).expect("G_n is closed under products")
        })
    }

    pub fn inv(&self, x: u32) -> u32 {
        self.inverses()[x as usize]
    }

    fn inverses(&self) -> &[u32] {
        self.cache.inverses.get_or_init(|| {
            (0..self.order() as u32)
                .into_par_iter()
                .map(|x| {
                    let mut out = vec![0u8; self.stride];
                    self.shape.invert_labels(self.labels_of(x), &mut out);
                    self.index_of(&out).expect("G_n is closed under inverses")
                })
                .collect()
        })
    }

    pub fn pow(&self, x: u32, k: i64) -> u32 {
        let mut base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `x^g = g^{-1} x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders()[x as usize]
    }

    fn orders(&self) -> &[u64] {
        self.cache.orders.get_or_init(|| {
            let p = self.p() as i64;
            (0..self.order() as u32)
                .into_par_iter()
                .map(|x| {
                    let mut m = 1u64;
                    let mut y = x;
                    while y != 0 {
                        y = self.pow(y, p);
                        m *= p as u64;
                    }
                    m
                })
                .collect()
        })
    }

    pub fn exponent(&self) -> u64 {
        self.orders().iter().copied().max().unwrap_or(1)
    }

    /// Element order to number of elements of that order.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for &o in self.orders() {
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }

    pub fn is_abelian(&self) -> bool {
        self.mul(self.a, self.b) == self.mul(self.b, self.a)
    }

    /// A shortest word in `a, b, A, B` representing `x`, in the syntax of
    /// [`crate::word::parse_word`]. Used to lift elements to deeper levels.
    pub fn word_for(&self, x: u32) -> String {
        let gens = [
            (self.a, 'a'),
            (self.b, 'b'),
            (self.inv(self.a), 'A'),
            (self.inv(self.b), 'B'),
        ];
        let mut parent: Vec<Option<(u32, char)>> = vec![None; self.order()];
        let mut seen = FixedBitSet::with_capacity(self.order());
        seen.insert(0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(y) = queue.pop_front() {
            if y == x {
                break;
            }
            for &(g, c) in &gens {
                let z = self.mul(y, g);
                if !seen.put(z as usize) {
                    parent[z as usize] = Some((y, c));
                    queue.push_back(z);
                }
            }
        }
        let mut letters = Vec::new();
        let mut y = x;
        while let Some((prev, c)) = parent[y as usize] {
            letters.push(c);
            y = prev;
        }
        letters.iter().rev().collect()
    }

    /// Sorted canonical encodings, one per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for x in self.elements() {
            let _ = writeln!(s, "{}", self.portrait(x));
        }
        s
    }

    /// Cayley graph in Graphviz DOT form, edges labelled by generator.
    pub fn cayley_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "digraph cayley {{\n  // G_{} for e = {}, {} elements",
            self.depth(),
            self.vector,
            self.order()
        );
        for x in self.elements() {
            let _ = writeln!(s, "  {x} [label=\"{}\"];", self.portrait(x));
        }
        for x in self.elements() {
            let _ = writeln!(s, "  {x} -> {} [label=\"a\"];", self.mul(x, self.a));
            let _ = writeln!(s, "  {x} -> {} [label=\"b\"];", self.mul(x, self.b));
        }
        s.push_str("}\n");
        s
    }

    // ---- subgroups -------------------------------------------------------

    pub fn full_group(&self) -> SubgroupHandle {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        SubgroupHandle {
            members,
            order: self.order(),
            generators: vec![self.a, self.b],
            normal: true,
        }
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        self.generate(std::iter::empty())
    }

    /// Subgroup generated by `candidates`, keeping only those that are not
    /// already in the subgroup built so far as generators.
    pub fn generate(&self, candidates: impl IntoIterator<Item = u32>) -> SubgroupHandle {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        let mut list = vec![0u32];
        let mut gens: Vec<u32> = Vec::new();
        for c in candidates {
            if members.contains(c as usize) {
                continue;
            }
            gens.push(c);
            let mut queue: VecDeque<u32> = list.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !members.put(y as usize) {
                        list.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        let normal = self.normalized_by_generators(&members, &gens);
        SubgroupHandle {
            order: list.len(),
            members,
            generators: gens,
            normal,
        }
    }

    fn normalized_by_generators(&self, members: &FixedBitSet, gens: &[u32]) -> bool {
        gens.iter().all(|&g| {
            [self.a, self.b]
                .iter()
                .all(|&c| members.contains(self.conj(g, c) as usize))
        })
    }

    /// Subgroup with the given member set; the caller guarantees closure.
    fn subgroup_of_members(&self, members: FixedBitSet) -> SubgroupHandle {
        let h = self.generate(members.ones().map(|i| i as u32));
        debug_assert_eq!(h.members, members);
        h
    }

    /// Closure of `seeds` under conjugation by each element of `by`.
    pub fn conjugation_closure(&self, seeds: &[u32], by: &[u32]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order());
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in seeds {
            if !set.put(s as usize) {
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in by {
                let y = self.conj(x, g);
                if !set.put(y as usize) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[u32]) -> SubgroupHandle {
        let set = self.conjugation_closure(seeds, &[self.a, self.b]);
        self.generate(set.ones().map(|i| i as u32))
    }

    /// `G_n'`, the normal closure of `[a, b]`.
    pub fn derived_subgroup(&self) -> &SubgroupHandle {
        self.cache
            .derived
            .get_or_init(|| self.normal_closure(&[self.commutator(self.a, self.b)]))
    }

    /// Elements commuting with both generators.
    pub fn center(&self) -> &SubgroupHandle {
        self.cache.center.get_or_init(|| {
            let (a, b) = (self.a, self.b);
            let central: Vec<u32> = self
                .elements()
                .into_par_iter()
                .filter(|&x| self.mul(x, a) == self.mul(a, x) && self.mul(x, b) == self.mul(b, x))
                .collect();
            let mut members = FixedBitSet::with_capacity(self.order());
            members.extend(central.into_iter().map(|x| x as usize));
            self.subgroup_of_members(members)
        })
    }

    /// `Φ(G_n) = G_n' G_n^p`.
    pub fn frattini(&self) -> &SubgroupHandle {
        self.cache.frattini.get_or_init(|| {
            let p = self.p() as i64;
            let derived = self.derived_subgroup();
            let mut powers: Vec<u32> = self
                .elements()
                .into_par_iter()
                .map(|x| self.pow(x, p))
                .collect();
            powers.sort_unstable();
            powers.dedup();
            self.generate(derived.generators().iter().copied().chain(powers))
        })
    }

    /// `st_{G_n}(k)`.
    pub fn level_stabilizer(&self, k: usize) -> Result<SubgroupHandle> {
        if k > self.depth() as usize {
            return Err(Error::LevelOutOfRange {
                k,
                depth: self.depth(),
            });
        }
        let end = self.shape.level_offset(k);
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in self.elements() {
            if self.labels_of(x)[..end].iter().all(|&l| l == 0) {
                members.insert(x as usize);
            }
        }
        Ok(self.subgroup_of_members(members))
    }

    /// `[H, K]`: pairwise commutators of the generating sets, closed under
    /// conjugation by `⟨H, K⟩`.
    pub fn subgroup_commutator(&self, h: &SubgroupHandle, k: &SubgroupHandle) -> SubgroupHandle {
        let mut seeds = Vec::new();
        for &x in h.generators() {
            for &y in k.generators() {
                seeds.push(self.commutator(x, y));
            }
        }
        let by: Vec<u32> = h.generators().iter().chain(k.generators()).copied().collect();
        let set = self.conjugation_closure(&seeds, &by);
        self.generate(set.ones().map(|i| i as u32))
    }

    /// `γ_1 = G, γ_{i+1} = [γ_i, G]`, stopping at the trivial subgroup or
    /// when the series stabilises.
    pub fn lower_central_series(&self) -> Vec<SubgroupHandle> {
        let g = self.full_group();
        let mut series = vec![g.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.subgroup_commutator(last, &g);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class, or `None` if the lower central series stabilises
    /// above the trivial group.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .unwrap()
            .is_trivial()
            .then(|| series.len() - 1)
    }

    /// The `p + 1` maximal subgroups `⟨x, Φ⟩` for `x = a, b, ab, ab^2, ...,
    /// ab^{p-1}`, in that order.
    pub fn maximal_subgroups(&self) -> Result<Vec<SubgroupHandle>> {
        if self.depth() < 2 {
            return Err(Error::Precondition(
                "maximal subgroups need n >= 2 (G_1 is cyclic)".into(),
            ));
        }
        let p = self.p() as usize;
        let phi = self.frattini();
        if phi.order() * p * p != self.order() {
            return Err(Error::Precondition(format!(
                "|G : Φ(G)| = {} is not p^2",
                self.order() / phi.order()
            )));
        }
        let mut reps = vec![self.a, self.b];
        for i in 1..p as i64 {
            reps.push(self.mul(self.a, self.pow(self.b, i)));
        }
        let maximal: Vec<SubgroupHandle> = reps
            .par_iter()
            .map(|&x| self.generate(phi.generators().iter().copied().chain([x])))
            .collect();
        for (i, m) in maximal.iter().enumerate() {
            if m.order() * p != self.order() {
                return Err(Error::Precondition(format!(
                    "maximal subgroup {i} has index {}",
                    self.order() / m.order()
                )));
            }
        }
        Ok(maximal)
    }

    /// Image of each element in `G/G' ≅ F_p^2` with `a ↦ (1, 0)` and
    /// `b ↦ (0, 1)`. `None` when that assignment is not a homomorphism,
    /// which happens only for `n = 1`.
    pub fn abelian_coordinates(&self) -> Option<&[[u8; 2]]> {
        self.cache
            .coordinates
            .get_or_init(|| {
                let p = self.p();
                let n = self.order();
                let mut coords: Vec<Option<[u8; 2]>> = vec![None; n];
                coords[0] = Some([0, 0]);
                let mut queue = VecDeque::from([0u32]);
                while let Some(x) = queue.pop_front() {
                    let c = coords[x as usize].unwrap();
                    for (g, step) in [(self.a, [1u8, 0]), (self.b, [0, 1])] {
                        let y = self.mul(x, g) as usize;
                        let d = [(c[0] + step[0]) % p, (c[1] + step[1]) % p];
                        match coords[y] {
                            None => {
                                coords[y] = Some(d);
                                queue.push_back(y as u32);
                            }
                            Some(old) if old != d => return None,
                            Some(_) => {}
                        }
                    }
                }
                coords.into_iter().collect()
            })
            .as_deref()
    }

    /// Index in `0..=p` of the maximal subgroup containing `x`, matching the
    /// order of [`QuotientGroup::maximal_subgroups`]; `None` for `x ∈ Φ`.
    pub fn maximal_line(&self, x: u32) -> Option<usize> {
        let c = self.abelian_coordinates()?[x as usize];
        line_of(c, self.p())
    }
}

/// Projective point of a nonzero vector of `F_p^2`: `0` for the line of `a`
/// `(1, 0)`, `1` for `b` `(0, 1)`, `1 + i` for `ab^i` `(1, i)`.
pub fn line_of(c: [u8; 2], p: u8) -> Option<usize> {
    match c {
        [0, 0] => None,
        [0, _] => Some(1),
        [s, t] => {
            let slope = (t as u32 * inv_mod(s as u32, p as u32)) % p as u32;
            Some(if slope == 0 { 0 } else { 1 + slope as usize })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggs::conjugate_generator;

    fn gs() -> DefiningVector {
        DefiningVector::new(3, &[1, -1]).unwrap()
    }

    fn fg() -> DefiningVector {
        DefiningVector::new(3, &[1, 0]).unwrap()
    }

    fn group(v: &DefiningVector, n: u32) -> QuotientGroup {
        QuotientGroup::enumerate(v, n, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn small_sizes() {
        assert_eq!(group(&gs(), 1).order(), 3);
        assert_eq!(group(&gs(), 2).order(), 27);
        assert_eq!(group(&gs(), 3).order(), 2187);
        assert_eq!(group(&fg(), 2).order(), 81);
        // symmetric vector
        let bg = DefiningVector::new(3, &[1, 1]).unwrap();
        assert_eq!(group(&bg, 2).order(), 81);
    }

    #[test]
    fn budget_is_enforced() {
        let err = QuotientGroup::enumerate(&gs(), 3, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        // Symmetric vectors have no formula; the BFS itself stops.
        let bg = DefiningVector::new(3, &[1, 1]).unwrap();
        let err = QuotientGroup::enumerate(&bg, 3, 500).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded { budget: 500, reached: 501 }
        ));
        assert!(QuotientGroup::enumerate(&gs(), 40, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn identity_first_and_closed() {
        let g = group(&gs(), 2);
        assert!(g.portrait(0).is_identity());
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.mul(0, x), x);
            for y in g.elements() {
                let _ = g.mul(x, y);
            }
        }
        let enc: Vec<String> = g.elements().map(|x| g.portrait(x).to_string()).collect();
        let mut sorted = enc.clone();
        sorted.sort_by(|s, t| {
            let key = |s: &str| s.parse::<Portrait>().unwrap().labels().to_vec();
            key(s).cmp(&key(t))
        });
        assert_eq!(enc, sorted);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let d1 = one.install(|| group(&fg(), 3).dump());
        let d4 = many.install(|| group(&fg(), 3).dump());
        assert_eq!(d1, d4);
    }

    #[test]
    fn derived_and_frattini() {
        let g2 = group(&gs(), 2);
        let d = g2.derived_subgroup();
        assert_eq!(d.order(), 3);
        assert_eq!(g2.order() / d.order(), 9);
        assert!(d.is_normal());
        assert_eq!(g2.frattini().order(), 3);
        assert!(!g2.frattini().contains(g2.a()));
        assert!(!g2.frattini().contains(g2.b()));

        let g3 = group(&gs(), 3);
        let d3 = g3.derived_subgroup();
        assert_eq!(g3.order() / d3.order(), 9);
        let st2 = g3.level_stabilizer(2).unwrap();
        assert!(st2.is_subgroup_of(d3));
        assert!(d3.is_subgroup_of(&g3.level_stabilizer(1).unwrap()));
        assert_eq!(g3.frattini(), d3);

        let g1 = group(&gs(), 1);
        assert!(g1.frattini().is_trivial());
        assert!(g1.derived_subgroup().is_trivial());
    }

    #[test]
    fn level_stabilizers() {
        let g3 = group(&gs(), 3);
        assert_eq!(g3.level_stabilizer(0).unwrap().order(), 2187);
        let st1 = g3.level_stabilizer(1).unwrap();
        assert_eq!(g3.order() / st1.order(), 3);
        assert!(st1.is_normal());
        assert!(g3.level_stabilizer(3).unwrap().is_trivial());
        assert!(g3.level_stabilizer(4).is_err());
        let st1_prime = g3.subgroup_commutator(&st1, &st1);
        assert_eq!(g3.order() / st1_prime.order(), 81);
        assert!(st1_prime.is_subgroup_of(&g3.level_stabilizer(2).unwrap()));
    }

    #[test]
    fn commutator_of_full_group_is_derived() {
        let g = group(&fg(), 2);
        let full = g.full_group();
        assert_eq!(&g.subgroup_commutator(&full, &full), g.derived_subgroup());
    }

    #[test]
    fn centre() {
        let g3 = group(&gs(), 3);
        assert_eq!(g3.center().order(), 3);
        let g1 = group(&gs(), 1);
        assert_eq!(g1.center().order(), 3);
        assert!(g1.is_abelian());
    }

    #[test]
    fn maximal_subgroups() {
        for v in [gs(), fg()] {
            let g = group(&v, 2);
            let ms = g.maximal_subgroups().unwrap();
            assert_eq!(ms.len(), 4);
            for (i, m) in ms.iter().enumerate() {
                assert_eq!(g.order() / m.order(), 3);
                assert!(g.frattini().is_subgroup_of(m));
                for x in m.members() {
                    let line = g.maximal_line(x);
                    if g.frattini().contains(x) {
                        assert_eq!(line, None);
                    } else {
                        assert_eq!(line, Some(i));
                    }
                }
            }
            // the intersection of all maximal subgroups is Φ
            let mut meet = g.full_group().member_set().clone();
            for m in &ms {
                meet.intersect_with(m.member_set());
            }
            assert_eq!(&meet, g.frattini().member_set());
        }
        let g = group(&fg(), 2);
        let ms = g.maximal_subgroups().unwrap();
        let ab = g.mul(g.a(), g.b());
        assert!(ms[2].contains(ab));
        assert!(!ms[2].contains(g.b()));
        assert!(group(&gs(), 1).maximal_subgroups().is_err());
    }

    #[test]
    fn coordinates_are_a_homomorphism() {
        let g = group(&gs(), 3);
        let c = g.abelian_coordinates().unwrap();
        assert_eq!(c[g.a() as usize], [1, 0]);
        assert_eq!(c[g.b() as usize], [0, 1]);
        for x in (0..g.order() as u32).step_by(37) {
            for y in (0..g.order() as u32).step_by(53) {
                let z = g.mul(x, y) as usize;
                let (cx, cy) = (c[x as usize], c[y as usize]);
                assert_eq!(c[z], [(cx[0] + cy[0]) % 3, (cx[1] + cy[1]) % 3]);
            }
        }
        assert!(group(&gs(), 1).abelian_coordinates().is_none());
    }

    #[test]
    fn gupta_sidki_g2_has_exponent_p() {
        let g = group(&gs(), 2);
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.order_histogram()[&3], 26);
        assert_eq!(g.nilpotency_class(), Some(2));
    }

    #[test]
    fn non_periodic_g2_is_wreath_product() {
        // C_3 wr C_3: order 81, exponent 9, maximal class
        let g = group(&fg(), 2);
        assert_eq!(g.exponent(), 9);
        assert_eq!(g.nilpotency_class(), Some(3));
        assert_eq!(g.lower_central_series().len(), 4);
    }

    #[test]
    fn conjugates_of_b_differ_mod_st2() {
        for v in [gs(), DefiningVector::new(5, &[1, -1, 1, -1]).unwrap()] {
            let p = v.p() as i64;
            let g = group(&v, 2);
            let conjugates: Vec<u32> = (0..p)
                .map(|i| g.require(&conjugate_generator(&v, g.shape(), i).unwrap()).unwrap())
                .collect();
            for i in 0..p as usize {
                for j in 0..i {
                    assert_ne!(conjugates[i], conjugates[j]);
                }
            }
        }
    }

    #[test]
    fn proportional_vectors_give_the_same_group() {
        for v in [gs(), fg(), DefiningVector::new(3, &[1, 1]).unwrap()] {
            for n in 1..=3 {
                assert_eq!(group(&v, n).dump(), group(&v.scaled(2), n).dump());
            }
        }
    }

    #[test]
    fn cayley_graph_export() {
        let g = group(&gs(), 1);
        let dot = g.cayley_dot();
        assert!(dot.starts_with("digraph cayley {"));
        assert_eq!(dot.matches("[label=\"a\"]").count(), 3);
        assert_eq!(dot.matches("[label=\"b\"]").count(), 3);
        assert!(dot.contains("[label=\"3,1:0\"]"));
    }

    #[test]
    fn line_indices() {
        assert_eq!(line_of([0, 0], 3), None);
        assert_eq!(line_of([1, 0], 3), Some(0));
        assert_eq!(line_of([2, 0], 3), Some(0));
        assert_eq!(line_of([0, 2], 3), Some(1));
        assert_eq!(line_of([1, 1], 3), Some(2));
        assert_eq!(line_of([2, 2], 3), Some(2));
        assert_eq!(line_of([2, 1], 3), Some(3));
    }
}
