//! Defining vectors, the generators `a` and `b` at finite depth, and the
//! circulant matrix `C(e, 0)` over `F_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::portrait::{is_prime, Portrait, PsiDecomposition, TreeShape};

/// `e = (e_1, ..., e_{p-1})` over `F_p`, stored as residues in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefiningVector {
    p: u8,
    e: Vec<u8>,
}

impl DefiningVector {
    /// Reduces `entries` mod `p`. Fails on a zero vector or wrong length.
    pub fn new(p: u32, entries: &[i64]) -> Result<Self> {
        if !(3..=255).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let expected = p as usize - 1;
        if entries.len() != expected {
            return Err(Error::VectorLength {
                p: p as u8,
                expected,
                got: entries.len(),
            });
        }
        let e: Vec<u8> = entries
            .iter()
            .map(|&x| x.rem_euclid(p as i64) as u8)
            .collect();
        if e.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { p: p as u8, e })
    }

    /// Parses `"1,-1"` style input.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .enumerate()
            .map(|(i, t)| {
                t.trim().parse::<i64>().map_err(|_| Error::Parse {
                    pos: i,
                    msg: format!("bad vector entry {:?}", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, &entries)
    }

    /// `(1, -1, 1, -1, ...)`, periodic for every odd `p`.
    pub fn alternating(p: u32) -> Result<Self> {
        let e: Vec<i64> = (0..p.saturating_sub(1))
            .map(|i| if i % 2 == 0 { 1 } else { -1 })
            .collect();
        Self::new(p, &e)
    }

    /// `(1, 0, ..., 0)`, non-periodic.
    pub fn first_unit(p: u32) -> Result<Self> {
        let mut e = vec![0i64; p.saturating_sub(1) as usize];
        if let Some(x) = e.first_mut() {
            *x = 1;
        }
        Self::new(p, &e)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn entries(&self) -> &[u8] {
        &self.e
    }

    /// `e_i` for `1 <= i <= p - 1`.
    pub fn get(&self, i: usize) -> u8 {
        self.e[i - 1]
    }

    /// `α = Σ e_i mod p`.
    pub fn alpha(&self) -> u8 {
        (self.e.iter().map(|&x| x as u32).sum::<u32>() % self.p as u32) as u8
    }

    pub fn is_periodic(&self) -> bool {
        self.alpha() == 0
    }

    /// `e_i = e_{p-i}` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.e.len();
        (0..n).all(|i| self.e[i] == self.e[n - 1 - i])
    }

    /// Rank of `C(e, 0)`.
    pub fn rank(&self) -> usize {
        circulant_rank(self)
    }

    /// Scales so that the first nonzero entry is 1.
    pub fn normalized(&self) -> Self {
        let lead = *self.e.iter().find(|&&x| x != 0).expect("nonzero vector");
        let inv = inv_mod(lead as u32, self.p as u32);
        self.scaled(inv as i64)
    }

    pub fn scaled(&self, lambda: i64) -> Self {
        let p = self.p as i64;
        let e = self
            .e
            .iter()
            .map(|&x| ((x as i64 * lambda).rem_euclid(p)) as u8)
            .collect();
        Self { p: self.p, e }
    }

    /// Entries lifted to `(-p/2, p/2]`, the familiar signed form.
    pub fn signed(&self) -> Vec<i64> {
        let p = self.p as i64;
        self.e
            .iter()
            .map(|&x| {
                let x = x as i64;
                if x > p / 2 {
                    x - p
                } else {
                    x
                }
            })
            .collect()
    }
}

impl fmt::Display for DefiningVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    // p is prime: x^(p-2)
    let mut acc = 1u64;
    let mut base = (x % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Rank of `C(e, 0)` computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantAnalysis {
    /// Gaussian elimination over `F_p`.
    pub rank_gauss: usize,
    /// Multiplicity of 1 as a root of `f(X) = e_1 + e_2 X + ... + e_{p-1} X^{p-2}`.
    pub multiplicity: usize,
    /// `p - multiplicity`.
    pub rank_formula: usize,
}

/// The `p x p` circulant whose rows are the cyclic shifts of `(e_1, ..., e_{p-1}, 0)`.
pub fn circulant_matrix(v: &DefiningVector) -> Vec<Vec<u8>> {
    let p = v.p as usize;
    let mut first = v.e.clone();
    first.push(0);
    (0..p)
        .map(|r| (0..p).map(|c| first[(c + p - r) % p]).collect())
        .collect()
}

pub fn rank_mod_p(mut m: Vec<Vec<u8>>, p: u32) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col] as u32, p);
        for x in m[rank].iter_mut() {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col] as u32;
                #[allow(clippy::needless_range_loop)]
                for c in 0..cols {
                    let sub = (factor * m[rank][c] as u32) % p;
                    m[r][c] = ((m[r][c] as u32 + p - sub) % p) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn circulant_rank(v: &DefiningVector) -> usize {
    rank_mod_p(circulant_matrix(v), v.p as u32)
}

/// Multiplicity of 1 as a root of `f(X) = e_1 + ... + e_{p-1} X^{p-2}`,
/// by repeated synthetic division by `X - 1`.
pub fn root_multiplicity_at_one(v: &DefiningVector) -> usize {
    let p = v.p as u32;
    // coefficients, highest degree first
    let mut coeffs: Vec<u32> = v.e.iter().rev().map(|&x| x as u32).collect();
    while coeffs.first() == Some(&0) {
        coeffs.remove(0);
    }
    let mut m = 0;
    while coeffs.len() > 1 {
        let mut quotient = Vec::with_capacity(coeffs.len() - 1);
        let mut acc = 0u32;
        for &c in &coeffs {
            acc = (acc + c) % p;
            quotient.push(acc);
        }
        let remainder = quotient.pop().unwrap();
        if remainder != 0 {
            break;
        }
        m += 1;
        coeffs = quotient;
    }
    m
}

pub fn analyze_circulant(v: &DefiningVector) -> CirculantAnalysis {
    let rank_gauss = circulant_rank(v);
    let multiplicity = root_multiplicity_at_one(v);
    let rank_formula = v.p as usize - multiplicity;
    assert_eq!(
        rank_gauss, rank_formula,
        "circulant rank disagrees with root multiplicity for {v}"
    );
    CirculantAnalysis {
        rank_gauss,
        multiplicity,
        rank_formula,
    }
}

/// Derived invariants of a defining vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub p: u8,
    pub e: Vec<u8>,
    pub alpha: u8,
    pub periodic: bool,
    pub symmetric: bool,
    pub rank_t: usize,
    /// `p = 3` and periodic, which forces `e ∝ (1, -1)`.
    pub gupta_sidki: bool,
}

impl Classification {
    /// `log_p |G_n|` when a closed formula applies: `n = 1` always, `n = 2`
    /// always (`t + 1`), `n >= 3` only for non-symmetric vectors
    /// (`t p^{n-2} + 1`).
    pub fn predicted_log_order(&self, n: u32) -> Option<u128> {
        match n {
            0 => None,
            1 => Some(1),
            2 => Some(self.rank_t as u128 + 1),
            _ if self.symmetric => None,
            _ => {
                let scale = (self.p as u128).checked_pow(n - 2)?;
                Some((self.rank_t as u128).checked_mul(scale)? + 1)
            }
        }
    }

    /// `|G_n|` when the formula applies and the value fits in a `u128`.
    pub fn predicted_order(&self, n: u32) -> Option<u128> {
        let k = self.predicted_log_order(n)?;
        (self.p as u128).checked_pow(u32::try_from(k).ok()?)
    }
}

pub fn classify(v: &DefiningVector) -> Classification {
    let analysis = analyze_circulant(v);
    Classification {
        p: v.p,
        e: v.e.clone(),
        alpha: v.alpha(),
        periodic: v.is_periodic(),
        symmetric: v.is_symmetric(),
        rank_t: analysis.rank_gauss,
        gupta_sidki: v.p == 3 && v.is_periodic(),
    }
}

/// The rooted automorphism `a` acting as `(1 2 ... p)` on the first level.
pub fn make_a(shape: TreeShape) -> Portrait {
    Portrait::rooted(shape, 1)
}

/// Truncation of `b` with `ψ(b) = (a^{e_1}, ..., a^{e_{p-1}}, b)`.
pub fn make_b(v: &DefiningVector, shape: TreeShape) -> Result<Portrait> {
    if v.p != shape.p() {
        return Err(Error::PrimeMismatch {
            vector: v.p,
            tree: shape.p(),
        });
    }
    let mut b = Portrait::identity(shape.with_depth(1)?);
    for depth in 1..shape.depth() as u32 {
        let sub = shape.with_depth(depth)?;
        let mut sections: Vec<Portrait> = v
            .e
            .iter()
            .map(|&x| Portrait::rooted(sub, x as i64))
            .collect();
        sections.push(b);
        b = Portrait::assemble(&PsiDecomposition {
            root_label: 0,
            sections,
        })?;
    }
    Ok(b)
}

/// `b_i = b^{a^i}`.
pub fn conjugate_generator(v: &DefiningVector, shape: TreeShape, i: i64) -> Result<Portrait> {
    let p = shape.p() as i64;
    if !(0..p).contains(&i) {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: p - 1,
        });
    }
    let b = make_b(v, shape)?;
    b.conjugate_by(&Portrait::rooted(shape, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gs() -> DefiningVector {
        DefiningVector::new(3, &[1, -1]).unwrap()
    }

    fn shape(p: u32, n: u32) -> TreeShape {
        TreeShape::new(p, n).unwrap()
    }

    /// Rank by brute force: the number of distinct vectors in the row space
    /// is p^rank.
    fn rank_by_span(v: &DefiningVector) -> usize {
        let m = circulant_matrix(v);
        let p = v.p() as usize;
        let mut span = std::collections::HashSet::new();
        let mut coeffs = vec![0usize; p];
        loop {
            let row: Vec<usize> = (0..p)
                .map(|c| (0..p).map(|r| coeffs[r] * m[r][c] as usize).sum::<usize>() % p)
                .collect();
            span.insert(row);
            let mut i = 0;
            while i < p {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == p {
                break;
            }
        }
        let mut r = 0;
        let mut size = 1;
        while size < span.len() {
            size *= p;
            r += 1;
        }
        r
    }

    #[test]
    fn vector_validation() {
        assert_eq!(gs().entries(), &[1, 2]);
        assert!(matches!(
            DefiningVector::new(3, &[0, 0]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            DefiningVector::new(3, &[0, 3]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            DefiningVector::new(5, &[1, 2]),
            Err(Error::VectorLength { .. })
        ));
        assert!(matches!(
            DefiningVector::new(9, &[1; 8]),
            Err(Error::InvalidPrime(9))
        ));
        assert_eq!(DefiningVector::parse(3, "1, -1").unwrap(), gs());
        assert!(DefiningVector::parse(3, "1,x").is_err());
        assert_eq!(gs().signed(), vec![1, -1]);
    }

    #[test]
    fn circulant_examples() {
        let a = analyze_circulant(&gs());
        assert_eq!((a.rank_gauss, a.multiplicity), (2, 1));
        let fg = analyze_circulant(&DefiningVector::new(3, &[1, 0]).unwrap());
        assert_eq!((fg.rank_gauss, fg.multiplicity), (3, 0));
        let v5 = DefiningVector::new(5, &[1, -1, 1, -1]).unwrap();
        let a5 = analyze_circulant(&v5);
        assert_eq!((a5.rank_gauss, a5.multiplicity), (4, 1));
        assert_eq!(rank_by_span(&v5), 4);
        // f(X) = (X - 1)^5 over F_7 has 1 as a root of multiplicity 5.
        let v7 = DefiningVector::new(7, &[-1, 5, -10, 10, -5, 1]).unwrap();
        assert_eq!(analyze_circulant(&v7).rank_gauss, 2);
    }

    #[test]
    fn rank_oracle_agreement() {
        let mut rng = StdRng::seed_from_u64(23);
        for p in [3u32, 5, 7] {
            for _ in 0..200 {
                let e: Vec<i64> = loop {
                    let e: Vec<i64> = (0..p - 1).map(|_| rng.gen_range(0..p as i64)).collect();
                    if e.iter().any(|&x| x != 0) {
                        break e;
                    }
                };
                let v = DefiningVector::new(p, &e).unwrap();
                let a = analyze_circulant(&v);
                assert_eq!(a.rank_gauss, a.rank_formula);
                assert_eq!(a.rank_gauss < p as usize, v.is_periodic());
                if p <= 5 {
                    assert_eq!(rank_by_span(&v), a.rank_gauss);
                }
            }
        }
    }

    #[test]
    fn classification() {
        let c = classify(&gs());
        assert!(c.periodic && !c.symmetric && c.gupta_sidki);
        assert_eq!(c.rank_t, 2);
        assert_eq!(c.predicted_order(2), Some(27));
        assert_eq!(c.predicted_order(3), Some(2187));
        let fg = classify(&DefiningVector::new(3, &[1, 0]).unwrap());
        assert!(!fg.periodic && !fg.symmetric && !fg.gupta_sidki);
        assert_eq!((fg.rank_t, fg.alpha), (3, 1));
        assert_eq!(fg.predicted_order(3), Some(59049));
        let bg = classify(&DefiningVector::new(3, &[1, 1]).unwrap());
        assert!(!bg.periodic && bg.symmetric);
        assert_eq!(bg.predicted_order(2), Some(81));
        assert_eq!(bg.predicted_order(3), None);
        assert_eq!(fg.predicted_order(100), None);
    }

    #[test]
    fn normalization() {
        let v = DefiningVector::new(5, &[0, 3, 1, 0]).unwrap();
        assert_eq!(v.normalized().entries(), &[0, 1, 2, 0]);
        assert_eq!(gs().scaled(2).normalized(), gs());
    }

    #[test]
    fn generator_a() {
        for (p, n) in [(3u32, 1u32), (3, 3), (5, 2)] {
            let a = make_a(shape(p, n));
            assert_eq!(a.order(), p as u64);
            assert!(a.pow(p as i64).is_identity());
            assert_eq!(a.apply(&[p as u8]).unwrap(), vec![1]);
            assert!(a.stabilizes_level(0).unwrap());
            assert!(!a.stabilizes_level(1).unwrap());
        }
    }

    #[test]
    fn generator_b_two_levels() {
        // Unfolding ψ(b) = (a, a^{-1}, b) once at depth 2.
        let b = make_b(&gs(), shape(3, 2)).unwrap();
        assert_eq!(b.labels(), &[0, 1, 2, 0]);
        assert_eq!(b.apply(&[1, 1]).unwrap(), vec![1, 2]);
        assert_eq!(b.apply(&[2, 1]).unwrap(), vec![2, 3]);
        assert_eq!(b.apply(&[3, 1]).unwrap(), vec![3, 1]);
        assert!(make_b(&gs(), shape(3, 1)).unwrap().is_identity());
        assert!(matches!(
            make_b(&gs(), shape(5, 2)),
            Err(Error::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn generator_b_sections() {
        for (v, n) in [
            (gs(), 3u32),
            (gs(), 4),
            (DefiningVector::new(5, &[1, -1, 1, -1]).unwrap(), 3),
            (DefiningVector::new(3, &[1, 0]).unwrap(), 3),
        ] {
            let s = shape(v.p() as u32, n);
            let b = make_b(&v, s).unwrap();
            let d = b.psi().unwrap();
            let sub = s.with_depth(n - 1).unwrap();
            assert_eq!(d.root_label, 0);
            for i in 1..v.p() as usize {
                assert_eq!(d.sections[i - 1], Portrait::rooted(sub, v.get(i) as i64));
            }
            assert_eq!(d.sections[v.p() as usize - 1], make_b(&v, sub).unwrap());
            assert_eq!(b.order(), v.p() as u64);
            assert!(b.stabilizes_level(1).unwrap());
            assert!(!b.stabilizes_level(2).unwrap());
            assert_eq!(b.truncate(n as usize - 1).unwrap(), make_b(&v, sub).unwrap());
        }
    }

    #[test]
    fn conjugates_of_b() {
        let v = gs();
        let s = shape(3, 3);
        let sub = s.with_depth(2).unwrap();
        let b = make_b(&v, s).unwrap();
        assert_eq!(conjugate_generator(&v, s, 0).unwrap(), b);
        let b1 = conjugate_generator(&v, s, 1).unwrap();
        let d = b1.psi().unwrap();
        assert_eq!(
            d.sections,
            vec![
                make_b(&v, sub).unwrap(),
                Portrait::rooted(sub, 1),
                Portrait::rooted(sub, -1)
            ]
        );
        let b2 = conjugate_generator(&v, s, 2).unwrap();
        assert_eq!(
            b2.psi().unwrap().sections,
            vec![
                Portrait::rooted(sub, -1),
                make_b(&v, sub).unwrap(),
                Portrait::rooted(sub, 1)
            ]
        );
        assert_eq!(b.conjugate_by(&make_a(s).pow(3)).unwrap(), b);
        assert_ne!(b1, b2);
        assert!(conjugate_generator(&v, s, 3).is_err());
        assert!(conjugate_generator(&v, s, -1).is_err());
    }
}
