//! One verifier per claim. Each returns a [`Certificate`] whose checks record
//! every sub-claim that was tested; scale limits produce `skipped` verdicts.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::{
    brute_force_search, cyclic_id, is_beauville_pair, orbit_union, search_beauville,
    GeneratingTriple, SearchOutcome, Strategy, BRUTE_FORCE_LIMIT,
};
use crate::certificate::{Certificate, Params, Verdict};
use crate::error::{Error, Result};
use crate::ggs::{classify, conjugate_generator, DefiningVector};
use crate::portrait::{Portrait, PsiDecomposition, TreeShape};
use crate::quotient::{line_of, QuotientGroup, DEFAULT_BUDGET};
use crate::word::parse_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    ThmA,
    ThmB,
    ThmG2,
    ThmG3,
    LemmaOrders,
    LemmaConjugates,
    LemmaCenter,
    LemmaCommsB,
    LemmaCommsA,
    PropKey,
    PropCollision,
    Eq31,
    OrderFormula,
    Lifting,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::ThmA,
        Claim::ThmB,
        Claim::ThmG2,
        Claim::ThmG3,
        Claim::LemmaOrders,
        Claim::LemmaConjugates,
        Claim::LemmaCenter,
        Claim::LemmaCommsB,
        Claim::LemmaCommsA,
        Claim::PropKey,
        Claim::PropCollision,
        Claim::Eq31,
        Claim::OrderFormula,
        Claim::Lifting,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ThmA => "thm-A",
            Claim::ThmB => "thm-B",
            Claim::ThmG2 => "thm-G2",
            Claim::ThmG3 => "thm-G3",
            Claim::LemmaOrders => "lemma-orders",
            Claim::LemmaConjugates => "lemma-conjugates",
            Claim::LemmaCenter => "lemma-center",
            Claim::LemmaCommsB => "lemma-comms-b",
            Claim::LemmaCommsA => "lemma-comms-a",
            Claim::PropKey => "prop-key",
            Claim::PropCollision => "prop-collision",
            Claim::Eq31 => "eq-3.1",
            Claim::OrderFormula => "order-formula",
            Claim::Lifting => "lifting",
        }
    }

    /// The level a claim is about when none is given.
    pub fn default_level(self) -> u32 {
        match self {
            Claim::ThmB | Claim::PropCollision | Claim::ThmG2 | Claim::LemmaConjugates => 2,
            _ => 3,
        }
    }

    /// Claims that only make sense at one level.
    pub fn fixed_level(self) -> Option<u32> {
        match self {
            Claim::ThmG2 | Claim::LemmaConjugates => Some(2),
            Claim::ThmG3 | Claim::LemmaCenter | Claim::LemmaCommsB | Claim::LemmaCommsA => Some(3),
            _ => None,
        }
    }

    /// `(1, 0, ..., 0)` for the claims about non-periodic groups, the
    /// alternating vector otherwise.
    pub fn default_vector(self, p: u32) -> Result<DefiningVector> {
        match self {
            Claim::ThmB | Claim::PropCollision => DefiningVector::first_unit(p),
            _ => DefiningVector::alternating(p),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
                Error::Precondition(format!("unknown claim {s:?}; expected one of {}", ids.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub budget: usize,
    /// Target level `m` for `lifting` (default `n + 1`).
    pub lift_to: Option<u32>,
    /// Triple for `lifting` (default `x = A^2`, `y = ab`).
    pub x: Option<String>,
    pub y: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            lift_to: None,
            x: None,
            y: None,
        }
    }
}

const SCALE: &str = "scale";

/// Runs the verifier for `claim`. `n = None` picks the claim's default
/// level.
pub fn verify(
    claim: Claim,
    v: &DefiningVector,
    n: Option<u32>,
    opts: &VerifyOptions,
) -> Result<Certificate> {
    let n = match (n, claim.fixed_level()) {
        (Some(n), Some(f)) if n != f => {
            return Err(Error::Precondition(format!("{claim} is a statement about n = {f}")))
        }
        (Some(n), _) => n,
        (None, _) => claim.default_level(),
    };
    if n == 0 {
        return Err(Error::InvalidDepth);
    }
    let start = Instant::now();
    let mut cert = match claim {
        Claim::ThmA => thm_a(v, n, opts),
        Claim::ThmB => thm_b(v, n, opts),
        Claim::ThmG2 => thm_g2(v, opts),
        Claim::ThmG3 => thm_g3(v, opts),
        Claim::LemmaOrders => lemma_orders(v, n),
        Claim::LemmaConjugates => lemma_conjugates(v),
        Claim::LemmaCenter => lemma_center(v, opts),
        Claim::LemmaCommsB => lemma_comms_b(v, opts),
        Claim::LemmaCommsA => lemma_comms_a(v, opts),
        Claim::PropKey => prop_key(v, n, opts),
        Claim::PropCollision => prop_collision(v, n, opts),
        Claim::Eq31 => eq_3_1(v, n),
        Claim::OrderFormula => order_formula(v, n, opts),
        Claim::Lifting => lifting(v, n, opts),
    }?;
    cert.wall_time = Some(start.elapsed());
    Ok(cert)
}

// ---- helpers ---------------------------------------------------------------

/// Generators at a fixed depth, with words evaluated on demand.
struct Gens {
    v: DefiningVector,
    shape: TreeShape,
}

impl Gens {
    fn new(v: &DefiningVector, n: u32) -> Result<Self> {
        Ok(Self {
            v: v.clone(),
            shape: TreeShape::new(v.p() as u32, n)?,
        })
    }

    fn w(&self, s: &str) -> Portrait {
        parse_word(s, &self.v, self.shape).expect("verifier words are well formed")
    }
}

fn enumerate(v: &DefiningVector, n: u32, budget: usize) -> Result<Option<QuotientGroup>> {
    match QuotientGroup::enumerate(v, n, budget) {
        Ok(g) => Ok(Some(g)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn note_budget(cert: &mut Certificate, v: &DefiningVector, n: u32, budget: usize) {
    let size = classify(v)
        .predicted_log_order(n)
        .map(|k| format!("p^{k} elements"))
        .unwrap_or_else(|| "an unknown number of elements".into());
    cert.note(format!("G_{n} has {size}, above the budget of {budget}"));
}

fn require_periodic(v: &DefiningVector, claim: Claim) -> Result<()> {
    if v.is_periodic() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{claim} needs a periodic vector (sum of e_i = 0), got {v}")))
    }
}

fn require_non_periodic(v: &DefiningVector, claim: Claim) -> Result<()> {
    if v.is_periodic() {
        Err(Error::Precondition(format!("{claim} needs a non-periodic vector, got {v}")))
    } else {
        Ok(())
    }
}

fn require_gupta_sidki(v: &DefiningVector, claim: Claim) -> Result<()> {
    if v.p() == 3 && v.is_periodic() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{claim} is about p = 3, e = (1,-1), got p = {} e = {v}", v.p())))
    }
}

fn sections(x: &Portrait) -> Vec<Portrait> {
    x.psi().expect("depth >= 2").sections
}

fn fmt_sections(s: &[Portrait]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join("; "))
}

fn det(u: [i64; 2], w: [i64; 2], p: i64) -> i64 {
    (u[0] * w[1] - u[1] * w[0]).rem_euclid(p)
}

fn line(c: [i64; 2], p: u8) -> Option<usize> {
    let r = |x: i64| x.rem_euclid(p as i64) as u8;
    line_of([r(c[0]), r(c[1])], p)
}

/// `Σ(t1) ∩ Σ(t2) = 1`, checked literally, with witnesses.
fn check_pair(
    cert: &mut Certificate,
    g: &QuotientGroup,
    (x1, y1): (u32, u32),
    (x2, y2): (u32, u32),
    labels: [&str; 4],
) -> Result<bool> {
    let t1 = GeneratingTriple::new(g, x1, y1);
    let t2 = GeneratingTriple::new(g, x2, y2);
    cert.check(
        format!("{{{}, {}}} generates G", labels[0], labels[1]),
        t1.is_ok(),
        "",
    );
    cert.check(
        format!("{{{}, {}}} generates G", labels[2], labels[3]),
        t2.is_ok(),
        "",
    );
    for (role, x) in ["x1", "y1", "x2", "y2"].iter().zip([x1, y1, x2, y2]) {
        cert.witness(*role, g.portrait(x));
    }
    let (Ok(t1), Ok(t2)) = (t1, t2) else {
        return Ok(false);
    };
    let r = is_beauville_pair(&t1, &t2, g);
    let detail = match r.common {
        None => format!("|Σ1| = {}, |Σ2| = {}", r.sigma1, r.sigma2),
        Some(c) => format!("common element {}", g.portrait(c)),
    };
    Ok(cert.check(
        format!(
            "Σ({}, {}) ∩ Σ({}, {}) = 1",
            labels[0], labels[1], labels[2], labels[3]
        ),
        r.beauville,
        detail,
    ))
}

// ---- G_2 and G_3 -----------------------------------------------------------

fn thm_g2(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    require_periodic(v, Claim::ThmG2)?;
    let p = v.p();
    let mut cert = Certificate::new(Claim::ThmG2.id(), Params::new(v, 2));
    let Some(g) = enumerate(v, 2, opts.budget)? else {
        note_budget(&mut cert, v, 2, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    cert.check(
        "exp G_2 = p",
        g.exponent() == p as u64,
        format!("exponent {}", g.exponent()),
    );
    if p == 3 {
        let outcome = search_beauville(&g, Strategy::Exhaustive)?;
        let none = !matches!(outcome, SearchOutcome::Found { .. });
        let detail = match &outcome {
            SearchOutcome::NotFound { candidates, .. } => format!("{candidates} generating pairs"),
            SearchOutcome::Found { pair, .. } => format!("found {}", g.portrait(pair[0])),
            SearchOutcome::Cyclic => "cyclic".into(),
        };
        cert.check("exhaustive search finds no Beauville structure", none, detail);
        if g.order() <= BRUTE_FORCE_LIMIT {
            let brute = brute_force_search(&g)?;
            cert.check(
                "brute-force oracle finds no Beauville structure",
                brute.pair.is_none(),
                format!(
                    "{} generating pairs, {} distinct Σ-sets",
                    brute.generating_pairs, brute.distinct_sigma
                ),
            );
        }
    } else {
        let mut outcome = search_beauville(&g, Strategy::Pruned)?;
        if !matches!(outcome, SearchOutcome::Found { .. }) {
            cert.note("pruned search found nothing; fell back to exhaustive search");
            outcome = search_beauville(&g, Strategy::Exhaustive)?;
        } else {
            cert.note(
                "search pruned: candidate pairs with two elements in one maximal subgroup are skipped",
            );
        }
        match outcome {
            SearchOutcome::Found { pair, candidates } => {
                cert.check(
                    "search finds a Beauville structure",
                    true,
                    format!("after {candidates} candidate pairs"),
                );
                check_pair(
                    &mut cert,
                    &g,
                    (pair[0], pair[1]),
                    (pair[2], pair[3]),
                    ["x1", "y1", "x2", "y2"],
                )?;
            }
            _ => {
                cert.check("search finds a Beauville structure", false, "none exists");
            }
        }
    }
    cert.conclude(None);
    Ok(cert)
}

/// `u` generates `Z(G_3)` with `ψ_3(u) = ([a,b], [a,b], [a,b])`, and
/// `v ∈ st_{G_3}(1)'` has `ψ_3(v) = ([a,b], 1, 1)`.
pub struct SpecialElements {
    pub u: u32,
    pub v: u32,
}

pub fn build_special_elements(g: &QuotientGroup) -> Result<SpecialElements> {
    if g.p() != 3 || g.depth() != 3 || !g.vector().is_periodic() {
        return Err(Error::Precondition("special elements live in the Gupta-Sidki G_3".into()));
    }
    let g2 = Gens::new(g.vector(), 2)?;
    let comm = g2.w("ABab");
    let one = Portrait::identity(g2.shape);
    let u = Portrait::assemble(&PsiDecomposition {
        root_label: 0,
        sections: vec![comm.clone(), comm.clone(), comm.clone()],
    })?;
    let v = Portrait::assemble(&PsiDecomposition {
        root_label: 0,
        sections: vec![comm, one.clone(), one],
    })?;
    Ok(SpecialElements {
        u: g.require(&u)?,
        v: g.require(&v)?,
    })
}

/// The set `{[x, g] : g ∈ G}`.
fn commutators_with(g: &QuotientGroup, x: u32) -> HashSet<u32> {
    g.elements()
        .into_par_iter()
        .map(|h| g.commutator(x, h))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn base_triples(p: u8) -> ([&'static str; 2], [&'static str; 2]) {
    if p == 3 {
        (["a", "b"], ["av", "b^2u"])
    } else {
        (["a^-2", "ab"], ["ab^2", "b"])
    }
}

fn thm_g3(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    require_periodic(v, Claim::ThmG3)?;
    if v.p() == 3 {
        thm_g3_p3(v, opts)
    } else {
        thm_g3_large(v, opts)
    }
}

fn thm_g3_p3(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    let mut cert = Certificate::new(Claim::ThmG3.id(), Params::new(v, 3));
    let Some(g) = enumerate(v, 3, opts.budget)? else {
        note_budget(&mut cert, v, 3, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    cert.check("|G_3| = 3^7", g.order() == 2187, format!("{}", g.order()));
    let SpecialElements { u, v: vv } = build_special_elements(&g)?;
    cert.witness("u", g.portrait(u));
    cert.witness("v", g.portrait(vv));
    let z = g.center();
    cert.check(
        "u generates Z(G_3)",
        u != 0 && z.contains(u) && z.order() == 3,
        format!("|Z(G_3)| = {}", z.order()),
    );
    let st1 = g.level_stabilizer(1)?;
    let st1d = g.subgroup_commutator(&st1, &st1);
    cert.check("v ∈ st_{G_3}(1)'", st1d.contains(vv), "");

    let (a, b) = (g.a(), g.b());
    let av = g.mul(a, vv);
    let b2u = g.mul(g.pow(b, 2), u);
    check_pair(&mut cert, &g, (a, b), (av, b2u), ["a", "b", "av", "b^2u"])?;

    let g2 = Gens::new(v, 2)?;
    let comm = g2.w("ABab");
    let av3 = g.portrait(g.pow(av, 3));
    let s = sections(&av3);
    cert.check(
        "ψ_3((av)^3) = ([a,b], [a,b], [a,b])",
        s == vec![comm.clone(), comm.clone(), comm.clone()],
        fmt_sections(&s),
    );
    cert.check("(av)^3 ∈ Z(G_3)", z.contains(g.pow(av, 3)), "");
    let ab = g.mul(a, b);
    let s = sections(&g.portrait(g.pow(ab, 3)));
    cert.check(
        "ψ_3((ab)^3) = (b^a, b, b)",
        s == vec![g2.w("Aba"), g2.w("b"), g2.w("b")],
        fmt_sections(&s),
    );
    cert.check("(ab)^3 ∉ Z(G_3)", !z.contains(g.pow(ab, 3)), "");

    // the two intersection-lemma instances used for {a, av} and {b, b^2u}
    let phi = g.frattini();
    let comm_a = commutators_with(&g, a);
    let comm_b = commutators_with(&g, b);
    let u2 = g.pow(u, 2);
    cert.check("a ∉ Φ(G_3), o(a) = 3", !phi.contains(a) && g.element_order(a) == 3, "");
    cert.check("b ∉ Φ(G_3), o(b) = 3", !phi.contains(b) && g.element_order(b) == 3, "");
    cert.check("v ∈ Φ(G_3) ∖ {[a,g]}", phi.contains(vv) && !comm_a.contains(&vv), "");
    cert.check("u^2 ∈ Φ(G_3) ∖ {[b,g]}", phi.contains(u2) && !comm_b.contains(&u2), "");
    cert.check("b^2u = (bu^2)^2", g.pow(g.mul(b, u2), 2) == b2u, "");
    for (x, t, name) in [(a, vv, "⟨a⟩^G ∩ ⟨av⟩^G = 1"), (b, u2, "⟨b⟩^G ∩ ⟨bu^2⟩^G = 1")] {
        let mut meet = orbit_union(&g, &[x]);
        meet.intersect_with(&orbit_union(&g, &[g.mul(x, t)]));
        cert.check(name, meet.count_ones(..) == 1, "");
    }
    let b0 = conjugate_generator(v, g2.shape, 0)?;
    let b1 = conjugate_generator(v, g2.shape, 1)?;
    let b2 = conjugate_generator(v, g2.shape, 2)?;
    cert.check(
        "b_0 b_1 b_2 = 1 in G_2",
        b0.compose(&b1)?.compose(&b2)?.is_identity(),
        "",
    );
    cert.conclude(None);
    Ok(cert)
}

fn thm_g3_large(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    let p = v.p();
    let mut cert = Certificate::new(Claim::ThmG3.id(), Params::new(v, 3));
    cert.note("second triple taken as {ab^2, b, ab^3}, ab^3 being the product ab^2 * b");
    match enumerate(v, 3, opts.budget)? {
        Some(g) => {
            cert.element_count = Some(g.order() as u64);
            cert.exhaustive = true;
            let gens = Gens::new(v, 3)?;
            let ([x1, y1], [x2, y2]) = base_triples(p);
            let idx = |s: &str| g.require(&gens.w(s));
            check_pair(
                &mut cert,
                &g,
                (idx(x1)?, idx(y1)?),
                (idx(x2)?, idx(y2)?),
                [x1, y1, x2, y2],
            )?;
            cert.conclude(None);
        }
        None => {
            note_budget(&mut cert, v, 3, opts.budget);
            elementwise_g3(&mut cert, v)?;
            cert.note("the Σ-intersection for the full group was not checked");
            cert.conclude(Some(SCALE.into()));
        }
    }
    Ok(cert)
}

/// Sub-claims of the `p >= 5` structure on `G_3` that need no enumeration.
fn elementwise_g3(cert: &mut Certificate, v: &DefiningVector) -> Result<()> {
    let p = v.p();
    let gens = Gens::new(v, 3)?;
    let pp = p as u64;
    let triple_x = [("a^-2", pp, [-2, 0]), ("ab", pp * pp, [1, 1]), ("A b", pp * pp, [-1, 1])];
    let triple_y = [("ab^2", pp * pp, [1, 2]), ("b", pp, [0, 1]), ("ab^3", pp * pp, [1, 3])];
    for (w, expect, _) in triple_x.iter().chain(&triple_y) {
        let o = gens.w(w).order();
        cert.check(format!("o({w}) = {expect}"), o == *expect, format!("{o}"));
    }
    cert.check(
        "X[0] X[1] = X[2] and Y[0] Y[1] = Y[2]",
        gens.w("a^-2 ab") == gens.w("A b") && gens.w("ab^2 b") == gens.w("ab^3"),
        "",
    );
    let pi = p as i64;
    cert.check(
        "{a^-2, ab} generates G_3 modulo Φ",
        det(triple_x[0].2, triple_x[1].2, pi) != 0,
        "",
    );
    cert.check(
        "{ab^2, b} generates G_3 modulo Φ",
        det(triple_y[0].2, triple_y[1].2, pi) != 0,
        "",
    );
    let lines: Vec<Option<usize>> = triple_x
        .iter()
        .chain(&triple_y)
        .map(|t| line(t.2, p))
        .collect();
    let distinct: HashSet<_> = lines.iter().flatten().collect();
    cert.check(
        "the six elements lie in six different maximal subgroups",
        lines.iter().all(Option::is_some) && distinct.len() == 6,
        format!("{lines:?}"),
    );
    cert.check(
        "(a^-1 b)^-1 = (ab^(p-1))^b",
        gens.w("(A b)^-1") == gens.w(&format!("B (ab^{})b", p - 1)),
        "",
    );
    let eq = eq_3_1(v, 3)?;
    cert.absorb("eq-3.1", &eq);
    Ok(())
}

fn thm_a(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    require_periodic(v, Claim::ThmA)?;
    let p = v.p();
    let mut cert = Certificate::new(Claim::ThmA.id(), Params::new(v, n));
    if n == 1 || (p == 3 && n == 2) {
        cert.note("the statement covers p >= 5 with n >= 2 and p = 3 with n >= 3");
        cert.conclude(Some("hypothesis not met".into()));
        return Ok(cert);
    }
    if n == 2 {
        let base = thm_g2(v, opts)?;
        cert.exhaustive = base.exhaustive;
        cert.element_count = base.element_count;
        cert.absorb("G_2", &base);
        let skip = match base.verdict {
            Verdict::Skipped(r) => Some(r),
            _ => None,
        };
        cert.conclude(skip);
        return Ok(cert);
    }
    let base = thm_g3(v, opts)?;
    cert.absorb("G_3", &base);
    let skip = match &base.verdict {
        Verdict::Skipped(r) => Some(r.clone()),
        _ => None,
    };
    if n == 3 {
        cert.exhaustive = base.exhaustive;
        cert.element_count = base.element_count;
        cert.conclude(skip);
        return Ok(cert);
    }
    // n >= 4: lift the structure of G_3 along G_n -> G_3.
    cert.note(format!("structure lifted from G_3 to G_{n}; G_{n} itself is not enumerated"));
    let deep = Gens::new(v, n)?;
    let shallow = Gens::new(v, 3)?;
    let ([x1, y1], [x2, y2]) = base_triples(p);
    let first = [x1.to_string(), y1.to_string(), format!("({x1})({y1})")];
    for w in &first {
        let (od, os) = (deep.w(w).order(), shallow.w(w).order());
        cert.check(format!("o({w}) in G_{n} = o({w}) in G_3"), od == os, format!("{od} vs {os}"));
    }
    if p == 3 {
        // lift av and b^2u through words read off G_3
        if let Some(g3) = enumerate(v, 3, opts.budget)? {
            let SpecialElements { u, v: vv } = build_special_elements(&g3)?;
            let coords = g3.abelian_coordinates().expect("G_3 has the C_3 x C_3 quotient");
            let mut vecs = Vec::new();
            for (name, x) in [("av", g3.mul(g3.a(), vv)), ("b^2u", g3.mul(g3.pow(g3.b(), 2), u))] {
                let word = g3.word_for(x);
                let lift = deep.w(&word);
                cert.check(
                    format!("{name} lifts to G_{n}"),
                    lift.truncate(3)? == g3.portrait(x),
                    format!("word {word}"),
                );
                let c = coords[x as usize];
                vecs.push([c[0] as i64, c[1] as i64]);
            }
            cert.check(
                format!("lifts of {{av, b^2u}} generate G_{n} modulo Φ"),
                det(vecs[0], vecs[1], 3) != 0,
                "",
            );
        } else {
            cert.check("G_3 enumerable for lifting", false, "budget");
        }
    } else {
        let _ = (x2, y2);
        cert.check(
            format!("{{a^-2, ab}} and {{ab^2, b}} generate G_{n} modulo Φ"),
            det([-2, 0], [1, 1], p as i64) != 0 && det([1, 2], [0, 1], p as i64) != 0,
            "",
        );
    }
    cert.conclude(skip);
    Ok(cert)
}

// ---- element-wise lemmas ---------------------------------------------------

fn lemma_orders(v: &DefiningVector, n: u32) -> Result<Certificate> {
    require_periodic(v, Claim::LemmaOrders)?;
    if n < 3 {
        return Err(Error::Precondition("lemma-orders is about n >= 3".into()));
    }
    let p = v.p() as u64;
    let gens = Gens::new(v, n)?;
    let mut cert = Certificate::new(Claim::LemmaOrders.id(), Params::new(v, n));
    cert.exhaustive = true;
    let mut words: Vec<String> = (1..p).map(|i| format!("ab^{i}")).collect();
    words.push("A b".into());
    let results: Vec<(String, u64)> = words
        .par_iter()
        .map(|w| (w.clone(), gens.w(w).order()))
        .collect();
    for (w, o) in results {
        cert.check(format!("o({w}) = p^2"), o == p * p, format!("{o}"));
    }
    cert.check(
        "(a^-1 b)^-1 = (ab^(p-1))^b",
        gens.w("(A b)^-1") == gens.w(&format!("B (ab^{})b", p - 1)),
        "",
    );
    cert.conclude(None);
    Ok(cert)
}

fn lemma_conjugates(v: &DefiningVector) -> Result<Certificate> {
    let p = v.p() as i64;
    let shape = TreeShape::new(v.p() as u32, 2)?;
    let mut cert = Certificate::new(Claim::LemmaConjugates.id(), Params::new(v, 2));
    cert.exhaustive = true;
    let conj: Vec<Portrait> = (0..p)
        .map(|i| conjugate_generator(v, shape, i))
        .collect::<Result<_>>()?;
    let mut clashes = Vec::new();
    for i in 0..p as usize {
        for j in 0..i {
            if conj[i] == conj[j] {
                clashes.push((j, i));
            }
        }
    }
    cert.check(
        "b^(a^i) are pairwise distinct modulo st(2), 0 <= i < p",
        clashes.is_empty(),
        if clashes.is_empty() { String::new() } else { format!("{clashes:?}") },
    );
    let gens = Gens::new(v, 2)?;
    cert.check("G_2 is not abelian", !gens.w("ABab").is_identity(), "");
    cert.conclude(None);
    Ok(cert)
}

fn eq_3_1(v: &DefiningVector, n: u32) -> Result<Certificate> {
    require_periodic(v, Claim::Eq31)?;
    if n < 2 {
        return Err(Error::Precondition("eq-3.1 needs n >= 2".into()));
    }
    let p = v.p() as i64;
    let gens = Gens::new(v, n)?;
    let sub = Gens::new(v, n - 1)?;
    let mut cert = Certificate::new(Claim::Eq31.id(), Params::new(v, n));
    cert.exhaustive = true;
    let e = v.signed();
    for i in 1..p {
        let lhs = sections(&gens.w(&format!("(ab^{i})^{p}")));
        let bi = sub.w(&format!("b^{i}"));
        let mut partial = 0i64;
        let rhs: Vec<Portrait> = (0..p as usize)
            .map(|k| {
                partial += e.get(k).copied().unwrap_or(0);
                let a = sub.w(&format!("a^{}", (i * partial).rem_euclid(p)));
                bi.conjugate_by(&a).expect("same shape")
            })
            .collect();
        cert.check(
            format!("ψ((ab^{i})^p) = ((b^{i})^(a^({i}S_1)), ..., b^{i}, b^{i})"),
            lhs == rhs,
            fmt_sections(&lhs),
        );
    }
    cert.conclude(None);
    Ok(cert)
}

fn lifting(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    let m = opts.lift_to.unwrap_or(n + 1);
    if m <= n {
        return Err(Error::Precondition(format!("lifting needs m > n, got n = {n}, m = {m}")));
    }
    let x = opts.x.clone().unwrap_or_else(|| "A^2".into());
    let y = opts.y.clone().unwrap_or_else(|| "ab".into());
    let mut params = Params::new(v, n);
    params.m = Some(m);
    params.x = Some(x.clone());
    params.y = Some(y.clone());
    let mut cert = Certificate::new(Claim::Lifting.id(), params);
    cert.exhaustive = true;
    let (low, high) = (Gens::new(v, n)?, Gens::new(v, m)?);
    let eval = |g: &Gens, s: &str| parse_word(s, &g.v, g.shape);
    for (name, w) in [("x", x.clone()), ("y", y.clone()), ("xy", format!("({x})({y})"))] {
        let (lo, hi) = (eval(&low, &w)?, eval(&high, &w)?);
        cert.check(
            format!("o({name}) at level {m} = o({name}) at level {n}"),
            lo.order() == hi.order(),
            format!("{} vs {}", hi.order(), lo.order()),
        );
        cert.check(
            format!("{name} at level {m} restricts to {name} at level {n}"),
            hi.truncate(n as usize)? == lo,
            "",
        );
    }
    cert.conclude(None);
    Ok(cert)
}

// ---- exhaustive checks on G_3 ----------------------------------------------

fn gupta_sidki_g3(
    claim: Claim,
    v: &DefiningVector,
    opts: &VerifyOptions,
) -> Result<(Certificate, Option<QuotientGroup>)> {
    require_gupta_sidki(v, claim)?;
    let mut cert = Certificate::new(claim.id(), Params::new(v, 3));
    let g = enumerate(v, 3, opts.budget)?;
    match &g {
        Some(g) => {
            cert.element_count = Some(g.order() as u64);
            cert.exhaustive = true;
        }
        None => {
            note_budget(&mut cert, v, 3, opts.budget);
            cert.conclude(Some(SCALE.into()));
        }
    }
    Ok((cert, g))
}

fn lemma_center(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    let (mut cert, g) = gupta_sidki_g3(Claim::LemmaCenter, v, opts)?;
    let Some(g) = g else { return Ok(cert) };
    let z = g.center();
    cert.check("|Z(G_3)| = 3", z.order() == 3, format!("{}", z.order()));
    let st1 = g.level_stabilizer(1)?;
    let st1d = g.subgroup_commutator(&st1, &st1);
    cert.check("Z(G_3) ≤ st_{G_3}(1)'", z.is_subgroup_of(&st1d), "");
    let comm = Gens::new(v, 2)?.w("ABab");
    let target = vec![comm.clone(), comm.clone(), comm];
    let gen = z
        .members()
        .find(|&x| x != 0 && sections(&g.portrait(x)) == target);
    cert.check(
        "Z(G_3) = ⟨z⟩ with ψ_3(z) = ([a,b], [a,b], [a,b])",
        gen.is_some_and(|x| g.generate([x]) == *z),
        "",
    );
    if let Some(x) = gen {
        cert.witness("z", g.portrait(x));
    }
    cert.conclude(None);
    Ok(cert)
}

fn lemma_comms_b(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    let (mut cert, g) = gupta_sidki_g3(Claim::LemmaCommsB, v, opts)?;
    let Some(g) = g else { return Ok(cert) };
    let z = g.center();
    let comms = commutators_with(&g, g.b());
    let meet: Vec<u32> = z.members().filter(|x| *x != 0 && comms.contains(x)).collect();
    cert.check(
        "Z(G_3) ∩ {[b,g] : g ∈ G_3} = 1",
        meet.is_empty(),
        format!("{} distinct commutators [b,g]", comms.len()),
    );
    cert.conclude(None);
    Ok(cert)
}

fn lemma_comms_a(v: &DefiningVector, opts: &VerifyOptions) -> Result<Certificate> {
    let (mut cert, g) = gupta_sidki_g3(Claim::LemmaCommsA, v, opts)?;
    let Some(g) = g else { return Ok(cert) };
    let SpecialElements { v: vv, .. } = build_special_elements(&g)?;
    cert.witness("v", g.portrait(vv));
    let st1 = g.level_stabilizer(1)?;
    let st1d = g.subgroup_commutator(&st1, &st1);
    cert.check("v ∈ st_{G_3}(1)' with ψ_3(v) = ([a,b], 1, 1)", st1d.contains(vv), "");
    let comms = commutators_with(&g, g.a());
    cert.check(
        "v ∉ {[a,g] : g ∈ G_3}",
        !comms.contains(&vv),
        format!("{} distinct commutators [a,g]", comms.len()),
    );
    cert.conclude(None);
    Ok(cert)
}

fn prop_key(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    require_periodic(v, Claim::PropKey)?;
    if n < 3 {
        return Err(Error::Precondition("prop-key is about n >= 3".into()));
    }
    let mut cert = Certificate::new(Claim::PropKey.id(), Params::new(v, n));
    let Some(g) = enumerate(v, n, opts.budget)? else {
        note_budget(&mut cert, v, n, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    let p = g.p() as i64;
    let w: Vec<u32> = (1..p)
        .map(|i| g.pow(g.mul(g.a(), g.pow(g.b(), i)), p))
        .collect();
    let ids: Vec<u32> = w.iter().map(|&x| cyclic_id(&g, x)).collect();
    cert.check(
        "w_i = (ab^i)^p has order p",
        w.iter().all(|&x| g.element_order(x) == p as u64),
        "",
    );
    let mut hits = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..w.len() {
        for j in 0..w.len() {
            if i == j {
                continue;
            }
            let found = g
                .elements()
                .into_par_iter()
                .find_first(|&h| cyclic_id(&g, g.conj(w[j], h)) == ids[i]);
            if let Some(h) = found {
                hits.push((i + 1, j + 1, h));
            }
        }
    }
    cert.check(
        "⟨w_i⟩ = ⟨w_j⟩^g for some g only if i = j",
        hits.is_empty(),
        format!("{} pairs (i, j), {} conjugators each", w.len() * w.len().saturating_sub(1), g.order()),
    );
    for (i, j, h) in hits.iter().take(1) {
        cert.witness(format!("conjugator for i={i}, j={j}"), g.portrait(*h));
    }
    cert.conclude(None);
    Ok(cert)
}

// ---- non-periodic ----------------------------------------------------------

struct Collision {
    /// Least nontrivial element of the common subgroup.
    common: Option<u32>,
    checked: usize,
}

/// (i)–(iii) over every element of every `M_{n,i} ∖ G_n'`.
fn collision_checks(cert: &mut Certificate, g: &QuotientGroup) -> Result<Collision> {
    let p = g.p() as i64;
    let n = g.depth() as u32;
    let derived = g.derived_subgroup();
    let coords = g
        .abelian_coordinates()
        .ok_or_else(|| Error::Precondition("needs n >= 2".into()))?;
    let top = (p as u64).pow(n);
    let power = top / p as u64;
    let mut elements = Vec::new();
    for i in 1..p {
        let abi = g.mul(g.a(), g.pow(g.b(), i));
        let m = g.generate(derived.generators().iter().copied().chain([abi]));
        if m.order() * p as usize != g.order() {
            return Err(Error::Precondition(format!("M_{n},{i} does not have index p")));
        }
        elements.extend(m.members().filter(|&x| !derived.contains(x)).map(|x| (i, abi, x)));
    }
    let results: Vec<(bool, bool, u32)> = elements
        .par_iter()
        .map(|&(_, abi, x)| {
            let k = coords[x as usize][0] as i64;
            let xp = g.pow(x, power as i64);
            let order_ok = g.element_order(x) == top;
            let power_ok = xp == g.pow(abi, k * power as i64);
            (order_ok, power_ok, cyclic_id(g, xp))
        })
        .collect();
    let bad_order = results.iter().filter(|r| !r.0).count();
    let bad_power = results.iter().filter(|r| !r.1).count();
    let ids: HashSet<u32> = results.iter().map(|r| r.2).collect();
    cert.check(
        format!("(i) all elements of M_{n},i ∖ G_{n}' have order p^{n}"),
        bad_order == 0,
        format!("{} elements, {bad_order} failures", results.len()),
    );
    cert.check(
        format!("(ii) g = (ab^i)^k w implies g^(p^{}) = (ab^i)^(k p^{})", n - 1, n - 1),
        bad_power == 0,
        format!("{bad_power} failures"),
    );
    let common = (ids.len() == 1)
        .then(|| ids.into_iter().next().unwrap())
        .filter(|&c| c != 0);
    cert.check(
        format!("(iii) the p^{}-th powers generate one common cyclic subgroup", n - 1),
        common.is_some(),
        "",
    );
    Ok(Collision {
        common: common.map(|c| g.generate([c]).members().find(|&x| x != 0).unwrap()),
        checked: results.len(),
    })
}

fn prop_collision(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    require_non_periodic(v, Claim::PropCollision)?;
    if n < 2 {
        return Err(Error::Precondition("prop-collision is about n >= 2".into()));
    }
    let mut cert = Certificate::new(Claim::PropCollision.id(), Params::new(v, n));
    let Some(g) = enumerate(v, n, opts.budget)? else {
        note_budget(&mut cert, v, n, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    let col = collision_checks(&mut cert, &g)?;
    if let Some(c) = col.common {
        cert.witness("common subgroup generator", g.portrait(c));
        if n == 2 {
            cert.check(
                "the common subgroup is Z(G_2)",
                g.generate([c]) == *g.center(),
                format!("|Z(G_2)| = {}", g.center().order()),
            );
        }
    }
    let _ = col.checked;
    cert.conclude(None);
    Ok(cert)
}

fn thm_b(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    require_non_periodic(v, Claim::ThmB)?;
    let p = v.p();
    let mut cert = Certificate::new(Claim::ThmB.id(), Params::new(v, n));
    let Some(g) = enumerate(v, n, opts.budget)? else {
        note_budget(&mut cert, v, n, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    if n == 1 {
        cert.check(
            "G_1 is cyclic of order p",
            g.order() == p as usize && g.element_order(g.a()) == p as u64,
            "",
        );
        cert.conclude(None);
        return Ok(cert);
    }
    // proof path
    let d = g.derived_subgroup();
    cert.check(
        "Φ(G_n) = G_n' of index p^2",
        g.frattini() == d && d.order() * (p as usize).pow(2) == g.order(),
        "",
    );
    let mut pigeonhole = true;
    let pi = p as i64;
    for s1 in 0..pi {
        for t1 in 0..pi {
            for s2 in 0..pi {
                for t2 in 0..pi {
                    if det([s1, t1], [s2, t2], pi) == 0 {
                        continue;
                    }
                    let ls = [line([s1, t1], p), line([s2, t2], p), line([s1 + s2, t1 + t2], p)];
                    let distinct = ls[0] != ls[1] && ls[1] != ls[2] && ls[0] != ls[2];
                    let hits_m = ls.iter().any(|l| l.is_some_and(|l| l >= 2));
                    pigeonhole &= distinct && hits_m;
                }
            }
        }
    }
    cert.check(
        "every generating triple has x, y, xy in three maximal subgroups, one of them some M_{n,i}",
        pigeonhole,
        format!("all independent pairs of F_{p}^2"),
    );
    let col = collision_checks(&mut cert, &g)?;
    let proof_says_none = cert.all_passed();
    cert.check(
        "proof path: every Σ contains the common subgroup, so no two meet trivially",
        proof_says_none && col.common.is_some(),
        "",
    );
    if let Some(c) = col.common {
        cert.witness("common element", g.portrait(c));
    }
    if g.order() <= BRUTE_FORCE_LIMIT {
        let brute = brute_force_search(&g)?;
        cert.check(
            "brute-force oracle (no pruning) finds no Beauville structure",
            brute.pair.is_none(),
            format!(
                "{} generating pairs, {} distinct Σ-sets",
                brute.generating_pairs, brute.distinct_sigma
            ),
        );
        cert.check(
            "proof path and oracle agree",
            brute.pair.is_none() == proof_says_none,
            "",
        );
    } else {
        cert.note(format!("brute-force oracle skipped above {BRUTE_FORCE_LIMIT} elements"));
    }
    cert.conclude(None);
    Ok(cert)
}

fn order_formula(v: &DefiningVector, n: u32, opts: &VerifyOptions) -> Result<Certificate> {
    let mut cert = Certificate::new(Claim::OrderFormula.id(), Params::new(v, n));
    let class = classify(v);
    if v.is_symmetric() && n >= 3 {
        cert.note("no order formula is known for symmetric vectors");
        if let Some(g) = enumerate(v, n, opts.budget)? {
            cert.element_count = Some(g.order() as u64);
        }
        cert.conclude(Some("symmetric vector".into()));
        return Ok(cert);
    }
    let log = class.predicted_log_order(n).expect("formula applies");
    let Some(g) = enumerate(v, n, opts.budget)? else {
        note_budget(&mut cert, v, n, opts.budget);
        cert.conclude(Some(SCALE.into()));
        return Ok(cert);
    };
    cert.element_count = Some(g.order() as u64);
    cert.exhaustive = true;
    let expected = class.predicted_order(n);
    cert.check(
        format!("|G_{n}| = p^{log}"),
        expected == Some(g.order() as u128),
        format!("{} elements, t = {}", g.order(), class.rank_t),
    );
    if n == 2 {
        let c = g.nilpotency_class();
        cert.check(
            format!("G_2 has maximal class (class {})", log - 1),
            c == Some(log as usize - 1),
            format!("{c:?}"),
        );
    }
    cert.conclude(None);
    Ok(cert)
}

// ---- replay ---------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub ok: bool,
    pub method: String,
    pub detail: String,
}

/// Re-checks a certificate. When it carries a Beauville pair (`x1, y1, x2,
/// y2`) the pair is verified directly, without search; otherwise the claim
/// is re-run and the canonical documents are compared.
pub fn replay(cert: &Certificate, budget: usize) -> Result<ReplayReport> {
    let v = cert.params.vector()?;
    let roles = ["x1", "y1", "x2", "y2"];
    if cert.verdict == Verdict::Verified {
        if let Some(encs) = roles
            .iter()
            .map(|r| cert.witness_for(r))
            .collect::<Option<Vec<&str>>>()
        {
            let els: Vec<Portrait> = encs.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let depth = els[0].shape().depth() as u32;
            let g = QuotientGroup::enumerate(&v, depth, budget)?;
            let t1 = GeneratingTriple::from_portraits(&g, &els[0], &els[1])?;
            let t2 = GeneratingTriple::from_portraits(&g, &els[2], &els[3])?;
            let r = is_beauville_pair(&t1, &t2, &g);
            return Ok(ReplayReport {
                ok: r.beauville,
                method: "witness pair".into(),
                detail: format!("G_{depth}: |Σ1| = {}, |Σ2| = {}", r.sigma1, r.sigma2),
            });
        }
    }
    let claim: Claim = cert.claim.parse()?;
    let opts = VerifyOptions {
        budget,
        lift_to: cert.params.m,
        x: cert.params.x.clone(),
        y: cert.params.y.clone(),
    };
    let fresh = verify(claim, &v, Some(cert.params.n), &opts)?;
    let ok = fresh.to_json() == cert.to_json();
    Ok(ReplayReport {
        ok,
        method: "re-run".into(),
        detail: if ok {
            "identical document".into()
        } else {
            format!("fresh verdict: {}", fresh.verdict)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs() -> DefiningVector {
        DefiningVector::new(3, &[1, -1]).unwrap()
    }

    fn run(claim: Claim, v: &DefiningVector, n: Option<u32>) -> Certificate {
        verify(claim, v, n, &VerifyOptions::default()).unwrap()
    }

    fn assert_verified(c: &Certificate) {
        assert_eq!(c.verdict, Verdict::Verified, "{}", c.to_text());
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!("thm-Z".parse::<Claim>().is_err());
    }

    #[test]
    fn element_wise_lemmas() {
        let v5 = DefiningVector::alternating(5).unwrap();
        for v in [gs(), v5.clone()] {
            assert_verified(&run(Claim::LemmaOrders, &v, Some(3)));
            assert_verified(&run(Claim::LemmaOrders, &v, Some(4)));
            assert_verified(&run(Claim::LemmaConjugates, &v, None));
            assert_verified(&run(Claim::Eq31, &v, Some(3)));
        }
        assert_verified(&run(Claim::LemmaConjugates, &DefiningVector::new(3, &[1, 0]).unwrap(), None));
    }

    #[test]
    fn gupta_sidki_lemmas() {
        for claim in [Claim::LemmaCenter, Claim::LemmaCommsB, Claim::LemmaCommsA, Claim::PropKey] {
            let c = run(claim, &gs(), None);
            assert_verified(&c);
            assert!(c.exhaustive);
            assert_eq!(c.element_count, Some(2187));
        }
    }

    #[test]
    fn g3_structure_for_p3() {
        let c = run(Claim::ThmG3, &gs(), None);
        assert_verified(&c);
        assert!(c.witness_for("x2").is_some());
        assert!(replay(&c, DEFAULT_BUDGET).unwrap().ok);
    }

    #[test]
    fn g2_claims() {
        let c = run(Claim::ThmG2, &gs(), None);
        assert_verified(&c);
        assert!(c.witnesses.is_empty());
    }

    #[test]
    fn non_periodic_at_level_two() {
        let v = DefiningVector::new(3, &[1, 0]).unwrap();
        assert_verified(&run(Claim::PropCollision, &v, Some(2)));
        let c = run(Claim::ThmB, &v, Some(2));
        assert_verified(&c);
        assert!(c.checks.iter().any(|k| k.name.starts_with("brute-force")));
        assert_verified(&run(Claim::ThmB, &v, Some(1)));
    }

    #[test]
    fn preconditions() {
        let v = DefiningVector::new(3, &[1, 0]).unwrap();
        let opts = VerifyOptions::default();
        assert!(verify(Claim::PropCollision, &gs(), None, &opts).is_err());
        assert!(verify(Claim::ThmG3, &v, None, &opts).is_err());
        assert!(verify(Claim::ThmG3, &gs(), Some(4), &opts).is_err());
        assert!(verify(Claim::LemmaCenter, &DefiningVector::alternating(5).unwrap(), None, &opts).is_err());
        let c = run(Claim::ThmA, &gs(), Some(2));
        assert_eq!(c.verdict, Verdict::Skipped("hypothesis not met".into()));
    }

    #[test]
    fn scale_limits_give_skips() {
        let v5 = DefiningVector::alternating(5).unwrap();
        let c = run(Claim::PropKey, &v5, Some(3));
        assert_eq!(c.verdict, Verdict::Skipped("scale".into()));
        let c = run(Claim::ThmA, &v5, Some(3));
        assert_eq!(c.verdict, Verdict::Skipped("scale".into()));
        assert!(c.checks.iter().all(|k| k.passed));
        assert!(c.checks.iter().any(|k| k.name.contains("eq-3.1")));
        assert!(c.checks.iter().any(|k| k.name.contains("o(ab) = 25")));
    }

    #[test]
    fn lifting_and_formula() {
        assert_verified(&run(Claim::Lifting, &gs(), None));
        let v5 = DefiningVector::alternating(5).unwrap();
        assert_verified(&run(Claim::Lifting, &v5, None));
        assert_verified(&run(Claim::OrderFormula, &gs(), Some(3)));
        assert_verified(&run(Claim::OrderFormula, &gs(), Some(2)));
        let sym = run(Claim::OrderFormula, &DefiningVector::new(3, &[1, 1]).unwrap(), Some(3));
        assert_eq!(sym.verdict, Verdict::Skipped("symmetric vector".into()));
    }

    #[test]
    fn thm_a_lifts_to_level_four() {
        let c = run(Claim::ThmA, &gs(), Some(4));
        assert_verified(&c);
        assert!(!c.exhaustive);
    }

    #[test]
    fn replay_by_rerun() {
        let c = run(Claim::LemmaCenter, &gs(), None);
        let r = replay(&c, DEFAULT_BUDGET).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.method, "re-run");
        let mut forged = c.clone();
        forged.checks[0].passed = false;
        forged.verdict = Verdict::Refuted;
        assert!(!replay(&forged, DEFAULT_BUDGET).unwrap().ok);
    }
}
