//! Paradoxical decompositions of free groups and measure-level invariance
//! defects.
//!
//! For pieces `A_j`, `B_k` with translate families `{s_j A_j}` and
//! `{t_k B_k}` each partitioning the group, every probability measure has
//! `sum_j mu(s_j A_j) + sum_k mu(t_k B_k) = 2` while the pieces carry total
//! mass at most one, so the Tarski defect
//! `sum_j |mu(s_j A_j) - mu(A_j)| + sum_k |mu(t_k B_k) - mu(B_k)|` is at
//! least one. The linear program of [`min_invariance_defect`] contrasts this
//! with the vanishing defects of boxes in `Z^d`.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, FreeGroup, Group, GroupHandle, Lattice, LatticePoint, ProbMeasure, Word};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Field;

/// Largest ball accepted by [`min_invariance_defect`].
pub const MAX_LP_SUPPORT: usize = 500;
/// Lower bound asserted for free-group defects, allowing for rounding.
pub const DEFECT_FLOOR: f64 = 1.0 - 1e-9;

/// A set of reduced words given by a membership rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WordSet {
    /// Reduced words beginning with `prefix`.
    StartsWith { prefix: Word },
    Finite { words: BTreeSet<Word> },
}

impl WordSet {
    pub fn starts_with(prefix: Word) -> Self {
        WordSet::StartsWith { prefix }
    }

    pub fn contains(&self, w: &Word) -> bool {
        match self {
            WordSet::StartsWith { prefix } => w.letters().starts_with(prefix.letters()),
            WordSet::Finite { words } => words.contains(w),
        }
    }

    fn describe(&self) -> String {
        match self {
            WordSet::StartsWith { prefix } => format!("W({prefix})"),
            WordSet::Finite { words } => format!("{{{} words}}", words.len()),
        }
    }
}

/// Pieces `A_1..A_n`, `B_1..B_m` with translates `s_j`, `t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParadoxicalDecomposition {
    rank: u32,
    pieces_a: Vec<WordSet>,
    pieces_b: Vec<WordSet>,
    translates_s: Vec<Word>,
    translates_t: Vec<Word>,
}

/// Position of a word relative to a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub word: Word,
    /// Labels `A1`, `B2`, ... of the pieces containing the word.
    pub pieces: Vec<String>,
    /// Labels `s1A1`, `t2B2`, ... of the translates containing the word.
    pub translates: Vec<String>,
}

/// Result of checking the decomposition axioms on a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub radius: usize,
    pub ball_size: usize,
    pub pieces_disjoint: bool,
    pub translates_disjoint: bool,
    /// Every word of length `< radius` lies in some `s_j A_j` and in some
    /// `t_k B_k`.
    pub covering: bool,
    pub first_violation: Option<String>,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.pieces_disjoint && self.translates_disjoint && self.covering
    }
}

impl ParadoxicalDecomposition {
    pub fn new(
        group: &FreeGroup,
        pieces_a: Vec<WordSet>,
        translates_s: Vec<Word>,
        pieces_b: Vec<WordSet>,
        translates_t: Vec<Word>,
    ) -> Result<Self> {
        if pieces_a.is_empty() || pieces_b.is_empty() {
            return Err(Error::Empty("decomposition pieces"));
        }
        if pieces_a.len() != translates_s.len() || pieces_b.len() != translates_t.len() {
            return Err(Error::InvalidArgument("each piece needs exactly one translate".into()));
        }
        for w in translates_s.iter().chain(&translates_t) {
            group.validate(w)?;
        }
        for set in pieces_a.iter().chain(&pieces_b) {
            match set {
                WordSet::StartsWith { prefix } => group.validate(prefix)?,
                WordSet::Finite { words } => words.iter().try_for_each(|w| group.validate(w))?,
            }
        }
        Ok(ParadoxicalDecomposition { rank: group.rank(), pieces_a, pieces_b, translates_s, translates_t })
    }

    pub fn group(&self) -> FreeGroup {
        FreeGroup::new(self.rank).expect("rank validated on construction")
    }

    pub fn pieces_a(&self) -> &[WordSet] {
        &self.pieces_a
    }

    pub fn pieces_b(&self) -> &[WordSet] {
        &self.pieces_b
    }

    pub fn translates_s(&self) -> &[Word] {
        &self.translates_s
    }

    pub fn translates_t(&self) -> &[Word] {
        &self.translates_t
    }

    /// `(label, translate, piece)` for every `s_j A_j` then every `t_k B_k`.
    fn families(&self) -> impl Iterator<Item = (String, &Word, &WordSet)> {
        let a = self.translates_s.iter().zip(&self.pieces_a).enumerate().map(|(j, (s, p))| (format!("A{}", j + 1), s, p));
        let b = self.translates_t.iter().zip(&self.pieces_b).enumerate().map(|(k, (t, p))| (format!("B{}", k + 1), t, p));
        a.chain(b)
    }

    pub fn classify(&self, w: &Word) -> Result<Classification> {
        self.group().validate(w)?;
        let mut pieces = Vec::new();
        let mut translates = Vec::new();
        for (label, s, piece) in self.families() {
            if piece.contains(w) {
                pieces.push(label.clone());
            }
            if piece.contains(&s.inverse().concat(w)) {
                let tr = if label.starts_with('A') { 's' } else { 't' };
                translates.push(format!("{tr}{}{label}", &label[1..]));
            }
        }
        Ok(Classification { word: w.clone(), pieces, translates })
    }

    /// Verifies disjointness on `B_radius` and covering on `B_(radius-1)`.
    pub fn check_on_ball(&self, radius: usize) -> Result<DecompositionCheck> {
        let g = self.group();
        let ball = g.ball(radius)?;
        let mut check = DecompositionCheck {
            radius,
            ball_size: ball.len(),
            pieces_disjoint: true,
            translates_disjoint: true,
            covering: true,
            first_violation: None,
        };
        let note = |check: &mut DecompositionCheck, msg: String| {
            if check.first_violation.is_none() {
                check.first_violation = Some(msg);
            }
        };
        for w in &ball {
            let c = self.classify(w)?;
            if c.pieces.len() > 1 {
                check.pieces_disjoint = false;
                note(&mut check, format!("{w} lies in {}", c.pieces.join(", ")));
            }
            let in_s = c.translates.iter().filter(|l| l.starts_with('s')).count();
            let in_t = c.translates.len() - in_s;
            if in_s > 1 || in_t > 1 {
                check.translates_disjoint = false;
                note(&mut check, format!("{w} lies in {}", c.translates.join(", ")));
            }
            if w.len() < radius && (in_s == 0 || in_t == 0) {
                check.covering = false;
                note(&mut check, format!("{w} is not covered by both translate families"));
            }
        }
        Ok(check)
    }

    pub fn summary(&self) -> String {
        self.families()
            .map(|(label, s, p)| format!("{label}={} ({s})", p.describe()))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// First-letter decomposition of `F_2`: `A_1 = W(a)`, `A_2 = W(a^-1)`,
/// `B_1 = W(b)`, `B_2 = W(b^-1)` with `s = (e, a)` and `t = (e, b)`.
pub fn standard_f2_decomposition() -> ParadoxicalDecomposition {
    let g = FreeGroup::f2();
    let [a, b] = [g.generator(0), g.generator(1)];
    ParadoxicalDecomposition::new(
        &g,
        vec![WordSet::starts_with(a.clone()), WordSet::starts_with(a.inverse())],
        vec![Word::identity(), a],
        vec![WordSet::starts_with(b.clone()), WordSet::starts_with(b.inverse())],
        vec![Word::identity(), b],
    )
    .expect("standard pieces are valid")
}

/// `mu(sA) = sum_y mu(y) chi_A(s^-1 y)`.
pub fn mean_coefficient<W: Field>(mu: &ProbMeasure<Word, W>, s: &Word, a: &WordSet) -> W {
    let s_inv = s.inverse();
    let mut total = W::zero();
    for (y, w) in mu.iter() {
        if a.contains(&s_inv.concat(y)) {
            total += w.clone();
        }
    }
    total
}

/// Membership of a fixed support in every piece and translate, so that
/// many measures on the same support are evaluated by dot products.
#[derive(Debug, Clone)]
pub struct TarskiTable {
    support: Vec<Word>,
    /// Per family: indices of support words in the piece, then in the translate.
    rows: Vec<(Vec<usize>, Vec<usize>)>,
}

impl TarskiTable {
    pub fn new(dec: &ParadoxicalDecomposition, support: Vec<Word>) -> Result<Self> {
        let g = dec.group();
        for w in &support {
            g.validate(w)?;
        }
        let rows = dec
            .families()
            .map(|(_, s, piece)| {
                let s_inv = s.inverse();
                let inside = (0..support.len()).filter(|&i| piece.contains(&support[i])).collect();
                let moved = (0..support.len()).filter(|&i| piece.contains(&s_inv.concat(&support[i]))).collect();
                (inside, moved)
            })
            .collect();
        Ok(TarskiTable { support, rows })
    }

    pub fn support(&self) -> &[Word] {
        &self.support
    }

    /// `D` for weights indexed like the support.
    pub fn defect<W: Field>(&self, weights: &[W]) -> W {
        let mass = |idx: &[usize]| idx.iter().fold(W::zero(), |acc, &i| acc + weights[i].clone());
        self.rows.iter().fold(W::zero(), |acc, (inside, moved)| acc + (mass(moved) - mass(inside)).abs())
    }

    /// `(sum of translate masses, sum of piece masses)`; the first is 2 and
    /// the second at most 1 for a genuine paradoxical decomposition.
    pub fn partition_sums<W: Field>(&self, weights: &[W]) -> (W, W) {
        let mass = |idx: &[usize]| idx.iter().fold(W::zero(), |acc, &i| acc + weights[i].clone());
        self.rows.iter().fold((W::zero(), W::zero()), |(t, p), (inside, moved)| (t + mass(moved), p + mass(inside)))
    }
}

/// Tarski defect `D(mu)` of a measure on reduced words.
pub fn tarski_defect<W: Field>(mu: &ProbMeasure<Word, W>, dec: &ParadoxicalDecomposition) -> Result<W> {
    Ok(TarskiTable::new(dec, mu.support().to_vec())?.defect(mu.weights()))
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectSweep {
    pub radius: usize,
    pub samples: usize,
    pub min_defect: f64,
    pub argmin_sample: usize,
    pub max_defect: f64,
}

/// Minimum Tarski defect over Dirichlet(1, ..., 1) measures on `B_radius`;
/// sample `k` draws from its own ChaCha stream.
pub fn tarski_sweep(dec: &ParadoxicalDecomposition, radius: usize, samples: usize, seed: u64) -> Result<DefectSweep> {
    let table = TarskiTable::new(dec, dec.group().ball(radius)?)?;
    let mut sweep = DefectSweep { radius, samples, min_defect: f64::INFINITY, argmin_sample: 0, max_defect: 0.0 };
    for k in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let mu = ProbMeasure::dirichlet(table.support().to_vec(), &mut rng)?;
        let d = table.defect(mu.weights());
        if d < sweep.min_defect {
            sweep.min_defect = d;
            sweep.argmin_sample = k;
        }
        sweep.max_defect = sweep.max_defect.max(d);
    }
    Ok(sweep)
}

/// Optimum of the invariance linear program on a ball.
#[derive(Debug, Clone)]
pub struct InvarianceSolution<E, F> {
    pub value: F,
    /// Optimal measure, including zero weights, indexed like the ball.
    pub measure: ProbMeasure<E, F>,
    pub pivots: usize,
    pub variables: usize,
    pub constraints: usize,
}

/// Minimizes `max_s ||s mu - mu||_1` over probability measures on `ball`,
/// `s` ranging over `gens`. Translation by `s^-1` has the same defect, so
/// positive generators suffice.
///
/// The l1 norms are linearized with one variable per point of
/// `ball ∩ s ball`; points of the symmetric difference contribute their
/// mass directly.
pub fn invariance_lp<G: Group, F: Field>(group: &G, ball: &[G::Elem], gens: &[G::Elem]) -> Result<InvarianceSolution<G::Elem, F>> {
    if ball.is_empty() || gens.is_empty() {
        return Err(Error::Empty("ball or generators"));
    }
    if ball.len() > MAX_LP_SUPPORT {
        return Err(Error::TooManyElements { requested: ball.len(), cap: MAX_LP_SUPPORT });
    }
    let index: HashMap<&G::Elem, usize> = ball.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let n = ball.len();
    // (s index) -> interior pairs (z, s^-1 z) and boundary mass variables
    let mut interior: Vec<Vec<(usize, usize)>> = Vec::with_capacity(gens.len());
    let mut boundary: Vec<Vec<usize>> = Vec::with_capacity(gens.len());
    for s in gens {
        let s_inv = group.inv(s);
        let mut pairs = Vec::new();
        let mut edge = Vec::new();
        for (i, z) in ball.iter().enumerate() {
            match index.get(&group.mul(&s_inv, z)) {
                Some(&j) => pairs.push((i, j)),
                None => edge.push(i),
            }
            if !index.contains_key(&group.mul(s, z)) {
                edge.push(i);
            }
        }
        interior.push(pairs);
        boundary.push(edge);
    }
    let n_u: usize = interior.iter().map(Vec::len).sum();
    let t = n + n_u;
    let mut objective = vec![F::zero(); t + 1];
    objective[t] = F::one();
    let mut lp = LinearProgram::minimize(objective);
    lp.constraint((0..n).map(|i| (i, F::one())).collect(), Relation::Eq, F::one())?;
    let mut u = n;
    for (pairs, edge) in interior.iter().zip(&boundary) {
        let mut epigraph: Vec<(usize, F)> = Vec::with_capacity(pairs.len() + edge.len() + 1);
        for &(z, pre) in pairs {
            for sign in [F::one(), -F::one()] {
                lp.constraint(vec![(pre, sign.clone()), (z, -sign), (u, -F::one())], Relation::Le, F::zero())?;
            }
            epigraph.push((u, F::one()));
            u += 1;
        }
        epigraph.extend(edge.iter().map(|&i| (i, F::one())));
        epigraph.push((t, -F::one()));
        lp.constraint(epigraph, Relation::Le, F::zero())?;
    }
    let (variables, constraints) = (lp.n_vars(), lp.n_constraints());
    let sol = lp.solve()?;
    let mut weights: Vec<F> = sol.x[..n].iter().map(|w| if w.is_negative() { F::zero() } else { w.clone() }).collect();
    let total = weights.iter().fold(F::zero(), |acc, w| acc + w.clone());
    for w in &mut weights {
        *w /= total.clone();
    }
    Ok(InvarianceSolution {
        value: sol.value,
        measure: ProbMeasure::new(ball.to_vec(), weights)?,
        pivots: sol.pivots,
        variables,
        constraints,
    })
}

/// `max_s ||s mu - mu||_1` recomputed directly from a measure.
pub fn max_shift_defect<G: Group, F: Field>(group: &G, mu: &ProbMeasure<G::Elem, F>, gens: &[G::Elem]) -> Vec<F> {
    gens.iter().map(|s| mu.translate(group, s).l1_distance(mu)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub radius: usize,
    pub ball_size: usize,
    /// Optimal value reported by the simplex solver.
    pub value: f64,
    /// `||s mu - mu||_1` recomputed from the returned measure, per positive
    /// generator.
    pub generator_defects: Vec<f64>,
    /// Maximum of `generator_defects`.
    pub certified_value: f64,
    /// Nonzero part of the optimal measure.
    pub measure: ProbMeasure<Element, f64>,
    pub pivots: usize,
    pub variables: usize,
    pub constraints: usize,
}

fn report<G: Group>(
    group: &G,
    radius: usize,
    sol: InvarianceSolution<G::Elem, f64>,
    gens: &[G::Elem],
    wrap: impl Fn(G::Elem) -> Element,
) -> Result<InvarianceReport> {
    let generator_defects = max_shift_defect(group, &sol.measure, gens);
    let certified_value = generator_defects.iter().copied().fold(0.0, f64::max);
    let pruned = sol.measure.pruned();
    let measure = ProbMeasure::new(
        pruned.support().iter().cloned().map(wrap).collect(),
        pruned.weights().to_vec(),
    )?;
    Ok(InvarianceReport {
        radius,
        ball_size: sol.measure.len(),
        value: sol.value,
        generator_defects,
        certified_value,
        measure,
        pivots: sol.pivots,
        variables: sol.variables,
        constraints: sol.constraints,
    })
}

/// Free-group generators `a, b, ...`.
pub fn free_generators(g: &FreeGroup) -> Vec<Word> {
    (0..g.rank()).map(|i| g.generator(i)).collect()
}

/// Lattice generators `e_1, ..., e_d`.
pub fn lattice_generators(g: &Lattice) -> Vec<LatticePoint> {
    g.generators()
}

/// Smallest `max_s ||s mu - mu||_1` over measures on the radius-`r` ball of
/// a free group or lattice.
pub fn min_invariance_defect(g: &GroupHandle, r: usize) -> Result<InvarianceReport> {
    match g {
        GroupHandle::Free(f) => {
            let gens = free_generators(f);
            let sol = invariance_lp::<_, f64>(f, &f.ball(r)?, &gens)?;
            report(f, r, sol, &gens, Element::Word)
        }
        GroupHandle::Lattice(z) => {
            let gens = lattice_generators(z);
            let sol = invariance_lp::<_, f64>(z, &z.ball(r)?, &gens)?;
            report(z, r, sol, &gens, Element::Point)
        }
        GroupHandle::Finite(_) => Err(Error::KindMismatch("invariance defects need a free group or a lattice".into())),
    }
}

/// Exact rational optimum on a free-group ball.
pub fn exact_free_invariance_defect(g: &FreeGroup, r: usize) -> Result<InvarianceSolution<Word, BigRational>> {
    invariance_lp(g, &g.ball(r)?, &free_generators(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn first_letter_membership() {
        let dec = standard_f2_decomposition();
        assert!(dec.classify(&w("e")).unwrap().pieces.is_empty());
        assert_eq!(dec.classify(&w("a")).unwrap().pieces, vec!["A1"]);
        assert_eq!(dec.classify(&w("Ab")).unwrap().pieces, vec!["A2"]);
        // b = a (a^-1 b) lies in s2 A2 but not in A1
        let c = dec.classify(&w("b")).unwrap();
        assert!(c.translates.contains(&"s2A2".to_string()));
        assert!(!c.pieces.contains(&"A1".to_string()));
        let ball = FreeGroup::f2().ball(3).unwrap();
        assert_eq!(ball.iter().filter(|x| dec.pieces_a()[0].contains(x)).count(), 13);
    }

    #[test]
    fn standard_decomposition_on_b8() {
        let check = standard_f2_decomposition().check_on_ball(8).unwrap();
        assert!(check.holds(), "{check:?}");
        assert_eq!(check.ball_size, 1 + 4 * (3usize.pow(8) - 1) / 2);
    }

    #[test]
    fn broken_decomposition_is_caught() {
        let g = FreeGroup::f2();
        let a = g.generator(0);
        let dec = ParadoxicalDecomposition::new(
            &g,
            vec![WordSet::starts_with(a.clone()), WordSet::starts_with(a.clone())],
            vec![Word::identity(), a.clone()],
            vec![WordSet::starts_with(g.generator(1))],
            vec![Word::identity()],
        )
        .unwrap();
        let check = dec.check_on_ball(3).unwrap();
        assert!(!check.pieces_disjoint && !check.covering);
        assert!(check.first_violation.is_some());
        assert!(ParadoxicalDecomposition::new(&g, vec![], vec![], vec![], vec![]).is_err());
        assert!(ParadoxicalDecomposition::new(&g, vec![WordSet::starts_with(w("c"))], vec![Word::identity()], vec![WordSet::starts_with(a)], vec![Word::identity()]).is_err());
    }

    #[test]
    fn defect_examples() {
        let dec = standard_f2_decomposition();
        let delta = ProbMeasure::<Word, Rational64>::point_mass(Word::identity());
        assert_eq!(tarski_defect(&delta, &dec).unwrap(), r(2, 1));
        let mu = ProbMeasure::<Word, Rational64>::uniform(vec![w("e"), w("a")]).unwrap();
        assert_eq!(tarski_defect(&mu, &dec).unwrap(), r(3, 2));
        let bad = ProbMeasure::<Word, f64>::point_mass(w("c"));
        assert!(tarski_defect(&bad, &dec).is_err());
    }

    #[test]
    fn mean_coefficient_examples() {
        let dec = standard_f2_decomposition();
        let delta = ProbMeasure::<Word, Rational64>::point_mass(Word::identity());
        assert_eq!(mean_coefficient(&delta, &w("a"), &dec.pieces_a()[1]), r(1, 1));
        let ball = ProbMeasure::<Word, Rational64>::uniform(FreeGroup::f2().ball(1).unwrap()).unwrap();
        assert_eq!(mean_coefficient(&ball, &Word::identity(), &dec.pieces_a()[0]), r(1, 5));
        let x = w("ab");
        let point = ProbMeasure::<Word, Rational64>::point_mass(x.clone());
        assert_eq!(mean_coefficient(&point, &Word::identity(), &dec.pieces_a()[0]), r(1, 1));
    }

    #[test]
    fn partition_identity_exact() {
        let dec = standard_f2_decomposition();
        let support = FreeGroup::f2().ball(3).unwrap();
        let table = TarskiTable::new(&dec, support.clone()).unwrap();
        let weights: Vec<Rational64> = (1..=support.len() as i64).map(|k| r(k, 1)).collect();
        let total: Rational64 = weights.iter().sum();
        let weights: Vec<Rational64> = weights.into_iter().map(|x| x / total).collect();
        let (translates, pieces) = table.partition_sums(&weights);
        assert_eq!(translates, r(2, 1));
        assert!(pieces <= r(1, 1));
        assert!(table.defect(&weights) >= r(1, 1));
    }

    #[test]
    fn sweep_is_reproducible() {
        let dec = standard_f2_decomposition();
        let a = tarski_sweep(&dec, 3, 50, 9).unwrap();
        let b = tarski_sweep(&dec, 3, 50, 9).unwrap();
        assert_eq!(a.min_defect, b.min_defect);
        assert!(a.min_defect >= DEFECT_FLOOR);
    }

    #[test]
    fn lattice_lp_small() {
        let z = GroupHandle::Lattice(Lattice::new(1).unwrap());
        let rep = min_invariance_defect(&z, 2).unwrap();
        // uniform on 5 points is optimal in one dimension
        assert!((rep.value - 0.4).abs() < 1e-12);
        assert!((rep.certified_value - rep.value).abs() < 1e-12);
        let z2 = GroupHandle::Lattice(Lattice::new(2).unwrap());
        assert!(min_invariance_defect(&z2, 2).unwrap().value <= 0.4 + 1e-12);
    }

    #[test]
    fn free_lp_small() {
        let f2 = GroupHandle::Free(FreeGroup::f2());
        let rep = min_invariance_defect(&f2, 1).unwrap();
        assert!(rep.value >= DEFECT_FLOOR);
        assert!((rep.certified_value - rep.value).abs() < 1e-12);
        let exact = exact_free_invariance_defect(&FreeGroup::f2(), 1).unwrap();
        assert!((exact.value.to_f64() - rep.value).abs() < 1e-12);
        let z = GroupHandle::Finite(crate::group::FiniteGroup::cyclic(3).unwrap());
        assert!(min_invariance_defect(&z, 1).is_err());
        assert!(matches!(min_invariance_defect(&f2, 6), Err(Error::TooManyElements { .. })));
    }
}
